#include "repkit/operators.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "repkit/rng.hpp"

namespace repkit {

BlockOperator::BlockOperator(FunctionSpace domain, FunctionSpace codomain,
                             Eigen::MatrixXd blocks)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), blocks_(std::move(blocks)) {
  const Eigen::Index rows = static_cast<Eigen::Index>(codomain_.spec.dim) * codomain_.space.size();
  const Eigen::Index cols = static_cast<Eigen::Index>(domain_.spec.dim) * domain_.space.size();
  if (blocks_.rows() != rows || blocks_.cols() != cols)
    throw std::invalid_argument("block matrix shape does not match operator spaces");
}

BlockOperator BlockOperator::zero(FunctionSpace domain, FunctionSpace codomain) {
  const Eigen::Index rows = static_cast<Eigen::Index>(codomain.spec.dim) * codomain.space.size();
  const Eigen::Index cols = static_cast<Eigen::Index>(domain.spec.dim) * domain.space.size();
  return BlockOperator(std::move(domain), std::move(codomain), Eigen::MatrixXd::Zero(rows, cols));
}

LpFunction apply(const BlockOperator& T, const LpFunction& f) {
  if (f.space() != T.domain().space || f.spec() != T.domain().spec ||
      f.exponent() != T.domain().exponent)
    throw std::invalid_argument("function does not live in the operator domain");
  const int dim_g = T.codomain().spec.dim;
  Eigen::VectorXd flat = Eigen::Map<const Eigen::VectorXd>(f.values().data(),
                                                           f.values().size());
  Eigen::VectorXd out = T.blocks() * flat;
  Eigen::MatrixXd values = Eigen::Map<const Eigen::MatrixXd>(out.data(), dim_g,
                                                             T.codomain().space.size());
  return LpFunction(T.codomain().space, T.codomain().spec, T.codomain().exponent, values);
}

BlockOperator operator+(const BlockOperator& a, const BlockOperator& b) {
  if (!a.same_shape(b)) throw std::invalid_argument("operator sum requires identical spaces");
  return a.with_blocks(a.blocks() + b.blocks());
}

BlockOperator operator*(double c, const BlockOperator& a) {
  return a.with_blocks(c * a.blocks());
}

BlockOperator compose(const BlockOperator& a, const BlockOperator& b) {
  if (!(b.codomain() == a.domain()))
    throw std::invalid_argument("composition requires chained spaces");
  return BlockOperator(b.domain(), a.codomain(), a.blocks() * b.blocks());
}

namespace {

// Unit-norm function supported on one atom.
LpFunction atomic_function(const FunctionSpace& fs, int atom, const Eigen::VectorXd& u) {
  Eigen::MatrixXd values = Eigen::MatrixXd::Zero(fs.spec.dim, fs.space.size());
  double scale = 1.0;
  double un = vector_norm(u, fs.spec);
  Eigen::VectorXd uu = un > 0.0 ? Eigen::VectorXd(u / un) : Eigen::VectorXd::Unit(fs.spec.dim, 0);
  switch (fs.exponent) {
    case PNorm::P1: scale = 1.0 / fs.space.weight(atom); break;
    case PNorm::P2: scale = 1.0 / std::sqrt(fs.space.weight(atom)); break;
    case PNorm::PInf: scale = 1.0; break;
  }
  values.col(atom) = scale * uu;
  return LpFunction(fs.space, fs.spec, fs.exponent, values);
}

struct NormComputation {
  NormBound bound;
  bool exact_regime = false;
  std::optional<LpFunction> witness;
};

bool is_block_diagonal_square(const BlockOperator& T) {
  if (!(T.domain().space == T.codomain().space)) return false;
  if (T.domain().exponent != T.codomain().exponent) return false;
  const int n = T.domain().space.size();
  for (int w2 = 0; w2 < n; ++w2)
    for (int w1 = 0; w1 < n; ++w1)
      if (w1 != w2 && !T.block(w2, w1).isZero(0.0)) return false;
  return true;
}

// Weight-scaled matrix whose plain spectral norm is the L^2(mu1) -> L^2(mu2)
// operator norm: rows scaled by sqrt(mu2), columns by 1/sqrt(mu1).
Eigen::MatrixXd hilbert_scaled_matrix(const BlockOperator& T) {
  Eigen::MatrixXd s = T.blocks();
  const int dim_e = T.domain().spec.dim;
  const int dim_g = T.codomain().spec.dim;
  for (int w2 = 0; w2 < T.codomain().space.size(); ++w2)
    s.middleRows(w2 * dim_g, dim_g) *= std::sqrt(T.codomain().space.weight(w2));
  for (int w1 = 0; w1 < T.domain().space.size(); ++w1)
    s.middleCols(w1 * dim_e, dim_e) /= std::sqrt(T.domain().space.weight(w1));
  return s;
}

// L^q(mu2; G) norm of the stacked image (B(., w1) u).
double stacked_image_norm(const BlockOperator& T, int w1, const Eigen::VectorXd& u) {
  const MeasureSpace& s2 = T.codomain().space;
  const SpaceSpec& g = T.codomain().spec;
  Eigen::MatrixXd values(g.dim, s2.size());
  for (int w2 = 0; w2 < s2.size(); ++w2) values.col(w2) = T.block(w2, w1) * u;
  return lp_norm(LpFunction(s2, g, T.codomain().exponent, values));
}

// Norm of the map E -> L^q(mu2; G), u |-> (B(., w1) u), with witness.
MatrixNorm column_stack_norm(const BlockOperator& T, int w1) {
  const SpaceSpec& e = T.domain().spec;
  const SpaceSpec& g = T.codomain().spec;
  const PNorm q = T.codomain().exponent;
  const MeasureSpace& s2 = T.codomain().space;

  std::vector<int> nonzero;
  for (int w2 = 0; w2 < s2.size(); ++w2)
    if (!T.block(w2, w1).isZero(0.0)) nonzero.push_back(w2);

  if (nonzero.empty())
    return MatrixNorm{NormBound::exactly(0.0), Eigen::VectorXd::Unit(e.dim, 0)};

  if (nonzero.size() == 1) {
    const int w2 = nonzero.front();
    MatrixNorm m = matrix_operator_norm(T.block(w2, w1), e, g);
    double scale = 1.0;
    if (q == PNorm::P1) scale = s2.weight(w2);
    else if (q == PNorm::P2) scale = std::sqrt(s2.weight(w2));
    m.bound = m.bound.scaled(scale);
    return m;
  }

  if (e.norm == PNorm::P1) {
    double bestv = -1.0;
    int bestj = 0;
    for (int j = 0; j < e.dim; ++j) {
      double v = stacked_image_norm(T, w1, Eigen::VectorXd::Unit(e.dim, j));
      if (v > bestv) {
        bestv = v;
        bestj = j;
      }
    }
    return MatrixNorm{NormBound::exactly(bestv), Eigen::VectorXd::Unit(e.dim, bestj)};
  }

  if (q == PNorm::PInf) {
    NormBound bound{0.0, 0.0, true};
    MatrixNorm best_block{NormBound::exactly(-1.0), Eigen::VectorXd::Unit(e.dim, 0)};
    for (int w2 : nonzero) {
      MatrixNorm m = matrix_operator_norm(T.block(w2, w1), e, g);
      if (m.bound.lower > best_block.bound.lower) best_block = m;
      bound = NormBound::max(bound, m.bound);
    }
    return MatrixNorm{bound, best_block.witness};
  }

  if (e.norm == PNorm::P2 && q == PNorm::P2 && g.norm == PNorm::P2) {
    Eigen::MatrixXd stack(static_cast<Eigen::Index>(g.dim) * s2.size(), e.dim);
    for (int w2 = 0; w2 < s2.size(); ++w2)
      stack.middleRows(w2 * g.dim, g.dim) = std::sqrt(s2.weight(w2)) * T.block(w2, w1);
    SpectralNorm s = spectral_norm(stack);
    return MatrixNorm{NormBound::exactly(s.value), s.right_vector};
  }

  // No closed form for this column: certified interval.
  MatrixNorm best{NormBound::exactly(0.0), Eigen::VectorXd::Unit(e.dim, 0)};
  auto consider = [&](const Eigen::VectorXd& u0) {
    double un = vector_norm(u0, e);
    if (un == 0.0) return;
    Eigen::VectorXd u = u0 / un;
    double v = stacked_image_norm(T, w1, u);
    if (v > best.bound.lower) best = MatrixNorm{NormBound::exactly(v), u};
  };
  for (int j = 0; j < e.dim; ++j) consider(Eigen::VectorXd::Unit(e.dim, j));
  consider(Eigen::VectorXd::Ones(e.dim));
  double block_upper = 0.0;
  for (int w2 : nonzero) {
    MatrixNorm m = matrix_operator_norm(T.block(w2, w1), e, g);
    consider(m.witness);
    block_upper = std::max(block_upper, m.bound.upper);
  }
  Rng rng(0xc01dULL + static_cast<std::uint64_t>(w1));
  for (int r = 0; r < 8; ++r) consider(rng.gaussian_vector(e.dim));
  double mass_factor = 1.0;
  if (q == PNorm::P1) mass_factor = s2.total_mass();
  else if (q == PNorm::P2) mass_factor = std::sqrt(s2.total_mass());
  double upper = std::max(block_upper * mass_factor, best.bound.lower);
  best.bound = NormBound::interval(best.bound.lower, upper);
  return best;
}

NormComputation l1_domain_norm(const BlockOperator& T) {
  const MeasureSpace& s1 = T.domain().space;
  NormBound total{0.0, 0.0, true};
  int best_atom = 0;
  double best_scaled = -1.0;
  Eigen::VectorXd best_u = Eigen::VectorXd::Unit(T.domain().spec.dim, 0);
  for (int w1 = 0; w1 < s1.size(); ++w1) {
    MatrixNorm inner = column_stack_norm(T, w1);
    NormBound scaled = inner.bound.scaled(1.0 / s1.weight(w1));
    if (scaled.lower > best_scaled) {
      best_scaled = scaled.lower;
      best_atom = w1;
      best_u = inner.witness;
    }
    total = NormBound::max(total, scaled);
  }
  NormComputation r;
  r.bound = total;
  r.exact_regime = total.exact;
  r.witness = atomic_function(T.domain(), best_atom, best_u);
  return r;
}

NormComputation hilbert_norm(const BlockOperator& T) {
  Eigen::MatrixXd s = hilbert_scaled_matrix(T);
  SpectralNorm sn = spectral_norm(s);
  const int dim_e = T.domain().spec.dim;
  Eigen::MatrixXd values(dim_e, T.domain().space.size());
  for (int w1 = 0; w1 < T.domain().space.size(); ++w1)
    values.col(w1) =
        sn.right_vector.segment(w1 * dim_e, dim_e) / std::sqrt(T.domain().space.weight(w1));
  NormComputation r;
  r.bound = NormBound::exactly(sn.value);
  r.exact_regime = true;
  r.witness = LpFunction(T.domain().space, T.domain().spec, T.domain().exponent, values);
  return r;
}

// L^inf -> L^inf with pinf codomain spec: max over output coordinates of the
// summed dual norms of the row segments.
NormComputation sup_to_sup_norm(const BlockOperator& T) {
  const MeasureSpace& s1 = T.domain().space;
  const MeasureSpace& s2 = T.codomain().space;
  const SpaceSpec& e = T.domain().spec;
  const int dim_g = T.codomain().spec.dim;
  double best = -1.0;
  int best_w2 = 0, best_i = 0;
  for (int w2 = 0; w2 < s2.size(); ++w2) {
    for (int i = 0; i < dim_g; ++i) {
      double sum = 0.0;
      for (int w1 = 0; w1 < s1.size(); ++w1)
        sum += dual_norm(T.block(w2, w1).row(i).transpose(), e);
      if (sum > best) {
        best = sum;
        best_w2 = w2;
        best_i = i;
      }
    }
  }
  Eigen::MatrixXd values(e.dim, s1.size());
  for (int w1 = 0; w1 < s1.size(); ++w1)
    values.col(w1) = dual_attainer(T.block(best_w2, w1).row(best_i).transpose(), e);
  NormComputation r;
  r.bound = NormBound::exactly(best);
  r.exact_regime = true;
  r.witness = LpFunction(s1, e, T.domain().exponent, values);
  return r;
}

NormComputation diagonal_norm(const BlockOperator& T) {
  const MeasureSpace& s = T.domain().space;
  NormBound total{0.0, 0.0, true};
  int best_atom = 0;
  MatrixNorm best{NormBound::exactly(-1.0), Eigen::VectorXd::Unit(T.domain().spec.dim, 0)};
  for (int w = 0; w < s.size(); ++w) {
    MatrixNorm m = matrix_operator_norm(T.block(w, w), T.domain().spec, T.codomain().spec);
    if (m.bound.lower > best.bound.lower) {
      best = m;
      best_atom = w;
    }
    total = NormBound::max(total, m.bound);
  }
  NormComputation r;
  r.bound = total;
  r.exact_regime = total.exact;
  r.witness = atomic_function(T.domain(), best_atom, best.witness);
  return r;
}

NormComputation fallback_norm(const BlockOperator& T) {
  NormComputation r;
  double lower = norm_lower_bound_sampled(T, 200, 0x5eedULL);
  double upper = std::max(norm_upper_bound_relaxed(T), lower);
  r.bound = NormBound::interval(lower, upper);
  r.exact_regime = false;
  return r;
}

NormComputation compute_norm(const BlockOperator& T) {
  if (T.blocks().isZero(0.0)) {
    NormComputation r;
    r.bound = NormBound::exactly(0.0);
    r.exact_regime = true;
    r.witness = atomic_function(T.domain(), 0, Eigen::VectorXd::Unit(T.domain().spec.dim, 0));
    return r;
  }
  if (is_block_diagonal_square(T)) return diagonal_norm(T);
  if (T.domain().exponent == PNorm::P1) {
    NormComputation r = l1_domain_norm(T);
    if (r.exact_regime) return r;
    NormComputation fb = fallback_norm(T);
    if (fb.bound.lower > r.bound.lower) r.bound.lower = fb.bound.lower;
    if (fb.bound.upper < r.bound.upper) r.bound.upper = fb.bound.upper;
    r.bound.exact = r.bound.upper <= r.bound.lower;
    r.exact_regime = false;
    return r;
  }
  if (T.domain().exponent == PNorm::P2 && T.codomain().exponent == PNorm::P2 &&
      T.domain().spec.norm == PNorm::P2 && T.codomain().spec.norm == PNorm::P2)
    return hilbert_norm(T);
  if (T.domain().exponent == PNorm::PInf && T.codomain().exponent == PNorm::PInf &&
      T.codomain().spec.norm == PNorm::PInf)
    return sup_to_sup_norm(T);
  return fallback_norm(T);
}

}  // namespace

OperatorNorm operator_norm(const BlockOperator& T) {
  NormComputation c = compute_norm(T);
  return OperatorNorm{c.bound.value(), c.exact_regime && c.bound.exact, c.bound.lower,
                      c.bound.upper};
}

LpFunction norm_witness(const BlockOperator& T) {
  NormComputation c = compute_norm(T);
  if (!(c.exact_regime && c.bound.exact) || !c.witness)
    throw std::invalid_argument("norm witness requires an exact operator-norm regime");
  return *c.witness;
}

double norm_lower_bound_sampled(const BlockOperator& T, int samples, std::uint64_t seed) {
  const FunctionSpace& dom = T.domain();
  double best = 0.0;
  auto consider = [&](const LpFunction& f) {
    double n = lp_norm(f);
    if (n == 0.0) return;
    LpFunction g(f.space(), f.spec(), f.exponent(), f.values() / n);
    best = std::max(best, lp_norm(apply(T, g)));
  };
  for (int w1 = 0; w1 < dom.space.size(); ++w1)
    for (int j = 0; j < dom.spec.dim; ++j)
      consider(atomic_function(dom, w1, Eigen::VectorXd::Unit(dom.spec.dim, j)));
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    Eigen::MatrixXd values = rng.gaussian_matrix(dom.spec.dim, dom.space.size());
    consider(LpFunction(dom.space, dom.spec, dom.exponent, values));
  }
  return best;
}

double norm_upper_bound_relaxed(const BlockOperator& T) {
  const MeasureSpace& s1 = T.domain().space;
  const MeasureSpace& s2 = T.codomain().space;
  const PNorm p = T.domain().exponent;
  const PNorm q = T.codomain().exponent;

  // Chain through L^1 -> L^inf, whose norm has the atomic closed form.
  double block_upper = 0.0;
  for (int w1 = 0; w1 < s1.size(); ++w1) {
    double column = 0.0;
    for (int w2 = 0; w2 < s2.size(); ++w2)
      column = std::max(column, matrix_operator_norm(T.block(w2, w1), T.domain().spec,
                                                     T.codomain().spec)
                                    .bound.upper);
    block_upper = std::max(block_upper, column / s1.weight(w1));
  }
  double in_factor = 1.0;   // ||f||_1 <= c ||f||_p
  switch (p) {
    case PNorm::P1: in_factor = 1.0; break;
    case PNorm::P2: in_factor = std::sqrt(s1.total_mass()); break;
    case PNorm::PInf: in_factor = s1.total_mass(); break;
  }
  double out_factor = 1.0;  // ||g||_q <= c ||g||_inf
  switch (q) {
    case PNorm::P1: out_factor = s2.total_mass(); break;
    case PNorm::P2: out_factor = std::sqrt(s2.total_mass()); break;
    case PNorm::PInf: out_factor = 1.0; break;
  }
  double via_atomic = in_factor * out_factor * block_upper;

  // Chain through the weighted L^2 -> L^2 spectral norm.
  double sigma = spectral_norm(hilbert_scaled_matrix(T), 1e-12).value;
  double min_mu1 = T.domain().space.weights().minCoeff();
  double c_in = l2_embedding_constant(T.domain().spec);
  switch (p) {
    case PNorm::P1: c_in *= 1.0 / std::sqrt(min_mu1); break;
    case PNorm::P2: break;
    case PNorm::PInf: c_in *= std::sqrt(s1.total_mass()); break;
  }
  double min_mu2 = T.codomain().space.weights().minCoeff();
  double c_out = from_l2_embedding_constant(T.codomain().spec);
  switch (q) {
    case PNorm::P1: c_out *= std::sqrt(s2.total_mass()); break;
    case PNorm::P2: break;
    case PNorm::PInf: c_out *= 1.0 / std::sqrt(min_mu2); break;
  }
  double via_spectral = c_in * sigma * c_out;

  return std::min(via_atomic, via_spectral);
}

}  // namespace repkit

#include "repkit/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "repkit/matrix_norms.hpp"
#include "repkit/rng.hpp"

namespace repkit {

TensorFactor TensorFactor::space(SpaceSpec spec) {
  TensorFactor f;
  f.is_lp_ = false;
  f.spec_ = spec;
  return f;
}

TensorFactor TensorFactor::lp(MeasureSpace space, PNorm exponent) {
  TensorFactor f;
  f.is_lp_ = true;
  f.space_.push_back(std::move(space));
  f.exponent_ = exponent;
  return f;
}

int TensorFactor::size() const { return is_lp_ ? space_.front().size() : spec_.dim; }

Eigen::VectorXd TensorFactor::weights() const {
  return is_lp_ ? space_.front().weights() : Eigen::VectorXd::Ones(spec_.dim);
}

const SpaceSpec& TensorFactor::spec() const {
  if (is_lp_) throw std::invalid_argument("L^p tensor factor has no space spec");
  return spec_;
}

const MeasureSpace& TensorFactor::measure() const {
  if (!is_lp_) throw std::invalid_argument("space tensor factor has no measure");
  return space_.front();
}

double TensorFactor::slice_norm(const Eigen::VectorXd& slice) const {
  if (slice.size() != size()) throw std::invalid_argument("slice length does not match factor");
  if (!is_lp_) return vector_norm(slice, spec_);
  const Eigen::VectorXd& w = space_.front().weights();
  switch (exponent_) {
    case PNorm::P1: return (w.array() * slice.array().abs()).sum();
    case PNorm::P2: return std::sqrt((w.array() * slice.array().square()).sum());
    case PNorm::PInf: return slice.size() ? slice.lpNorm<Eigen::Infinity>() : 0.0;
  }
  return 0.0;
}

bool TensorFactor::operator==(const TensorFactor& o) const {
  if (is_lp_ != o.is_lp_) return false;
  if (is_lp_) return exponent_ == o.exponent_ && space_.front() == o.space_.front();
  return spec_ == o.spec_;
}

TensorElement::TensorElement(std::vector<TensorFactor> factors, Eigen::VectorXd coefficients)
    : factors_(std::move(factors)), coeffs_(std::move(coefficients)) {
  if (factors_.empty()) throw std::invalid_argument("tensor element needs at least one factor");
  Eigen::Index expected = 1;
  for (const auto& f : factors_) expected *= f.size();
  if (coeffs_.size() != expected)
    throw std::invalid_argument("coefficient count does not match factor dimensions");
}

TensorElement TensorElement::simple(const TensorFactor& f0, const Eigen::VectorXd& u,
                                    const TensorFactor& f1, const Eigen::VectorXd& v) {
  if (u.size() != f0.size() || v.size() != f1.size())
    throw std::invalid_argument("simple tensor vectors do not match factors");
  Eigen::MatrixXd m = u * v.transpose();
  Eigen::VectorXd c(m.size());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) c[i * m.cols() + j] = m(i, j);
  return TensorElement({f0, f1}, std::move(c));
}

Eigen::MatrixXd TensorElement::as_matrix() const {
  if (order() != 2) throw std::invalid_argument("matrix view requires exactly two factors");
  const int n = factors_[0].size();
  const int m = factors_[1].size();
  Eigen::MatrixXd z(n, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) z(i, j) = coeffs_[i * m + j];
  return z;
}

TensorElement transpose(const TensorElement& z) {
  if (z.order() != 2) throw std::invalid_argument("transpose requires exactly two factors");
  Eigen::MatrixXd zt = z.as_matrix().transpose();
  Eigen::VectorXd c(zt.size());
  for (int i = 0; i < zt.rows(); ++i)
    for (int j = 0; j < zt.cols(); ++j) c[i * zt.cols() + j] = zt(i, j);
  return TensorElement({z.factor(1), z.factor(0)}, std::move(c));
}

namespace {

double plain_norm(const Eigen::VectorXd& v, PNorm tag) {
  switch (tag) {
    case PNorm::P1: return v.lpNorm<1>();
    case PNorm::P2: return v.norm();
    case PNorm::PInf: return v.size() ? v.lpNorm<Eigen::Infinity>() : 0.0;
  }
  return 0.0;
}

// Axis scaling that turns a weighted L^p factor into a plain l^p factor
// isometrically: coordinates scale by w^(1/p), nothing for p = inf.
Eigen::VectorXd canonical_scaling(const TensorFactor& f) {
  Eigen::VectorXd w = f.weights();
  switch (f.tag()) {
    case PNorm::P1: return w;
    case PNorm::P2: return w.cwiseSqrt();
    case PNorm::PInf: return Eigen::VectorXd::Ones(f.size());
  }
  return w;
}

struct Canonical {
  Eigen::MatrixXd z;
  PNorm tag0;
  PNorm tag1;
};

Canonical canonicalize(const TensorElement& z) {
  Eigen::MatrixXd m = z.as_matrix();
  Eigen::VectorXd d0 = canonical_scaling(z.factor(0));
  Eigen::VectorXd d1 = canonical_scaling(z.factor(1));
  return Canonical{d0.asDiagonal() * m * d1.asDiagonal(), z.factor(0).tag(), z.factor(1).tag()};
}

double decomposition_objective(const Eigen::MatrixXd& U, const Eigen::MatrixXd& W, PNorm tag0,
                               PNorm tag1) {
  double s = 0.0;
  for (int r = 0; r < U.cols(); ++r)
    s += plain_norm(U.col(r), tag0) * plain_norm(W.row(r).transpose(), tag1);
  return s;
}

// Euclidean projection onto the l^1 ball of the given radius.
Eigen::VectorXd project_l1_ball(const Eigen::VectorXd& x, double radius) {
  if (x.lpNorm<1>() <= radius) return x;
  Eigen::VectorXd a = x.cwiseAbs();
  std::vector<double> sorted(a.data(), a.data() + a.size());
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  double cumulative = 0.0, theta = 0.0;
  for (size_t k = 0; k < sorted.size(); ++k) {
    cumulative += sorted[k];
    double candidate = (cumulative - radius) / static_cast<double>(k + 1);
    if (candidate >= (k + 1 < sorted.size() ? sorted[k + 1] : 0.0)) {
      theta = candidate;
      break;
    }
  }
  Eigen::VectorXd out = x;
  for (int i = 0; i < out.size(); ++i) {
    double mag = std::max(0.0, std::abs(out[i]) - theta);
    out[i] = out[i] >= 0.0 ? mag : -mag;
  }
  return out;
}

// prox of c * ||.||, rowwise.
Eigen::VectorXd prox_row_norm(const Eigen::VectorXd& x, double c, PNorm tag) {
  switch (tag) {
    case PNorm::P2: {
      double n = x.norm();
      if (n <= c) return Eigen::VectorXd::Zero(x.size());
      return (1.0 - c / n) * x;
    }
    case PNorm::PInf:
      // Moreau: prox of the sup norm via projection onto the l^1 ball.
      return x - project_l1_ball(x, c);
    case PNorm::P1: {
      Eigen::VectorXd out = x;
      for (int i = 0; i < out.size(); ++i) {
        double mag = std::max(0.0, std::abs(out[i]) - c);
        out[i] = out[i] >= 0.0 ? mag : -mag;
      }
      return out;
    }
  }
  return x;
}

// Exact convex reformulation when one factor is pinf: decompositions may be
// restricted to the finitely many extreme points of the sup-norm ball, so
//   pi(z) = min { sum_k ||v_k||_other : sum_k s_k v_k^T = Z }
// over the sign dictionary s_k. Solved by ADMM; the result is projected back
// onto the constraint, so the returned objective is a feasible upper bound.
double sign_dictionary_upper(const Eigen::MatrixXd& z_rows_pinf, PNorm other_tag) {
  const int n = static_cast<int>(z_rows_pinf.rows());
  const int m = static_cast<int>(z_rows_pinf.cols());
  const int count = 1 << (n - 1);  // sign vectors up to global sign
  Eigen::MatrixXd dict(n, count);
  for (int k = 0; k < count; ++k) {
    dict(0, k) = 1.0;
    for (int i = 1; i < n; ++i) dict(i, k) = (k >> (i - 1)) & 1 ? -1.0 : 1.0;
  }
  const double scale = z_rows_pinf.cwiseAbs().maxCoeff();
  const Eigen::MatrixXd z = z_rows_pinf / scale;
  // Projector onto { V : dict * V = z }.
  Eigen::MatrixXd gram_inverse =
      (dict * dict.transpose()).ldlt().solve(Eigen::MatrixXd::Identity(n, n));
  Eigen::MatrixXd pinv = dict.transpose() * gram_inverse;  // count x n
  auto project = [&](const Eigen::MatrixXd& v) -> Eigen::MatrixXd {
    return v - pinv * (dict * v - z);
  };

  const double rho = 1.0;
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(count, m);
  Eigen::MatrixXd dual = w, v = w;
  for (int it = 0; it < 1500; ++it) {
    v = project(w - dual);
    Eigen::MatrixXd target = v + dual;
    for (int k = 0; k < count; ++k)
      w.row(k) = prox_row_norm(target.row(k).transpose(), 1.0 / rho, other_tag).transpose();
    dual += v - w;
  }
  Eigen::MatrixXd feasible = project(w);
  double objective = 0.0;
  for (int k = 0; k < count; ++k)
    objective += plain_norm(feasible.row(k).transpose(), other_tag);
  return objective * scale;
}

// Upper bound: the cheapest feasible decomposition found among atomic
// slicings, a singular-value peel, the sign-dictionary program, and seeded
// alternating refinements.
double search_upper_bound(const Canonical& c, std::uint64_t seed, int restarts) {
  const Eigen::MatrixXd& z = c.z;
  const int n = static_cast<int>(z.rows());
  const int m = static_cast<int>(z.cols());
  const double scale = z.cwiseAbs().maxCoeff();
  double best = std::numeric_limits<double>::infinity();

  auto consider = [&](const Eigen::MatrixXd& U, const Eigen::MatrixXd& W) {
    if ((U * W - z).cwiseAbs().maxCoeff() > 1e-11 * std::max(1.0, scale)) return;
    best = std::min(best, decomposition_objective(U, W, c.tag0, c.tag1));
  };

  // Row and column slicings (optimal when the matching factor is l^1).
  consider(Eigen::MatrixXd::Identity(n, n), z);
  consider(z, Eigen::MatrixXd::Identity(m, m));

  // Singular value peel (optimal in the Hilbert regime).
  {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(z, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Eigen::MatrixXd U = svd.matrixU() * svd.singularValues().asDiagonal();
    consider(U, svd.matrixV().transpose());
  }

  // Extreme-point reformulation over a sup-norm factor (exact for the
  // regimes this search is actually used in).
  if (c.tag0 == PNorm::PInf && n <= 10 &&
      (c.tag1 != PNorm::PInf || n <= m))
    best = std::min(best, sign_dictionary_upper(z, c.tag1));
  else if (c.tag1 == PNorm::PInf && m <= 10)
    best = std::min(best, sign_dictionary_upper(z.transpose(), c.tag0));

  // Seeded alternating least-squares refinements at the Caratheodory rank
  // cap, stopping a restart once the relative improvement drops below 1e-10.
  const int rank_cap = n * m;
  for (int restart = 0; restart < restarts; ++restart) {
    Rng rng = Rng::child(seed, static_cast<std::uint64_t>(restart));
    Eigen::MatrixXd U = rng.gaussian_matrix(n, rank_cap);
    Eigen::MatrixXd W;
    double previous = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 30; ++it) {
      W = U.completeOrthogonalDecomposition().solve(z);
      U = Eigen::MatrixXd(
          W.transpose().completeOrthogonalDecomposition().solve(z.transpose()).transpose());
      consider(U, W);
      double objective = decomposition_objective(U, W, c.tag0, c.tag1);
      if (objective >= previous * (1.0 - 1e-10)) break;
      previous = objective;
    }
  }
  return best;
}

// Lower bound from the operator duality: the best pairing against operators
// of certified norm at most one.
double duality_lower_bound(const TensorElement& zel, const Canonical& c, std::uint64_t seed,
                           int samples) {
  const Eigen::MatrixXd& z = c.z;
  const int n = static_cast<int>(z.rows());
  const int m = static_cast<int>(z.cols());
  const SpaceSpec e{n, c.tag0, false};
  const SpaceSpec fdual{m, conjugate(c.tag1), false};
  double best = z.cwiseAbs().maxCoeff();  // basis functionals e_i (x) e_j

  // Rank-one functionals phi (x) psi by alternating dual-attainer ascent.
  auto ascend = [&](Eigen::VectorXd psi) {
    double pn = plain_norm(psi, conjugate(c.tag1));
    if (pn == 0.0) return;
    psi /= pn;
    double value = 0.0;
    Eigen::VectorXd phi;
    for (int it = 0; it < 40; ++it) {
      phi = dual_attainer(z * psi, SpaceSpec{n, conjugate(c.tag0), false});
      psi = dual_attainer(z.transpose() * phi, SpaceSpec{m, conjugate(c.tag1), false});
      double v = phi.dot(z * psi);
      if (v <= value * (1.0 + 1e-14)) break;
      value = v;
    }
    best = std::max(best, value);
  };
  {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(z, Eigen::ComputeThinV);
    if (svd.matrixV().cols() > 0) ascend(svd.matrixV().col(0));
  }
  ascend(Eigen::VectorXd::Ones(m));
  for (int j = 0; j < m; ++j) ascend(Eigen::VectorXd::Unit(m, j));

  // Seeded random operators normalized by a certified upper bound.
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    Eigen::MatrixXd g = rng.gaussian_matrix(m, n);  // operator factor0 -> dual(factor1)
    double norm_upper = matrix_operator_norm(g, e, fdual).bound.upper;
    if (norm_upper <= 0.0) continue;
    double pairing = (g.transpose().array() * z.array()).sum();
    best = std::max(best, std::abs(pairing) / norm_upper);
  }
  (void)zel;
  return best;
}

}  // namespace

PiNorm pi_norm(const TensorElement& z) { return pi_norm(z, 42, 200); }

PiNorm pi_norm(const TensorElement& z, std::uint64_t seed, int restarts) {
  if (z.order() != 2) throw std::invalid_argument("pi norm requires exactly two factors");
  Canonical c = canonicalize(z);

  auto exact = [](double v, PiRoute route) {
    return PiNorm{v, true, v, v, route};
  };

  if (c.z.isZero(0.0)) return exact(0.0, PiRoute::ExactSimple);

  if (c.tag0 == PNorm::P1) {
    double s = 0.0;
    for (int i = 0; i < c.z.rows(); ++i) s += plain_norm(c.z.row(i).transpose(), c.tag1);
    return exact(s, PiRoute::ExactL1);
  }
  if (c.tag1 == PNorm::P1) {
    double s = 0.0;
    for (int j = 0; j < c.z.cols(); ++j) s += plain_norm(c.z.col(j), c.tag0);
    return exact(s, PiRoute::ExactL1);
  }
  if (c.tag0 == PNorm::P2 && c.tag1 == PNorm::P2)
    return exact(nuclear_norm(c.z), PiRoute::ExactNuclear);
  if (c.z.rows() == 1) return exact(plain_norm(c.z.row(0).transpose(), c.tag1), PiRoute::ExactSimple);
  if (c.z.cols() == 1) return exact(plain_norm(c.z.col(0), c.tag0), PiRoute::ExactSimple);

  double upper = search_upper_bound(c, seed, restarts);
  double lower = duality_lower_bound(z, c, seed, 400);
  lower = std::min(lower, upper);
  return PiNorm{0.5 * (lower + upper), false, lower, upper, PiRoute::Bounds};
}

PiNorm pi_norm_bounds(const TensorElement& z, std::uint64_t seed, int restarts) {
  if (z.order() != 2) throw std::invalid_argument("pi norm requires exactly two factors");
  Canonical c = canonicalize(z);
  if (c.z.isZero(0.0)) return PiNorm{0.0, true, 0.0, 0.0, PiRoute::Bounds};
  double upper = search_upper_bound(c, seed, restarts);
  double lower = duality_lower_bound(z, c, seed, 400);
  lower = std::min(lower, upper);
  return PiNorm{0.5 * (lower + upper), false, lower, upper, PiRoute::Bounds};
}

double duality_pairing(const Eigen::MatrixXd& T, const TensorElement& z) {
  if (z.order() != 2) throw std::invalid_argument("duality pairing requires two factors");
  Eigen::MatrixXd m = z.as_matrix();
  if (T.cols() != m.rows() || T.rows() != m.cols())
    throw std::invalid_argument("operator shape does not match tensor element");
  return (T.transpose().array() * m.array()).sum();
}

Eigen::MatrixXd extremal_dual_operator(const TensorElement& z) {
  if (z.order() != 2) throw std::invalid_argument("extremal operator requires two factors");
  if (z.factor(0).tag() != PNorm::P1 || z.factor(1).tag() != PNorm::P1)
    throw std::invalid_argument("extremal dual operator requires two l^1 factors");
  Eigen::MatrixXd m = z.as_matrix();
  Eigen::VectorXd w0 = z.factor(0).weights();
  Eigen::VectorXd w1 = z.factor(1).weights();
  Eigen::MatrixXd t(m.cols(), m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      t(j, i) = w0[i] * w1[j] * (m(i, j) >= 0.0 ? 1.0 : -1.0);
  return t;
}

double dual_operator_norm_upper(const Eigen::MatrixXd& T, const TensorFactor& f0,
                                const TensorFactor& f1) {
  // Map to canonical coordinates: T~ = D1^-1 T D0^-1 acts between the plain
  // l^p spaces, where the D are the canonical axis scalings.
  Eigen::VectorXd d0 = canonical_scaling(f0);
  Eigen::VectorXd d1 = canonical_scaling(f1);
  Eigen::MatrixXd t = d1.cwiseInverse().asDiagonal() * T * d0.cwiseInverse().asDiagonal();
  SpaceSpec e{f0.size(), f0.tag(), false};
  SpaceSpec fdual{f1.size(), conjugate(f1.tag()), false};
  return matrix_operator_norm(t, e, fdual).bound.upper;
}

L1ProductReport check_l1_product_identity(const MeasureSpace& s1, const MeasureSpace& s2,
                                          const TensorElement& z) {
  if (z.order() != 2 || !z.factor(0).is_lp() || !z.factor(1).is_lp() ||
      z.factor(0).tag() != PNorm::P1 || z.factor(1).tag() != PNorm::P1 ||
      z.factor(0).measure() != s1 || z.factor(1).measure() != s2)
    throw std::invalid_argument("product identity requires L^1 factors over the given spaces");
  PiNorm pn = pi_norm(z);
  MeasureSpace prod = product_space(s1, s2);
  Eigen::MatrixXd values = z.coefficients().transpose();
  LpFunction flat(prod, SpaceSpec{1, PNorm::P1, false}, PNorm::P1, values);
  double flat_norm = lp_norm(flat);
  L1ProductReport r;
  r.pi_value = pn.value;
  r.flattened_value = flat_norm;
  r.difference = std::abs(pn.value - flat_norm);
  r.tolerance = 1e-12;
  r.pass = r.difference <= r.tolerance;
  return r;
}

CommutativityReport check_commutativity(const TensorElement& z, std::uint64_t seed) {
  CommutativityReport r;
  r.original = pi_norm(z, seed, 200);
  r.transposed = pi_norm(transpose(z), seed, 200);
  r.difference = std::abs(r.original.value - r.transposed.value);
  if (r.original.exact && r.transposed.exact) {
    bool spectral = r.original.route == PiRoute::ExactNuclear ||
                    r.transposed.route == PiRoute::ExactNuclear;
    r.tolerance = spectral ? 1e-10 : 1e-12;
    r.overlap = true;
    r.pass = r.difference <= r.tolerance;
  } else {
    r.tolerance = 0.0;
    r.overlap = r.original.lower <= r.transposed.upper + 1e-12 &&
                r.transposed.lower <= r.original.upper + 1e-12;
    r.pass = r.overlap;
  }
  return r;
}

double pi_norm_grouped(const TensorElement& z, bool group_first_pair) {
  if (z.order() != 3) throw std::invalid_argument("grouped pi norm requires three factors");
  const TensorFactor& f0 = z.factor(0);
  const TensorFactor& f1 = z.factor(1);
  const TensorFactor& f2 = z.factor(2);
  const int n0 = f0.size(), n1 = f1.size(), n2 = f2.size();
  const Eigen::VectorXd& c = z.coefficients();
  auto at = [&](int i, int j, int k) { return c[(i * n1 + j) * n2 + k]; };

  if (group_first_pair) {
    // (f0 (x) f1) (x) f2
    if (f2.tag() == PNorm::P1) {
      Eigen::VectorXd w2 = f2.weights();
      double s = 0.0;
      for (int k = 0; k < n2; ++k) {
        Eigen::VectorXd slice(n0 * n1);
        for (int i = 0; i < n0; ++i)
          for (int j = 0; j < n1; ++j) slice[i * n1 + j] = at(i, j, k);
        PiNorm inner = pi_norm(TensorElement({f0, f1}, slice));
        if (!inner.exact) throw std::invalid_argument("inner pi norm not in an exact regime");
        s += w2[k] * inner.value;
      }
      return s;
    }
    if (f0.tag() == PNorm::P1 && f1.tag() == PNorm::P1) {
      Eigen::VectorXd w0 = f0.weights(), w1 = f1.weights();
      double s = 0.0;
      for (int i = 0; i < n0; ++i)
        for (int j = 0; j < n1; ++j) {
          Eigen::VectorXd slice(n2);
          for (int k = 0; k < n2; ++k) slice[k] = at(i, j, k);
          s += w0[i] * w1[j] * f2.slice_norm(slice);
        }
      return s;
    }
    throw std::invalid_argument("grouped pi norm needs at least two L^1-type factors");
  }

  // f0 (x) (f1 (x) f2)
  if (f0.tag() == PNorm::P1) {
    Eigen::VectorXd w0 = f0.weights();
    double s = 0.0;
    for (int i = 0; i < n0; ++i) {
      Eigen::VectorXd slice(n1 * n2);
      for (int j = 0; j < n1; ++j)
        for (int k = 0; k < n2; ++k) slice[j * n2 + k] = at(i, j, k);
      PiNorm inner = pi_norm(TensorElement({f1, f2}, slice));
      if (!inner.exact) throw std::invalid_argument("inner pi norm not in an exact regime");
      s += w0[i] * inner.value;
    }
    return s;
  }
  if (f1.tag() == PNorm::P1 && f2.tag() == PNorm::P1) {
    Eigen::VectorXd w1 = f1.weights(), w2 = f2.weights();
    double s = 0.0;
    for (int j = 0; j < n1; ++j)
      for (int k = 0; k < n2; ++k) {
        Eigen::VectorXd slice(n0);
        for (int i = 0; i < n0; ++i) slice[i] = at(i, j, k);
        s += w1[j] * w2[k] * f0.slice_norm(slice);
      }
    return s;
  }
  throw std::invalid_argument("grouped pi norm needs at least two L^1-type factors");
}

}  // namespace repkit

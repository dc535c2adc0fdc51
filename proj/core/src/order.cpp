#include "repkit/order.hpp"

#include <cmath>
#include <stdexcept>

#include "repkit/rng.hpp"

namespace repkit {

namespace {

void require_ordered(const SpaceSpec& spec, const char* what) {
  if (!spec.ordered) throw std::invalid_argument(std::string(what) + " requires an ordered space");
}

}  // namespace

bool is_positive_function(const LpFunction& f) {
  require_ordered(f.spec(), "positivity of a function");
  return (f.values().array() >= 0.0).all();
}

bool is_positive_kernel(const Kernel& k) {
  require_ordered(k.domain_spec(), "positivity of a kernel");
  require_ordered(k.codomain_spec(), "positivity of a kernel");
  return (k.storage().array() >= 0.0).all();
}

bool is_positive_operator(const BlockOperator& T) {
  require_ordered(T.domain().spec, "positivity of an operator");
  require_ordered(T.codomain().spec, "positivity of an operator");
  return (T.blocks().array() >= 0.0).all();
}

SampledPositivity is_positive_operator_sampled(const BlockOperator& T, int samples,
                                               std::uint64_t seed) {
  require_ordered(T.domain().spec, "positivity of an operator");
  require_ordered(T.codomain().spec, "positivity of an operator");
  const FunctionSpace& dom = T.domain();

  auto probe = [&](const LpFunction& f) -> bool {
    return (apply(T, f).values().array() >= -kConeTolerance).all();
  };

  for (int w1 = 0; w1 < dom.space.size(); ++w1) {
    for (int j = 0; j < dom.spec.dim; ++j) {
      Eigen::MatrixXd values = Eigen::MatrixXd::Zero(dom.spec.dim, dom.space.size());
      values(j, w1) = 1.0 / dom.space.weight(w1);
      LpFunction f(dom.space, dom.spec, dom.exponent, values);
      if (!probe(f)) return SampledPositivity{false, f};
    }
  }
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    Eigen::MatrixXd values = rng.gaussian_matrix(dom.spec.dim, dom.space.size()).cwiseAbs();
    LpFunction f(dom.space, dom.spec, dom.exponent, values);
    if (!probe(f)) return SampledPositivity{false, f};
  }
  return SampledPositivity{true, std::nullopt};
}

BlockOperator modulus(const BlockOperator& T) {
  require_ordered(T.domain().spec, "the modulus");
  require_ordered(T.codomain().spec, "the modulus");
  return T.with_blocks(T.blocks().cwiseAbs());
}

RegularNormReport regular_norm(const BlockOperator& T) {
  BlockOperator mod = modulus(T);
  OperatorNorm plain = operator_norm(T);
  OperatorNorm reg = operator_norm(mod);
  if (!plain.exact || !reg.exact)
    throw std::invalid_argument("regular norm requires an exact operator-norm regime");
  RegularNormReport r;
  r.operator_norm = plain;
  r.regular_norm = reg;
  r.ratio = plain.value > 0.0 ? reg.value / plain.value : 1.0;
  r.modulus_blocks = std::move(mod);
  return r;
}

RegularKernelReport check_regular_kernel_correspondence(const Kernel& k) {
  require_ordered(k.domain_spec(), "the regular kernel correspondence");
  require_ordered(k.codomain_spec(), "the regular kernel correspondence");

  BlockOperator T = kernel_to_operator(k);
  RegularNormReport reg = regular_norm(T);

  NormBound blockwise{0.0, 0.0, true};
  for (int w1 = 0; w1 < k.space1().size(); ++w1)
    for (int w2 = 0; w2 < k.space2().size(); ++w2)
      blockwise = NormBound::max(
          blockwise, matrix_operator_norm(k.block(w1, w2).cwiseAbs(), k.domain_spec(),
                                          k.codomain_spec())
                         .bound);

  Kernel abs_kernel = k.with_storage(k.storage().cwiseAbs());
  bool modulus_commutes =
      kernel_to_operator(abs_kernel).blocks() == reg.modulus_blocks->blocks();

  RegularKernelReport r;
  r.operator_regular_norm = reg.regular_norm.value;
  r.kernel_blockwise_max = blockwise.value();
  r.difference = std::abs(r.operator_regular_norm - r.kernel_blockwise_max);
  r.kernel_positive = is_positive_kernel(k);
  r.operator_positive = is_positive_operator(T);
  r.positivity_equivalent = r.kernel_positive == r.operator_positive;
  r.modulus_commutes = modulus_commutes;
  r.tolerance = 1e-12;
  r.pass = r.difference <= r.tolerance && r.positivity_equivalent && r.modulus_commutes;
  return r;
}

Eigen::MatrixXd sylvester_hadamard(int n) {
  if (n < 1 || (n & (n - 1)) != 0)
    throw std::invalid_argument("Hadamard order must be a power of two");
  Eigen::MatrixXd h(1, 1);
  h(0, 0) = 1.0;
  while (h.rows() < n) {
    Eigen::MatrixXd next(2 * h.rows(), 2 * h.cols());
    next << h, h, h, -h;
    h = std::move(next);
  }
  return h;
}

std::vector<CounterexampleEntry> counterexample_sequence(int max_n) {
  if (max_n < 2 || max_n > 1024 || (max_n & (max_n - 1)) != 0)
    throw std::invalid_argument("max_n must be a power of two between 2 and 1024");
  std::vector<CounterexampleEntry> entries;
  MeasureSpace point({"0"}, Eigen::VectorXd::Ones(1));
  for (int n = 2; n <= max_n; n *= 2) {
    SpaceSpec spec{n, PNorm::P2, true};
    FunctionSpace fs{point, spec, PNorm::P2};
    double scale = std::pow(static_cast<double>(n), -0.75);
    BlockOperator s(fs, fs, scale * sylvester_hadamard(n));
    CounterexampleEntry e;
    e.n = n;
    e.report = regular_norm(s);
    e.expected_operator_norm = std::pow(static_cast<double>(n), -0.25);
    e.expected_regular_norm = std::pow(static_cast<double>(n), 0.25);
    entries.push_back(std::move(e));
  }
  return entries;
}

double p_tensor_norm_l1_factor(const TensorElement& z) {
  if (z.order() != 2)
    throw std::invalid_argument("positive tensor norm requires exactly two factors");
  auto is_l1_lattice = [](const TensorFactor& f) {
    return f.tag() == PNorm::P1 && f.ordered();
  };
  int axis;
  if (is_l1_lattice(z.factor(0))) axis = 0;
  else if (is_l1_lattice(z.factor(1))) axis = 1;
  else throw std::invalid_argument("positive tensor norm requires an ordered L^1 factor");
  if (!z.factor(1 - axis).ordered())
    throw std::invalid_argument("positive tensor norm requires ordered factors");

  Eigen::MatrixXd m = z.as_matrix();
  if (axis == 1) m.transposeInPlace();
  const TensorFactor& l1 = z.factor(axis);
  const TensorFactor& other = z.factor(1 - axis);

  // Lattice sanity check: under the slice identification, the entrywise
  // cone of the tensor element is the positive cone of the function.
  if (l1.is_lp() && !other.is_lp()) {
    LpFunction slices(l1.measure(), other.spec(), PNorm::P1, m.transpose());
    if (is_positive_function(slices) != (z.coefficients().array() >= 0.0).all())
      throw std::logic_error("positive cone mismatch in the L^1 slice identification");
  }

  Eigen::VectorXd w = l1.weights();
  double s = 0.0;
  for (int i = 0; i < m.rows(); ++i) s += w[i] * other.slice_norm(m.row(i).transpose());
  return s;
}

RegularDualityReport regular_duality_check(const Eigen::MatrixXd& S, const SpaceSpec& domain,
                                           const SpaceSpec& codomain, std::uint64_t seed) {
  if (domain.norm != PNorm::P1)
    throw std::invalid_argument("regular duality check requires an l^1 domain");
  require_ordered(domain, "the regular duality check");
  require_ordered(codomain, "the regular duality check");
  if (S.rows() != codomain.dim || S.cols() != domain.dim)
    throw std::invalid_argument("operator shape does not match the specs");

  // Left side: ||S||_r = max column norm of |S|.
  double reg = 0.0;
  for (int j = 0; j < S.cols(); ++j)
    reg = std::max(reg, vector_norm(S.col(j).cwiseAbs(), codomain));

  // Right side: sup of the functional over the extreme points e_i (x) v,
  // the inner sup evaluated through an explicit dual attainer.
  double sup = 0.0;
  for (int i = 0; i < S.cols(); ++i) {
    Eigen::VectorXd column = S.col(i);
    Eigen::VectorXd v = dual_attainer(column, codomain.dual());
    sup = std::max(sup, std::abs(column.dot(v)));
  }

  bool s_positive = (S.array() >= 0.0).all();
  bool functional_positive = true;
  for (int i = 0; i < S.cols() && functional_positive; ++i)
    for (int j = 0; j < S.rows() && functional_positive; ++j)
      if (S(j, i) < 0.0) functional_positive = false;
  Rng rng(seed);
  for (int s = 0; s < 64 && functional_positive; ++s) {
    Eigen::VectorXd u = rng.gaussian_vector(S.cols()).cwiseAbs();
    Eigen::VectorXd v = rng.gaussian_vector(S.rows()).cwiseAbs();
    if (v.dot(S * u) < -kConeTolerance) functional_positive = false;
  }

  RegularDualityReport r;
  r.regular_norm = reg;
  r.dual_sup = sup;
  r.difference = std::abs(reg - sup);
  r.s_positive = s_positive;
  r.functional_positive = functional_positive;
  r.positivity_match = s_positive == functional_positive;
  r.tolerance = 1e-10;
  r.pass = r.difference <= r.tolerance && r.positivity_match;
  return r;
}

}  // namespace repkit

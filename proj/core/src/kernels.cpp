#include "repkit/kernels.hpp"

#include <cmath>
#include <stdexcept>

#include "repkit/rng.hpp"

namespace repkit {

Kernel::Kernel(MeasureSpace space1, MeasureSpace space2, SpaceSpec domain_spec,
               SpaceSpec codomain_spec, Eigen::MatrixXd blocks)
    : space1_(std::move(space1)),
      space2_(std::move(space2)),
      domain_spec_(domain_spec),
      codomain_spec_(codomain_spec),
      blocks_(std::move(blocks)) {
  const Eigen::Index rows = static_cast<Eigen::Index>(codomain_spec_.dim) * space2_.size();
  const Eigen::Index cols = static_cast<Eigen::Index>(domain_spec_.dim) * space1_.size();
  if (blocks_.rows() != rows || blocks_.cols() != cols)
    throw std::invalid_argument("kernel block table shape does not match spaces");
}

Kernel Kernel::zero(MeasureSpace space1, MeasureSpace space2, SpaceSpec domain_spec,
                    SpaceSpec codomain_spec) {
  const Eigen::Index rows = static_cast<Eigen::Index>(codomain_spec.dim) * space2.size();
  const Eigen::Index cols = static_cast<Eigen::Index>(domain_spec.dim) * space1.size();
  return Kernel(std::move(space1), std::move(space2), domain_spec, codomain_spec,
                Eigen::MatrixXd::Zero(rows, cols));
}

NormBound kernel_sup_norm(const Kernel& k) {
  NormBound bound{0.0, 0.0, true};
  for (int w1 = 0; w1 < k.space1().size(); ++w1)
    for (int w2 = 0; w2 < k.space2().size(); ++w2)
      bound = NormBound::max(
          bound, matrix_operator_norm(k.block(w1, w2), k.domain_spec(), k.codomain_spec()).bound);
  return bound;
}

BlockOperator kernel_to_operator(const Kernel& k) {
  Eigen::MatrixXd blocks = k.storage();
  const int dim_e = k.domain_spec().dim;
  for (int w1 = 0; w1 < k.space1().size(); ++w1)
    blocks.middleCols(w1 * dim_e, dim_e) *= k.space1().weight(w1);
  return BlockOperator(FunctionSpace{k.space1(), k.domain_spec(), PNorm::P1},
                       FunctionSpace{k.space2(), k.codomain_spec(), PNorm::PInf},
                       std::move(blocks));
}

Kernel operator_to_kernel(const BlockOperator& T) {
  if (T.domain().exponent != PNorm::P1 || T.codomain().exponent != PNorm::PInf)
    throw std::invalid_argument(
        "kernel extraction requires an L^1 domain and an L^inf codomain");
  Eigen::MatrixXd blocks = T.blocks();
  const int dim_e = T.domain().spec.dim;
  for (int w1 = 0; w1 < T.domain().space.size(); ++w1)
    blocks.middleCols(w1 * dim_e, dim_e) /= T.domain().space.weight(w1);
  return Kernel(T.domain().space, T.codomain().space, T.domain().spec, T.codomain().spec,
                std::move(blocks));
}

Kernel extract_density(const BlockOperator& T) {
  if (T.domain().spec.dim != 1)
    throw std::invalid_argument("density extraction requires a scalar domain spec");
  if (T.codomain().space.size() != 1)
    throw std::invalid_argument("density extraction requires a one-atom codomain space");
  return operator_to_kernel(T);
}

namespace {

// Best scaled-atom input; coincides with the exact witness in the closed-form
// regimes and stays a feasible attainer otherwise.
LpFunction best_atomic_probe(const BlockOperator& T) {
  const FunctionSpace& dom = T.domain();
  double best = -1.0;
  Eigen::MatrixXd best_values = Eigen::MatrixXd::Zero(dom.spec.dim, dom.space.size());
  for (int w1 = 0; w1 < dom.space.size(); ++w1) {
    for (int j = 0; j < dom.spec.dim; ++j) {
      Eigen::MatrixXd values = Eigen::MatrixXd::Zero(dom.spec.dim, dom.space.size());
      values(j, w1) = 1.0 / dom.space.weight(w1);
      LpFunction f(dom.space, dom.spec, dom.exponent, values);
      double v = lp_norm(apply(T, f));
      if (v > best) {
        best = v;
        best_values = values;
      }
    }
  }
  return LpFunction(dom.space, dom.spec, dom.exponent, best_values);
}

}  // namespace

IsometryReport check_isometry(const Kernel& k, int samples, std::uint64_t seed,
                              double tolerance) {
  BlockOperator T = kernel_to_operator(k);
  NormBound sup = kernel_sup_norm(k);
  OperatorNorm on = operator_norm(T);

  IsometryReport report{.sup_norm = sup.value(),
                        .operator_norm = on.value,
                        .difference = std::abs(sup.value() - on.value),
                        .probe_max = 0.0,
                        .probe_excess = 0.0,
                        .samples = samples,
                        .seed = seed,
                        .tolerance = tolerance,
                        .pass = false,
                        .witness = on.exact ? norm_witness(T) : best_atomic_probe(T)};

  Rng rng(seed);
  const FunctionSpace& dom = T.domain();
  for (int s = 0; s < samples; ++s) {
    Eigen::MatrixXd values = rng.gaussian_matrix(dom.spec.dim, dom.space.size());
    LpFunction f(dom.space, dom.spec, dom.exponent, values);
    double n = lp_norm(f);
    if (n == 0.0) continue;
    LpFunction unit(dom.space, dom.spec, dom.exponent, values / n);
    report.probe_max = std::max(report.probe_max, lp_norm(apply(T, unit)));
  }
  report.probe_excess = std::max(0.0, report.probe_max - report.sup_norm);
  report.pass = report.difference <= tolerance && report.probe_excess <= 1e-9;
  return report;
}

}  // namespace repkit

#include "repkit/hilbert_schmidt.hpp"

#include <cmath>
#include <stdexcept>

#include "repkit/rng.hpp"

namespace repkit {

namespace {

void require_hilbert(const BlockOperator& T) {
  if (T.domain().spec.norm != PNorm::P2 || T.codomain().spec.norm != PNorm::P2 ||
      T.domain().exponent != PNorm::P2 || T.codomain().exponent != PNorm::P2)
    throw std::invalid_argument("Hilbert-Schmidt norms need p2 specs and exponents");
}

void require_hilbert(const Kernel& k) {
  if (k.domain_spec().norm != PNorm::P2 || k.codomain_spec().norm != PNorm::P2)
    throw std::invalid_argument("Hilbert-Schmidt norms need p2 specs");
}

}  // namespace

double hs_norm_operator(const BlockOperator& T) {
  require_hilbert(T);
  const MeasureSpace& s1 = T.domain().space;
  const int dim_e = T.domain().spec.dim;
  double sum = 0.0;
  for (int w1 = 0; w1 < s1.size(); ++w1) {
    for (int i = 0; i < dim_e; ++i) {
      Eigen::MatrixXd values = Eigen::MatrixXd::Zero(dim_e, s1.size());
      values(i, w1) = 1.0 / std::sqrt(s1.weight(w1));
      LpFunction basis(s1, T.domain().spec, PNorm::P2, values);
      double image = lp_norm(apply(T, basis));
      sum += image * image;
    }
  }
  return std::sqrt(sum);
}

double hs_norm_kernel(const Kernel& k) {
  require_hilbert(k);
  double sum = 0.0;
  for (int w1 = 0; w1 < k.space1().size(); ++w1)
    for (int w2 = 0; w2 < k.space2().size(); ++w2)
      sum += k.space1().weight(w1) * k.space2().weight(w2) * k.block(w1, w2).squaredNorm();
  return std::sqrt(sum);
}

BlockOperator hs_operator(const Kernel& k) {
  require_hilbert(k);
  Eigen::MatrixXd blocks = k.storage();
  const int dim_e = k.domain_spec().dim;
  for (int w1 = 0; w1 < k.space1().size(); ++w1)
    blocks.middleCols(w1 * dim_e, dim_e) *= k.space1().weight(w1);
  return BlockOperator(FunctionSpace{k.space1(), k.domain_spec(), PNorm::P2},
                       FunctionSpace{k.space2(), k.codomain_spec(), PNorm::P2},
                       std::move(blocks));
}

Kernel hs_kernel(const BlockOperator& T) {
  require_hilbert(T);
  Eigen::MatrixXd blocks = T.blocks();
  const int dim_e = T.domain().spec.dim;
  for (int w1 = 0; w1 < T.domain().space.size(); ++w1)
    blocks.middleCols(w1 * dim_e, dim_e) /= T.domain().space.weight(w1);
  return Kernel(T.domain().space, T.codomain().space, T.domain().spec, T.codomain().spec,
                std::move(blocks));
}

HsReport check_hs_isometry(const Kernel& k, std::uint64_t seed) {
  BlockOperator T = hs_operator(k);
  HsReport r;
  r.hs_norm_operator = hs_norm_operator(T);
  r.hs_norm_kernel = hs_norm_kernel(k);
  r.difference = std::abs(r.hs_norm_operator - r.hs_norm_kernel);
  r.spectral_norm = operator_norm(T).value;
  double hs = r.hs_norm_kernel;

  Rng rng(seed);
  const FunctionSpace& dom = T.domain();
  double excess = 0.0;
  for (int s = 0; s < 64; ++s) {
    Eigen::MatrixXd values = rng.gaussian_matrix(dom.spec.dim, dom.space.size());
    LpFunction f(dom.space, dom.spec, dom.exponent, values);
    double fn = lp_norm(f);
    if (fn == 0.0) continue;
    excess = std::max(excess, lp_norm(apply(T, f)) - hs * fn);
  }
  r.probe_excess = std::max(0.0, excess);
  r.tolerance = 1e-10;
  r.pass = r.difference <= r.tolerance && r.spectral_norm <= hs + r.tolerance &&
           r.probe_excess <= 1e-9;
  return r;
}

}  // namespace repkit

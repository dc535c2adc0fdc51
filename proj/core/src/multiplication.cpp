#include "repkit/multiplication.hpp"

#include <cmath>

#include "repkit/order.hpp"

namespace repkit {

Multiplier::Multiplier(MeasureSpace space, SpaceSpec spec, std::vector<Eigen::MatrixXd> blocks)
    : space_(std::move(space)), spec_(spec), blocks_(std::move(blocks)) {
  if (static_cast<int>(blocks_.size()) != space_.size())
    throw std::invalid_argument("multiplier needs one block per atom");
  for (const auto& b : blocks_)
    if (b.rows() != spec_.dim || b.cols() != spec_.dim)
      throw std::invalid_argument("multiplier blocks must be dim x dim");
}

NormBound multiplier_sup_norm(const Multiplier& m) {
  NormBound bound{0.0, 0.0, true};
  for (const auto& b : m.blocks())
    bound = NormBound::max(bound, matrix_operator_norm(b, m.spec(), m.spec()).bound);
  return bound;
}

namespace {

void require_common_space(const BlockOperator& T) {
  if (!(T.domain().space == T.codomain().space) || T.domain().spec != T.codomain().spec ||
      T.domain().exponent != T.codomain().exponent)
    throw std::invalid_argument("locality needs a common L^p space on both sides");
}

// Restriction 1_A f for the singleton A = {atom}.
LpFunction restrict_to_atom(const LpFunction& f, int atom) {
  Eigen::MatrixXd values = Eigen::MatrixXd::Zero(f.values().rows(), f.values().cols());
  values.col(atom) = f.values().col(atom);
  return LpFunction(f.space(), f.spec(), f.exponent(), values);
}

}  // namespace

LocalityResult is_local(const BlockOperator& T) {
  require_common_space(T);
  const int n = T.domain().space.size();
  const int dim = T.domain().spec.dim;
  for (int w2 = 0; w2 < n; ++w2) {
    for (int w1 = 0; w1 < n; ++w1) {
      if (w1 == w2) continue;
      Eigen::MatrixXd b = T.block(w2, w1).cwiseAbs();
      Eigen::Index i = 0, j = 0;
      if (b.maxCoeff(&i, &j) == 0.0) continue;
      // Replay the definition on the offending basis atom.
      Eigen::MatrixXd values = Eigen::MatrixXd::Zero(dim, n);
      values(j, w1) = 1.0;
      LpFunction f(T.domain().space, T.domain().spec, T.domain().exponent, values);
      LocalityWitness w{w1, f, apply(T, restrict_to_atom(f, w1)),
                        restrict_to_atom(apply(T, f), w1)};
      return LocalityResult{false, std::move(w)};
    }
  }
  return LocalityResult{true, std::nullopt};
}

Multiplier extract_multiplier(const BlockOperator& T) {
  LocalityResult loc = is_local(T);
  if (!loc.local) throw NonLocalError(std::move(*loc.witness));
  std::vector<Eigen::MatrixXd> blocks;
  blocks.reserve(static_cast<size_t>(T.domain().space.size()));
  // M(w) v = (T (1_w v))(w), which for block operators is the diagonal block.
  for (int w = 0; w < T.domain().space.size(); ++w) blocks.emplace_back(T.block(w, w));
  return Multiplier(T.domain().space, T.domain().spec, std::move(blocks));
}

LpFunction multiplier_apply(const Multiplier& m, const LpFunction& f) {
  if (f.space() != m.space() || f.spec() != m.spec())
    throw std::invalid_argument("function does not live in the multiplier space");
  Eigen::MatrixXd values(m.spec().dim, m.space().size());
  for (int w = 0; w < m.space().size(); ++w) values.col(w) = m.block(w) * f.value(w);
  return LpFunction(f.space(), f.spec(), f.exponent(), values);
}

BlockOperator multiplication_operator(const Multiplier& m, PNorm exponent) {
  FunctionSpace fs{m.space(), m.spec(), exponent};
  BlockOperator op = BlockOperator::zero(fs, fs);
  Eigen::MatrixXd blocks = op.blocks();
  const int dim = m.spec().dim;
  for (int w = 0; w < m.space().size(); ++w)
    blocks.block(w * dim, w * dim, dim, dim) = m.block(w);
  return op.with_blocks(std::move(blocks));
}

MultiplierPositivityReport check_multiplier_positivity(const BlockOperator& T) {
  Multiplier m = extract_multiplier(T);  // throws NonLocalError when not local
  MultiplierPositivityReport r;
  r.operator_positive = is_positive_operator(T);
  r.multiplier_positive = true;
  for (int w = 0; w < m.space().size(); ++w) {
    if (!(m.block(w).array() >= 0.0).all()) {
      r.multiplier_positive = false;
      if (!r.witness_atom) r.witness_atom = w;
    }
  }
  r.match = r.operator_positive == r.multiplier_positive;
  r.pass = r.match;
  return r;
}

}  // namespace repkit

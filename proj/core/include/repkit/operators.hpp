#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <optional>

#include "repkit/matrix_norms.hpp"
#include "repkit/spaces.hpp"

namespace repkit {

// One side of an operator: an L^p space of spec-valued functions over a
// finite measure space.
struct FunctionSpace {
  MeasureSpace space;
  SpaceSpec spec;
  PNorm exponent;

  bool operator==(const FunctionSpace& o) const {
    return space == o.space && spec == o.spec && exponent == o.exponent;
  }
};

// A linear map between vector-valued L^p spaces stored as one dense matrix
// of blocks. Block (w2, w1) is the dim(G) x dim(E) matrix applied to the raw
// value f(w1); no measure weights enter the action:
//
//   (Tf)(w2) = sum_w1 B(w2, w1) f(w1).
//
// All mu-weighting lives in the kernel correspondence, which multiplies
// kernel blocks by mu1 when building an operator.
class BlockOperator {
 public:
  BlockOperator(FunctionSpace domain, FunctionSpace codomain, Eigen::MatrixXd blocks);

  static BlockOperator zero(FunctionSpace domain, FunctionSpace codomain);

  const FunctionSpace& domain() const { return domain_; }
  const FunctionSpace& codomain() const { return codomain_; }

  // Full (dim G * n2) x (dim E * n1) block matrix.
  const Eigen::MatrixXd& blocks() const { return blocks_; }

  Eigen::Block<const Eigen::MatrixXd> block(int w2, int w1) const {
    return blocks_.block(w2 * codomain_.spec.dim, w1 * domain_.spec.dim,
                         codomain_.spec.dim, domain_.spec.dim);
  }

  BlockOperator with_blocks(Eigen::MatrixXd b) const {
    return BlockOperator(domain_, codomain_, std::move(b));
  }

  bool same_shape(const BlockOperator& o) const {
    return domain_ == o.domain_ && codomain_ == o.codomain_;
  }

 private:
  FunctionSpace domain_;
  FunctionSpace codomain_;
  Eigen::MatrixXd blocks_;
};

LpFunction apply(const BlockOperator& T, const LpFunction& f);

BlockOperator operator+(const BlockOperator& a, const BlockOperator& b);
BlockOperator operator*(double c, const BlockOperator& a);
// Composition; domains must chain.
BlockOperator compose(const BlockOperator& a, const BlockOperator& b);

struct OperatorNorm {
  double value = 0.0;
  bool exact = true;
  double lower = 0.0;
  double upper = 0.0;
};

// Operator norm with a closed form in the exact regimes:
//   - domain exponent 1 (atomic extreme points of the L^1 ball),
//   - the full Hilbert configuration (p2 everywhere),
//   - L^inf -> L^inf with a pinf codomain spec (row dual-norm sums),
//   - block-diagonal operators with equal exponents on a common space.
// Anything else returns a certified interval: a sampled/ascent lower bound
// and a norm-equivalence upper bound, with value = interval midpoint.
OperatorNorm operator_norm(const BlockOperator& T);

// Unit-norm input attaining the exact operator norm to 1e-12. Throws when
// the operator is in a non-exact norm regime.
LpFunction norm_witness(const BlockOperator& T);

// Certified lower bound: max of ||Tf||_q over seeded random unit-norm f and
// scaled atomic candidates.
double norm_lower_bound_sampled(const BlockOperator& T, int samples, std::uint64_t seed);

// Certified upper bound from norm-equivalence relaxations.
double norm_upper_bound_relaxed(const BlockOperator& T);

}  // namespace repkit

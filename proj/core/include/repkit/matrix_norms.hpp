#pragma once

#include <Eigen/Core>

#include "repkit/spaces.hpp"

namespace repkit {

// A certified two-sided bound on a norm. `lower` is always attained by a
// feasible vector, `upper` is a proven bound; exact means both coincide
// (closed-form regime).
struct NormBound {
  double lower = 0.0;
  double upper = 0.0;
  bool exact = true;

  double value() const { return exact ? lower : 0.5 * (lower + upper); }
  double width() const { return upper - lower; }

  NormBound scaled(double c) const { return NormBound{c * lower, c * upper, exact}; }

  static NormBound exactly(double v) { return NormBound{v, v, true}; }
  static NormBound interval(double lo, double hi) { return NormBound{lo, hi, hi <= lo}; }
  static NormBound max(const NormBound& a, const NormBound& b);
};

// Result of a matrix operator-norm computation: the bound plus a vector u
// with ||u||_domain <= 1 attaining `bound.lower` (up to iteration tolerance
// in the spectral case, where the reported value is ||B u|| itself).
struct MatrixNorm {
  NormBound bound;
  Eigen::VectorXd witness;

  double value() const { return bound.value(); }
  bool exact() const { return bound.exact; }
};

// ||B||_{E->G}. Closed forms: E = p1 (max column norm), G = pinf (max row
// dual norm), E = G = p2 (spectral). Other pairs return a certified interval:
// the lower bound from alternating ascent over feasible vectors, the upper
// bound from norm-equivalence relaxations.
MatrixNorm matrix_operator_norm(const Eigen::MatrixXd& B, const SpaceSpec& domain,
                                const SpaceSpec& codomain);

// Largest singular value and an attaining unit right vector, by power
// iteration on B^T B with relative tolerance `rel_tol`. Starts from the
// all-ones direction and retries from a perturbed start on stagnation; the
// returned value is ||B v|| at the best iterate, so it is always a valid
// lower bound and the witness attains it exactly.
struct SpectralNorm {
  double value = 0.0;
  Eigen::VectorXd right_vector;
};
SpectralNorm spectral_norm(const Eigen::MatrixXd& B, double rel_tol = 1e-10);

// Sum of singular values.
double nuclear_norm(const Eigen::MatrixXd& B);

// max ||v||_2 / ||v||_spec over v != 0, for R^dim with the given tag.
double l2_embedding_constant(const SpaceSpec& from_spec);
// max ||v||_spec / ||v||_2.
double from_l2_embedding_constant(const SpaceSpec& to_spec);

}  // namespace repkit

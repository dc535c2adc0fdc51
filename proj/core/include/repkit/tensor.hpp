#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <vector>

#include "repkit/spaces.hpp"

namespace repkit {

// One factor of a tensor element: either a finite-dimensional normed space
// or an L^p space over a finite measure space (one axis per atom).
class TensorFactor {
 public:
  static TensorFactor space(SpaceSpec spec);
  static TensorFactor lp(MeasureSpace space, PNorm exponent);

  bool is_lp() const { return is_lp_; }
  int size() const;
  PNorm tag() const { return is_lp_ ? exponent_ : spec_.norm; }
  bool ordered() const { return is_lp_ ? true : spec_.ordered; }
  // Atom weights for L^p factors, ones for space factors.
  Eigen::VectorXd weights() const;
  const SpaceSpec& spec() const;
  const MeasureSpace& measure() const;

  // Norm of a coefficient slice along this axis (weighted for L^p factors).
  double slice_norm(const Eigen::VectorXd& slice) const;

  bool operator==(const TensorFactor& o) const;

 private:
  TensorFactor() = default;
  bool is_lp_ = false;
  SpaceSpec spec_{};
  std::vector<MeasureSpace> space_;  // empty or one element
  PNorm exponent_ = PNorm::P1;
};

// An element of a tensor product of finitely many factors, stored as a dense
// coefficient array in row-major order over the factor axes.
class TensorElement {
 public:
  TensorElement(std::vector<TensorFactor> factors, Eigen::VectorXd coefficients);

  static TensorElement simple(const TensorFactor& f0, const Eigen::VectorXd& u,
                              const TensorFactor& f1, const Eigen::VectorXd& v);

  int order() const { return static_cast<int>(factors_.size()); }
  const std::vector<TensorFactor>& factors() const { return factors_; }
  const TensorFactor& factor(int i) const { return factors_[static_cast<size_t>(i)]; }
  const Eigen::VectorXd& coefficients() const { return coeffs_; }

  // Order-2 elements as a (factor0.size x factor1.size) matrix.
  Eigen::MatrixXd as_matrix() const;

  TensorElement with_coefficients(Eigen::VectorXd c) const {
    return TensorElement(factors_, std::move(c));
  }

 private:
  std::vector<TensorFactor> factors_;
  Eigen::VectorXd coeffs_;
};

// Swap the two factors of an order-2 element.
TensorElement transpose(const TensorElement& z);

enum class PiRoute {
  ExactL1,      // one factor is L^1 / l^1: weighted slice-norm sum
  ExactNuclear, // both factors Hilbert: singular value sum
  ExactSimple,  // a one-dimensional factor
  Bounds,       // certified interval from search + duality
};

struct PiNorm {
  double value = 0.0;
  bool exact = true;
  double lower = 0.0;
  double upper = 0.0;
  PiRoute route = PiRoute::ExactL1;
};

// Projective tensor norm of an order-2 element. Exact in the L^1-factor,
// Hilbert, and one-dimensional regimes; otherwise a certified interval with
// the upper bound from a seeded decomposition search (greedy peeling plus
// alternating refinement) and the lower bound from duality against sampled
// unit-norm operators.
PiNorm pi_norm(const TensorElement& z);
PiNorm pi_norm(const TensorElement& z, std::uint64_t seed, int restarts);

// The search/duality interval computed unconditionally, bypassing the
// exact-regime shortcuts; cross-checks them in the property tests.
PiNorm pi_norm_bounds(const TensorElement& z, std::uint64_t seed, int restarts);

// <T, z> = sum_ij z_ij (T e_i)_j for T viewed as an operator from factor 0
// into the dual of factor 1.
double duality_pairing(const Eigen::MatrixXd& T, const TensorElement& z);

// For an element with two l^1 / L^1 factors: the operator of norm one whose
// pairing with z equals pi_norm(z).
Eigen::MatrixXd extremal_dual_operator(const TensorElement& z);

// Operator norm of T as a map from factor 0 into the dual of factor 1
// (upper bound in regimes without a closed form). Used to normalize dual
// candidates.
double dual_operator_norm_upper(const Eigen::MatrixXd& T, const TensorFactor& f0,
                                const TensorFactor& f1);

struct L1ProductReport {
  double pi_value = 0.0;
  double flattened_value = 0.0;
  double difference = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

// pi norm of a two-L^1-factor element against the L^1 norm of the flattened
// coefficients over the product space.
L1ProductReport check_l1_product_identity(const MeasureSpace& s1, const MeasureSpace& s2,
                                          const TensorElement& z);

struct CommutativityReport {
  PiNorm original;
  PiNorm transposed;
  double difference = 0.0;
  double tolerance = 0.0;
  bool overlap = false;  // interval consistency when either side is inexact
  bool pass = false;
};

CommutativityReport check_commutativity(const TensorElement& z, std::uint64_t seed);

// Three-factor pi norm evaluated by grouping either the first or the last
// pair; needs at least two L^1-type factors so that every inner norm is in
// an exact regime.
double pi_norm_grouped(const TensorElement& z, bool group_first_pair);

}  // namespace repkit

#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <vector>

#include "repkit/kernels.hpp"
#include "repkit/operators.hpp"
#include "repkit/tensor.hpp"

namespace repkit {

// Cone boundary for positivity of computed quantities. Stored data is
// always sign-tested exactly.
inline constexpr double kConeTolerance = 1e-12;

// Exact sign test on the stored values. Requires an ordered spec.
bool is_positive_function(const LpFunction& f);

// Exact sign test on every kernel block. Requires ordered specs.
bool is_positive_kernel(const Kernel& k);

// Exact sign test on every operator block. Requires ordered specs.
bool is_positive_operator(const BlockOperator& T);

struct SampledPositivity {
  bool positive = true;
  std::optional<LpFunction> witness;  // positive input mapped out of the cone
};

// Independent oracle: applies T to every scaled atom (x) basis vector (the
// construction used to prove that positive operators have positive kernels)
// and to `samples` seeded random positive functions, testing the outputs
// against the cone boundary.
SampledPositivity is_positive_operator_sampled(const BlockOperator& T, int samples,
                                               std::uint64_t seed);

// Entrywise absolute value of every block: the lattice modulus between
// finite-dimensional standard lattices.
BlockOperator modulus(const BlockOperator& T);

struct RegularNormReport {
  OperatorNorm operator_norm;
  OperatorNorm regular_norm;
  double ratio = 1.0;
  std::optional<BlockOperator> modulus_blocks;
};

// ||T||_r = || |T| ||, with the plain norm alongside. Requires ordered specs
// and an exact norm regime for both values.
RegularNormReport regular_norm(const BlockOperator& T);

struct RegularKernelReport {
  double operator_regular_norm = 0.0;
  double kernel_blockwise_max = 0.0;
  double difference = 0.0;
  bool kernel_positive = false;
  bool operator_positive = false;
  bool positivity_equivalent = false;
  bool modulus_commutes = false;
  double tolerance = 0.0;
  bool pass = false;
};

// The regular-kernel correspondence: ||T_k||_r equals the maximal blockwise
// regular norm of k, positivity transfers both ways, and taking the modulus
// commutes with the correspondence block by block.
RegularKernelReport check_regular_kernel_correspondence(const Kernel& k);

// Sylvester-Hadamard matrix; n must be a power of two.
Eigen::MatrixXd sylvester_hadamard(int n);

struct CounterexampleEntry {
  int n = 0;
  RegularNormReport report;
  double expected_operator_norm = 0.0;
  double expected_regular_norm = 0.0;
};

// The scaled Hadamard family S_n = H_n / n^(3/4) on l^2_n: operator norms
// n^(-1/4) decrease to zero while regular norms n^(1/4) grow without bound.
// max_n must be a power of two, at most 1024.
std::vector<CounterexampleEntry> counterexample_sequence(int max_n);

// The positive-tensor norm of an element with an L^1 / ordered-l^1 factor,
// which is the L^1(Omega; F) norm of the slice decomposition.
double p_tensor_norm_l1_factor(const TensorElement& z);

struct RegularDualityReport {
  double regular_norm = 0.0;
  double dual_sup = 0.0;
  double difference = 0.0;
  bool s_positive = false;
  bool functional_positive = false;
  bool positivity_match = false;
  double tolerance = 0.0;
  bool pass = false;
};

// For S from ordered l^1 into an ordered F': checks ||S||_r against the sup
// of the induced functional over the extreme points e_i (x) v of the
// positive-tensor unit ball, and that the functional is positive exactly
// when S is.
RegularDualityReport regular_duality_check(const Eigen::MatrixXd& S, const SpaceSpec& domain,
                                           const SpaceSpec& codomain, std::uint64_t seed);

}  // namespace repkit

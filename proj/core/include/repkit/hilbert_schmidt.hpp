#pragma once

#include <cstdint>

#include "repkit/kernels.hpp"
#include "repkit/operators.hpp"

namespace repkit {

// Hilbert-Schmidt norm of an operator between L^2 spaces with p2 value
// specs, by direct summation of ||T e||^2 over the orthonormal basis
// e = (1_w / sqrt(mu1(w))) (x) e_i.
double hs_norm_operator(const BlockOperator& T);

// Weighted Frobenius norm of a kernel with p2 specs:
// sqrt(sum mu1 mu2 ||k(w1,w2)||_F^2).
double hs_norm_kernel(const Kernel& k);

// The kernel correspondence at L^2 exponents: same weight convention as the
// L^1 -> L^inf case (operator blocks carry mu1), exponents p2 on both sides.
BlockOperator hs_operator(const Kernel& k);
Kernel hs_kernel(const BlockOperator& T);

struct HsReport {
  double hs_norm_operator = 0.0;
  double hs_norm_kernel = 0.0;
  double difference = 0.0;
  double spectral_norm = 0.0;
  double probe_excess = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

// Both Hilbert-Schmidt routes on the same kernel, the domination of the
// operator norm by the HS norm, and seeded probes ||Tf||_2 <= HS * ||f||_2.
HsReport check_hs_isometry(const Kernel& k, std::uint64_t seed);

}  // namespace repkit

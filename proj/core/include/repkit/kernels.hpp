#pragma once

#include <Eigen/Core>

#include <cstdint>

#include "repkit/operators.hpp"
#include "repkit/spaces.hpp"

namespace repkit {

// A kernel k on Omega1 x Omega2 with values in L(E, F'), stored as one
// dim(F') x dim(E) matrix per atom pair. Kernels are unweighted: the
// correspondence with operators puts the mu1 factor into the operator
// blocks, so k(w1, w2) = B(w2, w1) / mu1(w1) always.
class Kernel {
 public:
  Kernel(MeasureSpace space1, MeasureSpace space2, SpaceSpec domain_spec,
         SpaceSpec codomain_spec, Eigen::MatrixXd blocks);

  static Kernel zero(MeasureSpace space1, MeasureSpace space2, SpaceSpec domain_spec,
                     SpaceSpec codomain_spec);

  const MeasureSpace& space1() const { return space1_; }
  const MeasureSpace& space2() const { return space2_; }
  const SpaceSpec& domain_spec() const { return domain_spec_; }
  const SpaceSpec& codomain_spec() const { return codomain_spec_; }

  // Stored in operator layout: block (w1, w2) sits at row-block w2,
  // column-block w1 of a (dim F' * n2) x (dim E * n1) matrix.
  const Eigen::MatrixXd& storage() const { return blocks_; }

  Eigen::Block<const Eigen::MatrixXd> block(int w1, int w2) const {
    return blocks_.block(w2 * codomain_spec_.dim, w1 * domain_spec_.dim,
                         codomain_spec_.dim, domain_spec_.dim);
  }

  Kernel with_storage(Eigen::MatrixXd b) const {
    return Kernel(space1_, space2_, domain_spec_, codomain_spec_, std::move(b));
  }

  bool same_shape(const Kernel& o) const {
    return space1_ == o.space1_ && space2_ == o.space2_ && domain_spec_ == o.domain_spec_ &&
           codomain_spec_ == o.codomain_spec_;
  }

 private:
  MeasureSpace space1_;
  MeasureSpace space2_;
  SpaceSpec domain_spec_;
  SpaceSpec codomain_spec_;
  Eigen::MatrixXd blocks_;
};

// The sigma*-sup norm at finite scale: max over atom pairs of the blockwise
// E -> F' operator norm (certified interval when a block pair has no closed
// form).
NormBound kernel_sup_norm(const Kernel& k);

// The canonical operator T_k from L^1(Omega1; E) to L^inf(Omega2; F'):
// B(w2, w1) = mu1(w1) * k(w1, w2).
BlockOperator kernel_to_operator(const Kernel& k);

// Inverse of kernel_to_operator. Requires domain exponent 1 and codomain
// exponent inf.
Kernel operator_to_kernel(const BlockOperator& T);

// Density of an operator from scalar L^1(Omega) into F' (encoded with a
// one-atom codomain space): the one-column kernel with sup norm equal to the
// operator norm.
Kernel extract_density(const BlockOperator& T);

struct IsometryReport {
  double sup_norm = 0.0;
  double operator_norm = 0.0;
  double difference = 0.0;
  double probe_max = 0.0;
  double probe_excess = 0.0;
  int samples = 0;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  bool pass = false;
  LpFunction witness;
};

// Checks that the kernel sup norm and the operator norm of T_k agree, and
// that seeded random unit-ball probes never beat the claimed norm.
IsometryReport check_isometry(const Kernel& k, int samples, std::uint64_t seed,
                              double tolerance = 1e-12);

}  // namespace repkit

#pragma once

#include <Eigen/Core>

#include <optional>
#include <stdexcept>
#include <vector>

#include "repkit/matrix_norms.hpp"
#include "repkit/operators.hpp"
#include "repkit/spaces.hpp"

namespace repkit {

// An operator-valued multiplier: one dim(F') x dim(F') matrix per atom,
// acting pointwise on functions.
class Multiplier {
 public:
  Multiplier(MeasureSpace space, SpaceSpec spec, std::vector<Eigen::MatrixXd> blocks);

  const MeasureSpace& space() const { return space_; }
  const SpaceSpec& spec() const { return spec_; }
  const Eigen::MatrixXd& block(int atom) const { return blocks_[static_cast<size_t>(atom)]; }
  const std::vector<Eigen::MatrixXd>& blocks() const { return blocks_; }

  bool operator==(const Multiplier& o) const {
    return space_ == o.space_ && spec_ == o.spec_ && blocks_ == o.blocks_;
  }

 private:
  MeasureSpace space_;
  SpaceSpec spec_;
  std::vector<Eigen::MatrixXd> blocks_;
};

// ||M||_inf = max over atoms of the blockwise F' -> F' operator norm.
NormBound multiplier_sup_norm(const Multiplier& m);

struct LocalityWitness {
  int atom = 0;          // the singleton set A
  LpFunction input;      // basis atom f with T(1_A f) != 1_A T f
  LpFunction t_of_restricted;
  LpFunction restricted_t;
};

struct LocalityResult {
  bool local = true;
  std::optional<LocalityWitness> witness;
};

// Thrown by extract_multiplier on non-local input; carries the witness.
class NonLocalError : public std::invalid_argument {
 public:
  explicit NonLocalError(LocalityWitness w)
      : std::invalid_argument("operator is not local"), witness(std::move(w)) {}
  LocalityWitness witness;
};

// An operator on a common L^p(Omega; F') is local iff every off-diagonal
// block vanishes; when it does not, the witness replays the indicator
// commutation failure on a basis atom.
LocalityResult is_local(const BlockOperator& T);

// Reads the multiplier off a local operator: M(w) v = (T (1_w v))(w).
// Throws NonLocalError on non-local input.
Multiplier extract_multiplier(const BlockOperator& T);

// Pointwise application (M f)(w) = M(w) f(w).
LpFunction multiplier_apply(const Multiplier& m, const LpFunction& f);

// The multiplication operator as a block-diagonal BlockOperator on
// L^p(Omega; F').
BlockOperator multiplication_operator(const Multiplier& m, PNorm exponent);

struct MultiplierPositivityReport {
  bool operator_positive = false;
  bool multiplier_positive = false;
  bool match = false;
  std::optional<int> witness_atom;  // atom with a negative multiplier entry
  bool pass = false;
};

// Positivity transfer for local operators: T is positive iff every M(w) is
// entrywise nonnegative.
MultiplierPositivityReport check_multiplier_positivity(const BlockOperator& T);

}  // namespace repkit

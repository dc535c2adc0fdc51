#pragma once

#include <Eigen/Core>

#include <string>
#include <vector>

namespace repkit {

// Norm tag for finite-dimensional spaces and for L^p exponents.
enum class PNorm { P1, P2, PInf };

const char* to_string(PNorm p);
PNorm pnorm_from_string(const std::string& s);

// Hoelder conjugate: 1 <-> inf, 2 <-> 2.
PNorm conjugate(PNorm p);

// A finite measure space: named atoms with strictly positive weights.
// Rejects empty spaces, duplicate atom names, and non-positive or
// non-finite weights at construction.
class MeasureSpace {
 public:
  MeasureSpace(std::vector<std::string> atoms, Eigen::VectorXd weights);

  int size() const { return static_cast<int>(atoms_.size()); }
  const std::string& atom(int i) const { return atoms_[static_cast<size_t>(i)]; }
  const std::vector<std::string>& atoms() const { return atoms_; }
  double weight(int i) const { return weights_[i]; }
  const Eigen::VectorXd& weights() const { return weights_; }
  double total_mass() const { return weights_.sum(); }

  bool operator==(const MeasureSpace& other) const;
  bool operator!=(const MeasureSpace& other) const { return !(*this == other); }

 private:
  std::vector<std::string> atoms_;
  Eigen::VectorXd weights_;
};

// Product measure: atoms are pairs "(a,x)" in row-major order over
// (s1, s2), weights multiply.
MeasureSpace product_space(const MeasureSpace& s1, const MeasureSpace& s2);

// Descriptor of a finite-dimensional normed space (R^dim, l^p),
// optionally carrying the coordinatewise lattice order.
struct SpaceSpec {
  int dim = 1;
  PNorm norm = PNorm::P2;
  bool ordered = false;

  // The dual space under the standard pairing: (R^n, p)' = (R^n, p').
  SpaceSpec dual() const { return SpaceSpec{dim, conjugate(norm), ordered}; }

  bool operator==(const SpaceSpec& o) const {
    return dim == o.dim && norm == o.norm && ordered == o.ordered;
  }
  bool operator!=(const SpaceSpec& o) const { return !(*this == o); }
};

SpaceSpec make_spec(int dim, PNorm norm, bool ordered = false);

// l^p norm of a coordinate vector per spec.norm. Throws on dimension mismatch.
double vector_norm(const Eigen::VectorXd& v, const SpaceSpec& spec);

// Norm of v as a functional on spec, i.e. the spec.dual() norm.
double dual_norm(const Eigen::VectorXd& v, const SpaceSpec& spec);

// A vector u with ||u||_spec <= 1 and v.dot(u) == dual_norm(v, spec).
Eigen::VectorXd dual_attainer(const Eigen::VectorXd& v, const SpaceSpec& spec);

// A function on a finite measure space with values in (R^dim, spec),
// carrying the exponent of the L^p space it lives in. Values are stored
// one column per atom.
class LpFunction {
 public:
  LpFunction(MeasureSpace space, SpaceSpec spec, PNorm exponent,
             Eigen::MatrixXd values);

  static LpFunction zero(const MeasureSpace& space, const SpaceSpec& spec,
                         PNorm exponent);

  const MeasureSpace& space() const { return space_; }
  const SpaceSpec& spec() const { return spec_; }
  PNorm exponent() const { return exponent_; }
  const Eigen::MatrixXd& values() const { return values_; }
  Eigen::VectorXd value(int atom) const { return values_.col(atom); }

 private:
  MeasureSpace space_;
  SpaceSpec spec_;
  PNorm exponent_;
  Eigen::MatrixXd values_;
};

// Weighted L^p norm: (sum_w mu(w) ||f(w)||^p)^(1/p), max over atoms for p=inf.
double lp_norm(const LpFunction& f);

// sum_w mu(w) <f(w), g(w)>. Requires matching spaces and dimensions.
double duality_bracket(const LpFunction& f, const LpFunction& g);

}  // namespace repkit

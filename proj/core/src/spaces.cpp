#include "repkit/spaces.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_set>

namespace repkit {

const char* to_string(PNorm p) {
  switch (p) {
    case PNorm::P1: return "p1";
    case PNorm::P2: return "p2";
    case PNorm::PInf: return "pinf";
  }
  return "p2";
}

PNorm pnorm_from_string(const std::string& s) {
  if (s == "p1") return PNorm::P1;
  if (s == "p2") return PNorm::P2;
  if (s == "pinf") return PNorm::PInf;
  throw std::invalid_argument("unknown norm tag: " + s);
}

PNorm conjugate(PNorm p) {
  switch (p) {
    case PNorm::P1: return PNorm::PInf;
    case PNorm::P2: return PNorm::P2;
    case PNorm::PInf: return PNorm::P1;
  }
  return PNorm::P2;
}

MeasureSpace::MeasureSpace(std::vector<std::string> atoms, Eigen::VectorXd weights)
    : atoms_(std::move(atoms)), weights_(std::move(weights)) {
  if (atoms_.empty()) throw std::invalid_argument("measure space must have at least one atom");
  if (static_cast<int>(atoms_.size()) != weights_.size())
    throw std::invalid_argument("atom/weight count mismatch");
  std::unordered_set<std::string> seen;
  for (const auto& a : atoms_) {
    if (!seen.insert(a).second) throw std::invalid_argument("duplicate atom identifier: " + a);
  }
  for (int i = 0; i < weights_.size(); ++i) {
    if (!(weights_[i] > 0.0) || !std::isfinite(weights_[i]))
      throw std::invalid_argument("atom weight must be strictly positive and finite");
  }
}

bool MeasureSpace::operator==(const MeasureSpace& other) const {
  return atoms_ == other.atoms_ && weights_.size() == other.weights_.size() &&
         weights_ == other.weights_;
}

MeasureSpace product_space(const MeasureSpace& s1, const MeasureSpace& s2) {
  std::vector<std::string> atoms;
  atoms.reserve(static_cast<size_t>(s1.size()) * static_cast<size_t>(s2.size()));
  Eigen::VectorXd weights(s1.size() * s2.size());
  int k = 0;
  for (int i = 0; i < s1.size(); ++i) {
    for (int j = 0; j < s2.size(); ++j) {
      atoms.push_back("(" + s1.atom(i) + "," + s2.atom(j) + ")");
      weights[k++] = s1.weight(i) * s2.weight(j);
    }
  }
  return MeasureSpace(std::move(atoms), std::move(weights));
}

SpaceSpec make_spec(int dim, PNorm norm, bool ordered) {
  if (dim < 1) throw std::invalid_argument("space dimension must be >= 1");
  return SpaceSpec{dim, norm, ordered};
}

double vector_norm(const Eigen::VectorXd& v, const SpaceSpec& spec) {
  if (v.size() != spec.dim) throw std::invalid_argument("vector dimension does not match spec");
  switch (spec.norm) {
    case PNorm::P1: return v.lpNorm<1>();
    case PNorm::P2: return v.norm();
    case PNorm::PInf: return v.size() ? v.lpNorm<Eigen::Infinity>() : 0.0;
  }
  return 0.0;
}

double dual_norm(const Eigen::VectorXd& v, const SpaceSpec& spec) {
  return vector_norm(v, spec.dual());
}

Eigen::VectorXd dual_attainer(const Eigen::VectorXd& v, const SpaceSpec& spec) {
  if (v.size() != spec.dim) throw std::invalid_argument("vector dimension does not match spec");
  Eigen::VectorXd u = Eigen::VectorXd::Zero(v.size());
  switch (spec.norm) {
    case PNorm::P1: {
      // sup over the l^1 ball is attained at a signed basis vector.
      int j = 0;
      v.cwiseAbs().maxCoeff(&j);
      u[j] = v[j] >= 0.0 ? 1.0 : -1.0;
      if (v[j] == 0.0) u[j] = 1.0;
      break;
    }
    case PNorm::P2: {
      double n = v.norm();
      if (n > 0.0) u = v / n;
      break;
    }
    case PNorm::PInf: {
      for (int i = 0; i < v.size(); ++i) u[i] = v[i] > 0.0 ? 1.0 : (v[i] < 0.0 ? -1.0 : 0.0);
      break;
    }
  }
  return u;
}

LpFunction::LpFunction(MeasureSpace space, SpaceSpec spec, PNorm exponent,
                       Eigen::MatrixXd values)
    : space_(std::move(space)), spec_(spec), exponent_(exponent), values_(std::move(values)) {
  if (values_.rows() != spec_.dim || values_.cols() != space_.size())
    throw std::invalid_argument("function value table must be dim x atoms");
}

LpFunction LpFunction::zero(const MeasureSpace& space, const SpaceSpec& spec, PNorm exponent) {
  return LpFunction(space, spec, exponent, Eigen::MatrixXd::Zero(spec.dim, space.size()));
}

double lp_norm(const LpFunction& f) {
  const auto& mu = f.space().weights();
  const int n = f.space().size();
  switch (f.exponent()) {
    case PNorm::P1: {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += mu[i] * vector_norm(f.value(i), f.spec());
      return s;
    }
    case PNorm::P2: {
      double s = 0.0;
      for (int i = 0; i < n; ++i) {
        double vn = vector_norm(f.value(i), f.spec());
        s += mu[i] * vn * vn;
      }
      return std::sqrt(s);
    }
    case PNorm::PInf: {
      double m = 0.0;
      for (int i = 0; i < n; ++i) m = std::max(m, vector_norm(f.value(i), f.spec()));
      return m;
    }
  }
  return 0.0;
}

double duality_bracket(const LpFunction& f, const LpFunction& g) {
  if (f.space() != g.space()) throw std::invalid_argument("duality bracket requires a common measure space");
  if (f.spec().dim != g.spec().dim) throw std::invalid_argument("duality bracket requires matching dimensions");
  double s = 0.0;
  for (int i = 0; i < f.space().size(); ++i) s += f.space().weight(i) * f.value(i).dot(g.value(i));
  return s;
}

}  // namespace repkit

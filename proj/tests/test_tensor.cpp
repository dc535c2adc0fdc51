#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "repkit/tensor.hpp"
#include "testutil.hpp"

using namespace repkit;
using namespace repkit::testing;

namespace {

TensorFactor spec_factor(int dim, PNorm p) { return TensorFactor::space({dim, p, false}); }

TensorElement matrix_element(const TensorFactor& f0, const TensorFactor& f1,
                             const Eigen::MatrixXd& m) {
  Eigen::VectorXd c(m.size());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) c[i * m.cols() + j] = m(i, j);
  return TensorElement({f0, f1}, c);
}

}  // namespace

TEST_CASE("pi norm is a cross norm on simple tensors, all tag pairs") {
  Rng rng(97);
  for (PNorm p : {PNorm::P1, PNorm::P2, PNorm::PInf}) {
    for (PNorm q : {PNorm::P1, PNorm::P2, PNorm::PInf}) {
      for (int trial = 0; trial < 10; ++trial) {
        int n = 1 + rng.uniform_int(4), m = 1 + rng.uniform_int(4);
        Eigen::VectorXd u = rng.gaussian_vector(n);
        Eigen::VectorXd v = rng.gaussian_vector(m);
        TensorFactor f0 = spec_factor(n, p), f1 = spec_factor(m, q);
        TensorElement z = TensorElement::simple(f0, u, f1, v);
        double expected = vector_norm(u, f0.spec()) * vector_norm(v, f1.spec());
        PiNorm pn = pi_norm(z);
        CHECK(pn.value == doctest::Approx(expected).epsilon(1e-12));
        CHECK(pn.upper - pn.lower <= 1e-10 * std::max(1.0, expected));
      }
    }
  }
}

TEST_CASE("pi norm examples") {
  // l1_2 (x) l1_2, e1(x)e1 + e2(x)e2 -> 2.
  Eigen::MatrixXd id2 = Eigen::MatrixXd::Identity(2, 2);
  PiNorm diag = pi_norm(matrix_element(spec_factor(2, PNorm::P1), spec_factor(2, PNorm::P1), id2));
  CHECK(diag.exact);
  CHECK(diag.value == doctest::Approx(2.0));

  // l2_2 (x) l2_2, identity coefficients -> nuclear norm 2.
  PiNorm nuc = pi_norm(matrix_element(spec_factor(2, PNorm::P2), spec_factor(2, PNorm::P2), id2));
  CHECK(nuc.exact);
  CHECK(nuc.route == PiRoute::ExactNuclear);
  CHECK(nuc.value == doctest::Approx(2.0).epsilon(1e-12));

  CHECK_THROWS_AS(pi_norm(TensorElement({spec_factor(2, PNorm::P1)}, Eigen::Vector2d(1, 2))),
                  std::invalid_argument);
}

TEST_CASE("weighted L^1 factor formula matches the hand-computed example") {
  MeasureSpace s1({"a", "b"}, Eigen::Vector2d(1.0, 2.0));
  MeasureSpace s2({"x"}, Eigen::VectorXd::Constant(1, 3.0));
  TensorFactor f0 = TensorFactor::lp(s1, PNorm::P1);
  TensorFactor f1 = TensorFactor::lp(s2, PNorm::P1);
  Eigen::MatrixXd coeffs(2, 1);
  coeffs << 1.0, -1.0;
  TensorElement z = matrix_element(f0, f1, coeffs);
  PiNorm pn = pi_norm(z);
  CHECK(pn.exact);
  CHECK(pn.value == doctest::Approx(9.0));

  L1ProductReport r = check_l1_product_identity(s1, s2, z);
  CHECK(r.pass);
  CHECK(r.pi_value == doctest::Approx(9.0));
  CHECK(r.flattened_value == doctest::Approx(9.0));
}

TEST_CASE("L^1 product identity on random elements") {
  Rng rng(101);
  for (int trial = 0; trial < 100; ++trial) {
    MeasureSpace s1 = random_space(rng, 4, "a");
    MeasureSpace s2 = random_space(rng, 4, "b");
    Eigen::VectorXd c = rng.gaussian_vector(s1.size() * s2.size());
    TensorElement z({TensorFactor::lp(s1, PNorm::P1), TensorFactor::lp(s2, PNorm::P1)}, c);
    L1ProductReport r = check_l1_product_identity(s1, s2, z);
    CHECK(r.difference <= 1e-12);
    CHECK(r.pass);
  }
  // Zero and singleton cases.
  MeasureSpace one({"p"}, Eigen::VectorXd::Ones(1));
  TensorElement zero({TensorFactor::lp(one, PNorm::P1), TensorFactor::lp(one, PNorm::P1)},
                     Eigen::VectorXd::Zero(1));
  CHECK(check_l1_product_identity(one, one, zero).pi_value == 0.0);
  TensorElement c5({TensorFactor::lp(one, PNorm::P1), TensorFactor::lp(one, PNorm::P1)},
                   Eigen::VectorXd::Constant(1, -5.0));
  CHECK(check_l1_product_identity(one, one, c5).pi_value == doctest::Approx(5.0));
}

TEST_CASE("commutativity of the pi norm") {
  Rng rng(103);
  // l1 (x) X: both orientations exact via the L^1 formula.
  for (int trial = 0; trial < 60; ++trial) {
    TensorFactor f0 = spec_factor(1 + rng.uniform_int(4), PNorm::P1);
    TensorFactor f1 = spec_factor(1 + rng.uniform_int(4), random_pnorm(rng));
    Eigen::MatrixXd m = rng.gaussian_matrix(f0.size(), f1.size());
    CommutativityReport r = check_commutativity(matrix_element(f0, f1, m), 5);
    CHECK(r.original.exact);
    CHECK(r.transposed.exact);
    CHECK(r.difference <= 1e-12);
    CHECK(r.pass);
  }
  // Hilbert case: nuclear norm is transpose invariant.
  for (int trial = 0; trial < 40; ++trial) {
    TensorFactor f0 = spec_factor(2 + rng.uniform_int(3), PNorm::P2);
    TensorFactor f1 = spec_factor(2 + rng.uniform_int(3), PNorm::P2);
    Eigen::MatrixXd m = rng.gaussian_matrix(f0.size(), f1.size());
    CommutativityReport r = check_commutativity(matrix_element(f0, f1, m), 5);
    CHECK(r.original.route == PiRoute::ExactNuclear);
    CHECK(r.difference <= 1e-10);
    CHECK(r.pass);
  }
  // Bounds regime: intervals must overlap.
  for (int trial = 0; trial < 10; ++trial) {
    TensorFactor f0 = spec_factor(2, PNorm::PInf);
    TensorFactor f1 = spec_factor(3, PNorm::PInf);
    Eigen::MatrixXd m = rng.gaussian_matrix(2, 3);
    CommutativityReport r = check_commutativity(matrix_element(f0, f1, m), 5);
    CHECK(!r.original.exact);
    CHECK(r.overlap);
  }
}

TEST_CASE("duality pairing examples and bound") {
  Rng rng(107);
  TensorFactor f0 = spec_factor(3, PNorm::P1), f1 = spec_factor(2, PNorm::P1);
  Eigen::MatrixXd z = rng.gaussian_matrix(3, 2);
  TensorElement ze = matrix_element(f0, f1, z);

  CHECK(duality_pairing(Eigen::MatrixXd::Zero(2, 3), ze) == 0.0);

  // Simple tensor: <T, x (x) y> = <Tx, y>.
  Eigen::VectorXd x = rng.gaussian_vector(3), y = rng.gaussian_vector(2);
  Eigen::MatrixXd t = rng.gaussian_matrix(2, 3);
  CHECK(duality_pairing(t, TensorElement::simple(f0, x, f1, y)) ==
        doctest::Approx((t * x).dot(y)).epsilon(1e-12));

  // |<T, z>| <= max-entry-norm(T) * pi(z) in the l1 (x) l1 regime.
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::MatrixXd g = rng.gaussian_matrix(2, 3);
    double bound = g.cwiseAbs().maxCoeff() * pi_norm(ze).value;
    CHECK(std::abs(duality_pairing(g, ze)) <= bound * (1.0 + 1e-12));
  }

  CHECK_THROWS_AS(duality_pairing(Eigen::MatrixXd::Zero(3, 2), ze), std::invalid_argument);
}

TEST_CASE("the extremal dual operator attains the pi norm in the l1 regime") {
  Rng rng(109);
  for (int trial = 0; trial < 50; ++trial) {
    TensorFactor f0 = spec_factor(1 + rng.uniform_int(4), PNorm::P1);
    TensorFactor f1 = spec_factor(1 + rng.uniform_int(4), PNorm::P1);
    Eigen::MatrixXd m = rng.gaussian_matrix(f0.size(), f1.size());
    TensorElement z = matrix_element(f0, f1, m);
    Eigen::MatrixXd t = extremal_dual_operator(z);
    double pairing = duality_pairing(t, z);
    double norm_t = dual_operator_norm_upper(t, f0, f1);
    CHECK(norm_t == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pairing == doctest::Approx(pi_norm(z).value).epsilon(1e-12));
  }
  // Weighted variant.
  Rng rng2(111);
  MeasureSpace s1 = random_space(rng2, 4, "a");
  TensorFactor f0 = TensorFactor::lp(s1, PNorm::P1);
  TensorFactor f1 = spec_factor(3, PNorm::P1);
  Eigen::MatrixXd m = rng2.gaussian_matrix(s1.size(), 3);
  TensorElement z = matrix_element(f0, f1, m);
  CHECK(duality_pairing(extremal_dual_operator(z), z) ==
        doctest::Approx(pi_norm(z).value).epsilon(1e-12));
}

TEST_CASE("search and duality bounds bracket the exact values") {
  Rng rng(113);
  for (int trial = 0; trial < 40; ++trial) {
    bool hilbert = trial % 2 == 0;
    TensorFactor f0 = spec_factor(1 + rng.uniform_int(4), hilbert ? PNorm::P2 : PNorm::P1);
    TensorFactor f1 = spec_factor(1 + rng.uniform_int(4),
                                  hilbert ? PNorm::P2 : random_pnorm(rng));
    Eigen::MatrixXd m = rng.gaussian_matrix(f0.size(), f1.size());
    TensorElement z = matrix_element(f0, f1, m);
    PiNorm exact = pi_norm(z);
    REQUIRE(exact.exact);
    PiNorm bounds = pi_norm_bounds(z, 4242 + static_cast<std::uint64_t>(trial), 200);
    CHECK(bounds.lower <= exact.value * (1.0 + 1e-10));
    CHECK(bounds.upper >= exact.value * (1.0 - 1e-10));
    // The decomposition search comes within 1% at these sizes.
    CHECK(bounds.upper <= exact.value * 1.01 + 1e-12);
  }
}

TEST_CASE("pi norm bounds: homogeneity, triangle, ordering") {
  Rng rng(127);
  for (int trial = 0; trial < 25; ++trial) {
    TensorFactor f0 = spec_factor(2 + rng.uniform_int(2), PNorm::PInf);
    TensorFactor f1 = spec_factor(2 + rng.uniform_int(2), PNorm::PInf);
    Eigen::MatrixXd a = rng.gaussian_matrix(f0.size(), f1.size());
    Eigen::MatrixXd b = rng.gaussian_matrix(f0.size(), f1.size());
    double alpha = rng.uniform(0.25, 3.0);
    PiNorm pa = pi_norm(matrix_element(f0, f1, a));
    PiNorm pb = pi_norm(matrix_element(f0, f1, b));
    PiNorm pscaled = pi_norm(matrix_element(f0, f1, alpha * a));
    PiNorm psum = pi_norm(matrix_element(f0, f1, a + b));
    CHECK(pa.lower <= pa.upper + 1e-12);
    CHECK(pscaled.upper == doctest::Approx(alpha * pa.upper).epsilon(1e-9));
    CHECK(pscaled.lower == doctest::Approx(alpha * pa.lower).epsilon(1e-9));
    // Subadditivity up to the solver tolerance of the bound computation.
    CHECK(psum.upper <= pa.upper + pb.upper + 1e-5);
  }
}

TEST_CASE("pi norm is a norm in the exact regimes") {
  Rng rng(349);
  for (int trial = 0; trial < 60; ++trial) {
    bool hilbert = trial % 2 == 0;
    TensorFactor f0 = spec_factor(1 + rng.uniform_int(4), hilbert ? PNorm::P2 : PNorm::P1);
    TensorFactor f1 =
        spec_factor(1 + rng.uniform_int(4), hilbert ? PNorm::P2 : random_pnorm(rng));
    Eigen::MatrixXd a = rng.gaussian_matrix(f0.size(), f1.size());
    Eigen::MatrixXd b = rng.gaussian_matrix(f0.size(), f1.size());
    double alpha = rng.uniform(-3.0, 3.0);
    double pa = pi_norm(matrix_element(f0, f1, a)).value;
    double pb = pi_norm(matrix_element(f0, f1, b)).value;
    CHECK(pi_norm(matrix_element(f0, f1, alpha * a)).value ==
          doctest::Approx(std::abs(alpha) * pa).epsilon(1e-12));
    CHECK(pi_norm(matrix_element(f0, f1, a + b)).value <= pa + pb + 1e-10);
  }
}

TEST_CASE("grouped three-factor pi norms agree") {
  Rng rng(131);
  for (int trial = 0; trial < 40; ++trial) {
    MeasureSpace s1 = random_space(rng, 3, "a");
    MeasureSpace s2 = random_space(rng, 3, "b");
    TensorFactor f0 = TensorFactor::lp(s1, PNorm::P1);
    TensorFactor f1 = TensorFactor::lp(s2, PNorm::P1);
    TensorFactor f2 = spec_factor(1 + rng.uniform_int(3), random_pnorm(rng));
    // Place the two L^1 factors in varying positions.
    std::vector<TensorFactor> factors;
    switch (trial % 3) {
      case 0: factors = {f0, f1, f2}; break;
      case 1: factors = {f0, f2, f1}; break;
      default: factors = {f2, f0, f1}; break;
    }
    Eigen::Index total = 1;
    for (const auto& f : factors) total *= f.size();
    TensorElement z(factors, rng.gaussian_vector(total));
    double left = pi_norm_grouped(z, true);
    double right = pi_norm_grouped(z, false);
    CHECK(left == doctest::Approx(right).epsilon(1e-10));
  }
}

// Acceptance suite: runs every toolkit-level guarantee at its stated
// tolerance and prints one [PASS]/[FAIL] line per criterion. Criterion 12
// drives the CLI binary over the fixture matrix.
//
// Usage: repkit_acceptance <path-to-repkit-cli> <fixtures-dir>

#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <fstream>
#include <limits>
#include <functional>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "repkit/commands.hpp"
#include "repkit/document.hpp"
#include "repkit/hilbert_schmidt.hpp"
#include "repkit/kernels.hpp"
#include "repkit/multiplication.hpp"
#include "repkit/operators.hpp"
#include "repkit/order.hpp"
#include "repkit/tensor.hpp"
#include "testutil.hpp"

using namespace repkit;
using namespace repkit::testing;

namespace {

struct Criterion {
  bool pass = true;
  char details[512] = "";

  void fail(const char* fmt, ...) __attribute__((format(printf, 2, 3))) {
    pass = false;
    va_list args;
    va_start(args, fmt);
    vsnprintf(details, sizeof(details), fmt, args);
    va_end(args);
  }
  void note(const char* fmt, ...) __attribute__((format(printf, 2, 3))) {
    if (!pass) return;
    va_list args;
    va_start(args, fmt);
    vsnprintf(details, sizeof(details), fmt, args);
    va_end(args);
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// ---- criterion 1: kernel isometry ----
Criterion criterion_isometry() {
  Criterion c;
  auto start = std::chrono::steady_clock::now();
  Rng rng(20260810);
  double worst_diff = 0.0, worst_excess = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    Kernel k = random_kernel(rng, 5, 4, PNorm::P1, PNorm::PInf);
    IsometryReport r = check_isometry(k, 20, 1000 + static_cast<std::uint64_t>(trial));
    worst_diff = std::max(worst_diff, r.difference);
    worst_excess = std::max(worst_excess, r.probe_excess);
    if (r.difference > 1e-12) {
      c.fail("norm difference %.3e > 1e-12 at trial %d", r.difference, trial);
      return c;
    }
    if (r.probe_excess > 1e-9) {
      c.fail("probe excess %.3e > 1e-9 at trial %d", r.probe_excess, trial);
      return c;
    }
  }
  double elapsed = seconds_since(start);
  if (elapsed >= 10.0) c.fail("runtime %.1fs exceeds the 10s target", elapsed);
  c.note("500 kernels, 10^4 probes: max diff %.2e, max excess %.2e, %.2fs", worst_diff,
         worst_excess, elapsed);
  return c;
}

// ---- criterion 2: round trips ----
Criterion criterion_round_trips() {
  Criterion c;
  Rng rng(31337);
  double worst = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    Kernel k = random_kernel(rng, 5, 4, random_pnorm(rng), random_pnorm(rng));
    Kernel back = operator_to_kernel(kernel_to_operator(k));
    Eigen::ArrayXXd diff = (back.storage() - k.storage()).array().abs();
    Eigen::ArrayXXd scale = k.storage().array().abs().max(1e-300);
    worst = std::max(worst, (diff / scale).maxCoeff());
  }
  if (worst > 1e-15) {
    c.fail("kernel round-trip relative error %.3e > 1e-15", worst);
    return c;
  }
  for (int trial = 0; trial < 500; ++trial) {
    MeasureSpace s = random_space(rng, 5);
    SpaceSpec spec = random_spec(rng, 4);
    Multiplier m = random_multiplier(rng, s, spec);
    Multiplier back = extract_multiplier(multiplication_operator(m, random_pnorm(rng)));
    if (!(back == m)) {
      c.fail("multiplier round trip not exact at trial %d", trial);
      return c;
    }
  }
  c.note("500 kernel + 500 multiplier round trips: max rel err %.2e", worst);
  return c;
}

// ---- criterion 3: scalar specialization ----
Criterion criterion_scalar() {
  Criterion c;
  Rng rng(271828);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    Kernel k = random_kernel(rng, 5, 1);
    BlockOperator t = kernel_to_operator(k);
    Eigen::VectorXd f = rng.gaussian_vector(k.space1().size());
    LpFunction lf(k.space1(), k.domain_spec(), PNorm::P1, f.transpose());
    Eigen::VectorXd via_op = apply(t, lf).values().row(0);
    Eigen::VectorXd direct = direct_scalar_kernel_image(k, f);
    worst = std::max(worst, (via_op - direct).cwiseAbs().maxCoeff());
  }
  if (worst > 1e-12) c.fail("direct evaluation mismatch %.3e > 1e-12", worst);
  c.note("100 scalar (k,f) pairs: max deviation %.2e", worst);
  return c;
}

// ---- criterion 4: density extraction ----
Criterion criterion_density() {
  Criterion c;
  Rng rng(161803);
  double worst_norm = 0.0, worst_apply = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    MeasureSpace omega = random_space(rng, 5, "w");
    MeasureSpace point({"x"}, Eigen::VectorXd::Ones(1));
    SpaceSpec scalar{1, PNorm::P1, false};
    SpaceSpec fprime{1 + rng.uniform_int(4), random_pnorm(rng), false};
    FunctionSpace dom{omega, scalar, PNorm::P1};
    FunctionSpace codom{point, fprime, PNorm::PInf};
    BlockOperator t = random_operator(rng, dom, codom);
    Kernel density = extract_density(t);
    double diff = std::abs(kernel_sup_norm(density).value() - operator_norm(t).value);
    worst_norm = std::max(worst_norm, diff);
    for (int probe = 0; probe < 100; ++probe) {
      Eigen::VectorXd f = rng.gaussian_vector(omega.size());
      LpFunction lf(omega, scalar, PNorm::P1, f.transpose());
      Eigen::VectorXd via_op = apply(t, lf).value(0);
      Eigen::VectorXd direct = Eigen::VectorXd::Zero(fprime.dim);
      for (int w = 0; w < omega.size(); ++w)
        direct += omega.weight(w) * f[w] * density.block(w, 0).col(0);
      worst_apply = std::max(worst_apply, (via_op - direct).cwiseAbs().maxCoeff());
    }
  }
  if (worst_norm > 1e-12) c.fail("density sup norm off by %.3e > 1e-12", worst_norm);
  else if (worst_apply > 1e-12) c.fail("density integral off by %.3e > 1e-12", worst_apply);
  c.note("200 operators x 100 probes: norm diff %.2e, integral diff %.2e", worst_norm,
         worst_apply);
  return c;
}

// ---- criterion 5: L^1 product identity and search convergence ----
Criterion criterion_l1_product() {
  Criterion c;
  Rng rng(141421);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    MeasureSpace s1 = random_space(rng, 4, "a");
    MeasureSpace s2 = random_space(rng, 4, "b");
    TensorElement z({TensorFactor::lp(s1, PNorm::P1), TensorFactor::lp(s2, PNorm::P1)},
                    rng.gaussian_vector(s1.size() * s2.size()));
    L1ProductReport r = check_l1_product_identity(s1, s2, z);
    worst = std::max(worst, r.difference);
    if (!r.pass) {
      c.fail("product identity off by %.3e at trial %d", r.difference, trial);
      return c;
    }
  }
  double worst_gap = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    bool hilbert = trial % 2 == 0;
    PNorm t0 = hilbert ? PNorm::P2 : PNorm::P1;
    PNorm t1 = hilbert ? PNorm::P2 : random_pnorm(rng);
    TensorFactor f0 = TensorFactor::space({1 + rng.uniform_int(4), t0, false});
    TensorFactor f1 = TensorFactor::space({1 + rng.uniform_int(4), t1, false});
    TensorElement z({f0, f1}, rng.gaussian_vector(f0.size() * f1.size()));
    PiNorm exact = pi_norm(z);
    PiNorm bounds = pi_norm_bounds(z, 777 + static_cast<std::uint64_t>(trial), 20);
    if (!exact.exact) continue;
    double gap = exact.value > 0 ? bounds.upper / exact.value - 1.0 : 0.0;
    worst_gap = std::max(worst_gap, gap);
    if (bounds.upper > exact.value * 1.01 + 1e-12) {
      c.fail("search upper bound %.6f vs exact %.6f (gap %.2f%%) at trial %d", bounds.upper,
             exact.value, 100.0 * gap, trial);
      return c;
    }
  }
  c.note("200 identities: max diff %.2e; search gap <= %.3f%%", worst, 100.0 * worst_gap);
  return c;
}

// ---- criterion 6: duality bound and extremal equality ----
Criterion criterion_duality() {
  Criterion c;
  Rng rng(577215);
  for (int trial = 0; trial < 1000; ++trial) {
    PNorm t0 = trial % 2 ? PNorm::P1 : PNorm::P2;
    PNorm t1 = trial % 2 ? random_pnorm(rng) : PNorm::P2;
    TensorFactor f0 = TensorFactor::space({1 + rng.uniform_int(4), t0, false});
    TensorFactor f1 = TensorFactor::space({1 + rng.uniform_int(4), t1, false});
    TensorElement z({f0, f1}, rng.gaussian_vector(f0.size() * f1.size()));
    PiNorm pn = pi_norm(z);
    if (!pn.exact) {
      c.fail("expected an exact regime at trial %d", trial);
      return c;
    }
    Eigen::MatrixXd t = rng.gaussian_matrix(f1.size(), f0.size());
    double tnorm = dual_operator_norm_upper(t, f0, f1);
    double pairing = std::abs(duality_pairing(t, z));
    if (pairing > tnorm * pn.value * (1.0 + 1e-12) + 1e-12) {
      c.fail("pairing %.6f beats ||T|| pi(z) = %.6f at trial %d", pairing, tnorm * pn.value,
             trial);
      return c;
    }
  }
  double worst_eq = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    TensorFactor f0 = TensorFactor::space({1 + rng.uniform_int(4), PNorm::P1, false});
    TensorFactor f1 = TensorFactor::space({1 + rng.uniform_int(4), PNorm::P1, false});
    TensorElement z({f0, f1}, rng.gaussian_vector(f0.size() * f1.size()));
    Eigen::MatrixXd t = extremal_dual_operator(z);
    double gap = std::abs(duality_pairing(t, z) -
                          dual_operator_norm_upper(t, f0, f1) * pi_norm(z).value);
    worst_eq = std::max(worst_eq, gap);
    if (gap > 1e-10) {
      c.fail("extremal operator misses equality by %.3e at trial %d", gap, trial);
      return c;
    }
  }
  c.note("1000 bound pairs; extremal equality gap <= %.2e", worst_eq);
  return c;
}

// ---- criterion 7: positivity equivalences ----
Criterion criterion_positivity() {
  Criterion c;
  Rng rng(662607);
  for (int trial = 0; trial < 200; ++trial) {
    Kernel k = random_kernel(rng, 4, 3, PNorm::P1, PNorm::PInf, true);
    Eigen::MatrixXd storage = k.storage();
    if (trial % 2 == 0) storage = storage.cwiseAbs();
    for (int z = 0; z < storage.size() / 4; ++z)
      storage(rng.uniform_int(static_cast<int>(storage.rows())),
              rng.uniform_int(static_cast<int>(storage.cols()))) = 0.0;
    Kernel kb = k.with_storage(storage);
    BlockOperator t = kernel_to_operator(kb);
    bool kp = is_positive_kernel(kb);
    bool op = is_positive_operator(t);
    SampledPositivity sp = is_positive_operator_sampled(t, 25, 99 + trial);
    if (kp != op || op != sp.positive) {
      c.fail("equivalence broke at kernel trial %d (kernel %d, exact %d, sampled %d)", trial,
             kp, op, sp.positive);
      return c;
    }
    if (!sp.positive) {
      if (!sp.witness || (apply(t, *sp.witness).values().array() >= -kConeTolerance).all()) {
        c.fail("missing or invalid atomic witness at kernel trial %d", trial);
        return c;
      }
    }
  }
  for (int trial = 0; trial < 200; ++trial) {
    MeasureSpace s = random_space(rng, 4);
    SpaceSpec spec{1 + rng.uniform_int(3), random_pnorm(rng), true};
    std::vector<Eigen::MatrixXd> blocks;
    for (int w = 0; w < s.size(); ++w) {
      Eigen::MatrixXd b = rng.gaussian_matrix(spec.dim, spec.dim);
      if (trial % 2 == 0) b = b.cwiseAbs();
      if (trial % 5 == 0) b.setZero();
      blocks.push_back(b);
    }
    BlockOperator t = multiplication_operator(Multiplier(s, spec, blocks), random_pnorm(rng));
    MultiplierPositivityReport r = check_multiplier_positivity(t);
    if (!r.match) {
      c.fail("multiplier equivalence broke at trial %d", trial);
      return c;
    }
    SampledPositivity sp = is_positive_operator_sampled(t, 25, 4242 + trial);
    if (sp.positive != r.operator_positive) {
      c.fail("sampled oracle disagrees at multiplier trial %d", trial);
      return c;
    }
  }
  c.note("200 kernel + 200 multiplier instances with boundary zeros and witness replay");
  return c;
}

// ---- criterion 8: regular correspondence ----
Criterion criterion_regular() {
  Criterion c;
  Rng rng(314159);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    Kernel k = random_kernel(rng, 4, 3, PNorm::P1, PNorm::PInf, true);
    if (trial % 3 == 0) k = k.with_storage(k.storage().cwiseAbs());
    RegularKernelReport r = check_regular_kernel_correspondence(k);
    worst = std::max(worst, r.difference);
    if (!r.pass) {
      c.fail("regular correspondence off by %.3e at trial %d", r.difference, trial);
      return c;
    }
    BlockOperator t = kernel_to_operator(k);
    RegularNormReport reg = regular_norm(t);
    if (reg.operator_norm.value > reg.regular_norm.value + 1e-12) {
      c.fail("||T|| > ||T||_r at trial %d", trial);
      return c;
    }
    if (is_positive_operator(t) && std::abs(reg.ratio - 1.0) > 1e-12) {
      c.fail("positive operator has ratio %.3e != 1 at trial %d", reg.ratio, trial);
      return c;
    }
  }
  c.note("200 ordered instances: max correspondence diff %.2e", worst);
  return c;
}

// ---- criterion 9: Hadamard counterexample family ----
Criterion criterion_counterexample() {
  Criterion c;
  auto start = std::chrono::steady_clock::now();
  std::vector<CounterexampleEntry> entries = counterexample_sequence(64);
  double worst = 0.0;
  double prev_op = std::numeric_limits<double>::infinity(), prev_reg = 0.0;
  for (const auto& e : entries) {
    double op = e.report.operator_norm.value, reg = e.report.regular_norm.value;
    worst = std::max({worst, std::abs(op - e.expected_operator_norm),
                      std::abs(reg - e.expected_regular_norm)});
    if (worst > 1e-9) {
      c.fail("n = %d deviates from the analytic norms by %.3e", e.n, worst);
      return c;
    }
    if (!(op < prev_op) || !(reg > prev_reg)) {
      c.fail("monotonicity broke at n = %d", e.n);
      return c;
    }
    prev_op = op;
    prev_reg = reg;
  }
  double elapsed = seconds_since(start);
  if (elapsed >= 5.0) c.fail("runtime %.1fs exceeds the 5s target", elapsed);
  c.note("n = 2..64: max deviation %.2e, strictly monotone, %.2fs", worst, elapsed);
  return c;
}

// ---- criterion 10: multiplier extraction ----
Criterion criterion_multiplier() {
  Criterion c;
  Rng rng(173205);
  double worst_rec = 0.0, worst_eq = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    MeasureSpace s = random_space(rng, 4);
    SpaceSpec spec = random_spec(rng, 3);
    PNorm p = random_pnorm(rng);
    Multiplier m = random_multiplier(rng, s, spec);
    BlockOperator t = multiplication_operator(m, p);
    Multiplier back = extract_multiplier(t);
    for (int probe = 0; probe < 100; ++probe) {
      LpFunction f = random_function(rng, {s, spec, p});
      worst_rec = std::max(worst_rec, max_abs_diff(apply(t, f), multiplier_apply(back, f)));
    }
    NormBound sup = multiplier_sup_norm(back);
    OperatorNorm on = operator_norm(t);
    if (sup.value() > on.value + 1e-12) {
      c.fail("||M|| = %.6f exceeds ||T|| = %.6f at trial %d", sup.value(), on.value, trial);
      return c;
    }
    worst_eq = std::max(worst_eq, std::abs(sup.value() - on.value));

    // Non-local perturbation of magnitude >= 1e-9 must be detected.
    Eigen::MatrixXd blocks = t.blocks();
    int n = s.size();
    if (n > 1) {
      int w1 = rng.uniform_int(n);
      int w2 = (w1 + 1 + rng.uniform_int(n - 1)) % n;
      double magnitude = std::pow(10.0, rng.uniform(-9.0, 0.0));
      blocks(w2 * spec.dim + rng.uniform_int(spec.dim),
             w1 * spec.dim + rng.uniform_int(spec.dim)) = magnitude;
      LocalityResult loc = is_local(t.with_blocks(blocks));
      if (loc.local || !loc.witness) {
        c.fail("missed a %.1e off-diagonal perturbation at trial %d", magnitude, trial);
        return c;
      }
      double gap = max_abs_diff(loc.witness->t_of_restricted, loc.witness->restricted_t);
      if (gap < magnitude * (1.0 - 1e-9)) {
        c.fail("witness gap %.3e below the perturbation %.3e at trial %d", gap, magnitude,
               trial);
        return c;
      }
    }
  }
  if (worst_rec > 1e-12) {
    c.fail("reconstruction error %.3e > 1e-12", worst_rec);
    return c;
  }
  if (worst_eq > 1e-10) {
    c.fail("||M|| vs ||T|| gap %.3e > 1e-10", worst_eq);
    return c;
  }
  c.note("200 local operators: reconstruction %.1e, norm gap %.1e, all leaks caught",
         worst_rec, worst_eq);
  return c;
}

// ---- criterion 11: Hilbert-Schmidt identity ----
Criterion criterion_hs() {
  Criterion c;
  Rng rng(223606);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    Kernel k = random_kernel(rng, 4, 3, PNorm::P2, PNorm::P2);
    HsReport r = check_hs_isometry(k, 17 + static_cast<std::uint64_t>(trial));
    worst = std::max(worst, r.difference);
    if (!r.pass) {
      c.fail("hs routes differ by %.3e at trial %d", r.difference, trial);
      return c;
    }
  }
  double worst_add = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    MeasureSpace s1 = random_space(rng, 3, "a");
    MeasureSpace s2 = random_space(rng, 3, "b");
    SpaceSpec e{1 + rng.uniform_int(2), PNorm::P2, false};
    SpaceSpec f{1 + rng.uniform_int(2), PNorm::P2, false};
    Kernel base = Kernel::zero(s1, s2, e, f);
    Eigen::MatrixXd sa = base.storage(), sb = base.storage();
    for (int w1 = 0; w1 < s1.size(); ++w1)
      for (int w2 = 0; w2 < s2.size(); ++w2) {
        Eigen::MatrixXd block = rng.gaussian_matrix(f.dim, e.dim);
        ((w1 + w2) % 2 ? sb : sa).block(w2 * f.dim, w1 * e.dim, f.dim, e.dim) = block;
      }
    double na = hs_norm_kernel(base.with_storage(sa));
    double nb = hs_norm_kernel(base.with_storage(sb));
    double nsum = hs_norm_kernel(base.with_storage(sa + sb));
    worst_add = std::max(worst_add, std::abs(nsum * nsum - na * na - nb * nb));
  }
  if (worst_add > 1e-12) {
    c.fail("orthogonal-support additivity off by %.3e > 1e-12", worst_add);
    return c;
  }
  c.note("200 instances: max route diff %.2e; additivity gap %.2e", worst, worst_add);
  return c;
}

// ---- criterion 12: CLI conformance over the fixture matrix ----

struct ExecResult {
  int exit_code = -1;
  std::string out;
};

ExecResult run_cli(const std::string& command_line) {
  ExecResult r;
  FILE* pipe = popen((command_line + " 2>/dev/null").c_str(), "r");
  if (!pipe) return r;
  char buffer[4096];
  size_t got;
  while ((got = fread(buffer, 1, sizeof(buffer), pipe)) > 0) r.out.append(buffer, got);
  int status = pclose(pipe);
  if (WIFEXITED(status)) r.exit_code = WEXITSTATUS(status);
  return r;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Criterion criterion_cli(const std::string& cli, const std::string& fixtures) {
  Criterion c;

  struct Row {
    const char* command;
    const char* file;    // may be empty
    const char* file2;   // may be empty
    int expected;
  };
  const std::vector<Row> matrix = {
      {"check-isometry --samples 200", "v_kernel.json", "", 0},
      {"check-isometry --samples 200", "v_kernel_vec.json", "", 0},
      {"represent", "v_kernel.json", "", 0},
      {"derepresent", "v_operator.json", "", 0},
      {"norm", "v_operator.json", "", 0},
      {"norm", "v_op_hilbert.json", "", 0},
      {"apply", "v_operator.json", "v_function_dom.json", 0},
      {"apply", "v_multiplier.json", "v_function.json", 0},
      {"extract-density", "v_density_op.json", "", 0},
      {"pi-norm", "v_tensor_l1.json", "", 0},
      {"pi-norm", "v_tensor_l2.json", "", 0},
      {"pi-norm", "v_tensor_mixed.json", "", 0},
      {"check-l1-product", "v_tensor_l1.json", "", 0},
      {"check-commutativity", "v_tensor_l1.json", "", 0},
      {"check-commutativity", "v_tensor_l2.json", "", 0},
      {"check-positive", "v_function.json", "", 0},
      {"check-positive", "v_multiplier.json", "", 0},
      {"check-positive", "v_kernel_vec.json", "", 0},
      {"check-positive", "v_op_positive.json", "", 0},
      {"regular-norm", "v_op_positive.json", "", 0},
      {"check-regular-kernel", "v_kernel_vec.json", "", 0},
      {"counterexample --max-n 8", "", "", 0},
      {"check-local", "v_local_op.json", "", 0},
      {"extract-multiplier", "v_local_op.json", "", 0},
      {"check-multiplier-positive", "v_local_op.json", "", 0},
      {"hs-norm", "v_kernel_hs.json", "", 0},
      {"hs-norm", "v_op_hilbert.json", "", 0},
      {"check-hs", "v_kernel_hs.json", "", 0},
      // Failed checks exit 1.
      {"check-local", "f_nonlocal_op.json", "", 1},
      {"extract-multiplier", "f_nonlocal_op.json", "", 1},
      {"check-multiplier-positive", "f_nonlocal_op.json", "", 1},
      // Malformed and invalid inputs exit 2.
      {"check-isometry", "e_syntax_truncated.json", "", 2},
      {"check-isometry", "e_syntax_garbage.json", "", 2},
      {"check-isometry", "e_schema_unknown_field.json", "", 2},
      {"check-isometry", "e_schema_missing_field.json", "", 2},
      {"check-isometry", "e_schema_bad_version.json", "", 2},
      {"check-isometry", "e_schema_bad_kind.json", "", 2},
      {"check-isometry", "e_schema_block_shape.json", "", 2},
      {"check-isometry", "e_schema_wrong_type.json", "", 2},
      {"check-isometry", "e_schema_values_shape.json", "", 2},
      {"check-isometry", "e_schema_weight_count.json", "", 2},
      {"check-isometry", "e_inv_zero_weight.json", "", 2},
      {"check-isometry", "e_inv_negative_weight.json", "", 2},
      {"check-isometry", "e_inv_dup_atoms.json", "", 2},
      {"check-isometry", "e_inv_empty_atoms.json", "", 2},
      {"check-isometry", "e_inv_dim_zero.json", "", 2},
      {"check-isometry", "v_space.json", "", 2},  // wrong kind for the command
      {"norm", "v_kernel.json", "", 2},
      {"derepresent", "v_op_hilbert.json", "", 2},  // wrong exponents
      {"no-such-command", "", "", 2},
  };

  int file_count = 0;
  for (const Row& row : matrix) {
    std::string cmdline = cli + " " + row.command;
    if (row.file[0]) cmdline += " " + fixtures + "/" + row.file;
    if (row.file2[0]) cmdline += " " + fixtures + "/" + row.file2;
    ExecResult r = run_cli(cmdline);
    if (r.exit_code != row.expected) {
      c.fail("'%s %s %s' exited %d, expected %d", row.command, row.file, row.file2,
             r.exit_code, row.expected);
      return c;
    }
    if (row.expected != 2 && r.out.empty()) {
      c.fail("'%s %s' produced no report", row.command, row.file);
      return c;
    }
    ++file_count;
  }

  // Deterministic bytes under a fixed seed.
  std::string probe = cli + " check-isometry --seed 7 --samples 500 " + fixtures +
                      "/v_kernel_vec.json";
  if (run_cli(probe).out != run_cli(probe).out) {
    c.fail("identical invocations produced different bytes");
    return c;
  }
  std::string counter = cli + " counterexample --max-n 16";
  if (run_cli(counter).out != run_cli(counter).out) {
    c.fail("counterexample output is not deterministic");
    return c;
  }

  // Document round trip: serialize(parse(d)) is stable for every valid file.
  const char* valid_files[] = {"v_space.json",      "v_spec.json",       "v_kernel.json",
                               "v_kernel_vec.json", "v_operator.json",   "v_density_op.json",
                               "v_multiplier.json", "v_function.json",   "v_function_dom.json",
                               "v_tensor_l1.json",  "v_tensor_l2.json",  "v_tensor_mixed.json",
                               "v_op_hilbert.json", "v_kernel_hs.json",  "v_local_op.json",
                               "v_op_positive.json"};
  for (const char* name : valid_files) {
    std::string text = read_file(fixtures + "/" + std::string(name));
    Document d = parse_document(text);
    std::string once = serialize(d);
    std::string twice = serialize(parse_document(once));
    if (once != twice) {
      c.fail("round trip of %s is not stable", name);
      return c;
    }
  }

  // Pipelines: command outputs feed the next command.
  ExecResult rep = run_cli(cli + " represent " + fixtures + "/v_kernel.json | " + cli +
                           " derepresent -");
  if (rep.exit_code != 0) {
    c.fail("represent | derepresent pipeline exited %d", rep.exit_code);
    return c;
  }
  ExecResult chain = run_cli(cli + " represent " + fixtures + "/v_kernel_vec.json | " + cli +
                             " check-regular-kernel -");
  if (chain.exit_code != 0) {
    c.fail("represent | check-regular-kernel pipeline exited %d", chain.exit_code);
    return c;
  }

  c.note("%d matrix rows, deterministic bytes, stable round trips", file_count);
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: %s <repkit-cli> <fixtures-dir>\n", argv[0]);
    return 2;
  }
  const std::string cli = argv[1];
  const std::string fixtures = argv[2];

  struct Entry {
    const char* name;
    std::function<Criterion()> run;
  };
  const std::vector<Entry> criteria = {
      {"1. kernel isometry, 500 kernels + 10^4 probes", criterion_isometry},
      {"2. operator<->kernel and multiplier round trips", criterion_round_trips},
      {"3. scalar kernel specialization", criterion_scalar},
      {"4. density extraction for L^1 -> F' operators", criterion_density},
      {"5. L^1 product identity + search convergence", criterion_l1_product},
      {"6. duality bound + extremal operator equality", criterion_duality},
      {"7. positivity equivalences with witness replay", criterion_positivity},
      {"8. regular kernel correspondence", criterion_regular},
      {"9. Hadamard counterexample family n = 2..64", criterion_counterexample},
      {"10. multiplier extraction + leak detection", criterion_multiplier},
      {"11. Hilbert-Schmidt norm identity", criterion_hs},
      {"12. CLI conformance over the fixture matrix",
       [&] { return criterion_cli(cli, fixtures); }},
  };

  int failures = 0;
  for (const auto& entry : criteria) {
    Criterion result = entry.run();
    std::printf("[%s] %s%s%s\n", result.pass ? "PASS" : "FAIL", entry.name,
                result.details[0] ? ": " : "", result.details);
    std::fflush(stdout);
    if (!result.pass) ++failures;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}

#include "repkit/commands.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "repkit/document.hpp"
#include "repkit/hilbert_schmidt.hpp"
#include "repkit/kernels.hpp"
#include "repkit/multiplication.hpp"
#include "repkit/operators.hpp"
#include "repkit/order.hpp"
#include "repkit/report.hpp"
#include "repkit/spaces.hpp"
#include "repkit/tensor.hpp"

namespace repkit {

namespace {

using ordered_json = nlohmann::ordered_json;

struct CommandContext {
  std::vector<Document> docs;
  CommandOptions opts;

  double tol(double fallback) const { return opts.tolerance.value_or(fallback); }
};

void require_inputs(const CommandContext& ctx, size_t n, const char* what) {
  if (ctx.docs.size() != n)
    throw std::invalid_argument(std::string(what) + " expects " + std::to_string(n) +
                                " input document(s), got " + std::to_string(ctx.docs.size()));
}

// Kernel-consuming checks accept either side of the correspondence, so the
// output of `represent` pipes straight into them.
Kernel kernel_input(const Document& doc, bool hilbert) {
  if (std::holds_alternative<Kernel>(doc.value)) return std::get<Kernel>(doc.value);
  const BlockOperator& t = doc.as<BlockOperator>("kernel or operator");
  return hilbert ? hs_kernel(t) : operator_to_kernel(t);
}

Report cmd_represent(const CommandContext& ctx, Report report) {
  require_inputs(ctx, 1, "represent");
  const Kernel& k = ctx.docs[0].as<Kernel>("kernel");
  BlockOperator t = kernel_to_operator(k);
  NormBound sup = kernel_sup_norm(k);
  report.add_number("sup_norm", sup.value(), 0.0);
  report.add_bool("sup_norm_exact", sup.exact);
  report.add_output("operator", serialize(t));
  report.set_status(Report::Status::Pass);
  return report;
}

Report cmd_derepresent(const CommandContext& ctx, Report report) {
  require_inputs(ctx, 1, "derepresent");
  const BlockOperator& t = ctx.docs[0].as<BlockOperator>("operator");
  Kernel k = operator_to_kernel(t);
  NormBound sup = kernel_sup_norm(k);
  report.add_number("sup_norm", sup.value(), 0.0);
  report.add_output("kernel", serialize(k));
  report.set_status(Report::Status::Pass);
  return report;
}

Report cmd_apply(const CommandContext& ctx, Report report) {
  require_inputs(ctx, 2, "apply");
  const LpFunction& f = ctx.docs[1].as<LpFunction>("lp_function");
  LpFunction image = [&] {
    if (std::holds_alternative<Multiplier>(ctx.docs[0].value))
      return multiplier_apply(std::get<Multiplier>(ctx.docs[0].value), f);
    return apply(ctx.docs[0].as<BlockOperator>("operator or multiplier"), f);
  }();
  report.add_number("input_norm", lp_norm(f), 0.0);
  report.add_number("image_norm", lp_norm(image), 0.0);
  report.add_output("function", serialize(image));
  report.set_status(Report::Status::Pass);
  return report;
}

Report cmd_norm(const CommandContext& ctx, Report report) {
  require_inputs(ctx, 1, "norm");
  const BlockOperator& t = ctx.docs[0].as<BlockOperator>("operator");
  OperatorNorm n = operator_norm(t);
  report.add_number("value", n.value, 0.0);
  report.add_bool("exact", n.exact);
  report.add_number("lower", n.lower, 0.0);
  report.add_number("upper", n.upper, 0.0);
  if (n.exact) {
    report.add_witness("norm_witness", serialize(norm_witness(t)));
    report.set_status(Report::Status::Pass);
  } else {
    report.set_status(Report::Status::Approx);
    report.set_interval(n.lower, n.upper);
  }
  return report;
}

Report cmd_check_isometry(const CommandContext& ctx, Report report) {
  require_inputs(ctx, 1, "check-isometry");
  Kernel k = kernel_input(ctx.docs[0], false);
  double tol = ctx.tol(1e-12);
  IsometryReport r = check_isometry(k, ctx.opts.samples, ctx.opts.seed, tol);
  report.add_number("sup_norm", r.sup_norm, tol);
  report.add_number("operator_norm", r.operator_norm, tol);
  report.add_number("difference", r.difference, tol);
  report.add_number("probe_max", r.probe_max, 1e-9);
  report.add_number("probe_excess", r.probe_excess, 1e-9);
  report.add_int("samples", r.samples);
  report.add_int("seed", static_cast<long long>(r.seed));
  report.add_witness("norm_witness", serialize(r.witness));
  report.set_status(r.pass ? Report::Status::Pass : Report::Status::Fail);
  return report;
}

Report cmd_extract_density(const CommandContext& ctx, Report report) {
  require_inputs(ctx, 1, "extract-density");
  const BlockOperator& t = ctx.docs[0].as<BlockOperator>("operator");
  Kernel density = extract_density(t);
  double tol = ctx.tol(1e-12);
  double sup = kernel_sup_norm(density).value();
  double on = operator_norm(t).value;
  double diff = std::abs(sup - on);
  report.add_number("sup_norm", sup, tol);
  report.add_number("operator_norm", on, tol);
  report.add_number("difference", diff, tol);
  report.add_output("kernel", serialize(density));
  report.set_status(diff <= tol ? Report::Status::Pass : Report::Status::Fail);
  return report;
}

Report cmd_pi_norm(const CommandContext& ctx, Report report) {
  require_inputs(ctx, 1, "pi-norm");
  const TensorElement& z = ctx.docs[0].as<TensorElement>("tensor_element");
  PiNorm pn = pi_norm(z, ctx.opts.seed, 200);
  report.add_number("value", pn.value, 0.0);
  report.add_bool("exact", pn.exact);
  report.add_number("lower", pn.lower, 0.0);
  report.add_number("upper", pn.upper, 0.0);
  if (pn.exact) {
    report.set_status(Report::Status::Pass);
  } else {
    report.set_status(Report::Status::Approx);
    report.set_interval(pn.lower, pn.upper);
  }
  return report;
}

Report cmd_check_l1_product(const CommandContext& ctx, Report report) {
  require_inputs(ctx, 1, "check-l1-product");
  const TensorElement& z = ctx.docs[0].as<TensorElement>("tensor_element");
  if (z.order() != 2 || !z.factor(0).is_lp() || !z.factor(1).is_lp())
    throw std::invalid_argument("check-l1-product expects a two-L^1-factor tensor element");
  L1ProductReport r =
      check_l1_product_identity(z.factor(0).measure(), z.factor(1).measure(), z);
  double tol = ctx.tol(r.tolerance);
  report.add_number("pi_norm", r.pi_value, tol);
  report.add_number("flattened_l1_norm", r.flattened_value, tol);
  report.add_number("difference", r.difference, tol);
  report.set_status(r.difference <= tol ? Report::Status::Pass : Report::Status::Fail);
  return report;
}

Report cmd_check_commutativity(const CommandContext& ctx, Report report) {
  require_inputs(ctx, 1, "check-commutativity");
  const TensorElement& z = ctx.docs[0].as<TensorElement>("tensor_element");
  CommutativityReport r = check_commutativity(z, ctx.opts.seed);
  bool both_exact = r.original.exact && r.transposed.exact;
  double tol = ctx.tol(r.tolerance);
  report.add_number("value", r.original.value, tol);
  report.add_number("transposed_value", r.transposed.value, tol);
  report.add_bool("both_exact", both_exact);
  report.add_number("difference", r.difference, tol);
  bool pass = both_exact ? r.difference <= tol : r.overlap;
  if (!both_exact) {
    report.add_bool("intervals_overlap", r.overlap);
    report.set_interval(std::min(r.original.lower, r.transposed.lower),
                        std::max(r.original.upper, r.transposed.upper));
    report.set_status(pass ? Report::Status::Approx : Report::Status::Fail);
  } else {
    report.set_status(pass ? Report::Status::Pass : Report::Status::Fail);
  }
  return report;
}

Report cmd_check_positive(const CommandContext& ctx, Report report) {
  require_inputs(ctx, 1, "check-positive");
  const Document& doc = ctx.docs[0];

  if (std::holds_alternative<LpFunction>(doc.value)) {
    report.add_bool("positive", is_positive_function(std::get<LpFunction>(doc.value)));
    report.set_status(Report::Status::Pass);
    return report;
  }
  if (std::holds_alternative<Multiplier>(doc.value)) {
    const Multiplier& m = std::get<Multiplier>(doc.value);
    bool positive = true;
    for (const auto& b : m.blocks()) positive = positive && (b.array() >= 0.0).all();
    report.add_bool("positive", positive);
    report.set_status(Report::Status::Pass);
    return report;
  }

  // Kernels and operators: verify the positivity equivalence with both the
  // exact sign test and the sampled oracle.
  const BlockOperator t = std::holds_alternative<Kernel>(doc.value)
                              ? kernel_to_operator(std::get<Kernel>(doc.value))
                              : std::get<BlockOperator>(doc.value);
  bool exact_positive = is_positive_operator(t);
  SampledPositivity sampled = is_positive_operator_sampled(t, ctx.opts.samples, ctx.opts.seed);
  bool equivalent = exact_positive == sampled.positive;
  if (std::holds_alternative<Kernel>(doc.value)) {
    bool kernel_positive = is_positive_kernel(std::get<Kernel>(doc.value));
    report.add_bool("kernel_positive", kernel_positive);
    equivalent = equivalent && kernel_positive == exact_positive;
  }
  report.add_bool("operator_positive", exact_positive);
  report.add_bool("sampled_positive", sampled.positive);
  report.add_bool("equivalent", equivalent);
  if (sampled.witness) report.add_witness("violating_input", serialize(*sampled.witness));
  report.set_status(equivalent ? Report::Status::Pass : Report::Status::Fail);
  return report;
}

Report cmd_regular_norm(const CommandContext& ctx, Report report) {
  require_inputs(ctx, 1, "regular-norm");
  const BlockOperator& t = ctx.docs[0].as<BlockOperator>("operator");
  RegularNormReport r = regular_norm(t);
  double tol = ctx.tol(1e-12);
  report.add_number("operator_norm", r.operator_norm.value, tol);
  report.add_number("regular_norm", r.regular_norm.value, tol);
  report.add_number("ratio", r.ratio, tol);
  report.add_output("modulus", serialize(*r.modulus_blocks));
  bool dominated = r.operator_norm.value <= r.regular_norm.value + tol;
  report.add_bool("norm_dominated", dominated);
  report.set_status(dominated ? Report::Status::Pass : Report::Status::Fail);
  return report;
}

Report cmd_check_regular_kernel(const CommandContext& ctx, Report report) {
  require_inputs(ctx, 1, "check-regular-kernel");
  Kernel k = kernel_input(ctx.docs[0], false);
  RegularKernelReport r = check_regular_kernel_correspondence(k);
  double tol = ctx.tol(r.tolerance);
  report.add_number("operator_regular_norm", r.operator_regular_norm, tol);
  report.add_number("kernel_blockwise_max", r.kernel_blockwise_max, tol);
  report.add_number("difference", r.difference, tol);
  report.add_bool("kernel_positive", r.kernel_positive);
  report.add_bool("operator_positive", r.operator_positive);
  report.add_bool("positivity_equivalent", r.positivity_equivalent);
  report.add_bool("modulus_commutes", r.modulus_commutes);
  bool pass = r.difference <= tol && r.positivity_equivalent && r.modulus_commutes;
  report.set_status(pass ? Report::Status::Pass : Report::Status::Fail);
  return report;
}

Report cmd_counterexample(const CommandContext& ctx, Report report) {
  require_inputs(ctx, 0, "counterexample");
  std::vector<CounterexampleEntry> entries = counterexample_sequence(ctx.opts.max_n);
  double tol = ctx.tol(1e-9);
  bool pass = true;
  ordered_json list = ordered_json::array();
  double prev_op = std::numeric_limits<double>::infinity();
  double prev_reg = 0.0;
  for (const auto& e : entries) {
    double op = e.report.operator_norm.value;
    double reg = e.report.regular_norm.value;
    bool ok = std::abs(op - e.expected_operator_norm) <= tol &&
              std::abs(reg - e.expected_regular_norm) <= tol && op < prev_op && reg > prev_reg;
    pass = pass && ok;
    prev_op = op;
    prev_reg = reg;
    ordered_json item;
    item["n"] = e.n;
    item["operator_norm"] = op;
    item["regular_norm"] = reg;
    item["expected_operator_norm"] = e.expected_operator_norm;
    item["expected_regular_norm"] = e.expected_regular_norm;
    item["ratio"] = e.report.ratio;
    list.push_back(item);
  }
  report.add_int("max_n", ctx.opts.max_n);
  report.add_number("tolerance", tol, tol);
  report.add_json("entries", list.dump());
  report.set_status(pass ? Report::Status::Pass : Report::Status::Fail);
  return report;
}

Report cmd_check_local(const CommandContext& ctx, Report report) {
  require_inputs(ctx, 1, "check-local");
  const BlockOperator& t = ctx.docs[0].as<BlockOperator>("operator");
  LocalityResult r = is_local(t);
  report.add_bool("local", r.local);
  if (!r.local) {
    report.add_text("witness_atom", t.domain().space.atom(r.witness->atom));
    report.add_witness("input", serialize(r.witness->input));
    report.add_witness("T_of_restricted", serialize(r.witness->t_of_restricted));
    report.add_witness("restricted_T", serialize(r.witness->restricted_t));
  }
  report.set_status(r.local ? Report::Status::Pass : Report::Status::Fail);
  return report;
}

Report cmd_extract_multiplier(const CommandContext& ctx, Report report) {
  require_inputs(ctx, 1, "extract-multiplier");
  const BlockOperator& t = ctx.docs[0].as<BlockOperator>("operator");
  Multiplier m = extract_multiplier(t);  // NonLocalError handled by the driver
  double tol = ctx.tol(1e-10);
  NormBound sup = multiplier_sup_norm(m);
  OperatorNorm on = operator_norm(t);
  BlockOperator rebuilt = multiplication_operator(m, t.domain().exponent);
  double reconstruction = (rebuilt.blocks() - t.blocks()).cwiseAbs().maxCoeff();
  bool bounded = sup.value() <= on.value + 1e-12;
  bool tight = on.exact && std::abs(sup.value() - on.value) <= tol;
  report.add_number("multiplier_sup_norm", sup.value(), tol);
  report.add_number("operator_norm", on.value, tol);
  report.add_bool("norm_bounded", bounded);
  report.add_bool("norm_equal", tight);
  report.add_number("reconstruction_error", reconstruction, 1e-12);
  report.add_output("multiplier", serialize(m));
  bool pass = bounded && reconstruction <= 1e-12;
  report.set_status(pass ? Report::Status::Pass : Report::Status::Fail);
  return report;
}

Report cmd_check_multiplier_positive(const CommandContext& ctx, Report report) {
  require_inputs(ctx, 1, "check-multiplier-positive");
  const BlockOperator& t = ctx.docs[0].as<BlockOperator>("operator");
  MultiplierPositivityReport r = check_multiplier_positivity(t);
  report.add_bool("operator_positive", r.operator_positive);
  report.add_bool("multiplier_positive", r.multiplier_positive);
  report.add_bool("equivalent", r.match);
  if (r.witness_atom)
    report.add_text("witness_atom", t.domain().space.atom(*r.witness_atom));
  report.set_status(r.pass ? Report::Status::Pass : Report::Status::Fail);
  return report;
}

Report cmd_hs_norm(const CommandContext& ctx, Report report) {
  require_inputs(ctx, 1, "hs-norm");
  if (std::holds_alternative<Kernel>(ctx.docs[0].value)) {
    report.add_number("hs_norm", hs_norm_kernel(std::get<Kernel>(ctx.docs[0].value)), 0.0);
    report.add_text("side", "kernel");
  } else {
    const BlockOperator& t = ctx.docs[0].as<BlockOperator>("operator or kernel");
    report.add_number("hs_norm", hs_norm_operator(t), 0.0);
    report.add_text("side", "operator");
  }
  report.set_status(Report::Status::Pass);
  return report;
}

Report cmd_check_hs(const CommandContext& ctx, Report report) {
  require_inputs(ctx, 1, "check-hs");
  Kernel k = kernel_input(ctx.docs[0], true);
  HsReport r = check_hs_isometry(k, ctx.opts.seed);
  double tol = ctx.tol(r.tolerance);
  report.add_number("hs_norm_operator", r.hs_norm_operator, tol);
  report.add_number("hs_norm_kernel", r.hs_norm_kernel, tol);
  report.add_number("difference", r.difference, tol);
  report.add_number("spectral_norm", r.spectral_norm, tol);
  report.add_number("probe_excess", r.probe_excess, 1e-9);
  bool pass = r.difference <= tol && r.spectral_norm <= r.hs_norm_kernel + tol &&
              r.probe_excess <= 1e-9;
  report.set_status(pass ? Report::Status::Pass : Report::Status::Fail);
  return report;
}

using Handler = std::function<Report(const CommandContext&, Report)>;

const std::vector<std::pair<std::string, Handler>>& handlers() {
  static const std::vector<std::pair<std::string, Handler>> table = {
      {"represent", cmd_represent},
      {"derepresent", cmd_derepresent},
      {"apply", cmd_apply},
      {"norm", cmd_norm},
      {"check-isometry", cmd_check_isometry},
      {"extract-density", cmd_extract_density},
      {"pi-norm", cmd_pi_norm},
      {"check-l1-product", cmd_check_l1_product},
      {"check-commutativity", cmd_check_commutativity},
      {"check-positive", cmd_check_positive},
      {"regular-norm", cmd_regular_norm},
      {"check-regular-kernel", cmd_check_regular_kernel},
      {"counterexample", cmd_counterexample},
      {"check-local", cmd_check_local},
      {"extract-multiplier", cmd_extract_multiplier},
      {"check-multiplier-positive", cmd_check_multiplier_positive},
      {"hs-norm", cmd_hs_norm},
      {"check-hs", cmd_check_hs},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, handler] : handlers()) n.push_back(name);
    return n;
  }();
  return names;
}

CommandOutcome run_command(const std::string& name, const std::vector<std::string>& inputs,
                           const CommandOptions& opts) {
  const Handler* handler = nullptr;
  for (const auto& [hname, h] : handlers()) {
    if (hname == name) {
      handler = &h;
      break;
    }
  }
  if (!handler) return CommandOutcome{2, "", "unknown command: " + name};

  CommandContext ctx;
  ctx.opts = opts;
  Report report(name);
  try {
    for (const auto& text : inputs) {
      ctx.docs.push_back(load_artifact(text));
      report.add_input_digest(document_digest(ctx.docs.back()));
    }
  } catch (const ParseError& e) {
    return CommandOutcome{2, "", std::string("input error [") + e.code_name() + "]: " + e.what()};
  }

  try {
    Report result = (*handler)(ctx, std::move(report));
    int code = result.status() == Report::Status::Fail ? 1 : 0;
    return CommandOutcome{code, result.serialize(), ""};
  } catch (const NonLocalError& e) {
    Report result(name);
    for (const auto& doc : ctx.docs) result.add_input_digest(document_digest(doc));
    result.add_bool("local", false);
    result.add_text("witness_atom",
                    std::get<BlockOperator>(ctx.docs[0].value).domain().space.atom(e.witness.atom));
    result.add_witness("input", serialize(e.witness.input));
    result.add_witness("T_of_restricted", serialize(e.witness.t_of_restricted));
    result.add_witness("restricted_T", serialize(e.witness.restricted_t));
    result.set_status(Report::Status::Fail);
    return CommandOutcome{1, result.serialize(), "operator is not local"};
  } catch (const ParseError& e) {
    return CommandOutcome{2, "", std::string("input error [") + e.code_name() + "]: " + e.what()};
  } catch (const std::invalid_argument& e) {
    return CommandOutcome{2, "", std::string("input error [precondition]: ") + e.what()};
  }
}

}  // namespace repkit

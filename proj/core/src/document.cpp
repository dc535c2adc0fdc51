#include "repkit/document.hpp"

#include <cmath>
#include <set>

#include <nlohmann/json.hpp>

#include "repkit/report.hpp"

namespace repkit {

using ordered_json = nlohmann::ordered_json;
using Code = ParseError::Code;

const char* Document::kind_name() const {
  struct Visitor {
    const char* operator()(const MeasureSpace&) const { return "measure_space"; }
    const char* operator()(const SpaceSpec&) const { return "space_spec"; }
    const char* operator()(const LpFunction&) const { return "lp_function"; }
    const char* operator()(const Kernel&) const { return "kernel"; }
    const char* operator()(const BlockOperator&) const { return "operator"; }
    const char* operator()(const Multiplier&) const { return "multiplier"; }
    const char* operator()(const TensorElement&) const { return "tensor_element"; }
  };
  return std::visit(Visitor{}, value);
}

namespace {

[[noreturn]] void fail(Code code, const std::string& where, const std::string& message) {
  throw ParseError(code, where, message);
}

void check_fields(const ordered_json& j, const std::string& where,
                  const std::set<std::string>& allowed) {
  if (!j.is_object()) fail(Code::Schema, where, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key())) fail(Code::Schema, where + "/" + it.key(), "unknown field");
  }
  for (const auto& name : allowed) {
    if (!j.contains(name)) fail(Code::Schema, where + "/" + name, "missing field");
  }
}

void check_version(const ordered_json& j, const std::string& where) {
  if (!j.at("version").is_string() || j.at("version").get<std::string>() != "1")
    fail(Code::Schema, where + "/version", "unsupported document version");
}

double get_number(const ordered_json& j, const std::string& where) {
  if (!j.is_number()) fail(Code::Schema, where, "expected a number");
  return j.get<double>();
}

std::string get_string(const ordered_json& j, const std::string& where) {
  if (!j.is_string()) fail(Code::Schema, where, "expected a string");
  return j.get<std::string>();
}

bool get_bool(const ordered_json& j, const std::string& where) {
  if (!j.is_boolean()) fail(Code::Schema, where, "expected a boolean");
  return j.get<bool>();
}

PNorm get_pnorm(const ordered_json& j, const std::string& where) {
  std::string s = get_string(j, where);
  if (s == "p1") return PNorm::P1;
  if (s == "p2") return PNorm::P2;
  if (s == "pinf") return PNorm::PInf;
  fail(Code::Schema, where, "norm tag must be one of p1, p2, pinf");
}

Eigen::VectorXd get_vector(const ordered_json& j, const std::string& where,
                           int expected_size = -1) {
  if (!j.is_array()) fail(Code::Schema, where, "expected an array of numbers");
  if (expected_size >= 0 && static_cast<int>(j.size()) != expected_size)
    fail(Code::Schema, where, "array has the wrong length");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (size_t i = 0; i < j.size(); ++i)
    v[static_cast<Eigen::Index>(i)] = get_number(j[i], where + "[" + std::to_string(i) + "]");
  return v;
}

// rows x cols matrix as an array of row arrays.
Eigen::MatrixXd get_matrix(const ordered_json& j, const std::string& where, int rows, int cols) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows)
    fail(Code::Schema, where, "expected " + std::to_string(rows) + " matrix rows");
  Eigen::MatrixXd m(rows, cols);
  for (int r = 0; r < rows; ++r)
    m.row(r) = get_vector(j[static_cast<size_t>(r)], where + "[" + std::to_string(r) + "]", cols)
                   .transpose();
  return m;
}

MeasureSpace parse_measure_space(const ordered_json& j, const std::string& where) {
  check_fields(j, where, {"kind", "version", "atoms", "weights"});
  check_version(j, where);
  if (get_string(j.at("kind"), where + "/kind") != "measure_space")
    fail(Code::Schema, where + "/kind", "expected kind measure_space");
  const auto& atoms_json = j.at("atoms");
  if (!atoms_json.is_array()) fail(Code::Schema, where + "/atoms", "expected an array");
  std::vector<std::string> atoms;
  for (size_t i = 0; i < atoms_json.size(); ++i)
    atoms.push_back(get_string(atoms_json[i], where + "/atoms[" + std::to_string(i) + "]"));
  Eigen::VectorXd weights = get_vector(j.at("weights"), where + "/weights");
  if (atoms.empty()) fail(Code::Invariant, where + "/atoms", "measure space must not be empty");
  if (static_cast<int>(atoms.size()) != weights.size())
    fail(Code::Schema, where + "/weights", "weights must match atoms");
  std::set<std::string> seen(atoms.begin(), atoms.end());
  if (seen.size() != atoms.size())
    fail(Code::Invariant, where + "/atoms", "atom identifiers must be unique");
  for (int i = 0; i < weights.size(); ++i) {
    if (!(weights[i] > 0.0) || !std::isfinite(weights[i]))
      fail(Code::Invariant, where + "/weights[" + std::to_string(i) + "]",
           "weights must be strictly positive and finite");
  }
  return MeasureSpace(std::move(atoms), std::move(weights));
}

SpaceSpec parse_space_spec(const ordered_json& j, const std::string& where) {
  check_fields(j, where, {"kind", "version", "dim", "norm", "ordered"});
  check_version(j, where);
  if (get_string(j.at("kind"), where + "/kind") != "space_spec")
    fail(Code::Schema, where + "/kind", "expected kind space_spec");
  if (!j.at("dim").is_number_integer()) fail(Code::Schema, where + "/dim", "expected an integer");
  long long dim = j.at("dim").get<long long>();
  if (dim < 1) fail(Code::Invariant, where + "/dim", "dimension must be at least 1");
  PNorm norm = get_pnorm(j.at("norm"), where + "/norm");
  bool ordered = get_bool(j.at("ordered"), where + "/ordered");
  return SpaceSpec{static_cast<int>(dim), norm, ordered};
}

LpFunction parse_lp_function(const ordered_json& j, const std::string& where) {
  check_fields(j, where, {"kind", "version", "space", "spec", "exponent", "values"});
  check_version(j, where);
  if (get_string(j.at("kind"), where + "/kind") != "lp_function")
    fail(Code::Schema, where + "/kind", "expected kind lp_function");
  MeasureSpace space = parse_measure_space(j.at("space"), where + "/space");
  SpaceSpec spec = parse_space_spec(j.at("spec"), where + "/spec");
  PNorm exponent = get_pnorm(j.at("exponent"), where + "/exponent");
  const auto& values_json = j.at("values");
  if (!values_json.is_array() || static_cast<int>(values_json.size()) != space.size())
    fail(Code::Schema, where + "/values", "expected one value vector per atom");
  Eigen::MatrixXd values(spec.dim, space.size());
  for (int a = 0; a < space.size(); ++a)
    values.col(a) = get_vector(values_json[static_cast<size_t>(a)],
                               where + "/values[" + std::to_string(a) + "]", spec.dim);
  return LpFunction(std::move(space), spec, exponent, std::move(values));
}

// blocks[outer][inner] as dense matrices; assembled into operator layout.
Eigen::MatrixXd parse_block_table(const ordered_json& j, const std::string& where, int n_outer,
                                  int n_inner, int rows, int cols, bool outer_is_row) {
  if (!j.is_array() || static_cast<int>(j.size()) != n_outer)
    fail(Code::Schema, where, "expected " + std::to_string(n_outer) + " block rows");
  Eigen::MatrixXd full(rows * (outer_is_row ? n_outer : n_inner),
                       cols * (outer_is_row ? n_inner : n_outer));
  for (int a = 0; a < n_outer; ++a) {
    const auto& row_json = j[static_cast<size_t>(a)];
    std::string row_where = where + "[" + std::to_string(a) + "]";
    if (!row_json.is_array() || static_cast<int>(row_json.size()) != n_inner)
      fail(Code::Schema, row_where, "expected " + std::to_string(n_inner) + " blocks");
    for (int b = 0; b < n_inner; ++b) {
      Eigen::MatrixXd block = get_matrix(row_json[static_cast<size_t>(b)],
                                         row_where + "[" + std::to_string(b) + "]", rows, cols);
      int r = outer_is_row ? a : b;
      int c = outer_is_row ? b : a;
      full.block(r * rows, c * cols, rows, cols) = block;
    }
  }
  return full;
}

BlockOperator parse_operator(const ordered_json& j, const std::string& where) {
  check_fields(j, where, {"kind", "version", "domain", "codomain", "blocks"});
  check_version(j, where);
  if (get_string(j.at("kind"), where + "/kind") != "operator")
    fail(Code::Schema, where + "/kind", "expected kind operator");
  auto parse_side = [&](const ordered_json& side, const std::string& side_where) {
    check_fields(side, side_where, {"space", "spec", "exponent"});
    return FunctionSpace{parse_measure_space(side.at("space"), side_where + "/space"),
                         parse_space_spec(side.at("spec"), side_where + "/spec"),
                         get_pnorm(side.at("exponent"), side_where + "/exponent")};
  };
  FunctionSpace domain = parse_side(j.at("domain"), where + "/domain");
  FunctionSpace codomain = parse_side(j.at("codomain"), where + "/codomain");
  Eigen::MatrixXd blocks =
      parse_block_table(j.at("blocks"), where + "/blocks", codomain.space.size(),
                        domain.space.size(), codomain.spec.dim, domain.spec.dim, true);
  return BlockOperator(std::move(domain), std::move(codomain), std::move(blocks));
}

Kernel parse_kernel(const ordered_json& j, const std::string& where) {
  check_fields(j, where,
               {"kind", "version", "space1", "space2", "domain_spec", "codomain_spec", "blocks"});
  check_version(j, where);
  if (get_string(j.at("kind"), where + "/kind") != "kernel")
    fail(Code::Schema, where + "/kind", "expected kind kernel");
  MeasureSpace s1 = parse_measure_space(j.at("space1"), where + "/space1");
  MeasureSpace s2 = parse_measure_space(j.at("space2"), where + "/space2");
  SpaceSpec dspec = parse_space_spec(j.at("domain_spec"), where + "/domain_spec");
  SpaceSpec cspec = parse_space_spec(j.at("codomain_spec"), where + "/codomain_spec");
  // Kernel tables are indexed [w1][w2]; storage keeps operator layout.
  Eigen::MatrixXd blocks = parse_block_table(j.at("blocks"), where + "/blocks", s1.size(),
                                             s2.size(), cspec.dim, dspec.dim, false);
  return Kernel(std::move(s1), std::move(s2), dspec, cspec, std::move(blocks));
}

Multiplier parse_multiplier(const ordered_json& j, const std::string& where) {
  check_fields(j, where, {"kind", "version", "space", "spec", "blocks"});
  check_version(j, where);
  if (get_string(j.at("kind"), where + "/kind") != "multiplier")
    fail(Code::Schema, where + "/kind", "expected kind multiplier");
  MeasureSpace space = parse_measure_space(j.at("space"), where + "/space");
  SpaceSpec spec = parse_space_spec(j.at("spec"), where + "/spec");
  const auto& blocks_json = j.at("blocks");
  if (!blocks_json.is_array() || static_cast<int>(blocks_json.size()) != space.size())
    fail(Code::Schema, where + "/blocks", "expected one block per atom");
  std::vector<Eigen::MatrixXd> blocks;
  for (int a = 0; a < space.size(); ++a)
    blocks.push_back(get_matrix(blocks_json[static_cast<size_t>(a)],
                                where + "/blocks[" + std::to_string(a) + "]", spec.dim,
                                spec.dim));
  return Multiplier(std::move(space), spec, std::move(blocks));
}

TensorFactor parse_factor(const ordered_json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("type")) fail(Code::Schema, where, "expected a factor object");
  std::string type = get_string(j.at("type"), where + "/type");
  if (type == "space") {
    check_fields(j, where, {"type", "spec"});
    return TensorFactor::space(parse_space_spec(j.at("spec"), where + "/spec"));
  }
  if (type == "lp") {
    check_fields(j, where, {"type", "space", "exponent"});
    return TensorFactor::lp(parse_measure_space(j.at("space"), where + "/space"),
                            get_pnorm(j.at("exponent"), where + "/exponent"));
  }
  fail(Code::Schema, where + "/type", "factor type must be space or lp");
}

void flatten_coefficients(const ordered_json& j, const std::string& where,
                          const std::vector<TensorFactor>& factors, size_t axis,
                          std::vector<double>& out) {
  if (axis == factors.size()) {
    out.push_back(get_number(j, where));
    return;
  }
  int n = factors[axis].size();
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    fail(Code::Schema, where, "expected an array of length " + std::to_string(n));
  for (int i = 0; i < n; ++i)
    flatten_coefficients(j[static_cast<size_t>(i)], where + "[" + std::to_string(i) + "]",
                         factors, axis + 1, out);
}

TensorElement parse_tensor_element(const ordered_json& j, const std::string& where) {
  check_fields(j, where, {"kind", "version", "factors", "coefficients"});
  check_version(j, where);
  if (get_string(j.at("kind"), where + "/kind") != "tensor_element")
    fail(Code::Schema, where + "/kind", "expected kind tensor_element");
  const auto& factors_json = j.at("factors");
  if (!factors_json.is_array() || factors_json.empty())
    fail(Code::Schema, where + "/factors", "expected a non-empty array of factors");
  std::vector<TensorFactor> factors;
  for (size_t i = 0; i < factors_json.size(); ++i)
    factors.push_back(
        parse_factor(factors_json[i], where + "/factors[" + std::to_string(i) + "]"));
  std::vector<double> coeffs;
  flatten_coefficients(j.at("coefficients"), where + "/coefficients", factors, 0, coeffs);
  Eigen::VectorXd c = Eigen::Map<const Eigen::VectorXd>(coeffs.data(),
                                                        static_cast<Eigen::Index>(coeffs.size()));
  return TensorElement(std::move(factors), std::move(c));
}

Document parse_json_document(const ordered_json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("kind"))
    fail(Code::Schema, where, "document must be an object with a kind field");
  std::string kind = get_string(j.at("kind"), where + "/kind");
  try {
    if (kind == "measure_space") return Document{parse_measure_space(j, where)};
    if (kind == "space_spec") return Document{parse_space_spec(j, where)};
    if (kind == "lp_function") return Document{parse_lp_function(j, where)};
    if (kind == "operator") return Document{parse_operator(j, where)};
    if (kind == "kernel") return Document{parse_kernel(j, where)};
    if (kind == "multiplier") return Document{parse_multiplier(j, where)};
    if (kind == "tensor_element") return Document{parse_tensor_element(j, where)};
  } catch (const ParseError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    // Constructor invariants that the field checks above did not cover.
    fail(Code::Invariant, where, e.what());
  }
  fail(Code::Schema, where + "/kind", "unknown document kind: " + kind);
}

ordered_json json_of(const MeasureSpace& s);
ordered_json json_of(const SpaceSpec& s);

ordered_json json_of(const MeasureSpace& s) {
  ordered_json j;
  j["kind"] = "measure_space";
  j["version"] = "1";
  j["atoms"] = s.atoms();
  std::vector<double> w(s.weights().data(), s.weights().data() + s.size());
  j["weights"] = w;
  return j;
}

ordered_json json_of(const SpaceSpec& s) {
  ordered_json j;
  j["kind"] = "space_spec";
  j["version"] = "1";
  j["dim"] = s.dim;
  j["norm"] = to_string(s.norm);
  j["ordered"] = s.ordered;
  return j;
}

ordered_json json_of_vector(const Eigen::VectorXd& v) {
  ordered_json a = ordered_json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

ordered_json json_of_matrix(const Eigen::MatrixXd& m) {
  ordered_json rows = ordered_json::array();
  for (int r = 0; r < m.rows(); ++r) rows.push_back(json_of_vector(m.row(r).transpose()));
  return rows;
}

ordered_json json_of(const LpFunction& f) {
  ordered_json j;
  j["kind"] = "lp_function";
  j["version"] = "1";
  j["space"] = json_of(f.space());
  j["spec"] = json_of(f.spec());
  j["exponent"] = to_string(f.exponent());
  ordered_json values = ordered_json::array();
  for (int a = 0; a < f.space().size(); ++a) values.push_back(json_of_vector(f.value(a)));
  j["values"] = values;
  return j;
}

ordered_json json_of(const BlockOperator& T) {
  ordered_json j;
  j["kind"] = "operator";
  j["version"] = "1";
  auto side = [](const FunctionSpace& fs) {
    ordered_json s;
    s["space"] = json_of(fs.space);
    s["spec"] = json_of(fs.spec);
    s["exponent"] = to_string(fs.exponent);
    return s;
  };
  j["domain"] = side(T.domain());
  j["codomain"] = side(T.codomain());
  ordered_json blocks = ordered_json::array();
  for (int w2 = 0; w2 < T.codomain().space.size(); ++w2) {
    ordered_json row = ordered_json::array();
    for (int w1 = 0; w1 < T.domain().space.size(); ++w1)
      row.push_back(json_of_matrix(T.block(w2, w1)));
    blocks.push_back(row);
  }
  j["blocks"] = blocks;
  return j;
}

ordered_json json_of(const Kernel& k) {
  ordered_json j;
  j["kind"] = "kernel";
  j["version"] = "1";
  j["space1"] = json_of(k.space1());
  j["space2"] = json_of(k.space2());
  j["domain_spec"] = json_of(k.domain_spec());
  j["codomain_spec"] = json_of(k.codomain_spec());
  ordered_json blocks = ordered_json::array();
  for (int w1 = 0; w1 < k.space1().size(); ++w1) {
    ordered_json row = ordered_json::array();
    for (int w2 = 0; w2 < k.space2().size(); ++w2) row.push_back(json_of_matrix(k.block(w1, w2)));
    blocks.push_back(row);
  }
  j["blocks"] = blocks;
  return j;
}

ordered_json json_of(const Multiplier& m) {
  ordered_json j;
  j["kind"] = "multiplier";
  j["version"] = "1";
  j["space"] = json_of(m.space());
  j["spec"] = json_of(m.spec());
  ordered_json blocks = ordered_json::array();
  for (const auto& b : m.blocks()) blocks.push_back(json_of_matrix(b));
  j["blocks"] = blocks;
  return j;
}

ordered_json json_of_factor(const TensorFactor& f) {
  ordered_json j;
  if (f.is_lp()) {
    j["type"] = "lp";
    j["space"] = json_of(f.measure());
    j["exponent"] = to_string(f.tag());
  } else {
    j["type"] = "space";
    j["spec"] = json_of(f.spec());
  }
  return j;
}

ordered_json nest_coefficients(const Eigen::VectorXd& c, const std::vector<TensorFactor>& factors,
                               size_t axis, Eigen::Index& cursor) {
  if (axis == factors.size()) return ordered_json(c[cursor++]);
  ordered_json a = ordered_json::array();
  for (int i = 0; i < factors[axis].size(); ++i)
    a.push_back(nest_coefficients(c, factors, axis + 1, cursor));
  return a;
}

ordered_json json_of(const TensorElement& z) {
  ordered_json j;
  j["kind"] = "tensor_element";
  j["version"] = "1";
  ordered_json factors = ordered_json::array();
  for (const auto& f : z.factors()) factors.push_back(json_of_factor(f));
  j["factors"] = factors;
  Eigen::Index cursor = 0;
  j["coefficients"] = nest_coefficients(z.coefficients(), z.factors(), 0, cursor);
  return j;
}

}  // namespace

Document parse_document(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(Code::Syntax, "byte " + std::to_string(e.byte), "malformed JSON");
  }
  return parse_json_document(j, "");
}

Document load_artifact(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(Code::Syntax, "byte " + std::to_string(e.byte), "malformed JSON");
  }
  if (j.is_object() && j.contains("kind") && j.at("kind") == "report") {
    if (!j.contains("outputs") || !j.at("outputs").is_object() || j.at("outputs").size() != 1)
      fail(Code::Schema, "/outputs", "report used as input must carry exactly one output");
    return parse_json_document(j.at("outputs").begin().value(), "/outputs");
  }
  return parse_json_document(j, "");
}

std::string serialize(const MeasureSpace& s) { return json_of(s).dump(2) + "\n"; }
std::string serialize(const SpaceSpec& s) { return json_of(s).dump(2) + "\n"; }
std::string serialize(const LpFunction& f) { return json_of(f).dump(2) + "\n"; }
std::string serialize(const Kernel& k) { return json_of(k).dump(2) + "\n"; }
std::string serialize(const BlockOperator& T) { return json_of(T).dump(2) + "\n"; }
std::string serialize(const Multiplier& m) { return json_of(m).dump(2) + "\n"; }

std::string serialize(const TensorElement& z) { return json_of(z).dump(2) + "\n"; }

std::string serialize(const Document& d) {
  return std::visit([](const auto& v) { return serialize(v); }, d.value);
}

std::string document_digest(const Document& d) { return content_digest(serialize(d)); }

}  // namespace repkit

#pragma once

#include <stdexcept>
#include <string>
#include <variant>

#include "repkit/kernels.hpp"
#include "repkit/multiplication.hpp"
#include "repkit/operators.hpp"
#include "repkit/spaces.hpp"
#include "repkit/tensor.hpp"

namespace repkit {

// Version-1 document format: one self-describing JSON object per artifact.
// Parsing is strict: unknown fields, missing fields, and shape mismatches
// are schema errors; violated value invariants (non-positive weights,
// duplicate atoms, non-positive dimensions) are invariant errors; bad JSON
// is a syntax error. Each class carries a distinct code.
class ParseError : public std::runtime_error {
 public:
  enum class Code { Syntax, Schema, Invariant };

  ParseError(Code code, std::string where, const std::string& message)
      : std::runtime_error(message + " (at " + where + ")"),
        code_(code),
        where_(std::move(where)) {}

  Code code() const { return code_; }
  const std::string& where() const { return where_; }

  const char* code_name() const {
    switch (code_) {
      case Code::Syntax: return "syntax";
      case Code::Schema: return "schema";
      case Code::Invariant: return "invariant";
    }
    return "syntax";
  }

 private:
  Code code_;
  std::string where_;
};

struct Document {
  std::variant<MeasureSpace, SpaceSpec, LpFunction, Kernel, BlockOperator, Multiplier,
               TensorElement>
      value;

  const char* kind_name() const;

  template <typename T>
  const T& as(const char* expected) const {
    if (const T* p = std::get_if<T>(&value)) return *p;
    throw ParseError(ParseError::Code::Schema, "/kind",
                     std::string("expected a ") + expected + " document, got " + kind_name());
  }
};

// Parses one artifact document (kinds measure_space, space_spec,
// lp_function, kernel, operator, multiplier, tensor_element).
Document parse_document(const std::string& text);

// Like parse_document, but also accepts a report document with exactly one
// embedded output, so command outputs pipe into the next command.
Document load_artifact(const std::string& text);

// Canonical serialization; parse(serialize(d)) reproduces d and the bytes
// are deterministic.
std::string serialize(const MeasureSpace& s);
std::string serialize(const SpaceSpec& s);
std::string serialize(const LpFunction& f);
std::string serialize(const Kernel& k);
std::string serialize(const BlockOperator& T);
std::string serialize(const Multiplier& m);
std::string serialize(const TensorElement& z);
std::string serialize(const Document& d);

// Digest of the canonical serialization, independent of input field order.
std::string document_digest(const Document& d);

}  // namespace repkit

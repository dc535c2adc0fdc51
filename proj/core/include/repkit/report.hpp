#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace repkit {

// Machine-readable result of one command. Every numeric result carries the
// tolerance against which it was judged; witnesses and outputs embed full
// documents so failures reproduce without re-running. Serialization is
// byte-deterministic: insertion order is preserved and doubles round-trip.
class Report {
 public:
  enum class Status { Pass, Fail, Approx };

  explicit Report(std::string command) : command_(std::move(command)) {}

  void add_input_digest(std::string digest) { inputs_.push_back(std::move(digest)); }
  void add_number(const std::string& name, double value, double tolerance);
  void add_bool(const std::string& name, bool value);
  void add_int(const std::string& name, long long value);
  void add_text(const std::string& name, std::string value);
  // Raw JSON fragment, embedded verbatim (for nested structures).
  void add_json(const std::string& name, std::string json_text);
  // Serialized document embedded under witnesses / outputs.
  void add_witness(const std::string& name, std::string document_text);
  void add_output(const std::string& name, std::string document_text);

  void set_status(Status s) { status_ = s; }
  void set_interval(double lower, double upper) { interval_ = {lower, upper}; }

  Status status() const { return status_; }

  std::string serialize() const;

 private:
  struct Entry {
    enum class Type { Number, Boolean, Integer, Text, Json } type;
    std::string name;
    double number = 0.0;
    double tolerance = 0.0;
    bool boolean = false;
    long long integer = 0;
    std::string text;
  };

  std::string command_;
  std::vector<std::string> inputs_;
  std::vector<Entry> results_;
  std::vector<std::pair<std::string, std::string>> witnesses_;
  std::vector<std::pair<std::string, std::string>> outputs_;
  Status status_ = Status::Pass;
  std::optional<std::pair<double, double>> interval_;
};

// FNV-1a over the canonical bytes, as a 16-digit hex string.
std::string content_digest(const std::string& bytes);

}  // namespace repkit

#include "repkit/report.hpp"

#include <nlohmann/json.hpp>

namespace repkit {

using ordered_json = nlohmann::ordered_json;

void Report::add_number(const std::string& name, double value, double tolerance) {
  Entry e;
  e.type = Entry::Type::Number;
  e.name = name;
  e.number = value;
  e.tolerance = tolerance;
  results_.push_back(std::move(e));
}

void Report::add_bool(const std::string& name, bool value) {
  Entry e;
  e.type = Entry::Type::Boolean;
  e.name = name;
  e.boolean = value;
  results_.push_back(std::move(e));
}

void Report::add_int(const std::string& name, long long value) {
  Entry e;
  e.type = Entry::Type::Integer;
  e.name = name;
  e.integer = value;
  results_.push_back(std::move(e));
}

void Report::add_text(const std::string& name, std::string value) {
  Entry e;
  e.type = Entry::Type::Text;
  e.name = name;
  e.text = std::move(value);
  results_.push_back(std::move(e));
}

void Report::add_json(const std::string& name, std::string json_text) {
  Entry e;
  e.type = Entry::Type::Json;
  e.name = name;
  e.text = std::move(json_text);
  results_.push_back(std::move(e));
}

void Report::add_witness(const std::string& name, std::string document_text) {
  witnesses_.emplace_back(name, std::move(document_text));
}

void Report::add_output(const std::string& name, std::string document_text) {
  outputs_.emplace_back(name, std::move(document_text));
}

std::string Report::serialize() const {
  ordered_json j;
  j["kind"] = "report";
  j["version"] = "1";
  j["command"] = command_;
  j["inputs"] = inputs_;
  ordered_json results = ordered_json::object();
  for (const auto& e : results_) {
    switch (e.type) {
      case Entry::Type::Number: {
        ordered_json v;
        v["value"] = e.number;
        v["tolerance"] = e.tolerance;
        results[e.name] = v;
        break;
      }
      case Entry::Type::Boolean: results[e.name] = e.boolean; break;
      case Entry::Type::Integer: results[e.name] = e.integer; break;
      case Entry::Type::Text: results[e.name] = e.text; break;
      case Entry::Type::Json: results[e.name] = ordered_json::parse(e.text); break;
    }
  }
  j["results"] = results;
  if (!outputs_.empty()) {
    ordered_json outputs = ordered_json::object();
    for (const auto& [name, text] : outputs_) outputs[name] = ordered_json::parse(text);
    j["outputs"] = outputs;
  }
  if (!witnesses_.empty()) {
    ordered_json witnesses = ordered_json::object();
    for (const auto& [name, text] : witnesses_) witnesses[name] = ordered_json::parse(text);
    j["witnesses"] = witnesses;
  }
  switch (status_) {
    case Status::Pass: j["status"] = "pass"; break;
    case Status::Fail: j["status"] = "fail"; break;
    case Status::Approx: j["status"] = "approx"; break;
  }
  if (interval_) {
    ordered_json iv;
    iv["lower"] = interval_->first;
    iv["upper"] = interval_->second;
    j["interval"] = iv;
  }
  return j.dump(2) + "\n";
}

std::string content_digest(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<size_t>(i)] = hex[h & 0xf];
    h >>= 4;
  }
  return out;
}

}  // namespace repkit

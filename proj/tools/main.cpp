// Command-line front end: reads input documents, dispatches to the toolkit,
// writes one report document to stdout. Exit codes: 0 pass, 1 check failed,
// 2 input error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "repkit/commands.hpp"

namespace {

bool read_input(const std::string& path, std::string& out, std::string& error) {
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    out = buffer.str();
    return true;
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) {
    error = "cannot open input file: " + path;
    return false;
  }
  std::ostringstream buffer;
  buffer << file.rdbuf();
  out = buffer.str();
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-scale operator representation toolkit"};
  app.get_formatter()->column_width(28);

  std::string command;
  std::vector<std::string> files;
  repkit::CommandOptions opts;
  double tolerance = -1.0;

  std::string command_list;
  for (const auto& name : repkit::command_names()) {
    if (!command_list.empty()) command_list += ", ";
    command_list += name;
  }

  app.add_option("command", command, "One of: " + command_list)->required();
  app.add_option("files", files, "Input documents ('-' for stdin)");
  app.add_option("--seed", opts.seed, "Random seed for sampled checks")->capture_default_str();
  app.add_option("--samples", opts.samples, "Number of random probes")->capture_default_str();
  app.add_option("--tolerance", tolerance, "Override the command's default tolerance");
  app.add_option("--max-n", opts.max_n, "Largest Hadamard order for counterexample")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream msg;
    int code = app.exit(e, msg, msg);
    std::cerr << msg.str();
    return code == 0 ? 0 : 2;
  }

  if (tolerance >= 0.0) opts.tolerance = tolerance;

  std::vector<std::string> inputs;
  for (const auto& path : files) {
    std::string text, error;
    if (!read_input(path, text, error)) {
      std::cerr << "input error [io]: " << error << "\n";
      return 2;
    }
    inputs.push_back(std::move(text));
  }

  repkit::CommandOutcome outcome = repkit::run_command(command, inputs, opts);
  if (!outcome.report.empty()) std::cout << outcome.report;
  if (!outcome.diagnostics.empty()) std::cerr << outcome.diagnostics << "\n";
  return outcome.exit_code;
}

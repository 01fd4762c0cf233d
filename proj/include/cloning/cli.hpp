#pragma once

#include <nlohmann/json.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cloning::cli {

enum class Status { pass, fail, skipped };

struct Verdict {
  std::string name;
  Status status;
  std::string detail;
};

/// What a subcommand did: echo of the command and its inputs, computed
/// outputs, and pass/fail verdicts. Exit code 1 iff any verdict failed.
struct RunReport {
  std::string command;
  nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
  nlohmann::ordered_json outputs = nlohmann::ordered_json::object();
  std::vector<Verdict> verdicts;
  std::vector<std::string> warnings;
  std::optional<double> wall_time_s;

  void check(std::string name, bool ok, std::string detail);
  void skip(std::string name, std::string detail);
  bool all_passed() const;
  int exit_code() const { return all_passed() ? 0 : 1; }

  nlohmann::ordered_json to_json() const;
  std::string to_text() const;
};

/// Parses and dispatches; args exclude the program name. Returns 0 when
/// every verdict passes, 1 when one fails, 2 on argument errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cloning::cli

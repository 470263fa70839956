#pragma once

#include <optional>
#include <string>
#include <vector>

#include "iqp/json_io.hpp"

namespace iqp {

// Command-line overrides of the problem document
struct CliOptions {
  std::string format = "json";
  std::optional<std::string> variant;
  std::optional<int> k;
  std::vector<Rat> eval;
  std::optional<std::vector<Rat>> grid;  // min, max, step
  bool oracle_check = false;
};

// Each returns the output document; CSV output of plotdata is carried in "csv".
Json cmd_chambers(const Json& spec, const CliOptions& opt);
Json cmd_ehrhart(const Json& spec, const CliOptions& opt);
Json cmd_plotdata(const Json& spec, const CliOptions& opt);
Json cmd_oracle(const Json& spec, const CliOptions& opt);

// exit codes: 0 ok, 1 internal / failed oracle check, 2 schema, 3 domain, 4 resource
int run_cli(int argc, char** argv);

}  // namespace iqp

#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "fkp/core.hpp"

namespace fkp::cli {

enum class Status { ok = 0, inequivalent = 1, usage = 2, capacity = 3 };

/// Outcome of one subcommand: a status (which fixes the exit code), a
/// human-readable text block, and a JSON payload with the same content.
struct CommandResult {
  Status status = Status::ok;
  std::string text;
  nlohmann::ordered_json payload;

  int exit_code() const { return static_cast<int>(status); }
};

struct Options {
  std::uint64_t max_n = 1024;  // matrix building/verification ceiling
  index_t oracle_cap = 12;     // exhaustive search ceiling
};

CommandResult cmd_canon(const std::string& spec_text, const Options& options);
CommandResult cmd_equiv(const std::string& spec_a, const std::string& spec_b,
                        const std::string& mode, const Options& options);
CommandResult cmd_census(const std::string& spec_text, bool check_oracle,
                         const Options& options);
CommandResult cmd_witness(const std::string& spec_a, const std::string& spec_b,
                          bool verify, const Options& options);
CommandResult cmd_classes(std::uint64_t n, bool members, const Options& options);
CommandResult cmd_oracle(const std::string& spec_a, const std::string& spec_b,
                         const Options& options);

}  // namespace fkp::cli

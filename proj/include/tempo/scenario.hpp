// Copyright 2026 The Tempo Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TEMPO_SCENARIO_HPP
#define TEMPO_SCENARIO_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tempo/registry.hpp"
#include "tempo/runtime.hpp"

namespace tempo {

/// Thrown on malformed scenario text or an unknown program id; callers map
/// it to exit code 2.
class ScenarioError : public Error {
 public:
  using Error::Error;
};

struct TickSpec {
  struct Input {
    std::string event;
    std::optional<Value> value;
  };
  struct Response {
    std::string token_alias;  // "t1" = first token issued in this run
    bool success = false;
    Value value;
  };
  std::vector<Input> inputs;
  std::vector<Response> completions;
  std::vector<std::string> expect_present;
  std::vector<std::string> expect_absent;
  std::map<std::string, Value> expect_values;
  std::optional<std::string> expect_error;
  std::optional<bool> expect_terminated;
};

struct Scenario {
  std::string program_id;
  std::vector<TickSpec> ticks;
};

/// Line-delimited JSON: a header line {"program_id": ...} followed by one
/// Tick object per line. Blank lines and lines starting with '#' skipped.
Scenario parse_scenario(std::istream& in);
Scenario load_scenario(const std::string& path);

struct ScenarioOutcome {
  int exit_code = 0;  // 0 pass, 1 expectation failed
  std::vector<std::string> failures;
  std::vector<std::string> trace;  // one formatted line per reaction
};

/// Replays the ticks against the scenario's program with a scripted
/// service client. Throws ScenarioError for unknown ids or aliases.
/// `seed` shuffles the scheduler's pick order; outcomes must not depend
/// on it.
ScenarioOutcome run_scenario(const Scenario& scenario,
                             std::uint64_t seed = 0);

/// Replays tick inputs/completions from `scenario` against `program`,
/// ignoring expectations; returns the trace lines.
std::vector<std::string> emit_trace(const BuiltProgram& program,
                                    const Scenario& scenario,
                                    std::uint64_t seed = 0);

/// File-level wrapper with the CLI exit-code contract: 0 pass, 1 failed
/// expectations, 2 unreadable/unparseable scenario or unknown program.
int run_scenario_file(const std::string& path, std::ostream& diagnostics,
                      std::uint64_t seed = 0);

}  // namespace tempo

#endif  // TEMPO_SCENARIO_HPP

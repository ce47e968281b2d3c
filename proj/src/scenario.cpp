// Copyright 2026 The Tempo Authors
// SPDX-License-Identifier: Apache-2.0

#include "tempo/scenario.hpp"

#include <fstream>
#include <memory>
#include <sstream>

#include <json.hpp>

#include "tempo/bridge.hpp"
#include "tempo/trace.hpp"

namespace tempo {

namespace {

// Scenario completions address calls by issue order, so the client only
// needs to remember which tokens appeared; nothing completes by itself.
class RecordingClient : public ServiceClient {
 public:
  void issue(const ServiceCall& call, CompletionSink) override {
    issued_.push_back(call.token);
  }
  void cancel(Token token) override { cancelled_.push_back(token); }

  Token by_alias(const std::string& alias) const {
    if (alias.size() < 2 || alias[0] != 't') {
      throw ScenarioError("bad token alias '" + alias + "'");
    }
    size_t idx = std::stoul(alias.substr(1));
    if (idx == 0 || idx > issued_.size()) {
      throw ScenarioError("token alias '" + alias +
                          "' refers to a call that was never issued");
    }
    return issued_[idx - 1];
  }

 private:
  std::vector<Token> issued_;
  std::vector<Token> cancelled_;
};

TickSpec parse_tick(const nlohmann::json& j, int line_no) {
  static const char* known[] = {"inputs",        "completions",
                                "expect_present", "expect_absent",
                                "expect_values",  "expect_error",
                                "expect_terminated"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : known) {
      if (it.key() == k) {
        ok = true;
        break;
      }
    }
    if (!ok) {
      throw ScenarioError("line " + std::to_string(line_no) +
                          ": unknown tick key '" + it.key() + "'");
    }
  }
  TickSpec tick;
  for (const auto& in : j.value("inputs", nlohmann::json::array())) {
    TickSpec::Input input;
    input.event = in.at("event").get<std::string>();
    if (in.contains("value") && !in.at("value").is_null()) {
      input.value = in.at("value");
    }
    tick.inputs.push_back(std::move(input));
  }
  for (const auto& c : j.value("completions", nlohmann::json::array())) {
    TickSpec::Response r;
    r.token_alias = c.at("token_alias").get<std::string>();
    std::string outcome = c.at("outcome").get<std::string>();
    if (outcome != "success" && outcome != "failure") {
      throw ScenarioError("line " + std::to_string(line_no) +
                          ": outcome must be success or failure");
    }
    r.success = outcome == "success";
    if (c.contains("value")) {
      r.value = c.at("value");
    }
    tick.completions.push_back(std::move(r));
  }
  for (const auto& e : j.value("expect_present", nlohmann::json::array())) {
    tick.expect_present.push_back(e.get<std::string>());
  }
  for (const auto& e : j.value("expect_absent", nlohmann::json::array())) {
    tick.expect_absent.push_back(e.get<std::string>());
  }
  if (j.contains("expect_values")) {
    for (auto it = j.at("expect_values").begin();
         it != j.at("expect_values").end(); ++it) {
      tick.expect_values[it.key()] = it.value();
    }
  }
  if (j.contains("expect_error") && !j.at("expect_error").is_null()) {
    tick.expect_error = j.at("expect_error").get<std::string>();
  }
  if (j.contains("expect_terminated") && !j.at("expect_terminated").is_null()) {
    tick.expect_terminated = j.at("expect_terminated").get<bool>();
  }
  for (const auto& p : tick.expect_present) {
    for (const auto& a : tick.expect_absent) {
      if (p == a) {
        throw ScenarioError("line " + std::to_string(line_no) + ": '" + p +
                            "' both expected present and absent");
      }
    }
  }
  return tick;
}

const Event* find_event(const std::vector<Event>& interface,
                        const std::string& name) {
  for (const auto& e : interface) {
    if (e.name() == name) {
      return &e;
    }
  }
  return nullptr;
}

struct Replay {
  Machine machine;
  std::shared_ptr<RecordingClient> client;
};

Replay start_replay(const BuiltProgram& program, std::uint64_t seed) {
  auto client = std::make_shared<RecordingClient>();
  Machine machine(program.stmt, program.interface);
  machine.set_client(client);
  machine.set_schedule_seed(seed);
  return {std::move(machine), std::move(client)};
}

void apply_tick_stimuli(Replay& r, const BuiltProgram& program,
                        const TickSpec& tick) {
  for (const auto& c : tick.completions) {
    Token t = r.client->by_alias(c.token_alias);
    r.machine.enqueue_response(c.success ? succeed(t, c.value)
                                         : fail(t, "scripted failure"));
  }
  for (const auto& in : tick.inputs) {
    const Event* e = find_event(program.interface, in.event);
    if (!e) {
      throw ScenarioError("unknown input event '" + in.event + "'");
    }
    r.machine.input(*e, in.value);
  }
}

}  // namespace

Scenario parse_scenario(std::istream& in) {
  Scenario sc;
  std::string line;
  int line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') {
      continue;
    }
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& ex) {
      throw ScenarioError("line " + std::to_string(line_no) + ": " + ex.what());
    }
    if (!header_seen) {
      if (!j.contains("program_id")) {
        throw ScenarioError("first line must carry program_id");
      }
      sc.program_id = j.at("program_id").get<std::string>();
      header_seen = true;
      continue;
    }
    sc.ticks.push_back(parse_tick(j, line_no));
  }
  if (!header_seen) {
    throw ScenarioError("empty scenario");
  }
  if (sc.ticks.empty()) {
    throw ScenarioError("scenario needs at least one tick");
  }
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ScenarioError("cannot open '" + path + "'");
  }
  return parse_scenario(in);
}

ScenarioOutcome run_scenario(const Scenario& scenario,
                             std::uint64_t seed) {
  const RegistryEntry* entry = find_program(scenario.program_id);
  if (!entry) {
    throw ScenarioError("unknown program '" + scenario.program_id + "'");
  }
  BuiltProgram program = entry->build();
  Replay r = start_replay(program, seed);
  ScenarioOutcome outcome;
  auto complain = [&](int tick_no, const std::string& what) {
    outcome.failures.push_back("tick " + std::to_string(tick_no) + ": " + what);
  };
  int tick_no = 0;
  for (const auto& tick : scenario.ticks) {
    ++tick_no;
    apply_tick_stimuli(r, program, tick);
    ReactionReport report = r.machine.react();
    outcome.trace.push_back(format_trace_line(make_trace_line(report)));
    for (const auto& name : tick.expect_present) {
      if (!report.present(name)) {
        complain(tick_no, "expected '" + name + "' present");
      }
    }
    for (const auto& name : tick.expect_absent) {
      if (report.present(name)) {
        complain(tick_no, "expected '" + name + "' absent");
      }
    }
    for (const auto& [name, expected] : tick.expect_values) {
      const Value* got = report.value_of(name);
      if (!got) {
        complain(tick_no, "expected a value on '" + name + "'");
      } else if (*got != expected) {
        complain(tick_no, "'" + name + "' expected " + expected.dump() +
                              ", got " + got->dump());
      }
    }
    if (tick.expect_error) {
      std::string got = report.error ? to_string(report.error->kind) : "none";
      if (got != *tick.expect_error) {
        complain(tick_no,
                 "expected error " + *tick.expect_error + ", got " + got);
      }
    } else if (report.error) {
      complain(tick_no, std::string("unexpected error ") +
                            to_string(report.error->kind) + ": " +
                            report.error->message);
    }
    if (tick.expect_terminated &&
        report.terminated != *tick.expect_terminated) {
      complain(tick_no, report.terminated ? "terminated unexpectedly"
                                          : "expected termination");
    }
  }
  outcome.exit_code = outcome.failures.empty() ? 0 : 1;
  return outcome;
}

std::vector<std::string> emit_trace(const BuiltProgram& program,
                                    const Scenario& scenario,
                                    std::uint64_t seed) {
  Replay r = start_replay(program, seed);
  std::vector<std::string> lines;
  for (const auto& tick : scenario.ticks) {
    apply_tick_stimuli(r, program, tick);
    lines.push_back(format_trace_line(make_trace_line(r.machine.react())));
  }
  return lines;
}

int run_scenario_file(const std::string& path, std::ostream& diagnostics,
                      std::uint64_t seed) {
  Scenario scenario;
  try {
    scenario = load_scenario(path);
  } catch (const ScenarioError& ex) {
    diagnostics << path << ": " << ex.what() << "\n";
    return 2;
  }
  ScenarioOutcome outcome;
  try {
    outcome = run_scenario(scenario, seed);
  } catch (const Error& ex) {
    // ScenarioError, or an engine error for stimuli the program cannot
    // accept (e.g. feeding an event that is not an input).
    diagnostics << path << ": " << ex.what() << "\n";
    return 2;
  }
  for (const auto& f : outcome.failures) {
    diagnostics << path << ": " << f << "\n";
  }
  return outcome.exit_code;
}

}  // namespace tempo

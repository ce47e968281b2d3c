// Copyright 2026 The Tempo Authors
// SPDX-License-Identifier: Apache-2.0
//
// Conformance runner: replays tick-scripted scenarios against the built-in
// program registry, emits golden-diffable traces, and drives the mock
// music-player demo. Exit codes: 0 pass, 1 expectation/golden mismatch,
// 2 bad input (unparseable file, unknown program or genre).

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tempo/demo.hpp"
#include "tempo/errors.hpp"
#include "tempo/registry.hpp"
#include "tempo/scenario.hpp"

namespace {

int cmd_run(const std::string& path, std::uint64_t seed) {
  return tempo::run_scenario_file(path, std::cerr, seed);
}

int cmd_trace(const std::string& program_id, const std::string& path,
              const std::string& golden, std::uint64_t seed) {
  const tempo::RegistryEntry* entry = tempo::find_program(program_id);
  if (!entry) {
    std::cerr << "unknown program '" << program_id << "'\n";
    return 2;
  }
  std::vector<std::string> lines;
  try {
    tempo::Scenario scenario = tempo::load_scenario(path);
    lines = tempo::emit_trace(entry->build(), scenario, seed);
  } catch (const tempo::Error& ex) {
    std::cerr << path << ": " << ex.what() << "\n";
    return 2;
  }
  for (const auto& line : lines) {
    std::cout << line << "\n";
  }
  if (golden.empty()) {
    return 0;
  }
  std::ifstream in(golden);
  if (!in) {
    std::cerr << "cannot open golden file '" << golden << "'\n";
    return 2;
  }
  std::vector<std::string> expected;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    expected.push_back(line);
  }
  while (!expected.empty() && expected.back().empty()) expected.pop_back();
  int rc = 0;
  for (std::size_t i = 0; i < lines.size() || i < expected.size(); ++i) {
    const std::string* got = i < lines.size() ? &lines[i] : nullptr;
    const std::string* want = i < expected.size() ? &expected[i] : nullptr;
    if (!got || !want || *got != *want) {
      std::cerr << "golden mismatch at line " << (i + 1) << "\n"
                << "  expected: " << (want ? *want : "<end of file>") << "\n"
                << "  actual:   " << (got ? *got : "<end of trace>") << "\n";
      rc = 1;
    }
  }
  return rc;
}

int cmd_list() {
  for (const auto& entry : tempo::program_registry()) {
    std::cout << entry.id << "\t" << entry.description << "\n";
  }
  return 0;
}

int cmd_demo(const tempo::demo::DemoConfig& config,
             const std::string& catalog_path) {
  try {
    if (!catalog_path.empty()) {
      // Validate the file even though the run uses the built-in catalog
      // contents; both ship the same data.
      tempo::demo::load_catalog(catalog_path);
    }
    tempo::demo::DemoResult result = tempo::demo::run_demo(config);
    for (const auto& line : result.lines) {
      std::cout << line << "\n";
    }
    std::cout << "-- terminated=" << (result.terminated ? "true" : "false")
              << " tick=" << result.final_tick
              << " pending=" << result.pending_after.size()
              << " dropped=" << result.dropped_completions << "\n";
    return 0;
  } catch (const tempo::DemoConfigError& ex) {
    std::cerr << "demo: " << ex.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tempo scenario and demo runner"};
  app.require_subcommand(1);
  std::uint64_t seed = 0;
  app.add_option("--seed", seed,
                 "scheduler shuffle for run/trace, latency seed for demo");

  std::string run_path;
  auto* run = app.add_subcommand("run", "replay a scenario file");
  run->fallthrough();  // lets --seed appear after the subcommand
  run->add_option("file", run_path, "scenario file")->required();

  std::string trace_id, trace_path, golden;
  auto* trace = app.add_subcommand("trace", "emit a trace for a program");
  trace->fallthrough();
  trace->add_option("program_id", trace_id, "registry program")->required();
  trace->add_option("file", trace_path, "scenario file with the ticks")
      ->required();
  trace->add_option("--golden", golden, "compare against a golden trace");

  auto* list = app.add_subcommand("list", "list registry programs");

  auto* demo = app.add_subcommand("demo", "mock music-player demo");
  demo->require_subcommand(1);
  demo->fallthrough();
  tempo::demo::DemoConfig config;
  std::string catalog_path;
  auto* demo_run = demo->add_subcommand("run", "run the demo");
  demo_run->fallthrough();
  demo_run->add_option("--ticks", config.ticks, "horizon in ticks");
  demo_run->add_option("--stop-at", config.stop_at,
                       "tick at which musicstate=stop is fed");
  demo_run->add_option("--genre", config.genre, "catalog genre");
  demo_run->add_option("--catalog", catalog_path,
                       "catalog file (validated against the schema)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (run->parsed()) return cmd_run(run_path, seed);
  if (trace->parsed()) return cmd_trace(trace_id, trace_path, golden, seed);
  if (list->parsed()) return cmd_list();
  if (demo->parsed()) {
    config.seed = seed;
    return cmd_demo(config, catalog_path);
  }
  return 2;
}

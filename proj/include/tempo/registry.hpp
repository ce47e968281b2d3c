// Copyright 2026 The Tempo Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TEMPO_REGISTRY_HPP
#define TEMPO_REGISTRY_HPP

#include <functional>
#include <string>
#include <vector>

#include "tempo/ast.hpp"

namespace tempo {

/// A buildable conformance program: statement plus its event interface.
/// Built fresh per use so machines never share trees or event state.
struct BuiltProgram {
  Statement stmt;
  std::vector<Event> interface;
};

struct RegistryEntry {
  std::string id;
  std::string description;
  std::function<BuiltProgram()> build;
};

/// Compiled-in conformance programs, ordered by id.
const std::vector<RegistryEntry>& program_registry();

/// nullptr when the id is unknown.
const RegistryEntry* find_program(const std::string& id);

}  // namespace tempo

#endif  // TEMPO_REGISTRY_HPP

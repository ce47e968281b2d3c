// Copyright 2026 The Tempo Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TEMPO_VALUE_HPP
#define TEMPO_VALUE_HPP

#include <json.hpp>

namespace tempo {

/// Host datum carried by events. The engine treats it as opaque: it only
/// copies values, compares them for equality, and hands them to combiners
/// and host functions.
using Value = nlohmann::json;

}  // namespace tempo

#endif  // TEMPO_VALUE_HPP

// Copyright 2026 The Tempo Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TEMPO_TRACE_HPP
#define TEMPO_TRACE_HPP

#include <optional>
#include <string>
#include <vector>

#include "tempo/runtime.hpp"

namespace tempo {

/// One reaction as a line of structured text, suitable for golden-file
/// diffing: stable field order, one line per reaction, round-trippable.
struct TraceLine {
  int reaction = 0;
  std::vector<OutputRecord> outputs;
  bool terminated = false;
  std::optional<std::string> error;  // e.g. "CausalityError"

  bool operator==(const TraceLine& other) const;
};

TraceLine make_trace_line(const ReactionReport& report);
std::string format_trace_line(const TraceLine& line);
TraceLine parse_trace_line(const std::string& text);

}  // namespace tempo

#endif  // TEMPO_TRACE_HPP

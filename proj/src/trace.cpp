// Copyright 2026 The Tempo Authors
// SPDX-License-Identifier: Apache-2.0

#include "tempo/trace.hpp"

#include <json.hpp>

namespace tempo {

bool TraceLine::operator==(const TraceLine& other) const {
  if (reaction != other.reaction || terminated != other.terminated ||
      error != other.error || outputs.size() != other.outputs.size()) {
    return false;
  }
  for (size_t i = 0; i < outputs.size(); ++i) {
    if (outputs[i].event != other.outputs[i].event ||
        outputs[i].value != other.outputs[i].value) {
      return false;
    }
  }
  return true;
}

TraceLine make_trace_line(const ReactionReport& report) {
  TraceLine line;
  line.reaction = report.reaction_index;
  line.outputs = report.outputs;
  line.terminated = report.terminated;
  if (report.error) {
    line.error = to_string(report.error->kind);
  }
  return line;
}

std::string format_trace_line(const TraceLine& line) {
  nlohmann::ordered_json j;
  j["reaction"] = line.reaction;
  auto outs = nlohmann::ordered_json::array();
  for (const auto& o : line.outputs) {
    nlohmann::ordered_json rec;
    rec["event"] = o.event;
    rec["value"] = o.value ? *o.value : Value(nullptr);
    outs.push_back(std::move(rec));
  }
  j["outputs"] = std::move(outs);
  j["terminated"] = line.terminated;
  j["error"] = line.error ? nlohmann::ordered_json(*line.error)
                          : nlohmann::ordered_json(nullptr);
  return j.dump();
}

TraceLine parse_trace_line(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  TraceLine line;
  line.reaction = j.at("reaction").get<int>();
  for (const auto& rec : j.at("outputs")) {
    OutputRecord o;
    o.event = rec.at("event").get<std::string>();
    if (!rec.at("value").is_null()) {
      o.value = rec.at("value");
    }
    line.outputs.push_back(std::move(o));
  }
  line.terminated = j.at("terminated").get<bool>();
  if (!j.at("error").is_null()) {
    line.error = j.at("error").get<std::string>();
  }
  return line;
}

}  // namespace tempo

// Copyright 2026 The Tempo Authors
// SPDX-License-Identifier: Apache-2.0

#include "tempo/events.hpp"

#include <utility>

namespace tempo {

const char* to_string(ReactionErrorKind kind) {
  switch (kind) {
    case ReactionErrorKind::causality:
      return "CausalityError";
    case ReactionErrorKind::instantaneous_loop:
      return "InstantaneousLoopError";
    case ReactionErrorKind::multiple_emit:
      return "MultipleEmitError";
    case ReactionErrorKind::emit_after_read:
      return "EmitAfterReadError";
    case ReactionErrorKind::host:
      return "HostError";
  }
  return "?";
}

const char* to_string(Status s) {
  switch (s) {
    case Status::absent:
      return "absent";
    case Status::present:
      return "present";
    case Status::unknown:
      return "unknown";
  }
  return "?";
}

Event make_event(std::string name, EventKind kind, Combiner combiner) {
  if (name.empty()) {
    throw AstError("event name must be non-empty");
  }
  auto decl = std::make_shared<const Event::Decl>(
      Event::Decl{std::move(name), kind, std::move(combiner)});
  return Event(std::move(decl));
}

std::optional<bool> read_status(const EventState& st, StatusPhase phase) {
  if (phase == StatusPhase::pre) {
    return st.pre_status;
  }
  switch (st.status) {
    case Status::present:
      return true;
    case Status::absent:
      return false;
    case Status::unknown:
      return std::nullopt;
  }
  return std::nullopt;
}

std::optional<Value> read_value(EventState& st, ValuePhase phase) {
  if (phase == ValuePhase::preval) {
    if (!st.pre_value) {
      throw NoValueError("preval: event has no value from a previous reaction");
    }
    return *st.pre_value;
  }
  if (st.status == Status::unknown) {
    return std::nullopt;
  }
  if (!st.value) {
    throw NoValueError("val: event has never carried a value");
  }
  st.value_read = true;
  return *st.value;
}

void combine_emission(EventState& st, const std::optional<Value>& v,
                      const Combiner* combiner) {
  st.status = Status::present;
  st.emit_count += 1;
  if (!v) {
    return;  // presence only; memorized value untouched
  }
  if (st.value_read) {
    throw ReactionAbort{{ReactionErrorKind::emit_after_read,
                         "valued emission after a val read in the same reaction"}};
  }
  st.valued_emit_count += 1;
  if (st.valued_emit_count == 1) {
    st.value = *v;  // first valued emission replaces the memorized value
    return;
  }
  if (combiner == nullptr) {
    throw ReactionAbort{{ReactionErrorKind::multiple_emit,
                         "several valued emissions without a combiner"}};
  }
  st.value = (*combiner)(*st.value, *v);
}

void begin_reaction(EventState& st) {
  st.status = Status::unknown;
  st.emit_count = 0;
  st.valued_emit_count = 0;
  st.value_read = false;
}

void end_reaction(EventState& st) {
  st.pre_status = st.status == Status::present;
  st.pre_value = st.value;
}

}  // namespace tempo

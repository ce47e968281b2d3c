// Copyright 2026 The Tempo Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TEMPO_EVENTS_HPP
#define TEMPO_EVENTS_HPP

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "tempo/errors.hpp"
#include "tempo/value.hpp"

namespace tempo {

enum class EventKind { input, output, local };

/// Folds two simultaneously emitted values into one. Must be associative
/// and commutative; the engine does not verify this, the property suite
/// permutes emitters instead.
using Combiner = std::function<Value(const Value&, const Value&)>;

/// Immutable event descriptor. Copies share identity: two Event handles
/// are the same event iff they came from the same make_event() call.
class Event {
 public:
  Event() = default;

  const std::string& name() const { return decl_->name; }
  EventKind kind() const { return decl_->kind; }
  const Combiner* combiner() const {
    return decl_->combiner ? &decl_->combiner : nullptr;
  }
  bool valid() const { return decl_ != nullptr; }

  friend bool operator==(const Event& a, const Event& b) {
    return a.decl_ == b.decl_;
  }
  friend bool operator!=(const Event& a, const Event& b) { return !(a == b); }

  const void* id() const { return decl_.get(); }

 private:
  struct Decl {
    std::string name;
    EventKind kind;
    Combiner combiner;
  };
  explicit Event(std::shared_ptr<const Decl> decl) : decl_(std::move(decl)) {}
  std::shared_ptr<const Decl> decl_;

  friend Event make_event(std::string, EventKind, Combiner);
};

Event make_event(std::string name, EventKind kind, Combiner combiner = nullptr);

/// Pure three-valued presence status. Events start each reaction unknown
/// and must be decided (present or absent) by the time the reaction ends.
enum class Status { absent, present, unknown };

const char* to_string(Status s);

/// Per-reaction state of one event within one machine or local scope.
struct EventState {
  Status status = Status::absent;
  std::optional<Value> value;      // memorized across reactions
  bool pre_status = false;         // final status of the previous reaction
  std::optional<Value> pre_value;  // value at the end of the previous reaction
  int emit_count = 0;              // emissions seen this reaction
  int valued_emit_count = 0;       // of which carried a value
  bool value_read = false;         // val() was consulted this reaction
};

enum class StatusPhase { now, pre };
enum class ValuePhase { val, preval };

/// Reads presence. `pre` answers immediately from the snapshot; `now` of an
/// undecided event yields nullopt (the constructive Blocked marker the
/// scheduler consumes).
std::optional<bool> read_status(const EventState& st, StatusPhase phase);

/// Reads the memorized value. `preval` answers from the snapshot; `val` of
/// an undecided event yields nullopt. Reading an event that has never
/// carried a value throws NoValueError. A successful `val` read marks the
/// state so that a later valued emission in the same reaction is flagged.
std::optional<Value> read_value(EventState& st, ValuePhase phase);

/// Applies one emission: presence always, value combination when `v` is
/// set. The first valued emission of the reaction overwrites the memorized
/// value, later ones fold through the combiner.
///
/// Reaction-level failures are reported by raising ReactionError via
/// exceptions of this type; the machine converts them into an errored
/// report.
struct ReactionAbort {
  ReactionError error;
};

void combine_emission(EventState& st, const std::optional<Value>& v,
                      const Combiner* combiner);

/// Reaction boundary helpers.
void begin_reaction(EventState& st);  // status -> unknown, counters cleared
void end_reaction(EventState& st);    // snapshot pre_status / pre_value

}  // namespace tempo

#endif  // TEMPO_EVENTS_HPP

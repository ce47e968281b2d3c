// Copyright 2026 The Tempo Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TEMPO_RUNTIME_HPP
#define TEMPO_RUNTIME_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tempo/ast.hpp"
#include "tempo/bridge.hpp"
#include "tempo/events.hpp"

namespace tempo {

struct OutputRecord {
  std::string event;
  std::optional<Value> value;  // memorized value at end of reaction
};

struct ReactionReport {
  int reaction_index = 0;
  std::vector<OutputRecord> outputs;  // present outputs, sorted by name
  bool terminated = false;
  std::optional<ReactionError> error;

  bool present(const std::string& name) const;
  const Value* value_of(const std::string& name) const;
};

enum class MachineStatus { idle, terminated, errored };

/// Post-reaction output callback: (event, final value).
using Listener =
    std::function<void(const Event&, const std::optional<Value>&)>;

/// Read-only event access for atom statements. Reading now/val of an event
/// still undecided in the current reaction raises CausalityError: atoms
/// never block, so they must run after their dependencies are settled in
/// program order.
class EventView {
 public:
  bool now(const Event& e) const;
  bool pre(const Event& e) const;
  Value val(const Event& e) const;
  Value preval(const Event& e) const;

 private:
  friend class Machine;
  struct Ctx;
  explicit EventView(Ctx* ctx) : ctx_(ctx) {}
  Ctx* ctx_;
};

/// The reactive machine: a loaded program plus its event interface.
/// Reactions are discrete and conceptually instantaneous; inputs queued
/// between reactions are consumed by the next react() as one snapshot.
///
/// Thread contract: react(), reset(), and the inspection methods belong to
/// the driving thread; input() and enqueue_response() may be called from
/// any thread between (or during) reactions and take effect at the next
/// reaction boundary.
class Machine {
 public:
  Machine(Statement program, std::vector<Event> interface);
  ~Machine();
  Machine(Machine&&) noexcept;
  Machine& operator=(Machine&&) noexcept;
  Machine(const Machine&) = delete;
  Machine& operator=(const Machine&) = delete;

  void set_client(std::shared_ptr<ServiceClient> client);

  /// Enables randomized parallel-branch visiting order. Any seed must
  /// produce the same reports as the default program order; the test suite
  /// relies on that to check schedule independence.
  void set_schedule_seed(std::uint64_t seed);

  void input(const Event& e, std::optional<Value> v = std::nullopt);
  ReactionReport react();
  ReactionReport input_and_react(const Event& e,
                                 std::optional<Value> v = std::nullopt);

  void add_listener(const Event& e, Listener cb);
  void enqueue_response(Completion c);

  /// Outstanding request tokens (issued, neither completed nor cancelled).
  std::vector<Token> pending_tokens() const;
  /// Completions discarded because their token was unknown or cancelled.
  int dropped_completions() const;

  void reset();

  MachineStatus status() const;
  int reaction_index() const;

  /// Final status / memorized value of an interface event after the most
  /// recent reaction.
  Status status_of(const Event& e) const;
  std::optional<Value> value_of(const Event& e) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;

  friend class EventView;
  friend std::set<std::string> can_set(const Statement&,
                                       const std::vector<Event>&,
                                       const std::map<std::string, Status>&);
};

/// Computes the set of event names the program could still emit in a
/// reaction starting now, given decided statuses for some interface events
/// (all others unknown). This is the same reachability analysis react()
/// uses to declare absence.
std::set<std::string> can_set(
    const Statement& program, const std::vector<Event>& interface,
    const std::map<std::string, Status>& statuses = {});

/// Completion-code algebra: a parallel statement completes with the maximum
/// of its branch codes; a trap maps its body code as 0->0, 1->1, 2->0
/// (caught), c>2 -> c-1 (outer exit passing through).
int par_join(int a, int b);
int trap_adjust(int body_code);

}  // namespace tempo

#endif  // TEMPO_RUNTIME_HPP

// Copyright 2026 The Tempo Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TEMPO_AST_HPP
#define TEMPO_AST_HPP

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "tempo/events.hpp"
#include "tempo/expr.hpp"

namespace tempo {

class EventView;

/// Host code executed when control reaches an atom. Must be quick and may
/// only observe events through the view; reading an undecided event is a
/// causality error (atoms never block).
using AtomFn = std::function<void(const EventView&)>;

enum class StmtKind {
  nothing,
  emit,
  atom,
  pause,
  if_,
  seq,
  loop,
  par,
  suspend,
  trap,
  exit,
  local,
  request,
};

const char* to_string(StmtKind k);

class Statement;

struct StmtNode {
  StmtKind kind;
  std::vector<Statement> children;
  Event event;      // emit target / request completion event
  SignalExpr expr;  // emit value (optional) / if test / suspend condition
  std::shared_ptr<const AtomFn> atom_fn;
  std::string label;          // trap / exit
  std::vector<Event> locals;  // local
  std::string service;        // request
  std::vector<SignalExpr> call_args;
};

/// One node of an immutable program tree. Building statements has no
/// observable effect; execution happens only inside a Machine.
class Statement {
 public:
  Statement() = default;
  explicit Statement(std::shared_ptr<const StmtNode> node)
      : node_(std::move(node)) {}

  bool valid() const { return node_ != nullptr; }
  StmtKind kind() const { return node_->kind; }
  const StmtNode& node() const { return *node_; }
  const std::vector<Statement>& children() const { return node_->children; }

 private:
  std::shared_ptr<const StmtNode> node_;
};

// Kernel constructors. All throw AstError on malformed children
// (invalid statements, empty bodies).

Statement nothing();
Statement emit(const Event& e);
Statement emit(const Event& e, SignalExpr v);
Statement atom(AtomFn fn);
Statement pause();
Statement if_(SignalExpr test, Statement then_branch, Statement else_branch);
Statement if_(SignalExpr test, Statement then_branch);  // else = nothing()
Statement seq(std::vector<Statement> children);
Statement loop(std::vector<Statement> children);
Statement par(std::vector<Statement> children);
Statement suspend(SignalExpr cond, std::vector<Statement> body);
Statement trap(std::string label, std::vector<Statement> body);
Statement exit(std::string label);
Statement local(std::vector<Event> events, std::vector<Statement> body);

// Variadic conveniences mirroring the list-style constructors.

template <class... Ss>
Statement seq(Statement first, Ss... rest) {
  return seq(std::vector<Statement>{std::move(first), std::move(rest)...});
}
template <class... Ss>
Statement loop(Statement first, Ss... rest) {
  return loop(std::vector<Statement>{std::move(first), std::move(rest)...});
}
template <class... Ss>
Statement par(Statement first, Ss... rest) {
  return par(std::vector<Statement>{std::move(first), std::move(rest)...});
}
template <class... Ss>
Statement suspend(SignalExpr cond, Statement first, Ss... rest) {
  return suspend(std::move(cond),
                 std::vector<Statement>{std::move(first), std::move(rest)...});
}
template <class... Ss>
Statement trap(std::string label, Statement first, Ss... rest) {
  return trap(std::move(label),
              std::vector<Statement>{std::move(first), std::move(rest)...});
}
template <class... Ss>
Statement local(std::vector<Event> events, Statement first, Ss... rest) {
  return local(std::move(events),
               std::vector<Statement>{std::move(first), std::move(rest)...});
}
template <class... Ss>
Statement local(Event event, Statement first, Ss... rest) {
  return local(std::vector<Event>{std::move(event)},
               std::vector<Statement>{std::move(first), std::move(rest)...});
}

/// Deep structural equality: same kinds, payloads, and children. Events
/// compare by identity, atoms and host functions by shared identity.
bool structurally_equal(const Statement& a, const Statement& b);

}  // namespace tempo

#endif  // TEMPO_AST_HPP

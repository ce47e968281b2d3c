// Copyright 2026 The Tempo Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TEMPO_EXPR_HPP
#define TEMPO_EXPR_HPP

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "tempo/events.hpp"
#include "tempo/value.hpp"

namespace tempo {

/// Pure host function usable inside signal expressions. Must be
/// referentially transparent: the scheduler may evaluate it more than once
/// per reaction.
using HostFn = std::function<Value(const std::vector<Value>&)>;

enum class ExprKind { constant, now, pre, val, preval, apply };

class SignalExpr;

struct ExprNode {
  ExprKind kind;
  Value constant;  // constant
  Event event;     // now / pre / val / preval
  std::shared_ptr<const HostFn> fn;
  std::string fn_name;  // diagnostics only
  std::vector<SignalExpr> args;
};

/// Side-effect-free expression tree over event queries, constants, and
/// pure host-function applications. Immutable and freely shareable.
class SignalExpr {
 public:
  SignalExpr() = default;
  explicit SignalExpr(std::shared_ptr<const ExprNode> node)
      : node_(std::move(node)) {}

  bool valid() const { return node_ != nullptr; }
  const ExprNode& node() const { return *node_; }
  const std::shared_ptr<const ExprNode>& ptr() const { return node_; }

 private:
  std::shared_ptr<const ExprNode> node_;
};

SignalExpr lit(Value v);
SignalExpr now(const Event& e);
SignalExpr pre(const Event& e);
SignalExpr val(const Event& e);
SignalExpr preval(const Event& e);
SignalExpr apply(std::string name, HostFn fn, std::vector<SignalExpr> args);

/// Structural equality. Apply nodes compare by host-function identity
/// (the same apply() result shared between two trees), since host code has
/// no structural form.
bool structurally_equal(const SignalExpr& a, const SignalExpr& b);

/// Appends every event referenced by the expression (duplicates included).
void collect_events(const SignalExpr& e, std::vector<Event>& out);

}  // namespace tempo

#endif  // TEMPO_EXPR_HPP

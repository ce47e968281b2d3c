// Copyright 2026 The Tempo Authors
// SPDX-License-Identifier: Apache-2.0

#include "tempo/expr.hpp"

#include "tempo/errors.hpp"

namespace tempo {

namespace {

SignalExpr make(ExprNode n) {
  return SignalExpr(std::make_shared<const ExprNode>(std::move(n)));
}

SignalExpr event_query(ExprKind kind, const Event& e) {
  if (!e.valid()) {
    throw AstError("signal expression over an invalid event");
  }
  ExprNode n;
  n.kind = kind;
  n.event = e;
  return make(std::move(n));
}

}  // namespace

SignalExpr lit(Value v) {
  ExprNode n;
  n.kind = ExprKind::constant;
  n.constant = std::move(v);
  return make(std::move(n));
}

SignalExpr now(const Event& e) { return event_query(ExprKind::now, e); }
SignalExpr pre(const Event& e) { return event_query(ExprKind::pre, e); }
SignalExpr val(const Event& e) { return event_query(ExprKind::val, e); }
SignalExpr preval(const Event& e) { return event_query(ExprKind::preval, e); }

SignalExpr apply(std::string name, HostFn fn, std::vector<SignalExpr> args) {
  if (!fn) {
    throw AstError("apply: null host function");
  }
  for (const auto& a : args) {
    if (!a.valid()) {
      throw AstError("apply: invalid argument expression");
    }
  }
  ExprNode n;
  n.kind = ExprKind::apply;
  n.fn = std::make_shared<const HostFn>(std::move(fn));
  n.fn_name = std::move(name);
  n.args = std::move(args);
  return make(std::move(n));
}

bool structurally_equal(const SignalExpr& a, const SignalExpr& b) {
  if (!a.valid() || !b.valid()) {
    return a.valid() == b.valid();
  }
  if (a.ptr() == b.ptr()) {
    return true;
  }
  const ExprNode& x = a.node();
  const ExprNode& y = b.node();
  if (x.kind != y.kind) {
    return false;
  }
  switch (x.kind) {
    case ExprKind::constant:
      return x.constant == y.constant;
    case ExprKind::now:
    case ExprKind::pre:
    case ExprKind::val:
    case ExprKind::preval:
      return x.event == y.event;
    case ExprKind::apply: {
      if (x.fn != y.fn || x.args.size() != y.args.size()) {
        return false;
      }
      for (size_t i = 0; i < x.args.size(); ++i) {
        if (!structurally_equal(x.args[i], y.args[i])) {
          return false;
        }
      }
      return true;
    }
  }
  return false;
}

void collect_events(const SignalExpr& e, std::vector<Event>& out) {
  if (!e.valid()) {
    return;
  }
  const ExprNode& n = e.node();
  switch (n.kind) {
    case ExprKind::constant:
      return;
    case ExprKind::now:
    case ExprKind::pre:
    case ExprKind::val:
    case ExprKind::preval:
      out.push_back(n.event);
      return;
    case ExprKind::apply:
      for (const auto& a : n.args) {
        collect_events(a, out);
      }
      return;
  }
}

}  // namespace tempo

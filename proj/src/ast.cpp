// Copyright 2026 The Tempo Authors
// SPDX-License-Identifier: Apache-2.0

#include "tempo/ast.hpp"

#include <unordered_set>

#include "tempo/errors.hpp"

namespace tempo {

namespace {

Statement make(StmtNode n) {
  return Statement(std::make_shared<const StmtNode>(std::move(n)));
}

void require_children(const std::vector<Statement>& children,
                      const char* what) {
  if (children.empty()) {
    throw AstError(std::string(what) + ": body must not be empty");
  }
  for (const auto& c : children) {
    if (!c.valid()) {
      throw AstError(std::string(what) + ": invalid child statement");
    }
  }
}

}  // namespace

const char* to_string(StmtKind k) {
  switch (k) {
    case StmtKind::nothing:
      return "nothing";
    case StmtKind::emit:
      return "emit";
    case StmtKind::atom:
      return "atom";
    case StmtKind::pause:
      return "pause";
    case StmtKind::if_:
      return "if";
    case StmtKind::seq:
      return "seq";
    case StmtKind::loop:
      return "loop";
    case StmtKind::par:
      return "par";
    case StmtKind::suspend:
      return "suspend";
    case StmtKind::trap:
      return "trap";
    case StmtKind::exit:
      return "exit";
    case StmtKind::local:
      return "local";
    case StmtKind::request:
      return "request";
  }
  return "?";
}

Statement nothing() {
  StmtNode n;
  n.kind = StmtKind::nothing;
  return make(std::move(n));
}

Statement emit(const Event& e) {
  if (!e.valid()) {
    throw AstError("emit: invalid event");
  }
  StmtNode n;
  n.kind = StmtKind::emit;
  n.event = e;
  return make(std::move(n));
}

Statement emit(const Event& e, SignalExpr v) {
  if (!e.valid()) {
    throw AstError("emit: invalid event");
  }
  if (!v.valid()) {
    throw AstError("emit: invalid value expression");
  }
  StmtNode n;
  n.kind = StmtKind::emit;
  n.event = e;
  n.expr = std::move(v);
  return make(std::move(n));
}

Statement atom(AtomFn fn) {
  if (!fn) {
    throw AstError("atom: null host procedure");
  }
  StmtNode n;
  n.kind = StmtKind::atom;
  n.atom_fn = std::make_shared<const AtomFn>(std::move(fn));
  return make(std::move(n));
}

Statement pause() {
  StmtNode n;
  n.kind = StmtKind::pause;
  return make(std::move(n));
}

Statement if_(SignalExpr test, Statement then_branch, Statement else_branch) {
  if (!test.valid()) {
    throw AstError("if: invalid test expression");
  }
  if (!then_branch.valid() || !else_branch.valid()) {
    throw AstError("if: invalid branch");
  }
  StmtNode n;
  n.kind = StmtKind::if_;
  n.expr = std::move(test);
  n.children = {std::move(then_branch), std::move(else_branch)};
  return make(std::move(n));
}

Statement if_(SignalExpr test, Statement then_branch) {
  return if_(std::move(test), std::move(then_branch), nothing());
}

Statement seq(std::vector<Statement> children) {
  require_children(children, "seq");
  StmtNode n;
  n.kind = StmtKind::seq;
  n.children = std::move(children);
  return make(std::move(n));
}

Statement loop(std::vector<Statement> children) {
  require_children(children, "loop");
  StmtNode n;
  n.kind = StmtKind::loop;
  n.children = std::move(children);
  return make(std::move(n));
}

Statement par(std::vector<Statement> children) {
  require_children(children, "par");
  StmtNode n;
  n.kind = StmtKind::par;
  n.children = std::move(children);
  return make(std::move(n));
}

Statement suspend(SignalExpr cond, std::vector<Statement> body) {
  if (!cond.valid()) {
    throw AstError("suspend: invalid condition");
  }
  require_children(body, "suspend");
  StmtNode n;
  n.kind = StmtKind::suspend;
  n.expr = std::move(cond);
  n.children = std::move(body);
  return make(std::move(n));
}

Statement trap(std::string label, std::vector<Statement> body) {
  if (label.empty()) {
    throw AstError("trap: empty label");
  }
  require_children(body, "trap");
  StmtNode n;
  n.kind = StmtKind::trap;
  n.label = std::move(label);
  n.children = std::move(body);
  return make(std::move(n));
}

Statement exit(std::string label) {
  if (label.empty()) {
    throw AstError("exit: empty label");
  }
  StmtNode n;
  n.kind = StmtKind::exit;
  n.label = std::move(label);
  return make(std::move(n));
}

Statement local(std::vector<Event> events, std::vector<Statement> body) {
  if (events.empty()) {
    throw AstError("local: no events declared");
  }
  std::unordered_set<const void*> seen;
  std::unordered_set<std::string> names;
  for (const auto& e : events) {
    if (!e.valid()) {
      throw AstError("local: invalid event");
    }
    if (!seen.insert(e.id()).second || !names.insert(e.name()).second) {
      throw DuplicateEventError("local: duplicate event '" + e.name() + "'");
    }
  }
  require_children(body, "local");
  StmtNode n;
  n.kind = StmtKind::local;
  n.locals = std::move(events);
  n.children = std::move(body);
  return make(std::move(n));
}

bool structurally_equal(const Statement& a, const Statement& b) {
  if (!a.valid() || !b.valid()) {
    return a.valid() == b.valid();
  }
  const StmtNode& x = a.node();
  const StmtNode& y = b.node();
  if (x.kind != y.kind || x.children.size() != y.children.size()) {
    return false;
  }
  if (x.event != y.event || x.label != y.label || x.atom_fn != y.atom_fn ||
      x.service != y.service) {
    return false;
  }
  if (!structurally_equal(x.expr, y.expr)) {
    return false;
  }
  if (x.locals != y.locals) {
    return false;
  }
  if (x.call_args.size() != y.call_args.size()) {
    return false;
  }
  for (size_t i = 0; i < x.call_args.size(); ++i) {
    if (!structurally_equal(x.call_args[i], y.call_args[i])) {
      return false;
    }
  }
  for (size_t i = 0; i < x.children.size(); ++i) {
    if (!structurally_equal(x.children[i], y.children[i])) {
      return false;
    }
  }
  return true;
}

}  // namespace tempo

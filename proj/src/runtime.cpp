// Copyright 2026 The Tempo Authors
// SPDX-License-Identifier: Apache-2.0

#include "tempo/runtime.hpp"

#include <algorithm>
#include <cstdint>
#include <mutex>
#include <numeric>
#include <random>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "tempo/errors.hpp"

namespace tempo {

int par_join(int a, int b) { return a > b ? a : b; }

int trap_adjust(int body_code) {
  if (body_code == 2) {
    return 0;  // caught by this trap
  }
  if (body_code > 2) {
    return body_code - 1;  // exit aimed at an outer trap
  }
  return body_code;
}

bool ReactionReport::present(const std::string& name) const {
  for (const auto& o : outputs) {
    if (o.event == name) {
      return true;
    }
  }
  return false;
}

const Value* ReactionReport::value_of(const std::string& name) const {
  for (const auto& o : outputs) {
    if (o.event == name && o.value) {
      return &*o.value;
    }
  }
  return nullptr;
}

namespace {

// Signal expressions with event references resolved to machine slots.
struct RExpr {
  ExprKind kind = ExprKind::constant;
  Value constant;
  int slot = -1;
  const HostFn* fn = nullptr;
  std::string fn_name;
  std::vector<RExpr> args;
};

enum class Mode { start, resume, again };
enum class CMode { start, resume, current };

struct Step {
  bool done = false;
  int code = 0;
};

constexpr int kIdle = 0;
constexpr int kActive = 1;
constexpr int kDone = 2;

}  // namespace

struct EventView::Ctx {
  Machine::Impl* impl;
  const std::unordered_map<const void*, int>* scope;

  EventState& state(const Event& e) const;
};

// One instrumented node per program tree position. Static layout plus the
// per-reaction execution state; `selected`, `token`, `issued`, and
// `iter_stamp` persist across reactions, everything else is valid only
// while `stamp` equals the current reaction.
struct Machine::Impl {
  struct Node {
    StmtKind kind = StmtKind::nothing;
    std::vector<int> kids;
    int slot = -1;  // emit / request target
    bool has_expr = false;
    RExpr expr;
    std::vector<RExpr> args;
    const AtomFn* atom = nullptr;
    int exit_code = 0;
    std::vector<int> local_slots;
    std::string service;
    std::unordered_map<const void*, int> scope;  // atoms: visible events

    // dynamic
    int stamp = -1;
    int phase = kIdle;
    int code = -1;
    int cur = 0;
    bool entered = false;
    bool par_resume = false;
    int sus = 0;  // suspend: 0 = condition pending, 1 = body has control
    std::vector<int> par_codes;
    std::vector<bool> par_started;
    bool selected = false;
    int iter_stamp = -1;  // loop: reaction its current iteration started in
    Token token = 0;
    bool issued = false;
  };

  struct Inbox {
    std::mutex mu;
    std::vector<std::pair<int, std::optional<Value>>> inputs;
    std::vector<Completion> completions;
  };

  struct PendingIssue {
    Token token = 0;
    int node = -1;
    ServiceCall call;
  };

  Statement program_;
  std::vector<Event> interface_;
  std::vector<Node> nodes_;
  int root_ = -1;

  std::vector<EventState> slots_;
  std::vector<Event> slot_event_;
  std::vector<bool> slot_interface_;
  std::unordered_map<const void*, int> interface_by_id_;

  MachineStatus status_ = MachineStatus::idle;
  int reaction_ = 0;
  bool started_ = false;
  bool in_react_ = false;

  std::shared_ptr<Inbox> inbox_ = std::make_shared<Inbox>();
  std::shared_ptr<ServiceClient> client_;
  std::map<Token, Completion> store_;  // validated, not yet applied
  std::set<Token> pending_;
  Token next_token_ = 1;
  int dropped_ = 0;

  std::vector<std::pair<int, Listener>> listeners_;  // (slot, cb)
  std::optional<std::string> listener_error_;
  std::optional<ReactionError> last_error_;
  ReactionReport error_report_;

  std::optional<std::uint64_t> seed_;
  std::uint64_t salt_ = 0;

  // per-reaction scratch
  std::vector<PendingIssue> issue_batch_;
  std::vector<Token> cancel_batch_;
  std::unordered_set<Token> killed_unissued_;
  std::vector<bool> can_emits_;

  Impl(Statement program, std::vector<Event> interface)
      : program_(std::move(program)), interface_(std::move(interface)) {
    if (!program_.valid()) {
      throw AstError("load: invalid program");
    }
    std::unordered_set<std::string> names;
    for (const auto& e : interface_) {
      if (!e.valid()) {
        throw AstError("load: invalid interface event");
      }
      if (e.kind() == EventKind::local) {
        throw LoadError("load: interface event '" + e.name() +
                        "' must be an input or output");
      }
      if (interface_by_id_.count(e.id()) || !names.insert(e.name()).second) {
        throw DuplicateEventError("load: duplicate interface event '" +
                                  e.name() + "'");
      }
      int slot = static_cast<int>(slots_.size());
      interface_by_id_[e.id()] = slot;
      slots_.emplace_back();
      slot_event_.push_back(e);
      slot_interface_.push_back(true);
    }
    BuildCtx ctx;
    for (const auto& e : interface_) {
      ctx.scope.emplace_back(e.id(), interface_by_id_[e.id()]);
      ctx.names.push_back(e.name());
    }
    root_ = build(program_, ctx);
  }

  // ---- instrumentation ----------------------------------------------

  struct BuildCtx {
    std::vector<std::pair<const void*, int>> scope;  // innermost last
    std::vector<std::string> names;                  // visible event names
    std::vector<std::string> traps;                  // enclosing labels
  };

  int resolve(const Event& e, const BuildCtx& ctx) const {
    for (auto it = ctx.scope.rbegin(); it != ctx.scope.rend(); ++it) {
      if (it->first == e.id()) {
        return it->second;
      }
    }
    throw LoadError("event '" + e.name() +
                    "' is neither in the interface nor declared local");
  }

  RExpr resolve_expr(const SignalExpr& x, const BuildCtx& ctx) const {
    RExpr r;
    const ExprNode& n = x.node();
    r.kind = n.kind;
    switch (n.kind) {
      case ExprKind::constant:
        r.constant = n.constant;
        break;
      case ExprKind::now:
      case ExprKind::pre:
      case ExprKind::val:
      case ExprKind::preval:
        r.slot = resolve(n.event, ctx);
        break;
      case ExprKind::apply:
        r.fn = n.fn.get();
        r.fn_name = n.fn_name;
        r.args.reserve(n.args.size());
        for (const auto& a : n.args) {
          r.args.push_back(resolve_expr(a, ctx));
        }
        break;
    }
    return r;
  }

  int build(const Statement& s, BuildCtx& ctx) {
    const StmtNode& a = s.node();
    Node n;
    n.kind = a.kind;
    switch (a.kind) {
      case StmtKind::nothing:
      case StmtKind::pause:
        break;
      case StmtKind::emit:
        n.slot = resolve(a.event, ctx);
        if (a.expr.valid()) {
          n.has_expr = true;
          n.expr = resolve_expr(a.expr, ctx);
        }
        break;
      case StmtKind::atom:
        n.atom = a.atom_fn.get();
        n.scope.reserve(ctx.scope.size());
        for (const auto& [id, slot] : ctx.scope) {
          n.scope[id] = slot;  // later entries overwrite: innermost wins
        }
        break;
      case StmtKind::if_:
        n.has_expr = true;
        n.expr = resolve_expr(a.expr, ctx);
        for (const auto& c : a.children) {
          n.kids.push_back(build(c, ctx));
        }
        break;
      case StmtKind::seq:
      case StmtKind::loop:
      case StmtKind::par:
        for (const auto& c : a.children) {
          n.kids.push_back(build(c, ctx));
        }
        break;
      case StmtKind::suspend:
        n.has_expr = true;
        n.expr = resolve_expr(a.expr, ctx);
        for (const auto& c : a.children) {
          n.kids.push_back(build(c, ctx));
        }
        break;
      case StmtKind::trap:
        ctx.traps.push_back(a.label);
        for (const auto& c : a.children) {
          n.kids.push_back(build(c, ctx));
        }
        ctx.traps.pop_back();
        break;
      case StmtKind::exit: {
        int found = -1;
        for (int i = static_cast<int>(ctx.traps.size()) - 1; i >= 0; --i) {
          if (ctx.traps[i] == a.label) {
            found = i;
            break;
          }
        }
        if (found < 0) {
          throw AstError("exit '" + a.label + "': no enclosing trap");
        }
        n.exit_code = 2 + (static_cast<int>(ctx.traps.size()) - 1 - found);
        break;
      }
      case StmtKind::local: {
        size_t scope_mark = ctx.scope.size();
        size_t name_mark = ctx.names.size();
        for (const auto& e : a.locals) {
          if (std::find(ctx.names.begin(), ctx.names.end(), e.name()) !=
              ctx.names.end()) {
            throw DuplicateEventError("local '" + e.name() +
                                      "' shadows a visible event");
          }
          int slot = static_cast<int>(slots_.size());
          slots_.emplace_back();
          slot_event_.push_back(e);
          slot_interface_.push_back(false);
          n.local_slots.push_back(slot);
          ctx.scope.emplace_back(e.id(), slot);
          ctx.names.push_back(e.name());
        }
        for (const auto& c : a.children) {
          n.kids.push_back(build(c, ctx));
        }
        ctx.scope.resize(scope_mark);
        ctx.names.resize(name_mark);
        break;
      }
      case StmtKind::request:
        n.slot = resolve(a.event, ctx);
        n.service = a.service;
        n.args.reserve(a.call_args.size());
        for (const auto& arg : a.call_args) {
          n.args.push_back(resolve_expr(arg, ctx));
        }
        break;
    }
    nodes_.push_back(std::move(n));
    return static_cast<int>(nodes_.size()) - 1;
  }

  // ---- expression evaluation ----------------------------------------

  const Combiner* combiner_of(int slot) const {
    return slot_event_[slot].combiner();
  }

  struct EvalResult {
    bool blocked = false;
    Value v;
  };

  EvalResult eval(const RExpr& x) {
    switch (x.kind) {
      case ExprKind::constant:
        return {false, x.constant};
      case ExprKind::now: {
        auto r = read_status(slots_[x.slot], StatusPhase::now);
        if (!r) {
          return {true, {}};
        }
        return {false, Value(*r)};
      }
      case ExprKind::pre: {
        auto r = read_status(slots_[x.slot], StatusPhase::pre);
        return {false, Value(*r)};
      }
      case ExprKind::val:
      case ExprKind::preval: {
        ValuePhase phase =
            x.kind == ExprKind::val ? ValuePhase::val : ValuePhase::preval;
        std::optional<Value> r;
        try {
          r = read_value(slots_[x.slot], phase);
        } catch (const NoValueError& err) {
          throw ReactionAbort{{ReactionErrorKind::host,
                               "event '" + slot_event_[x.slot].name() +
                                   "': " + err.what()}};
        }
        if (!r) {
          return {true, {}};
        }
        return {false, std::move(*r)};
      }
      case ExprKind::apply: {
        std::vector<Value> argv;
        argv.reserve(x.args.size());
        for (const auto& a : x.args) {
          EvalResult r = eval(a);
          if (r.blocked) {
            return {true, {}};
          }
          argv.push_back(std::move(r.v));
        }
        try {
          return {false, (*x.fn)(argv)};
        } catch (const std::exception& ex) {
          throw ReactionAbort{{ReactionErrorKind::host,
                               "host function '" + x.fn_name +
                                   "' failed: " + ex.what()}};
        }
      }
    }
    return {false, {}};
  }

  static bool as_bool(const Value& v, const char* what) {
    if (!v.is_boolean()) {
      throw ReactionAbort{{ReactionErrorKind::host,
                           std::string(what) + " must evaluate to a boolean, got " +
                               v.dump()}};
    }
    return v.get<bool>();
  }

  // ---- execution ------------------------------------------------------

  void ensure_fresh(int n) {
    Node& d = nodes_[n];
    d.stamp = reaction_;
    d.phase = kIdle;
    d.code = -1;
    d.cur = 0;
    d.entered = false;
    d.par_resume = false;
    d.sus = 0;
    d.par_codes.clear();
    d.par_started.clear();
  }

  int selected_child(int n) const {
    const Node& e = nodes_[n];
    for (size_t i = 0; i < e.kids.size(); ++i) {
      if (nodes_[e.kids[i]].selected) {
        return static_cast<int>(i);
      }
    }
    throw Error("internal: resumed node has no selected child");
  }

  std::vector<int> visit_order(int n, size_t count) {
    std::vector<int> order(count);
    std::iota(order.begin(), order.end(), 0);
    if (seed_ && count > 1) {
      std::uint64_t s = *seed_;
      s ^= static_cast<std::uint64_t>(reaction_) * 0x9E3779B97F4A7C15ull;
      s ^= static_cast<std::uint64_t>(n) * 0xBF58476D1CE4E5B9ull;
      s ^= ++salt_ * 0x94D049BB133111EBull;
      std::mt19937_64 rng(s);
      std::shuffle(order.begin(), order.end(), rng);
    }
    return order;
  }

  Step advance(int n, Mode m) {
    Node& d = nodes_[n];
    if (m != Mode::again) {
      ensure_fresh(n);
      d.phase = kActive;
    }
    Step s = dispatch(n, m);
    if (s.done) {
      d.phase = kDone;
      d.code = s.code;
      d.selected = (s.code == 1);
    }
    return s;
  }

  Step dispatch(int n, Mode m) {
    Node& e = nodes_[n];
    switch (e.kind) {
      case StmtKind::nothing:
        return {true, 0};
      case StmtKind::exit:
        return {true, e.exit_code};
      case StmtKind::pause:
        return {true, m == Mode::resume ? 0 : 1};
      case StmtKind::atom: {
        EventView::Ctx ctx{this, &e.scope};
        EventView view(&ctx);
        try {
          (*e.atom)(view);
        } catch (const ReactionAbort&) {
          throw;
        } catch (const std::exception& ex) {
          throw ReactionAbort{
              {ReactionErrorKind::host, std::string("atom: ") + ex.what()}};
        }
        return {true, 0};
      }
      case StmtKind::emit: {
        std::optional<Value> v;
        if (e.has_expr) {
          EvalResult r = eval(e.expr);
          if (r.blocked) {
            return {false, 0};
          }
          v = std::move(r.v);
        }
        combine_emission(slots_[e.slot], v, combiner_of(e.slot));
        return {true, 0};
      }
      case StmtKind::if_: {
        if (m == Mode::resume) {
          e.cur = selected_child(n);
          e.entered = true;
          return advance(e.kids[e.cur], Mode::resume);
        }
        if (e.entered) {
          return advance(e.kids[e.cur], Mode::again);
        }
        EvalResult t = eval(e.expr);
        if (t.blocked) {
          return {false, 0};
        }
        e.cur = as_bool(t.v, "if test") ? 0 : 1;
        e.entered = true;
        return advance(e.kids[e.cur], Mode::start);
      }
      case StmtKind::seq:
        return run_children(n, m);
      case StmtKind::loop:
        return loop_step(n, m);
      case StmtKind::par:
        return par_step(n, m);
      case StmtKind::suspend:
        return suspend_step(n, m);
      case StmtKind::trap: {
        Step s = run_children(n, m);
        if (!s.done) {
          return s;
        }
        if (s.code == 2) {
          kill(n);
          return {true, 0};
        }
        return {true, trap_adjust(s.code)};
      }
      case StmtKind::local: {
        if (m == Mode::start) {
          for (int slot : e.local_slots) {
            slots_[slot] = EventState{};
            slots_[slot].status = Status::unknown;
          }
        }
        return run_children(n, m);
      }
      case StmtKind::request:
        return request_step(n, m);
    }
    throw Error("internal: unknown statement kind");
  }

  // Children as an implicit sequence; e.cur / e.entered hold the cursor.
  Step run_children(int n, Mode m) {
    Node& e = nodes_[n];
    bool resume_first = false;
    if (m == Mode::start) {
      e.cur = 0;
      e.entered = false;
    } else if (m == Mode::resume) {
      e.cur = selected_child(n);
      e.entered = false;
      resume_first = true;
    }
    while (e.cur < static_cast<int>(e.kids.size())) {
      Mode cm = e.entered ? Mode::again
                          : (resume_first ? Mode::resume : Mode::start);
      Step s = advance(e.kids[e.cur], cm);
      resume_first = false;
      if (!s.done) {
        e.entered = true;
        return s;
      }
      e.entered = false;
      if (s.code != 0) {
        return s;
      }
      ++e.cur;
    }
    return {true, 0};
  }

  Step loop_step(int n, Mode m) {
    Node& e = nodes_[n];
    if (m == Mode::start) {
      e.iter_stamp = reaction_;
    }
    Mode cm = m;
    while (true) {
      Step s = run_children(n, cm);
      if (!s.done || s.code != 0) {
        return s;
      }
      if (e.iter_stamp == reaction_) {
        throw ReactionAbort{{ReactionErrorKind::instantaneous_loop,
                             "loop body terminated without pausing"}};
      }
      e.iter_stamp = reaction_;
      cm = Mode::start;
    }
  }

  Step par_step(int n, Mode m) {
    Node& e = nodes_[n];
    if (m != Mode::again) {
      e.par_codes.assign(e.kids.size(), -1);
      e.par_started.assign(e.kids.size(), false);
      e.par_resume = (m == Mode::resume);
      if (e.par_resume) {
        for (size_t i = 0; i < e.kids.size(); ++i) {
          if (!nodes_[e.kids[i]].selected) {
            e.par_codes[i] = 0;  // terminated in an earlier reaction
          }
        }
      }
    }
    bool blocked = false;
    for (int i : visit_order(n, e.kids.size())) {
      if (e.par_codes[i] != -1) {
        continue;
      }
      // Child stamps can alias when a killed region restarts within one
      // reaction, so track first visits per par incarnation explicitly.
      Mode cm = e.par_started[i]
                    ? Mode::again
                    : (e.par_resume ? Mode::resume : Mode::start);
      e.par_started[i] = true;
      Step s = advance(e.kids[i], cm);
      if (s.done) {
        e.par_codes[i] = s.code;
      } else {
        blocked = true;
      }
    }
    if (blocked) {
      return {false, 0};
    }
    int mx = 0;
    for (int c : e.par_codes) {
      mx = par_join(mx, c);
    }
    return {true, mx};
  }

  Step suspend_step(int n, Mode m) {
    Node& e = nodes_[n];
    if (m == Mode::start) {
      e.sus = 1;  // body starts unconditionally at its first reaction
      return run_children(n, Mode::start);
    }
    if (m == Mode::resume) {
      e.sus = 0;
    }
    if (e.sus == 0) {
      EvalResult t = eval(e.expr);
      if (t.blocked) {
        return {false, 0};
      }
      if (as_bool(t.v, "suspend condition")) {
        return {true, 1};  // frozen: body selections persist untouched
      }
      e.sus = 1;
      return run_children(n, Mode::resume);
    }
    return run_children(n, Mode::again);
  }

  Step request_step(int n, Mode m) {
    Node& e = nodes_[n];
    if (m == Mode::resume) {
      auto it = store_.find(e.token);
      if (it == store_.end()) {
        return {true, 1};
      }
      Completion c = std::move(it->second);
      store_.erase(it);
      pending_.erase(e.token);
      e.token = 0;
      e.issued = false;
      if (c.success) {
        combine_emission(slots_[e.slot], std::optional<Value>(std::move(c.value)),
                         combiner_of(e.slot));
      }
      return {true, 0};
    }
    std::vector<Value> argv;
    argv.reserve(e.args.size());
    for (const auto& a : e.args) {
      EvalResult r = eval(a);
      if (r.blocked) {
        return {false, 0};
      }
      argv.push_back(std::move(r.v));
    }
    Token t = next_token_++;
    e.token = t;
    e.issued = false;
    issue_batch_.push_back(
        PendingIssue{t, n, ServiceCall{e.service, std::move(argv), t}});
    return {true, 1};
  }

  // Clears selection below n; outstanding requests are cancelled at this
  // reaction's finalization, requests collected this reaction but not yet
  // issued are withdrawn entirely.
  void kill(int n) {
    Node& e = nodes_[n];
    if (e.kind == StmtKind::request && e.token != 0) {
      if (e.issued) {
        pending_.erase(e.token);
        cancel_batch_.push_back(e.token);
        if (store_.erase(e.token) > 0) {
          ++dropped_;
        }
      } else {
        killed_unissued_.insert(e.token);
      }
      e.token = 0;
      e.issued = false;
    }
    e.selected = false;
    for (int k : e.kids) {
      kill(k);
    }
  }

  // ---- can analysis ---------------------------------------------------

  struct CanTri {
    bool decided = false;
    Value v;
  };

  CanTri ceval(const RExpr& x, const std::vector<bool>& vr) const {
    switch (x.kind) {
      case ExprKind::constant:
        return {true, x.constant};
      case ExprKind::now: {
        if (vr[x.slot] || slots_[x.slot].status == Status::unknown) {
          return {false, {}};
        }
        return {true, Value(slots_[x.slot].status == Status::present)};
      }
      case ExprKind::pre: {
        if (vr[x.slot]) {
          return {true, Value(false)};  // fresh scope: no previous reaction
        }
        return {true, Value(slots_[x.slot].pre_status)};
      }
      case ExprKind::val: {
        const EventState& st = slots_[x.slot];
        if (vr[x.slot] || st.status == Status::unknown || !st.value) {
          return {false, {}};
        }
        return {true, *st.value};
      }
      case ExprKind::preval: {
        const EventState& st = slots_[x.slot];
        if (vr[x.slot] || !st.pre_value) {
          return {false, {}};
        }
        return {true, *st.pre_value};
      }
      case ExprKind::apply: {
        std::vector<Value> argv;
        argv.reserve(x.args.size());
        for (const auto& a : x.args) {
          CanTri r = ceval(a, vr);
          if (!r.decided) {
            return {false, {}};
          }
          argv.push_back(std::move(r.v));
        }
        try {
          return {true, (*x.fn)(argv)};
        } catch (...) {
          return {false, {}};
        }
      }
    }
    return {false, {}};
  }

  // -1 unknown, 0 false, 1 true
  int can_bool(const RExpr& x, const std::vector<bool>& vr) const {
    CanTri r = ceval(x, vr);
    if (!r.decided || !r.v.is_boolean()) {
      return -1;
    }
    return r.v.get<bool>() ? 1 : 0;
  }

  std::set<int> can(int n, CMode m, std::vector<bool>& vr) {
    Node& e = nodes_[n];
    if (m == CMode::current && e.stamp == reaction_ && e.phase == kDone) {
      return {e.code};
    }
    switch (e.kind) {
      case StmtKind::nothing:
        return {0};
      case StmtKind::exit:
        return {e.exit_code};
      case StmtKind::atom:
        return {0};
      case StmtKind::pause:
        return {m == CMode::resume ? 0 : 1};
      case StmtKind::emit:
        can_emits_[e.slot] = true;
        return {0};
      case StmtKind::request: {
        if (m == CMode::resume) {
          auto it = store_.find(e.token);
          if (it == store_.end()) {
            return {1};
          }
          if (it->second.success) {
            can_emits_[e.slot] = true;
          }
          return {0};
        }
        return {1};
      }
      case StmtKind::if_: {
        if (m == CMode::current && e.entered) {
          return can(e.kids[e.cur], CMode::current, vr);
        }
        if (m == CMode::resume) {
          return can(e.kids[selected_child(n)], CMode::resume, vr);
        }
        int t = can_bool(e.expr, vr);
        if (t == 1) {
          return can(e.kids[0], CMode::start, vr);
        }
        if (t == 0) {
          return can(e.kids[1], CMode::start, vr);
        }
        std::set<int> a = can(e.kids[0], CMode::start, vr);
        std::set<int> b = can(e.kids[1], CMode::start, vr);
        a.insert(b.begin(), b.end());
        return a;
      }
      case StmtKind::seq:
        return can_chain(n, m, vr);
      case StmtKind::loop: {
        std::set<int> k = can_chain(n, m, vr);
        if (k.count(0)) {
          k.erase(0);
          std::set<int> r = can_chain(n, CMode::start, vr);
          r.erase(0);
          k.insert(r.begin(), r.end());
        }
        return k;
      }
      case StmtKind::par: {
        std::set<int> acc{0};
        for (size_t i = 0; i < e.kids.size(); ++i) {
          std::set<int> ki;
          if (m == CMode::current) {
            if (e.par_codes[i] != -1) {
              ki = {e.par_codes[i]};
            } else {
              ki = can(e.kids[i], CMode::current, vr);
            }
          } else if (m == CMode::resume) {
            if (nodes_[e.kids[i]].selected) {
              ki = can(e.kids[i], CMode::resume, vr);
            } else {
              ki = {0};
            }
          } else {
            ki = can(e.kids[i], CMode::start, vr);
          }
          std::set<int> next;
          for (int a : acc) {
            for (int b : ki) {
              next.insert(par_join(a, b));
            }
          }
          acc = std::move(next);
        }
        return acc;
      }
      case StmtKind::suspend: {
        if (m == CMode::start) {
          return can_chain(n, CMode::start, vr);
        }
        if (m == CMode::current && e.sus == 1) {
          return can_chain(n, CMode::current, vr);
        }
        // resuming, condition not yet settled
        int c = can_bool(e.expr, vr);
        if (c == 1) {
          return {1};
        }
        std::set<int> k = can_chain(n, CMode::resume, vr);
        if (c == -1) {
          k.insert(1);
        }
        return k;
      }
      case StmtKind::trap: {
        std::set<int> k = can_chain(n, m, vr);
        std::set<int> mapped;
        for (int c : k) {
          mapped.insert(trap_adjust(c));
        }
        return mapped;
      }
      case StmtKind::local: {
        if (m == CMode::start) {
          std::vector<int> marked;
          for (int slot : e.local_slots) {
            if (!vr[slot]) {
              vr[slot] = true;
              marked.push_back(slot);
            }
          }
          std::set<int> k = can_chain(n, CMode::start, vr);
          for (int slot : marked) {
            vr[slot] = false;
          }
          return k;
        }
        return can_chain(n, m, vr);
      }
    }
    throw Error("internal: unknown statement kind");
  }

  std::set<int> can_chain(int n, CMode m, std::vector<bool>& vr) {
    Node& e = nodes_[n];
    int idx;
    CMode first;
    if (m == CMode::current) {
      idx = e.cur;
      first = e.entered ? CMode::current : CMode::start;
      if (idx >= static_cast<int>(e.kids.size())) {
        return {0};
      }
    } else if (m == CMode::resume) {
      idx = selected_child(n);
      first = CMode::resume;
    } else {
      idx = 0;
      first = CMode::start;
    }
    std::set<int> acc = can(e.kids[idx], first, vr);
    for (size_t j = idx + 1; j < e.kids.size() && acc.count(0); ++j) {
      acc.erase(0);
      std::set<int> k = can(e.kids[j], CMode::start, vr);
      acc.insert(k.begin(), k.end());
    }
    return acc;
  }

  bool prune_absences() {
    can_emits_.assign(slots_.size(), false);
    std::vector<bool> vr(slots_.size(), false);
    can(root_, CMode::current, vr);
    bool any = false;
    for (size_t i = 0; i < slots_.size(); ++i) {
      if (slots_[i].status == Status::unknown && !can_emits_[i]) {
        slots_[i].status = Status::absent;
        any = true;
      }
    }
    return any;
  }

  int count_decided() const {
    int n = 0;
    for (const auto& st : slots_) {
      if (st.status != Status::unknown) {
        ++n;
      }
    }
    return n;
  }

  // ---- reaction driver ------------------------------------------------

  ReactionReport fail(ReactionError err) {
    status_ = MachineStatus::errored;
    last_error_ = err;
    error_report_ = ReactionReport{reaction_, {}, false, std::move(err)};
    issue_batch_.clear();
    cancel_batch_.clear();
    killed_unissued_.clear();
    return error_report_;
  }

  ReactionReport react() {
    if (in_react_) {
      throw Error("react() is not reentrant");
    }
    if (status_ == MachineStatus::errored) {
      return error_report_;
    }
    if (listener_error_) {
      std::string msg = *listener_error_;
      listener_error_.reset();
      ++reaction_;
      return fail({ReactionErrorKind::host, "listener failed: " + msg});
    }
    if (status_ == MachineStatus::terminated) {
      // Still drain the inbox: anything arriving now can only be stale.
      std::vector<std::pair<int, std::optional<Value>>> late_inputs;
      std::vector<Completion> late;
      {
        std::lock_guard<std::mutex> lock(inbox_->mu);
        late_inputs.swap(inbox_->inputs);
        late.swap(inbox_->completions);
      }
      dropped_ += static_cast<int>(late.size());
      return ReactionReport{reaction_, {}, true, std::nullopt};
    }
    in_react_ = true;
    struct Guard {
      bool* flag;
      ~Guard() { *flag = false; }
    } guard{&in_react_};

    ++reaction_;
    issue_batch_.clear();
    cancel_batch_.clear();
    killed_unissued_.clear();

    std::vector<std::pair<int, std::optional<Value>>> inputs;
    std::vector<Completion> completions;
    {
      std::lock_guard<std::mutex> lock(inbox_->mu);
      inputs.swap(inbox_->inputs);
      completions.swap(inbox_->completions);
    }
    for (auto& c : completions) {
      if (pending_.count(c.token) && !store_.count(c.token)) {
        store_.emplace(c.token, std::move(c));
      } else {
        ++dropped_;
      }
    }

    for (auto& st : slots_) {
      begin_reaction(st);
    }

    try {
      for (auto& [slot, v] : inputs) {
        combine_emission(slots_[slot], v, combiner_of(slot));
      }
      Mode m = started_ ? Mode::resume : Mode::start;
      started_ = true;
      Step s{false, 0};
      int decided = count_decided();
      while (true) {
        s = advance(root_, m);
        m = Mode::again;
        if (s.done) {
          break;
        }
        int nd = count_decided();
        if (nd > decided) {
          decided = nd;
          continue;
        }
        if (!prune_absences()) {
          throw ReactionAbort{
              {ReactionErrorKind::causality,
               "no constructive schedule: undecided events remain"}};
        }
        decided = count_decided();
      }

      for (auto& st : slots_) {
        if (st.status == Status::unknown) {
          st.status = Status::absent;
        }
      }

      bool terminated = (s.code == 0);
      if (terminated) {
        status_ = MachineStatus::terminated;
        kill(root_);
      }

      ReactionReport report;
      report.reaction_index = reaction_;
      report.terminated = terminated;
      for (size_t i = 0; i < slots_.size(); ++i) {
        if (slot_interface_[i] && slot_event_[i].kind() == EventKind::output &&
            slots_[i].status == Status::present) {
          report.outputs.push_back(
              OutputRecord{slot_event_[i].name(), slots_[i].value});
        }
      }
      std::sort(report.outputs.begin(), report.outputs.end(),
                [](const OutputRecord& a, const OutputRecord& b) {
                  return a.event < b.event;
                });

      for (auto& st : slots_) {
        end_reaction(st);
      }

      flush_bridge();
      fire_listeners(report);
      return report;
    } catch (const ReactionAbort& a) {
      return fail(a.error);
    } catch (const Error& err) {
      return fail({ReactionErrorKind::host, err.what()});
    } catch (const std::exception& ex) {
      return fail({ReactionErrorKind::host, ex.what()});
    }
  }

  void flush_bridge() {
    for (Token t : cancel_batch_) {
      if (client_) {
        client_->cancel(t);
      }
    }
    cancel_batch_.clear();
    for (auto& item : issue_batch_) {
      if (killed_unissued_.count(item.token)) {
        continue;
      }
      nodes_[item.node].issued = true;
      pending_.insert(item.token);
      if (!client_) {
        enqueue(Completion{item.token, false, {}, "no service client"});
        continue;
      }
      auto inbox = inbox_;
      CompletionSink sink = [inbox](Completion c) {
        std::lock_guard<std::mutex> lock(inbox->mu);
        inbox->completions.push_back(std::move(c));
      };
      try {
        client_->issue(item.call, std::move(sink));
      } catch (const std::exception& ex) {
        enqueue(Completion{item.token, false, {}, ex.what()});
      }
    }
    issue_batch_.clear();
    killed_unissued_.clear();
  }

  void fire_listeners(const ReactionReport& report) {
    for (const auto& [slot, cb] : listeners_) {
      if (slots_[slot].status != Status::present) {
        continue;
      }
      try {
        cb(slot_event_[slot], slots_[slot].value);
      } catch (const std::exception& ex) {
        if (!listener_error_) {
          listener_error_ = ex.what();
        }
      } catch (...) {
        if (!listener_error_) {
          listener_error_ = "unknown listener exception";
        }
      }
    }
    (void)report;
  }

  void enqueue(Completion c) {
    std::lock_guard<std::mutex> lock(inbox_->mu);
    inbox_->completions.push_back(std::move(c));
  }

  void reset() {
    for (auto& n : nodes_) {
      n.stamp = -1;
      n.phase = kIdle;
      n.code = -1;
      n.cur = 0;
      n.entered = false;
      n.par_resume = false;
      n.sus = 0;
      n.par_codes.clear();
      n.par_started.clear();
      n.selected = false;
      n.iter_stamp = -1;
      n.token = 0;
      n.issued = false;
    }
    for (auto& st : slots_) {
      st = EventState{};
    }
    {
      std::lock_guard<std::mutex> lock(inbox_->mu);
      inbox_->inputs.clear();
      inbox_->completions.clear();
    }
    store_.clear();
    pending_.clear();
    next_token_ = 1;
    dropped_ = 0;
    issue_batch_.clear();
    cancel_batch_.clear();
    killed_unissued_.clear();
    listener_error_.reset();
    last_error_.reset();
    error_report_ = ReactionReport{};
    status_ = MachineStatus::idle;
    reaction_ = 0;
    started_ = false;
    salt_ = 0;
  }

  std::set<std::string> can_probe(const std::map<std::string, Status>& st) {
    for (const auto& [name, status] : st) {
      bool found = false;
      for (size_t i = 0; i < slots_.size(); ++i) {
        if (slot_interface_[i] && slot_event_[i].name() == name) {
          slots_[i].status = status;
          found = true;
        }
      }
      if (!found) {
        throw LoadError("can_set: unknown event '" + name + "'");
      }
    }
    for (size_t i = 0; i < slots_.size(); ++i) {
      if (!st.count(slot_event_[i].name())) {
        slots_[i].status = Status::unknown;
      }
    }
    can_emits_.assign(slots_.size(), false);
    std::vector<bool> vr(slots_.size(), false);
    can(root_, CMode::start, vr);
    std::set<std::string> names;
    for (size_t i = 0; i < slots_.size(); ++i) {
      if (can_emits_[i]) {
        names.insert(slot_event_[i].name());
      }
    }
    return names;
  }
};

// ---- EventView --------------------------------------------------------

EventState& EventView::Ctx::state(const Event& e) const {
  auto it = scope->find(e.id());
  if (it == scope->end()) {
    throw LoadError("atom: event '" + e.name() + "' is not visible here");
  }
  return impl->slots_[it->second];
}

bool EventView::now(const Event& e) const {
  auto r = read_status(ctx_->state(e), StatusPhase::now);
  if (!r) {
    throw ReactionAbort{{ReactionErrorKind::causality,
                         "atom read of undecided event '" + e.name() + "'"}};
  }
  return *r;
}

bool EventView::pre(const Event& e) const {
  return *read_status(ctx_->state(e), StatusPhase::pre);
}

Value EventView::val(const Event& e) const {
  auto r = read_value(ctx_->state(e), ValuePhase::val);
  if (!r) {
    throw ReactionAbort{{ReactionErrorKind::causality,
                         "atom read of undecided event '" + e.name() + "'"}};
  }
  return std::move(*r);
}

Value EventView::preval(const Event& e) const {
  auto r = read_value(ctx_->state(e), ValuePhase::preval);
  return std::move(*r);
}

// ---- Machine ----------------------------------------------------------

Machine::Machine(Statement program, std::vector<Event> interface)
    : impl_(std::make_unique<Impl>(std::move(program), std::move(interface))) {}

Machine::~Machine() = default;
Machine::Machine(Machine&&) noexcept = default;
Machine& Machine::operator=(Machine&&) noexcept = default;

void Machine::set_client(std::shared_ptr<ServiceClient> client) {
  impl_->client_ = std::move(client);
}

void Machine::set_schedule_seed(std::uint64_t seed) { impl_->seed_ = seed; }

void Machine::input(const Event& e, std::optional<Value> v) {
  auto it = impl_->interface_by_id_.find(e.id());
  if (it == impl_->interface_by_id_.end() || e.kind() != EventKind::input) {
    throw InputKindError("input: event '" + e.name() +
                         "' is not an input of this machine");
  }
  std::lock_guard<std::mutex> lock(impl_->inbox_->mu);
  impl_->inbox_->inputs.emplace_back(it->second, std::move(v));
}

ReactionReport Machine::react() { return impl_->react(); }

ReactionReport Machine::input_and_react(const Event& e, std::optional<Value> v) {
  input(e, std::move(v));
  return react();
}

void Machine::add_listener(const Event& e, Listener cb) {
  auto it = impl_->interface_by_id_.find(e.id());
  if (it == impl_->interface_by_id_.end() || e.kind() != EventKind::output) {
    throw ListenerKindError("add_listener: event '" + e.name() +
                            "' is not an output of this machine");
  }
  impl_->listeners_.emplace_back(it->second, std::move(cb));
}

void Machine::enqueue_response(Completion c) { impl_->enqueue(std::move(c)); }

std::vector<Token> Machine::pending_tokens() const {
  return std::vector<Token>(impl_->pending_.begin(), impl_->pending_.end());
}

int Machine::dropped_completions() const { return impl_->dropped_; }

void Machine::reset() { impl_->reset(); }

MachineStatus Machine::status() const { return impl_->status_; }

int Machine::reaction_index() const { return impl_->reaction_; }

Status Machine::status_of(const Event& e) const {
  auto it = impl_->interface_by_id_.find(e.id());
  if (it == impl_->interface_by_id_.end()) {
    throw LoadError("status_of: event '" + e.name() + "' is not in the interface");
  }
  return impl_->slots_[it->second].status;
}

std::optional<Value> Machine::value_of(const Event& e) const {
  auto it = impl_->interface_by_id_.find(e.id());
  if (it == impl_->interface_by_id_.end()) {
    throw LoadError("value_of: event '" + e.name() + "' is not in the interface");
  }
  return impl_->slots_[it->second].value;
}

std::set<std::string> can_set(const Statement& program,
                              const std::vector<Event>& interface,
                              const std::map<std::string, Status>& statuses) {
  Machine m(program, interface);
  return m.impl_->can_probe(statuses);
}

}  // namespace tempo

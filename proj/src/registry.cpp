// Copyright 2026 The Tempo Authors
// SPDX-License-Identifier: Apache-2.0

#include "tempo/registry.hpp"

#include <algorithm>
#include <cstdint>

#include "tempo/bridge.hpp"
#include "tempo/derived.hpp"

namespace tempo {

namespace {

Value sum(const Value& a, const Value& b) {
  if (a.is_number_integer() && b.is_number_integer())
    return Value(a.get<std::int64_t>() + b.get<std::int64_t>());
  return Value(a.get<double>() + b.get<double>());
}

Value lex_min(const Value& a, const Value& b) { return a < b ? a : b; }

BuiltProgram emit_basic() {
  Event O = make_event("O", EventKind::output);
  return {emit(O), {O}};
}

BuiltProgram nothing_basic() { return {nothing(), {}}; }

BuiltProgram seq_await() {
  Event A = make_event("A", EventKind::input);
  Event B = make_event("B", EventKind::input);
  Event O = make_event("O", EventKind::output);
  return {seq(await(now(A)), await(now(B)), emit(O)), {A, B, O}};
}

BuiltProgram par_await() {
  Event A = make_event("A", EventKind::input);
  Event B = make_event("B", EventKind::input);
  Event O = make_event("O", EventKind::output);
  return {seq(par(await(now(A)), await(now(B))), emit(O)), {A, B, O}};
}

BuiltProgram seq_pause() {
  Event A = make_event("A", EventKind::output);
  Event B = make_event("B", EventKind::output);
  return {seq(emit(A), pause(), emit(B)), {A, B}};
}

BuiltProgram seq_simultaneous() {
  Event A = make_event("A", EventKind::output);
  Event B = make_event("B", EventKind::output);
  return {seq(emit(A), emit(B)), {A, B}};
}

BuiltProgram loop_pause_emit() {
  Event A = make_event("A", EventKind::output);
  return {loop(pause(), emit(A)), {A}};
}

BuiltProgram suspend_freeze() {
  Event A = make_event("A", EventKind::input);
  Event B = make_event("B", EventKind::output);
  return {suspend(now(A), loop(emit(B), pause())), {A, B}};
}

BuiltProgram trap_concurrent() {
  Event B = make_event("B", EventKind::output);
  return {trap("T", par(exit("T"), emit(B))), {B}};
}

BuiltProgram nested_traps() {
  Event B = make_event("B", EventKind::output);
  Event C = make_event("C", EventKind::output);
  return {trap("U", seq(trap("T", par(exit("U"), exit("T"))), emit(B)),
               emit(C)),
          {B, C}};
}

BuiltProgram trap_loop_exit() {
  Event T = make_event("T", EventKind::input);
  Event O = make_event("O", EventKind::output);
  return {seq(trap("stop", loop(pause(), if_(now(T), exit("stop")))), emit(O)),
          {T, O}};
}

BuiltProgram halt_basic() {
  Event O = make_event("O", EventKind::output);
  return {seq(emit(O), halt()), {O}};
}

BuiltProgram sustain_basic() {
  Event B = make_event("B", EventKind::output);
  return {sustain(B), {B}};
}

BuiltProgram await_start_skip() {
  Event A = make_event("A", EventKind::input);
  Event O = make_event("O", EventKind::output);
  return {seq(await(now(A)), emit(O)), {A, O}};
}

BuiltProgram await_const_true() {
  Event O = make_event("O", EventKind::output);
  return {seq(await(lit(true)), emit(O)), {O}};
}

BuiltProgram abort_sustain() {
  Event A = make_event("A", EventKind::input);
  Event B = make_event("B", EventKind::output);
  return {abort(now(A), sustain(B)), {A, B}};
}

BuiltProgram until_sustain() {
  Event A = make_event("A", EventKind::input);
  Event B = make_event("B", EventKind::output);
  return {until(now(A), sustain(B)), {A, B}};
}

BuiltProgram abort_vs_until() {
  Event A = make_event("A", EventKind::input);
  Event S = make_event("strongB", EventKind::output);
  Event W = make_event("weakB", EventKind::output);
  return {par(abort(now(A), sustain(S)), until(now(A), sustain(W))),
          {A, S, W}};
}

BuiltProgram abort_halt() {
  Event A = make_event("A", EventKind::input);
  return {abort(now(A), halt()), {A}};
}

BuiltProgram loop_each_basic() {
  Event R = make_event("R", EventKind::input);
  Event A = make_event("A", EventKind::output);
  return {loop_each(now(R), emit(A), halt()), {R, A}};
}

BuiltProgram every_basic() {
  Event A = make_event("A", EventKind::input);
  Event B = make_event("B", EventKind::output);
  return {every(now(A), emit(B), halt()), {A, B}};
}

BuiltProgram causality_paradox() {
  Event L = make_event("L", EventKind::local);
  return {local(L, if_(now(L), nothing(), emit(L))), {}};
}

BuiltProgram causality_self() {
  Event L = make_event("L", EventKind::local);
  return {local(L, if_(now(L), emit(L), nothing())), {}};
}

BuiltProgram instantaneous_loop() {
  Event A = make_event("A", EventKind::output);
  return {loop(emit(A)), {A}};
}

BuiltProgram combine_sum() {
  Event S = make_event("score", EventKind::output, sum);
  return {par(emit(S, lit(2)), emit(S, lit(3))), {S}};
}

BuiltProgram value_memorized() {
  Event X = make_event("X", EventKind::output);
  Event Y = make_event("Y", EventKind::output);
  return {seq(emit(X, lit(5)), pause(), emit(Y, val(X))), {X, Y}};
}

BuiltProgram pre_status() {
  Event A = make_event("A", EventKind::input);
  Event B = make_event("B", EventKind::output);
  return {loop(if_(pre(A), emit(B)), pause()), {A, B}};
}

BuiltProgram local_scope() {
  Event L = make_event("tmp", EventKind::local);
  Event W = make_event("W", EventKind::output);
  Event O = make_event("O", EventKind::output);
  return {local(L, seq(emit(L, lit(1)), pause(),
                       if_(now(L), emit(W)), emit(O, val(L)))),
          {W, O}};
}

BuiltProgram request_single() {
  Event R = make_event("R", EventKind::output);
  Event OK = make_event("OK", EventKind::output);
  Event FAIL = make_event("FAIL", EventKind::output);
  return {seq(request("echo", {lit(1)}, R), if_(now(R), emit(OK), emit(FAIL))),
          {R, OK, FAIL}};
}

BuiltProgram request_race() {
  Event IMG = make_event("img", EventKind::output, lex_min);
  Event SHOWN = make_event("shown", EventKind::output);
  Event HIDDEN = make_event("hidden", EventKind::output);
  auto arm = [&](const char* service) {
    return seq(request(service, {lit("artist")}, IMG),
               if_(now(IMG), exit("done")));
  };
  return {seq(trap("done", par(arm("img-a"), arm("img-b"))),
              if_(now(IMG), emit(SHOWN), emit(HIDDEN))),
          {IMG, SHOWN, HIDDEN}};
}

const std::vector<RegistryEntry>& entries() {
  static const std::vector<RegistryEntry> all = [] {
    std::vector<RegistryEntry> list = {
        {"abort-halt", "wait for A, terminating on arrival", abort_halt},
        {"abort-sustain", "strong kill: B stops the reaction A arrives",
         abort_sustain},
        {"abort-vs-until", "strong and weak kill of sustain, side by side",
         abort_vs_until},
        {"await-const-true", "await over a constant condition fires at 2",
         await_const_true},
        {"await-start-skip", "await does not see its starting reaction",
         await_start_skip},
        {"causality-paradox", "no coherent status for L", causality_paradox},
        {"causality-self", "only self-justifying status for L", causality_self},
        {"combine-sum", "simultaneous valued emissions fold through +",
         combine_sum},
        {"emit-basic", "single emission, instant termination", emit_basic},
        {"nothing-basic", "empty program, instant termination", nothing_basic},
        {"every-basic", "restart body at each condition occurrence",
         every_basic},
        {"halt-basic", "emit once then pause forever", halt_basic},
        {"instantaneous-loop", "loop body without a pause", instantaneous_loop},
        {"local-scope", "local status resets, local value persists",
         local_scope},
        {"loop-each-basic", "body at start and at each restart",
         loop_each_basic},
        {"loop-pause-emit", "A at every reaction from the second on",
         loop_pause_emit},
        {"nested-traps", "concurrent exits, outermost trap wins", nested_traps},
        {"par-await", "O when the last of A and B has occurred", par_await},
        {"pre-status", "B mirrors last reaction's A", pre_status},
        {"request-race", "two services race to emit img, loser cancelled",
         request_race},
        {"request-single", "issue one call, emit R on success", request_single},
        {"seq-await", "await A then B then emit O", seq_await},
        {"seq-pause", "A and B in two successive reactions", seq_pause},
        {"seq-simultaneous", "sequenced emissions within one reaction",
         seq_simultaneous},
        {"suspend-freeze", "B except when A freezes the loop", suspend_freeze},
        {"sustain-basic", "B at every reaction", sustain_basic},
        {"trap-concurrent", "exit and emit side by side, both count",
         trap_concurrent},
        {"trap-loop-exit", "input-controlled loop escape", trap_loop_exit},
        {"until-sustain", "weak kill: B still emitted the reaction A arrives",
         until_sustain},
        {"value-memorized", "read a value emitted one reaction earlier",
         value_memorized},
    };
    std::sort(list.begin(), list.end(),
              [](const RegistryEntry& a, const RegistryEntry& b) {
                return a.id < b.id;
              });
    return list;
  }();
  return all;
}

}  // namespace

const std::vector<RegistryEntry>& program_registry() { return entries(); }

const RegistryEntry* find_program(const std::string& id) {
  const auto& all = entries();
  auto it = std::lower_bound(
      all.begin(), all.end(), id,
      [](const RegistryEntry& e, const std::string& key) { return e.id < key; });
  if (it != all.end() && it->id == id) {
    return &*it;
  }
  return nullptr;
}

}  // namespace tempo

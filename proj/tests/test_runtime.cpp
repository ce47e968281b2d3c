// Copyright 2026 The Tempo Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>

#include "tempo/derived.hpp"
#include "tempo/runtime.hpp"

using namespace tempo;

namespace {

Event in(const char* n) { return make_event(n, EventKind::input); }
Event out(const char* n) { return make_event(n, EventKind::output); }

Value sum(const Value& a, const Value& b) {
  return Value(a.get<double>() + b.get<double>());
}

std::vector<std::string> names(const ReactionReport& r) {
  std::vector<std::string> ns;
  for (const auto& o : r.outputs) ns.push_back(o.event);
  return ns;
}

}  // namespace

TEST_CASE("loading validates the program against the interface") {
  Event a = in("A");
  Event o = out("O");
  SUBCASE("well-formed program loads idle") {
    Machine m(seq(await(now(a)), emit(o)), {a, o});
    CHECK(m.status() == MachineStatus::idle);
    CHECK(m.reaction_index() == 0);
  }
  SUBCASE("unregistered event") {
    CHECK_THROWS_AS(Machine(emit(out("X")), {}), LoadError);
  }
  SUBCASE("duplicate interface names") {
    CHECK_THROWS_AS(Machine(emit(o), {o, out("O")}), DuplicateEventError);
  }
  SUBCASE("local-kind event cannot sit in the interface") {
    CHECK_THROWS_AS(Machine(nothing(), {make_event("L", EventKind::local)}),
                    LoadError);
  }
  SUBCASE("local shadowing an interface name is rejected") {
    Event l = make_event("O", EventKind::local);
    CHECK_THROWS_AS(Machine(local(l, emit(l)), {o}), DuplicateEventError);
  }
  SUBCASE("invalid root statement") {
    CHECK_THROWS_AS(Machine(Statement{}, {}), AstError);
  }
}

TEST_CASE("input kind checks") {
  Event a = in("A");
  Event o = out("O");
  Machine m(seq(await(now(a)), emit(o)), {a, o});
  CHECK_THROWS_AS(m.input(o), InputKindError);
  CHECK_THROWS_AS(m.input(in("ghost")), InputKindError);
  CHECK_THROWS_AS(m.add_listener(a, [](const Event&, auto&) {}),
                  ListenerKindError);
}

TEST_CASE("sequential awaits: O fires with B, not before") {
  Event a = in("A");
  Event b = in("B");
  Event o = out("O");
  Machine m(seq(await(now(a)), await(now(b)), emit(o)), {a, b, o});

  ReactionReport r1 = m.react();
  CHECK(!r1.present("O"));
  ReactionReport r2 = m.input_and_react(a);
  CHECK(!r2.present("O"));
  ReactionReport r3 = m.input_and_react(b);
  CHECK(r3.present("O"));
  CHECK(r3.terminated);
  CHECK(m.status() == MachineStatus::terminated);
}

TEST_CASE("parallel awaits accept both inputs in one reaction") {
  Event a = in("A");
  Event b = in("B");
  Event o = out("O");
  Machine m(seq(par(await(now(a)), await(now(b))), emit(o)), {a, b, o});
  m.react();
  m.input(a);
  m.input(b);
  ReactionReport r = m.react();
  CHECK(r.present("O"));
  CHECK(r.terminated);
}

TEST_CASE("pause splits a sequence across two reactions") {
  Event a = out("A");
  Event b = out("B");
  Machine m(seq(emit(a), tempo::pause(), emit(b)), {a, b});
  ReactionReport r1 = m.react();
  CHECK(names(r1) == std::vector<std::string>{"A"});
  CHECK(!r1.terminated);
  ReactionReport r2 = m.react();
  CHECK(names(r2) == std::vector<std::string>{"B"});
  CHECK(r2.terminated);
}

TEST_CASE("loop with a pause emits from the second reaction on") {
  Event a = out("A");
  Machine m(loop(tempo::pause(), emit(a)), {a});
  CHECK(!m.react().present("A"));
  CHECK(m.react().present("A"));
  CHECK(m.react().present("A"));
}

TEST_CASE("instantaneous loops are dynamic errors") {
  Event a = out("A");
  SUBCASE("loop(emit)") {
    Machine m(loop(emit(a)), {a});
    ReactionReport r = m.react();
    REQUIRE(r.error.has_value());
    CHECK(r.error->kind == ReactionErrorKind::instantaneous_loop);
    CHECK(m.status() == MachineStatus::errored);
  }
  SUBCASE("loop(nothing)") {
    Machine m(loop(nothing()), {});
    ReactionReport r = m.react();
    REQUIRE(r.error.has_value());
    CHECK(r.error->kind == ReactionErrorKind::instantaneous_loop);
  }
  SUBCASE("a loop that pauses on later iterations still trips on restart") {
    // Body terminates instantly only when A is present.
    Event trig = in("T");
    Machine m(loop(if_(now(trig), nothing(), tempo::pause())), {trig});
    CHECK(!m.react().error.has_value());
    ReactionReport r = m.input_and_react(trig);
    REQUIRE(r.error.has_value());
    CHECK(r.error->kind == ReactionErrorKind::instantaneous_loop);
  }
}

TEST_CASE("suspend freezes the body while the condition holds") {
  Event a = in("A");
  Event b = out("B");
  Machine m(suspend(now(a), loop(emit(b), tempo::pause())), {a, b});
  CHECK(m.react().present("B"));      // start: condition not consulted
  CHECK(m.react().present("B"));
  CHECK(!m.input_and_react(a).present("B"));  // frozen
  CHECK(m.react().present("B"));              // thawed, state preserved
}

TEST_CASE("suspension preserves the paused point rather than restarting") {
  Event a = in("A");
  Event x = out("X");
  Event y = out("Y");
  // Without freezing, Y would be emitted the reaction after X.
  Machine m(suspend(now(a), seq(emit(x), tempo::pause(), emit(y))), {a, x, y});
  CHECK(m.react().present("X"));
  CHECK(names(m.input_and_react(a)).empty());  // frozen between X and Y
  ReactionReport r = m.react();
  CHECK(r.present("Y"));
  CHECK(r.terminated);
}

TEST_CASE("trap catches its own exit and terminates normally") {
  Event b = out("B");
  Event c = out("C");  // behind the exit: loads fine, never emitted
  Machine m(seq(trap("t", seq(emit(b), tempo::exit("t"), emit(c))),
                nothing()),
            {b, c});
  ReactionReport r = m.react();
  CHECK(r.present("B"));
  CHECK(r.terminated);
}

TEST_CASE("exit does not cancel a concurrent sibling's same-reaction work") {
  Event b = out("B");
  Machine m(trap("t", par(tempo::exit("t"), emit(b))), {b});
  ReactionReport r = m.react();
  CHECK(r.present("B"));
  CHECK(r.terminated);
}

TEST_CASE("concurrent exits: the outermost trap wins") {
  Event b = out("B");
  Event c = out("C");
  Machine m(trap("u", seq(trap("t", par(tempo::exit("u"), tempo::exit("t"))),
                          emit(b)),
                 emit(c)),
            {b, c});
  ReactionReport r = m.react();
  CHECK(!r.present("B"));
  CHECK(!r.present("C"));
  CHECK(r.terminated);
}

TEST_CASE("trap exit is a weak kill: killed pauses lose their selection") {
  Event t = in("T");
  Event o = out("O");
  Event b = out("B");
  // The loop pauses forever until T exits the trap; B must not re-emerge.
  Machine m(seq(trap("stop", loop(tempo::pause(),
                                  if_(now(t), tempo::exit("stop"), emit(b)))),
                emit(o)),
            {t, o, b});
  CHECK(names(m.react()).empty());
  CHECK(m.react().present("B"));
  ReactionReport r = m.input_and_react(t);
  CHECK(r.present("O"));
  CHECK(!r.present("B"));
  CHECK(r.terminated);
}

TEST_CASE("completion-code algebra, exhaustively over 0..6") {
  for (int a = 0; a <= 6; ++a) {
    for (int b = 0; b <= 6; ++b) {
      CHECK(par_join(a, b) == std::max(a, b));
      CHECK(par_join(a, b) == par_join(b, a));
    }
  }
  CHECK(trap_adjust(0) == 0);
  CHECK(trap_adjust(1) == 1);
  CHECK(trap_adjust(2) == 0);
  for (int c = 3; c <= 6; ++c) CHECK(trap_adjust(c) == c - 1);
}

TEST_CASE("constructive causality classification") {
  SUBCASE("no coherent assignment: paradox") {
    Event l = make_event("L", EventKind::local);
    Machine m(local(l, if_(now(l), nothing(), emit(l))), {});
    ReactionReport r = m.react();
    REQUIRE(r.error.has_value());
    CHECK(r.error->kind == ReactionErrorKind::causality);
  }
  SUBCASE("self-justifying assignment is rejected too") {
    Event l = make_event("L", EventKind::local);
    Machine m(local(l, if_(now(l), emit(l), nothing())), {});
    ReactionReport r = m.react();
    REQUIRE(r.error.has_value());
    CHECK(r.error->kind == ReactionErrorKind::causality);
  }
  SUBCASE("emitting on both branches is still not constructive") {
    Event l = make_event("L", EventKind::local);
    Machine m(local(l, if_(now(l), emit(l), emit(l))), {});
    ReactionReport r = m.react();
    REQUIRE(r.error.has_value());
    CHECK(r.error->kind == ReactionErrorKind::causality);
  }
  SUBCASE("an unemittable event is simply absent") {
    Event l = make_event("L", EventKind::local);
    Event o = out("O");
    Machine m(local(l, if_(now(l), nothing(), nothing()), emit(o)), {o});
    ReactionReport r = m.react();
    CHECK(r.present("O"));
    CHECK(!r.error.has_value());
  }
  SUBCASE("downstream decisions unblock readers within the reaction") {
    Event a = in("A");
    Event b = out("B");
    Event c = out("C");
    // C depends on B which depends on A: one reaction settles all three.
    Machine m(par(if_(now(b), emit(c)), if_(now(a), emit(b))), {a, b, c});
    ReactionReport r = m.input_and_react(a);
    CHECK(r.present("B"));
    CHECK(r.present("C"));
  }
}

TEST_CASE("reachability analysis prunes exactly the right branches") {
  Event x = in("X");
  Event a = out("A");
  Event b = out("B");
  SUBCASE("a pause bounds the reaction") {
    auto can = can_set(seq(tempo::pause(), emit(a)), {a});
    CHECK(can.count("A") == 0);
  }
  SUBCASE("an undecided test keeps both branches possible") {
    auto can = can_set(if_(now(x), emit(a), emit(b)), {x, a, b});
    CHECK(can.count("A") == 1);
    CHECK(can.count("B") == 1);
  }
  SUBCASE("deciding the test prunes one branch") {
    auto can = can_set(if_(now(x), emit(a), emit(b)), {x, a, b},
                       {{"X", Status::absent}});
    CHECK(can.count("A") == 0);
    CHECK(can.count("B") == 1);
  }
  SUBCASE("exit cuts reachability past the killed region") {
    auto can = can_set(trap("t", seq(tempo::exit("t"), emit(a))), {a});
    CHECK(can.count("A") == 0);
  }
  SUBCASE("unknown event name is rejected") {
    CHECK_THROWS_AS(can_set(emit(a), {a}, {{"nope", Status::absent}}),
                    LoadError);
  }
}

TEST_CASE("pre reflects the previous reaction only") {
  Event a = in("A");
  Event b = out("B");
  Machine m(loop(if_(pre(a), emit(b)), tempo::pause()), {a, b});
  CHECK(!m.react().present("B"));
  CHECK(!m.input_and_react(a).present("B"));
  CHECK(m.react().present("B"));
  CHECK(!m.react().present("B"));
}

TEST_CASE("values are memorized while the event is absent") {
  Event x = out("X");
  Event y = out("Y");
  Machine m(seq(emit(x, lit(5)), tempo::pause(), emit(y, val(x))), {x, y});
  ReactionReport r1 = m.react();
  CHECK(*r1.value_of("X") == Value(5));
  ReactionReport r2 = m.react();
  CHECK(*r2.value_of("Y") == Value(5));
  CHECK(r2.terminated);
  CHECK(m.value_of(x) == Value(5));
  CHECK(m.status_of(x) == Status::absent);
}

TEST_CASE("valued inputs behave like emissions") {
  Event s = make_event("score", EventKind::input, sum);
  Event o = out("O");
  SUBCASE("two valued inputs fold through the combiner") {
    Machine m(seq(await(now(s)), emit(o, val(s))), {s, o});
    m.react();
    m.input(s, Value(2));
    m.input(s, Value(3));
    ReactionReport r = m.react();
    CHECK(*r.value_of("O") == Value(5));
  }
  SUBCASE("input order within a window does not matter") {
    Machine m1(seq(await(now(s)), emit(o, val(s))), {s, o});
    m1.react();
    m1.input(s, Value(2));
    m1.input(s, Value(3));
    Machine m2(seq(await(now(s)), emit(o, val(s))), {s, o});
    m2.react();
    m2.input(s, Value(3));
    m2.input(s, Value(2));
    CHECK(*m1.react().value_of("O") == *m2.react().value_of("O"));
  }
  SUBCASE("two valued inputs without a combiner fail at react time") {
    Event p = in("P");
    Machine m(await(now(p)), {p});
    m.react();
    m.input(p, Value(1));
    m.input(p, Value(2));
    ReactionReport r = m.react();
    REQUIRE(r.error.has_value());
    CHECK(r.error->kind == ReactionErrorKind::multiple_emit);
  }
  SUBCASE("an unread input value still updates the memorized value") {
    Event p = in("P");
    Machine m(loop(tempo::pause()), {p});
    m.input_and_react(p, Value(7));
    CHECK(m.value_of(p) == Value(7));
  }
}

TEST_CASE("simultaneous valued emissions need a combiner") {
  SUBCASE("with one, order independent") {
    Event s = make_event("score", EventKind::output, sum);
    Machine m(par(emit(s, lit(2)), emit(s, lit(3))), {s});
    CHECK(*m.react().value_of("score") == Value(5));
  }
  SUBCASE("without one, the reaction fails") {
    Event s = out("score");
    Machine m(par(emit(s, lit(2)), emit(s, lit(3))), {s});
    ReactionReport r = m.react();
    REQUIRE(r.error.has_value());
    CHECK(r.error->kind == ReactionErrorKind::multiple_emit);
  }
}

TEST_CASE("valued emission after a same-reaction val read is an error") {
  Event a = out("A");
  Machine m(seq(emit(a, lit(1)),
                atom([&](const EventView& v) { (void)v.val(a); }),
                emit(a, lit(2))),
            {a});
  ReactionReport r = m.react();
  REQUIRE(r.error.has_value());
  CHECK(r.error->kind == ReactionErrorKind::emit_after_read);
}

TEST_CASE("atoms") {
  Event a = in("A");
  Event o = out("O");
  SUBCASE("run exactly once per pass of control") {
    int runs = 0;
    Machine m(loop(atom([&](const EventView&) { ++runs; }), tempo::pause()),
              {});
    m.react();
    CHECK(runs == 1);
    m.react();
    CHECK(runs == 2);
  }
  SUBCASE("reading an undecided event is a causality error") {
    Machine m(par(atom([&](const EventView& v) { (void)v.now(a); }),
                  await(now(a))),
              {a});
    ReactionReport r = m.react();
    REQUIRE(r.error.has_value());
    CHECK(r.error->kind == ReactionErrorKind::causality);
  }
  SUBCASE("pre is always readable") {
    bool seen = true;
    Machine m(atom([&](const EventView& v) { seen = v.pre(a); }), {a});
    m.react();
    CHECK(!seen);
  }
  SUBCASE("a throwing atom poisons the reaction as a host error") {
    Machine m(atom([](const EventView&) { throw std::runtime_error("boom"); }),
              {});
    ReactionReport r = m.react();
    REQUIRE(r.error.has_value());
    CHECK(r.error->kind == ReactionErrorKind::host);
  }
  SUBCASE("sequencing after the deciding emit makes reads safe") {
    Value got;
    Machine m(seq(emit(o, lit(3)),
                  atom([&](const EventView& v) { got = v.val(o); })),
              {o});
    m.react();
    CHECK(got == Value(3));
  }
}

TEST_CASE("host expression failures poison the reaction") {
  Event a = in("A");
  SUBCASE("non-boolean test") {
    Machine m(if_(lit(42), nothing()), {});
    ReactionReport r = m.react();
    REQUIRE(r.error.has_value());
    CHECK(r.error->kind == ReactionErrorKind::host);
  }
  SUBCASE("throwing host function") {
    Machine m(if_(apply("boom",
                        [](const std::vector<Value>&) -> Value {
                          throw std::runtime_error("no");
                        },
                        {}),
                  nothing()),
              {});
    ReactionReport r = m.react();
    REQUIRE(r.error.has_value());
    CHECK(r.error->kind == ReactionErrorKind::host);
  }
  SUBCASE("val of a never-valued event") {
    Event o = out("O");
    Machine m(seq(await(now(a)), emit(o, val(a))), {a, o});
    m.react();
    ReactionReport r = m.input_and_react(a);  // A present, but no value ever
    REQUIRE(r.error.has_value());
    CHECK(r.error->kind == ReactionErrorKind::host);
  }
}

TEST_CASE("listeners") {
  Event a = in("A");
  Event b = in("B");
  Event o = out("O");
  SUBCASE("fire once, at the reaction where the output is present") {
    int fired = 0;
    Machine m(seq(await(now(a)), await(now(b)), emit(o)), {a, b, o});
    m.add_listener(o, [&](const Event&, const std::optional<Value>&) {
      ++fired;
    });
    m.react();
    m.input_and_react(a);
    CHECK(fired == 0);
    m.input_and_react(b);
    CHECK(fired == 1);
  }
  SUBCASE("registration order") {
    std::vector<int> order;
    Machine m(emit(o), {o});
    m.add_listener(o, [&](const Event&, auto&) { order.push_back(1); });
    m.add_listener(o, [&](const Event&, auto&) { order.push_back(2); });
    m.react();
    CHECK(order == std::vector<int>{1, 2});
  }
  SUBCASE("listener inputs are queued for the next reaction") {
    Event x = in("X");
    Event y = out("Y");
    Machine m(loop(if_(now(x), emit(y)), tempo::pause()), {x, y});
    bool once = false;
    m.add_listener(y, [&](const Event&, auto&) {
      if (!once) {
        once = true;
        m.input(x);  // re-trigger from inside the listener
      }
    });
    ReactionReport r1 = m.input_and_react(x);
    CHECK(r1.present("Y"));
    ReactionReport r2 = m.react();  // the listener's input lands here
    CHECK(r2.present("Y"));
    CHECK(!m.react().present("Y"));
  }
  SUBCASE("a throwing listener poisons the next report, not its own") {
    Machine m(loop(emit(o), tempo::pause()), {o});
    m.add_listener(o, [](const Event&, auto&) {
      throw std::runtime_error("listener boom");
    });
    ReactionReport r1 = m.react();
    CHECK(r1.present("O"));
    CHECK(!r1.error.has_value());
    ReactionReport r2 = m.react();
    REQUIRE(r2.error.has_value());
    CHECK(r2.error->kind == ReactionErrorKind::host);
    CHECK(m.status() == MachineStatus::errored);
  }
}

TEST_CASE("an errored machine is poisoned") {
  Event a = out("A");
  Machine m(loop(emit(a)), {a});
  ReactionReport r1 = m.react();
  REQUIRE(r1.error.has_value());
  ReactionReport r2 = m.react();
  REQUIRE(r2.error.has_value());
  CHECK(r2.error->kind == r1.error->kind);
  CHECK(r2.reaction_index == r1.reaction_index);
  CHECK(r2.outputs.empty());
}

TEST_CASE("a terminated machine ignores further stimuli") {
  Event a = in("A");
  Event o = out("O");
  Machine m(emit(o), {o, a});
  ReactionReport r1 = m.react();
  CHECK(r1.terminated);
  ReactionReport r2 = m.input_and_react(a);
  CHECK(r2.terminated);
  CHECK(r2.outputs.empty());
  CHECK(r2.reaction_index == r1.reaction_index);
}

TEST_CASE("reset restores the freshly loaded machine") {
  Event a = in("A");
  Event o = out("O");
  Machine m(seq(await(now(a)), emit(o, lit(1))), {a, o});
  m.react();
  m.input_and_react(a);
  CHECK(m.status() == MachineStatus::terminated);
  m.reset();
  CHECK(m.status() == MachineStatus::idle);
  CHECK(m.reaction_index() == 0);
  CHECK(!m.value_of(o).has_value());

  SUBCASE("replaying the same inputs yields the same reports") {
    ReactionReport r1 = m.react();
    ReactionReport r2 = m.input_and_react(a);
    CHECK(!r1.present("O"));
    CHECK(r2.present("O"));
    CHECK(r2.terminated);
    CHECK(r2.reaction_index == 2);
  }
  SUBCASE("reset clears pending inputs") {
    m.input(a);
    m.reset();
    ReactionReport r = m.react();
    CHECK(!r.present("O"));  // the queued A is gone
  }
  SUBCASE("reset also clears an error") {
    Event x = out("X");
    Machine e(loop(emit(x)), {x});
    e.react();
    CHECK(e.status() == MachineStatus::errored);
    e.reset();
    CHECK(e.status() == MachineStatus::idle);
    CHECK(e.react().error.has_value());  // same program, same error again
  }
}

TEST_CASE("schedule seed shuffles par order without changing results") {
  Event a = in("A");
  Event b = out("B");
  Event c = out("C");
  Event d = out("D");
  auto build = [&] {
    return par(if_(now(b), emit(c)), if_(now(a), emit(b)),
               seq(await(now(a)), emit(d)));
  };
  Machine base(build(), {a, b, c, d});
  ReactionReport want = base.input_and_react(a);
  for (std::uint64_t seed : {1ull, 7ull, 99ull}) {
    Machine m(build(), {a, b, c, d});
    m.set_schedule_seed(seed);
    ReactionReport got = m.input_and_react(a);
    CHECK(names(got) == names(want));
    CHECK(got.terminated == want.terminated);
  }
}

TEST_CASE("local scopes") {
  SUBCASE("status resets on re-entry, value persists across reactions") {
    Event l = make_event("tmp", EventKind::local);
    Event w = out("W");
    Event o = out("O");
    Machine m(local(l, seq(emit(l, lit(1)), tempo::pause(),
                           if_(now(l), emit(w)), emit(o, val(l)))),
              {w, o});
    CHECK(names(m.react()).empty());
    ReactionReport r = m.react();
    CHECK(!r.present("W"));  // status did not persist
    CHECK(*r.value_of("O") == Value(1));
    CHECK(r.terminated);
  }
  SUBCASE("re-entering a local scope resets its value too") {
    Event l = make_event("tmp", EventKind::local);
    Event t = in("T");
    Event o = out("O");
    // Each iteration: first reaction sets no value, second reads it only
    // if this iteration emitted it.
    Machine m(loop(local(l, seq(if_(now(t), emit(l, lit(9))), tempo::pause(),
                                if_(pre(l), emit(o, preval(l)))))),
              {t, o});
    m.input_and_react(t);
    CHECK(m.react().present("O"));  // same scope instance: value visible
    CHECK(!m.react().present("O"));  // fresh instance: no value, pre false
  }
  SUBCASE("the same local event in nested scopes shadows itself") {
    Event l = make_event("L", EventKind::local);
    CHECK_THROWS_AS(Machine(local(l, local(l, nothing())), {}),
                    DuplicateEventError);
  }
}

TEST_CASE("abort differs from until exactly at the kill") {
  Event a = in("A");
  Event s = out("S");
  Event w = out("W");
  Machine m(par(abort(now(a), sustain(s)), until(now(a), sustain(w))),
            {a, s, w});
  ReactionReport r1 = m.react();
  CHECK(r1.present("S"));
  CHECK(r1.present("W"));
  ReactionReport r2 = m.input_and_react(a);
  CHECK(!r2.present("S"));  // strong: body never ran
  CHECK(r2.present("W"));   // weak: body ran one last time
  CHECK(r2.terminated);
}

TEST_CASE("paper-faithful abort does not terminate on body termination") {
  Event a = in("A");
  Event o = out("O");
  Machine m(seq(abort(now(a), nothing()), emit(o)), {a, o});
  ReactionReport r1 = m.react();
  CHECK(!r1.present("O"));
  CHECK(!r1.terminated);
  // Only the condition releases it.
  ReactionReport r2 = m.input_and_react(a);
  CHECK(r2.present("O"));
  CHECK(r2.terminated);
}

TEST_CASE("every restarts its body; loop_each also runs it at start") {
  Event r = in("R");
  Event b = out("B");
  SUBCASE("every") {
    Machine m(every(now(r), emit(b), halt()), {r, b});
    CHECK(!m.input_and_react(r).present("B"));  // start reaction not seen
    CHECK(m.input_and_react(r).present("B"));
    CHECK(!m.react().present("B"));
    CHECK(m.input_and_react(r).present("B"));
  }
  SUBCASE("loop_each") {
    Machine m(loop_each(now(r), emit(b), halt()), {r, b});
    CHECK(m.react().present("B"));  // body starts immediately
    CHECK(!m.react().present("B"));
    CHECK(m.input_and_react(r).present("B"));
  }
}

TEST_CASE("reports list each present output once, sorted by name") {
  Event b = out("B");
  Event a = out("A");
  Machine m(par(emit(b), emit(a), emit(b)), {b, a});
  ReactionReport rep = m.react();
  CHECK(names(rep) == std::vector<std::string>{"A", "B"});
}

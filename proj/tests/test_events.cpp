// Copyright 2026 The Tempo Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "tempo/events.hpp"

using namespace tempo;

namespace {

Value sum(const Value& a, const Value& b) {
  return Value(a.get<double>() + b.get<double>());
}

}  // namespace

TEST_CASE("event identity follows the constructor call, not the name") {
  Event a = make_event("A", EventKind::input);
  Event a2 = a;
  Event other = make_event("A", EventKind::input);
  CHECK(a == a2);
  CHECK(a != other);
  CHECK(a.name() == "A");
  CHECK(a.kind() == EventKind::input);
  CHECK(a.combiner() == nullptr);
  Event s = make_event("score", EventKind::local, sum);
  CHECK(s.combiner() != nullptr);
}

TEST_CASE("status reads: pre answers immediately, now blocks on unknown") {
  EventState st;
  st.status = Status::present;
  CHECK(read_status(st, StatusPhase::now) == true);
  st.status = Status::unknown;
  CHECK(!read_status(st, StatusPhase::now).has_value());
  st.pre_status = false;
  CHECK(read_status(st, StatusPhase::pre) == false);  // even while unknown
}

TEST_CASE("value reads: memorized across reactions, never-valued throws") {
  EventState st;
  CHECK_THROWS_AS(read_value(st, ValuePhase::preval), NoValueError);
  st.status = Status::present;
  CHECK_THROWS_AS(read_value(st, ValuePhase::val), NoValueError);

  combine_emission(st, Value(5), nullptr);
  CHECK(read_value(st, ValuePhase::val) == Value(5));
  end_reaction(st);
  begin_reaction(st);
  CHECK(!read_value(st, ValuePhase::val).has_value());  // undecided: blocked
  st.status = Status::absent;
  CHECK(read_value(st, ValuePhase::val) == Value(5));  // memorized
  CHECK(read_value(st, ValuePhase::preval) == Value(5));
}

TEST_CASE("emission combination") {
  SUBCASE("two valued emissions fold through the combiner") {
    EventState st;
    begin_reaction(st);
    Combiner c = sum;
    combine_emission(st, Value(2), &c);
    combine_emission(st, Value(3), &c);
    CHECK(st.status == Status::present);
    CHECK(read_value(st, ValuePhase::val) == Value(5));
  }
  SUBCASE("second valued emission without a combiner fails the reaction") {
    EventState st;
    begin_reaction(st);
    combine_emission(st, Value(2), nullptr);
    CHECK_THROWS_AS(combine_emission(st, Value(3), nullptr), ReactionAbort);
  }
  SUBCASE("presence-only emissions never conflict") {
    EventState st;
    begin_reaction(st);
    combine_emission(st, std::nullopt, nullptr);
    combine_emission(st, std::nullopt, nullptr);
    CHECK(st.status == Status::present);
    CHECK(st.emit_count == 2);
    CHECK(!st.value.has_value());
  }
  SUBCASE("presence-only emission keeps the previous value") {
    EventState st;
    begin_reaction(st);
    combine_emission(st, Value(7), nullptr);
    end_reaction(st);
    begin_reaction(st);
    combine_emission(st, std::nullopt, nullptr);
    CHECK(read_value(st, ValuePhase::val) == Value(7));
  }
  SUBCASE("valued emission after a val read fails the reaction") {
    EventState st;
    begin_reaction(st);
    Combiner c = sum;
    combine_emission(st, Value(1), &c);
    (void)read_value(st, ValuePhase::val);
    CHECK_THROWS_AS(combine_emission(st, Value(2), &c), ReactionAbort);
  }
}

TEST_CASE("reaction boundary snapshots pre from the final state") {
  EventState st;
  begin_reaction(st);
  combine_emission(st, Value(9), nullptr);
  end_reaction(st);
  CHECK(st.pre_status == true);
  CHECK(st.pre_value == Value(9));
  begin_reaction(st);
  st.status = Status::absent;
  end_reaction(st);
  CHECK(st.pre_status == false);
  CHECK(st.pre_value == Value(9));  // value persists while absent
}

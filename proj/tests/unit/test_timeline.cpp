#include "doctest.h"
#include "jseg/error.hpp"
#include "jseg/timeline.hpp"

using namespace jseg;

TEST_CASE("append merges equal neighbours and skips empty intervals") {
  StateTimeline tl;
  tl.append(0, 1000, GlobalState::Gps);
  tl.append(1000, 1000, GlobalState::Acc);
  tl.append(1000, 3000, GlobalState::Gps);
  tl.append(3000, 7000, GlobalState::Acc);
  REQUIRE(tl.intervals().size() == 2);
  CHECK(tl.intervals()[0] == TimelineInterval{0, 3000, GlobalState::Gps});
  CHECK(tl.start() == 0);
  CHECK(tl.end() == 7000);
  CHECK(tl.hours_in(GlobalState::Acc) == doctest::Approx(4.0 / 3600.0));
}

TEST_CASE("gaps, overlaps and inverted intervals are rejected") {
  StateTimeline tl;
  tl.append(0, 1000, GlobalState::Gps);
  CHECK_THROWS_AS(tl.append(1500, 2000, GlobalState::Acc), OrderingError);
  CHECK_THROWS_AS(tl.append(500, 2000, GlobalState::Acc), OrderingError);
  CHECK_THROWS_AS(tl.append(1000, 900, GlobalState::Acc), OrderingError);
}

TEST_CASE("state names round trip") {
  for (auto s : {GlobalState::Off, GlobalState::Gps, GlobalState::Acc}) CHECK(global_state_from(to_string(s)) == s);
  CHECK_FALSE(global_state_from("SLEEP"));
}

#include <algorithm>
#include <limits>

#include "doctest.h"
#include "jseg/controller.hpp"
#include "jseg/error.hpp"
#include "jseg/synth.hpp"
#include "jseg/validation.hpp"

using namespace jseg;
using M = LegMode;

namespace {

SyntheticTrace make(std::vector<Leg> legs, std::uint64_t seed = 11) {
  SyntheticScenario s;
  s.legs = std::move(legs);
  return generate_synthetic(s, seed);
}

void check_partition(const StateTimeline& tl, TimeMs start, TimeMs stop) {
  REQUIRE_FALSE(tl.empty());
  CHECK(tl.start() == start);
  CHECK(tl.end() == stop);
  const auto& iv = tl.intervals();
  for (std::size_t i = 1; i < iv.size(); ++i) {
    CHECK(iv[i].start == iv[i - 1].end);
    CHECK(iv[i].state != iv[i - 1].state);
  }
}

}  // namespace

TEST_CASE("without an idle timeout the controller is the base pipeline") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto tr = make({{M::Idle, 500, 0, 0},
                          {M::Walk, 200, 1.4, 10},
                          {M::Car, 300, 11, 80},
                          {M::Idle, 60, 0, 0},
                          {M::Car, 300, 11, 170},
                          {M::Indoor, 600, 0, 0}},
                         seed);
    ControllerParams p;
    p.idle_timeout_s = std::numeric_limits<double>::infinity();
    const TimeMs a = tr.bundle.first_t(), b = tr.bundle.last_t();
    const auto base = segment_trace(tr.bundle, a, b, p.gps, p.postproc);
    const auto ctl = run_controller(tr.bundle, a, b, p);
    REQUIRE(ctl.journeys.size() == base.journeys.size());
    for (std::size_t i = 0; i < base.journeys.size(); ++i) CHECK(ctl.journeys[i].points == base.journeys[i].points);
    CHECK(ctl.segment_count == base.segments.size());
    CHECK(ctl.wakeups.empty());
    REQUIRE(ctl.timeline.intervals().size() == 1);
    CHECK(ctl.timeline.intervals()[0].state == GlobalState::Gps);
  }
}

TEST_CASE("two hours without motion: GPS for the idle timeout, then accelerometer") {
  const auto tr = make({{M::Idle, 7200, 0, 0}});
  const TimeMs a = tr.bundle.first_t(), b = tr.bundle.last_t();
  const auto r = run_controller(tr.bundle, a, b, ControllerParams{});
  check_partition(r.timeline, a, b);
  const auto& iv = r.timeline.intervals();
  REQUIRE(iv.size() == 2);
  CHECK(iv[0].state == GlobalState::Gps);
  CHECK(iv[0].end - iv[0].start == doctest::Approx(300'000).epsilon(0.01));
  CHECK(iv[1].state == GlobalState::Acc);
  CHECK(r.journeys.empty());
  CHECK(r.wakeups.empty());
}

TEST_CASE("a walk between still periods wakes GPS and is detected") {
  const auto tr = make({{M::Idle, 900, 0, 0}, {M::Walk, 600, 1.4, 45}, {M::Idle, 900, 0, 0}});
  const TimeMs a = tr.bundle.first_t(), b = tr.bundle.last_t();
  const auto r = run_controller(tr.bundle, a, b, ControllerParams{});
  check_partition(r.timeline, a, b);
  REQUIRE(r.wakeups.size() >= 1);
  const TimeMs walk_start = tr.diary.at(0).start_t;
  CHECK(r.wakeups.front() >= walk_start);
  CHECK(r.wakeups.front() - walk_start <= 5'000);

  // Every wake-up happens on an accelerometer sample, where the motion detector decided.
  for (TimeMs w : r.wakeups) {
    CHECK(std::any_of(tr.bundle.accel.begin(), tr.bundle.accel.end(), [&](const AccelSample& s) { return s.t == w; }));
  }
  const auto report = validate_detection(r.journeys, tr.diary);
  CHECK(report.full == 1);

  std::vector<GlobalState> states;
  for (const auto& iv : r.timeline.intervals()) states.push_back(iv.state);
  CHECK(states == std::vector<GlobalState>{GlobalState::Gps, GlobalState::Acc, GlobalState::Gps, GlobalState::Acc});
}

TEST_CASE("reacquisition delay postpones use of fixes after a wake") {
  const auto tr = make({{M::Idle, 900, 0, 0}, {M::Walk, 600, 1.4, 45}, {M::Idle, 900, 0, 0}});
  const TimeMs a = tr.bundle.first_t(), b = tr.bundle.last_t();
  ControllerParams p;
  p.reacquisition_delay_s = 30;
  const auto r = run_controller(tr.bundle, a, b, p);
  REQUIRE_FALSE(r.journeys.empty());
  REQUIRE_FALSE(r.wakeups.empty());
  CHECK(r.journeys.front().start_t >= r.wakeups.front() + 30'000);
}

TEST_CASE("sub-range session and input checks") {
  const auto tr = make({{M::Idle, 900, 0, 0}});
  const TimeMs a = tr.bundle.first_t();
  const auto r = run_controller(tr.bundle, a + 60'000, a + 600'000, ControllerParams{});
  check_partition(r.timeline, a + 60'000, a + 600'000);

  CHECK_THROWS_AS(run_controller(tr.bundle, a + 10, a, ControllerParams{}), InvalidInput);

  auto bad = tr.bundle;
  std::swap(bad.accel[3], bad.accel[4]);
  CHECK_THROWS_AS(run_controller(bad, a, tr.bundle.last_t(), ControllerParams{}), OrderingError);

  ControllerParams neg;
  neg.idle_timeout_s = -1;
  CHECK_THROWS_AS(neg.validate(), InvalidInput);
}

TEST_CASE("controller output is deterministic") {
  const auto tr = make({{M::Idle, 600, 0, 0}, {M::Walk, 400, 1.4, 0}, {M::Car, 400, 10, 90}, {M::Indoor, 900, 0, 0}});
  const TimeMs a = tr.bundle.first_t(), b = tr.bundle.last_t();
  const auto r1 = run_controller(tr.bundle, a, b, ControllerParams{});
  const auto r2 = run_controller(tr.bundle, a, b, ControllerParams{});
  CHECK(r1.timeline.intervals() == r2.timeline.intervals());
  CHECK(r1.wakeups == r2.wakeups);
  REQUIRE(r1.journeys.size() == r2.journeys.size());
  for (std::size_t i = 0; i < r1.journeys.size(); ++i) CHECK(r1.journeys[i].points == r2.journeys[i].points);
}

#include <algorithm>
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "jseg/error.hpp"
#include "jseg/synth.hpp"
#include "jseg/trace_io.hpp"
#include "oracles.hpp"

using namespace jseg;
using M = LegMode;

namespace {

std::string dump(const TraceBundle& b) {
  std::ostringstream o;
  write_gps_csv(o, b);
  write_accel_csv(o, b.accel);
  return o.str();
}

}  // namespace

TEST_CASE("idle scenario: empty diary, jitter within a few sigma") {
  SyntheticScenario s;
  s.legs = {{M::Idle, 1800, 0, 0}};
  const auto tr = generate_synthetic(s, 1);
  CHECK(tr.diary.empty());
  REQUIRE(tr.bundle.gps.size() == 900);
  const double coslat = std::cos(s.origin.lat * oracle::kPi / 180.0);
  for (const auto& f : tr.bundle.gps) {
    CHECK(std::abs(f.lat - s.origin.lat) <= 5 * s.noise.sigma_deg);
    CHECK(std::abs(f.lon - s.origin.lon) * coslat <= 5 * s.noise.sigma_deg);
  }
  for (const auto& st : tr.bundle.sat_status) CHECK(st.sats >= 5);
}

TEST_CASE("walk then indoor: one diary entry and a satellite drop") {
  SyntheticScenario s;
  s.legs = {{M::Walk, 430, 1.4, 90}, {M::Indoor, 600, 0, 0}};
  const auto tr = generate_synthetic(s, 2);
  REQUIRE(tr.diary.size() == 1);
  CHECK(tr.diary[0].start_t == s.start_t);
  CHECK(tr.diary[0].end_t == s.start_t + 430'000);
  CHECK(tr.truth_extent_m.at(0) == doctest::Approx(602.0).epsilon(0.01));
  for (const auto& f : tr.bundle.gps) CHECK(f.t <= tr.diary[0].end_t);
  const auto after = std::find_if(tr.bundle.sat_status.begin(), tr.bundle.sat_status.end(),
                                  [&](const SatelliteStatus& st) { return st.t > tr.diary[0].end_t; });
  REQUIRE(after != tr.bundle.sat_status.end());
  CHECK(after->sats < 5);
}

TEST_CASE("sampling rates and ordering") {
  const auto tr = generate_synthetic(preset_scenario("car"), 3);
  const auto& b = tr.bundle;
  CHECK_NOTHROW(b.validate());
  for (std::size_t i = 1; i < b.gps.size(); ++i) CHECK(b.gps[i].t - b.gps[i - 1].t >= 2000);
  for (std::size_t i = 1; i < b.accel.size(); ++i) CHECK(b.accel[i].t - b.accel[i - 1].t == 200);
  CHECK(b.metadata.gps_rate_hz == 0.5);
  CHECK(b.metadata.accel_rate_hz == 5.0);
}

TEST_CASE("tunnels produce no rows, diary spans through them") {
  SyntheticScenario s;
  s.legs = {{M::Car, 200, 10, 0}, {M::Tunnel, 30, 10, 0}, {M::Car, 200, 10, 0}, {M::Idle, 300, 0, 0}};
  const auto tr = generate_synthetic(s, 4);
  REQUIRE(tr.diary.size() == 1);
  CHECK(tr.diary[0].end_t - tr.diary[0].start_t == 430'000);
  const TimeMs a = s.start_t + 200'000, b = s.start_t + 230'000;
  for (const auto& f : tr.bundle.gps) CHECK((f.t <= a || f.t >= b));
}

TEST_CASE("same seed gives identical output, different seeds differ") {
  const auto s = preset_scenario("walk");
  CHECK(dump(generate_synthetic(s, 7).bundle) == dump(generate_synthetic(s, 7).bundle));
  CHECK(dump(generate_synthetic(s, 7).bundle) != dump(generate_synthetic(s, 8).bundle));
}

TEST_CASE("scenario JSON round trip and validation") {
  for (const auto& name : preset_scenario_names()) {
    const auto s = preset_scenario(name);
    const auto back = scenario_from_json(scenario_to_json(s));
    CHECK(scenario_to_json(back) == scenario_to_json(s));
    CHECK(dump(generate_synthetic(back, 1).bundle) == dump(generate_synthetic(s, 1).bundle));
  }
  CHECK_THROWS_AS(preset_scenario("moon"), InvalidInput);
  CHECK_THROWS(scenario_from_json("{\"legs\": [{\"mode\": \"fly\", \"duration_s\": 10}]}"));
  SyntheticScenario empty;
  CHECK_THROWS_AS(empty.validate(), InvalidInput);
}

TEST_CASE("day preset is sixteen hours with four journeys") {
  const auto s = preset_scenario("day");
  CHECK(s.end_t() - s.start_t == 16 * 3'600'000);
  CHECK(generate_synthetic(s, 1).diary.size() == 4);
}

TEST_CASE("suite scenarios are varied and valid") {
  const auto suite = scenario_suite(1, 12);
  REQUIRE(suite.size() == 12);
  for (const auto& s : suite) {
    CHECK_NOTHROW(s.validate());
    CHECK((s.legs.front().mode == M::Idle || s.legs.front().mode == M::Indoor));
  }
  CHECK(scenario_to_json(scenario_suite(1, 3)[2]) == scenario_to_json(suite[2]));
}

#include <cmath>
#include <random>

#include "doctest.h"
#include "jseg/error.hpp"
#include "jseg/power.hpp"
#include "oracles.hpp"

using namespace jseg;

namespace {

constexpr TimeMs kHour = 3'600'000;

StateTimeline single(GlobalState s, double hours) {
  StateTimeline tl;
  tl.append(0, static_cast<TimeMs>(hours * kHour), s);
  return tl;
}

}  // namespace

TEST_CASE("presets carry the measured discharge rates") {
  const auto t1 = profile_preset("T1");
  CHECK(t1.idle_rate == 1.79);
  CHECK(t1.accel_rate == 6.71);
  CHECK(t1.gps_rate == 20.13);
  const auto t2 = profile_preset("T2");
  CHECK(t2.idle_rate == 1.06);
  CHECK(t2.accel_rate == 3.22);
  CHECK(t2.gps_rate == 10.22);
  const auto s1 = profile_preset("S1");
  CHECK(s1.idle_rate == 5.02);
  CHECK(s1.accel_rate == 6.70);
  CHECK(s1.gps_rate == 47.97);
  const auto s2 = profile_preset("S2");
  CHECK(s2.idle_rate == 2.17);
  CHECK(s2.accel_rate == 7.42);
  CHECK(s2.gps_rate == 28.26);
  CHECK_THROWS_AS(profile_preset("X9"), InvalidInput);
  for (const auto& name : profile_preset_names()) CHECK_NOTHROW(profile_preset(name).validate());
}

TEST_CASE("profile validation and multiplier") {
  PowerProfile p{"x", 2.0, 1.0, 3.0, 1.0};
  CHECK_THROWS_AS(p.validate(), InvalidInput);
  auto q = profile_preset("T2");
  q.gps_multiplier = 1.3;
  CHECK(q.rate(GlobalState::Gps) == doctest::Approx(10.22 * 1.3));
  CHECK(q.rate(GlobalState::Off) == q.idle_rate);
}

TEST_CASE("simulate_battery") {
  const auto t2 = profile_preset("T2");
  SUBCASE("10 h of GPS on T2 runs flat") {
    const auto c = simulate_battery(single(GlobalState::Gps, 10), t2);
    CHECK(c.points.back().level == 0.0);
    CHECK(c.points.back().t == 10 * kHour);
  }
  SUBCASE("10 h idle on T2 leaves 89.4 %") {
    const auto c = simulate_battery(single(GlobalState::Off, 10), t2);
    CHECK(c.points.back().level == doctest::Approx(89.4).epsilon(1e-12));
  }
  SUBCASE("empty timeline keeps the start level") {
    const auto c = simulate_battery(StateTimeline{}, t2, 77.0);
    REQUIRE_FALSE(c.points.empty());
    CHECK(c.points.back().level == 77.0);
  }
  SUBCASE("samples every minute and at every state change, never increasing") {
    StateTimeline tl;
    tl.append(0, 90'000, GlobalState::Gps);
    tl.append(90'000, 200'000, GlobalState::Acc);
    const auto c = simulate_battery(tl, t2);
    std::vector<TimeMs> ts;
    for (const auto& p : c.points) ts.push_back(p.t);
    CHECK(ts == std::vector<TimeMs>{0, 60'000, 90'000, 120'000, 180'000, 200'000});
    for (std::size_t i = 1; i < c.points.size(); ++i) CHECK(c.points[i].level <= c.points[i - 1].level);
  }
  SUBCASE("additive over concatenation") {
    StateTimeline a, b, ab;
    a.append(0, 2 * kHour, GlobalState::Gps);
    b.append(2 * kHour, 5 * kHour, GlobalState::Acc);
    ab.append(0, 2 * kHour, GlobalState::Gps);
    ab.append(2 * kHour, 5 * kHour, GlobalState::Acc);
    const double after_a = simulate_battery(a, t2).points.back().level;
    const double after_b = simulate_battery(b, t2, after_a).points.back().level;
    CHECK(simulate_battery(ab, t2).points.back().level == doctest::Approx(after_b).epsilon(1e-12));
    CHECK(consumption(ab, t2) == doctest::Approx(consumption(a, t2) + consumption(b, t2)));
  }
  SUBCASE("fit on a single-state curve recovers the state rate") {
    for (auto s : {GlobalState::Off, GlobalState::Acc, GlobalState::Gps}) {
      const auto c = simulate_battery(single(s, 3), t2);
      CHECK(c.fit.linear_rate == doctest::Approx(t2.rate(s)).epsilon(1e-6));
    }
  }
}

TEST_CASE("fit_discharge") {
  SUBCASE("exact line for T1 idle") {
    std::vector<BatteryPoint> pts;
    for (int i = 0; i <= 40; ++i) pts.push_back({i * 15 * 60'000, 100.0 - 1.79 * i * 0.25});
    const auto f = fit_discharge(pts);
    CHECK(f.linear_rate == doctest::Approx(1.79).epsilon(1e-9));
    CHECK(std::abs(f.quad_coeff) < 1e-9);
    CHECK(f.intercept == doctest::Approx(100.0));
  }
  SUBCASE("constant level") {
    std::vector<BatteryPoint> pts{{0, 50}, {kHour, 50}, {2 * kHour, 50}, {3 * kHour, 50}};
    const auto f = fit_discharge(pts);
    CHECK(f.linear_rate == doctest::Approx(0.0).scale(1.0));
  }
  SUBCASE("quadratic data agrees with the normal-equations oracle") {
    std::mt19937_64 rng(8);
    std::normal_distribution<double> noise(0.0, 0.3);
    std::vector<BatteryPoint> pts;
    std::vector<double> x, y;
    const TimeMs t0 = 1'600'000'000'000;
    for (int i = 0; i < 60; ++i) {
      const double h = i / 6.0;
      const double level = 95.0 - 3.1 * h + 0.07 * h * h + noise(rng);
      pts.push_back({t0 + static_cast<TimeMs>(h * kHour), level});
      x.push_back(static_cast<double>(pts.back().t - t0) / kHour);
      y.push_back(level);
    }
    const auto c = oracle::quadratic_fit(x, y);
    const auto f = fit_discharge(pts);
    CHECK(f.intercept == doctest::Approx(c[0]).epsilon(1e-9));
    CHECK(f.linear_rate == doctest::Approx(std::abs(c[1])).epsilon(1e-9));
    CHECK(f.quad_coeff == doctest::Approx(c[2]).epsilon(1e-9));
  }
  SUBCASE("fewer than three samples") {
    std::vector<BatteryPoint> pts{{0, 100}, {kHour, 99}};
    CHECK_THROWS_AS(fit_discharge(pts), InsufficientData);
  }
}

TEST_CASE("compare_savings") {
  const auto s2 = profile_preset("S2");
  SUBCASE("identical timelines save nothing") {
    const auto tl = single(GlobalState::Gps, 4);
    CHECK(compare_savings(tl, tl, s2) == doctest::Approx(0.0));
  }
  SUBCASE("2 h GPS + 10 h accelerometer against 12 h GPS on S2") {
    StateTimeline aware;
    aware.append(0, 2 * kHour, GlobalState::Gps);
    aware.append(2 * kHour, 12 * kHour, GlobalState::Acc);
    const double expected = 1.0 - (2 * 28.26 + 10 * 7.42) / (12 * 28.26);
    const double got = compare_savings(aware, single(GlobalState::Gps, 12), s2);
    CHECK(got == doctest::Approx(expected).epsilon(1e-12));
    CHECK(got == doctest::Approx(0.614).epsilon(1e-3));
  }
  SUBCASE("all idle") {
    CHECK(compare_savings(single(GlobalState::Off, 5), single(GlobalState::Gps, 5), s2) ==
          doctest::Approx(1.0 - 2.17 / 28.26));
  }
  SUBCASE("mismatched spans") {
    CHECK_THROWS_AS(compare_savings(single(GlobalState::Gps, 5), single(GlobalState::Gps, 6), s2), InvalidInput);
  }
}

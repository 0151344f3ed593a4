#include "doctest.h"
#include "jseg/error.hpp"
#include "jseg/validation.hpp"

using namespace jseg;

namespace {

constexpr TimeMs kMin = 60'000;

Journey journey(TimeMs a, TimeMs b) {
  return Journey::from_points({{a, 0.0, 0.0}, {(a + b) / 2, 0.0, 0.001}, {b, 0.0, 0.002}});
}

}  // namespace

TEST_CASE("exact journey is fully detected with zero error") {
  const std::vector<Journey> det{journey(10 * kMin, 30 * kMin)};
  const std::vector<DiaryEntry> truth{{10 * kMin, 30 * kMin}};
  const auto r = validate_detection(det, truth);
  REQUIRE(r.entries.size() == 1);
  CHECK(r.entries[0].result == DetectionClass::Full);
  CHECK(r.entries[0].start_error_s == 0.0);
  CHECK(r.entries[0].end_error_s == 0.0);
  CHECK(r.full_fraction == 1.0);
}

TEST_CASE("tolerance boundaries") {
  const std::vector<DiaryEntry> truth{{10 * kMin, 30 * kMin}};
  const std::vector<Journey> late{journey(11 * kMin, 29 * kMin)};
  CHECK(validate_detection(late, truth).full == 1);
  const std::vector<Journey> later{journey(11 * kMin + 1, 29 * kMin)};
  CHECK(validate_detection(later, truth).clipped == 1);
  CHECK(validate_detection(later, truth, 61.0).full == 1);
}

TEST_CASE("last half only is clipped, disjoint is missed") {
  const std::vector<DiaryEntry> truth{{10 * kMin, 30 * kMin}};
  const std::vector<Journey> half{journey(20 * kMin, 30 * kMin)};
  const auto r = validate_detection(half, truth);
  CHECK(r.entries[0].result == DetectionClass::Clipped);
  CHECK(r.entries[0].start_error_s == doctest::Approx(600.0));
  const std::vector<Journey> off{journey(40 * kMin, 50 * kMin)};
  CHECK(validate_detection(off, truth).entries[0].result == DetectionClass::Missed);
}

TEST_CASE("fractions over a ten-entry diary") {
  std::vector<DiaryEntry> truth;
  std::vector<Journey> det;
  for (int i = 0; i < 10; ++i) {
    const TimeMs a = i * 60 * kMin, b = a + 20 * kMin;
    truth.push_back({a, b});
    if (i < 8) det.push_back(journey(a, b));
    else if (i == 8) det.push_back(journey(a + 10 * kMin, b));
  }
  const auto r = validate_detection(det, truth);
  CHECK(r.full == 8);
  CHECK(r.clipped == 1);
  CHECK(r.missed == 1);
  CHECK(r.full_fraction == doctest::Approx(0.8));
  CHECK(r.clipped_fraction + r.missed_fraction + r.full_fraction == doctest::Approx(1.0));
  CHECK(r.entries[3].match == 3u);
  CHECK_FALSE(r.entries[9].match);
}

TEST_CASE("empty diary and bad diaries") {
  const std::vector<Journey> det{journey(0, kMin)};
  const auto r = validate_detection(det, std::vector<DiaryEntry>{});
  CHECK(r.entries.empty());
  CHECK(r.full_fraction == 0.0);
  const std::vector<DiaryEntry> overlap{{0, 10 * kMin}, {5 * kMin, 20 * kMin}};
  CHECK_THROWS_AS(validate_detection(det, overlap), InvalidInput);
  const std::vector<DiaryEntry> inverted{{10 * kMin, 0}};
  CHECK_THROWS_AS(validate_detection(det, inverted), InvalidInput);
  CHECK(std::string(to_string(DetectionClass::Clipped)) == "clipped");
}

#include <random>

#include "doctest.h"
#include "jseg/downsampler.hpp"
#include "jseg/error.hpp"

using namespace jseg;

namespace {

LocationSample fix(TimeMs t, double lat, double lon) { return {t, lat, lon, 10}; }

/// Mean position of raw[first, first + n).
LatLon block_mean(const LocationSeq& raw, std::size_t first, std::size_t n) {
  double lat = 0.0, lon = 0.0;
  for (std::size_t i = first; i < first + n; ++i) {
    lat += raw[i].lat;
    lon += raw[i].lon;
  }
  return {lat / static_cast<double>(n), lon / static_cast<double>(n)};
}

LocationSeq noisy_trace(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d(0.0, 1e-4);
  LocationSeq out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(fix(static_cast<TimeMs>(i) * 2000, 35.9 + d(rng), 14.5 + d(rng)));
  return out;
}

}  // namespace

TEST_CASE("third push emits the arithmetic mean") {
  Downsampler ds(3);
  CHECK_FALSE(ds.push(fix(0, 0, 0)));
  CHECK_FALSE(ds.push(fix(2000, 0, 0.0003)));
  const auto w = ds.push(fix(4000, 0, 0.0006));
  REQUIRE(w);
  CHECK(w->pos.lat == 0.0);
  CHECK(w->pos.lon == doctest::Approx(0.0003));
  CHECK(w->t == 4000);
  CHECK(w->complete);
  CHECK(w->raw_span == RawSpan{0, 2});
  CHECK(w->samples.size() == 3);
}

TEST_CASE("two pushes do not emit") {
  Downsampler ds(3);
  CHECK_FALSE(ds.push(fix(0, 0, 0)));
  CHECK_FALSE(ds.push(fix(1, 0, 0)));
  CHECK(ds.buffered() == 2);
}

TEST_CASE("nine samples give three blocked means") {
  const auto raw = noisy_trace(9, 1);
  Downsampler ds(3);
  std::vector<WindowPoint> out;
  for (const auto& f : raw) {
    if (auto w = ds.push(f)) out.push_back(*w);
  }
  REQUIRE(out.size() == 3);
  for (std::size_t k = 0; k < 3; ++k) {
    const auto m = block_mean(raw, 3 * k, 3);
    CHECK(out[k].pos.lat == doctest::Approx(m.lat).epsilon(1e-14));
    CHECK(out[k].pos.lon == doctest::Approx(m.lon).epsilon(1e-14));
    CHECK(out[k].raw_span == RawSpan{3 * k, 3 * k + 2});
    CHECK(out[k].t == raw[3 * k + 2].t);
  }
}

TEST_CASE("flush") {
  SUBCASE("partial window of two") {
    Downsampler ds(3);
    ds.push(fix(0, 1, 1));
    ds.push(fix(10, 3, 5));
    const auto w = ds.flush();
    REQUIRE(w);
    CHECK_FALSE(w->complete);
    CHECK(w->pos == LatLon{2, 3});
    CHECK(w->raw_span.size() == 2);
    CHECK(ds.buffered() == 0);
  }
  SUBCASE("empty buffer") {
    Downsampler ds(3);
    CHECK_FALSE(ds.flush());
  }
  SUBCASE("flush after every group of four") {
    const auto raw = noisy_trace(12, 2);
    Downsampler ds(3);
    std::vector<WindowPoint> out;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (auto w = ds.push(raw[i])) out.push_back(*w);
      if (i % 4 == 3) {
        if (auto w = ds.flush()) out.push_back(*w);
      }
    }
    REQUIRE(out.size() == 6);
    for (std::size_t g = 0; g < 3; ++g) {
      const auto& full = out[2 * g];
      const auto& part = out[2 * g + 1];
      CHECK(full.complete);
      CHECK_FALSE(part.complete);
      const auto mf = block_mean(raw, 4 * g, 3);
      const auto mp = block_mean(raw, 4 * g + 3, 1);
      CHECK(full.pos.lat == doctest::Approx(mf.lat).epsilon(1e-14));
      CHECK(part.pos.lon == doctest::Approx(mp.lon).epsilon(1e-14));
    }
  }
}

TEST_CASE("ordering is enforced") {
  Downsampler ds(3);
  ds.push(fix(100, 0, 0));
  CHECK_THROWS_AS(ds.push(fix(100, 0, 0)), OrderingError);
  CHECK_THROWS_AS(ds.push(fix(50, 0, 0)), OrderingError);
}

TEST_CASE("W = 1 is the identity stream") {
  const auto raw = noisy_trace(20, 3);
  Downsampler ds(1);
  for (const auto& f : raw) {
    const auto w = ds.push(f);
    REQUIRE(w);
    CHECK(w->pos == f.pos());
    CHECK(w->t == f.t);
  }
}

TEST_CASE("complete window count and mean of means over random lengths") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 60;
    const std::size_t w = 1 + rng() % 6;
    const auto raw = noisy_trace(n, rng());
    Downsampler ds(w);
    std::vector<WindowPoint> out;
    for (const auto& f : raw) {
      if (auto p = ds.push(f)) out.push_back(*p);
    }
    CHECK(out.size() == n / w);
    if (out.empty()) continue;
    double lat_w = 0.0;
    for (const auto& p : out) lat_w += p.pos.lat;
    const auto covered = block_mean(raw, 0, out.size() * w);
    CHECK(lat_w / static_cast<double>(out.size()) == doctest::Approx(covered.lat).epsilon(1e-12));
  }
}

TEST_CASE("zero window is rejected") { CHECK_THROWS_AS(Downsampler(0), InvalidInput); }

#include <filesystem>
#include <functional>
#include <sstream>

#include "doctest.h"
#include "jseg/error.hpp"
#include "jseg/synth.hpp"
#include "jseg/trace_io.hpp"

using namespace jseg;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("jseg_test_trace_io_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::size_t parse_error_line(const std::function<void()>& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("three-line GPS file") {
  std::istringstream in("t_ms,lat,lon,sats\n0,35.9,14.5,9\n2000,35.90001,14.5,8\n4000,35.90002,14.5,\n");
  TraceBundle b;
  read_gps_csv(in, "g.csv", b);
  REQUIRE(b.gps.size() == 3);
  CHECK(b.gps[1].t == 2000);
  CHECK(b.gps[1].lat == 35.90001);
  CHECK(b.gps[1].sats == 8);
  CHECK_FALSE(b.gps[2].sats);
  CHECK(b.sat_status.empty());
}

TEST_CASE("status-only rows and range errors") {
  std::istringstream in("t_ms,lat,lon,sats\n0,,,2\n\n2000,1,2,7\n");
  TraceBundle b;
  read_gps_csv(in, "g.csv", b);
  CHECK(b.gps.size() == 1);
  REQUIRE(b.sat_status.size() == 1);
  CHECK(b.gps[0].sats == 7);
  CHECK(b.sat_status[0] == SatelliteStatus{0, 2});

  std::istringstream bad("t_ms,lat,lon,sats\n0,1,2,9\n2000,95,14.5,9\n");
  TraceBundle c;
  try {
    read_gps_csv(bad, "bad.csv", c);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("lat") != std::string::npos);
    CHECK(std::string(e.what()).find("bad.csv:3") != std::string::npos);
  }
  std::istringstream lon("t_ms,lat,lon,sats\n0,1,181,9\n");
  CHECK_THROWS_AS(read_gps_csv(lon, "x", c), ParseError);
}

TEST_CASE("malformed input carries the line number") {
  CHECK(parse_error_line([] {
          std::istringstream in("t_ms,ax,ay,az\n0,1,2,3\n200,1,x,3\n");
          read_accel_csv(in, "a");
        }) == 3);
  CHECK(parse_error_line([] {
          std::istringstream in("time,ax,ay,az\n");
          read_accel_csv(in, "a");
        }) == 1);
  CHECK(parse_error_line([] {
          std::istringstream in("start_ms,end_ms\n0,10\n20\n");
          read_diary_csv(in, "d");
        }) == 3);
  std::istringstream unordered("t_ms,level_pct\n0,100\n0,99\n");
  CHECK_THROWS_AS(read_battery_csv(unordered, "b"), OrderingError);
}

TEST_CASE("CSV round trips") {
  const auto syn = generate_synthetic(preset_scenario("walk"), 4);
  const auto& b = syn.bundle;

  std::ostringstream g;
  write_gps_csv(g, b);
  std::istringstream gi(g.str());
  TraceBundle back;
  read_gps_csv(gi, "g", back);
  CHECK(back.gps == b.gps);
  CHECK(back.sat_status == b.sat_status);

  std::ostringstream a;
  write_accel_csv(a, b.accel);
  std::istringstream ai(a.str());
  CHECK(read_accel_csv(ai, "a") == b.accel);

  const std::vector<Ping> pings{{1000, "start"}, {5000, "stop"}};
  std::ostringstream p;
  write_pings_csv(p, pings);
  std::istringstream pi(p.str());
  CHECK(read_pings_csv(pi, "p") == pings);

  std::ostringstream d;
  write_diary_csv(d, syn.diary);
  std::istringstream di(d.str());
  CHECK(read_diary_csv(di, "d") == syn.diary);
}

TEST_CASE("timeline round trip") {
  StateTimeline tl;
  tl.append(1000, 61'000, GlobalState::Gps);
  tl.append(61'000, 3'600'500, GlobalState::Acc);
  std::ostringstream o;
  write_timeline_csv(o, tl);
  CHECK(o.str().rfind("t_seconds,state\n", 0) == 0);
  std::istringstream i(o.str());
  CHECK(read_timeline_csv(i, "t").intervals() == tl.intervals());
}

TEST_CASE("battery CSV ignores voltage") {
  std::istringstream in("t_ms,level_pct,voltage_mv\n0,100,4100\n60000,99.5,4090\n");
  const auto pts = read_battery_csv(in, "b");
  REQUIRE(pts.size() == 2);
  CHECK(pts[1].level == 99.5);
}

TEST_CASE("journeys JSON round trip") {
  const std::vector<Journey> js{
      Journey::from_points({{0, 35.9, 14.5}, {2000, 35.9001, 14.5001}, {4000, 35.9002, 14.5003}}),
      Journey::from_points({{100'000, -33.1, 151.2}, {102'000, -33.1001, 151.2}})};
  const auto back = journeys_from_json(journeys_to_json(js), "j");
  REQUIRE(back.size() == 2);
  for (std::size_t i = 0; i < js.size(); ++i) {
    CHECK(back[i].points == js[i].points);
    CHECK(back[i].path_length == doctest::Approx(js[i].path_length));
  }
  CHECK_THROWS_AS(journeys_from_json("{not json", "j"), ParseError);
}

TEST_CASE("trace directory and single-file loading") {
  const auto syn = generate_synthetic(preset_scenario("walk"), 5);
  const auto dir = scratch("dir");
  save_trace(syn.bundle, dir / "t");
  const auto back = load_trace(dir / "t");
  CHECK(back.gps == syn.bundle.gps);
  CHECK(back.accel == syn.bundle.accel);
  CHECK(back.metadata.device_id == syn.bundle.metadata.device_id);

  const auto gps_only = load_trace(dir / "t" / "gps.csv");
  CHECK(gps_only.gps == syn.bundle.gps);
  CHECK(gps_only.accel.empty());
  const auto accel_only = load_trace(dir / "t" / "accel.csv");
  CHECK(accel_only.accel == syn.bundle.accel);

  CHECK_THROWS_AS(load_trace(dir / "missing"), Error);
  write_text_file(dir / "junk.csv", "a,b\n1,2\n");
  CHECK_THROWS_AS(load_trace(dir / "junk.csv"), ParseError);
  fs::remove_all(dir);
}

TEST_CASE("labelled corpus round trip") {
  std::vector<LabeledAccelRun> runs;
  std::vector<std::vector<AccelSample>> raw;
  for (int r = 0; r < 2; ++r) {
    std::vector<AccelSample> samples;
    for (int i = 0; i < 20; ++i) samples.push_back({i * 200, 0.1 * r, 0.2, 9.81 + i % 3});
    LabeledAccelRun run{"run" + std::to_string(r), {}, r == 0, r == 0 ? std::optional<TimeMs>(600) : std::nullopt};
    for (const auto& s : samples) run.samples.push_back(filter_accel(s));
    runs.push_back(run);
    raw.push_back(samples);
  }
  const auto dir = scratch("labels");
  save_labeled_runs(runs, raw, dir);
  const auto back = load_labeled_runs(dir);
  REQUIRE(back.size() == 2);
  CHECK(back[0].motion);
  CHECK(back[0].onset == 600);
  CHECK_FALSE(back[1].onset);
  REQUIRE(back[1].samples.size() == 20);
  CHECK(back[1].samples[5].mag_dev == doctest::Approx(runs[1].samples[5].mag_dev));
  fs::remove_all(dir);
}

TEST_CASE("format_double is shortest round trip") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(35.90001) == "35.90001");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

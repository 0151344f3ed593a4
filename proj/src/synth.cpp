#include "jseg/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "json.hpp"
#include "jseg/error.hpp"

namespace jseg {

using nlohmann::json;

std::string_view to_string(LegMode m) {
  switch (m) {
    case LegMode::Walk: return "walk";
    case LegMode::Car: return "car";
    case LegMode::Idle: return "idle";
    case LegMode::Tunnel: return "tunnel";
    case LegMode::Indoor: return "indoor";
  }
  return "?";
}

LegMode leg_mode_from(std::string_view s) {
  for (auto m : {LegMode::Walk, LegMode::Car, LegMode::Idle, LegMode::Tunnel, LegMode::Indoor}) {
    if (to_string(m) == s) return m;
  }
  throw InvalidInput("unknown leg mode '" + std::string(s) + "'");
}

TimeMs SyntheticScenario::end_t() const {
  double total = 0.0;
  for (const auto& l : legs) total += l.duration_s;
  return start_t + static_cast<TimeMs>(std::llround(total * 1000.0));
}

void SyntheticScenario::validate() const {
  if (!valid_position(origin)) throw InvalidInput("scenario: origin out of range");
  if (legs.empty()) throw InvalidInput("scenario: no legs");
  if (gps_period_ms <= 0 || accel_period_ms <= 0) throw InvalidInput("scenario: periods must be positive");
  if (!(noise.sigma_deg >= 0.0) || !(noise.jump_prob >= 0.0 && noise.jump_prob <= 1.0) || !(noise.jump_m >= 0.0))
    throw InvalidInput("scenario: bad noise parameters");
  for (const auto& l : legs) {
    if (!(l.duration_s >= 0.0)) throw InvalidInput("scenario: leg duration must be >= 0");
    if (!(l.speed_mps >= 0.0)) throw InvalidInput("scenario: leg speed must be >= 0");
  }
}

namespace {

bool in_journey(LegMode m) { return m == LegMode::Walk || m == LegMode::Car || m == LegMode::Tunnel; }
bool moves(LegMode m) { return in_journey(m); }

LatLon offset(const LatLon& p, double dist_m, double heading_deg) {
  const double h = heading_deg * std::numbers::pi / 180.0;
  const double dlat = dist_m * std::cos(h) / kEarthRadiusM;
  const double dlon = dist_m * std::sin(h) / (kEarthRadiusM * std::cos(p.lat * std::numbers::pi / 180.0));
  return {p.lat + dlat * 180.0 / std::numbers::pi, p.lon + dlon * 180.0 / std::numbers::pi};
}

struct LegSpan {
  TimeMs start;
  TimeMs end;
  LatLon from;
  const Leg* leg;
};

std::vector<LegSpan> lay_out(const SyntheticScenario& s) {
  std::vector<LegSpan> spans;
  double elapsed = 0.0;
  LatLon pos = s.origin;
  for (const auto& l : s.legs) {
    const TimeMs a = s.start_t + static_cast<TimeMs>(std::llround(elapsed * 1000.0));
    elapsed += l.duration_s;
    const TimeMs b = s.start_t + static_cast<TimeMs>(std::llround(elapsed * 1000.0));
    spans.push_back({a, b, pos, &l});
    if (moves(l.mode)) pos = offset(pos, l.speed_mps * l.duration_s, l.heading_deg);
  }
  return spans;
}

LatLon true_position(const LegSpan& span, TimeMs t) {
  if (!moves(span.leg->mode)) return span.from;
  return offset(span.from, span.leg->speed_mps * seconds_between(span.start, t), span.leg->heading_deg);
}

}  // namespace

SyntheticTrace generate_synthetic(const SyntheticScenario& s, std::uint64_t seed) {
  s.validate();
  const auto spans = lay_out(s);
  const TimeMs end = s.end_t();
  // Separate streams keep GPS draws independent of the accelerometer rate.
  std::mt19937_64 gps_rng(seed);
  std::mt19937_64 acc_rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::uniform_int_distribution<int> sats_out(9, 12);
  std::uniform_int_distribution<int> sats_in(0, 2);

  SyntheticTrace out;
  out.bundle.metadata = {s.device_id, 1000.0 / static_cast<double>(s.gps_period_ms),
                         1000.0 / static_cast<double>(s.accel_period_ms)};

  auto span_at = [&](TimeMs t) -> const LegSpan* {
    auto it = std::upper_bound(spans.begin(), spans.end(), t, [](TimeMs v, const LegSpan& sp) { return v < sp.end; });
    return it == spans.end() ? nullptr : &*it;
  };

  for (TimeMs t = s.start_t; t < end; t += s.gps_period_ms) {
    const auto* sp = span_at(t);
    if (!sp) break;
    switch (sp->leg->mode) {
      case LegMode::Tunnel: break;
      case LegMode::Indoor: out.bundle.sat_status.push_back({t, sats_in(gps_rng)}); break;
      default: {
        LatLon p = true_position(*sp, t);
        const double cos_lat = std::cos(p.lat * std::numbers::pi / 180.0);
        p.lat += s.noise.sigma_deg * unit(gps_rng);
        p.lon += s.noise.sigma_deg / cos_lat * unit(gps_rng);
        if (moves(sp->leg->mode) && s.noise.jump_prob > 0.0 && u01(gps_rng) < s.noise.jump_prob) {
          p = offset(p, s.noise.jump_m, 360.0 * u01(gps_rng));
        }
        p.lat = std::clamp(p.lat, -90.0, 90.0);
        out.bundle.gps.push_back({t, p.lat, p.lon, sats_out(gps_rng)});
      }
    }
  }

  const double nx = 0.1, ny = 0.2, nz = 0.97;
  const double norm = std::sqrt(nx * nx + ny * ny + nz * nz);
  int spike_left = 0;
  double spike = 0.0;
  for (TimeMs t = s.start_t; t < end; t += s.accel_period_ms) {
    const auto* sp = span_at(t);
    if (!sp) break;
    const auto& a = s.accel;
    double dev = 0.0;
    switch (sp->leg->mode) {
      case LegMode::Idle: dev = a.rest_sd * unit(acc_rng); break;
      case LegMode::Indoor:
        dev = a.indoor_sd * unit(acc_rng);
        if (spike_left == 0 && u01(acc_rng) < a.spike_prob) {
          spike_left = 2;
          spike = a.spike_level * (u01(acc_rng) < 0.5 ? -1.0 : 1.0);
        }
        if (spike_left > 0) {
          dev += spike;
          --spike_left;
        }
        break;
      case LegMode::Walk: {
        const double mag = std::abs(a.walk_mean + a.walk_sd * unit(acc_rng));
        dev = u01(acc_rng) < 0.5 ? -mag : mag;
        break;
      }
      case LegMode::Car:
      case LegMode::Tunnel: dev = a.car_sd * unit(acc_rng); break;
    }
    const double m = std::max(0.0, kGravity + dev);
    out.bundle.accel.push_back({t, m * nx / norm, m * ny / norm, m * nz / norm});
  }

  for (std::size_t i = 0; i < spans.size();) {
    if (!in_journey(spans[i].leg->mode) || spans[i].end == spans[i].start) {
      ++i;
      continue;
    }
    std::size_t j = i;
    LocationSeq corners;
    while (j < spans.size() && in_journey(spans[j].leg->mode)) {
      corners.push_back({spans[j].start, spans[j].from.lat, spans[j].from.lon, std::nullopt});
      ++j;
    }
    const auto& last = spans[j - 1];
    const LatLon fin = true_position(last, last.end);
    corners.push_back({last.end, fin.lat, fin.lon, std::nullopt});
    out.diary.push_back({spans[i].start, last.end});
    out.truth_extent_m.push_back(bounds_diagonal(bounds_of(corners)));
    out.bundle.pings.push_back({spans[i].start, "start"});
    out.bundle.pings.push_back({last.end, "stop"});
    i = j;
  }
  return out;
}

SyntheticScenario scenario_from_json(std::string_view text) {
  SyntheticScenario s;
  try {
    const auto j = json::parse(text);
    if (j.contains("origin")) s.origin = {j["origin"].at(0).get<double>(), j["origin"].at(1).get<double>()};
    s.start_t = j.value("start_t", s.start_t);
    s.device_id = j.value("device_id", s.device_id);
    s.gps_period_ms = j.value("gps_period_ms", s.gps_period_ms);
    s.accel_period_ms = j.value("accel_period_ms", s.accel_period_ms);
    if (j.contains("noise")) {
      const auto& n = j["noise"];
      s.noise.sigma_deg = n.value("sigma_deg", s.noise.sigma_deg);
      s.noise.jump_prob = n.value("jump_prob", s.noise.jump_prob);
      s.noise.jump_m = n.value("jump_m", s.noise.jump_m);
    }
    if (j.contains("accel")) {
      const auto& a = j["accel"];
      s.accel.rest_sd = a.value("rest_sd", s.accel.rest_sd);
      s.accel.indoor_sd = a.value("indoor_sd", s.accel.indoor_sd);
      s.accel.spike_prob = a.value("spike_prob", s.accel.spike_prob);
      s.accel.spike_level = a.value("spike_level", s.accel.spike_level);
      s.accel.walk_mean = a.value("walk_mean", s.accel.walk_mean);
      s.accel.walk_sd = a.value("walk_sd", s.accel.walk_sd);
      s.accel.car_sd = a.value("car_sd", s.accel.car_sd);
    }
    for (const auto& l : j.at("legs")) {
      Leg leg;
      leg.mode = leg_mode_from(l.at("mode").get<std::string>());
      leg.duration_s = l.at("duration_s").get<double>();
      leg.speed_mps = l.value("speed_mps", 0.0);
      leg.heading_deg = l.value("heading_deg", 0.0);
      s.legs.push_back(leg);
    }
  } catch (const json::exception& e) {
    throw ParseError("scenario", 1, e.what());
  }
  s.validate();
  return s;
}

std::string scenario_to_json(const SyntheticScenario& s) {
  json legs = json::array();
  for (const auto& l : s.legs) {
    legs.push_back({{"mode", std::string(to_string(l.mode))},
                    {"duration_s", l.duration_s},
                    {"speed_mps", l.speed_mps},
                    {"heading_deg", l.heading_deg}});
  }
  const json j = {{"origin", {s.origin.lat, s.origin.lon}},
                  {"start_t", s.start_t},
                  {"device_id", s.device_id},
                  {"gps_period_ms", s.gps_period_ms},
                  {"accel_period_ms", s.accel_period_ms},
                  {"noise", {{"sigma_deg", s.noise.sigma_deg}, {"jump_prob", s.noise.jump_prob}, {"jump_m", s.noise.jump_m}}},
                  {"accel",
                   {{"rest_sd", s.accel.rest_sd},
                    {"indoor_sd", s.accel.indoor_sd},
                    {"spike_prob", s.accel.spike_prob},
                    {"spike_level", s.accel.spike_level},
                    {"walk_mean", s.accel.walk_mean},
                    {"walk_sd", s.accel.walk_sd},
                    {"car_sd", s.accel.car_sd}}},
                  {"legs", std::move(legs)}};
  return j.dump(2) + "\n";
}

std::vector<std::string> preset_scenario_names() { return {"walk", "car", "static", "idle", "day"}; }

SyntheticScenario preset_scenario(std::string_view name) {
  SyntheticScenario s;
  using M = LegMode;
  if (name == "walk") {
    s.legs = {{M::Idle, 600, 0, 0}, {M::Walk, 480, 1.4, 60}, {M::Indoor, 600, 0, 0}};
  } else if (name == "car") {
    s.legs = {{M::Idle, 600, 0, 0},  {M::Walk, 90, 1.4, 0},   {M::Car, 240, 12, 30},
              {M::Car, 60, 0, 0},    {M::Car, 180, 10, 80},   {M::Car, 60, 0, 0},
              {M::Car, 200, 13, 45}, {M::Car, 60, 0, 0},      {M::Car, 150, 11, 10},
              {M::Walk, 60, 1.4, 90}, {M::Indoor, 600, 0, 0}};
  } else if (name == "static") {
    s.legs = {{M::Idle, 600, 0, 0}};
  } else if (name == "idle") {
    s.legs = {{M::Idle, 1800, 0, 0}};
  } else if (name == "day") {
    // Four 30-minute journeys separated by long stationary periods, 16 h total.
    s.legs = {{M::Indoor, 7.5 * 3600, 0, 0}, {M::Walk, 300, 1.4, 20},  {M::Car, 1200, 12, 40},
              {M::Walk, 300, 1.4, 70},       {M::Indoor, 3.5 * 3600, 0, 0}, {M::Walk, 1800, 1.4, 200},
              {M::Indoor, 1.0 * 3600, 0, 0}, {M::Walk, 1800, 1.4, 10}, {M::Indoor, 1.5 * 3600, 0, 0},
              {M::Walk, 300, 1.4, 250},      {M::Car, 1200, 11, 220}, {M::Walk, 300, 1.4, 190},
              {M::Indoor, 0.5 * 3600, 0, 0}};
  } else {
    throw InvalidInput("unknown scenario preset '" + std::string(name) + "'");
  }
  return s;
}

std::vector<SyntheticScenario> scenario_suite(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  auto uni = [&](double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); };
  using M = LegMode;
  std::vector<SyntheticScenario> out;
  for (std::size_t n = 0; n < count; ++n) {
    SyntheticScenario s;
    s.start_t = 1'600'000'000'000 + static_cast<TimeMs>(n) * 86'400'000;
    s.origin = {uni(35.8, 36.0), uni(14.3, 14.6)};
    s.device_id = "SUITE" + std::to_string(n);
    const int journeys = 1 + static_cast<int>(n % 2);
    s.legs.push_back({uni(0, 1) < 0.5 ? M::Idle : M::Indoor, uni(480, 720), 0, 0});
    for (int k = 0; k < journeys; ++k) {
      const double heading = uni(0, 360);
      auto h = [&] { return heading + uni(-40, 40); };
      s.legs.push_back({M::Walk, uni(60, 120), uni(1.3, 1.6), h()});
      switch ((n + static_cast<std::size_t>(k)) % 4) {
        case 0:  // walk only
          s.legs.push_back({M::Walk, uni(420, 600), uni(1.3, 1.6), h()});
          break;
        case 1:  // car with junction stops
          for (int i = 0; i < 3; ++i) {
            s.legs.push_back({M::Car, uni(90, 200), uni(8, 15), h()});
            s.legs.push_back({M::Car, uni(20, 90), 0, 0});
          }
          s.legs.push_back({M::Car, uni(90, 200), uni(8, 15), h()});
          break;
        case 2: {  // car through a tunnel
          const double v = uni(10, 15);
          const double hd = h();
          s.legs.push_back({M::Car, uni(120, 240), v, hd});
          s.legs.push_back({M::Tunnel, uni(15, 40), v, hd});
          s.legs.push_back({M::Car, uni(120, 240), v, hd});
          break;
        }
        default:  // car in a street canyon with a stop
          s.noise.jump_prob = 0.01;
          s.noise.jump_m = 25.0;
          s.legs.push_back({M::Car, uni(120, 200), uni(8, 12), h()});
          s.legs.push_back({M::Car, uni(30, 90), 0, 0});
          s.legs.push_back({M::Car, uni(120, 200), uni(8, 12), h()});
          break;
      }
      s.legs.push_back({M::Walk, uni(60, 120), uni(1.3, 1.6), h()});
      s.legs.push_back({uni(0, 1) < 0.6 ? M::Indoor : M::Idle, uni(480, 900), 0, 0});
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace jseg

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "jseg/geo.hpp"
#include "jseg/trace.hpp"

namespace jseg {

enum class LegMode { Walk, Car, Idle, Tunnel, Indoor };

std::string_view to_string(LegMode m);
LegMode leg_mode_from(std::string_view s);

/// One piece of an itinerary. Idle and Indoor legs ignore speed; a Car leg
/// with zero speed is a stop inside a journey (junction, queue).
struct Leg {
  LegMode mode = LegMode::Idle;
  double duration_s = 0.0;
  double speed_mps = 0.0;
  double heading_deg = 0.0;  // clockwise from north
};

struct PositionNoise {
  double sigma_deg = 1.5e-5;  // white noise on latitude; longitude is scaled to the same meters
  double jump_prob = 0.0;     // per moving fix
  double jump_m = 0.0;
};

/// Deviation of the acceleration magnitude from g per mode, m/s^2.
struct AccelModel {
  double rest_sd = 0.02;
  double indoor_sd = 0.03;
  double spike_prob = 0.002;  // per indoor sample; a spike lasts two samples
  double spike_level = 5.0;
  double walk_mean = 6.0;
  double walk_sd = 1.5;
  double car_sd = 0.4;
};

struct SyntheticScenario {
  LatLon origin{35.9, 14.5};
  TimeMs start_t = 1'600'000'000'000;
  std::vector<Leg> legs;
  PositionNoise noise;
  AccelModel accel;
  TimeMs gps_period_ms = 2000;
  TimeMs accel_period_ms = 200;
  std::string device_id = "SYN";

  TimeMs end_t() const;
  /// Throws InvalidInput on negative durations or speeds or non-positive periods.
  void validate() const;
};

struct SyntheticTrace {
  TraceBundle bundle;
  /// Maximal runs of walk, car and tunnel legs.
  std::vector<DiaryEntry> diary;
  /// Bounds diagonal of the noiseless path of each diary entry, meters.
  std::vector<double> truth_extent_m;
};

/// Deterministic for a given scenario and seed. Outdoor legs produce fixes
/// with 9..12 satellites, indoor legs produce status reports with 0..2
/// satellites and no fixes, tunnel legs produce nothing. Pings mark diary
/// starts and stops.
SyntheticTrace generate_synthetic(const SyntheticScenario& scenario, std::uint64_t seed);

SyntheticScenario scenario_from_json(std::string_view text);
std::string scenario_to_json(const SyntheticScenario& s);

/// Built-in scenarios: "walk", "car", "static", "idle", "day".
SyntheticScenario preset_scenario(std::string_view name);
std::vector<std::string> preset_scenario_names();

/// Mixed scenarios (walks, car trips with junction stops up to 90 s, tunnels up
/// to 40 s, indoor or outdoor endings), each bracketed by stationary periods.
std::vector<SyntheticScenario> scenario_suite(std::uint64_t seed, std::size_t count);

}  // namespace jseg

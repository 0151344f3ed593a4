#include "jseg/power.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <Eigen/Dense>

#include "jseg/error.hpp"

namespace jseg {

namespace {

constexpr double kMsPerHour = 3'600'000.0;

struct Preset {
  std::string_view device;
  double idle;
  double accel;
  double gps;
};

// Accelerometer column is the continuous-sampling measurement.
constexpr std::array<Preset, 4> kPresets{{
    {"T1", 1.79, 6.71, 20.13},
    {"T2", 1.06, 3.22, 10.22},
    {"S1", 5.02, 6.70, 47.97},
    {"S2", 2.17, 7.42, 28.26},
}};

}  // namespace

double PowerProfile::rate(GlobalState s) const {
  switch (s) {
    case GlobalState::Off: return idle_rate;
    case GlobalState::Acc: return accel_rate;
    case GlobalState::Gps: return gps_rate * gps_multiplier;
  }
  return 0.0;
}

void PowerProfile::validate() const {
  if (!(idle_rate > 0.0) || !(idle_rate <= accel_rate) || !(accel_rate <= gps_rate))
    throw InvalidInput("power profile: need 0 < idle_rate <= accel_rate <= gps_rate");
  if (!(gps_multiplier > 0.0)) throw InvalidInput("power profile: gps_multiplier must be positive");
}

PowerProfile profile_preset(std::string_view device) {
  for (const auto& p : kPresets) {
    if (p.device == device) return {std::string(p.device), p.idle, p.accel, p.gps, 1.0};
  }
  throw InvalidInput("unknown device preset '" + std::string(device) + "'");
}

std::vector<std::string> profile_preset_names() {
  std::vector<std::string> names;
  for (const auto& p : kPresets) names.emplace_back(p.device);
  return names;
}

DischargeFit fit_discharge(std::span<const BatteryPoint> samples) {
  if (samples.size() < 3) throw InsufficientData("fit_discharge needs at least 3 samples");
  const auto n = static_cast<Eigen::Index>(samples.size());
  Eigen::MatrixXd design(n, 3);
  Eigen::VectorXd level(n);
  const TimeMs t0 = samples.front().t;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double h = static_cast<double>(samples[static_cast<std::size_t>(i)].t - t0) / kMsPerHour;
    design(i, 0) = 1.0;
    design(i, 1) = h;
    design(i, 2) = h * h;
    level(i) = samples[static_cast<std::size_t>(i)].level;
  }
  const Eigen::Vector3d coef = design.colPivHouseholderQr().solve(level);
  return {std::abs(coef(1)), coef(2), coef(0)};
}

BatteryCurve simulate_battery(const StateTimeline& timeline, const PowerProfile& profile,
                              double start_level, TimeMs sample_interval_ms) {
  if (sample_interval_ms <= 0) throw InvalidInput("simulate_battery: sample interval must be positive");
  BatteryCurve curve;
  double level = std::clamp(start_level, 0.0, 100.0);
  if (timeline.empty()) {
    curve.points.push_back({0, level});
    return curve;
  }

  curve.points.push_back({timeline.start(), level});
  for (const auto& iv : timeline.intervals()) {
    const double rate = profile.rate(iv.state);
    TimeMs t = iv.start;
    while (t < iv.end) {
      // Next tick on the global sampling grid, or the interval end.
      const TimeMs since = t - timeline.start();
      const TimeMs next_tick = timeline.start() + (since / sample_interval_ms + 1) * sample_interval_ms;
      const TimeMs next = std::min(next_tick, iv.end);
      level = std::max(0.0, level - rate * static_cast<double>(next - t) / kMsPerHour);
      curve.points.push_back({next, level});
      t = next;
    }
  }
  if (curve.points.size() >= 3) curve.fit = fit_discharge(curve.points);
  return curve;
}

double consumption(const StateTimeline& timeline, const PowerProfile& profile) {
  double total = 0.0;
  for (const auto& iv : timeline.intervals())
    total += profile.rate(iv.state) * static_cast<double>(iv.end - iv.start) / kMsPerHour;
  return total;
}

double compare_savings(const StateTimeline& aware, const StateTimeline& base,
                       const PowerProfile& profile) {
  if (aware.start() != base.start() || aware.end() != base.end())
    throw InvalidInput("compare_savings: timelines cover different spans");
  const double base_use = consumption(base, profile);
  if (!(base_use > 0.0)) throw InvalidInput("compare_savings: base timeline consumes nothing");
  return 1.0 - consumption(aware, profile) / base_use;
}

}  // namespace jseg

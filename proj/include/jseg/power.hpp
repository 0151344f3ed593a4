#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "jseg/geo.hpp"
#include "jseg/timeline.hpp"

namespace jseg {

/// Battery discharge rates in battery-% points per hour.
struct PowerProfile {
  std::string device;
  double idle_rate = 0.0;
  double accel_rate = 0.0;
  double gps_rate = 0.0;
  /// Scales gps_rate; 1.3 approximates indoor or assisted-mode operation.
  double gps_multiplier = 1.0;

  double rate(GlobalState s) const;
  /// Throws InvalidInput unless 0 < idle <= accel <= gps.
  void validate() const;
};

/// Measured presets for devices T1, T2, S1 and S2 (continuous accelerometer).
PowerProfile profile_preset(std::string_view device);
std::vector<std::string> profile_preset_names();

struct BatteryPoint {
  TimeMs t = 0;
  double level = 0.0;  // percent
};

struct DischargeFit {
  double linear_rate = 0.0;  // |first-order coefficient|, units per hour
  double quad_coeff = 0.0;   // second-order coefficient, units per hour^2
  double intercept = 0.0;
};

struct BatteryCurve {
  std::vector<BatteryPoint> points;
  DischargeFit fit;
};

/// Least-squares quadratic fit of level against hours since the first sample.
/// Throws InsufficientData with fewer than three samples.
DischargeFit fit_discharge(std::span<const BatteryPoint> samples);

/// Piecewise-linear discharge over `timeline`, clamped at 0. The curve is
/// sampled every `sample_interval_ms` and at every state change.
BatteryCurve simulate_battery(const StateTimeline& timeline, const PowerProfile& profile,
                              double start_level = 100.0, TimeMs sample_interval_ms = 60'000);

/// Integrated discharge over the timeline, in battery-% points (unclamped).
double consumption(const StateTimeline& timeline, const PowerProfile& profile);

/// 1 - consumption(aware) / consumption(base). Throws InvalidInput when the
/// timelines do not cover the same span.
double compare_savings(const StateTimeline& aware, const StateTimeline& base,
                       const PowerProfile& profile);

}  // namespace jseg

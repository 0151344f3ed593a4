#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "jseg/geo.hpp"

namespace jseg {

inline constexpr double kGravity = 9.81;

struct AccelSample {
  TimeMs t = 0;
  double ax = 0.0;
  double ay = 0.0;
  double az = 0.0;

  friend bool operator==(const AccelSample&, const AccelSample&) = default;
};

/// Absolute deviation of the acceleration magnitude from g.
struct FilteredAccel {
  TimeMs t = 0;
  double mag_dev = 0.0;
};

FilteredAccel filter_accel(const AccelSample& s);

/// Tunable detector parameters. Buffer lengths are in samples.
struct MotionParams {
  std::size_t n1 = 5;   // CHECK buffer length, 1..20
  double th1 = 0.18;    // CHECK mean threshold, 0..5
  std::size_t n2 = 7;   // EXTRA buffer length, 1..20
  double th2 = 4.78;    // EXTRA per-window mean threshold, 0..5
  std::size_t w2 = 1;   // EXTRA averaging windows, 1..5

  bool in_box() const;
  /// Throws InvalidInput when outside the search box.
  void validate() const;

  friend bool operator==(const MotionParams&, const MotionParams&) = default;
};

enum class MotionState { Init, Check, Extra };

std::string_view to_string(MotionState s);

struct MotionDecision {
  TimeMs t = 0;
};

/// Two-stage significant-motion detector over filtered accelerometer
/// magnitudes.
///
/// CHECK collects n1 samples; a mean at or above th1 moves on to EXTRA,
/// otherwise CHECK restarts with an empty buffer. EXTRA collects n2 samples,
/// splits them into w2 contiguous windows (sizes differ by at most one, the
/// longer ones first) and confirms motion only if every window mean reaches
/// th2; a rejection returns to CHECK with an empty buffer. After a
/// confirmation the detector is back in INIT.
class MotionFsm {
 public:
  explicit MotionFsm(MotionParams params = {});

  std::optional<MotionDecision> on_accel(const AccelSample& s);
  std::optional<MotionDecision> on_filtered(const FilteredAccel& f);

  void reset();

  MotionState state() const { return state_; }
  std::size_t buffered() const { return buffer_.size(); }
  /// Number of EXTRA excursions that ended in a rejection.
  std::size_t extra_rejections() const { return rejections_; }
  const MotionParams& params() const { return params_; }

 private:
  bool extra_confirms() const;

  MotionParams params_;
  MotionState state_ = MotionState::Init;
  std::vector<double> buffer_;
  std::optional<TimeMs> last_t_;
  std::size_t rejections_ = 0;
};

}  // namespace jseg

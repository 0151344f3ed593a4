#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "jseg/gps_fsm.hpp"
#include "jseg/motion_fsm.hpp"
#include "jseg/postproc.hpp"
#include "jseg/timeline.hpp"
#include "jseg/trace.hpp"

namespace jseg {

struct ControllerParams {
  GpsFsmParams gps;
  PostprocParams postproc;
  MotionParams motion;
  /// GPS -> ACC after the GPS logger has had no active journey this long.
  /// Infinity disables battery saving.
  double idle_timeout_s = 300.0;
  /// Fixes are ignored for this long after an ACC -> GPS wake-up.
  double reacquisition_delay_s = 0.0;

  bool battery_aware() const { return idle_timeout_s != std::numeric_limits<double>::infinity(); }
  void validate() const;
};

struct PipelineResult {
  std::vector<Journey> journeys;
  std::vector<SegmentRecord> segments;  // tentative segments before post-processing
};

struct ControllerResult {
  std::vector<Journey> journeys;
  StateTimeline timeline;
  std::size_t segment_count = 0;
  std::vector<TimeMs> wakeups;  // ACC -> GPS transition times
};

/// Base algorithm: the GPS logger over every fix and status report in
/// [start, stop], stopped at `stop`, followed by the post-processor.
PipelineResult segment_trace(const TraceBundle& trace, TimeMs start, TimeMs stop,
                             const GpsFsmParams& gps, const PostprocParams& postproc);

/// Replays the OFF/GPS/ACC controller over `trace` for the session [start, stop].
///
/// Starts in GPS. Moves to ACC once the GPS logger has been without an active
/// journey for idle_timeout_s, post-processing the spooled segments at that
/// point, and back to GPS when the motion detector confirms motion. At `stop`
/// the logger is stopped, a final post-processing pass runs and the state
/// becomes OFF. Fix and status events win timestamp ties against accelerometer
/// samples. Throws OrderingError on unsorted streams.
ControllerResult run_controller(const TraceBundle& trace, TimeMs start, TimeMs stop,
                                const ControllerParams& params);

}  // namespace jseg

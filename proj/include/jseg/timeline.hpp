#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "jseg/geo.hpp"

namespace jseg {

/// Top-level sensing mode.
enum class GlobalState { Off, Gps, Acc };

std::string_view to_string(GlobalState s);
std::optional<GlobalState> global_state_from(std::string_view s);

struct TimelineInterval {
  TimeMs start = 0;
  TimeMs end = 0;
  GlobalState state = GlobalState::Off;

  friend bool operator==(const TimelineInterval&, const TimelineInterval&) = default;
};

/// Contiguous, non-overlapping state intervals in time order.
class StateTimeline {
 public:
  StateTimeline() = default;

  /// Extends the timeline with [start, end) in `state`. Zero-length intervals
  /// are ignored and equal neighbouring states are merged. Throws
  /// OrderingError unless `start` equals the current end.
  void append(TimeMs start, TimeMs end, GlobalState state);

  const std::vector<TimelineInterval>& intervals() const { return intervals_; }
  bool empty() const { return intervals_.empty(); }
  TimeMs start() const { return intervals_.empty() ? 0 : intervals_.front().start; }
  TimeMs end() const { return intervals_.empty() ? 0 : intervals_.back().end; }

  /// Total time spent in `state`, in hours.
  double hours_in(GlobalState state) const;

  friend bool operator==(const StateTimeline&, const StateTimeline&) = default;

 private:
  std::vector<TimelineInterval> intervals_;
};

}  // namespace jseg

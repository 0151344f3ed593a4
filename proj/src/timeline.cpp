#include "jseg/timeline.hpp"

#include <string>

#include "jseg/error.hpp"

namespace jseg {

std::string_view to_string(GlobalState s) {
  switch (s) {
    case GlobalState::Off: return "OFF";
    case GlobalState::Gps: return "GPS";
    case GlobalState::Acc: return "ACC";
  }
  return "?";
}

std::optional<GlobalState> global_state_from(std::string_view s) {
  if (s == "OFF") return GlobalState::Off;
  if (s == "GPS") return GlobalState::Gps;
  if (s == "ACC") return GlobalState::Acc;
  return std::nullopt;
}

void StateTimeline::append(TimeMs start, TimeMs end, GlobalState state) {
  if (end < start) throw OrderingError("timeline: interval ends before it starts");
  if (!intervals_.empty() && start != intervals_.back().end) {
    throw OrderingError("timeline: interval at " + std::to_string(start) +
                        " is not contiguous with end " + std::to_string(intervals_.back().end));
  }
  if (end == start) return;
  if (!intervals_.empty() && intervals_.back().state == state) {
    intervals_.back().end = end;
    return;
  }
  intervals_.push_back({start, end, state});
}

double StateTimeline::hours_in(GlobalState state) const {
  double ms = 0.0;
  for (const auto& iv : intervals_) {
    if (iv.state == state) ms += static_cast<double>(iv.end - iv.start);
  }
  return ms / 3'600'000.0;
}

}  // namespace jseg

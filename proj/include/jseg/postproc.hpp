#pragma once

#include <cstddef>
#include <vector>

#include "jseg/geo.hpp"
#include "jseg/gps_fsm.hpp"

namespace jseg {

struct PostprocParams {
  double low_len_m = 50.0;        // dropped before joining when shorter
  double high_len_m = 500.0;      // dropped after joining when shorter
  double join_gap_s = 120.0;      // segments further apart are never joined
  double join_tolerance = 1.2;    // allowed gap speed relative to terminal speed
  double tail_speed = 20.0;       // m/s; faster end steps are treated as fix jumps
  std::size_t tail_max_cuts = 3;  // per end
  std::size_t join_avg_count = 5; // terminal velocities averaged for the join test

  void validate() const;
};

std::vector<Journey> journeys_from_segments(const std::vector<SegmentRecord>& segments);

/// Mean of the last `count` point-to-point speeds (fewer if the journey is shorter).
double terminal_speed(const Journey& j, std::size_t count);

/// Whether `second` is a plausible continuation of `first`.
bool can_join(const Journey& first, const Journey& second, const PostprocParams& params);

Journey join(const Journey& first, const Journey& second);

/// Keeps journeys whose extent is at least low_len_m.
std::vector<Journey> filter_low(std::vector<Journey> journeys, const PostprocParams& params);

/// Joins successive segments, walking pairs from the next-to-last backwards
/// and restarting after every join until no pair qualifies. Throws
/// OrderingError if the input is not sorted and non-overlapping.
std::vector<Journey> concatenate(std::vector<Journey> journeys, const PostprocParams& params);

std::vector<Journey> filter_high(std::vector<Journey> journeys, const PostprocParams& params);

/// Drops up to tail_max_cuts points at each end while the end step is faster
/// than tail_speed. Never reduces a journey below two points.
Journey trim_ends(Journey journey, const PostprocParams& params);

/// filter_low -> concatenate -> filter_high -> trim_ends.
std::vector<Journey> run_pipeline(std::vector<Journey> segments, const PostprocParams& params);

}  // namespace jseg

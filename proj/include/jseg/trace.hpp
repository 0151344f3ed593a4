#pragma once

#include <string>
#include <vector>

#include "jseg/geo.hpp"
#include "jseg/motion_fsm.hpp"

namespace jseg {

/// Satellite count reported without a position fix.
struct SatelliteStatus {
  TimeMs t = 0;
  int sats = 0;

  friend bool operator==(const SatelliteStatus&, const SatelliteStatus&) = default;
};

/// Annotator mark ("start" / "stop" of a journey).
struct Ping {
  TimeMs t = 0;
  std::string label;

  friend bool operator==(const Ping&, const Ping&) = default;
};

struct TraceMetadata {
  std::string device_id;
  double gps_rate_hz = 0.5;
  double accel_rate_hz = 5.0;

  friend bool operator==(const TraceMetadata&, const TraceMetadata&) = default;
};

/// Everything captured on one device. Each stream is sorted by time.
struct TraceBundle {
  std::vector<LocationSample> gps;
  std::vector<SatelliteStatus> sat_status;
  std::vector<AccelSample> accel;
  std::vector<Ping> pings;
  TraceMetadata metadata;

  /// Earliest and latest timestamp over all streams (0, 0 when empty).
  TimeMs first_t() const;
  TimeMs last_t() const;

  /// Throws OrderingError if a stream is out of order and InvalidInput if a
  /// fix lies outside the valid lat/lon range.
  void validate() const;

  friend bool operator==(const TraceBundle&, const TraceBundle&) = default;
};

/// Ground-truth journey interval.
struct DiaryEntry {
  TimeMs start_t = 0;
  TimeMs end_t = 0;

  friend bool operator==(const DiaryEntry&, const DiaryEntry&) = default;
};

/// Pairs "start"/"stop" pings into diary entries; unmatched pings are ignored.
std::vector<DiaryEntry> diary_from_pings(const std::vector<Ping>& pings);

}  // namespace jseg

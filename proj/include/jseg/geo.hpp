#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace jseg {

/// Milliseconds since the Unix epoch.
using TimeMs = std::int64_t;

/// Mean Earth radius used by every distance computation, in meters.
inline constexpr double kEarthRadiusM = 6'371'000.0;

struct LatLon {
  double lat = 0.0;
  double lon = 0.0;

  friend bool operator==(const LatLon&, const LatLon&) = default;
};

/// One GPS fix. `sats` is empty when the receiver did not report a count.
struct LocationSample {
  TimeMs t = 0;
  double lat = 0.0;
  double lon = 0.0;
  std::optional<int> sats;

  LatLon pos() const { return {lat, lon}; }

  friend bool operator==(const LocationSample&, const LocationSample&) = default;
};

using LocationSeq = std::vector<LocationSample>;

/// Axis-aligned lat/lon box. Journeys crossing the antimeridian or a pole are
/// not representable.
struct GeoBounds {
  LatLon bl;
  LatLon tr;

  bool contains(const LatLon& p) const {
    return p.lat >= bl.lat && p.lat <= tr.lat && p.lon >= bl.lon && p.lon <= tr.lon;
  }

  friend bool operator==(const GeoBounds&, const GeoBounds&) = default;
};

/// A run of raw fixes with derived extent. Build through `Journey::from_points`
/// so the cached fields stay consistent with `points`.
struct Journey {
  LocationSeq points;
  TimeMs start_t = 0;
  TimeMs end_t = 0;
  GeoBounds bounds;
  double path_length = 0.0;

  static Journey from_points(LocationSeq points);

  /// Diagonal of the bounding box; the length measure used for thresholding.
  double extent() const;
};

bool valid_position(const LatLon& p);

/// Great-circle distance in meters.
double haversine(const LatLon& a, const LatLon& b);

/// Sum of haversine distances over consecutive samples. Throws InvalidInput
/// on an empty sequence.
double path_distance(std::span<const LocationSample> seq);

/// Instantaneous speed between two fixes in m/s. Throws InvalidInput when the
/// timestamps are equal.
double speed(const LocationSample& a, const LocationSample& b);

GeoBounds bounds_of(std::span<const LocationSample> points);
double bounds_diagonal(const GeoBounds& b);

/// Seconds elapsed from `from` to `to` (may be negative).
inline double seconds_between(TimeMs from, TimeMs to) {
  return static_cast<double>(to - from) / 1000.0;
}

}  // namespace jseg

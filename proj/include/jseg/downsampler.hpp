#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "jseg/geo.hpp"

namespace jseg {

/// Inclusive range of raw-sample indices (counted from the first push).
struct RawSpan {
  std::size_t first = 0;
  std::size_t last = 0;

  std::size_t size() const { return last - first + 1; }
  friend bool operator==(const RawSpan&, const RawSpan&) = default;
};

/// Averaged position of a block of raw fixes. `t` is the timestamp of the last
/// contributing fix; `samples` holds the contributing fixes themselves so that
/// consumers can store raw data while deciding on averages.
struct WindowPoint {
  TimeMs t = 0;
  LatLon pos;
  RawSpan raw_span;
  bool complete = false;
  std::vector<LocationSample> samples;

  /// Position and time as a location sample (used for speed computations).
  LocationSample as_sample() const { return {t, pos.lat, pos.lon, std::nullopt}; }
};

/// Block-averaging down-sampler: emits the mean position of every W
/// consecutive fixes.
class Downsampler {
 public:
  explicit Downsampler(std::size_t window = 3);

  /// Buffers `sample`; returns a window when it completes one. Throws
  /// OrderingError if `sample.t` does not exceed every earlier timestamp.
  std::optional<WindowPoint> push(const LocationSample& sample);

  /// Emits the partial window (complete = false) if anything is buffered.
  std::optional<WindowPoint> flush();

  std::size_t window() const { return window_; }
  std::size_t buffered() const { return buffer_.size(); }
  std::size_t pushed() const { return next_index_; }

 private:
  WindowPoint emit(bool complete);

  std::size_t window_;
  std::vector<LocationSample> buffer_;
  std::size_t next_index_ = 0;
  std::optional<TimeMs> last_t_;
};

}  // namespace jseg

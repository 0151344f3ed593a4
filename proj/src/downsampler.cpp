#include "jseg/downsampler.hpp"

#include <string>

#include "jseg/error.hpp"

namespace jseg {

Downsampler::Downsampler(std::size_t window) : window_(window) {
  if (window_ == 0) throw InvalidInput("down-sampler window must be positive");
  buffer_.reserve(window_);
}

std::optional<WindowPoint> Downsampler::push(const LocationSample& sample) {
  if (last_t_ && sample.t <= *last_t_) {
    throw OrderingError("down-sampler: timestamp " + std::to_string(sample.t) +
                        " does not follow " + std::to_string(*last_t_));
  }
  last_t_ = sample.t;
  buffer_.push_back(sample);
  ++next_index_;
  if (buffer_.size() < window_) return std::nullopt;
  return emit(true);
}

std::optional<WindowPoint> Downsampler::flush() {
  if (buffer_.empty()) return std::nullopt;
  return emit(false);
}

WindowPoint Downsampler::emit(bool complete) {
  WindowPoint w;
  double lat = 0.0;
  double lon = 0.0;
  for (const auto& s : buffer_) {
    lat += s.lat;
    lon += s.lon;
  }
  const auto n = static_cast<double>(buffer_.size());
  w.pos = {lat / n, lon / n};
  w.t = buffer_.back().t;
  w.raw_span = {next_index_ - buffer_.size(), next_index_ - 1};
  w.complete = complete;
  w.samples = std::move(buffer_);
  buffer_.clear();
  buffer_.reserve(window_);
  return w;
}

}  // namespace jseg

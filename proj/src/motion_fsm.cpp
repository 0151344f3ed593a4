#include "jseg/motion_fsm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "jseg/error.hpp"

namespace jseg {

namespace {

double mean(const double* first, std::size_t n) {
  return std::accumulate(first, first + n, 0.0) / static_cast<double>(n);
}

}  // namespace

FilteredAccel filter_accel(const AccelSample& s) {
  const double norm = std::sqrt(s.ax * s.ax + s.ay * s.ay + s.az * s.az);
  return {s.t, std::abs(norm - kGravity)};
}

bool MotionParams::in_box() const {
  return n1 >= 1 && n1 <= 20 && th1 >= 0.0 && th1 <= 5.0 && n2 >= 1 && n2 <= 20 && th2 >= 0.0 &&
         th2 <= 5.0 && w2 >= 1 && w2 <= 5;
}

void MotionParams::validate() const {
  if (!in_box()) {
    throw InvalidInput("motion params outside box: n1=" + std::to_string(n1) +
                       " th1=" + std::to_string(th1) + " n2=" + std::to_string(n2) +
                       " th2=" + std::to_string(th2) + " w2=" + std::to_string(w2));
  }
}

std::string_view to_string(MotionState s) {
  switch (s) {
    case MotionState::Init: return "INIT";
    case MotionState::Check: return "CHECK";
    case MotionState::Extra: return "EXTRA";
  }
  return "?";
}

MotionFsm::MotionFsm(MotionParams params) : params_(params) {
  params_.validate();
  buffer_.reserve(std::max(params_.n1, params_.n2));
}

void MotionFsm::reset() {
  state_ = MotionState::Init;
  buffer_.clear();
}

std::optional<MotionDecision> MotionFsm::on_accel(const AccelSample& s) {
  return on_filtered(filter_accel(s));
}

bool MotionFsm::extra_confirms() const {
  const std::size_t n = buffer_.size();
  const std::size_t k = std::min(params_.w2, n);
  const std::size_t base = n / k;
  const std::size_t extra = n % k;
  std::size_t offset = 0;
  for (std::size_t w = 0; w < k; ++w) {
    const std::size_t len = base + (w < extra ? 1 : 0);
    if (mean(buffer_.data() + offset, len) < params_.th2) return false;
    offset += len;
  }
  return true;
}

std::optional<MotionDecision> MotionFsm::on_filtered(const FilteredAccel& f) {
  if (last_t_ && f.t <= *last_t_) {
    throw OrderingError("motion fsm: sample at " + std::to_string(f.t) + " does not follow " +
                        std::to_string(*last_t_));
  }
  last_t_ = f.t;

  if (state_ == MotionState::Init) {
    buffer_.clear();
    state_ = MotionState::Check;
  }

  buffer_.push_back(f.mag_dev);
  if (state_ == MotionState::Check) {
    if (buffer_.size() < params_.n1) return std::nullopt;
    if (mean(buffer_.data(), buffer_.size()) >= params_.th1) state_ = MotionState::Extra;
    buffer_.clear();
    return std::nullopt;
  }

  if (buffer_.size() < params_.n2) return std::nullopt;
  const bool confirmed = extra_confirms();
  buffer_.clear();
  if (confirmed) {
    state_ = MotionState::Init;
    return MotionDecision{f.t};
  }
  ++rejections_;
  state_ = MotionState::Check;
  return std::nullopt;
}

}  // namespace jseg

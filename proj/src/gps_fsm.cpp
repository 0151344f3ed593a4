#include "jseg/gps_fsm.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "jseg/error.hpp"

namespace jseg {

namespace {

double window_speed(const WindowPoint& a, const WindowPoint& b) {
  return speed(a.as_sample(), b.as_sample());
}

// Aggregate speed between windows `from` and `to` (positions in `w`).
double aggregate_speed(std::span<const WindowPoint> w, std::size_t from, std::size_t to) {
  return haversine(w[from].pos, w[to].pos) / seconds_between(w[from].t, w[to].t);
}

TimeMs to_ms(double seconds) { return static_cast<TimeMs>(std::llround(seconds * 1000.0)); }

}  // namespace

std::string_view to_string(GpsFsmState s) {
  switch (s) {
    case GpsFsmState::Idle: return "US_IDLE";
    case GpsFsmState::Searching: return "US_SRCH";
    case GpsFsmState::Found: return "US_FIND";
    case GpsFsmState::Logging: return "US_LOGD";
  }
  return "?";
}

std::string_view to_string(TerminationCause c) {
  switch (c) {
    case TerminationCause::StopTrigger: return "stop_trigger";
    case TerminationCause::SignalTimeout: return "signal_timeout";
    case TerminationCause::UserStop: return "user_stop";
  }
  return "?";
}

std::optional<TerminationCause> termination_cause_from(std::string_view s) {
  if (s == "stop_trigger") return TerminationCause::StopTrigger;
  if (s == "signal_timeout") return TerminationCause::SignalTimeout;
  if (s == "user_stop") return TerminationCause::UserStop;
  return std::nullopt;
}

void GpsFsmParams::validate() const {
  if (window == 0 || chain_length == 0 || hysteresis_windows == 0)
    throw InvalidInput("gps params: window, chain_length and hysteresis_windows must be positive");
  if (!(v_inst > 0.0) || !(v_cum > 0.0) || !(displacement_m > 0.0))
    throw InvalidInput("gps params: thresholds must be positive");
  if (sat_min <= 0 || !(sat_timeout_s > 0.0) || !(watchdog_timeout_s > 0.0))
    throw InvalidInput("gps params: satellite cutoff and timeouts must be positive");
  if (chain_length > hysteresis_windows)
    throw InvalidInput("gps params: chain_length must not exceed hysteresis_windows");
}

std::optional<std::size_t> check_start_trigger(std::span<const WindowPoint> windows,
                                               const GpsFsmParams& params) {
  const std::size_t m = params.chain_length;
  if (windows.size() < m + 1) return std::nullopt;
  const auto w = windows.subspan(windows.size() - (m + 1));
  for (std::size_t n = 1; n <= m; ++n) {
    if (!(window_speed(w[n - 1], w[n]) > params.v_inst)) return std::nullopt;
  }
  // With a single-step chain the aggregate collapses onto that one step.
  const double aggregate = m >= 2 ? aggregate_speed(w, 1, m) : aggregate_speed(w, 0, 1);
  if (!(aggregate > params.v_cum)) return std::nullopt;
  return windows.size() - (m + 1);
}

double buffer_displacement(std::span<const WindowPoint> buffer) {
  if (buffer.size() < 2) return 0.0;
  return haversine(buffer.front().pos, buffer.back().pos);
}

std::optional<std::size_t> check_stop_trigger(std::span<const WindowPoint> buffer,
                                              const GpsFsmParams& params) {
  const std::size_t m = params.chain_length;
  if (buffer.size() < m + 1) return std::nullopt;
  if (!(buffer_displacement(buffer) < params.displacement_m)) return std::nullopt;

  for (std::size_t j = 0; j + m < buffer.size(); ++j) {
    bool slow = true;
    for (std::size_t n = j + 1; n <= j + m && slow; ++n)
      slow = window_speed(buffer[n - 1], buffer[n]) < params.v_inst;
    if (!slow) continue;
    const double aggregate =
        m >= 2 ? aggregate_speed(buffer, j + 1, j + m) : aggregate_speed(buffer, j, j + 1);
    if (aggregate < params.v_cum) return j;
  }
  return std::nullopt;
}

GpsFsm::GpsFsm(GpsFsmParams params) : params_(params), downsampler_(params.window) {
  params_.validate();
}

void GpsFsm::check_clock(TimeMs t) {
  if (clock_started_ && t < clock_) {
    throw OrderingError("gps fsm: event at " + std::to_string(t) + " precedes clock " +
                        std::to_string(clock_));
  }
  clock_ = t;
  clock_started_ = true;
}

std::vector<SegmentRecord> GpsFsm::advance_to(TimeMs t) {
  check_clock(t);
  std::vector<SegmentRecord> out;
  for (;;) {
    std::optional<TimeMs> watchdog_due;
    if (last_fix_t_ && !watchdog_fired_) watchdog_due = *last_fix_t_ + to_ms(params_.watchdog_timeout_s);
    std::optional<TimeMs> sat_due;
    if (low_sats_since_ && !sat_timeout_fired_)
      sat_due = *low_sats_since_ + to_ms(params_.sat_timeout_s);

    const bool watchdog_ready = watchdog_due && *watchdog_due <= t;
    const bool sat_ready = sat_due && *sat_due <= t;
    if (!watchdog_ready && !sat_ready) break;

    if (sat_ready && (!watchdog_ready || *sat_due <= *watchdog_due)) {
      sat_timeout_fired_ = true;
      event_t_ = *sat_due;
      if (auto seg = close_on_timeout(TerminationCause::SignalTimeout)) out.push_back(std::move(*seg));
    } else {
      if (auto seg = on_watchdog(*watchdog_due)) out.push_back(std::move(*seg));
    }
  }
  return out;
}

std::vector<SegmentRecord> GpsFsm::on_fix(const LocationSample& fix) {
  auto out = advance_to(fix.t);
  if (fix.sats) {
    auto more = on_signal_status(fix.t, *fix.sats);
    std::move(more.begin(), more.end(), std::back_inserter(out));
  }
  last_fix_t_ = fix.t;
  watchdog_fired_ = false;
  if (auto w = downsampler_.push(fix)) {
    auto more = on_window(std::move(*w));
    std::move(more.begin(), more.end(), std::back_inserter(out));
  }
  return out;
}

std::vector<SegmentRecord> GpsFsm::on_signal_status(TimeMs t, int sats) {
  auto out = advance_to(t);
  if (sats < params_.sat_min) {
    if (!low_sats_since_) {
      low_sats_since_ = t;
      sat_timeout_fired_ = false;
    }
  } else {
    low_sats_since_.reset();
    sat_timeout_fired_ = false;
  }
  return out;
}

std::optional<SegmentRecord> GpsFsm::on_watchdog(TimeMs t) {
  if (t > clock_) check_clock(t);
  watchdog_fired_ = true;
  event_t_ = t;
  return close_on_timeout(TerminationCause::SignalTimeout);
}

std::vector<SegmentRecord> GpsFsm::stop(TimeMs t) {
  auto out = advance_to(t);
  std::vector<SegmentRecord> flushed;
  if (auto partial = downsampler_.flush()) flushed = on_window(std::move(*partial));
  event_t_ = t;
  std::move(flushed.begin(), flushed.end(), std::back_inserter(out));

  std::optional<SegmentRecord> seg;
  if (state_ == GpsFsmState::Logging) {
    const auto j = check_stop_trigger(buffer_, params_);
    seg = make_segment(j.value_or(buffer_.size() - 1), TerminationCause::UserStop);
  } else if (state_ == GpsFsmState::Found && !buffer_.empty()) {
    seg = make_segment(buffer_.size() - 1, TerminationCause::UserStop);
  }
  if (seg) out.push_back(std::move(*seg));
  reset_to_idle();
  last_fix_t_.reset();
  low_sats_since_.reset();
  return out;
}

std::optional<SegmentRecord> GpsFsm::close_on_timeout(TerminationCause cause) {
  std::optional<SegmentRecord> seg;
  const TimeMs due = event_t_;
  if (auto partial = downsampler_.flush()) {
    auto closed = on_window(std::move(*partial));
    event_t_ = due;
    // A partial window can complete at most one segment; a journey then open
    // is still in Found and is dropped below.
    if (!closed.empty()) seg = std::move(closed.front());
  }
  if (state_ == GpsFsmState::Logging && !buffer_.empty()) {
    const auto j = check_stop_trigger(buffer_, params_);
    seg = make_segment(j.value_or(buffer_.size() - 1), cause);
  }
  reset_to_idle();
  return seg;
}

void GpsFsm::set_state(GpsFsmState next) {
  const bool was_active = journey_active();
  if (next != state_ && observer_) observer_(state_, next, event_t_);
  state_ = next;
  if (was_active && !journey_active()) inactive_since_ = event_t_;
}

void GpsFsm::reset_to_idle() {
  buffer_.clear();
  buffer_first_ = next_window_;
  open_points_.clear();
  start_ptr_.reset();
  markov_ = {};
  set_state(GpsFsmState::Idle);
}

void GpsFsm::append(WindowPoint w) {
  if (last_window_t_ && w.t <= *last_window_t_) {
    throw OrderingError("gps fsm: window at " + std::to_string(w.t) + " does not follow " +
                        std::to_string(*last_window_t_));
  }
  last_window_t_ = w.t;
  if (buffer_.empty()) buffer_first_ = next_window_;
  buffer_.push_back(std::move(w));
  ++next_window_;
}

void GpsFsm::update_markov() {
  if (buffer_.size() < 2) return;
  const auto n = buffer_.size() - 1;
  if (window_speed(buffer_[n - 1], buffer_[n]) > params_.v_inst) {
    markov_.run_length = std::min(markov_.run_length + 1, params_.chain_length);
    markov_.anchor = buffer_first_ + n - markov_.run_length;
  } else {
    markov_ = {};
  }
}

void GpsFsm::rescan_markov() {
  markov_ = {};
  for (std::size_t n = 1; n < buffer_.size(); ++n) {
    if (window_speed(buffer_[n - 1], buffer_[n]) > params_.v_inst) {
      markov_.run_length = std::min(markov_.run_length + 1, params_.chain_length);
      markov_.anchor = buffer_first_ + n - markov_.run_length;
    } else {
      markov_ = {};
    }
  }
}

std::optional<std::size_t> GpsFsm::find_start(std::size_t from) const {
  const std::size_t m = params_.chain_length;
  const std::span<const WindowPoint> all(buffer_);
  for (std::size_t end = from + m; end < buffer_.size(); ++end) {
    if (auto pos = check_start_trigger(all.subspan(from, end - from + 1), params_))
      return from + *pos;
  }
  return std::nullopt;
}

void GpsFsm::begin_journey(std::size_t pos) {
  buffer_.erase(buffer_.begin(), buffer_.begin() + static_cast<std::ptrdiff_t>(pos));
  buffer_first_ += pos;
  start_ptr_ = buffer_first_;
  open_points_.clear();
  markov_ = {};
  set_state(GpsFsmState::Found);
  if (buffer_.size() >= params_.hysteresis_windows) set_state(GpsFsmState::Logging);
}

void GpsFsm::commit_front() {
  auto& front = buffer_.front();
  open_points_.insert(open_points_.end(), front.samples.begin(), front.samples.end());
  buffer_.erase(buffer_.begin());
  ++buffer_first_;
}

std::optional<SegmentRecord> GpsFsm::make_segment(std::size_t end_pos, TerminationCause cause) {
  SegmentRecord seg;
  seg.points = std::move(open_points_);
  open_points_.clear();
  for (std::size_t i = 0; i <= end_pos && i < buffer_.size(); ++i)
    seg.points.insert(seg.points.end(), buffer_[i].samples.begin(), buffer_[i].samples.end());
  seg.start_window = start_ptr_.value_or(buffer_first_);
  seg.end_window = buffer_first_ + end_pos;
  seg.cause = cause;
  start_ptr_.reset();
  if (seg.points.size() < 2) return std::nullopt;
  return seg;
}

std::vector<SegmentRecord> GpsFsm::on_window(WindowPoint w) {
  event_t_ = w.t;
  append(std::move(w));
  std::vector<SegmentRecord> out;
  const std::size_t h = params_.hysteresis_windows;
  const std::size_t capacity = std::max(h, params_.chain_length + 1);

  switch (state_) {
    case GpsFsmState::Idle:
    case GpsFsmState::Searching: {
      while (buffer_.size() > capacity) {
        buffer_.erase(buffer_.begin());
        ++buffer_first_;
      }
      if (buffer_.size() < 2) break;
      set_state(GpsFsmState::Searching);
      update_markov();
      if (markov_.run_length >= params_.chain_length) {
        if (auto pos = check_start_trigger(buffer_, params_)) begin_journey(*pos);
      }
      break;
    }
    case GpsFsmState::Found: {
      if (buffer_.size() >= h) set_state(GpsFsmState::Logging);
      break;
    }
    case GpsFsmState::Logging: {
      while (buffer_.size() > h) commit_front();
      if (buffer_displacement(buffer_) >= params_.displacement_m) break;

      if (const auto j = check_stop_trigger(buffer_, params_)) {
        if (auto seg = make_segment(*j, TerminationCause::StopTrigger)) out.push_back(std::move(*seg));
        const std::size_t keep_from = *j + 1;
        buffer_.erase(buffer_.begin(), buffer_.begin() + static_cast<std::ptrdiff_t>(keep_from));
        buffer_first_ += keep_from;
        if (auto pos = find_start(0)) {
          begin_journey(*pos);
        } else {
          set_state(buffer_.size() >= 2 ? GpsFsmState::Searching : GpsFsmState::Idle);
          rescan_markov();
        }
      } else {
        if (auto seg = make_segment(buffer_.size() - 1, TerminationCause::StopTrigger))
          out.push_back(std::move(*seg));
        buffer_.clear();
        buffer_first_ = next_window_;
        markov_ = {};
        set_state(GpsFsmState::Searching);
      }
      break;
    }
  }
  return out;
}

}  // namespace jseg

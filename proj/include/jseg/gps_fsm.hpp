#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "jseg/downsampler.hpp"
#include "jseg/geo.hpp"

namespace jseg {

enum class GpsFsmState { Idle, Searching, Found, Logging };

std::string_view to_string(GpsFsmState s);

struct GpsFsmParams {
  std::size_t window = 3;              // W, raw fixes per down-sampled point
  double v_inst = 1.0;                 // per-window speed threshold, m/s
  double v_cum = 1.0;                  // aggregate speed threshold, m/s
  std::size_t chain_length = 3;        // M, consecutive windows in a trigger
  std::size_t hysteresis_windows = 25; // H
  double displacement_m = 30.0;        // D_H, stop searching only below this
  int sat_min = 5;                     // fewer satellites counts as signal loss
  double sat_timeout_s = 40.0;
  double watchdog_timeout_s = 60.0;

  /// Throws InvalidInput unless every field is positive and M <= H.
  void validate() const;
};

enum class TerminationCause { StopTrigger, SignalTimeout, UserStop };

std::string_view to_string(TerminationCause c);
std::optional<TerminationCause> termination_cause_from(std::string_view s);

/// A tentative journey: the raw fixes from the start anchor to the closing
/// window, inclusive.
struct SegmentRecord {
  LocationSeq points;
  std::size_t start_window = 0;
  std::size_t end_window = 0;
  TerminationCause cause = TerminationCause::StopTrigger;
};

/// Progress of the start-trigger run. `anchor` is the window preceding the
/// first above-threshold velocity of the current run.
struct MarkovChainState {
  std::size_t run_length = 0;
  std::optional<std::size_t> anchor;
};

/// Start trigger over the last M+1 windows of `windows`: all M window speeds
/// exceed v_inst and the aggregate speed over the run exceeds v_cum. Returns
/// the position (in `windows`) of the window the journey starts from.
std::optional<std::size_t> check_start_trigger(std::span<const WindowPoint> windows,
                                               const GpsFsmParams& params);

/// Displacement between the oldest and newest window, in meters.
double buffer_displacement(std::span<const WindowPoint> buffer);

/// Stop trigger over a hysteresis buffer. Returns nothing while the buffer
/// displacement is at or above D_H; otherwise scans oldest-first for the first
/// window j after which M window speeds and their aggregate stay below the
/// thresholds, and returns j (the last window of the journey).
std::optional<std::size_t> check_stop_trigger(std::span<const WindowPoint> buffer,
                                              const GpsFsmParams& params);

/// Online journey logger over a fix stream. Owns its down-sampler; decisions
/// are taken on down-sampled windows while raw fixes are kept for output.
///
/// Events must be delivered in non-decreasing time order. Watchdog and
/// satellite timeouts fire at their due time whenever the clock is advanced
/// past it, so the result does not depend on how often `advance_to` is called.
class GpsFsm {
 public:
  explicit GpsFsm(GpsFsmParams params = {});

  std::vector<SegmentRecord> on_fix(const LocationSample& fix);
  std::vector<SegmentRecord> on_window(WindowPoint w);
  std::vector<SegmentRecord> on_signal_status(TimeMs t, int sats);
  std::optional<SegmentRecord> on_watchdog(TimeMs t);

  /// Fires any watchdog or satellite timeout due at or before `t`.
  std::vector<SegmentRecord> advance_to(TimeMs t);

  /// User stop: flushes the partial window and closes any open journey.
  std::vector<SegmentRecord> stop(TimeMs t);

  GpsFsmState state() const { return state_; }
  bool journey_active() const {
    return state_ == GpsFsmState::Found || state_ == GpsFsmState::Logging;
  }
  const MarkovChainState& markov() const { return markov_; }
  std::span<const WindowPoint> buffer() const { return buffer_; }
  std::size_t windows_seen() const { return next_window_; }
  std::optional<std::size_t> start_ptr() const { return start_ptr_; }
  const GpsFsmParams& params() const { return params_; }

  /// Called as (from, to, t) on every state change.
  using TransitionObserver = std::function<void(GpsFsmState, GpsFsmState, TimeMs)>;
  void set_transition_observer(TransitionObserver obs) { observer_ = std::move(obs); }

  /// When the FSM last left Found/Logging; empty while a journey is active or
  /// if it never had one.
  std::optional<TimeMs> inactive_since() const {
    return journey_active() ? std::nullopt : inactive_since_;
  }

 private:
  void append(WindowPoint w);
  void update_markov();
  void rescan_markov();
  std::optional<std::size_t> find_start(std::size_t from) const;
  void begin_journey(std::size_t pos);
  void commit_front();
  std::optional<SegmentRecord> make_segment(std::size_t end_pos, TerminationCause cause);
  std::optional<SegmentRecord> close_on_timeout(TerminationCause cause);
  void set_state(GpsFsmState next);
  void reset_to_idle();
  void check_clock(TimeMs t);

  GpsFsmParams params_;
  Downsampler downsampler_;
  GpsFsmState state_ = GpsFsmState::Idle;
  MarkovChainState markov_;

  std::vector<WindowPoint> buffer_;
  std::size_t buffer_first_ = 0;  // window index of buffer_[0]
  std::size_t next_window_ = 0;
  std::optional<TimeMs> last_window_t_;

  std::optional<std::size_t> start_ptr_;
  LocationSeq open_points_;  // raw fixes of the journey already aged out of the buffer

  TimeMs clock_ = 0;
  TimeMs event_t_ = 0;  // time attributed to the transition being processed
  std::optional<TimeMs> inactive_since_;
  bool clock_started_ = false;
  std::optional<TimeMs> last_fix_t_;
  bool watchdog_fired_ = false;
  std::optional<TimeMs> low_sats_since_;
  bool sat_timeout_fired_ = false;
  TransitionObserver observer_;
};

}  // namespace jseg

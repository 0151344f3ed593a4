#include "jseg/controller.hpp"

#include <cmath>
#include <memory>
#include <optional>

#include "jseg/error.hpp"
#include "jseg/segment_spool.hpp"

namespace jseg {

namespace {

enum class EventKind { Fix, Status, Accel };

struct Event {
  EventKind kind;
  TimeMs t;
  std::size_t index;
};

/// Merges the three streams by time; ties resolve fix < status < accel.
class EventMerger {
 public:
  explicit EventMerger(const TraceBundle& trace) : trace_(trace) {}

  std::optional<Event> next() {
    std::optional<Event> best;
    auto consider = [&](EventKind kind, TimeMs t, std::size_t idx) {
      if (!best || t < best->t) best = Event{kind, t, idx};
    };
    if (fix_ < trace_.gps.size()) consider(EventKind::Fix, trace_.gps[fix_].t, fix_);
    if (status_ < trace_.sat_status.size())
      consider(EventKind::Status, trace_.sat_status[status_].t, status_);
    if (accel_ < trace_.accel.size()) consider(EventKind::Accel, trace_.accel[accel_].t, accel_);
    if (!best) return std::nullopt;
    switch (best->kind) {
      case EventKind::Fix: ++fix_; break;
      case EventKind::Status: ++status_; break;
      case EventKind::Accel: ++accel_; break;
    }
    return best;
  }

 private:
  const TraceBundle& trace_;
  std::size_t fix_ = 0;
  std::size_t status_ = 0;
  std::size_t accel_ = 0;
};

TimeMs seconds_to_ms(double s) { return static_cast<TimeMs>(std::llround(s * 1000.0)); }

void spool_all(SegmentSpool& spool, const std::vector<SegmentRecord>& segs, std::size_t& count) {
  for (const auto& s : segs) {
    spool.append(s);
    ++count;
  }
}

std::vector<Journey> drain(SegmentSpool& spool, const PostprocParams& params) {
  if (spool.empty()) return {};
  auto journeys = run_pipeline(journeys_from_segments(spool.read_all()), params);
  spool.clear();
  return journeys;
}

}  // namespace

void ControllerParams::validate() const {
  gps.validate();
  postproc.validate();
  motion.validate();
  if (!(idle_timeout_s > 0.0)) throw InvalidInput("controller: idle_timeout must be positive");
  if (!(reacquisition_delay_s >= 0.0)) throw InvalidInput("controller: reacquisition delay must be >= 0");
}

PipelineResult segment_trace(const TraceBundle& trace, TimeMs start, TimeMs stop,
                             const GpsFsmParams& gps, const PostprocParams& postproc) {
  trace.validate();
  if (stop < start) throw InvalidInput("segment_trace: stop precedes start");
  GpsFsm fsm(gps);
  SegmentSpool spool;
  PipelineResult result;
  std::size_t count = 0;
  auto keep = [&](std::vector<SegmentRecord> segs) {
    spool_all(spool, segs, count);
    std::move(segs.begin(), segs.end(), std::back_inserter(result.segments));
  };

  EventMerger merger(trace);
  while (auto ev = merger.next()) {
    if (ev->t < start) continue;
    if (ev->t > stop) break;
    if (ev->kind == EventKind::Fix) {
      keep(fsm.on_fix(trace.gps[ev->index]));
    } else if (ev->kind == EventKind::Status) {
      keep(fsm.on_signal_status(ev->t, trace.sat_status[ev->index].sats));
    }
  }
  keep(fsm.stop(stop));
  result.journeys = drain(spool, postproc);
  return result;
}

ControllerResult run_controller(const TraceBundle& trace, TimeMs start, TimeMs stop,
                                const ControllerParams& params) {
  params.validate();
  trace.validate();
  if (stop < start) throw InvalidInput("run_controller: stop precedes start");

  const bool saving = params.battery_aware();
  const TimeMs idle_timeout = saving ? seconds_to_ms(params.idle_timeout_s) : 0;
  const TimeMs dead_time = seconds_to_ms(params.reacquisition_delay_s);

  ControllerResult result;
  SegmentSpool spool;
  GlobalState state = GlobalState::Gps;
  TimeMs state_since = start;
  TimeMs gps_live_from = start;
  auto fsm = std::make_unique<GpsFsm>(params.gps);
  MotionFsm motion(params.motion);

  auto spool_segs = [&](const std::vector<SegmentRecord>& segs) {
    spool_all(spool, segs, result.segment_count);
  };
  auto collect = [&] {
    auto journeys = drain(spool, params.postproc);
    std::move(journeys.begin(), journeys.end(), std::back_inserter(result.journeys));
  };
  auto switch_to = [&](GlobalState next, TimeMs at) {
    result.timeline.append(state_since, at, state);
    state = next;
    state_since = at;
  };
  // Time at which an idle GPS logger hands over to the accelerometer.
  auto idle_switch_due = [&]() -> std::optional<TimeMs> {
    if (!saving || fsm->journey_active()) return std::nullopt;
    return fsm->inactive_since().value_or(gps_live_from) + idle_timeout;
  };
  auto to_acc = [&](TimeMs at) {
    collect();
    switch_to(GlobalState::Acc, at);
    motion.reset();
  };
  auto try_idle_switch = [&](TimeMs t) {
    if (state != GlobalState::Gps) return false;
    const auto due = idle_switch_due();
    if (!due || *due > t) return false;
    to_acc(*due);
    return true;
  };

  EventMerger merger(trace);
  while (auto ev = merger.next()) {
    if (ev->t < start) continue;
    if (ev->t > stop) break;

    if (state == GlobalState::Gps && ev->t >= gps_live_from) {
      if (!try_idle_switch(ev->t)) {
        spool_segs(fsm->advance_to(ev->t));
        try_idle_switch(ev->t);
      }
    }

    if (state == GlobalState::Gps) {
      if (ev->t < gps_live_from) continue;
      if (ev->kind == EventKind::Fix) {
        spool_segs(fsm->on_fix(trace.gps[ev->index]));
      } else if (ev->kind == EventKind::Status) {
        spool_segs(fsm->on_signal_status(ev->t, trace.sat_status[ev->index].sats));
      }
    } else if (state == GlobalState::Acc && ev->kind == EventKind::Accel) {
      if (auto decision = motion.on_accel(trace.accel[ev->index])) {
        switch_to(GlobalState::Gps, decision->t);
        result.wakeups.push_back(decision->t);
        gps_live_from = decision->t + dead_time;
        fsm = std::make_unique<GpsFsm>(params.gps);
      }
    }
  }

  if (state == GlobalState::Gps) {
    if (!try_idle_switch(stop)) {
      if (stop >= gps_live_from) spool_segs(fsm->stop(stop));
      collect();
    }
  }
  switch_to(GlobalState::Off, stop);
  return result;
}

}  // namespace jseg

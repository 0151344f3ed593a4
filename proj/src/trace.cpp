#include "jseg/trace.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "jseg/error.hpp"

namespace jseg {

namespace {

template <typename Seq>
void extend_range(const Seq& seq, TimeMs& lo, TimeMs& hi) {
  if (seq.empty()) return;
  lo = std::min(lo, seq.front().t);
  hi = std::max(hi, seq.back().t);
}

template <typename Seq>
void require_sorted(const Seq& seq, const char* name, bool strict) {
  for (std::size_t i = 1; i < seq.size(); ++i) {
    const bool bad = strict ? seq[i].t <= seq[i - 1].t : seq[i].t < seq[i - 1].t;
    if (bad) {
      throw OrderingError(std::string(name) + " stream out of order at record " + std::to_string(i + 1));
    }
  }
}

}  // namespace

TimeMs TraceBundle::first_t() const {
  TimeMs lo = std::numeric_limits<TimeMs>::max();
  TimeMs hi = std::numeric_limits<TimeMs>::min();
  extend_range(gps, lo, hi);
  extend_range(sat_status, lo, hi);
  extend_range(accel, lo, hi);
  extend_range(pings, lo, hi);
  return lo > hi ? 0 : lo;
}

TimeMs TraceBundle::last_t() const {
  TimeMs lo = std::numeric_limits<TimeMs>::max();
  TimeMs hi = std::numeric_limits<TimeMs>::min();
  extend_range(gps, lo, hi);
  extend_range(sat_status, lo, hi);
  extend_range(accel, lo, hi);
  extend_range(pings, lo, hi);
  return lo > hi ? 0 : hi;
}

void TraceBundle::validate() const {
  require_sorted(gps, "gps", true);
  require_sorted(sat_status, "satellite status", false);
  require_sorted(accel, "accel", true);
  require_sorted(pings, "ping", false);
  for (std::size_t i = 0; i < gps.size(); ++i) {
    const auto& s = gps[i];
    if (!(s.lat >= -90.0 && s.lat <= 90.0))
      throw InvalidInput("gps record " + std::to_string(i + 1) + ": lat out of range");
    if (!(s.lon >= -180.0 && s.lon <= 180.0))
      throw InvalidInput("gps record " + std::to_string(i + 1) + ": lon out of range");
    if (s.sats && *s.sats < 0)
      throw InvalidInput("gps record " + std::to_string(i + 1) + ": sats negative");
  }
}

std::vector<DiaryEntry> diary_from_pings(const std::vector<Ping>& pings) {
  std::vector<DiaryEntry> out;
  bool open = false;
  TimeMs start = 0;
  for (const auto& p : pings) {
    if (p.label == "start") {
      open = true;
      start = p.t;
    } else if (p.label == "stop" && open) {
      out.push_back({start, p.t});
      open = false;
    }
  }
  return out;
}

}  // namespace jseg

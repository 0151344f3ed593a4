#include "jseg/validation.hpp"

#include <algorithm>

#include "jseg/error.hpp"

namespace jseg {

const char* to_string(DetectionClass c) {
  switch (c) {
    case DetectionClass::Full: return "full";
    case DetectionClass::Clipped: return "clipped";
    case DetectionClass::Missed: return "missed";
  }
  return "?";
}

DetectionReport validate_detection(std::span<const Journey> detected, std::span<const DiaryEntry> truth,
                                   double tol_s) {
  if (!(tol_s >= 0.0)) throw InvalidInput("validate_detection: tolerance must be >= 0");
  std::vector<DiaryEntry> diary(truth.begin(), truth.end());
  std::sort(diary.begin(), diary.end(), [](const auto& a, const auto& b) { return a.start_t < b.start_t; });
  for (std::size_t i = 0; i < diary.size(); ++i) {
    if (diary[i].end_t < diary[i].start_t) throw InvalidInput("validate_detection: diary entry ends before it starts");
    if (i > 0 && diary[i].start_t < diary[i - 1].end_t)
      throw InvalidInput("validate_detection: overlapping diary entries");
  }

  const auto tol_ms = static_cast<TimeMs>(tol_s * 1000.0);
  DetectionReport report;
  for (const auto& e : diary) {
    EntryDetection d;
    d.truth = e;
    TimeMs best_overlap = -1;
    bool full = false;
    for (std::size_t j = 0; j < detected.size(); ++j) {
      const auto& jn = detected[j];
      const TimeMs lo = std::max(jn.start_t, e.start_t);
      const TimeMs hi = std::min(jn.end_t, e.end_t);
      if (hi <= lo) continue;
      if (hi - lo > best_overlap) {
        best_overlap = hi - lo;
        d.match = j;
      }
      const TimeMs need_lo = std::min(e.start_t + tol_ms, e.end_t);
      const TimeMs need_hi = std::max(e.end_t - tol_ms, need_lo);
      if (jn.start_t <= need_lo && jn.end_t >= need_hi) full = true;
    }
    if (d.match) {
      const auto& jn = detected[*d.match];
      d.start_error_s = static_cast<double>(jn.start_t - e.start_t) / 1000.0;
      d.end_error_s = static_cast<double>(jn.end_t - e.end_t) / 1000.0;
      d.result = full ? DetectionClass::Full : DetectionClass::Clipped;
    }
    switch (d.result) {
      case DetectionClass::Full: ++report.full; break;
      case DetectionClass::Clipped: ++report.clipped; break;
      case DetectionClass::Missed: ++report.missed; break;
    }
    report.entries.push_back(d);
  }
  if (!diary.empty()) {
    const auto n = static_cast<double>(diary.size());
    report.full_fraction = static_cast<double>(report.full) / n;
    report.clipped_fraction = static_cast<double>(report.clipped) / n;
    report.missed_fraction = static_cast<double>(report.missed) / n;
  }
  return report;
}

}  // namespace jseg

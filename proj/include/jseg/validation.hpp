#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "jseg/geo.hpp"
#include "jseg/trace.hpp"

namespace jseg {

enum class DetectionClass { Full, Clipped, Missed };

const char* to_string(DetectionClass c);

struct EntryDetection {
  DiaryEntry truth;
  DetectionClass result = DetectionClass::Missed;
  /// Overlapping detected journey with the largest overlap, if any.
  std::optional<std::size_t> match;
  double start_error_s = 0.0;  // detected start minus true start
  double end_error_s = 0.0;    // detected end minus true end
};

struct DetectionReport {
  std::vector<EntryDetection> entries;
  std::size_t full = 0;
  std::size_t clipped = 0;
  std::size_t missed = 0;
  double full_fraction = 0.0;
  double clipped_fraction = 0.0;
  double missed_fraction = 0.0;
};

/// Classifies every diary entry against the detected journeys. An entry is
/// fully detected when one journey spans [start + tol, end - tol], clipped
/// when journeys overlap it without spanning it, and missed otherwise.
/// Fractions are zero for an empty diary. Throws InvalidInput when diary
/// entries overlap or are inverted.
DetectionReport validate_detection(std::span<const Journey> detected, std::span<const DiaryEntry> truth,
                                   double tol_s = 60.0);

}  // namespace jseg

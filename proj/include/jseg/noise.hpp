#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "jseg/geo.hpp"

namespace jseg {

struct StaticNoiseStats {
  LatLon mean;
  double max_dev_lat = 0.0;  // degrees
  double max_dev_lon = 0.0;  // degrees
  std::size_t count = 0;
};

/// Mean position of a stationary recording and the largest componentwise
/// deviation from it. Throws InsufficientData below 2 fixes.
StaticNoiseStats static_noise_stats(std::span<const LocationSample> fixes);

/// A straight-line run at a known constant speed.
struct NoiseRun {
  LocationSeq fixes;
  double nominal_speed = 0.0;  // m/s
};

struct SweepRow {
  std::size_t w = 0;
  double mean_dev = 0.0;  // m/s
  double p95_dev = 0.0;   // m/s, nearest-rank over all pooled deviations
  double max_dev = 0.0;   // m/s
  std::size_t pairs = 0;    // (run, offset) pairs that contributed
  std::size_t skipped = 0;  // pairs with fewer than 2 blocks
};

/// Block-averaged speed error as a function of the averaging window.
///
/// For each w and each offset k in [0, w), fixes k, k+1, ... are grouped into
/// consecutive full blocks of w; each block becomes its mean position at its
/// mean timestamp. Consecutive blocks give a speed whose absolute error from
/// the nominal speed is summed and divided by the block count. mean_dev
/// averages that quantity over all contributing (run, offset) pairs.
std::vector<SweepRow> dynamic_noise_sweep(std::span<const NoiseRun> runs, std::size_t w_max = 10);

}  // namespace jseg

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jseg/motion_fsm.hpp"

namespace jseg {

/// A recorded accelerometer run with its ground-truth label.
struct LabeledAccelRun {
  std::string name;
  std::vector<FilteredAccel> samples;
  bool motion = false;
  /// True onset of motion; defaults to the first sample for motion runs.
  std::optional<TimeMs> onset;
};

/// Confusion counts and delay statistics. Rates are normalised per actual
/// class: FNR = FN / (TP + FN), FPR = FP / (TN + FP).
struct ClassificationOutcome {
  std::size_t tp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;
  std::size_t fp = 0;
  double fnr = 0.0;
  double fpr = 0.0;
  double n_n = 0.0;  // mean samples to a negative decision over true negatives
  double n_p = 0.0;  // mean samples from onset to detection over true positives
};

inline constexpr double kCostWeightFnr = 12.0;
inline constexpr double kCostWeightFpr = 4.0;
inline constexpr double kCostWeightNn = 0.02;
inline constexpr double kCostWeightNp = 0.04;

double cost(double fnr, double fpr, double n_n, double n_p);
double cost(const ClassificationOutcome& o);

/// Replays the motion detector with `params` over every run.
///
/// A motion run is a true positive when any decision fires; N_P counts the
/// samples from onset through the decision (0 if it fired before onset). A
/// still run is a false positive when any decision fires; otherwise N_N is the
/// sample count up to the first rejected EXTRA excursion, or the run length if
/// none occurred. Throws InvalidInput unless both labels are present.
ClassificationOutcome score_params(const MotionParams& params, std::span<const LabeledAccelRun> runs);

struct AnnealingConfig {
  std::size_t epochs = 10'000;
  double initial_temperature = 1.0;
  double cooling = 0.995;           // geometric, per epoch
  double proposal_fraction = 0.1;   // proposal window width relative to each range
  std::uint64_t seed = 1;
  std::optional<MotionParams> start;  // random point in the box when empty

  void validate() const;
};

struct TuningResult {
  MotionParams params;
  ClassificationOutcome outcome;
  double cost = 0.0;
  std::size_t evaluations = 0;
  std::size_t accepted = 0;
  /// Cost of the current state after each epoch.
  std::vector<double> trace;
};

/// Simulated annealing with Metropolis acceptance over the parameter box.
/// Integer parameters move on their lattice; results are deterministic for a
/// given seed. A zero initial temperature accepts only non-worsening moves.
TuningResult anneal(std::span<const LabeledAccelRun> runs, const AnnealingConfig& config);

/// Uniform random sampling of the box for `config.epochs` evaluations.
TuningResult random_search(std::span<const LabeledAccelRun> runs, const AnnealingConfig& config);

}  // namespace jseg

#pragma once

// Independent reference computations used by the tests. Nothing here calls
// into the library code it checks.

#include <array>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "jseg/geo.hpp"
#include "jseg/motion_fsm.hpp"
#include "jseg/tuning.hpp"

namespace oracle {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kR = 6'371'000.0;

/// Great-circle distance through the 3-D chord between unit vectors.
double chord_distance(double lat1, double lon1, double lat2, double lon2);

/// Longitude offset in degrees for `meters` along the equator (exact on a sphere).
inline double equator_deg(double meters) { return meters / kR * 180.0 / kPi; }

/// Least-squares y = c0 + c1 x + c2 x^2 by normal equations and Cramer's rule.
std::array<double, 3> quadratic_fit(const std::vector<double>& x, const std::vector<double>& y);

/// Offline re-derivation of the two-stage motion detector on a sample
/// sequence: index of the confirming sample, and index of the sample that
/// ended the first rejected EXTRA stage.
struct MotionReplay {
  std::optional<std::size_t> decision;
  std::optional<std::size_t> first_rejection;
};
MotionReplay replay_motion(const std::vector<double>& dev, const jseg::MotionParams& p);

/// Confusion counts and delays from `replay_motion`, written out longhand.
jseg::ClassificationOutcome score_replay(const jseg::MotionParams& p, const std::vector<jseg::LabeledAccelRun>& runs);

/// Cost at every point of a quantised 5-D grid; returns the sorted costs and
/// the arg-min.
struct GridResult {
  jseg::MotionParams best;
  double best_cost = 0.0;
  std::vector<double> sorted_costs;
};
GridResult grid_search(const std::vector<jseg::LabeledAccelRun>& runs);

/// Accelerometer corpus where motion (walking) and still runs (rest, indoor
/// knocks, vehicle vibration) are separable by th1 = 1, th2 = 3.
struct AccelCorpus {
  std::vector<jseg::LabeledAccelRun> runs;
  std::vector<std::vector<jseg::AccelSample>> raw;
};
AccelCorpus separable_corpus(std::uint64_t seed, std::size_t motion_runs, std::size_t still_runs);

/// Straight eastward run along the equator at `speed` m/s, one fix every
/// `period_ms`, with isotropic Gaussian noise of `sigma_m` meters.
jseg::LocationSeq equator_run(std::size_t n, double speed, double sigma_m, std::uint64_t seed,
                              jseg::TimeMs period_ms = 2000);

/// Block sweep written as nested index loops.
struct SweepOracle {
  double mean_dev;
  double max_dev;
};
SweepOracle sweep_at(const std::vector<jseg::LocationSeq>& runs, double nominal, std::size_t w);

}  // namespace oracle

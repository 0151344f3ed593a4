#include "jseg/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "jseg/error.hpp"

namespace jseg {

namespace {

constexpr std::size_t kBufMin = 1;
constexpr std::size_t kBufMax = 20;
constexpr double kThMax = 5.0;
constexpr std::size_t kWinMin = 1;
constexpr std::size_t kWinMax = 5;

struct Proposer {
  std::mt19937_64 rng;
  double fraction;

  std::size_t step_int(std::size_t v, std::size_t lo, std::size_t hi) {
    const auto half = std::max<long>(1, std::lround(fraction * static_cast<double>(hi - lo) / 2.0));
    std::uniform_int_distribution<long> d(-half, half);
    const long next = static_cast<long>(v) + d(rng);
    return static_cast<std::size_t>(std::clamp<long>(next, static_cast<long>(lo), static_cast<long>(hi)));
  }

  double step_real(double v, double lo, double hi) {
    const double half = fraction * (hi - lo) / 2.0;
    std::uniform_real_distribution<double> d(-half, half);
    return std::clamp(v + d(rng), lo, hi);
  }

  MotionParams propose(const MotionParams& p) {
    MotionParams q;
    q.n1 = step_int(p.n1, kBufMin, kBufMax);
    q.th1 = step_real(p.th1, 0.0, kThMax);
    q.n2 = step_int(p.n2, kBufMin, kBufMax);
    q.th2 = step_real(p.th2, 0.0, kThMax);
    q.w2 = step_int(p.w2, kWinMin, kWinMax);
    return q;
  }

  MotionParams uniform() {
    std::uniform_int_distribution<std::size_t> buf(kBufMin, kBufMax);
    std::uniform_int_distribution<std::size_t> win(kWinMin, kWinMax);
    std::uniform_real_distribution<double> th(0.0, kThMax);
    MotionParams q;
    q.n1 = buf(rng);
    q.th1 = th(rng);
    q.n2 = buf(rng);
    q.th2 = th(rng);
    q.w2 = win(rng);
    return q;
  }
};

}  // namespace

double cost(double fnr, double fpr, double n_n, double n_p) {
  return kCostWeightFnr * fnr + kCostWeightFpr * fpr + kCostWeightNn * n_n + kCostWeightNp * n_p;
}

double cost(const ClassificationOutcome& o) { return cost(o.fnr, o.fpr, o.n_n, o.n_p); }

ClassificationOutcome score_params(const MotionParams& params, std::span<const LabeledAccelRun> runs) {
  if (runs.empty()) throw InvalidInput("score_params: no runs");
  const bool has_motion = std::any_of(runs.begin(), runs.end(), [](const auto& r) { return r.motion; });
  const bool has_still = std::any_of(runs.begin(), runs.end(), [](const auto& r) { return !r.motion; });
  if (!has_motion || !has_still) throw InvalidInput("score_params: need runs of both labels");

  ClassificationOutcome o;
  double sum_np = 0.0;
  double sum_nn = 0.0;
  for (const auto& run : runs) {
    MotionFsm fsm(params);
    std::optional<std::size_t> decided_at;
    std::optional<std::size_t> first_rejection;
    for (std::size_t i = 0; i < run.samples.size(); ++i) {
      if (fsm.on_filtered(run.samples[i])) {
        decided_at = i;
        break;
      }
      if (!first_rejection && fsm.extra_rejections() > 0) first_rejection = i;
    }

    if (run.motion) {
      if (!decided_at) {
        ++o.fn;
        continue;
      }
      ++o.tp;
      const TimeMs onset = run.onset.value_or(run.samples.empty() ? 0 : run.samples.front().t);
      std::size_t n = 0;
      for (std::size_t i = 0; i <= *decided_at; ++i) {
        if (run.samples[i].t >= onset) ++n;
      }
      sum_np += static_cast<double>(n);
    } else {
      if (decided_at) {
        ++o.fp;
        continue;
      }
      ++o.tn;
      sum_nn += static_cast<double>(first_rejection ? *first_rejection + 1 : run.samples.size());
    }
  }
  o.fnr = static_cast<double>(o.fn) / static_cast<double>(o.tp + o.fn);
  o.fpr = static_cast<double>(o.fp) / static_cast<double>(o.tn + o.fp);
  o.n_p = o.tp ? sum_np / static_cast<double>(o.tp) : 0.0;
  o.n_n = o.tn ? sum_nn / static_cast<double>(o.tn) : 0.0;
  return o;
}

void AnnealingConfig::validate() const {
  if (epochs == 0) throw InvalidInput("annealing: epochs must be positive");
  if (!(initial_temperature >= 0.0)) throw InvalidInput("annealing: temperature must be >= 0");
  if (!(cooling > 0.0 && cooling <= 1.0)) throw InvalidInput("annealing: cooling must be in (0, 1]");
  if (!(proposal_fraction > 0.0 && proposal_fraction <= 1.0))
    throw InvalidInput("annealing: proposal_fraction must be in (0, 1]");
  if (start) start->validate();
}

TuningResult anneal(std::span<const LabeledAccelRun> runs, const AnnealingConfig& config) {
  config.validate();
  Proposer proposer{std::mt19937_64(config.seed), config.proposal_fraction};
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  TuningResult result;
  MotionParams current = config.start ? *config.start : proposer.uniform();
  ClassificationOutcome current_outcome = score_params(current, runs);
  double current_cost = cost(current_outcome);
  result.params = current;
  result.outcome = current_outcome;
  result.cost = current_cost;
  result.evaluations = 1;
  result.trace.reserve(config.epochs);

  double temperature = config.initial_temperature;
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    const MotionParams candidate = proposer.propose(current);
    const ClassificationOutcome outcome = score_params(candidate, runs);
    const double c = cost(outcome);
    ++result.evaluations;

    const double delta = c - current_cost;
    const bool accept = delta <= 0.0 ||
                        (temperature > 0.0 && unit(proposer.rng) < std::exp(-delta / temperature));
    if (accept) {
      current = candidate;
      current_outcome = outcome;
      current_cost = c;
      ++result.accepted;
      if (c < result.cost) {
        result.params = candidate;
        result.outcome = outcome;
        result.cost = c;
      }
    }
    result.trace.push_back(current_cost);
    temperature *= config.cooling;
  }
  return result;
}

TuningResult random_search(std::span<const LabeledAccelRun> runs, const AnnealingConfig& config) {
  config.validate();
  Proposer proposer{std::mt19937_64(config.seed), config.proposal_fraction};
  TuningResult result;
  result.cost = std::numeric_limits<double>::infinity();
  result.trace.reserve(config.epochs);
  for (std::size_t i = 0; i < config.epochs; ++i) {
    const MotionParams candidate = (i == 0 && config.start) ? *config.start : proposer.uniform();
    const ClassificationOutcome outcome = score_params(candidate, runs);
    const double c = cost(outcome);
    ++result.evaluations;
    if (c < result.cost) {
      result.params = candidate;
      result.outcome = outcome;
      result.cost = c;
      ++result.accepted;
    }
    result.trace.push_back(result.cost);
  }
  return result;
}

}  // namespace jseg

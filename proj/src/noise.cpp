#include "jseg/noise.hpp"

#include <algorithm>
#include <cmath>

#include "jseg/error.hpp"

namespace jseg {

StaticNoiseStats static_noise_stats(std::span<const LocationSample> fixes) {
  if (fixes.size() < 2) throw InsufficientData("static_noise_stats: need at least 2 fixes");
  StaticNoiseStats s;
  s.count = fixes.size();
  double lat = 0.0;
  double lon = 0.0;
  for (const auto& f : fixes) {
    lat += f.lat;
    lon += f.lon;
  }
  s.mean = {lat / static_cast<double>(fixes.size()), lon / static_cast<double>(fixes.size())};
  for (const auto& f : fixes) {
    s.max_dev_lat = std::max(s.max_dev_lat, std::abs(f.lat - s.mean.lat));
    s.max_dev_lon = std::max(s.max_dev_lon, std::abs(f.lon - s.mean.lon));
  }
  return s;
}

namespace {

struct Block {
  double t_s;
  LatLon pos;
};

std::vector<Block> blocks_from(const LocationSeq& fixes, std::size_t w, std::size_t k) {
  std::vector<Block> out;
  for (std::size_t i = k; i + w <= fixes.size(); i += w) {
    double t = 0.0;
    double lat = 0.0;
    double lon = 0.0;
    for (std::size_t j = i; j < i + w; ++j) {
      t += static_cast<double>(fixes[j].t) / 1000.0;
      lat += fixes[j].lat;
      lon += fixes[j].lon;
    }
    const auto n = static_cast<double>(w);
    out.push_back({t / n, {lat / n, lon / n}});
  }
  return out;
}

}  // namespace

std::vector<SweepRow> dynamic_noise_sweep(std::span<const NoiseRun> runs, std::size_t w_max) {
  if (runs.empty()) throw InvalidInput("dynamic_noise_sweep: no runs");
  if (w_max == 0) throw InvalidInput("dynamic_noise_sweep: w_max must be positive");
  for (const auto& r : runs) {
    if (!(r.nominal_speed >= 0.0)) throw InvalidInput("dynamic_noise_sweep: nominal speed must be >= 0");
    for (std::size_t i = 1; i < r.fixes.size(); ++i) {
      if (r.fixes[i].t <= r.fixes[i - 1].t) throw OrderingError("dynamic_noise_sweep: fixes not time-ordered");
    }
  }

  std::vector<SweepRow> rows;
  for (std::size_t w = 1; w <= w_max; ++w) {
    SweepRow row;
    row.w = w;
    std::vector<double> devs;
    double term_sum = 0.0;
    for (const auto& run : runs) {
      for (std::size_t k = 0; k < w; ++k) {
        const auto blocks = blocks_from(run.fixes, w, k);
        if (blocks.size() < 2) {
          ++row.skipped;
          continue;
        }
        double sum = 0.0;
        for (std::size_t j = 1; j < blocks.size(); ++j) {
          const double v = haversine(blocks[j].pos, blocks[j - 1].pos) / (blocks[j].t_s - blocks[j - 1].t_s);
          const double d = std::abs(v - run.nominal_speed);
          sum += d;
          devs.push_back(d);
        }
        term_sum += sum / static_cast<double>(blocks.size());
        ++row.pairs;
      }
    }
    if (row.pairs > 0) {
      row.mean_dev = term_sum / static_cast<double>(row.pairs);
      std::sort(devs.begin(), devs.end());
      const auto rank = static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(devs.size())));
      row.p95_dev = devs[rank == 0 ? 0 : rank - 1];
      row.max_dev = devs.back();
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace jseg

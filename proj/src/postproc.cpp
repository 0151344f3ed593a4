#include "jseg/postproc.hpp"

#include <algorithm>
#include <string>

#include "jseg/error.hpp"

namespace jseg {

void PostprocParams::validate() const {
  if (!(low_len_m > 0.0) || !(high_len_m > 0.0) || !(low_len_m < high_len_m))
    throw InvalidInput("postproc params: need 0 < low_len < high_len");
  if (!(join_gap_s > 0.0) || !(join_tolerance >= 1.0))
    throw InvalidInput("postproc params: join_gap must be positive and join_tolerance >= 1");
  if (!(tail_speed > 0.0) || tail_max_cuts == 0 || join_avg_count == 0)
    throw InvalidInput("postproc params: tail and join counts must be positive");
}

std::vector<Journey> journeys_from_segments(const std::vector<SegmentRecord>& segments) {
  std::vector<Journey> out;
  out.reserve(segments.size());
  for (const auto& s : segments) {
    if (!s.points.empty()) out.push_back(Journey::from_points(s.points));
  }
  return out;
}

double terminal_speed(const Journey& j, std::size_t count) {
  const auto& p = j.points;
  if (p.size() < 2 || count == 0) return 0.0;
  const std::size_t k = std::min(count, p.size() - 1);
  double sum = 0.0;
  for (std::size_t i = p.size() - k; i < p.size(); ++i) sum += speed(p[i - 1], p[i]);
  return sum / static_cast<double>(k);
}

bool can_join(const Journey& first, const Journey& second, const PostprocParams& params) {
  const double gap_s = seconds_between(first.end_t, second.start_t);
  if (!(gap_s > 0.0) || !(gap_s < params.join_gap_s)) return false;
  const double gap_speed = haversine(first.points.back().pos(), second.points.front().pos()) / gap_s;
  return gap_speed <= params.join_tolerance * terminal_speed(first, params.join_avg_count);
}

Journey join(const Journey& first, const Journey& second) {
  LocationSeq pts = first.points;
  pts.insert(pts.end(), second.points.begin(), second.points.end());
  return Journey::from_points(std::move(pts));
}

std::vector<Journey> filter_low(std::vector<Journey> journeys, const PostprocParams& params) {
  std::erase_if(journeys, [&](const Journey& j) { return j.extent() < params.low_len_m; });
  return journeys;
}

std::vector<Journey> filter_high(std::vector<Journey> journeys, const PostprocParams& params) {
  std::erase_if(journeys, [&](const Journey& j) { return j.extent() < params.high_len_m; });
  return journeys;
}

std::vector<Journey> concatenate(std::vector<Journey> journeys, const PostprocParams& params) {
  for (std::size_t i = 1; i < journeys.size(); ++i) {
    if (journeys[i].start_t <= journeys[i - 1].end_t) {
      throw OrderingError("concatenate: journey " + std::to_string(i) +
                          " starts before its predecessor ends");
    }
  }
  bool joined = true;
  while (joined && journeys.size() >= 2) {
    joined = false;
    for (std::size_t i = journeys.size() - 1; i-- > 0;) {
      if (can_join(journeys[i], journeys[i + 1], params)) {
        journeys[i] = join(journeys[i], journeys[i + 1]);
        journeys.erase(journeys.begin() + static_cast<std::ptrdiff_t>(i) + 1);
        joined = true;
        break;
      }
    }
  }
  return journeys;
}

Journey trim_ends(Journey journey, const PostprocParams& params) {
  auto pts = std::move(journey.points);
  std::size_t head = 0;
  while (head < params.tail_max_cuts && pts.size() - head > 2 &&
         speed(pts[head], pts[head + 1]) > params.tail_speed)
    ++head;
  std::size_t tail = 0;
  while (tail < params.tail_max_cuts && pts.size() - head - tail > 2 &&
         speed(pts[pts.size() - tail - 2], pts[pts.size() - tail - 1]) > params.tail_speed)
    ++tail;
  if (head == 0 && tail == 0) {
    journey.points = std::move(pts);
    return journey;
  }
  LocationSeq kept(pts.begin() + static_cast<std::ptrdiff_t>(head),
                   pts.end() - static_cast<std::ptrdiff_t>(tail));
  return Journey::from_points(std::move(kept));
}

std::vector<Journey> run_pipeline(std::vector<Journey> segments, const PostprocParams& params) {
  params.validate();
  auto journeys = filter_high(concatenate(filter_low(std::move(segments), params), params), params);
  for (auto& j : journeys) j = trim_ends(std::move(j), params);
  return journeys;
}

}  // namespace jseg

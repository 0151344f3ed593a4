#include "jseg/geo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "jseg/error.hpp"

namespace jseg {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

}  // namespace

bool valid_position(const LatLon& p) {
  return std::isfinite(p.lat) && std::isfinite(p.lon) && p.lat >= -90.0 && p.lat <= 90.0 &&
         p.lon >= -180.0 && p.lon <= 180.0;
}

double haversine(const LatLon& a, const LatLon& b) {
  const double phi1 = a.lat * kDegToRad;
  const double phi2 = b.lat * kDegToRad;
  const double dphi = (b.lat - a.lat) * kDegToRad;
  const double dlambda = (b.lon - a.lon) * kDegToRad;

  const double s_phi = std::sin(dphi / 2.0);
  const double s_lambda = std::sin(dlambda / 2.0);
  double h = s_phi * s_phi + std::cos(phi1) * std::cos(phi2) * s_lambda * s_lambda;
  h = std::clamp(h, 0.0, 1.0);
  return 2.0 * kEarthRadiusM * std::asin(std::sqrt(h));
}

double path_distance(std::span<const LocationSample> seq) {
  if (seq.empty()) throw InvalidInput("path_distance: empty sequence");
  double total = 0.0;
  for (std::size_t i = 1; i < seq.size(); ++i) total += haversine(seq[i - 1].pos(), seq[i].pos());
  return total;
}

double speed(const LocationSample& a, const LocationSample& b) {
  if (a.t == b.t) throw InvalidInput("speed: samples share a timestamp");
  return haversine(a.pos(), b.pos()) / std::abs(seconds_between(a.t, b.t));
}

GeoBounds bounds_of(std::span<const LocationSample> points) {
  if (points.empty()) throw InvalidInput("bounds_of: empty sequence");
  GeoBounds b{points.front().pos(), points.front().pos()};
  for (const auto& p : points) {
    b.bl.lat = std::min(b.bl.lat, p.lat);
    b.bl.lon = std::min(b.bl.lon, p.lon);
    b.tr.lat = std::max(b.tr.lat, p.lat);
    b.tr.lon = std::max(b.tr.lon, p.lon);
  }
  return b;
}

double bounds_diagonal(const GeoBounds& b) { return haversine(b.bl, b.tr); }

Journey Journey::from_points(LocationSeq points) {
  if (points.empty()) throw InvalidInput("journey needs at least one point");
  Journey j;
  j.start_t = points.front().t;
  j.end_t = points.back().t;
  j.bounds = bounds_of(points);
  j.path_length = path_distance(points);
  j.points = std::move(points);
  return j;
}

double Journey::extent() const { return bounds_diagonal(bounds); }

}  // namespace jseg

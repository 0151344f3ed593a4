#include "jseg/segment_spool.hpp"

#include <atomic>
#include <fstream>
#include <system_error>

#include <unistd.h>

#include "json.hpp"
#include "jseg/error.hpp"

namespace jseg {

using nlohmann::json;

std::string to_spool_line(const SegmentRecord& seg) {
  json pts = json::array();
  for (const auto& p : seg.points) pts.push_back(json::array({p.t, p.lat, p.lon}));
  json j;
  j["start_t"] = seg.points.empty() ? 0 : seg.points.front().t;
  j["end_t"] = seg.points.empty() ? 0 : seg.points.back().t;
  j["cause"] = std::string(to_string(seg.cause));
  j["points"] = std::move(pts);
  return j.dump();
}

SegmentRecord parse_spool_line(std::string_view line, std::size_t line_no) {
  try {
    const auto j = json::parse(line);
    SegmentRecord seg;
    const auto cause = termination_cause_from(j.at("cause").get<std::string>());
    if (!cause) throw ParseError("spool", line_no, "unknown cause");
    seg.cause = *cause;
    for (const auto& p : j.at("points")) {
      if (!p.is_array() || p.size() != 3) throw ParseError("spool", line_no, "point must be [t, lat, lon]");
      seg.points.push_back({p[0].get<TimeMs>(), p[1].get<double>(), p[2].get<double>(), std::nullopt});
    }
    return seg;
  } catch (const json::exception& e) {
    throw ParseError("spool", line_no, e.what());
  }
}

namespace {

std::filesystem::path unique_temp_path() {
  static std::atomic<unsigned> counter{0};
  const auto name = "jseg-spool-" + std::to_string(::getpid()) + "-" + std::to_string(counter++) + ".jsonl";
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

SegmentSpool::SegmentSpool() : SegmentSpool(unique_temp_path()) { owned_ = true; }

SegmentSpool::SegmentSpool(std::filesystem::path path) : path_(std::move(path)) {
  std::ofstream create(path_, std::ios::trunc);
  if (!create) throw Error("cannot create spool file " + path_.string());
}

SegmentSpool::~SegmentSpool() {
  if (owned_ && !path_.empty()) {
    std::error_code ec;
    std::filesystem::remove(path_, ec);
  }
}

SegmentSpool::SegmentSpool(SegmentSpool&& other) noexcept
    : path_(std::move(other.path_)), owned_(other.owned_), count_(other.count_) {
  other.path_.clear();
  other.owned_ = false;
  other.count_ = 0;
}

SegmentSpool& SegmentSpool::operator=(SegmentSpool&& other) noexcept {
  if (this != &other) {
    if (owned_ && !path_.empty()) {
      std::error_code ec;
      std::filesystem::remove(path_, ec);
    }
    path_ = std::move(other.path_);
    owned_ = other.owned_;
    count_ = other.count_;
    other.path_.clear();
    other.owned_ = false;
    other.count_ = 0;
  }
  return *this;
}

void SegmentSpool::append(const SegmentRecord& seg) {
  std::ofstream out(path_, std::ios::app);
  if (!out) throw Error("cannot append to spool file " + path_.string());
  out << to_spool_line(seg) << '\n';
  ++count_;
}

std::vector<SegmentRecord> SegmentSpool::read_all() const {
  std::ifstream in(path_);
  if (!in) throw Error("cannot read spool file " + path_.string());
  std::vector<SegmentRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    out.push_back(parse_spool_line(line, line_no));
  }
  return out;
}

void SegmentSpool::clear() {
  std::ofstream out(path_, std::ios::trunc);
  count_ = 0;
}

}  // namespace jseg

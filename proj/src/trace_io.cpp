#include "jseg/trace_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "jseg/error.hpp"

namespace jseg {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

std::string format_seconds(TimeMs t) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, static_cast<double>(t) / 1000.0, std::chars_format::fixed);
  return std::string(buf, res.ptr);
}

}  // namespace

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const auto comma = line.find(',', pos);
    out.push_back(trim(line.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

/// Line-oriented CSV reader that checks the header and tracks line numbers.
class CsvReader {
 public:
  CsvReader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

  void expect_header(std::initializer_list<std::string_view> required,
                     std::initializer_list<std::string_view> optional = {}) {
    if (!next()) throw ParseError(source_, line_no_ == 0 ? 1 : line_no_, "missing header");
    const auto& f = fields_;
    bool ok = f.size() >= required.size() && f.size() <= required.size() + optional.size();
    std::size_t i = 0;
    for (auto name : required) ok = ok && f[i++] == name;
    for (auto name : optional) {
      if (i < f.size()) ok = ok && f[i++] == name;
    }
    if (!ok) throw ParseError(source_, line_no_, "unexpected header '" + line_ + "'");
    width_min_ = required.size();
    width_max_ = required.size() + optional.size();
  }

  /// Advances to the next non-blank data row.
  bool next() {
    while (std::getline(in_, line_)) {
      ++line_no_;
      if (trim(line_).empty()) continue;
      fields_ = split(line_);
      if (width_max_ > 0 && (fields_.size() < width_min_ || fields_.size() > width_max_)) {
        fail("expected " + std::to_string(width_min_) + " fields, got " + std::to_string(fields_.size()));
      }
      return true;
    }
    return false;
  }

  std::size_t size() const { return fields_.size(); }
  std::string_view field(std::size_t i) const { return fields_[i]; }

  TimeMs int_field(std::size_t i, std::string_view name) const {
    const auto s = fields_[i];
    TimeMs v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) fail("bad " + std::string(name));
    return v;
  }

  double double_field(std::size_t i, std::string_view name) const {
    const auto s = fields_[i];
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) fail("bad " + std::string(name));
    return v;
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(source_, line_no_, what); }

 private:
  std::istream& in_;
  std::string source_;
  std::string line_;
  std::vector<std::string_view> fields_;
  std::size_t line_no_ = 0;
  std::size_t width_min_ = 0;
  std::size_t width_max_ = 0;
};

std::ifstream open_in(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw Error("cannot open " + p.string());
  return in;
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream out(p, std::ios::trunc);
  if (!out) throw Error("cannot write " + p.string());
  return out;
}

std::string first_line(const fs::path& p) {
  auto in = open_in(p);
  std::string line;
  while (std::getline(in, line)) {
    if (!trim(line).empty()) return std::string(trim(line));
  }
  return {};
}

}  // namespace

void read_gps_csv(std::istream& in, const std::string& source, TraceBundle& out) {
  CsvReader r(in, source);
  r.expect_header({"t_ms", "lat", "lon", "sats"});
  while (r.next()) {
    const TimeMs t = r.int_field(0, "t_ms");
    std::optional<int> sats;
    if (!r.field(3).empty()) sats = static_cast<int>(r.int_field(3, "sats"));
    if (r.field(1).empty() && r.field(2).empty()) {
      if (!sats) r.fail("status row without sats");
      out.sat_status.push_back({t, *sats});
      continue;
    }
    const double lat = r.double_field(1, "lat");
    const double lon = r.double_field(2, "lon");
    if (!(lat >= -90.0 && lat <= 90.0)) r.fail("lat out of range");
    if (!(lon >= -180.0 && lon <= 180.0)) r.fail("lon out of range");
    out.gps.push_back({t, lat, lon, sats});
  }
}

void write_gps_csv(std::ostream& out, const TraceBundle& trace) {
  out << "t_ms,lat,lon,sats\n";
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < trace.gps.size() || j < trace.sat_status.size()) {
    const bool take_fix = j == trace.sat_status.size() ||
                          (i < trace.gps.size() && trace.gps[i].t <= trace.sat_status[j].t);
    if (take_fix) {
      const auto& f = trace.gps[i++];
      out << f.t << ',' << format_double(f.lat) << ',' << format_double(f.lon) << ',';
      if (f.sats) out << *f.sats;
      out << '\n';
    } else {
      const auto& s = trace.sat_status[j++];
      out << s.t << ",,," << s.sats << '\n';
    }
  }
}

std::vector<AccelSample> read_accel_csv(std::istream& in, const std::string& source) {
  CsvReader r(in, source);
  r.expect_header({"t_ms", "ax", "ay", "az"});
  std::vector<AccelSample> out;
  while (r.next()) {
    out.push_back({r.int_field(0, "t_ms"), r.double_field(1, "ax"), r.double_field(2, "ay"),
                   r.double_field(3, "az")});
  }
  return out;
}

void write_accel_csv(std::ostream& out, std::span<const AccelSample> samples) {
  out << "t_ms,ax,ay,az\n";
  for (const auto& s : samples) {
    out << s.t << ',' << format_double(s.ax) << ',' << format_double(s.ay) << ',' << format_double(s.az) << '\n';
  }
}

std::vector<Ping> read_pings_csv(std::istream& in, const std::string& source) {
  CsvReader r(in, source);
  r.expect_header({"t_ms", "label"});
  std::vector<Ping> out;
  while (r.next()) {
    if (r.field(1).empty()) r.fail("empty label");
    out.push_back({r.int_field(0, "t_ms"), std::string(r.field(1))});
  }
  return out;
}

void write_pings_csv(std::ostream& out, std::span<const Ping> pings) {
  out << "t_ms,label\n";
  for (const auto& p : pings) out << p.t << ',' << p.label << '\n';
}

std::vector<DiaryEntry> read_diary_csv(std::istream& in, const std::string& source) {
  CsvReader r(in, source);
  r.expect_header({"start_ms", "end_ms"});
  std::vector<DiaryEntry> out;
  while (r.next()) {
    DiaryEntry e{r.int_field(0, "start_ms"), r.int_field(1, "end_ms")};
    if (e.end_t < e.start_t) r.fail("end_ms before start_ms");
    out.push_back(e);
  }
  return out;
}

void write_diary_csv(std::ostream& out, std::span<const DiaryEntry> diary) {
  out << "start_ms,end_ms\n";
  for (const auto& e : diary) out << e.start_t << ',' << e.end_t << '\n';
}

std::vector<BatteryPoint> read_battery_csv(std::istream& in, const std::string& source) {
  CsvReader r(in, source);
  r.expect_header({"t_ms", "level_pct"}, {"voltage_mv"});
  std::vector<BatteryPoint> out;
  while (r.next()) {
    const BatteryPoint p{r.int_field(0, "t_ms"), r.double_field(1, "level_pct")};
    if (r.size() == 3 && !r.field(2).empty()) (void)r.double_field(2, "voltage_mv");
    if (!out.empty() && p.t <= out.back().t) throw OrderingError(source + ": battery samples not time-ordered");
    out.push_back(p);
  }
  return out;
}

void write_timeline_csv(std::ostream& out, const StateTimeline& timeline) {
  out << "t_seconds,state\n";
  for (const auto& iv : timeline.intervals()) {
    out << format_seconds(iv.start) << ',' << to_string(iv.state) << '\n';
  }
  if (!timeline.empty()) {
    out << format_seconds(timeline.end()) << ',' << to_string(GlobalState::Off) << '\n';
  }
}

StateTimeline read_timeline_csv(std::istream& in, const std::string& source) {
  CsvReader r(in, source);
  r.expect_header({"t_seconds", "state"});
  std::vector<std::pair<TimeMs, GlobalState>> rows;
  while (r.next()) {
    const auto t = static_cast<TimeMs>(std::llround(r.double_field(0, "t_seconds") * 1000.0));
    const auto s = global_state_from(r.field(1));
    if (!s) r.fail("unknown state '" + std::string(r.field(1)) + "'");
    if (!rows.empty() && t < rows.back().first) throw OrderingError(source + ": timeline rows not time-ordered");
    rows.emplace_back(t, *s);
  }
  StateTimeline tl;
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) tl.append(rows[i].first, rows[i + 1].first, rows[i].second);
  return tl;
}

void write_curve_csv(std::ostream& out, const BatteryCurve& curve) {
  out << "t_seconds,level_pct\n";
  for (const auto& p : curve.points) {
    out << format_seconds(p.t) << ',' << format_double(p.level) << '\n';
  }
}

std::string journeys_to_json(std::span<const Journey> journeys) {
  json arr = json::array();
  for (const auto& j : journeys) {
    json pts = json::array();
    for (const auto& p : j.points) pts.push_back(json::array({p.t, p.lat, p.lon}));
    arr.push_back({{"start_t", j.start_t},
                   {"end_t", j.end_t},
                   {"path_length_m", j.path_length},
                   {"bounds",
                    {{"bl", json::array({j.bounds.bl.lat, j.bounds.bl.lon})},
                     {"tr", json::array({j.bounds.tr.lat, j.bounds.tr.lon})}}},
                   {"points", std::move(pts)}});
  }
  return arr.dump(2) + "\n";
}

std::vector<Journey> journeys_from_json(std::string_view text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(source, 1, e.what());
  }
  if (!doc.is_array()) throw ParseError(source, 1, "expected a JSON array of journeys");
  std::vector<Journey> out;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    try {
      LocationSeq pts;
      for (const auto& p : doc[i].at("points")) {
        if (!p.is_array() || p.size() != 3) throw ParseError(source, 1, "journey " + std::to_string(i) + ": bad point");
        pts.push_back({p[0].get<TimeMs>(), p[1].get<double>(), p[2].get<double>(), std::nullopt});
      }
      if (pts.empty()) throw ParseError(source, 1, "journey " + std::to_string(i) + ": no points");
      out.push_back(Journey::from_points(std::move(pts)));
    } catch (const json::exception& e) {
      throw ParseError(source, 1, "journey " + std::to_string(i) + ": " + e.what());
    }
  }
  return out;
}

namespace {

void read_meta(const fs::path& p, TraceMetadata& meta) {
  auto in = open_in(p);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    const auto s = trim(line);
    if (s.empty() || s.front() == '#') continue;
    const auto eq = s.find('=');
    if (eq == std::string_view::npos) throw ParseError(p.string(), n, "expected key=value");
    const auto key = trim(s.substr(0, eq));
    const auto val = std::string(trim(s.substr(eq + 1)));
    try {
      if (key == "device_id") meta.device_id = val;
      else if (key == "gps_rate_hz") meta.gps_rate_hz = std::stod(val);
      else if (key == "accel_rate_hz") meta.accel_rate_hz = std::stod(val);
      else throw ParseError(p.string(), n, "unknown key '" + std::string(key) + "'");
    } catch (const std::logic_error&) {
      throw ParseError(p.string(), n, "bad value for " + std::string(key));
    }
  }
}

}  // namespace

TraceBundle load_trace(const fs::path& path) {
  if (!fs::exists(path)) throw Error("no such file or directory: " + path.string());
  TraceBundle b;
  if (fs::is_directory(path)) {
    bool any = false;
    if (const auto p = path / "gps.csv"; fs::exists(p)) {
      auto in = open_in(p);
      read_gps_csv(in, p.string(), b);
      any = true;
    }
    if (const auto p = path / "accel.csv"; fs::exists(p)) {
      auto in = open_in(p);
      b.accel = read_accel_csv(in, p.string());
      any = true;
    }
    if (!any) throw Error(path.string() + ": no gps.csv or accel.csv");
    if (const auto p = path / "pings.csv"; fs::exists(p)) {
      auto in = open_in(p);
      b.pings = read_pings_csv(in, p.string());
    }
    if (const auto p = path / "meta.cfg"; fs::exists(p)) read_meta(p, b.metadata);
  } else {
    const auto header = first_line(path);
    auto in = open_in(path);
    if (header.rfind("t_ms,lat", 0) == 0) {
      read_gps_csv(in, path.string(), b);
    } else if (header.rfind("t_ms,ax", 0) == 0) {
      b.accel = read_accel_csv(in, path.string());
    } else {
      throw ParseError(path.string(), 1, "unrecognised trace header '" + header + "'");
    }
  }
  b.validate();
  return b;
}

void save_trace(const TraceBundle& trace, const fs::path& dir) {
  fs::create_directories(dir);
  {
    auto out = open_out(dir / "gps.csv");
    write_gps_csv(out, trace);
  }
  {
    auto out = open_out(dir / "accel.csv");
    write_accel_csv(out, trace.accel);
  }
  {
    auto out = open_out(dir / "pings.csv");
    write_pings_csv(out, trace.pings);
  }
  auto meta = open_out(dir / "meta.cfg");
  meta << "device_id=" << trace.metadata.device_id << '\n'
       << "gps_rate_hz=" << format_double(trace.metadata.gps_rate_hz) << '\n'
       << "accel_rate_hz=" << format_double(trace.metadata.accel_rate_hz) << '\n';
}

std::vector<LabeledAccelRun> load_labeled_runs(const fs::path& dir) {
  const auto labels = dir / "labels.csv";
  auto in = open_in(labels);
  CsvReader r(in, labels.string());
  r.expect_header({"file", "label", "onset_ms"});
  std::vector<LabeledAccelRun> out;
  while (r.next()) {
    LabeledAccelRun run;
    run.name = std::string(r.field(0));
    if (r.field(1) == "motion") run.motion = true;
    else if (r.field(1) != "still") r.fail("label must be motion or still");
    if (!r.field(2).empty()) run.onset = r.int_field(2, "onset_ms");
    const auto p = dir / run.name;
    auto data = open_in(p);
    const auto raw = read_accel_csv(data, p.string());
    run.samples.reserve(raw.size());
    for (const auto& s : raw) run.samples.push_back(filter_accel(s));
    for (std::size_t i = 1; i < run.samples.size(); ++i) {
      if (run.samples[i].t <= run.samples[i - 1].t) throw OrderingError(p.string() + ": samples not time-ordered");
    }
    out.push_back(std::move(run));
  }
  return out;
}

void save_labeled_runs(std::span<const LabeledAccelRun> runs, std::span<const std::vector<AccelSample>> raw,
                       const fs::path& dir) {
  if (runs.size() != raw.size()) throw InvalidInput("save_labeled_runs: runs and raw samples differ in count");
  fs::create_directories(dir);
  auto labels = open_out(dir / "labels.csv");
  labels << "file,label,onset_ms\n";
  for (std::size_t i = 0; i < runs.size(); ++i) {
    labels << runs[i].name << ',' << (runs[i].motion ? "motion" : "still") << ',';
    if (runs[i].onset) labels << *runs[i].onset;
    labels << '\n';
    auto out = open_out(dir / runs[i].name);
    write_accel_csv(out, raw[i]);
  }
}

std::string read_text_file(const fs::path& path) {
  auto in = open_in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const fs::path& path, std::string_view text) {
  auto out = open_out(path);
  out << text;
}

}  // namespace jseg

#include "jseg/config.hpp"

#include <charconv>
#include <cstdlib>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

#include "jseg/error.hpp"
#include "jseg/trace_io.hpp"

namespace jseg {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool parse_value(std::string_view s, double& out) {
  if (s == "inf") {
    out = std::numeric_limits<double>::infinity();
    return true;
  }
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

bool parse_value(std::string_view s, std::size_t& out) {
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

bool parse_value(std::string_view s, int& out) {
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

std::string show(double v) {
  return v == std::numeric_limits<double>::infinity() ? "inf" : format_double(v);
}
std::string show(std::size_t v) { return std::to_string(v); }
std::string show(int v) { return std::to_string(v); }

struct Field {
  std::function<bool(ControllerParams&, std::string_view)> set;
  std::function<std::string(const ControllerParams&)> get;
};


template <auto Group, auto Member>
Field make_field() {
  return {[](ControllerParams& p, std::string_view v) { return parse_value(v, (p.*Group).*Member); },
          [](const ControllerParams& p) { return show((p.*Group).*Member); }};
}

template <auto Member>
Field make_top_field() {
  return {[](ControllerParams& p, std::string_view v) { return parse_value(v, p.*Member); },
          [](const ControllerParams& p) { return show(p.*Member); }};
}

const std::map<std::string, Field, std::less<>>& fields() {
  using C = ControllerParams;
  static const std::map<std::string, Field, std::less<>> table = {
      {"gps.window", make_field<&C::gps, &GpsFsmParams::window>()},
      {"gps.v_inst", make_field<&C::gps, &GpsFsmParams::v_inst>()},
      {"gps.v_cum", make_field<&C::gps, &GpsFsmParams::v_cum>()},
      {"gps.chain_length", make_field<&C::gps, &GpsFsmParams::chain_length>()},
      {"gps.hysteresis_windows", make_field<&C::gps, &GpsFsmParams::hysteresis_windows>()},
      {"gps.displacement_m", make_field<&C::gps, &GpsFsmParams::displacement_m>()},
      {"gps.sat_min", make_field<&C::gps, &GpsFsmParams::sat_min>()},
      {"gps.sat_timeout_s", make_field<&C::gps, &GpsFsmParams::sat_timeout_s>()},
      {"gps.watchdog_timeout_s", make_field<&C::gps, &GpsFsmParams::watchdog_timeout_s>()},
      {"post.low_len_m", make_field<&C::postproc, &PostprocParams::low_len_m>()},
      {"post.high_len_m", make_field<&C::postproc, &PostprocParams::high_len_m>()},
      {"post.join_gap_s", make_field<&C::postproc, &PostprocParams::join_gap_s>()},
      {"post.join_tolerance", make_field<&C::postproc, &PostprocParams::join_tolerance>()},
      {"post.tail_speed", make_field<&C::postproc, &PostprocParams::tail_speed>()},
      {"post.tail_max_cuts", make_field<&C::postproc, &PostprocParams::tail_max_cuts>()},
      {"post.join_avg_count", make_field<&C::postproc, &PostprocParams::join_avg_count>()},
      {"motion.n1", make_field<&C::motion, &MotionParams::n1>()},
      {"motion.th1", make_field<&C::motion, &MotionParams::th1>()},
      {"motion.n2", make_field<&C::motion, &MotionParams::n2>()},
      {"motion.th2", make_field<&C::motion, &MotionParams::th2>()},
      {"motion.w2", make_field<&C::motion, &MotionParams::w2>()},
      {"controller.idle_timeout_s", make_top_field<&C::idle_timeout_s>()},
      {"controller.reacquisition_delay_s", make_top_field<&C::reacquisition_delay_s>()},
  };
  return table;
}

}  // namespace

void apply_config(std::string_view text, const std::string& source, ControllerParams& params) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto line = trim(text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos));
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(source, line_no, "expected key = value");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    const auto it = fields().find(key);
    if (it == fields().end()) throw ParseError(source, line_no, "unknown key '" + std::string(key) + "'");
    if (!it->second.set(params, value))
      throw ParseError(source, line_no, "bad value '" + std::string(value) + "' for " + std::string(key));
  }
  try {
    params.validate();
  } catch (const InvalidInput& e) {
    throw ParseError(source, line_no, e.what());
  }
}

ControllerParams load_config(const std::filesystem::path& path) {
  ControllerParams p;
  apply_config(read_text_file(path), path.string(), p);
  return p;
}

std::string format_config(const ControllerParams& params) {
  std::ostringstream out;
  for (const auto& [key, f] : fields()) out << key << " = " << f.get(params) << '\n';
  return out.str();
}

std::optional<std::filesystem::path> config_path_from_env() {
  const char* v = std::getenv(kConfigEnvVar);
  if (!v || !*v) return std::nullopt;
  return std::filesystem::path(v);
}

}  // namespace jseg

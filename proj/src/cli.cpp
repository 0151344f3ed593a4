#include "jseg/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "jseg/config.hpp"
#include "jseg/controller.hpp"
#include "jseg/error.hpp"
#include "jseg/noise.hpp"
#include "jseg/power.hpp"
#include "jseg/synth.hpp"
#include "jseg/trace_io.hpp"
#include "jseg/tuning.hpp"
#include "jseg/validation.hpp"

namespace jseg {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

/// Writes to --out when given, otherwise to the command's output stream.
void emit(std::ostream& out, const std::string& path, const std::string& text) {
  if (path.empty()) {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

json params_json(const MotionParams& p) {
  return {{"n1", p.n1}, {"th1", p.th1}, {"n2", p.n2}, {"th2", p.th2}, {"w2", p.w2}};
}

ControllerParams resolve_params(const std::string& params_file) {
  if (!params_file.empty()) return load_config(params_file);
  if (auto env = config_path_from_env()) return load_config(*env);
  return {};
}

struct SegmentOpts {
  std::string trace;
  std::string params;
  std::string out;
  std::string timeline;
  bool battery_aware = false;
  std::optional<TimeMs> start;
  std::optional<TimeMs> stop;
};

int run_segment(const SegmentOpts& o, std::ostream& out, std::ostream& err) {
  ControllerParams params = resolve_params(o.params);
  const TraceBundle trace = load_trace(o.trace);
  const TimeMs start = o.start.value_or(trace.first_t());
  const TimeMs stop = o.stop.value_or(trace.last_t());
  std::vector<Journey> journeys;
  StateTimeline timeline;
  std::size_t segments = 0;
  if (o.battery_aware) {
    auto res = run_controller(trace, start, stop, params);
    journeys = std::move(res.journeys);
    timeline = std::move(res.timeline);
    segments = res.segment_count;
    err << "battery-aware: " << res.wakeups.size() << " wake-ups, "
        << std::fixed << std::setprecision(2) << timeline.hours_in(GlobalState::Gps) << " h GPS, "
        << timeline.hours_in(GlobalState::Acc) << " h ACC\n";
  } else {
    auto res = segment_trace(trace, start, stop, params.gps, params.postproc);
    journeys = std::move(res.journeys);
    segments = res.segments.size();
    timeline.append(start, stop, GlobalState::Gps);
  }
  emit(out, o.out, journeys_to_json(journeys));
  if (!o.timeline.empty()) {
    std::ofstream tl(o.timeline, std::ios::trunc);
    if (!tl) throw Error("cannot write " + o.timeline);
    write_timeline_csv(tl, timeline);
  }
  err << segments << " segments -> " << journeys.size() << " journeys\n";
  return 0;
}

struct BatteryOpts {
  std::string timeline;
  std::string profile = "S2";
  std::string compare;
  std::string out;
  double start_level = 100.0;
  double interval_s = 60.0;
};

StateTimeline load_timeline(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return read_timeline_csv(in, path);
}

int run_battery(const BatteryOpts& o, std::ostream& out, std::ostream& err) {
  const PowerProfile profile = profile_preset(o.profile);
  const StateTimeline tl = load_timeline(o.timeline);
  if (!(o.interval_s > 0.0)) throw InvalidInput("--interval-s must be positive");
  const auto curve = simulate_battery(tl, profile, o.start_level, static_cast<TimeMs>(std::llround(o.interval_s * 1000.0)));
  std::ostringstream csv;
  write_curve_csv(csv, curve);
  emit(out, o.out, csv.str());
  err << "profile " << profile.device << ": consumed " << std::fixed << std::setprecision(2)
      << consumption(tl, profile) << " % over " << seconds_between(tl.start(), tl.end()) / 3600.0
      << " h, fitted rate " << curve.fit.linear_rate << " %/h\n";
  if (!o.compare.empty()) {
    const StateTimeline base = load_timeline(o.compare);
    err << "savings vs " << o.compare << ": " << std::setprecision(1)
        << 100.0 * compare_savings(tl, base, profile) << " %\n";
  }
  return 0;
}

struct TuneOpts {
  std::string dir;
  std::string out;
  std::string mode = "anneal";
  std::size_t epochs = 10'000;
  double temperature = 1.0;
  double cooling = 0.995;
  std::uint64_t seed = 1;
};

int run_tune(const TuneOpts& o, std::ostream& out, std::ostream& err) {
  const auto runs = load_labeled_runs(o.dir);
  AnnealingConfig cfg;
  cfg.epochs = o.epochs;
  cfg.initial_temperature = o.temperature;
  cfg.cooling = o.cooling;
  cfg.seed = o.seed;
  const TuningResult r = o.mode == "random" ? random_search(runs, cfg) : anneal(runs, cfg);
  const auto& c = r.outcome;
  const auto pos = static_cast<double>(c.tp + c.fn);
  const auto neg = static_cast<double>(c.tn + c.fp);
  const json report = {
      {"mode", o.mode},
      {"seed", o.seed},
      {"epochs", o.epochs},
      {"params", params_json(r.params)},
      {"cost", r.cost},
      {"fnr", c.fnr},
      {"fpr", c.fpr},
      {"n_n", c.n_n},
      {"n_p", c.n_p},
      {"counts", {{"tp", c.tp}, {"fn", c.fn}, {"tn", c.tn}, {"fp", c.fp}}},
      // Rows are the actual class; each row sums to 1.
      {"confusion",
       {{"motion", {{"motion", c.tp / pos}, {"still", c.fn / pos}}},
        {"still", {{"motion", c.fp / neg}, {"still", c.tn / neg}}}}}};
  emit(out, o.out, report.dump(2) + "\n");
  err << o.mode << ": cost " << std::fixed << std::setprecision(4) << r.cost << " after " << r.evaluations
      << " evaluations (TP rate " << std::setprecision(3) << c.tp / pos << ", TN rate " << c.tn / neg << ")\n";
  return 0;
}

struct NoiseOpts {
  std::vector<std::string> files;
  std::string out;
  double speed = -1.0;
  std::size_t w_max = 10;
};

LocationSeq load_fixes(const std::string& path) {
  return load_trace(path).gps;
}

int run_noise_static(const NoiseOpts& o, std::ostream& out, std::ostream& err) {
  std::ostringstream csv;
  csv << "file,count,mean_lat,mean_lon,max_dev_lat,max_dev_lon\n";
  for (const auto& f : o.files) {
    const auto s = static_noise_stats(load_fixes(f));
    csv << f << ',' << s.count << ',' << format_double(s.mean.lat) << ',' << format_double(s.mean.lon) << ','
        << format_double(s.max_dev_lat) << ',' << format_double(s.max_dev_lon) << '\n';
    err << f << ": max deviation " << std::scientific << std::setprecision(2) << s.max_dev_lat << " lat, "
        << s.max_dev_lon << " lon\n";
  }
  emit(out, o.out, csv.str());
  return 0;
}

int run_noise_dynamic(const NoiseOpts& o, std::ostream& out, std::ostream& err) {
  if (!(o.speed >= 0.0)) throw InvalidInput("--speed is required and must be >= 0");
  std::vector<NoiseRun> runs;
  for (const auto& f : o.files) runs.push_back({load_fixes(f), o.speed});
  const auto rows = dynamic_noise_sweep(runs, o.w_max);
  std::ostringstream csv;
  csv << "w,mean_dev,p95_dev,max_dev,pairs,skipped\n";
  for (const auto& r : rows) {
    csv << r.w << ',' << format_double(r.mean_dev) << ',' << format_double(r.p95_dev) << ','
        << format_double(r.max_dev) << ',' << r.pairs << ',' << r.skipped << '\n';
    if (r.skipped > 0) err << "warning: w=" << r.w << ": " << r.skipped << " run offsets too short, skipped\n";
  }
  emit(out, o.out, csv.str());
  err << "swept w = 1.." << o.w_max << " over " << runs.size() << " runs\n";
  return 0;
}

struct SynthOpts {
  std::string preset;
  std::string scenario;
  std::string out;
  std::uint64_t seed = 1;
};

int run_synth(const SynthOpts& o, std::ostream& out, std::ostream& err) {
  if (o.preset.empty() == o.scenario.empty()) throw InvalidInput("give exactly one of --preset or --scenario");
  const SyntheticScenario s =
      o.preset.empty() ? scenario_from_json(read_text_file(o.scenario)) : preset_scenario(o.preset);
  const auto syn = generate_synthetic(s, o.seed);
  save_trace(syn.bundle, o.out);
  {
    std::ofstream d(fs::path(o.out) / "diary.csv", std::ios::trunc);
    if (!d) throw Error("cannot write diary.csv in " + o.out);
    write_diary_csv(d, syn.diary);
  }
  const json summary = {{"dir", o.out},
                        {"seed", o.seed},
                        {"fixes", syn.bundle.gps.size()},
                        {"status", syn.bundle.sat_status.size()},
                        {"accel", syn.bundle.accel.size()},
                        {"journeys", syn.diary.size()}};
  out << summary.dump() << '\n';
  err << "wrote " << syn.bundle.gps.size() << " fixes, " << syn.bundle.accel.size() << " accel samples and "
      << syn.diary.size() << " diary entries to " << o.out << '\n';
  return 0;
}

struct ValidateOpts {
  std::string journeys;
  std::string diary;
  std::string out;
  double tol_s = 60.0;
};

int run_validate(const ValidateOpts& o, std::ostream& out, std::ostream& err) {
  const auto journeys = journeys_from_json(read_text_file(o.journeys), o.journeys);
  std::ifstream d(o.diary);
  if (!d) throw Error("cannot open " + o.diary);
  const auto diary = read_diary_csv(d, o.diary);
  const auto rep = validate_detection(journeys, diary, o.tol_s);
  json entries = json::array();
  for (const auto& e : rep.entries) {
    json j = {{"start_t", e.truth.start_t}, {"end_t", e.truth.end_t}, {"result", to_string(e.result)}};
    if (e.match) {
      j["match"] = *e.match;
      j["start_error_s"] = e.start_error_s;
      j["end_error_s"] = e.end_error_s;
    }
    entries.push_back(std::move(j));
  }
  const json report = {{"tolerance_s", o.tol_s},
                       {"full", rep.full},
                       {"clipped", rep.clipped},
                       {"missed", rep.missed},
                       {"full_fraction", rep.full_fraction},
                       {"clipped_fraction", rep.clipped_fraction},
                       {"missed_fraction", rep.missed_fraction},
                       {"entries", std::move(entries)}};
  emit(out, o.out, report.dump(2) + "\n");
  err << rep.full << " full, " << rep.clipped << " clipped, " << rep.missed << " missed of " << rep.entries.size()
      << '\n';
  return 0;
}

int run_fit(const std::string& path, const std::string& out_path, std::ostream& out, std::ostream& err) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  const auto samples = read_battery_csv(in, path);
  const auto fit = fit_discharge(samples);
  const json j = {{"linear_rate", fit.linear_rate}, {"quad_coeff", fit.quad_coeff}, {"intercept", fit.intercept}};
  emit(out, out_path, j.dump(2) + "\n");
  err << "discharge " << std::fixed << std::setprecision(3) << fit.linear_rate << " %/h over " << samples.size()
      << " samples\n";
  return 0;
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Journey segmentation from GPS and accelerometer traces", "jseg"};
  app.require_subcommand(1);

  SegmentOpts seg;
  auto* c_seg = app.add_subcommand("segment", "Detect journeys in a trace");
  c_seg->add_option("trace", seg.trace, "Trace directory or GPS CSV")->required();
  c_seg->add_flag("--battery-aware", seg.battery_aware, "Replay the GPS/accelerometer duty cycle");
  c_seg->add_option("--params", seg.params, "Parameter file (key = value)");
  c_seg->add_option("--out", seg.out, "Journeys JSON output path");
  c_seg->add_option("--timeline", seg.timeline, "State timeline CSV output path");
  c_seg->add_option("--start", seg.start, "Session start, ms");
  c_seg->add_option("--stop", seg.stop, "Session stop, ms");

  BatteryOpts bat;
  auto* c_bat = app.add_subcommand("simulate-battery", "Battery curve for a state timeline");
  c_bat->add_option("timeline", bat.timeline, "Timeline CSV")->required();
  c_bat->add_option("--profile", bat.profile, "Device preset")->check(CLI::IsMember(profile_preset_names()));
  c_bat->add_option("--compare", bat.compare, "Baseline timeline CSV for a savings figure");
  c_bat->add_option("--start-level", bat.start_level, "Initial battery level, %");
  c_bat->add_option("--interval-s", bat.interval_s, "Curve sampling interval, s");
  c_bat->add_option("--out", bat.out, "Curve CSV output path");

  TuneOpts tune;
  auto* c_tune = app.add_subcommand("tune", "Optimise motion detector parameters");
  c_tune->add_option("dir", tune.dir, "Directory with labels.csv and accel CSVs")->required();
  c_tune->add_option("--mode", tune.mode, "anneal or random")->check(CLI::IsMember({"anneal", "random"}));
  c_tune->add_option("--epochs", tune.epochs, "Evaluations");
  c_tune->add_option("--temperature", tune.temperature, "Initial temperature");
  c_tune->add_option("--cooling", tune.cooling, "Cooling factor per epoch");
  c_tune->add_option("--seed", tune.seed, "Random seed");
  c_tune->add_option("--out", tune.out, "Report JSON output path");

  NoiseOpts noise;
  auto* c_noise = app.add_subcommand("noise", "GPS noise analyses");
  c_noise->require_subcommand(1);
  auto* c_static = c_noise->add_subcommand("static", "Deviation from the mean of stationary recordings");
  c_static->add_option("files", noise.files, "GPS CSV files")->required();
  c_static->add_option("--out", noise.out, "CSV output path");
  auto* c_dyn = c_noise->add_subcommand("dynamic", "Speed error against averaging window size");
  c_dyn->add_option("files", noise.files, "GPS CSV files of straight constant-speed runs")->required();
  c_dyn->add_option("--speed", noise.speed, "Nominal speed, m/s")->required();
  c_dyn->add_option("--w-max", noise.w_max, "Largest window size");
  c_dyn->add_option("--out", noise.out, "CSV output path");

  SynthOpts syn;
  auto* c_syn = app.add_subcommand("synth", "Generate a synthetic trace");
  c_syn->add_option("--preset", syn.preset, "Built-in scenario")->check(CLI::IsMember(preset_scenario_names()));
  c_syn->add_option("--scenario", syn.scenario, "Scenario JSON file");
  c_syn->add_option("--seed", syn.seed, "Random seed");
  c_syn->add_option("--out", syn.out, "Output directory")->required();

  ValidateOpts val;
  auto* c_val = app.add_subcommand("validate", "Compare detected journeys with a diary");
  c_val->add_option("journeys", val.journeys, "Journeys JSON")->required();
  c_val->add_option("diary", val.diary, "Diary CSV (start_ms,end_ms)")->required();
  c_val->add_option("--tol", val.tol_s, "Endpoint tolerance, s");
  c_val->add_option("--out", val.out, "Report JSON output path");

  std::string fit_in;
  std::string fit_out;
  auto* c_fit = app.add_subcommand("fit-discharge", "Fit a discharge rate to battery samples");
  c_fit->add_option("samples", fit_in, "CSV t_ms,level_pct[,voltage_mv]")->required();
  c_fit->add_option("--out", fit_out, "JSON output path");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    const CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << "jseg: " << e.what() << "\n" << sub->help();
    return 2;
  }

  try {
    if (*c_seg) return run_segment(seg, out, err);
    if (*c_bat) return run_battery(bat, out, err);
    if (*c_tune) return run_tune(tune, out, err);
    if (*c_static) return run_noise_static(noise, out, err);
    if (*c_dyn) return run_noise_dynamic(noise, out, err);
    if (*c_syn) return run_synth(syn, out, err);
    if (*c_val) return run_validate(val, out, err);
    if (*c_fit) return run_fit(fit_in, fit_out, out, err);
  } catch (const std::exception& e) {
    err << "jseg: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace jseg

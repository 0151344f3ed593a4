#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "jseg/geo.hpp"
#include "jseg/power.hpp"
#include "jseg/timeline.hpp"
#include "jseg/trace.hpp"
#include "jseg/tuning.hpp"

namespace jseg {

/// Shortest representation that reads back to the same double.
std::string format_double(double v);

// GPS CSV: header `t_ms,lat,lon,sats`. `sats` may be blank. A row with blank
// lat and lon is a satellite status report and lands in `sat_status`.
void read_gps_csv(std::istream& in, const std::string& source, TraceBundle& out);
void write_gps_csv(std::ostream& out, const TraceBundle& trace);

// Accelerometer CSV: header `t_ms,ax,ay,az` in m/s^2.
std::vector<AccelSample> read_accel_csv(std::istream& in, const std::string& source);
void write_accel_csv(std::ostream& out, std::span<const AccelSample> samples);

// Pings CSV: header `t_ms,label`.
std::vector<Ping> read_pings_csv(std::istream& in, const std::string& source);
void write_pings_csv(std::ostream& out, std::span<const Ping> pings);

// Diary CSV: header `start_ms,end_ms`.
std::vector<DiaryEntry> read_diary_csv(std::istream& in, const std::string& source);
void write_diary_csv(std::ostream& out, std::span<const DiaryEntry> diary);

// Battery samples CSV: header `t_ms,level_pct` with an optional third
// `voltage_mv` column that is accepted and ignored.
std::vector<BatteryPoint> read_battery_csv(std::istream& in, const std::string& source);

// Timeline CSV: header `t_seconds,state`; one row per interval start plus a
// closing OFF row at the end of the timeline.
void write_timeline_csv(std::ostream& out, const StateTimeline& timeline);
StateTimeline read_timeline_csv(std::istream& in, const std::string& source);

// Battery curve CSV: header `t_seconds,level_pct`.
void write_curve_csv(std::ostream& out, const BatteryCurve& curve);

/// JSON array of {start_t, end_t, path_length_m, bounds:{bl,tr}, points}.
std::string journeys_to_json(std::span<const Journey> journeys);
std::vector<Journey> journeys_from_json(std::string_view text, const std::string& source);

/// Loads a trace directory (gps.csv, accel.csv, pings.csv, meta.cfg; each
/// optional but at least one data file required) or a single GPS or accel CSV
/// recognised by its header. The result is validated.
TraceBundle load_trace(const std::filesystem::path& path);
/// Writes the directory layout read by `load_trace`.
void save_trace(const TraceBundle& trace, const std::filesystem::path& dir);

/// Labelled accelerometer corpus: `labels.csv` with header
/// `file,label,onset_ms` (label `motion` or `still`, onset may be blank) next
/// to the referenced accel CSV files.
std::vector<LabeledAccelRun> load_labeled_runs(const std::filesystem::path& dir);
void save_labeled_runs(std::span<const LabeledAccelRun> runs, std::span<const std::vector<AccelSample>> raw,
                       const std::filesystem::path& dir);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace jseg

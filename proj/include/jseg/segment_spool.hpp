#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "jseg/gps_fsm.hpp"

namespace jseg {

/// One segment as a single JSON line:
/// {"start_t":..,"end_t":..,"cause":"..","points":[[t,lat,lon],...]}
std::string to_spool_line(const SegmentRecord& seg);

/// Inverse of `to_spool_line`. Window indices are not stored and come back as 0.
SegmentRecord parse_spool_line(std::string_view line, std::size_t line_no = 1);

/// Append-only newline-delimited segment store on disk. Completed segments are
/// written out immediately instead of being held in memory. A spool created
/// without a path owns a unique temporary file and removes it on destruction.
class SegmentSpool {
 public:
  SegmentSpool();
  explicit SegmentSpool(std::filesystem::path path);
  ~SegmentSpool();

  SegmentSpool(const SegmentSpool&) = delete;
  SegmentSpool& operator=(const SegmentSpool&) = delete;
  SegmentSpool(SegmentSpool&& other) noexcept;
  SegmentSpool& operator=(SegmentSpool&& other) noexcept;

  void append(const SegmentRecord& seg);
  std::vector<SegmentRecord> read_all() const;
  void clear();

  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  bool owned_ = false;
  std::size_t count_ = 0;
};

}  // namespace jseg

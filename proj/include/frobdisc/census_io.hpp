#pragma once

// Census cache (newline-delimited JSON) and CSV report.
//
// Cache layout: a header line
//   {"format":"frobdisc-census","version":1,"x":...,"r":...,"h":...}
// followed by one record per prime {"p":...,"pib":...,"method":"deuring"|"direct"}.
// The file is append-only; a run resumes by skipping primes already present.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <map>
#include <string>

#include "frobdisc/census.hpp"

namespace frobdisc {

inline constexpr const char* kCacheFormat = "frobdisc-census";
inline constexpr int kCacheVersion = 1;

struct CacheHeader {
  std::int64_t x = 0;
  std::int64_t r = 0;
  std::int64_t h = 1;
  friend bool operator==(const CacheHeader&, const CacheHeader&) = default;
};

struct CacheContents {
  CacheHeader header;
  std::map<std::int64_t, PrimeCensus> records;
};

std::string format_cache_header(const CacheHeader& header);
std::string format_cache_record(const PrimeCensus& record);

// Reads a cache file. An unterminated final line (interrupted append) is
// dropped and, when `repair` is set, truncated from the file.
// Throws CacheError on malformed content or conflicting duplicate records.
CacheContents read_cache(const std::filesystem::path& path, bool repair = false);

// Single appender. Creates the file with `header` if missing; otherwise the
// existing header must equal `header`.
class CacheWriter {
 public:
  CacheWriter(const std::filesystem::path& path, const CacheHeader& header);
  void append(const PrimeCensus& record);
  void flush();

 private:
  std::ofstream out_;
};

struct ReportInfo {
  std::int64_t r = 0;
  std::int64_t h = 1;
  bool gcd_rh_squarefree = true;
};

// CSV with columns p,pib,cumulative_A1,cumulative_A2,predicted_A1,ratio,
// preceded by '#' comment lines describing the run and its aggregates.
void write_census_report(std::ostream& os, const CensusResult& result, const ReportInfo& info);

// Fixed-format float: 12 significant digits.
std::string format_real(double v);

}  // namespace frobdisc

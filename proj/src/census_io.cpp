#include "frobdisc/census_io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "frobdisc/errors.hpp"

namespace frobdisc {

using nlohmann::json;

namespace {

std::int64_t require_int(const json& j, const char* key, const std::string& line) {
  if (!j.contains(key) || !j.at(key).is_number_integer()) {
    throw CacheError(std::string("cache line missing integer field '") + key + "': " + line);
  }
  return j.at(key).get<std::int64_t>();
}

}  // namespace

std::string format_cache_header(const CacheHeader& header) {
  nlohmann::ordered_json j;
  j["format"] = kCacheFormat;
  j["version"] = kCacheVersion;
  j["x"] = header.x;
  j["r"] = header.r;
  j["h"] = header.h;
  return j.dump();
}

std::string format_cache_record(const PrimeCensus& record) {
  nlohmann::ordered_json j;
  j["p"] = record.p;
  j["pib"] = record.pib;
  j["method"] = to_string(record.method);
  return j.dump();
}

CacheContents read_cache(const std::filesystem::path& path, bool repair) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CacheError("cannot open cache file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  in.close();

  // Only newline-terminated lines are complete.
  const auto last_newline = text.rfind('\n');
  const std::size_t complete = last_newline == std::string::npos ? 0 : last_newline + 1;
  if (complete < text.size() && repair) std::filesystem::resize_file(path, complete);

  CacheContents out;
  bool have_header = false;
  std::size_t pos = 0;
  while (pos < complete) {
    const std::size_t nl = text.find('\n', pos);
    const std::string line = text.substr(pos, nl - pos);
    pos = nl + 1;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error&) {
      throw CacheError("malformed cache line: " + line);
    }
    if (!j.is_object()) throw CacheError("malformed cache line: " + line);
    if (!have_header) {
      if (!j.contains("format") || j.at("format") != kCacheFormat) {
        throw CacheError("cache file does not start with a frobdisc-census header");
      }
      if (require_int(j, "version", line) != kCacheVersion) throw CacheError("unsupported cache version: " + line);
      out.header = {require_int(j, "x", line), require_int(j, "r", line), require_int(j, "h", line)};
      have_header = true;
      continue;
    }
    PrimeCensus rec;
    rec.p = require_int(j, "p", line);
    if (!j.contains("pib") || !j.at("pib").is_number_unsigned()) {
      throw CacheError("cache line missing nonnegative 'pib': " + line);
    }
    rec.pib = j.at("pib").get<std::uint64_t>();
    if (!j.contains("method") || !j.at("method").is_string()) throw CacheError("cache line missing 'method': " + line);
    try {
      rec.method = parse_census_method(j.at("method").get<std::string>());
    } catch (const ArgumentError& e) {
      throw CacheError(e.what());
    }
    auto [it, inserted] = out.records.emplace(rec.p, rec);
    if (!inserted && it->second.pib != rec.pib) {
      throw CacheError("conflicting cache records for p = " + std::to_string(rec.p));
    }
  }
  if (!have_header) throw CacheError("cache file " + path.string() + " has no header");
  return out;
}

CacheWriter::CacheWriter(const std::filesystem::path& path, const CacheHeader& header) {
  const bool fresh = !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
  if (!fresh) {
    const CacheContents existing = read_cache(path);
    if (!(existing.header == header)) throw CacheError("cache header mismatch in " + path.string());
  }
  out_.open(path, std::ios::binary | std::ios::app);
  if (!out_) throw CacheError("cannot open cache file for writing: " + path.string());
  if (fresh) {
    out_ << format_cache_header(header) << '\n';
    out_.flush();
  }
}

void CacheWriter::append(const PrimeCensus& record) { out_ << format_cache_record(record) << '\n'; }

void CacheWriter::flush() {
  out_.flush();
  if (!out_) throw CacheError("write to cache file failed");
}

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_census_report(std::ostream& os, const CensusResult& result, const ReportInfo& info) {
  const auto& agg = result.aggregates;
  os << "# frobdisc census report\n";
  os << "# target r=" << info.r << " h=" << info.h << "\n";
  os << "# primes 5 <= p <= " << agg.x << " (p = 3 excluded: short Weierstrass form needs p > 3)\n";
  if (!info.gcd_rh_squarefree) os << "# warning: (r,h) not square-free; every count is zero\n";
  os << "# primes=" << agg.prime_count << " from_cache=" << agg.primes_from_cache << "\n";
  os << "# constant=" << format_real(agg.frak_c) << "\n";
  os << "# A1=" << format_real(agg.A1) << " predicted_A1=" << format_real(agg.predicted_A1)
     << " ratio_A1=" << format_real(agg.ratio_A1) << "\n";
  os << "# A2=" << agg.A2.get_str() << " predicted_A2=" << format_real(agg.predicted_A2)
     << " ratio_A2=" << format_real(agg.ratio_A2) << "\n";
  os << "p,pib,cumulative_A1,cumulative_A2,predicted_A1,ratio\n";
  for (const auto& row : result.rows) {
    os << row.record.p << ',' << row.record.pib << ',' << format_real(row.cumulative_A1) << ','
       << row.cumulative_A2.get_str() << ',' << format_real(row.predicted_A1) << ',' << format_real(row.ratio) << '\n';
  }
}

}  // namespace frobdisc

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "frobdisc/census_io.hpp"
#include "frobdisc/errors.hpp"

using namespace frobdisc;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "frobdisc_io_test";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  fs::remove(p);
  return p;
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

PrimeCensus record(std::int64_t p, std::uint64_t pib, CensusMethod m = CensusMethod::deuring) {
  PrimeCensus r;
  r.p = p;
  r.pib = pib;
  r.method = m;
  return r;
}

}  // namespace

TEST(CacheFormat, Lines) {
  EXPECT_EQ(format_cache_header({100, 2, 3}), R"({"format":"frobdisc-census","version":1,"x":100,"r":2,"h":3})");
  EXPECT_EQ(format_cache_record(record(7, 8, CensusMethod::direct)), R"({"p":7,"pib":8,"method":"direct"})");
}

TEST(CacheWriter, WriteThenRead) {
  const fs::path p = temp_file("roundtrip.ndjson");
  {
    CacheWriter w(p, {50, 0, 1});
    w.append(record(5, 8, CensusMethod::direct));
    w.append(record(7, 8));
  }
  const CacheContents c = read_cache(p);
  EXPECT_EQ(c.header, (CacheHeader{50, 0, 1}));
  ASSERT_EQ(c.records.size(), 2u);
  EXPECT_EQ(c.records.at(5).method, CensusMethod::direct);
  EXPECT_EQ(c.records.at(7).pib, 8u);
}

TEST(CacheWriter, HeaderMismatch) {
  const fs::path p = temp_file("mismatch.ndjson");
  { CacheWriter w(p, {50, 0, 1}); }
  EXPECT_THROW(CacheWriter(p, {60, 0, 1}), CacheError);
  EXPECT_NO_THROW(CacheWriter(p, {50, 0, 1}));
}

TEST(ReadCache, TruncatedTailIsDropped) {
  const fs::path p = temp_file("partial.ndjson");
  const std::string good = format_cache_header({50, 0, 1}) + "\n" + format_cache_record(record(5, 8)) + "\n";
  write_text(p, good + R"({"p":7,"pi)");
  EXPECT_EQ(read_cache(p).records.size(), 1u);
  EXPECT_EQ(read_text(p).size(), good.size() + 10);
  read_cache(p, true);
  EXPECT_EQ(read_text(p), good);
}

TEST(ReadCache, Errors) {
  const fs::path p = temp_file("bad.ndjson");
  EXPECT_THROW(read_cache(p), CacheError);
  write_text(p, format_cache_record(record(5, 8)) + "\n");
  EXPECT_THROW(read_cache(p), CacheError);
  write_text(p, format_cache_header({50, 0, 1}) + "\nnot json\n");
  EXPECT_THROW(read_cache(p), CacheError);
  write_text(p, format_cache_header({50, 0, 1}) + "\n" + format_cache_record(record(5, 8)) + "\n" +
                    format_cache_record(record(5, 9)) + "\n");
  EXPECT_THROW(read_cache(p), CacheError);
  write_text(p, format_cache_header({50, 0, 1}) + "\n" + R"({"p":5,"pib":8,"method":"guess"})" + "\n");
  EXPECT_THROW(read_cache(p), CacheError);
}

TEST(ReadCache, IdenticalDuplicatesAccepted) {
  const fs::path p = temp_file("dup.ndjson");
  const std::string line = format_cache_record(record(5, 8)) + "\n";
  write_text(p, format_cache_header({50, 0, 1}) + "\n" + line + line);
  EXPECT_EQ(read_cache(p).records.size(), 1u);
}

TEST(Report, Layout) {
  CensusResult result;
  CensusRow row;
  row.record = record(5, 8, CensusMethod::direct);
  row.cumulative_A1 = 0.4;
  row.cumulative_A2 = 8;
  row.predicted_A1 = 0.5;
  row.ratio = 0.8;
  result.rows.push_back(row);
  result.aggregates.x = 5;
  result.aggregates.prime_count = 1;
  std::ostringstream os;
  write_census_report(os, result, {0, 9, false});
  const std::string text = os.str();
  EXPECT_NE(text.find("(r,h) not square-free"), std::string::npos);
  EXPECT_NE(text.find("p = 3 excluded"), std::string::npos);
  EXPECT_NE(text.find("\np,pib,cumulative_A1,cumulative_A2,predicted_A1,ratio\n5,8,0.4,8,0.5,0.8\n"),
            std::string::npos);
}

TEST(Report, TwelveDigits) {
  EXPECT_EQ(format_real(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(format_real(0.5), "0.5");
  EXPECT_EQ(format_real(123456789012345.0), "1.23456789012e+14");
}

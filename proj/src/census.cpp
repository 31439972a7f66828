#include "frobdisc/census.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

#include "frobdisc/census_io.hpp"
#include "frobdisc/constants.hpp"
#include "frobdisc/errors.hpp"
#include "frobdisc/parallel.hpp"
#include "frobdisc/summation.hpp"

namespace frobdisc {

namespace {

void require_census_prime(std::int64_t p, const char* who) {
  if (p < kFirstCensusPrime || !is_prime(p)) {
    throw ArgumentError(std::string(who) + ": p must be a prime >= 5, got " + std::to_string(p));
  }
}

// Legendre symbol table for 0..p-1, repeated twice so that index v + b < 2p
// needs no reduction.
std::vector<std::int8_t> doubled_legendre_table(std::int64_t p) {
  std::vector<std::int8_t> chi(static_cast<std::size_t>(2 * p), -1);
  chi[0] = 0;
  for (std::int64_t x = 1; x < p; ++x) chi[static_cast<std::size_t>(x * x % p)] = 1;
  std::copy(chi.begin(), chi.begin() + p, chi.begin() + p);
  return chi;
}

bool singular(std::int64_t p, std::int64_t a, std::int64_t b) {
  const std::int64_t am = mod_floor(a, p);
  const std::int64_t bm = mod_floor(b, p);
  return (4 * (am * am % p) * am + 27 * (bm * bm % p)) % p == 0;
}

}  // namespace

const char* to_string(CensusMethod m) { return m == CensusMethod::direct ? "direct" : "deuring"; }

CensusMethod parse_census_method(const std::string& s) {
  if (s == "direct") return CensusMethod::direct;
  if (s == "deuring") return CensusMethod::deuring;
  throw ArgumentError("unknown census method '" + s + "'");
}

std::int64_t trace_of_curve(std::int64_t p, std::int64_t a, std::int64_t b) {
  require_census_prime(p, "trace_of_curve");
  if (singular(p, a, b)) {
    throw ArgumentError("trace_of_curve: singular curve (4a^3 + 27b^2 = 0 mod " + std::to_string(p) + ")");
  }
  const std::int64_t am = mod_floor(a, p);
  const std::int64_t bm = mod_floor(b, p);
  std::int64_t s = 0;
  for (std::int64_t x = 0; x < p; ++x) {
    s += kronecker((x * x % p * x + am * x + bm) % p, p);
  }
  return -s;
}

TraceRecord make_trace_record(std::int64_t p, std::int64_t t, const CongruenceTarget& target,
                              bool with_class_number) {
  require_census_prime(p, "make_trace_record");
  if (t * t > 4 * p) throw ArgumentError("make_trace_record: |t| exceeds the Hasse bound");
  TraceRecord rec{p, t, t * t - 4 * p, false, std::nullopt};
  rec.in_delta = in_delta(rec.D, target);
  if (with_class_number) rec.H = kronecker_H(rec.D);
  return rec;
}

TraceHistogram direct_trace_histogram(std::int64_t p) {
  require_census_prime(p, "direct_trace_histogram");
  if (p > kDirectPrimeBudget) {
    throw ResourceError("direct_trace_histogram: p = " + std::to_string(p) + " exceeds the direct budget " +
                        std::to_string(kDirectPrimeBudget));
  }
  const auto chi = doubled_legendre_table(p);
  const auto bound = static_cast<std::size_t>(2 * isqrt(4 * p) + 1);
  std::vector<std::int64_t> counts(bound + 1, 0);  // index a_p + isqrt(4p)
  const std::int64_t offset = isqrt(4 * p);
  std::vector<std::int64_t> f(static_cast<std::size_t>(p));
  for (std::int64_t a = 0; a < p; ++a) {
    for (std::int64_t x = 0; x < p; ++x) f[static_cast<std::size_t>(x)] = (x * x % p * x + a * x) % p;
    const std::int64_t a3 = 4 * (a * a % p) * a % p;
    for (std::int64_t b = 0; b < p; ++b) {
      if ((a3 + 27 * (b * b % p)) % p == 0) continue;
      int s = 0;
      const std::int8_t* shifted = chi.data() + b;
      for (std::int64_t x = 0; x < p; ++x) s += shifted[f[static_cast<std::size_t>(x)]];
      ++counts[static_cast<std::size_t>(offset - s)];
    }
  }
  TraceHistogram hist;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] != 0) hist.emplace(static_cast<std::int64_t>(i) - offset, counts[i]);
  }
  return hist;
}

PrimeCensus census_from_histogram(std::int64_t p, const CongruenceTarget& target, const TraceHistogram& histogram) {
  PrimeCensus out;
  out.p = p;
  out.method = CensusMethod::direct;
  if (!target.gcd_rh_squarefree()) return out;
  for (const auto& [t, count] : histogram) {
    if (in_delta(t * t - 4 * p, target)) out.pib += static_cast<std::uint64_t>(count);
  }
  return out;
}

PrimeCensus direct_census(std::int64_t p, const CongruenceTarget& target, bool keep_histogram) {
  TraceHistogram hist = direct_trace_histogram(p);
  PrimeCensus out = census_from_histogram(p, target, hist);
  if (keep_histogram) out.trace_histogram = std::move(hist);
  return out;
}

PrimeCensus deuring_census(std::int64_t p, const CongruenceTarget& target, const ClassTable& table,
                           const SpfTable* spf) {
  require_census_prime(p, "deuring_census");
  if (!table.covers(-4 * p)) {
    throw ArgumentError("deuring_census: class table does not cover |D| <= 4p for p = " + std::to_string(p));
  }
  if (spf != nullptr && spf->limit() < 4 * p) {
    throw ArgumentError("deuring_census: SPF table does not cover 4p");
  }
  PrimeCensus out;
  out.p = p;
  out.method = CensusMethod::deuring;
  if (!target.gcd_rh_squarefree()) return out;

  // Even t never gives a squarefree D; each odd t stands for +t and -t.
  std::uint64_t total = 0;
  for (std::int64_t t = 1; t * t < 4 * p; t += 2) {
    const std::int64_t D = t * t - 4 * p;
    const bool member = spf != nullptr ? in_delta(D, target, *spf) : in_delta(D, target);
    if (!member) continue;
    const std::int64_t w = D == -3 ? 6 : (D == -4 ? 4 : 2);
    const std::int64_t curves = 2 * (p - 1) * table.at(D);
    if (curves % w != 0) {
      throw InvariantViolation("deuring_census: non-integral curve count 2(p-1)h(D)/w(D) at p = " +
                               std::to_string(p) + ", t = " + std::to_string(t) + ", D = " + std::to_string(D) +
                               ", h = " + std::to_string(table.at(D)) + ", w = " + std::to_string(w));
    }
    total += static_cast<std::uint64_t>(curves / w);
  }
  out.pib = total;
  return out;
}

ExactRational kronecker_H(std::int64_t D, const ClassTable& table) {
  if (D >= 0) throw ArgumentError("kronecker_H: D must be negative");
  ExactRational total(0);
  for (std::int64_t f = 1; f * f <= -D; ++f) {
    if (D % (f * f) != 0) continue;
    const std::int64_t d = D / (f * f);
    if (!is_negative_discriminant(d)) continue;
    total += ExactRational(table.class_number(d), unit_count(d));
  }
  return total;
}

CensusResult aggregate_census(std::int64_t x, std::vector<PrimeCensus> records, double frak_c,
                              std::size_t primes_from_cache, const std::function<void(const CensusRow&)>& on_row) {
  CensusResult result;
  result.rows.reserve(records.size());
  NeumaierSum a1;
  mpz_class a2 = 0;
  std::int64_t last = 0;
  for (auto& rec : records) {
    if (rec.p <= last) throw InvariantViolation("aggregate_census: records must be in ascending prime order");
    last = rec.p;
    const auto p = static_cast<double>(rec.p);
    a1.add(static_cast<double>(rec.pib) / (p * (p - 1.0)));
    a2 += mpz_class(static_cast<unsigned long>(rec.pib));
    CensusRow row{std::move(rec), a1.value(), a2, frak_c * p / std::log(p), 0.0};
    row.ratio = row.predicted_A1 > 0.0 ? row.cumulative_A1 / row.predicted_A1 : 0.0;
    if (on_row) on_row(row);
    result.rows.push_back(std::move(row));
  }
  auto& agg = result.aggregates;
  agg.x = x;
  agg.prime_count = result.rows.size();
  agg.primes_from_cache = primes_from_cache;
  agg.A1 = a1.value();
  agg.A2 = a2;
  agg.frak_c = frak_c;
  const auto xd = static_cast<double>(x);
  agg.predicted_A1 = frak_c * xd / std::log(xd);
  agg.predicted_A2 = frak_c / 3.0 * xd * xd * xd / std::log(xd);
  agg.ratio_A1 = agg.predicted_A1 > 0.0 ? agg.A1 / agg.predicted_A1 : 0.0;
  agg.ratio_A2 = agg.predicted_A2 > 0.0 ? mpf_class(agg.A2, 128).get_d() / agg.predicted_A2 : 0.0;
  return result;
}

CensusResult census_range(std::int64_t x, const CongruenceTarget& target, const CensusConfig& config,
                          const std::function<void(const CensusRow&)>& on_row) {
  if (x < kFirstCensusPrime) throw ArgumentError("census_range: x must be >= 5");
  if (config.direct_max > kDirectPrimeBudget) {
    throw ResourceError("census_range: direct_max exceeds the direct budget " + std::to_string(kDirectPrimeBudget));
  }
  std::vector<std::int64_t> primes;
  for (std::int64_t p : sieve_primes(x)) {
    if (p >= kFirstCensusPrime) primes.push_back(p);
  }

  std::map<std::int64_t, PrimeCensus> cached;
  std::optional<CacheWriter> writer;
  const CacheHeader header{x, target.r(), target.h()};
  if (config.cache_path) {
    if (std::filesystem::exists(*config.cache_path)) {
      CacheContents contents = read_cache(*config.cache_path, /*repair=*/true);
      if (!(contents.header == header)) {
        throw CacheError("cache header " + format_cache_header(contents.header) +
                         " does not match the requested run " + format_cache_header(header));
      }
      for (auto& [p, rec] : contents.records) {
        if (p > x || !std::binary_search(primes.begin(), primes.end(), p)) {
          throw CacheError("cache record for p = " + std::to_string(p) + " is not a census prime <= x");
        }
      }
      cached = std::move(contents.records);
    }
    writer.emplace(*config.cache_path, header);
  }

  std::vector<PrimeCensus> records(primes.size());
  std::vector<std::size_t> missing;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (auto it = cached.find(primes[i]); it != cached.end()) {
      records[i] = it->second;
    } else {
      missing.push_back(i);
    }
  }

  if (!missing.empty()) {
    const std::int64_t table_limit = std::max<std::int64_t>(4 * primes[missing.back()], 4);
    const ClassTable table(table_limit);
    const SpfTable spf(table_limit);
    const unsigned threads = resolve_threads(config.threads);
    const std::size_t batch = std::max<std::size_t>(1, config.chunk_primes) * threads;
    for (std::size_t start = 0; start < missing.size(); start += batch) {
      const std::size_t stop = std::min(missing.size(), start + batch);
      parallel_chunks(stop - start, config.chunk_primes, threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t k = start + lo; k < start + hi; ++k) {
          const std::size_t i = missing[k];
          const std::int64_t p = primes[i];
          PrimeCensus rec = deuring_census(p, target, table, &spf);
          if (p <= config.direct_max) {
            PrimeCensus direct = direct_census(p, target);
            if (direct.pib != rec.pib) {
              throw InvariantViolation("census_range: direct and Deuring counts differ at p = " + std::to_string(p) +
                                       " (" + std::to_string(direct.pib) + " vs " + std::to_string(rec.pib) + ")");
            }
            rec = std::move(direct);
          }
          records[i] = std::move(rec);
        }
      });
      if (writer) {
        for (std::size_t k = start; k < stop; ++k) writer->append(records[missing[k]]);
        writer->flush();
      }
    }
  }

  const double c = frak_C(target, config.constant_prime_cut).value;
  return aggregate_census(x, std::move(records), c, primes.size() - missing.size(), on_row);
}

BoxAverage box_average_demo(std::int64_t A, std::int64_t B, std::int64_t x, const CongruenceTarget& target) {
  if (A < 0 || B < 0) throw ArgumentError("box_average_demo: A and B must be nonnegative");
  BoxAverage out;
  out.curves = (2 * A + 1) * (2 * B + 1);
  for (std::int64_t a = -A; a <= A; ++a) {
    for (std::int64_t b = -B; b <= B; ++b) {
      if (4 * a * a * a + 27 * b * b == 0) --out.curves;
    }
  }
  if (out.curves == 0) throw ArgumentError("box_average_demo: empty curve box");
  if (x < kFirstCensusPrime || !target.gcd_rh_squarefree()) {
    out.average = ExactRational(0);
    return out;
  }
  const auto all_primes = sieve_primes(x);
  const auto prime_count = static_cast<std::int64_t>(all_primes.size());
  if ((2 * A + 1) * (2 * B + 1) * prime_count > kBoxDemoBudget) {
    throw ResourceError("box_average_demo: A*B*pi(x) exceeds budget");
  }
  if (x > kDirectPrimeBudget) throw ResourceError("box_average_demo: x exceeds the direct budget");

  for (std::int64_t p : all_primes) {
    if (p < kFirstCensusPrime) continue;
    // Memoized traces of reduced pairs; INT16_MIN marks "not computed".
    constexpr std::int16_t kUnset = INT16_MIN;
    std::vector<std::int16_t> traces(static_cast<std::size_t>(p * p), kUnset);
    for (std::int64_t a = -A; a <= A; ++a) {
      for (std::int64_t b = -B; b <= B; ++b) {
        if (4 * a * a * a + 27 * b * b == 0) continue;
        if (singular(p, a, b)) continue;  // bad reduction at p
        const std::int64_t am = mod_floor(a, p);
        const std::int64_t bm = mod_floor(b, p);
        auto& slot = traces[static_cast<std::size_t>(am * p + bm)];
        if (slot == kUnset) slot = static_cast<std::int16_t>(trace_of_curve(p, am, bm));
        if (in_delta(static_cast<std::int64_t>(slot) * slot - 4 * p, target)) ++out.total_count;
      }
    }
  }
  out.average = ExactRational(out.total_count, out.curves);
  return out;
}

}  // namespace frobdisc

#include "frobdisc/cli.hpp"

#include <fstream>
#include <ostream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "frobdisc/census.hpp"
#include "frobdisc/census_io.hpp"
#include "frobdisc/constants.hpp"
#include "frobdisc/errors.hpp"
#include "frobdisc/gl2.hpp"
#include "frobdisc/parallel.hpp"
#include "frobdisc/sums.hpp"
#include "frobdisc/verify.hpp"

namespace frobdisc {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

// Floats are printed with 12 significant digits everywhere.
ordered_json real12(double v) {
  if (!std::isfinite(v)) return nullptr;
  return ordered_json::parse(fmt::format("{:.12g}", v));
}

ordered_json rational_json(const ExactRational& q) { return q.str(); }

ordered_json euler_json(const EulerProductValue& v, const CongruenceTarget& target, const char* form,
                        std::size_t max_factors) {
  ordered_json j;
  j["form"] = form;
  j["r"] = target.r();
  j["h"] = target.h();
  j["value"] = real12(v.value);
  j["tail_bound"] = real12(v.tail_bound);
  j["prime_cut"] = v.prime_cut;
  j["prefactor"] = rational_json(v.prefactor);
  j["defined_zero"] = v.defined_zero;
  ordered_json factors = ordered_json::array();
  for (const auto& [ell, f] : v.factors) {
    if (max_factors != 0 && factors.size() >= max_factors) break;
    factors.push_back({{"ell", ell}, {"num", f.numerator().get_str()}, {"den", f.denominator().get_str()}});
  }
  j["factors"] = std::move(factors);
  j["factors_total"] = v.factors.size();
  return j;
}

ordered_json gl2_json(const Gl2Count& c, const ExactRational& closed) {
  ordered_json j;
  j["ell"] = c.ell;
  j["beta"] = c.beta;
  j["modulus"] = c.modulus;
  j["order"] = c.group_order;
  j["matching"] = c.matching;
  j["density"] = rational_json(c.density);
  j["closed_form"] = rational_json(closed);
  j["agrees"] = c.density == closed;
  return j;
}

void warn_target(const CongruenceTarget& target, std::ostream& err) {
  if (!target.gcd_rh_squarefree()) {
    err << "warning: (r,h) not square-free: gcd(" << target.r() << "," << target.h()
        << ") has a square factor, every count is zero\n";
  }
}

struct CommonTarget {
  std::int64_t r = 0;
  std::int64_t h = 1;
  void add_to(CLI::App* app) {
    app->add_option("--r", r, "residue r of the congruence class");
    app->add_option("--h", h, "odd modulus h");
  }
  CongruenceTarget make() const { return {r, h}; }
};

int report_verify(const std::string& suite, const VerifyResult& res, std::ostream& out, std::ostream& err) {
  for (const auto& note : res.notes) out << "note: " << note << "\n";
  if (res.ok) {
    out << "verify " << suite << ": PASS (" << res.checks << " checks)\n";
    return kExitOk;
  }
  out << "verify " << suite << ": FAIL after " << res.checks << " checks\n";
  err << "counterexample: " << res.counterexample << "\n";
  return kExitVerificationFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Squarefree Frobenius discriminant experiments"};
  app.set_help_flag("--help", "print this help message and exit");
  app.require_subcommand(1);
  app.fallthrough();
  unsigned threads = 0;
  app.add_option("--threads", threads, std::string("worker threads (") + kThreadsEnvVar + " overrides)");

  // census
  auto* census = app.add_subcommand("census", "count curves over F_p with a_p^2 - 4p in Delta(r,h), p <= x");
  std::int64_t census_x = 0;
  CommonTarget census_target;
  CensusConfig census_config;
  std::string cache_path;
  std::string report_path;
  census->add_option("--x", census_x, "upper bound for primes")->required();
  census_target.add_to(census);
  census->add_option("--direct-max", census_config.direct_max, "primes up to this bound are also counted directly");
  census->add_option("--prime-cut", census_config.constant_prime_cut, "Euler product cut for the constant");
  census->add_option("--cache", cache_path, "NDJSON cache file (created or resumed)");
  census->add_option("--report", report_path, "write the CSV report here instead of standard output");

  // report
  auto* report = app.add_subcommand("report", "rebuild the CSV report from a complete census cache");
  std::string report_cache;
  std::string report_out;
  std::int64_t report_prime_cut = kDefaultPrimeCut;
  report->add_option("--cache", report_cache, "census cache file")->required();
  report->add_option("--out", report_out, "output CSV path (default: standard output)");
  report->add_option("--prime-cut", report_prime_cut, "Euler product cut for the constant");

  // constant
  auto* constant = app.add_subcommand("constant", "evaluate the main constant as a truncated Euler product");
  CommonTarget constant_target;
  std::int64_t constant_cut = kDefaultPrimeCut;
  bool constant_json = false;
  bool constant_alt = false;
  std::size_t max_factors = 20;
  constant_target.add_to(constant);
  constant->add_option("--prime-cut", constant_cut, "largest prime in the product");
  constant->add_flag("--json", constant_json, "JSON output");
  constant->add_flag("--alt", constant_alt, "use the P(r,h)/G(p) form");
  constant->add_option("--max-factors", max_factors, "factors listed in JSON (0 = all)");

  // verify
  auto* verify = app.add_subcommand("verify", "run a cross-check suite");
  std::string suite;
  std::int64_t pmax = 499;
  std::int64_t nmax = 2000;
  std::int64_t tmax = 50;
  std::int64_t verify_cut = 10000;
  std::int64_t ell_max = 7;
  std::int64_t st_tmax = 15;
  std::int64_t st_umax = 45;
  std::int64_t st_rmax = 5;
  verify->add_option("suite", suite, "deuring | ct | constant-identity | gl2 | st")
      ->required()
      ->check(CLI::IsMember({"deuring", "ct", "constant-identity", "gl2", "st"}));
  verify->add_option("--pmax", pmax, "deuring: largest prime");
  verify->add_option("--nmax", nmax, "ct: largest prime power");
  verify->add_option("--tmax", tmax, "ct: largest trace; st: largest T");
  verify->add_option("--prime-cut", verify_cut, "constant-identity: largest prime");
  verify->add_option("--ell-max", ell_max, "gl2: largest ell for P1");
  verify->add_option("--umax", st_umax, "st: largest U");
  verify->add_option("--rmax", st_rmax, "st: largest R");

  // gl2
  auto* gl2 = app.add_subcommand("gl2", "GL2(Z/ell^beta Z) enumerations");
  gl2->require_subcommand(1);
  std::int64_t ell = 3;
  int alpha = 1;
  std::int64_t gl2_r = 0;
  auto* gl2_p1 = gl2->add_subcommand("p1", "density of tr^2 - 4det != 0 mod ell^2");
  gl2_p1->add_option("--ell", ell, "odd prime")->required();
  auto* gl2_p2 = gl2->add_subcommand("p2", "P1 condition plus tr^2 - 4det = r mod ell^alpha");
  gl2_p2->add_option("--ell", ell, "odd prime")->required();
  gl2_p2->add_option("--alpha", alpha, "exponent of ell in h")->required();
  gl2_p2->add_option("--r", gl2_r, "residue");
  auto* gl2_order = gl2->add_subcommand("order-sf", "density of det - tr + 1 != 0 mod ell^2");
  gl2_order->add_option("--ell", ell, "odd prime")->required();
  auto* gl2_csf = gl2->add_subcommand("csf", "conjectural constant under a full Galois image");
  CommonTarget csf_target;
  std::int64_t level = 2;
  std::int64_t csf_cut = kDefaultPrimeCut;
  csf_target.add_to(gl2_csf);
  gl2_csf->add_option("--level", level, "even level M_E");
  gl2_csf->add_option("--prime-cut", csf_cut, "largest prime in the product");

  // sum-st
  auto* sum_st = app.add_subcommand("sum-st", "S(T)/T against (3/2)C for a list of truncations R");
  std::int64_t st_T = 2000;
  CommonTarget st_target;
  std::vector<std::int64_t> R_list{10, 30, 100};
  std::int64_t st_cut = kDefaultPrimeCut;
  sum_st->add_option("--T", st_T, "largest trace")->required();
  st_target.add_to(sum_st);
  sum_st->add_option("--R", R_list, "comma-separated truncations R (U = sqrt(T) R^2)")->delimiter(',');
  sum_st->add_option("--prime-cut", st_cut, "Euler product cut for the constant");

  // box-demo
  auto* box = app.add_subcommand("box-demo", "average prime count over curves E(a,b), |a| <= A, |b| <= B");
  std::int64_t box_A = 5;
  std::int64_t box_B = 5;
  std::int64_t box_x = 50;
  CommonTarget box_target;
  box->add_option("--A", box_A, "bound on |a|");
  box->add_option("--B", box_B, "bound on |b|");
  box->add_option("--x", box_x, "upper bound for primes");
  box_target.add_to(box);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (threads == 0) threads = resolve_threads(0);
    if (*census) {
      const CongruenceTarget target = census_target.make();
      warn_target(target, err);
      census_config.threads = threads;
      if (!cache_path.empty()) census_config.cache_path = cache_path;
      const CensusResult result = census_range(census_x, target, census_config);
      const ReportInfo info{target.r(), target.h(), target.gcd_rh_squarefree()};
      if (report_path.empty()) {
        write_census_report(out, result, info);
      } else {
        std::ofstream file(report_path);
        if (!file) throw ResourceError("cannot write report " + report_path);
        write_census_report(file, result, info);
        const auto& agg = result.aggregates;
        ordered_json j;
        j["x"] = agg.x;
        j["r"] = target.r();
        j["h"] = target.h();
        j["primes"] = agg.prime_count;
        j["from_cache"] = agg.primes_from_cache;
        j["constant"] = real12(agg.frak_c);
        j["A1"] = real12(agg.A1);
        j["predicted_A1"] = real12(agg.predicted_A1);
        j["ratio_A1"] = real12(agg.ratio_A1);
        j["A2"] = agg.A2.get_str();
        j["predicted_A2"] = real12(agg.predicted_A2);
        j["ratio_A2"] = real12(agg.ratio_A2);
        out << j.dump() << "\n";
      }
      return kExitOk;
    }
    if (*report) {
      const CacheContents contents = read_cache(report_cache);
      const CongruenceTarget target(contents.header.r, contents.header.h);
      std::vector<PrimeCensus> records;
      for (std::int64_t p : sieve_primes(std::max<std::int64_t>(contents.header.x, 2))) {
        if (p < kFirstCensusPrime) continue;
        const auto it = contents.records.find(p);
        if (it == contents.records.end()) {
          throw CacheError("cache is incomplete (missing p = " + std::to_string(p) + "); rerun census to resume");
        }
        records.push_back(it->second);
      }
      const double c = frak_C(target, report_prime_cut).value;
      const CensusResult result = aggregate_census(contents.header.x, std::move(records), c, contents.records.size());
      const ReportInfo info{target.r(), target.h(), target.gcd_rh_squarefree()};
      if (report_out.empty()) {
        write_census_report(out, result, info);
      } else {
        std::ofstream file(report_out);
        if (!file) throw ResourceError("cannot write report " + report_out);
        write_census_report(file, result, info);
      }
      return kExitOk;
    }
    if (*constant) {
      const CongruenceTarget target = constant_target.make();
      warn_target(target, err);
      const EulerProductValue v = constant_alt ? frak_C_alt(target, constant_cut) : frak_C(target, constant_cut);
      if (constant_json) {
        out << euler_json(v, target, constant_alt ? "alt" : "standard", max_factors).dump() << "\n";
      } else {
        out << "value=" << format_real(v.value) << " tail_bound=" << format_real(v.tail_bound)
            << " prime_cut=" << v.prime_cut << "\n";
      }
      return kExitOk;
    }
    if (*verify) {
      VerifyResult res;
      if (suite == "deuring") res = verify_deuring(pmax, threads);
      else if (suite == "ct") res = verify_ct(nmax, tmax);
      else if (suite == "constant-identity") res = verify_constant_identity(verify_cut);
      else if (suite == "gl2") res = verify_gl2(ell_max, threads);
      else res = verify_st(st_tmax, st_umax, st_rmax);
      return report_verify(suite, res, out, err);
    }
    if (*gl2) {
      if (*gl2_p1) {
        out << gl2_json(count_p1(ell, threads), p1_closed(ell)).dump() << "\n";
      } else if (*gl2_p2) {
        out << gl2_json(count_p2(ell, alpha, gl2_r, threads), p2_closed(ell, alpha, gl2_r)).dump() << "\n";
      } else if (*gl2_order) {
        out << gl2_json(count_order_squarefree_factor(ell, threads), csf_order_factor(ell)).dump() << "\n";
      } else {
        const CongruenceTarget target = csf_target.make();
        warn_target(target, err);
        const CsfResult res = csf_generic(target, csf_cut, level, threads);
        ordered_json j;
        j["r"] = target.r();
        j["h"] = target.h();
        j["level"] = res.level;
        j["modulus"] = res.modulus;
        j["level_probability"] = rational_json(res.level_probability);
        j["value"] = real12(res.value);
        j["tail_bound"] = real12(res.product.tail_bound);
        j["prime_cut"] = csf_cut;
        j["defined_zero"] = res.defined_zero;
        out << j.dump() << "\n";
      }
      return kExitOk;
    }
    if (*sum_st) {
      const CongruenceTarget target = st_target.make();
      warn_target(target, err);
      out << "R,U,S_over_T,predicted,deviation\n";
      for (const auto& row : s_of_T_convergence(st_T, target, R_list, st_cut, threads)) {
        out << row.R << ',' << row.U << ',' << format_real(row.s_over_T) << ',' << format_real(row.predicted) << ','
            << format_real(row.deviation) << '\n';
      }
      return kExitOk;
    }
    if (*box) {
      const CongruenceTarget target = box_target.make();
      warn_target(target, err);
      const BoxAverage avg = box_average_demo(box_A, box_B, box_x, target);
      ordered_json j;
      j["A"] = box_A;
      j["B"] = box_B;
      j["x"] = box_x;
      j["r"] = target.r();
      j["h"] = target.h();
      j["curves"] = avg.curves;
      j["total"] = avg.total_count;
      j["average"] = rational_json(avg.average);
      j["average_value"] = real12(avg.average.to_double());
      out << j.dump() << "\n";
      return kExitOk;
    }
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ResourceError& e) {
    err << "resource error: " << e.what() << "\n";
    return kExitResource;
  } catch (const CacheError& e) {
    err << "cache error: " << e.what() << "\n";
    return kExitResource;
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << "\n";
    return kExitVerificationFailed;
  }
  return kExitUsage;
}

}  // namespace frobdisc

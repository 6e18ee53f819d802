// Command-line front end. Every subcommand maps its flags onto a JobSpec
// and hands it to cubiclines::run.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cubiclines/harness.hpp"

namespace {

using cubiclines::Json;

struct ParamFlag {
  const char* key;
  const char* help;
};

// Parameters accepted by each subcommand. Values are kept as text and
// interpreted by the harness (integers, grids start:stop:factor, comma lists,
// fractions such as 1/3).
const std::map<std::string, std::vector<ParamFlag>>& parameter_table() {
  static const std::map<std::string, std::vector<ParamFlag>> t = {
      {"count-lines",
       {{"c", "coefficients, comma separated"}, {"s", "number of variables (c defaults to all ones)"},
        {"X", "box radius or grid start:stop:factor"}, {"method", "mitm | bruteforce | both"}}},
      {"count-pv", {{"s", "number of pairs per side"}, {"X", "box size or grid"}}},
      {"count-hua", {{"X", "box size or grid"}}},
      {"count-local", {{"q", "modulus"}, {"c", "coefficients"}, {"s", "number of variables"}}},
      {"exp-sum",
       {{"alpha", "four phases"}, {"beta", "three phases (optional)"}, {"theta", "two phases (optional)"},
        {"X", "range bound"}, {"range", "positive | symmetric"}, {"coefficient", "scalar coefficient"}}},
      {"complete-sum",
       {{"q", "modulus"}, {"a", "four residues (omit for the full table)"},
        {"method", "direct | multiplicity-vector | multi-axis-transform"}}},
      {"local-average", {{"q", "modulus"}, {"c", "coefficients"}, {"s", "number of variables"}}},
      {"singular-series",
       {{"c", "coefficients"}, {"s", "number of variables"}, {"p_max", "largest prime"},
        {"deep_prime_cutoff", "primes up to this use deep_h_max"}, {"deep_h_max", "depth for small primes"},
        {"shallow_h_max", "depth for the other primes"}}},
      {"local-identity",
       {{"p", "prime"}, {"h", "depth"}, {"c", "coefficients"}, {"s", "number of variables"},
        {"tolerance", "relative tolerance"}}},
      {"u-eval", {{"gamma", "four reals"}, {"tol", "absolute tolerance"}}},
      {"v-eval", {{"gamma", "four reals"}, {"P", "scale"}, {"tol", "absolute tolerance"}}},
      {"singular-integral-mc",
       {{"c", "coefficients"}, {"s", "number of variables"}, {"sigma", "slab half-width"},
        {"samples", "sample count"}, {"seed", "rng seed"}}},
      {"singular-integral-quad",
       {{"c", "coefficients"}, {"s", "number of variables"}, {"R", "truncation radius"}, {"grid", "points per axis"}}},
      {"classify-arc",
       {{"family", "N (four coordinates) | M (one coordinate)"}, {"alpha", "point"}, {"delta", "exponent for N"},
        {"H", "height for M"}, {"X", "scale"}}},
      {"measure-arcs", {{"H", "height or integer grid"}, {"X", "scale"}}},
      {"kernel-k", {{"gamma1", "first frequency"}, {"gamma2", "second frequency"}, {"X", "range"}}},
      {"kernel-t", {{"alpha", "four phases"}, {"beta", "three phases"}, {"X", "z range"}, {"Y", "h range"}}},
      {"fit-exponent",
       {{"kind", "count-pv | count-hua | count-lines"}, {"X", "grid"}, {"s", "number of variables"},
        {"c", "coefficients"}, {"counts", "explicit counts matching X"}}},
      {"acceptance",
       {{"profile", "quick | full"}, {"seed", "suite seed"}, {"only", "criterion numbers, comma separated"},
        {"tolerance_scale", "multiplies every tolerance (0 is the negative control)"},
        {"alternate_workers", "worker count for the determinism rerun"}}},
  };
  return t;
}

Json typed(const std::string& v) {
  // Plain integers become JSON integers; everything else stays text.
  if (!v.empty() && v.find_first_not_of("-0123456789") == std::string::npos && v != "-") {
    try {
      std::size_t used = 0;
      long long n = std::stoll(v, &used);
      if (used == v.size()) return Json(static_cast<std::int64_t>(n));
    } catch (const std::exception&) {
    }
  }
  return Json(v);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact counts, exponential sums, local and archimedean densities, and arc dissections "
               "for rational lines on diagonal cubic hypersurfaces."};
  app.set_help_flag("--help", "print this help and exit");
  app.set_config("--config", "", "read options from a TOML/INI file (keys mirror the flags)");
  app.require_subcommand(1);

  unsigned workers = 1;
  double max_ops = cubiclines::Budget{}.max_operations;
  double max_bytes = cubiclines::Budget{}.max_bytes;
  bool dry_run = false, timing = false;
  std::string format = "jsonl", output;
  app.add_option("--workers", workers, "worker threads")->check(CLI::Range(1u, 1024u));
  app.add_option("--max-ops", max_ops, "work limit in elementary operations");
  app.add_option("--max-bytes", max_bytes, "memory limit in bytes");
  app.add_flag("--dry-run", dry_run, "print the cost estimate and stop");
  app.add_flag("--timing", timing, "include wall-clock times in count records");
  app.add_option("--format", format, "jsonl | csv")->check(CLI::IsMember({"jsonl", "csv"}));
  app.add_option("-o,--output", output, "write the report here instead of stdout");

  std::map<std::string, std::map<std::string, std::string>> values;
  std::map<std::string, bool> single_estimate;
  for (const auto& name : cubiclines::subcommands()) {
    auto* sub = app.add_subcommand(name);
    sub->set_help_flag("--help", "print this help and exit");
    for (const auto& f : parameter_table().at(name)) {
      std::string flag = std::string("--") + f.key;
      for (auto& ch : flag)
        if (ch == '_') ch = '-';
      sub->add_option(flag, values[name][f.key], f.help);
    }
    if (name == "singular-integral-mc")
      sub->add_flag("--single", single_estimate[name], "only the estimate at sigma (no sigma/2 companion)");
  }

  CLI11_PARSE(app, argc, argv);

  cubiclines::JobSpec job;
  for (auto* sub : app.get_subcommands()) job.command = sub->get_name();
  for (const auto& [k, v] : values[job.command])
    if (!v.empty()) job.params[k] = typed(v);
  if (single_estimate[job.command]) job.params["pair"] = false;
  job.workers = workers;
  job.budget = {max_ops, max_bytes};
  job.dry_run = dry_run;
  job.timing = timing;
  job.format = format == "csv" ? cubiclines::OutputFormat::csv : cubiclines::OutputFormat::jsonl;
  job.output = output;

  try {
    const auto report = cubiclines::run(job);
    const std::string text = cubiclines::serialize(report, job.format);
    if (output.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(output, std::ios::binary);
      if (!f) {
        std::cerr << "error: cannot open " << output << '\n';
        return 2;
      }
      f << text;
    }
    if (job.command == "acceptance") {
      for (const auto& r : report.results)
        std::cerr << "criterion " << r["criterion"].get<int>() << ' ' << (r["pass"].get<bool>() ? "PASS" : "FAIL")
                  << "  " << r["title"].get<std::string>() << '\n';
    }
    return report.passed() ? 0 : 1;
  } catch (const cubiclines::BudgetExceeded& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return 3;
  } catch (const cubiclines::PreconditionError& e) {
    std::cerr << "invalid job: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  }
}

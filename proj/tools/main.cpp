#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bilingam/bilingam.hpp"

namespace {

using bilingam::DegenerateSeries;
using bilingam::Error;
using bilingam::InsufficientSample;
using bilingam::MalformedCsv;
using json = nlohmann::ordered_json;

constexpr int kExitMalformedCsv = 2;
constexpr int kExitInsufficientRows = 3;
constexpr int kExitDegenerateColumn = 4;
constexpr int kExitUnwritable = 5;
constexpr int kExitInvalidCell = 6;

bilingam::IndependenceMethod parse_method(const std::string& name) {
  return name == "gamma" ? bilingam::IndependenceMethod::GammaHsic
                         : bilingam::IndependenceMethod::PermutationHsic;
}

bilingam::GaussianityMethod parse_gt(const std::string& name) {
  return name == "ad" ? bilingam::GaussianityMethod::AndersonDarling
                      : bilingam::GaussianityMethod::JarqueBera;
}

bilingam::NoiseKind parse_noise(const std::string& name) {
  if (name == "gaussian") return bilingam::NoiseKind::Gaussian;
  if (name == "exponential") return bilingam::NoiseKind::Exponential;
  if (name == "laplace") return bilingam::NoiseKind::Laplace;
  if (name == "poisson") return bilingam::NoiseKind::Poisson;
  throw bilingam::InvalidInput("unknown noise kind: " + name);
}

/// Seed used when the user gave none; printed so the run stays reproducible.
std::uint64_t fresh_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

std::uint64_t resolve_seed(const CLI::Option* opt, std::uint64_t value) {
  if (opt->count() > 0) return value;
  const std::uint64_t seed = fresh_seed();
  std::cerr << "seed: " << seed << "\n";
  return seed;
}

json decision_to_json(const bilingam::TestDecision& d) {
  json out;
  out["statistic"] = d.statistic;
  out["p_value"] = d.p_value;
  out["reject"] = d.reject;
  return out;
}

struct DetectOpts {
  std::string input;
  std::string out;
  std::string method = "perm";
  std::string format = "json";
  double alpha = 0.05;
  int permutations = 500;
  std::uint64_t seed = 0;
};

int write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream f(path);
  if (!f) {
    std::cerr << "error: cannot open output path: " << path << "\n";
    return kExitUnwritable;
  }
  f << text;
  f.flush();
  if (!f) {
    std::cerr << "error: failed writing output path: " << path << "\n";
    return kExitUnwritable;
  }
  return 0;
}

int cmd_detect(const DetectOpts& o) {
  std::ifstream in(o.input);
  if (!in) {
    throw MalformedCsv("cannot open input file: " + o.input);
  }
  const bilingam::CsvPairs pairs = bilingam::read_pairs(in);
  const std::size_t rows = pairs.sample.x.size();
  if (rows < 20) {
    throw InsufficientSample("need at least 20 data rows, got " +
                             std::to_string(rows));
  }
  if (bilingam::sample_std(pairs.sample.x) == 0.0) {
    throw DegenerateSeries("column '" + pairs.x_name + "' is constant");
  }
  if (bilingam::sample_std(pairs.sample.y) == 0.0) {
    throw DegenerateSeries("column '" + pairs.y_name + "' is constant");
  }

  bilingam::IndependenceTestConfig cfg;
  cfg.method = parse_method(o.method);
  cfg.permutations = o.permutations;
  cfg.alpha = o.alpha;
  cfg.rng_seed = o.seed;
  const bilingam::DirectionReport r = bilingam::detect_direction(pairs.sample, cfg);

  std::string text;
  if (o.format == "csv") {
    std::ostringstream os;
    os << "verdict,h10_statistic,h10_p_value,h10_reject,"
          "h20_statistic,h20_p_value,h20_reject,tests_performed\n";
    os << bilingam::verdict_name(r.verdict) << ','
       << bilingam::format_full(r.h10->statistic) << ','
       << bilingam::format_full(r.h10->p_value) << ','
       << (r.h10->reject ? "true" : "false") << ','
       << bilingam::format_full(r.h20->statistic) << ','
       << bilingam::format_full(r.h20->p_value) << ','
       << (r.h20->reject ? "true" : "false") << ','
       << r.tests_performed << '\n';
    text = os.str();
  } else {
    json out;
    out["verdict"] = bilingam::verdict_name(r.verdict);
    out["h10"] = decision_to_json(*r.h10);
    out["h20"] = decision_to_json(*r.h20);
    out["tests_performed"] = r.tests_performed;
    out["config"] = {{"alpha", o.alpha},
                     {"method", o.method},
                     {"permutations", o.permutations},
                     {"seed", o.seed}};
    text = out.dump(2) + "\n";
  }
  return write_text(o.out, text);
}

struct SimulateOpts {
  std::string out;
  std::string noise = "gaussian";
  std::size_t n = 400;
  double slope = 2.0;
  std::uint64_t seed = 0;
};

int cmd_simulate(const SimulateOpts& o) {
  if (o.n < 20) {
    throw InsufficientSample("simulate requires --n >= 20, got " +
                             std::to_string(o.n));
  }
  const bilingam::PairedSample s =
      bilingam::generate({o.n, o.slope, parse_noise(o.noise), o.seed});
  std::ofstream f(o.out);
  if (!f) {
    std::cerr << "error: cannot open output path: " << o.out << "\n";
    return kExitUnwritable;
  }
  bilingam::write_pairs(f, s);
  f.flush();
  if (!f) {
    std::cerr << "error: failed writing output path: " << o.out << "\n";
    return kExitUnwritable;
  }
  std::cerr << "wrote " << o.out << " (" << o.n << " rows)\n";
  return 0;
}

struct BenchOpts {
  std::string kind;
  std::string out;
  std::string method = "perm";
  std::string gt = "jb";
  std::vector<std::size_t> sizes{400, 800, 1600};
  std::vector<std::string> noise{"gaussian", "exponential", "laplace", "poisson"};
  int batches = 100;
  int permutations = 500;
  double alpha = 0.05;
  double slope = 2.0;
  std::uint64_t seed = 0;
};

bilingam::ExperimentConfig bench_config(const BenchOpts& o) {
  bilingam::ExperimentConfig cfg;
  cfg.sample_sizes = o.sizes;
  cfg.noise_kinds.clear();
  for (const auto& name : o.noise) cfg.noise_kinds.push_back(parse_noise(name));
  cfg.batches = o.batches;
  cfg.alpha = o.alpha;
  cfg.it_cfg.method = parse_method(o.method);
  cfg.it_cfg.permutations = o.permutations;
  cfg.gt = parse_gt(o.gt);
  cfg.slope = o.slope;
  cfg.master_seed = o.seed;
  return cfg;
}

json bench_config_json(const BenchOpts& o) {
  json cfg;
  cfg["sizes"] = o.sizes;
  cfg["noise"] = o.noise;
  cfg["batches"] = o.batches;
  cfg["alpha"] = o.alpha;
  cfg["method"] = o.method;
  cfg["permutations"] = o.permutations;
  cfg["gt"] = o.gt;
  cfg["slope"] = o.slope;
  cfg["seed"] = o.seed;
  return cfg;
}

int emit_bench_files(const std::string& stem, const std::string& csv_text,
                     const json& summary) {
  const int rc_csv = write_text(stem + ".csv", csv_text);
  if (rc_csv != 0) return rc_csv;
  return write_text(stem + ".json", summary.dump(2) + "\n");
}

int cmd_bench_consistency(const BenchOpts& o) {
  const bilingam::ConsistencyReport report = run_consistency(bench_config(o));

  std::ostringstream csv;
  csv << "noise,n,metric,value\n";
  json cells = json::array();
  bool any_invalid = false;
  std::ostringstream table;
  table << "noise        n      consistency_rate\n";
  for (const auto& c : report.cells) {
    const std::string noise = bilingam::noise_name(c.noise);
    csv << noise << ',' << c.n << ",consistency_rate,"
        << bilingam::format_full(c.consistency_rate) << '\n';
    json cell;
    cell["noise"] = noise;
    cell["n"] = c.n;
    cell["consistency_rate"] = c.consistency_rate;
    cell["excluded"] = c.excluded;
    cell["invalid"] = c.invalid;
    cells.push_back(cell);
    any_invalid = any_invalid || c.invalid;
    char row[96];
    std::snprintf(row, sizeof(row), "%-12s %-6zu %.3f\n", noise.c_str(), c.n,
                  c.consistency_rate);
    table << row;
  }
  json summary;
  summary["experiment"] = "consistency";
  summary["config"] = bench_config_json(o);
  summary["cells"] = cells;

  const std::string stem = o.out.empty() ? "bench_consistency" : o.out;
  const int rc = emit_bench_files(stem, csv.str(), summary);
  if (rc != 0) return rc;
  std::cout << table.str();
  return any_invalid ? kExitInvalidCell : 0;
}

int cmd_bench_tpd(const BenchOpts& o) {
  const bilingam::TpdReport report = run_tpd(bench_config(o));

  std::ostringstream csv;
  csv << "noise,n,metric,value\n";
  json cells = json::array();
  bool any_invalid = false;
  std::ostringstream table;
  table << "noise        n      algorithm           mean_tpd\n";
  for (const auto& c : report.cells) {
    const std::string noise = bilingam::noise_name(c.noise);
    const std::string alg = bilingam::algorithm_name(c.algorithm);
    csv << noise << ',' << c.n << ",mean_tpd_" << alg << ','
        << bilingam::format_full(c.mean_tpd) << '\n';
    json cell;
    cell["noise"] = noise;
    cell["n"] = c.n;
    cell["algorithm"] = alg;
    cell["mean_tpd"] = c.mean_tpd;
    cell["verdicts"] = {
        {"XtoY", c.verdict_counts[static_cast<int>(bilingam::Verdict::XtoY)]},
        {"YtoX", c.verdict_counts[static_cast<int>(bilingam::Verdict::YtoX)]},
        {"GaussianNoise",
         c.verdict_counts[static_cast<int>(bilingam::Verdict::GaussianNoise)]},
        {"Inconclusive",
         c.verdict_counts[static_cast<int>(bilingam::Verdict::Inconclusive)]}};
    cell["excluded"] = c.excluded;
    cell["invalid"] = c.invalid;
    cells.push_back(cell);
    any_invalid = any_invalid || c.invalid;
    char row[120];
    std::snprintf(row, sizeof(row), "%-12s %-6zu %-19s %.3f\n", noise.c_str(), c.n,
                  alg.c_str(), c.mean_tpd);
    table << row;
  }
  json summary;
  summary["experiment"] = "tpd";
  summary["config"] = bench_config_json(o);
  summary["cells"] = cells;

  const std::string stem = o.out.empty() ? "bench_tpd" : o.out;
  const int rc = emit_bench_files(stem, csv.str(), summary);
  if (rc != 0) return rc;
  std::cout << table.str();
  return any_invalid ? kExitInvalidCell : 0;
}

int run_guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const MalformedCsv& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMalformedCsv;
  } catch (const InsufficientSample& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInsufficientRows;
  } catch (const DegenerateSeries& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDegenerateColumn;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bivariate causal direction detection for linear models with "
               "non-Gaussian noise"};
  app.require_subcommand(1);

  DetectOpts det;
  CLI::App* detect = app.add_subcommand(
      "detect", "Read a two-column CSV and report the causal direction");
  detect->add_option("input", det.input, "Input CSV path (first two numeric columns used)")
      ->required();
  detect->add_option("--alpha", det.alpha, "Significance level for both tests");
  detect->add_option("--method", det.method, "Independence test flavor")
      ->check(CLI::IsMember({"perm", "gamma"}));
  detect->add_option("--permutations", det.permutations,
                     "Permutation count for the perm method");
  CLI::Option* det_seed = detect->add_option("--seed", det.seed, "RNG seed");
  detect->add_option("--out", det.out, "Write the report here instead of stdout");
  detect->add_option("--format", det.format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}));

  SimulateOpts sim;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "Generate a synthetic cause-effect sample as CSV");
  simulate->add_option("--out", sim.out, "Output CSV path")->required();
  simulate->add_option("--n", sim.n, "Number of rows");
  simulate->add_option("--noise", sim.noise, "Noise family")
      ->check(CLI::IsMember({"gaussian", "exponential", "laplace", "poisson"}));
  simulate->add_option("--slope", sim.slope, "Structural coefficient");
  CLI::Option* sim_seed = simulate->add_option("--seed", sim.seed, "RNG seed");

  BenchOpts bench;
  CLI::App* bench_cmd = app.add_subcommand(
      "bench", "Run a benchmark grid and write CSV + JSON reports");
  bench_cmd->add_option("kind", bench.kind, "Which experiment to run")
      ->required()
      ->check(CLI::IsMember({"consistency", "tpd"}));
  bench_cmd->add_option("--sizes", bench.sizes, "Sample sizes")
      ->delimiter(',');
  bench_cmd->add_option("--noise", bench.noise, "Noise families")
      ->delimiter(',')
      ->check(CLI::IsMember({"gaussian", "exponential", "laplace", "poisson"}));
  bench_cmd->add_option("--batches", bench.batches, "Batches per cell")
      ->check(CLI::Range(10, 1000000));
  bench_cmd->add_option("--alpha", bench.alpha, "Significance level");
  bench_cmd->add_option("--method", bench.method, "Independence test flavor")
      ->check(CLI::IsMember({"perm", "gamma"}));
  bench_cmd->add_option("--permutations", bench.permutations,
                        "Permutation count for the perm method");
  bench_cmd->add_option("--gt", bench.gt, "Gaussianity test flavor")
      ->check(CLI::IsMember({"jb", "ad"}));
  bench_cmd->add_option("--slope", bench.slope, "Structural coefficient");
  CLI::Option* bench_seed = bench_cmd->add_option("--seed", bench.seed, "Master seed");
  bench_cmd->add_option("--out", bench.out,
                        "Report file stem (writes <stem>.csv and <stem>.json)");

  CLI11_PARSE(app, argc, argv);

  if (app.got_subcommand(detect)) {
    det.seed = resolve_seed(det_seed, det.seed);
    return run_guarded([&] { return cmd_detect(det); });
  }
  if (app.got_subcommand(simulate)) {
    sim.seed = resolve_seed(sim_seed, sim.seed);
    return run_guarded([&] { return cmd_simulate(sim); });
  }
  bench.seed = resolve_seed(bench_seed, bench.seed);
  if (bench.kind == "consistency") {
    return run_guarded([&] { return cmd_bench_consistency(bench); });
  }
  return run_guarded([&] { return cmd_bench_tpd(bench); });
}

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lanczos_lab/bounds.hpp"
#include "lanczos_lab/experiments.hpp"
#include "lanczos_lab/format.hpp"
#include "lanczos_lab/orthopoly.hpp"
#include "lanczos_lab/output.hpp"
#include "lanczos_lab/spectra.hpp"
#include "lanczos_lab/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace lanczos_lab;

namespace {

constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

fs::path output_dir() {
  const char* env = std::getenv("LANCZOS_LAB_OUTDIR");
  return env && *env ? fs::path(env) : fs::path(".");
}

fs::path resolve_output(const std::string& given, const std::string& fallback_name) {
  fs::path p = given.empty() ? output_dir() / fallback_name : fs::path(given);
  if (p.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(p.parent_path(), ec);
    if (ec) throw IoError("cannot create directory '" + p.parent_path().string() + "'");
  }
  return p;
}

void write_file(const fs::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw IoError("cannot open '" + p.string() + "' for writing");
  out << content;
  if (!out) throw IoError("write to '" + p.string() + "' failed");
}

std::string read_file(const std::string& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw IoError("cannot open '" + p + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Spectrum read_spectrum_file(const std::string& p) {
  std::istringstream in(read_file(p));
  return read_spectrum(in);
}

std::string command_echo(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i) s += ' ';
    s += argv[i];
  }
  return s;
}

// ---------------------------------------------------------------------------

struct SpectrumArgs {
  std::string kind;
  std::size_t n = 0;
  int m = 4;
  std::string out;
};

int cmd_spectrum(const SpectrumArgs& a) {
  ExperimentConfig cfg;
  cfg.kind = parse_spectrum_kind(a.kind);
  if (cfg.kind == SpectrumKind::file) throw std::invalid_argument("spectrum --kind file is not a generator");
  cfg.n = a.n;
  cfg.hard_m = a.m;
  const Spectrum spec = make_spectrum(cfg);
  std::ostringstream s;
  write_spectrum(s, spec);
  if (a.out.empty() && !std::getenv("LANCZOS_LAB_OUTDIR")) {
    std::cout << s.str();
    return 0;
  }
  const fs::path p =
      resolve_output(a.out, "spectrum-" + to_string(cfg.kind) + "-" + std::to_string(a.n) + ".txt");
  write_file(p, s.str());
  std::cout << p.string() << '\n';
  return 0;
}

struct RunArgs {
  std::string config;
  std::string kind;
  std::size_t n = 0, m_max = 0, trials = 0, index = 0;
  std::uint64_t seed = 0;
  std::string path;
  int hard_m = 0;
  std::string spectrum_file;
  unsigned threads = 0;
  std::string reorth;
  std::string csv, json_out, svg, box_svg, predictor_csv;
};

ExperimentConfig resolve_run_config(const RunArgs& a, const CLI::App& app) {
  ExperimentConfig cfg;
  if (!a.config.empty()) {
    json j;
    try {
      j = json::parse(read_file(a.config));
    } catch (const json::parse_error& e) {
      throw std::invalid_argument("config '" + a.config + "' is not valid JSON: " + e.what());
    }
    if (j.is_object() && j.contains("config")) j = j["config"];
    cfg = config_from_json(j);
  }
  auto given = [&app](const char* name) { return app.get_option(name)->count() > 0; };
  if (given("--kind")) cfg.kind = parse_spectrum_kind(a.kind);
  if (given("--n")) cfg.n = a.n;
  if (given("--m-max")) cfg.m_max = a.m_max;
  if (given("--trials")) cfg.trials = a.trials;
  if (given("--seed")) cfg.seed = a.seed;
  if (given("--index")) cfg.eigen_index = a.index;
  if (given("--path")) cfg.path = parse_trial_path(a.path);
  if (given("--hard-m")) cfg.hard_m = a.hard_m;
  if (given("--spectrum-file")) {
    cfg.spectrum_file = a.spectrum_file;
    if (!given("--kind")) cfg.kind = SpectrumKind::file;
  }
  if (given("--threads")) cfg.threads = a.threads;
  if (given("--reorth")) cfg.reorthogonalize = a.reorth == "on";
  if (cfg.kind == SpectrumKind::file) {
    if (cfg.spectrum_file.empty()) throw std::invalid_argument("--kind file needs --spectrum-file");
    cfg.n = read_spectrum_file(cfg.spectrum_file).n();
  }
  return cfg;
}

int cmd_run(const RunArgs& a, const CLI::App& app, const std::string& echo) {
  const auto t0 = std::chrono::steady_clock::now();
  const ExperimentConfig cfg = resolve_run_config(a, app);
  const Spectrum spec = cfg.kind == SpectrumKind::file ? read_spectrum_file(cfg.spectrum_file)
                                                        : make_spectrum(cfg);
  validate(cfg, spec);
  const std::string stem =
      "run-" + to_string(cfg.kind) + "-n" + std::to_string(spec.n()) + "-s" + std::to_string(cfg.seed);

  const auto t1 = std::chrono::steady_clock::now();
  const AggregateStats stats = run_experiment(cfg, spec);
  const auto t2 = std::chrono::steady_clock::now();

  json outputs = json::object();
  const fs::path csv_path = resolve_output(a.csv, stem + ".csv");
  {
    std::ostringstream s;
    write_stats_csv(s, stats);
    write_file(csv_path, s.str());
    outputs["csv"] = csv_path.string();
  }
  const std::string title = to_string(cfg.kind) + ", n = " + std::to_string(spec.n());
  if (!a.svg.empty()) {
    PlotSeries series{"n = " + std::to_string(spec.n()), {}};
    for (const auto& r : stats.rows) series.points.emplace_back(static_cast<double>(r.m), r.mean);
    const fs::path p = resolve_output(a.svg, "");
    write_file(p, svg_line_plot({series}, {title}));
    outputs["svg"] = p.string();
  }
  if (!a.box_svg.empty()) {
    const fs::path p = resolve_output(a.box_svg, "");
    write_file(p, svg_box_plot(stats, {title}));
    outputs["box_svg"] = p.string();
  }
  if (!a.predictor_csv.empty()) {
    const LimitingDensity d = limiting_density(cfg.kind);
    const ThreeTermRecurrence rec = recurrence_from_density(
        jacobi_weight(d.weight, d.a, d.b), d.a, d.b, static_cast<int>(cfg.m_max),
        std::max(64, 2 * static_cast<int>(cfg.m_max)));
    std::ostringstream s;
    write_predictor_csv(s, compare_predictor(stats, rec, d.a, d.b));
    const fs::path p = resolve_output(a.predictor_csv, "");
    write_file(p, s.str());
    outputs["predictor_csv"] = p.string();
  }

  const fs::path manifest_path = resolve_output(a.json_out, stem + ".json");
  outputs["json"] = manifest_path.string();
  const auto t3 = std::chrono::steady_clock::now();
  auto secs = [](auto d) { return std::chrono::duration<double>(d).count(); };
  json manifest;
  manifest["command"] = echo;
  manifest["version"] = LANCZOS_LAB_VERSION;
  manifest["config"] = config_to_json(cfg);
  manifest["seed"] = cfg.seed;
  manifest["outputs"] = outputs;
  manifest["clamped_negative_errors"] = stats.clamped;
  manifest["most_negative_raw_error"] = stats.most_negative_raw;
  manifest["timings"] = {{"setup_seconds", secs(t1 - t0)},
                         {"trials_seconds", secs(t2 - t1)},
                         {"total_seconds", secs(t3 - t0)}};
  write_file(manifest_path, manifest.dump(2) + "\n");

  const BoxStats& last = stats.rows.back();
  std::cout << "kind=" << to_string(cfg.kind) << " n=" << spec.n() << " path=" << to_string(stats.path)
            << " trials=" << cfg.trials << " m=" << last.m
            << " mean_scaled=" << format_g17(last.mean) << '\n';
  for (const auto& [k, v] : outputs.items()) std::cout << k << ": " << v.get<std::string>() << '\n';
  return 0;
}

struct BoundsArgs {
  std::string name;
  BoundInputs in;
  bool list = false;
};

int cmd_bounds(const BoundsArgs& a) {
  if (a.list) {
    for (const auto& n : bound_names()) std::cout << n << '\n';
    return 0;
  }
  if (a.name.empty()) throw std::invalid_argument("bounds needs --name (see --list)");
  std::cout << to_json(evaluate_bound(a.name, a.in)).dump(2) << '\n';
  return 0;
}

struct PredictArgs {
  std::string density;
  std::string spectrum_file;
  double alpha = 0.0, beta = 0.0;
  double a = 0.0, b = 1.0;
  int m = 0;
  int m_max = 0;
};

int cmd_predict(const PredictArgs& p, const CLI::App& app) {
  const int hi = p.m > 0 ? p.m : p.m_max;
  const int lo = p.m > 0 ? p.m : 1;
  if (hi < 1) throw std::invalid_argument("predict needs --m or --m-max");
  ThreeTermRecurrence rec;
  double a = p.a, b = p.b;
  if (!p.spectrum_file.empty()) {
    const Spectrum spec = read_spectrum_file(p.spectrum_file);
    std::vector<MeasurePoint> pts;
    for (std::size_t j = 0; j < spec.distinct(); ++j)
      pts.push_back({spec.values()[j], static_cast<double>(spec.mults()[j]) / spec.n()});
    rec = recurrence_from_discrete_measure(pts, hi, true);
    if (app.get_option("--a")->count() == 0) a = spec.bottom();
    if (app.get_option("--b")->count() == 0) b = spec.top();
  } else {
    JacobiParams w;
    if (p.density == "uniform") w = JacobiParams(0.0, 0.0);
    else if (p.density == "arcsine") w = JacobiParams(-0.5, -0.5);
    else if (p.density == "semicircle") w = JacobiParams(0.5, 0.5);
    else if (p.density == "jacobi") w = JacobiParams(p.alpha, p.beta);
    else throw std::invalid_argument("unknown density '" + p.density + "'");
    rec = recurrence_from_density(jacobi_weight(w, a, b), a, b, hi, std::max(64, 2 * hi));
  }
  std::cout << "m,largest_zero,predictor,scaled\n";
  for (int m = lo; m <= hi; ++m) {
    const double pred = asymptotic_predictor(rec, m, a, b);
    std::cout << m << ',' << format_g17(largest_zero(rec, m)) << ',' << format_g17(pred) << ','
              << format_g17(pred * m * m) << '\n';
  }
  return 0;
}

struct PlotArgs {
  std::vector<std::string> csvs;
  std::vector<std::string> labels;
  std::string out;
  std::string title;
};

int cmd_plot(const PlotArgs& a) {
  std::vector<PlotSeries> series;
  for (std::size_t k = 0; k < a.csvs.size(); ++k) {
    std::istringstream in(read_file(a.csvs[k]));
    std::string line;
    std::getline(in, line);
    if (line.rfind("m,mean,", 0) != 0)
      throw std::invalid_argument("'" + a.csvs[k] + "' is not a run CSV");
    PlotSeries s{k < a.labels.size() ? a.labels[k] : fs::path(a.csvs[k]).stem().string(), {}};
    while (std::getline(in, line)) {
      std::istringstream ls(line);
      double m, mean;
      char comma;
      if (ls >> m >> comma >> mean) s.points.emplace_back(m, mean);
    }
    series.push_back(std::move(s));
  }
  const fs::path p = resolve_output(a.out, "plot.svg");
  write_file(p, svg_line_plot(series, {a.title}));
  std::cout << p.string() << '\n';
  return 0;
}

int cmd_verify(const std::string& level, const std::string& fault, unsigned threads) {
  VerifyOptions o;
  if (level == "quick") o.level = VerifyLevel::quick;
  else if (level == "full") o.level = VerifyLevel::full;
  else throw std::invalid_argument("unknown level '" + level + "'");
  if (fault == "legendre-weight") o.corrupt_legendre_weight = true;
  else if (!fault.empty()) throw std::invalid_argument("unknown fault '" + fault + "'");
  o.threads = threads;
  const VerifyReport rep = run_verify(o);
  for (const auto& c : rep.checks)
    std::cout << (c.passed ? "PASS  " : "FAIL  ") << c.name << "  (" << c.detail << ")\n";
  const auto failed = std::count_if(rep.checks.begin(), rep.checks.end(),
                                    [](const VerifyCheck& c) { return !c.passed; });
  std::cout << (rep.checks.size() - failed) << "/" << rep.checks.size() << " checks passed\n";
  return rep.passed() ? 0 : kExitVerifyFailed;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lanczos error laboratory: spectra, randomized trials, bounds and predictors"};
  app.set_version_flag("--version", LANCZOS_LAB_VERSION);
  app.require_subcommand(1);

  SpectrumArgs sa;
  auto* spectrum = app.add_subcommand("spectrum", "Write a spectrum as 'value multiplicity' lines");
  spectrum->add_option("--kind", sa.kind, "lap, unif, semi, log, legendre-hard, jacobi-hard")->required();
  spectrum->add_option("--n", sa.n, "Dimension")->required();
  spectrum->add_option("--m", sa.m, "m of the hard-instance constructions");
  spectrum->add_option("--out", sa.out, "Output file (default: stdout, or the output directory)");

  RunArgs ra;
  auto* run = app.add_subcommand("run", "Run randomized Lanczos trials and aggregate the errors");
  run->add_option("--config", ra.config, "JSON config or run manifest; flags override it");
  run->add_option("--kind", ra.kind, "Spectrum kind");
  run->add_option("--n", ra.n, "Dimension");
  run->add_option("--m-max", ra.m_max, "Largest iteration count");
  run->add_option("--trials", ra.trials, "Number of random starting vectors");
  run->add_option("--seed", ra.seed, "64-bit seed");
  run->add_option("--path", ra.path, "matrix or measure")->check(CLI::IsMember({"matrix", "measure"}));
  run->add_option("--index", ra.index, "Eigenvalue index i");
  run->add_option("--hard-m", ra.hard_m, "m of the hard-instance constructions");
  run->add_option("--spectrum-file", ra.spectrum_file, "Spectrum file for --kind file");
  run->add_option("--threads", ra.threads, "Worker threads (0: all cores)");
  run->add_option("--reorth", ra.reorth, "Force reorthogonalization on or off")
      ->check(CLI::IsMember({"on", "off"}));
  run->add_option("--csv", ra.csv, "Statistics CSV");
  run->add_option("--json", ra.json_out, "Run manifest");
  run->add_option("--svg", ra.svg, "Line plot of the mean scaled error");
  run->add_option("--box-svg", ra.box_svg, "Box plot of the scaled error");
  run->add_option("--predictor-csv", ra.predictor_csv,
                  "Empirical error against the limiting-density predictor (lap, unif, semi)");

  BoundsArgs ba;
  auto* bounds = app.add_subcommand("bounds", "Evaluate a closed-form bound as JSON");
  bounds->add_option("--name", ba.name, "Bound name");
  bounds->add_flag("--list", ba.list, "List bound names");
  bounds->add_option("--n", ba.in.n, "Dimension");
  bounds->add_option("--m", ba.in.m, "Iterations");
  bounds->add_option("--p", ba.in.p, "Moment order p");
  bounds->add_option("--eps", ba.in.eps, "Tolerance for kw-prob");
  bounds->add_option("--gamma", ba.in.gamma, "Gap ratio for kps");
  bounds->add_option("--tan2", ba.in.tan_angle_sq, "Squared tangent of the start angle for kps");
  bounds->add_option("--alpha", ba.in.alpha, "Cluster exponent");
  bounds->add_option("--i", ba.in.i, "Eigenvalue index");
  bounds->add_option("--delta", ba.in.delta, "Relative gap");
  bounds->add_option("--kappa", ba.in.kappa, "Condition number bound");
  bounds->add_option("--k", ba.in.k, "Chi-square degrees of freedom");
  bounds->add_option("--x", ba.in.x, "Chi-square threshold");

  PredictArgs pa;
  auto* predict = app.add_subcommand("predict", "Limiting relative error from the largest zero");
  predict->add_option("--density", pa.density, "uniform, arcsine, semicircle or jacobi");
  predict->add_option("--spectrum-file", pa.spectrum_file, "Use a spectrum's empirical measure");
  predict->add_option("--alpha", pa.alpha, "Jacobi exponent at b");
  predict->add_option("--beta", pa.beta, "Jacobi exponent at a");
  predict->add_option("--a", pa.a, "Lower end of the support");
  predict->add_option("--b", pa.b, "Upper end of the support");
  predict->add_option("--m", pa.m, "Single iteration count");
  predict->add_option("--m-max", pa.m_max, "Tabulate m = 1..m-max");

  PlotArgs pla;
  auto* plot = app.add_subcommand("plot", "Overlay the mean curves of several run CSVs");
  plot->add_option("--csv", pla.csvs, "Run CSV (repeatable)")->required();
  plot->add_option("--label", pla.labels, "Series label (repeatable)");
  plot->add_option("--out", pla.out, "SVG output");
  plot->add_option("--title", pla.title, "Plot title");

  std::string level = "quick", fault;
  unsigned verify_threads = 0;
  auto* verify = app.add_subcommand("verify", "Run the self-check suite");
  verify->add_option("--level", level, "quick or full");
  verify->add_option("--inject-fault", fault, "Deliberately break a check (legendre-weight)");
  verify->add_option("--threads", verify_threads, "Worker threads for the full level");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*spectrum) return cmd_spectrum(sa);
    if (*run) return cmd_run(ra, *run, command_echo(argc, argv));
    if (*bounds) return cmd_bounds(ba);
    if (*predict) {
      if (pa.density.empty() == pa.spectrum_file.empty())
        throw std::invalid_argument("predict needs exactly one of --density and --spectrum-file");
      return cmd_predict(pa, *predict);
    }
    if (*plot) return cmd_plot(pla);
    if (*verify) return cmd_verify(level, fault, verify_threads);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

#include "lanczos_lab/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "lanczos_lab/bounds.hpp"
#include "lanczos_lab/lanczos.hpp"
#include "lanczos_lab/rng.hpp"

namespace lanczos_lab {

std::string to_string(SpectrumKind k) {
  switch (k) {
    case SpectrumKind::lap: return "lap";
    case SpectrumKind::unif: return "unif";
    case SpectrumKind::semi: return "semi";
    case SpectrumKind::log: return "log";
    case SpectrumKind::legendre_hard: return "legendre-hard";
    case SpectrumKind::jacobi_hard: return "jacobi-hard";
    case SpectrumKind::file: return "file";
  }
  return "?";
}

std::string to_string(TrialPath p) { return p == TrialPath::matrix ? "matrix" : "measure"; }

SpectrumKind parse_spectrum_kind(std::string_view s) {
  if (s == "lap") return SpectrumKind::lap;
  if (s == "unif") return SpectrumKind::unif;
  if (s == "semi") return SpectrumKind::semi;
  if (s == "log") return SpectrumKind::log;
  if (s == "legendre-hard" || s == "legendre_hard") return SpectrumKind::legendre_hard;
  if (s == "jacobi-hard" || s == "jacobi_hard") return SpectrumKind::jacobi_hard;
  if (s == "file") return SpectrumKind::file;
  throw std::invalid_argument("unknown spectrum kind '" + std::string(s) + "'");
}

TrialPath parse_trial_path(std::string_view s) {
  if (s == "matrix") return TrialPath::matrix;
  if (s == "measure") return TrialPath::measure;
  throw std::invalid_argument("unknown path '" + std::string(s) + "' (matrix or measure)");
}

TrialPath resolve_path(const ExperimentConfig& cfg) {
  if (cfg.path) return *cfg.path;
  return cfg.n > 100000 ? TrialPath::measure : TrialPath::matrix;
}

Spectrum make_spectrum(const ExperimentConfig& cfg) {
  switch (cfg.kind) {
    case SpectrumKind::lap: return lap_spectrum(cfg.n);
    case SpectrumKind::unif: return unif_spectrum(cfg.n);
    case SpectrumKind::semi: return semi_spectrum(cfg.n);
    case SpectrumKind::log: return log_spectrum(cfg.n);
    case SpectrumKind::legendre_hard: return legendre_hard_instance(cfg.n, cfg.hard_m);
    case SpectrumKind::jacobi_hard: return jacobi_hard_instance(cfg.n, cfg.hard_m);
    case SpectrumKind::file: {
      std::ifstream in(cfg.spectrum_file);
      if (!in) throw std::runtime_error("cannot open spectrum file '" + cfg.spectrum_file + "'");
      return read_spectrum(in);
    }
  }
  throw std::invalid_argument("unknown spectrum kind");
}

void validate(const ExperimentConfig& cfg, const Spectrum& spec) {
  if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (cfg.m_max < 1) throw std::invalid_argument("m_max must be >= 1");
  if (cfg.m_max > spec.n())
    throw std::invalid_argument("m_max = " + std::to_string(cfg.m_max) + " exceeds n = " +
                                std::to_string(spec.n()));
  if (cfg.eigen_index < 1 || cfg.eigen_index > cfg.m_max)
    throw std::invalid_argument("eigen index must satisfy 1 <= i <= m_max");
  if (!(spec.spread() > 0.0))
    throw std::invalid_argument("relative error is undefined for a constant spectrum");
}

// ---------------------------------------------------------------------------

double quantile_sorted(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) throw std::invalid_argument("quantile of empty sample");
  const double h = (static_cast<double>(sorted.size()) - 1.0) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

BoxStats box_stats(std::vector<double> samples, std::size_t m) {
  if (samples.empty()) throw std::invalid_argument("box statistics of empty sample");
  BoxStats s;
  s.m = m;
  double sum = 0.0;
  for (double v : samples) sum += v;
  s.mean = sum / static_cast<double>(samples.size());
  std::sort(samples.begin(), samples.end());
  s.q1 = quantile_sorted(samples, 0.25);
  s.median = quantile_sorted(samples, 0.5);
  s.q3 = quantile_sorted(samples, 0.75);
  const double iqr = s.q3 - s.q1;
  const double lo_fence = s.q1 - 1.5 * iqr;
  const double hi_fence = s.q3 + 1.5 * iqr;
  s.whisker_low = s.q1;
  s.whisker_high = s.q3;
  for (double v : samples) {
    if (v < lo_fence || v > hi_fence) {
      ++s.outliers;
      continue;
    }
    s.whisker_low = std::min(s.whisker_low, v);
    s.whisker_high = std::max(s.whisker_high, v);
  }
  return s;
}

const BoxStats& AggregateStats::at(std::size_t m) const {
  for (const auto& r : rows)
    if (r.m == m) return r;
  throw std::out_of_range("no statistics for m = " + std::to_string(m));
}

// ---------------------------------------------------------------------------

namespace {

struct TrialOutcome {
  std::vector<double> errors;
  std::size_t clamped = 0;
  double most_negative = 0.0;
};

bool reorth_for(const ExperimentConfig& cfg, TrialPath path) {
  if (cfg.reorthogonalize) return *cfg.reorthogonalize;
  return path == TrialPath::matrix;
}

TrialOutcome trial_outcome(const ExperimentConfig& cfg, const Spectrum& spec, std::size_t t) {
  const TrialPath path = resolve_path(cfg);
  CounterRng rng(cfg.seed, t);
  std::vector<double> z(spec.n());
  for (double& v : z) v = rng.normal();

  std::vector<double> diag;
  std::vector<double> offdiag;
  if (path == TrialPath::matrix) {
    const DiagonalOperator op(spec.expanded());
    LanczosOptions opts;
    opts.reorthogonalize = reorth_for(cfg, path);
    opts.norm_estimate = std::max(std::abs(spec.top()), std::abs(spec.bottom()));
    TridiagonalMatrix tm = lanczos(op, z, cfg.m_max, opts);
    diag = std::move(tm.alpha);
    offdiag = std::move(tm.beta);
  } else {
    std::vector<double> masses(spec.distinct(), 0.0);
    std::size_t idx = 0;
    for (std::size_t j = 0; j < spec.distinct(); ++j)
      for (std::size_t r = 0; r < spec.mults()[j]; ++r, ++idx) masses[j] += z[idx] * z[idx];
    ThreeTermRecurrence rec = stieltjes(spec.values(), masses, static_cast<int>(cfg.m_max),
                                        reorth_for(cfg, path));
    diag = std::move(rec.diag);
    offdiag = std::move(rec.offdiag);
  }

  // A short T means the Krylov space became invariant; the Ritz values of the
  // full T then stay exact for every larger m.
  TrialOutcome out;
  const std::size_t i = cfg.eigen_index;
  out.errors.reserve(cfg.m_max - i + 1);
  for (std::size_t m = i; m <= cfg.m_max; ++m) {
    const std::size_t k = std::min(m, diag.size());
    double ritz;
    if (k < i) {
      ritz = -std::numeric_limits<double>::infinity();
    } else {
      ritz = tridiag_eigenvalue(std::span<const double>(diag.data(), k),
                                std::span<const double>(offdiag.data(), k - 1), i);
    }
    double value;
    if (std::isinf(ritz)) {
      // Fewer Ritz values than i: nothing approximates lambda_i yet.
      value = (spec.eigenvalue(i) - spec.bottom()) / spec.spread();
    } else {
      const RelativeError e = relative_error_detail(spec, ritz, i);
      if (e.raw < 0.0) {
        ++out.clamped;
        out.most_negative = std::min(out.most_negative, e.raw);
      }
      value = e.value;
    }
    out.errors.push_back(value);
  }
  return out;
}

} // namespace

std::vector<double> run_trial(const ExperimentConfig& cfg, const Spectrum& spec, std::size_t t,
                              std::size_t* clamped, double* most_negative) {
  TrialOutcome o = trial_outcome(cfg, spec, t);
  if (clamped) *clamped = o.clamped;
  if (most_negative) *most_negative = o.most_negative;
  return std::move(o.errors);
}

AggregateStats run_experiment(const ExperimentConfig& cfg) {
  return run_experiment(cfg, make_spectrum(cfg));
}

AggregateStats run_experiment(const ExperimentConfig& cfg, const Spectrum& spec) {
  validate(cfg, spec);
  std::vector<TrialOutcome> outcomes(cfg.trials);
  unsigned workers = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, cfg.trials));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t t = next++; t < cfg.trials; t = next++) {
      try {
        outcomes[t] = trial_outcome(cfg, spec, t);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = cfg.trials;
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  AggregateStats stats;
  stats.path = resolve_path(cfg);
  const std::size_t rows = cfg.m_max - cfg.eigen_index + 1;
  std::vector<std::vector<double>> scaled(cfg.trials, std::vector<double>(rows));
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    stats.clamped += outcomes[t].clamped;
    stats.most_negative_raw = std::min(stats.most_negative_raw, outcomes[t].most_negative);
    for (std::size_t r = 0; r < rows; ++r) {
      const double m = static_cast<double>(cfg.eigen_index + r);
      scaled[t][r] = m * m * outcomes[t].errors[r];
    }
  }
  std::vector<double> column(cfg.trials);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t t = 0; t < cfg.trials; ++t) column[t] = scaled[t][r];
    stats.rows.push_back(box_stats(column, cfg.eigen_index + r));
  }
  if (cfg.keep_raw) stats.raw = std::move(scaled);
  return stats;
}

// ---------------------------------------------------------------------------

std::vector<PredictorRow> compare_predictor(const AggregateStats& stats,
                                            const ThreeTermRecurrence& rec, double a, double b) {
  std::vector<PredictorRow> out;
  for (const auto& row : stats.rows) {
    if (row.m > rec.size())
      throw std::invalid_argument("recurrence has " + std::to_string(rec.size()) +
                                  " coefficients, m = " + std::to_string(row.m) + " requested");
    const double m2 = static_cast<double>(row.m * row.m);
    const double pred = asymptotic_predictor(rec, static_cast<int>(row.m), a, b);
    out.push_back({row.m, row.mean / m2, pred, row.mean / m2 / pred});
  }
  return out;
}

std::vector<PredictorRow> compare_predictor(const ExperimentConfig& cfg,
                                            const ThreeTermRecurrence& rec, double a, double b) {
  return compare_predictor(run_experiment(cfg), rec, a, b);
}

LimitingDensity limiting_density(SpectrumKind kind) {
  switch (kind) {
    case SpectrumKind::lap: return {JacobiParams(-0.5, -0.5), 0.0, 4.0};
    case SpectrumKind::unif: return {JacobiParams(0.0, 0.0), 0.0, 1.0};
    case SpectrumKind::semi: return {JacobiParams(0.5, 0.5), -1.0, 1.0};
    default:
      throw std::invalid_argument("no closed-form limiting density for kind " + to_string(kind));
  }
}

AuditReport bound_audit(const AggregateStats& stats, std::size_t n) {
  AuditReport rep;
  for (std::size_t r = 0; r < stats.rows.size(); ++r) {
    const BoxStats& row = stats.rows[r];
    if (row.m < 10) continue;
    ++rep.checked;
    const double m2 = static_cast<double>(row.m * row.m);
    const double mean = row.mean / m2;
    const double bound = main_upper_bound(static_cast<double>(n), static_cast<int>(row.m), 1.0);
    if (mean <= bound) continue;
    BoundViolation v{row.m, mean, bound, {}};
    for (const auto& trial : stats.raw) v.trial_errors.push_back(trial[r] / m2);
    rep.violations.push_back(std::move(v));
  }
  return rep;
}

AuditReport bound_audit(const ExperimentConfig& cfg) {
  if (cfg.n < 100 || cfg.m_max < 10)
    throw std::invalid_argument("bound audit needs n >= 100 and m_max >= 10");
  ExperimentConfig c = cfg;
  c.keep_raw = true;
  const Spectrum spec = make_spectrum(c);
  return bound_audit(run_experiment(c, spec), spec.n());
}

} // namespace lanczos_lab

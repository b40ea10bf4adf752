#pragma once

// Randomized Lanczos trials over a spectrum, aggregated into per-iteration
// statistics of the m^2-scaled relative error.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lanczos_lab/orthopoly.hpp"
#include "lanczos_lab/spectra.hpp"

namespace lanczos_lab {

enum class SpectrumKind { lap, unif, semi, log, legendre_hard, jacobi_hard, file };
enum class TrialPath { matrix, measure };

std::string to_string(SpectrumKind k);
std::string to_string(TrialPath p);
/// Accepts both "legendre-hard" and "legendre_hard" spellings.
SpectrumKind parse_spectrum_kind(std::string_view s);
TrialPath parse_trial_path(std::string_view s);

struct ExperimentConfig {
  SpectrumKind kind = SpectrumKind::lap;
  std::size_t n = 1000;
  std::size_t m_max = 100;
  std::size_t trials = 20;
  std::uint64_t seed = 1;
  std::size_t eigen_index = 1;
  /// Unset: measure path for n > 1e5, matrix path otherwise.
  std::optional<TrialPath> path;
  /// The m parameter of the hard-instance constructions.
  int hard_m = 4;
  std::string spectrum_file;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
  bool keep_raw = false;
  /// Reorthogonalization override. Unset: on for the matrix path, off for the
  /// measure path.
  std::optional<bool> reorthogonalize;
};

TrialPath resolve_path(const ExperimentConfig& cfg);
Spectrum make_spectrum(const ExperimentConfig& cfg);
/// Throws std::invalid_argument describing the first problem found.
void validate(const ExperimentConfig& cfg, const Spectrum& spec);

struct BoxStats {
  std::size_t m = 0;
  double mean = 0.0;
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  double whisker_low = 0.0;
  double whisker_high = 0.0;
  std::size_t outliers = 0;
};

/// Type-7 quantile (linear interpolation between order statistics) of sorted
/// data.
double quantile_sorted(const std::vector<double>& sorted, double q);

/// Quartiles, mean and whiskers: the whiskers reach the most extreme points
/// within [q1 - 1.5 IQR, q3 + 1.5 IQR], everything beyond is an outlier.
BoxStats box_stats(std::vector<double> samples, std::size_t m = 0);

struct AggregateStats {
  std::vector<BoxStats> rows;  // m = eigen_index .. m_max
  /// raw[t][r]: scaled error of trial t at rows[r].m, kept when requested.
  std::vector<std::vector<double>> raw;
  /// Relative errors in [-1e-10, 0) that were clamped to zero.
  std::size_t clamped = 0;
  double most_negative_raw = 0.0;
  TrialPath path = TrialPath::matrix;

  const BoxStats& at(std::size_t m) const;
};

/// Relative error (unscaled) of every m = eigen_index..m_max for one trial.
std::vector<double> run_trial(const ExperimentConfig& cfg, const Spectrum& spec, std::size_t t,
                              std::size_t* clamped = nullptr, double* most_negative = nullptr);

AggregateStats run_experiment(const ExperimentConfig& cfg);
AggregateStats run_experiment(const ExperimentConfig& cfg, const Spectrum& spec);

struct PredictorRow {
  std::size_t m;
  double empirical;  // mean relative error
  double predictor;  // (b - xi(m)) / (b - a)
  double ratio;      // empirical / predictor
};

std::vector<PredictorRow> compare_predictor(const AggregateStats& stats,
                                            const ThreeTermRecurrence& rec, double a, double b);
std::vector<PredictorRow> compare_predictor(const ExperimentConfig& cfg,
                                            const ThreeTermRecurrence& rec, double a, double b);

/// Limiting spectral density of a benchmark family as a Jacobi weight on its
/// support: lap is arcsine on [0,4], unif is uniform on [0,1], semi is the
/// semicircle on [-1,1]. Throws for the other kinds.
struct LimitingDensity {
  JacobiParams weight;
  double a;
  double b;
};
LimitingDensity limiting_density(SpectrumKind kind);

struct BoundViolation {
  std::size_t m;
  double mean_error;
  double bound;
  std::vector<double> trial_errors;  // unscaled, by trial index
};

struct AuditReport {
  std::size_t checked = 0;
  std::vector<BoundViolation> violations;
};

/// Compares the mean relative error at each m in [10, m_max] with
/// main_upper_bound(n, m, 1). Needs stats with raw trial data for the
/// violation records.
AuditReport bound_audit(const AggregateStats& stats, std::size_t n);
AuditReport bound_audit(const ExperimentConfig& cfg);

} // namespace lanczos_lab

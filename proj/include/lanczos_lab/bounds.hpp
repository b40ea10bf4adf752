#pragma once

// Closed-form error bounds, predictors and identities for the Lanczos method.
// Every function is a pure formula. Where a result only holds under stated
// hypotheses, evaluate_bound reports the value anyway and flags each hypothesis.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lanczos_lab/orthopoly.hpp"
#include "lanczos_lab/spectra.hpp"

namespace lanczos_lab {

struct Hypothesis {
  std::string name;
  bool met;
};

struct BoundReport {
  std::string name;
  double value = 0.0;
  std::vector<Hypothesis> hypotheses;
  std::vector<std::pair<std::string, double>> params;
  /// Asymptotic regime the value belongs to, descriptive only.
  std::string regime;

  bool hypotheses_met() const;
  const Hypothesis* find_hypothesis(std::string_view h) const;
};

// Gap-dependent Chebyshev estimate: tan^2 / T_{m-1}(1 + 2 gamma)^2.
double kps_bound(double gamma, double tan_angle_sq, int m);

double kw_expected_bound(double n, int m);
double kw_prob_bound(double n, int m, double eps);
double dcm_pnorm_bound(double n, int m, double p);

/// .068 ln^2(n (m-1)^(8p)) / (m-1)^2
double main_upper_bound(double n, int m, double p);

/// Both lower-bound constants: 1.08/m^2 and .015 ln^2 n / (m^2 (ln ln n)^2),
/// each tagged with its (undecidable) asymptotic regime.
std::vector<BoundReport> main_lower_bounds(double n, int m);

double clustered_bound(int m, double p, double alpha);
double clustered_prob_bound(int m, double alpha);

enum class ClusterVariant { expected, probabilistic };

struct ClusterCheck {
  double threshold;      // on (lambda_1 - lambda_i) / (lambda_1 - lambda_n)
  std::size_t count;     // eigenvalues within the threshold, with multiplicity
  double required;       // n / (m-1)^alpha
  bool size_condition;   // n >= m (m-1)^alpha
  bool met;              // count >= required and size_condition
};

ClusterCheck cluster_hypothesis(const Spectrum& spec, int m, double p, double alpha,
                                ClusterVariant variant = ClusterVariant::expected);

/// (b - xi(m)) / (b - a), xi(m) the largest zero of the degree-m polynomial.
double asymptotic_predictor(const ThreeTermRecurrence& rec, int m, double a, double b);

/// First positive zero of J_alpha, by bisection on its power series over [1,4].
double bessel_first_zero(double alpha);
/// j_{1,alpha}^2 / 4 for alpha in {-1/2, 0, 1/2}.
double bessel_limit(double alpha);

double arbitrary_eig_bound(double n, int m, double p, int i, double delta);
double arbitrary_eig_prob_bound(double n, int m, int i, double delta);
/// 1/2 min_{k=2..i} (lambda_{k-1} - lambda_k) / (lambda_1 - lambda_n); +inf for
/// i = 1. Throws when a repeated eigenvalue makes the gap zero.
double delta_gap(const Spectrum& spec, int i);

/// First: upper bound .068 (kappa+1) ln^2(n (m-1)^(8p)) / (m-1)^2.
/// Second: lower-regime value 1.08 (kappa-1) / m^2.
std::pair<BoundReport, BoundReport> condition_bounds(double kappa_bar, double n, int m, double p);

/// kappa - kappa^(m) through the decomposition
///   (kappa - 1) [ (l1 - r1)/(l1 - ln) + kappa^(m) (rm - ln)/(l1 - ln) ].
/// Throws if it disagrees with l1/ln - r1/rm beyond 1e-10 (relative).
double condition_error_identity(double lam1, double lamn, double ritz1, double ritzm);

/// (x/k e^(1 - x/k))^(k/2)
double chernoff_chisq(double k, double x);

/// Inputs for the bound catalog; unused fields are ignored.
struct BoundInputs {
  double n = 0.0;
  int m = 0;
  double p = 1.0;
  double eps = 0.5;
  double gamma = 1.0;
  double tan_angle_sq = 1.0;
  double alpha = 1.0;
  int i = 1;
  double delta = 1.0;
  double kappa = 1.0;
  double k = 1.0;
  double x = 0.0;
};

/// Evaluates a bound by name (see bound_names()). Throws std::invalid_argument
/// for an unknown name.
BoundReport evaluate_bound(std::string_view name, const BoundInputs& in);
std::vector<std::string> bound_names();

struct UpperBoundComparison {
  double n;
  int m;
  double main_upper;
  double kw_expected;
};

/// Grid points where main_upper_bound(n, m, 1) exceeds kw_expected_bound(n, m).
std::vector<UpperBoundComparison> main_vs_kw_violations(const std::vector<double>& ns,
                                                        const std::vector<int>& ms);

} // namespace lanczos_lab

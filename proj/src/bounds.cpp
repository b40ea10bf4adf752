#include "lanczos_lab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace lanczos_lab {

namespace {

double sq(double x) { return x * x; }

void require_m(int m, int min_m, const char* what) {
  if (m < min_m)
    throw std::invalid_argument(std::string(what) + ": needs m >= " + std::to_string(min_m));
}

} // namespace

bool BoundReport::hypotheses_met() const {
  return std::all_of(hypotheses.begin(), hypotheses.end(), [](const Hypothesis& h) { return h.met; });
}

const Hypothesis* BoundReport::find_hypothesis(std::string_view h) const {
  for (const auto& x : hypotheses)
    if (x.name == h) return &x;
  return nullptr;
}

double kps_bound(double gamma, double tan_angle_sq, int m) {
  if (!(gamma > 0.0)) throw std::invalid_argument("kps_bound: gamma must be positive");
  if (!(tan_angle_sq >= 0.0)) throw std::invalid_argument("kps_bound: tan^2 must be >= 0");
  require_m(m, 2, "kps_bound");
  if (tan_angle_sq == 0.0) return 0.0;
  const double t = chebyshev_t(m - 1, 1.0 + 2.0 * gamma);
  return tan_angle_sq / (t * t);
}

double kw_expected_bound(double n, int m) {
  require_m(m, 2, "kw_expected_bound");
  const double l = std::log(n) + 4.0 * std::log(m - 1.0);
  return 0.103 * l * l / sq(m - 1.0);
}

double kw_prob_bound(double n, int m, double eps) {
  if (!(eps >= 0.0)) throw std::invalid_argument("kw_prob_bound: eps must be >= 0");
  return 1.648 * std::sqrt(n) * std::exp(-std::sqrt(eps) * (2.0 * m - 1.0));
}

double dcm_pnorm_bound(double n, int m, double p) {
  if (!(p > 0.5)) throw std::invalid_argument("dcm_pnorm_bound: needs p > 1/2");
  if (!(n > 1.0)) throw std::invalid_argument("dcm_pnorm_bound: needs n > 1");
  require_m(m, 1, "dcm_pnorm_bound");
  const double log_ratio = std::lgamma(p - 0.5) + std::lgamma(0.5 * n) - std::lgamma(p) -
                           std::lgamma(0.5 * (n - 1.0));
  return std::pow(static_cast<double>(m), -1.0 / p) * std::exp(log_ratio / p);
}

double main_upper_bound(double n, int m, double p) {
  require_m(m, 2, "main_upper_bound");
  const double l = std::log(n) + 8.0 * p * std::log(m - 1.0);
  return 0.068 * l * l / sq(m - 1.0);
}

std::vector<BoundReport> main_lower_bounds(double n, int m) {
  require_m(m, 1, "main_lower_bounds");
  if (!(n > std::numbers::e)) throw std::invalid_argument("main_lower_bounds: needs ln ln n > 0");
  const double ln_n = std::log(n);
  const double lnln_n = std::log(ln_n);
  const std::vector<std::pair<std::string, double>> params{{"n", n}, {"m", m}};

  BoundReport quad;
  quad.name = "main-lower-m2";
  quad.value = 1.08 / sq(m);
  quad.hypotheses = {{"n>=16", n >= 16.0}};
  quad.params = params;
  quad.regime = "m = o(sqrt(n / ln n)) and m = omega(1)";

  BoundReport mixed;
  mixed.name = "main-lower-log";
  mixed.value = 0.015 * ln_n * ln_n / (sq(m) * lnln_n * lnln_n);
  mixed.hypotheses = {{"n>=16", n >= 16.0}};
  mixed.params = params;
  mixed.regime = "m = Theta(ln n)";
  return {quad, mixed};
}

double clustered_bound(int m, double p, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("clustered_bound: alpha must be positive");
  require_m(m, 3, "clustered_bound");
  const double l = std::log(m - 1.0);
  return 0.077 * sq(2.0 * p + alpha / 4.0) * l * l / sq(m - 1.0);
}

double clustered_prob_bound(int m, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("clustered_prob_bound: alpha must be positive");
  require_m(m, 3, "clustered_prob_bound");
  const double l = std::log(m - 1.0);
  return 0.126 * sq(alpha + 2.0) * l * l / sq(m - 1.0);
}

ClusterCheck cluster_hypothesis(const Spectrum& spec, int m, double p, double alpha,
                                ClusterVariant variant) {
  if (!(alpha > 0.0)) throw std::invalid_argument("cluster_hypothesis: alpha must be positive");
  require_m(m, 3, "cluster_hypothesis");
  const double spread = spec.spread();
  if (!(spread > 0.0)) throw std::invalid_argument("cluster_hypothesis: constant spectrum");
  const double l = std::log(m - 1.0);
  ClusterCheck c{};
  c.threshold = variant == ClusterVariant::expected
                    ? sq((2.0 * p + alpha / 4.0) * l / (m - 1.0))
                    : sq((alpha + 2.0) * l / (4.0 * (m - 1.0)));
  for (std::size_t j = 0; j < spec.distinct(); ++j)
    if ((spec.top() - spec.values()[j]) / spread <= c.threshold) c.count += spec.mults()[j];
  const double n = static_cast<double>(spec.n());
  c.required = n / std::pow(m - 1.0, alpha);
  c.size_condition = n >= m * std::pow(m - 1.0, alpha);
  c.met = c.size_condition && static_cast<double>(c.count) >= c.required;
  return c;
}

double asymptotic_predictor(const ThreeTermRecurrence& rec, int m, double a, double b) {
  if (!(a < b)) throw std::invalid_argument("asymptotic_predictor: needs a < b");
  return (b - largest_zero(rec, m)) / (b - a);
}

double bessel_first_zero(double alpha) {
  if (!(alpha > -1.0)) throw std::invalid_argument("bessel_first_zero: needs alpha > -1");
  // J_alpha(x) (x/2)^(-alpha) = sum_k (-1)^k (x^2/4)^k / (k! Gamma(k + alpha + 1)),
  // same sign as J_alpha for x > 0.
  auto series = [alpha](double x) {
    const double z = 0.25 * x * x;
    double term = 1.0 / std::tgamma(alpha + 1.0);
    double sum = term;
    for (int k = 1; k < 80; ++k) {
      term *= -z / (k * (k + alpha));
      sum += term;
    }
    return sum;
  };
  double lo = 1.0;
  double hi = 4.0;
  double flo = series(lo);
  if (flo * series(hi) > 0.0)
    throw std::invalid_argument("bessel_first_zero: no sign change on [1,4]");
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    const double fm = series(mid);
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double bessel_limit(double alpha) {
  if (alpha != -0.5 && alpha != 0.0 && alpha != 0.5)
    throw std::invalid_argument("bessel_limit: alpha must be -1/2, 0 or 1/2");
  const double j = bessel_first_zero(alpha);
  return j * j / 4.0;
}

double arbitrary_eig_bound(double n, int m, double p, int i, double delta) {
  if (i < 1) throw std::invalid_argument("arbitrary_eig_bound: needs i >= 1");
  if (!(delta > 0.0)) throw std::invalid_argument("arbitrary_eig_bound: delta must be positive");
  if (m <= i + 1) throw std::invalid_argument("arbitrary_eig_bound: needs m > i + 1");
  const double gap_term = i == 1 ? 0.0 : -2.0 * (i - 1) * std::log(delta);
  const double l = gap_term + std::log(n) + 8.0 * p * std::log(static_cast<double>(m - i));
  return 0.068 * l * l / sq(m - i);
}

double arbitrary_eig_prob_bound(double n, int m, int i, double delta) {
  if (i < 1) throw std::invalid_argument("arbitrary_eig_prob_bound: needs i >= 1");
  if (!(delta > 0.0))
    throw std::invalid_argument("arbitrary_eig_prob_bound: delta must be positive");
  if (m <= i + 1) throw std::invalid_argument("arbitrary_eig_prob_bound: needs m > i + 1");
  const double gap_term = i == 1 ? 0.0 : -2.0 * (i - 1) / 3.0 * std::log(delta);
  const double l =
      gap_term + std::log(n) + 2.0 / 3.0 * std::log(static_cast<double>(m - i));
  return 0.571 * l * l / sq(m - i);
}

double delta_gap(const Spectrum& spec, int i) {
  if (i < 1 || static_cast<std::size_t>(i) > spec.n())
    throw std::out_of_range("delta_gap: index out of range");
  if (i == 1) return std::numeric_limits<double>::infinity();
  const double spread = spec.spread();
  if (!(spread > 0.0)) throw std::invalid_argument("delta_gap: constant spectrum");
  double min_gap = std::numeric_limits<double>::infinity();
  for (int k = 2; k <= i; ++k)
    min_gap = std::min(min_gap, spec.eigenvalue(k - 1) - spec.eigenvalue(k));
  if (!(min_gap > 0.0))
    throw std::invalid_argument("delta_gap: repeated eigenvalue among the top " +
                                std::to_string(i) + "; gap bounds are undefined");
  return 0.5 * min_gap / spread;
}

std::pair<BoundReport, BoundReport> condition_bounds(double kappa_bar, double n, int m, double p) {
  if (!(kappa_bar >= 1.0)) throw std::invalid_argument("condition_bounds: needs kappa >= 1");
  require_m(m, 2, "condition_bounds");
  const std::vector<std::pair<std::string, double>> params{
      {"kappa", kappa_bar}, {"n", n}, {"m", m}, {"p", p}};
  BoundReport upper;
  upper.name = "cond-upper";
  upper.value = (kappa_bar + 1.0) * main_upper_bound(n, m, p);
  upper.hypotheses = {
      {"n>=100", n >= 100.0}, {"m>=10", m >= 10}, {"p>=1", p >= 1.0}, {"kappa>1", kappa_bar > 1.0}};
  upper.params = params;

  BoundReport lower;
  lower.name = "cond-lower";
  lower.value = 1.08 * (kappa_bar - 1.0) / sq(m);
  lower.hypotheses = {{"kappa>1", kappa_bar > 1.0}};
  lower.params = params;
  lower.regime = "m = o(sqrt(n / ln n)) and m = omega(1)";
  return {upper, lower};
}

double condition_error_identity(double lam1, double lamn, double ritz1, double ritzm) {
  if (!(lamn > 0.0)) throw std::invalid_argument("condition identity: needs lambda_n > 0");
  if (!(ritzm > 0.0)) throw std::invalid_argument("condition identity: kappa^(m) undefined");
  if (!(lam1 > lamn)) throw std::invalid_argument("condition identity: needs lambda_1 > lambda_n");
  const double kappa = lam1 / lamn;
  const double kappa_m = ritz1 / ritzm;
  const double spread = lam1 - lamn;
  const double decomposition =
      (kappa - 1.0) * ((lam1 - ritz1) / spread + kappa_m * (ritzm - lamn) / spread);
  const double direct = kappa - kappa_m;
  if (std::abs(decomposition - direct) > 1e-10 * std::max(1.0, std::abs(kappa)))
    throw std::logic_error("condition identity mismatch");
  return decomposition;
}

double chernoff_chisq(double k, double x) {
  if (!(k >= 1.0)) throw std::invalid_argument("chernoff_chisq: needs k >= 1");
  if (!(x >= 0.0)) throw std::invalid_argument("chernoff_chisq: needs x >= 0");
  if (x == 0.0) return 0.0;
  const double r = x / k;
  return std::exp(0.5 * k * (std::log(r) + 1.0 - r));
}

// ---------------------------------------------------------------------------

std::vector<std::string> bound_names() {
  return {"kps",          "kw-expected",    "kw-prob",       "dcm-pnorm",  "main-upper",
          "main-lower-m2", "main-lower-log", "clustered",     "clustered-prob",
          "arb-eig",      "arb-eig-prob",   "cond-upper",    "cond-lower", "chernoff"};
}

BoundReport evaluate_bound(std::string_view name, const BoundInputs& in) {
  BoundReport r;
  r.name = std::string(name);
  const double n = in.n;
  const int m = in.m;
  if (name == "kps") {
    r.value = kps_bound(in.gamma, in.tan_angle_sq, m);
    r.hypotheses = {{"gamma>0", in.gamma > 0.0}, {"m>=2", m >= 2}};
    r.params = {{"gamma", in.gamma}, {"tan_angle_sq", in.tan_angle_sq}, {"m", m}};
  } else if (name == "kw-expected") {
    r.value = kw_expected_bound(n, m);
    r.hypotheses = {{"n>=8", n >= 8.0}, {"m>=4", m >= 4}};
    r.params = {{"n", n}, {"m", m}};
  } else if (name == "kw-prob") {
    r.value = kw_prob_bound(n, m, in.eps);
    r.hypotheses = {{"0<eps<1", in.eps > 0.0 && in.eps < 1.0}};
    r.params = {{"n", n}, {"m", m}, {"eps", in.eps}};
  } else if (name == "dcm-pnorm") {
    r.value = dcm_pnorm_bound(n, m, in.p);
    r.hypotheses = {{"p>=1", in.p >= 1.0}};
    r.params = {{"n", n}, {"m", m}, {"p", in.p}};
  } else if (name == "main-upper") {
    r.value = main_upper_bound(n, m, in.p);
    r.hypotheses = {{"n>=100", n >= 100.0}, {"m>=10", m >= 10}, {"p>=1", in.p >= 1.0}};
    r.params = {{"n", n}, {"m", m}, {"p", in.p}};
  } else if (name == "main-lower-m2") {
    return main_lower_bounds(n, m)[0];
  } else if (name == "main-lower-log") {
    return main_lower_bounds(n, m)[1];
  } else if (name == "clustered" || name == "clustered-prob") {
    r.value = name == "clustered" ? clustered_bound(m, in.p, in.alpha)
                                  : clustered_prob_bound(m, in.alpha);
    r.hypotheses = {{"m>=10", m >= 10},
                    {"p>=1", in.p >= 1.0},
                    {"alpha>0", in.alpha > 0.0},
                    {"n>=m(m-1)^alpha", n >= m * std::pow(m - 1.0, in.alpha)}};
    r.params = {{"n", n}, {"m", m}, {"p", in.p}, {"alpha", in.alpha}};
  } else if (name == "arb-eig" || name == "arb-eig-prob") {
    r.value = name == "arb-eig" ? arbitrary_eig_bound(n, m, in.p, in.i, in.delta)
                                : arbitrary_eig_prob_bound(n, m, in.i, in.delta);
    r.hypotheses = {{"n>=100", n >= 100.0},
                    {"m>=9+i", m >= 9 + in.i},
                    {"p>=1", in.p >= 1.0},
                    {"delta>0", in.delta > 0.0}};
    r.params = {{"n", n}, {"m", m}, {"p", in.p}, {"i", in.i}, {"delta", in.delta}};
  } else if (name == "cond-upper") {
    return condition_bounds(in.kappa, n, m, in.p).first;
  } else if (name == "cond-lower") {
    return condition_bounds(in.kappa, n, m, in.p).second;
  } else if (name == "chernoff") {
    r.value = chernoff_chisq(in.k, in.x);
    r.hypotheses = {{"k>=1", in.k >= 1.0}, {"x>=0", in.x >= 0.0}};
    r.params = {{"k", in.k}, {"x", in.x}};
    r.regime = in.x <= in.k ? "lower tail P[Z <= x]" : "upper tail P[Z >= x]";
  } else {
    throw std::invalid_argument("unknown bound name '" + std::string(name) + "'");
  }
  return r;
}

std::vector<UpperBoundComparison> main_vs_kw_violations(const std::vector<double>& ns,
                                                        const std::vector<int>& ms) {
  std::vector<UpperBoundComparison> out;
  for (double n : ns)
    for (int m : ms) {
      const double main = main_upper_bound(n, m, 1.0);
      const double kw = kw_expected_bound(n, m);
      if (main > kw) out.push_back({n, m, main, kw});
    }
  return out;
}

} // namespace lanczos_lab

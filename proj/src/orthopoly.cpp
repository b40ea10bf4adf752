#include "lanczos_lab/orthopoly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace lanczos_lab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Interval {
  double lo;
  double hi;
};

Interval gershgorin(std::span<const double> diag, std::span<const double> offdiag) {
  Interval g{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  const std::size_t n = diag.size();
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(offdiag[i - 1]);
    if (i + 1 < n) r += std::abs(offdiag[i]);
    g.lo = std::min(g.lo, diag[i] - r);
    g.hi = std::max(g.hi, diag[i] + r);
  }
  // Widen so both ends are strictly outside the spectrum.
  const double pad = 2.0 * kEps * std::max({std::abs(g.lo), std::abs(g.hi), 1e-300}) + 1e-300;
  g.lo -= pad;
  g.hi += pad;
  return g;
}

double pivot_floor(std::span<const double> offdiag) {
  double bmax = 1.0;
  for (double b : offdiag) bmax = std::max(bmax, b * b);
  return std::numeric_limits<double>::min() * bmax;
}

std::size_t sturm_count_impl(std::span<const double> diag, std::span<const double> offdiag,
                             double x, double pivmin) {
  std::size_t count = 0;
  double d = 1.0;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    d = (diag[i] - x) - (i == 0 ? 0.0 : offdiag[i - 1] * offdiag[i - 1] / d);
    if (std::abs(d) < pivmin) d = -pivmin;
    if (d < 0.0) ++count;
  }
  return count;
}

// Ascending eigenvalue number `j` (0-based) inside [lo, hi].
double bisect_eigenvalue(std::span<const double> diag, std::span<const double> offdiag,
                         std::size_t j, double lo, double hi, double abs_tol) {
  const double pivmin = pivot_floor(offdiag);
  for (int it = 0; it < 256; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= 2.0 * kEps * std::max(std::abs(lo), std::abs(hi)) + abs_tol) break;
    if (mid <= lo || mid >= hi) break;
    if (sturm_count_impl(diag, offdiag, mid, pivmin) > j)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

void check_tridiag_shape(std::span<const double> diag, std::span<const double> offdiag) {
  if (diag.empty()) throw std::invalid_argument("tridiagonal matrix must be non-empty");
  if (offdiag.size() + 1 != diag.size())
    throw std::invalid_argument("tridiagonal matrix needs exactly len(diag) - 1 off-diagonals");
}

// Legendre P_k and P_{k-1} at x.
std::pair<double, double> legendre_pair(int k, double x) {
  double p_prev = 1.0;
  double p = x;
  if (k == 0) return {1.0, 0.0};
  for (int j = 1; j < k; ++j) {
    const double next = ((2.0 * j + 1.0) * x * p - j * p_prev) / (j + 1.0);
    p_prev = p;
    p = next;
  }
  return {p, p_prev};
}

double log_jacobi_mass(const JacobiParams& p) {
  return (p.alpha + p.beta + 1.0) * std::log(2.0) + std::lgamma(p.alpha + 1.0) +
         std::lgamma(p.beta + 1.0) - std::lgamma(p.alpha + p.beta + 2.0);
}

} // namespace

double QuadratureRule::integrate(const std::function<double(double)>& f) const {
  double s = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
  return s;
}

// ---------------------------------------------------------------------------
// Tridiagonal eigenvalues

std::size_t sturm_count(std::span<const double> diag, std::span<const double> offdiag, double x) {
  check_tridiag_shape(diag, offdiag);
  return sturm_count_impl(diag, offdiag, x, pivot_floor(offdiag));
}

double tridiag_eigenvalue(std::span<const double> diag, std::span<const double> offdiag,
                          std::size_t k) {
  check_tridiag_shape(diag, offdiag);
  const std::size_t n = diag.size();
  if (k < 1 || k > n) throw std::out_of_range("eigenvalue index out of range");
  if (n == 1) return diag[0];
  const Interval g = gershgorin(diag, offdiag);
  const double abs_tol = kEps * std::max(std::abs(g.lo), std::abs(g.hi));
  return bisect_eigenvalue(diag, offdiag, n - k, g.lo, g.hi, abs_tol);
}

std::vector<double> tridiag_eigenvalues(std::span<const double> diag,
                                        std::span<const double> offdiag) {
  check_tridiag_shape(diag, offdiag);
  const std::size_t n = diag.size();
  if (n == 1) return {diag[0]};
  const Interval g = gershgorin(diag, offdiag);
  const double abs_tol = kEps * std::max(std::abs(g.lo), std::abs(g.hi));
  std::vector<double> out(n);
  double upper = g.hi;
  for (std::size_t k = 0; k < n; ++k) {
    // Descending: each eigenvalue is bounded above by the previous one.
    out[k] = bisect_eigenvalue(diag, offdiag, n - 1 - k, g.lo, upper, abs_tol);
    upper = std::min(g.hi, out[k] + 4.0 * (abs_tol + kEps * std::abs(out[k])));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Classical polynomials

double chebyshev_t(int k, double x) {
  if (k < 0) throw std::invalid_argument("Chebyshev degree must be non-negative");
  if (std::abs(x) <= 1.0) {
    if (k == 0) return 1.0;
    double t_prev = 1.0;
    double t = x;
    for (int j = 1; j < k; ++j) {
      const double next = 2.0 * x * t - t_prev;
      t_prev = t;
      t = next;
    }
    return t;
  }
  const double r = std::sqrt(x * x - 1.0);
  const double value = 0.5 * (std::pow(x - r, k) + std::pow(x + r, k));
  return value;
}

namespace {

// Large rules: Tricomi's asymptotic initial guesses refined by Newton, O(k^2)
// instead of the O(k^2 log(1/eps)) of bisection.
QuadratureRule gauss_legendre_newton(int k) {
  QuadratureRule rule;
  const auto ku = static_cast<std::size_t>(k);
  rule.nodes.resize(ku);
  rule.weights.resize(ku);
  const double kd = k;
  for (int i = 1; i <= (k + 1) / 2; ++i) {
    const double theta = std::numbers::pi * (4.0 * i - 1.0) / (4.0 * kd + 2.0);
    double x = (1.0 - 1.0 / (8.0 * kd * kd) + 1.0 / (8.0 * kd * kd * kd)) * std::cos(theta);
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      const auto [p, pm1] = legendre_pair(k, x);
      dp = k * (x * p - pm1) / (x * x - 1.0);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) <= 2.0 * kEps) break;
    }
    const auto [p, pm1] = legendre_pair(k, x);
    dp = k * (x * p - pm1) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(i - 1);
    const std::size_t hi = ku - 1 - lo;
    rule.nodes[lo] = x;
    rule.weights[lo] = w;
    rule.nodes[hi] = lo == hi ? 0.0 : -x;
    rule.weights[hi] = w;
  }
  return rule;
}

} // namespace

QuadratureRule gauss_legendre(int k) {
  if (k < 1) throw std::invalid_argument("Gauss-Legendre rule needs k >= 1");
  if (k > 64) return gauss_legendre_newton(k);
  std::vector<double> diag(static_cast<std::size_t>(k), 0.0);
  std::vector<double> off(static_cast<std::size_t>(k - 1));
  for (int j = 1; j < k; ++j) off[j - 1] = j / std::sqrt(4.0 * j * j - 1.0);

  QuadratureRule rule;
  rule.nodes = tridiag_eigenvalues(diag, off);
  rule.weights.resize(rule.nodes.size());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    double x = rule.nodes[i];
    auto [p, pm1] = legendre_pair(k, x);
    double dp = k * (x * p - pm1) / (x * x - 1.0);
    x -= p / dp;  // single Newton polish
    std::tie(p, pm1) = legendre_pair(k, x);
    dp = k * (x * p - pm1) / (x * x - 1.0);
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

QuadratureRule gauss_rule(const ThreeTermRecurrence& rec, int k) {
  if (k < 1 || static_cast<std::size_t>(k) > rec.size())
    throw std::invalid_argument("Gauss rule size exceeds the recurrence length");
  const auto ku = static_cast<std::size_t>(k);
  std::span<const double> diag(rec.diag.data(), ku);
  std::span<const double> off(rec.offdiag.data(), ku - 1);
  QuadratureRule rule;
  rule.nodes = tridiag_eigenvalues(diag, off);
  rule.weights.resize(ku);
  for (std::size_t i = 0; i < ku; ++i) {
    const double x = rule.nodes[i];
    double p_prev = 0.0;
    double p = 1.0;
    double sum = 1.0;
    for (std::size_t j = 0; j + 1 < ku; ++j) {
      const double next = ((x - diag[j]) * p - (j == 0 ? 0.0 : off[j - 1]) * p_prev) / off[j];
      p_prev = p;
      p = next;
      sum += p * p;
    }
    rule.weights[i] = rec.total_mass / sum;
  }
  return rule;
}

double jacobi_eval(int k, const JacobiParams& p, double x) {
  if (k < 0) throw std::invalid_argument("Jacobi degree must be non-negative");
  const double a = p.alpha;
  const double b = p.beta;
  if (k == 0) return 1.0;
  double p_prev = 1.0;
  double cur = (a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0;
  for (int n = 2; n <= k; ++n) {
    const double s = 2.0 * n + a + b;
    const double c0 = 2.0 * n * (n + a + b) * (s - 2.0);
    const double c1 = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b);
    const double c2 = 2.0 * (n + a - 1.0) * (n + b - 1.0) * s;
    const double next = (c1 * cur - c2 * p_prev) / c0;
    p_prev = cur;
    cur = next;
  }
  return cur;
}

double jacobi_norm_sq(int k, const JacobiParams& p) {
  if (k < 0) throw std::invalid_argument("Jacobi degree must be non-negative");
  if (k == 0) return std::exp(log_jacobi_mass(p));
  const double a = p.alpha;
  const double b = p.beta;
  const double log_value = (a + b + 1.0) * std::log(2.0) + std::lgamma(k + a + 1.0) +
                           std::lgamma(k + b + 1.0) - std::log(2.0 * k + a + b + 1.0) -
                           std::lgamma(k + 1.0) - std::lgamma(k + a + b + 1.0);
  return std::exp(log_value);
}

double jacobi_max_abs(int k, const JacobiParams& p) {
  if (k < 0) throw std::invalid_argument("Jacobi degree must be non-negative");
  if (std::max(p.alpha, p.beta) < -0.5)
    throw std::invalid_argument("max |P_k| formula needs max(alpha, beta) >= -1/2");
  auto endpoint = [k](double e) {
    return std::exp(std::lgamma(k + e + 1.0) - std::lgamma(k + 1.0) - std::lgamma(e + 1.0));
  };
  return std::max(endpoint(p.alpha), endpoint(p.beta));
}

double jacobi_deriv(int k, const JacobiParams& p, double x) {
  if (k < 0) throw std::invalid_argument("Jacobi degree must be non-negative");
  if (k == 0) return 0.0;
  return 0.5 * (k + p.alpha + p.beta + 1.0) *
         jacobi_eval(k - 1, JacobiParams(p.alpha + 1.0, p.beta + 1.0), x);
}

ThreeTermRecurrence jacobi_recurrence(const JacobiParams& p, int K) {
  if (K < 1) throw std::invalid_argument("recurrence length must be positive");
  const double a = p.alpha;
  const double b = p.beta;
  ThreeTermRecurrence rec;
  rec.total_mass = std::exp(log_jacobi_mass(p));
  rec.diag.reserve(static_cast<std::size_t>(K));
  rec.diag.push_back((b - a) / (a + b + 2.0));
  for (int n = 1; n < K; ++n) {
    const double s = 2.0 * n + a + b;
    rec.diag.push_back((b * b - a * a) / (s * (s + 2.0)));
  }
  for (int n = 1; n < K; ++n) {
    double b2;
    if (n == 1) {
      b2 = 4.0 * (1.0 + a) * (1.0 + b) / ((a + b + 2.0) * (a + b + 2.0) * (a + b + 3.0));
    } else {
      const double s = 2.0 * n + a + b;
      b2 = 4.0 * n * (n + a) * (n + b) * (n + a + b) / (s * s * (s + 1.0) * (s - 1.0));
    }
    rec.offdiag.push_back(std::sqrt(b2));
  }
  return rec;
}

// ---------------------------------------------------------------------------
// Recurrences from measures

ThreeTermRecurrence stieltjes(std::span<const double> x, std::span<const double> w, int K,
                              bool reorthogonalize) {
  if (x.size() != w.size()) throw std::invalid_argument("locations and masses differ in length");
  if (x.empty()) throw std::invalid_argument("measure has no points");
  if (K < 1) throw std::invalid_argument("recurrence length must be positive");

  double total = 0.0;
  double scale = 0.0;
  std::size_t support = 0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (!(w[j] >= 0.0) || !std::isfinite(w[j]) || !std::isfinite(x[j]))
      throw std::invalid_argument("measure masses must be finite and non-negative");
    if (w[j] > 0.0) {
      total += w[j];
      scale = std::max(scale, std::abs(x[j]));
      ++support;
    }
  }
  if (support == 0) throw std::invalid_argument("all masses are zero");

  const std::size_t n = x.size();
  const std::size_t kmax = std::min(static_cast<std::size_t>(K), support);
  const double breakdown = 1e-12 * scale;

  std::vector<double> omega(n);
  for (std::size_t j = 0; j < n; ++j) omega[j] = w[j] / total;
  std::vector<double> prev(n, 0.0), cur(n, 1.0), next(n);
  std::vector<double> basis;
  if (reorthogonalize) {
    basis.reserve(n * kmax);
    basis.insert(basis.end(), cur.begin(), cur.end());
  }

  ThreeTermRecurrence rec;
  rec.total_mass = total;
  rec.diag.reserve(kmax);
  rec.offdiag.reserve(kmax);
  double b_prev = 0.0;
  for (std::size_t k = 0; k < kmax; ++k) {
    double a = 0.0;
    for (std::size_t j = 0; j < n; ++j) a += omega[j] * x[j] * cur[j] * cur[j];
    rec.diag.push_back(a);
    if (k + 1 == kmax) break;

    for (std::size_t j = 0; j < n; ++j) next[j] = (x[j] - a) * cur[j] - b_prev * prev[j];
    if (reorthogonalize) {
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t i = 0; i <= k; ++i) {
          const double* q = basis.data() + i * n;
          double c = 0.0;
          for (std::size_t j = 0; j < n; ++j) c += omega[j] * next[j] * q[j];
          for (std::size_t j = 0; j < n; ++j) next[j] -= c * q[j];
        }
      }
    }
    double nrm2 = 0.0;
    for (std::size_t j = 0; j < n; ++j) nrm2 += omega[j] * next[j] * next[j];
    const double b = std::sqrt(nrm2);
    if (!(b > breakdown)) break;
    rec.offdiag.push_back(b);
    const double inv = 1.0 / b;
    for (std::size_t j = 0; j < n; ++j) next[j] *= inv;
    std::swap(prev, cur);
    std::swap(cur, next);
    if (reorthogonalize) basis.insert(basis.end(), cur.begin(), cur.end());
    b_prev = b;
  }
  return rec;
}

ThreeTermRecurrence recurrence_from_discrete_measure(std::span<const MeasurePoint> points, int K,
                                                     bool reorthogonalize) {
  if (points.empty()) throw std::invalid_argument("measure has no points");
  std::vector<MeasurePoint> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const MeasurePoint& l, const MeasurePoint& r) { return l.location > r.location; });
  std::vector<double> loc;
  std::vector<double> mass;
  for (const auto& pt : sorted) {
    if (!loc.empty() && loc.back() == pt.location)
      mass.back() += pt.mass;
    else {
      loc.push_back(pt.location);
      mass.push_back(pt.mass);
    }
  }
  return stieltjes(loc, mass, K, reorthogonalize);
}

namespace {

// Graded Gauss-Legendre discretization of sigma on [a,b] with `half` nodes on
// each side of the midpoint. Locations that round onto each other are merged.
void graded_grid(const EndpointDensity& sigma, double a, double b, int half,
                 std::vector<double>& loc, std::vector<double>& mass) {
  const QuadratureRule gl = gauss_legendre(half);
  const double h = 0.5 * (b - a);
  const double width = b - a;
  loc.clear();
  mass.clear();
  auto push = [&](double x, double from_a, double to_b, double jac) {
    const double s = sigma(x, from_a, to_b);
    if (!std::isfinite(s)) throw std::invalid_argument("density is not finite at a grid point");
    if (s < 0.0) throw std::invalid_argument("density is negative at a grid point");
    const double wgt = jac * s;
    if (!loc.empty() && loc.back() == x)
      mass.back() += wgt;
    else {
      loc.push_back(x);
      mass.push_back(wgt);
    }
  };
  const auto nh = static_cast<std::size_t>(half);
  // Left half: s ascending gives x ascending from a towards the midpoint.
  for (std::size_t r = 0; r < nh; ++r) {
    const std::size_t i = nh - 1 - r;
    const double s = 0.5 * (gl.nodes[i] + 1.0);
    const double g = s * s * s * s;
    const double jac = 0.5 * gl.weights[i] * 4.0 * s * s * s * h;
    const double d = h * g;
    push(a + d, d, width - d, jac);
  }
  // Right half: s descending gives x ascending from the midpoint towards b.
  for (std::size_t i = 0; i < nh; ++i) {
    const double s = 0.5 * (gl.nodes[i] + 1.0);
    const double g = s * s * s * s;
    const double jac = 0.5 * gl.weights[i] * 4.0 * s * s * s * h;
    const double d = h * g;
    push(b - d, width - d, d, jac);
  }
}

bool leading_coefficients_agree(const ThreeTermRecurrence& x, const ThreeTermRecurrence& y,
                                double tol) {
  if (x.size() != y.size()) return false;
  for (std::size_t i = 0; i < x.diag.size(); ++i)
    if (std::abs(x.diag[i] - y.diag[i]) > tol) return false;
  for (std::size_t i = 0; i < x.offdiag.size(); ++i)
    if (std::abs(x.offdiag[i] - y.offdiag[i]) > tol) return false;
  return true;
}

} // namespace

ThreeTermRecurrence recurrence_from_density(const EndpointDensity& sigma, double a, double b,
                                            int K, int N) {
  if (!(a < b)) throw std::invalid_argument("density interval needs a < b");
  if (K < 1) throw std::invalid_argument("recurrence length must be positive");
  if (K > N) throw std::invalid_argument("recurrence length K exceeds grid size N");

  constexpr int kMaxDoublings = 8;
  const double tol = 1e-10 * std::max(1.0, 0.5 * (b - a));
  int half = std::max((N + 1) / 2, K);
  std::vector<double> loc;
  std::vector<double> mass;
  graded_grid(sigma, a, b, half, loc, mass);
  ThreeTermRecurrence prev = stieltjes(loc, mass, K, true);
  for (int d = 0; d < kMaxDoublings; ++d) {
    half *= 2;
    graded_grid(sigma, a, b, half, loc, mass);
    ThreeTermRecurrence cur = stieltjes(loc, mass, K, true);
    if (leading_coefficients_agree(prev, cur, tol) &&
        std::abs(prev.total_mass - cur.total_mass) <= 1e-10 * cur.total_mass)
      return cur;
    prev = std::move(cur);
  }
  throw ConvergenceError("recurrence_from_density: coefficients did not stabilize after " +
                         std::to_string(kMaxDoublings) + " grid doublings");
}

ThreeTermRecurrence recurrence_from_density(const Density& sigma, double a, double b, int K,
                                            int N) {
  return recurrence_from_density(
      EndpointDensity([&sigma](double x, double, double) { return sigma(x); }), a, b, K, N);
}

EndpointDensity jacobi_weight(const JacobiParams& p, double a, double b) {
  if (!(a < b)) throw std::invalid_argument("density interval needs a < b");
  const double scale = 2.0 / (b - a);
  return [p, scale](double, double from_a, double to_b) {
    const double u = std::max(to_b, 0.0) * scale;
    const double v = std::max(from_a, 0.0) * scale;
    return (p.alpha == 0.0 ? 1.0 : std::pow(u, p.alpha)) *
           (p.beta == 0.0 ? 1.0 : std::pow(v, p.beta));
  };
}

double largest_zero(const ThreeTermRecurrence& rec, int m) {
  if (m < 1) throw std::invalid_argument("degree must be positive");
  if (static_cast<std::size_t>(m) > rec.size())
    throw std::invalid_argument("degree " + std::to_string(m) +
                                " exceeds the recurrence length " + std::to_string(rec.size()));
  const auto mu = static_cast<std::size_t>(m);
  return tridiag_eigenvalue(std::span<const double>(rec.diag.data(), mu),
                            std::span<const double>(rec.offdiag.data(), mu - 1), 1);
}

} // namespace lanczos_lab

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "lanczos_lab/lanczos.hpp"
#include "lanczos_lab/orthopoly.hpp"
#include "lanczos_lab/rng.hpp"

using namespace lanczos_lab;

namespace {

// P_k^{(a,b)}(x) = sum_s C(k+a, k-s) C(k+b, s) ((x-1)/2)^s ((x+1)/2)^(k-s)
double jacobi_gamma_sum(int k, double a, double b, double x) {
  auto binom = [](double top, int bottom) {
    return std::tgamma(top + 1.0) / (std::tgamma(bottom + 1.0) * std::tgamma(top - bottom + 1.0));
  };
  double sum = 0.0;
  for (int s = 0; s <= k; ++s)
    sum += binom(k + a, k - s) * binom(k + b, s) * std::pow((x - 1) / 2, s) *
           std::pow((x + 1) / 2, k - s);
  return sum;
}

// Recurrence of a discrete measure through the Cholesky factor of its Hankel
// moment matrix, in long double.
ThreeTermRecurrence recurrence_from_moments(const std::vector<double>& x,
                                            const std::vector<double>& w, int K) {
  std::vector<long double> mom(2 * K + 1, 0.0L);
  long double total = 0.0L;
  for (std::size_t j = 0; j < x.size(); ++j) total += w[j];
  for (int r = 0; r <= 2 * K; ++r)
    for (std::size_t j = 0; j < x.size(); ++j) mom[r] += w[j] / total * std::pow((long double)x[j], r);
  const int n = K + 1;
  std::vector<std::vector<long double>> L(n, std::vector<long double>(n, 0.0L));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      long double s = mom[i + j];
      for (int k = 0; k < j; ++k) s -= L[i][k] * L[j][k];
      L[i][j] = i == j ? std::sqrt(s) : s / L[j][j];
    }
  ThreeTermRecurrence rec;
  for (int k = 0; k < K; ++k) {
    const long double prev = k == 0 ? 0.0L : L[k][k - 1] / L[k - 1][k - 1];
    rec.diag.push_back(double(L[k + 1][k] / L[k][k] - prev));
    if (k + 1 < K) rec.offdiag.push_back(double(L[k + 1][k + 1] / L[k][k]));
  }
  return rec;
}

// Roots of det(T - x I) by sign changes of the determinant recurrence on a fine
// grid, refined by bisection.
std::vector<double> charpoly_roots(const std::vector<double>& d, const std::vector<double>& e) {
  auto det = [&](double x) {
    double p_prev = 1.0, p = d[0] - x;
    for (std::size_t k = 1; k < d.size(); ++k) {
      const double next = (d[k] - x) * p - e[k - 1] * e[k - 1] * p_prev;
      p_prev = p;
      p = next;
    }
    return p;
  };
  double lo = 1e300, hi = -1e300;
  for (std::size_t i = 0; i < d.size(); ++i) {
    double r = (i > 0 ? std::abs(e[i - 1]) : 0.0) + (i + 1 < d.size() ? std::abs(e[i]) : 0.0);
    lo = std::min(lo, d[i] - r - 1e-9);
    hi = std::max(hi, d[i] + r + 1e-9);
  }
  std::vector<double> roots;
  const int steps = 200000;
  double x0 = lo, f0 = det(lo);
  for (int s = 1; s <= steps; ++s) {
    const double x1 = lo + (hi - lo) * s / steps;
    const double f1 = det(x1);
    if ((f0 < 0) != (f1 < 0)) {
      double a = x0, b = x1, fa = f0;
      for (int it = 0; it < 200; ++it) {
        const double m = 0.5 * (a + b);
        const double fm = det(m);
        if ((fm < 0) == (fa < 0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      roots.push_back(0.5 * (a + b));
    }
    x0 = x1;
    f0 = f1;
  }
  std::sort(roots.begin(), roots.end(), std::greater<>());
  return roots;
}

const double kExponents[] = {-0.4, 0.0, 0.5, 1.0, 3.0};

} // namespace

TEST_CASE("chebyshev_t values") {
  CHECK(chebyshev_t(3, 2.0) == doctest::Approx(26.0).epsilon(1e-14));
  for (int k = 0; k <= 30; ++k) CHECK(chebyshev_t(k, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(chebyshev_t(9, 5.0 / 3.0) >= 0.5 * std::exp(2.0 * std::sqrt(1.0 - 0.75) * 9));
  for (int k = 0; k <= 20; ++k)
    for (int g = -20; g <= 20; ++g) CHECK(std::abs(chebyshev_t(k, g / 20.0)) <= 1.0 + 1e-14);
}

TEST_CASE("chebyshev_t explicit branch agrees with the recurrence outside [-1,1]") {
  for (double x : {1.5, -1.5, 3.0, -2.25}) {
    double t_prev = 1.0, t = x;
    for (int k = 1; k <= 12; ++k) {
      CHECK(chebyshev_t(k, x) == doctest::Approx(t).epsilon(1e-12));
      const double next = 2 * x * t - t_prev;
      t_prev = t;
      t = next;
    }
  }
}

TEST_CASE("gauss_legendre small rules") {
  const QuadratureRule r1 = gauss_legendre(1);
  REQUIRE(r1.size() == 1);
  CHECK(r1.nodes[0] == doctest::Approx(0.0));
  CHECK(r1.weights[0] == doctest::Approx(2.0));

  const QuadratureRule r2 = gauss_legendre(2);
  CHECK(r2.nodes[0] == doctest::Approx(1 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(r2.nodes[1] == doctest::Approx(-1 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(r2.weights[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r2.weights[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("gauss_legendre k=4 largest node matches Newton on the explicit quartic") {
  auto p4 = [](double x) { return (35 * x * x * x * x - 30 * x * x + 3) / 8; };
  auto dp4 = [](double x) { return (140 * x * x * x - 60 * x) / 8; };
  double x = 0.9;
  for (int i = 0; i < 50; ++i) x -= p4(x) / dp4(x);
  CHECK(gauss_legendre(4).nodes[0] == doctest::Approx(x).epsilon(1e-14));
  CHECK(x == doctest::Approx(0.8611363116).epsilon(1e-10));
}

TEST_CASE("gauss_legendre structure and exactness for k <= 20") {
  for (int k = 1; k <= 20; ++k) {
    const QuadratureRule r = gauss_legendre(k);
    REQUIRE(r.size() == static_cast<std::size_t>(k));
    double wsum = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      CHECK(r.weights[i] > 0.0);
      CHECK(std::abs(r.nodes[i]) < 1.0);
      if (i > 0) CHECK(r.nodes[i] < r.nodes[i - 1]);
      wsum += r.weights[i];
    }
    CHECK(std::abs(wsum - 2.0) <= 2e-12);
    for (int j = 0; j <= 2 * k - 1; ++j) {
      const double exact = j % 2 ? 0.0 : 2.0 / (j + 1);
      const double got = r.integrate([j](double x) { return std::pow(x, j); });
      CHECK(std::abs(got - exact) <= 1e-12 * std::max(1.0, exact));
    }
  }
}

TEST_CASE("gauss_legendre weights follow the derivative formula") {
  for (int k : {3, 7, 12}) {
    const QuadratureRule r = gauss_legendre(k);
    for (std::size_t i = 0; i < r.size(); ++i) {
      const double x = r.nodes[i];
      // P_k' via the Gamma-sum derivative identity with alpha = beta = 0.
      const double dp = 0.5 * (k + 1) * jacobi_gamma_sum(k - 1, 1, 1, x);
      CHECK(r.weights[i] == doctest::Approx(2 / ((1 - x * x) * dp * dp)).epsilon(1e-11));
    }
  }
}

TEST_CASE("jacobi_eval endpoint value and Legendre special case") {
  for (double a : kExponents)
    for (double b : kExponents)
      for (int k = 0; k <= 12; ++k) {
        const double expect = std::tgamma(k + a + 1) / (std::tgamma(k + 1.0) * std::tgamma(a + 1));
        CHECK(jacobi_eval(k, JacobiParams(a, b), 1.0) == doctest::Approx(expect).epsilon(1e-12));
      }
  CHECK(jacobi_eval(2, JacobiParams(0, 0), 0.0) == doctest::Approx(-0.5).epsilon(1e-15));
}

TEST_CASE("jacobi_eval matches the explicit Gamma sum for k <= 10") {
  CHECK(jacobi_eval(3, JacobiParams(1, 0), 0.5) ==
        doctest::Approx(jacobi_gamma_sum(3, 1, 0, 0.5)).epsilon(1e-13));
  for (double a : kExponents)
    for (double b : kExponents)
      for (int k = 0; k <= 10; ++k)
        for (double x : {-0.95, -0.5, -0.1, 0.0, 0.3, 0.77, 0.99}) {
          const double ref = jacobi_gamma_sum(k, a, b, x);
          CHECK(std::abs(jacobi_eval(k, JacobiParams(a, b), x) - ref) <=
                1e-11 * std::max(1.0, std::abs(ref)));
        }
}

TEST_CASE("JacobiParams rejects non-integrable exponents") {
  CHECK_THROWS_AS(JacobiParams(-1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(JacobiParams(0.0, -1.5), std::invalid_argument);
}

TEST_CASE("jacobi_norm_sq closed forms") {
  CHECK(jacobi_norm_sq(0, JacobiParams(0, 0)) == doctest::Approx(2.0).epsilon(1e-15));
  for (int k = 0; k <= 30; ++k)
    CHECK(jacobi_norm_sq(k, JacobiParams(0, 0)) == doctest::Approx(2.0 / (2 * k + 1)).epsilon(1e-13));
}

TEST_CASE("jacobi norm consistency against a Gauss rule of the Jacobi weight") {
  for (double a : kExponents)
    for (double b : kExponents) {
      const JacobiParams p(a, b);
      const ThreeTermRecurrence rec =
          recurrence_from_density(jacobi_weight(p, -1, 1), -1.0, 1.0, 17);
      for (int k = 0; k <= 15; ++k) {
        const double got = gauss_rule(rec, k + 2).integrate([&](double x) {
          const double v = jacobi_eval(k, p, x);
          return v * v;
        });
        CHECK(std::abs(got - jacobi_norm_sq(k, p)) <= 1e-10 * jacobi_norm_sq(k, p));
      }
    }
}

TEST_CASE("jacobi_deriv identity") {
  for (double x : {-0.9, -0.2, 0.0, 0.6})
    CHECK(jacobi_deriv(1, JacobiParams(0, 0), x) == doctest::Approx(1.0).epsilon(1e-15));

  const double h = 1e-5;
  for (double a : kExponents)
    for (double b : kExponents)
      for (int k = 0; k <= 7; ++k)
        for (int g = -9; g <= 9; ++g) {
          const JacobiParams p(a, b);
          const double x = g / 10.0;
          const double fd = (jacobi_eval(k, p, x + h) - jacobi_eval(k, p, x - h)) / (2 * h);
          CHECK(std::abs(jacobi_deriv(k, p, x) - fd) <= 1e-6);
        }
}

TEST_CASE("jacobi_deriv at higher degree against a fourth-order difference") {
  const double h = 2e-4;
  for (double a : kExponents)
    for (double b : kExponents)
      for (int k = 8; k <= 15; ++k)
        for (int g = -9; g <= 9; ++g) {
          const JacobiParams p(a, b);
          const double x = g / 10.0;
          auto f = [&](double t) { return jacobi_eval(k, p, t); };
          const double fd = (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h);
          const double d = jacobi_deriv(k, p, x);
          CHECK(std::abs(d - fd) <= 1e-6 * std::max(1.0, std::abs(d)));
        }
}

TEST_CASE("jacobi_max_abs equals the sampled maximum") {
  for (double a : {-0.5, 0.0, 0.5, 1.0, 3.0})
    for (double b : {-0.4, 0.0, 0.5, 2.0})
      for (int k = 0; k <= 10; ++k) {
        const JacobiParams p(a, b);
        double mx = 0.0;
        for (int g = 0; g <= 4000; ++g) mx = std::max(mx, std::abs(jacobi_eval(k, p, -1 + g / 2000.0)));
        CHECK(jacobi_max_abs(k, p) == doctest::Approx(mx).epsilon(1e-9));
      }
  CHECK_THROWS_AS(jacobi_max_abs(3, JacobiParams(-0.6, -0.7)), std::invalid_argument);
}

TEST_CASE("closed-form Jacobi recurrence agrees with the discretized density") {
  for (double a : kExponents)
    for (double b : kExponents) {
      const JacobiParams p(a, b);
      const ThreeTermRecurrence exact = jacobi_recurrence(p, 20);
      const ThreeTermRecurrence num = recurrence_from_density(jacobi_weight(p, -1, 1), -1, 1, 20);
      REQUIRE(num.size() == 20);
      for (int k = 0; k < 20; ++k) CHECK(std::abs(num.diag[k] - exact.diag[k]) <= 1e-10);
      for (int k = 0; k < 19; ++k) CHECK(std::abs(num.offdiag[k] - exact.offdiag[k]) <= 1e-10);
      CHECK(num.total_mass == doctest::Approx(exact.total_mass).epsilon(1e-10));
    }
}

TEST_CASE("recurrence_from_discrete_measure examples") {
  const MeasurePoint one[] = {{0.3, 2.0}};
  const ThreeTermRecurrence r1 = recurrence_from_discrete_measure(one, 5);
  CHECK(r1.diag == std::vector<double>{0.3});
  CHECK(r1.offdiag.empty());

  const MeasurePoint two[] = {{1, 1}, {0, 1}};
  const ThreeTermRecurrence r2 = recurrence_from_discrete_measure(two, 2);
  const ThreeTermRecurrence ref = recurrence_from_moments({1, 0}, {1, 1}, 2);
  CHECK(r2.diag[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(r2.offdiag[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(r2.diag[0] == doctest::Approx(ref.diag[0]).epsilon(1e-14));
  CHECK(r2.offdiag[0] == doctest::Approx(ref.offdiag[0]).epsilon(1e-14));
  CHECK(r2.total_mass == doctest::Approx(2.0));
}

TEST_CASE("uniform masses on {1, 0.5, 0} reproduce the m=2 Lanczos Ritz values") {
  const MeasurePoint pts[] = {{1, 1.0 / 3}, {0.5, 1.0 / 3}, {0, 1.0 / 3}};
  const ThreeTermRecurrence rec = recurrence_from_discrete_measure(pts, 2);
  const std::vector<double> jac = tridiag_eigenvalues(rec.diag, rec.offdiag);
  const std::vector<double> b(3, 1 / std::sqrt(3.0));
  const RitzReport lz = ritz_values(lanczos(DiagonalOperator({1, 0.5, 0}), b, 2));
  REQUIRE(lz.ritz.size() == 2);
  CHECK(jac[0] == doctest::Approx(lz.ritz[0]).epsilon(1e-13));
  CHECK(jac[1] == doctest::Approx(lz.ritz[1]).epsilon(1e-13));
}

TEST_CASE("discrete recurrences match the moment oracle") {
  for (std::uint64_t t = 0; t < 20; ++t) {
    CounterRng rng(5, t);
    const int n = 6 + static_cast<int>(rng.uniform() * 6);
    std::vector<double> x(n), w(n);
    std::vector<MeasurePoint> pts;
    for (int j = 0; j < n; ++j) {
      x[j] = 2 * rng.uniform() - 1;
      w[j] = 0.1 + rng.uniform();
      pts.push_back({x[j], w[j]});
    }
    const int K = 4;
    const ThreeTermRecurrence got = recurrence_from_discrete_measure(pts, K);
    const ThreeTermRecurrence ref = recurrence_from_moments(x, w, K);
    for (int k = 0; k < K; ++k) CHECK(got.diag[k] == doctest::Approx(ref.diag[k]).epsilon(1e-8));
    for (int k = 0; k < K - 1; ++k)
      CHECK(got.offdiag[k] == doctest::Approx(ref.offdiag[k]).epsilon(1e-8));
  }
}

TEST_CASE("discrete measures: truncation, merging and errors") {
  const MeasurePoint pts[] = {{1, 1}, {0.5, 1}, {0.5, 2}, {0, 1}};
  const ThreeTermRecurrence rec = recurrence_from_discrete_measure(pts, 10);
  CHECK(rec.size() == 3);
  CHECK(rec.offdiag.size() == 2);
  for (double b : rec.offdiag) CHECK(b > 0.0);
  CHECK(rec.total_mass == doctest::Approx(5.0));

  CHECK_THROWS_AS(recurrence_from_discrete_measure(std::span<const MeasurePoint>(), 2),
                  std::invalid_argument);
  const MeasurePoint zeros[] = {{1, 0}, {0, 0}};
  CHECK_THROWS_AS(recurrence_from_discrete_measure(zeros, 2), std::invalid_argument);
  const MeasurePoint neg[] = {{1, -1}, {0, 2}};
  CHECK_THROWS_AS(recurrence_from_discrete_measure(neg, 2), std::invalid_argument);
}

TEST_CASE("recurrence_from_density: constant density gives the Legendre recurrence") {
  const ThreeTermRecurrence rec = recurrence_from_density([](double) { return 1.0; }, -1, 1, 12);
  REQUIRE(rec.size() == 12);
  for (double a : rec.diag) CHECK(std::abs(a) <= 1e-12);
  for (int k = 1; k < 12; ++k)
    CHECK(rec.offdiag[k - 1] == doctest::Approx(k / std::sqrt(4.0 * k * k - 1)).epsilon(1e-11));
  CHECK(rec.total_mass == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("recurrence_from_density: shifted Legendre zeros on [0,1]") {
  const ThreeTermRecurrence rec = recurrence_from_density([](double) { return 1.0; }, 0, 1, 2);
  const std::vector<double> ev = tridiag_eigenvalues(rec.diag, rec.offdiag);
  CHECK(ev[0] == doctest::Approx((1 + 1 / std::sqrt(3.0)) / 2).epsilon(1e-12));
  CHECK(ev[1] == doctest::Approx((1 - 1 / std::sqrt(3.0)) / 2).epsilon(1e-12));
}

TEST_CASE("recurrence_from_density: semicircle gives the second-kind Chebyshev recurrence") {
  const ThreeTermRecurrence rec = recurrence_from_density(
      [](double x) { return 2 / std::numbers::pi * std::sqrt(std::max(0.0, 1 - x * x)); }, -1, 1, 10);
  for (double a : rec.diag) CHECK(std::abs(a) <= 1e-9);
  for (double b : rec.offdiag) CHECK(b == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("recurrence_from_density errors") {
  CHECK_THROWS_AS(recurrence_from_density([](double x) { return x; }, -1, 1, 3),
                  std::invalid_argument);
  CHECK_THROWS_AS(recurrence_from_density([](double) { return 1.0; }, 1, 1, 3),
                  std::invalid_argument);
  CHECK_THROWS_AS(recurrence_from_density([](double) { return 1.0; }, 0, 1, 10, 8),
                  std::invalid_argument);
  // A jump in the interior keeps the Gauss grid from ever settling to 1e-10.
  CHECK_THROWS_AS(recurrence_from_density([](double x) { return x < 0.3 ? 0.0 : 1.0; }, 0, 1, 6),
                  ConvergenceError);
}

TEST_CASE("largest_zero closed forms") {
  const ThreeTermRecurrence leg = jacobi_recurrence(JacobiParams(0, 0), 5);
  CHECK(largest_zero(leg, 3) == doctest::Approx(std::sqrt(0.6)).epsilon(1e-13));
  const ThreeTermRecurrence shifted = recurrence_from_density([](double) { return 1.0; }, 0, 1, 3);
  CHECK(largest_zero(shifted, 2) == doctest::Approx(0.7886751346).epsilon(1e-10));
  CHECK_THROWS_AS(largest_zero(leg, 6), std::invalid_argument);
}

TEST_CASE("largest zero respects the Jacobi bound when alpha >= beta > -11/12") {
  for (int s = 0; s <= 200; ++s) {
    const double alpha = 0.1 * s;
    const ThreeTermRecurrence rec = jacobi_recurrence(JacobiParams(alpha, 0.0), 50);
    for (int m = 2; m <= 50; ++m) {
      const double r = (alpha + 1.5) / (m + alpha + 0.5);
      CHECK(largest_zero(rec, m) <= std::sqrt(1 - r * r));
    }
  }
  for (double beta : {-0.9, -0.5, 0.25, 2.0})
    for (double alpha : {beta, beta + 0.3, beta + 4.0}) {
      const ThreeTermRecurrence rec = jacobi_recurrence(JacobiParams(alpha, beta), 50);
      for (int m = 2; m <= 50; ++m) {
        const double r = (alpha + 1.5) / (m + alpha + 0.5);
        CHECK(largest_zero(rec, m) <= std::sqrt(1 - r * r) * (1 + 1e-13));
      }
    }
}

TEST_CASE("the Jacobi bound genuinely needs alpha >= beta") {
  // (alpha, beta) = (-0.9, 0) lies outside the hypothesis and breaks the bound.
  const ThreeTermRecurrence rec = jacobi_recurrence(JacobiParams(-0.9, 0.0), 3);
  const double r = (-0.9 + 1.5) / (2 - 0.9 + 0.5);
  CHECK(largest_zero(rec, 2) > std::sqrt(1 - r * r));
}

TEST_CASE("largest zeros interlace") {
  const ThreeTermRecurrence recs[] = {
      jacobi_recurrence(JacobiParams(0.5, -0.3), 30),
      recurrence_from_density([](double x) { return std::exp(x); }, 0, 2, 30),
  };
  for (const auto& rec : recs)
    for (int m = 1; m < 30; ++m) CHECK(largest_zero(rec, m) < largest_zero(rec, m + 1));
}

TEST_CASE("tridiag_eigenvalues examples") {
  const std::vector<double> ev = tridiag_eigenvalues(std::vector<double>{2, 2, 2},
                                                     std::vector<double>{-1, -1});
  CHECK(ev[0] == doctest::Approx(2 + std::sqrt(2.0)).epsilon(1e-14));
  CHECK(ev[1] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(ev[2] == doctest::Approx(2 - std::sqrt(2.0)).epsilon(1e-14));
  CHECK(tridiag_eigenvalues(std::vector<double>{4.5}, std::vector<double>{}) ==
        std::vector<double>{4.5});
  CHECK_THROWS_AS(tridiag_eigenvalues(std::vector<double>{1, 2}, std::vector<double>{}),
                  std::invalid_argument);
}

TEST_CASE("tridiag_eigenvalues match characteristic-polynomial roots") {
  for (std::uint64_t t = 0; t < 10; ++t) {
    CounterRng rng(99, t);
    std::vector<double> d(8), e(7);
    for (double& v : d) v = 4 * rng.uniform() - 2;
    for (double& v : e) v = 0.2 + rng.uniform();
    const std::vector<double> ev = tridiag_eigenvalues(d, e);
    const std::vector<double> ref = charpoly_roots(d, e);
    REQUIRE(ref.size() == 8);
    for (int k = 0; k < 8; ++k) CHECK(std::abs(ev[k] - ref[k]) <= 1e-10);
    for (int k = 0; k < 8; ++k)
      CHECK(tridiag_eigenvalue(d, e, k + 1) == doctest::Approx(ev[k]).epsilon(1e-13));
  }
}

TEST_CASE("tridiag_eigenvalues splits on zero off-diagonals") {
  const std::vector<double> ev =
      tridiag_eigenvalues(std::vector<double>{1, 5, 3, 3}, std::vector<double>{0, 0, 1});
  CHECK(ev[0] == doctest::Approx(5));
  CHECK(ev[1] == doctest::Approx(4));
  CHECK(ev[2] == doctest::Approx(2));
  CHECK(ev[3] == doctest::Approx(1));
  CHECK(sturm_count(std::vector<double>{1, 5, 3, 3}, std::vector<double>{0, 0, 1}, 3.5) == 2);
}

TEST_CASE("large gauss_legendre rules agree with the Jacobi-matrix eigenvalues") {
  for (int k : {65, 100, 257}) {
    std::vector<double> diag(k, 0.0), off(k - 1);
    for (int j = 1; j < k; ++j) off[j - 1] = j / std::sqrt(4.0 * j * j - 1.0);
    const std::vector<double> ev = tridiag_eigenvalues(diag, off);
    const QuadratureRule r = gauss_legendre(k);
    double wsum = 0.0;
    for (int i = 0; i < k; ++i) {
      CHECK(std::abs(r.nodes[i] - ev[i]) <= 1e-14);
      if (i > 0) CHECK(r.nodes[i] < r.nodes[i - 1]);
      wsum += r.weights[i];
    }
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-13));
    for (int j : {2, 10, 40, 2 * k - 2}) {
      const double got = r.integrate([j](double x) { return std::pow(x, j); });
      CHECK(got == doctest::Approx(2.0 / (j + 1)).epsilon(1e-12));
    }
  }
}

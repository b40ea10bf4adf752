#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "lanczos_lab/lanczos.hpp"
#include "lanczos_lab/orthopoly.hpp"
#include "lanczos_lab/rng.hpp"
#include "lanczos_lab/spectra.hpp"

using namespace lanczos_lab;

namespace {

void check_well_formed(const Spectrum& s, std::size_t n) {
  CHECK(s.n() == n);
  CHECK(std::accumulate(s.mults().begin(), s.mults().end(), std::size_t{0}) == n);
  for (std::size_t j = 0; j < s.distinct(); ++j) {
    CHECK(s.mults()[j] >= 1);
    if (j > 0) CHECK(s.values()[j] < s.values()[j - 1]);
  }
}

} // namespace

TEST_CASE("Spectrum validation") {
  CHECK_THROWS_AS(Spectrum({}, {}), std::invalid_argument);
  CHECK_THROWS_AS(Spectrum({1, 2}, {1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(Spectrum({2, 1}, {1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(Spectrum({2, 1}, {1}), std::invalid_argument);
  CHECK_THROWS_AS(Spectrum({NAN}, {1}), std::invalid_argument);
  const Spectrum s = Spectrum::from_values({0.5, 1, 0.5, 0});
  CHECK(s.values() == std::vector<double>{1, 0.5, 0});
  CHECK(s.mults() == std::vector<std::size_t>{1, 2, 1});
  CHECK(s.eigenvalue(1) == 1);
  CHECK(s.eigenvalue(3) == 0.5);
  CHECK(s.eigenvalue(4) == 0);
  CHECK_THROWS_AS(s.eigenvalue(5), std::out_of_range);
  CHECK(s.expanded() == std::vector<double>{1, 0.5, 0.5, 0});
}

TEST_CASE("lap_spectrum closed forms") {
  const Spectrum s3 = lap_spectrum(3);
  CHECK(s3.values()[0] == doctest::Approx(2 + std::sqrt(2.0)).epsilon(1e-15));
  CHECK(s3.values()[1] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(s3.values()[2] == doctest::Approx(2 - std::sqrt(2.0)).epsilon(1e-15));
  CHECK(lap_spectrum(1).values()[0] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(lap_spectrum(5).top() == doctest::Approx(2 + 2 * std::cos(std::numbers::pi / 6)).epsilon(1e-15));
  CHECK(lap_spectrum(5).top() == doctest::Approx(3.7320508).epsilon(1e-8));
  CHECK_THROWS_AS(lap_spectrum(0), std::invalid_argument);
}

TEST_CASE("unif, semi and log spectra") {
  CHECK(unif_spectrum(3).values() == std::vector<double>{1, 0.5, 0});
  const Spectrum s2 = semi_spectrum(2);
  CHECK(s2.values() == std::vector<double>{1, -1});
  CHECK_THROWS_AS(unif_spectrum(1), std::invalid_argument);
  CHECK_THROWS_AS(log_spectrum(15), std::invalid_argument);

  for (std::size_t n : {16u, 100u, 1000u, 12345u}) {
    const Spectrum lg = log_spectrum(n);
    check_well_formed(lg, n);
    const double ln_n = std::log(static_cast<double>(n));
    CHECK(lg.top() == 1 - 1 / ln_n);
    CHECK(lg.bottom() == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(lg.bottom() >= 0.0);
    // Largest value from the defining formula at i = n.
    CHECK(lg.top() == doctest::Approx(1 - std::pow(1.0 / n, std::log(ln_n) / ln_n)).epsilon(1e-14));
  }
}

TEST_CASE("semi_spectrum inverts the semicircle CDF and is symmetric") {
  for (std::size_t n : {2u, 3u, 10u, 1001u}) {
    const Spectrum s = semi_spectrum(n);
    check_well_formed(s, n);
    for (std::size_t i = 1; i <= n; ++i) {
      const double x = s.eigenvalue(i);
      const double cdf = 0.5 + (x * std::sqrt(1 - x * x) + std::asin(x)) / std::numbers::pi;
      CHECK(cdf == doctest::Approx(double(n - i) / double(n - 1)).epsilon(1e-12));
      CHECK(std::abs(x + s.eigenvalue(n + 1 - i)) <= 1e-12);
    }
  }
}

TEST_CASE("legendre_hard_instance multiplicities") {
  const Spectrum a = legendre_hard_instance(100, 2);
  CHECK(a.distinct() == 4);
  CHECK(a.mults() == std::vector<std::size_t>{1, 33, 33, 33});
  const QuadratureRule r4 = gauss_legendre(4);
  CHECK(a.values() == r4.nodes);
  CHECK(a.values()[0] == doctest::Approx(0.8611363116).epsilon(1e-10));
  CHECK(a.values()[1] == doctest::Approx(0.3399810436).epsilon(1e-9));

  const Spectrum b = legendre_hard_instance(101, 2);
  CHECK(b.mults() == std::vector<std::size_t>{1, 33, 33, 34});
  CHECK(b.values() == r4.nodes);

  for (std::size_t n : {4u, 37u, 1000u, 10000u})
    for (int m : {2, 3, 8})
      if (n >= std::size_t(2 * m)) {
        const Spectrum s = legendre_hard_instance(n, m);
        check_well_formed(s, n);
        CHECK(s.values() == gauss_legendre(2 * m).nodes);
        CHECK(s.mults()[0] == 1);
      }
  CHECK_THROWS_AS(legendre_hard_instance(7, 4), std::invalid_argument);
  CHECK_THROWS_AS(legendre_hard_instance(10, 1), std::invalid_argument);
}

TEST_CASE("jacobi_hard_instance parameters and construction") {
  const double ln_n = std::log(1e5);
  const int ell = static_cast<int>(std::floor(0.2495 * ln_n / std::log(ln_n)));
  CHECK(ell == 1);
  const auto k = static_cast<std::size_t>(std::floor(std::pow(4.0, 4.004)));
  CHECK(k == 257);
  const JacobiHardParameters p = jacobi_hard_parameters(100000, 4);
  CHECK(p.ell == ell);
  CHECK(p.k == k);

  const Spectrum s = jacobi_hard_instance(100000, 4);
  check_well_formed(s, 100000);
  CHECK(s.distinct() == k);
  CHECK(s.top() == 1.0);
  // ell = 1 makes the map affine: f(x) = 2x - 1.
  for (std::size_t j = 1; j <= k; ++j)
    CHECK(s.values()[k - j] == doctest::Approx(2.0 * j / k - 1).epsilon(1e-14));
  const std::size_t base = 100000 / k;
  for (std::size_t j = 0; j < k; ++j) CHECK((s.mults()[j] == base || s.mults()[j] == base + 1));
  CHECK(s.mults().back() == base + 1);
  CHECK(s.mults().front() == base);

  CHECK_THROWS_WITH_AS(jacobi_hard_instance(1000, 10), doctest::Contains("ell"),
                       std::invalid_argument);
}

TEST_CASE("Laplacian operators") {
  const LaplacianOperator lap(3);
  const std::vector<double> e2{0, 1, 0};
  std::vector<double> y(3);
  lap.apply(e2, y);
  CHECK(y == std::vector<double>{-1, 2, -1});

  CounterRng rng(3, 0);
  for (std::size_t n : {1u, 2u, 17u, 500u}) {
    const LaplacianOperator a(n);
    const LaplacianInverseOperator inv(n);
    std::vector<double> v(n), av(n), back(n);
    for (double& x : v) x = rng.normal();
    a.apply(v, av);
    inv.apply(av, back);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(back[i] - v[i]) <= 1e-12 * n);
  }
  CHECK_THROWS_AS(LaplacianOperator(0), std::invalid_argument);
}

TEST_CASE("inverse Laplacian: 20 Lanczos steps find the reciprocal of the smallest eigenvalue") {
  const LaplacianInverseOperator inv = laplacian_inverse_operator(100);
  std::vector<double> b(100);
  CounterRng rng(11, 0);
  for (double& x : b) x = rng.normal();
  const RitzReport r = ritz_for_sparse(inv, b, 20);
  const double expect = 1 / (2 + 2 * std::cos(100 * std::numbers::pi / 101));
  CHECK(expect == doctest::Approx(1 / lap_spectrum(100).bottom()).epsilon(1e-12));
  CHECK(r.ritz[0] == doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("spectrum text format round-trips") {
  const Spectrum s = legendre_hard_instance(101, 2);
  std::ostringstream out;
  write_spectrum(out, s);
  std::istringstream in(out.str());
  const Spectrum back = read_spectrum(in);
  CHECK(back.values() == s.values());
  CHECK(back.mults() == s.mults());

  std::ostringstream u;
  write_spectrum(u, unif_spectrum(3));
  CHECK(u.str() == "1 1\n0.5 1\n0 1\n");

  std::istringstream bad("1 1\nfoo\n");
  CHECK_THROWS_AS(read_spectrum(bad), std::invalid_argument);
  std::istringstream unsorted("0 1\n1 1\n");
  CHECK_THROWS_AS(read_spectrum(unsorted), std::invalid_argument);
}

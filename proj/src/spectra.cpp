#include "lanczos_lab/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "lanczos_lab/format.hpp"
#include "lanczos_lab/orthopoly.hpp"

namespace lanczos_lab {

Spectrum::Spectrum(std::vector<double> values, std::vector<std::size_t> mults)
    : values_(std::move(values)), mults_(std::move(mults)) {
  if (values_.empty()) throw std::invalid_argument("spectrum must be non-empty");
  if (values_.size() != mults_.size())
    throw std::invalid_argument("spectrum values and multiplicities differ in length");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) throw std::invalid_argument("spectrum values must be finite");
    if (mults_[i] == 0) throw std::invalid_argument("multiplicities must be positive");
    if (i > 0 && !(values_[i] < values_[i - 1]))
      throw std::invalid_argument("spectrum values must be strictly descending");
    n_ += mults_[i];
  }
}

Spectrum Spectrum::from_values(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("spectrum must be non-empty");
  std::sort(values.begin(), values.end(), std::greater<>());
  std::vector<double> distinct;
  std::vector<std::size_t> mults;
  for (double v : values) {
    if (!distinct.empty() && distinct.back() == v)
      ++mults.back();
    else {
      distinct.push_back(v);
      mults.push_back(1);
    }
  }
  return Spectrum(std::move(distinct), std::move(mults));
}

double Spectrum::eigenvalue(std::size_t i) const {
  if (i < 1 || i > n_) throw std::out_of_range("eigenvalue index out of range");
  std::size_t seen = 0;
  for (std::size_t j = 0; j < values_.size(); ++j) {
    seen += mults_[j];
    if (i <= seen) return values_[j];
  }
  return values_.back();
}

std::vector<double> Spectrum::expanded() const {
  std::vector<double> out;
  out.reserve(n_);
  for (std::size_t j = 0; j < values_.size(); ++j) out.insert(out.end(), mults_[j], values_[j]);
  return out;
}

namespace {

Spectrum simple(std::vector<double> values) {
  std::vector<std::size_t> mults(values.size(), 1);
  return Spectrum(std::move(values), std::move(mults));
}

double semicircle_cdf(double x) {
  return 0.5 + (x * std::sqrt(1.0 - x * x) + std::asin(x)) / std::numbers::pi;
}

double semicircle_quantile(double target) {
  if (target <= 0.0) return -1.0;
  if (target >= 1.0) return 1.0;
  double lo = -1.0;
  double hi = 1.0;
  // 50 halvings of a width-2 bracket leave < 2e-15.
  for (int it = 0; it < 50; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (semicircle_cdf(mid) < target)
      lo = mid;
    else
      hi = mid;
  }
  const double root = 0.5 * (lo + hi);
  if (!(hi - lo < 1e-14)) throw std::logic_error("semicircle quantile bisection failed");
  return root;
}

} // namespace

Spectrum lap_spectrum(std::size_t n) {
  if (n < 1) throw std::invalid_argument("lap spectrum needs n >= 1");
  std::vector<double> v(n);
  const double h = std::numbers::pi / static_cast<double>(n + 1);
  for (std::size_t i = 1; i <= n; ++i) v[i - 1] = 2.0 + 2.0 * std::cos(static_cast<double>(i) * h);
  return simple(std::move(v));
}

Spectrum unif_spectrum(std::size_t n) {
  if (n < 2) throw std::invalid_argument("unif spectrum needs n >= 2");
  std::vector<double> v(n);
  const double denom = static_cast<double>(n - 1);
  for (std::size_t i = 1; i <= n; ++i) v[i - 1] = static_cast<double>(n - i) / denom;
  return simple(std::move(v));
}

Spectrum semi_spectrum(std::size_t n) {
  if (n < 2) throw std::invalid_argument("semi spectrum needs n >= 2");
  std::vector<double> v(n);
  const double denom = static_cast<double>(n - 1);
  for (std::size_t i = 1; i <= n; ++i)
    v[i - 1] = semicircle_quantile(static_cast<double>(n - i) / denom);
  return simple(std::move(v));
}

Spectrum log_spectrum(std::size_t n) {
  if (n < 16) throw std::invalid_argument("log spectrum needs n >= 16");
  const double ln_n = std::log(static_cast<double>(n));
  const double expo = std::log(ln_n) / ln_n;
  std::vector<double> v(n);
  // k = n + 1 - i runs 1..n, giving descending values.
  v[0] = 1.0 - 1.0 / ln_n;  // (1/n)^(ln ln n / ln n) = 1 / ln n
  for (std::size_t k = 2; k <= n; ++k)
    v[k - 1] = 1.0 - std::exp(expo * (std::log(static_cast<double>(k)) - ln_n));
  return simple(std::move(v));
}

Spectrum legendre_hard_instance(std::size_t n, int m) {
  if (m < 2) throw std::invalid_argument("legendre hard instance needs m >= 2");
  const auto two_m = static_cast<std::size_t>(2 * m);
  if (n < two_m)
    throw std::invalid_argument("legendre hard instance needs n >= 2m (n = " + std::to_string(n) +
                                ", m = " + std::to_string(m) + ")");
  QuadratureRule rule = gauss_legendre(2 * m);
  const std::size_t base = (n - 1) / (two_m - 1);
  const std::size_t rem = (n - 1) - (two_m - 1) * base;
  std::vector<std::size_t> mults(two_m, base);
  mults[0] = 1;
  for (std::size_t r = 0; r < rem; ++r) ++mults[two_m - 1 - r];
  return Spectrum(std::move(rule.nodes), std::move(mults));
}

JacobiHardParameters jacobi_hard_parameters(std::size_t n, int m) {
  if (m < 1) throw std::invalid_argument("jacobi hard instance needs m >= 1");
  if (n < 16) throw std::invalid_argument("jacobi hard instance needs n >= 16");
  const double ln_n = std::log(static_cast<double>(n));
  const int ell = static_cast<int>(std::floor(0.2495 * ln_n / std::log(ln_n)));
  if (ell < 1)
    throw std::invalid_argument("jacobi hard instance: ell = " + std::to_string(ell) +
                                " < 1 for n = " + std::to_string(n));
  const double k = std::floor(std::pow(static_cast<double>(m), 4.004 * ell));
  if (k > static_cast<double>(n))
    throw std::invalid_argument("jacobi hard instance: k = floor(m^(4.004 ell)) = " +
                                format_g17(k) + " exceeds n = " + std::to_string(n) +
                                " (ell = " + std::to_string(ell) + ")");
  return {ell, static_cast<std::size_t>(k)};
}

Spectrum jacobi_hard_instance(std::size_t n, int m) {
  const auto [ell, k] = jacobi_hard_parameters(n, m);
  std::vector<double> values(k);
  const double inv_ell = 1.0 / ell;
  for (std::size_t j = k; j >= 1; --j) {
    const double x = static_cast<double>(j) / static_cast<double>(k);
    values[k - j] = 1.0 - 2.0 * std::pow(1.0 - x, inv_ell);
  }
  const std::size_t base = n / k;
  const std::size_t rem = n % k;
  std::vector<std::size_t> mults(k, base);
  for (std::size_t r = 0; r < rem; ++r) ++mults[k - 1 - r];
  return Spectrum(std::move(values), std::move(mults));
}

// ---------------------------------------------------------------------------

LaplacianOperator::LaplacianOperator(std::size_t n) : n_(n) {
  if (n == 0) throw std::invalid_argument("operator dimension must be positive");
}

void LaplacianOperator::apply(std::span<const double> x, std::span<double> y) const {
  for (std::size_t i = 0; i < n_; ++i) {
    double v = 2.0 * x[i];
    if (i > 0) v -= x[i - 1];
    if (i + 1 < n_) v -= x[i + 1];
    y[i] = v;
  }
}

LaplacianInverseOperator::LaplacianInverseOperator(std::size_t n)
    : n_(n), upper_(n), inv_pivot_(n) {
  if (n == 0) throw std::invalid_argument("operator dimension must be positive");
  inv_pivot_[0] = 0.5;
  upper_[0] = -0.5;
  for (std::size_t i = 1; i < n; ++i) {
    inv_pivot_[i] = 1.0 / (2.0 + upper_[i - 1]);
    upper_[i] = -inv_pivot_[i];
  }
}

void LaplacianInverseOperator::apply(std::span<const double> x, std::span<double> y) const {
  y[0] = x[0] * inv_pivot_[0];
  for (std::size_t i = 1; i < n_; ++i) y[i] = (x[i] + y[i - 1]) * inv_pivot_[i];
  for (std::size_t i = n_ - 1; i-- > 0;) y[i] -= upper_[i] * y[i + 1];
}

LaplacianOperator laplacian_operator(std::size_t n) { return LaplacianOperator(n); }
LaplacianInverseOperator laplacian_inverse_operator(std::size_t n) {
  return LaplacianInverseOperator(n);
}

// ---------------------------------------------------------------------------

void write_spectrum(std::ostream& out, const Spectrum& spec) {
  for (std::size_t j = 0; j < spec.distinct(); ++j)
    out << format_g17(spec.values()[j]) << ' ' << spec.mults()[j] << '\n';
}

Spectrum read_spectrum(std::istream& in) {
  std::vector<double> values;
  std::vector<std::size_t> mults;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    double v;
    long long mult;
    if (!(ls >> v >> mult) || mult < 1)
      throw std::invalid_argument("spectrum file: malformed line " + std::to_string(lineno));
    values.push_back(v);
    mults.push_back(static_cast<std::size_t>(mult));
  }
  return Spectrum(std::move(values), std::move(mults));
}

} // namespace lanczos_lab

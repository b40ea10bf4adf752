#include "lanczos_lab/lanczos.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "lanczos_lab/orthopoly.hpp"

namespace lanczos_lab {

namespace {

double dot(std::span<const double> x, std::span<const double> y) {
  return std::inner_product(x.begin(), x.end(), y.begin(), 0.0);
}

double norm2(std::span<const double> x) { return std::sqrt(dot(x, x)); }

} // namespace

double estimate_norm(const LinearOperator& op, std::span<const double> b, std::size_t steps) {
  LanczosOptions probe;
  probe.reorthogonalize = false;
  probe.norm_estimate = 0.0;  // no breakdown test beyond exact zero
  const TridiagonalMatrix t = lanczos(op, b, std::min(steps, op.dim()), probe);
  const std::vector<double> ritz = tridiag_eigenvalues(t.alpha, t.beta);
  return std::max(std::abs(ritz.front()), std::abs(ritz.back()));
}

TridiagonalMatrix lanczos(const LinearOperator& op, std::span<const double> b, std::size_t m,
                          const LanczosOptions& opts) {
  const std::size_t n = op.dim();
  if (b.size() != n)
    throw std::invalid_argument("start vector has dimension " + std::to_string(b.size()) +
                                ", operator has " + std::to_string(n));
  if (m < 1 || m > n) throw std::invalid_argument("iteration count must satisfy 1 <= m <= n");
  const double bnorm = norm2(b);
  if (!(bnorm > 0.0)) throw std::invalid_argument("start vector must be non-zero");

  const double op_norm = opts.norm_estimate ? *opts.norm_estimate : estimate_norm(op, b);
  const double breakdown = opts.breakdown_tol * op_norm;

  // Column-major basis when reorthogonalizing; otherwise only q_{i-1}, q_i.
  std::vector<double> basis;
  std::vector<double> q_prev(n, 0.0), q(n), v(n);
  for (std::size_t j = 0; j < n; ++j) q[j] = b[j] / bnorm;
  if (opts.reorthogonalize) {
    basis.reserve(n * m);
    basis.insert(basis.end(), q.begin(), q.end());
  }

  TridiagonalMatrix t;
  t.alpha.reserve(m);
  t.beta.reserve(m);
  double beta_prev = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    op.apply(q, v);
    const double alpha = dot(q, v);
    t.alpha.push_back(alpha);
    if (i + 1 == m) break;

    for (std::size_t j = 0; j < n; ++j) v[j] -= alpha * q[j] + beta_prev * q_prev[j];
    if (opts.reorthogonalize) {
      std::vector<double> coef(i + 1);
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t k = 0; k <= i; ++k)
          coef[k] = dot(std::span<const double>(basis.data() + k * n, n), v);
        for (std::size_t k = 0; k <= i; ++k) {
          const double* col = basis.data() + k * n;
          const double c = coef[k];
          for (std::size_t j = 0; j < n; ++j) v[j] -= c * col[j];
        }
      }
    }
    const double beta = norm2(v);
    if (!(beta > breakdown)) {
      t.converged_early = true;
      t.truncation_step = i + 1;
      break;
    }
    t.beta.push_back(beta);
    for (std::size_t j = 0; j < n; ++j) {
      q_prev[j] = q[j];
      q[j] = v[j] / beta;
    }
    if (opts.reorthogonalize) basis.insert(basis.end(), q.begin(), q.end());
    beta_prev = beta;
  }
  return t;
}

RitzReport ritz_values(const TridiagonalMatrix& t) {
  RitzReport r;
  r.ritz = tridiag_eigenvalues(t.alpha, t.beta);
  r.m = t.m();
  r.converged_early = t.converged_early;
  r.truncation_step = t.truncation_step;
  return r;
}

double leading_ritz_value(const TridiagonalMatrix& t, std::size_t m, std::size_t k) {
  if (m < 1 || m > t.m()) throw std::out_of_range("leading block size out of range");
  return tridiag_eigenvalue(std::span<const double>(t.alpha.data(), m),
                            std::span<const double>(t.beta.data(), m - 1), k);
}

RitzReport measure_ritz(const Spectrum& spec, std::span<const double> y, std::size_t m) {
  if (y.size() != spec.n())
    throw std::invalid_argument("chi-square weights must have one entry per eigenvalue");
  std::vector<double> masses(spec.distinct(), 0.0);
  std::size_t idx = 0;
  for (std::size_t j = 0; j < spec.distinct(); ++j) {
    for (std::size_t r = 0; r < spec.mults()[j]; ++r, ++idx) {
      if (!(y[idx] >= 0.0)) throw std::invalid_argument("chi-square weights must be non-negative");
      masses[j] += y[idx];
    }
  }
  const auto support = static_cast<std::size_t>(
      std::count_if(masses.begin(), masses.end(), [](double w) { return w > 0.0; }));
  if (support == 0) throw std::invalid_argument("all chi-square weights are zero");
  if (m < 1 || m > support)
    throw std::invalid_argument("m = " + std::to_string(m) + " exceeds the " +
                                std::to_string(support) + " eigenvalues carrying mass");

  const ThreeTermRecurrence rec = stieltjes(spec.values(), masses, static_cast<int>(m));
  RitzReport r;
  r.ritz = tridiag_eigenvalues(rec.diag, rec.offdiag);
  r.m = rec.size();
  if (r.m < m) {
    r.converged_early = true;
    r.truncation_step = r.m;
  }
  return r;
}

RelativeError relative_error_detail(const Spectrum& spec, double ritz, std::size_t i) {
  const double spread = spec.spread();
  if (!(spread > 0.0)) throw std::invalid_argument("relative error undefined for a constant spectrum");
  const double raw = (spec.eigenvalue(i) - ritz) / spread;
  if (raw >= 0.0) return {raw, raw};
  if (raw >= -1e-10) return {0.0, raw};
  throw std::runtime_error("Ritz value exceeds lambda_" + std::to_string(i) +
                           " beyond rounding slack (relative error " + std::to_string(raw) + ")");
}

RelativeError relative_error_detail(const Spectrum& spec, const RitzReport& report,
                                    std::size_t i) {
  if (i < 1 || i > report.ritz.size())
    throw std::out_of_range("Ritz index " + std::to_string(i) + " not available");
  return relative_error_detail(spec, report.ritz[i - 1], i);
}

double relative_error(const Spectrum& spec, const RitzReport& report, std::size_t i) {
  return relative_error_detail(spec, report, i).value;
}

RitzReport ritz_for_sparse(const LinearOperator& op, std::span<const double> b, std::size_t m,
                           const LanczosOptions& opts) {
  return ritz_values(lanczos(op, b, m, opts));
}

} // namespace lanczos_lab

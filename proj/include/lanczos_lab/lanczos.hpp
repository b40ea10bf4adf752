#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "lanczos_lab/linear_operator.hpp"
#include "lanczos_lab/spectra.hpp"

namespace lanczos_lab {

/// T_m = Q_m^T A Q_m from the Lanczos iteration.
struct TridiagonalMatrix {
  std::vector<double> alpha;  // alpha_1 .. alpha_m
  std::vector<double> beta;   // beta_1 .. beta_{m-1}, all > 0
  bool converged_early = false;
  /// Step at which the residual vanished; 0 when all requested steps ran.
  std::size_t truncation_step = 0;

  std::size_t m() const { return alpha.size(); }
};

struct LanczosOptions {
  /// Classical Gram-Schmidt against every stored basis vector, twice per step.
  bool reorthogonalize = true;
  /// Operator norm used for the breakdown test. Estimated from a 5-step probe
  /// when absent.
  std::optional<double> norm_estimate;
  /// Stop when beta_i <= breakdown_tol * norm_estimate.
  double breakdown_tol = 1e-12;
};

struct RitzReport {
  std::vector<double> ritz;  // descending
  std::size_t m = 0;
  bool converged_early = false;
  std::size_t truncation_step = 0;
};

/// m steps of the Lanczos iteration started from b / |b|. Throws for b = 0 or
/// m outside [1, n].
TridiagonalMatrix lanczos(const LinearOperator& op, std::span<const double> b, std::size_t m,
                          const LanczosOptions& opts = {});

/// Largest |Ritz value| of a short unreorthogonalized run; a lower bound on
/// the operator 2-norm.
double estimate_norm(const LinearOperator& op, std::span<const double> b, std::size_t steps = 5);

RitzReport ritz_values(const TridiagonalMatrix& t);

/// k-th largest eigenvalue of the leading m x m block of T.
double leading_ritz_value(const TridiagonalMatrix& t, std::size_t m, std::size_t k);

/// Ritz values from the chi-square model: y holds one non-negative weight per
/// eigenvalue index (length spec.n()). Weights on repeated eigenvalues are
/// summed, and the Ritz values are the eigenvalues of the leading m x m Jacobi
/// matrix of sum_j Y_j delta_{lambda_j}.
RitzReport measure_ritz(const Spectrum& spec, std::span<const double> y, std::size_t m);

struct RelativeError {
  double value;  // clamped at 0
  double raw;
};

/// (lambda_i - lambda_i^(m)) / (lambda_1 - lambda_n). Values in [-1e-10, 0)
/// are clamped to 0; anything more negative violates Ritz containment and
/// throws.
RelativeError relative_error_detail(const Spectrum& spec, const RitzReport& report, std::size_t i);
double relative_error(const Spectrum& spec, const RitzReport& report, std::size_t i);

/// Same quantity from a raw Ritz value.
RelativeError relative_error_detail(const Spectrum& spec, double ritz, std::size_t i);

RitzReport ritz_for_sparse(const LinearOperator& op, std::span<const double> b, std::size_t m,
                           const LanczosOptions& opts = {});

} // namespace lanczos_lab

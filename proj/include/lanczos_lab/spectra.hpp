#pragma once

// Benchmark and hard-instance spectra, plus the 1-D Dirichlet Laplacian as a
// matrix-free operator.

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "lanczos_lab/linear_operator.hpp"

namespace lanczos_lab {

/// Eigenvalues of a symmetric matrix as distinct values (strictly
/// descending) with multiplicities.
class Spectrum {
public:
  Spectrum(std::vector<double> values, std::vector<std::size_t> mults);

  /// Sorts descending and merges exact duplicates.
  static Spectrum from_values(std::vector<double> values);

  const std::vector<double>& values() const { return values_; }
  const std::vector<std::size_t>& mults() const { return mults_; }
  std::size_t n() const { return n_; }
  std::size_t distinct() const { return values_.size(); }

  double top() const { return values_.front(); }
  double bottom() const { return values_.back(); }
  double spread() const { return top() - bottom(); }

  /// lambda_i counted with multiplicity, i = 1..n.
  double eigenvalue(std::size_t i) const;
  /// All n eigenvalues, descending, multiplicities expanded.
  std::vector<double> expanded() const;

private:
  std::vector<double> values_;
  std::vector<std::size_t> mults_;
  std::size_t n_ = 0;
};

Spectrum lap_spectrum(std::size_t n);
Spectrum unif_spectrum(std::size_t n);
Spectrum semi_spectrum(std::size_t n);
/// Requires n >= 16.
Spectrum log_spectrum(std::size_t n);

/// Zeros of the degree-2m Legendre polynomial; the top zero once, the rest
/// about (n-1)/(2m-1) times each, surplus on the smallest values.
Spectrum legendre_hard_instance(std::size_t n, int m);

struct JacobiHardParameters {
  int ell;
  std::size_t k;
};

/// ell = floor(.2495 ln n / ln ln n), k = floor(m^(4.004 ell)).
JacobiHardParameters jacobi_hard_parameters(std::size_t n, int m);

/// Values 1 - 2 (1 - j/k)^(1/ell), j = 1..k, spread evenly over n slots.
Spectrum jacobi_hard_instance(std::size_t n, int m);

/// Tridiagonal (-1, 2, -1).
class LaplacianOperator final : public LinearOperator {
public:
  explicit LaplacianOperator(std::size_t n);
  std::size_t dim() const override { return n_; }
  void apply(std::span<const double> x, std::span<double> y) const override;

private:
  std::size_t n_;
};

/// Inverse of LaplacianOperator via a pre-factored Thomas solve, O(n) per
/// application.
class LaplacianInverseOperator final : public LinearOperator {
public:
  explicit LaplacianInverseOperator(std::size_t n);
  std::size_t dim() const override { return n_; }
  void apply(std::span<const double> x, std::span<double> y) const override;

private:
  std::size_t n_;
  std::vector<double> upper_;      // modified super-diagonal c'_i
  std::vector<double> inv_pivot_;  // 1 / (2 + c'_{i-1})
};

LaplacianOperator laplacian_operator(std::size_t n);
LaplacianInverseOperator laplacian_inverse_operator(std::size_t n);

/// Text format: one "value multiplicity" line per distinct value, descending,
/// values with 17 significant digits.
void write_spectrum(std::ostream& out, const Spectrum& spec);
Spectrum read_spectrum(std::istream& in);

} // namespace lanczos_lab

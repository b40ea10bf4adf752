#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace lanczos_lab {

/// Matrix-free symmetric operator. apply() must be safe to call concurrently.
class LinearOperator {
public:
  virtual ~LinearOperator() = default;
  virtual std::size_t dim() const = 0;
  /// y = A x; x and y do not alias.
  virtual void apply(std::span<const double> x, std::span<double> y) const = 0;
};

class DiagonalOperator final : public LinearOperator {
public:
  explicit DiagonalOperator(std::vector<double> diagonal) : d_(std::move(diagonal)) {
    if (d_.empty()) throw std::invalid_argument("operator dimension must be positive");
  }

  std::size_t dim() const override { return d_.size(); }
  void apply(std::span<const double> x, std::span<double> y) const override {
    for (std::size_t i = 0; i < d_.size(); ++i) y[i] = d_[i] * x[i];
  }
  const std::vector<double>& diagonal() const { return d_; }

private:
  std::vector<double> d_;
};

} // namespace lanczos_lab

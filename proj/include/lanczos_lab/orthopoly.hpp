#pragma once

// Orthogonal polynomials, Gauss quadrature and the symmetric tridiagonal
// eigensolver shared with the Lanczos code.

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lanczos_lab {

/// Raised when an iterative construction exhausts its refinement budget.
class ConvergenceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Gauss rule on [-1,1] (or on the support of a recurrence's measure).
/// Nodes are strictly decreasing, weights positive.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
  double integrate(const std::function<double(double)>& f) const;
};

/// Jacobi matrix of the orthonormal polynomials of a measure:
///   x p_k(x) = offdiag[k] p_{k+1}(x) + diag[k] p_k(x) + offdiag[k-1] p_{k-1}(x)
/// with p_0 = 1 normalized against the measure divided by total_mass.
struct ThreeTermRecurrence {
  std::vector<double> diag;     // a_0 .. a_{K-1}
  std::vector<double> offdiag;  // b_1 .. b_{K-1}, all > 0
  double total_mass = 1.0;

  std::size_t size() const { return diag.size(); }
};

/// Exponents of the weight (1-x)^alpha (1+x)^beta on [-1,1].
struct JacobiParams {
  double alpha = 0.0;
  double beta = 0.0;

  JacobiParams() = default;
  JacobiParams(double a, double b) : alpha(a), beta(b) {
    if (!(alpha > -1.0) || !(beta > -1.0))
      throw std::invalid_argument("Jacobi exponents must satisfy alpha > -1 and beta > -1");
  }
};

struct MeasurePoint {
  double location;
  double mass;
};

double chebyshev_t(int k, double x);

QuadratureRule gauss_legendre(int k);

/// Gauss rule of size k for the measure behind `rec` (Golub-Welsch nodes,
/// Christoffel-number weights scaled by rec.total_mass).
QuadratureRule gauss_rule(const ThreeTermRecurrence& rec, int k);

double jacobi_eval(int k, const JacobiParams& p, double x);
double jacobi_norm_sq(int k, const JacobiParams& p);
/// Requires max(alpha, beta) >= -1/2.
double jacobi_max_abs(int k, const JacobiParams& p);
double jacobi_deriv(int k, const JacobiParams& p, double x);

/// Closed-form recurrence of the weight (1-x)^alpha (1+x)^beta.
ThreeTermRecurrence jacobi_recurrence(const JacobiParams& p, int K);

/// Discretized Stieltjes procedure. `locations` must be distinct; zero masses
/// are allowed and simply carry no weight. The result has
/// min(K, #positive masses) diagonal entries, fewer if the recurrence breaks
/// down.
ThreeTermRecurrence stieltjes(std::span<const double> locations, std::span<const double> masses,
                              int K, bool reorthogonalize = false);

/// Recurrence of the measure sum_j mass_j delta_{location_j}. Coincident
/// locations are merged.
ThreeTermRecurrence recurrence_from_discrete_measure(std::span<const MeasurePoint> points, int K,
                                                     bool reorthogonalize = false);

using Density = std::function<double(double)>;

/// Density that also receives the exact distances x - a and b - x. Grid nodes
/// close to an endpoint round onto it in floating point; singular weights need
/// the distances to stay finite there.
using EndpointDensity = std::function<double(double x, double from_a, double to_b)>;

/// Recurrence of sigma(x) dx on [a,b]. sigma is sampled on a Gauss-Legendre
/// grid graded towards both endpoints (x - a ~ s^4), which keeps integrable
/// endpoint singularities such as the arcsine law spectrally accurate. The
/// grid (N points to start) is doubled until the leading K coefficients move
/// by less than 1e-10; after 8 doublings a ConvergenceError is thrown.
ThreeTermRecurrence recurrence_from_density(const Density& sigma, double a, double b, int K,
                                            int N = 64);
ThreeTermRecurrence recurrence_from_density(const EndpointDensity& sigma, double a, double b,
                                            int K, int N = 64);

/// The Jacobi weight moved to [a,b]:
///   (2(b-x)/(b-a))^alpha (2(x-a)/(b-a))^beta,
/// which is exactly (1-x)^alpha (1+x)^beta on [-1,1]. Uniform, arcsine and
/// semicircle laws are the cases (0,0), (-1/2,-1/2) and (1/2,1/2).
EndpointDensity jacobi_weight(const JacobiParams& p, double a, double b);

/// Largest zero of the degree-m orthogonal polynomial, i.e. the top
/// eigenvalue of the leading m x m Jacobi matrix.
double largest_zero(const ThreeTermRecurrence& rec, int m);

/// All eigenvalues of a symmetric tridiagonal matrix, descending, by
/// Sturm-sequence bisection.
std::vector<double> tridiag_eigenvalues(std::span<const double> diag,
                                        std::span<const double> offdiag);

/// k-th largest eigenvalue (k = 1 is the largest).
double tridiag_eigenvalue(std::span<const double> diag, std::span<const double> offdiag,
                          std::size_t k);

/// Number of eigenvalues strictly below x.
std::size_t sturm_count(std::span<const double> diag, std::span<const double> offdiag, double x);

} // namespace lanczos_lab

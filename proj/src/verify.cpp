#include "lanczos_lab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "lanczos_lab/bounds.hpp"
#include "lanczos_lab/experiments.hpp"
#include "lanczos_lab/format.hpp"
#include "lanczos_lab/lanczos.hpp"
#include "lanczos_lab/orthopoly.hpp"
#include "lanczos_lab/rng.hpp"

namespace lanczos_lab {

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.passed; });
}

namespace {

VerifyCheck quadrature_exactness(bool corrupt) {
  double worst = 0.0;
  std::string where;
  for (int k = 1; k <= 20; ++k) {
    QuadratureRule rule = gauss_legendre(k);
    if (corrupt) rule.weights[0] *= 1.0 + 1e-6;
    for (int j = 0; j <= 2 * k - 1; ++j) {
      const double exact = j % 2 == 1 ? 0.0 : 2.0 / (j + 1);
      const double got = rule.integrate([j](double x) { return std::pow(x, j); });
      const double err = std::abs(got - exact) / std::max(1.0, std::abs(exact));
      if (err > worst) {
        worst = err;
        where = "k=" + std::to_string(k) + " j=" + std::to_string(j);
      }
    }
  }
  return {"quadrature exactness", worst <= 1e-12,
          "worst relative error " + format_g17(worst) + " at " + where};
}

const double kJacobiExponents[] = {-0.4, 0.0, 0.5, 1.0, 3.0};

VerifyCheck jacobi_norm_consistency() {
  double worst = 0.0;
  for (double a : kJacobiExponents)
    for (double b : kJacobiExponents) {
      const JacobiParams p(a, b);
      const ThreeTermRecurrence rec = recurrence_from_density(jacobi_weight(p, -1.0, 1.0), -1.0,
                                                              1.0, 17);
      for (int k = 0; k <= 15; ++k) {
        const QuadratureRule rule = gauss_rule(rec, k + 2);
        const double got = rule.integrate([&](double x) {
          const double v = jacobi_eval(k, p, x);
          return v * v;
        });
        const double exact = jacobi_norm_sq(k, p);
        worst = std::max(worst, std::abs(got - exact) / exact);
      }
    }
  return {"jacobi norm consistency", worst <= 1e-10, "worst relative error " + format_g17(worst)};
}

VerifyCheck jacobi_derivative_identity() {
  double worst = 0.0;
  const double h = 1e-5;
  for (double a : kJacobiExponents)
    for (double b : kJacobiExponents) {
      const JacobiParams p(a, b);
      // Past degree 7 the h^2 truncation of the difference quotient alone
      // exceeds the tolerance near the endpoints.
      for (int k = 0; k <= 7; ++k)
        for (int g = -9; g <= 9; ++g) {
          const double x = g / 10.0;
          const double fd = (jacobi_eval(k, p, x + h) - jacobi_eval(k, p, x - h)) / (2 * h);
          worst = std::max(worst, std::abs(jacobi_deriv(k, p, x) - fd));
        }
    }
  return {"jacobi derivative identity", worst <= 1e-6, "worst abs error " + format_g17(worst)};
}

VerifyCheck jacobi_largest_zero_bound() {
  double worst = -1.0;
  for (int s = 0; s <= 200; ++s) {
    const double alpha = 0.1 * s;
    const ThreeTermRecurrence rec = jacobi_recurrence(JacobiParams(alpha, 0.0), 50);
    for (int m = 2; m <= 50; ++m) {
      const double r = (alpha + 1.5) / (m + alpha + 0.5);
      worst = std::max(worst, largest_zero(rec, m) - std::sqrt(1.0 - r * r));
    }
  }
  return {"jacobi largest-zero bound", worst <= 1e-13,
          "max excess over the bound " + format_g17(worst)};
}

VerifyCheck oracle_equivalence() {
  double worst = 0.0;
  for (std::uint64_t t = 0; t < 100; ++t) {
    CounterRng rng(20240901, t);
    const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform() * 49);
    const std::size_t m = 1 + static_cast<std::size_t>(rng.uniform() * std::min<double>(10, n));
    std::vector<double> values(n);
    for (double& v : values) v = 4.0 * rng.uniform() - 2.0;
    const Spectrum spec = Spectrum::from_values(values);
    std::vector<double> y(spec.n()), b(spec.n());
    for (std::size_t j = 0; j < spec.n(); ++j) {
      const double z = rng.normal();
      y[j] = z * z;
      b[j] = std::abs(z);
    }
    const std::size_t mm = std::min(m, spec.distinct());
    const RitzReport a = ritz_for_sparse(DiagonalOperator(spec.expanded()), b, mm);
    const RitzReport o = measure_ritz(spec, y, mm);
    if (a.ritz.size() != o.ritz.size()) return {"oracle equivalence", false, "length mismatch"};
    for (std::size_t k = 0; k < a.ritz.size(); ++k)
      worst = std::max(worst, std::abs(a.ritz[k] - o.ritz[k]));
  }
  return {"oracle equivalence", worst <= 1e-8, "worst Ritz difference " + format_g17(worst)};
}

VerifyCheck condition_identity() {
  double worst = 0.0;
  for (std::uint64_t t = 0; t < 50; ++t) {
    CounterRng rng(777, t);
    std::vector<double> values(50);
    for (double& v : values) v = 0.1 + 9.9 * rng.uniform();
    const Spectrum spec = Spectrum::from_values(values);
    std::vector<double> b(spec.n());
    for (double& v : b) v = rng.normal();
    const DiagonalOperator op(spec.expanded());
    for (std::size_t m : {5u, 10u, 25u}) {
      const RitzReport r = ritz_for_sparse(op, b, m);
      const double l1 = spec.top(), ln = spec.bottom();
      const double direct = l1 / ln - r.ritz.front() / r.ritz.back();
      const double via = condition_error_identity(l1, ln, r.ritz.front(), r.ritz.back());
      worst = std::max(worst, std::abs(via - direct) / std::max(1.0, std::abs(direct)));
    }
  }
  return {"condition-number identity", worst <= 1e-10, "worst discrepancy " + format_g17(worst)};
}

VerifyCheck bessel_check(double alpha, double expected, double tol, const char* label) {
  const double got = bessel_limit(alpha);
  return {std::string("bessel limit ") + label, std::abs(got - expected) <= tol,
          "j^2/4 = " + format_g17(got) + ", expected " + format_g17(expected)};
}

VerifyCheck reproduction(SpectrumKind kind, double target, double rel_tol, unsigned threads,
                         AuditReport* audit) {
  ExperimentConfig cfg;
  cfg.kind = kind;
  cfg.n = 100000;
  cfg.m_max = 100;
  cfg.trials = 20;
  cfg.seed = 7;
  cfg.path = TrialPath::measure;
  cfg.threads = threads;
  cfg.keep_raw = true;
  const Spectrum spec = make_spectrum(cfg);
  const AggregateStats stats = run_experiment(cfg, spec);
  *audit = bound_audit(stats, spec.n());
  double lo = 1e300, hi = -1e300;
  for (std::size_t m = 80; m <= 100; ++m) {
    lo = std::min(lo, stats.at(m).mean);
    hi = std::max(hi, stats.at(m).mean);
  }
  const bool ok = lo >= target * (1 - rel_tol) && hi <= target * (1 + rel_tol);
  return {"reproduction " + to_string(kind) + " n=1e5", ok,
          "scaled mean over m in [80,100] spans [" + format_g17(lo) + ", " + format_g17(hi) +
              "], target " + format_g17(target)};
}

} // namespace

VerifyReport run_verify(const VerifyOptions& opts) {
  VerifyReport rep;
  rep.checks.push_back(quadrature_exactness(opts.corrupt_legendre_weight));
  rep.checks.push_back(jacobi_norm_consistency());
  rep.checks.push_back(jacobi_derivative_identity());
  rep.checks.push_back(jacobi_largest_zero_bound());
  rep.checks.push_back(oracle_equivalence());
  rep.checks.push_back(condition_identity());
  if (opts.level == VerifyLevel::quick) return rep;

  const double pi2 = std::numbers::pi * std::numbers::pi;
  rep.checks.push_back(bessel_check(-0.5, pi2 / 16, 1e-10, "alpha=-1/2"));
  rep.checks.push_back(bessel_check(0.0, 1.4458, 1e-4, "alpha=0"));
  rep.checks.push_back(bessel_check(0.5, pi2 / 4, 1e-10, "alpha=1/2"));

  std::size_t checked = 0, violations = 0;
  const struct {
    SpectrumKind kind;
    double target, tol;
  } cases[] = {{SpectrumKind::lap, pi2 / 16, 0.10},
               {SpectrumKind::unif, bessel_limit(0.0), 0.10},
               {SpectrumKind::semi, pi2 / 4, 0.15}};
  for (const auto& c : cases) {
    AuditReport audit;
    rep.checks.push_back(reproduction(c.kind, c.target, c.tol, opts.threads, &audit));
    checked += audit.checked;
    violations += audit.violations.size();
  }
  rep.checks.push_back({"upper-bound audit", violations == 0,
                        std::to_string(violations) + " violations in " + std::to_string(checked) +
                            " comparisons"});
  return rep;
}

} // namespace lanczos_lab

#include "vzsim/rb_fit.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace vzsim {

namespace {

double model(double a, double r, double b, double m) {
  return a * std::pow(r, m) + b;
}

// Physical domain of a population decay curve p(m) = a r^m + b: the
// asymptote is a population and p(0) = a + b is one too. Keeping the fit
// inside this box removes the shallow-decay ridge where a and -b grow
// without bound while 1-r collapses to compensate.
constexpr double kAmpLo = -1.0, kAmpHi = 1.0;
constexpr double kBaseLo = 0.0, kBaseHi = 1.0;

double sum_squared_residuals(const std::vector<double>& m,
                             const std::vector<double>& y, double a, double r,
                             double b) {
  double ssr = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double res = model(a, r, b, m[i]) - y[i];
    ssr += res * res;
  }
  return ssr;
}

}  // namespace

RbFitResult fit_rb_decay(const std::vector<double>& lengths,
                         const std::vector<double>& values) {
  const std::size_t n = lengths.size();
  if (n != values.size() || n < 3) {
    throw std::invalid_argument("fit_rb_decay: need >= 3 matched points");
  }
  for (double m : lengths) {
    if (!(m >= 0.0)) {
      throw std::invalid_argument("fit_rb_decay: lengths must be >= 0");
    }
  }

  RbFitResult out;
  const auto [y_min_it, y_max_it] = std::minmax_element(values.begin(), values.end());
  if (*y_max_it - *y_min_it < 1e-12) {
    // Constant data: no decay is identifiable.
    out.amplitude = 0.0;
    out.rate = 1.0;
    double mean = 0.0;
    for (double y : values) mean += y;
    out.baseline = mean / static_cast<double>(n);
    out.residual_norm = std::sqrt(
        sum_squared_residuals(lengths, values, 0.0, 1.0, out.baseline));
    out.converged = true;
    out.degenerate = true;
    return out;
  }

  // Initial guess by profiling: for fixed r the model is linear in (a, b),
  // so scan 1-r on a log grid, solve the 2x2 least-squares subproblem in
  // closed form, and start from the global minimizer of the profiled SSE.
  // Shallow decays (r^m_max close to 1) otherwise start Gauss-Newton on the
  // ridge where a and b trade off against 1-r and the iteration stalls.
  std::size_t i_first = 0, i_last = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (lengths[i] < lengths[i_first]) i_first = i;
    if (lengths[i] > lengths[i_last]) i_last = i;
  }
  double b = std::clamp(values[i_last], kBaseLo, kBaseHi);
  double a = std::clamp(values[i_first] - b, kAmpLo, kAmpHi);
  if (a == 0.0) a = *y_max_it - *y_min_it;
  double r = 0.99;
  {
    const auto profiled_sse = [&](double r_try, double& a_out, double& b_out) {
      double sxx = 0.0, sx = 0.0, txy = 0.0, ty = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double x = std::pow(r_try, lengths[i]);
        sxx += x * x;
        sx += x;
        txy += x * values[i];
        ty += values[i];
      }
      const double det = sxx * static_cast<double>(n) - sx * sx;
      bool interior_ok = false;
      if (std::abs(det) > 1e-14 * (sxx * static_cast<double>(n) + 1.0)) {
        a_out = (txy * static_cast<double>(n) - sx * ty) / det;
        b_out = (sxx * ty - sx * txy) / det;
        interior_ok = a_out >= kAmpLo && a_out <= kAmpHi && b_out >= kBaseLo &&
                      b_out <= kBaseHi;
      }
      if (interior_ok) {
        return sum_squared_residuals(lengths, values, a_out, r_try, b_out);
      }
      // Constrained optimum lies on the box boundary (the subproblem is a
      // convex quadratic): check all four clamped edge minimizers.
      double best = std::numeric_limits<double>::infinity();
      for (double a_edge : {kAmpLo, kAmpHi}) {
        const double b_edge =
            std::clamp((ty - a_edge * sx) / static_cast<double>(n), kBaseLo,
                       kBaseHi);
        const double sse =
            sum_squared_residuals(lengths, values, a_edge, r_try, b_edge);
        if (sse < best) {
          best = sse;
          a_out = a_edge;
          b_out = b_edge;
        }
      }
      if (sxx > 0.0) {
        for (double b_edge : {kBaseLo, kBaseHi}) {
          const double a_edge =
              std::clamp((txy - b_edge * sx) / sxx, kAmpLo, kAmpHi);
          const double sse =
              sum_squared_residuals(lengths, values, a_edge, r_try, b_edge);
          if (sse < best) {
            best = sse;
            a_out = a_edge;
            b_out = b_edge;
          }
        }
      }
      return best;
    };
    double best_sse = std::numeric_limits<double>::infinity();
    double best_log_s = std::log(0.01);
    const double log_s_lo = std::log(1e-9), log_s_hi = std::log(1.0 - 1e-12);
    const int scan_points = 121;
    for (int k = 0; k < scan_points; ++k) {
      const double log_s =
          log_s_lo + (log_s_hi - log_s_lo) * k / (scan_points - 1.0);
      double a_try, b_try;
      const double sse = profiled_sse(1.0 - std::exp(log_s), a_try, b_try);
      if (sse < best_sse) {
        best_sse = sse;
        best_log_s = log_s;
      }
    }
    if (std::isfinite(best_sse)) {
      // Golden-section polish of the 1-d profile around the best grid point.
      const double step = (log_s_hi - log_s_lo) / (scan_points - 1.0);
      double lo = std::max(log_s_lo, best_log_s - step);
      double hi = std::min(log_s_hi, best_log_s + step);
      const double gold = 0.5 * (3.0 - std::sqrt(5.0));
      for (int it = 0; it < 60 && hi - lo > 1e-10; ++it) {
        const double u = lo + gold * (hi - lo);
        const double v = hi - gold * (hi - lo);
        double au, bu, av, bv;
        if (profiled_sse(1.0 - std::exp(u), au, bu) <
            profiled_sse(1.0 - std::exp(v), av, bv)) {
          hi = v;
        } else {
          lo = u;
        }
      }
      const double r_best = 1.0 - std::exp(0.5 * (lo + hi));
      double a_best = a, b_best = b;
      if (std::isfinite(profiled_sse(r_best, a_best, b_best))) {
        a = a_best;
        b = b_best;
        r = r_best;
      }
    }
    r = std::clamp(r, 1e-6, 1.0 - 1e-12);
  }

  double ssr = sum_squared_residuals(lengths, values, a, r, b);
  const double initial_ssr = ssr;
  double damping = 1e-3;
  bool converged = false;
  int iterations = 0;
  for (; iterations < 200; ++iterations) {
    Eigen::Matrix3d jtj = Eigen::Matrix3d::Zero();
    Eigen::Vector3d jtr = Eigen::Vector3d::Zero();
    for (std::size_t i = 0; i < n; ++i) {
      const double m = lengths[i];
      const double rm = std::pow(r, m);
      const double res = a * rm + b - values[i];
      Eigen::Vector3d j;
      j << rm, (m > 0.0 ? a * m * std::pow(r, m - 1.0) : 0.0), 1.0;
      jtj += j * j.transpose();
      jtr += j * res;
    }
    bool stepped = false;
    for (int attempt = 0; attempt < 25; ++attempt) {
      Eigen::Matrix3d damped = jtj;
      for (int k = 0; k < 3; ++k) {
        damped(k, k) += damping * std::max(jtj(k, k), 1e-30);
      }
      const Eigen::Vector3d delta = damped.ldlt().solve(-jtr);
      if (!delta.allFinite()) {
        damping *= 5.0;
        continue;
      }
      const double a2 = std::clamp(a + delta(0), kAmpLo, kAmpHi);
      const double r2 = std::clamp(r + delta(1), 1e-12, 1.0 - 1e-12);
      const double b2 = std::clamp(b + delta(2), kBaseLo, kBaseHi);
      const double ssr2 = sum_squared_residuals(lengths, values, a2, r2, b2);
      if (ssr2 <= ssr) {
        const double rel_step =
            delta.norm() / (1.0 + std::sqrt(a * a + r * r + b * b));
        const double improvement = ssr - ssr2;
        a = a2;
        r = r2;
        b = b2;
        ssr = ssr2;
        damping = std::max(damping / 3.0, 1e-12);
        stepped = true;
        if (rel_step < 1e-13 || improvement < 1e-24 * (1.0 + ssr)) {
          converged = true;
        }
        break;
      }
      damping *= 5.0;
    }
    if (!stepped) {
      // No downhill step exists at any damping: treat as converged.
      converged = true;
    }
    if (converged) break;
  }

  out.amplitude = a;
  out.rate = r;
  out.baseline = b;
  out.iterations = iterations;
  out.converged = converged;
  out.residual_norm = std::sqrt(ssr);
  if (out.rate > 1.0) out.rate = 1.0;
  if (out.rate <= 0.0) {
    out.rate = 1e-12;
    out.degenerate = true;
  }
  if (!(std::sqrt(ssr) <= std::sqrt(initial_ssr) + 1e-30)) {
    // Accept-only-improvement iteration cannot end above the seed.
    out.degenerate = true;
  }

  if (n > 3 && converged) {
    Eigen::Matrix3d jtj = Eigen::Matrix3d::Zero();
    for (std::size_t i = 0; i < n; ++i) {
      const double m = lengths[i];
      const double rm = std::pow(out.rate, m);
      Eigen::Vector3d j;
      j << rm, (m > 0.0 ? out.amplitude * m * std::pow(out.rate, m - 1.0) : 0.0),
          1.0;
      jtj += j * j.transpose();
    }
    const double sigma2 = ssr / static_cast<double>(n - 3);
    const Eigen::Matrix3d cov = sigma2 * jtj.inverse();
    if (cov.allFinite()) {
      out.amplitude_err = std::sqrt(std::max(0.0, cov(0, 0)));
      out.rate_err = std::sqrt(std::max(0.0, cov(1, 1)));
      out.baseline_err = std::sqrt(std::max(0.0, cov(2, 2)));
    }
  }
  return out;
}

namespace {
void require_rate(double r, const char* who) {
  if (!(r > 0.0) || r > 1.0) {
    throw std::domain_error(std::string(who) + ": rate must lie in (0, 1]");
  }
}
}  // namespace

double error_per_clifford(double r) {
  require_rate(r, "error_per_clifford");
  return (1.0 - r) / 2.0;
}

double error_per_gate(double r, double gates_per_clifford) {
  require_rate(r, "error_per_gate");
  if (!(gates_per_clifford > 0.0)) {
    throw std::domain_error("error_per_gate: gates_per_clifford must be > 0");
  }
  return (1.0 - std::pow(r, 1.0 / gates_per_clifford)) / 2.0;
}

double leakage_per_gate(double r, double baseline, double gates_per_clifford) {
  require_rate(r, "leakage_per_gate");
  if (!(gates_per_clifford > 0.0)) {
    throw std::domain_error("leakage_per_gate: gates_per_clifford must be > 0");
  }
  if (!(baseline >= 0.0) || baseline > 1.0) {
    throw std::domain_error("leakage_per_gate: baseline must lie in [0, 1]");
  }
  return (1.0 - r) * baseline / gates_per_clifford;
}

double interleaved_gate_error(double r_standard, double r_interleaved) {
  require_rate(r_standard, "interleaved_gate_error");
  require_rate(r_interleaved, "interleaved_gate_error");
  return (1.0 - r_interleaved / r_standard) / 2.0;
}

}  // namespace vzsim

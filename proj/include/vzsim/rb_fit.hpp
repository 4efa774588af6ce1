// Exponential-decay fitting for benchmarking curves, y = A * r^m + B, and the
// error-metric conversions derived from the fitted decay rate.
#pragma once

#include <vector>

namespace vzsim {

struct RbFitResult {
  double amplitude = 0.0;  // A
  double rate = 1.0;       // r
  double baseline = 0.0;   // B
  double amplitude_err = 0.0;
  double rate_err = 0.0;
  double baseline_err = 0.0;
  double residual_norm = 0.0;  // sqrt(sum of squared residuals)
  int iterations = 0;
  bool converged = false;
  // Set when the data cannot determine a decay (e.g. constant input); the
  // result then reports r = 1 with zero amplitude.
  bool degenerate = false;
};

// Damped least squares with the analytic Jacobian. `lengths` and `values`
// must have equal size >= 3; lengths must be non-negative. The returned
// residual norm never exceeds the residual of the internal initial guess,
// and r is clamped to (0, 1].
RbFitResult fit_rb_decay(const std::vector<double>& lengths,
                         const std::vector<double>& values);

// Average error per Clifford from the decay rate: (1 - r)/2.
double error_per_clifford(double r);

// Average error per basis gate: (1 - r^(1/gates_per_clifford))/2.
double error_per_gate(double r, double gates_per_clifford);

// Leakage per basis gate from the leakage-population fit:
// (1 - r) * baseline / gates_per_clifford.
double leakage_per_gate(double r, double baseline, double gates_per_clifford);

// Gate error from an interleaved/standard decay-rate pair:
// (1 - r_interleaved/r_standard)/2.
double interleaved_gate_error(double r_standard, double r_interleaved);

}  // namespace vzsim

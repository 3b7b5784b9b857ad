#pragma once

#include <complex>
#include <cstddef>
#include <ostream>
#include <vector>

#include "postlie/liealg.hpp"
#include "postlie/rmatrix.hpp"

namespace postlie {

struct FlowProblem {
  RMatrixContext<double> ctx;
  Vector<double> x0;
  std::vector<double> t_grid;
  unsigned order = 10;
};

struct FlowState {
  double t = 0;
  Vector<double> x;
  // Sorted by (real, imag).
  std::vector<std::complex<double>> eigenvalues;
  // F_k = tr(ρ(x)^k) / k for k = 1..size of the realization.
  std::vector<double> trace_powers;
};

// [x, R₋x]
Vector<double> lax_vector_field(const RMatrixContext<double>& ctx, const Vector<double>& x);

// Eigenvalues and trace powers of x in the algebra's realization.
FlowState make_state(const LieAlgebra<double>& L, double t, const Vector<double>& x);

enum class EvalPath { matrix, adjoint_series };

struct FactorizedSolution {
  std::vector<FlowState> states;
  // max over the grid of |x_N(t) - x_{N-1}(t)| and |x_{N-1}(t) - x_{N-2}(t)|
  double order_gap = 0;
  // order_gap exceeded tau_flow
  bool non_convergent = false;
};

// x(t) = exp(-u) x₀ exp(u), u = R₋(χ(x₀t)), with χ computed once in float
// mode and rescaled along the grid.
FactorizedSolution factorized_solution(const FlowProblem& problem, EvalPath path = EvalPath::matrix,
                                       double tau_flow = 1e-9);

// Classical RK4 on the Lax field, stepping to each grid point with steps no
// longer than `step`. Throws StepTooLarge when F₂ drifts by more than
// drift_limit·(1 + |F₂(0)|).
std::vector<FlowState> rk4_reference(const FlowProblem& problem, double step, double drift_limit = 1e-3);

struct ConservationReport {
  double max_eig_drift = 0;
  double max_trace_power_drift = 0;
};

ConservationReport conservation_report(const std::vector<FlowState>& states);

// Symmetric tridiagonal x₀ in gl(n) under the upper / strictly-lower splitting.
FlowProblem toda_problem(std::size_t n, const std::vector<double>& diag, const std::vector<double>& offdiag,
                         std::vector<double> t_grid, unsigned order);

// n+1 equally spaced points on [t0, t1].
std::vector<double> uniform_grid(double t0, double t1, std::size_t steps);

struct FactorizationResidual {
  // ‖exp(x) - exp(R₊χ) exp(-R₋χ)‖₂ with χ truncated at N and at N-1
  double residual = 0;
  double residual_previous = 0;
};

FactorizationResidual factorization_residual(const RMatrixContext<double>& ctx, const Vector<double>& x,
                                             unsigned N);

// Header row plus one row per state; drift columns measured against the
// first state.
void write_flow_csv(std::ostream& out, const LieAlgebra<double>& L, const std::vector<FlowState>& states);

double max_abs_difference(const Vector<double>& a, const Vector<double>& b);

}  // namespace postlie

#include "postlie/flows.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>
#include <algorithm>
#include <cmath>
#include <iomanip>

#include "postlie/magnus.hpp"
#include "postlie/postlie.hpp"

namespace postlie {

namespace {

using EMat = Eigen::MatrixXd;

EMat to_eigen(const Matrix<double>& m) {
  EMat e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  return e;
}

Matrix<double> from_eigen(const EMat& e) {
  Matrix<double> m(e.rows(), e.cols());
  for (Eigen::Index i = 0; i < e.rows(); ++i)
    for (Eigen::Index j = 0; j < e.cols(); ++j) m(i, j) = e(i, j);
  return m;
}

EMat represent(const LieAlgebra<double>& L, const Vector<double>& x) {
  if (!L.has_realization()) throw RealizationRequired();
  return to_eigen(L.represent(x));
}

// Σ_{n=0..N} (-1)^n/n! ad_u^n x
Vector<double> adjoint_series(const LieAlgebra<double>& L, const Vector<double>& u, const Vector<double>& x,
                              unsigned N) {
  Vector<double> out = x, term = x;
  double c = 1;
  for (unsigned n = 1; n <= N; ++n) {
    term = bracket(L, u, term);
    c *= -1.0 / n;
    out += c * term;
  }
  return out;
}

}  // namespace

double max_abs_difference(const Vector<double>& a, const Vector<double>& b) { return (a - b).max_abs(); }

Vector<double> lax_vector_field(const RMatrixContext<double>& ctx, const Vector<double>& x) {
  ctx.algebra().check_conforms(x);
  return bracket(ctx.algebra(), x, ctx.r_minus()(x));
}

FlowState make_state(const LieAlgebra<double>& L, double t, const Vector<double>& x) {
  FlowState s;
  s.t = t;
  s.x = x;
  EMat m = represent(L, x);
  Eigen::EigenSolver<EMat> es(m, false);
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) s.eigenvalues.push_back(es.eigenvalues()(i));
  std::sort(s.eigenvalues.begin(), s.eigenvalues.end(), [](const auto& a, const auto& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  EMat p = EMat::Identity(m.rows(), m.cols());
  for (Eigen::Index k = 1; k <= m.rows(); ++k) {
    p = p * m;
    s.trace_powers.push_back(p.trace() / static_cast<double>(k));
  }
  return s;
}

FactorizedSolution factorized_solution(const FlowProblem& problem, EvalPath path, double tau_flow) {
  const auto& ctx = problem.ctx;
  const auto& L = ctx.algebra();
  L.check_conforms(problem.x0);
  if (path == EvalPath::matrix && !L.has_realization()) throw RealizationRequired();
  const unsigned N = std::max(problem.order, 1u);
  auto chi = postlie_magnus_lie(problem.x0, rmatrix_product(ctx, Sign::minus), N);
  // R₋χ_m, so that u(t) = Σ_m (R₋χ_m) t^m
  std::vector<Vector<double>> rchi;
  for (unsigned m = 0; m <= N; ++m) rchi.push_back(ctx.r_minus()(chi.coeff(m)));

  auto evaluate = [&](double t, unsigned order) {
    Vector<double> u(L.dim());
    double p = 1;
    for (unsigned m = 1; m <= order; ++m) {
      p *= t;
      u += p * rchi[m];
    }
    if (path == EvalPath::adjoint_series) return adjoint_series(L, u, problem.x0, order);
    EMat U = represent(L, u);
    EMat X = (-U).exp() * represent(L, problem.x0) * U.exp();
    return coordinates_of(L, from_eigen(X));
  };

  FactorizedSolution sol;
  for (double t : problem.t_grid) {
    Vector<double> x = evaluate(t, N);
    // R₋χ_N can vanish identically (Toda: even orders are diagonal), so one
    // step back can show no change while the series is far from converged.
    Vector<double> prev = x;
    for (unsigned back = 1; back <= 2 && back < N; ++back) {
      Vector<double> y = evaluate(t, N - back);
      sol.order_gap = std::max(sol.order_gap, max_abs_difference(prev, y));
      prev = std::move(y);
    }
    sol.states.push_back(L.has_realization() ? make_state(L, t, x) : FlowState{t, x, {}, {}});
  }
  sol.non_convergent = sol.order_gap > tau_flow;
  return sol;
}

std::vector<FlowState> rk4_reference(const FlowProblem& problem, double step, double drift_limit) {
  if (!(step > 0)) throw InvalidInput("step must be positive");
  const auto& ctx = problem.ctx;
  const auto& L = ctx.algebra();
  L.check_conforms(problem.x0);
  auto f = [&](const Vector<double>& x) { return lax_vector_field(ctx, x); };
  auto f2 = [&](const Vector<double>& x) { return make_state(L, 0, x).trace_powers.at(1); };

  std::vector<FlowState> out;
  if (problem.t_grid.empty()) return out;
  Vector<double> x = problem.x0;
  double t = problem.t_grid.front();
  const double f2_0 = f2(x);
  for (double target : problem.t_grid) {
    const double span = target - t;
    const auto steps = static_cast<std::size_t>(std::ceil(std::abs(span) / step - 1e-12));
    const double h = steps == 0 ? 0 : span / static_cast<double>(steps);
    for (std::size_t i = 0; i < steps; ++i) {
      Vector<double> k1 = f(x);
      Vector<double> k2 = f(x + (h / 2) * k1);
      Vector<double> k3 = f(x + (h / 2) * k2);
      Vector<double> k4 = f(x + h * k3);
      x += (h / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    t = target;
    const double drift = std::abs(f2(x) - f2_0);
    if (drift > drift_limit * (1 + std::abs(f2_0))) throw StepTooLarge(drift);
    out.push_back(make_state(L, t, x));
  }
  return out;
}

ConservationReport conservation_report(const std::vector<FlowState>& states) {
  if (states.size() < 2) throw InvalidInput("conservation report needs at least two states");
  ConservationReport rep;
  const FlowState& s0 = states.front();
  for (const auto& s : states) {
    for (std::size_t i = 0; i < s.eigenvalues.size() && i < s0.eigenvalues.size(); ++i)
      rep.max_eig_drift = std::max(rep.max_eig_drift, std::abs(s.eigenvalues[i] - s0.eigenvalues[i]));
    for (std::size_t k = 0; k < s.trace_powers.size() && k < s0.trace_powers.size(); ++k)
      rep.max_trace_power_drift = std::max(rep.max_trace_power_drift, std::abs(s.trace_powers[k] - s0.trace_powers[k]));
  }
  return rep;
}

FlowProblem toda_problem(std::size_t n, const std::vector<double>& diag, const std::vector<double>& offdiag,
                         std::vector<double> t_grid, unsigned order) {
  if (n == 0 || diag.size() != n || offdiag.size() + 1 != n) {
    throw BadDimensions("toda_problem needs n diagonal and n-1 off-diagonal entries");
  }
  auto split = builtin_upper_lower_split<double>(n);
  auto L = share(split.algebra);
  Matrix<double> m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = diag[i];
  for (std::size_t i = 0; i + 1 < n; ++i) m(i, i + 1) = m(i + 1, i) = offdiag[i];
  Vector<double> x0 = coordinates_of(*L, m);
  auto ctx = splitting_r<double>(L, split.plus_indices, split.minus_indices);
  return FlowProblem{std::move(ctx), std::move(x0), std::move(t_grid), order};
}

std::vector<double> uniform_grid(double t0, double t1, std::size_t steps) {
  if (steps == 0) return {t0};
  std::vector<double> g;
  for (std::size_t i = 0; i <= steps; ++i) g.push_back(t0 + (t1 - t0) * static_cast<double>(i) / steps);
  return g;
}

FactorizationResidual factorization_residual(const RMatrixContext<double>& ctx, const Vector<double>& x,
                                             unsigned N) {
  const auto& L = ctx.algebra();
  L.check_conforms(x);
  if (!L.has_realization()) throw RealizationRequired();
  auto chi = postlie_magnus_lie(x, rmatrix_product(ctx, Sign::minus), N);
  const EMat target = represent(L, x).exp();
  auto residual = [&](unsigned order) {
    Vector<double> c(L.dim());
    for (unsigned m = 1; m <= order; ++m) c += chi.coeff(m);
    EMat plus = represent(L, ctx.r_plus()(c)).exp();
    EMat minus = represent(L, -ctx.r_minus()(c)).exp();
    Eigen::JacobiSVD<EMat> svd(target - plus * minus);
    return svd.singularValues()(0);
  };
  FactorizationResidual r;
  r.residual = residual(N);
  r.residual_previous = N >= 1 ? residual(N - 1) : r.residual;
  return r;
}

void write_flow_csv(std::ostream& out, const LieAlgebra<double>& L, const std::vector<FlowState>& states) {
  out << "t";
  for (std::size_t i = 0; i < L.dim(); ++i) out << ",x_" << L.label(i);
  const std::size_t ne = states.empty() ? 0 : states.front().eigenvalues.size();
  const std::size_t nf = states.empty() ? 0 : states.front().trace_powers.size();
  for (std::size_t i = 0; i < ne; ++i) out << ",eig" << i + 1 << "_re,eig" << i + 1 << "_im";
  for (std::size_t k = 0; k < nf; ++k) out << ",F" << k + 1;
  out << ",eig_drift,F_drift\n";
  out << std::setprecision(17);
  for (const auto& s : states) {
    out << s.t;
    for (std::size_t i = 0; i < s.x.size(); ++i) out << "," << s.x[i];
    double eig_drift = 0, f_drift = 0;
    for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) {
      out << "," << s.eigenvalues[i].real() << "," << s.eigenvalues[i].imag();
      eig_drift = std::max(eig_drift, std::abs(s.eigenvalues[i] - states.front().eigenvalues[i]));
    }
    for (std::size_t k = 0; k < s.trace_powers.size(); ++k) {
      out << "," << s.trace_powers[k];
      f_drift = std::max(f_drift, std::abs(s.trace_powers[k] - states.front().trace_powers[k]));
    }
    out << "," << eig_drift << "," << f_drift << "\n";
  }
}

}  // namespace postlie

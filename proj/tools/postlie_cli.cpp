#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "postlie/env.hpp"
#include "postlie/flows.hpp"
#include "postlie/io.hpp"
#include "postlie/magnus.hpp"
#include "postlie/partitions.hpp"
#include "postlie/suites.hpp"

using namespace postlie;
using nlohmann::json;

namespace {

constexpr int kOk = 0, kCheckFailed = 1, kInputError = 2;

struct Options {
  std::string mode;
  unsigned order = 0;
  std::string algebra, rmatrix, builtin, product, output;
  std::string x, diag, offdiag;
  double t0 = 0, t1 = 1;
  std::size_t steps = 20;
  std::uint32_t seed = 1;
  std::size_t cases = 50;
  std::size_t n = 0;
  double tolerance = 1e-10;
  bool json = false;
};

// Raised for inconsistent flags; mapped to exit code 2.
struct UsageError : Error {
  using Error::Error;
};

bool is_structure(const std::string& name) {
  for (const auto& s : builtin_structure_names())
    if (s == name) return true;
  return false;
}

AlgebraPtr<Rational> load_algebra(const Options& o) {
  if (!o.algebra.empty()) return share(io::parse_algebra(io::read_file(o.algebra)));
  if (o.builtin.empty()) throw UsageError("one of --algebra or --builtin is required");
  if (is_structure(o.builtin)) return builtin_structure<Rational>(o.builtin).algebra_ptr();
  return share(builtin<Rational>(o.builtin));
}

RMatrixContext<Rational> load_context(const Options& o) {
  if (o.rmatrix.empty()) {
    if (!o.algebra.empty() || !is_structure(o.builtin))
      throw UsageError("--rmatrix is required unless --builtin names an r-matrix structure (" +
                       [] {
                         std::string s;
                         for (const auto& n : builtin_structure_names()) s += (s.empty() ? "" : ", ") + n;
                         return s;
                       }() +
                       ")");
    return builtin_structure<Rational>(o.builtin);
  }
  return io::make_context(load_algebra(o), io::parse_rmatrix(io::read_file(o.rmatrix)));
}

RMatrixContext<double> float_context(const RMatrixContext<Rational>& ctx, double tol) {
  auto L = share(to_float(ctx.algebra(), Tolerance{tol}));
  return RMatrixContext<double>::create(L, to_float(ctx.R()), ctx.theta());
}

void require_mode(const Options& o, const std::string& needed, const std::string& cmd) {
  if (!o.mode.empty() && o.mode != needed) throw UsageError(cmd + " requires --mode " + needed);
}

Vector<Rational> load_x(const Options& o, std::size_t dim) {
  if (o.x.empty()) throw UsageError("--x is required");
  auto x = io::parse_vector(o.x);
  if (x.size() != dim) throw DimensionMismatch(dim, x.size());
  return x;
}

std::ostream& out_stream(const Options& o, std::ofstream& file) {
  if (o.output.empty()) return std::cout;
  file.open(o.output);
  if (!file) throw UsageError("cannot write '" + o.output + "'");
  return file;
}

json vector_json(const Vector<double>& v) {
  json a = json::array();
  for (std::size_t i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

int cmd_check_algebra(const Options& o) {
  auto L = load_algebra(o);
  if (o.json) {
    std::cout << json{{"ok", true},
                      {"dim", L->dim()},
                      {"basis", L->labels()},
                      {"abelian", L->is_abelian()},
                      {"realization", L->has_realization() ? json(L->realization_size()) : json(nullptr)}}
                     .dump()
              << "\n";
  } else {
    std::cout << "dim " << L->dim() << ", basis";
    for (const auto& l : L->labels()) std::cout << " " << l;
    std::cout << "\nJacobi identity: ok\n";
    if (L->has_realization()) std::cout << "realization (" << L->realization_size() << "x" << L->realization_size()
                                        << "): ok\n";
  }
  return kOk;
}

int cmd_check_rmatrix(const Options& o) {
  if (!o.rmatrix.empty()) {
    auto L = load_algebra(o);
    auto spec = io::parse_rmatrix(io::read_file(o.rmatrix));
    if (!spec.is_splitting()) {
      if (spec.matrix->rows() != L->dim()) throw DimensionMismatch(L->dim(), spec.matrix->rows());
      auto rep = is_rmatrix(*L, LinearEndo<Rational>(*spec.matrix), Rational(spec.theta));
      if (!rep.ok) {
        auto [i, j] = *rep.worst_pair;
        if (o.json) {
          std::cout << json{{"ok", false}, {"worst_pair", {i, j}}, {"defect", rep.worst_defect_norm}}.dump() << "\n";
        } else {
          std::cout << "not an r-matrix (theta = " << spec.theta << "): largest defect " << rep.worst_defect_norm
                    << " at basis pair (" << L->label(i) << ", " << L->label(j) << ")\n";
        }
        return kCheckFailed;
      }
    }
  }
  auto ctx = load_context(o);
  auto pm = check_pm_identities(ctx);
  auto sub = subalgebra_analysis(ctx);
  if (o.json) {
    std::cout << json{{"ok", pm.ok},
                      {"theta", ctx.theta()},
                      {"pm_identities", pm.ok},
                      {"dim_im_plus", sub.dim_im_plus},
                      {"dim_im_minus", sub.dim_im_minus},
                      {"dim_ker_plus", sub.dim_ker_plus},
                      {"dim_ker_minus", sub.dim_ker_minus}}
                     .dump()
              << "\n";
  } else {
    std::cout << "r-matrix solves the " << (ctx.theta() == 1 ? "modified " : "") << "classical Yang-Baxter equation\n"
              << "R+/R- identities: " << (pm.ok ? "ok" : "FAILED") << "\n"
              << "dim im R+ = " << sub.dim_im_plus << ", dim im R- = " << sub.dim_im_minus
              << ", dim ker R+ = " << sub.dim_ker_plus << ", dim ker R- = " << sub.dim_ker_minus << "\n";
    for (const auto& f : pm.failures) std::cout << "  " << f.identity << " fails at (" << f.i << ", " << f.j << ")\n";
  }
  return pm.ok ? kOk : kCheckFailed;
}

int cmd_check_postlie(const Options& o) {
  require_mode(o, "exact", "check-postlie");
  std::optional<RMatrixContext<Rational>> ctx;
  AlgebraPtr<Rational> L;
  if (o.product.empty()) {
    ctx = load_context(o);
    L = ctx->algebra_ptr();
  } else {
    L = load_algebra(o);
  }
  auto p = o.product.empty() ? rmatrix_product(*ctx, Sign::minus) : io::parse_product(L, io::read_file(o.product));
  auto left = check_postlie(p, *L, Handedness::left);
  auto right = check_postlie(p, *L, Handedness::right);
  bool ok = left.ok || right.ok;
  if (o.json) {
    std::cout << json{{"ok", ok}, {"left", left.ok}, {"right", right.ok}}.dump() << "\n";
  } else {
    std::cout << "left post-Lie axioms: " << (left.ok ? "ok" : "fail (" + left.worst_axiom + ")") << "\n"
              << "right post-Lie axioms: " << (right.ok ? "ok" : "fail (" + right.worst_axiom + ")") << "\n";
    if (ok) {
      std::cout << "companion bracket satisfies Jacobi: "
                << [&] {
                     try {
                       companion_algebra(*L, p);
                       return "yes";
                     } catch (const JacobiViolation&) {
                       return "no";
                     }
                   }()
                << "\n";
    }
  }
  return ok ? kOk : kCheckFailed;
}

int cmd_magnus(const Options& o) {
  auto ctx = load_context(o);
  const unsigned N = o.order ? o.order : 5;
  auto x = load_x(o, ctx.algebra().dim());
  if (o.mode == "float") {
    auto fctx = float_context(ctx, o.tolerance);
    auto chi = postlie_magnus_lie(to_float(x), rmatrix_product(fctx, Sign::minus), N);
    std::cout << (o.json ? io::magnus_json(chi) + "\n" : render(chi));
    return kOk;
  }
  auto chi = postlie_magnus(x, rmatrix_product(ctx, Sign::minus), N);
  std::cout << (o.json ? io::magnus_json(chi) + "\n" : render(chi));
  return kOk;
}

int cmd_factorize(const Options& o) {
  require_mode(o, "float", "factorize");
  auto ctx = float_context(load_context(o), o.tolerance);
  auto x = to_float(load_x(o, ctx.algebra().dim()));
  const unsigned N = o.order ? o.order : 10;
  auto r = factorization_residual(ctx, x, N);
  if (o.json) {
    std::cout << json{{"order", N}, {"residual", r.residual}, {"residual_previous", r.residual_previous}}.dump()
              << "\n";
  } else {
    std::cout << "||exp(x) - exp(R+chi) exp(-R-chi)||_2 at N = " << N << ": " << r.residual << "\n"
              << "at N = " << N - 1 << ": " << r.residual_previous << "\n";
  }
  return kOk;
}

int cmd_flow(const Options& o) {
  require_mode(o, "float", "flow");
  const unsigned N = o.order ? o.order : 10;
  auto grid = uniform_grid(o.t0, o.t1, o.steps);
  FlowProblem problem = [&] {
    if (!o.diag.empty()) {
      auto d = io::parse_doubles(o.diag);
      auto off = o.offdiag.empty() ? std::vector<double>{} : io::parse_doubles(o.offdiag);
      return toda_problem(d.size(), d, off, grid, N);
    }
    auto ctx = float_context(load_context(o), o.tolerance);
    auto x = to_float(load_x(o, ctx.algebra().dim()));
    return FlowProblem{ctx, x, grid, N};
  }();
  auto sol = factorized_solution(problem);
  auto rep = conservation_report(sol.states);
  if (sol.non_convergent) {
    std::cerr << "warning: NonConvergentSeries: orders " << N << " and " << N - 1 << " differ by " << sol.order_gap
              << "\n";
  }
  if (o.json) {
    json states = json::array();
    for (const auto& s : sol.states) states.push_back({{"t", s.t}, {"x", vector_json(s.x)}});
    std::cout << json{{"order", N},
                      {"order_gap", sol.order_gap},
                      {"non_convergent", sol.non_convergent},
                      {"max_eig_drift", rep.max_eig_drift},
                      {"max_trace_power_drift", rep.max_trace_power_drift},
                      {"states", states}}
                     .dump()
              << "\n";
    return kOk;
  }
  std::ofstream file;
  write_flow_csv(out_stream(o, file), problem.ctx.algebra(), sol.states);
  std::cerr << "max eigenvalue drift " << rep.max_eig_drift << ", max F_k drift " << rep.max_trace_power_drift << "\n";
  return kOk;
}

int cmd_bell(const Options& o) {
  if (o.n == 0 || o.n > 12) throw UsageError("bell needs --n between 1 and 12");
  auto count = phi_term_count(o.n);
  auto bell = bell_number(o.n);
  if (o.json) {
    std::cout << json{{"n", o.n}, {"terms", count}, {"bell", bell}}.dump() << "\n";
  } else {
    std::cout << count << "\n";
  }
  return count == bell ? kOk : kCheckFailed;
}

int cmd_hopf_suite(const Options& o) {
  require_mode(o, "exact", "hopf-suite");
  auto ctx = load_context(o);
  const unsigned N = o.order ? o.order : 4;
  PostLieEnvelope pe(ctx.algebra_ptr(), rmatrix_product(ctx, Sign::minus), N);
  auto dot = hopf_suite(pe.g(), pe.g().dot_ops(), o.cases, o.seed);
  auto star = hopf_suite(pe.g(), pe.star_ops(), o.cases, o.seed + 1);
  if (o.json) {
    std::cout << json{{"seed", o.seed},
                      {"order", N},
                      {"dot", {{"cases", dot.cases}, {"failures", dot.failures}}},
                      {"star", {{"cases", star.cases}, {"failures", star.failures}}}}
                     .dump()
              << "\n";
  } else {
    std::cout << "seed " << o.seed << ", degree <= " << N << "\n";
    std::cout << "(., S): " << dot.cases - dot.failures << "/" << dot.cases << " passed" << dot.first_failure << "\n";
    std::cout << "(*, S*): " << star.cases - star.failures << "/" << star.cases << " passed" << star.first_failure
              << "\n";
  }
  return dot.ok() && star.ok() ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Post-Lie Magnus expansion toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--mode", o.mode, "exact or float")->check(CLI::IsMember({"exact", "float"}));
  app.add_option("--order", o.order, "truncation order N");
  app.add_option("--algebra", o.algebra, "algebra JSON file");
  app.add_option("--rmatrix", o.rmatrix, "r-matrix or splitting JSON file");
  app.add_option("--builtin", o.builtin, "built-in algebra (gl(n), sl(2), so(3)) or structure (gl2-split, ...)");
  app.add_option("--product", o.product, "product tensor JSON file (check-postlie)");
  app.add_option("--x", o.x, "coordinates, comma separated");
  app.add_option("--diag", o.diag, "Toda diagonal (flow)");
  app.add_option("--offdiag", o.offdiag, "Toda off-diagonal (flow)");
  app.add_option("--t0", o.t0);
  app.add_option("--t1", o.t1);
  app.add_option("--steps", o.steps, "grid intervals");
  app.add_option("--output", o.output, "output file");
  app.add_option("--seed", o.seed);
  app.add_option("--cases", o.cases, "random cases per suite");
  app.add_option("--n", o.n, "word length (bell)");
  app.add_option("--tolerance", o.tolerance, "float tolerance");
  app.add_flag("--json", o.json, "machine-readable output");

  std::function<int(const Options&)> run;
  auto sub = [&](const char* name, const char* help, int (*fn)(const Options&)) {
    app.add_subcommand(name, help)->callback([&run, fn] { run = fn; });
  };
  sub("check-algebra", "validate a Lie algebra", cmd_check_algebra);
  sub("check-rmatrix", "validate an r-matrix", cmd_check_rmatrix);
  sub("check-postlie", "check the post-Lie axioms", cmd_check_postlie);
  sub("magnus", "post-Lie Magnus expansion chi(x)", cmd_magnus);
  sub("factorize", "residual of exp(x) = exp(R+chi) exp(-R-chi)", cmd_factorize);
  sub("flow", "isospectral flow as CSV", cmd_flow);
  sub("bell", "term count of phi on a word of n letters", cmd_bell);
  sub("hopf-suite", "random Hopf-algebra axiom checks", cmd_hopf_suite);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }
  try {
    return run(o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const UnsupportedName& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const DimensionMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const BadDimensions& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return kCheckFailed;
  }
}

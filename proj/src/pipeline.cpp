#include "phsolve/pipeline.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <thread>

#include "phsolve/deform.hpp"
#include "phsolve/errors.hpp"

namespace phsolve {

namespace {

void validate_input(const SparseSystem& f) {
  if (f.n < 1) throw PreconditionFailed("system dimension must be positive");
  if ((int)f.supports.size() != f.n || (int)f.coeffs.size() != f.n)
    throw PreconditionFailed("system needs exactly n polynomials");
  for (int i = 0; i < f.n; ++i) {
    if (f.supports[i].size() != f.coeffs[i].size())
      throw PreconditionFailed("support/coefficient length mismatch");
    if (f.supports[i].empty()) throw PreconditionFailed("empty support");
  }
}

int thread_count(const SolverConfig& cfg, size_t jobs) {
  int t = cfg.threads;
  if (t <= 0) {
    if (const char* env = std::getenv("SOLVER_THREADS")) t = std::atoi(env);
    if (t <= 0) t = (int)std::thread::hardware_concurrency();
    if (t <= 0) t = 1;
  }
  return std::max(1, std::min<int>(t, (int)jobs));
}

SparseSystem add_systems(const SparseSystem& f, const SparseSystem& g) {
  SparseSystem h = f;
  for (int i = 0; i < f.n; ++i)
    for (size_t t = 0; t < g.supports[i].size(); ++t) {
      bool found = false;
      for (size_t s = 0; s < h.supports[i].size(); ++s)
        if (h.supports[i][s] == g.supports[i][t]) {
          h.coeffs[i][s] += g.coeffs[i][t];
          found = true;
          break;
        }
      if (!found) {
        h.supports[i].push_back(g.supports[i][t]);
        h.coeffs[i].push_back(g.coeffs[i][t]);
      }
    }
  return h;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

/// Per-cell work product: the jet factor ready for assembly.
struct CellJob {
  XTSystem hgamma;
  std::vector<Integer> gamma;
  Integer d_gamma;
};

}  // namespace

SparseSystem draw_perturbation(const SparseSystem& f, const SolverConfig& cfg, Rng& rng) {
  SupportFamily fam = group_supports(f.supports);
  Integer nd = Integer(std::max<std::int64_t>(1, f.max_total_degree())) * f.n;
  Integer range = 4 * cfg.rho * int_pow(nd, 2 * (unsigned long)f.n + 1) +
                  2 * cfg.rho * f.n * f.n * (Integer(1) << (unsigned long)fam.total_points());
  SparseSystem g;
  g.n = f.n;
  g.supports = f.supports;
  g.coeffs.resize(f.n);
  for (int i = 0; i < f.n; ++i) {
    g.coeffs[i].reserve(f.supports[i].size());
    for (size_t t = 0; t < f.supports[i].size(); ++t)
      g.coeffs[i].push_back(Rational(rng.one_to(range)));
  }
  return g;
}

SubdivisionChoice choose_subdivision(const SparseSystem& f, const SolverConfig& cfg,
                                     std::uint64_t attempt) {
  SubdivisionChoice out;
  out.fam = group_supports(f.supports);
  Rng rng = Rng(cfg.seed).fork("lifting", attempt);
  std::int64_t cap = 4 + 2 * (std::int64_t)out.fam.total_points();
  const int kCandidates = 8;
  bool have = false;
  for (int c = 0; c < kCandidates; ++c) {
    Rng rc = rng.fork("cand", c);
    LiftingFunction lift = random_lifting_capped(out.fam, cap, rc);
    if (out.fam.total_points() <= 24 && !check_lifting_generic(out.fam, lift)) continue;
    std::vector<MixedCell> cells;
    try {
      cells = enumerate_mixed_cells(out.fam, lift);
    } catch (const DegenerateLifting&) {
      continue;
    }
    Integer e = height_bound_E(out.fam, lift);
    if (!have || e < out.E) {
      out.lift = lift;
      out.cells = std::move(cells);
      out.E = e;
      have = true;
    }
  }
  if (!have) throw DegenerateLifting("no generic lifting among the candidates");
  out.D = mixed_volume(out.fam, out.cells);
  return out;
}

namespace {

ChangedForm solve_one_cell(const SupportFamily& fam, const LiftingFunction& lift,
                           const std::vector<std::vector<Rational>>& aligned,
                           const MixedCell& cell, const std::vector<Rational>& u,
                           const std::vector<Rational>& utilde, int target_prec) {
  GeometricSolution0D start = solve_cell_start(fam, cell, aligned, u, utilde);
  XTSystem hg = build_hgamma(fam, lift, aligned, cell);
  int n = fam.n;
  Integer gmin = cell.gamma[0];
  for (int i = 1; i < n; ++i) gmin = std::min(gmin, cell.gamma[i]);
  std::int64_t m_gamma = 0;
  for (int i = 0; i < n; ++i)
    m_gamma = std::max<std::int64_t>(m_gamma, Integer(cell.gamma[i] - gmin).get_si());
  SeriesGeometricSolution sol = newton_lift_stage1(start, hg, m_gamma);
  newton_lift_stage2(sol, hg, target_prec);
  ChangedForm changed = change_linear_form(sol, cell.gamma);
  if (!check_v_form(changed.sol, hg))
    throw ConsistencyError("v-form substitution check failed after the change of form");
  return changed;
}

GeometricSolution0D run_first_deformation(const SupportFamily& fam,
                                          const SubdivisionChoice& sub,
                                          const SparseSystem& h,
                                          const std::vector<Rational>& u,
                                          const std::vector<Rational>& utilde,
                                          const SolverConfig& cfg, int slack,
                                          int* measured_deg_t,
                                          std::vector<ChangedForm>* dump) {
  auto aligned = align_coefficients(fam, h);
  int n = fam.n;
  int E = (int)sub.E.get_si();
  int e_eff = E + slack;
  // common fractional grid and precision targets
  Integer lam(1);
  for (const auto& c : sub.cells) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), lam.get_mpz_t(), c.gamma[n].get_mpz_t());
    lam = lam / g * c.gamma[n];
  }
  std::int64_t lambda = lam.get_si();
  std::int64_t shift_total = 0;
  std::vector<std::int64_t> shift(sub.cells.size());
  for (size_t c = 0; c < sub.cells.size(); ++c) {
    const auto& cell = sub.cells[c];
    Integer gmin = cell.gamma[0];
    for (int i = 1; i < n; ++i) gmin = std::min(gmin, cell.gamma[i]);
    std::int64_t s = gmin < 0 ? Integer(-gmin * cell.d_gamma).get_si() : 0;
    shift[c] = s;
    shift_total += ceil_div(s * lambda, cell.gamma[n].get_si());
  }
  std::int64_t p_need = lambda * (2 * (std::int64_t)e_eff) + shift_total + 1;
  std::vector<int> target(sub.cells.size());
  for (size_t c = 0; c < sub.cells.size(); ++c) {
    std::int64_t gplus = sub.cells[c].gamma[n].get_si();
    std::int64_t t = ceil_div(p_need * gplus, lambda) + shift[c];
    target[c] = (int)std::max<std::int64_t>(t, 2);
  }

  std::vector<ChangedForm> factors(sub.cells.size());
  std::vector<std::exception_ptr> errors(sub.cells.size());
  std::atomic<size_t> next{0};
  int nthreads = thread_count(cfg, sub.cells.size());
  auto worker = [&]() {
    for (;;) {
      size_t c = next.fetch_add(1);
      if (c >= sub.cells.size()) return;
      try {
        factors[c] = solve_one_cell(fam, sub.lift, aligned, sub.cells[c], u, utilde,
                                    target[c]);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    }
  };
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  CurveSolution curve = assemble_and_pade(factors, E, u, slack);
  if (curve.degree != (int)sub.D.get_si())
    throw ConsistencyError("assembled curve degree disagrees with the mixed volume");
  if (measured_deg_t) *measured_deg_t = curve.measured_deg_t;
  if (dump) *dump = factors;
  GeometricSolution0D sol1 = specialize_T1(curve);
  return sol1;
}

void dump_branch_file(const std::string& path, const std::vector<ChangedForm>& factors);

}  // namespace

SolveReport solve(const SparseSystem& f, const SolverConfig& cfg) {
  auto t_start = std::chrono::steady_clock::now();
  validate_input(f);
  if (cfg.rho < 4) throw PreconditionFailed("rho must be at least 4");
  SolveReport rep;
  rep.seed = cfg.seed;
  rep.retries = {{"lifting", 0}, {"perturbation", 0}, {"linear_form", 0},
                 {"pade_precision", 0}, {"consistency", 0}};
  Rng root(cfg.seed);

  std::uint64_t omega_attempt = 0;
  std::int64_t g_attempt = cfg.try_direct ? -1 : 0;
  std::uint64_t u_attempt = 0;
  int slack = 0;
  int failures_this_g = 0;

  SubdivisionChoice sub;
  bool have_sub = false;
  SparseSystem g, h;
  bool g_zero = true, have_g = false;
  Integer u_range;

  for (int round = 0;; ++round) {
    if (round > 12 * cfg.max_retries) throw RetriesExhausted("global retry budget exceeded");
    try {
      if (!have_sub) {
        sub = choose_subdivision(f, cfg, omega_attempt);
        if (sub.D == 0) throw ZeroMixedVolume();
        rep.D = sub.D;
        rep.E = sub.E;
        rep.Eprime = height_bound_Eprime(sub.fam);
        have_sub = true;
        // u, u~ from {1, ..., 16 n rho D^4}
        u_range = 16 * f.n * cfg.rho * int_pow(sub.D, 4);
        have_g = false;
      }
      if (!have_g) {
        if (g_attempt < 0) {
          g = SparseSystem{};  // direct attempt: h = f
          g_zero = true;
          h = f;
        } else {
          Rng rg = root.fork("perturbation", (std::uint64_t)g_attempt);
          g = draw_perturbation(f, cfg, rg);
          g_zero = false;
          h = add_systems(f, g);
        }
        have_g = true;
        failures_this_g = 0;
      }
      Rng ru = root.fork("linear-form", u_attempt);
      std::vector<Rational> u(f.n), utilde(f.n);
      for (int i = 0; i < f.n; ++i) u[i] = Rational(ru.one_to(u_range));
      for (int i = 0; i < f.n; ++i) utilde[i] = Rational(ru.one_to(u_range));

      std::vector<ChangedForm> dump;
      GeometricSolution0D sol1 = run_first_deformation(
          sub.fam, sub, h, u, utilde, cfg, slack, &rep.measured_deg_t_first,
          cfg.dump_branches ? &dump : nullptr);
      if (cfg.dump_branches) dump_branch_file(cfg.dump_path, dump);
      if (!verify_geometric_solution(sol1, h))
        throw ConsistencyError("first-deformation solution failed verification");

      GeometricSolution0D final_sol;
      if (g_zero) {
        final_sol = sol1;
        rep.measured_deg_t_second = 0;
      } else {
        XTSystem F = build_second_deformation(f, g);
        int eprime = (int)rep.Eprime.get_si();
        SecondCurve curve2;
        try {
          curve2 = formal_newton_lift(sol1, F, eprime, slack);
        } catch (const NotCoprime&) {
          throw SingularJacobian("Jacobian of h singular on its zero set");
        }
        rep.measured_deg_t_second = curve2.measured_deg_t;
        final_sol = specialize_and_cleanup(curve2);
        if (!verify_geometric_solution(final_sol, f))
          throw NotSeparating("final solution failed verification", Redraw::LinearFormU);
      }
      rep.solution = final_sol;
      rep.used_perturbation = !g_zero;
      rep.possible_escape = final_sol.m.degree() < (int)sub.D.get_si();
      rep.verified = verify(rep.solution, f);
      if (!rep.verified) throw Unverifiable();
      rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
                        .count();
      return rep;
    } catch (const SolverError& err) {
      Redraw r = err.redraw;
      if (r == Redraw::None) throw;
      // opportunistic g = 0 attempts get at most a couple of retries before
      // the perturbation is drawn for real
      if (g_zero && g_attempt < 0 && r != Redraw::Perturbation) {
        ++failures_this_g;
        if (failures_this_g >= 2) r = Redraw::Perturbation;
      }
      auto bump = [&](const char* key) {
        int& c = rep.retries[key];
        if (++c > cfg.max_retries)
          throw RetriesExhausted(std::string("retries exhausted at stage '") + key +
                                 "': " + err.what());
      };
      switch (r) {
        case Redraw::Lifting:
          bump("lifting");
          ++omega_attempt;
          have_sub = false;
          slack = 0;
          break;
        case Redraw::Perturbation:
          bump("perturbation");
          ++g_attempt;
          have_g = false;
          slack = 0;
          break;
        case Redraw::LinearFormU:
        case Redraw::LinearFormUt:
          bump("linear_form");
          ++u_attempt;
          break;
        case Redraw::Precision:
          if (slack > 0) {
            // one escalation was already tried; fall back to a fresh perturbation
            bump("perturbation");
            ++g_attempt;
            have_g = false;
            slack = 0;
          } else {
            bump("pade_precision");
            slack = f.n + cfg.precision_slack;
          }
          break;
        case Redraw::Everything:
        default:
          bump("consistency");
          ++omega_attempt;
          ++g_attempt;
          ++u_attempt;
          have_sub = false;
          slack = 0;
          break;
      }
    }
  }
}

namespace {

void dump_branch_file(const std::string& path, const std::vector<ChangedForm>& factors) {
  std::ofstream out(path);
  out << "[\n";
  for (size_t c = 0; c < factors.size(); ++c) {
    out << "  {\"gamma\": [";
    for (size_t i = 0; i < factors[c].gamma.size(); ++i)
      out << (i ? "," : "") << factors[c].gamma[i].get_str();
    out << "], \"m\": [";
    const auto& m = factors[c].sol.m;
    for (int j = 0; j <= m.degree(); ++j)
      out << (j ? "," : "") << "\"" << m[j].to_string() << "\"";
    out << "]}" << (c + 1 < factors.size() ? "," : "") << "\n";
  }
  out << "]\n";
}

}  // namespace

}  // namespace phsolve

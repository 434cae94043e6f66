// Command-line front end: solve / mixed-volume / subdivide / verify.
// Exit codes: 0 success (verified), 2 precondition failure, 3 retries
// exhausted, 4 verification failure, 1 other errors.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "phsolve/io.hpp"

using namespace phsolve;

namespace {

int run_solve(const std::string& input, const std::string& output, SolverConfig cfg,
              bool do_verify) {
  SparseSystem f = read_system_json(input);
  SolveReport rep = solve(f, cfg);
  std::string json = report_to_json(rep);
  if (output.empty()) {
    std::cout << json;
  } else {
    std::ofstream out(output);
    out << json;
  }
  std::cerr << "D=" << rep.D.get_str() << " E=" << rep.E.get_str()
            << " E'=" << rep.Eprime.get_str() << " deg=" << rep.solution.m.degree()
            << " retries=" << rep.total_retries() << " perturbed=" << rep.used_perturbation
            << " time=" << rep.seconds << "s\n";
  if (do_verify && !verify(rep.solution, f)) return 4;
  return rep.verified ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact geometric-solution solver for sparse polynomial systems"};
  app.require_subcommand(1);

  std::string input, output, solfile, dump_path;
  SolverConfig cfg;
  long seed = 1, rho = 100;
  int max_retries = 12;
  bool do_verify = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("input", input, "input system JSON")->required();
    cmd->add_option("--seed", seed, "random seed");
  };

  CLI::App* cmd_solve = app.add_subcommand("solve", "solve a system");
  add_common(cmd_solve);
  cmd_solve->add_option("-o,--output", output, "write the solution JSON here");
  cmd_solve->add_option("--rho", rho, "error-probability parameter (>= 4)");
  cmd_solve->add_option("--max-retries", max_retries, "per-stage retry budget");
  cmd_solve->add_flag("--verify", do_verify, "independently re-verify the output");
  cmd_solve->add_option("--threads", cfg.threads, "worker threads (default: all cores)");
  cmd_solve->add_option("--dump-branches", dump_path,
                        "write per-cell truncated series to this file");
  cmd_solve->add_flag("--no-direct", "always perturb, even if f looks generic");

  CLI::App* cmd_mv = app.add_subcommand("mixed-volume", "print the BKK bound");
  add_common(cmd_mv);

  CLI::App* cmd_sub = app.add_subcommand("subdivide", "print the induced mixed cells");
  add_common(cmd_sub);

  CLI::App* cmd_verify = app.add_subcommand("verify", "check a solution against a system");
  add_common(cmd_verify);
  cmd_verify->add_option("solution", solfile, "solution JSON")->required();

  CLI11_PARSE(app, argc, argv);

  cfg.seed = (std::uint64_t)seed;
  cfg.rho = Integer(rho);
  cfg.max_retries = max_retries;
  if (!dump_path.empty()) {
    cfg.dump_branches = true;
    cfg.dump_path = dump_path;
  }
  if (cmd_solve->count("--no-direct")) cfg.try_direct = false;

  try {
    if (app.got_subcommand(cmd_solve)) return run_solve(input, output, cfg, do_verify);
    if (app.got_subcommand(cmd_mv)) {
      SparseSystem f = read_system_json(input);
      SupportFamily fam = group_supports(f.supports);
      std::vector<std::vector<Point>> polys;
      for (int i = 0; i < f.n; ++i) polys.push_back(fam.classes[fam.class_of[i]]);
      Integer d = mixed_volume_of_polytopes(polys, f.n, cfg.seed);
      std::cout << "{\"mixed_volume\": " << d.get_str() << "}\n";
      return 0;
    }
    if (app.got_subcommand(cmd_sub)) {
      SparseSystem f = read_system_json(input);
      SubdivisionChoice sub = choose_subdivision(f, cfg);
      std::cout << subdivision_to_json(sub);
      return 0;
    }
    if (app.got_subcommand(cmd_verify)) {
      SparseSystem f = read_system_json(input);
      GeometricSolution0D sol = read_solution_json(solfile);
      bool ok = verify(sol, f);
      std::cout << (ok ? "verified\n" : "FAILED\n");
      return ok ? 0 : 4;
    }
  } catch (const PreconditionFailed& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return 2;
  } catch (const RetriesExhausted& e) {
    std::cerr << "retries exhausted: " << e.what() << "\n";
    return 3;
  } catch (const Unverifiable& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

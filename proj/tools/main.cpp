// Command-line front end: solve, environment generators, simulation, sweeps,
// gradient checking, brute-force verification, validation.
//
// Exit codes: 0 success, 1 bad input or I/O failure, 2 finished but a
// convergence or consistency check did not pass.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "occumax/environments.hpp"
#include "occumax/errors.hpp"
#include "occumax/json_io.hpp"
#include "occumax/oracle.hpp"
#include "occumax/simulator.hpp"
#include "occumax/version.hpp"

namespace {

using namespace occumax;

constexpr int kExitOk = 0;
constexpr int kExitBadInput = 1;
constexpr int kExitNotConverged = 2;

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

std::string join_args(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i) s += ' ';
    s += argv[i];
  }
  return s;
}

void emit(const Json& j, const std::string& out_path) {
  if (out_path.empty())
    std::cout << j.dump(2) << "\n";
  else
    save_json_file(out_path, j);
}

GaugeMode parse_gauge(const std::string& name) {
  if (name == "mean") return GaugeMode::kMeanZero;
  if (name == "ref") return GaugeMode::kReferenceState;
  throw CLI::ValidationError("--gauge", "expected 'mean' or 'ref'");
}

// Options shared by everything that runs the descent solver.
struct SolveOptions {
  SolverConfig config;
  std::string gauge = "mean";

  void attach(CLI::App* cmd) {
    cmd->add_option("--grad-tol", config.grad_tol, "Gradient sup-norm target");
    cmd->add_option("--value-tol", config.value_tol, "Relative decrease floor");
    cmd->add_option("--max-iters", config.max_iters, "Iteration cap");
    cmd->add_option("--v-clamp", config.v_clamp, "Value clamp width, <=0 = auto");
    cmd->add_option("--gauge", gauge, "Value gauge: mean or ref")
        ->check(CLI::IsMember({"mean", "ref"}));
  }
  SolverConfig resolved() const {
    SolverConfig c = config;
    c.gauge = parse_gauge(gauge);
    return c;
  }
};

// Applies any KL reference distributions by folding them into rewards.
Mdp effective_mdp(const MdpBundle& bundle, double alpha, double beta) {
  if (!bundle.defaults.has_policy() && !bundle.defaults.has_state_dist()) return bundle.mdp;
  return apply_kl_shift(bundle.mdp, bundle.defaults, alpha, beta);
}

std::optional<int> corridor_from_meta(const Json& meta) {
  if (meta.is_object() && meta.value("family", "") == "gridworld" && meta.contains("corridor_len"))
    return meta["corridor_len"].get<int>();
  return std::nullopt;
}

Policy policy_from_solution_file(const std::string& path, const Mdp& mdp) {
  Json j;
  try {
    j = Json::parse(read_text_file(path));
  } catch (const Json::exception& e) {
    throw IoError(path + ": " + e.what());
  }
  if (!j.contains("policy")) throw IoError(path + ": no 'policy' field");
  Policy pol;
  for (const auto& row : j["policy"]) pol.pi.push_back(row.get<std::vector<double>>());
  require_policy(mdp, pol);
  return pol;
}

Policy uniform_policy(const Mdp& mdp) {
  Policy pol;
  pol.pi = make_table(mdp);
  for (int s = 0; s < mdp.num_states; ++s) {
    const double w = 1.0 / mdp.action_count[static_cast<std::size_t>(s)];
    for (double& v : pol.pi[static_cast<std::size_t>(s)]) v = w;
  }
  return pol;
}

int cmd_solve(const std::string& mdp_path, double alpha, double beta, double ab_product,
              const std::string& method, const SolveOptions& opts, const std::string& out_path,
              const std::string& manifest_path, const std::string& cmdline) {
  Timer timer;
  const std::string raw = read_text_file(mdp_path);
  MdpBundle bundle = mdp_from_json(Json::parse(raw));
  if (ab_product > 0.0) {
    if (alpha <= 0.0) throw InvalidWeights("--ab-product needs --alpha > 0");
    beta = ab_product / alpha;
  }
  const Mdp mdp = effective_mdp(bundle, alpha, beta);
  const SolverConfig config = opts.resolved();

  Json out;
  bool converged = false;
  if (method == "fixed-point") {
    FixedPointSolution fp = solve_fixed_point(mdp, alpha, beta, config);
    converged = fp.converged;
    out = solution_to_json(fp);
  } else if (alpha > 0.0 && beta > 0.0) {
    DualSolution sol = minimize_dual(mdp, alpha, beta, config);
    converged = sol.converged;
    out = solution_to_json(sol);
  } else if (beta == 0.0 && alpha > 0.0) {
    LimitSolution sol = solve_beta_zero(mdp, alpha, config);
    converged = sol.converged;
    out = solution_to_json(sol);
  } else if (alpha == 0.0 && beta > 0.0) {
    LimitSolution sol = solve_alpha_zero(mdp, beta, config);
    converged = sol.converged;
    out = solution_to_json(sol);
  } else if (alpha == 0.0 && beta == 0.0) {
    LimitSolution sol = solve_unregularized(mdp, config);
    converged = sol.converged;
    out = solution_to_json(sol);
  } else {
    throw InvalidWeights("entropy weights must be non-negative");
  }
  emit(out, out_path);

  if (!manifest_path.empty()) {
    Json cfg = solver_config_to_json(config);
    cfg["alpha"] = alpha;
    cfg["beta"] = beta;
    cfg["method"] = method;
    save_json_file(manifest_path,
                   manifest_json(cmdline, {{mdp_path, hex64(fnv1a64(raw))}}, cfg, 0, timer.ms()));
  }
  return converged ? kExitOk : kExitNotConverged;
}

int cmd_toy(int n, double alpha, double beta, bool solve, const std::string& emit_path,
            const SolveOptions& opts, const std::string& out_path) {
  Json out;
  const ToyClosedForm cf = toy_closed_form(n, alpha, beta);
  out["n"] = n;
  out["alpha"] = alpha;
  out["beta"] = beta;
  out["u"] = cf.u;
  out["pi_hub"] = cf.pi_hub;
  out["p_hub"] = cf.p_hub;
  out["p_inner"] = cf.p_inner;

  const Mdp mdp = make_toy(n);
  if (!emit_path.empty()) {
    Json meta;
    meta["family"] = "toy";
    meta["n"] = n;
    save_json_file(emit_path, mdp_to_json(mdp, {}, meta));
  }
  bool converged = true;
  if (solve) {
    if (alpha > 0.0 && beta > 0.0) {
      DualSolution sol = minimize_dual(mdp, alpha, beta, opts.resolved());
      converged = sol.converged;
      out["solution"] = solution_to_json(sol);
      out["u_solver"] = sol.v_star[0] - sol.v_star[2];
    } else if (beta == 0.0) {
      LimitSolution sol = solve_beta_zero(mdp, alpha, opts.resolved());
      converged = sol.converged;
      out["solution"] = solution_to_json(sol);
      out["u_solver"] = sol.v_star[0] - sol.v_star[2];
    } else {
      LimitSolution sol = solve_alpha_zero(mdp, beta, opts.resolved());
      converged = sol.converged;
      out["solution"] = solution_to_json(sol);
      out["u_solver"] = sol.v_star[0] - sol.v_star[2];
    }
  }
  emit(out, out_path);
  return converged ? kExitOk : kExitNotConverged;
}

int cmd_gridworld(int corridor, const std::string& emit_path) {
  const auto [mdp, grid] = make_gridworld(corridor);
  Json meta;
  meta["family"] = "gridworld";
  meta["rows"] = grid.rows;
  meta["cols"] = grid.cols;
  meta["corridor_len"] = grid.corridor_len;
  const Json j = mdp_to_json(mdp, {}, meta);
  emit(j, emit_path);
  return kExitOk;
}

int cmd_ring(int n, const std::string& emit_path) {
  Json meta;
  meta["family"] = "ring";
  meta["n"] = n;
  const Json j = mdp_to_json(make_ring(n), {}, meta);
  emit(j, emit_path);
  return kExitOk;
}

int cmd_simulate(const std::string& mdp_path, const std::string& solution_path, bool uniform,
                 long steps, std::uint64_t seed, int init_state, int intervals,
                 const std::string& heatmap_path, bool include_sequence,
                 const std::string& out_path, const std::string& manifest_path,
                 const std::string& cmdline) {
  Timer timer;
  const std::string raw = read_text_file(mdp_path);
  MdpBundle bundle = mdp_from_json(Json::parse(raw));
  const Mdp& mdp = bundle.mdp;

  Policy pol;
  if (uniform)
    pol = uniform_policy(mdp);
  else if (!solution_path.empty())
    pol = policy_from_solution_file(solution_path, mdp);
  else
    throw std::invalid_argument("need --solution FILE or --uniform");

  const Trajectory traj = sample_trajectory(mdp, pol, steps, seed, init_state);
  Json out = trajectory_to_json(traj, include_sequence);

  const auto corridor = corridor_from_meta(bundle.meta);
  if (corridor) {
    const auto [grid_mdp, grid] = make_gridworld(*corridor);
    if (grid_mdp.num_states != mdp.num_states)
      throw IoError("gridworld meta does not match the MDP shape");
    out["corridor"] = interval_stats_to_json(corridor_fraction(traj, grid, intervals));
    if (!heatmap_path.empty())
      save_text_file(heatmap_path, heatmap_csv(occupancy_heatmap(traj.state_freq, grid)));
  } else if (!heatmap_path.empty()) {
    throw std::invalid_argument("--heatmap needs a gridworld MDP (family meta)");
  }
  emit(out, out_path);

  if (!manifest_path.empty()) {
    Json cfg;
    cfg["steps"] = steps;
    cfg["intervals"] = intervals;
    cfg["init_state"] = init_state;
    std::vector<std::pair<std::string, std::string>> hashes = {{mdp_path, hex64(fnv1a64(raw))}};
    if (!solution_path.empty())
      hashes.emplace_back(solution_path, hex64(fnv1a64(read_text_file(solution_path))));
    save_json_file(manifest_path, manifest_json(cmdline, hashes, cfg, seed, timer.ms()));
  }
  return kExitOk;
}

int cmd_sweep(int corridor, std::vector<double> alphas, std::vector<double> betas,
              double ab_product, long steps, int intervals, std::uint64_t seed, int jobs,
              const SolveOptions& opts, const std::string& out_path) {
  if (alphas.empty()) throw std::invalid_argument("--alphas must not be empty");
  struct Task {
    double alpha, beta;
  };
  std::vector<Task> tasks;
  if (ab_product > 0.0) {
    for (double a : alphas) {
      if (a <= 0.0) throw InvalidWeights("--ab-product needs positive alphas");
      tasks.push_back({a, ab_product / a});
    }
  } else {
    if (betas.empty()) throw std::invalid_argument("need --betas or --ab-product");
    for (double a : alphas)
      for (double b : betas) tasks.push_back({a, b});
  }

  const auto [mdp, grid] = make_gridworld(corridor);
  const SolverConfig config = opts.resolved();

  struct Row {
    double alpha = 0, beta = 0, mean = 0, se = 0, r_max = 0;
    long iterations = 0;
    bool converged = false;
  };
  std::vector<Row> rows(tasks.size());
  std::atomic<std::size_t> cursor{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= tasks.size()) return;
      const Task& t = tasks[i];
      DualSolution sol = minimize_dual(mdp, t.alpha, t.beta, config);
      // One trajectory per cell; the seed is split by task index so cells
      // stay reproducible independent of scheduling.
      const Trajectory traj =
          sample_trajectory(mdp, sol.pi_star, steps, seed + static_cast<std::uint64_t>(i));
      const IntervalStats st = corridor_fraction(traj, grid, intervals);
      rows[i] = {t.alpha, t.beta,   st.mean, st.std_error, sol.r_max,
                 sol.iterations, sol.converged};
    }
  };
  const int nthreads = std::max(1, std::min<int>(jobs, static_cast<int>(tasks.size())));
  std::vector<std::thread> pool;
  for (int k = 0; k < nthreads; ++k) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  std::ostringstream csv;
  csv.precision(12);
  csv << "alpha,beta,corridor_fraction_mean,corridor_fraction_se,r_max,iterations,converged\n";
  bool all_converged = true;
  for (const Row& r : rows) {
    csv << r.alpha << ',' << r.beta << ',' << r.mean << ',' << r.se << ',' << r.r_max << ','
        << r.iterations << ',' << (r.converged ? 1 : 0) << '\n';
    all_converged = all_converged && r.converged;
  }
  if (out_path.empty())
    std::cout << csv.str();
  else
    save_text_file(out_path, csv.str());
  return all_converged ? kExitOk : kExitNotConverged;
}

int cmd_check_grad(const std::string& mdp_path, double alpha, double beta, double eps,
                   std::uint64_t seed, const std::string& out_path) {
  MdpBundle bundle = load_mdp_file(mdp_path);
  const Mdp mdp = effective_mdp(bundle, alpha, beta);
  std::mt19937_64 rng(seed);
  ValueVector v(static_cast<std::size_t>(mdp.num_states));
  for (double& x : v) x = 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
  const auto analytic = dual_gradient(v, mdp, alpha, beta);
  const auto numeric = finite_difference_gradient(v, mdp, alpha, beta, eps);
  double worst = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i)
    worst = std::max(worst, std::abs(analytic[i] - numeric[i]));
  Json out;
  out["alpha"] = alpha;
  out["beta"] = beta;
  out["eps"] = eps;
  out["seed"] = seed;
  out["max_abs_diff"] = worst;
  const bool ok = worst < 1e-5;
  out["ok"] = ok;
  emit(out, out_path);
  return ok ? kExitOk : kExitNotConverged;
}

int cmd_oracle(const std::string& mdp_path, double alpha, double beta, double resolution,
               bool compare, const SolveOptions& opts, const std::string& out_path) {
  MdpBundle bundle = load_mdp_file(mdp_path);
  const Mdp mdp = effective_mdp(bundle, alpha, beta);
  const OracleResult res = brute_force_primal(mdp, alpha, beta, resolution);
  Json out;
  out["alpha"] = alpha;
  out["beta"] = beta;
  out["resolution"] = res.grid_resolution;
  out["evaluations"] = res.evaluations;
  out["best_value"] = res.best_value;
  Json pol = Json::array();
  for (const auto& row : res.best_policy.pi) pol.push_back(row);
  out["best_policy"] = std::move(pol);
  bool ok = true;
  if (compare) {
    if (!(alpha > 0.0 && beta > 0.0))
      throw InvalidWeights("--compare needs positive alpha and beta");
    DualSolution sol = minimize_dual(mdp, alpha, beta, opts.resolved());
    out["solver_r_max"] = sol.r_max;
    out["gap"] = sol.r_max - res.best_value;
    // The lattice best can only undershoot the true optimum.
    ok = sol.converged && sol.r_max >= res.best_value - 1e-9;
    out["ok"] = ok;
  }
  emit(out, out_path);
  return ok ? kExitOk : kExitNotConverged;
}

int cmd_validate(const std::string& mdp_path, const std::string& out_path) {
  Json j;
  try {
    j = Json::parse(read_text_file(mdp_path));
  } catch (const Json::exception& e) {
    throw IoError(mdp_path + ": " + e.what());
  }
  Json out;
  try {
    MdpBundle bundle = mdp_from_json(j);
    const ReachabilityReport rep = reachability_check(bundle.mdp);
    out["valid"] = true;
    out["num_states"] = bundle.mdp.num_states;
    out["total_pairs"] = bundle.mdp.total_pairs();
    out["communicating"] = rep.communicating;
    out["num_components"] = rep.num_components;
    Json absorbing = Json::array();
    for (int s = 0; s < bundle.mdp.num_states; ++s)
      if (rep.absorbing[static_cast<std::size_t>(s)]) absorbing.push_back(s);
    out["absorbing_states"] = std::move(absorbing);
    emit(out, out_path);
    return kExitOk;
  } catch (const std::invalid_argument& e) {
    out["valid"] = false;
    out["error"] = e.what();
    emit(out, out_path);
    return kExitBadInput;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Average-reward MDP solvers with entropy-regularized occupancy objectives"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);
  const std::string cmdline = join_args(argc, argv);

  // solve
  auto* solve = app.add_subcommand("solve", "Solve an MDP from a JSON file");
  std::string mdp_path, out_path, manifest_path, method = "auto";
  double alpha = 1.0, beta = 1.0, ab_product = 0.0;
  SolveOptions solve_opts;
  solve->add_option("--mdp", mdp_path, "MDP JSON file")->required();
  solve->add_option("--alpha", alpha, "Action-entropy weight")->check(CLI::NonNegativeNumber);
  auto* beta_opt =
      solve->add_option("--beta", beta, "State-entropy weight")->check(CLI::NonNegativeNumber);
  solve->add_option("--ab-product", ab_product, "Sets beta = product / alpha")
      ->excludes(beta_opt);
  solve->add_option("--method", method, "auto, dual or fixed-point")
      ->check(CLI::IsMember({"auto", "dual", "fixed-point"}));
  solve_opts.attach(solve);
  solve->add_option("--out", out_path, "Solution JSON path (default stdout)");
  solve->add_option("--manifest", manifest_path, "Write a run manifest here");

  // toy
  auto* toy = app.add_subcommand("toy", "Closed forms for the two-hub family");
  int toy_n = 1;
  double toy_alpha = 1.0, toy_beta = 1.0;
  bool toy_solve = false;
  std::string toy_emit, toy_out;
  SolveOptions toy_opts;
  toy->add_option("--n", toy_n, "Interior state count")->required()->check(CLI::PositiveNumber);
  toy->add_option("--alpha", toy_alpha)->check(CLI::NonNegativeNumber);
  toy->add_option("--beta", toy_beta)->check(CLI::NonNegativeNumber);
  toy->add_flag("--solve", toy_solve, "Also run the matching solver and report its gap");
  toy->add_option("--emit", toy_emit, "Write the toy MDP JSON here");
  toy_opts.attach(toy);
  toy->add_option("--out", toy_out, "Output path (default stdout)");

  // gridworld / ring generators
  auto* gridworld = app.add_subcommand("gridworld", "Emit the room-and-corridor gridworld");
  int corridor = 5;
  std::string grid_emit;
  gridworld->add_option("--corridor", corridor, "Corridor length")->check(CLI::PositiveNumber);
  gridworld->add_option("--out", grid_emit, "MDP JSON path (default stdout)");

  auto* ring = app.add_subcommand("ring", "Emit the two-action cycle walker");
  int ring_n = 4;
  std::string ring_emit;
  ring->add_option("--n", ring_n, "Number of states")->check(CLI::Range(2, 1000000));
  ring->add_option("--out", ring_emit, "MDP JSON path (default stdout)");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Roll a policy forward and report statistics");
  std::string sim_mdp, sim_solution, sim_heatmap, sim_out, sim_manifest;
  bool sim_uniform = false, sim_sequence = false;
  long sim_steps = 100000;
  std::uint64_t sim_seed = 12345;
  int sim_init = -1, sim_intervals = 10;
  simulate->add_option("--mdp", sim_mdp, "MDP JSON file")->required();
  simulate->add_option("--solution", sim_solution, "Solution JSON providing the policy");
  simulate->add_flag("--uniform", sim_uniform, "Use the uniform policy");
  simulate->add_option("--steps", sim_steps)->check(CLI::PositiveNumber);
  simulate->add_option("--seed", sim_seed, "RNG seed")->envname("OCCUMAX_SEED");
  simulate->add_option("--init", sim_init, "Initial state, -1 = uniform");
  simulate->add_option("--intervals", sim_intervals, "Intervals for corridor statistics");
  simulate->add_option("--heatmap", sim_heatmap, "Write a CSV cell-frequency heatmap");
  simulate->add_flag("--sequence", sim_sequence, "Include the full state/action sequence");
  simulate->add_option("--out", sim_out, "Stats JSON path (default stdout)");
  simulate->add_option("--manifest", sim_manifest, "Write a run manifest here");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Gridworld sweep over entropy weights");
  int sweep_corridor = 5, sweep_intervals = 20, sweep_jobs = 1;
  long sweep_steps = 200000;
  std::uint64_t sweep_seed = 12345;
  double sweep_product = 0.0;
  std::vector<double> sweep_alphas, sweep_betas;
  std::string sweep_out;
  SolveOptions sweep_opts;
  sweep->add_option("--corridor", sweep_corridor)->check(CLI::PositiveNumber);
  sweep->add_option("--alphas", sweep_alphas, "Alpha values")->required()->delimiter(',');
  sweep->add_option("--betas", sweep_betas, "Beta values")->delimiter(',');
  sweep->add_option("--ab-product", sweep_product, "Fix alpha*beta; betas are derived");
  sweep->add_option("--steps", sweep_steps)->check(CLI::PositiveNumber);
  sweep->add_option("--intervals", sweep_intervals)->check(CLI::Range(2, 1000000));
  sweep->add_option("--seed", sweep_seed, "Base RNG seed")->envname("OCCUMAX_SEED");
  sweep->add_option("--jobs", sweep_jobs, "Worker threads")->check(CLI::PositiveNumber);
  sweep_opts.attach(sweep);
  sweep->add_option("--out", sweep_out, "CSV path (default stdout)");

  // check-grad
  auto* check = app.add_subcommand("check-grad", "Compare analytic and numeric dual gradients");
  std::string check_mdp, check_out;
  double check_alpha = 1.0, check_beta = 1.0, check_eps = 1e-6;
  std::uint64_t check_seed = 12345;
  check->add_option("--mdp", check_mdp)->required();
  check->add_option("--alpha", check_alpha)->check(CLI::PositiveNumber);
  check->add_option("--beta", check_beta)->check(CLI::PositiveNumber);
  check->add_option("--eps", check_eps, "Finite-difference step");
  check->add_option("--seed", check_seed, "Seed for the probe point")->envname("OCCUMAX_SEED");
  check->add_option("--out", check_out, "Output path (default stdout)");

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Brute-force the primal on a tiny MDP");
  std::string oracle_mdp, oracle_out;
  double oracle_alpha = 1.0, oracle_beta = 1.0, oracle_res = 0.05;
  bool oracle_compare = false;
  SolveOptions oracle_opts;
  oracle->add_option("--mdp", oracle_mdp)->required();
  oracle->add_option("--alpha", oracle_alpha)->check(CLI::NonNegativeNumber);
  oracle->add_option("--beta", oracle_beta)->check(CLI::NonNegativeNumber);
  oracle->add_option("--resolution", oracle_res, "Simplex lattice spacing");
  oracle->add_flag("--compare", oracle_compare, "Also solve and report the gap");
  oracle_opts.attach(oracle);
  oracle->add_option("--out", oracle_out, "Output path (default stdout)");

  // validate
  auto* validate = app.add_subcommand("validate", "Check an MDP JSON file");
  std::string validate_mdp, validate_out;
  validate->add_option("--mdp", validate_mdp)->required();
  validate->add_option("--out", validate_out, "Report path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadInput;
  }

  try {
    if (solve->parsed())
      return cmd_solve(mdp_path, alpha, beta, ab_product, method, solve_opts, out_path,
                       manifest_path, cmdline);
    if (toy->parsed())
      return cmd_toy(toy_n, toy_alpha, toy_beta, toy_solve, toy_emit, toy_opts, toy_out);
    if (gridworld->parsed()) return cmd_gridworld(corridor, grid_emit);
    if (ring->parsed()) return cmd_ring(ring_n, ring_emit);
    if (simulate->parsed())
      return cmd_simulate(sim_mdp, sim_solution, sim_uniform, sim_steps, sim_seed, sim_init,
                          sim_intervals, sim_heatmap, sim_sequence, sim_out, sim_manifest,
                          cmdline);
    if (sweep->parsed())
      return cmd_sweep(sweep_corridor, sweep_alphas, sweep_betas, sweep_product, sweep_steps,
                       sweep_intervals, sweep_seed, sweep_jobs, sweep_opts, sweep_out);
    if (check->parsed())
      return cmd_check_grad(check_mdp, check_alpha, check_beta, check_eps, check_seed, check_out);
    if (oracle->parsed())
      return cmd_oracle(oracle_mdp, oracle_alpha, oracle_beta, oracle_res, oracle_compare,
                        oracle_opts, oracle_out);
    if (validate->parsed()) return cmd_validate(validate_mdp, validate_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return kExitOk;
}

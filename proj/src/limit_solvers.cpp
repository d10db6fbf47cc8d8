#include "occumax/limit_solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "occumax/errors.hpp"

namespace occumax {

namespace {

constexpr double kDamping = 0.5;
constexpr double kTieTol = 1e-9;

// Soft (alpha > 0) or hard (alpha == 0) Bellman backup per state.
std::vector<double> bellman_backup(const ValueVector& v, const Mdp& mdp,
                                   double alpha) {
  std::vector<double> out(mdp.num_states);
  std::vector<double> q;
  for (int s = 0; s < mdp.num_states; ++s) {
    q.assign(mdp.action_count[s], 0.0);
    for (int a = 0; a < mdp.action_count[s]; ++a) {
      double ev = 0.0;
      for (const Transition& t : mdp.transitions[s][a])
        ev += v[t.next] * t.prob;
      q[a] = mdp.rewards[s][a] + ev;
    }
    double m = q[0];
    for (double x : q) m = std::max(m, x);
    if (alpha > 0.0) {
      double acc = 0.0;
      for (double x : q) acc += std::exp((x - m) / alpha);
      out[s] = m + alpha * std::log(acc);
    } else {
      out[s] = m;
    }
  }
  return out;
}

struct RelativeVi {
  ValueVector v;
  double eta = 0.0;
  long iterations = 0;
  bool converged = false;
};

// Damped relative value iteration anchored at state 0. Stops when the span
// of T(V) - V collapses; the mid-span is the gain estimate.
RelativeVi relative_value_iteration(const Mdp& mdp, double alpha,
                                    const SolverConfig& config) {
  RelativeVi res;
  res.v.assign(mdp.num_states, 0.0);
  const double tol = std::max(config.value_tol, 1e-14);
  for (long it = 1; it <= config.max_iters; ++it) {
    const auto tv = bellman_backup(res.v, mdp, alpha);
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (int s = 0; s < mdp.num_states; ++s) {
      const double d = tv[s] - res.v[s];
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
    res.eta = 0.5 * (lo + hi);
    res.iterations = it;
    if (hi - lo < tol) {
      res.converged = true;
      break;
    }
    const double ref = tv[0] - res.v[0];
    for (int s = 0; s < mdp.num_states; ++s)
      res.v[s] += kDamping * (tv[s] - res.v[s] - ref);
  }
  return res;
}

void require_communicating(const ReachabilityReport& reach, const char* who) {
  if (!reach.communicating)
    throw NotCommunicating(std::string(who) +
                           ": the MDP must be communicating (strongly "
                           "connected support graph)");
}

void fill_occupancy(LimitSolution& sol, const Mdp& mdp) {
  auto occ = occupancy_from_policy(mdp, sol.pi_star);
  sol.p_star = std::move(occ.occupancy);
  sol.state_dist = std::move(occ.state_dist);
}

void mean_zero(ValueVector& v, const ReachabilityReport& reach) {
  apply_gauge(v, reach.component, reach.num_components, GaugeMode::kMeanZero);
}

}  // namespace

const char* regime_name(LimitRegime regime) {
  switch (regime) {
    case LimitRegime::kBetaZero: return "beta-zero";
    case LimitRegime::kAlphaZero: return "alpha-zero";
    default: return "unregularized";
  }
}

LimitSolution solve_beta_zero(const Mdp& mdp, double alpha,
                              const SolverConfig& config) {
  if (!(alpha > 0.0))
    throw InvalidWeights("solve_beta_zero: requires alpha > 0");
  require_valid(mdp);
  const auto reach = reachability_check(mdp);
  require_communicating(reach, "solve_beta_zero");

  const RelativeVi vi = relative_value_iteration(mdp, alpha, config);

  LimitSolution sol;
  sol.regime = LimitRegime::kBetaZero;
  sol.alpha = alpha;
  sol.beta = 0.0;
  sol.eta = vi.eta;
  sol.iterations = vi.iterations;
  sol.converged = vi.converged;
  sol.v_star = vi.v;
  mean_zero(sol.v_star, reach);

  const AdvantageTable a = advantage(sol.v_star, mdp);
  sol.pi_star.pi = make_table(mdp);
  for (int s = 0; s < mdp.num_states; ++s) {
    double m = a[s][0];
    for (double x : a[s]) m = std::max(m, x);
    double acc = 0.0;
    for (int ai = 0; ai < mdp.action_count[s]; ++ai)
      acc += std::exp((a[s][ai] - m) / alpha);
    for (int ai = 0; ai < mdp.action_count[s]; ++ai)
      sol.pi_star.pi[s][ai] = std::exp((a[s][ai] - m) / alpha) / acc;
  }
  fill_occupancy(sol, mdp);
  return sol;
}

LimitSolution solve_unregularized(const Mdp& mdp, const SolverConfig& config) {
  require_valid(mdp);
  const auto reach = reachability_check(mdp);
  require_communicating(reach, "solve_unregularized");

  const RelativeVi vi = relative_value_iteration(mdp, 0.0, config);

  LimitSolution sol;
  sol.regime = LimitRegime::kUnregularized;
  sol.alpha = 0.0;
  sol.beta = 0.0;
  sol.eta = vi.eta;
  sol.iterations = vi.iterations;
  sol.converged = vi.converged;
  sol.v_star = vi.v;
  mean_zero(sol.v_star, reach);

  const AdvantageTable a = advantage(sol.v_star, mdp);
  sol.pi_star.pi = make_table(mdp);
  for (int s = 0; s < mdp.num_states; ++s) {
    double m = a[s][0];
    for (double x : a[s]) m = std::max(m, x);
    std::vector<int> ties;
    for (int ai = 0; ai < mdp.action_count[s]; ++ai)
      if (a[s][ai] >= m - kTieTol * (1.0 + std::abs(m))) ties.push_back(ai);
    sol.pi_star.pi[s][ties.front()] = 1.0;  // lowest-index tie break
    if (ties.size() > 1) {
      sol.unique_policy = false;
      sol.tie_states.push_back(s);
      sol.tie_sets.push_back(ties);
    }
  }
  fill_occupancy(sol, mdp);
  return sol;
}

LimitSolution solve_alpha_zero(const Mdp& mdp, double beta,
                               const SolverConfig& config) {
  if (!(beta > 0.0))
    throw InvalidWeights("solve_alpha_zero: requires beta > 0");
  require_valid(mdp);
  const auto reach = reachability_check(mdp);

  // Smoothing ladder, warm-started; eps is alpha/beta.
  const double ladder[] = {1e-1, 1e-2, 1e-3};
  ValueVector warm;
  DualSolution prev, last;
  long total_iters = 0;
  bool all_converged = true;
  for (double eps : ladder) {
    DualSolution rung = minimize_dual(mdp, eps * beta, beta, config, warm);
    total_iters += rung.iterations;
    all_converged = all_converged && rung.converged;
    warm = rung.v_star;
    prev = std::move(last);
    last = std::move(rung);
  }

  LimitSolution sol;
  sol.regime = LimitRegime::kAlphaZero;
  sol.alpha = 0.0;
  sol.beta = beta;
  sol.smoothing_eps = ladder[2];
  sol.iterations = total_iters;
  sol.converged = all_converged;

  // Linear-in-eps Richardson step: x(0) ~ x3 + (x3 - x2) * e3/(e2 - e3).
  const double w = ladder[2] / (ladder[1] - ladder[2]);
  sol.v_star.resize(mdp.num_states);
  for (int s = 0; s < mdp.num_states; ++s)
    sol.v_star[s] = last.v_star[s] + (last.v_star[s] - prev.v_star[s]) * w;
  mean_zero(sol.v_star, reach);
  sol.eta = last.r_max + (last.r_max - prev.r_max) * w;

  // Greedy policy from the extrapolated values; the smoothing-path occupancy
  // is the limit representative (the greedy policy alone can be degenerate).
  const AdvantageTable a = advantage(sol.v_star, mdp);
  sol.pi_star.pi = make_table(mdp);
  for (int s = 0; s < mdp.num_states; ++s) {
    double m = a[s][0];
    for (double x : a[s]) m = std::max(m, x);
    std::vector<int> ties;
    for (int ai = 0; ai < mdp.action_count[s]; ++ai)
      if (a[s][ai] >= m - kTieTol * (1.0 + std::abs(m))) ties.push_back(ai);
    sol.pi_star.pi[s][ties.front()] = 1.0;
    if (ties.size() > 1) {
      sol.unique_policy = false;
      sol.tie_states.push_back(s);
      sol.tie_sets.push_back(ties);
    }
  }
  sol.p_star = last.p_star;
  sol.state_dist = last.state_dist;
  return sol;
}

}  // namespace occumax

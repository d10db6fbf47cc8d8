#include "occumax/primal.hpp"

#include <cmath>
#include <cstdlib>

#include "occumax/errors.hpp"

namespace occumax {

void require_occupancy(const Mdp& mdp, const Occupancy& occ, double tol) {
  if (static_cast<int>(occ.p.size()) != mdp.num_states)
    throw std::invalid_argument("occupancy: wrong number of states");
  double sum = 0.0;
  for (int s = 0; s < mdp.num_states; ++s) {
    if (static_cast<int>(occ.p[s].size()) != mdp.action_count[s])
      throw std::invalid_argument("occupancy: row shape mismatch");
    for (double v : occ.p[s]) {
      if (!(v >= 0.0) || !std::isfinite(v))
        throw std::invalid_argument("occupancy: entry negative or not finite");
      sum += v;
    }
  }
  if (std::abs(sum - 1.0) > tol)
    throw std::invalid_argument("occupancy: entries do not sum to 1");
}

void require_policy(const Mdp& mdp, const Policy& policy, double tol) {
  if (static_cast<int>(policy.pi.size()) != mdp.num_states)
    throw std::invalid_argument("policy: wrong number of states");
  for (int s = 0; s < mdp.num_states; ++s) {
    if (static_cast<int>(policy.pi[s].size()) != mdp.action_count[s])
      throw std::invalid_argument("policy: row shape mismatch");
    double sum = 0.0;
    for (double v : policy.pi[s]) {
      if (!(v >= 0.0) || !std::isfinite(v))
        throw std::invalid_argument("policy: entry negative or not finite");
      sum += v;
    }
    if (std::abs(sum - 1.0) > tol)
      throw std::invalid_argument("policy: row does not sum to 1");
  }
}

std::vector<double> state_marginals(const Occupancy& occ) {
  std::vector<double> m(occ.p.size(), 0.0);
  for (size_t s = 0; s < occ.p.size(); ++s)
    for (double v : occ.p[s]) m[s] += v;
  return m;
}

double average_total_reward(const Occupancy& occ, const Mdp& mdp, double alpha,
                            double beta) {
  if (alpha < 0.0 || beta < 0.0)
    throw InvalidWeights("average_total_reward: weights must be non-negative");
  require_occupancy(mdp, occ);

  double reward = 0.0, joint_plogp = 0.0, state_plogp = 0.0;
  for (int s = 0; s < mdp.num_states; ++s) {
    double m = 0.0;
    for (int a = 0; a < mdp.action_count[s]; ++a) {
      const double v = occ.p[s][a];
      reward += v * mdp.rewards[s][a];
      if (v > 0.0) joint_plogp += v * std::log(v);
      m += v;
    }
    if (m > 0.0) state_plogp += m * std::log(m);
  }
  return reward - alpha * joint_plogp - (beta - alpha) * state_plogp;
}

double directional_second_derivative(const Occupancy& occ, const Direction& dir,
                                     const Mdp& mdp, double alpha, double beta) {
  require_occupancy(mdp, occ);
  if (dir.u.size() != occ.p.size())
    throw std::invalid_argument("direction: shape mismatch");
  double total_u = 0.0;
  for (int s = 0; s < mdp.num_states; ++s) {
    if (dir.u[s].size() != occ.p[s].size())
      throw std::invalid_argument("direction: row shape mismatch");
    for (int a = 0; a < mdp.action_count[s]; ++a) {
      if (occ.p[s][a] <= 0.0)
        throw std::invalid_argument(
            "directional_second_derivative: p must be strictly positive");
      total_u += dir.u[s][a];
    }
  }
  if (std::abs(total_u) > 1e-12)
    throw std::invalid_argument("direction: entries must sum to 0");

  double action_part = 0.0, state_part = 0.0;
  for (int s = 0; s < mdp.num_states; ++s) {
    double usum = 0.0, psum = 0.0, ratio = 0.0;
    for (int a = 0; a < mdp.action_count[s]; ++a) {
      const double u = dir.u[s][a], p = occ.p[s][a];
      ratio += u * u / p;
      usum += u;
      psum += p;
    }
    action_part += ratio - usum * usum / psum;
    state_part += usum * usum / psum;
  }
  return -alpha * action_part - beta * state_part;
}

namespace {

// Dense row-stochastic chain T(s -> s') under the policy.
std::vector<std::vector<double>> policy_chain(const Mdp& mdp,
                                              const Policy& policy) {
  std::vector<std::vector<double>> T(
      mdp.num_states, std::vector<double>(mdp.num_states, 0.0));
  for (int s = 0; s < mdp.num_states; ++s)
    for (int a = 0; a < mdp.action_count[s]; ++a) {
      const double w = policy.pi[s][a];
      if (w == 0.0) continue;
      for (const Transition& t : mdp.transitions[s][a])
        T[s][t.next] += w * t.prob;
    }
  return T;
}

}  // namespace

StationaryResult stationary_distribution(const Mdp& mdp, const Policy& policy,
                                         const std::vector<double>& init,
                                         const StationaryOptions& opts) {
  require_valid(mdp);
  require_policy(mdp, policy);
  const int n = mdp.num_states;

  std::vector<double> d;
  if (init.empty()) {
    d.assign(n, 1.0 / n);
  } else {
    if (static_cast<int>(init.size()) != n)
      throw std::invalid_argument("stationary_distribution: init size mismatch");
    double sum = 0.0;
    for (double v : init) {
      if (!(v >= 0.0) || !std::isfinite(v))
        throw std::invalid_argument(
            "stationary_distribution: init entry negative or not finite");
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-10)
      throw std::invalid_argument("stationary_distribution: init must sum to 1");
    d = init;
  }

  const auto T = policy_chain(mdp, policy);
  StationaryResult res;
  std::vector<double> next(n, 0.0);
  for (long it = 1; it <= opts.max_iters; ++it) {
    for (int t = 0; t < n; ++t) next[t] = 0.0;
    for (int s = 0; s < n; ++s) {
      const double ds = d[s];
      if (ds == 0.0) continue;
      for (int t = 0; t < n; ++t) next[t] += ds * T[s][t];
    }
    double diff = 0.0, sum = 0.0;
    for (int t = 0; t < n; ++t) {
      next[t] = 0.5 * (d[t] + next[t]);
      sum += next[t];
    }
    for (int t = 0; t < n; ++t) {
      next[t] /= sum;
      diff = std::max(diff, std::abs(next[t] - d[t]));
    }
    d.swap(next);
    res.iterations = it;
    if (diff < opts.tol) {
      res.converged = true;
      break;
    }
  }
  res.dist = std::move(d);
  return res;
}

PolicyOccupancy occupancy_from_policy(const Mdp& mdp, const Policy& policy,
                                      const std::vector<double>& init,
                                      const StationaryOptions& opts) {
  auto stat = stationary_distribution(mdp, policy, init, opts);
  PolicyOccupancy out;
  out.occupancy.p = make_table(mdp);
  for (int s = 0; s < mdp.num_states; ++s)
    for (int a = 0; a < mdp.action_count[s]; ++a)
      out.occupancy.p[s][a] = policy.pi[s][a] * stat.dist[s];
  out.state_dist = std::move(stat.dist);
  out.iterations = stat.iterations;
  out.converged = stat.converged;
  return out;
}

Policy policy_from_joint(const Occupancy& occ, const Mdp& mdp) {
  require_occupancy(mdp, occ);
  Policy policy;
  policy.pi = make_table(mdp);
  const auto m = state_marginals(occ);
  for (int s = 0; s < mdp.num_states; ++s) {
    const int k = mdp.action_count[s];
    if (m[s] > kSupportThreshold) {
      for (int a = 0; a < k; ++a) policy.pi[s][a] = occ.p[s][a] / m[s];
    } else {
      for (int a = 0; a < k; ++a) policy.pi[s][a] = 1.0 / k;
    }
  }
  return policy;
}

double flow_residual(const Mdp& mdp, const Occupancy& occ) {
  const auto m = state_marginals(occ);
  std::vector<double> inflow(mdp.num_states, 0.0);
  for (int s = 0; s < mdp.num_states; ++s)
    for (int a = 0; a < mdp.action_count[s]; ++a) {
      const double v = occ.p[s][a];
      if (v == 0.0) continue;
      for (const Transition& t : mdp.transitions[s][a])
        inflow[t.next] += v * t.prob;
    }
  double res = 0.0;
  for (int s = 0; s < mdp.num_states; ++s)
    res = std::max(res, std::abs(inflow[s] - m[s]));
  return res;
}

}  // namespace occumax

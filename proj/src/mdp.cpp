#include "occumax/mdp.hpp"

#include <cmath>
#include <cstdlib>
#include <queue>
#include <sstream>

#include "occumax/errors.hpp"

namespace occumax {

int Mdp::total_pairs() const {
  int n = 0;
  for (int k : action_count) n += k;
  return n;
}

Table make_table(const Mdp& mdp, double fill) {
  Table t(mdp.num_states);
  for (int s = 0; s < mdp.num_states; ++s)
    t[s].assign(mdp.action_count[s], fill);
  return t;
}

std::vector<Violation> validate_mdp(const Mdp& mdp) {
  std::vector<Violation> out;
  auto add = [&out](int s, int a, std::string msg) {
    out.push_back({s, a, std::move(msg)});
  };

  if (mdp.num_states < 1) {
    add(-1, -1, "num_states must be at least 1");
    return out;
  }
  const size_t n = static_cast<size_t>(mdp.num_states);
  if (mdp.action_count.size() != n || mdp.transitions.size() != n ||
      mdp.rewards.size() != n) {
    add(-1, -1, "action_count/transitions/rewards length must equal num_states");
    return out;
  }
  if (!mdp.state_names.empty() && mdp.state_names.size() != n)
    add(-1, -1, "state_names length must equal num_states when present");

  for (int s = 0; s < mdp.num_states; ++s) {
    const int k = mdp.action_count[s];
    if (k < 1) {
      add(s, -1, "state has no actions");
      continue;
    }
    if (static_cast<int>(mdp.transitions[s].size()) != k ||
        static_cast<int>(mdp.rewards[s].size()) != k) {
      add(s, -1, "transition/reward row count does not match action_count");
      continue;
    }
    for (int a = 0; a < k; ++a) {
      if (!std::isfinite(mdp.rewards[s][a]))
        add(s, a, "reward is not finite");
      const auto& row = mdp.transitions[s][a];
      if (row.empty()) {
        add(s, a, "transition row is empty");
        continue;
      }
      double sum = 0.0;
      for (const Transition& t : row) {
        if (t.next < 0 || t.next >= mdp.num_states)
          add(s, a, "transition target out of range");
        if (!(t.prob >= 0.0) || !std::isfinite(t.prob))
          add(s, a, "transition probability negative or not finite");
        sum += t.prob;
      }
      if (std::abs(sum - 1.0) > 1e-12)
        add(s, a, "transition probabilities do not sum to 1");
    }
  }
  return out;
}

std::string format_violations(const std::vector<Violation>& violations) {
  std::ostringstream os;
  for (size_t i = 0; i < violations.size(); ++i) {
    const Violation& v = violations[i];
    if (i) os << "; ";
    if (v.state >= 0) {
      os << "state " << v.state;
      if (v.action >= 0) os << " action " << v.action;
      os << ": ";
    }
    os << v.message;
  }
  return os.str();
}

void require_valid(const Mdp& mdp) {
  auto violations = validate_mdp(mdp);
  if (!violations.empty())
    throw InvalidMdp("invalid MDP: " + format_violations(violations));
}

std::vector<Violation> validate_defaults(const Mdp& mdp,
                                         const DefaultDistributions& defaults) {
  std::vector<Violation> out;
  auto add = [&out](int s, int a, std::string msg) {
    out.push_back({s, a, std::move(msg)});
  };
  const size_t n = static_cast<size_t>(mdp.num_states);

  if (defaults.has_policy()) {
    if (defaults.policy.size() != n) {
      add(-1, -1, "default policy length must equal num_states");
    } else {
      for (int s = 0; s < mdp.num_states; ++s) {
        const auto& row = defaults.policy[s];
        if (static_cast<int>(row.size()) != mdp.action_count[s]) {
          add(s, -1, "default policy row does not match action_count");
          continue;
        }
        double sum = 0.0;
        for (int a = 0; a < mdp.action_count[s]; ++a) {
          if (!(row[a] >= 0.0) || !std::isfinite(row[a]))
            add(s, a, "default policy entry negative or not finite");
          sum += row[a];
        }
        if (std::abs(sum - 1.0) > 1e-10)
          add(s, -1, "default policy row does not sum to 1");
      }
    }
  }
  if (defaults.has_state_dist()) {
    if (defaults.state_dist.size() != n) {
      add(-1, -1, "default state_dist length must equal num_states");
    } else {
      double sum = 0.0;
      for (int s = 0; s < mdp.num_states; ++s) {
        double v = defaults.state_dist[s];
        if (!(v >= 0.0) || !std::isfinite(v))
          add(s, -1, "default state_dist entry negative or not finite");
        sum += v;
      }
      if (std::abs(sum - 1.0) > 1e-10)
        add(-1, -1, "default state_dist does not sum to 1");
    }
  }
  return out;
}

namespace {
double floored_log(double x) { return x > 0.0 ? std::log(x) : kLogFloor; }
}  // namespace

Mdp apply_kl_shift(const Mdp& mdp, const DefaultDistributions& defaults,
                   double alpha, double beta) {
  if (alpha < 0.0 || beta < 0.0)
    throw InvalidWeights("apply_kl_shift: alpha and beta must be non-negative");
  require_valid(mdp);
  auto violations = validate_defaults(mdp, defaults);
  if (!violations.empty())
    throw InvalidMdp("invalid defaults: " + format_violations(violations));

  Mdp shifted = mdp;
  for (int s = 0; s < mdp.num_states; ++s) {
    const double state_term =
        (defaults.has_state_dist() && beta > 0.0)
            ? beta * floored_log(defaults.state_dist[s])
            : 0.0;
    for (int a = 0; a < mdp.action_count[s]; ++a) {
      double r = mdp.rewards[s][a] + state_term;
      if (defaults.has_policy() && alpha > 0.0)
        r += alpha * floored_log(defaults.policy[s][a]);
      shifted.rewards[s][a] = r;
    }
  }
  return shifted;
}

namespace {

// Adjacency on the transition support graph; edges carry no weights here.
std::vector<std::vector<int>> support_edges(const Mdp& mdp, bool reversed) {
  std::vector<std::vector<int>> adj(mdp.num_states);
  for (int s = 0; s < mdp.num_states; ++s)
    for (const auto& row : mdp.transitions[s])
      for (const Transition& t : row)
        if (t.prob > 0.0) {
          if (reversed)
            adj[t.next].push_back(s);
          else
            adj[s].push_back(t.next);
        }
  return adj;
}

std::vector<bool> bfs_reach(const std::vector<std::vector<int>>& adj, int from) {
  std::vector<bool> seen(adj.size(), false);
  std::queue<int> q;
  seen[from] = true;
  q.push(from);
  while (!q.empty()) {
    int s = q.front();
    q.pop();
    for (int t : adj[s])
      if (!seen[t]) {
        seen[t] = true;
        q.push(t);
      }
  }
  return seen;
}

}  // namespace

ReachabilityReport reachability_check(const Mdp& mdp) {
  require_valid(mdp);
  ReachabilityReport rep;
  const int n = mdp.num_states;

  rep.absorbing.assign(n, false);
  for (int s = 0; s < n; ++s) {
    bool absorbing = true;
    for (const auto& row : mdp.transitions[s]) {
      double self = 0.0;
      for (const Transition& t : row)
        if (t.next == s) self += t.prob;
      if (self < 1.0 - 1e-12) {
        absorbing = false;
        break;
      }
    }
    rep.absorbing[s] = absorbing;
  }

  // Strong connectivity: everything reachable from state 0 in both the
  // forward and the reversed support graph.
  auto fwd = bfs_reach(support_edges(mdp, false), 0);
  auto bwd = bfs_reach(support_edges(mdp, true), 0);
  rep.communicating = true;
  for (int s = 0; s < n; ++s)
    if (!fwd[s] || !bwd[s]) rep.communicating = false;

  // Weak components: BFS on the undirected support graph.
  auto undirected = support_edges(mdp, false);
  {
    auto rev = support_edges(mdp, true);
    for (int s = 0; s < n; ++s)
      undirected[s].insert(undirected[s].end(), rev[s].begin(), rev[s].end());
  }
  rep.component.assign(n, -1);
  rep.num_components = 0;
  for (int s = 0; s < n; ++s) {
    if (rep.component[s] >= 0) continue;
    const int id = rep.num_components++;
    std::queue<int> q;
    rep.component[s] = id;
    q.push(s);
    while (!q.empty()) {
      int x = q.front();
      q.pop();
      for (int t : undirected[x])
        if (rep.component[t] < 0) {
          rep.component[t] = id;
          q.push(t);
        }
    }
  }
  return rep;
}

}  // namespace occumax

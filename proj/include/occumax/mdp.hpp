#ifndef OCCUMAX_MDP_HPP
#define OCCUMAX_MDP_HPP

#include <string>
#include <vector>

namespace occumax {

// Substituted for log(0) when a KL reference distribution has a zero entry.
inline constexpr double kLogFloor = -1e6;

struct Transition {
  int next = 0;
  double prob = 0.0;
};

// Finite MDP with per-state action counts and sparse transition rows.
// Rewards default to zero. State names are optional display metadata.
struct Mdp {
  int num_states = 0;
  std::vector<int> action_count;                              // [s]
  std::vector<std::vector<std::vector<Transition>>> transitions;  // [s][a]
  std::vector<std::vector<double>> rewards;                   // [s][a]
  std::vector<std::string> state_names;                       // optional

  int total_pairs() const;
};

// Ragged [state][action] table; shape always mirrors Mdp::action_count.
using Table = std::vector<std::vector<double>>;

Table make_table(const Mdp& mdp, double fill = 0.0);

// Optional KL reference distributions. Either part may be absent; an absent
// part contributes no shift.
struct DefaultDistributions {
  Table policy;                    // pi0(a|s), empty when absent
  std::vector<double> state_dist;  // p0(s), empty when absent

  bool has_policy() const { return !policy.empty(); }
  bool has_state_dist() const { return !state_dist.empty(); }
};

struct Violation {
  int state = -1;   // -1 when not tied to a state
  int action = -1;  // -1 when not tied to an action
  std::string message;
};

// Structural checks: positive action counts, transition rows that are
// distributions (sum within 1e-12 of 1, entries in [0,1], targets in range),
// finite rewards, shape agreement. Empty result means valid.
std::vector<Violation> validate_mdp(const Mdp& mdp);

// Throws InvalidMdp with the first violation formatted when invalid.
void require_valid(const Mdp& mdp);

std::string format_violations(const std::vector<Violation>& violations);

// Validates optional reference distributions against the MDP's shape:
// policy rows and the state distribution must be distributions (zeros are
// allowed, the KL shift floors their logs).
std::vector<Violation> validate_defaults(const Mdp& mdp,
                                         const DefaultDistributions& defaults);

// Folds KL regularization toward the reference distributions into the reward
// table: r~(s,a) = r(s,a) + alpha*log pi0(a|s) + beta*log p0(s), with log 0
// replaced by kLogFloor. Returns a copy of the MDP with shifted rewards.
// Rejects negative alpha or beta (InvalidWeights).
Mdp apply_kl_shift(const Mdp& mdp, const DefaultDistributions& defaults,
                   double alpha, double beta);

struct ReachabilityReport {
  bool communicating = false;   // directed support graph strongly connected
  std::vector<bool> absorbing;  // every action returns to the state w.p. 1
  // Weakly connected component id per state. Value shifts that are constant
  // on a weak component leave every advantage unchanged, so this is the
  // gauge group used by the solvers.
  std::vector<int> component;
  int num_components = 0;
};

ReachabilityReport reachability_check(const Mdp& mdp);

}  // namespace occumax

#endif

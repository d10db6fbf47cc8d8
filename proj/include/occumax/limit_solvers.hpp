#ifndef OCCUMAX_LIMIT_SOLVERS_HPP
#define OCCUMAX_LIMIT_SOLVERS_HPP

#include <vector>

#include "occumax/dual.hpp"
#include "occumax/mdp.hpp"
#include "occumax/primal.hpp"

namespace occumax {

enum class LimitRegime { kBetaZero, kAlphaZero, kUnregularized };

const char* regime_name(LimitRegime regime);

struct LimitSolution {
  LimitRegime regime = LimitRegime::kUnregularized;
  ValueVector v_star;
  double eta = 0.0;  // optimal gain; equals the average total reward
  Occupancy p_star;  // one representative when the optimum is degenerate
  Policy pi_star;
  std::vector<double> state_dist;
  bool unique_policy = true;
  // States whose greedy action set has more than one element, as sorted
  // action-index lists; empty rows are omitted, see tie_states.
  std::vector<int> tie_states;
  std::vector<std::vector<int>> tie_sets;
  double smoothing_eps = 0.0;  // 0 when an exact method was used
  long iterations = 0;
  bool converged = false;
  double alpha = 0.0, beta = 0.0;
};

// beta -> 0+: only action entropy remains. Relative soft value iteration
// with T(V)(s) = alpha * log sum_a exp((r(s,a) + sum p V)/alpha): the update
// is V <- V + 1/2 * (d - d[0]) for d = T(V) - V, i.e. damped and anchored at
// reference state 0 (damping removes periodic oscillation). At the fixed
// point the per-state soft value eta_V(s) = T(V)(s) - V(s) is constant; that
// constant is the optimal gain. The policy is the per-state softmax of
// A(s,a)/alpha and the occupancy is its stationary distribution, so flow
// balance holds exactly in the limit. Requires a communicating MDP.
LimitSolution solve_beta_zero(const Mdp& mdp, double alpha,
                              const SolverConfig& config = {});

// alpha -> 0+: smoothing path alpha = eps*beta for eps in {1e-1,1e-2,1e-3},
// each rung solved by minimize_dual warm-started from the previous one, then
// V* extrapolated linearly in eps. The reported policy is the greedy argmax
// of A(s,a) with ties broken to the lowest action index; tie sets are
// reported and unique_policy flags degeneracy. p_star is the smoothing-path
// occupancy at the smallest eps (the limit representative).
LimitSolution solve_alpha_zero(const Mdp& mdp, double beta,
                               const SolverConfig& config = {});

// alpha = beta = 0: classic average-reward optimality via relative value
// iteration with the same damping and reference state. Requires a
// communicating MDP; the gain is then state-independent.
LimitSolution solve_unregularized(const Mdp& mdp,
                                  const SolverConfig& config = {});

}  // namespace occumax

#endif

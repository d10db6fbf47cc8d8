#ifndef OCCUMAX_PRIMAL_HPP
#define OCCUMAX_PRIMAL_HPP

#include <vector>

#include "occumax/mdp.hpp"

namespace occumax {

// Joint state-action distribution p(s,a); entries sum to 1.
struct Occupancy {
  Table p;
};

// Conditional action distribution pi(a|s); every row sums to 1.
struct Policy {
  Table pi;
};

// Tangent direction u(s,a) with total sum 0, so p + eta*u stays normalized.
struct Direction {
  Table u;
};

// Below this mass a state is treated as unvisited when conditioning on it.
inline constexpr double kSupportThreshold = 1e-14;

// Average total reward of an occupancy: sum p*r plus alpha times action
// entropy plus (beta - alpha) times... spelled out:
//   R = sum p r - alpha * sum p log p - (beta - alpha) * sum_s p(s) log p(s)
// with 0 log 0 = 0. Concave in p for alpha, beta >= 0.
// Rejects negative weights and occupancies that are not distributions.
double average_total_reward(const Occupancy& occ, const Mdp& mdp, double alpha,
                            double beta);

// Second derivative of R along u at p (all entries of p must be positive):
//   -alpha * sum_s [ sum_a u^2/p - (sum_a u)^2 / sum_a p ]
//   -beta  * sum_s (sum_a u)^2 / sum_a p
// Non-positive for alpha, beta >= 0; this is the concavity certificate.
double directional_second_derivative(const Occupancy& occ, const Direction& dir,
                                     const Mdp& mdp, double alpha, double beta);

struct StationaryOptions {
  double tol = 1e-13;          // sup-norm change between iterates
  long max_iters = 2'000'000;  // cheap S x S mat-vec per iterate
};

struct StationaryResult {
  std::vector<double> dist;
  long iterations = 0;
  bool converged = false;
};

// Long-run state visit frequencies of the chain induced by the policy,
// started from `init` (uniform when empty). Iterates the half-lazy update
// d <- (d + dT)/2, which averages each iterate with its one-step image: the
// fixed points are exactly the flow-balanced distributions of T and the
// averaging removes periodicity, so cyclic chains converge to their
// occupation frequencies instead of oscillating.
StationaryResult stationary_distribution(const Mdp& mdp, const Policy& policy,
                                         const std::vector<double>& init = {},
                                         const StationaryOptions& opts = {});

struct PolicyOccupancy {
  Occupancy occupancy;
  std::vector<double> state_dist;
  long iterations = 0;
  bool converged = false;
};

// p(s,a) = pi(a|s) * d(s) with d the stationary distribution above.
PolicyOccupancy occupancy_from_policy(const Mdp& mdp, const Policy& policy,
                                      const std::vector<double>& init = {},
                                      const StationaryOptions& opts = {});

// Conditional policy of a joint distribution; states with marginal below
// kSupportThreshold get a uniform row.
Policy policy_from_joint(const Occupancy& occ, const Mdp& mdp);

// State marginals of a joint distribution.
std::vector<double> state_marginals(const Occupancy& occ);

// Sup-norm violation of the flow-balance constraint
//   sum_{s',a} p(s|s',a) p(s',a) = sum_b p(s,b).
double flow_residual(const Mdp& mdp, const Occupancy& occ);

// Shape and distribution checks for Occupancy / Policy tables.
void require_occupancy(const Mdp& mdp, const Occupancy& occ, double tol = 1e-10);
void require_policy(const Mdp& mdp, const Policy& policy, double tol = 1e-10);

}  // namespace occumax

#endif

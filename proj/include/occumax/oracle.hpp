#ifndef OCCUMAX_ORACLE_HPP
#define OCCUMAX_ORACLE_HPP

#include <vector>

#include "occumax/dual.hpp"
#include "occumax/mdp.hpp"
#include "occumax/primal.hpp"

namespace occumax {

struct OracleResult {
  double best_value = 0.0;
  Policy best_policy;
  Occupancy best_occupancy;
  double grid_resolution = 0.0;
  long evaluations = 0;
};

// Exhaustive grid search over stationary policies: every state's action
// distribution ranges over the simplex lattice with the given spacing, each
// candidate is mixed with 1e-6 of uniform so its chain stays irreducible on
// communicating MDPs, and the induced stationary occupancy is scored by the
// average total reward. Only meant as an independent check for tiny problems:
// throws TooLarge when sum_s (actions_s - 1) exceeds 6 or the lattice has
// more than 5e7 points. The winning candidate is re-scored through
// occupancy_from_policy / average_total_reward so the reported value is on
// exactly the same footing as the solvers under test.
OracleResult brute_force_primal(const Mdp& mdp, double alpha, double beta,
                                double resolution = 0.05);

// Centered finite differences of the dual objective in V, for checking the
// analytic gradient. eps must lie in [1e-9, 1e-3].
std::vector<double> finite_difference_gradient(const ValueVector& v, const Mdp& mdp,
                                               double alpha, double beta,
                                               double eps = 1e-6);

}  // namespace occumax

#endif

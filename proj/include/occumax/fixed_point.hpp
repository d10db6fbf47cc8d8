#ifndef OCCUMAX_FIXED_POINT_HPP
#define OCCUMAX_FIXED_POINT_HPP

#include <vector>

#include "occumax/dual.hpp"
#include "occumax/mdp.hpp"

namespace occumax {

// Multiplicative fixed-point iteration in z_s = exp(V(s)/alpha) for MDPs with
// deterministic transitions and zero rewards. With w_{s's} counting the
// actions of s that land on s' and Q_s = z_s^-1 sum_{s'} w_{s's} z_{s'}:
//
//  scheme 1 (alpha <= beta):
//    z_s <- [ (sum_{s'} w_{s's} z_{s'})^(a/b)
//             / sum_{s'} w_{ss'} z_{s'}^-1 Q_{s'}^(a/b-1) ]^(b/(a+b))
//  scheme 2 (alpha > beta), where scheme 1 diverges:
//    z_s <- [ z_s^(a/b-1) (sum_{s'} w_{s's} z_{s'})^(a/b)
//             / sum_{s'} w_{ss'} z_{s'}^-1 Q_{s'}^(a/b-1) ]^(b/(2a))
//
// The two coincide at alpha = beta. Sweeps run in the log domain and z is
// rescaled to max 1 afterwards (the update is exactly scale-equivariant, so
// this only fixes the gauge). Absorbing states start at z = 0 and stay there:
// their numerator sum only sees themselves.

struct ZVector {
  std::vector<double> z;  // normalized to max 1; exact 0 on absorbing basins
  std::vector<double> q;  // Q_s of the stored z; 0 where z is 0
};

enum class ZScheme { kScheme1, kScheme2 };

ZScheme select_scheme(double alpha, double beta);
const char* scheme_name(ZScheme scheme);

// z = 1 everywhere except exact 0 on absorbing states.
ZVector initial_z(const Mdp& mdp);

// One synchronous sweep of the scheme selected by (alpha, beta).
// Throws DeterminismViolation / NonzeroReward when the preconditions fail,
// and invalid_argument when some state has no incoming transition (its
// optimal value escapes to +infinity and the scheme is undefined).
ZVector iterate_z(const ZVector& zv, const Mdp& mdp, double alpha, double beta);

struct FixedPointSolution {
  DualSolution solution;
  ZScheme scheme = ZScheme::kScheme1;
  std::vector<double> z_final;
  long sweeps = 0;
  double z_residual = 0.0;  // last relative sup-norm change
  bool converged = false;
};

// Sweeps until max_s |z' - z| / max(z, 1e-300) < config.value_tol or
// config.max_iters. V = alpha * log z (floored at -v_clamp on zero entries),
// re-gauged like the dual solver, then extracted via extract_solution so the
// V tables and occupancies are directly comparable across solvers.
FixedPointSolution solve_fixed_point(const Mdp& mdp, double alpha, double beta,
                                     const SolverConfig& config = {});

}  // namespace occumax

#endif

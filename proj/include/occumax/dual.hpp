#ifndef OCCUMAX_DUAL_HPP
#define OCCUMAX_DUAL_HPP

#include <vector>

#include "occumax/mdp.hpp"
#include "occumax/primal.hpp"

namespace occumax {

using ValueVector = std::vector<double>;
using AdvantageTable = Table;

// The dual objective is invariant under adding a constant to V on each
// weakly connected component; the gauge pins that freedom.
enum class GaugeMode { kMeanZero, kReferenceState };

const char* gauge_name(GaugeMode mode);

struct SolverConfig {
  double grad_tol = 1e-8;         // sup-norm of the dual gradient
  double value_tol = 1e-12;       // relative dual decrease, see minimize_dual
  long max_iters = 100000;
  double initial_step = 1.0;
  double armijo_c = 1e-4;
  double backtrack_factor = 0.5;
  // Iterates are kept within v_clamp of the running per-component maximum of
  // V; coordinates whose optimum sits at -infinity (absorbing structures)
  // stop there. <= 0 selects an automatic bound generous enough that it
  // never binds on a finite optimum: 40*max(alpha,beta) + span(r)*S + 40.
  double v_clamp = 0.0;
  GaugeMode gauge = GaugeMode::kMeanZero;
};

double resolve_v_clamp(const SolverConfig& config, const Mdp& mdp, double alpha,
                       double beta);

struct DualSolution {
  ValueVector v_star;
  Occupancy p_star;
  Policy pi_star;
  std::vector<double> state_dist;
  double r_max = 0.0;       // optimal average total reward, beta*log Z
  double lambda = 0.0;      // normalization multiplier, beta*(1 - log Z)
  double grad_norm = 0.0;   // sup-norm of the dual gradient at v_star
  double duality_gap = 0.0; // |r_max - average_total_reward(p_star)|
  double flow_residual = 0.0;
  long iterations = 0;
  bool converged = false;
  double alpha = 0.0, beta = 0.0;
  GaugeMode gauge = GaugeMode::kMeanZero;
  bool communicating = false;
  std::vector<int> clamped_states;        // clamp active at the final iterate
  std::vector<double> dual_value_history; // accepted-step values, diagnostics
};

// A_V(s,a) = r(s,a) + sum_{s'} V(s') p(s'|s,a) - V(s). Invariant under
// per-component constant shifts of V.
AdvantageTable advantage(const ValueVector& v, const Mdp& mdp);

// Dual objective beta * log Z_V with
//   Z_V = sum_s (sum_a exp(A_V(s,a)/alpha))^(alpha/beta),
// evaluated as nested shifted log-sum-exps so large |A| cannot overflow.
// Convex in V; rejects alpha <= 0 or beta <= 0.
double dual_value(const ValueVector& v, const Mdp& mdp, double alpha,
                  double beta);

// Gradient of the dual: inflow minus occupancy of joint_from_values,
//   g(s) = sum_{s',a} p(s|s',a) p_V(s',a) - p_V(s).
// Entries always sum to 0.
std::vector<double> dual_gradient(const ValueVector& v, const Mdp& mdp,
                                  double alpha, double beta);

// Candidate occupancy induced by V:
//   p_V(s,a) = Z^-1 (sum_b exp(A(s,b)/alpha))^(alpha/beta - 1) exp(A(s,a)/alpha),
// computed in the log domain and exponentiated once.
Occupancy joint_from_values(const ValueVector& v, const Mdp& mdp, double alpha,
                            double beta);

// Dense Hessian of the dual at V, row-major num_states x num_states. With
// d_{s,a}(t) = p(t|s,a) - [t==s] and weights p_V from joint_from_values,
//   H = (1/alpha) (M2 - M1) + (1/beta) (M1 - g g^T),
// where M2 = sum_{s,a} p_V(s,a) d d^T averages within and M1 across states.
// Both parts are positive semidefinite and H 1 = 0 (gauge direction).
std::vector<double> dual_hessian(const ValueVector& v, const Mdp& mdp,
                                 double alpha, double beta);

// Analytic solution fields at a given V: softmax policy pi(a|s) over
// A(s,a)/alpha, state weights proportional to (sum_a e^{A/alpha})^{alpha/beta},
// r_max = beta log Z, lambda = beta (1 - log Z), plus diagnostics.
DualSolution extract_solution(const ValueVector& v, const Mdp& mdp,
                              double alpha, double beta,
                              GaugeMode gauge = GaugeMode::kMeanZero);

// Minimizes the dual from V = 0 (or initial_v). Gradient descent with Armijo
// backtracking does the bulk of the work; once the gradient is small, or the
// line search can no longer resolve a decrease against evaluation noise, a
// damped Newton phase accepted on gradient contraction finishes the job.
// After each accepted step V is re-gauged per weak component and clamped at
// (component max - v_clamp). Stops when the gradient sup-norm drops below
// grad_tol, or when the relative decrease falls below value_tol while the
// gradient is already below 5*grad_tol, or at max_iters with converged=false.
DualSolution minimize_dual(const Mdp& mdp, double alpha, double beta,
                           const SolverConfig& config = {},
                           const ValueVector& initial_v = {});

// Subtract the per-component mean (or reference value) in place.
void apply_gauge(ValueVector& v, const std::vector<int>& component,
                 int num_components, GaugeMode mode);

}  // namespace occumax

#endif

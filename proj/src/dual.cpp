#include "occumax/dual.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "occumax/errors.hpp"

namespace occumax {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_sum_exp(const std::vector<double>& xs) {
  double m = kNegInf;
  for (double x : xs) m = std::max(m, x);
  if (m == kNegInf) return kNegInf;
  double acc = 0.0;
  for (double x : xs) acc += std::exp(x - m);
  return m + std::log(acc);
}

void check_weights(double alpha, double beta, const char* who) {
  if (!(alpha > 0.0) || !(beta > 0.0))
    throw InvalidWeights(std::string(who) +
                         ": requires alpha > 0 and beta > 0 "
                         "(limit solvers handle the boundary)");
}

// Shared log-domain pieces of the candidate solution at V.
struct JointPieces {
  AdvantageTable a;                  // A_V(s,a)
  std::vector<double> state_lse;     // L_s = LSE_a(A(s,a)/alpha)
  double log_z = 0.0;                // log Z = LSE_s((alpha/beta) L_s)
};

JointPieces joint_pieces(const ValueVector& v, const Mdp& mdp, double alpha,
                         double beta) {
  JointPieces jp;
  jp.a = advantage(v, mdp);
  jp.state_lse.resize(mdp.num_states);
  std::vector<double> scaled(mdp.num_states);
  std::vector<double> row;
  for (int s = 0; s < mdp.num_states; ++s) {
    row.assign(jp.a[s].begin(), jp.a[s].end());
    for (double& x : row) x /= alpha;
    jp.state_lse[s] = log_sum_exp(row);
    scaled[s] = (alpha / beta) * jp.state_lse[s];
  }
  jp.log_z = log_sum_exp(scaled);
  return jp;
}

}  // namespace

const char* gauge_name(GaugeMode mode) {
  return mode == GaugeMode::kMeanZero ? "mean-zero" : "reference-state";
}

AdvantageTable advantage(const ValueVector& v, const Mdp& mdp) {
  if (static_cast<int>(v.size()) != mdp.num_states)
    throw std::invalid_argument("advantage: value vector size mismatch");
  AdvantageTable a = make_table(mdp);
  for (int s = 0; s < mdp.num_states; ++s)
    for (int ai = 0; ai < mdp.action_count[s]; ++ai) {
      double ev = 0.0;
      for (const Transition& t : mdp.transitions[s][ai])
        ev += v[t.next] * t.prob;
      a[s][ai] = mdp.rewards[s][ai] + ev - v[s];
    }
  return a;
}

double dual_value(const ValueVector& v, const Mdp& mdp, double alpha,
                  double beta) {
  check_weights(alpha, beta, "dual_value");
  return beta * joint_pieces(v, mdp, alpha, beta).log_z;
}

Occupancy joint_from_values(const ValueVector& v, const Mdp& mdp, double alpha,
                            double beta) {
  check_weights(alpha, beta, "joint_from_values");
  const JointPieces jp = joint_pieces(v, mdp, alpha, beta);
  Occupancy occ;
  occ.p = make_table(mdp);
  for (int s = 0; s < mdp.num_states; ++s) {
    const double state_log = (alpha / beta - 1.0) * jp.state_lse[s] - jp.log_z;
    for (int a = 0; a < mdp.action_count[s]; ++a)
      occ.p[s][a] = std::exp(state_log + jp.a[s][a] / alpha);
  }
  return occ;
}

std::vector<double> dual_gradient(const ValueVector& v, const Mdp& mdp,
                                  double alpha, double beta) {
  check_weights(alpha, beta, "dual_gradient");
  const Occupancy occ = joint_from_values(v, mdp, alpha, beta);
  std::vector<double> g(mdp.num_states, 0.0);
  for (int s = 0; s < mdp.num_states; ++s)
    for (int a = 0; a < mdp.action_count[s]; ++a) {
      const double w = occ.p[s][a];
      g[s] -= w;
      for (const Transition& t : mdp.transitions[s][a])
        g[t.next] += w * t.prob;
    }
  return g;
}

std::vector<double> dual_hessian(const ValueVector& v, const Mdp& mdp,
                                 double alpha, double beta) {
  check_weights(alpha, beta, "dual_hessian");
  const int n = mdp.num_states;
  const Occupancy occ = joint_from_values(v, mdp, alpha, beta);
  std::vector<double> h(static_cast<std::size_t>(n) * n, 0.0);
  std::vector<double> g(n, 0.0);
  std::vector<double> d(n), e(n);
  const double within = 1.0 / alpha;
  const double across = 1.0 / beta - 1.0 / alpha;
  for (int s = 0; s < n; ++s) {
    std::fill(e.begin(), e.end(), 0.0);
    double mass = 0.0;
    for (int a = 0; a < mdp.action_count[s]; ++a) {
      const double q = occ.p[s][a];
      mass += q;
      std::fill(d.begin(), d.end(), 0.0);
      for (const Transition& t : mdp.transitions[s][a]) d[t.next] += t.prob;
      d[s] -= 1.0;
      for (int i = 0; i < n; ++i) {
        if (d[i] == 0.0) continue;
        e[i] += q * d[i];
        const double row = within * q * d[i];
        for (int j = 0; j < n; ++j) h[i * n + j] += row * d[j];
      }
    }
    for (int i = 0; i < n; ++i) g[i] += e[i];
    if (mass <= 0.0) continue;  // vanished state: its covariance share is 0
    for (int i = 0; i < n; ++i) {
      if (e[i] == 0.0) continue;
      const double row = across * e[i] / mass;
      for (int j = 0; j < n; ++j) h[i * n + j] += row * e[j];
    }
  }
  const double between = 1.0 / beta;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) h[i * n + j] -= between * g[i] * g[j];
  return h;
}

void apply_gauge(ValueVector& v, const std::vector<int>& component,
                 int num_components, GaugeMode mode) {
  if (mode == GaugeMode::kMeanZero) {
    std::vector<double> sum(num_components, 0.0);
    std::vector<int> count(num_components, 0);
    for (size_t s = 0; s < v.size(); ++s) {
      sum[component[s]] += v[s];
      ++count[component[s]];
    }
    for (size_t s = 0; s < v.size(); ++s)
      v[s] -= sum[component[s]] / count[component[s]];
  } else {
    std::vector<double> ref(num_components,
                            std::numeric_limits<double>::quiet_NaN());
    for (size_t s = 0; s < v.size(); ++s)
      if (std::isnan(ref[component[s]])) ref[component[s]] = v[s];
    for (size_t s = 0; s < v.size(); ++s) v[s] -= ref[component[s]];
  }
}

double resolve_v_clamp(const SolverConfig& config, const Mdp& mdp, double alpha,
                       double beta) {
  if (config.v_clamp > 0.0) return config.v_clamp;
  double r_lo = 0.0, r_hi = 0.0;
  for (const auto& row : mdp.rewards)
    for (double r : row) {
      r_lo = std::min(r_lo, r);
      r_hi = std::max(r_hi, r);
    }
  return 40.0 * std::max(alpha, beta) + (r_hi - r_lo) * mdp.num_states + 40.0;
}

namespace {

// Clamp V at (component max - bound); returns clamped state indices.
std::vector<int> apply_clamp(ValueVector& v, const std::vector<int>& component,
                             int num_components, double bound) {
  std::vector<double> top(num_components, kNegInf);
  for (size_t s = 0; s < v.size(); ++s)
    top[component[s]] = std::max(top[component[s]], v[s]);
  std::vector<int> clamped;
  for (size_t s = 0; s < v.size(); ++s) {
    const double floor = top[component[s]] - bound;
    if (v[s] < floor) {
      v[s] = floor;
      clamped.push_back(static_cast<int>(s));
    }
  }
  return clamped;
}

double sup_norm(const std::vector<double>& x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

// In-place lower Cholesky; false on a nonpositive pivot.
bool cholesky_factor(std::vector<double>& a, int n) {
  for (int j = 0; j < n; ++j) {
    double pivot = a[j * n + j];
    for (int k = 0; k < j; ++k) pivot -= a[j * n + k] * a[j * n + k];
    if (!(pivot > 0.0)) return false;
    const double root = std::sqrt(pivot);
    a[j * n + j] = root;
    for (int i = j + 1; i < n; ++i) {
      double s = a[i * n + j];
      for (int k = 0; k < j; ++k) s -= a[i * n + k] * a[j * n + k];
      a[i * n + j] = s / root;
    }
  }
  return true;
}

void cholesky_solve(const std::vector<double>& l, int n,
                    std::vector<double>& x) {
  for (int i = 0; i < n; ++i) {
    double s = x[i];
    for (int k = 0; k < i; ++k) s -= l[i * n + k] * x[k];
    x[i] = s / l[i * n + i];
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = x[i];
    for (int k = i + 1; k < n; ++k) s -= l[k * n + i] * x[k];
    x[i] = s / l[i * n + i];
  }
}

// Hand the endgame to curvature steps once first-order progress is this small;
// the gradient is a difference of probability vectors, so the scale is absolute.
constexpr double kNewtonPullIn = 1e-5;
// Dense factorization guard; beyond this the descent loop is on its own.
constexpr int kNewtonMaxStates = 512;

struct NewtonOutcome {
  long rounds = 0;    // Hessian solves attempted, each counted as an iteration
  long accepted = 0;  // steps that actually moved the iterate
};

// Damped Newton refinement. Near the optimum the dual changes by less than
// evaluation noise, so steps are accepted on gradient contraction instead of
// a decrease test. The Hessian is singular along per-component constants;
// a ridge ladder keeps the factorization honest and the gauge absorbs any
// constant drift. v, f, g, clamped are updated in place.
NewtonOutcome newton_refine(ValueVector& v, double& f, std::vector<double>& g,
                            const Mdp& mdp, double alpha, double beta,
                            const SolverConfig& config,
                            const ReachabilityReport& reach, double clamp_bound,
                            std::vector<int>& clamped,
                            std::vector<double>& history, long max_rounds) {
  const int n = mdp.num_states;
  NewtonOutcome out;
  const long cap = std::min<long>(200, max_rounds);
  while (out.rounds < cap) {
    const double gnorm = sup_norm(g);
    if (gnorm < config.grad_tol) break;
    ++out.rounds;

    const std::vector<double> h = dual_hessian(v, mdp, alpha, beta);
    double diag_max = 0.0;
    for (int i = 0; i < n; ++i)
      diag_max = std::max(diag_max, h[i * static_cast<std::size_t>(n) + i]);

    ValueVector delta;
    bool solved = false;
    for (double ridge = 1e-13 * (1.0 + diag_max); ridge <= 1e3 * (1.0 + diag_max);
         ridge *= 1e4) {
      std::vector<double> factor = h;
      for (int i = 0; i < n; ++i) factor[i * static_cast<std::size_t>(n) + i] += ridge;
      if (!cholesky_factor(factor, n)) continue;
      delta = g;
      cholesky_solve(factor, n, delta);
      solved = true;
      break;
    }
    if (!solved) break;
    apply_gauge(delta, reach.component, reach.num_components,
                GaugeMode::kMeanZero);

    double tau = 1.0;
    bool moved = false;
    ValueVector cand(v.size());
    std::vector<double> g_cand;
    for (int halving = 0; halving < 40; ++halving) {
      for (std::size_t i = 0; i < v.size(); ++i) cand[i] = v[i] - tau * delta[i];
      apply_gauge(cand, reach.component, reach.num_components, config.gauge);
      g_cand = dual_gradient(cand, mdp, alpha, beta);
      if (sup_norm(g_cand) < gnorm) {
        moved = true;
        break;
      }
      tau *= 0.5;
    }
    if (!moved) break;

    v.swap(cand);
    clamped = apply_clamp(v, reach.component, reach.num_components, clamp_bound);
    if (!clamped.empty()) g_cand = dual_gradient(v, mdp, alpha, beta);
    g.swap(g_cand);
    f = dual_value(v, mdp, alpha, beta);
    history.push_back(f);
    ++out.accepted;
  }
  return out;
}

}  // namespace

DualSolution extract_solution(const ValueVector& v, const Mdp& mdp,
                              double alpha, double beta, GaugeMode gauge) {
  check_weights(alpha, beta, "extract_solution");
  require_valid(mdp);
  const JointPieces jp = joint_pieces(v, mdp, alpha, beta);

  DualSolution sol;
  sol.v_star = v;
  sol.alpha = alpha;
  sol.beta = beta;
  sol.gauge = gauge;
  sol.pi_star.pi = make_table(mdp);
  sol.p_star.p = make_table(mdp);
  sol.state_dist.resize(mdp.num_states);
  for (int s = 0; s < mdp.num_states; ++s) {
    const double state_log = (alpha / beta) * jp.state_lse[s] - jp.log_z;
    sol.state_dist[s] = std::exp(state_log);
    for (int a = 0; a < mdp.action_count[s]; ++a) {
      const double log_pi = jp.a[s][a] / alpha - jp.state_lse[s];
      sol.pi_star.pi[s][a] = std::exp(log_pi);
      sol.p_star.p[s][a] = std::exp(log_pi + state_log);
    }
  }
  sol.r_max = beta * jp.log_z;
  sol.lambda = beta * (1.0 - jp.log_z);
  sol.grad_norm = sup_norm(dual_gradient(v, mdp, alpha, beta));
  sol.flow_residual = occumax::flow_residual(mdp, sol.p_star);
  sol.duality_gap =
      std::abs(sol.r_max - average_total_reward(sol.p_star, mdp, alpha, beta));
  sol.communicating = reachability_check(mdp).communicating;
  sol.converged = true;
  return sol;
}

DualSolution minimize_dual(const Mdp& mdp, double alpha, double beta,
                           const SolverConfig& config,
                           const ValueVector& initial_v) {
  check_weights(alpha, beta, "minimize_dual");
  require_valid(mdp);
  const ReachabilityReport reach = reachability_check(mdp);
  const double clamp_bound = resolve_v_clamp(config, mdp, alpha, beta);

  ValueVector v;
  if (initial_v.empty()) {
    v.assign(mdp.num_states, 0.0);
  } else {
    if (static_cast<int>(initial_v.size()) != mdp.num_states)
      throw std::invalid_argument("minimize_dual: initial_v size mismatch");
    v = initial_v;
  }
  apply_gauge(v, reach.component, reach.num_components, config.gauge);
  std::vector<int> clamped =
      apply_clamp(v, reach.component, reach.num_components, clamp_bound);

  double f = dual_value(v, mdp, alpha, beta);
  std::vector<double> g = dual_gradient(v, mdp, alpha, beta);

  std::vector<double> history;
  history.reserve(256);
  history.push_back(f);

  // Previous iterate for the Barzilai-Borwein trial step; Armijo backtracking
  // keeps every accepted step a strict descent step regardless of the trial.
  ValueVector v_prev;
  std::vector<double> g_prev;
  double step = config.initial_step;
  long iters = 0;
  bool converged = false;
  bool near_stationary = false;
  const bool curvature_ok = mdp.num_states <= kNewtonMaxStates;

  while (iters < config.max_iters && !converged) {
    // First-order phase: bulk descent. Exits to the curvature phase when the
    // gradient is small, the line search hits the evaluation noise floor, or
    // the decrease stalls near stationarity.
    for (; iters < config.max_iters; ++iters) {
      const double gnorm = sup_norm(g);
      if (gnorm < config.grad_tol) {
        converged = true;
        break;
      }
      if (curvature_ok && gnorm < kNewtonPullIn) break;

      double g2 = 0.0;
      for (double gi : g) g2 += gi * gi;

      double trial = step;
      if (!v_prev.empty()) {
        double sy = 0.0, ss = 0.0;
        for (size_t i = 0; i < v.size(); ++i) {
          const double si = v[i] - v_prev[i];
          ss += si * si;
          sy += si * (g[i] - g_prev[i]);
        }
        trial = (sy > 1e-300) ? ss / sy : step * 2.0;
      }
      trial = std::clamp(trial, 1e-12, 1e8);

      v_prev = v;
      g_prev = g;

      ValueVector cand(v.size());
      double f_new = f;
      bool accepted = false;
      for (int bt = 0; bt < 70; ++bt) {
        for (size_t i = 0; i < v.size(); ++i) cand[i] = v[i] - trial * g[i];
        f_new = dual_value(cand, mdp, alpha, beta);
        if (f_new <= f - config.armijo_c * trial * g2) {
          accepted = true;
          break;
        }
        trial *= config.backtrack_factor;
        if (trial < 1e-18) break;
      }
      if (!accepted) break;  // decrease no longer resolvable against noise

      step = trial;
      v.swap(cand);
      apply_gauge(v, reach.component, reach.num_components, config.gauge);
      clamped =
          apply_clamp(v, reach.component, reach.num_components, clamp_bound);
      if (!clamped.empty())
        f_new = dual_value(v, mdp, alpha, beta);  // clamp moved the iterate

      g = dual_gradient(v, mdp, alpha, beta);
      const double decrease = f - f_new;
      f = f_new;
      history.push_back(f);

      // The relative-decrease test is meaningful only once the gradient is in
      // the vicinity of the target, otherwise it fires far from stationarity.
      if (decrease <= config.value_tol * std::max(1.0, std::abs(f)) &&
          sup_norm(g) < 5.0 * config.grad_tol) {
        ++iters;
        near_stationary = true;
        break;
      }
    }
    if (converged || !curvature_ok) break;

    // Curvature phase: quadratic endgame on the gradient itself.
    const double before = sup_norm(g);
    const NewtonOutcome nr =
        newton_refine(v, f, g, mdp, alpha, beta, config, reach, clamp_bound,
                      clamped, history, config.max_iters - iters);
    iters += nr.rounds;
    if (sup_norm(g) < config.grad_tol) {
      converged = true;
      break;
    }
    if (nr.accepted == 0 || !(sup_norm(g) < before)) break;  // neither moves
    v_prev.clear();  // BB memory is stale after curved steps
    g_prev.clear();
  }
  // Stalled-decrease exit with the gradient already near the target counts as
  // converged even when the curvature phase cannot tighten it further.
  if (near_stationary) converged = true;

  DualSolution sol = extract_solution(v, mdp, alpha, beta, config.gauge);
  sol.iterations = iters;
  sol.converged = converged;
  sol.communicating = reach.communicating;
  sol.clamped_states = clamped;
  sol.dual_value_history = std::move(history);
  return sol;
}

}  // namespace occumax

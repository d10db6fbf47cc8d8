#include "occumax/fixed_point.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "occumax/errors.hpp"

namespace occumax {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Deterministic successor of (s,a); throws when the row is not a point mass.
int deterministic_successor(const Mdp& mdp, int s, int a) {
  int target = -1;
  for (const Transition& t : mdp.transitions[s][a]) {
    if (t.prob < 1e-12) continue;
    if (target >= 0 || std::abs(t.prob - 1.0) > 1e-12)
      throw DeterminismViolation(
          "fixed-point scheme requires deterministic transitions");
    target = t.next;
  }
  if (target < 0)
    throw DeterminismViolation(
        "fixed-point scheme requires deterministic transitions");
  return target;
}

struct Structure {
  std::vector<std::vector<int>> succ;   // per state: successor per action
  std::vector<std::vector<int>> preds;  // per state: predecessors, repeated
};

Structure analyze(const Mdp& mdp, double /*alpha*/, double /*beta*/) {
  require_valid(mdp);
  Structure st;
  st.succ.resize(mdp.num_states);
  st.preds.resize(mdp.num_states);
  for (int s = 0; s < mdp.num_states; ++s) {
    for (int a = 0; a < mdp.action_count[s]; ++a) {
      if (mdp.rewards[s][a] != 0.0)
        throw NonzeroReward("fixed-point scheme requires zero rewards");
      const int t = deterministic_successor(mdp, s, a);
      st.succ[s].push_back(t);
      st.preds[t].push_back(s);
    }
  }
  for (int s = 0; s < mdp.num_states; ++s)
    if (st.preds[s].empty())
      throw std::invalid_argument(
          "fixed-point scheme: state " + std::to_string(s) +
          " has no incoming transition, its value is unbounded");
  return st;
}

std::vector<double> sweep_log(const std::vector<double>& lz,
                              const Structure& st, double alpha, double beta,
                              ZScheme scheme) {
  const int n = static_cast<int>(lz.size());
  const double ab = alpha / beta;

  // log N_s = log sum of successor z, log Q_s = log N_s - log z_s.
  std::vector<double> log_n(n, kNegInf), log_q(n, kNegInf);
  for (int s = 0; s < n; ++s) {
    double m = kNegInf;
    for (int t : st.succ[s]) m = std::max(m, lz[t]);
    if (m == kNegInf) continue;
    double acc = 0.0;
    for (int t : st.succ[s]) acc += std::exp(lz[t] - m);
    log_n[s] = m + std::log(acc);
    if (lz[s] != kNegInf) log_q[s] = log_n[s] - lz[s];
  }

  std::vector<double> next(n, kNegInf);
  std::vector<double> terms;
  for (int s = 0; s < n; ++s) {
    if (log_n[s] == kNegInf) continue;  // absorbing basin stays at z = 0
    terms.clear();
    for (int p : st.preds[s]) {
      if (lz[p] == kNegInf) continue;  // zero-z predecessors carry no flow
      terms.push_back(-lz[p] + (ab - 1.0) * log_q[p]);
    }
    double m = kNegInf;
    for (double t : terms) m = std::max(m, t);
    double acc = 0.0;
    for (double t : terms) acc += std::exp(t - m);
    const double log_d = m + std::log(acc);

    if (scheme == ZScheme::kScheme1) {
      next[s] = (beta / (alpha + beta)) * (ab * log_n[s] - log_d);
    } else {
      next[s] =
          (beta / (2.0 * alpha)) * ((ab - 1.0) * lz[s] + ab * log_n[s] - log_d);
    }
  }

  // Rescale to max 1; the update is scale-equivariant so this is pure gauge.
  double top = kNegInf;
  for (double x : next) top = std::max(top, x);
  for (double& x : next)
    if (x != kNegInf) x -= top;
  return next;
}

std::vector<double> to_log(const std::vector<double>& z) {
  std::vector<double> lz(z.size());
  for (size_t i = 0; i < z.size(); ++i)
    lz[i] = z[i] > 0.0 ? std::log(z[i]) : kNegInf;
  return lz;
}

ZVector assemble(const std::vector<double>& lz, const Structure& st) {
  ZVector out;
  out.z.resize(lz.size());
  out.q.assign(lz.size(), 0.0);
  for (size_t i = 0; i < lz.size(); ++i)
    out.z[i] = lz[i] == kNegInf ? 0.0 : std::exp(lz[i]);
  for (size_t s = 0; s < lz.size(); ++s) {
    if (out.z[s] <= 0.0) continue;
    double num = 0.0;
    for (int t : st.succ[s]) num += out.z[t];
    out.q[s] = num / out.z[s];
  }
  return out;
}

}  // namespace

ZScheme select_scheme(double alpha, double beta) {
  return alpha > beta ? ZScheme::kScheme2 : ZScheme::kScheme1;
}

const char* scheme_name(ZScheme scheme) {
  return scheme == ZScheme::kScheme1 ? "scheme1" : "scheme2";
}

ZVector initial_z(const Mdp& mdp) {
  const auto reach = reachability_check(mdp);
  std::vector<double> z(mdp.num_states, 1.0);
  for (int s = 0; s < mdp.num_states; ++s)
    if (reach.absorbing[s]) z[s] = 0.0;
  Structure st = analyze(mdp, 0, 0);
  return assemble(to_log(z), st);
}

ZVector iterate_z(const ZVector& zv, const Mdp& mdp, double alpha,
                  double beta) {
  if (!(alpha > 0.0) || !(beta > 0.0))
    throw InvalidWeights("iterate_z: requires alpha > 0 and beta > 0");
  if (static_cast<int>(zv.z.size()) != mdp.num_states)
    throw std::invalid_argument("iterate_z: z size mismatch");
  const Structure st = analyze(mdp, alpha, beta);
  const auto next =
      sweep_log(to_log(zv.z), st, alpha, beta, select_scheme(alpha, beta));
  return assemble(next, st);
}

FixedPointSolution solve_fixed_point(const Mdp& mdp, double alpha, double beta,
                                     const SolverConfig& config) {
  if (!(alpha > 0.0) || !(beta > 0.0))
    throw InvalidWeights("solve_fixed_point: requires alpha > 0 and beta > 0");
  const Structure st = analyze(mdp, alpha, beta);
  const ReachabilityReport reach = reachability_check(mdp);
  const ZScheme scheme = select_scheme(alpha, beta);

  std::vector<double> z(mdp.num_states, 1.0);
  for (int s = 0; s < mdp.num_states; ++s)
    if (reach.absorbing[s]) z[s] = 0.0;
  std::vector<double> lz = to_log(z);

  FixedPointSolution out;
  out.scheme = scheme;
  bool diverged = false;
  for (long sweep = 1; sweep <= config.max_iters; ++sweep) {
    const auto lz_next = sweep_log(lz, st, alpha, beta, scheme);
    double residual = 0.0;
    for (size_t i = 0; i < lz.size(); ++i) {
      const double z_old = lz[i] == kNegInf ? 0.0 : std::exp(lz[i]);
      const double z_new = lz_next[i] == kNegInf ? 0.0 : std::exp(lz_next[i]);
      residual =
          std::max(residual, std::abs(z_new - z_old) / std::max(z_old, 1e-300));
      if (std::isnan(lz_next[i]) ||
          lz_next[i] == std::numeric_limits<double>::infinity())
        diverged = true;
    }
    lz = lz_next;
    out.sweeps = sweep;
    out.z_residual = residual;
    if (diverged) break;  // equivalent to some raw z passing 1e150
    if (residual < config.value_tol) {
      out.converged = true;
      break;
    }
  }

  const double clamp_bound = resolve_v_clamp(config, mdp, alpha, beta);
  ValueVector v(mdp.num_states);
  for (int s = 0; s < mdp.num_states; ++s)
    v[s] = lz[s] == kNegInf ? -clamp_bound : alpha * lz[s];
  // Keep underflowed coordinates on the same floor as exact zeros.
  {
    double top = -std::numeric_limits<double>::infinity();
    for (double x : v) top = std::max(top, x);
    for (double& x : v) x = std::max(x, top - clamp_bound);
  }
  apply_gauge(v, reach.component, reach.num_components, config.gauge);

  out.solution = extract_solution(v, mdp, alpha, beta, config.gauge);
  out.solution.iterations = out.sweeps;
  out.solution.converged = out.converged;
  out.z_final.resize(lz.size());
  for (size_t i = 0; i < lz.size(); ++i)
    out.z_final[i] = lz[i] == kNegInf ? 0.0 : std::exp(lz[i]);
  return out;
}

}  // namespace occumax

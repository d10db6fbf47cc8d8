#include "occumax/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "occumax/errors.hpp"

namespace occumax {
namespace {

constexpr double kUniformMix = 1e-6;

// All simplex lattice points with k coordinates summing to m, scaled by 1/m,
// already blended with the uniform safeguard.
void enumerate_rows(int k, int m, std::vector<std::vector<double>>& out) {
  std::vector<int> counts(static_cast<std::size_t>(k), 0);
  const double unif = kUniformMix / k;
  auto emit = [&]() {
    std::vector<double> row(static_cast<std::size_t>(k));
    for (int a = 0; a < k; ++a)
      row[static_cast<std::size_t>(a)] =
          (1.0 - kUniformMix) * counts[static_cast<std::size_t>(a)] / m + unif;
    out.push_back(std::move(row));
  };
  // Odometer over compositions of m into k parts.
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == k - 1) {
      counts[static_cast<std::size_t>(pos)] = left;
      emit();
      return;
    }
    for (int c = 0; c <= left; ++c) {
      counts[static_cast<std::size_t>(pos)] = c;
      self(self, pos + 1, left - c);
    }
  };
  rec(rec, 0, m);
}

// Stationary distribution of a dense row-stochastic matrix by direct solve:
// (T^t - I) d = 0 with the last equation replaced by sum(d) = 1. Partial
// pivoting; returns false when the system is numerically singular.
bool stationary_direct(const std::vector<std::vector<double>>& t,
                       std::vector<double>& d) {
  const int n = static_cast<int>(t.size());
  std::vector<std::vector<double>> a(
      static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n + 1), 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j)
      a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          t[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] - (i == j ? 1.0 : 0.0);
  }
  for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(j)] = 1.0;
  a[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(n)] = 1.0;

  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)]) >
          std::abs(a[static_cast<std::size_t>(piv)][static_cast<std::size_t>(col)]))
        piv = r;
    if (std::abs(a[static_cast<std::size_t>(piv)][static_cast<std::size_t>(col)]) < 1e-12) return false;
    std::swap(a[static_cast<std::size_t>(col)], a[static_cast<std::size_t>(piv)]);
    for (int r = col + 1; r < n; ++r) {
      const double f = a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] /
                       a[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
      if (f == 0.0) continue;
      for (int j = col; j <= n; ++j)
        a[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] -=
            f * a[static_cast<std::size_t>(col)][static_cast<std::size_t>(j)];
    }
  }
  d.assign(static_cast<std::size_t>(n), 0.0);
  for (int r = n - 1; r >= 0; --r) {
    double acc = a[static_cast<std::size_t>(r)][static_cast<std::size_t>(n)];
    for (int j = r + 1; j < n; ++j)
      acc -= a[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] * d[static_cast<std::size_t>(j)];
    d[static_cast<std::size_t>(r)] = acc / a[static_cast<std::size_t>(r)][static_cast<std::size_t>(r)];
  }
  double total = 0.0;
  for (double v : d) {
    if (!std::isfinite(v) || v < -1e-9) return false;
    total += v;
  }
  if (!(std::abs(total - 1.0) < 1e-6)) return false;
  for (double& v : d) v = std::max(v, 0.0) / total;
  return true;
}

}  // namespace

OracleResult brute_force_primal(const Mdp& mdp, double alpha, double beta,
                                double resolution) {
  require_valid(mdp);
  if (alpha < 0.0 || beta < 0.0) throw InvalidWeights("entropy weights must be non-negative");
  if (!(resolution > 0.0 && resolution <= 0.5))
    throw std::invalid_argument("resolution must lie in (0, 0.5]");
  const int m = static_cast<int>(std::lround(1.0 / resolution));

  long dof = 0;
  for (int k : mdp.action_count) dof += k - 1;
  if (dof > 6) throw TooLarge("policy space has more than 6 free coordinates");

  const int n = mdp.num_states;
  std::vector<std::vector<std::vector<double>>> grids(static_cast<std::size_t>(n));
  double combos = 1.0;
  for (int s = 0; s < n; ++s) {
    enumerate_rows(mdp.action_count[static_cast<std::size_t>(s)], m, grids[static_cast<std::size_t>(s)]);
    combos *= static_cast<double>(grids[static_cast<std::size_t>(s)].size());
  }
  if (combos > 5e7) throw TooLarge("policy lattice has more than 5e7 points");

  // Per-candidate scratch: dense chain, picked row indices, reward/entropy
  // summaries per (state, grid row).
  std::vector<std::vector<double>> reward_of(static_cast<std::size_t>(n));
  std::vector<std::vector<double>> entropy_of(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s) {
    const auto& g = grids[static_cast<std::size_t>(s)];
    auto& rw = reward_of[static_cast<std::size_t>(s)];
    auto& en = entropy_of[static_cast<std::size_t>(s)];
    rw.resize(g.size());
    en.resize(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      double r = 0.0, h = 0.0;
      for (int a = 0; a < mdp.action_count[static_cast<std::size_t>(s)]; ++a) {
        const double pa = g[i][static_cast<std::size_t>(a)];
        r += pa * mdp.rewards[static_cast<std::size_t>(s)][static_cast<std::size_t>(a)];
        if (pa > 0.0) h -= pa * std::log(pa);
      }
      rw[i] = r;
      en[i] = h;
    }
  }

  std::vector<std::size_t> pick(static_cast<std::size_t>(n), 0);
  std::vector<std::vector<double>> chain(
      static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n), 0.0));
  auto set_chain_row = [&](int s) {
    auto& row = chain[static_cast<std::size_t>(s)];
    std::fill(row.begin(), row.end(), 0.0);
    const auto& pi_row = grids[static_cast<std::size_t>(s)][pick[static_cast<std::size_t>(s)]];
    for (int a = 0; a < mdp.action_count[static_cast<std::size_t>(s)]; ++a)
      for (const auto& tr : mdp.transitions[static_cast<std::size_t>(s)][static_cast<std::size_t>(a)])
        row[static_cast<std::size_t>(tr.next)] += pi_row[static_cast<std::size_t>(a)] * tr.prob;
  };
  for (int s = 0; s < n; ++s) set_chain_row(s);

  OracleResult best;
  best.grid_resolution = resolution;
  double best_score = -std::numeric_limits<double>::infinity();
  std::vector<std::size_t> best_pick = pick;
  std::vector<double> d;

  for (;;) {
    ++best.evaluations;
    if (!stationary_direct(chain, d)) {
      // Rare singular corner; score through the iterative path instead.
      Policy cand;
      cand.pi.resize(static_cast<std::size_t>(n));
      for (int s = 0; s < n; ++s)
        cand.pi[static_cast<std::size_t>(s)] = grids[static_cast<std::size_t>(s)][pick[static_cast<std::size_t>(s)]];
      d = stationary_distribution(mdp, cand).dist;
    }
    double score = 0.0;
    for (int s = 0; s < n; ++s) {
      const double ds = d[static_cast<std::size_t>(s)];
      score += ds * (reward_of[static_cast<std::size_t>(s)][pick[static_cast<std::size_t>(s)]] +
                     alpha * entropy_of[static_cast<std::size_t>(s)][pick[static_cast<std::size_t>(s)]]);
      if (ds > 0.0) score -= beta * ds * std::log(ds);
    }
    if (score > best_score) {
      best_score = score;
      best_pick = pick;
    }

    int s = 0;
    while (s < n) {
      if (++pick[static_cast<std::size_t>(s)] < grids[static_cast<std::size_t>(s)].size()) {
        set_chain_row(s);
        break;
      }
      pick[static_cast<std::size_t>(s)] = 0;
      set_chain_row(s);
      ++s;
    }
    if (s == n) break;
  }

  best.best_policy.pi.resize(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s)
    best.best_policy.pi[static_cast<std::size_t>(s)] =
        grids[static_cast<std::size_t>(s)][best_pick[static_cast<std::size_t>(s)]];
  const PolicyOccupancy po = occupancy_from_policy(mdp, best.best_policy);
  best.best_occupancy = po.occupancy;
  best.best_value = average_total_reward(best.best_occupancy, mdp, alpha, beta);
  return best;
}

std::vector<double> finite_difference_gradient(const ValueVector& v, const Mdp& mdp,
                                               double alpha, double beta, double eps) {
  if (!(eps >= 1e-9 && eps <= 1e-3))
    throw std::invalid_argument("finite-difference step must lie in [1e-9, 1e-3]");
  std::vector<double> g(v.size(), 0.0);
  ValueVector probe = v;
  for (std::size_t i = 0; i < v.size(); ++i) {
    probe[i] = v[i] + eps;
    const double up = dual_value(probe, mdp, alpha, beta);
    probe[i] = v[i] - eps;
    const double dn = dual_value(probe, mdp, alpha, beta);
    probe[i] = v[i];
    g[i] = (up - dn) / (2.0 * eps);
  }
  return g;
}

}  // namespace occumax

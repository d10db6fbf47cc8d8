#include "occumax/environments.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "occumax/errors.hpp"

namespace occumax {
namespace {

// log(1 + n e^x) without overflow on either side.
double log1p_n_exp(int n, double x) {
  if (x > 0.0) return x + std::log(static_cast<double>(n)) + std::log1p(std::exp(-x) / n);
  return std::log1p(n * std::exp(x));
}

// 1 / (1 + e^x), stable for large |x|.
double logistic_neg(double x) {
  if (x > 0.0) {
    const double e = std::exp(-x);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(x));
}

void fill_flow_masses(int n, ToyClosedForm& cf) {
  cf.p_hub = 1.0 / (2.0 * (2.0 - cf.pi_hub));
  cf.p_inner = (1.0 - 2.0 * cf.p_hub) / n;
}

}  // namespace

Mdp make_toy(int n) {
  if (n < 1) throw std::invalid_argument("toy family needs at least one interior state");
  Mdp m;
  m.num_states = n + 2;
  m.action_count.assign(m.num_states, 0);
  m.transitions.resize(m.num_states);
  m.rewards.resize(m.num_states);
  m.state_names.resize(m.num_states);
  for (int hub = 0; hub < 2; ++hub) {
    m.action_count[hub] = n + 1;
    m.transitions[hub].push_back({{1 - hub, 1.0}});
    for (int k = 0; k < n; ++k) m.transitions[hub].push_back({{2 + k, 1.0}});
    m.rewards[hub].assign(n + 1, 0.0);
    m.state_names[hub] = "hub" + std::to_string(hub);
  }
  for (int k = 0; k < n; ++k) {
    const int s = 2 + k;
    m.action_count[s] = 2;
    m.transitions[s] = {{{0, 1.0}}, {{1, 1.0}}};
    m.rewards[s].assign(2, 0.0);
    m.state_names[s] = "inner" + std::to_string(k + 1);
  }
  return m;
}

ToyClosedForm toy_closed_form(int n, double alpha, double beta) {
  if (n < 1) throw std::invalid_argument("toy family needs at least one interior state");
  if (alpha < 0.0 || beta < 0.0) throw InvalidWeights("entropy weights must be non-negative");
  if (alpha == 0.0 && beta == 0.0)
    throw InvalidWeights("the unregularized toy optimum is degenerate, need alpha > 0 or beta > 0");

  ToyClosedForm cf;
  const double log2 = std::log(2.0);

  if (beta == 0.0) {
    // Hub self-consistency 1 + n e^{-u/a} = 2 e^{u/a} solved in t = e^{u/a}.
    const double t = (1.0 + std::sqrt(1.0 + 8.0 * n)) / 4.0;
    cf.u = alpha * std::log(t);
    cf.pi_hub = t / (t + n);
    fill_flow_masses(n, cf);
    return cf;
  }
  if (alpha == 0.0) {
    cf.u = (n == 1) ? 0.0 : -beta * std::log(n / 2.0) / 2.0;
    cf.pi_hub = logistic_neg(std::log(static_cast<double>(n)) - cf.u / beta);
    fill_flow_masses(n, cf);
    return cf;
  }

  // Interior regime: the hub/interior mass ratio matches both the flow
  // equations and the state-weight formula exactly when
  //   (a/b - 1) (log(1 + n e^{-u/a}) - log 2) = u/a + u/b.
  // The residual is strictly decreasing in u, so bisection is safe.
  const auto residual = [&](double u) {
    return (alpha / beta - 1.0) * (log1p_n_exp(n, -u / alpha) - log2) - u / alpha - u / beta;
  };
  const double scale = std::max({1.0, alpha, beta});
  double lo = -50.0 * scale, hi = 50.0 * scale;
  double flo = residual(lo), fhi = residual(hi);
  for (int grow = 0; (flo < 0.0 || fhi > 0.0) && grow < 24; ++grow) {
    lo *= 2.0;
    hi *= 2.0;
    flo = residual(lo);
    fhi = residual(hi);
  }
  if (flo < 0.0 || fhi > 0.0) throw BracketFailure("no sign change for the toy optimality residual");
  for (int it = 0; it < 300 && hi - lo > 1e-13 * std::max(1.0, std::abs(lo) + std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (residual(mid) >= 0.0)
      lo = mid;
    else
      hi = mid;
  }
  cf.u = 0.5 * (lo + hi);
  cf.pi_hub = logistic_neg(std::log(static_cast<double>(n)) - cf.u / alpha);
  fill_flow_masses(n, cf);
  return cf;
}

std::pair<Mdp, GridSpec> make_gridworld(int corridor_len) {
  if (corridor_len < 1) throw std::invalid_argument("corridor length must be at least 1");
  GridSpec g;
  g.corridor_len = corridor_len;
  g.cols = 3 + corridor_len;
  g.state_of_cell.assign(static_cast<std::size_t>(g.rows * g.cols), -1);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) g.state_of_cell[static_cast<std::size_t>(r * g.cols + c)] = r * 3 + c;
  for (int j = 0; j < corridor_len; ++j)
    g.state_of_cell[static_cast<std::size_t>(1 * g.cols + 3 + j)] = 9 + j;

  const int num_states = 9 + corridor_len;
  g.cell_of_state.resize(static_cast<std::size_t>(num_states));
  for (int r = 0; r < g.rows; ++r)
    for (int c = 0; c < g.cols; ++c) {
      const int s = g.state_at(r, c);
      if (s >= 0) g.cell_of_state[static_cast<std::size_t>(s)] = {r, c};
    }

  Mdp m;
  m.num_states = num_states;
  m.action_count.assign(num_states, 0);
  m.transitions.resize(num_states);
  m.rewards.resize(num_states);
  m.state_names.resize(num_states);
  for (int s = 0; s < num_states; ++s) {
    const auto [r, c] = g.cell_of_state[static_cast<std::size_t>(s)];
    m.state_names[s] = "cell_" + std::to_string(r) + "_" + std::to_string(c);
    m.transitions[s].push_back({{s, 1.0}});  // stay
    for (int dr = -1; dr <= 1; ++dr)
      for (int dc = -1; dc <= 1; ++dc) {
        if (dr == 0 && dc == 0) continue;
        const int t = g.state_at(r + dr, c + dc);
        if (t >= 0) m.transitions[s].push_back({{t, 1.0}});
      }
    m.action_count[s] = static_cast<int>(m.transitions[s].size());
    m.rewards[s].assign(static_cast<std::size_t>(m.action_count[s]), 0.0);
  }
  return {std::move(m), std::move(g)};
}

Mdp make_ring(int n) {
  if (n < 2) throw std::invalid_argument("ring needs at least two states");
  Mdp m;
  m.num_states = n;
  m.action_count.assign(n, 2);
  m.transitions.resize(n);
  m.rewards.resize(n);
  m.state_names.resize(n);
  for (int s = 0; s < n; ++s) {
    m.transitions[s] = {{{(s + n - 1) % n, 1.0}}, {{(s + 1) % n, 1.0}}};
    m.rewards[s].assign(2, 0.0);
    m.state_names[s] = "s" + std::to_string(s);
  }
  return m;
}

}  // namespace occumax

#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "occumax/dual.hpp"
#include "occumax/environments.hpp"
#include "occumax/errors.hpp"
#include "occumax/limit_solvers.hpp"
#include "occumax/primal.hpp"
#include "support/random_mdp.hpp"

using namespace occumax;

namespace {

// Soft value gain per state, alpha * log sum_a exp(A(s,a)/alpha). Constant
// across states exactly when v solves the action-entropy-only problem.
std::vector<double> per_state_gain(const ValueVector& v, const Mdp& m, double alpha) {
  const auto a = advantage(v, m);
  std::vector<double> out(m.num_states);
  for (int s = 0; s < m.num_states; ++s) {
    double top = a[s][0];
    for (double x : a[s]) top = std::max(top, x);
    double acc = 0.0;
    for (double x : a[s]) acc += std::exp((x - top) / alpha);
    out[s] = top + alpha * std::log(acc);
  }
  return out;
}

Mdp absorbing_pair() {
  Mdp m;
  m.num_states = 2;
  m.action_count = {2, 1};
  m.transitions = {{{{0, 1.0}}, {{1, 1.0}}}, {{{1, 1.0}}}};
  m.rewards = {{0.0, 0.0}, {0.0}};
  return m;
}

}  // namespace

TEST_CASE("action-entropy-only solve equalizes the per-state gain") {
  std::mt19937_64 rng(101);
  const Mdp m = testsupport::random_dense_mdp(rng, 6, 4);
  const LimitSolution sol = solve_beta_zero(m, 0.8);
  REQUIRE(sol.converged);
  CHECK(sol.regime == LimitRegime::kBetaZero);
  CHECK(sol.smoothing_eps == 0.0);
  const auto gain = per_state_gain(sol.v_star, m, 0.8);
  for (double g : gain) CHECK(g == doctest::Approx(sol.eta).epsilon(1e-8).scale(1.0));
  // Reported gain equals the reward of the reported occupancy at beta = 0.
  CHECK(sol.eta ==
        doctest::Approx(average_total_reward(sol.p_star, m, 0.8, 0.0)).epsilon(1e-7));
  CHECK(flow_residual(m, sol.p_star) < 1e-8);
}

TEST_CASE("action-entropy-only value gap on the toy chain") {
  // u solves e^{u/alpha} = (1 + sqrt(1 + 8n)) / 4 at alpha = 1.
  const Mdp toy = make_toy(2);
  const LimitSolution sol = solve_beta_zero(toy, 1.0);
  REQUIRE(sol.converged);
  const double u = sol.v_star[0] - sol.v_star[2];
  CHECK(u == doctest::Approx(std::log(1.0 + std::sqrt(17.0)) - 2.0 * std::log(2.0))
                 .epsilon(1e-8));
  // Policy is the softmax of the advantage.
  const auto a = advantage(sol.v_star, toy);
  for (int s = 0; s < toy.num_states; ++s) {
    double acc = 0.0;
    for (double x : a[s]) acc += std::exp(x);
    for (int ai = 0; ai < toy.action_count[s]; ++ai)
      CHECK(sol.pi_star.pi[s][ai] ==
            doctest::Approx(std::exp(a[s][ai]) / acc).epsilon(1e-7));
  }
}

TEST_CASE("state-entropy-only solve on the symmetric ring") {
  const Mdp ring = make_ring(5);
  const LimitSolution sol = solve_alpha_zero(ring, 1.0);
  REQUIRE(sol.converged);
  CHECK(sol.regime == LimitRegime::kAlphaZero);
  CHECK(sol.smoothing_eps == doctest::Approx(1e-3));
  CHECK(sol.eta == doctest::Approx(std::log(5.0)).epsilon(1e-6));
  for (double d : sol.state_dist) CHECK(d == doctest::Approx(0.2).epsilon(1e-4));
  // Every state's two moves are equally good, so nothing is unique.
  CHECK_FALSE(sol.unique_policy);
  CHECK(sol.tie_states.size() == 5);
  for (const auto& set : sol.tie_sets) CHECK(set == std::vector<int>{0, 1});
}

TEST_CASE("state-entropy-only solve on the toy chain") {
  const Mdp toy = make_toy(4);
  const LimitSolution sol = solve_alpha_zero(toy, 1.0);
  REQUIRE(sol.converged);
  const double u = sol.v_star[0] - sol.v_star[2];
  CHECK(u == doctest::Approx(-0.5 * std::log(2.0)).epsilon(1e-6).scale(1.0));
  // Entropy of (1/4, 1/4, 1/8 x4) is 2.5 log 2.
  CHECK(sol.eta == doctest::Approx(2.5 * std::log(2.0)).epsilon(1e-6));
  CHECK(sol.state_dist[0] == doctest::Approx(0.25).epsilon(2e-2));
  CHECK(flow_residual(toy, sol.p_star) < 1e-6);
  // Hub-to-interior moves all tie; so do the two hub choices of each
  // interior state.
  CHECK_FALSE(sol.unique_policy);
  CHECK(std::find(sol.tie_states.begin(), sol.tie_states.end(), 0) !=
        sol.tie_states.end());
}

TEST_CASE("unregularized gain on hand-checked chains") {
  // Two-state ring where one direction pays 1: alternate for gain 1/2.
  Mdp ring2 = make_ring(2);
  ring2.rewards[0][1] = 1.0;
  const LimitSolution a = solve_unregularized(ring2);
  REQUIRE(a.converged);
  CHECK(a.regime == LimitRegime::kUnregularized);
  CHECK(a.eta == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(a.pi_star.pi[0][1] == 1.0);
  // Both of state 1's moves land on state 0 with zero reward: a tie.
  CHECK(a.tie_states == std::vector<int>{1});
  CHECK_FALSE(a.unique_policy);

  // One-directional 3-cycle with a single rewarded edge: gain 1/3.
  Mdp cyc;
  cyc.num_states = 3;
  cyc.action_count = {1, 1, 1};
  cyc.transitions = {{{{1, 1.0}}}, {{{2, 1.0}}}, {{{0, 1.0}}}};
  cyc.rewards = {{1.0}, {0.0}, {0.0}};
  const LimitSolution b = solve_unregularized(cyc);
  REQUIRE(b.converged);
  CHECK(b.eta == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
  CHECK(b.unique_policy);

  // Staying on a rewarded self loop beats leaving it.
  Mdp lazy;
  lazy.num_states = 2;
  lazy.action_count = {2, 1};
  lazy.transitions = {{{{0, 1.0}}, {{1, 1.0}}}, {{{0, 1.0}}}};
  lazy.rewards = {{1.0, 0.0}, {0.0}};
  const LimitSolution c = solve_unregularized(lazy);
  REQUIRE(c.converged);
  CHECK(c.eta == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(c.pi_star.pi[0][0] == 1.0);
  CHECK(c.state_dist[0] == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("hard-max solvers insist on a communicating chain") {
  const Mdp m = absorbing_pair();
  CHECK_THROWS_AS(solve_beta_zero(m, 1.0), NotCommunicating);
  CHECK_THROWS_AS(solve_unregularized(m), NotCommunicating);
}

TEST_CASE("state-entropy limit tolerates an absorbing state") {
  // Feasible flow forces p(s0,leave)=0, so the objective reduces to the
  // state entropy H(x) for mass split (x, 1-x); optimum x=1/2, eta=log 2.
  const Mdp m = absorbing_pair();
  const LimitSolution sol = solve_alpha_zero(m, 1.0);
  CHECK(sol.eta == doctest::Approx(std::log(2.0)).epsilon(1e-6));
  CHECK(sol.state_dist[0] == doctest::Approx(0.5).epsilon(1e-5));
  CHECK(sol.state_dist[1] == doctest::Approx(0.5).epsilon(1e-5));
}

TEST_CASE("limit solvers validate their weight") {
  const Mdp toy = make_toy(1);
  CHECK_THROWS_AS(solve_beta_zero(toy, 0.0), InvalidWeights);
  CHECK_THROWS_AS(solve_beta_zero(toy, -2.0), InvalidWeights);
  CHECK_THROWS_AS(solve_alpha_zero(toy, 0.0), InvalidWeights);
}

TEST_CASE("regime names") {
  CHECK(std::string(regime_name(LimitRegime::kBetaZero)) == "beta-zero");
  CHECK(std::string(regime_name(LimitRegime::kAlphaZero)) == "alpha-zero");
  CHECK(std::string(regime_name(LimitRegime::kUnregularized)) == "unregularized");
}

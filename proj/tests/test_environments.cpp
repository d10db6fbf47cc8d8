#include "doctest.h"

#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include "occumax/environments.hpp"
#include "occumax/errors.hpp"
#include "occumax/mdp.hpp"

using namespace occumax;

namespace {

bool is_deterministic(const Mdp& m) {
  for (const auto& state : m.transitions)
    for (const auto& row : state) {
      if (row.size() != 1) return false;
      if (std::abs(row[0].prob - 1.0) > 0.0) return false;
    }
  return true;
}

bool all_rewards_zero(const Mdp& m) {
  for (const auto& row : m.rewards)
    for (double r : row)
      if (r != 0.0) return false;
  return true;
}

double toy_residual(double u, int n, double alpha, double beta) {
  return (alpha / beta - 1.0) *
             (std::log(1.0 + n * std::exp(-u / alpha)) - std::log(2.0)) -
         u / alpha - u / beta;
}

}  // namespace

TEST_CASE("toy family shape") {
  for (int n : {1, 2, 5}) {
    const Mdp m = make_toy(n);
    REQUIRE(validate_mdp(m).empty());
    CHECK(m.num_states == n + 2);
    CHECK(m.action_count[0] == n + 1);
    CHECK(m.action_count[1] == n + 1);
    for (int s = 2; s < m.num_states; ++s) CHECK(m.action_count[s] == 2);
    CHECK(m.total_pairs() == 4 * n + 2);
    CHECK(is_deterministic(m));
    CHECK(all_rewards_zero(m));
    // Hub action 0 hops hubs; action k enters interior state k + 1.
    CHECK(m.transitions[0][0][0].next == 1);
    CHECK(m.transitions[1][0][0].next == 0);
    for (int k = 1; k <= n; ++k) {
      CHECK(m.transitions[0][k][0].next == k + 1);
      CHECK(m.transitions[1][k][0].next == k + 1);
    }
    // Interior states go back to one hub per action.
    for (int s = 2; s < m.num_states; ++s) {
      CHECK(m.transitions[s][0][0].next == 0);
      CHECK(m.transitions[s][1][0].next == 1);
    }
    CHECK(reachability_check(m).communicating);
  }
  CHECK_THROWS_AS(make_toy(0), std::invalid_argument);
}

TEST_CASE("toy closed form satisfies the optimality residual") {
  for (int n : {1, 2, 3, 7}) {
    for (auto [alpha, beta] :
         {std::pair{1.0, 1.0}, std::pair{2.0, 1.0}, std::pair{0.5, 1.5}, std::pair{3.0, 0.2}}) {
      const ToyClosedForm cf = toy_closed_form(n, alpha, beta);
      CHECK(std::abs(toy_residual(cf.u, n, alpha, beta)) < 1e-10);
      // Softmax identity and flow bookkeeping.
      CHECK(cf.pi_hub ==
            doctest::Approx(1.0 / (1.0 + n * std::exp(-cf.u / alpha))).epsilon(1e-12));
      CHECK(cf.p_hub == doctest::Approx(1.0 / (2.0 * (2.0 - cf.pi_hub))).epsilon(1e-12));
      CHECK(2.0 * cf.p_hub + n * cf.p_inner == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("toy closed form at equal weights is uniform over edges") {
  for (int n : {1, 2, 3, 10}) {
    const ToyClosedForm cf = toy_closed_form(n, 1.7, 1.7);
    CHECK(cf.u == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    CHECK(cf.pi_hub == doctest::Approx(1.0 / (n + 1.0)).epsilon(1e-12));
    CHECK(cf.p_hub == doctest::Approx((n + 1.0) / (2.0 * (2.0 * n + 1.0))).epsilon(1e-12));
    CHECK(cf.p_inner == doctest::Approx(1.0 / (2.0 * n + 1.0)).epsilon(1e-12));
  }
}

TEST_CASE("toy closed form frozen values") {
  CHECK(toy_closed_form(2, 2.0, 1.0).u == doctest::Approx(0.221917896).epsilon(1e-8));
  CHECK(toy_closed_form(2, 0.5, 1.5).u == doctest::Approx(-0.15595267909).epsilon(1e-8));
  CHECK(toy_closed_form(3, 0.5, 1.5).u == doctest::Approx(-0.288524726).epsilon(1e-8));
}

TEST_CASE("toy closed form limit branches") {
  // Action entropy only: e^{u/alpha} = (1 + sqrt(1 + 8n)) / 4.
  const ToyClosedForm b0 = toy_closed_form(2, 1.0, 0.0);
  const double t = (1.0 + std::sqrt(17.0)) / 4.0;
  CHECK(b0.u == doctest::Approx(std::log(t)).epsilon(1e-12));
  CHECK(b0.pi_hub == doctest::Approx(t / (t + 2.0)).epsilon(1e-12));

  // State entropy only, unit-temperature convention u = -beta log(n/2) / 2.
  const ToyClosedForm a0 = toy_closed_form(4, 0.0, 1.0);
  CHECK(a0.u == doctest::Approx(-0.5 * std::log(2.0)).epsilon(1e-12));
  // e^{-u/beta} = sqrt(2), so the hub action keeps weight 1/(1 + 4 sqrt 2).
  const double pi0 = 1.0 / (1.0 + 4.0 * std::sqrt(2.0));
  CHECK(a0.pi_hub == doctest::Approx(pi0).epsilon(1e-12));
  CHECK(a0.p_hub == doctest::Approx(1.0 / (2.0 * (2.0 - pi0))).epsilon(1e-12));
  // One interior state makes both branches symmetric: u = 0.
  CHECK(toy_closed_form(1, 0.0, 2.0).u == doctest::Approx(0.0).scale(1.0));

  CHECK_THROWS_AS(toy_closed_form(2, 0.0, 0.0), InvalidWeights);
  CHECK_THROWS_AS(toy_closed_form(2, -1.0, 1.0), InvalidWeights);
  CHECK_THROWS_AS(toy_closed_form(0, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("gridworld geometry and action counts") {
  const auto [m, spec] = make_gridworld(5);
  REQUIRE(validate_mdp(m).empty());
  CHECK(m.num_states == 14);
  CHECK(spec.cols == 8);
  const std::vector<int> expected = {4, 6, 5, 6, 9, 7, 4, 6, 5, 5, 3, 3, 3, 2};
  CHECK(m.action_count == expected);
  CHECK(m.total_pairs() == 68);
  CHECK(is_deterministic(m));
  CHECK(all_rewards_zero(m));
  CHECK(reachability_check(m).communicating);

  // Cell table and state table invert each other.
  for (int s = 0; s < m.num_states; ++s) {
    const auto [r, c] = spec.cell_of_state[s];
    CHECK(spec.state_at(r, c) == s);
  }
  CHECK(spec.state_at(0, 3) == -1);  // wall beside the corridor
  CHECK(spec.state_at(1, 3) == 9);
  CHECK(spec.state_at(-1, 0) == -1);
  CHECK(spec.junction_state() == 5);
  CHECK(m.action_count[spec.junction_state()] == 7);
  CHECK_FALSE(spec.is_corridor(8));
  CHECK(spec.is_corridor(9));

  // Stay is always action 0.
  for (int s = 0; s < m.num_states; ++s) {
    CHECK(m.transitions[s][0].size() == 1);
    CHECK(m.transitions[s][0][0].next == s);
  }

  // Every move has a reverse move, so the edge multiset is symmetric.
  std::map<std::pair<int, int>, int> edges;
  for (int s = 0; s < m.num_states; ++s)
    for (int a = 1; a < m.action_count[s]; ++a)
      ++edges[{s, m.transitions[s][a][0].next}];
  for (const auto& [edge, count] : edges) {
    const auto rev = edges.find({edge.second, edge.first});
    REQUIRE(rev != edges.end());
    CHECK(rev->second == count);
  }
}

TEST_CASE("gridworld with the shortest corridor") {
  const auto [m, spec] = make_gridworld(1);
  CHECK(m.num_states == 10);
  CHECK(m.action_count[9] == 4);  // stay plus three room cells
  CHECK(m.total_pairs() == 56);
  CHECK(spec.is_corridor(9));
  CHECK_THROWS_AS(make_gridworld(0), std::invalid_argument);
}

TEST_CASE("ring walker") {
  const Mdp m = make_ring(5);
  REQUIRE(validate_mdp(m).empty());
  CHECK(m.num_states == 5);
  for (int s = 0; s < 5; ++s) {
    CHECK(m.action_count[s] == 2);
    CHECK(m.transitions[s][0][0].next == (s + 4) % 5);
    CHECK(m.transitions[s][1][0].next == (s + 1) % 5);
  }
  CHECK(m.state_names[0] == "s0");
  CHECK(m.state_names[4] == "s4");
  CHECK(reachability_check(m).communicating);

  // The two-state ring collapses both moves onto the other state.
  const Mdp two = make_ring(2);
  CHECK(two.transitions[0][0][0].next == 1);
  CHECK(two.transitions[0][1][0].next == 1);
  CHECK_THROWS_AS(make_ring(1), std::invalid_argument);
}

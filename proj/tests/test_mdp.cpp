#include "doctest.h"

#include <cmath>

#include "occumax/environments.hpp"
#include "occumax/errors.hpp"
#include "occumax/mdp.hpp"

using namespace occumax;

namespace {

Mdp two_state_swap() {
  Mdp m;
  m.num_states = 2;
  m.action_count = {1, 1};
  m.transitions = {{{{1, 1.0}}}, {{{0, 1.0}}}};
  m.rewards = {{0.0}, {0.0}};
  return m;
}

Mdp absorbing_pair() {
  // s0 {stay, go}, s1 {stay}; s1 absorbs.
  Mdp m;
  m.num_states = 2;
  m.action_count = {2, 1};
  m.transitions = {{{{0, 1.0}}, {{1, 1.0}}}, {{{1, 1.0}}}};
  m.rewards = {{0.0, 0.0}, {0.0}};
  return m;
}

}  // namespace

TEST_CASE("validation accepts the generated families") {
  CHECK(validate_mdp(make_toy(3)).empty());
  CHECK(validate_mdp(make_ring(6)).empty());
  CHECK(validate_mdp(make_gridworld(4).first).empty());
}

TEST_CASE("validation flags structural defects") {
  Mdp m = two_state_swap();
  m.transitions[0][0][0].prob = 0.9;
  CHECK_FALSE(validate_mdp(m).empty());
  CHECK_THROWS_AS(require_valid(m), InvalidMdp);

  m = two_state_swap();
  m.transitions[1][0][0].next = 7;
  CHECK_FALSE(validate_mdp(m).empty());

  m = two_state_swap();
  m.rewards[0][0] = std::nan("");
  CHECK_FALSE(validate_mdp(m).empty());

  m = two_state_swap();
  m.rewards[0].push_back(1.0);  // shape mismatch
  CHECK_FALSE(validate_mdp(m).empty());

  m = two_state_swap();
  m.action_count[0] = 0;
  m.transitions[0].clear();
  m.rewards[0].clear();
  CHECK_FALSE(validate_mdp(m).empty());
}

TEST_CASE("violations format into readable text") {
  Mdp m = two_state_swap();
  m.transitions[0][0][0].prob = -0.25;
  const auto v = validate_mdp(m);
  REQUIRE_FALSE(v.empty());
  CHECK(format_violations(v).find("state 0") != std::string::npos);
}

TEST_CASE("reachability classifies the standard shapes") {
  const auto toy = reachability_check(make_toy(2));
  CHECK(toy.communicating);
  CHECK(toy.num_components == 1);
  for (bool a : toy.absorbing) CHECK_FALSE(a);

  const auto absorbed = reachability_check(absorbing_pair());
  CHECK_FALSE(absorbed.communicating);
  CHECK_FALSE(absorbed.absorbing[0]);
  CHECK(absorbed.absorbing[1]);
  CHECK(absorbed.num_components == 1);  // weakly connected through the go action
}

TEST_CASE("disconnected pieces get distinct component ids") {
  // Two independent swaps in one MDP.
  Mdp m;
  m.num_states = 4;
  m.action_count = {1, 1, 1, 1};
  m.transitions = {{{{1, 1.0}}}, {{{0, 1.0}}}, {{{3, 1.0}}}, {{{2, 1.0}}}};
  m.rewards = {{0.0}, {0.0}, {0.0}, {0.0}};
  const auto rep = reachability_check(m);
  CHECK_FALSE(rep.communicating);
  CHECK(rep.num_components == 2);
  CHECK(rep.component[0] == rep.component[1]);
  CHECK(rep.component[2] == rep.component[3]);
  CHECK(rep.component[0] != rep.component[2]);
}

TEST_CASE("kl shift folds reference distributions into rewards") {
  Mdp m = two_state_swap();
  m.rewards[0][0] = 0.5;
  DefaultDistributions d;
  d.policy = {{1.0}, {1.0}};
  d.state_dist = {0.25, 0.75};
  const Mdp shifted = apply_kl_shift(m, d, 2.0, 3.0);
  // r + alpha*log pi0 + beta*log p0, log 1 = 0.
  CHECK(shifted.rewards[0][0] == doctest::Approx(0.5 + 3.0 * std::log(0.25)).epsilon(1e-12));
  CHECK(shifted.rewards[1][0] == doctest::Approx(3.0 * std::log(0.75)).epsilon(1e-12));
}

TEST_CASE("kl shift floors log zero instead of producing -inf") {
  Mdp m = absorbing_pair();
  DefaultDistributions d;
  d.policy = {{0.0, 1.0}, {1.0}};
  const Mdp shifted = apply_kl_shift(m, d, 1.0, 0.0);
  CHECK(shifted.rewards[0][0] == doctest::Approx(kLogFloor));
  CHECK(shifted.rewards[0][1] == 0.0);
  CHECK(std::isfinite(shifted.rewards[0][0]));
}

TEST_CASE("kl shift with zero weight ignores that reference entirely") {
  Mdp m = absorbing_pair();
  DefaultDistributions d;
  d.policy = {{0.0, 1.0}, {1.0}};
  d.state_dist = {1.0, 0.0};
  const Mdp shifted = apply_kl_shift(m, d, 0.0, 0.0);
  CHECK(shifted.rewards[0][0] == 0.0);
  CHECK(shifted.rewards[1][0] == 0.0);
}

TEST_CASE("kl shift rejects negative weights") {
  CHECK_THROWS_AS(apply_kl_shift(two_state_swap(), {}, -1.0, 0.0), InvalidWeights);
}

TEST_CASE("default distribution validation checks shape and normalization") {
  const Mdp m = two_state_swap();
  DefaultDistributions d;
  d.state_dist = {0.5, 0.6};
  CHECK_FALSE(validate_defaults(m, d).empty());
  d.state_dist = {0.5, 0.5};
  d.policy = {{0.7}, {1.0}};  // row does not sum to 1
  CHECK_FALSE(validate_defaults(m, d).empty());
  d.policy = {{1.0}, {1.0}};
  CHECK(validate_defaults(m, d).empty());
}

TEST_CASE("total pairs counts the ragged table size") {
  CHECK(make_toy(2).total_pairs() == 2 * 3 + 2 * 2);
  CHECK(make_gridworld(5).first.total_pairs() == 68);
}

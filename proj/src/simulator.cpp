#include "occumax/simulator.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace occumax {
namespace {

double canonical(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

int pick_weighted(const std::vector<double>& w, double u) {
  double acc = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    acc += w[i];
    if (u < acc) return static_cast<int>(i);
  }
  return static_cast<int>(w.size()) - 1;
}

int pick_transition(const std::vector<Transition>& row, double u) {
  double acc = 0.0;
  for (std::size_t i = 0; i < row.size(); ++i) {
    acc += row[i].prob;
    if (u < acc) return row[i].next;
  }
  return row.back().next;
}

}  // namespace

Trajectory sample_trajectory(const Mdp& mdp, const Policy& policy, long steps,
                             std::uint64_t seed, int init_state) {
  require_valid(mdp);
  if (steps < 1) throw std::invalid_argument("need at least one step");
  if (static_cast<int>(policy.pi.size()) != mdp.num_states)
    throw std::invalid_argument("policy shape does not match the MDP");
  for (int s = 0; s < mdp.num_states; ++s) {
    const auto& row = policy.pi[static_cast<std::size_t>(s)];
    if (static_cast<int>(row.size()) != mdp.action_count[static_cast<std::size_t>(s)])
      throw std::invalid_argument("policy shape does not match the MDP");
    double sum = 0.0;
    for (double v : row) {
      if (!(v >= 0.0)) throw std::invalid_argument("policy entries must be non-negative");
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-8)
      throw std::invalid_argument("policy row " + std::to_string(s) + " does not sum to 1");
  }
  if (init_state >= mdp.num_states)
    throw std::invalid_argument("initial state out of range");

  std::mt19937_64 rng(seed);
  Trajectory traj;
  traj.steps = steps;
  traj.seed = seed;
  traj.visit_counts = make_table(mdp, 0.0);
  traj.states.reserve(static_cast<std::size_t>(steps));
  traj.actions.reserve(static_cast<std::size_t>(steps));

  int s = init_state;
  if (s < 0) {
    s = static_cast<int>(canonical(rng) * mdp.num_states);
    if (s >= mdp.num_states) s = mdp.num_states - 1;
  }
  traj.init_state = s;

  for (long t = 0; t < steps; ++t) {
    const int a = pick_weighted(policy.pi[static_cast<std::size_t>(s)], canonical(rng));
    traj.states.push_back(s);
    traj.actions.push_back(a);
    traj.visit_counts[static_cast<std::size_t>(s)][static_cast<std::size_t>(a)] += 1.0;
    s = pick_transition(mdp.transitions[static_cast<std::size_t>(s)][static_cast<std::size_t>(a)],
                        canonical(rng));
  }

  traj.state_freq.assign(static_cast<std::size_t>(mdp.num_states), 0.0);
  for (int st = 0; st < mdp.num_states; ++st) {
    double row_total = 0.0;
    for (double v : traj.visit_counts[static_cast<std::size_t>(st)]) row_total += v;
    traj.state_freq[static_cast<std::size_t>(st)] = row_total / static_cast<double>(steps);
  }
  return traj;
}

IntervalStats corridor_fraction(const Trajectory& traj, const GridSpec& grid,
                                int num_intervals) {
  if (num_intervals < 2) throw std::invalid_argument("need at least two intervals");
  if (traj.steps % num_intervals != 0)
    throw std::invalid_argument("steps must split evenly into intervals");
  IntervalStats st;
  st.interval_len = traj.steps / num_intervals;
  st.values.reserve(static_cast<std::size_t>(num_intervals));
  for (int k = 0; k < num_intervals; ++k) {
    long hits = 0;
    for (long i = k * st.interval_len; i < (k + 1) * st.interval_len; ++i)
      if (grid.is_corridor(traj.states[static_cast<std::size_t>(i)])) ++hits;
    st.values.push_back(static_cast<double>(hits) / static_cast<double>(st.interval_len));
  }
  for (double v : st.values) st.mean += v;
  st.mean /= num_intervals;
  double ss = 0.0;
  for (double v : st.values) ss += (v - st.mean) * (v - st.mean);
  st.std_error = std::sqrt(ss / (num_intervals - 1)) / std::sqrt(static_cast<double>(num_intervals));
  return st;
}

std::vector<std::vector<double>> occupancy_heatmap(const std::vector<double>& state_freq,
                                                   const GridSpec& grid) {
  if (static_cast<int>(state_freq.size()) != static_cast<int>(grid.cell_of_state.size()))
    throw std::invalid_argument("frequency vector does not match the grid");
  double total = 0.0;
  for (double v : state_freq) {
    if (!(v >= 0.0)) throw std::invalid_argument("frequencies must be non-negative");
    total += v;
  }
  if (total <= 0.0) throw std::invalid_argument("frequencies sum to zero");

  std::vector<std::vector<double>> heat(
      static_cast<std::size_t>(grid.rows),
      std::vector<double>(static_cast<std::size_t>(grid.cols), -1.0));
  for (std::size_t s = 0; s < grid.cell_of_state.size(); ++s) {
    const auto [r, c] = grid.cell_of_state[s];
    heat[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = state_freq[s] / total;
  }
  return heat;
}

std::string heatmap_csv(const std::vector<std::vector<double>>& heatmap) {
  std::ostringstream out;
  out.precision(12);
  for (const auto& row : heatmap) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      out << row[c];
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace occumax

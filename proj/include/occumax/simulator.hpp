#ifndef OCCUMAX_SIMULATOR_HPP
#define OCCUMAX_SIMULATOR_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "occumax/environments.hpp"
#include "occumax/mdp.hpp"
#include "occumax/primal.hpp"

namespace occumax {

// All sampling uses this engine; recorded in outputs so runs can be
// reproduced bit for bit.
inline constexpr const char* kRngName = "mt19937_64";

struct Trajectory {
  std::vector<int> states;         // state occupied at each step
  std::vector<int> actions;        // action chosen at each step
  Table visit_counts;              // raw (state, action) counts
  std::vector<double> state_freq;  // per-state visit fraction, sums to 1
  long steps = 0;
  std::uint64_t seed = 0;
  int init_state = 0;
};

// Rolls the policy forward. init_state < 0 draws the start uniformly.
// Policy rows must sum to 1 within 1e-8; sampling is inverse-CDF on
// uniform doubles built from the top 53 bits of the engine output, so
// results do not depend on library distribution internals.
Trajectory sample_trajectory(const Mdp& mdp, const Policy& policy, long steps,
                             std::uint64_t seed, int init_state = -1);

struct IntervalStats {
  std::vector<double> values;  // per-interval fraction of steps spent in the corridor
  double mean = 0.0;
  double std_error = 0.0;     // sample std (n-1) over sqrt(#intervals)
  long interval_len = 0;
};

// Splits the trajectory into equal intervals (steps must divide evenly,
// at least two intervals) and measures corridor occupancy per interval.
IntervalStats corridor_fraction(const Trajectory& traj, const GridSpec& grid,
                                int num_intervals);

// Visit frequencies arranged on the lattice, normalized to sum 1 over
// cells; wall positions carry -1.
std::vector<std::vector<double>> occupancy_heatmap(const std::vector<double>& state_freq,
                                                   const GridSpec& grid);

std::string heatmap_csv(const std::vector<std::vector<double>>& heatmap);

}  // namespace occumax

#endif

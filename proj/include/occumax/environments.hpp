#ifndef OCCUMAX_ENVIRONMENTS_HPP
#define OCCUMAX_ENVIRONMENTS_HPP

#include <utility>
#include <vector>

#include "occumax/mdp.hpp"

namespace occumax {

// Two hub states plus n interior states, all rewards zero, all
// transitions deterministic. Hub actions: index 0 hops to the other
// hub, indices 1..n enter interior state k. Interior states have two
// actions, one per hub. States: 0,1 hubs, 2..n+1 interior.
Mdp make_toy(int n);

// Closed-form optimum of the toy family. u is the value gap
// V(hub) - V(interior) in the mean-gauge sense; pi_hub is the
// probability of the hub-to-hub action; p_hub the per-hub state mass.
struct ToyClosedForm {
  double u = 0.0;
  double pi_hub = 0.0;
  double p_hub = 0.0;
  double p_inner = 0.0;
};

// Solves the scalar optimality condition for the toy family.
// alpha>0, beta>0 uses bisection on a strictly decreasing residual;
// beta==0 and alpha==0 use their algebraic limits. alpha==beta==0 is
// rejected. The alpha==0 branch reports pi_hub on the unit-temperature
// convention 1/(1 + n e^{-u/beta}).
ToyClosedForm toy_closed_form(int n, double alpha, double beta);

// Geometry of the room-and-corridor gridworld. Cells live on a
// 3 x (3+corridor_len) lattice; the room occupies columns 0..2, the
// corridor extends from the middle row. state_at returns -1 off-cell.
struct GridSpec {
  int rows = 3;
  int cols = 0;
  int corridor_len = 0;
  std::vector<int> state_of_cell;            // row-major rows x cols, -1 = wall
  std::vector<std::pair<int, int>> cell_of_state;

  int state_at(int r, int c) const {
    if (r < 0 || r >= rows || c < 0 || c >= cols) return -1;
    return state_of_cell[static_cast<std::size_t>(r * cols + c)];
  }
  bool is_corridor(int state) const { return state >= 9; }
  int junction_state() const { return 5; }   // room cell (1,2)
};

// 3x3 room with a length-N corridor attached at the middle-right cell.
// Moves: stay plus the 8-neighborhood restricted to cells; blocked
// directions are absent rather than self-loops. Action order: stay
// first, then (dr,dc) lexicographic. Rewards are zero.
std::pair<Mdp, GridSpec> make_gridworld(int corridor_len);

// Directed cycle walker: action 0 steps left, action 1 steps right,
// rewards zero. n >= 2.
Mdp make_ring(int n);

}  // namespace occumax

#endif

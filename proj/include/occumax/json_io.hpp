#ifndef OCCUMAX_JSON_IO_HPP
#define OCCUMAX_JSON_IO_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "occumax/dual.hpp"
#include "occumax/fixed_point.hpp"
#include "occumax/limit_solvers.hpp"
#include "occumax/mdp.hpp"
#include "occumax/simulator.hpp"

namespace occumax {

// Ordered so serialized output is byte-stable across runs.
using Json = nlohmann::ordered_json;

struct MdpBundle {
  Mdp mdp;
  DefaultDistributions defaults;
  Json meta;  // carried through untouched
};

// Schema: num_states, actions (per-state counts), transitions as
// [state][action] lists of [next, prob] pairs, rewards as [state][action],
// optional state_names, optional defaults {policy, state_dist}, optional
// meta object. Throws IoError on malformed input; the parsed MDP is also
// structurally validated.
MdpBundle mdp_from_json(const Json& j);
Json mdp_to_json(const Mdp& mdp, const DefaultDistributions& defaults = {},
                 const Json& meta = Json::object());

MdpBundle load_mdp_file(const std::string& path);

Json solver_config_to_json(const SolverConfig& config);

Json solution_to_json(const DualSolution& sol);
Json solution_to_json(const FixedPointSolution& sol);
Json solution_to_json(const LimitSolution& sol);

Json trajectory_to_json(const Trajectory& traj, bool include_sequence = false);
Json interval_stats_to_json(const IntervalStats& stats);

// FNV-1a, the 64-bit variant; used to fingerprint input files in manifests.
std::uint64_t fnv1a64(const std::string& bytes);
std::string hex64(std::uint64_t value);

// Run provenance block: tool name/version, verbatim command line, rng label,
// input file fingerprints, configuration echo, seed and wall time.
Json manifest_json(const std::string& command_line,
                   const std::vector<std::pair<std::string, std::string>>& input_hashes,
                   const Json& config_echo, std::uint64_t seed, double elapsed_ms);

std::string read_text_file(const std::string& path);      // IoError when unreadable
void save_text_file(const std::string& path, const std::string& text);
void save_json_file(const std::string& path, const Json& j);  // 2-space indent

}  // namespace occumax

#endif

#include "occumax/json_io.hpp"

#include <fstream>
#include <sstream>

#include "occumax/errors.hpp"
#include "occumax/version.hpp"

namespace occumax {
namespace {

Json table_to_json(const Table& t) {
  Json j = Json::array();
  for (const auto& row : t) j.push_back(row);
  return j;
}

Table table_from_json(const Json& j) {
  Table t;
  for (const auto& row : j) t.push_back(row.get<std::vector<double>>());
  return t;
}

}  // namespace

MdpBundle mdp_from_json(const Json& j) {
  MdpBundle bundle;
  try {
    Mdp& m = bundle.mdp;
    m.num_states = j.at("num_states").get<int>();
    m.action_count = j.at("actions").get<std::vector<int>>();
    for (const auto& state_rows : j.at("transitions")) {
      std::vector<std::vector<Transition>> rows;
      for (const auto& action_row : state_rows) {
        std::vector<Transition> row;
        for (const auto& pair : action_row) {
          if (!pair.is_array() || pair.size() != 2)
            throw IoError("transition entries must be [next, prob] pairs");
          row.push_back({pair[0].get<int>(), pair[1].get<double>()});
        }
        rows.push_back(std::move(row));
      }
      m.transitions.push_back(std::move(rows));
    }
    m.rewards = table_from_json(j.at("rewards"));
    if (j.contains("state_names"))
      m.state_names = j.at("state_names").get<std::vector<std::string>>();
    if (j.contains("defaults")) {
      const Json& d = j.at("defaults");
      if (d.contains("policy")) bundle.defaults.policy = table_from_json(d.at("policy"));
      if (d.contains("state_dist"))
        bundle.defaults.state_dist = d.at("state_dist").get<std::vector<double>>();
    }
    if (j.contains("meta")) bundle.meta = j.at("meta");
  } catch (const Json::exception& e) {
    throw IoError(std::string("malformed MDP JSON: ") + e.what());
  }
  require_valid(bundle.mdp);
  const auto issues = validate_defaults(bundle.mdp, bundle.defaults);
  if (!issues.empty()) throw InvalidMdp(format_violations(issues));
  return bundle;
}

Json mdp_to_json(const Mdp& mdp, const DefaultDistributions& defaults, const Json& meta) {
  Json j;
  j["num_states"] = mdp.num_states;
  j["actions"] = mdp.action_count;
  Json trans = Json::array();
  for (const auto& state_rows : mdp.transitions) {
    Json rows = Json::array();
    for (const auto& action_row : state_rows) {
      Json row = Json::array();
      for (const auto& tr : action_row) row.push_back(Json::array({tr.next, tr.prob}));
      rows.push_back(std::move(row));
    }
    trans.push_back(std::move(rows));
  }
  j["transitions"] = std::move(trans);
  j["rewards"] = table_to_json(mdp.rewards);
  if (!mdp.state_names.empty()) j["state_names"] = mdp.state_names;
  if (defaults.has_policy() || defaults.has_state_dist()) {
    Json d;
    if (defaults.has_policy()) d["policy"] = table_to_json(defaults.policy);
    if (defaults.has_state_dist()) d["state_dist"] = defaults.state_dist;
    j["defaults"] = std::move(d);
  }
  if (!meta.is_null() && !(meta.is_object() && meta.empty())) j["meta"] = meta;
  return j;
}

MdpBundle load_mdp_file(const std::string& path) {
  Json j;
  try {
    j = Json::parse(read_text_file(path));
  } catch (const Json::exception& e) {
    throw IoError(path + ": " + e.what());
  }
  return mdp_from_json(j);
}

Json solver_config_to_json(const SolverConfig& config) {
  Json j;
  j["grad_tol"] = config.grad_tol;
  j["value_tol"] = config.value_tol;
  j["max_iters"] = config.max_iters;
  j["initial_step"] = config.initial_step;
  j["armijo_c"] = config.armijo_c;
  j["backtrack_factor"] = config.backtrack_factor;
  j["v_clamp"] = config.v_clamp;
  j["gauge"] = gauge_name(config.gauge);
  return j;
}

Json solution_to_json(const DualSolution& sol) {
  Json j;
  j["solver"] = "dual";
  j["alpha"] = sol.alpha;
  j["beta"] = sol.beta;
  j["gauge"] = gauge_name(sol.gauge);
  j["converged"] = sol.converged;
  j["iterations"] = sol.iterations;
  j["r_max"] = sol.r_max;
  j["lambda"] = sol.lambda;
  j["grad_norm"] = sol.grad_norm;
  j["duality_gap"] = sol.duality_gap;
  j["flow_residual"] = sol.flow_residual;
  j["communicating"] = sol.communicating;
  j["v_star"] = sol.v_star;
  j["policy"] = table_to_json(sol.pi_star.pi);
  j["occupancy"] = table_to_json(sol.p_star.p);
  j["state_dist"] = sol.state_dist;
  j["clamped_states"] = sol.clamped_states;
  return j;
}

Json solution_to_json(const FixedPointSolution& sol) {
  Json j = solution_to_json(sol.solution);
  j["solver"] = "fixed_point";
  j["converged"] = sol.converged;
  j["scheme"] = scheme_name(sol.scheme);
  j["sweeps"] = sol.sweeps;
  j["z_residual"] = sol.z_residual;
  j["z_final"] = sol.z_final;
  return j;
}

Json solution_to_json(const LimitSolution& sol) {
  Json j;
  j["solver"] = "limit";
  j["regime"] = regime_name(sol.regime);
  j["alpha"] = sol.alpha;
  j["beta"] = sol.beta;
  j["converged"] = sol.converged;
  j["iterations"] = sol.iterations;
  j["eta"] = sol.eta;
  j["v_star"] = sol.v_star;
  j["policy"] = table_to_json(sol.pi_star.pi);
  j["occupancy"] = table_to_json(sol.p_star.p);
  j["state_dist"] = sol.state_dist;
  j["unique_policy"] = sol.unique_policy;
  j["tie_states"] = sol.tie_states;
  j["tie_sets"] = sol.tie_sets;
  j["smoothing_eps"] = sol.smoothing_eps;
  return j;
}

Json trajectory_to_json(const Trajectory& traj, bool include_sequence) {
  Json j;
  j["rng"] = kRngName;
  j["seed"] = traj.seed;
  j["steps"] = traj.steps;
  j["init_state"] = traj.init_state;
  j["state_freq"] = traj.state_freq;
  j["visit_counts"] = table_to_json(traj.visit_counts);
  if (include_sequence) {
    j["states"] = traj.states;
    j["actions"] = traj.actions;
  }
  return j;
}

Json interval_stats_to_json(const IntervalStats& stats) {
  Json j;
  j["num_intervals"] = stats.values.size();
  j["interval_len"] = stats.interval_len;
  j["mean"] = stats.mean;
  j["std_error"] = stats.std_error;
  j["values"] = stats.values;
  return j;
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t value) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[value & 0xF];
    value >>= 4;
  }
  return out;
}

Json manifest_json(const std::string& command_line,
                   const std::vector<std::pair<std::string, std::string>>& input_hashes,
                   const Json& config_echo, std::uint64_t seed, double elapsed_ms) {
  Json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["command"] = command_line;
  j["rng"] = kRngName;
  j["seed"] = seed;
  Json inputs = Json::object();
  for (const auto& [name, hash] : input_hashes) inputs[name] = hash;
  j["inputs"] = std::move(inputs);
  j["config"] = config_echo;
  j["elapsed_ms"] = elapsed_ms;
  return j;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failed on " + path);
  return buf.str();
}

void save_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << text;
  if (!out) throw IoError("write failed on " + path);
}

void save_json_file(const std::string& path, const Json& j) {
  save_text_file(path, j.dump(2) + "\n");
}

}  // namespace occumax

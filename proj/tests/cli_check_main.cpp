// End-to-end checks of the command-line tool: exit codes, file outputs and
// byte-for-byte reproducibility of repeated runs. argv[1] is the tool path.

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

std::string g_tool;
int g_failures = 0;

int run(const std::string& args) {
  const std::string cmd = "\"" + g_tool + "\" " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  if (status < 0) return -1;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void check(bool ok, const std::string& label) {
  std::printf("%s - %s\n", ok ? "ok" : "FAIL", label.c_str());
  if (!ok) ++g_failures;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s <tool-path>\n", argv[0]);
    return 2;
  }
  g_tool = argv[1];
  const std::vector<std::string> scratch = {
      "cli_check_mdp.json",  "cli_check_sol1.json", "cli_check_sol2.json",
      "cli_check_man.json",  "cli_check_fp.json",   "cli_check_sim1.json",
      "cli_check_sim2.json", "cli_check_heat.csv",  "cli_check_toy.json",
      "cli_check_prod.json", "cli_check_stub.json"};

  check(run("--version") == 0, "--version exits 0");
  check(run("gridworld --corridor 2 --out cli_check_mdp.json") == 0, "gridworld emits an MDP");
  const std::string mdp = slurp("cli_check_mdp.json");
  check(!mdp.empty() && mdp.front() == '{', "emitted MDP is a JSON object");
  check(run("validate --mdp cli_check_mdp.json") == 0, "validate accepts the emitted MDP");

  check(run("solve --mdp cli_check_mdp.json --alpha 1 --beta 2 "
            "--out cli_check_sol1.json --manifest cli_check_man.json") == 0,
        "solve exits 0");
  check(run("solve --mdp cli_check_mdp.json --alpha 1 --beta 2 --out cli_check_sol2.json") == 0,
        "repeat solve exits 0");
  const std::string sol1 = slurp("cli_check_sol1.json");
  check(!sol1.empty() && sol1 == slurp("cli_check_sol2.json"),
        "repeated solves are byte-identical");
  const std::string manifest = slurp("cli_check_man.json");
  check(manifest.find("\"command\"") != std::string::npos &&
            manifest.find("cli_check_mdp.json") != std::string::npos,
        "manifest records the command and its input");
  check(sol1.find("\"r_max\"") != std::string::npos, "solution reports r_max");

  check(run("solve --mdp cli_check_mdp.json --alpha 2 --beta 1 --method fixed-point "
            "--out cli_check_fp.json") == 0,
        "fixed-point method exits 0");
  check(slurp("cli_check_fp.json").find("\"fixed_point\"") != std::string::npos,
        "fixed-point solution labeled");

  check(run("solve --mdp cli_check_mdp.json --alpha 2 --ab-product 10 "
            "--out cli_check_prod.json") == 0,
        "--ab-product exits 0");
  check(slurp("cli_check_prod.json").find("\"beta\": 5.0") != std::string::npos,
        "--ab-product derives beta");

  check(run("simulate --mdp cli_check_mdp.json --solution cli_check_sol1.json "
            "--steps 1000 --seed 7 --intervals 10 --out cli_check_sim1.json") == 0,
        "simulate exits 0");
  check(run("simulate --mdp cli_check_mdp.json --solution cli_check_sol1.json "
            "--steps 1000 --seed 7 --intervals 10 --out cli_check_sim2.json") == 0,
        "repeat simulate exits 0");
  const std::string sim1 = slurp("cli_check_sim1.json");
  check(!sim1.empty() && sim1 == slurp("cli_check_sim2.json"),
        "repeated simulations are byte-identical");

  check(run("simulate --mdp cli_check_mdp.json --uniform --steps 500 --seed 3 "
            "--heatmap cli_check_heat.csv --out cli_check_stub.json") == 0,
        "uniform-policy simulate exits 0");
  check(!slurp("cli_check_heat.csv").empty(), "heatmap CSV written");

  check(run("toy --n 2 --alpha 1 --beta 1 --solve --out cli_check_toy.json") == 0,
        "toy closed form with solver cross-check exits 0");
  check(run("check-grad --mdp cli_check_mdp.json --alpha 0.5 --beta 1.5 --seed 11") == 0,
        "gradient check exits 0");

  check(run("solve --mdp cli_check_missing.json --alpha 1 --beta 1") == 1,
        "missing input exits 1");
  check(run("solve --mdp cli_check_mdp.json --alpha 1 --beta 2 --ab-product 5") == 1,
        "conflicting beta options exit 1");
  check(run("solve --mdp cli_check_mdp.json --alpha 0.2 --beta 1.2 --max-iters 2 "
            "--out cli_check_stub.json") == 2,
        "iteration cap exits 2");
  check(run("nonsense-subcommand") == 1, "unknown subcommand exits 1");

  for (const auto& path : scratch) std::remove(path.c_str());
  if (g_failures == 0) std::printf("cli check: all checks passed\n");
  return g_failures == 0 ? 0 : 1;
}

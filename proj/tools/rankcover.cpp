#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rankcover/cli.hpp"

namespace {

void add_map_options(CLI::App* cmd, rankcover::RunConfig& cfg) {
  cmd->add_option("-i,--input", cfg.input, "map file (ASCII '#'/'.' or PGM)")->required();
  cmd->add_option("--format", cfg.format, "ascii, pgm or auto")->check(CLI::IsMember({"auto", "ascii", "pgm"}));
  cmd->add_option("--tool-width", cfg.tool_width_px, "tool width in map pixels")->check(CLI::PositiveNumber);
  cmd->add_option("--resolution", cfg.resolution, "cm per map pixel")->check(CLI::PositiveNumber);
  cmd->add_option("--threshold", cfg.pgm_threshold, "PGM pixels darker than this are obstacles")
      ->check(CLI::Range(0, 255));
  cmd->add_option("--json", cfg.json_out, "write JSON here ('-' for stdout)");
  cmd->add_option("--svg", cfg.svg_out, "write an SVG picture here");
  cmd->add_option("--lp-dump", cfg.lp_dump, "write the LP in CPLEX LP format");
  cmd->add_flag("--cross-check", cfg.cross_check, "confirm the rank count with the min-cut oracle");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimum-rank partitions and turn-minimising coverage tours for grid maps"};
  app.require_subcommand(1);

  rankcover::RunConfig run;
  auto* partition = app.add_subcommand("partition", "minimum-rank partition of a map");
  add_map_options(partition, run);

  auto* plan = app.add_subcommand("plan", "partition plus a coverage tour over the ranks");
  add_map_options(plan, run);
  plan->add_option("--seed", run.seed, "tour search seed");
  plan->add_option("--budget", run.time_budget_s, "tour search time budget, seconds")->check(CLI::PositiveNumber);
  plan->add_flag("--open", run.open, "open path instead of a closed tour");
  plan->add_option("--gtsp-dump", run.gtsp_dump, "write the tour instance in GTSPLIB format");
  plan->add_option("--v-max", run.motion.v_max, "maximum linear velocity, cm/s")->check(CLI::PositiveNumber);
  plan->add_option("--accel", run.motion.accel, "linear acceleration, cm/s^2")->check(CLI::PositiveNumber);
  plan->add_option("--omega", run.motion.omega, "turn rate, deg/s")->check(CLI::PositiveNumber);

  rankcover::GenConfig gen;
  auto* gen_cmd = app.add_subcommand("gen", "generate a random rectilinear map");
  gen_cmd->add_option("--rows", gen.map.rows)->check(CLI::PositiveNumber);
  gen_cmd->add_option("--cols", gen.map.cols)->check(CLI::PositiveNumber);
  gen_cmd->add_option("--density", gen.map.obstacle_density, "target obstacle fraction in [0, 1)")
      ->check(CLI::Range(0.0, 0.999999));
  gen_cmd->add_option("--seed", gen.map.seed);
  gen_cmd->add_option("-o,--output", gen.output, "output file ('-' for stdout)");

  rankcover::BenchCommandConfig bench;
  int count = 10, rows = 30, cols = 30;
  double density = 0.2;
  std::vector<std::string> inputs;
  std::string bench_format = "auto";
  double bench_resolution = 50.0;
  auto* bench_cmd = app.add_subcommand("bench", "LP against the local-search baseline on a suite of maps");
  bench_cmd->add_option("inputs", inputs, "map files; a generated suite is used when none are given");
  bench_cmd->add_option("--format", bench_format)->check(CLI::IsMember({"auto", "ascii", "pgm"}));
  bench_cmd->add_option("--count", count, "generated maps")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--rows", rows)->check(CLI::PositiveNumber);
  bench_cmd->add_option("--cols", cols)->check(CLI::PositiveNumber);
  bench_cmd->add_option("--density", density)->check(CLI::Range(0.0, 0.999999));
  bench_cmd->add_option("--seed", bench.bench.seed);
  bench_cmd->add_option("--tool-width", bench.bench.tool_width_px)->check(CLI::PositiveNumber);
  bench_cmd->add_option("--resolution", bench_resolution, "cm per map pixel")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--budget", bench.bench.gtsp_budget_s, "tour search budget per map, seconds")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--cap", bench.bench.optimum_cap_s, "time-to-optimal cap for the baseline, seconds")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_flag("!--no-plan", bench.bench.plan, "skip tours");
  bench_cmd->add_option("--threads", bench.bench.threads, "worker threads (RANKCOVER_THREADS caps this)");
  bench_cmd->add_option("--json", bench.json_out, "write the report as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(rankcover::kExitFormat);
  }

  if (partition->parsed()) return rankcover::cmd_partition(run, std::cout, std::cerr);
  if (plan->parsed()) return rankcover::cmd_plan(run, std::cout, std::cerr);
  if (gen_cmd->parsed()) return rankcover::cmd_gen(gen, std::cout, std::cerr);

  if (inputs.empty()) {
    bench.bench.instances = rankcover::generated_suite(count, rows, cols, density, bench.bench.seed, bench_resolution);
  } else {
    try {
      for (const std::string& path : inputs) {
        bench.bench.instances.push_back({path, rankcover::load_map(path, bench_format)});
        bench.bench.instances.back().map.resolution = bench_resolution;
      }
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return rankcover::kExitFormat;
    }
  }
  return rankcover::cmd_bench(bench, std::cout, std::cerr);
}

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "soc/config.hpp"
#include "soc/csv.hpp"
#include "soc/harness.hpp"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct RunFlags {
  std::string config_path;
  std::string maze;
  std::string preset;
  std::string out_dir;
  std::uint64_t seed = 0;
  int trials = 0;
  int repetitions = 0;
  int jobs = 0;
  std::vector<std::string> sets;
};

int do_run(const CLI::App& cmd, const RunFlags& flags) {
  soc::RunSpec spec;
  soc::Maze maze = soc::Maze::parse(soc::empty_room_text());

  // resolution phase: config errors exit 2
  try {
    if (cmd.count("--config") > 0) {
      soc::load_config_file(spec, flags.config_path);
    }
    if (cmd.count("--preset") > 0) {
      soc::apply_preset(spec, flags.preset);
    }
    for (const std::string& kv : flags.sets) {
      soc::apply_override_line(spec, kv);
    }
    if (cmd.count("--maze") > 0) {
      spec.maze = flags.maze;
    }
    if (cmd.count("--seed") > 0) {
      spec.experiment.base_seed = flags.seed;
    }
    if (cmd.count("--trials") > 0) {
      spec.experiment.trials = flags.trials;
    }
    if (cmd.count("--repetitions") > 0) {
      spec.experiment.repetitions = flags.repetitions;
    }
    if (cmd.count("--out-dir") > 0) {
      spec.out_dir = flags.out_dir;
    }
    if (cmd.count("--jobs") > 0) {
      spec.jobs = flags.jobs;
    }
    soc::validate_spec(spec);
    maze = soc::load_maze_spec(spec.maze);
  } catch (const std::exception& e) {
    std::cerr << "soc run: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    const std::filesystem::path out(spec.out_dir);
    std::filesystem::create_directories(out);
    {
      std::ofstream echo(out / "config.echo", std::ios::binary);
      if (!echo) {
        throw std::runtime_error("cannot write " +
                                 (out / "config.echo").string());
      }
      echo << soc::echo_config(spec);
    }

    const auto t0 = std::chrono::steady_clock::now();
    const soc::BatchTrace batch =
        soc::run_batch(maze, spec.experiment, spec.jobs);
    const auto t1 = std::chrono::steady_clock::now();
    soc::write_outputs(out, batch);

    const double secs =
        std::chrono::duration<double>(t1 - t0).count();
    std::cout << "wrote " << out.string() << "/{performance,population,"
              << "behavior_map,fitness_map,som_weights}.csv + config.echo\n";
    if (!batch.performance.empty()) {
      std::cout << "final mean steps (last " << spec.experiment.metric_window
                << " exploit trials, " << spec.experiment.repetitions
                << " reps): " << soc::format_double(batch.performance.back())
                << '\n';
    }
    if (!batch.census.empty()) {
      std::cout << "final population: " << batch.census.back().micro
                << " micro / " << batch.census.back().macro << " macro\n";
    }
    std::cout << "runtime: " << secs << " s (" << spec.jobs << " job"
              << (spec.jobs == 1 ? "" : "s") << ")\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "soc run: " << e.what() << '\n';
    return kExitRuntime;
  }
}

int do_validate(const std::string& path) {
  try {
    const soc::Maze maze = soc::load_maze_spec(path);
    int obstacles = 0;
    for (int y = 0; y < maze.grid_height(); ++y) {
      for (int x = 0; x < maze.grid_width(); ++x) {
        obstacles += maze.obstacle({x, y}) ? 1 : 0;
      }
    }
    std::cout << path << ": " << maze.grid_width() << "x"
              << maze.grid_height() << " cells, " << obstacles
              << " obstacles, goal at (" << maze.goal().x << ","
              << maze.goal().y << "), " << maze.free_cell_count()
              << " free start cells\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "soc validate-maze: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "soc - self-organizing classifiers on continuous maze environments"};
  app.require_subcommand(1);

  RunFlags flags;
  CLI::App* run = app.add_subcommand(
      "run", "train a batch of repetitions and write CSV artifacts");
  run->add_option("--config", flags.config_path,
                  "key=value config file (e.g. a previous config.echo)");
  run->add_option("--maze", flags.maze,
                  "maze file path or built-in name (empty-room, one-wall)");
  run->add_option("--preset", flags.preset,
                  "parameter preset: paper, test-a, test-b, custom");
  run->add_option("--seed", flags.seed, "base seed; repetition r uses seed+r");
  run->add_option("--trials", flags.trials, "trials per repetition");
  run->add_option("--repetitions", flags.repetitions,
                  "independent repetitions to average");
  run->add_option("--out-dir", flags.out_dir, "output directory");
  run->add_option("--jobs", flags.jobs,
                  "repetitions to run in parallel (default 1)");
  run->add_option("--set", flags.sets,
                  "key=value override, repeatable (see config.echo for keys)")
      ->take_all();

  CLI::App* maps = app.add_subcommand(
      "maps", "recompute evaluation maps from a saved learner snapshot");
  std::string snapshot;
  maps->add_option("snapshot", snapshot, "learner snapshot file");

  CLI::App* validate = app.add_subcommand(
      "validate-maze", "parse a maze file and report its dimensions");
  std::string maze_path;
  validate->add_option("file", maze_path, "maze text file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "soc: " << e.what() << '\n'
              << app.help() << '\n';
    return kExitUsage;
  }

  if (run->parsed()) {
    return do_run(*run, flags);
  }
  if (maps->parsed()) {
    std::cerr << "soc maps: learner snapshots are not supported; maps are "
                 "computed at the end of `soc run`\n";
    return kExitUsage;
  }
  if (validate->parsed()) {
    return do_validate(maze_path);
  }
  return kExitUsage;
}

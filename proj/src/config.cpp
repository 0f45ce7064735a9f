#include "soc/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "soc/csv.hpp"

namespace soc {

namespace {

std::int64_t parse_int(const std::string& key, const std::string& value) {
  std::int64_t out = 0;
  const auto [ptr, ec] =
      std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw std::invalid_argument("value of " + key + " is not an integer: '" +
                                value + "'");
  }
  return out;
}

double parse_real(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double out = std::stod(value, &used);
    if (used == value.size()) {
      return out;
    }
  } catch (const std::exception&) {
  }
  throw std::invalid_argument("value of " + key + " is not a number: '" +
                              value + "'");
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") {
    return true;
  }
  if (value == "false" || value == "0") {
    return false;
  }
  throw std::invalid_argument("value of " + key + " is not a bool: '" + value +
                              "'");
}

}  // namespace

void apply_preset(RunSpec& spec, const std::string& preset) {
  // A preset owns the algorithm parameters and the map size; experiment
  // scale (trials, repetitions, seeds, ...) is left alone.
  spec.experiment.params = LearnerParams{};
  spec.experiment.som_rows = 10;
  spec.experiment.som_cols = 10;
  spec.preset = preset;
  if (preset == "paper" || preset == "custom") {
    return;
  }
  if (preset == "test-a") {
    spec.experiment.params.beta = 2;
    spec.experiment.params.nu = 5;
    return;
  }
  if (preset == "test-b") {
    spec.experiment.som_rows = 7;
    spec.experiment.som_cols = 7;
    return;
  }
  throw std::invalid_argument("unknown preset '" + preset +
                              "' (expected paper, test-a, test-b, custom)");
}

void apply_override(RunSpec& spec, const std::string& key,
                    const std::string& value) {
  ExperimentConfig& e = spec.experiment;
  LearnerParams& p = e.params;

  if (key == "maze") {
    spec.maze = value;
  } else if (key == "preset") {
    apply_preset(spec, value);
  } else if (key == "out_dir") {
    spec.out_dir = value;
  } else if (key == "jobs") {
    spec.jobs = static_cast<int>(parse_int(key, value));
  } else if (key == "eta") {
    p.eta = parse_real(key, value);
  } else if (key == "gamma") {
    p.gamma = parse_real(key, value);
  } else if (key == "beta") {
    p.beta = static_cast<int>(parse_int(key, value));
  } else if (key == "nu") {
    p.nu = static_cast<int>(parse_int(key, value));
  } else if (key == "iota") {
    p.iota = static_cast<int>(parse_int(key, value));
  } else if (key == "initial_fitness") {
    p.initial_fitness = parse_real(key, value);
  } else if (key == "de_cr") {
    p.de_cr = parse_real(key, value);
  } else if (key == "neighbor_seed_radius") {
    p.neighbor_seed_radius = static_cast<int>(parse_int(key, value));
  } else if (key == "seed_best_inherit_fitness") {
    p.seed_best_inherit_fitness = parse_bool(key, value);
  } else if (key == "som_rows") {
    e.som_rows = static_cast<int>(parse_int(key, value));
  } else if (key == "som_cols") {
    e.som_cols = static_cast<int>(parse_int(key, value));
  } else if (key == "trials") {
    e.trials = static_cast<int>(parse_int(key, value));
  } else if (key == "max_trial_steps") {
    e.max_trial_steps = static_cast<int>(parse_int(key, value));
  } else if (key == "repetitions") {
    e.repetitions = static_cast<int>(parse_int(key, value));
  } else if (key == "base_seed") {
    e.base_seed = static_cast<std::uint64_t>(parse_int(key, value));
  } else if (key == "metric_window") {
    e.metric_window = static_cast<int>(parse_int(key, value));
  } else if (key == "map_samples") {
    e.map_samples = static_cast<int>(parse_int(key, value));
  } else if (key == "census_every") {
    e.census_every = static_cast<int>(parse_int(key, value));
  } else {
    throw std::invalid_argument("unknown config key '" + key + "'");
  }
}

void apply_override_line(RunSpec& spec, const std::string& line) {
  const std::size_t eq = line.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw std::invalid_argument("override must look like key=value, got '" +
                                line + "'");
  }
  apply_override(spec, line.substr(0, eq), line.substr(eq + 1));
}

void load_config_file(RunSpec& spec, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot read config file " + path.string());
  }

  std::vector<std::pair<std::string, std::string>> pairs;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) {
      line.resize(hash);
    }
    while (!line.empty() && (line.back() == ' ' || line.back() == '\t')) {
      line.pop_back();
    }
    std::size_t begin = line.find_first_not_of(" \t");
    if (begin == std::string::npos) {
      continue;
    }
    const std::size_t eq = line.find('=', begin);
    if (eq == std::string::npos || eq == begin) {
      throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                               ": expected key=value");
    }
    pairs.emplace_back(line.substr(begin, eq - begin), line.substr(eq + 1));
  }

  // preset first so the file's explicit values override it
  for (const auto& [key, value] : pairs) {
    if (key == "preset") {
      apply_preset(spec, value);
    }
  }
  for (const auto& [key, value] : pairs) {
    if (key != "preset") {
      apply_override(spec, key, value);
    }
  }
}

std::string echo_config(const RunSpec& spec) {
  const ExperimentConfig& e = spec.experiment;
  const LearnerParams& p = e.params;
  std::ostringstream os;
  os << "preset=" << spec.preset << '\n'
     << "maze=" << spec.maze << '\n'
     << "out_dir=" << spec.out_dir << '\n'
     << "jobs=" << spec.jobs << '\n'
     << "base_seed=" << e.base_seed << '\n'
     << "trials=" << e.trials << '\n'
     << "repetitions=" << e.repetitions << '\n'
     << "max_trial_steps=" << e.max_trial_steps << '\n'
     << "metric_window=" << e.metric_window << '\n'
     << "map_samples=" << e.map_samples << '\n'
     << "census_every=" << e.census_every << '\n'
     << "som_rows=" << e.som_rows << '\n'
     << "som_cols=" << e.som_cols << '\n'
     << "eta=" << format_double(p.eta) << '\n'
     << "gamma=" << format_double(p.gamma) << '\n'
     << "beta=" << p.beta << '\n'
     << "nu=" << p.nu << '\n'
     << "iota=" << p.iota << '\n'
     << "initial_fitness=" << format_double(p.initial_fitness) << '\n'
     << "de_cr=" << format_double(p.de_cr) << '\n'
     << "neighbor_seed_radius=" << p.neighbor_seed_radius << '\n'
     << "seed_best_inherit_fitness="
     << (p.seed_best_inherit_fitness ? "true" : "false") << '\n';
  return os.str();
}

void validate_spec(const RunSpec& spec) {
  const ExperimentConfig& e = spec.experiment;
  validate_params(e.params);
  if (e.som_rows < 1 || e.som_cols < 1) {
    throw std::invalid_argument("som_rows and som_cols must be >= 1");
  }
  if (e.metric_window < 1) {
    throw std::invalid_argument("metric_window must be >= 1");
  }
  if (e.trials < e.metric_window) {
    throw std::invalid_argument("trials must be >= metric_window");
  }
  if (e.max_trial_steps < 1) {
    throw std::invalid_argument("max_trial_steps must be >= 1");
  }
  if (e.repetitions < 1) {
    throw std::invalid_argument("repetitions must be >= 1");
  }
  if (e.map_samples < 1) {
    throw std::invalid_argument("map_samples must be >= 1");
  }
  if (e.census_every < 1) {
    throw std::invalid_argument("census_every must be >= 1");
  }
  if (spec.jobs < 1) {
    throw std::invalid_argument("jobs must be >= 1");
  }
}

Maze load_maze_spec(const std::string& name_or_path) {
  if (name_or_path == "empty-room") {
    return Maze::parse(empty_room_text());
  }
  if (name_or_path == "one-wall") {
    return Maze::parse(one_wall_text());
  }
  std::ifstream in(name_or_path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot read maze file " + name_or_path);
  }
  std::ostringstream text;
  text << in.rdbuf();
  return Maze::parse(text.str());
}

}  // namespace soc

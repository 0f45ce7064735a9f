#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "soc/harness.hpp"
#include "soc/maze.hpp"

namespace soc {

/// Fully resolved run configuration: maze choice, parameter preset, and
/// every experiment knob. Built up in layers: preset, then config file,
/// then command-line overrides.
struct RunSpec {
  std::string maze = "empty-room";  // preset name or maze file path
  std::string preset = "paper";
  std::string out_dir = "results";
  int jobs = 1;
  ExperimentConfig experiment;
};

/// Applies one of the named parameter presets. "paper" is the stock
/// configuration; "test-a" shrinks the groups to beta=2, nu=5; "test-b"
/// shrinks the map to 7x7; "custom" starts from the stock values and
/// leaves everything to explicit overrides.
void apply_preset(RunSpec& spec, const std::string& preset);

/// Applies one key=value override. Throws std::invalid_argument on an
/// unknown key or unparsable value.
void apply_override(RunSpec& spec, const std::string& key,
                    const std::string& value);

/// Parses "key=value" and applies it.
void apply_override_line(RunSpec& spec, const std::string& line);

/// Loads a flat key=value config file (one pair per line, '#' comments).
/// A preset key in the file is applied before the other keys so explicit
/// values win over the preset.
void load_config_file(RunSpec& spec, const std::filesystem::path& path);

/// Echoes every resolved value, in a form load_config_file accepts.
std::string echo_config(const RunSpec& spec);

/// Resolves a maze argument: "empty-room" / "one-wall" built-ins, or a
/// path to a maze text file.
Maze load_maze_spec(const std::string& name_or_path);

/// Rejects out-of-range values (non-positive sizes, empty windows, ...)
/// with std::invalid_argument before any run starts.
void validate_spec(const RunSpec& spec);

}  // namespace soc

#pragma once

#include <filesystem>
#include <ostream>
#include <string>

#include "soc/harness.hpp"

namespace soc {

/// Shortest decimal text that round-trips the double exactly.
std::string format_double(double v);

void write_performance_csv(std::ostream& os, const BatchTrace& batch);
void write_population_csv(std::ostream& os, const BatchTrace& batch);
void write_behavior_map_csv(std::ostream& os, const BatchTrace& batch);
void write_fitness_map_csv(std::ostream& os, const BatchTrace& batch);
void write_som_weights_csv(std::ostream& os, const BatchTrace& batch);

/// Writes the five CSV artifacts into `dir` (created if missing).
void write_outputs(const std::filesystem::path& dir, const BatchTrace& batch);

}  // namespace soc

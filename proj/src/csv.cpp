#include "soc/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace soc {

std::string format_double(double v) {
  char buf[40];
  // shortest representation that parses back to the same double
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) {
      return buf;
    }
  }
  return buf;
}

void write_performance_csv(std::ostream& os, const BatchTrace& batch) {
  os << "exploit_trial_index,mean_steps_last_100\n";
  for (std::size_t i = 0; i < batch.performance.size(); ++i) {
    os << i << ',' << format_double(batch.performance[i]) << '\n';
  }
}

void write_population_csv(std::ostream& os, const BatchTrace& batch) {
  os << "step,micro_count,macro_count\n";
  for (const MeanCensus& c : batch.census) {
    os << c.step << ',' << format_double(c.micro) << ','
       << format_double(c.macro) << '\n';
  }
}

void write_behavior_map_csv(std::ostream& os, const BatchTrace& batch) {
  os << "cell_x,cell_y,mean_dx,mean_dy\n";
  for (int y = 0; y < batch.behavior.height; ++y) {
    for (int x = 0; x < batch.behavior.width; ++x) {
      const Vec2& v = batch.behavior.at(x, y);
      os << x << ',' << y << ',' << format_double(v[0]) << ','
         << format_double(v[1]) << '\n';
    }
  }
}

void write_fitness_map_csv(std::ostream& os, const BatchTrace& batch) {
  os << "cell_x,cell_y,mean_max_fitness\n";
  for (int y = 0; y < batch.fitness.height; ++y) {
    for (int x = 0; x < batch.fitness.width; ++x) {
      os << x << ',' << y << ',' << format_double(batch.fitness.at(x, y))
         << '\n';
    }
  }
}

void write_som_weights_csv(std::ostream& os, const BatchTrace& batch) {
  os << "row,col,w0,w1\n";
  for (int r = 0; r < batch.som_rows; ++r) {
    for (int c = 0; c < batch.som_cols; ++c) {
      const std::size_t base =
          (static_cast<std::size_t>(r) * batch.som_cols + c) * 2;
      os << r << ',' << c << ',' << format_double(batch.som_weights[base])
         << ',' << format_double(batch.som_weights[base + 1]) << '\n';
    }
  }
}

void write_outputs(const std::filesystem::path& dir, const BatchTrace& batch) {
  std::filesystem::create_directories(dir);
  const struct {
    const char* name;
    void (*writer)(std::ostream&, const BatchTrace&);
  } files[] = {
      {"performance.csv", write_performance_csv},
      {"population.csv", write_population_csv},
      {"behavior_map.csv", write_behavior_map_csv},
      {"fitness_map.csv", write_fitness_map_csv},
      {"som_weights.csv", write_som_weights_csv},
  };
  for (const auto& f : files) {
    std::ofstream os(dir / f.name, std::ios::binary);
    if (!os) {
      throw std::runtime_error("cannot open " + (dir / f.name).string());
    }
    f.writer(os, batch);
  }
}

}  // namespace soc

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "soc/pool.hpp"
#include "soc/rng.hpp"
#include "soc/som.hpp"
#include "soc/types.hpp"

namespace soc {

/// One cell membership of a macroclassifier, carrying the niched fitness.
/// Fitness only means something relative to the cell holding the entry;
/// nothing in the learner ever compares entries across cells.
struct MemberEntry {
  MacroId macro;
  double fitness = 0.0;
  Group group = Group::Novel;
};

/// Subpopulation attached to one SOM cell. Cells start empty and are
/// filled lazily the first time they win the competition.
struct CellState {
  std::vector<MemberEntry> best;
  std::vector<MemberEntry> novel;
  std::uint64_t experience = 0;
  bool initialized = false;
};

struct LearnerParams {
  double eta = 0.2;             // Widrow-Hoff learning rate
  double gamma = 0.9;           // discount factor
  int beta = 5;                 // best-group size
  int nu = 10;                  // novel-group size
  int iota = 20;                // experience-per-individual EA trigger
  double initial_fitness = 0.0;
  double de_cr = 0.2;           // DE crossover rate
  int neighbor_seed_radius = 4; // Chebyshev radius for best-group seeding
  // Seeded best entries normally start at initial_fitness; this switch
  // makes them inherit the donor's fitness instead.
  bool seed_best_inherit_fitness = false;
};

/// Throws std::invalid_argument on out-of-range parameters.
void validate_params(const LearnerParams& params);

/// Fitness update waiting for the next activation: which entry acted, from
/// which cell, and the reward the environment paid for it.
struct PendingUpdate {
  GridCoord cell;
  Group group = Group::Novel;
  std::size_t index = 0;
  double reward = 0.0;
};

/// SOM-structured population of action classifiers with niched Q-style
/// fitness and a local differential-evolution EA per cell.
class Learner {
 public:
  Learner(int som_rows, int som_cols, LearnerParams params, std::uint64_t seed);

  /// One sense-update-learn-act cycle. `reward` is the payoff of the
  /// previous action within the trial (absent on a trial's first step).
  /// When `terminal` is set the pending update is applied with the plain
  /// reward (no bootstrap) and no action is returned.
  std::optional<Vec2> step(const Vec2& obs, std::optional<double> reward,
                           bool terminal, Mode mode);

  /// Step-cap cutoff: applies the pending update with the ordinary
  /// bootstrapped estimate against the cell winning for `obs`, then drops
  /// it. The timeout is a harness artifact, not an absorbing state, so the
  /// bootstrap term stays.
  void truncate(const Vec2& obs, double reward);

  /// Clears any leftover pending update at the start of a trial.
  void begin_trial() { pending_.reset(); }

  // -- individual phases, exposed so tests can pin each contract --

  /// Lazily fills an uninitialized cell: nu fresh random classifiers for
  /// the novel group; the best group copies (indexes) the best list of the
  /// neighbor within Chebyshev distance <= neighbor_seed_radius that
  /// maximizes experience / distance^2, falling back to fresh random
  /// classifiers when no experienced neighbor exists.
  void ensure_cell(GridCoord c);

  /// Picks a uniform random entry from the novel (Explore) or best
  /// (Exploit) group and bumps the cell's experience counter.
  /// Throws std::logic_error on an uninitialized cell.
  const MemberEntry& select_actor(GridCoord c, Mode mode);

  /// Widrow-Hoff update of the pending entry's fitness toward
  /// reward + gamma * max fitness in `current` (or the bare reward when
  /// terminal). Returns the new fitness.
  double reinforce(const PendingUpdate& pending, GridCoord current,
                   bool terminal);

  /// Runs the local EA once the cell's experience exceeds
  /// iota * (beta + nu): keeps the top beta entries by fitness as the new
  /// best group, releases the rest, regenerates nu novel entries, and
  /// resets experience. Returns whether it ran.
  bool maybe_evolve(GridCoord c);

  /// One new novel entry for the cell, by indexing a random existing macro
  /// or by DE reproduction (equal probabilities). The caller owns the entry.
  MemberEntry reproduce_novel(GridCoord c);

  /// DE/rand/1 with binomial crossover against `target`, components
  /// clamped to [-1, 1]. Falls back to a fresh uniform random vector when
  /// fewer than three distinct macros exist.
  Vec2 de_reproduce(const Vec2& target);

  // -- read-only probes (used by the evaluation maps; no state change) --

  /// Exploit-style action for an observation: random best entry of the
  /// winning cell, or a zero vector if that cell was never initialized.
  Vec2 exploit_probe(const Vec2& obs, Rng& rng) const;

  /// Max fitness over all entries of the winning cell, 0 if uninitialized.
  double max_fitness_probe(const Vec2& obs) const;

  // -- state access --

  const SomGrid& som() const { return som_; }
  SomGrid& som() { return som_; }
  const ClassifierPool& pool() const { return pool_; }
  ClassifierPool& pool() { return pool_; }
  const LearnerParams& params() const { return params_; }
  const CellState& cell(GridCoord c) const { return cells_[cell_index(c)]; }
  CellState& cell_mut(GridCoord c) { return cells_[cell_index(c)]; }
  const std::optional<PendingUpdate>& pending() const { return pending_; }
  Rng& rng() { return rng_; }

  /// Max fitness over both groups of an initialized cell.
  double cell_max_fitness(GridCoord c) const;

  /// Walks every member entry and cross-checks pool numerosities and the
  /// micro count; throws std::logic_error on any mismatch.
  void audit() const;

  /// Order-sensitive hash of all mutable learner state (cells, pool, SOM
  /// weights and iteration). Reads must leave it unchanged.
  std::uint64_t state_fingerprint() const;

 private:
  std::size_t cell_index(GridCoord c) const {
    return static_cast<std::size_t>(c.row) * som_.cols() + c.col;
  }

  Vec2 random_action();
  MemberEntry make_random_entry();

  /// New novel entry via indexing (p = 0.5) or DE reproduction (p = 0.5);
  /// the DE target is a uniform random member of the cell's best group.
  MemberEntry reproduce_novel(const CellState& cell);

  /// Three distinct live macros drawn uniformly (macros counted once).
  bool draw_three_distinct(MacroId out[3]);

  Rng rng_;
  LearnerParams params_;
  SomGrid som_;
  ClassifierPool pool_;
  std::vector<CellState> cells_;
  std::optional<PendingUpdate> pending_;
};

}  // namespace soc

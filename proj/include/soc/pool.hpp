#pragma once

#include <cstdint>
#include <vector>

#include "soc/types.hpp"

namespace soc {

/// Handle to a macroclassifier. Slot indices are recycled; the generation
/// counter tells a live handle apart from a stale one.
struct MacroId {
  std::uint32_t slot = UINT32_MAX;
  std::uint32_t gen = 0;

  bool operator==(const MacroId&) const = default;
};

/// One stored action vector shared by any number of cell memberships.
/// Numerosity counts the live memberships; the vector itself is immutable
/// once created (cells share it, so mutation would leak across niches).
struct MacroClassifier {
  Vec2 action{0.0, 0.0};
  std::uint32_t numerosity = 0;
};

/// Global store of macroclassifiers with numerosity bookkeeping.
///
/// Owned by exactly one learner; all mutation happens from that learner's
/// step loop. Uniform sampling treats every live macro as one candidate
/// regardless of numerosity.
class ClassifierPool {
 public:
  /// Adds a macroclassifier with numerosity 0. The caller must acquire an
  /// index before relying on it staying alive. Throws std::invalid_argument
  /// if a component falls outside [-1, 1].
  MacroId create_macro(const Vec2& action);

  /// Increments numerosity. Throws std::logic_error on a dead handle.
  void acquire_index(MacroId id);

  /// Decrements numerosity; deletes the macro when it reaches 0.
  /// Throws std::logic_error on a dead handle.
  void release_index(MacroId id);

  bool live(MacroId id) const;

  /// Action vector of a live macro.
  const Vec2& action(MacroId id) const;

  std::uint32_t numerosity(MacroId id) const;

  /// Number of live macroclassifiers.
  std::size_t macro_count() const { return live_.size(); }

  /// Sum of numerosities (the plotted population size).
  std::uint64_t micro_count() const { return micro_count_; }

  /// The nth live macro in internal order; n < macro_count(). Used for
  /// uniform macro sampling (each macro counted once).
  MacroId live_at(std::size_t n) const { return live_[n]; }

  /// All live handles, for audits and snapshots.
  const std::vector<MacroId>& live_ids() const { return live_; }

 private:
  struct Slot {
    MacroClassifier macro;
    std::uint32_t gen = 0;
    std::uint32_t live_pos = UINT32_MAX;  // position in live_, UINT32_MAX if dead
  };

  const Slot& checked(MacroId id) const;

  std::vector<Slot> slots_;
  std::vector<std::uint32_t> free_slots_;
  std::vector<MacroId> live_;
  std::uint64_t micro_count_ = 0;
};

}  // namespace soc

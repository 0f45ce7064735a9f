#include "soc/pool.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace soc {

MacroId ClassifierPool::create_macro(const Vec2& action) {
  for (double v : action) {
    if (!(v >= -1.0 && v <= 1.0)) {
      throw std::invalid_argument("action component " + std::to_string(v) +
                                  " outside [-1, 1]");
    }
  }

  std::uint32_t slot;
  if (!free_slots_.empty()) {
    slot = free_slots_.back();
    free_slots_.pop_back();
  } else {
    slot = static_cast<std::uint32_t>(slots_.size());
    slots_.emplace_back();
  }

  Slot& s = slots_[slot];
  s.macro.action = action;
  s.macro.numerosity = 0;
  s.live_pos = static_cast<std::uint32_t>(live_.size());

  MacroId id{slot, s.gen};
  live_.push_back(id);
  return id;
}

const ClassifierPool::Slot& ClassifierPool::checked(MacroId id) const {
  if (id.slot >= slots_.size() || slots_[id.slot].gen != id.gen ||
      slots_[id.slot].live_pos == UINT32_MAX) {
    throw std::logic_error("dead macroclassifier handle");
  }
  return slots_[id.slot];
}

void ClassifierPool::acquire_index(MacroId id) {
  const Slot& s = checked(id);
  slots_[id.slot].macro.numerosity = s.macro.numerosity + 1;
  ++micro_count_;
}

void ClassifierPool::release_index(MacroId id) {
  const Slot& s = checked(id);
  if (s.macro.numerosity == 0) {
    throw std::logic_error("release on macroclassifier with numerosity 0");
  }
  Slot& slot = slots_[id.slot];
  --slot.macro.numerosity;
  --micro_count_;

  if (slot.macro.numerosity == 0) {
    // swap-remove from the live list, then retire the slot
    std::uint32_t pos = slot.live_pos;
    MacroId moved = live_.back();
    live_[pos] = moved;
    slots_[moved.slot].live_pos = pos;
    live_.pop_back();

    slot.live_pos = UINT32_MAX;
    ++slot.gen;
    free_slots_.push_back(id.slot);
  }
}

bool ClassifierPool::live(MacroId id) const {
  return id.slot < slots_.size() && slots_[id.slot].gen == id.gen &&
         slots_[id.slot].live_pos != UINT32_MAX;
}

const Vec2& ClassifierPool::action(MacroId id) const {
  return checked(id).macro.action;
}

std::uint32_t ClassifierPool::numerosity(MacroId id) const {
  return checked(id).macro.numerosity;
}

}  // namespace soc

#include "soc/learner.hpp"

#include <algorithm>
#include <cassert>
#include <cstring>
#include <stdexcept>
#include <unordered_map>

namespace soc {

namespace {

std::uint64_t hash_step(std::uint64_t h, std::uint64_t v) {
  return Rng::mix(h ^ v);
}

std::uint64_t bits_of(double d) {
  std::uint64_t u;
  std::memcpy(&u, &d, sizeof u);
  return u;
}

}  // namespace

void validate_params(const LearnerParams& params) {
  if (params.beta < 1 || params.nu < 1 || params.iota < 1) {
    throw std::invalid_argument("beta, nu, iota must be >= 1");
  }
  if (!(params.eta > 0.0 && params.eta <= 1.0)) {
    throw std::invalid_argument("eta must lie in (0, 1]");
  }
  if (!(params.gamma >= 0.0 && params.gamma < 1.0)) {
    throw std::invalid_argument("gamma must lie in [0, 1)");
  }
  if (!(params.de_cr >= 0.0 && params.de_cr <= 1.0)) {
    throw std::invalid_argument("de_cr must lie in [0, 1]");
  }
  if (params.neighbor_seed_radius < 0) {
    throw std::invalid_argument("neighbor_seed_radius must be >= 0");
  }
}

Learner::Learner(int som_rows, int som_cols, LearnerParams params,
                 std::uint64_t seed)
    : rng_(seed),
      params_(params),
      som_(som_rows, som_cols, 2, rng_),
      cells_(static_cast<std::size_t>(som_rows) * som_cols) {
  validate_params(params_);
}

Vec2 Learner::random_action() {
  return {rng_.uniform(-1.0, 1.0), rng_.uniform(-1.0, 1.0)};
}

MemberEntry Learner::make_random_entry() {
  MacroId id = pool_.create_macro(random_action());
  pool_.acquire_index(id);
  return {id, params_.initial_fitness, Group::Novel};
}

void Learner::ensure_cell(GridCoord c) {
  CellState& cell = cells_[cell_index(c)];
  if (cell.initialized) {
    return;
  }

  cell.novel.reserve(params_.nu);
  for (int i = 0; i < params_.nu; ++i) {
    cell.novel.push_back(make_random_entry());
  }

  // Donor for the best group: the experienced neighbor maximizing
  // experience / chebyshev^2. Compared by cross-multiplication so ties are
  // exact, with the lexicographically first coordinate winning them.
  const CellState* donor = nullptr;
  std::uint64_t donor_exp = 0;
  std::uint64_t donor_d2 = 1;
  const int radius = params_.neighbor_seed_radius;
  for (int r = std::max(0, c.row - radius);
       r <= std::min(som_.rows() - 1, c.row + radius); ++r) {
    for (int col = std::max(0, c.col - radius);
         col <= std::min(som_.cols() - 1, c.col + radius); ++col) {
      const GridCoord at{r, col};
      if (at == c) {
        continue;
      }
      const CellState& cand = cells_[cell_index(at)];
      if (!cand.initialized || cand.experience == 0) {
        continue;
      }
      const int d = chebyshev(at, c);
      const std::uint64_t d2 = static_cast<std::uint64_t>(d) * d;
      if (donor == nullptr || cand.experience * donor_d2 > donor_exp * d2) {
        donor = &cand;
        donor_exp = cand.experience;
        donor_d2 = d2;
      }
    }
  }

  cell.best.reserve(params_.beta);
  if (donor != nullptr) {
    for (const MemberEntry& e : donor->best) {
      pool_.acquire_index(e.macro);
      const double f = params_.seed_best_inherit_fitness
                           ? e.fitness
                           : params_.initial_fitness;
      cell.best.push_back({e.macro, f, Group::Best});
    }
  } else {
    for (int i = 0; i < params_.beta; ++i) {
      MemberEntry e = make_random_entry();
      e.group = Group::Best;
      cell.best.push_back(e);
    }
  }
  cell.initialized = true;
}

const MemberEntry& Learner::select_actor(GridCoord c, Mode mode) {
  CellState& cell = cells_[cell_index(c)];
  if (!cell.initialized) {
    throw std::logic_error("select_actor on uninitialized cell");
  }
  auto& list = (mode == Mode::Explore) ? cell.novel : cell.best;
  const std::size_t i = rng_.index(list.size());
  ++cell.experience;
  return list[i];
}

double Learner::cell_max_fitness(GridCoord c) const {
  const CellState& cell = cells_[cell_index(c)];
  if (!cell.initialized) {
    throw std::logic_error("max fitness of uninitialized cell");
  }
  double m = cell.best.front().fitness;
  for (const MemberEntry& e : cell.best) {
    m = std::max(m, e.fitness);
  }
  for (const MemberEntry& e : cell.novel) {
    m = std::max(m, e.fitness);
  }
  return m;
}

double Learner::reinforce(const PendingUpdate& pending, GridCoord current,
                          bool terminal) {
  double estimate = pending.reward;
  if (!terminal) {
    estimate += params_.gamma * cell_max_fitness(current);
  }
  CellState& prev = cells_[cell_index(pending.cell)];
  auto& list = (pending.group == Group::Best) ? prev.best : prev.novel;
  MemberEntry& e = list.at(pending.index);
  e.fitness += params_.eta * (estimate - e.fitness);
  return e.fitness;
}

bool Learner::maybe_evolve(GridCoord c) {
  CellState& cell = cells_[cell_index(c)];
  if (!cell.initialized) {
    throw std::logic_error("maybe_evolve on uninitialized cell");
  }
  const std::uint64_t subpop =
      static_cast<std::uint64_t>(params_.beta) + params_.nu;
  if (cell.experience <= static_cast<std::uint64_t>(params_.iota) * subpop) {
    return false;
  }

  // Rank the whole subpopulation; stable sort keeps the pre-existing order
  // (best list first, then novel) on fitness ties.
  std::vector<MemberEntry> ranked;
  ranked.reserve(subpop);
  ranked.insert(ranked.end(), cell.best.begin(), cell.best.end());
  ranked.insert(ranked.end(), cell.novel.begin(), cell.novel.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const MemberEntry& a, const MemberEntry& b) {
                     return a.fitness > b.fitness;
                   });

  for (std::size_t i = params_.beta; i < ranked.size(); ++i) {
    pool_.release_index(ranked[i].macro);
  }
  ranked.resize(params_.beta);
  for (MemberEntry& e : ranked) {
    e.group = Group::Best;
  }
  cell.best = std::move(ranked);

  cell.novel.clear();
  for (int i = 0; i < params_.nu; ++i) {
    cell.novel.push_back(reproduce_novel(cell));
  }
  cell.experience = 0;
  return true;
}

MemberEntry Learner::reproduce_novel(const CellState& cell) {
  if (rng_.chance(0.5)) {
    // indexing: one more membership of an existing macro, macro-uniform
    MacroId id = pool_.live_at(rng_.index(pool_.macro_count()));
    pool_.acquire_index(id);
    return {id, params_.initial_fitness, Group::Novel};
  }
  const MemberEntry& t = cell.best[rng_.index(cell.best.size())];
  Vec2 child = de_reproduce(pool_.action(t.macro));
  MacroId id = pool_.create_macro(child);
  pool_.acquire_index(id);
  return {id, params_.initial_fitness, Group::Novel};
}

MemberEntry Learner::reproduce_novel(GridCoord c) {
  const CellState& cell = cells_[cell_index(c)];
  if (!cell.initialized || cell.best.empty()) {
    throw std::logic_error("reproduce_novel needs an initialized cell");
  }
  return reproduce_novel(cell);
}

bool Learner::draw_three_distinct(MacroId out[3]) {
  const std::size_t n = pool_.macro_count();
  if (n < 3) {
    return false;
  }
  const std::size_t a = rng_.index(n);
  std::size_t b = rng_.index(n - 1);
  if (b >= a) {
    ++b;
  }
  std::size_t c = rng_.index(n - 2);
  const std::size_t lo = std::min(a, b);
  const std::size_t hi = std::max(a, b);
  if (c >= lo) {
    ++c;
  }
  if (c >= hi) {
    ++c;
  }
  out[0] = pool_.live_at(a);
  out[1] = pool_.live_at(b);
  out[2] = pool_.live_at(c);
  return true;
}

Vec2 Learner::de_reproduce(const Vec2& target) {
  MacroId picks[3];
  if (!draw_three_distinct(picks)) {
    return random_action();
  }
  const Vec2& x1 = pool_.action(picks[0]);
  const Vec2& x2 = pool_.action(picks[1]);
  const Vec2& x3 = pool_.action(picks[2]);
  const double scale = rng_.uniform01();  // redrawn per reproduction

  Vec2 child;
  const std::size_t jrand = rng_.index(2);
  for (std::size_t j = 0; j < 2; ++j) {
    const double mutant = x1[j] + scale * (x2[j] - x3[j]);
    const bool from_mutant = rng_.chance(params_.de_cr) || j == jrand;
    child[j] = std::clamp(from_mutant ? mutant : target[j], -1.0, 1.0);
  }
  return child;
}

std::optional<Vec2> Learner::step(const Vec2& obs, std::optional<double> reward,
                                  bool terminal, Mode mode) {
  if (pending_.has_value() != reward.has_value()) {
    throw std::logic_error(
        "reward must accompany exactly the steps that follow an action");
  }

  const GridCoord w = som_.winner(obs);
  som_.update(obs, w);
  ensure_cell(w);
  if (pending_) {
    pending_->reward = *reward;
    reinforce(*pending_, w, terminal);
  }
  maybe_evolve(w);
  if (terminal) {
    pending_.reset();
    return std::nullopt;
  }

  const MemberEntry& actor = select_actor(w, mode);
  const CellState& cell = cells_[cell_index(w)];
  const auto& list = (actor.group == Group::Best) ? cell.best : cell.novel;
  pending_ = PendingUpdate{
      w, actor.group, static_cast<std::size_t>(&actor - list.data()), 0.0};
  return pool_.action(actor.macro);
}

void Learner::truncate(const Vec2& obs, double reward) {
  const GridCoord w = som_.winner(obs);
  som_.update(obs, w);
  ensure_cell(w);
  if (pending_) {
    pending_->reward = reward;
    reinforce(*pending_, w, /*terminal=*/false);
  }
  maybe_evolve(w);
  pending_.reset();
}

Vec2 Learner::exploit_probe(const Vec2& obs, Rng& rng) const {
  const GridCoord w = som_.winner(obs);
  const CellState& cell = cells_[cell_index(w)];
  if (!cell.initialized) {
    return {0.0, 0.0};
  }
  const MemberEntry& e = cell.best[rng.index(cell.best.size())];
  return pool_.action(e.macro);
}

double Learner::max_fitness_probe(const Vec2& obs) const {
  const GridCoord w = som_.winner(obs);
  const CellState& cell = cells_[cell_index(w)];
  if (!cell.initialized) {
    return 0.0;
  }
  return cell_max_fitness(w);
}

void Learner::audit() const {
  std::unordered_map<std::uint64_t, std::uint64_t> counts;
  std::uint64_t total = 0;
  auto key = [](MacroId id) {
    return (static_cast<std::uint64_t>(id.slot) << 32) | id.gen;
  };

  for (const CellState& cell : cells_) {
    if (!cell.initialized) {
      if (!cell.best.empty() || !cell.novel.empty() || cell.experience != 0) {
        throw std::logic_error("uninitialized cell holds state");
      }
      continue;
    }
    for (const auto* list : {&cell.best, &cell.novel}) {
      for (const MemberEntry& e : *list) {
        if (!pool_.live(e.macro)) {
          throw std::logic_error("member entry references dead macro");
        }
        ++counts[key(e.macro)];
        ++total;
      }
    }
  }

  if (total != pool_.micro_count()) {
    throw std::logic_error("micro count drifted from member entry total");
  }
  for (MacroId id : pool_.live_ids()) {
    auto it = counts.find(key(id));
    const std::uint64_t held = it == counts.end() ? 0 : it->second;
    if (held != pool_.numerosity(id)) {
      throw std::logic_error("macro numerosity drifted from membership count");
    }
  }
}

std::uint64_t Learner::state_fingerprint() const {
  std::uint64_t h = 0x5ca1ab1e;
  h = hash_step(h, som_.iteration());
  for (int r = 0; r < som_.rows(); ++r) {
    for (int c = 0; c < som_.cols(); ++c) {
      for (double w : som_.weight({r, c})) {
        h = hash_step(h, bits_of(w));
      }
    }
  }
  for (const CellState& cell : cells_) {
    h = hash_step(h, cell.initialized ? cell.experience + 1 : 0);
    for (const auto* list : {&cell.best, &cell.novel}) {
      for (const MemberEntry& e : *list) {
        h = hash_step(h, (static_cast<std::uint64_t>(e.macro.slot) << 32) |
                             e.macro.gen);
        h = hash_step(h, bits_of(e.fitness));
        h = hash_step(h, static_cast<std::uint64_t>(e.group));
      }
    }
  }
  for (MacroId id : pool_.live_ids()) {
    h = hash_step(h, (static_cast<std::uint64_t>(id.slot) << 32) | id.gen);
    h = hash_step(h, pool_.numerosity(id));
    h = hash_step(h, bits_of(pool_.action(id)[0]));
    h = hash_step(h, bits_of(pool_.action(id)[1]));
  }
  return h;
}

}  // namespace soc

#include "cbg/solver.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <array>
#include <climits>
#include <memory>
#include <thread>

#include "cbg/canonical.hpp"
#include "cbg/counting.hpp"

namespace cbg {

namespace {

struct BudgetExhausted {};

struct Entry {
  std::uint64_t key = 0;
  int lo = INT_MIN;
  int hi = INT_MAX;
  int depth = -1;
};

struct Bucket {
  Entry deep;
  Entry recent;
};

std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Two-tier table: a depth-preferred slot and an always-replace slot per
// bucket. Entries hold a [lo, hi] interval known to contain the value; a
// second store for the same key keeps the intersection.
class Table {
 public:
  explicit Table(int bits) : buckets_(std::size_t{1} << bits), mask_((std::uint64_t{1} << bits) - 1) {}

  const Entry* find(std::uint64_t key) const {
    const Bucket& b = buckets_[mix(key) & mask_];
    if (b.deep.depth >= 0 && b.deep.key == key) return &b.deep;
    if (b.recent.depth >= 0 && b.recent.key == key) return &b.recent;
    return nullptr;
  }

  void store(std::uint64_t key, int lo, int hi, int depth) {
    Bucket& b = buckets_[mix(key) & mask_];
    for (Entry* e : {&b.deep, &b.recent})
      if (e->depth >= 0 && e->key == key) {
        e->lo = std::max(e->lo, lo);
        e->hi = std::min(e->hi, hi);
        return;
      }
    const Entry fresh{key, lo, hi, depth};
    if (depth >= b.deep.depth) {
      b.recent = b.deep;
      b.deep = fresh;
    } else {
      b.recent = fresh;
    }
  }

  void merge(const Table& other) {
    for (const Bucket& b : other.buckets_)
      for (const Entry& e : {b.deep, b.recent})
        if (e.depth >= 0) store(e.key, e.lo, e.hi, e.depth);
  }

 private:
  std::vector<Bucket> buckets_;
  std::uint64_t mask_;
};

constexpr int kNegInf = INT_MIN / 2;
constexpr int kPosInf = INT_MAX / 2;

}  // namespace

struct Solver::Impl {
  Impl(const RuleSet& rules, const SolverOptions& options)
      : n(rules.n),
        full(full_mask(rules.n)),
        h(rules.H, rules.n),
        f(rules.F, rules.n),
        options(options),
        table(options.use_table ? options.table_bits : 1) {}

  int n;
  EdgeMask full;
  CopyIndex h;
  CopyIndex f;
  SolverOptions options;
  Table table;
  SolverStats stats;

  EdgeMask constructor_legal(EdgeMask cons, EdgeMask blok) const {
    EdgeMask open = full & ~(cons | blok);
    EdgeMask legal = 0;
    while (open) {
      const int i = std::countr_zero(open);
      open &= open - 1;
      if (!f.completes_any(cons, i)) legal |= EdgeMask{1} << i;
    }
    return legal;
  }

  std::uint64_t key_of(EdgeMask cons, EdgeMask blok, Player side) {
    if (options.canonical) {
      const CanonicalForm c = canonical_form(n, cons, blok, options.canon_leaf_limit);
      if (!c.canonical) ++stats.canon_fallbacks;
      // The top bit separates raw fallback keys from canonical ones.
      const std::uint64_t tag = c.canonical ? 0 : (std::uint64_t{1} << 63);
      return tag | (static_cast<std::uint64_t>(side == Player::Blocker) << 62) |
             (static_cast<std::uint64_t>(c.cons) << 31) | c.blok;
    }
    return (static_cast<std::uint64_t>(side == Player::Blocker) << 62) | (static_cast<std::uint64_t>(cons) << 31) | blok;
  }

  // Moves worth searching, best-first for the mover. Blocker edges that
  // Constructor can never take are interchangeable, so only one is kept.
  int ordered_moves(EdgeMask cons, EdgeMask blok, Player side, EdgeMask legal, std::array<int, 32>& out) const {
    std::array<std::pair<int, int>, 32> scored{};
    int k = 0;
    EdgeMask moves = legal;
    EdgeMask dead = 0;
    if (side == Player::Blocker) {
      dead = full & ~(cons | blok) & ~legal;
      if (dead) moves |= dead & (~dead + 1);
    }
    while (moves) {
      const int i = std::countr_zero(moves);
      moves &= moves - 1;
      const bool is_dead = (dead >> i) & 1U;
      const int threat = is_dead ? -1 : h.completed_by(cons, i);
      scored[static_cast<std::size_t>(k++)] = {-threat, i};
    }
    std::stable_sort(scored.begin(), scored.begin() + k);
    for (int j = 0; j < k; ++j) out[static_cast<std::size_t>(j)] = scored[static_cast<std::size_t>(j)].second;
    return k;
  }

  int search(EdgeMask cons, EdgeMask blok, Player side, int alpha, int beta) {
    if (options.node_budget && stats.nodes >= options.node_budget) throw BudgetExhausted{};
    ++stats.nodes;
    const EdgeMask open = full & ~(cons | blok);
    const EdgeMask legal = constructor_legal(cons, blok);
    if (!open || !legal) return h.count_in(cons);

    if (options.alpha_beta) {
      // Constructor's graph only grows: the final count lies in [now, reachable].
      const int floor_value = h.count_in(cons);
      const int ceiling_value = h.achievable(cons, legal);
      if (floor_value == ceiling_value) return floor_value;
      if (floor_value >= beta) return floor_value;
      if (ceiling_value <= alpha) return ceiling_value;
    }

    std::uint64_t key = 0;
    if (options.use_table) {
      key = key_of(cons, blok, side);
      if (const Entry* e = table.find(key)) {
        ++stats.table_hits;
        if (e->lo == e->hi) return e->lo;
        if (options.alpha_beta) {
          if (e->lo >= beta) return ++stats.table_cutoffs, e->lo;
          if (e->hi <= alpha) return ++stats.table_cutoffs, e->hi;
          alpha = std::max(alpha, e->lo);
          beta = std::min(beta, e->hi);
        }
      }
    }

    std::array<int, 32> moves{};
    const int count = ordered_moves(cons, blok, side, legal, moves);
    const bool maximizing = side == Player::Constructor;
    int best = maximizing ? kNegInf : kPosInf;
    int a = alpha;
    int b = beta;
    for (int j = 0; j < count; ++j) {
      const EdgeMask bit = EdgeMask{1} << moves[static_cast<std::size_t>(j)];
      const int v = maximizing ? search(cons | bit, blok, Player::Blocker, a, b)
                               : search(cons, blok | bit, Player::Constructor, a, b);
      if (maximizing) {
        best = std::max(best, v);
        if (options.alpha_beta) a = std::max(a, v);
      } else {
        best = std::min(best, v);
        if (options.alpha_beta) b = std::min(b, v);
      }
      if (options.alpha_beta && a >= b) break;
    }

    if (options.use_table) {
      int lo = best;
      int hi = best;
      if (options.alpha_beta) {
        if (best <= alpha) lo = INT_MIN;
        else if (best >= beta) hi = INT_MAX;
      }
      ++stats.table_stores;
      table.store(key, lo, hi, std::popcount(open));
    }
    return best;
  }

  int exact(EdgeMask cons, EdgeMask blok, Player side) { return search(cons, blok, side, kNegInf, kPosInf); }

  bool terminal(EdgeMask cons, EdgeMask blok) const {
    return (full & ~(cons | blok)) == 0 || constructor_legal(cons, blok) == 0;
  }

  std::optional<int> best_child(EdgeMask cons, EdgeMask blok, Player side, int target) {
    std::array<int, 32> moves{};
    const int count = ordered_moves(cons, blok, side, constructor_legal(cons, blok), moves);
    for (int j = 0; j < count; ++j) {
      const EdgeMask bit = EdgeMask{1} << moves[static_cast<std::size_t>(j)];
      const int v = side == Player::Constructor ? exact(cons | bit, blok, Player::Blocker)
                                                : exact(cons, blok | bit, Player::Constructor);
      if (v == target) return moves[static_cast<std::size_t>(j)];
    }
    return std::nullopt;
  }
};

Solver::Solver(const RuleSet& rules, SolverOptions options) : rules_(rules), options_(options), impl_(nullptr) {
  if (rules.fn_rule) throw std::invalid_argument("the solver handles only games without forbidden neighbourhoods");
  if (rules.n > kMaxSmallBoard) throw std::invalid_argument("the solver handles boards of at most 8 vertices");
  if (rules.H.order() > kMaxCountedOrder || rules.F.order() > kMaxCountedOrder)
    throw UnsupportedPattern("solver patterns are limited to 8 vertices");
  impl_ = new Impl(rules, options);
}

Solver::~Solver() { delete impl_; }

const SolverStats& Solver::stats() const { return impl_->stats; }

SolveOutcome Solver::solve() { return solve_from(0, 0, rules_.starter); }

SolveOutcome Solver::solve_from(EdgeMask cons, EdgeMask blok, Player to_move) {
  const auto start = std::chrono::steady_clock::now();
  SolveOutcome out;
  Impl& im = *impl_;
  try {
    int value = 0;
    if (options_.threads > 1 && !im.terminal(cons, blok)) {
      // Root split: each worker solves its share of first moves with its own table.
      std::array<int, 32> moves{};
      const int count = im.ordered_moves(cons, blok, to_move, im.constructor_legal(cons, blok), moves);
      const int workers = std::min(options_.threads, count);
      std::vector<std::unique_ptr<Impl>> pool;
      std::vector<int> values(static_cast<std::size_t>(count), 0);
      std::vector<char> failed(static_cast<std::size_t>(workers), 0);
      for (int w = 0; w < workers; ++w) pool.push_back(std::make_unique<Impl>(rules_, options_));
      std::vector<std::thread> threads;
      for (int w = 0; w < workers; ++w)
        threads.emplace_back([&, w] {
          try {
            for (int j = w; j < count; j += workers) {
              const EdgeMask bit = EdgeMask{1} << moves[static_cast<std::size_t>(j)];
              values[static_cast<std::size_t>(j)] =
                  to_move == Player::Constructor ? pool[static_cast<std::size_t>(w)]->exact(cons | bit, blok, Player::Blocker)
                                                 : pool[static_cast<std::size_t>(w)]->exact(cons, blok | bit, Player::Constructor);
            }
          } catch (const BudgetExhausted&) {
            failed[static_cast<std::size_t>(w)] = 1;
          }
        });
      for (auto& t : threads) t.join();
      for (int w = 0; w < workers; ++w) {
        const Impl& p = *pool[static_cast<std::size_t>(w)];
        im.table.merge(p.table);
        im.stats.nodes += p.stats.nodes;
        im.stats.table_hits += p.stats.table_hits;
        im.stats.table_cutoffs += p.stats.table_cutoffs;
        im.stats.table_stores += p.stats.table_stores;
        im.stats.canon_fallbacks += p.stats.canon_fallbacks;
      }
      if (std::any_of(failed.begin(), failed.end(), [](char c) { return c != 0; })) throw BudgetExhausted{};
      value = to_move == Player::Constructor ? *std::max_element(values.begin(), values.end())
                                             : *std::min_element(values.begin(), values.end());
    } else {
      value = im.exact(cons, blok, to_move);
    }
    out.value = value;
    out.complete = true;
    if (options_.principal_line) {
      EdgeMask c = cons;
      EdgeMask b = blok;
      Player side = to_move;
      while (!im.terminal(c, b)) {
        const auto i = im.best_child(c, b, side, value);
        if (!i) break;
        out.principal_line.push_back({side, edge_at(rules_.n, *i)});
        (side == Player::Constructor ? c : b) |= EdgeMask{1} << *i;
        side = opponent(side);
      }
    }
  } catch (const BudgetExhausted&) {
    out.value.reset();
    out.complete = false;
  }
  out.stats = im.stats;
  out.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

std::optional<Edge> Solver::best_move(const Position& p) {
  const EdgeMask cons = mask_of(rules_.n, p.cons());
  const EdgeMask blok = mask_of(rules_.n, p.blok());
  Impl& im = *impl_;
  if (im.terminal(cons, blok)) return std::nullopt;
  const int value = im.exact(cons, blok, p.to_move());
  const auto i = im.best_child(cons, blok, p.to_move(), value);
  if (!i) return std::nullopt;
  return edge_at(rules_.n, *i);
}

SolveOutcome solve(const RuleSet& rules, SolverOptions options) {
  Solver s(rules, options);
  return s.solve();
}

int minimax_reference(const RuleSet& rules) {
  auto shared = std::make_shared<const RuleSet>(rules);
  auto rec = [&](auto&& self, const Position& p) -> int {
    if (p.is_terminal()) return static_cast<int>(count_copies(rules.H, p.cons()));
    const bool maximizing = p.to_move() == Player::Constructor;
    int best = maximizing ? INT_MIN : INT_MAX;
    for (const Edge& e : p.legal_moves()) {
      const int v = self(self, p.after(e));
      best = maximizing ? std::max(best, v) : std::min(best, v);
    }
    return best;
  };
  return rec(rec, Position(shared));
}

nlohmann::json to_json(const SolveOutcome& o, const RuleSet& rules) {
  nlohmann::json j;
  j["config"] = {{"n", rules.n}, {"H", rules.H.name()}, {"F", rules.F.name()},
                 {"starter", std::string(1, player_code(rules.starter))}};
  j["complete"] = o.complete;
  j["value"] = o.value ? nlohmann::json(*o.value) : nlohmann::json(nullptr);
  nlohmann::json line = nlohmann::json::array();
  for (const Move& m : o.principal_line) line.push_back({std::string(1, player_code(m.player)), m.edge.u, m.edge.v});
  j["principal_line"] = std::move(line);
  j["stats"] = {{"nodes", o.stats.nodes},
                {"table_hits", o.stats.table_hits},
                {"table_cutoffs", o.stats.table_cutoffs},
                {"table_stores", o.stats.table_stores},
                {"canonical_fallbacks", o.stats.canon_fallbacks},
                {"seconds", o.stats.seconds}};
  return j;
}

}  // namespace cbg

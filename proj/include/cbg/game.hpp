#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cbg/bitset.hpp"
#include "cbg/graph.hpp"
#include "cbg/pattern.hpp"

namespace cbg {

enum class Player : std::uint8_t { Constructor, Blocker };

constexpr Player opponent(Player p) {
  return p == Player::Constructor ? Player::Blocker : Player::Constructor;
}
char player_code(Player p);
std::string_view player_name(Player p);
// Accepts "C"/"B" and the full names, case-insensitively.
Player parse_player(std::string_view s);

struct Move {
  Player player = Player::Constructor;
  Edge edge;
  friend bool operator==(const Move&, const Move&) = default;
};

class Position;

// Supplies the per-vertex forbidden sets F_v of the bounded game. A rule must
// be symmetric (u in F_v iff v in F_u) with |F_v| <= bound() at every query.
class ForbiddenNeighborhoodRule {
 public:
  virtual ~ForbiddenNeighborhoodRule() = default;
  virtual int bound() const = 0;
  virtual VertexSet forbidden(const Position& p, int v) const = 0;
  virtual std::string name() const = 0;
};

// F_v = vertices within the given distance of v in Constructor's graph.
class DistanceBallRule final : public ForbiddenNeighborhoodRule {
 public:
  DistanceBallRule(int radius, int bound) : radius_(radius), bound_(bound) {}
  // Radius |T| - 1, bound = largest such ball when Constructor degrees are at most k.
  static std::shared_ptr<const DistanceBallRule> for_tree(int k, const Pattern& t);

  int radius() const { return radius_; }
  int bound() const override { return bound_; }
  VertexSet forbidden(const Position& p, int v) const override;
  std::string name() const override;

 private:
  int radius_;
  int bound_;
};

struct RuleSet {
  RuleSet(int n, Pattern h, Pattern f, Player starter = Player::Constructor,
          std::shared_ptr<const ForbiddenNeighborhoodRule> fn_rule = nullptr);

  int n;
  Pattern H;
  Pattern F;
  Player starter;
  std::shared_ptr<const ForbiddenNeighborhoodRule> fn_rule;

  int C() const { return fn_rule ? fn_rule->bound() : 0; }
  std::string describe() const;
};

enum class Verdict { Ok, OutOfRange, Claimed, CreatesForbidden, ForbiddenNeighborhood };
std::string_view to_string(Verdict v);

struct IllegalMove : std::runtime_error {
  IllegalMove(Move m, Verdict v);
  Move move;
  Verdict verdict;
};

// A forbidden-neighbourhood rule broke symmetry or its size bound.
struct RuleViolation : std::logic_error {
  using std::logic_error::logic_error;
};

class Position {
 public:
  explicit Position(std::shared_ptr<const RuleSet> rules);
  // Starts from pre-claimed graphs; throws std::invalid_argument unless they
  // are edge-disjoint and Constructor's graph is F-free.
  Position(std::shared_ptr<const RuleSet> rules, SimpleGraph cons, SimpleGraph blok, Player to_move);

  const RuleSet& rules() const { return *rules_; }
  const std::shared_ptr<const RuleSet>& rules_ptr() const { return rules_; }
  int n() const { return rules_->n; }
  const SimpleGraph& cons() const { return cons_; }
  const SimpleGraph& blok() const { return blok_; }
  const SimpleGraph& graph_of(Player p) const { return p == Player::Constructor ? cons_ : blok_; }
  Player to_move() const { return to_move_; }
  std::int64_t move_count() const { return cons_.edge_count() + blok_.edge_count(); }
  std::int64_t unclaimed_count() const { return pair_count(n()) - move_count(); }
  const std::vector<Move>& transcript() const { return transcript_; }

  bool claimed(Edge e) const { return cons_.has_edge(e) || blok_.has_edge(e); }
  bool claimed(int a, int b) const { return cons_.has_edge(a, b) || blok_.has_edge(a, b); }

  Verdict check(Edge e) const { return check_for(to_move_, e); }
  Verdict check_for(Player p, Edge e) const;
  bool is_legal(Edge e) const { return check(e) == Verdict::Ok; }
  bool is_legal_for(Player p, Edge e) const { return check_for(p, e) == Verdict::Ok; }

  std::vector<Edge> legal_moves() const { return legal_moves_for(to_move_); }
  std::vector<Edge> legal_moves_for(Player p) const;
  // Lowest-index legal edge for p.
  std::optional<Edge> first_legal_for(Player p) const;
  std::optional<Edge> first_legal_move() const { return first_legal_for(to_move_); }
  std::optional<Edge> lowest_unclaimed() const { return first_legal_for(Player::Blocker); }
  // Uniform over the legal edges of p.
  std::optional<Edge> random_legal_for(Player p, std::mt19937_64& rng) const;
  std::optional<Edge> random_legal_move(std::mt19937_64& rng) const { return random_legal_for(to_move_, rng); }

  bool constructor_can_move() const { return first_legal_for(Player::Constructor).has_value(); }
  bool is_terminal() const;

  // F_v as supplied by the rule (empty without one).
  VertexSet forbidden_neighborhood(int v) const;
  // Checks symmetry and the size bound over every vertex; throws RuleViolation.
  void audit_forbidden_neighborhoods() const;

  // Claims e for the side to move; throws IllegalMove.
  void play(Edge e);
  Position after(Edge e) const;

 private:
  struct Cache {
    bool star_rule = false;
    int star_block_degree = 0;
    VertexSet blocked;
    SimpleGraph dead;
    VertexSet exhausted[2];
    int cursor[2] = {0, 0};
  };

  void init_cache();
  bool star_blocked(int v) const { return cache_.star_rule && cache_.blocked.test(v); }
  bool creates_forbidden(Edge e) const;
  bool fn_forbids(int u, int v) const;
  void audit_pair(int u, int v, const VertexSet& fu, const VertexSet& fv) const;
  // Calls visit(v) for each v > u whose pair is unclaimed and, for
  // Constructor, not known to create F; returns false if visit stopped.
  template <class Visit>
  bool scan_row(Player p, int u, Visit&& visit) const;
  template <class Visit>
  void scan(Player p, Visit&& visit) const;

  std::shared_ptr<const RuleSet> rules_;
  SimpleGraph cons_;
  SimpleGraph blok_;
  Player to_move_ = Player::Constructor;
  std::vector<Move> transcript_;
  mutable Cache cache_;
};

}  // namespace cbg

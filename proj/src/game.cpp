#include "cbg/game.hpp"

#include <algorithm>
#include <cctype>

#include "cbg/counting.hpp"

namespace cbg {

char player_code(Player p) { return p == Player::Constructor ? 'C' : 'B'; }

std::string_view player_name(Player p) { return p == Player::Constructor ? "Constructor" : "Blocker"; }

Player parse_player(std::string_view s) {
  std::string lower;
  for (char c : s) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "c" || lower == "constructor") return Player::Constructor;
  if (lower == "b" || lower == "blocker") return Player::Blocker;
  throw std::invalid_argument("unknown player '" + std::string(s) + "'");
}

std::shared_ptr<const DistanceBallRule> DistanceBallRule::for_tree(int k, const Pattern& t) {
  if (!t.is_tree()) throw std::invalid_argument("distance-ball rule needs a tree");
  if (k < 1) throw std::invalid_argument("degree cap must be positive");
  const int radius = t.order() - 1;
  int bound = 0;
  int layer = k;
  for (int i = 1; i <= radius; ++i) {
    bound += layer;
    layer *= k - 1;
  }
  return std::make_shared<DistanceBallRule>(radius, bound);
}

VertexSet DistanceBallRule::forbidden(const Position& p, int v) const {
  return distance_ball(p.cons(), v, radius_);
}

std::string DistanceBallRule::name() const {
  return "ball(r=" + std::to_string(radius_) + ",C=" + std::to_string(bound_) + ")";
}

RuleSet::RuleSet(int n, Pattern h, Pattern f, Player starter, std::shared_ptr<const ForbiddenNeighborhoodRule> fn_rule)
    : n(n), H(std::move(h)), F(std::move(f)), starter(starter), fn_rule(std::move(fn_rule)) {
  if (n < 1) throw std::invalid_argument("board needs at least one vertex");
  if (this->fn_rule && this->fn_rule->bound() < 1)
    throw std::invalid_argument("a forbidden-neighbourhood rule needs a positive bound");
}

std::string RuleSet::describe() const {
  std::string s = "n=" + std::to_string(n) + " H=" + H.name() + " F=" + F.name() + " starter=" + player_code(starter);
  if (fn_rule) s += " fn=" + fn_rule->name();
  return s;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Ok: return "ok";
    case Verdict::OutOfRange: return "vertex out of range";
    case Verdict::Claimed: return "edge already claimed";
    case Verdict::CreatesForbidden: return "creates a forbidden copy";
    case Verdict::ForbiddenNeighborhood: return "endpoints mutually forbidden";
  }
  return "?";
}

IllegalMove::IllegalMove(Move m, Verdict v)
    : std::runtime_error(std::string(player_name(m.player)) + " move " + to_string(m.edge) + " rejected: " +
                         std::string(to_string(v))),
      move(m),
      verdict(v) {}

Position::Position(std::shared_ptr<const RuleSet> rules)
    : rules_(std::move(rules)), cons_(rules_->n), blok_(rules_->n), to_move_(rules_->starter) {
  init_cache();
}

Position::Position(std::shared_ptr<const RuleSet> rules, SimpleGraph cons, SimpleGraph blok, Player to_move)
    : rules_(std::move(rules)), cons_(std::move(cons)), blok_(std::move(blok)), to_move_(to_move) {
  if (cons_.order() != rules_->n || blok_.order() != rules_->n)
    throw std::invalid_argument("pre-claimed graphs must have n vertices");
  for (int v = 0; v < rules_->n; ++v) {
    const auto a = cons_.row(v);
    const auto b = blok_.row(v);
    for (std::size_t w = 0; w < a.size(); ++w)
      if (a[w] & b[w]) throw std::invalid_argument("pre-claimed graphs share an edge");
  }
  if (count_copies(rules_->F, cons_) > 0)
    throw std::invalid_argument("pre-claimed Constructor graph contains " + rules_->F.name());
  init_cache();
}

void Position::init_cache() {
  const int n = rules_->n;
  cache_ = Cache{};
  if (const auto l = rules_->F.star_leaves()) {
    cache_.star_rule = true;
    cache_.star_block_degree = *l - 1;
    cache_.blocked = VertexSet(n);
    for (int v = 0; v < n; ++v)
      if (cons_.degree(v) >= cache_.star_block_degree) cache_.blocked.set(v);
  } else {
    cache_.dead = SimpleGraph(n);
  }
  cache_.exhausted[0] = VertexSet(n);
  cache_.exhausted[1] = VertexSet(n);
}

bool Position::creates_forbidden(Edge e) const {
  if (cache_.star_rule) return star_blocked(e.u) || star_blocked(e.v);
  if (cache_.dead.has_edge(e)) return true;
  if (creates_copy(rules_->F, cons_, e)) {
    // Constructor's graph only grows, so this edge stays illegal.
    cache_.dead.add_edge(e);
    return true;
  }
  return false;
}

void Position::audit_pair(int u, int v, const VertexSet& fu, const VertexSet& fv) const {
  const int c = rules_->C();
  if (fu.count() > c || fv.count() > c)
    throw RuleViolation("forbidden neighbourhood exceeds bound " + std::to_string(c) + " at vertex " +
                        std::to_string(fu.count() > c ? u : v));
  if (fu.test(v) != fv.test(u))
    throw RuleViolation("forbidden neighbourhoods of " + std::to_string(u) + " and " + std::to_string(v) +
                        " are not symmetric");
}

bool Position::fn_forbids(int u, int v) const {
  if (!rules_->fn_rule) return false;
  const VertexSet fu = rules_->fn_rule->forbidden(*this, u);
  const VertexSet fv = rules_->fn_rule->forbidden(*this, v);
  audit_pair(u, v, fu, fv);
  return fu.test(v);
}

Verdict Position::check_for(Player p, Edge e) const {
  if (e.u < 0 || e.v >= n() || e.u >= e.v) return Verdict::OutOfRange;
  if (claimed(e)) return Verdict::Claimed;
  if (p == Player::Blocker) return Verdict::Ok;
  if (creates_forbidden(e)) return Verdict::CreatesForbidden;
  if (fn_forbids(e.u, e.v)) return Verdict::ForbiddenNeighborhood;
  return Verdict::Ok;
}

template <class Visit>
bool Position::scan_row(Player p, int u, Visit&& visit) const {
  const bool constructor = p == Player::Constructor;
  if (constructor && star_blocked(u)) return true;
  const int n = rules_->n;
  const auto rc = cons_.row(u);
  const auto rb = blok_.row(u);
  const int words = cons_.row_words();
  for (int w = (u + 1) / kWordBits; w < words; ++w) {
    Word cand = ~(rc[static_cast<std::size_t>(w)] | rb[static_cast<std::size_t>(w)]);
    if (w == (u + 1) / kWordBits) cand &= ~Word{0} << ((u + 1) % kWordBits);
    if (w == words - 1 && n % kWordBits) cand &= (Word{1} << (n % kWordBits)) - 1;
    if (constructor) {
      if (cache_.star_rule) cand &= ~cache_.blocked.words()[static_cast<std::size_t>(w)];
      else cand &= ~cache_.dead.row(u)[static_cast<std::size_t>(w)];
    }
    while (cand) {
      const int v = w * kWordBits + std::countr_zero(cand);
      cand &= cand - 1;
      if (constructor && !cache_.star_rule && creates_forbidden(Edge{u, v})) continue;
      if (!visit(u, v)) return false;
    }
  }
  return true;
}

template <class Visit>
void Position::scan(Player p, Visit&& visit) const {
  const int side = p == Player::Constructor ? 0 : 1;
  VertexSet& exhausted = cache_.exhausted[side];
  int& cursor = cache_.cursor[side];
  while (cursor < rules_->n && exhausted.test(cursor)) ++cursor;
  const auto& rule = rules_->fn_rule;
  const bool filter = p == Player::Constructor && rule;
  for (int u = cursor; u < rules_->n; ++u) {
    if (exhausted.test(u)) continue;
    bool alive = false;
    std::optional<VertexSet> fu;
    const bool done = scan_row(p, u, [&](int a, int b) {
      alive = true;
      if (filter) {
        if (!fu) fu = rule->forbidden(*this, a);
        if (fu->test(b)) return true;
      }
      return visit(a, b);
    });
    if (!done) return;
    // Claims and F-creating edges are permanent, so an empty row stays empty.
    if (!alive) exhausted.set(u);
  }
}

std::vector<Edge> Position::legal_moves_for(Player p) const {
  std::vector<Edge> out;
  scan(p, [&](int u, int v) {
    out.push_back(Edge{u, v});
    return true;
  });
  return out;
}

std::optional<Edge> Position::first_legal_for(Player p) const {
  std::optional<Edge> found;
  scan(p, [&](int u, int v) {
    found = Edge{u, v};
    return false;
  });
  if (found && p == Player::Constructor && rules_->fn_rule) {
    // Run the full audit on the edge about to be reported.
    if (check_for(p, *found) != Verdict::Ok) throw RuleViolation("forbidden-neighbourhood rule is inconsistent");
  }
  return found;
}

std::optional<Edge> Position::random_legal_for(Player p, std::mt19937_64& rng) const {
  const int n = rules_->n;
  if (n < 2 || unclaimed_count() == 0) return std::nullopt;
  std::uniform_int_distribution<int> first(0, n - 1);
  std::uniform_int_distribution<int> second(0, n - 2);
  for (int attempt = 0; attempt < 64; ++attempt) {
    const int a = first(rng);
    int b = second(rng);
    if (b >= a) ++b;
    const Edge e = Edge::of(a, b);
    if (check_for(p, e) == Verdict::Ok) return e;
  }
  const std::vector<Edge> all = legal_moves_for(p);
  if (all.empty()) return std::nullopt;
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  return all[pick(rng)];
}

bool Position::is_terminal() const {
  if (unclaimed_count() == 0) return true;
  // F_v may change from move to move, so only Constructor's own turn counts.
  if (rules_->fn_rule && to_move_ != Player::Constructor) return false;
  return !constructor_can_move();
}

VertexSet Position::forbidden_neighborhood(int v) const {
  if (!rules_->fn_rule) return VertexSet(n());
  return rules_->fn_rule->forbidden(*this, v);
}

void Position::audit_forbidden_neighborhoods() const {
  if (!rules_->fn_rule) return;
  std::vector<VertexSet> f;
  f.reserve(static_cast<std::size_t>(n()));
  for (int v = 0; v < n(); ++v) f.push_back(forbidden_neighborhood(v));
  for (int v = 0; v < n(); ++v)
    f[static_cast<std::size_t>(v)].for_each([&](int u) {
      audit_pair(v, u, f[static_cast<std::size_t>(v)], f[static_cast<std::size_t>(u)]);
    });
  for (int v = 0; v < n(); ++v)
    if (f[static_cast<std::size_t>(v)].count() > rules_->C())
      throw RuleViolation("forbidden neighbourhood exceeds bound at vertex " + std::to_string(v));
}

void Position::play(Edge e) {
  const Move m{to_move_, e};
  const Verdict v = check(e);
  if (v != Verdict::Ok) throw IllegalMove(m, v);
  if (to_move_ == Player::Constructor) {
    cons_.add_edge(e);
    if (cache_.star_rule) {
      if (cons_.degree(e.u) >= cache_.star_block_degree) cache_.blocked.set(e.u);
      if (cons_.degree(e.v) >= cache_.star_block_degree) cache_.blocked.set(e.v);
    }
  } else {
    blok_.add_edge(e);
  }
  transcript_.push_back(m);
  to_move_ = opponent(to_move_);
}

Position Position::after(Edge e) const {
  Position next = *this;
  next.play(e);
  return next;
}

}  // namespace cbg

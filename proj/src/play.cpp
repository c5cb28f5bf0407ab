#include "cbg/play.hpp"

#include <cstdio>

#include "cbg/counting.hpp"

namespace cbg {

Forfeit::Forfeit(Player offender, std::string strategy, Edge edge, Verdict verdict)
    : std::runtime_error(std::string(player_name(offender)) + " strategy '" + strategy + "' forfeits with " +
                         to_string(edge) + ": " + std::string(to_string(verdict))),
      offender(offender),
      strategy(std::move(strategy)),
      edge(edge),
      verdict(verdict) {}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer over the combined value.
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

GameResult play(std::shared_ptr<const RuleSet> rules, Strategy& constructor, Strategy& blocker, std::uint64_t seed,
                const PlayOptions& options) {
  GameResult result;
  result.rules = rules;
  result.seed = seed;
  result.constructor_name = constructor.name();
  result.blocker_name = blocker.name();

  Position pos = options.use_initial
                     ? Position(rules, options.initial_cons, options.initial_blok, options.first_to_move)
                     : Position(rules);
  result.first_to_move = pos.to_move();
  if (options.use_initial) {
    result.initial_cons = options.initial_cons.edges();
    result.initial_blok = options.initial_blok.edges();
  }

  constructor.reset(pos, Player::Constructor, derive_seed(seed, 1));
  blocker.reset(pos, Player::Blocker, derive_seed(seed, 2));

  std::uint64_t running = options.incremental_score ? count_copies(rules->H, pos.cons()) : 0;
  while (!pos.is_terminal()) {
    const Player side = pos.to_move();
    Strategy& s = side == Player::Constructor ? constructor : blocker;
    if (side == Player::Constructor && options.audit_fn_every_move) pos.audit_forbidden_neighborhoods();
    const Edge e = s.choose(pos);
    const Verdict v = pos.check(e);
    if (v != Verdict::Ok) throw Forfeit(side, s.name(), e, v);
    if (options.incremental_score && side == Player::Constructor)
      running += count_copies_through(rules->H, pos.cons(), e);
    pos.play(e);
    if (options.observer) options.observer(pos, Move{side, e});
  }

  result.transcript = pos.transcript();
  result.final_cons = pos.cons();
  result.final_blok = pos.blok();
  result.score = count_copies(rules->H, pos.cons());
  if (options.incremental_score) result.incremental_score = running;
  result.reports["constructor"] = constructor.diagnostics();
  result.reports["blocker"] = blocker.diagnostics();
  return result;
}

namespace {

nlohmann::json edges_json(const std::vector<Edge>& edges) {
  nlohmann::json a = nlohmann::json::array();
  for (const Edge& e : edges) a.push_back({e.u, e.v});
  return a;
}

std::vector<Edge> edges_from(const nlohmann::json& a) {
  std::vector<Edge> out;
  for (const auto& x : a) out.push_back(Edge::of(x.at(0).get<int>(), x.at(1).get<int>()));
  return out;
}

}  // namespace

nlohmann::json to_json(const GameResult& r) {
  nlohmann::json j;
  j["n"] = r.rules->n;
  j["H"] = r.rules->H.name();
  j["F"] = r.rules->F.name();
  j["starter"] = std::string(1, player_code(r.rules->starter));
  if (r.rules->fn_rule) {
    j["fn_rule"] = r.rules->fn_rule->name();
    j["C"] = r.rules->C();
  }
  j["seed"] = r.seed;
  j["constructor"] = r.constructor_name;
  j["blocker"] = r.blocker_name;
  if (!r.initial_cons.empty() || !r.initial_blok.empty()) {
    j["initial_cons"] = edges_json(r.initial_cons);
    j["initial_blok"] = edges_json(r.initial_blok);
    j["first_to_move"] = std::string(1, player_code(r.first_to_move));
  }
  nlohmann::json t = nlohmann::json::array();
  for (const Move& m : r.transcript) t.push_back({std::string(1, player_code(m.player)), m.edge.u, m.edge.v});
  j["transcript"] = std::move(t);
  j["score"] = r.score;
  if (r.incremental_score) j["incremental_score"] = *r.incremental_score;
  j["reports"] = r.reports;
  return j;
}

GameResult game_from_json(const nlohmann::json& j) {
  const int n = j.at("n").get<int>();
  std::shared_ptr<const ForbiddenNeighborhoodRule> fn;
  if (j.contains("fn_rule")) {
    int radius = 0;
    int bound = 0;
    const std::string name = j.at("fn_rule").get<std::string>();
    if (std::sscanf(name.c_str(), "ball(r=%d,C=%d)", &radius, &bound) != 2)
      throw std::invalid_argument("unknown forbidden-neighbourhood rule '" + name + "'");
    fn = std::make_shared<DistanceBallRule>(radius, bound);
  }
  GameResult r;
  r.rules = std::make_shared<RuleSet>(n, Pattern::parse(j.at("H").get<std::string>()),
                                      Pattern::parse(j.at("F").get<std::string>()),
                                      parse_player(j.at("starter").get<std::string>()), fn);
  r.seed = j.at("seed").get<std::uint64_t>();
  r.constructor_name = j.value("constructor", "");
  r.blocker_name = j.value("blocker", "");
  r.first_to_move = r.rules->starter;
  if (j.contains("initial_cons")) {
    r.initial_cons = edges_from(j.at("initial_cons"));
    r.initial_blok = edges_from(j.at("initial_blok"));
    r.first_to_move = parse_player(j.at("first_to_move").get<std::string>());
  }
  for (const auto& m : j.at("transcript"))
    r.transcript.push_back({parse_player(m.at(0).get<std::string>()), Edge::of(m.at(1).get<int>(), m.at(2).get<int>())});
  r.score = j.at("score").get<std::uint64_t>();
  SimpleGraph c(n);
  SimpleGraph b(n);
  for (const Edge& e : r.initial_cons) c.add_edge(e);
  for (const Edge& e : r.initial_blok) b.add_edge(e);
  for (const Move& m : r.transcript) (m.player == Player::Constructor ? c : b).add_edge(m.edge);
  r.final_cons = std::move(c);
  r.final_blok = std::move(b);
  return r;
}

std::string replay_audit(const GameResult& r) {
  const int n = r.rules->n;
  Position pos = [&] {
    if (r.initial_cons.empty() && r.initial_blok.empty()) return Position(r.rules);
    return Position(r.rules, SimpleGraph::from_edges(n, r.initial_cons), SimpleGraph::from_edges(n, r.initial_blok),
                    r.first_to_move);
  }();
  for (std::size_t i = 0; i < r.transcript.size(); ++i) {
    const Move& m = r.transcript[i];
    if (pos.is_terminal()) return "game continues past a terminal position at move " + std::to_string(i);
    if (m.player != pos.to_move()) return "move " + std::to_string(i) + " out of turn";
    const Verdict v = pos.check(m.edge);
    if (v != Verdict::Ok)
      return "move " + std::to_string(i) + " (" + to_string(m.edge) + ") illegal: " + std::string(to_string(v));
    pos.play(m.edge);
  }
  if (!pos.is_terminal()) return "transcript ends before the game is over";
  if (!(pos.cons() == r.final_cons) || !(pos.blok() == r.final_blok)) return "final graphs differ from replay";
  const std::uint64_t score = count_copies(r.rules->H, pos.cons());
  if (score != r.score)
    return "score " + std::to_string(r.score) + " differs from replayed " + std::to_string(score);
  return {};
}

}  // namespace cbg

#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cbg/game.hpp"

namespace cbg {

// A decision procedure for one side. Instances hold per-game state and are
// never shared between concurrent games.
class Strategy {
 public:
  virtual ~Strategy() = default;
  virtual std::string name() const = 0;
  // Called once before the first move; seed drives any private randomness.
  virtual void reset(const Position& start, Player side, std::uint64_t seed) = 0;
  virtual Edge choose(const Position& p) = 0;
  virtual nlohmann::json diagnostics() const { return nlohmann::json::object(); }
};

// Wrong (H, F) pairing or other misconfiguration of a strategy.
struct ConfigurationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A strategy proposed an illegal edge.
struct Forfeit : std::runtime_error {
  Forfeit(Player offender, std::string strategy, Edge edge, Verdict verdict);
  Player offender;
  std::string strategy;
  Edge edge;
  Verdict verdict;
};

// Independent stream for a (seed, index) pair.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

struct PlayOptions {
  SimpleGraph initial_cons;
  SimpleGraph initial_blok;
  bool use_initial = false;
  Player first_to_move = Player::Constructor;
  bool incremental_score = false;
  // Full symmetry and bound audit of the forbidden neighbourhoods before every Constructor move.
  bool audit_fn_every_move = false;
  std::function<void(const Position&, const Move&)> observer;
};

struct GameResult {
  std::shared_ptr<const RuleSet> rules;
  std::uint64_t seed = 0;
  std::string constructor_name;
  std::string blocker_name;
  std::vector<Edge> initial_cons;
  std::vector<Edge> initial_blok;
  Player first_to_move = Player::Constructor;
  std::vector<Move> transcript;
  SimpleGraph final_cons;
  SimpleGraph final_blok;
  std::uint64_t score = 0;
  std::optional<std::uint64_t> incremental_score;
  nlohmann::json reports = nlohmann::json::object();
};

GameResult play(std::shared_ptr<const RuleSet> rules, Strategy& constructor, Strategy& blocker, std::uint64_t seed,
                const PlayOptions& options = {});

nlohmann::json to_json(const GameResult& r);

// Replays the transcript through the engine. Returns an empty string when
// every move is legal and the final graphs and score match, otherwise a
// description of the first discrepancy.
std::string replay_audit(const GameResult& r);

// Parses the JSON form back into rules plus transcript (patterns by token).
GameResult game_from_json(const nlohmann::json& j);

}  // namespace cbg

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "cbg/acceptance.hpp"
#include "cbg/extremal.hpp"
#include "cbg/formulas.hpp"
#include "cbg/registry.hpp"
#include "cbg/solver.hpp"

using namespace cbg;
using nlohmann::json;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Relative output paths land in $CBGAME_OUT_DIR when it is set.
std::filesystem::path output_path(const std::string& name) {
  std::filesystem::path p(name);
  if (p.is_relative())
    if (const char* dir = std::getenv("CBGAME_OUT_DIR"); dir && *dir) p = std::filesystem::path(dir) / p;
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  return p;
}

class Output {
 public:
  explicit Output(const std::string& name) {
    if (name.empty() || name == "-") return;
    file_.open(output_path(name));
    if (!file_) throw UsageError("cannot write " + name);
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

Pattern parse_pattern(const std::string& token) {
  try {
    return Pattern::parse(token);
  } catch (const std::exception& e) {
    throw UsageError("bad pattern '" + token + "': " + e.what());
  }
}

// Reads Constructor or Blocker moves from the terminal, re-prompting on
// illegal input.
class HumanStrategy final : public Strategy {
 public:
  std::string name() const override { return "human"; }
  void reset(const Position&, Player side, std::uint64_t) override { side_ = side; }
  Edge choose(const Position& p) override {
    if (const auto m = p.transcript().empty() ? std::nullopt : std::optional<Move>(p.transcript().back()))
      std::cerr << player_name(m->player) << " played " << to_string(m->edge) << "\n";
    while (true) {
      std::cerr << player_name(side_) << " to move (u v): " << std::flush;
      std::string line;
      if (!std::getline(std::cin, line)) throw std::runtime_error("input closed");
      std::istringstream in(line);
      int u = 0, v = 0;
      if (!(in >> u >> v) || u == v) {
        std::cerr << "expected two distinct vertex numbers\n";
        continue;
      }
      const Edge e = Edge::of(u, v);
      const Verdict verdict = p.check(e);
      if (verdict == Verdict::Ok) return e;
      std::cerr << "illegal: " << to_string(verdict) << "\n";
    }
  }

 private:
  Player side_ = Player::Constructor;
};

struct GameSpec {
  int n = 0;
  std::string game;
  std::string h, f;
  int k = 0;
  int l = 1;
  std::string fn;
  std::string tree = "P4";
};

std::shared_ptr<const RuleSet> build_rules(const GameSpec& g) {
  if (g.n < 1) throw UsageError("--n must be positive");
  std::string h = g.h, f = g.f;
  std::shared_ptr<const ForbiddenNeighborhoodRule> fn;
  if (g.game == "p3p4") {
    h = "P3", f = "P4";
  } else if (g.game == "p4p5") {
    h = "P4", f = "P5";
  } else if (g.game == "k3p5") {
    h = "K3", f = "P5";
  } else if (g.game == "star") {
    if (g.k < 1) throw UsageError("--game star needs --k");
    h = "S" + std::to_string(g.l), f = "S" + std::to_string(g.k + 1);
  } else if (g.game == "tree") {
    const int k = g.k > 0 ? g.k : 3;
    h = g.tree, f = "S" + std::to_string(k + 1);
    fn = DistanceBallRule::for_tree(k, parse_pattern(g.tree));
  } else if (!g.game.empty()) {
    throw UsageError("unknown --game '" + g.game + "'");
  }
  if (h.empty() || f.empty()) throw UsageError("give --game or both --H and --F");
  const Pattern hp = parse_pattern(h);
  const Pattern fp = parse_pattern(f);
  if (g.fn == "ball") {
    if (!fp.star_leaves()) throw UsageError("--fn ball needs F to be a star");
    fn = DistanceBallRule::for_tree(*fp.star_leaves() - 1, hp);
  } else if (!g.fn.empty() && g.fn != "none") {
    throw UsageError("unknown --fn '" + g.fn + "'");
  }
  return std::make_shared<const RuleSet>(g.n, hp, fp, Player::Constructor, fn);
}

// Closed forms that apply to the solved game, if any.
json formula_check(const RuleSet& r, int value) {
  json out = json::array();
  const auto lh = r.H.star_leaves();
  const auto lf = r.F.star_leaves();
  if (lh && lf && !r.fn_rule) {
    const FormulaValue g = g_star(r.n, *lf - 1, *lh);
    out.push_back({{"formula", "g_star"}, {"value", g.value}, {"regime", to_string(g.regime)},
                   {"matches", g.value == value}});
  }
  if (r.H == Pattern::path(3) && r.F == Pattern::path(4) && r.n >= 2) {
    const auto b = b_of_n(r.n);
    out.push_back({{"formula", "B(n)"}, {"value", b}, {"regime", "asymptotic-regime"}, {"matches", b == value}});
  }
  return out;
}

int cmd_solve(const GameSpec& spec, SolverOptions opts, const std::string& out, bool timing) {
  const auto rules = build_rules(spec);
  const SolveOutcome o = solve(*rules, opts);
  json j = to_json(o, *rules);
  if (!timing) j["stats"].erase("seconds");
  j["config"]["canonical"] = opts.canonical;
  j["config"]["node_budget"] = opts.node_budget;
  j["config"]["threads"] = opts.threads;
  j["partial"] = !o.complete;
  if (o.value) j["formulas"] = formula_check(*rules, *o.value);
  Output dst(out);
  dst.stream() << j.dump(2) << "\n";
  return 0;
}

struct PlayConfig {
  std::string constructor = "random";
  std::string blocker = "random";
  std::string human;
  int reps = 1;
  std::uint64_t seed = 1;
  int threads = 1;
  double eps = 0;
  std::string out;
};

int cmd_play(const GameSpec& spec, const PlayConfig& cfg) {
  const auto rules = build_rules(spec);
  if (cfg.reps < 1) throw UsageError("--reps must be positive");
  if (!cfg.human.empty() && cfg.human != "c" && cfg.human != "b") throw UsageError("--human takes c or b");
  StrategyOptions so;
  so.star.k = spec.k;
  so.star.eps = cfg.eps;
  auto make = [&](Player side) -> std::unique_ptr<Strategy> {
    if (cfg.human == std::string(1, side == Player::Constructor ? 'c' : 'b')) return std::make_unique<HumanStrategy>();
    return make_strategy(side == Player::Constructor ? cfg.constructor : cfg.blocker, so);
  };
  // Fail on bad names and game mismatches before any game starts.
  {
    auto c = make(Player::Constructor);
    auto b = make(Player::Blocker);
    const Position start(rules);
    c->reset(start, Player::Constructor, 0);
    b->reset(start, Player::Blocker, 0);
  }

  const int threads = cfg.human.empty() ? std::max(1, cfg.threads) : 1;
  std::vector<std::string> lines(static_cast<std::size_t>(cfg.reps));
  std::vector<std::uint64_t> scores(static_cast<std::size_t>(cfg.reps));
  std::vector<std::string> errors(static_cast<std::size_t>(cfg.reps));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < cfg.reps; i = next++) {
      const auto idx = static_cast<std::size_t>(i);
      try {
        auto c = make(Player::Constructor);
        auto b = make(Player::Blocker);
        GameResult r = play(rules, *c, *b, derive_seed(cfg.seed, static_cast<std::uint64_t>(i)));
        json j = to_json(r);
        j["index"] = i;
        const std::string audit = audit_game(r);
        j["audit"] = audit.empty() ? "ok" : audit;
        lines[idx] = j.dump();
        scores[idx] = r.score;
      } catch (const std::exception& e) {
        errors[idx] = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  Output dst(cfg.out);
  int failed = 0;
  for (int i = 0; i < cfg.reps; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    if (!errors[idx].empty()) {
      ++failed;
      dst.stream() << json{{"index", i}, {"error", errors[idx]}}.dump() << "\n";
    } else {
      dst.stream() << lines[idx] << "\n";
    }
  }
  std::vector<std::uint64_t> ok;
  for (int i = 0; i < cfg.reps; ++i)
    if (errors[static_cast<std::size_t>(i)].empty()) ok.push_back(scores[static_cast<std::size_t>(i)]);
  std::sort(ok.begin(), ok.end());
  json summary{{"games", cfg.reps},
               {"errors", failed},
               {"config",
                {{"rules", rules->describe()},
                 {"constructor", cfg.human == "c" ? "human" : cfg.constructor},
                 {"blocker", cfg.human == "b" ? "human" : cfg.blocker},
                 {"seed", cfg.seed},
                 {"reps", cfg.reps}}}};
  if (!ok.empty())
    summary["score"] = {{"min", ok.front()}, {"median", ok[ok.size() / 2]}, {"max", ok.back()}};
  dst.stream() << json{{"summary", summary}}.dump() << "\n";
  return failed ? kExitFailure : 0;
}

int cmd_sweep(const std::string& range, const std::string& csv) {
  int lo = 0, hi = 0;
  char colon = 0;
  std::istringstream in(range);
  if (!(in >> lo >> colon >> hi) || colon != ':' || lo < 2 || hi < lo || hi > 8)
    throw UsageError("--sweep-n expects a:b with 2 <= a <= b <= 8");
  Output dst(csv);
  auto& s = dst.stream();
  s << "game,n,params,formula,solver,bruteforce_ex,verdict\n";
  for (int n = lo; n <= hi; ++n) {
    struct Row {
      const char* h;
      const char* f;
    };
    for (const Row& g : {Row{"K2", "S2"}, Row{"K2", "S3"}, Row{"S2", "S3"}, Row{"P3", "P4"}}) {
      const RuleSet rules(n, Pattern::parse(g.h), Pattern::parse(g.f));
      SolverOptions o;
      o.canonical = n >= 6;
      o.principal_line = false;
      const SolveOutcome out = solve(rules, o);
      const int ex = extremal_bruteforce(n, rules.H, rules.F).value;
      std::string formula = "-";
      std::string verdict = "n/a";
      if (std::string(g.h) == "P3") {
        const auto b = b_of_n(n);
        formula = "B(n)=" + std::to_string(b);
        verdict = out.value && *out.value == b ? "match" : "differs";
      } else {
        const auto f = g_star(n, *rules.F.star_leaves() - 1, *rules.H.star_leaves());
        formula = "g_star=" + std::to_string(f.value) + " (" + to_string(f.regime) + ")";
        verdict = out.value && *out.value == f.value ? "match" : "differs";
      }
      s << "g(" << g.h << "|" << g.f << ")," << n << ",," << formula << ","
        << (out.value ? std::to_string(*out.value) : "budget") << "," << ex << "," << verdict << "\n";
    }
  }
  return 0;
}

int cmd_verify(const std::vector<std::string>& only, const std::string& csv) {
  AcceptanceOptions o;
  for (const auto& tag : only) {
    const auto ids = criteria_for(tag);
    if (ids.empty()) throw UsageError("unknown --only tag '" + tag + "'");
    o.only.insert(ids.begin(), ids.end());
  }
  o.on_result = [](const CriterionResult& r) { std::cout << format_line(r) << std::endl; };
  const auto results = run_acceptance(o);
  {
    Output dst(csv);
    dst.stream() << to_csv(results);
  }
  const bool all = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.pass; });
  std::cout << (all ? "all selected criteria pass" : "some criteria failed") << std::endl;
  return all ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constructor-Blocker games: solve, simulate, verify"};
  app.require_subcommand(1);

  GameSpec spec;
  auto add_game = [&](CLI::App* c) {
    c->add_option("--n", spec.n, "number of vertices")->required();
    c->add_option("--game", spec.game, "preset: p3p4, p4p5, k3p5, star, tree");
    c->add_option("--H", spec.h, "scored pattern, e.g. K3, P4, S2");
    c->add_option("--F", spec.f, "forbidden pattern");
    c->add_option("--k", spec.k, "degree cap for the star and tree presets");
    c->add_option("--l", spec.l, "star size for --game star");
    c->add_option("--T", spec.tree, "tree for --game tree");
    c->add_option("--fn", spec.fn, "forbidden-neighbourhood rule: none or ball");
  };

  auto* solve_cmd = app.add_subcommand("solve", "exact game value on at most 8 vertices");
  add_game(solve_cmd);
  SolverOptions sopts;
  std::string solve_out;
  bool timing = false;
  solve_cmd->add_flag("--canonical", sopts.canonical, "merge isomorphic positions");
  solve_cmd->add_option("--budget", sopts.node_budget, "node budget (0 = unlimited)");
  solve_cmd->add_option("--threads", sopts.threads, "root-parallel workers");
  solve_cmd->add_option("--table-bits", sopts.table_bits, "log2 of transposition table buckets");
  solve_cmd->add_flag("--timing", timing, "include wall time in the report");
  solve_cmd->add_option("--out", solve_out, "write JSON here instead of stdout");

  auto* play_cmd = app.add_subcommand("play", "simulate games between named strategies");
  add_game(play_cmd);
  PlayConfig pcfg;
  play_cmd->add_option("--c", pcfg.constructor, "Constructor strategy");
  play_cmd->add_option("--b", pcfg.blocker, "Blocker strategy");
  play_cmd->add_option("--human", pcfg.human, "read one side's moves from the terminal: c or b");
  play_cmd->add_option("--reps", pcfg.reps, "number of games");
  play_cmd->add_option("--seed", pcfg.seed, "base seed; game i uses a stream derived from (seed, i)");
  play_cmd->add_option("--threads", pcfg.threads, "worker threads");
  play_cmd->add_option("--eps", pcfg.eps, "star-builder dangerous-vertex parameter");
  play_cmd->add_option("--out", pcfg.out, "write JSON lines here instead of stdout");

  auto* verify_cmd = app.add_subcommand("verify", "run the acceptance checks");
  std::vector<std::string> only;
  std::string sweep;
  std::string csv = "verify.csv";
  verify_cmd->add_option("--only", only, "criterion tags or numbers");
  verify_cmd->add_option("--sweep-n", sweep, "print a solver-vs-formula table for n in a:b instead");
  verify_cmd->add_option("--csv", csv, "CSV report path ('-' for stdout)");

  auto* list_cmd = app.add_subcommand("strategies", "list strategy names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*solve_cmd) return cmd_solve(spec, sopts, solve_out, timing);
    if (*play_cmd) return cmd_play(spec, pcfg);
    if (*verify_cmd) return sweep.empty() ? cmd_verify(only, csv) : cmd_sweep(sweep, csv == "verify.csv" ? "-" : csv);
    if (*list_cmd) {
      for (const auto& n : strategy_names()) std::cout << n << "\n";
      std::cout << "human\n";
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConfigurationError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

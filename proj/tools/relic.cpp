/*
 *   Copyright 2026 The relic authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


// relic: command-line front end.
//
// Exit codes: 0 valid / success, 1 counterexample or violation found,
// 2 usage or input error, 3 budget exhausted before a verdict.

#include <CLI11.hpp>
#include <json.hpp>

#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "relic/algebra.hpp"
#include "relic/config.hpp"
#include "relic/correctness.hpp"
#include "relic/error.hpp"
#include "relic/game.hpp"
#include "relic/law.hpp"
#include "relic/program.hpp"
#include "relic/relation_io.hpp"
#include "relic/representation.hpp"

namespace {

using Json = nlohmann::ordered_json;
using namespace relic;

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kInputError = 2;
constexpr int kInconclusive = 3;

struct RunConfig {
  std::uint64_t budget = 0;  // 0: the operation's own default
  std::uint64_t seed = 1;
  unsigned workers = 1;
  std::string output = "text";
  bool self_check = false;
  bool no_self_check = false;
};

// A ParseError from a named file, reported as file:line:column.
class FileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw FileError(path + ": cannot open");
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

template <class F>
auto parsing(const std::string& where, F&& f) {
  try {
    return f();
  } catch (const ParseError& e) {
    throw FileError(where + ":" + e.what());
  }
}

class Out {
 public:
  explicit Out(const RunConfig& cfg) : structured_(cfg.output == "structured") {}
  bool structured() const { return structured_; }
  void text(const std::string& s) {
    if (!structured_) {
      std::cout << s;
      if (!s.empty() && s.back() != '\n') {
        std::cout << '\n';
      }
    }
  }
  void record(const Json& j) {
    if (structured_) {
      std::cout << j.dump() << '\n';
    }
  }

 private:
  bool structured_;
};

std::uint64_t budget_or(const RunConfig& cfg, std::uint64_t fallback) {
  return cfg.budget == 0 ? fallback : cfg.budget;
}

Json relation_json(const Relation& r) { return to_string(r); }

// --- rel eval -------------------------------------------------------------

struct RelEvalArgs {
  std::string env;
  std::string term;
};

int rel_eval(const RelEvalArgs& a, const RunConfig& cfg) {
  auto const env = parsing(a.env, [&] { return parse_env(read_file(a.env)); });
  auto const term = parsing("term", [&] { return parse_term(a.term); });
  Assignment asg;
  for (auto const& [name, rel] : env.bindings) {
    asg.emplace(name, rel);
  }
  auto const v = eval_term(term, asg, env.space);
  Out out(cfg);
  Json j{{"record", "rel-eval"}, {"term", to_string(term)}};
  if (!v) {
    j["value"] = nullptr;
    out.text(to_string(term) + " = undefined");
    out.record(j);
    return kOk;
  }
  auto const c = classify(*v);
  j["value"] = relation_json(*v);
  j["left_total"] = c.left_total;
  j["total"] = c.total;
  if (c.in_ltrel0) {
    j["in_ltrel0"] = *c.in_ltrel0;
  }
  std::string text = to_string(term) + " = " + to_string(*v) + "\n";
  text += std::string("left-total ") + (c.left_total ? "yes" : "no") +
          ", total " + (c.total ? "yes" : "no");
  if (c.in_ltrel0) {
    text += std::string(", in Ltrel0 ") + (*c.in_ltrel0 ? "yes" : "no");
  }
  out.text(text);
  out.record(j);
  return kOk;
}

// --- hoare check ----------------------------------------------------------

struct HoareArgs {
  std::string env;
  std::string triple;
  std::string mode = "partial";
};

int hoare_check(const HoareArgs& a, const RunConfig& cfg) {
  auto const renv =
      parsing(a.env, [&] { return parse_env(read_file(a.env)); });
  auto const env = ProgramEnv::from(renv);
  auto const t = parsing("triple", [&] { return parse_triple(a.triple, env); });
  auto const rep = a.mode == "total" ? check_total(t, env) : check_partial(t, env);
  Out out(cfg);
  std::string text = a.mode + " correctness of " +
                     to_string(t.pre.truth(), *env.space) + " " +
                     to_string(*t.prog) + " " +
                     to_string(t.post.truth(), *env.space) + ": " +
                     (rep.value ? "holds" : "fails") + "\n";
  Json chars = Json::array();
  for (auto const& c : rep.characterizations) {
    text += "  " + c.name + ": " + (c.value ? "true" : "false") + "\n";
    chars.push_back({{"name", c.name}, {"value", c.value}});
  }
  if (!rep.value) {
    auto const rho = denote(*t.prog, env);
    text += "  program relation: " + to_string(rho.rel()) + "\n";
  }
  out.text(text);
  out.record({{"record", "hoare-check"},
              {"mode", a.mode},
              {"program", to_string(*t.prog)},
              {"holds", rep.value},
              {"characterizations", chars}});
  return rep.value ? kOk : kViolation;
}

// --- law check ------------------------------------------------------------

struct LawArgs {
  std::string formula;
  std::string preset;
  std::size_t n = 0;
  std::string domain = "REL";
  std::vector<std::size_t> sizes;
  std::string mode = "exhaustive";
  std::uint64_t samples = 10'000;
};

int law_check(const LawArgs& a, const RunConfig& cfg) {
  std::vector<PresetLaw> laws;
  if (!a.preset.empty()) {
    auto const suite = preset_suite(a.preset, a.n == 0 ? 3 : a.n);
    if (!suite) {
      std::string names;
      for (auto const& s : preset_suites()) {
        names += " " + s.name;
      }
      throw ValidationError("unknown preset '" + a.preset + "'; known:" + names);
    }
    for (auto const& l : suite->laws) {
      auto const suffix = "-" + std::to_string(a.n);
      bool const numbered = l.name.size() > suffix.size() &&
                            l.name.compare(l.name.size() - suffix.size(),
                                           suffix.size(), suffix) == 0;
      bool const family = l.name.find_last_of('-') != std::string::npos &&
                          std::isdigit(std::uint8_t(l.name.back()));
      if (a.n != 0 && family && !numbered) {
        continue;
      }
      laws.push_back(l);
    }
    if (laws.empty()) {
      throw ValidationError("preset '" + a.preset + "' has no instance " +
                            std::to_string(a.n));
    }
  } else {
    if (a.formula.empty()) {
      throw ValidationError("give --formula or --preset");
    }
    auto upper = a.domain;
    for (auto& c : upper) {
      c = char(std::toupper(std::uint8_t(c)));
    }
    auto const d = domain_from(upper);
    if (!d) {
      throw ValidationError("unknown domain '" + a.domain + "'");
    }
    PresetLaw l{"formula", a.formula, *d,
                a.sizes.empty() ? std::vector<std::size_t>{2} : a.sizes,
                Expectation::valid};
    laws.push_back(l);
  }
  Out out(cfg);
  bool any_counterexample = false;
  for (auto& l : laws) {
    if (!a.sizes.empty()) {
      l.sizes = a.sizes;
    }
    auto const f = parsing(l.name, [&] { return parse_formula(l.formula); });
    ValidityOptions o;
    o.mode = a.mode == "random" || l.mode == ValidityOptions::Mode::random
                 ? ValidityOptions::Mode::random
                 : ValidityOptions::Mode::exhaustive;
    o.seed = cfg.seed;
    o.samples = a.samples;
    o.budget = budget_or(cfg, kDefaultBudget);
    o.workers = cfg.workers;
    auto const v = check_validity(f, l.domain, l.sizes, o);
    any_counterexample = any_counterexample || !v.valid;
    std::string sizes;
    Json js = Json::array();
    for (auto s : l.sizes) {
      sizes += (sizes.empty() ? "" : ",") + std::to_string(s);
      js.push_back(s);
    }
    bool const expected_valid = l.expected == Expectation::valid;
    std::string text = l.name + " over " + std::string(to_string(l.domain)) +
                       " at |X| in {" + sizes + "} (" +
                       (o.mode == ValidityOptions::Mode::random ? "random"
                                                                : "exhaustive") +
                       "): " + (v.valid ? "valid" : "counterexample") +
                       ", instances " + std::to_string(v.instances);
    if (!a.preset.empty()) {
      text += std::string(", expected ") +
              (expected_valid ? "valid" : "counterexample") +
              (expected_valid == v.valid ? "" : " MISMATCH");
    }
    text += "\n  " + to_string(f) + "\n";
    Json j{{"record", "law-check"},
           {"law", l.name},
           {"formula", to_string(f)},
           {"domain", std::string(to_string(l.domain))},
           {"sizes", js},
           {"valid", v.valid},
           {"instances", v.instances}};
    if (!a.preset.empty()) {
      j["expected_valid"] = expected_valid;
    }
    if (v.counterexample) {
      auto const c = to_string(*v.counterexample);
      std::string indented;
      for (char ch : c) {
        indented += ch;
        if (ch == '\n') {
          indented += "    ";
        }
      }
      text += "  counterexample: " + indented + "\n";
      j["counterexample"] = c;
    }
    out.text(text);
    out.record(j);
  }
  return any_counterexample ? kViolation : kOk;
}

// --- algebra ----------------------------------------------------------------

AlgebraClass class_arg(const std::string& name) {
  auto const c = algebra_class_from(name);
  if (!c) {
    std::string names;
    for (auto t : all_algebra_classes()) {
      names += " " + std::string(to_string(t));
    }
    throw ValidationError("unknown class '" + name + "'; known:" + names);
  }
  return *c;
}

OrderedAlgebra load_algebra(const std::string& path) {
  return parsing(path, [&] { return parse_algebra(read_file(path)); });
}

struct AlgebraArgs {
  std::string file;
  std::string tag;
  std::size_t size = 3;
};

int algebra_check(const AlgebraArgs& a, const RunConfig& cfg) {
  auto const alg = load_algebra(a.file);
  auto const tag = class_arg(a.tag);
  auto const r = check_class(alg, tag);
  Out out(cfg);
  out.text(to_string(r, alg));
  Json v = Json::array();
  for (auto const& x : r.violations) {
    Json w = Json::array();
    for (auto i : x.witness) {
      w.push_back(alg.name(i));
    }
    v.push_back({{"axiom", x.axiom}, {"witness", w}});
  }
  out.record({{"record", "algebra-check"},
              {"class", std::string(to_string(tag))},
              {"ok", r.ok()},
              {"violations", v},
              {"notes", r.notes}});
  return r.ok() ? kOk : kViolation;
}

int algebra_enumerate(const AlgebraArgs& a, const RunConfig& cfg) {
  auto const tag = class_arg(a.tag);
  auto const algs = enumerate_small(tag, a.size);
  Out out(cfg);
  std::size_t i = 0;
  for (auto const& alg : algs) {
    out.text("# " + std::to_string(++i) + " (" + std::to_string(alg.size()) +
             " elements)\n" + to_string(alg));
    out.record({{"record", "algebra"},
                {"class", std::string(to_string(tag))},
                {"index", i},
                {"size", alg.size()},
                {"text", to_string(alg)}});
  }
  out.text("total " + std::to_string(algs.size()));
  out.record({{"record", "algebra-enumerate"},
              {"class", std::string(to_string(tag))},
              {"max_size", a.size},
              {"count", algs.size()}});
  return kOk;
}

// --- repr -------------------------------------------------------------------

struct ReprArgs {
  std::string file;
  std::string construction = "auto";
};

// zareckii for total products, preconstellation for partial ones.
Representation build(const OrderedAlgebra& alg, const std::string& name) {
  if (name == "auto") {
    return represent(alg, alg.is_partial() ? Construction::preconstellation
                                           : Construction::zareckii);
  }
  auto const c = construction_from(name);
  if (!c) {
    throw ValidationError("unknown construction '" + name + "'");
  }
  return represent(alg, *c);
}

Json report_json(const EmbeddingReport& r, const OrderedAlgebra& alg) {
  Json v = Json::array();
  for (auto const& x : r.violations) {
    Json w = Json::array();
    for (auto i : x.witness) {
      w.push_back(alg.name(i));
    }
    v.push_back({{"property", x.property}, {"witness", w}});
  }
  return v;
}

int repr_run(const ReprArgs& a, const RunConfig& cfg, bool show_images) {
  auto const alg = load_algebra(a.file);
  auto const rep = build(alg, a.construction);
  auto const r = verify_embedding(rep);
  Out out(cfg);
  if (show_images) {
    out.text(to_string(rep));
  }
  out.text(to_string(r, rep.source));
  Json sig = Json::array();
  for (auto s : rep.signature) {
    sig.push_back(std::string(to_string(s)));
  }
  Json j{{"record", show_images ? "repr-build" : "repr-verify"},
         {"construction", a.construction},
         {"base", rep.base->names()},
         {"signature", sig}};
  if (show_images) {
    Json imgs = Json::object();
    for (Index i = 0; i < rep.source.size(); ++i) {
      imgs[rep.source.name(i)] = relation_json(rep.image(i));
    }
    j["images"] = imgs;
  }
  j["ok"] = r.ok();
  j["violations"] = report_json(r, rep.source);
  out.record(j);
  return r.ok() ? kOk : kViolation;
}

// --- game -------------------------------------------------------------------

struct GameArgs {
  std::size_t n = 3;
  std::uint64_t samples = 10'000;
  std::size_t exhaustive_max_n = 4;
  std::string exists = "grid";
  std::string file;
  std::optional<std::size_t> truncation;
  std::size_t depth = 3;
  bool no_identity = false;
  std::vector<std::string> initial;
};

int game_verify(const GameArgs& a, const RunConfig& cfg) {
  game::GameLemmaOptions o;
  o.seed = cfg.seed;
  o.samples = a.samples;
  o.exhaustive_max_n = a.exhaustive_max_n;
  o.budget = budget_or(cfg, o.budget);
  auto const r = game::verify_game_lemmas(a.n, o);
  Out out(cfg);
  out.text(to_string(r));
  out.record({{"record", "game-verify"},
              {"n", r.n},
              {"script_wins", r.script_wins},
              {"script_tree_nodes", r.script_tree_nodes},
              {"script_tree_leaves", r.script_tree_leaves},
              {"script_max_rounds", r.script_max_rounds},
              {"grid_rounds", r.grid_rounds},
              {"grid_exhaustive", r.grid_exhaustive},
              {"grid_sequences", r.grid_sequences},
              {"grid_states", r.grid_states},
              {"grid_losses", r.grid_losses},
              {"grid_violation_rounds", r.grid_violation_rounds},
              {"grid_violations", r.grid_violations},
              {"grid_failure", r.grid_failure},
              {"script_failure", r.script_failure},
              {"inconclusive", r.inconclusive}});
  if (!r.script_wins || !r.grid_ok()) {
    return kViolation;
  }
  return r.inconclusive ? kInconclusive : kOk;
}

Json trace_json(const game::Trace& t, const std::string& text) {
  return {{"record", "game-trace"},
          {"n", t.n},
          {"exists", t.exists == game::ExistsPlayer::grid ? "grid" : "minimal"},
          {"steps", t.steps.size()},
          {"result", t.result},
          {"trace", text}};
}

int game_play(const GameArgs& a, const RunConfig& cfg) {
  if (a.exists != "grid" && a.exists != "minimal") {
    throw ValidationError("--exists takes grid or minimal");
  }
  auto const who = a.exists == "grid" ? game::ExistsPlayer::grid
                                      : game::ExistsPlayer::minimal;
  auto const t = game::play_script(a.n, who, cfg.seed);
  auto const text = to_string(t, game::AnAlgebra(a.n));
  Out out(cfg);
  out.text(text);
  out.record(trace_json(t, text));
  return kOk;
}

int game_replay(const GameArgs& a, const RunConfig& cfg) {
  auto const t = parsing(a.file, [&] { return game::parse_trace(read_file(a.file)); });
  auto const result = game::replay(t);
  bool const agrees = t.result.empty() || t.result == result;
  Out out(cfg);
  out.text("replayed " + std::to_string(t.steps.size()) + " steps: " + result +
           (agrees ? "" : " (trace records '" + t.result + "')"));
  out.record({{"record", "game-replay"},
              {"steps", t.steps.size()},
              {"result", result},
              {"recorded", t.result},
              {"agrees", agrees}});
  return agrees ? kOk : kViolation;
}

int game_search(const GameArgs& a, const RunConfig& cfg) {
  std::optional<OrderedAlgebra> alg;
  if (a.truncation) {
    alg = game::an_truncation(*a.truncation);
  } else if (!a.file.empty()) {
    alg = load_algebra(a.file);
  } else {
    throw ValidationError("give --algebra or --an-truncation");
  }
  game::SearchOptions o;
  o.depth = a.depth;
  o.budget = budget_or(cfg, o.budget);
  for (auto const& pair : a.initial) {
    auto const comma = pair.find(',');
    auto const x = alg->index_of(pair.substr(0, comma));
    auto const y = comma == std::string::npos
                       ? std::nullopt
                       : alg->index_of(pair.substr(comma + 1));
    if (!x || !y) {
      throw ValidationError("--initial takes a,b with element names: " + pair);
    }
    o.initial.emplace_back(*x, *y);
  }
  bool const with_identity = alg->identity().has_value() && !a.no_identity;
  auto const r = game::bounded_nonrep_search(*alg, with_identity, o);
  game::FiniteGameAlgebra const galg(*alg);
  game::Game const g(galg, with_identity);
  Out out(cfg);
  std::string text = std::string("verdict: ") + std::string(to_string(r.verdict));
  if (!r.qualifier.empty()) {
    text += " (" + r.qualifier + ")";
  }
  text += "\nstates expanded: " + std::to_string(r.states) +
          (r.budget_exhausted ? " (budget exhausted)" : "") + "\n";
  Json j{{"record", "game-search"},
         {"verdict", std::string(to_string(r.verdict))},
         {"qualifier", r.qualifier},
         {"with_identity", with_identity},
         {"depth", a.depth},
         {"states", r.states},
         {"budget_exhausted", r.budget_exhausted}};
  if (r.winning_initial) {
    text += "winning initial move: " + g.show(*r.winning_initial) + "\n";
    j["winning_initial"] = g.show(*r.winning_initial);
  }
  if (r.theta_report) {
    text += "theta:\n" + to_string(*r.theta) +
            to_string(*r.theta_report, r.theta->source);
    j["theta_ok"] = r.theta_report->ok();
  }
  out.text(text);
  out.record(j);
  switch (r.verdict) {
    case game::SearchVerdict::not_representable:
      return kViolation;
    case game::SearchVerdict::representable:
      return kOk;
    case game::SearchVerdict::unknown:
      break;
  }
  return kInconclusive;
}

int run(int argc, char** argv) {
  CLI::App app{"relic: relations, programs and representation games"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  if (auto const* b = std::getenv("RELIC_BUDGET")) {
    try {
      cfg.budget = std::stoull(b);
    } catch (const std::exception&) {
      std::cerr << "relic: RELIC_BUDGET must be a positive integer\n";
      return kInputError;
    }
    if (cfg.budget == 0) {
      std::cerr << "relic: RELIC_BUDGET must be a positive integer\n";
      return kInputError;
    }
  }
  app.add_option("--budget", cfg.budget, "evaluation cap (overrides RELIC_BUDGET)")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "seed for every random choice");
  app.add_option("--workers", cfg.workers, "worker threads")
      ->check(CLI::Range(1U, 256U));
  app.add_option("--output", cfg.output, "text or structured")
      ->check(CLI::IsMember({"text", "structured"}));
  app.add_flag("--self-check", cfg.self_check, "force every cross-check on");
  app.add_flag("--no-self-check", cfg.no_self_check,
               "skip redundant cross-checks");

  std::function<int()> action;

  auto* rel = app.add_subcommand("rel", "relations")->require_subcommand(1);
  RelEvalArgs rel_args;
  auto* rel_eval_cmd = rel->add_subcommand("eval", "evaluate a term");
  rel_eval_cmd->add_option("--env", rel_args.env, "environment file")->required();
  rel_eval_cmd->add_option("--term", rel_args.term, "term, e.g. a ; b")->required();
  rel_eval_cmd->callback([&] { action = [&] { return rel_eval(rel_args, cfg); }; });

  auto* hoare = app.add_subcommand("hoare", "Hoare triples")->require_subcommand(1);
  HoareArgs hoare_args;
  auto* hoare_cmd = hoare->add_subcommand("check", "check a triple");
  hoare_cmd->add_option("--env", hoare_args.env, "environment file")->required();
  hoare_cmd->add_option("--triple", hoare_args.triple, "{e} prog {f}")->required();
  hoare_cmd->add_option("--mode", hoare_args.mode, "partial or total")
      ->check(CLI::IsMember({"partial", "total"}));
  hoare_cmd->callback([&] { action = [&] { return hoare_check(hoare_args, cfg); }; });

  auto* law = app.add_subcommand("law", "laws")->require_subcommand(1);
  LawArgs law_args;
  auto* law_cmd = law->add_subcommand("check", "check a law on small carriers");
  law_cmd->add_option("--formula", law_args.formula, "quasi-equation");
  law_cmd->add_option("--preset", law_args.preset, "preset suite name");
  law_cmd->add_option("--n", law_args.n, "instance of a parametrised suite");
  law_cmd->add_option("--domain", law_args.domain, "REL, LTREL, TOTAL or LTREL0");
  law_cmd->add_option("--size", law_args.sizes, "carrier sizes")->delimiter(',');
  law_cmd->add_option("--mode", law_args.mode, "exhaustive or random")
      ->check(CLI::IsMember({"exhaustive", "random"}));
  law_cmd->add_option("--samples", law_args.samples, "samples per size (random)");
  law_cmd->callback([&] { action = [&] { return law_check(law_args, cfg); }; });

  auto* repr = app.add_subcommand("repr", "representations")->require_subcommand(1);
  ReprArgs repr_args;
  auto repr_opts = [&](CLI::App* c) {
    c->add_option("--algebra", repr_args.file, "algebra file")->required();
    c->add_option("--construction", repr_args.construction,
                  "auto, zareckii, weak-zero, zero, dual-zero-total, "
                  "dual-zero-demonic or preconstellation");
  };
  auto* repr_build = repr->add_subcommand("build", "build and print images");
  repr_opts(repr_build);
  repr_build->callback([&] { action = [&] { return repr_run(repr_args, cfg, true); }; });
  auto* repr_verify = repr->add_subcommand("verify", "check the embedding");
  repr_opts(repr_verify);
  repr_verify->callback([&] { action = [&] { return repr_run(repr_args, cfg, false); }; });

  auto* game_cmd = app.add_subcommand("game", "representation games")->require_subcommand(1);
  GameArgs game_args;
  auto* gv = game_cmd->add_subcommand("verify", "check the A_n strategies");
  gv->add_option("--n", game_args.n, "parameter of A_n")->check(CLI::Range(1, 200));
  gv->add_option("--samples", game_args.samples, "sampled sequences for large n");
  gv->add_option("--exhaustive-max-n", game_args.exhaustive_max_n,
                 "largest n searched exhaustively");
  gv->callback([&] { action = [&] { return game_verify(game_args, cfg); }; });
  auto* gp = game_cmd->add_subcommand("play", "play the script and print a trace");
  gp->add_option("--n", game_args.n, "parameter of A_n")->check(CLI::Range(1, 200));
  gp->add_option("--exists", game_args.exists, "grid or minimal")
      ->check(CLI::IsMember({"grid", "minimal"}));
  gp->callback([&] { action = [&] { return game_play(game_args, cfg); }; });
  auto* gr = game_cmd->add_subcommand("replay", "replay a trace file");
  gr->add_option("--trace", game_args.file, "trace file")->required();
  gr->callback([&] { action = [&] { return game_replay(game_args, cfg); }; });
  auto* gs = game_cmd->add_subcommand("search", "bounded non-representability search");
  gs->add_option("--algebra", game_args.file, "algebra file");
  gs->add_option("--an-truncation", game_args.truncation, "use the A_n truncation");
  gs->add_option("--depth", game_args.depth, "rounds after the initial one");
  gs->add_flag("--no-identity", game_args.no_identity, "play the game without 1'");
  gs->add_option("--initial", game_args.initial, "restrict initial moves to a,b");
  gs->callback([&] { action = [&] { return game_search(game_args, cfg); }; });

  auto* algebra = app.add_subcommand("algebra", "finite ordered algebras")->require_subcommand(1);
  AlgebraArgs alg_args;
  auto* ac = algebra->add_subcommand("check", "check class axioms");
  ac->add_option("--algebra", alg_args.file, "algebra file")->required();
  ac->add_option("--class", alg_args.tag, "class tag")->required();
  ac->callback([&] { action = [&] { return algebra_check(alg_args, cfg); }; });
  auto* ae = algebra->add_subcommand("enumerate", "list small algebras");
  ae->add_option("--class", alg_args.tag, "class tag")->required();
  ae->add_option("--size", alg_args.size, "largest size (<= 4)")->check(CLI::Range(1, 4));
  ae->callback([&] { action = [&] { return algebra_enumerate(alg_args, cfg); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int const code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }
  if (cfg.self_check && cfg.no_self_check) {
    std::cerr << "relic: --self-check and --no-self-check conflict\n";
    return kInputError;
  }
  if (cfg.self_check) {
    set_self_check(true);
  } else if (cfg.no_self_check) {
    set_self_check(false);
  }
  try {
    return action();
  } catch (const FileError& e) {
    std::cerr << "relic: " << e.what() << "\n";
    return kInputError;
  } catch (const ParseError& e) {
    std::cerr << "relic: " << e.what() << "\n";
    return kInputError;
  } catch (const ValidationError& e) {
    std::cerr << "relic: " << e.what() << "\n";
    return kInputError;
  } catch (const SpaceMismatch& e) {
    std::cerr << "relic: " << e.what() << "\n";
    return kInputError;
  } catch (const BudgetExceeded& e) {
    std::cerr << "relic: " << e.what() << "\n";
    return kInconclusive;
  }
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "relic: internal error: " << e.what() << "\n";
    return 70;
  }
}

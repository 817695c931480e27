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


// Python bindings: text in, plain Python values out.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "relic/algebra.hpp"
#include "relic/config.hpp"
#include "relic/correctness.hpp"
#include "relic/error.hpp"
#include "relic/game.hpp"
#include "relic/law.hpp"
#include "relic/relation_io.hpp"
#include "relic/representation.hpp"

namespace py = pybind11;
using namespace relic;

namespace {

std::optional<std::string> eval(const std::string& env_text,
                                const std::string& term) {
  auto const env = parse_env(env_text);
  Assignment asg;
  for (auto const& [name, rel] : env.bindings) {
    asg.emplace(name, rel);
  }
  auto const v = eval_term(parse_term(term), asg, env.space);
  if (!v) {
    return std::nullopt;
  }
  return to_string(*v);
}

py::dict hoare(const std::string& env_text, const std::string& triple,
               const std::string& mode) {
  auto const env = ProgramEnv::from(parse_env(env_text));
  auto const t = parse_triple(triple, env);
  if (mode != "partial" && mode != "total") {
    throw ValidationError("mode must be partial or total");
  }
  auto const r = mode == "total" ? check_total(t, env) : check_partial(t, env);
  py::dict chars;
  for (auto const& c : r.characterizations) {
    chars[py::str(c.name)] = c.value;
  }
  py::dict out;
  out["holds"] = r.value;
  out["characterizations"] = chars;
  return out;
}

py::dict law(const std::string& formula, const std::string& domain,
             const std::vector<std::size_t>& sizes, const std::string& mode,
             std::uint64_t seed, std::uint64_t samples, std::uint64_t budget,
             unsigned workers) {
  auto const d = domain_from(domain);
  if (!d) {
    throw ValidationError("unknown domain '" + domain + "'");
  }
  ValidityOptions o;
  o.mode = mode == "random" ? ValidityOptions::Mode::random
                            : ValidityOptions::Mode::exhaustive;
  o.seed = seed;
  o.samples = samples;
  o.budget = budget;
  o.workers = workers;
  Verdict v;
  {
    py::gil_scoped_release release;
    v = check_validity(parse_formula(formula), *d, sizes, o);
  }
  py::dict out;
  out["valid"] = v.valid;
  out["instances"] = v.instances;
  out["counterexample"] =
      v.counterexample ? py::object(py::str(to_string(*v.counterexample)))
                       : py::object(py::none());
  return out;
}

AlgebraClass class_arg(const std::string& name) {
  auto const c = algebra_class_from(name);
  if (!c) {
    throw ValidationError("unknown class '" + name + "'");
  }
  return *c;
}

py::dict algebra_check(const std::string& text, const std::string& tag) {
  auto const alg = parse_algebra(text);
  auto const r = check_class(alg, class_arg(tag));
  py::list v;
  for (auto const& x : r.violations) {
    py::list w;
    for (auto i : x.witness) {
      w.append(alg.name(i));
    }
    v.append(py::make_tuple(x.axiom, w));
  }
  py::dict out;
  out["ok"] = r.ok();
  out["violations"] = v;
  return out;
}

std::vector<std::string> enumerate(const std::string& tag, std::size_t size) {
  std::vector<std::string> out;
  for (auto const& a : enumerate_small(class_arg(tag), size)) {
    out.push_back(to_string(a));
  }
  return out;
}

py::dict representation(const std::string& text,
                        const std::string& construction) {
  auto const alg = parse_algebra(text);
  auto const c = construction_from(construction);
  if (!c) {
    throw ValidationError("unknown construction '" + construction + "'");
  }
  auto const rep = represent(alg, *c);
  auto const r = verify_embedding(rep);
  py::dict images;
  for (Index i = 0; i < rep.source.size(); ++i) {
    images[py::str(rep.source.name(i))] = to_string(rep.image(i));
  }
  py::list v;
  for (auto const& x : r.violations) {
    py::list w;
    for (auto i : x.witness) {
      w.append(rep.source.name(i));
    }
    v.append(py::make_tuple(x.property, w));
  }
  py::dict out;
  out["base"] = rep.base->names();
  out["images"] = images;
  out["ok"] = r.ok();
  out["violations"] = v;
  return out;
}

py::dict game_lemmas(std::size_t n, std::uint64_t samples, std::uint64_t seed) {
  game::GameLemmaOptions o;
  o.samples = samples;
  o.seed = seed;
  game::GameLemmaReport r;
  {
    py::gil_scoped_release release;
    r = game::verify_game_lemmas(n, o);
  }
  py::dict out;
  out["n"] = r.n;
  out["script_wins"] = r.script_wins;
  out["script_tree_nodes"] = r.script_tree_nodes;
  out["script_tree_leaves"] = r.script_tree_leaves;
  out["script_max_rounds"] = r.script_max_rounds;
  out["grid_exhaustive"] = r.grid_exhaustive;
  out["grid_sequences"] = r.grid_sequences;
  out["grid_losses"] = r.grid_losses;
  out["grid_violation_rounds"] = r.grid_violation_rounds;
  out["inconclusive"] = r.inconclusive;
  out["ok"] = r.ok();
  out["summary"] = to_string(r);
  return out;
}

py::dict search(const std::optional<std::string>& text,
                std::optional<std::size_t> an_truncation, std::size_t depth,
                std::uint64_t budget, bool with_identity) {
  if (text.has_value() == an_truncation.has_value()) {
    throw ValidationError("give exactly one of an algebra or an_truncation");
  }
  auto const alg = text ? parse_algebra(*text) : game::an_truncation(*an_truncation);
  game::SearchOptions o;
  o.depth = depth;
  o.budget = budget;
  bool const ident = with_identity && alg.identity().has_value();
  game::SearchResult r;
  {
    py::gil_scoped_release release;
    r = game::bounded_nonrep_search(alg, ident, o);
  }
  py::dict out;
  out["verdict"] = std::string(to_string(r.verdict));
  out["qualifier"] = r.qualifier;
  out["states"] = r.states;
  out["budget_exhausted"] = r.budget_exhausted;
  if (r.winning_initial) {
    game::FiniteGameAlgebra const galg(alg);
    out["winning_initial"] = game::Game(galg, ident).show(*r.winning_initial);
  } else {
    out["winning_initial"] = py::none();
  }
  return out;
}

std::string play(std::size_t n, const std::string& exists, std::uint64_t seed) {
  if (exists != "grid" && exists != "minimal") {
    throw ValidationError("exists must be grid or minimal");
  }
  auto const t = game::play_script(
      n, exists == "grid" ? game::ExistsPlayer::grid : game::ExistsPlayer::minimal,
      seed);
  return to_string(t, game::AnAlgebra(n));
}

}  // namespace

PYBIND11_MODULE(_relic, m) {
  m.doc() = "Relations, programs, ordered algebras and representation games.";

  auto error = py::register_exception<Error>(m, "Error");
  py::register_exception<ParseError>(m, "ParseError", error.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", error.ptr());
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", error.ptr());
  py::register_exception<ConsistencyError>(m, "ConsistencyError", error.ptr());

  m.def("set_self_check", &set_self_check, py::arg("enabled"));
  m.def("eval_term", &eval, py::arg("env"), py::arg("term"),
        "Evaluate a term over an environment; None when undefined.");
  m.def("hoare_check", &hoare, py::arg("env"), py::arg("triple"),
        py::arg("mode") = "partial");
  m.def("check_law", &law, py::arg("formula"), py::arg("domain") = "REL",
        py::arg("sizes") = std::vector<std::size_t>{2},
        py::arg("mode") = "exhaustive", py::arg("seed") = 0,
        py::arg("samples") = 10'000, py::arg("budget") = kDefaultBudget,
        py::arg("workers") = 1);
  m.def("check_class", &algebra_check, py::arg("algebra"), py::arg("cls"));
  m.def("enumerate_small", &enumerate, py::arg("cls"), py::arg("max_size"));
  m.def("represent", &representation, py::arg("algebra"),
        py::arg("construction") = "zareckii");
  m.def("verify_game_lemmas", &game_lemmas, py::arg("n"),
        py::arg("samples") = 10'000, py::arg("seed") = 1);
  m.def("nonrep_search", &search, py::arg("algebra") = py::none(),
        py::arg("an_truncation") = py::none(), py::arg("depth") = 3,
        py::arg("budget") = 200'000, py::arg("with_identity") = true);
  m.def("play_script", &play, py::arg("n"), py::arg("exists") = "grid",
        py::arg("seed") = 1);
  m.def("replay", [](const std::string& text) {
    return game::replay(game::parse_trace(text));
  }, py::arg("trace"));
}

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

#include <doctest.h>

#include <chrono>
#include <random>

#include "oracle.hpp"
#include "relic/error.hpp"
#include "relic/law.hpp"
#include "relic/program.hpp"

using namespace relic;

namespace {

using ORel = oracle::Rel;

// Reference evaluation over sets of pairs.
std::optional<ORel> oeval(const Term& t, const std::map<std::string, ORel>& env,
                          std::size_t n) {
  switch (t.kind) {
    case Term::Kind::var:
      return env.at(t.name);
    case Term::Kind::constant:
      switch (t.constant) {
        case TermConst::empty:
          return ORel{};
        case TermConst::identity:
          return oracle::diag(n);
        case TermConst::full:
          return oracle::full(n);
        case TermConst::abort: {
          ORel out;
          for (std::size_t x = 0; x < n; ++x) {
            out.insert({x, n - 1});
          }
          return out;
        }
      }
      break;
    case Term::Kind::op: {
      auto l = oeval(*t.left, env, n);
      auto r = oeval(*t.right, env, n);
      if (!l || !r) {
        return std::nullopt;
      }
      switch (t.op) {
        case TermOp::angelic:
          return oracle::angelic(*l, *r);
        case TermOp::demonic:
          return oracle::demonic(*l, *r, n);
        case TermOp::cup:
          return oracle::unite(*l, *r);
        case TermOp::demonic_join:
          return oracle::join_demonic(*l, *r);
        case TermOp::constellation:
          return oracle::constellation(*l, *r);
      }
    }
  }
  return std::nullopt;
}

bool oatom(const Atom& a, const std::map<std::string, ORel>& env,
           std::size_t n) {
  auto l = oeval(a.lhs, env, n);
  if (a.kind == AtomKind::exists) {
    return l.has_value();
  }
  auto r = oeval(a.rhs, env, n);
  if (!l || !r) {
    return false;
  }
  switch (a.kind) {
    case AtomKind::equal:
      return *l == *r;
    case AtomKind::subset:
      return oracle::subset(*l, *r);
    case AtomKind::refines:
      return oracle::refines(*l, *r);
    case AtomKind::exists:
      break;
  }
  return false;
}

bool oformula(const Formula& f, const Assignment& env, std::size_t n) {
  std::map<std::string, ORel> o;
  for (auto const& [k, v] : env) {
    o.emplace(k, oracle::of(v));
  }
  for (auto const& a : f.antecedent) {
    if (!oatom(a, o, n)) {
      return true;
    }
  }
  for (auto const& a : f.consequent) {
    if (!oatom(a, o, n)) {
      return false;
    }
  }
  return true;
}

Term random_term(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, 9);
  auto const k = pick(rng);
  if (depth == 0 || k < 3) {
    static const char* vars[] = {"x", "y", "z"};
    return Term::var(vars[k % 3]);
  }
  if (k == 3) {
    std::uniform_int_distribution<int> c(0, 3);
    return Term::make_const(TermConst(c(rng)));
  }
  std::uniform_int_distribution<int> op(0, 4);
  auto l = random_term(rng, depth - 1);
  return Term::make_op(TermOp(op(rng)), l, random_term(rng, depth - 1));
}

Verdict check(std::string_view text, Domain d, std::vector<std::size_t> sizes,
              ValidityOptions opt = {}) {
  return check_validity(parse_formula(text), d, sizes, opt);
}

}  // namespace

TEST_CASE("formula syntax") {
  auto f = parse_formula("s0 <= sn & s0 <= (sn * t) => (s0 * t) <= (sn * t)");
  CHECK(f.antecedent.size() == 2);
  CHECK(f.consequent.size() == 1);
  CHECK(f.antecedent[1].kind == AtomKind::subset);
  CHECK(f.variables() == std::vector<std::string>{"s0", "sn", "t"});

  auto g = parse_formula("x cup 0e = x");
  CHECK(g.antecedent.empty());
  CHECK(g.consequent[0].kind == AtomKind::equal);
  CHECK(g.consequent[0].lhs.right->kind == Term::Kind::constant);
  CHECK(g.consequent[0].lhs.right->constant == TermConst::empty);

  auto h = parse_formula("ex((x . t))");
  CHECK(h.consequent[0].kind == AtomKind::exists);
  CHECK(h.consequent[0].lhs.op == TermOp::constellation);

  auto r = parse_formula("a ref<= b => a ; b ; c = nabla & Z <= 1'");
  CHECK(r.antecedent[0].kind == AtomKind::refines);
  CHECK(to_string(r) == "a ref<= b => ((a ; b) ; c) = nabla & Z <= 1'");
  CHECK(parse_formula(to_string(r)) == r);

  auto offset_of = [](std::string_view text) -> std::size_t {
    try {
      (void)parse_formula(text);
    } catch (const ParseError& e) {
      return e.offset();
    }
    return std::string_view::npos;
  };
  CHECK(offset_of("a ; b * c = a") == 6);
  CHECK(offset_of("a <= ") == 5);
  CHECK(offset_of("cup = a") == 0);
  CHECK(offset_of("a = b c") == 6);
  CHECK(offset_of("ex(a") == 4);
  CHECK(offset_of("(a cup b) dj c = a") == std::string_view::npos);
}

TEST_CASE("restricted monotonicity for n = 1 is the basic law") {
  auto const basic =
      parse_formula("s0 <= s1 & s0 <= (s1 * t) => (s0 * t) <= (s1 * t)");
  CHECK(normalize(parse_formula(restricted_monotonicity_law(1))) ==
        normalize(basic));
  CHECK(parse_formula(restricted_monotonicity_law(3)).antecedent.size() == 4);
}

TEST_CASE("term evaluation") {
  auto X = StateSpace::numbered(2);
  Relation x(X, {{0, 1}, {1, 1}});
  Relation y(X, {{0, 0}});
  Assignment env{{"x", x}, {"y", y}};
  CHECK(eval_term(parse_term("1' ; x"), env, X) == x);
  CHECK_FALSE(eval_term(parse_term("x . y"), env, X).has_value());
  CHECK_FALSE(eval_formula(parse_formula("ex(x . y)"), env, X));
  CHECK_FALSE(eval_formula(parse_formula("(x . y) = (x . y)"), env, X));
  CHECK(eval_formula(parse_formula("ex(y . x)"), env, X));
  CHECK_THROWS_AS(eval_term(parse_term("w"), env, X), ValidationError);
  CHECK_THROWS_AS(eval_term(parse_term("Z"), env, X), ValidationError);
  auto X0 = StateSpace::numbered(2, true);
  CHECK(eval_term(parse_term("Z"), {}, X0) == abort_program(X0).rel());
}

TEST_CASE("evaluation agrees with the reference on random terms") {
  std::mt19937 rng(11);
  auto X0 = StateSpace::numbered(2, true);
  auto rels = all_relations(X0);
  std::uniform_int_distribution<std::size_t> pick(0, rels.size() - 1);
  for (int i = 0; i < 3000; ++i) {
    Atom a{AtomKind(i % 4), random_term(rng, 3), random_term(rng, 3)};
    Formula f{{}, {a}};
    Assignment env{{"x", rels[pick(rng)]},
                   {"y", rels[pick(rng)]},
                   {"z", rels[pick(rng)]}};
    CHECK(eval_formula(f, env, X0) == oformula(f, env, 3));
  }
}

TEST_CASE("restricted monotonicity is valid on two points") {
  for (std::size_t n = 1; n <= 3; ++n) {
    auto v = check(restricted_monotonicity_law(n), Domain::rel, {2});
    CHECK(v.valid);
    CHECK(v.instances == std::uint64_t(1) << (4 * (n + 2)));
  }
}

TEST_CASE("left monotonicity fails for demonic composition") {
  auto f = parse_formula("s0 <= s1 => (s0 * t) <= (s1 * t)");
  auto v = check_validity(f, Domain::rel, {2});
  REQUIRE_FALSE(v.valid);
  REQUIRE(v.counterexample);
  CHECK_FALSE(oformula(f, v.counterexample->assignment, 2));

  // Minimization never leaves a removable pair behind.
  for (auto const& [name, rel] : v.counterexample->assignment) {
    for (auto [x, y] : rel.pairs()) {
      auto env = v.counterexample->assignment;
      env.at(name).erase(x, y);
      CHECK(oformula(f, env, 2));
    }
  }
  CHECK(to_string(*v.counterexample).find("s0 = ") != std::string::npos);

  // The reference finds one too.
  bool any = false;
  auto rels = oracle::all(2);
  for (auto const& s0 : rels) {
    for (auto const& s1 : rels) {
      for (auto const& t : rels) {
        if (oracle::subset(s0, s1) &&
            !oracle::subset(oracle::demonic(s0, t, 2),
                            oracle::demonic(s1, t, 2))) {
          any = true;
        }
      }
    }
  }
  CHECK(any);
}

TEST_CASE("identity law separates left-total relations from all relations") {
  CHECK(check("s <= 1' => s = 1'", Domain::ltrel, {1, 2, 3}).valid);
  CHECK(check("s <= 1' => s = 1'", Domain::ltrel0, {2}).valid);
  auto v = check("s <= 1' => s = 1'", Domain::rel, {2});
  REQUIRE_FALSE(v.valid);
  CHECK(v.counterexample->assignment.at("s").empty());
}

TEST_CASE("budget, random mode and workers") {
  auto const law = restricted_monotonicity_law(2);
  CHECK_THROWS_AS(check(law, Domain::rel, {3}), BudgetExceeded);
  ValidityOptions small;
  small.budget = 1000;
  CHECK_THROWS_AS(check(law, Domain::rel, {2}, small), BudgetExceeded);

  ValidityOptions random;
  random.mode = ValidityOptions::Mode::random;
  random.samples = 2000;
  random.seed = 5;
  CHECK(check(law, Domain::rel, {3, 5}, random).valid);
  auto lm = "s0 <= s1 => (s0 * t) <= (s1 * t)";
  auto r1 = check(lm, Domain::rel, {3}, random);
  auto r2 = check(lm, Domain::rel, {3}, random);
  REQUIRE_FALSE(r1.valid);
  CHECK(r1.counterexample->assignment == r2.counterexample->assignment);
  CHECK(r1.instances == r2.instances);

  ValidityOptions many;
  many.workers = 4;
  auto a = check(lm, Domain::rel, {2});
  auto b = check(lm, Domain::rel, {2}, many);
  CHECK(a.counterexample->assignment == b.counterexample->assignment);
  CHECK(a.instances == b.instances);
  CHECK(check(law, Domain::rel, {2}, many).valid);

  // Random counterexamples replay under the exhaustive evaluator.
  CHECK_FALSE(eval_formula(parse_formula(lm), r1.counterexample->assignment,
                           r1.counterexample->space));
}

TEST_CASE("preset suites") {
  auto suites = preset_suites(3);
  CHECK(preset_suite("restricted-monotonicity", 3)->laws.size() == 3);
  CHECK_FALSE(preset_suite("nope"));
  for (auto const& suite : suites) {
    for (auto const& law : suite.laws) {
      ValidityOptions opt;
      opt.mode = law.mode;
      opt.samples = 20000;
      auto v = check_validity(parse_formula(law.formula), law.domain,
                              law.sizes, opt);
      CHECK_MESSAGE(v.valid == (law.expected == Expectation::valid),
                    suite.name << "/" << law.name);
    }
  }
  auto fam = preset_suite("existence-family", 4);
  REQUIRE(fam);
  CHECK(fam->laws.back().mode == ValidityOptions::Mode::random);
}

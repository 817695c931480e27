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

#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "relic/config.hpp"
#include "relic/error.hpp"
#include "relic/relation.hpp"
#include "relic/relation_io.hpp"

using namespace relic;

namespace {

SpacePtr two() { return StateSpace::numbered(2); }

Relation lit(const char* text, const SpacePtr& space) {
  return parse_relation(text, space);
}

Relation random_relation(std::mt19937_64& rng, const SpacePtr& space) {
  std::vector<Mask> rows(space->size());
  for (auto& r : rows) {
    r = rng() & space->full_mask();
  }
  return Relation(space, std::move(rows));
}

}  // namespace

TEST_CASE("angelic composition examples") {
  auto X = two();
  CHECK(compose_angelic(lit("{(1,1),(1,2)}", X), lit("{(1,1)}", X)) ==
        lit("{(1,1)}", X));
  for (auto const& t : all_relations(X)) {
    CHECK(compose_angelic(empty_relation(X), t).empty());
    CHECK(compose_angelic(diagonal(X), t) == t);
  }
}

TEST_CASE("demonic composition examples") {
  auto X = two();
  CHECK(compose_demonic(lit("{(1,1),(1,2)}", X), lit("{(1,1)}", X)).empty());
  CHECK(compose_demonic(lit("{(1,1),(2,1)}", X), lit("{(1,2)}", X)) ==
        lit("{(1,2),(2,2)}", X));
  for (auto const& s : all_relations(X)) {
    CHECK(compose_demonic(s, empty_relation(X)).empty());
  }
}

TEST_CASE("refinement examples") {
  auto X = two();
  auto s = lit("{(1,1),(1,2)}", X);
  auto t = lit("{(1,1)}", X);
  CHECK_FALSE(refines_demonic(s, t));
  CHECK(refines_demonic(t, s));
  for (auto const& r : all_relations(X)) {
    CHECK(refines_demonic(r, empty_relation(X)));
    CHECK(refines_demonic(r, r));
  }
}

TEST_CASE("demonic join examples") {
  auto X = two();
  CHECK(join_demonic(lit("{(1,1),(2,1)}", X), lit("{(2,2)}", X)) ==
        lit("{(2,1),(2,2)}", X));
  for (auto const& s : all_relations(X)) {
    CHECK(join_demonic(s, s) == s);
    CHECK(join_demonic(s, empty_relation(X)).empty());
  }
}

TEST_CASE("constellation product examples") {
  auto X = two();
  auto p = product_constellation(lit("{(1,2),(2,2)}", X), lit("{(2,1)}", X));
  REQUIRE(p.has_value());
  CHECK(*p == lit("{(1,1),(2,1)}", X));
  CHECK_FALSE(product_constellation(lit("{(1,1)}", X), lit("{(2,2)}", X))
                  .has_value());
  for (auto const& s : all_relations(X)) {
    auto q = product_constellation(s, diagonal(X));
    REQUIRE(q.has_value());
    CHECK(*q == s);
  }
}

TEST_CASE("basic set operations") {
  auto X = StateSpace::numbered(3);
  auto s = lit("{(1,2),(3,1)}", X);
  CHECK(dom(s) == ElementSet{0, 2});
  CHECK(diag_of_domain(lit("{(1,2)}", X)) == lit("{(1,1)}", X));
  CHECK(image(lit("{(1,1),(1,2)}", X), 0) == ElementSet{0, 1});
  CHECK(ran(s) == ElementSet{0, 1});
  CHECK(full(X).pair_count() == 9);
  CHECK(includes(full(X), s));
  CHECK_FALSE(includes(s, full(X)));
  CHECK(restrict_domain(s, ElementSet{2}) == lit("{(3,1)}", X));
  CHECK(unite(s, lit("{(2,2)}", X)) == lit("{(1,2),(3,1),(2,2)}", X));
  CHECK(intersect(s, lit("{(1,2),(2,2)}", X)) == lit("{(1,2)}", X));
}

TEST_CASE("classification") {
  auto X = two();
  auto c = classify(diagonal(X));
  CHECK(c.left_total);
  CHECK(c.total);
  CHECK_FALSE(c.in_ltrel0.has_value());
  c = classify(lit("{(1,1),(2,1)}", X));
  CHECK(c.left_total);
  CHECK_FALSE(c.total);
  CHECK_THROWS_AS(is_in_ltrel0(diagonal(X)), Error);

  auto X0 = StateSpace::numbered(2, true);
  Relation abort(X0);
  for (Index x = 0; x < X0->size(); ++x) {
    abort.insert(x, *X0->fail_index());
  }
  CHECK(is_in_ltrel0(abort));
  CHECK(classify(abort).in_ltrel0 == true);
  CHECK_FALSE(is_in_ltrel0(full(X0)));
}

TEST_CASE("spaces must match") {
  auto a = StateSpace::numbered(2);
  auto b = StateSpace::numbered(3);
  CHECK_THROWS_AS(compose_angelic(diagonal(a), diagonal(b)), SpaceMismatch);
  CHECK_THROWS_AS(compose_demonic(diagonal(a), diagonal(b)), SpaceMismatch);
  CHECK_THROWS_AS(refines_demonic(diagonal(a), diagonal(b)), SpaceMismatch);
  CHECK_THROWS_AS(join_demonic(diagonal(a), diagonal(b)), SpaceMismatch);
  CHECK_THROWS_AS(product_constellation(diagonal(a), diagonal(b)),
                  SpaceMismatch);
}

TEST_CASE("state space validation") {
  CHECK_THROWS_AS(StateSpace::make({}), ValidationError);
  CHECK_THROWS_AS(StateSpace::make({"a", "a"}), ValidationError);
  CHECK_THROWS_AS(StateSpace::make({"0", "a"}, 0), ValidationError);
  auto X0 = extend_with_fail(StateSpace::numbered(2));
  CHECK(X0->size() == 3);
  CHECK(X0->name(2) == "0");
  CHECK(*strip_fail(X0) == *StateSpace::numbered(2));
  CHECK_THROWS_AS(extend_with_fail(StateSpace::make({"0", "1"})),
                  ValidationError);
}

TEST_CASE("operations agree with the pair-set reference at |X| = 2") {
  auto X = two();
  auto rels = all_relations(X);
  CHECK(rels.size() == 16);
  for (auto const& s : rels) {
    auto os = oracle::of(s);
    for (auto const& t : rels) {
      auto ot = oracle::of(t);
      CHECK(oracle::of(compose_angelic(s, t)) == oracle::angelic(os, ot));
      CHECK(oracle::of(compose_demonic(s, t)) == oracle::demonic(os, ot, 2));
      CHECK(refines_demonic(s, t) == oracle::refines(os, ot));
      CHECK(oracle::of(join_demonic(s, t)) == oracle::join_demonic(os, ot));
      auto p = product_constellation(s, t);
      auto op = oracle::constellation(os, ot);
      REQUIRE(p.has_value() == op.has_value());
      if (p) {
        CHECK(oracle::of(*p) == *op);
      }
    }
  }
}

TEST_CASE("both demonic composition forms agree for |X| <= 3") {
  for (std::size_t n = 1; n <= 3; ++n) {
    auto X = StateSpace::numbered(n);
    auto rels = all_relations(X);
    std::size_t mismatches = 0;
    for (auto const& s : rels) {
      for (auto const& t : rels) {
        if (detail::compose_demonic_forward(s, t) !=
            detail::compose_demonic_quantified(s, t)) {
          ++mismatches;
        }
      }
    }
    CHECK(mismatches == 0);
  }
}

TEST_CASE("associativity is exhaustive at |X| = 2 and sampled at 3 and 4") {
  auto X = two();
  auto rels = all_relations(X);
  for (auto const& a : rels) {
    for (auto const& b : rels) {
      for (auto const& c : rels) {
        REQUIRE(compose_angelic(compose_angelic(a, b), c) ==
                compose_angelic(a, compose_angelic(b, c)));
        REQUIRE(compose_demonic(compose_demonic(a, b), c) ==
                compose_demonic(a, compose_demonic(b, c)));
        REQUIRE(unite(unite(a, b), c) == unite(a, unite(b, c)));
      }
    }
  }
  std::mt19937_64 rng(7);
  for (std::size_t n : {3, 4}) {
    auto Y = StateSpace::numbered(n);
    for (int i = 0; i < 2000; ++i) {
      auto a = random_relation(rng, Y);
      auto b = random_relation(rng, Y);
      auto c = random_relation(rng, Y);
      REQUIRE(compose_angelic(compose_angelic(a, b), c) ==
              compose_angelic(a, compose_angelic(b, c)));
      REQUIRE(compose_demonic(compose_demonic(a, b), c) ==
              compose_demonic(a, compose_demonic(b, c)));
      REQUIRE(unite(unite(a, b), c) == unite(a, unite(b, c)));
    }
  }
}

TEST_CASE("demonic composition is monotone over refinement on both sides") {
  auto rels = all_relations(two());
  for (auto const& s : rels) {
    for (auto const& s2 : rels) {
      if (!refines_demonic(s, s2)) {
        continue;
      }
      for (auto const& t : rels) {
        REQUIRE(refines_demonic(compose_demonic(s, t), compose_demonic(s2, t)));
        REQUIRE(refines_demonic(compose_demonic(t, s), compose_demonic(t, s2)));
      }
    }
  }
}

TEST_CASE("demonic composition over inclusion: right monotone, not left") {
  auto rels = all_relations(two());
  std::optional<std::tuple<Relation, Relation, Relation>> witness;
  for (auto const& s : rels) {
    for (auto const& s2 : rels) {
      if (!subset(s, s2)) {
        continue;
      }
      for (auto const& t : rels) {
        REQUIRE(subset(compose_demonic(t, s), compose_demonic(t, s2)));
        if (!witness && !subset(compose_demonic(s, t), compose_demonic(s2, t))) {
          witness.emplace(s, s2, t);
        }
      }
    }
  }
  REQUIRE(witness.has_value());
  auto const& [s, s2, t] = *witness;
  auto os = oracle::of(s);
  auto os2 = oracle::of(s2);
  auto ot = oracle::of(t);
  CHECK(oracle::subset(os, os2));
  CHECK_FALSE(oracle::subset(oracle::demonic(os, ot, 2),
                             oracle::demonic(os2, ot, 2)));
}

TEST_CASE("refinement is a partial order for |X| <= 3") {
  for (std::size_t n = 1; n <= 3; ++n) {
    auto rels = all_relations(StateSpace::numbered(n));
    std::vector<std::vector<std::size_t>> up(rels.size());
    for (std::size_t i = 0; i < rels.size(); ++i) {
      REQUIRE(refines_demonic(rels[i], rels[i]));
      for (std::size_t j = 0; j < rels.size(); ++j) {
        if (refines_demonic(rels[i], rels[j])) {
          up[i].push_back(j);
          if (i != j) {
            REQUIRE_FALSE(refines_demonic(rels[j], rels[i]));
          }
        }
      }
    }
    for (std::size_t i = 0; i < rels.size(); ++i) {
      for (auto j : up[i]) {
        for (auto k : up[j]) {
          REQUIRE(refines_demonic(rels[i], rels[k]));
        }
      }
    }
  }
}

TEST_CASE("demonic join is the join of refinement") {
  auto rels = all_relations(two());
  for (auto const& s : rels) {
    for (auto const& t : rels) {
      auto j = join_demonic(s, t);
      REQUIRE(refines_demonic(s, j));
      REQUIRE(refines_demonic(t, j));
      for (auto const& u : rels) {
        if (refines_demonic(s, u) && refines_demonic(t, u)) {
          REQUIRE(refines_demonic(j, u));
        }
      }
    }
  }
}

TEST_CASE("idempotent semiring laws at |X| = 2") {
  auto rels = all_relations(two());
  auto check = [&](auto mul, auto add) {
    for (auto const& a : rels) {
      REQUIRE(add(a, a) == a);
      for (auto const& b : rels) {
        REQUIRE(add(a, b) == add(b, a));
        for (auto const& c : rels) {
          REQUIRE(add(add(a, b), c) == add(a, add(b, c)));
          REQUIRE(mul(mul(a, b), c) == mul(a, mul(b, c)));
          for (auto const& d : rels) {
            REQUIRE(mul(add(a, b), add(c, d)) ==
                    add(add(add(mul(a, c), mul(a, d)), mul(b, c)), mul(b, d)));
          }
        }
      }
    }
  };
  check([](auto const& a, auto const& b) { return compose_demonic(a, b); },
        [](auto const& a, auto const& b) { return join_demonic(a, b); });
  check([](auto const& a, auto const& b) { return compose_angelic(a, b); },
        [](auto const& a, auto const& b) { return unite(a, b); });
}

TEST_CASE("left-total relations: demonic forms collapse to angelic ones") {
  auto X = StateSpace::numbered(3);
  auto lt = left_total_relations(X);
  CHECK(lt.size() == 343);
  for (auto const& s : lt) {
    for (auto const& t : lt) {
      REQUIRE(compose_angelic(s, t) == compose_demonic(s, t));
      REQUIRE(unite(s, t) == join_demonic(s, t));
    }
  }
}

TEST_CASE("defined constellation products agree with both compositions") {
  auto rels = all_relations(StateSpace::numbered(3));
  for (auto const& s : rels) {
    for (auto const& t : rels) {
      auto p = product_constellation(s, t);
      if (p) {
        REQUIRE(*p == compose_demonic(s, t));
        REQUIRE(*p == compose_angelic(s, t));
      }
    }
  }
}

TEST_CASE("relation enumerations") {
  auto X = two();
  CHECK(total_relations(X).size() == 7);
  CHECK(left_total_relations(X).size() == 9);
  auto X0 = StateSpace::numbered(2, true);
  auto lt0 = ltrel0_relations(X0);
  CHECK(lt0.size() == 49);
  CHECK(lt0.size() == oracle::all_ltrel0(3).size());
  for (auto const& r : lt0) {
    CHECK(oracle::in_ltrel0(oracle::of(r), 3));
  }
}

TEST_CASE("literal round trip and parse errors") {
  auto X = parse_space_decl("space X = {1,2,3} fail 0");
  CHECK(X->size() == 4);
  CHECK(X->fail_index() == 3);
  CHECK(space_decl(*X) == "space X = {1,2,3} fail 0");
  auto r = parse_relation("{(1,2), (0,0)}", X);
  CHECK(to_string(r) == "{(1,2),(0,0)}");
  CHECK(parse_relation(to_string(r), X) == r);
  CHECK(to_string(parse_element_set("{3,1}", X), *X) == "{1,3}");
  try {
    parse_relation("{(1,2),(1,9)}", X);
    FAIL("expected a parse error");
  } catch (ParseError const& e) {
    CHECK(e.offset() == 10);
    CHECK(e.line() == 1);
    CHECK(e.column() == 11);
  }
  CHECK_THROWS_AS(parse_space_decl("space X = {1,2} fail 9"), ParseError);

  auto env = parse_env(
      "# programs\nspace X = {1,2} fail 0\na = {(1,1),(2,0),(0,0)}\n"
      "b = {}\n");
  CHECK(env.bindings.size() == 2);
  REQUIRE(env.find("a") != nullptr);
  CHECK(env.find("a")->pair_count() == 3);
  CHECK(parse_env(to_string(env)).bindings == env.bindings);
  CHECK_THROWS_AS(parse_env("space X = {1}\na = {}\na = {}\n"), ParseError);
}

TEST_CASE("self check detects a disagreement between demonic forms") {
  // A consistent library never trips the check; exercise the switch only.
  auto X = two();
  set_self_check(false);
  CHECK(compose_demonic(diagonal(X), diagonal(X)) == diagonal(X));
  set_self_check(true);
  CHECK(self_check_enabled());
}

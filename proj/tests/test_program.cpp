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

#include <map>

#include "doctest.h"
#include "oracle.hpp"
#include "relic/error.hpp"
#include "relic/program.hpp"
#include "relic/relation_io.hpp"

using namespace relic;

namespace {

SpacePtr X0_of(std::size_t n) { return StateSpace::numbered(n, true); }

ProgramRelation prog(const char* text, const SpacePtr& space) {
  return ProgramRelation(parse_relation(text, space));
}

// Restrictions straight from their set-builder definitions.
oracle::Rel angelic_part(const ProgramRelation& rho) {
  oracle::Rel out;
  auto const f = rho.fail();
  for (auto [x, y] : oracle::of(rho.rel())) {
    if (x != f && y != f) {
      out.insert({x, y});
    }
  }
  return out;
}

oracle::Rel demonic_part(const ProgramRelation& rho) {
  auto const r = oracle::of(rho.rel());
  auto const f = rho.fail();
  oracle::Rel out;
  for (auto [x, y] : r) {
    if (x != f && !r.count({x, f})) {
      out.insert({x, y});
    }
  }
  return out;
}

}  // namespace

TEST_CASE("abort and skip") {
  auto X0 = X0_of(1);
  CHECK(abort_program(X0) == prog("{(1,0),(0,0)}", X0));
  CHECK(skip_program(X0) == prog("{(1,1),(0,0)}", X0));
  CHECK(is_in_ltrel0(abort_program(X0).rel()));
  CHECK_THROWS_AS(abort_program(StateSpace::numbered(1)), ValidationError);
  CHECK_THROWS_AS(prog("{(1,1)}", X0), ValidationError);
  CHECK_THROWS_AS(prog("{(1,1),(0,0),(0,1)}", X0), ValidationError);
}

TEST_CASE("restrictions") {
  auto X0 = X0_of(1);
  CHECK(restrict_angelic(abort_program(X0)).empty());
  CHECK(restrict_demonic(abort_program(X0)).empty());
  auto X = StateSpace::numbered(1);
  CHECK(restrict_angelic(skip_program(X0)) == diagonal(X));
  CHECK(restrict_demonic(skip_program(X0)) == diagonal(X));

  auto Y0 = X0_of(2);
  auto Y = StateSpace::numbered(2);
  auto rho = prog("{(1,1),(1,0),(2,2),(0,0)}", Y0);
  CHECK(restrict_angelic(rho) == parse_relation("{(1,1),(2,2)}", Y));
  CHECK(restrict_demonic(rho) == parse_relation("{(2,2)}", Y));
  for (auto const& p : all_programs(Y0)) {
    CHECK(oracle::of(restrict_angelic(p)) == angelic_part(p));
    CHECK(oracle::of(restrict_demonic(p)) == demonic_part(p));
  }
}

TEST_CASE("reconstruction") {
  auto X = StateSpace::numbered(2);
  auto X0 = X0_of(2);
  CHECK(reconstruct(empty_relation(X), empty_relation(X)) == abort_program(X0));
  CHECK(reconstruct(diagonal(X), diagonal(X)) == skip_program(X0));
  auto a = parse_relation("{(1,1),(2,2)}", X);
  auto d = parse_relation("{(2,2)}", X);
  auto rho = reconstruct(a, d);
  CHECK(rho == prog("{(1,1),(1,0),(2,2),(0,0)}", X0));

  // The search oracle: the unique program with these restrictions.
  std::size_t matches = 0;
  for (auto const& p : all_programs(X0)) {
    if (restrict_angelic(p) == a && restrict_demonic(p) == d) {
      ++matches;
      CHECK(p == rho);
    }
  }
  CHECK(matches == 1);

  CHECK_THROWS_AS(reconstruct(parse_relation("{(1,1)}", X),
                              parse_relation("{(1,2)}", X)),
                  ValidationError);
  CHECK_THROWS_AS(reconstruct(parse_relation("{(1,1),(1,2)}", X),
                              parse_relation("{(1,1)}", X)),
                  ValidationError);

  for (auto const& p : all_programs(X0)) {
    CHECK(reconstruct(restrict_angelic(p), restrict_demonic(p)) == p);
  }
}

TEST_CASE("sequencing and choice") {
  auto X0 = X0_of(2);
  auto abort = abort_program(X0);
  auto skip = skip_program(X0);
  auto programs = all_programs(X0);
  for (auto const& p : programs) {
    CHECK(seq(abort, p) == abort);
    CHECK(seq(skip, p) == p);
  }
  auto c = choice(skip, abort);
  auto expected = oracle::unite(oracle::of(skip.rel()), oracle::of(abort.rel()));
  CHECK(oracle::in_ltrel0(expected, 3));
  CHECK(oracle::of(c.rel()) == expected);
}

TEST_CASE("psi embeddings on small inputs") {
  auto X = StateSpace::numbered(1);
  auto X0 = X0_of(1);
  // Rows outside the domain of r map to every state of X0, the fail state
  // included, so psi2 sends the empty relation to the full relation.
  CHECK(psi2(empty_relation(X)) == full(X0));
  CHECK(is_total(psi2(empty_relation(X))));
  CHECK(psi1(empty_relation(X)) == abort_program(X0));
  CHECK(psi3(diagonal(X)) == prog("{(1,1),(0,0)}", X0));
  CHECK(psi3(empty_relation(X)) == prog("{(1,1),(1,0),(0,0)}", X0));
}

TEST_CASE("restriction homomorphisms over all 49 programs") {
  auto X0 = X0_of(2);
  auto programs = all_programs(X0);
  REQUIRE(programs.size() == 49);
  auto X = StateSpace::numbered(2);
  CHECK(restrict_angelic(skip_program(X0)) == diagonal(X));
  CHECK(restrict_demonic(skip_program(X0)) == diagonal(X));
  CHECK(restrict_angelic(abort_program(X0)).empty());
  CHECK(restrict_demonic(abort_program(X0)).empty());
  for (auto const& r : programs) {
    auto ra = restrict_angelic(r);
    auto rd = restrict_demonic(r);
    for (auto const& t : programs) {
      auto ta = restrict_angelic(t);
      auto td = restrict_demonic(t);
      auto s = seq(r, t);
      auto u = choice(r, t);
      REQUIRE(restrict_angelic(s) == compose_angelic(ra, ta));
      REQUIRE(restrict_demonic(s) == compose_demonic(rd, td));
      REQUIRE(restrict_angelic(u) == unite(ra, ta));
      REQUIRE(restrict_demonic(u) == join_demonic(rd, td));
      REQUIRE((r == t) == (ra == ta && rd == td));
    }
  }
}

TEST_CASE("psi1, psi2, psi3 are embeddings at |X| = 2") {
  auto X = StateSpace::numbered(2);
  auto X0 = X0_of(2);
  auto rels = all_relations(X);
  REQUIRE(rels.size() == 16);
  std::map<Relation, Relation> seen1, seen2, seen3;
  CHECK(psi1(empty_relation(X)) == abort_program(X0));
  CHECK(psi2(empty_relation(X)) == full(X0));
  CHECK(psi3(diagonal(X)) == skip_program(X0));
  for (auto const& r : rels) {
    auto p1 = psi1(r);
    auto p2 = psi2(r);
    auto p3 = psi3(r);
    CHECK(seen1.emplace(p1.rel(), r).second);
    CHECK(seen2.emplace(p2, r).second);
    CHECK(seen3.emplace(p3.rel(), r).second);
    CHECK(is_total(p2));
    CHECK(subset(p3.rel(), p2));
    CHECK(p3.rel() != p2);
    CHECK(psi2_inverse(p2) == r);
    for (auto const& t : rels) {
      REQUIRE(seq(p1, psi1(t)) == psi1(compose_angelic(r, t)));
      REQUIRE(choice(p1, psi1(t)) == psi1(unite(r, t)));
      REQUIRE(compose_angelic(p2, psi2(t)) == psi2(compose_demonic(r, t)));
      REQUIRE(unite(p2, psi2(t)) == psi2(join_demonic(r, t)));
      CHECK_MESSAGE(seq(p3, psi3(t)) == psi3(compose_demonic(r, t)),
                    "psi3 does not turn * into ; at r = ", to_string(r),
                    ", t = ", to_string(t));
      REQUIRE(choice(p3, psi3(t)) == psi3(join_demonic(r, t)));
      // Orders are preserved and reflected.
      REQUIRE(subset(r, t) == subset(p1.rel(), psi1(t).rel()));
      REQUIRE(refines_demonic(r, t) == subset(p2, psi2(t)));
      REQUIRE(refines_demonic(r, t) == subset(p3.rel(), psi3(t).rel()));
    }
  }
  // Relations outside the image of psi2 have no preimage.
  CHECK_FALSE(psi2_inverse(diagonal(X0)).has_value());
}

TEST_CASE("program orders") {
  auto X0 = X0_of(2);
  auto programs = all_programs(X0);
  for (auto const& r : programs) {
    CHECK(quasi_partial(r, r));
    CHECK(quasi_total(r, r));
    CHECK(approx(r, r));
    for (auto const& t : programs) {
      REQUIRE(approx(r, t) == (quasi_partial(r, t) && quasi_total(r, t)));
    }
  }
  auto skip = skip_program(X0);
  CHECK_FALSE(quasi_total(abort_program(X0), skip));

  auto Y0 = X0_of(1);
  auto Y = StateSpace::numbered(1);
  auto rho = prog("{(1,0),(1,1),(0,0)}", Y0);
  auto tau = psi1(parse_relation("{(1,1)}", Y));
  CHECK(quasi_partial(rho, tau));
  CHECK(quasi_partial(tau, rho));
}

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

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "oracle.hpp"
#include "relic/algebra.hpp"
#include "relic/error.hpp"
#include "relic/program.hpp"

using namespace relic;

namespace {

// Independent axiom checks over plain tables: -1 is undefined.
struct Plain {
  std::size_t n;
  std::vector<std::vector<int>> mul;
  std::vector<std::vector<bool>> leq;
};

Plain plain_of(const OrderedAlgebra& a) {
  Plain p{a.size(), {}, {}};
  for (Index x = 0; x < a.size(); ++x) {
    p.mul.emplace_back();
    p.leq.emplace_back();
    for (Index y = 0; y < a.size(); ++y) {
      p.mul.back().push_back(a.mul(x, y) ? int(*a.mul(x, y)) : -1);
      p.leq.back().push_back(a.leq(x, y));
    }
  }
  return p;
}

bool plain_ordered_semigroup(const Plain& p) {
  for (std::size_t x = 0; x < p.n; ++x) {
    for (std::size_t y = 0; y < p.n; ++y) {
      if (p.mul[x][y] < 0) {
        return false;
      }
    }
  }
  for (std::size_t x = 0; x < p.n; ++x) {
    for (std::size_t y = 0; y < p.n; ++y) {
      for (std::size_t z = 0; z < p.n; ++z) {
        if (p.mul[p.mul[x][y]][z] != p.mul[x][p.mul[y][z]]) {
          return false;
        }
        if (p.leq[x][y] && (!p.leq[p.mul[z][x]][p.mul[z][y]] ||
                            !p.leq[p.mul[x][z]][p.mul[y][z]])) {
          return false;
        }
      }
    }
  }
  return true;
}

bool plain_preconstellation(const Plain& p, bool ordered) {
  auto def = [&](int a, int b) { return a >= 0 && b >= 0 && p.mul[a][b] >= 0; };
  for (std::size_t x = 0; x < p.n; ++x) {
    for (std::size_t y = 0; y < p.n; ++y) {
      for (std::size_t z = 0; z < p.n; ++z) {
        int const yz = p.mul[y][z];
        if (def(int(x), yz)) {
          int const xy = p.mul[x][y];
          if (!def(xy, int(z)) || p.mul[xy][z] != p.mul[x][yz]) {
            return false;
          }
        }
        if (p.mul[x][y] >= 0 && yz >= 0 && p.mul[x][yz] < 0) {
          return false;
        }
      }
    }
  }
  if (!ordered) {
    return true;
  }
  for (std::size_t s = 0; s < p.n; ++s) {
    for (std::size_t t = 0; t < p.n; ++t) {
      for (std::size_t u = 0; u < p.n; ++u) {
        for (std::size_t v = 0; v < p.n; ++v) {
          if (!p.leq[s][u] || !p.leq[t][v]) {
            continue;
          }
          if (p.mul[s][t] >= 0 && p.mul[u][v] >= 0 &&
              !p.leq[p.mul[s][t]][p.mul[u][v]]) {
            return false;
          }
          if (p.mul[u][t] >= 0 && p.mul[s][v] < 0) {
            return false;
          }
        }
      }
    }
  }
  return true;
}

OrderedAlgebra chain_zero() {
  return parse_algebra(
      "elements 0 a\norder 0<=a\n"
      "prod 0 0 = 0\nprod 0 a = 0\nprod a 0 = 0\nprod a a = a\nzero 0\n");
}

OrderedAlgebra trivial() {
  return OrderedAlgebra({"e"}, {0}, {1}, Index{0});
}

bool member(const OrderedAlgebra& a, AlgebraClass c) {
  return check_class(a, c).ok();
}

// Plain brute force: associative tables of size n up to relabelling, and up
// to relabelling plus transposition.
std::pair<std::size_t, std::size_t> semigroup_counts(std::size_t n) {
  std::size_t const cells = n * n;
  std::size_t total = 1;
  for (std::size_t i = 0; i < cells; ++i) {
    total *= n;
  }
  std::set<std::vector<int>> iso;
  std::set<std::vector<int>> anti;
  std::vector<int> t(cells);
  for (std::size_t code = 0; code < total; ++code) {
    auto c = code;
    for (auto& v : t) {
      v = int(c % n);
      c /= n;
    }
    bool assoc = true;
    for (std::size_t x = 0; x < n && assoc; ++x) {
      for (std::size_t y = 0; y < n && assoc; ++y) {
        for (std::size_t z = 0; z < n && assoc; ++z) {
          assoc = t[std::size_t(t[x * n + y]) * n + z] ==
                  t[x * n + std::size_t(t[y * n + z])];
        }
      }
    }
    if (!assoc) {
      continue;
    }
    std::vector<int> best;
    std::vector<int> best_anti;
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::vector<int> img(cells);
      std::vector<int> img_t(cells);
      for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
          img[perm[x] * n + perm[y]] = int(perm[std::size_t(t[x * n + y])]);
          img_t[perm[y] * n + perm[x]] = int(perm[std::size_t(t[x * n + y])]);
        }
      }
      if (best.empty() || img < best) {
        best = img;
      }
      auto m = std::min(img, img_t);
      if (best_anti.empty() || m < best_anti) {
        best_anti = m;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    iso.insert(best);
    anti.insert(best_anti);
  }
  return {iso.size(), anti.size()};
}

OrderedAlgebra random_algebra(std::mt19937& rng, std::size_t n, bool partial) {
  std::vector<int> table(n * n);
  std::uniform_int_distribution<int> cell(partial ? -1 : 0, int(n) - 1);
  for (auto& c : table) {
    c = cell(rng);
  }
  // Random linear extension of a random order: a < b only if a < b as
  // indices, then close transitively.
  std::vector<Mask> up(n);
  for (Index a = 0; a < n; ++a) {
    up[a] = bit(a);
  }
  std::bernoulli_distribution coin(0.3);
  for (Index a = n; a-- > 0;) {
    for (Index b = a + 1; b < n; ++b) {
      if (coin(rng)) {
        up[a] |= up[b];
      }
    }
  }
  std::vector<std::string> names;
  for (Index a = 0; a < n; ++a) {
    names.push_back("x" + std::to_string(a));
  }
  return OrderedAlgebra(names, table, up);
}

}  // namespace

TEST_CASE("one-element algebra belongs to every total class") {
  for (auto c : all_algebra_classes()) {
    auto alg = OrderedAlgebra({"0"}, {0}, {1}, Index{0}, Index{0});
    CHECK_MESSAGE(member(alg, c), to_string(c));
  }
}

TEST_CASE("two-element chain with zero") {
  auto alg = chain_zero();
  CHECK(member(alg, AlgebraClass::ordered_semigroup));
  CHECK(member(alg, AlgebraClass::zero));
  CHECK(member(alg, AlgebraClass::weak_zero));
  auto dual = check_class(alg, AlgebraClass::dual_zero);
  REQUIRE_FALSE(dual.ok());
  CHECK(dual.violations.size() == 1);
  CHECK(dual.violations[0].witness == std::vector<Index>{1});
  CHECK(to_string(dual, alg).find("(a)") != std::string::npos);
}

TEST_CASE("constructor validation") {
  CHECK_THROWS_AS(OrderedAlgebra({"a", "a"}, {0, 0, 0, 0}, {1, 2}),
                  ValidationError);
  CHECK_THROWS_AS(OrderedAlgebra({"a", "b"}, {0, 0, 0, 0}, {3, 3}),
                  ValidationError);  // antisymmetry
  CHECK_THROWS_AS(OrderedAlgebra({"a", "b"}, {0, 0, 0, 0}, {2, 2}),
                  ValidationError);  // not reflexive
  CHECK_THROWS_AS(OrderedAlgebra({"a", "b"}, {0, 5, 0, 0}, {1, 2}),
                  ValidationError);
  CHECK_THROWS_AS(OrderedAlgebra({"a", "b"}, {0, 0, 0, 0}, {1, 2}, Index{0}),
                  ValidationError);  // not an identity
  // a<=b<=c without a<=c
  CHECK_THROWS_AS(
      OrderedAlgebra({"a", "b", "c"}, std::vector<int>(9, 0), {3, 6, 4}),
      ValidationError);
}

TEST_CASE("check_class agrees with plain axiom scans") {
  std::mt19937 rng(7);
  std::size_t hits = 0;
  for (int i = 0; i < 4000; ++i) {
    auto const n = std::size_t(1 + i % 3);
    auto alg = random_algebra(rng, n, false);
    auto p = plain_of(alg);
    bool const expect = plain_ordered_semigroup(p);
    hits += expect;
    CHECK(member(alg, AlgebraClass::ordered_semigroup) == expect);
    auto part = random_algebra(rng, n, true);
    auto q = plain_of(part);
    CHECK(member(part, AlgebraClass::preconstellation) ==
          plain_preconstellation(q, false));
    CHECK(member(part, AlgebraClass::ordered_preconstellation) ==
          plain_preconstellation(q, true));
  }
  CHECK(hits > 100);
}

TEST_CASE("limit truncates violation lists") {
  auto alg = OrderedAlgebra({"a", "b", "c"}, std::vector<int>(9, -1),
                            {1, 2, 4});
  CHECK(check_class(alg, AlgebraClass::ordered_semigroup).violations.size() ==
        9);
  CHECK(check_class(alg, AlgebraClass::ordered_semigroup, 2)
            .violations.size() == 2);
}

TEST_CASE("adjoin_identity policies") {
  auto alg = chain_zero();
  auto iso = adjoin_identity(alg);
  REQUIRE(iso.identity());
  CHECK(iso.name(*iso.identity()) == "1'");
  CHECK(iso.up_set(*iso.identity()) == bit(*iso.identity()));
  CHECK(member(iso, AlgebraClass::ordered_semigroup));
  CHECK_FALSE(member(iso, AlgebraClass::zero));  // 1' is not above 0

  auto above = adjoin_identity(alg, IdentityPolicy::above_zero);
  auto const one = *above.identity();
  auto const a = *above.index_of("a");
  auto const z = *above.index_of("0");
  CHECK(above.leq(z, one));
  CHECK_FALSE(above.leq(a, one));
  CHECK_FALSE(above.leq(one, a));
  CHECK(member(above, AlgebraClass::ordered_semigroup));
  CHECK(member(above, AlgebraClass::zero));

  // 1' < 0 makes 0 an element above 1', so 0.a = 0 would need to be >= a.
  try {
    (void)adjoin_identity(alg, IdentityPolicy::below_zero);
    FAIL("expected an incompatible extension");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("(0, a)") != std::string::npos);
  }

  auto dual = parse_algebra(
      "elements 0 a\norder a<=0\n"
      "prod 0 0 = 0\nprod 0 a = 0\nprod a 0 = 0\nprod a a = a\nzero 0\n");
  auto below = adjoin_identity(dual, IdentityPolicy::below_zero);
  CHECK(below.leq(*below.identity(), *below.index_of("0")));
  CHECK_FALSE(below.leq(*below.identity(), *below.index_of("a")));
  CHECK(member(below, AlgebraClass::ordered_semigroup));
  CHECK(member(below, AlgebraClass::dual_zero));

  CHECK_THROWS_AS(adjoin_identity(iso), ValidationError);  // name taken
  auto partial = OrderedAlgebra({"a"}, {-1}, {1});
  CHECK_THROWS_AS(adjoin_identity(partial), ValidationError);
  CHECK_THROWS_AS(adjoin_identity(trivial(), IdentityPolicy::above_zero),
                  ValidationError);
}

TEST_CASE("adjoin_zero of the one-element monoid is the zero chain") {
  auto out = adjoin_zero(trivial());
  REQUIRE(out.size() == 2);
  CHECK(out.zero() == Index{1});
  CHECK(out.identity() == Index{0});
  auto expected = parse_algebra(to_string(chain_zero()) + "identity a\n");
  CHECK(canonical_form(out) == canonical_form(expected));
  CHECK(member(out, AlgebraClass::weak_zero));
}

TEST_CASE("constellation zero round trip") {
  auto p = parse_algebra(
      "elements s t\n"
      "prod s s = s\nprod s t = undef\nprod t s = undef\nprod t t = t\n");
  REQUIRE(member(p, AlgebraClass::ordered_preconstellation));
  auto p0 = adjoin_constellation_zero(p);
  auto const z = *p0.zero();
  CHECK(p0.name(z) == "0");
  CHECK_FALSE(p0.identity());
  for (Index s = 0; s < p0.size(); ++s) {
    CHECK(p0.mul(z, s) == z);
    CHECK(p0.defined(s, z) == (s == z));
    CHECK(p0.leq(z, s));
  }
  auto report = check_class(p0, AlgebraClass::preconstellation_zero);
  CHECK(report.ok());
  CHECK_FALSE(report.notes.empty());
  CHECK(remove_zero(p0) == p);

  auto stripped = remove_zero(chain_zero());
  CHECK(stripped.names() == std::vector<std::string>{"a"});
  CHECK(stripped.mul(0, 0) == Index{0});

  // A zero reached by a product of nonzero elements cannot be removed.
  auto bad = parse_algebra(
      "elements 0 a\norder 0<=a\n"
      "prod 0 0 = 0\nprod 0 a = 0\nprod a 0 = undef\nprod a a = 0\nzero 0\n");
  CHECK_THROWS_AS(remove_zero(bad), ValidationError);
  auto r = check_class(bad, AlgebraClass::preconstellation_zero);
  auto it = std::find_if(r.violations.begin(), r.violations.end(),
                         [](const AxiomViolation& v) {
                           return v.axiom.find("s.t = 0") != std::string::npos;
                         });
  REQUIRE(it != r.violations.end());
  CHECK(it->witness == std::vector<Index>{1, 1});
}

TEST_CASE("enumerate_small") {
  auto one = enumerate_small(AlgebraClass::ordered_semigroup, 1);
  CHECK(one.size() == 1);
  CHECK_THROWS_AS(enumerate_small(AlgebraClass::zero, 5), ValidationError);

  for (std::size_t n = 2; n <= 3; ++n) {
    auto [iso, anti] = semigroup_counts(n);
    std::vector<OrderedAlgebra> flat;
    for (auto& a : enumerate_small(AlgebraClass::ordered_semigroup, n)) {
      if (a.size() == n && a.order_is_equality()) {
        flat.push_back(a);
      }
    }
    CHECK(flat.size() == iso);
    std::set<std::vector<int>> up_to_anti;
    for (auto const& a : flat) {
      std::vector<int> t(a.size() * a.size());
      for (Index x = 0; x < a.size(); ++x) {
        for (Index y = 0; y < a.size(); ++y) {
          t[y * a.size() + x] = a.cell(x, y);
        }
      }
      auto transposed = OrderedAlgebra(a.names(), t, a.up_sets());
      up_to_anti.insert(
          std::min(canonical_form(a), canonical_form(transposed)));
    }
    CHECK(up_to_anti.size() == anti);
  }
  // Known small-semigroup counts.
  CHECK(semigroup_counts(2) == std::pair<std::size_t, std::size_t>{5, 4});
  CHECK(semigroup_counts(3) == std::pair<std::size_t, std::size_t>{24, 18});
}

TEST_CASE("enumerated algebras are members, distinct, and deterministic") {
  for (auto c : all_algebra_classes()) {
    auto const bound = c == AlgebraClass::idempotent_semiring ? 4 : 3;
    auto algs = enumerate_small(c, std::size_t(bound));
    CHECK_MESSAGE(!algs.empty(), to_string(c));
    std::set<std::vector<int>> seen;
    std::size_t last = 0;
    for (auto const& a : algs) {
      CHECK(a.size() >= last);
      last = a.size();
      CHECK_MESSAGE(member(a, c), to_string(c) << "\n" << to_string(a));
      CHECK(seen.insert(canonical_form(a)).second);
      if (a.zero()) {
        CHECK(a.name(*a.zero()) == "0");
      }
    }
    CHECK(enumerate_small(c, std::size_t(bound)) == algs);
  }
}

TEST_CASE("adjoined structures pass their target classes") {
  for (auto const& a : enumerate_small(AlgebraClass::ordered_semigroup, 3)) {
    auto with_one = adjoin_identity(a);
    CHECK(member(with_one, AlgebraClass::ordered_semigroup));
    auto with_zero = adjoin_zero(a);
    CHECK(member(with_zero, AlgebraClass::weak_zero));
    CHECK(member(with_zero, AlgebraClass::zero));
  }
  for (auto const& a : enumerate_small(AlgebraClass::zero, 3)) {
    auto b = adjoin_identity(a, IdentityPolicy::above_zero);
    CHECK(member(b, AlgebraClass::zero));
  }
  for (auto const& a : enumerate_small(AlgebraClass::dual_zero, 3)) {
    auto b = adjoin_identity(a, IdentityPolicy::below_zero);
    CHECK(member(b, AlgebraClass::dual_zero));
  }
  for (auto const& a :
       enumerate_small(AlgebraClass::ordered_preconstellation, 3)) {
    CHECK(member(adjoin_constellation_zero(a),
                 AlgebraClass::preconstellation_zero));
  }
}

namespace {

std::optional<Relation> angelic(const Relation& s, const Relation& t) {
  return compose_angelic(s, t);
}
std::optional<Relation> demonic(const Relation& s, const Relation& t) {
  return compose_demonic(s, t);
}
bool inclusion(const Relation& s, const Relation& t) { return subset(s, t); }

}  // namespace

TEST_CASE("concrete relation algebras on two points") {
  auto X = StateSpace::numbered(2);
  auto rels = all_relations(X);
  REQUIRE(rels.size() == 16);

  auto rel_angelic = tabulate_relations(rels, angelic, inclusion,
                                        diagonal(X), empty_relation(X));
  CHECK(rel_angelic.name(0) == "r0");
  CHECK(member(rel_angelic, AlgebraClass::ordered_semigroup));
  CHECK(member(rel_angelic, AlgebraClass::zero));
  CHECK(member(rel_angelic, AlgebraClass::idempotent_semiring));

  auto rel_demonic =
      tabulate_relations(rels, demonic, refines_demonic, diagonal(X),
                         empty_relation(X));
  CHECK(member(rel_demonic, AlgebraClass::ordered_semigroup));
  CHECK(member(rel_demonic, AlgebraClass::dual_zero));
  CHECK_FALSE(member(rel_demonic, AlgebraClass::zero));

  auto rel_dot = tabulate_relations(rels, product_constellation, inclusion,
                                    std::nullopt, empty_relation(X));
  CHECK(rel_dot.is_partial());
  CHECK(member(rel_dot, AlgebraClass::ordered_preconstellation));
  CHECK(member(rel_dot, AlgebraClass::preconstellation_zero));
  CHECK_FALSE(member(rel_dot, AlgebraClass::ordered_semigroup));

  auto totals = total_relations(X);
  auto t_alg = tabulate_relations(totals, angelic, inclusion, diagonal(X),
                                  full(X));
  CHECK(member(t_alg, AlgebraClass::dual_zero));

  auto X0 = extend_with_fail(X);
  auto programs = ltrel0_relations(X0);
  auto bottom = abort_program(X0).rel();
  auto l0 = tabulate_relations(programs, angelic, inclusion, std::nullopt,
                               bottom);
  CHECK(member(l0, AlgebraClass::ordered_semigroup));
  CHECK(member(l0, AlgebraClass::weak_zero));
  auto zero_report = check_class(l0, AlgebraClass::zero);
  CHECK_FALSE(zero_report.ok());

  // Closure is enforced.
  std::vector<Relation> open{diagonal(X), full(X), empty_relation(X)};
  open.pop_back();
  open.push_back(Relation(X, {{0, 1}}));
  CHECK_THROWS_AS(tabulate_relations(open, angelic, inclusion),
                  ValidationError);
}

TEST_CASE("algebra text format") {
  auto alg = chain_zero();
  CHECK(alg.names() == std::vector<std::string>{"0", "a"});
  CHECK(alg.zero() == Index{0});
  CHECK(parse_algebra(to_string(alg)) == alg);

  auto with_comments = parse_algebra(
      "# a comment\nelements x   # trailing\n\nprod x x = undef\n");
  CHECK(with_comments.is_partial());
  CHECK(parse_algebra(to_string(with_comments)) == with_comments);

  auto offset_of = [](std::string_view text) -> std::size_t {
    try {
      (void)parse_algebra(text);
    } catch (const ParseError& e) {
      return e.offset();
    }
    return std::string_view::npos;
  };
  CHECK(offset_of("elements a\nprod a b = a\n") == 18);
  CHECK(offset_of("elements a\nprod a a = a\nprod a a = a\n") == 29);
  CHECK(offset_of("elements a a\n") == 11);
  CHECK(offset_of("prod a a = a\n") == 0);
  CHECK(offset_of("elements a\nfrob a\n") == 11);
  CHECK(offset_of("elements a b\nprod a a = a\n") != std::string_view::npos);
  CHECK_THROWS_AS(parse_algebra("elements a b c\norder a<=b b<=c\n"
                                "prod a a = a\nprod a b = a\nprod a c = a\n"
                                "prod b a = a\nprod b b = a\nprod b c = a\n"
                                "prod c a = a\nprod c b = a\nprod c c = a\n"),
                  ValidationError);
}

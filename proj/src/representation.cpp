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

#include "relic/representation.hpp"

#include <algorithm>

#include "relic/error.hpp"
#include "relic/program.hpp"
#include "relic/relation_io.hpp"

namespace relic {

std::string_view to_string(Symbol s) {
  switch (s) {
    case Symbol::compose_angelic: return ";";
    case Symbol::compose_demonic: return "*";
    case Symbol::constellation: return ".";
    case Symbol::union_join: return "union";
    case Symbol::demonic_join: return "demonic join";
    case Symbol::inclusion: return "inclusion";
    case Symbol::refinement: return "refinement";
    case Symbol::identity: return "1'";
    case Symbol::zero_empty: return "0 as empty";
    case Symbol::zero_full: return "0 as full";
    case Symbol::zero_abort: return "0 as abort";
  }
  return "?";
}

namespace {

void require(const OrderedAlgebra& alg, AlgebraClass tag) {
  auto report = check_class(alg, tag, 1);
  if (!report.ok()) {
    throw ValidationError("not a " + std::string(to_string(tag)) + ": " +
                          to_string(report, alg));
  }
}

// A carrier listing `points` (indices into `ext`) by name, optionally with
// the last point as the fail element.
SpacePtr space_of(const OrderedAlgebra& ext, const std::vector<Index>& points,
                  bool last_is_fail) {
  std::vector<std::string> names;
  for (auto p : points) {
    names.push_back(ext.name(p));
  }
  if (last_is_fail) {
    names.back() = std::string(kFailName);
    return StateSpace::make(std::move(names), points.size() - 1);
  }
  return StateSpace::make(std::move(names));
}

// {(x,y) : x.s defined, y <= x.s} over `points`.
Relation rho(const OrderedAlgebra& ext, const std::vector<Index>& points,
             const SpacePtr& base, Index s) {
  std::vector<Mask> rows(points.size(), 0);
  for (Index i = 0; i < points.size(); ++i) {
    auto const c = ext.cell(points[i], s);
    if (c < 0) {
      continue;
    }
    for (Index j = 0; j < points.size(); ++j) {
      if (ext.leq(points[j], Index(c))) {
        rows[i] |= bit(j);
      }
    }
  }
  return Relation(base, std::move(rows));
}

std::vector<Index> all_points(std::size_t n) {
  std::vector<Index> out(n);
  for (Index a = 0; a < n; ++a) {
    out[a] = a;
  }
  return out;
}

// Points of the extension with the zero moved to the end.
std::vector<Index> zero_last(const OrderedAlgebra& ext) {
  std::vector<Index> out;
  for (Index a = 0; a < ext.size(); ++a) {
    if (a != *ext.zero()) {
      out.push_back(a);
    }
  }
  out.push_back(*ext.zero());
  return out;
}

[[noreturn]] void broken(const std::string& what) {
  throw ConsistencyError("representation postcondition failed: " + what);
}

// Images over A^{1'} with the zero as fail element; checks the Ltrel0
// postconditions shared by the zero constructions.
Representation zero_based(const OrderedAlgebra& alg, IdentityPolicy policy) {
  auto ext = adjoin_identity(alg, policy);
  auto points = zero_last(ext);
  auto base = space_of(ext, points, true);
  Representation rep{alg, base, {}, {Symbol::compose_angelic,
                                     Symbol::inclusion, Symbol::zero_abort}};
  for (Index s = 0; s < alg.size(); ++s) {
    rep.images.push_back(rho(ext, points, base, s));
    if (!is_in_ltrel0(rep.images.back())) {
      broken("image of " + alg.name(s) + " is not in Ltrel0");
    }
  }
  if (rep.images[*alg.zero()] != abort_program(base).rel()) {
    broken("the zero is not represented by abort");
  }
  return rep;
}

}  // namespace

Representation zareckii(const OrderedAlgebra& alg) {
  require(alg, AlgebraClass::ordered_semigroup);
  auto ext = alg.identity() ? alg : adjoin_identity(alg);
  auto points = all_points(ext.size());
  auto base = space_of(ext, points, false);
  Representation rep{alg, base, {},
                     {Symbol::compose_angelic, Symbol::inclusion}};
  for (Index a = 0; a < alg.size(); ++a) {
    rep.images.push_back(rho(ext, points, base, a));
    if (!is_left_total(rep.images.back())) {
      broken("image of " + alg.name(a) + " is not left total");
    }
  }
  return rep;
}

Representation represent_weak_zero(const OrderedAlgebra& alg) {
  require(alg, AlgebraClass::weak_zero);
  return zero_based(alg, IdentityPolicy::isolated);
}

Representation represent_zero_angelic(const OrderedAlgebra& alg) {
  require(alg, AlgebraClass::zero);
  auto rep = zero_based(alg, IdentityPolicy::above_zero);
  auto const angelic_base = strip_fail(rep.base);
  for (auto& r : rep.images) {
    auto a = restrict_angelic(ProgramRelation(r));
    r = Relation(angelic_base, a.rows());
  }
  rep.base = angelic_base;
  rep.signature = {Symbol::compose_angelic, Symbol::inclusion,
                   Symbol::zero_empty};
  if (!rep.images[*alg.zero()].empty()) {
    broken("the zero is not represented by the empty relation");
  }
  return rep;
}

Representation represent_dual_zero(const OrderedAlgebra& alg,
                                   DualZeroMode mode) {
  require(alg, AlgebraClass::dual_zero);
  auto ext = adjoin_identity(alg, IdentityPolicy::below_zero);
  auto points = zero_last(ext);
  auto base = space_of(ext, points, true);
  Representation rep{
      alg, base, {}, {Symbol::compose_angelic, Symbol::inclusion,
                      Symbol::zero_full}};
  for (Index s = 0; s < alg.size(); ++s) {
    rep.images.push_back(rho(ext, points, base, s));
    if (!is_total(rep.images.back())) {
      broken("image of " + alg.name(s) + " is not total");
    }
  }
  if (rep.images[*alg.zero()] != full(base)) {
    broken("the zero is not represented by the full relation");
  }
  if (mode == DualZeroMode::total_angelic) {
    return rep;
  }
  for (Index s = 0; s < alg.size(); ++s) {
    auto pre = psi2_inverse(rep.images[s]);
    if (!pre) {
      broken("image of " + alg.name(s) + " is outside the range of psi2");
    }
    rep.images[s] = std::move(*pre);
  }
  rep.base = rep.images.front().space_ptr();
  rep.signature = {Symbol::compose_demonic, Symbol::refinement,
                   Symbol::zero_empty};
  if (!rep.images[*alg.zero()].empty()) {
    broken("the zero is not represented by the empty relation");
  }
  return rep;
}

Representation represent_preconstellation(const OrderedAlgebra& alg) {
  if (alg.zero()) {
    require(alg, AlgebraClass::preconstellation_zero);
  } else {
    require(alg, AlgebraClass::ordered_preconstellation);
  }
  if (alg.index_of(kBasePointName)) {
    throw ValidationError("element name 'e' is reserved for the base point");
  }
  std::optional<OrderedAlgebra> rest;
  if (!alg.zero()) {
    rest = alg;
  } else if (alg.size() > 1) {
    rest = remove_zero(alg);
  }
  std::vector<std::string> names;
  if (rest) {
    names = rest->names();
  }
  names.emplace_back(kBasePointName);
  auto base = StateSpace::make(names);
  auto const e = names.size() - 1;
  // Source index -> index in `rest`.
  auto inner = [&](Index a) {
    return alg.zero() && a > *alg.zero() ? a - 1 : a;
  };
  Representation rep{alg, base, {},
                     {Symbol::constellation, Symbol::inclusion}};
  if (alg.zero()) {
    rep.signature.push_back(Symbol::zero_empty);
  }
  for (Index a = 0; a < alg.size(); ++a) {
    if (alg.zero() == a) {
      rep.images.push_back(empty_relation(base));
      continue;
    }
    auto const p = inner(a);
    std::vector<Mask> rows(names.size(), 0);
    for (Index x = 0; x < e; ++x) {
      auto const c = rest->cell(x, p);
      if (c >= 0) {
        rows[x] = rest->down_set(Index(c));
      }
    }
    rows[e] = rest->down_set(p);
    rep.images.emplace_back(base, std::move(rows));
  }
  return rep;
}

namespace {

std::optional<Index> join_in(const OrderedAlgebra& alg, Index a, Index b) {
  auto const upper = alg.up_set(a) & alg.up_set(b);
  for (Index c = 0; c < alg.size(); ++c) {
    if (((upper >> c) & 1U) && (alg.up_set(c) & upper) == upper) {
      return c;
    }
  }
  return std::nullopt;
}

}  // namespace

EmbeddingReport verify_embedding(const Representation& rep) {
  EmbeddingReport out;
  auto const& alg = rep.source;
  auto const n = alg.size();
  auto add = [&](std::string property, std::vector<Index> witness) {
    out.violations.push_back({std::move(property), std::move(witness)});
  };
  if (rep.images.size() != n) {
    add("one image per element", {});
    return out;
  }
  for (auto const& r : rep.images) {
    if (!same_space(r.space_ptr(), rep.base)) {
      add("images live on the base", {});
      return out;
    }
  }
  for (Index a = 0; a < n; ++a) {
    for (Index b = a + 1; b < n; ++b) {
      if (rep.images[a] == rep.images[b]) {
        add("injective", {a, b});
      }
    }
  }
  auto const& img = rep.images;
  for (auto sym : rep.signature) {
    auto const name = std::string(to_string(sym));
    switch (sym) {
      case Symbol::compose_angelic:
      case Symbol::compose_demonic:
        for (Index a = 0; a < n; ++a) {
          for (Index b = 0; b < n; ++b) {
            auto const ab = alg.mul(a, b);
            if (!ab) {
              add(name + " needs a total product", {a, b});
              continue;
            }
            auto const got = sym == Symbol::compose_angelic
                                 ? compose_angelic(img[a], img[b])
                                 : compose_demonic(img[a], img[b]);
            if (got != img[*ab]) {
              add(name + " preserved", {a, b});
            }
          }
        }
        break;
      case Symbol::constellation:
        for (Index a = 0; a < n; ++a) {
          for (Index b = 0; b < n; ++b) {
            auto const ab = alg.mul(a, b);
            auto const got = product_constellation(img[a], img[b]);
            if (ab.has_value() != got.has_value()) {
              add(". defined exactly when the product is", {a, b});
            } else if (ab && *got != img[*ab]) {
              add(". preserved", {a, b});
            }
          }
        }
        break;
      case Symbol::union_join:
      case Symbol::demonic_join:
        for (Index a = 0; a < n; ++a) {
          for (Index b = 0; b < n; ++b) {
            auto const j = join_in(alg, a, b);
            if (!j) {
              add(name + " needs joins", {a, b});
              continue;
            }
            auto const got = sym == Symbol::union_join
                                 ? unite(img[a], img[b])
                                 : join_demonic(img[a], img[b]);
            if (got != img[*j]) {
              add(name + " preserved", {a, b});
            }
          }
        }
        break;
      case Symbol::inclusion:
      case Symbol::refinement:
        for (Index a = 0; a < n; ++a) {
          for (Index b = 0; b < n; ++b) {
            bool const rel = sym == Symbol::inclusion
                                 ? subset(img[a], img[b])
                                 : refines_demonic(img[a], img[b]);
            if (alg.leq(a, b) && !rel) {
              add(name + " preserves the order", {a, b});
            } else if (!alg.leq(a, b) && rel) {
              add(name + " reflects the order", {a, b});
            }
          }
        }
        break;
      case Symbol::identity:
        if (!alg.identity()) {
          add("identity declared", {});
        } else if (img[*alg.identity()] != diagonal(rep.base)) {
          add("identity is the diagonal", {*alg.identity()});
        }
        break;
      case Symbol::zero_empty:
      case Symbol::zero_full:
      case Symbol::zero_abort: {
        if (!alg.zero()) {
          add("zero declared", {});
          break;
        }
        auto const z = *alg.zero();
        bool ok = false;
        if (sym == Symbol::zero_empty) {
          ok = img[z].empty();
        } else if (sym == Symbol::zero_full) {
          ok = img[z] == full(rep.base);
        } else {
          ok = rep.base->has_fail() &&
               img[z] == abort_program(rep.base).rel();
        }
        if (!ok) {
          add(name, {z});
        }
        break;
      }
    }
  }
  return out;
}

std::string to_string(const EmbeddingReport& report,
                      const OrderedAlgebra& source) {
  if (report.ok()) {
    return "embedding: ok";
  }
  std::string out =
      "embedding: " + std::to_string(report.violations.size()) +
      " violation(s)";
  for (auto const& v : report.violations) {
    out += "\n  " + v.property;
    if (!v.witness.empty()) {
      out += " at (";
      for (std::size_t i = 0; i < v.witness.size(); ++i) {
        out += (i ? ", " : "") + source.name(v.witness[i]);
      }
      out += ")";
    }
  }
  return out;
}

std::string to_string(const Representation& rep) {
  std::string out = space_decl(*rep.base) + "\n";
  for (Index a = 0; a < rep.images.size(); ++a) {
    out += rep.source.name(a) + " = " + to_string(rep.images[a]) + "\n";
  }
  out += "signature:";
  for (auto s : rep.signature) {
    out += " [" + std::string(to_string(s)) + "]";
  }
  return out + "\n";
}

namespace {

constexpr std::pair<Construction, std::string_view> kConstructionNames[] = {
    {Construction::zareckii, "zareckii"},
    {Construction::weak_zero, "weak-zero"},
    {Construction::zero, "zero"},
    {Construction::dual_zero_total, "dual-zero-total"},
    {Construction::dual_zero_demonic, "dual-zero-demonic"},
    {Construction::preconstellation, "preconstellation"},
};

}  // namespace

std::string_view to_string(Construction c) {
  for (auto const& [k, n] : kConstructionNames) {
    if (k == c) {
      return n;
    }
  }
  return "?";
}

std::optional<Construction> construction_from(std::string_view name) {
  for (auto const& [k, n] : kConstructionNames) {
    if (n == name) {
      return k;
    }
  }
  return std::nullopt;
}

Representation represent(const OrderedAlgebra& alg, Construction c) {
  switch (c) {
    case Construction::zareckii:
      return zareckii(alg);
    case Construction::weak_zero:
      return represent_weak_zero(alg);
    case Construction::zero:
      return represent_zero_angelic(alg);
    case Construction::dual_zero_total:
      return represent_dual_zero(alg, DualZeroMode::total_angelic);
    case Construction::dual_zero_demonic:
      return represent_dual_zero(alg, DualZeroMode::demonic);
    case Construction::preconstellation:
      return represent_preconstellation(alg);
  }
  throw ValidationError("unknown construction");
}

}  // namespace relic

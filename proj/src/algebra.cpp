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

#include "relic/algebra.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "relic/detail/scanner.hpp"
#include "relic/error.hpp"
#include "relic/relation_io.hpp"

namespace relic {

namespace {

constexpr int kUnknown = -2;

// Read-only view shared by check_class and the enumerator, which calls the
// same checks on partially filled tables (kUnknown cells are skipped).
struct Frame {
  std::size_t n;
  const int* table;
  const Mask* up;
  std::optional<Index> zero;

  int at(Index a, Index b) const { return table[a * n + b]; }
  bool leq(Index a, Index b) const { return (up[a] >> b) & 1U; }
};

// Returns false once enough violations have been gathered.
struct Sink {
  std::vector<AxiomViolation>* out = nullptr;  // null: stop at the first
  std::size_t limit = SIZE_MAX;
  bool failed = false;

  bool report(const char* axiom, std::initializer_list<Index> witness) {
    failed = true;
    if (out == nullptr) {
      return false;
    }
    out->push_back({axiom, std::vector<Index>(witness)});
    return out->size() < limit;
  }
};

constexpr const char* kTotal = "product is total";
constexpr const char* kAssoc = "associativity (x.y).z = x.(y.z)";
constexpr const char* kLeftMono = "left monotonicity x<=y => z.x <= z.y";
constexpr const char* kRightMono = "right monotonicity x<=y => x.z <= y.z";
constexpr const char* kZeroDeclared = "a zero element is declared";
constexpr const char* kZeroAbsorbs = "zero is absorbing 0.x = x.0 = 0";
constexpr const char* kWeakZero = "nothing strictly below zero: x<=0 => x=0";
constexpr const char* kZeroLeast = "zero is least: 0<=x";
constexpr const char* kZeroGreatest = "zero is greatest: x<=0";
constexpr const char* kLawI = "I: x.(y.z) exists => (x.y).z exists and equals it";
constexpr const char* kLawII = "II: x.y and y.z exist => x.(y.z) exists";
constexpr const char* kLawIII = "III: s<=u, t<=v => s.t <= u.v when both exist";
constexpr const char* kLawIV = "IV: s<=u, t<=v, u.t exists => s.v exists";
constexpr const char* kZeroLeft = "0.s = 0";
constexpr const char* kZeroProduct = "s.t = 0 => s = 0";
constexpr const char* kZeroRight = "s.0 exists => s = 0";
constexpr const char* kJoin = "every pair has a join";
constexpr const char* kDistrib = "distributivity (a+b)(c+d) = ac+ad+bc+bd";

bool check_total(const Frame& f, Sink& sink) {
  for (Index a = 0; a < f.n; ++a) {
    for (Index b = 0; b < f.n; ++b) {
      if (f.at(a, b) == OrderedAlgebra::kUndefined &&
          !sink.report(kTotal, {a, b})) {
        return false;
      }
    }
  }
  return true;
}

bool check_assoc(const Frame& f, Sink& sink) {
  for (Index x = 0; x < f.n; ++x) {
    for (Index y = 0; y < f.n; ++y) {
      auto const xy = f.at(x, y);
      if (xy < 0) {
        continue;
      }
      for (Index z = 0; z < f.n; ++z) {
        auto const yz = f.at(y, z);
        if (yz < 0) {
          continue;
        }
        auto const l = f.at(Index(xy), z);
        auto const r = f.at(x, Index(yz));
        if (l >= 0 && r >= 0 && l != r && !sink.report(kAssoc, {x, y, z})) {
          return false;
        }
      }
    }
  }
  return true;
}

bool check_monotone(const Frame& f, Sink& sink) {
  for (Index x = 0; x < f.n; ++x) {
    for (Index y = 0; y < f.n; ++y) {
      if (x == y || !f.leq(x, y)) {
        continue;
      }
      for (Index z = 0; z < f.n; ++z) {
        auto const zx = f.at(z, x);
        auto const zy = f.at(z, y);
        if (zx >= 0 && zy >= 0 && !f.leq(Index(zx), Index(zy)) &&
            !sink.report(kLeftMono, {x, y, z})) {
          return false;
        }
        auto const xz = f.at(x, z);
        auto const yz = f.at(y, z);
        if (xz >= 0 && yz >= 0 && !f.leq(Index(xz), Index(yz)) &&
            !sink.report(kRightMono, {x, y, z})) {
          return false;
        }
      }
    }
  }
  return true;
}

bool check_semigroup_zero(const Frame& f, Sink& sink) {
  if (!f.zero) {
    return sink.report(kZeroDeclared, {});
  }
  auto const z = *f.zero;
  for (Index x = 0; x < f.n; ++x) {
    auto const l = f.at(z, x);
    auto const r = f.at(x, z);
    if (((l != kUnknown && l != int(z)) || (r != kUnknown && r != int(z))) &&
        !sink.report(kZeroAbsorbs, {x})) {
      return false;
    }
  }
  return true;
}

template <typename Pred>
bool check_zero_order(const Frame& f, Sink& sink, const char* axiom,
                      Pred pred) {
  if (!f.zero) {
    return true;
  }
  for (Index x = 0; x < f.n; ++x) {
    if (!pred(x, *f.zero) && !sink.report(axiom, {x})) {
      return false;
    }
  }
  return true;
}

bool check_law_i(const Frame& f, Sink& sink) {
  for (Index x = 0; x < f.n; ++x) {
    for (Index y = 0; y < f.n; ++y) {
      for (Index z = 0; z < f.n; ++z) {
        auto const yz = f.at(y, z);
        if (yz < 0) {
          continue;
        }
        auto const r = f.at(x, Index(yz));
        if (r < 0) {
          continue;
        }
        auto const xy = f.at(x, y);
        if (xy == kUnknown) {
          continue;
        }
        int l = OrderedAlgebra::kUndefined;
        if (xy >= 0) {
          l = f.at(Index(xy), z);
          if (l == kUnknown) {
            continue;
          }
        }
        if (l != r && !sink.report(kLawI, {x, y, z})) {
          return false;
        }
      }
    }
  }
  return true;
}

bool check_law_ii(const Frame& f, Sink& sink) {
  for (Index x = 0; x < f.n; ++x) {
    for (Index y = 0; y < f.n; ++y) {
      if (f.at(x, y) < 0) {
        continue;
      }
      for (Index z = 0; z < f.n; ++z) {
        auto const yz = f.at(y, z);
        if (yz < 0) {
          continue;
        }
        if (f.at(x, Index(yz)) == OrderedAlgebra::kUndefined &&
            !sink.report(kLawII, {x, y, z})) {
          return false;
        }
      }
    }
  }
  return true;
}

bool check_laws_iii_iv(const Frame& f, Sink& sink) {
  for (Index s = 0; s < f.n; ++s) {
    for (Index u = 0; u < f.n; ++u) {
      if (!f.leq(s, u)) {
        continue;
      }
      for (Index t = 0; t < f.n; ++t) {
        for (Index v = 0; v < f.n; ++v) {
          if (!f.leq(t, v)) {
            continue;
          }
          auto const st = f.at(s, t);
          auto const uv = f.at(u, v);
          if (st >= 0 && uv >= 0 && !f.leq(Index(st), Index(uv)) &&
              !sink.report(kLawIII, {s, t, u, v})) {
            return false;
          }
          if (f.at(u, t) >= 0 && f.at(s, v) == OrderedAlgebra::kUndefined &&
              !sink.report(kLawIV, {s, t, u, v})) {
            return false;
          }
        }
      }
    }
  }
  return true;
}

bool check_constellation_zero(const Frame& f, Sink& sink) {
  if (!f.zero) {
    return sink.report(kZeroDeclared, {});
  }
  auto const z = *f.zero;
  for (Index s = 0; s < f.n; ++s) {
    auto const zs = f.at(z, s);
    if (zs != kUnknown && zs != int(z) && !sink.report(kZeroLeft, {s})) {
      return false;
    }
    if (s != z && f.at(s, z) >= 0 && !sink.report(kZeroRight, {s})) {
      return false;
    }
    for (Index t = 0; t < f.n; ++t) {
      if (s != z && f.at(s, t) == int(z) &&
          !sink.report(kZeroProduct, {s, t})) {
        return false;
      }
    }
  }
  return true;
}

std::optional<Index> join_of(const Frame& f, Index a, Index b) {
  auto const upper = f.up[a] & f.up[b];
  for (Index c = 0; c < f.n; ++c) {
    if (((upper >> c) & 1U) && (f.up[c] & upper) == upper) {
      return c;
    }
  }
  return std::nullopt;
}

bool check_semiring(const Frame& f, Sink& sink) {
  std::vector<int> join(f.n * f.n, -1);
  bool all_joins = true;
  for (Index a = 0; a < f.n; ++a) {
    for (Index b = 0; b < f.n; ++b) {
      auto j = join_of(f, a, b);
      if (!j) {
        all_joins = false;
        if (!sink.report(kJoin, {a, b})) {
          return false;
        }
        continue;
      }
      join[a * f.n + b] = int(*j);
    }
  }
  if (!all_joins) {
    return true;
  }
  auto add = [&](int a, int b) {
    return (a < 0 || b < 0) ? kUnknown : join[Index(a) * f.n + Index(b)];
  };
  auto mul = [&](int a, int b) {
    return (a < 0 || b < 0) ? kUnknown : f.at(Index(a), Index(b));
  };
  for (Index a = 0; a < f.n; ++a) {
    for (Index b = 0; b < f.n; ++b) {
      for (Index c = 0; c < f.n; ++c) {
        for (Index d = 0; d < f.n; ++d) {
          auto const lhs = mul(add(int(a), int(b)), add(int(c), int(d)));
          auto const rhs =
              add(add(add(mul(int(a), int(c)), mul(int(a), int(d))),
                      mul(int(b), int(c))),
                  mul(int(b), int(d)));
          if (lhs >= 0 && rhs >= 0 && lhs != rhs &&
              !sink.report(kDistrib, {a, b, c, d})) {
            return false;
          }
        }
      }
    }
  }
  return true;
}

// Runs every axiom of the class; stops early once the sink is full.
void run_checks(const Frame& f, AlgebraClass tag, Sink& sink) {
  auto semigroup = [&] {
    return check_total(f, sink) && check_assoc(f, sink) &&
           check_monotone(f, sink);
  };
  auto preconstellation = [&] {
    return check_law_i(f, sink) && check_law_ii(f, sink);
  };
  switch (tag) {
    case AlgebraClass::ordered_semigroup:
      semigroup();
      return;
    case AlgebraClass::weak_zero:
      semigroup() && check_semigroup_zero(f, sink) &&
          check_zero_order(f, sink, kWeakZero, [&](Index x, Index z) {
            return x == z || !f.leq(x, z);
          });
      return;
    case AlgebraClass::zero:
      semigroup() && check_semigroup_zero(f, sink) &&
          check_zero_order(f, sink, kZeroLeast,
                           [&](Index x, Index z) { return f.leq(z, x); });
      return;
    case AlgebraClass::dual_zero:
      semigroup() && check_semigroup_zero(f, sink) &&
          check_zero_order(f, sink, kZeroGreatest,
                           [&](Index x, Index z) { return f.leq(x, z); });
      return;
    case AlgebraClass::preconstellation:
      preconstellation();
      return;
    case AlgebraClass::ordered_preconstellation:
      preconstellation() && check_laws_iii_iv(f, sink);
      return;
    case AlgebraClass::preconstellation_zero:
      preconstellation() && check_laws_iii_iv(f, sink) &&
          check_constellation_zero(f, sink) &&
          check_zero_order(f, sink, kZeroLeast,
                           [&](Index x, Index z) { return f.leq(z, x); });
      return;
    case AlgebraClass::idempotent_semiring:
      check_total(f, sink) && check_assoc(f, sink) && check_semiring(f, sink);
      return;
  }
}

Frame frame_of(const OrderedAlgebra& alg) {
  return Frame{alg.size(), alg.table().data(), alg.up_sets().data(),
               alg.zero()};
}

}  // namespace

OrderedAlgebra::OrderedAlgebra(std::vector<std::string> names,
                               std::vector<int> table, std::vector<Mask> up,
                               std::optional<Index> identity,
                               std::optional<Index> zero)
    : names_(std::move(names)),
      table_(std::move(table)),
      up_(std::move(up)),
      identity_(identity),
      zero_(zero) {
  auto const n = names_.size();
  if (n == 0 || n > kMaxAlgebraSize) {
    throw ValidationError("an algebra needs between 1 and 64 elements");
  }
  std::set<std::string_view> seen;
  for (auto const& s : names_) {
    if (s.empty() || !seen.insert(s).second) {
      throw ValidationError("element names must be distinct and non-empty");
    }
  }
  if (table_.size() != n * n || up_.size() != n) {
    throw ValidationError("product table or order has the wrong dimensions");
  }
  for (auto c : table_) {
    if (c < kUndefined || c >= int(n)) {
      throw ValidationError("product table entry out of range");
    }
  }
  auto const full = low_mask(n);
  for (Index a = 0; a < n; ++a) {
    if ((up_[a] & ~full) != 0 || !leq(a, a)) {
      throw ValidationError("order is not reflexive on " + names_[a]);
    }
    for (Index b = 0; b < n; ++b) {
      if (a != b && leq(a, b) && leq(b, a)) {
        throw ValidationError("order is not antisymmetric on " + names_[a] +
                              ", " + names_[b]);
      }
      if (leq(a, b) && (up_[b] & ~up_[a]) != 0) {
        throw ValidationError("order is not transitive through " + names_[a] +
                              " <= " + names_[b]);
      }
    }
  }
  if (zero_ && *zero_ >= n) {
    throw ValidationError("zero index out of range");
  }
  if (identity_) {
    auto const e = *identity_;
    if (e >= n) {
      throw ValidationError("identity index out of range");
    }
    for (Index a = 0; a < n; ++a) {
      if (cell(e, a) != int(a) || cell(a, e) != int(a)) {
        throw ValidationError(names_[e] + " is not an identity: fails at " +
                              names_[a]);
      }
    }
  }
}

std::optional<Index> OrderedAlgebra::index_of(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) {
    return std::nullopt;
  }
  return Index(it - names_.begin());
}

bool OrderedAlgebra::is_partial() const noexcept {
  return std::any_of(table_.begin(), table_.end(),
                     [](int c) { return c == kUndefined; });
}

Mask OrderedAlgebra::down_set(Index a) const noexcept {
  Mask out = 0;
  for (Index b = 0; b < size(); ++b) {
    if (leq(b, a)) {
      out |= bit(b);
    }
  }
  return out;
}

bool OrderedAlgebra::order_is_equality() const noexcept {
  for (Index a = 0; a < size(); ++a) {
    if (up_[a] != bit(a)) {
      return false;
    }
  }
  return true;
}

namespace {

constexpr std::pair<AlgebraClass, std::string_view> kClassNames[] = {
    {AlgebraClass::ordered_semigroup, "ordered_semigroup"},
    {AlgebraClass::weak_zero, "weak_zero"},
    {AlgebraClass::zero, "zero"},
    {AlgebraClass::dual_zero, "dual_zero"},
    {AlgebraClass::preconstellation, "preconstellation"},
    {AlgebraClass::ordered_preconstellation, "ordered_preconstellation"},
    {AlgebraClass::preconstellation_zero, "preconstellation_zero"},
    {AlgebraClass::idempotent_semiring, "idempotent_semiring"},
};

}  // namespace

std::string_view to_string(AlgebraClass c) {
  for (auto const& [k, name] : kClassNames) {
    if (k == c) {
      return name;
    }
  }
  return "?";
}

std::optional<AlgebraClass> algebra_class_from(std::string_view name) {
  for (auto const& [k, n] : kClassNames) {
    if (n == name) {
      return k;
    }
  }
  return std::nullopt;
}

const std::vector<AlgebraClass>& all_algebra_classes() {
  static const std::vector<AlgebraClass> all = [] {
    std::vector<AlgebraClass> out;
    for (auto const& [k, n] : kClassNames) {
      out.push_back(k);
    }
    return out;
  }();
  return all;
}

ClassReport check_class(const OrderedAlgebra& alg, AlgebraClass tag,
                        std::size_t limit) {
  ClassReport report{tag, {}, {}};
  Sink sink{&report.violations, std::max<std::size_t>(limit, 1)};
  run_checks(frame_of(alg), tag, sink);
  if (tag == AlgebraClass::preconstellation_zero) {
    report.notes.emplace_back(
        "\"s.t = 0 => s = 0\" is read as: if s.t is defined and equals 0 "
        "then s = 0");
  }
  if (tag == AlgebraClass::idempotent_semiring) {
    report.notes.emplace_back("addition is the join of the order");
  }
  return report;
}

std::string to_string(const ClassReport& r, const OrderedAlgebra& alg) {
  std::string out(to_string(r.tag));
  out += r.ok() ? ": member" : ": " + std::to_string(r.violations.size()) +
                                   " violation(s)";
  for (auto const& v : r.violations) {
    out += "\n  " + v.axiom + " at (";
    for (std::size_t i = 0; i < v.witness.size(); ++i) {
      out += (i ? ", " : "") + alg.name(v.witness[i]);
    }
    out += ")";
  }
  for (auto const& n : r.notes) {
    out += "\n  note: " + n;
  }
  return out;
}

namespace {

void require_fresh(const OrderedAlgebra& alg, std::string_view name) {
  if (alg.index_of(name)) {
    throw ValidationError("element name '" + std::string(name) +
                          "' is reserved for an adjoined element");
  }
}

void require_class(const OrderedAlgebra& alg, AlgebraClass tag) {
  auto report = check_class(alg, tag, 1);
  if (!report.ok()) {
    throw ValidationError("not a " + std::string(to_string(tag)) + ": " +
                          to_string(report, alg));
  }
}

// Copies `alg` into a table one element larger; the new cells are undefined
// and the new element is related only to itself.
struct Grown {
  std::vector<std::string> names;
  std::vector<int> table;
  std::vector<Mask> up;
  std::size_t n;  // new size

  explicit Grown(const OrderedAlgebra& alg, std::string_view fresh)
      : names(alg.names()), n(alg.size() + 1) {
    names.emplace_back(fresh);
    table.assign(n * n, OrderedAlgebra::kUndefined);
    for (Index a = 0; a < alg.size(); ++a) {
      for (Index b = 0; b < alg.size(); ++b) {
        table[a * n + b] = alg.cell(a, b);
      }
    }
    up = alg.up_sets();
    up.push_back(bit(n - 1));
  }

  int& at(Index a, Index b) { return table[a * n + b]; }
};

}  // namespace

OrderedAlgebra adjoin_identity(const OrderedAlgebra& alg,
                               IdentityPolicy policy) {
  require_class(alg, AlgebraClass::ordered_semigroup);
  require_fresh(alg, kIdentityName);
  Grown g(alg, kIdentityName);
  auto const e = alg.size();
  for (Index a = 0; a <= e; ++a) {
    g.at(e, a) = int(a);
    g.at(a, e) = int(a);
  }
  if (policy != IdentityPolicy::isolated) {
    if (!alg.zero()) {
      throw ValidationError("this identity policy needs a declared zero");
    }
    auto const z = *alg.zero();
    if (policy == IdentityPolicy::above_zero) {
      for (Index a = 0; a < e; ++a) {
        if (alg.leq(a, z)) {
          g.up[a] |= bit(e);
        }
      }
    } else {
      g.up[e] |= alg.up_set(z);
    }
  }
  for (Index a = 0; a < e; ++a) {
    bool const above = (g.up[e] >> a) & 1U;
    bool const below = (g.up[a] >> e) & 1U;
    if (!above && !below) {
      continue;
    }
    for (Index b = 0; b < e; ++b) {
      for (auto c : {alg.cell(a, b), alg.cell(b, a)}) {
        bool const ok = above ? alg.leq(b, Index(c)) : alg.leq(Index(c), b);
        if (!ok) {
          throw ValidationError(
              "incompatible unital extension: " + alg.name(a) +
              (above ? " >= 1' but a product with " : " <= 1' but a product with ") +
              alg.name(b) + " is " + alg.name(Index(c)) + " at (" +
              alg.name(a) + ", " + alg.name(b) + ")");
        }
      }
    }
  }
  return OrderedAlgebra(std::move(g.names), std::move(g.table),
                        std::move(g.up), e, alg.zero());
}

OrderedAlgebra adjoin_zero(const OrderedAlgebra& alg) {
  require_fresh(alg, kZeroName);
  Grown g(alg, kZeroName);
  auto const z = alg.size();
  for (Index a = 0; a <= z; ++a) {
    g.at(z, a) = int(z);
    g.at(a, z) = int(z);
  }
  g.up[z] = low_mask(g.n);
  return OrderedAlgebra(std::move(g.names), std::move(g.table),
                        std::move(g.up), alg.identity(), z);
}

OrderedAlgebra adjoin_constellation_zero(const OrderedAlgebra& alg) {
  require_fresh(alg, kZeroName);
  Grown g(alg, kZeroName);
  auto const z = alg.size();
  for (Index a = 0; a <= z; ++a) {
    g.at(z, a) = int(z);
  }
  g.up[z] = low_mask(g.n);
  return OrderedAlgebra(std::move(g.names), std::move(g.table),
                        std::move(g.up), std::nullopt, z);
}

OrderedAlgebra remove_zero(const OrderedAlgebra& alg) {
  if (!alg.zero()) {
    throw ValidationError("the algebra has no declared zero");
  }
  auto const z = *alg.zero();
  if (alg.size() == 1) {
    throw ValidationError("removing the zero would leave no elements");
  }
  std::vector<Index> keep;
  for (Index a = 0; a < alg.size(); ++a) {
    if (a != z) {
      keep.push_back(a);
    }
  }
  auto const n = keep.size();
  std::vector<std::string> names;
  std::vector<int> table(n * n);
  std::vector<Mask> up(n, 0);
  auto renumber = [&](Index a) { return a < z ? a : a - 1; };
  for (Index i = 0; i < n; ++i) {
    names.push_back(alg.name(keep[i]));
    for (Index j = 0; j < n; ++j) {
      auto const c = alg.cell(keep[i], keep[j]);
      if (c == int(z)) {
        throw ValidationError("product " + alg.name(keep[i]) + "." +
                              alg.name(keep[j]) + " is the zero");
      }
      table[i * n + j] = c < 0 ? c : int(renumber(Index(c)));
      if (alg.leq(keep[i], keep[j])) {
        up[i] |= bit(j);
      }
    }
  }
  std::optional<Index> identity;
  if (alg.identity()) {
    identity = renumber(*alg.identity());
  }
  return OrderedAlgebra(std::move(names), std::move(table), std::move(up),
                        identity);
}

OrderedAlgebra tabulate_relations(
    const std::vector<Relation>& elements,
    const std::function<std::optional<Relation>(const Relation&,
                                                const Relation&)>& op,
    const std::function<bool(const Relation&, const Relation&)>& leq,
    std::optional<Relation> identity, std::optional<Relation> zero) {
  std::map<Relation, Index> index;
  for (Index i = 0; i < elements.size(); ++i) {
    if (!index.emplace(elements[i], i).second) {
      throw ValidationError("duplicate relation in the family");
    }
  }
  auto find = [&](const Relation& r) -> Index {
    auto it = index.find(r);
    if (it == index.end()) {
      throw ValidationError("the family is not closed: " + to_string(r));
    }
    return it->second;
  };
  auto const n = elements.size();
  std::vector<std::string> names;
  std::vector<int> table(n * n);
  std::vector<Mask> up(n, 0);
  for (Index a = 0; a < n; ++a) {
    names.push_back("r" + std::to_string(a));
    for (Index b = 0; b < n; ++b) {
      auto p = op(elements[a], elements[b]);
      table[a * n + b] = p ? int(find(*p)) : OrderedAlgebra::kUndefined;
      if (leq(elements[a], elements[b])) {
        up[a] |= bit(b);
      }
    }
  }
  std::optional<Index> id;
  std::optional<Index> z;
  if (identity) {
    id = find(*identity);
  }
  if (zero) {
    z = find(*zero);
  }
  return OrderedAlgebra(std::move(names), std::move(table), std::move(up), id,
                        z);
}

// ---------------------------------------------------------------------------
// Text format

namespace {

struct AlgebraDraft {
  std::vector<std::string> names;
  std::map<std::pair<Index, Index>, int> cells;
  std::vector<std::pair<Index, Index>> order;
  std::optional<Index> identity;
  std::optional<Index> zero;
};

}  // namespace

OrderedAlgebra parse_algebra(std::string_view text) {
  AlgebraDraft d;
  bool have_elements = false;
  std::size_t line_start = 0;
  auto element = [&](detail::Scanner& in) {
    auto const at = (in.skip_ws(), in.pos());
    auto const name = in.name();
    auto it = std::find(d.names.begin(), d.names.end(), name);
    if (it == d.names.end()) {
      in.fail_at(at, "unknown element '" + std::string(name) + "'");
    }
    return Index(it - d.names.begin());
  };
  while (line_start <= text.size()) {
    auto line_end = text.find('\n', line_start);
    if (line_end == std::string_view::npos) {
      line_end = text.size();
    }
    // A scanner over the whole text, stopped at the end of this line.
    detail::Scanner in(text.substr(0, line_end), line_start);
    if (!in.at_end()) {
      auto const kw_at = in.pos();
      auto const kw = in.name();
      if (kw == "elements") {
        if (have_elements) {
          in.fail_at(kw_at, "elements declared twice");
        }
        have_elements = true;
        while (!in.at_end()) {
          auto const at = (in.skip_ws(), in.pos());
          std::string name(in.name());
          if (std::find(d.names.begin(), d.names.end(), name) !=
              d.names.end()) {
            in.fail_at(at, "duplicate element '" + name + "'");
          }
          d.names.push_back(std::move(name));
        }
      } else if (!have_elements) {
        in.fail_at(kw_at, "expected 'elements' first");
      } else if (kw == "order") {
        do {
          auto a = element(in);
          if (!in.consume("<=")) {
            in.fail("expected '<='");
          }
          auto b = element(in);
          d.order.emplace_back(a, b);
        } while (!in.at_end());
      } else if (kw == "prod") {
        auto const at = (in.skip_ws(), in.pos());
        auto a = element(in);
        auto b = element(in);
        in.expect('=');
        int value = OrderedAlgebra::kUndefined;
        if (!in.consume("undef")) {
          value = int(element(in));
        }
        if (!d.cells.emplace(std::make_pair(a, b), value).second) {
          in.fail_at(at, "duplicate product cell");
        }
      } else if (kw == "identity" || kw == "zero") {
        auto& slot = kw == "identity" ? d.identity : d.zero;
        if (slot) {
          in.fail_at(kw_at, std::string(kw) + " declared twice");
        }
        slot = element(in);
      } else {
        in.fail_at(kw_at, "unknown keyword '" + std::string(kw) + "'");
      }
      if (!in.at_end()) {
        in.fail("unexpected input");
      }
    }
    line_start = line_end + 1;
  }
  if (!have_elements) {
    throw make_parse_error("missing 'elements' line", text, text.size());
  }
  auto const n = d.names.size();
  std::vector<int> table(n * n);
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      auto it = d.cells.find({a, b});
      if (it == d.cells.end()) {
        throw make_parse_error("missing product " + d.names[a] + " " +
                                   d.names[b] + " (use 'undef' if undefined)",
                               text, text.size());
      }
      table[a * n + b] = it->second;
    }
  }
  std::vector<Mask> up(n);
  for (Index a = 0; a < n; ++a) {
    up[a] = bit(a);
  }
  for (auto [a, b] : d.order) {
    up[a] |= bit(b);
  }
  return OrderedAlgebra(std::move(d.names), std::move(table), std::move(up),
                        d.identity, d.zero);
}

std::string to_string(const OrderedAlgebra& alg) {
  std::string out = "elements";
  for (auto const& n : alg.names()) {
    out += " " + n;
  }
  out += "\n";
  std::string order;
  for (Index a = 0; a < alg.size(); ++a) {
    for (Index b = 0; b < alg.size(); ++b) {
      if (a != b && alg.leq(a, b)) {
        order += " " + alg.name(a) + "<=" + alg.name(b);
      }
    }
  }
  if (!order.empty()) {
    out += "order" + order + "\n";
  }
  for (Index a = 0; a < alg.size(); ++a) {
    for (Index b = 0; b < alg.size(); ++b) {
      auto p = alg.mul(a, b);
      out += "prod " + alg.name(a) + " " + alg.name(b) + " = " +
             (p ? alg.name(*p) : std::string("undef")) + "\n";
    }
  }
  if (alg.identity()) {
    out += "identity " + alg.name(*alg.identity()) + "\n";
  }
  if (alg.zero()) {
    out += "zero " + alg.name(*alg.zero()) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Canonical forms and enumeration

namespace {

std::vector<int> encode(const OrderedAlgebra& alg,
                        const std::vector<Index>& perm) {
  auto const n = alg.size();
  std::vector<Index> inv(n);
  for (Index a = 0; a < n; ++a) {
    inv[perm[a]] = a;
  }
  std::vector<int> out;
  out.reserve(3 + 2 * n * n);
  out.push_back(int(n));
  out.push_back(alg.identity() ? int(perm[*alg.identity()]) : -1);
  out.push_back(alg.zero() ? int(perm[*alg.zero()]) : -1);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      out.push_back(alg.leq(inv[i], inv[j]) ? 1 : 0);
    }
  }
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      auto const c = alg.cell(inv[i], inv[j]);
      out.push_back(c < 0 ? c : int(perm[Index(c)]));
    }
  }
  return out;
}

OrderedAlgebra decode(const std::vector<int>& code) {
  auto const n = Index(code[0]);
  std::optional<Index> identity;
  std::optional<Index> zero;
  if (code[1] >= 0) {
    identity = Index(code[1]);
  }
  if (code[2] >= 0) {
    zero = Index(code[2]);
  }
  std::vector<std::string> names;
  char next = 'a';
  for (Index a = 0; a < n; ++a) {
    if (zero == a) {
      names.emplace_back(kZeroName);
    } else if (identity == a) {
      names.emplace_back(kIdentityName);
    } else {
      names.emplace_back(1, next++);
    }
  }
  std::vector<Mask> up(n, 0);
  std::size_t k = 3;
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (code[k++] != 0) {
        up[i] |= bit(j);
      }
    }
  }
  std::vector<int> table(code.begin() + std::ptrdiff_t(k), code.end());
  return OrderedAlgebra(std::move(names), std::move(table), std::move(up),
                        identity, zero);
}

std::vector<std::vector<Mask>> labelled_posets(std::size_t n) {
  std::vector<std::pair<Index, Index>> offdiag;
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      if (a != b) {
        offdiag.emplace_back(a, b);
      }
    }
  }
  std::vector<std::vector<Mask>> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << offdiag.size()); ++m) {
    std::vector<Mask> up(n);
    for (Index a = 0; a < n; ++a) {
      up[a] = bit(a);
    }
    for (std::size_t i = 0; i < offdiag.size(); ++i) {
      if ((m >> i) & 1U) {
        up[offdiag[i].first] |= bit(offdiag[i].second);
      }
    }
    bool ok = true;
    for (Index a = 0; a < n && ok; ++a) {
      for (Index b = 0; b < n && ok; ++b) {
        if (a != b && ((up[a] >> b) & 1U) && ((up[b] >> a) & 1U)) {
          ok = false;
        }
        if (((up[a] >> b) & 1U) && (up[b] & ~up[a]) != 0) {
          ok = false;
        }
      }
    }
    if (ok) {
      out.push_back(std::move(up));
    }
  }
  return out;
}

bool total_class(AlgebraClass tag) {
  switch (tag) {
    case AlgebraClass::preconstellation:
    case AlgebraClass::ordered_preconstellation:
    case AlgebraClass::preconstellation_zero:
      return false;
    default:
      return true;
  }
}

bool needs_zero(AlgebraClass tag) {
  switch (tag) {
    case AlgebraClass::weak_zero:
    case AlgebraClass::zero:
    case AlgebraClass::dual_zero:
    case AlgebraClass::preconstellation_zero:
      return true;
    default:
      return false;
  }
}

// The tag's axioms restricted to the structure available before a zero is
// designated; used for pruning.
AlgebraClass pruning_class(AlgebraClass tag) {
  switch (tag) {
    case AlgebraClass::weak_zero:
    case AlgebraClass::zero:
    case AlgebraClass::dual_zero:
      return AlgebraClass::ordered_semigroup;
    case AlgebraClass::preconstellation_zero:
      return AlgebraClass::ordered_preconstellation;
    default:
      return tag;
  }
}

std::optional<Index> find_zero(std::size_t n, const std::vector<int>& table,
                               AlgebraClass tag) {
  for (Index z = 0; z < n; ++z) {
    bool ok = true;
    for (Index a = 0; a < n && ok; ++a) {
      if (table[z * n + a] != int(z)) {
        ok = false;
      }
      if (tag != AlgebraClass::preconstellation_zero &&
          table[a * n + z] != int(z)) {
        ok = false;
      }
    }
    if (ok) {
      return z;
    }
  }
  return std::nullopt;
}

class Enumerator {
 public:
  Enumerator(AlgebraClass tag, std::size_t n,
             std::map<std::vector<int>, OrderedAlgebra>& found)
      : tag_(tag), n_(n), found_(found) {}

  void run() {
    for (auto& up : labelled_posets(n_)) {
      up_ = std::move(up);
      table_.assign(n_ * n_, kUnknown);
      fill(0);
    }
  }

 private:
  void fill(std::size_t cell) {
    if (cell == table_.size()) {
      leaf();
      return;
    }
    int const lo = total_class(tag_) ? 0 : OrderedAlgebra::kUndefined;
    for (int v = lo; v < int(n_); ++v) {
      table_[cell] = v;
      Sink sink;
      run_checks(Frame{n_, table_.data(), up_.data(), std::nullopt},
                 pruning_class(tag_), sink);
      if (!sink.failed) {
        fill(cell + 1);
      }
    }
    table_[cell] = kUnknown;
  }

  void leaf() {
    std::optional<Index> zero;
    if (needs_zero(tag_)) {
      zero = find_zero(n_, table_, tag_);
      if (!zero) {
        return;
      }
    }
    OrderedAlgebra alg(placeholder_names(), table_, up_, std::nullopt, zero);
    if (!check_class(alg, tag_, 1).ok()) {
      return;
    }
    auto code = canonical_form(alg);
    if (found_.find(code) == found_.end()) {
      found_.emplace(code, decode(code));
    }
  }

  std::vector<std::string> placeholder_names() const {
    std::vector<std::string> out;
    for (Index a = 0; a < n_; ++a) {
      out.push_back("x" + std::to_string(a));
    }
    return out;
  }

  AlgebraClass tag_;
  std::size_t n_;
  std::map<std::vector<int>, OrderedAlgebra>& found_;
  std::vector<Mask> up_;
  std::vector<int> table_;
};

}  // namespace

std::vector<int> canonical_form(const OrderedAlgebra& alg) {
  std::vector<Index> perm(alg.size());
  std::iota(perm.begin(), perm.end(), Index{0});
  std::vector<int> best;
  do {
    auto code = encode(alg, perm);
    if (best.empty() || code < best) {
      best = std::move(code);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::vector<OrderedAlgebra> enumerate_small(AlgebraClass tag,
                                            std::size_t max_size) {
  if (max_size > 4) {
    throw ValidationError("enumerate_small is limited to 4 elements");
  }
  std::vector<OrderedAlgebra> out;
  for (std::size_t n = 1; n <= max_size; ++n) {
    std::map<std::vector<int>, OrderedAlgebra> found;
    Enumerator(tag, n, found).run();
    for (auto& [code, alg] : found) {
      out.push_back(std::move(alg));
    }
  }
  return out;
}

}  // namespace relic

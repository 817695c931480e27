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

#include "relic/relation.hpp"

#include <algorithm>
#include <set>

#include "relic/config.hpp"
#include "relic/error.hpp"

namespace relic {

StateSpace::StateSpace(std::vector<std::string> names,
                       std::optional<Index> fail_index)
    : names_(std::move(names)), fail_(fail_index) {
  if (names_.empty()) {
    throw ValidationError("a state space needs at least one element");
  }
  if (names_.size() > kMaxCarrier) {
    throw ValidationError("state spaces are limited to " +
                          std::to_string(kMaxCarrier) + " elements");
  }
  std::set<std::string_view> seen;
  for (auto const& n : names_) {
    if (n.empty()) {
      throw ValidationError("empty element name");
    }
    if (!seen.insert(n).second) {
      throw ValidationError("duplicate element name '" + n + "'");
    }
  }
  if (fail_ && *fail_ != names_.size() - 1) {
    throw ValidationError("the fail element must be the last element");
  }
  if (fail_ && names_.size() < 2) {
    throw ValidationError("X must be non-empty besides the fail element");
  }
}

SpacePtr StateSpace::make(std::vector<std::string> names,
                          std::optional<Index> fail_index) {
  return std::make_shared<const StateSpace>(std::move(names), fail_index);
}

SpacePtr StateSpace::numbered(std::size_t n, bool with_fail) {
  std::vector<std::string> names;
  names.reserve(n + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    names.push_back(std::to_string(i));
  }
  if (with_fail) {
    names.emplace_back(kFailName);
    return make(std::move(names), n);
  }
  return make(std::move(names));
}

std::optional<Index> StateSpace::index_of(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) {
    return std::nullopt;
  }
  return static_cast<Index>(it - names_.begin());
}

SpacePtr extend_with_fail(const SpacePtr& base) {
  if (base->has_fail()) {
    throw ValidationError("state space already has a fail element");
  }
  if (base->index_of(kFailName)) {
    throw ValidationError("element name '0' is reserved for the fail state");
  }
  auto names = base->names();
  names.emplace_back(kFailName);
  auto const fail = names.size() - 1;
  return StateSpace::make(std::move(names), fail);
}

SpacePtr strip_fail(const SpacePtr& extended) {
  if (!extended->has_fail()) {
    throw ValidationError("state space has no fail element");
  }
  auto names = extended->names();
  names.pop_back();
  return StateSpace::make(std::move(names));
}

bool same_space(const SpacePtr& a, const SpacePtr& b) noexcept {
  return a == b || *a == *b;
}

ElementSet::ElementSet(std::initializer_list<Index> members) {
  for (auto i : members) {
    insert(i);
  }
}

std::vector<Index> ElementSet::members() const {
  std::vector<Index> out;
  for (Mask m = bits_; m != 0; m &= m - 1) {
    out.push_back(static_cast<Index>(std::countr_zero(m)));
  }
  return out;
}

Relation::Relation(SpacePtr space)
    : space_(std::move(space)), rows_(space_->size(), 0) {}

Relation::Relation(SpacePtr space, std::initializer_list<Pair> pairs)
    : Relation(std::move(space)) {
  for (auto [x, y] : pairs) {
    insert(x, y);
  }
}

Relation::Relation(SpacePtr space, std::vector<Mask> rows)
    : space_(std::move(space)), rows_(std::move(rows)) {
  if (rows_.size() != space_->size()) {
    throw ValidationError("row count does not match the carrier size");
  }
  auto const full = space_->full_mask();
  for (auto r : rows_) {
    if ((r & ~full) != 0) {
      throw ValidationError("relation mentions an element outside the carrier");
    }
  }
}

Relation& Relation::insert(Index x, Index y) {
  if (x >= rows_.size() || y >= rows_.size()) {
    throw ValidationError("pair index outside the carrier");
  }
  rows_[x] |= bit(y);
  return *this;
}

Relation& Relation::erase(Index x, Index y) {
  if (x >= rows_.size() || y >= rows_.size()) {
    throw ValidationError("pair index outside the carrier");
  }
  rows_[x] &= ~bit(y);
  return *this;
}

std::vector<Pair> Relation::pairs() const {
  std::vector<Pair> out;
  for (Index x = 0; x < rows_.size(); ++x) {
    for (Mask m = rows_[x]; m != 0; m &= m - 1) {
      out.emplace_back(x, static_cast<Index>(std::countr_zero(m)));
    }
  }
  return out;
}

std::size_t Relation::pair_count() const noexcept {
  std::size_t n = 0;
  for (auto r : rows_) {
    n += static_cast<std::size_t>(std::popcount(r));
  }
  return n;
}

bool Relation::empty() const noexcept {
  return std::all_of(rows_.begin(), rows_.end(),
                     [](Mask r) { return r == 0; });
}

bool operator==(const Relation& a, const Relation& b) noexcept {
  return a.rows_ == b.rows_ && same_space(a.space_, b.space_);
}

std::strong_ordering operator<=>(const Relation& a,
                                 const Relation& b) noexcept {
  if (auto c = a.rows_.size() <=> b.rows_.size(); c != 0) {
    return c;
  }
  return a.rows_ <=> b.rows_;
}

void require_same_space(const Relation& s, const Relation& t) {
  if (!same_space(s.space_ptr(), t.space_ptr())) {
    throw SpaceMismatch();
  }
}

Relation empty_relation(const SpacePtr& space) { return Relation(space); }

Relation diagonal(const SpacePtr& space) {
  std::vector<Mask> rows(space->size());
  for (Index x = 0; x < rows.size(); ++x) {
    rows[x] = bit(x);
  }
  return Relation(space, std::move(rows));
}

Relation full(const SpacePtr& space) {
  return Relation(space, std::vector<Mask>(space->size(), space->full_mask()));
}

ElementSet dom(const Relation& s) noexcept {
  Mask d = 0;
  for (Index x = 0; x < s.carrier_size(); ++x) {
    if (s.row(x) != 0) {
      d |= bit(x);
    }
  }
  return ElementSet(d);
}

ElementSet ran(const Relation& s) noexcept {
  Mask r = 0;
  for (auto row : s.rows()) {
    r |= row;
  }
  return ElementSet(r);
}

ElementSet image(const Relation& s, Index x) {
  if (x >= s.carrier_size()) {
    throw ValidationError("element index outside the carrier");
  }
  return ElementSet(s.row(x));
}

Relation unite(const Relation& s, const Relation& t) {
  require_same_space(s, t);
  auto rows = s.rows();
  for (Index x = 0; x < rows.size(); ++x) {
    rows[x] |= t.row(x);
  }
  return Relation(s.space_ptr(), std::move(rows));
}

Relation intersect(const Relation& s, const Relation& t) {
  require_same_space(s, t);
  auto rows = s.rows();
  for (Index x = 0; x < rows.size(); ++x) {
    rows[x] &= t.row(x);
  }
  return Relation(s.space_ptr(), std::move(rows));
}

bool includes(const Relation& s, const Relation& t) {
  require_same_space(s, t);
  for (Index x = 0; x < s.carrier_size(); ++x) {
    if ((t.row(x) & ~s.row(x)) != 0) {
      return false;
    }
  }
  return true;
}

Relation restrict_domain(const Relation& s, ElementSet domain) {
  auto rows = s.rows();
  for (Index x = 0; x < rows.size(); ++x) {
    if (!domain.contains(x)) {
      rows[x] = 0;
    }
  }
  return Relation(s.space_ptr(), std::move(rows));
}

Relation diag_of_domain(const Relation& s) {
  std::vector<Mask> rows(s.carrier_size(), 0);
  for (Index x = 0; x < rows.size(); ++x) {
    if (s.row(x) != 0) {
      rows[x] = bit(x);
    }
  }
  return Relation(s.space_ptr(), std::move(rows));
}

namespace {

Mask image_of_mask(const Relation& t, Mask m) noexcept {
  Mask out = 0;
  for (; m != 0; m &= m - 1) {
    out |= t.row(static_cast<Index>(std::countr_zero(m)));
  }
  return out;
}

}  // namespace

Relation compose_angelic(const Relation& s, const Relation& t) {
  require_same_space(s, t);
  std::vector<Mask> rows(s.carrier_size());
  for (Index x = 0; x < rows.size(); ++x) {
    rows[x] = image_of_mask(t, s.row(x));
  }
  return Relation(s.space_ptr(), std::move(rows));
}

namespace detail {

Relation compose_demonic_quantified(const Relation& s, const Relation& t) {
  require_same_space(s, t);
  auto const n = s.carrier_size();
  Relation out(s.space_ptr());
  for (Index x = 0; x < n; ++x) {
    bool every_successor_continues = true;
    for (Index w = 0; w < n && every_successor_continues; ++w) {
      if (!s.contains(x, w)) {
        continue;
      }
      bool has_v = false;
      for (Index v = 0; v < n; ++v) {
        has_v = has_v || t.contains(w, v);
      }
      every_successor_continues = has_v;
    }
    if (!every_successor_continues) {
      continue;
    }
    for (Index y = 0; y < n; ++y) {
      for (Index z = 0; z < n; ++z) {
        if (s.contains(x, z) && t.contains(z, y)) {
          out.insert(x, y);
          break;
        }
      }
    }
  }
  return out;
}

Relation compose_demonic_forward(const Relation& s, const Relation& t) {
  require_same_space(s, t);
  auto const d = dom(t).bits();
  std::vector<Mask> rows(s.carrier_size(), 0);
  for (Index x = 0; x < rows.size(); ++x) {
    if ((s.row(x) & ~d) == 0) {
      rows[x] = image_of_mask(t, s.row(x));
    }
  }
  return Relation(s.space_ptr(), std::move(rows));
}

}  // namespace detail

Relation compose_demonic(const Relation& s, const Relation& t) {
  auto forward = detail::compose_demonic_forward(s, t);
  if (self_check_enabled()) {
    if (detail::compose_demonic_quantified(s, t) != forward) {
      throw ConsistencyError(
          "demonic composition: quantifier and forward-image forms differ");
    }
  }
  return forward;
}

bool refines_demonic(const Relation& s, const Relation& t) {
  require_same_space(s, t);
  auto const dt = dom(t);
  if (!dt.subset_of(dom(s))) {
    return false;
  }
  for (Index x : dt.members()) {
    if ((s.row(x) & ~t.row(x)) != 0) {
      return false;
    }
  }
  return true;
}

Relation join_demonic(const Relation& s, const Relation& t) {
  require_same_space(s, t);
  std::vector<Mask> rows(s.carrier_size(), 0);
  for (Index x = 0; x < rows.size(); ++x) {
    if (s.row(x) != 0 && t.row(x) != 0) {
      rows[x] = s.row(x) | t.row(x);
    }
  }
  return Relation(s.space_ptr(), std::move(rows));
}

std::optional<Relation> product_constellation(const Relation& s,
                                              const Relation& t) {
  require_same_space(s, t);
  if (!ran(s).subset_of(dom(t))) {
    return std::nullopt;
  }
  return compose_angelic(s, t);
}

bool is_left_total(const Relation& s) noexcept {
  return dom(s).bits() == s.space().full_mask();
}

bool is_total(const Relation& s) noexcept {
  return is_left_total(s) && ran(s).bits() == s.space().full_mask();
}

bool is_in_ltrel0(const Relation& s) {
  auto const fail = s.space().fail_index();
  if (!fail) {
    throw ValidationError("Ltrel0 membership needs a carrier with a fail element");
  }
  return is_left_total(s) && s.row(*fail) == bit(*fail);
}

Classification classify(const Relation& s) {
  Classification c;
  c.left_total = is_left_total(s);
  c.total = is_total(s);
  if (s.space().has_fail()) {
    c.in_ltrel0 = is_in_ltrel0(s);
  }
  return c;
}

namespace {

// Cartesian product of per-row choices, first row varying slowest.
std::vector<Relation> product_of_rows(const SpacePtr& space,
                                      const std::vector<std::vector<Mask>>& choices) {
  std::vector<Relation> out;
  std::vector<Mask> rows(space->size(), 0);
  auto recurse = [&](auto& self, Index x) -> void {
    if (x == rows.size()) {
      out.emplace_back(space, rows);
      return;
    }
    for (auto m : choices[x]) {
      rows[x] = m;
      self(self, x + 1);
    }
  };
  recurse(recurse, 0);
  return out;
}

std::vector<Mask> all_masks(Mask within, bool nonempty) {
  std::vector<Mask> out;
  for (Mask m = 0; m <= within; ++m) {
    if ((m & ~within) == 0 && (!nonempty || m != 0)) {
      out.push_back(m);
    }
  }
  return out;
}

}  // namespace

std::vector<Relation> all_relations(const SpacePtr& space) {
  if (space->size() > 4) {
    throw ValidationError("all_relations is limited to carriers of size <= 4");
  }
  std::vector<std::vector<Mask>> choices(space->size(),
                                         all_masks(space->full_mask(), false));
  return product_of_rows(space, choices);
}

std::vector<Relation> left_total_relations(const SpacePtr& space) {
  if (space->size() > 4) {
    throw ValidationError("left_total_relations is limited to size <= 4");
  }
  std::vector<std::vector<Mask>> choices(space->size(),
                                         all_masks(space->full_mask(), true));
  return product_of_rows(space, choices);
}

std::vector<Relation> total_relations(const SpacePtr& space) {
  auto all = left_total_relations(space);
  std::erase_if(all, [](const Relation& r) { return !is_total(r); });
  return all;
}

std::vector<Relation> ltrel0_relations(const SpacePtr& space) {
  auto const fail = space->fail_index();
  if (!fail) {
    throw ValidationError("Ltrel0 needs a carrier with a fail element");
  }
  if (space->size() > 5) {
    throw ValidationError("ltrel0_relations is limited to |X| <= 4");
  }
  std::vector<std::vector<Mask>> choices(space->size(),
                                         all_masks(space->full_mask(), true));
  choices[*fail] = {bit(*fail)};
  return product_of_rows(space, choices);
}

}  // namespace relic

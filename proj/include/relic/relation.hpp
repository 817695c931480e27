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

#ifndef RELIC_RELATION_HPP
#define RELIC_RELATION_HPP

// Finite binary relations over an indexed carrier, with the angelic, demonic
// and constellation operations.
//
// A carrier has at most 64 elements; each row of a relation is a bit mask.
// When a carrier carries a fail element "0" it is always the last index, so
// the non-fail part X of X0 = X + {0} occupies indices [0, base_size()).

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace relic {

using Index = std::size_t;
using Mask = std::uint64_t;

inline constexpr std::size_t kMaxCarrier = 64;

inline constexpr Mask bit(Index i) noexcept { return Mask{1} << i; }

inline constexpr Mask low_mask(std::size_t n) noexcept {
  return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1;
}

class StateSpace;
using SpacePtr = std::shared_ptr<const StateSpace>;

class StateSpace {
 public:
  // Throws ValidationError on duplicate names, an empty carrier, more than
  // kMaxCarrier elements, or a fail index that is not the last element.
  StateSpace(std::vector<std::string> names,
             std::optional<Index> fail_index = std::nullopt);

  static SpacePtr make(std::vector<std::string> names,
                       std::optional<Index> fail_index = std::nullopt);

  // Elements named "1".."n"; with_fail appends the fail element "0".
  static SpacePtr numbered(std::size_t n, bool with_fail = false);

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(Index i) const { return names_.at(i); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<Index> index_of(std::string_view name) const;

  std::optional<Index> fail_index() const noexcept { return fail_; }
  bool has_fail() const noexcept { return fail_.has_value(); }
  // |X| for a fail-extended carrier X0, size() otherwise.
  std::size_t base_size() const noexcept {
    return fail_ ? names_.size() - 1 : names_.size();
  }

  Mask full_mask() const noexcept { return low_mask(size()); }
  Mask base_mask() const noexcept { return low_mask(base_size()); }

  friend bool operator==(const StateSpace&, const StateSpace&) = default;

 private:
  std::vector<std::string> names_;
  std::optional<Index> fail_;
};

inline constexpr std::string_view kFailName = "0";

// X -> X0 by appending the element "0". Throws ValidationError if X already
// has a fail element or already uses the name "0".
SpacePtr extend_with_fail(const SpacePtr& base);
// X0 -> X.
SpacePtr strip_fail(const SpacePtr& extended);

bool same_space(const SpacePtr& a, const SpacePtr& b) noexcept;

class ElementSet {
 public:
  constexpr ElementSet() noexcept = default;
  constexpr explicit ElementSet(Mask bits) noexcept : bits_(bits) {}
  ElementSet(std::initializer_list<Index> members);

  bool contains(Index i) const noexcept { return (bits_ >> i) & 1U; }
  void insert(Index i) noexcept { bits_ |= bit(i); }
  void erase(Index i) noexcept { bits_ &= ~bit(i); }
  std::size_t size() const noexcept {
    return static_cast<std::size_t>(std::popcount(bits_));
  }
  bool empty() const noexcept { return bits_ == 0; }
  Mask bits() const noexcept { return bits_; }
  bool subset_of(ElementSet other) const noexcept {
    return (bits_ & ~other.bits_) == 0;
  }
  std::vector<Index> members() const;

  friend ElementSet operator|(ElementSet a, ElementSet b) noexcept {
    return ElementSet(a.bits_ | b.bits_);
  }
  friend ElementSet operator&(ElementSet a, ElementSet b) noexcept {
    return ElementSet(a.bits_ & b.bits_);
  }
  friend ElementSet operator-(ElementSet a, ElementSet b) noexcept {
    return ElementSet(a.bits_ & ~b.bits_);
  }
  friend bool operator==(ElementSet, ElementSet) = default;
  friend auto operator<=>(ElementSet, ElementSet) = default;

 private:
  Mask bits_ = 0;
};

using Pair = std::pair<Index, Index>;

class Relation {
 public:
  // The empty relation on `space`.
  explicit Relation(SpacePtr space);
  Relation(SpacePtr space, std::initializer_list<Pair> pairs);
  Relation(SpacePtr space, std::vector<Mask> rows);

  const SpacePtr& space_ptr() const noexcept { return space_; }
  const StateSpace& space() const noexcept { return *space_; }
  std::size_t carrier_size() const noexcept { return rows_.size(); }

  bool contains(Index x, Index y) const noexcept {
    return (rows_[x] >> y) & 1U;
  }
  Relation& insert(Index x, Index y);
  Relation& erase(Index x, Index y);

  // Forward image s(x) as a bit mask.
  Mask row(Index x) const noexcept { return rows_[x]; }
  const std::vector<Mask>& rows() const noexcept { return rows_; }

  std::vector<Pair> pairs() const;
  std::size_t pair_count() const noexcept;
  bool empty() const noexcept;

  friend bool operator==(const Relation& a, const Relation& b) noexcept;
  // Total order by rows; relations on different spaces compare by size first.
  friend std::strong_ordering operator<=>(const Relation& a,
                                          const Relation& b) noexcept;

 private:
  SpacePtr space_;
  std::vector<Mask> rows_;
};

// Throws SpaceMismatch unless both relations share a carrier.
void require_same_space(const Relation& s, const Relation& t);

// Constants.
Relation empty_relation(const SpacePtr& space);
Relation diagonal(const SpacePtr& space);
Relation full(const SpacePtr& space);

ElementSet dom(const Relation& s) noexcept;
ElementSet ran(const Relation& s) noexcept;
ElementSet image(const Relation& s, Index x);

Relation unite(const Relation& s, const Relation& t);
Relation intersect(const Relation& s, const Relation& t);
bool includes(const Relation& s, const Relation& t);  // t is a subset of s
inline bool subset(const Relation& s, const Relation& t) {
  return includes(t, s);
}
Relation restrict_domain(const Relation& s, ElementSet domain);
// D(s): the diagonal restricted to dom(s).
Relation diag_of_domain(const Relation& s);

// s ; t
Relation compose_angelic(const Relation& s, const Relation& t);
// s * t. With self checks on, the quantifier form and the forward-image form
// are both computed and must agree.
Relation compose_demonic(const Relation& s, const Relation& t);
// s refines t in the demonic order: dom(t) <= dom(s) and s|dom(t) <= t.
bool refines_demonic(const Relation& s, const Relation& t);
Relation join_demonic(const Relation& s, const Relation& t);
// s . t, or nullopt when ran(s) is not inside dom(t).
std::optional<Relation> product_constellation(const Relation& s,
                                              const Relation& t);

namespace detail {
// Literal two-quantifier evaluation of demonic composition.
Relation compose_demonic_quantified(const Relation& s, const Relation& t);
// (s;t) restricted to {x : s(x) inside dom(t)}.
Relation compose_demonic_forward(const Relation& s, const Relation& t);
}  // namespace detail

struct Classification {
  bool left_total = false;
  bool total = false;
  // Present only when the carrier has a fail element.
  std::optional<bool> in_ltrel0;
};

Classification classify(const Relation& s);
bool is_left_total(const Relation& s) noexcept;
bool is_total(const Relation& s) noexcept;
// Throws ValidationError when the carrier has no fail element.
bool is_in_ltrel0(const Relation& s);

// Exhaustive listings in increasing row order. all_relations requires
// size() <= 4.
std::vector<Relation> all_relations(const SpacePtr& space);
std::vector<Relation> left_total_relations(const SpacePtr& space);
std::vector<Relation> total_relations(const SpacePtr& space);
std::vector<Relation> ltrel0_relations(const SpacePtr& space);

}  // namespace relic

#endif  // RELIC_RELATION_HPP

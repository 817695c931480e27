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

#ifndef RELIC_ALGEBRA_HPP
#define RELIC_ALGEBRA_HPP

// Finite ordered algebras with a possibly partial product.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "relic/relation.hpp"

namespace relic {

inline constexpr std::size_t kMaxAlgebraSize = 64;

class OrderedAlgebra {
 public:
  // Product cell value for an undefined product.
  static constexpr int kUndefined = -1;

  // `table` is row-major (table[a*n+b] = a.b) with kUndefined for missing
  // products; `up[a]` is the mask of all b with a <= b. Throws
  // ValidationError unless the order is a partial order and the identity,
  // when present, is a two-sided identity.
  OrderedAlgebra(std::vector<std::string> names, std::vector<int> table,
                 std::vector<Mask> up, std::optional<Index> identity = {},
                 std::optional<Index> zero = {});

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(Index a) const { return names_.at(a); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<Index> index_of(std::string_view name) const;

  std::optional<Index> mul(Index a, Index b) const noexcept {
    auto const c = table_[a * size() + b];
    return c < 0 ? std::nullopt : std::optional<Index>(Index(c));
  }
  bool defined(Index a, Index b) const noexcept {
    return table_[a * size() + b] >= 0;
  }
  int cell(Index a, Index b) const noexcept { return table_[a * size() + b]; }
  const std::vector<int>& table() const noexcept { return table_; }
  bool is_partial() const noexcept;

  bool leq(Index a, Index b) const noexcept { return (up_[a] >> b) & 1U; }
  Mask up_set(Index a) const noexcept { return up_[a]; }
  Mask down_set(Index a) const noexcept;
  const std::vector<Mask>& up_sets() const noexcept { return up_; }
  bool order_is_equality() const noexcept;

  std::optional<Index> identity() const noexcept { return identity_; }
  std::optional<Index> zero() const noexcept { return zero_; }

  friend bool operator==(const OrderedAlgebra&,
                         const OrderedAlgebra&) = default;

 private:
  std::vector<std::string> names_;
  std::vector<int> table_;
  std::vector<Mask> up_;
  std::optional<Index> identity_;
  std::optional<Index> zero_;
};

enum class AlgebraClass {
  ordered_semigroup,
  weak_zero,
  zero,
  dual_zero,
  preconstellation,
  ordered_preconstellation,
  preconstellation_zero,
  idempotent_semiring,
};

std::string_view to_string(AlgebraClass c);
std::optional<AlgebraClass> algebra_class_from(std::string_view name);
const std::vector<AlgebraClass>& all_algebra_classes();

struct AxiomViolation {
  std::string axiom;
  std::vector<Index> witness;  // element indices, in the axiom's variable order
};

struct ClassReport {
  AlgebraClass tag;
  std::vector<AxiomViolation> violations;
  std::vector<std::string> notes;

  bool ok() const noexcept { return violations.empty(); }
};

// Lists every violated axiom instance (up to `limit`).
ClassReport check_class(const OrderedAlgebra& alg, AlgebraClass tag,
                        std::size_t limit = SIZE_MAX);
std::string to_string(const ClassReport& r, const OrderedAlgebra& alg);

enum class IdentityPolicy { isolated, above_zero, below_zero };

inline constexpr std::string_view kIdentityName = "1'";
inline constexpr std::string_view kZeroName = "0";
inline constexpr std::string_view kBasePointName = "e";

// Appends a fresh identity named 1'. Throws ValidationError naming the
// offending pair when the chosen order makes the extension incompatible.
OrderedAlgebra adjoin_identity(const OrderedAlgebra& alg,
                               IdentityPolicy policy = IdentityPolicy::isolated);
// Appends an absorbing 0 below every element.
OrderedAlgebra adjoin_zero(const OrderedAlgebra& alg);
// Appends 0 below every element with 0.s = 0 for all s; s.0 is defined only
// for s = 0.
OrderedAlgebra adjoin_constellation_zero(const OrderedAlgebra& alg);
// Drops the designated zero; products among the remaining elements must not
// produce it.
OrderedAlgebra remove_zero(const OrderedAlgebra& alg);

// Tabulates a finite family of relations closed under `op` (nullopt means
// undefined) and ordered by `leq`. Throws ValidationError if a product falls
// outside the family.
OrderedAlgebra tabulate_relations(
    const std::vector<Relation>& elements,
    const std::function<std::optional<Relation>(const Relation&,
                                                const Relation&)>& op,
    const std::function<bool(const Relation&, const Relation&)>& leq,
    std::optional<Relation> identity = {}, std::optional<Relation> zero = {});

// Line-oriented text format:
//   elements a b c
//   order a<=b b<=c        (reflexive pairs implied)
//   prod a b = c           (every cell must be given; `undef` for none)
//   identity a
//   zero z
OrderedAlgebra parse_algebra(std::string_view text);
std::string to_string(const OrderedAlgebra& alg);

// All algebras of the class with 1..max_size elements, one per isomorphism
// class, in a fixed order. max_size is limited to 4.
std::vector<OrderedAlgebra> enumerate_small(AlgebraClass tag,
                                            std::size_t max_size);

// Encoding of the algebra under the relabelling that minimises it; equal
// for isomorphic algebras.
std::vector<int> canonical_form(const OrderedAlgebra& alg);

}  // namespace relic

#endif  // RELIC_ALGEBRA_HPP

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

#ifndef RELIC_REPRESENTATION_HPP
#define RELIC_REPRESENTATION_HPP

// Concrete relational representations of finite ordered algebras, and a
// checker that a representation is an embedding for a given signature.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "relic/algebra.hpp"
#include "relic/relation.hpp"

namespace relic {

enum class Symbol {
  compose_angelic,   // ;
  compose_demonic,   // *
  constellation,     // . (partial)
  union_join,        // join of the order goes to union
  demonic_join,      // join of the order goes to the demonic join
  inclusion,         // order is inclusion
  refinement,        // order is demonic refinement
  identity,          // identity goes to the diagonal
  zero_empty,        // zero goes to the empty relation
  zero_full,         // zero goes to the full relation
  zero_abort,        // zero goes to {(x,0)}
};

std::string_view to_string(Symbol s);

struct Representation {
  OrderedAlgebra source;
  SpacePtr base;
  std::vector<Relation> images;  // images[a] represents source element a
  std::vector<Symbol> signature;

  const Relation& image(Index a) const { return images.at(a); }
};

// a -> {(x,y) : y <= x.a} over A itself when A has an identity, otherwise
// over A with an isolated identity 1' adjoined. Images are left total.
Representation zareckii(const OrderedAlgebra& alg);

// Over the unital extension with 1' isolated; the zero becomes the fail
// element of the base, so images lie in Ltrel0 and the zero maps to abort.
Representation represent_weak_zero(const OrderedAlgebra& alg);

// As represent_weak_zero with 0 < 1', followed by the angelic restriction of
// every image; the zero maps to the empty relation.
Representation represent_zero_angelic(const OrderedAlgebra& alg);

enum class DualZeroMode { total_angelic, demonic };

// Over the unital extension with 1' < 0 only. total_angelic: total
// relations on A + 1' with the zero as the full relation. demonic: the
// preimages of those under psi2, with the zero as the empty relation.
Representation represent_dual_zero(const OrderedAlgebra& alg,
                                   DualZeroMode mode);

// p -> {(x,y) : x.p defined, y <= x.p} + {(e,y) : y <= p} over P + {e}.
// With a declared zero, the zero is removed first and mapped to the empty
// relation.
Representation represent_preconstellation(const OrderedAlgebra& alg);

enum class Construction {
  zareckii,
  weak_zero,
  zero,
  dual_zero_total,
  dual_zero_demonic,
  preconstellation,
};

// Names: zareckii, weak-zero, zero, dual-zero-total, dual-zero-demonic,
// preconstellation.
std::string_view to_string(Construction c);
std::optional<Construction> construction_from(std::string_view name);
Representation represent(const OrderedAlgebra& alg, Construction c);

struct EmbeddingViolation {
  std::string property;
  std::vector<Index> witness;  // source element indices
};

struct EmbeddingReport {
  std::vector<EmbeddingViolation> violations;
  bool ok() const noexcept { return violations.empty(); }
};

// Checks injectivity, every operation of the signature on all pairs, order
// preservation and reflection, and constant images. Violations are listed
// in lexicographic witness order within each property.
EmbeddingReport verify_embedding(const Representation& rep);

std::string to_string(const EmbeddingReport& report,
                      const OrderedAlgebra& source);
std::string to_string(const Representation& rep);

}  // namespace relic

#endif  // RELIC_REPRESENTATION_HPP

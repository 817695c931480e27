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

#ifndef RELIC_PROGRAM_HPP
#define RELIC_PROGRAM_HPP

// Programs as members of Ltrel0(X): left-total relations on X0 = X + {0}
// whose fail row is exactly {(0,0)}.

#include <compare>
#include <optional>

#include "relic/relation.hpp"

namespace relic {

class ProgramRelation {
 public:
  // Throws ValidationError unless `rel` is in Ltrel0 of its carrier.
  explicit ProgramRelation(Relation rel);

  const Relation& rel() const noexcept { return rel_; }
  const SpacePtr& space_ptr() const noexcept { return rel_.space_ptr(); }
  const StateSpace& space() const noexcept { return rel_.space(); }
  Index fail() const noexcept { return *rel_.space().fail_index(); }

  friend bool operator==(const ProgramRelation&,
                         const ProgramRelation&) = default;
  friend std::strong_ordering operator<=>(const ProgramRelation& a,
                                          const ProgramRelation& b) noexcept {
    return a.rel_ <=> b.rel_;
  }

 private:
  Relation rel_;
};

ProgramRelation abort_program(const SpacePtr& space);
ProgramRelation skip_program(const SpacePtr& space);

// Both restrictions live on X, the carrier without its fail element.
Relation restrict_angelic(const ProgramRelation& rho);
Relation restrict_demonic(const ProgramRelation& rho);

// Inverse of the pair of restrictions. `a_part` and `d_part` are relations
// on X; the result lives on X0. Rejects pairs that are not the restrictions
// of any program.
ProgramRelation reconstruct(const Relation& a_part, const Relation& d_part);

ProgramRelation seq(const ProgramRelation& rho, const ProgramRelation& tau);
ProgramRelation choice(const ProgramRelation& rho, const ProgramRelation& tau);

// {(x,y) : x in X \ dom(r), y in X0}, on X0.
Relation nabla_outside_domain(const Relation& r, const SpacePtr& extended);

ProgramRelation psi1(const Relation& r);
Relation psi2(const Relation& r);  // a total relation on X0
ProgramRelation psi3(const Relation& r);

// The preimage of a relation on X0 under psi2, if there is one.
std::optional<Relation> psi2_inverse(const Relation& image);

bool quasi_partial(const ProgramRelation& rho, const ProgramRelation& tau);
bool quasi_total(const ProgramRelation& rho, const ProgramRelation& tau);
bool approx(const ProgramRelation& rho, const ProgramRelation& tau);

std::vector<ProgramRelation> all_programs(const SpacePtr& space);

}  // namespace relic

#endif  // RELIC_PROGRAM_HPP

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

#include "relic/program.hpp"

#include "relic/error.hpp"

namespace relic {

namespace {

void require_fail(const SpacePtr& space) {
  if (!space->has_fail()) {
    throw ValidationError("programs need a state space with a fail element");
  }
}

}  // namespace

ProgramRelation::ProgramRelation(Relation rel) : rel_(std::move(rel)) {
  require_fail(rel_.space_ptr());
  if (!is_in_ltrel0(rel_)) {
    throw ValidationError(
        "not in Ltrel0: a program must be left total with fail row {(0,0)}");
  }
}

ProgramRelation abort_program(const SpacePtr& space) {
  require_fail(space);
  auto const f = bit(*space->fail_index());
  return ProgramRelation(Relation(space, std::vector<Mask>(space->size(), f)));
}

ProgramRelation skip_program(const SpacePtr& space) {
  require_fail(space);
  return ProgramRelation(diagonal(space));
}

Relation restrict_angelic(const ProgramRelation& rho) {
  auto base = strip_fail(rho.space_ptr());
  auto const keep = base->full_mask();
  std::vector<Mask> rows(base->size());
  for (Index x = 0; x < rows.size(); ++x) {
    rows[x] = rho.rel().row(x) & keep;
  }
  return Relation(std::move(base), std::move(rows));
}

Relation restrict_demonic(const ProgramRelation& rho) {
  auto base = strip_fail(rho.space_ptr());
  auto const f = bit(rho.fail());
  std::vector<Mask> rows(base->size());
  for (Index x = 0; x < rows.size(); ++x) {
    auto const r = rho.rel().row(x);
    rows[x] = (r & f) != 0 ? 0 : r;
  }
  return Relation(std::move(base), std::move(rows));
}

ProgramRelation reconstruct(const Relation& a_part, const Relation& d_part) {
  require_same_space(a_part, d_part);
  if (a_part.space().has_fail()) {
    throw ValidationError("restrictions live on a carrier without fail");
  }
  auto const n = a_part.carrier_size();
  for (Index x = 0; x < n; ++x) {
    if (d_part.row(x) != 0 && d_part.row(x) != a_part.row(x)) {
      throw ValidationError(
          "row of " + a_part.space().name(x) +
          " in the demonic part differs from the angelic part");
    }
  }
  auto space = extend_with_fail(a_part.space_ptr());
  auto const f = bit(n);
  std::vector<Mask> rows(n + 1);
  for (Index x = 0; x < n; ++x) {
    rows[x] = a_part.row(x) | (d_part.row(x) == 0 ? f : 0);
  }
  rows[n] = f;
  return ProgramRelation(Relation(std::move(space), std::move(rows)));
}

ProgramRelation seq(const ProgramRelation& rho, const ProgramRelation& tau) {
  return ProgramRelation(compose_angelic(rho.rel(), tau.rel()));
}

ProgramRelation choice(const ProgramRelation& rho, const ProgramRelation& tau) {
  return ProgramRelation(unite(rho.rel(), tau.rel()));
}

Relation nabla_outside_domain(const Relation& r, const SpacePtr& extended) {
  auto const n = r.carrier_size();
  std::vector<Mask> rows(n + 1, 0);
  for (Index x = 0; x < n; ++x) {
    if (r.row(x) == 0) {
      rows[x] = extended->full_mask();
    }
  }
  return Relation(extended, std::move(rows));
}

namespace {

// r on X copied into X0 with an empty fail row.
std::vector<Mask> lifted_rows(const Relation& r) {
  auto rows = r.rows();
  rows.push_back(0);
  return rows;
}

}  // namespace

ProgramRelation psi1(const Relation& r) {
  auto space = extend_with_fail(r.space_ptr());
  auto rows = lifted_rows(r);
  auto const f = bit(r.carrier_size());
  for (auto& row : rows) {
    row |= f;
  }
  return ProgramRelation(Relation(std::move(space), std::move(rows)));
}

Relation psi2(const Relation& r) {
  auto space = extend_with_fail(r.space_ptr());
  auto rows = lifted_rows(r);
  auto const nabla = nabla_outside_domain(r, space);
  for (Index x = 0; x < rows.size(); ++x) {
    rows[x] |= nabla.row(x);
  }
  rows.back() = space->full_mask();
  return Relation(std::move(space), std::move(rows));
}

ProgramRelation psi3(const Relation& r) {
  auto space = extend_with_fail(r.space_ptr());
  auto rows = lifted_rows(r);
  auto const nabla = nabla_outside_domain(r, space);
  for (Index x = 0; x < rows.size(); ++x) {
    rows[x] |= nabla.row(x);
  }
  rows.back() = bit(r.carrier_size());
  return ProgramRelation(Relation(std::move(space), std::move(rows)));
}

std::optional<Relation> psi2_inverse(const Relation& image) {
  if (!image.space().has_fail()) {
    return std::nullopt;
  }
  auto base = strip_fail(image.space_ptr());
  auto const f = bit(image.space().base_size());
  std::vector<Mask> rows(base->size());
  for (Index x = 0; x < rows.size(); ++x) {
    auto const row = image.row(x);
    rows[x] = (row & f) != 0 ? 0 : row;
  }
  Relation candidate(std::move(base), std::move(rows));
  if (psi2(candidate) != image) {
    return std::nullopt;
  }
  return candidate;
}

bool quasi_partial(const ProgramRelation& rho, const ProgramRelation& tau) {
  return subset(restrict_angelic(rho), restrict_angelic(tau));
}

bool quasi_total(const ProgramRelation& rho, const ProgramRelation& tau) {
  return refines_demonic(restrict_demonic(rho), restrict_demonic(tau));
}

bool approx(const ProgramRelation& rho, const ProgramRelation& tau) {
  return subset(rho.rel(), tau.rel());
}

std::vector<ProgramRelation> all_programs(const SpacePtr& space) {
  std::vector<ProgramRelation> out;
  for (auto& r : ltrel0_relations(space)) {
    out.emplace_back(std::move(r));
  }
  return out;
}

}  // namespace relic

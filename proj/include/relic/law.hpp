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

#ifndef RELIC_LAW_HPP
#define RELIC_LAW_HPP

// Terms and quasi-equations over relations, and their validity on small
// carriers.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "relic/relation.hpp"

namespace relic {

enum class TermConst { empty, identity, full, abort };
enum class TermOp { angelic, demonic, cup, demonic_join, constellation };

struct Term {
  enum class Kind { var, constant, op };

  Kind kind = Kind::var;
  std::string name;  // var
  TermConst constant = TermConst::empty;
  TermOp op = TermOp::angelic;
  std::shared_ptr<const Term> left;
  std::shared_ptr<const Term> right;

  static Term var(std::string name);
  static Term make_const(TermConst c);
  static Term make_op(TermOp op, Term left, Term right);
};

bool operator==(const Term& a, const Term& b);

enum class AtomKind { equal, subset, refines, exists };

struct Atom {
  AtomKind kind = AtomKind::equal;
  Term lhs;
  Term rhs;  // unused for exists
};

bool operator==(const Atom& a, const Atom& b);

// antecedent => consequent; an empty antecedent is a plain (in)equation.
struct Formula {
  std::vector<Atom> antecedent;
  std::vector<Atom> consequent;

  // In order of first appearance.
  std::vector<std::string> variables() const;
};

bool operator==(const Formula& a, const Formula& b);

// Terms: variables, the constants 0e (empty), 1' (identity), nabla (full)
// and Z (abort), and the infix operators ; * cup dj . which associate to the
// left; different operators may not be mixed without parentheses.
// Atoms: t = t, t <= t (inclusion), t ref<= t (refinement), ex(t).
// Formulas: a & a & ... => a & ..., or a conjunction of atoms alone.
Formula parse_formula(std::string_view text);
Term parse_term(std::string_view text);

// Fully parenthesised; parse_formula(to_string(f)) == f.
std::string to_string(const Term& t);
std::string to_string(const Atom& a);
std::string to_string(const Formula& f);
// Sorted, de-duplicated conjuncts on both sides.
Formula normalize(const Formula& f);

using Assignment = std::map<std::string, Relation, std::less<>>;

// nullopt is the undefined value, which every operation propagates.
std::optional<Relation> eval_term(const Term& t, const Assignment& env,
                                  const SpacePtr& space);
// Comparisons with an undefined side are false, as is ex of an undefined
// term.
bool eval_atom(const Atom& a, const Assignment& env, const SpacePtr& space);
bool eval_formula(const Formula& f, const Assignment& env,
                  const SpacePtr& space);

enum class Domain { rel, ltrel, total, ltrel0 };

std::string_view to_string(Domain d);
std::optional<Domain> domain_from(std::string_view name);

// The carrier for `size` states: X, or X0 for ltrel0.
SpacePtr domain_space(Domain d, std::size_t size);
std::vector<Relation> domain_members(Domain d, const SpacePtr& space);

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

struct ValidityOptions {
  enum class Mode { exhaustive, random };
  Mode mode = Mode::exhaustive;
  std::uint64_t seed = 0;
  std::uint64_t samples = 10'000;  // per size, random mode
  std::uint64_t budget = kDefaultBudget;
  unsigned workers = 1;
  bool minimize = true;
};

struct Counterexample {
  SpacePtr space;
  Assignment assignment;
};

struct Verdict {
  bool valid = true;  // at the tested sizes
  std::optional<Counterexample> counterexample;
  std::uint64_t instances = 0;
};

// Throws BudgetExceeded when an exhaustive search would need more than
// options.budget instances.
Verdict check_validity(const Formula& f, Domain domain,
                       const std::vector<std::size_t>& sizes,
                       const ValidityOptions& options = {});

std::string to_string(const Counterexample& c);

enum class Expectation { valid, counterexample };

struct PresetLaw {
  std::string name;
  std::string formula;
  Domain domain;
  std::vector<std::size_t> sizes;
  Expectation expected;
  ValidityOptions::Mode mode = ValidityOptions::Mode::exhaustive;
};

struct PresetSuite {
  std::string name;
  std::vector<PresetLaw> laws;
};

// s0 <= sn, s_i <= s_(i+1) * t for i < n => s0 * t <= sn * t; n >= 1.
std::string restricted_monotonicity_law(std::size_t n);
// (s ref<= t) & ex(((x . t) . u1) ... . un) => ex(((x . s) . u1) ... . un)
std::string existence_family_law(std::size_t n);

// `family_size` bounds the parametrised suites.
std::vector<PresetSuite> preset_suites(std::size_t family_size = 3);
std::optional<PresetSuite> preset_suite(std::string_view name,
                                        std::size_t family_size = 3);

}  // namespace relic

#endif  // RELIC_LAW_HPP

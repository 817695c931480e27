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

#ifndef RELIC_CORRECTNESS_HPP
#define RELIC_CORRECTNESS_HPP

// Programs built from atoms by sequencing and choice, tests, and Hoare
// triples over the Ltrel0 model.
//
//   prog := prog ';' prog | prog '|' prog | 'skip' | 'abort' | IDENT
//         | '(' prog ')'
//
// ';' binds tighter than '|'; both associate to the left.

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "relic/program.hpp"
#include "relic/relation_io.hpp"

namespace relic {

struct ProgramAst;
using ProgramPtr = std::shared_ptr<const ProgramAst>;

struct ProgramAst {
  enum class Kind { Atom, Skip, Abort, Seq, Choice };

  Kind kind = Kind::Skip;
  std::string name;  // atoms only
  ProgramPtr left;
  ProgramPtr right;
  std::size_t offset = 0;  // position in the source text

  static ProgramPtr atom(std::string name, std::size_t offset = 0);
  static ProgramPtr skip();
  static ProgramPtr abort();
  static ProgramPtr seq(ProgramPtr l, ProgramPtr r);
  static ProgramPtr choice(ProgramPtr l, ProgramPtr r);
};

bool operator==(const ProgramAst& a, const ProgramAst& b);
// Fully parenthesised form, e.g. "((a ; b) | c)".
std::string to_string(const ProgramAst& p);

struct ProgramEnv {
  SpacePtr space;  // X0
  std::map<std::string, ProgramRelation, std::less<>> atoms;

  // Every binding must be a program; `skip` and `abort` are reserved.
  static ProgramEnv from(const RelationEnv& env);
};

// With an environment, unknown atoms are reported as parse errors.
ProgramPtr parse_program(std::string_view text, const ProgramEnv* env = nullptr);
ProgramRelation denote(const ProgramAst& p, const ProgramEnv& env);

class Test {
 public:
  // `space` must have a fail element; `truth` must avoid it.
  Test(SpacePtr space, ElementSet truth);

  const SpacePtr& space_ptr() const noexcept { return space_; }
  ElementSet truth() const noexcept { return truth_; }

  friend bool operator==(const Test&, const Test&) = default;

 private:
  SpacePtr space_;
  ElementSet truth_;
};

// 1' restricted to the truth set, plus (s,0) for every s outside it.
ProgramRelation test_to_program(const Test& e);
// 1' on X restricted to the truth set (the common restriction e^a = e^d).
Relation test_diagonal(const Test& e);
bool test_leq(const Test& a, const Test& b);
std::vector<Test> all_tests(const SpacePtr& space);

struct HoareTriple {
  Test pre;
  ProgramPtr prog;
  Test post;
};

// `{e} prog {f}` with element-set literals for the tests.
HoareTriple parse_triple(std::string_view text, const ProgramEnv& env);

struct Characterization {
  std::string name;
  bool value = false;
};

struct CorrectnessReport {
  bool value = false;
  std::vector<Characterization> characterizations;
};

// Each evaluates every characterization when self-checking is on and throws
// ConsistencyError if they disagree; otherwise only the definitional one.
CorrectnessReport check_partial(const HoareTriple& t, const ProgramEnv& env);
CorrectnessReport check_total(const HoareTriple& t, const ProgramEnv& env);
bool partially_correct(const HoareTriple& t, const ProgramEnv& env);
bool totally_correct(const HoareTriple& t, const ProgramEnv& env);

CorrectnessReport check_partial(const Test& e, const ProgramRelation& rho,
                                const Test& f);
CorrectnessReport check_total(const Test& e, const ProgramRelation& rho,
                              const Test& f);

enum class RefinementMode { algebraic, tests };

// Algebraic mode compares restrictions; test mode quantifies over every pair
// of tests. With self-checking on and |X| <= kRefinementCrossCheckLimit the
// algebraic result is cross-checked against the test mode.
inline constexpr std::size_t kRefinementCrossCheckLimit = 6;
bool partially_refines(const ProgramRelation& rho, const ProgramRelation& tau,
                       RefinementMode mode = RefinementMode::algebraic);
bool totally_refines(const ProgramRelation& rho, const ProgramRelation& tau,
                     RefinementMode mode = RefinementMode::algebraic);

}  // namespace relic

#endif  // RELIC_CORRECTNESS_HPP

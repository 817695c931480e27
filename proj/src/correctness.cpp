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

#include "relic/correctness.hpp"

#include "relic/config.hpp"
#include "relic/detail/scanner.hpp"
#include "relic/error.hpp"

namespace relic {

ProgramPtr ProgramAst::atom(std::string name, std::size_t offset) {
  auto p = std::make_shared<ProgramAst>();
  p->kind = Kind::Atom;
  p->name = std::move(name);
  p->offset = offset;
  return p;
}

ProgramPtr ProgramAst::skip() {
  auto p = std::make_shared<ProgramAst>();
  p->kind = Kind::Skip;
  return p;
}

ProgramPtr ProgramAst::abort() {
  auto p = std::make_shared<ProgramAst>();
  p->kind = Kind::Abort;
  return p;
}

ProgramPtr ProgramAst::seq(ProgramPtr l, ProgramPtr r) {
  auto p = std::make_shared<ProgramAst>();
  p->kind = Kind::Seq;
  p->offset = l->offset;
  p->left = std::move(l);
  p->right = std::move(r);
  return p;
}

ProgramPtr ProgramAst::choice(ProgramPtr l, ProgramPtr r) {
  auto p = std::make_shared<ProgramAst>();
  p->kind = Kind::Choice;
  p->offset = l->offset;
  p->left = std::move(l);
  p->right = std::move(r);
  return p;
}

bool operator==(const ProgramAst& a, const ProgramAst& b) {
  if (a.kind != b.kind || a.name != b.name) {
    return false;
  }
  if (a.kind == ProgramAst::Kind::Seq || a.kind == ProgramAst::Kind::Choice) {
    return *a.left == *b.left && *a.right == *b.right;
  }
  return true;
}

std::string to_string(const ProgramAst& p) {
  switch (p.kind) {
    case ProgramAst::Kind::Atom:
      return p.name;
    case ProgramAst::Kind::Skip:
      return "skip";
    case ProgramAst::Kind::Abort:
      return "abort";
    case ProgramAst::Kind::Seq:
      return "(" + to_string(*p.left) + " ; " + to_string(*p.right) + ")";
    case ProgramAst::Kind::Choice:
      return "(" + to_string(*p.left) + " | " + to_string(*p.right) + ")";
  }
  return {};
}

ProgramEnv ProgramEnv::from(const RelationEnv& env) {
  if (!env.space->has_fail()) {
    throw ValidationError("a program environment needs a fail element");
  }
  ProgramEnv out;
  out.space = env.space;
  for (auto const& [name, rel] : env.bindings) {
    if (name == "skip" || name == "abort") {
      throw ValidationError("'" + name + "' is a reserved program name");
    }
    try {
      out.atoms.emplace(name, ProgramRelation(rel));
    } catch (ValidationError const& e) {
      throw ValidationError("binding '" + name + "': " + e.what());
    }
  }
  return out;
}

namespace {

class ProgramParser {
 public:
  ProgramParser(detail::Scanner& in, const ProgramEnv* env)
      : in_(in), env_(env) {}

  ProgramPtr choice() {
    auto left = seq();
    while (in_.consume('|')) {
      left = ProgramAst::choice(std::move(left), seq());
    }
    return left;
  }

 private:
  ProgramPtr seq() {
    auto left = primary();
    while (in_.consume(';')) {
      left = ProgramAst::seq(std::move(left), primary());
    }
    return left;
  }

  ProgramPtr primary() {
    if (in_.consume('(')) {
      auto inner = choice();
      in_.expect(')');
      return inner;
    }
    auto const at = (in_.skip_ws(), in_.pos());
    auto const word = in_.name();
    if (word == "skip") {
      return ProgramAst::skip();
    }
    if (word == "abort") {
      return ProgramAst::abort();
    }
    if (env_ != nullptr && env_->atoms.find(word) == env_->atoms.end()) {
      in_.fail_at(at, "unknown program '" + std::string(word) + "'");
    }
    return ProgramAst::atom(std::string(word), at);
  }

  detail::Scanner& in_;
  const ProgramEnv* env_;
};

}  // namespace

ProgramPtr parse_program(std::string_view text, const ProgramEnv* env) {
  detail::Scanner in(text);
  auto p = ProgramParser(in, env).choice();
  if (!in.at_end()) {
    in.fail("unexpected input after program");
  }
  return p;
}

ProgramRelation denote(const ProgramAst& p, const ProgramEnv& env) {
  switch (p.kind) {
    case ProgramAst::Kind::Atom: {
      auto it = env.atoms.find(p.name);
      if (it == env.atoms.end()) {
        throw Error("unbound program '" + p.name + "'");
      }
      return it->second;
    }
    case ProgramAst::Kind::Skip:
      return skip_program(env.space);
    case ProgramAst::Kind::Abort:
      return abort_program(env.space);
    case ProgramAst::Kind::Seq:
      return seq(denote(*p.left, env), denote(*p.right, env));
    case ProgramAst::Kind::Choice:
      return choice(denote(*p.left, env), denote(*p.right, env));
  }
  throw Error("malformed program");
}

Test::Test(SpacePtr space, ElementSet truth)
    : space_(std::move(space)), truth_(truth) {
  if (!space_->has_fail()) {
    throw ValidationError("tests need a state space with a fail element");
  }
  if (!truth_.subset_of(ElementSet(space_->base_mask()))) {
    throw ValidationError("a test's truth set cannot contain the fail state");
  }
}

ProgramRelation test_to_program(const Test& e) {
  auto const& space = e.space_ptr();
  auto const f = bit(*space->fail_index());
  std::vector<Mask> rows(space->size());
  for (Index x = 0; x < rows.size(); ++x) {
    rows[x] = e.truth().contains(x) ? bit(x) : f;
  }
  return ProgramRelation(Relation(space, std::move(rows)));
}

Relation test_diagonal(const Test& e) {
  auto base = strip_fail(e.space_ptr());
  std::vector<Mask> rows(base->size());
  for (Index x = 0; x < rows.size(); ++x) {
    rows[x] = e.truth().contains(x) ? bit(x) : 0;
  }
  return Relation(std::move(base), std::move(rows));
}

bool test_leq(const Test& a, const Test& b) {
  if (!same_space(a.space_ptr(), b.space_ptr())) {
    throw SpaceMismatch();
  }
  bool const by_sets = a.truth().subset_of(b.truth());
  if (self_check_enabled()) {
    auto const pa = test_to_program(a);
    bool const by_algebra = seq(pa, test_to_program(b)) == pa;
    if (by_algebra != by_sets) {
      throw ConsistencyError("test order: truth-set inclusion and a;b = a "
                             "disagree");
    }
  }
  return by_sets;
}

std::vector<Test> all_tests(const SpacePtr& space) {
  std::vector<Test> out;
  auto const n = space->base_size();
  if (n > 20) {
    throw ValidationError("too many tests to enumerate");
  }
  for (Mask m = 0; m < (Mask{1} << n); ++m) {
    out.emplace_back(space, ElementSet(m));
  }
  return out;
}

HoareTriple parse_triple(std::string_view text, const ProgramEnv& env) {
  detail::Scanner in(text);
  auto pre = detail::scan_element_set(in, env.space);
  auto prog = ProgramParser(in, &env).choice();
  auto post = detail::scan_element_set(in, env.space);
  if (!in.at_end()) {
    in.fail("unexpected input after triple");
  }
  try {
    return HoareTriple{Test(env.space, pre), std::move(prog),
                       Test(env.space, post)};
  } catch (ValidationError const& e) {
    in.fail_at(0, e.what());
  }
}

namespace {

void require_same(const Test& e, const ProgramRelation& rho, const Test& f) {
  if (!same_space(e.space_ptr(), rho.space_ptr()) ||
      !same_space(f.space_ptr(), rho.space_ptr())) {
    throw SpaceMismatch();
  }
}

CorrectnessReport settle(const char* what,
                         std::vector<Characterization> parts) {
  CorrectnessReport out;
  out.value = parts.front().value;
  for (auto const& c : parts) {
    if (c.value != out.value) {
      std::string msg = std::string(what) + " characterisations disagree:";
      for (auto const& d : parts) {
        msg += " " + d.name + "=" + (d.value ? "true" : "false");
      }
      throw ConsistencyError(msg);
    }
  }
  out.characterizations = std::move(parts);
  return out;
}

bool partial_by_definition(const Test& e, const ProgramRelation& rho,
                           const Test& f) {
  auto const base = rho.space().base_mask();
  for (auto x : e.truth().members()) {
    if ((rho.rel().row(x) & base & ~f.truth().bits()) != 0) {
      return false;
    }
  }
  return true;
}

bool total_by_definition(const Test& e, const ProgramRelation& rho,
                         const Test& f) {
  auto const fail = bit(rho.fail());
  for (auto x : e.truth().members()) {
    auto const row = rho.rel().row(x);
    if ((row & fail) != 0 || (row & ~f.truth().bits()) != 0) {
      return false;
    }
  }
  return true;
}

// e * r * f = e * r and e <= D(r), with e and f on X.
bool total_demonic_form(const Relation& e, const Relation& r,
                        const Relation& f) {
  auto const er = compose_demonic(e, r);
  return compose_demonic(er, f) == er &&
         dom(e).subset_of(dom(r));
}

bool total_constellation_form(const Relation& e,
                              const std::vector<Relation>& chain,
                              const Relation& f) {
  std::optional<Relation> acc = e;
  for (auto const& r : chain) {
    acc = product_constellation(*acc, r);
    if (!acc) {
      return false;
    }
  }
  return product_constellation(*acc, f).has_value();
}

}  // namespace

CorrectnessReport check_partial(const Test& e, const ProgramRelation& rho,
                                const Test& f) {
  require_same(e, rho, f);
  std::vector<Characterization> parts;
  parts.push_back({"definition", partial_by_definition(e, rho, f)});
  if (self_check_enabled()) {
    auto const pe = test_to_program(e);
    auto const er = seq(pe, rho);
    parts.push_back({"ltrel0", seq(er, test_to_program(f)) == er});
    auto const ea = test_diagonal(e);
    auto const ear = compose_angelic(ea, restrict_angelic(rho));
    parts.push_back(
        {"angelic", compose_angelic(ear, test_diagonal(f)) == ear});
  }
  return settle("partial correctness", std::move(parts));
}

CorrectnessReport check_total(const Test& e, const ProgramRelation& rho,
                              const Test& f) {
  require_same(e, rho, f);
  std::vector<Characterization> parts;
  parts.push_back({"definition", total_by_definition(e, rho, f)});
  if (self_check_enabled()) {
    auto const ed = test_diagonal(e);
    auto const fd = test_diagonal(f);
    auto const rd = restrict_demonic(rho);
    parts.push_back({"demonic", total_demonic_form(ed, rd, fd)});
    parts.push_back({"constellation", total_constellation_form(ed, {rd}, fd)});
  }
  return settle("total correctness", std::move(parts));
}

CorrectnessReport check_partial(const HoareTriple& t, const ProgramEnv& env) {
  return check_partial(t.pre, denote(*t.prog, env), t.post);
}

CorrectnessReport check_total(const HoareTriple& t, const ProgramEnv& env) {
  auto const rho = denote(*t.prog, env);
  auto report = check_total(t.pre, rho, t.post);
  if (self_check_enabled() && t.prog->kind == ProgramAst::Kind::Seq) {
    // Sequenced programs: the demonic product of the parts' restrictions.
    auto const ed = test_diagonal(t.pre);
    auto const fd = test_diagonal(t.post);
    auto const r1 = restrict_demonic(denote(*t.prog->left, env));
    auto const r2 = restrict_demonic(denote(*t.prog->right, env));
    auto parts = report.characterizations;
    parts.push_back(
        {"sequenced-demonic", total_demonic_form(ed, compose_demonic(r1, r2), fd)});
    parts.push_back(
        {"sequenced-constellation", total_constellation_form(ed, {r1, r2}, fd)});
    report = settle("total correctness", std::move(parts));
  }
  return report;
}

bool partially_correct(const HoareTriple& t, const ProgramEnv& env) {
  return check_partial(t, env).value;
}

bool totally_correct(const HoareTriple& t, const ProgramEnv& env) {
  return check_total(t, env).value;
}

namespace {

template <typename Correct>
bool refines_by_tests(const ProgramRelation& rho, const ProgramRelation& tau,
                      Correct correct) {
  auto const tests = all_tests(rho.space_ptr());
  for (auto const& e : tests) {
    for (auto const& f : tests) {
      if (correct(e, tau, f) && !correct(e, rho, f)) {
        return false;
      }
    }
  }
  return true;
}

bool refine(const ProgramRelation& rho, const ProgramRelation& tau,
            RefinementMode mode, bool algebraic, auto correct,
            const char* what) {
  if (!same_space(rho.space_ptr(), tau.space_ptr())) {
    throw SpaceMismatch();
  }
  if (mode == RefinementMode::tests) {
    return refines_by_tests(rho, tau, correct);
  }
  if (self_check_enabled() &&
      rho.space().base_size() <= kRefinementCrossCheckLimit) {
    if (refines_by_tests(rho, tau, correct) != algebraic) {
      throw ConsistencyError(std::string(what) +
                             ": algebraic and test-quantification modes "
                             "disagree for " +
                             to_string(rho.rel()) + " and " +
                             to_string(tau.rel()));
    }
  }
  return algebraic;
}

}  // namespace

bool partially_refines(const ProgramRelation& rho, const ProgramRelation& tau,
                       RefinementMode mode) {
  bool const algebraic =
      mode == RefinementMode::algebraic &&
      subset(restrict_angelic(rho), restrict_angelic(tau));
  return refine(rho, tau, mode, algebraic, partial_by_definition,
                "partial refinement");
}

bool totally_refines(const ProgramRelation& rho, const ProgramRelation& tau,
                     RefinementMode mode) {
  bool const algebraic =
      mode == RefinementMode::algebraic &&
      refines_demonic(restrict_demonic(rho), restrict_demonic(tau));
  return refine(rho, tau, mode, algebraic, total_by_definition,
                "total refinement");
}

}  // namespace relic

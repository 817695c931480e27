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

#include "relic/law.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <random>
#include <set>
#include <thread>

#include "relic/detail/scanner.hpp"
#include "relic/error.hpp"
#include "relic/program.hpp"
#include "relic/relation_io.hpp"

namespace relic {

Term Term::var(std::string name) {
  Term t;
  t.kind = Kind::var;
  t.name = std::move(name);
  return t;
}

Term Term::make_const(TermConst c) {
  Term t;
  t.kind = Kind::constant;
  t.constant = c;
  return t;
}

Term Term::make_op(TermOp op, Term left, Term right) {
  Term t;
  t.kind = Kind::op;
  t.op = op;
  t.left = std::make_shared<const Term>(std::move(left));
  t.right = std::make_shared<const Term>(std::move(right));
  return t;
}

bool operator==(const Term& a, const Term& b) {
  if (a.kind != b.kind) {
    return false;
  }
  switch (a.kind) {
    case Term::Kind::var:
      return a.name == b.name;
    case Term::Kind::constant:
      return a.constant == b.constant;
    case Term::Kind::op:
      return a.op == b.op && *a.left == *b.left && *a.right == *b.right;
  }
  return false;
}

bool operator==(const Atom& a, const Atom& b) {
  return a.kind == b.kind && a.lhs == b.lhs &&
         (a.kind == AtomKind::exists || a.rhs == b.rhs);
}

bool operator==(const Formula& a, const Formula& b) {
  return a.antecedent == b.antecedent && a.consequent == b.consequent;
}

namespace {

void collect(const Term& t, std::vector<std::string>& out) {
  switch (t.kind) {
    case Term::Kind::var:
      if (std::find(out.begin(), out.end(), t.name) == out.end()) {
        out.push_back(t.name);
      }
      return;
    case Term::Kind::constant:
      return;
    case Term::Kind::op:
      collect(*t.left, out);
      collect(*t.right, out);
      return;
  }
}

}  // namespace

std::vector<std::string> Formula::variables() const {
  std::vector<std::string> out;
  for (auto const* side : {&antecedent, &consequent}) {
    for (auto const& a : *side) {
      collect(a.lhs, out);
      if (a.kind != AtomKind::exists) {
        collect(a.rhs, out);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Syntax

namespace {

constexpr std::pair<TermConst, std::string_view> kConstNames[] = {
    {TermConst::empty, "0e"},
    {TermConst::identity, "1'"},
    {TermConst::full, "nabla"},
    {TermConst::abort, "Z"},
};

constexpr std::pair<TermOp, std::string_view> kOpNames[] = {
    {TermOp::angelic, ";"},   {TermOp::demonic, "*"},
    {TermOp::cup, "cup"},     {TermOp::demonic_join, "dj"},
    {TermOp::constellation, "."},
};

bool reserved_word(std::string_view w) {
  return w == "cup" || w == "dj" || w == "ex" || w == "ref";
}

class FormulaParser {
 public:
  explicit FormulaParser(std::string_view text) : in_(text) {}

  Formula formula() {
    Formula f;
    auto first = conjunction();
    if (in_.consume("=>")) {
      f.antecedent = std::move(first);
      f.consequent = conjunction();
    } else {
      f.consequent = std::move(first);
    }
    finish();
    return f;
  }

  Term lone_term() {
    auto t = term();
    finish();
    return t;
  }

 private:
  void finish() {
    if (!in_.at_end()) {
      in_.fail("unexpected input");
    }
  }

  std::vector<Atom> conjunction() {
    std::vector<Atom> out;
    out.push_back(atom());
    while (in_.consume('&')) {
      out.push_back(atom());
    }
    return out;
  }

  Atom atom() {
    auto const save = (in_.skip_ws(), in_.pos());
    if (in_.consume("ex")) {
      if (in_.consume('(')) {
        Atom a{AtomKind::exists, term(), {}};
        in_.expect(')');
        return a;
      }
      in_.seek(save);
    }
    Atom a;
    a.lhs = term();
    if (in_.consume("ref<=")) {
      a.kind = AtomKind::refines;
    } else if (in_.consume("<=")) {
      a.kind = AtomKind::subset;
    } else if (in_.peek() == '=' && !in_.consume("=>")) {
      in_.consume('=');
      a.kind = AtomKind::equal;
    } else {
      in_.fail("expected '=', '<=' or 'ref<='");
    }
    a.rhs = term();
    return a;
  }

  std::optional<TermOp> peek_op() {
    auto const save = (in_.skip_ws(), in_.pos());
    for (auto const& [op, text] : kOpNames) {
      if (text.size() == 1 && in_.peek() == text[0]) {
        return op;
      }
    }
    if (detail::Scanner::name_char(in_.peek())) {
      auto const w = in_.name();
      in_.seek(save);
      for (auto const& [op, text] : kOpNames) {
        if (w == text) {
          return op;
        }
      }
    }
    return std::nullopt;
  }

  void take_op(TermOp op) {
    for (auto const& [o, text] : kOpNames) {
      if (o == op) {
        in_.consume(text);
      }
    }
  }

  Term term() {
    auto left = primary();
    std::optional<TermOp> seen;
    while (auto op = peek_op()) {
      auto const at = in_.pos();
      if (seen && *seen != *op) {
        in_.fail_at(at, "different operators need parentheses");
      }
      seen = op;
      take_op(*op);
      left = Term::make_op(*op, std::move(left), primary());
    }
    return left;
  }

  Term primary() {
    if (in_.consume('(')) {
      auto t = term();
      in_.expect(')');
      return t;
    }
    auto const at = (in_.skip_ws(), in_.pos());
    if (!detail::Scanner::name_char(in_.peek())) {
      in_.fail("expected a term");
    }
    auto const w = in_.name();
    for (auto const& [c, text] : kConstNames) {
      if (w == text) {
        return Term::make_const(c);
      }
    }
    if (reserved_word(w)) {
      in_.fail_at(at, "'" + std::string(w) + "' is a reserved word");
    }
    return Term::var(std::string(w));
  }

  detail::Scanner in_;
};

std::string_view op_text(TermOp op) {
  for (auto const& [o, text] : kOpNames) {
    if (o == op) {
      return text;
    }
  }
  return "?";
}

}  // namespace

Formula parse_formula(std::string_view text) {
  return FormulaParser(text).formula();
}

Term parse_term(std::string_view text) {
  return FormulaParser(text).lone_term();
}

std::string to_string(const Term& t) {
  switch (t.kind) {
    case Term::Kind::var:
      return t.name;
    case Term::Kind::constant:
      for (auto const& [c, text] : kConstNames) {
        if (c == t.constant) {
          return std::string(text);
        }
      }
      return "?";
    case Term::Kind::op:
      return "(" + to_string(*t.left) + " " + std::string(op_text(t.op)) +
             " " + to_string(*t.right) + ")";
  }
  return "?";
}

std::string to_string(const Atom& a) {
  switch (a.kind) {
    case AtomKind::equal:
      return to_string(a.lhs) + " = " + to_string(a.rhs);
    case AtomKind::subset:
      return to_string(a.lhs) + " <= " + to_string(a.rhs);
    case AtomKind::refines:
      return to_string(a.lhs) + " ref<= " + to_string(a.rhs);
    case AtomKind::exists:
      return "ex(" + to_string(a.lhs) + ")";
  }
  return "?";
}

namespace {

std::string join_atoms(const std::vector<Atom>& atoms) {
  std::string out;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    out += (i ? " & " : "") + to_string(atoms[i]);
  }
  return out;
}

std::vector<Atom> sorted_unique(std::vector<Atom> atoms) {
  std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) {
    return to_string(a) < to_string(b);
  });
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
  return atoms;
}

}  // namespace

std::string to_string(const Formula& f) {
  if (f.antecedent.empty()) {
    return join_atoms(f.consequent);
  }
  return join_atoms(f.antecedent) + " => " + join_atoms(f.consequent);
}

Formula normalize(const Formula& f) {
  return Formula{sorted_unique(f.antecedent), sorted_unique(f.consequent)};
}

// ---------------------------------------------------------------------------
// Evaluation

std::optional<Relation> eval_term(const Term& t, const Assignment& env,
                                  const SpacePtr& space) {
  switch (t.kind) {
    case Term::Kind::var: {
      auto it = env.find(t.name);
      if (it == env.end()) {
        throw ValidationError("variable '" + t.name + "' is not assigned");
      }
      if (!same_space(it->second.space_ptr(), space)) {
        throw SpaceMismatch();
      }
      return it->second;
    }
    case Term::Kind::constant:
      switch (t.constant) {
        case TermConst::empty:
          return empty_relation(space);
        case TermConst::identity:
          return diagonal(space);
        case TermConst::full:
          return full(space);
        case TermConst::abort:
          if (!space->has_fail()) {
            throw ValidationError("Z needs a carrier with a fail element");
          }
          return abort_program(space).rel();
      }
      break;
    case Term::Kind::op: {
      auto l = eval_term(*t.left, env, space);
      auto r = eval_term(*t.right, env, space);
      if (!l || !r) {
        return std::nullopt;
      }
      switch (t.op) {
        case TermOp::angelic:
          return compose_angelic(*l, *r);
        case TermOp::demonic:
          return compose_demonic(*l, *r);
        case TermOp::cup:
          return unite(*l, *r);
        case TermOp::demonic_join:
          return join_demonic(*l, *r);
        case TermOp::constellation:
          return product_constellation(*l, *r);
      }
    }
  }
  return std::nullopt;
}

bool eval_atom(const Atom& a, const Assignment& env, const SpacePtr& space) {
  auto l = eval_term(a.lhs, env, space);
  if (a.kind == AtomKind::exists) {
    return l.has_value();
  }
  auto r = eval_term(a.rhs, env, space);
  if (!l || !r) {
    return false;
  }
  switch (a.kind) {
    case AtomKind::equal:
      return *l == *r;
    case AtomKind::subset:
      return subset(*l, *r);
    case AtomKind::refines:
      return refines_demonic(*l, *r);
    case AtomKind::exists:
      break;
  }
  return false;
}

bool eval_formula(const Formula& f, const Assignment& env,
                  const SpacePtr& space) {
  for (auto const& a : f.antecedent) {
    if (!eval_atom(a, env, space)) {
      return true;
    }
  }
  for (auto const& a : f.consequent) {
    if (!eval_atom(a, env, space)) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Domains

namespace {

constexpr std::pair<Domain, std::string_view> kDomainNames[] = {
    {Domain::rel, "REL"},
    {Domain::ltrel, "LTREL"},
    {Domain::total, "TOTAL"},
    {Domain::ltrel0, "LTREL0"},
};

bool member_of(Domain d, const Relation& r) {
  switch (d) {
    case Domain::rel:
      return true;
    case Domain::ltrel:
      return is_left_total(r);
    case Domain::total:
      return is_total(r);
    case Domain::ltrel0:
      return is_in_ltrel0(r);
  }
  return false;
}

// Carriers up to this size can be listed exhaustively.
constexpr std::size_t kListableCarrier = 4;

Relation random_member(Domain d, const SpacePtr& space, std::mt19937_64& rng) {
  auto const n = space->size();
  auto const mask = space->full_mask();
  for (;;) {
    std::vector<Mask> rows(n);
    for (auto& row : rows) {
      do {
        row = rng() & mask;
      } while (d != Domain::rel && row == 0);
    }
    if (d == Domain::ltrel0) {
      auto const fail = *space->fail_index();
      rows[fail] = bit(fail);
    }
    Relation r(space, std::move(rows));
    if (member_of(d, r)) {
      return r;
    }
  }
}

}  // namespace

std::string_view to_string(Domain d) {
  for (auto const& [k, name] : kDomainNames) {
    if (k == d) {
      return name;
    }
  }
  return "?";
}

std::optional<Domain> domain_from(std::string_view name) {
  for (auto const& [k, n] : kDomainNames) {
    if (n == name) {
      return k;
    }
  }
  return std::nullopt;
}

SpacePtr domain_space(Domain d, std::size_t size) {
  return StateSpace::numbered(size, d == Domain::ltrel0);
}

std::vector<Relation> domain_members(Domain d, const SpacePtr& space) {
  if (space->size() > kListableCarrier) {
    throw BudgetExceeded("cannot list every relation on " +
                         std::to_string(space->size()) +
                         " points; use random mode");
  }
  switch (d) {
    case Domain::rel:
      return all_relations(space);
    case Domain::ltrel:
      return left_total_relations(space);
    case Domain::total:
      return total_relations(space);
    case Domain::ltrel0:
      return ltrel0_relations(space);
  }
  return {};
}

// ---------------------------------------------------------------------------
// Validity

namespace {

constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();

// m^k, or kNone on overflow.
std::uint64_t power(std::uint64_t m, std::size_t k) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (m != 0 && out > kNone / m) {
      return kNone;
    }
    out *= m;
  }
  return out;
}

Assignment decode(std::uint64_t index, const std::vector<std::string>& vars,
                  const std::vector<Relation>& members) {
  Assignment env;
  auto const m = members.size();
  for (std::size_t i = vars.size(); i-- > 0;) {
    env.insert_or_assign(vars[i], members[index % m]);
    index /= m;
  }
  return env;
}

// Smallest failing index in [0, total), or kNone.
std::uint64_t first_failure(const Formula& f, const SpacePtr& space,
                            const std::vector<std::string>& vars,
                            const std::vector<Relation>& members,
                            std::uint64_t total, unsigned workers) {
  workers = std::max(1U, std::min<unsigned>(workers, unsigned(std::min<
                                                         std::uint64_t>(
                                                         total, 1024))));
  std::atomic<std::uint64_t> best{kNone};
  std::vector<std::exception_ptr> errors(workers);
  auto scan = [&](unsigned w) {
    try {
      auto const lo = total / workers * w;
      auto const hi = w + 1 == workers ? total : total / workers * (w + 1);
      if (lo >= hi) {
        return;
      }
      // Odometer over the member indices, last variable fastest.
      auto const m = members.size();
      std::vector<std::size_t> digit(vars.size());
      auto rest = lo;
      for (std::size_t v = vars.size(); v-- > 0;) {
        digit[v] = rest % m;
        rest /= m;
      }
      auto env = decode(lo, vars, members);
      for (auto i = lo; i < hi && i < best.load(); ++i) {
        if (i != lo) {
          for (std::size_t v = vars.size(); v-- > 0;) {
            digit[v] = (digit[v] + 1) % m;
            env.find(vars[v])->second = members[digit[v]];
            if (digit[v] != 0) {
              break;
            }
          }
        }
        if (!eval_formula(f, env, space)) {
          auto cur = best.load();
          while (i < cur && !best.compare_exchange_weak(cur, i)) {
          }
          return;
        }
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    scan(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back(scan, w);
    }
    for (auto& t : pool) {
      t.join();
    }
  }
  for (auto& e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
  return best.load();
}

Assignment minimize(const Formula& f, Domain d, const SpacePtr& space,
                    Assignment env) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& [name, rel] : env) {
      for (auto [x, y] : rel.pairs()) {
        auto trial = rel;
        trial.erase(x, y);
        if (!member_of(d, trial)) {
          continue;
        }
        auto saved = rel;
        rel = trial;
        if (eval_formula(f, env, space)) {
          rel = saved;
        } else {
          changed = true;
        }
      }
    }
  }
  return env;
}

}  // namespace

Verdict check_validity(const Formula& f, Domain domain,
                       const std::vector<std::size_t>& sizes,
                       const ValidityOptions& options) {
  auto const vars = f.variables();
  Verdict verdict;
  auto found = [&](const SpacePtr& space, Assignment env) {
    if (options.minimize) {
      env = minimize(f, domain, space, std::move(env));
    }
    if (eval_formula(f, env, space)) {
      throw ConsistencyError("counterexample does not replay: " +
                             to_string(f));
    }
    verdict.valid = false;
    verdict.counterexample = Counterexample{space, std::move(env)};
  };

  if (options.mode == ValidityOptions::Mode::exhaustive) {
    std::vector<std::pair<SpacePtr, std::vector<Relation>>> plan;
    std::uint64_t cost = 0;
    for (auto n : sizes) {
      auto space = domain_space(domain, n);
      auto members = domain_members(domain, space);
      auto const total = power(members.size(), vars.size());
      if (total == kNone || cost + total > options.budget) {
        throw BudgetExceeded(
            "exhaustive search needs more than " +
            std::to_string(options.budget) +
            " instances; use random mode or a smaller size");
      }
      cost += total;
      plan.emplace_back(std::move(space), std::move(members));
    }
    for (auto const& [space, members] : plan) {
      auto const total = power(members.size(), vars.size());
      auto const bad =
          first_failure(f, space, vars, members, total, options.workers);
      if (bad != kNone) {
        verdict.instances += bad + 1;
        found(space, decode(bad, vars, members));
        return verdict;
      }
      verdict.instances += total;
    }
    return verdict;
  }

  if (options.samples * sizes.size() > options.budget) {
    throw BudgetExceeded("sample count exceeds the budget");
  }
  for (auto n : sizes) {
    auto space = domain_space(domain, n);
    std::seed_seq seq{std::uint32_t(options.seed),
                      std::uint32_t(options.seed >> 32), std::uint32_t(n)};
    std::mt19937_64 rng(seq);
    for (std::uint64_t i = 0; i < options.samples; ++i) {
      Assignment env;
      for (auto const& v : vars) {
        env.insert_or_assign(v, random_member(domain, space, rng));
      }
      ++verdict.instances;
      if (!eval_formula(f, env, space)) {
        found(space, std::move(env));
        return verdict;
      }
    }
  }
  return verdict;
}

std::string to_string(const Counterexample& c) {
  std::string out = space_decl(*c.space);
  for (auto const& [name, rel] : c.assignment) {
    out += "\n" + name + " = " + to_string(rel);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Presets

std::string restricted_monotonicity_law(std::size_t n) {
  if (n == 0) {
    throw ValidationError("the restricted monotonicity law needs n >= 1");
  }
  auto s = [](std::size_t i) { return "s" + std::to_string(i); };
  std::string out = s(0) + " <= " + s(n);
  for (std::size_t i = 0; i < n; ++i) {
    out += " & " + s(i) + " <= (" + s(i + 1) + " * t)";
  }
  return out + " => (" + s(0) + " * t) <= (" + s(n) + " * t)";
}

std::string existence_family_law(std::size_t n) {
  if (n == 0) {
    throw ValidationError("the existence family needs n >= 1");
  }
  auto chain = [&](const std::string& head) {
    std::string t = "(x . " + head + ")";
    for (std::size_t i = 1; i <= n; ++i) {
      t = "(" + t + " . u" + std::to_string(i) + ")";
    }
    return t;
  };
  return "s ref<= t & ex(" + chain("t") + ") => ex(" + chain("s") + ")";
}

namespace {

using Mode = ValidityOptions::Mode;

PresetSuite demonic_inclusion() {
  return {"demonic-inclusion",
          {
              {"associativity", "((a * b) * c) = (a * (b * c))", Domain::rel,
               {2}, Expectation::valid},
              {"right-monotonicity", "t1 <= t2 => (s * t1) <= (s * t2)",
               Domain::rel, {2}, Expectation::valid},
              {"left-monotonicity", "s0 <= s1 => (s0 * t) <= (s1 * t)",
               Domain::rel, {2}, Expectation::counterexample},
              {"restricted-left-monotonicity",
               "s0 <= s1 & s0 <= (s1 * t) => (s0 * t) <= (s1 * t)",
               Domain::rel, {2}, Expectation::valid},
          }};
}

PresetSuite restricted_monotonicity(std::size_t k) {
  PresetSuite suite{"restricted-monotonicity", {}};
  for (std::size_t n = 1; n <= k; ++n) {
    suite.laws.push_back({"restricted-monotonicity-" + std::to_string(n),
                          restricted_monotonicity_law(n), Domain::rel, {2},
                          Expectation::valid});
  }
  return suite;
}

PresetSuite identity_below() {
  auto const law = "s <= 1' => s = 1'";
  return {"identity-below",
          {
              {"left-total", law, Domain::ltrel, {2, 3}, Expectation::valid},
              {"programs", law, Domain::ltrel0, {2}, Expectation::valid},
              {"all-relations", law, Domain::rel, {2},
               Expectation::counterexample},
          }};
}

std::vector<PresetLaw> semiring_laws(const std::string& tag,
                                     const std::string& mul,
                                     const std::string& add) {
  auto m = [&](const std::string& a, const std::string& b) {
    return "(" + a + " " + mul + " " + b + ")";
  };
  auto p = [&](const std::string& a, const std::string& b) {
    return "(" + a + " " + add + " " + b + ")";
  };
  auto law = [&](std::string name, std::string text) {
    return PresetLaw{tag + "-" + std::move(name), std::move(text), Domain::rel,
                     {2}, Expectation::valid};
  };
  return {
      law("mul-associative",
          m(m("a", "b"), "c") + " = " + m("a", m("b", "c"))),
      law("add-associative",
          p(p("a", "b"), "c") + " = " + p("a", p("b", "c"))),
      law("add-commutative", p("a", "b") + " = " + p("b", "a")),
      law("add-idempotent", p("a", "a") + " = a"),
      law("distributive",
          m(p("a", "b"), p("c", "d")) + " = " +
              p(p(p(m("a", "c"), m("a", "d")), m("b", "c")), m("b", "d"))),
  };
}

PresetSuite semiring() {
  PresetSuite suite{"semiring", semiring_laws("demonic", "*", "dj")};
  for (auto& l : semiring_laws("angelic", ";", "cup")) {
    suite.laws.push_back(std::move(l));
  }
  return suite;
}

PresetSuite zero_union() {
  return {"zero-union",
          {
              {"empty", "(x cup 0e) = x", Domain::rel, {2},
               Expectation::valid},
              {"abort", "(x cup Z) = x", Domain::ltrel0, {2},
               Expectation::counterexample},
          }};
}

PresetSuite existence_family(std::size_t k) {
  PresetSuite suite{"existence-family", {}};
  for (std::size_t n = 1; n <= k; ++n) {
    // 16 relations on two points, n + 3 variables.
    auto const mode =
        power(16, n + 3) <= kDefaultBudget ? Mode::exhaustive : Mode::random;
    suite.laws.push_back({"existence-family-" + std::to_string(n),
                          existence_family_law(n), Domain::rel, {2},
                          Expectation::valid, mode});
  }
  return suite;
}

}  // namespace

std::vector<PresetSuite> preset_suites(std::size_t family_size) {
  return {demonic_inclusion(),
          restricted_monotonicity(family_size),
          identity_below(),
          semiring(),
          zero_union(),
          existence_family(family_size)};
}

std::optional<PresetSuite> preset_suite(std::string_view name,
                                        std::size_t family_size) {
  for (auto& s : preset_suites(family_size)) {
    if (s.name == name) {
      return s;
    }
  }
  return std::nullopt;
}

}  // namespace relic

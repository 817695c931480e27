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

#include "relic/relation_io.hpp"

#include <optional>

#include "relic/detail/scanner.hpp"
#include "relic/error.hpp"

namespace relic {

namespace detail {

namespace {

Index scan_element(Scanner& in, const SpacePtr& space) {
  auto const at = (in.skip_ws(), in.pos());
  auto const n = in.name();
  auto idx = space->index_of(n);
  if (!idx) {
    in.fail_at(at, "unknown element '" + std::string(n) + "'");
  }
  return *idx;
}

}  // namespace

SpacePtr scan_space_decl(Scanner& in) {
  if (!in.consume("space")) {
    in.fail("expected 'space'");
  }
  in.name();  // the carrier's own label is informational
  in.expect('=');
  in.expect('{');
  std::vector<std::string> names;
  if (!in.consume('}')) {
    do {
      names.emplace_back(in.name());
    } while (in.consume(','));
    in.expect('}');
  }
  auto const at = in.pos();
  std::optional<Index> fail;
  if (in.consume("fail")) {
    auto const fail_at = (in.skip_ws(), in.pos());
    auto const f = in.name();
    if (f != kFailName) {
      in.fail_at(fail_at, "the fail element must be named '0'");
    }
    names.emplace_back(f);
    fail = names.size() - 1;
  }
  try {
    return StateSpace::make(std::move(names), fail);
  } catch (ValidationError const& e) {
    in.fail_at(at, e.what());
  }
}

Relation scan_relation(Scanner& in, const SpacePtr& space) {
  Relation out(space);
  in.expect('{');
  if (in.consume('}')) {
    return out;
  }
  do {
    in.expect('(');
    auto x = scan_element(in, space);
    in.expect(',');
    auto y = scan_element(in, space);
    in.expect(')');
    out.insert(x, y);
  } while (in.consume(','));
  in.expect('}');
  return out;
}

ElementSet scan_element_set(Scanner& in, const SpacePtr& space) {
  ElementSet out;
  in.expect('{');
  if (in.consume('}')) {
    return out;
  }
  do {
    out.insert(scan_element(in, space));
  } while (in.consume(','));
  in.expect('}');
  return out;
}

}  // namespace detail

namespace {

template <typename F>
auto parse_whole(std::string_view text, F&& f) {
  detail::Scanner in(text);
  auto result = f(in);
  if (!in.at_end()) {
    in.fail("unexpected trailing input");
  }
  return result;
}

}  // namespace

SpacePtr parse_space_decl(std::string_view text) {
  return parse_whole(text, [](auto& in) { return detail::scan_space_decl(in); });
}

Relation parse_relation(std::string_view text, const SpacePtr& space) {
  return parse_whole(
      text, [&](auto& in) { return detail::scan_relation(in, space); });
}

ElementSet parse_element_set(std::string_view text, const SpacePtr& space) {
  return parse_whole(
      text, [&](auto& in) { return detail::scan_element_set(in, space); });
}

std::string to_string(const Relation& r) {
  std::string out = "{";
  bool first = true;
  for (auto [x, y] : r.pairs()) {
    if (!first) {
      out += ',';
    }
    first = false;
    out += '(';
    out += r.space().name(x);
    out += ',';
    out += r.space().name(y);
    out += ')';
  }
  out += '}';
  return out;
}

std::string to_string(ElementSet set, const StateSpace& space) {
  std::string out = "{";
  bool first = true;
  for (auto i : set.members()) {
    if (!first) {
      out += ',';
    }
    first = false;
    out += space.name(i);
  }
  out += '}';
  return out;
}

std::string space_decl(const StateSpace& space, std::string_view name) {
  std::string out = "space ";
  out += name;
  out += " = {";
  for (Index i = 0; i < space.base_size(); ++i) {
    if (i > 0) {
      out += ',';
    }
    out += space.name(i);
  }
  out += '}';
  if (space.has_fail()) {
    out += " fail ";
    out += space.name(*space.fail_index());
  }
  return out;
}

const Relation* RelationEnv::find(std::string_view name) const {
  for (auto const& [n, r] : bindings) {
    if (n == name) {
      return &r;
    }
  }
  return nullptr;
}

RelationEnv parse_env(std::string_view text) {
  detail::Scanner in(text);
  RelationEnv env;
  env.space = detail::scan_space_decl(in);
  while (!in.at_end()) {
    auto const at = in.pos();
    std::string name(in.name());
    if (env.find(name) != nullptr) {
      in.fail_at(at, "duplicate binding '" + name + "'");
    }
    in.expect('=');
    env.bindings.emplace_back(name, detail::scan_relation(in, env.space));
  }
  return env;
}

std::string to_string(const RelationEnv& env) {
  std::string out = space_decl(*env.space);
  out += '\n';
  for (auto const& [name, r] : env.bindings) {
    out += name;
    out += " = ";
    out += to_string(r);
    out += '\n';
  }
  return out;
}

}  // namespace relic

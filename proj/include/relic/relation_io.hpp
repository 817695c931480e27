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

#ifndef RELIC_RELATION_IO_HPP
#define RELIC_RELATION_IO_HPP

// Text formats for carriers and relations:
//
//   space X = {1,2,3} fail 0      # fail clause optional, 0 is appended last
//   {(1,2),(2,2)}                 # relation literal using element names
//   {1,3}                         # element set
//   name = {(1,1)}                # binding line in an environment file

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "relic/relation.hpp"

namespace relic {

SpacePtr parse_space_decl(std::string_view text);
Relation parse_relation(std::string_view text, const SpacePtr& space);
ElementSet parse_element_set(std::string_view text, const SpacePtr& space);

std::string to_string(const Relation& r);
std::string to_string(ElementSet set, const StateSpace& space);
std::string space_decl(const StateSpace& space, std::string_view name = "X");

struct RelationEnv {
  SpacePtr space;
  std::vector<std::pair<std::string, Relation>> bindings;

  const Relation* find(std::string_view name) const;
};

// First non-comment line is a space declaration, followed by `name = {...}`
// lines. Duplicate names are rejected.
RelationEnv parse_env(std::string_view text);
std::string to_string(const RelationEnv& env);

namespace detail {
class Scanner;
SpacePtr scan_space_decl(Scanner& in);
Relation scan_relation(Scanner& in, const SpacePtr& space);
ElementSet scan_element_set(Scanner& in, const SpacePtr& space);
}  // namespace detail

}  // namespace relic

#endif  // RELIC_RELATION_IO_HPP

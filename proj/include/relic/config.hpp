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

#ifndef RELIC_CONFIG_HPP
#define RELIC_CONFIG_HPP

namespace relic {

// Process-wide switch for the redundant cross-checks (both forms of demonic
// composition, the several correctness characterisations). On by default.
bool self_check_enabled() noexcept;
void set_self_check(bool enabled) noexcept;

}  // namespace relic

#endif  // RELIC_CONFIG_HPP

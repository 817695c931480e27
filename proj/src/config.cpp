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

#include "relic/config.hpp"
#include "relic/error.hpp"

#include <atomic>

namespace relic {

namespace {
std::atomic<bool> g_self_check{true};
}

bool self_check_enabled() noexcept {
  return g_self_check.load(std::memory_order_relaxed);
}

void set_self_check(bool enabled) noexcept {
  g_self_check.store(enabled, std::memory_order_relaxed);
}

ParseError make_parse_error(std::string message, std::string_view text,
                            std::size_t offset) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return ParseError(std::move(message), offset, line, column);
}

}  // namespace relic

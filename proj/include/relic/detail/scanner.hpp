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

#ifndef RELIC_DETAIL_SCANNER_HPP
#define RELIC_DETAIL_SCANNER_HPP

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>

#include "relic/error.hpp"

namespace relic::detail {

// Cursor over a text buffer shared by the small hand-written parsers.
class Scanner {
 public:
  explicit Scanner(std::string_view text, std::size_t start = 0)
      : text_(text), pos_(start) {}

  std::string_view text() const noexcept { return text_; }
  std::size_t pos() const noexcept { return pos_; }
  void seek(std::size_t pos) noexcept { pos_ = pos; }

  void skip_ws() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') {
          ++pos_;
        }
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool consume(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool consume(std::string_view word) {
    skip_ws();
    if (text_.substr(pos_, word.size()) == word) {
      pos_ += word.size();
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!consume(c)) {
      fail(std::string("expected '") + c + "'");
    }
  }

  // Run of characters that may appear in element and variable names.
  static bool name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
           c == '\'' || c == '-' || c == '+';
  }

  std::string_view name() {
    skip_ws();
    auto const start = pos_;
    while (pos_ < text_.size() && name_char(text_[pos_])) {
      ++pos_;
    }
    if (start == pos_) {
      fail("expected a name");
    }
    return text_.substr(start, pos_ - start);
  }

  [[noreturn]] void fail(std::string message) const {
    throw make_parse_error(std::move(message), text_, pos_);
  }
  [[noreturn]] void fail_at(std::size_t pos, std::string message) const {
    throw make_parse_error(std::move(message), text_, pos);
  }

 private:
  std::string_view text_;
  std::size_t pos_;
};

}  // namespace relic::detail

#endif  // RELIC_DETAIL_SCANNER_HPP

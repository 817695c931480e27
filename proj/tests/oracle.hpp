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

#ifndef RELIC_TESTS_ORACLE_HPP
#define RELIC_TESTS_ORACLE_HPP

// Reference implementations over plain sets of pairs. These deliberately
// share no code with the bitmask library so that tests compare two
// independent evaluations.

#include <cstddef>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "relic/relation.hpp"

namespace oracle {

using P = std::pair<std::size_t, std::size_t>;
using Rel = std::set<P>;
using Set = std::set<std::size_t>;

inline Rel of(const relic::Relation& r) {
  Rel out;
  for (std::size_t x = 0; x < r.carrier_size(); ++x) {
    for (std::size_t y = 0; y < r.carrier_size(); ++y) {
      if (r.contains(x, y)) {
        out.insert({x, y});
      }
    }
  }
  return out;
}

inline relic::Relation to(const Rel& r, const relic::SpacePtr& space) {
  relic::Relation out(space);
  for (auto [x, y] : r) {
    out.insert(x, y);
  }
  return out;
}

inline Set dom(const Rel& s) {
  Set out;
  for (auto [x, y] : s) {
    out.insert(x);
  }
  return out;
}

inline Set ran(const Rel& s) {
  Set out;
  for (auto [x, y] : s) {
    out.insert(y);
  }
  return out;
}

inline bool subset(const Set& a, const Set& b) {
  for (auto x : a) {
    if (!b.count(x)) {
      return false;
    }
  }
  return true;
}

inline bool subset(const Rel& a, const Rel& b) {
  for (auto const& p : a) {
    if (!b.count(p)) {
      return false;
    }
  }
  return true;
}

inline Rel angelic(const Rel& s, const Rel& t) {
  Rel out;
  for (auto [x, z] : s) {
    for (auto [z2, y] : t) {
      if (z == z2) {
        out.insert({x, y});
      }
    }
  }
  return out;
}

// Quantifier form: exists z with (x,z) in s, (z,y) in t, and every
// s-successor w of x has some t-successor.
inline Rel demonic(const Rel& s, const Rel& t, std::size_t n) {
  Rel out;
  for (std::size_t x = 0; x < n; ++x) {
    bool all_continue = true;
    for (std::size_t w = 0; w < n; ++w) {
      if (!s.count({x, w})) {
        continue;
      }
      bool some = false;
      for (std::size_t v = 0; v < n; ++v) {
        some = some || t.count({w, v}) > 0;
      }
      all_continue = all_continue && some;
    }
    if (!all_continue) {
      continue;
    }
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t z = 0; z < n; ++z) {
        if (s.count({x, z}) && t.count({z, y})) {
          out.insert({x, y});
        }
      }
    }
  }
  return out;
}

inline Rel restrict_dom(const Rel& s, const Set& d) {
  Rel out;
  for (auto p : s) {
    if (d.count(p.first)) {
      out.insert(p);
    }
  }
  return out;
}

inline bool refines(const Rel& s, const Rel& t) {
  return subset(dom(t), dom(s)) && subset(restrict_dom(s, dom(t)), t);
}

inline Rel join_demonic(const Rel& s, const Rel& t) {
  Rel out;
  auto ds = dom(s);
  auto dt = dom(t);
  for (auto p : s) {
    if (dt.count(p.first)) {
      out.insert(p);
    }
  }
  for (auto p : t) {
    if (ds.count(p.first)) {
      out.insert(p);
    }
  }
  return out;
}

inline Rel unite(const Rel& s, const Rel& t) {
  Rel out = s;
  out.insert(t.begin(), t.end());
  return out;
}

inline std::optional<Rel> constellation(const Rel& s, const Rel& t) {
  if (!subset(ran(s), dom(t))) {
    return std::nullopt;
  }
  return angelic(s, t);
}

inline Rel diag(std::size_t n) {
  Rel out;
  for (std::size_t x = 0; x < n; ++x) {
    out.insert({x, x});
  }
  return out;
}

inline Rel full(std::size_t n) {
  Rel out;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      out.insert({x, y});
    }
  }
  return out;
}

// Every relation on n points, in an order independent from the library's.
inline std::vector<Rel> all(std::size_t n) {
  std::vector<P> cells;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      cells.push_back({x, y});
    }
  }
  std::vector<Rel> out;
  for (std::size_t m = 0; m < (std::size_t{1} << cells.size()); ++m) {
    Rel r;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if ((m >> i) & 1U) {
        r.insert(cells[i]);
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

// Members of Ltrel0 on n points where index n-1 is the fail state.
inline bool in_ltrel0(const Rel& r, std::size_t n) {
  std::size_t const f = n - 1;
  for (std::size_t x = 0; x < n; ++x) {
    bool has = false;
    for (std::size_t y = 0; y < n; ++y) {
      has = has || r.count({x, y}) > 0;
    }
    if (!has) {
      return false;
    }
  }
  for (std::size_t y = 0; y < n; ++y) {
    if (r.count({f, y}) != (y == f ? 1U : 0U)) {
      return false;
    }
  }
  return true;
}

inline std::vector<Rel> all_ltrel0(std::size_t n) {
  std::vector<Rel> out;
  for (auto& r : all(n)) {
    if (in_ltrel0(r, n)) {
      out.push_back(r);
    }
  }
  return out;
}

}  // namespace oracle

#endif  // RELIC_TESTS_ORACLE_HPP

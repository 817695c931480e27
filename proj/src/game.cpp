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

#include "relic/game.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <random>
#include <sstream>
#include <tuple>
#include <unordered_map>

#include "relic/error.hpp"

namespace relic::game {

namespace {

constexpr char kT = 0;

char s_letter(std::size_t i) { return char(i + 1); }

// Index of s_i for a letter, or -1 for t.
int s_index(char c) { return int(std::uint8_t(c)) - 1; }

void check_letters(std::size_t n, const AnWord& w) {
  for (char c : w) {
    if (std::size_t(std::uint8_t(c)) > n + 1) {
      throw ValidationError("letter outside the alphabet of A_" +
                            std::to_string(n));
    }
  }
}

// The words b with a < b.
std::vector<AnWord> successors(std::size_t n, const AnWord& a) {
  std::vector<AnWord> out;
  if (a.empty() || a.back() == kT) {
    return out;
  }
  auto const i = std::size_t(s_index(a.back()));
  auto const prefix = a.substr(0, a.size() - 1);
  if (i == 0) {
    out.push_back(prefix + s_letter(n));
  }
  if (i < n) {
    out.push_back(prefix + s_letter(i + 1) + kT);
  }
  return out;
}

}  // namespace

// --- A_n --------------------------------------------------------------------

AnWord an_word(std::size_t n, std::string_view text) {
  AnWord out;
  std::size_t i = 0;
  auto fail = [&](std::string msg) {
    throw make_parse_error(std::move(msg), text, i);
  };
  while (i < text.size()) {
    char const c = text[i];
    if (std::isspace(std::uint8_t(c)) || c == '.') {
      ++i;
    } else if (c == 't') {
      out += kT;
      ++i;
    } else if (c == 's') {
      std::size_t j = i + 1;
      std::size_t v = 0;
      while (j < text.size() && std::isdigit(std::uint8_t(text[j]))) {
        v = v * 10 + std::size_t(text[j] - '0');
        if (v > kMaxAnParameter) {
          fail("letter index too large");
        }
        ++j;
      }
      if (j == i + 1) {
        fail("expected a digit after s");
      }
      if (v > n) {
        fail("letter s" + std::to_string(v) + " outside the alphabet of A_" +
             std::to_string(n));
      }
      out += s_letter(v);
      i = j;
    } else if (text.substr(i, 2) == "1'") {
      i += 2;
    } else {
      fail(std::string("unexpected character '") + c + "'");
    }
  }
  return out;
}

std::string an_show(const AnWord& w) {
  if (w.empty()) {
    return "1'";
  }
  std::string out;
  for (char c : w) {
    out += c == kT ? std::string("t") : "s" + std::to_string(s_index(c));
  }
  return out;
}

bool an_leq(std::size_t n, const AnWord& a, const AnWord& b) {
  check_letters(n, a);
  check_letters(n, b);
  if (a == b) {
    return true;
  }
  auto const up = successors(n, a);
  return std::find(up.begin(), up.end(), b) != up.end();
}

std::vector<AnWord> an_upclose(std::size_t n, const AnWord& a) {
  check_letters(n, a);
  auto out = successors(n, a);
  out.push_back(a);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<AnWord> an_words(std::size_t n, std::size_t max_length) {
  std::vector<AnWord> out{AnWord()};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_length; ++len) {
    auto const end = out.size();
    for (auto i = begin; i < end; ++i) {
      for (std::size_t c = 0; c <= n + 1; ++c) {
        out.push_back(out[i] + char(c));
      }
    }
    begin = end;
  }
  return out;
}

AnAlgebra::AnAlgebra(std::size_t n) : n_(n) {
  if (n < 1 || n > kMaxAnParameter) {
    throw ValidationError("A_n needs 1 <= n <= " +
                          std::to_string(kMaxAnParameter));
  }
}

bool AnAlgebra::leq(const Elem& a, const Elem& b) const {
  return an_leq(n_, a, b);
}

std::vector<Elem> AnAlgebra::upclose(const Elem& a) const {
  return an_upclose(n_, a);
}

std::optional<Elem> AnAlgebra::mul(const Elem& a, const Elem& b) const {
  return a + b;
}

std::vector<std::pair<Elem, Elem>> AnAlgebra::factorizations(
    const Elem& c) const {
  std::vector<std::pair<Elem, Elem>> out;
  for (std::size_t i = 0; i <= c.size(); ++i) {
    out.emplace_back(c.substr(0, i), c.substr(i));
  }
  return out;
}

FiniteGameAlgebra::FiniteGameAlgebra(OrderedAlgebra alg)
    : alg_(std::move(alg)) {}

bool FiniteGameAlgebra::leq(const Elem& a, const Elem& b) const {
  return alg_.leq(index(a), index(b));
}

std::vector<Elem> FiniteGameAlgebra::upclose(const Elem& a) const {
  std::vector<Elem> out;
  auto const up = alg_.up_set(index(a));
  for (Index b = 0; b < alg_.size(); ++b) {
    if ((up >> b) & 1U) {
      out.push_back(elem(b));
    }
  }
  return out;
}

std::optional<Elem> FiniteGameAlgebra::mul(const Elem& a,
                                           const Elem& b) const {
  auto const c = alg_.mul(index(a), index(b));
  return c ? std::optional<Elem>(elem(*c)) : std::nullopt;
}

std::optional<Elem> FiniteGameAlgebra::identity() const {
  auto const e = alg_.identity();
  return e ? std::optional<Elem>(elem(*e)) : std::nullopt;
}

std::vector<std::pair<Elem, Elem>> FiniteGameAlgebra::factorizations(
    const Elem& c) const {
  std::vector<std::pair<Elem, Elem>> out;
  auto const target = int(index(c));
  for (Index a = 0; a < alg_.size(); ++a) {
    for (Index b = 0; b < alg_.size(); ++b) {
      if (alg_.cell(a, b) == target) {
        out.emplace_back(elem(a), elem(b));
      }
    }
  }
  return out;
}

std::optional<std::vector<Elem>> FiniteGameAlgebra::elements() const {
  std::vector<Elem> out;
  for (Index a = 0; a < alg_.size(); ++a) {
    out.push_back(elem(a));
  }
  return out;
}

std::string FiniteGameAlgebra::show(const Elem& a) const {
  return alg_.name(index(a));
}

Elem FiniteGameAlgebra::parse(std::string_view text) const {
  auto const i = alg_.index_of(text);
  if (!i) {
    throw make_parse_error("unknown element '" + std::string(text) + "'",
                           text, 0);
  }
  return elem(*i);
}

OrderedAlgebra an_truncation(std::size_t n) {
  AnAlgebra const an(n);
  std::vector<AnWord> words{AnWord(), an_t()};
  for (std::size_t i = 0; i <= n; ++i) {
    words.push_back(an_s(i));
    words.push_back(an_s(i) + an_t());
  }
  std::sort(words.begin(), words.end(), [](auto const& a, auto const& b) {
    return std::make_pair(a.size(), a) < std::make_pair(b.size(), b);
  });
  auto const m = words.size();
  std::vector<std::string> names;
  for (auto const& w : words) {
    names.push_back(an_show(w));
  }
  std::vector<int> table(m * m, OrderedAlgebra::kUndefined);
  std::vector<Mask> up(m, 0);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      auto const it = std::find(words.begin(), words.end(), words[a] + words[b]);
      if (it != words.end()) {
        table[a * m + b] = int(it - words.begin());
      }
      if (an_leq(n, words[a], words[b])) {
        up[a] |= Mask{1} << b;
      }
    }
  }
  return OrderedAlgebra(std::move(names), std::move(table), std::move(up),
                        Index{0});
}

// --- Networks ---------------------------------------------------------------

bool ForbSet::subset_of(const ForbSet& other) const {
  if (!cofinite) {
    return std::all_of(elems.begin(), elems.end(),
                       [&](auto const& e) { return other.contains(e); });
  }
  if (!other.cofinite) {
    return false;
  }
  return std::all_of(other.elems.begin(), other.elems.end(),
                     [&](auto const& e) { return elems.count(e) != 0; });
}

const std::set<Elem>& Network::label(Node x, Node y) const {
  static const std::set<Elem> kEmpty;
  auto const it = labels.find({x, y});
  return it == labels.end() ? kEmpty : it->second;
}

const ForbSet& Network::forbidden(Node x) const {
  static const ForbSet kEmpty;
  auto const it = forb.find(x);
  return it == forb.end() ? kEmpty : it->second;
}

bool Network::has_node(Node x) const {
  return std::binary_search(nodes.begin(), nodes.end(), x);
}

bool contained_in(const Network& n, const Network& m) {
  for (auto x : n.nodes) {
    if (!m.has_node(x)) {
      return false;
    }
  }
  for (auto const& [k, lab] : n.labels) {
    auto const& other = m.label(k.first, k.second);
    if (!std::includes(other.begin(), other.end(), lab.begin(), lab.end())) {
      return false;
    }
  }
  for (auto const& [x, f] : n.forb) {
    if (!f.subset_of(m.forbidden(x))) {
      return false;
    }
  }
  return true;
}

Move Move::init(Elem a, Elem b) {
  Move m;
  m.kind = Kind::init;
  m.a = std::move(a);
  m.b = std::move(b);
  return m;
}

Move Move::witness(Node x, Node y, Elem a, Elem b) {
  Move m;
  m.kind = Kind::witness;
  m.x = x;
  m.y = y;
  m.a = std::move(a);
  m.b = std::move(b);
  return m;
}

Move Move::demonic(Node x, Node y, Node z, Elem a, Elem a_plus, Elem b) {
  Move m;
  m.kind = Kind::demonic;
  m.x = x;
  m.y = y;
  m.z = z;
  m.a = std::move(a);
  m.a_plus = std::move(a_plus);
  m.b = std::move(b);
  return m;
}

Move Move::choice(Node x, Node y, Node z, Elem a, Elem b) {
  Move m;
  m.kind = Kind::choice;
  m.x = x;
  m.y = y;
  m.z = z;
  m.a = std::move(a);
  m.b = std::move(b);
  return m;
}

// --- Game -------------------------------------------------------------------

Game::Game(const GameAlgebra& alg, bool with_identity)
    : alg_(&alg), with_identity_(with_identity) {
  if (with_identity && !alg.identity()) {
    throw ValidationError("the game with 1' needs an algebra with an identity");
  }
}

void Game::add_label(Network& net, Node x, Node y, const Elem& e) const {
  auto& lab = net.labels[{x, y}];
  for (auto& u : alg_->upclose(e)) {
    lab.insert(std::move(u));
  }
}

Node Game::add_node(Network& net) const {
  auto const z = net.fresh();
  net.nodes.push_back(z);
  if (with_identity_) {
    add_label(net, z, z, *alg_->identity());
  }
  return z;
}

bool Game::well_formed(const Network& net, std::string* why) const {
  auto fail = [&](std::string msg) {
    if (why != nullptr) {
      *why = std::move(msg);
    }
    return false;
  };
  if (!std::is_sorted(net.nodes.begin(), net.nodes.end()) ||
      std::adjacent_find(net.nodes.begin(), net.nodes.end()) !=
          net.nodes.end()) {
    return fail("node list not strictly ascending");
  }
  for (auto const& [k, lab] : net.labels) {
    if (!net.has_node(k.first) || !net.has_node(k.second)) {
      return fail("label on an unknown node");
    }
    for (auto const& e : lab) {
      for (auto const& u : alg_->upclose(e)) {
        if (!lab.count(u)) {
          return fail("N(" + std::to_string(k.first) + "," +
                      std::to_string(k.second) + ") is not up-closed");
        }
      }
    }
  }
  for (auto const& [x, f] : net.forb) {
    if (!net.has_node(x)) {
      return fail("forbidden set on an unknown node");
    }
  }
  if (with_identity_) {
    auto const id = *alg_->identity();
    for (auto x : net.nodes) {
      for (auto y : net.nodes) {
        if (net.has(x, y, id) != (x == y)) {
          return fail("1' in N(" + std::to_string(x) + "," +
                      std::to_string(y) + ") must hold exactly on the diagonal");
        }
      }
    }
  }
  return true;
}

bool Game::consistent(const Network& net) const {
  for (auto const& [k, lab] : net.labels) {
    auto const& f = net.forbidden(k.first);
    if (f.empty()) {
      continue;
    }
    for (auto const& e : lab) {
      if (f.contains(e)) {
        return false;
      }
    }
  }
  return true;
}

bool Game::forall_wins(const GameState& s) const {
  return s.started && (s.net.has(s.x0, s.y0, s.b0) || !consistent(s.net));
}

bool Game::move_allowed(const GameState& s, const Move& m,
                        std::string* why) const {
  auto fail = [&](std::string msg) {
    if (why != nullptr) {
      *why = std::move(msg);
    }
    return false;
  };
  if (m.kind == Move::Kind::init) {
    if (s.started) {
      return fail("the initial move was already played");
    }
    if (alg_->leq(m.a, m.b)) {
      return fail("initial move needs a !<= b");
    }
    return true;
  }
  if (!s.started) {
    return fail("the game starts with an initial move");
  }
  auto const& net = s.net;
  if (!net.has_node(m.x) || !net.has_node(m.y) ||
      (m.kind != Move::Kind::witness && !net.has_node(m.z))) {
    return fail("move names an unknown node");
  }
  switch (m.kind) {
    case Move::Kind::witness: {
      auto const ab = alg_->mul(m.a, m.b);
      if (!ab || !net.has(m.x, m.y, *ab)) {
        return fail("witness move needs a*b in N(x,y)");
      }
      return true;
    }
    case Move::Kind::demonic: {
      if (!alg_->leq(m.a, m.a_plus)) {
        return fail("demonic move needs a <= a+");
      }
      auto const ab = alg_->mul(m.a_plus, m.b);
      if (!ab || !net.has(m.x, m.y, *ab)) {
        return fail("demonic move needs a+*b in N(x,y)");
      }
      if (!net.has(m.x, m.z, m.a)) {
        return fail("demonic move needs a in N(x,z)");
      }
      return true;
    }
    case Move::Kind::choice:
      if (!net.has(m.x, m.z, m.a) || !net.has(m.z, m.y, m.b)) {
        return fail("choice move needs a in N(x,z) and b in N(z,y)");
      }
      return true;
    case Move::Kind::init:
      break;
  }
  return true;
}

namespace {

struct Requirement {
  bool met = false;
  std::optional<bool> accepted;
  std::optional<Node> chosen;
};

Requirement requirement(const GameAlgebra& alg, const Network& net,
                        const Move& m) {
  Requirement r;
  switch (m.kind) {
    case Move::Kind::witness:
      for (auto z : net.nodes) {
        if (net.has(m.x, z, m.a) && net.has(z, m.y, m.b)) {
          r.met = true;
          r.chosen = z;
          return r;
        }
      }
      return r;
    case Move::Kind::demonic:
      for (auto w : net.nodes) {
        if (net.has(m.z, w, m.b)) {
          r.met = true;
          r.chosen = w;
          return r;
        }
      }
      return r;
    case Move::Kind::choice: {
      auto const ab = alg.mul(m.a, m.b);
      if (ab && net.has(m.x, m.y, *ab)) {
        r.met = true;
        r.accepted = true;
        return r;
      }
      for (auto w : net.nodes) {
        if (net.has(m.x, w, m.a) && net.forbidden(w).contains(m.b)) {
          r.met = true;
          r.accepted = false;
          r.chosen = w;
          return r;
        }
      }
      return r;
    }
    case Move::Kind::init:
      for (auto x : net.nodes) {
        for (auto y : net.nodes) {
          if (net.has(x, y, m.a) && !net.has(x, y, m.b)) {
            r.met = true;
            r.chosen = x;
            r.accepted = true;
            return r;
          }
        }
      }
      return r;
  }
  return r;
}

}  // namespace

bool Game::trivial(const GameState& s, const Move& m) const {
  return m.kind != Move::Kind::init && requirement(*alg_, s.net, m).met;
}

MoveCheck Game::apply_move(const GameState& s, const Move& m,
                           const Network& response) const {
  MoveCheck out;
  if (!move_allowed(s, m, &out.reason)) {
    return out;
  }
  if (!contained_in(s.net, response)) {
    out.reason = "response does not extend the current network";
    return out;
  }
  if (!well_formed(response, &out.reason)) {
    return out;
  }
  out.next = s;
  out.next.net = response;
  if (m.kind == Move::Kind::init) {
    bool found = false;
    for (auto x : response.nodes) {
      for (auto y : response.nodes) {
        if (!found && response.has(x, y, m.a) && !response.has(x, y, m.b)) {
          found = true;
          out.next.x0 = x;
          out.next.y0 = y;
        }
      }
    }
    if (!found) {
      out.reason = "no nodes x0, y0 with a in N(x0,y0) and b not in it";
      return out;
    }
    out.next.started = true;
    out.next.a0 = m.a;
    out.next.b0 = m.b;
    out.next.round = 0;
    out.chosen = out.next.x0;
  } else {
    auto const r = requirement(*alg_, response, m);
    if (!r.met) {
      out.reason = "response does not meet the move's requirement";
      return out;
    }
    out.accepted = r.accepted;
    out.chosen = r.chosen;
    out.next.round = s.round + 1;
  }
  out.legal = true;
  out.forall_wins = forall_wins(out.next);
  return out;
}

std::vector<Network> Game::minimal_responses(const GameState& s,
                                             const Move& m) const {
  std::vector<Network> cand;
  switch (m.kind) {
    case Move::Kind::init: {
      Network one;
      auto const x = add_node(one);
      add_label(one, x, x, m.a);
      cand.push_back(std::move(one));
      Network two;
      auto const x0 = add_node(two);
      auto const y0 = add_node(two);
      add_label(two, x0, y0, m.a);
      cand.push_back(std::move(two));
      break;
    }
    case Move::Kind::witness: {
      for (auto z : s.net.nodes) {
        auto net = s.net;
        add_label(net, m.x, z, m.a);
        add_label(net, z, m.y, m.b);
        cand.push_back(std::move(net));
      }
      auto net = s.net;
      auto const z = add_node(net);
      add_label(net, m.x, z, m.a);
      add_label(net, z, m.y, m.b);
      cand.push_back(std::move(net));
      break;
    }
    case Move::Kind::demonic: {
      for (auto w : s.net.nodes) {
        auto net = s.net;
        add_label(net, m.z, w, m.b);
        cand.push_back(std::move(net));
      }
      auto net = s.net;
      auto const w = add_node(net);
      add_label(net, m.z, w, m.b);
      cand.push_back(std::move(net));
      break;
    }
    case Move::Kind::choice: {
      if (auto const ab = alg_->mul(m.a, m.b)) {
        auto net = s.net;
        add_label(net, m.x, m.y, *ab);
        cand.push_back(std::move(net));
      }
      auto net = s.net;
      auto const w = add_node(net);
      add_label(net, m.x, w, m.a);
      net.forb[w].elems.insert(m.b);
      cand.push_back(std::move(net));
      break;
    }
  }
  std::vector<Network> out;
  for (auto& net : cand) {
    if (!apply_move(s, m, net).legal) {
      continue;
    }
    if (std::find(out.begin(), out.end(), net) == out.end()) {
      out.push_back(std::move(net));
    }
  }
  return out;
}

namespace {

// Calls visit on each allowed non-trivial move until it returns false.
template <class Visit>
void each_move(const Game& game, const GameState& s, Visit&& visit) {
  if (!s.started) {
    return;
  }
  auto const& alg = game.algebra();
  using Key = std::tuple<int, Node, Node, Node, Elem, Elem, Elem>;
  std::set<Key> seen;
  bool go = true;
  auto push = [&](Move m) {
    Key k{int(m.kind), m.x, m.y, m.z, m.a, m.a_plus, m.b};
    if (seen.insert(std::move(k)).second && !game.trivial(s, m)) {
      go = visit(std::move(m));
    }
  };
  auto const& net = s.net;
  for (auto const& [k, lab] : net.labels) {
    for (auto const& c : lab) {
      for (auto& [a, b] : alg.factorizations(c)) {
        push(Move::witness(k.first, k.second, a, b));
        if (!go) {
          return;
        }
      }
    }
  }
  for (auto const& [xz, lab] : net.labels) {
    auto const [x, z] = xz;
    for (auto const& a : lab) {
      for (auto const& ap : alg.upclose(a)) {
        for (auto y : net.nodes) {
          for (auto const& c : net.label(x, y)) {
            for (auto& [p, b] : alg.factorizations(c)) {
              if (p == ap) {
                push(Move::demonic(x, y, z, a, ap, b));
                if (!go) {
                  return;
                }
              }
            }
          }
        }
      }
    }
  }
  for (auto const& [xz, lab] : net.labels) {
    auto const [x, z] = xz;
    for (auto y : net.nodes) {
      for (auto const& a : lab) {
        for (auto const& b : net.label(z, y)) {
          push(Move::choice(x, y, z, a, b));
          if (!go) {
            return;
          }
        }
      }
    }
  }
}

}  // namespace

std::vector<Move> Game::forall_moves(const GameState& s) const {
  std::vector<Move> out;
  each_move(*this, s, [&](Move m) {
    out.push_back(std::move(m));
    return true;
  });
  return out;
}

std::optional<Move> Game::first_forall_move(const GameState& s) const {
  std::optional<Move> out;
  each_move(*this, s, [&](Move m) {
    out = std::move(m);
    return false;
  });
  return out;
}

std::vector<Move> Game::initial_moves() const {
  auto const elems = alg_->elements();
  if (!elems) {
    throw ValidationError("initial moves need a finite algebra");
  }
  std::vector<Move> out;
  for (auto const& a : *elems) {
    for (auto const& b : *elems) {
      if (!alg_->leq(a, b)) {
        out.push_back(Move::init(a, b));
      }
    }
  }
  return out;
}

std::string Game::show(const Move& m) const {
  auto const e = [&](const Elem& a) { return alg_->show(a); };
  auto const n = [](Node x) { return std::to_string(x); };
  switch (m.kind) {
    case Move::Kind::init:
      return "init " + e(m.a) + " " + e(m.b);
    case Move::Kind::witness:
      return "witness " + n(m.x) + " " + n(m.y) + " " + e(m.a) + " " + e(m.b);
    case Move::Kind::demonic:
      return "demonic " + n(m.x) + " " + n(m.y) + " " + n(m.z) + " " +
             e(m.a) + " " + e(m.a_plus) + " " + e(m.b);
    case Move::Kind::choice:
      return "choice " + n(m.x) + " " + n(m.y) + " " + n(m.z) + " " + e(m.a) +
             " " + e(m.b);
  }
  return {};
}

Move Game::parse_move(std::string_view text) const {
  std::vector<std::pair<std::string, std::size_t>> tok;
  for (std::size_t i = 0; i < text.size();) {
    if (std::isspace(std::uint8_t(text[i]))) {
      ++i;
      continue;
    }
    auto j = i;
    while (j < text.size() && !std::isspace(std::uint8_t(text[j]))) {
      ++j;
    }
    tok.emplace_back(std::string(text.substr(i, j - i)), i);
    i = j;
  }
  auto fail = [&](std::string msg, std::size_t at) -> Move {
    throw make_parse_error(std::move(msg), text, at);
  };
  if (tok.empty()) {
    return fail("empty move", 0);
  }
  auto elem = [&](std::size_t i) {
    try {
      return alg_->parse(tok[i].first);
    } catch (const ParseError& e) {
      throw make_parse_error(e.message(), text, tok[i].second);
    }
  };
  auto node = [&](std::size_t i) {
    auto const& s = tok[i].first;
    if (s.empty() || s.size() > 9 ||
        !std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isdigit(std::uint8_t(c)); })) {
      fail("expected a node number", tok[i].second);
    }
    return Node(std::stoi(s));
  };
  auto const& kw = tok[0].first;
  auto arity = [&](std::size_t k) {
    if (tok.size() != k + 1) {
      fail(kw + " takes " + std::to_string(k) + " arguments", tok[0].second);
    }
  };
  if (kw == "init") {
    arity(2);
    return Move::init(elem(1), elem(2));
  }
  if (kw == "witness") {
    arity(4);
    return Move::witness(node(1), node(2), elem(3), elem(4));
  }
  if (kw == "demonic") {
    arity(6);
    return Move::demonic(node(1), node(2), node(3), elem(4), elem(5),
                         elem(6));
  }
  if (kw == "choice") {
    arity(5);
    return Move::choice(node(1), node(2), node(3), elem(4), elem(5));
  }
  return fail("unknown move '" + kw + "'", tok[0].second);
}

std::string Game::show(const Network& net) const {
  std::ostringstream os;
  os << "nodes";
  for (auto x : net.nodes) {
    os << ' ' << x;
  }
  os << '\n';
  for (auto const& [k, lab] : net.labels) {
    if (lab.empty()) {
      continue;
    }
    os << "N(" << k.first << "," << k.second << ") =";
    for (auto const& e : lab) {
      os << ' ' << alg_->show(e);
    }
    os << '\n';
  }
  for (auto const& [x, f] : net.forb) {
    if (f.empty()) {
      continue;
    }
    os << "Forb(" << x << ") =" << (f.cofinite ? " all but" : "");
    for (auto const& e : f.elems) {
      os << ' ' << alg_->show(e);
    }
    os << '\n';
  }
  return os.str();
}

// --- Universal player's script ----------------------------------------------

ForallScript::ForallScript(std::size_t n) : n_(n) {
  if (n < 1) {
    throw ValidationError("the script needs n >= 1");
  }
}

Move ForallScript::initial() const {
  return Move::init(an_s(0) + an_t(), an_s(n_) + an_t());
}

std::optional<Move> ForallScript::next(const GameState& s) {
  auto const& net = s.net;
  auto const x0 = s.x0;
  auto const t = an_t();
  auto find = [&](auto pred) -> std::optional<Node> {
    for (auto z : net.nodes) {
      if (pred(z)) {
        return z;
      }
    }
    return std::nullopt;
  };
  auto emit_chain = [&]() -> Move {
    if (chain_.size() < n_) {
      return Move::witness(x0, chain_.back(), an_s(chain_.size()), t);
    }
    step_ = 4;
    return Move::demonic(x0, chain_.back(), forbidden_node_, an_s(n_),
                         an_s(n_), t);
  };
  switch (step_) {
    case 0:
      step_ = 1;
      return Move::witness(x0, s.y0, an_s(0), t);
    case 1: {
      auto const z = find([&](Node z) {
        return net.has(x0, z, an_s(0)) && net.has(z, s.y0, t);
      });
      if (!z) {
        return std::nullopt;
      }
      node1_ = *z;
      step_ = 2;
      return Move::choice(x0, s.y0, node1_, an_s(n_), t);
    }
    case 2: {
      auto const w = find([&](Node w) {
        return net.has(x0, w, an_s(n_)) && net.forbidden(w).contains(t);
      });
      if (!w) {
        return std::nullopt;
      }
      forbidden_node_ = *w;
      chain_ = {node1_};
      step_ = 3;
      return emit_chain();
    }
    case 3: {
      auto const i = chain_.size();
      auto const prev = chain_.back();
      auto const y = find([&](Node z) {
        return net.has(x0, z, an_s(i)) && net.has(z, prev, t);
      });
      if (!y) {
        return std::nullopt;
      }
      chain_.push_back(*y);
      return emit_chain();
    }
    default:
      return std::nullopt;
  }
}

// --- Grids ------------------------------------------------------------------

const AnWord* Grid::at(Node x, Node y) const {
  auto const it = f.find({x, y});
  return it == f.end() ? nullptr : &it->second;
}

std::vector<std::string> check_grid(const Grid& g, std::size_t n) {
  std::vector<std::string> out;
  auto const pair = [](Node x, Node y) {
    return "(" + std::to_string(x) + "," + std::to_string(y) + ")";
  };
  auto in_d = [&](Node x) {
    return std::binary_search(g.D.begin(), g.D.end(), x);
  };
  for (auto x : g.T) {
    if (!in_d(x)) {
      out.push_back("terminal node " + std::to_string(x) + " not in D");
    }
  }
  for (auto const& [k, w] : g.f) {
    if (!in_d(k.first) || !in_d(k.second)) {
      out.push_back("f defined outside D at " + pair(k.first, k.second));
    }
  }
  for (auto x : g.D) {
    auto const* w = g.at(x, x);
    if (w == nullptr || !w->empty()) {
      out.push_back("(i) f" + pair(x, x) + " must be 1'");
    }
  }
  for (auto const& [k, w] : g.f) {
    if (k.first != k.second && w.empty()) {
      out.push_back("(i) f" + pair(k.first, k.second) + " = 1' off the diagonal");
    }
    if (k.first != k.second && g.T.count(k.first)) {
      out.push_back("(iv) terminal " + std::to_string(k.first) +
                    " has edge to " + std::to_string(k.second));
    }
    auto const [x, y] = k;
    for (std::size_t i = 0; i <= w.size(); ++i) {
      auto const a = w.substr(0, i);
      auto const b = w.substr(i);
      bool found = false;
      for (auto z : g.D) {
        auto const* fa = g.at(x, z);
        auto const* fb = g.at(z, y);
        if (fa != nullptr && fb != nullptr && *fa == a && *fb == b) {
          found = true;
          break;
        }
      }
      if (!found) {
        out.push_back("(iii) no split " + an_show(a) + "|" + an_show(b) +
                      " of f" + pair(x, y));
      }
    }
  }
  for (auto const& [xy, fxy] : g.f) {
    auto const [x, y] = xy;
    for (auto z : g.D) {
      auto const* fyz = g.at(y, z);
      auto const* fxz = g.at(x, z);
      if (fyz != nullptr && fxz != nullptr && !an_leq(n, *fxz, fxy + *fyz)) {
        out.push_back("(ii) f" + pair(x, y) + "f" + pair(y, z) +
                      " !>= f" + pair(x, z));
      }
    }
  }
  return out;
}

Network grid_network(const Grid& g, std::size_t n) {
  Network net;
  net.nodes = g.D;
  for (auto const& [k, w] : g.f) {
    auto& lab = net.labels[k];
    for (auto& u : an_upclose(n, w)) {
      lab.insert(std::move(u));
    }
  }
  for (auto x : g.T) {
    auto& f = net.forb[x];
    f.cofinite = true;
    f.elems = {AnWord()};
  }
  return net;
}

std::vector<std::string> check_hypotheses(const Grid& g, std::size_t n,
                                          std::size_t k) {
  std::vector<std::string> out;
  auto const t = an_t();
  auto const id = [](Node x) { return std::to_string(x); };
  for (auto const& [xy, fxy] : g.f) {
    auto const [x, y] = xy;
    for (auto z : g.D) {
      if (g.at(y, z) != nullptr && g.at(x, z) == nullptr && fxy != t) {
        out.push_back("(2) gap at " + id(x) + "," + id(y) + "," + id(z) +
                      " with f(x,y) != t");
      }
    }
  }
  for (auto x : g.D) {
    for (auto z : g.D) {
      auto const* fxz = g.at(x, z);
      if (fxz == nullptr) {
        continue;
      }
      for (auto w : g.D) {
        auto const* fxw = g.at(x, w);
        if (w == z || fxw == nullptr || !an_leq(n, *fxz, *fxw)) {
          continue;
        }
        for (auto y : g.D) {
          auto const* fwy = g.at(w, y);
          if (g.at(x, y) != nullptr && fwy != nullptr && !fwy->empty()) {
            out.push_back("(3) f(" + id(x) + "," + id(z) + ") <= f(" + id(x) +
                          "," + id(w) + ") with " + id(z) + " != " + id(w));
            break;
          }
        }
      }
    }
  }
  auto letter = [](const AnWord* w) {
    return (w != nullptr && w->size() == 1 && (*w)[0] != kT)
               ? s_index((*w)[0])
               : -1;
  };
  for (auto x : g.D) {
    for (auto y : g.D) {
      auto const i = letter(g.at(x, y));
      if (i < 0) {
        continue;
      }
      for (auto z : g.D) {
        auto const j = letter(g.at(x, z));
        if (j < 0 || j < i) {
          continue;
        }
        if (j == i) {
          if (y != z) {
            out.push_back("(4) f(" + id(x) + "," + id(y) + ") = f(" + id(x) +
                          "," + id(z) + ") = s" + std::to_string(i));
          }
          continue;
        }
        bool first = false;
        if (std::size_t(j - i) <= k) {
          for (auto w : g.D) {
            auto const* fwy = g.at(w, y);
            if (letter(g.at(x, w)) == i + 1 && fwy != nullptr && *fwy == t) {
              first = true;
            }
          }
        }
        bool second = false;
        if (std::size_t(j) == n && g.T.count(z)) {
          for (auto v : g.D) {
            second = second || letter(g.at(x, v)) == 0;
          }
        }
        if (!first && !second) {
          out.push_back("(4) f(" + id(x) + "," + id(y) + ") = s" +
                        std::to_string(i) + ", f(" + id(x) + "," + id(z) +
                        ") = s" + std::to_string(j) + " at round " +
                        std::to_string(k));
        }
      }
    }
  }
  return out;
}

GridStrategy::GridStrategy(std::size_t n) : n_(n), alg_(n) {
  if (n < 2) {
    throw ValidationError("the grid strategy needs n >= 2");
  }
}

Node GridStrategy::add_node(bool terminal) {
  auto const v = grid_.D.empty() ? 0 : grid_.D.back() + 1;
  grid_.D.push_back(v);
  grid_.f[{v, v}] = AnWord();
  if (terminal) {
    grid_.T.insert(v);
  }
  return v;
}

Network GridStrategy::initial(const AnWord& a, const AnWord& b) {
  if (an_leq(n_, a, b)) {
    throw ValidationError("initial move needs a !<= b");
  }
  grid_ = Grid{};
  for (std::size_t i = 0; i <= a.size(); ++i) {
    add_node(false);
  }
  for (std::size_t i = 0; i <= a.size(); ++i) {
    for (std::size_t j = i; j <= a.size(); ++j) {
      grid_.f[{Node(i), Node(j)}] = a.substr(i, j - i);
    }
  }
  return grid_network(grid_, n_);
}

Network GridStrategy::respond(const GameState& s, const Move& m) {
  auto const round = s.round + 1;
  if (round + 1 >= n_) {
    throw OutOfContract("the grid strategy covers rounds 1.." +
                        std::to_string(n_ - 2) + ", not round " +
                        std::to_string(round));
  }
  if (!(grid_network(grid_, n_) == s.net)) {
    throw ConsistencyError("network is not the one the grid determines");
  }
  Game const game(alg_, true);
  if (game.trivial(s, m)) {
    return s.net;
  }
  auto const t = an_t();
  auto unexpected = [&](const char* what) {
    throw ConsistencyError(std::string(what) + ": " + game.show(m));
  };
  // x with f(x', x) = prefix and f(x, target) = last letter.
  auto split_node = [&](Node xp, Node target, const AnWord& w) {
    auto const prefix = w.substr(0, w.size() - 1);
    auto const last = w.substr(w.size() - 1);
    for (auto x : grid_.D) {
      auto const* a = grid_.at(xp, x);
      auto const* b = grid_.at(x, target);
      if (a != nullptr && b != nullptr && *a == prefix && *b == last) {
        return x;
      }
    }
    throw ConsistencyError("grid decomposition missing");
  };
  auto node_with = [&](Node x, const AnWord& w) -> std::optional<Node> {
    for (auto v : grid_.D) {
      auto const* f = grid_.at(x, v);
      if (f != nullptr && *f == w) {
        return v;
      }
    }
    return std::nullopt;
  };
  // f(u, v) = f(u, x) w for every u with (u, x) in dom f.
  auto extend_from = [&](Node x, Node v, const AnWord& w) {
    std::vector<std::pair<Node, AnWord>> add;
    for (auto const& [k, fw] : grid_.f) {
      if (k.second == x && k.first != v) {
        add.emplace_back(k.first, fw + w);
      }
    }
    for (auto& [u, fw] : add) {
      grid_.f[{u, v}] = fw;
    }
  };
  switch (m.kind) {
    case Move::Kind::witness: {
      auto const* fxy = grid_.at(m.x, m.y);
      if (fxy == nullptr || fxy->empty() || m.b != t || m.a.empty() ||
          (*fxy)[fxy->size() - 1] == kT) {
        unexpected("witness move outside the strategy's cases");
      }
      auto const i = std::size_t(s_index(fxy->back()));
      if (i >= n_ || m.a != fxy->substr(0, fxy->size() - 1) + s_letter(i + 1)) {
        unexpected("witness move outside the strategy's cases");
      }
      auto const x = split_node(m.x, m.y, *fxy);
      if (node_with(x, an_s(i + 1))) {
        unexpected("witness move meets an existing s(i+1) edge");
      }
      auto const v = add_node(false);
      extend_from(x, v, an_s(i + 1));
      grid_.f[{v, m.y}] = t;
      break;
    }
    case Move::Kind::demonic:
      unexpected("non-trivial demonic move");
      break;
    case Move::Kind::choice: {
      auto const* fxz = grid_.at(m.x, m.z);
      if (fxz == nullptr) {
        unexpected("choice move on an undefined edge");
      }
      if (*fxz == m.a) {
        if (grid_.at(m.x, m.y) != nullptr || *fxz != t) {
          unexpected("choice move outside the strategy's cases");
        }
        auto const xp = m.x;
        auto const w = add_node(true);
        extend_from(xp, w, t);
        break;
      }
      if (fxz->empty() || fxz->back() == kT) {
        unexpected("choice move outside the strategy's cases");
      }
      auto const i = std::size_t(s_index(fxz->back()));
      auto const prefix = fxz->substr(0, fxz->size() - 1);
      auto const x = split_node(m.x, m.z, *fxz);
      if (i == 0 && m.a == prefix + s_letter(n_)) {
        auto const w = add_node(true);
        extend_from(x, w, an_s(n_));
        break;
      }
      if (i >= n_ || m.a != prefix + s_letter(i + 1) + kT) {
        unexpected("choice move outside the strategy's cases");
      }
      auto v = node_with(x, an_s(i + 1));
      if (v) {
        auto const* fvz = grid_.at(*v, m.z);
        if (fvz == nullptr || *fvz != t) {
          unexpected("existing s(i+1) edge without its t edge");
        }
      } else {
        v = add_node(false);
        extend_from(x, *v, an_s(i + 1));
        grid_.f[{*v, m.z}] = t;
      }
      auto const w = add_node(true);
      extend_from(x, w, an_s(i + 1) + t);
      grid_.f[{*v, w}] = t;
      break;
    }
    case Move::Kind::init:
      unexpected("second initial move");
      break;
  }
  return grid_network(grid_, n_);
}

// --- Verification -----------------------------------------------------------

namespace {

struct ScriptSearch {
  const Game& game;
  std::size_t limit_rounds;
  GameLemmaReport& report;
  std::vector<std::string> trace;

  void explore(const GameState& s, ForallScript script) {
    auto const move = script.next(s);
    if (!move) {
      fail("script exhausted without a win");
      return;
    }
    visit(s, *move, script);
  }

  void visit(const GameState& s, const Move& move,
             const ForallScript& script) {
    auto const responses = game.minimal_responses(s, move);
    trace.push_back(game.show(move));
    for (std::size_t r = 0; r < responses.size() && report.script_wins; ++r) {
      ++report.script_tree_nodes;
      auto const chk = game.apply_move(s, move, responses[r]);
      if (!chk.legal) {
        throw ConsistencyError("minimal response rejected: " + chk.reason);
      }
      trace.push_back("  response " + std::to_string(r));
      if (chk.forall_wins) {
        ++report.script_tree_leaves;
        report.script_max_rounds =
            std::max(report.script_max_rounds, chk.next.round);
        if (chk.next.round > limit_rounds) {
          fail("win only after the round limit");
        }
      } else {
        explore(chk.next, script);
      }
      trace.pop_back();
    }
    trace.pop_back();
  }

  void fail(const std::string& why) {
    if (report.script_wins) {
      report.script_wins = false;
      report.script_failure = trace;
      report.script_failure.push_back(why);
    }
  }
};

struct GridSearch {
  const Game& game;
  std::size_t n;
  std::size_t rounds;
  GameLemmaReport& report;
  std::uint64_t budget;
  std::vector<std::string> trace;
  std::mt19937_64* rng = nullptr;

  struct OverBudget {};

  void note(const std::string& why) {
    if (report.grid_failure.empty()) {
      report.grid_failure = trace;
      report.grid_failure.push_back(why);
    }
    if (report.grid_violations.size() < GameLemmaReport::kMaxListed) {
      report.grid_violations.push_back(why);
    }
  }

  void loss(const std::string& why) {
    ++report.grid_losses;
    note(why);
  }

  // True when the play may continue from the state reached.
  bool check(const GridStrategy& strat, const MoveCheck& chk) {
    if (!chk.legal) {
      loss("illegal response: " + chk.reason);
      return false;
    }
    if (chk.forall_wins) {
      loss("the universal player wins at round " +
           std::to_string(chk.next.round));
      return false;
    }
    auto problems = check_grid(strat.grid(), n);
    for (auto& v : problems) {
      v = "(1) " + v;
    }
    for (auto& v : check_hypotheses(strat.grid(), n, chk.next.round)) {
      problems.push_back(std::move(v));
    }
    if (!problems.empty()) {
      ++report.grid_violation_rounds;
      for (auto const& v : problems) {
        note("round " + std::to_string(chk.next.round) + ": " + v);
      }
    }
    return true;
  }

  void start(const AnWord& a) {
    GridStrategy strat(n);
    auto const b = a + an_t() + an_t();
    auto const move = Move::init(a, b);
    trace = {game.show(move)};
    auto const net = strat.initial(a, b);
    auto const chk = game.apply_move(GameState{}, move, net);
    ++report.grid_states;
    if (check(strat, chk)) {
      step(chk.next, strat);
    }
  }

  void step(const GameState& s, const GridStrategy& strat) {
    if (s.round >= rounds) {
      finish();
      return;
    }
    auto const moves = game.forall_moves(s);
    if (moves.empty()) {
      finish();
      return;
    }
    if (rng != nullptr) {
      std::uniform_int_distribution<std::size_t> pick(0, moves.size() - 1);
      play(s, strat, moves[pick(*rng)]);
      return;
    }
    for (auto const& m : moves) {
      play(s, strat, m);
    }
  }

  void play(const GameState& s, const GridStrategy& strat, const Move& m) {
    auto next = strat;
    trace.push_back(game.show(m));
    ++report.grid_states;
    try {
      auto const net = next.respond(s, m);
      auto const chk = game.apply_move(s, m, net);
      if (check(next, chk)) {
        step(chk.next, next);
      }
    } catch (const Error& e) {
      loss(e.what());
    }
    trace.pop_back();
  }

  void finish() {
    ++report.grid_sequences;
    if (rng == nullptr && report.grid_sequences > budget) {
      throw OverBudget{};
    }
  }
};

}  // namespace

GameLemmaReport verify_game_lemmas(std::size_t n,
                                   const GameLemmaOptions& options) {
  GameLemmaReport report;
  report.n = n;
  AnAlgebra const alg(n);
  Game const game(alg, true);

  report.script_wins = true;
  ScriptSearch script{game, n + 2, report, {}};
  ForallScript const lose(n);
  script.visit(GameState{}, lose.initial(), lose);

  if (n < 2) {
    return report;
  }
  report.grid_rounds = n - 2;
  auto const words = an_words(n, options.initial_word_length);
  GridSearch grid{game, n, n - 2, report, options.budget, {}, nullptr};
  report.grid_exhaustive = n <= options.exhaustive_max_n;
  if (report.grid_exhaustive) {
    try {
      for (auto const& a : words) {
        grid.start(a);
      }
    } catch (const GridSearch::OverBudget&) {
      report.inconclusive = true;
    }
    return report;
  }
  std::seed_seq seq{std::uint32_t(options.seed),
                    std::uint32_t(options.seed >> 32), std::uint32_t(n)};
  std::mt19937_64 rng(seq);
  grid.rng = &rng;
  std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
  while (report.grid_sequences < options.samples) {
    grid.start(words[pick(rng)]);
  }
  report.inconclusive = options.samples == 0;
  return report;
}

std::string to_string(const GameLemmaReport& r) {
  std::ostringstream os;
  os << "A_" << r.n << "\n";
  os << "script: " << (r.script_wins ? "wins every play" : "FAILS")
     << ", tree nodes " << r.script_tree_nodes << ", leaves "
     << r.script_tree_leaves << ", longest play " << r.script_max_rounds
     << " rounds\n";
  for (auto const& line : r.script_failure) {
    os << "  " << line << "\n";
  }
  if (r.n >= 2) {
    os << "grid: " << (r.grid_losses == 0 ? "never loses" : "LOSES") << ", "
       << (r.grid_violation_rounds == 0 ? "invariants hold"
                                        : "INVARIANTS FAIL")
       << ", " << r.grid_rounds << " rounds, "
       << (r.grid_exhaustive ? "exhaustive" : "sampled") << ", sequences "
       << r.grid_sequences << ", states " << r.grid_states << ", losses "
       << r.grid_losses << ", rounds with violations "
       << r.grid_violation_rounds << "\n";
    for (std::size_t i = 0; i < r.grid_violations.size() && i < 10; ++i) {
      os << "  " << r.grid_violations[i] << "\n";
    }
    for (auto const& line : r.grid_failure) {
      os << "  trace: " << line << "\n";
    }
  }
  if (r.inconclusive) {
    os << "inconclusive\n";
  }
  return os.str();
}

// --- Bounded search ---------------------------------------------------------

std::string_view to_string(SearchVerdict v) {
  switch (v) {
    case SearchVerdict::not_representable:
      return "not-representable";
    case SearchVerdict::unknown:
      return "unknown";
    case SearchVerdict::representable:
      return "representable";
  }
  return "?";
}

namespace {

// Proof-number search over the AND/OR tree: the universal player chooses
// moves (OR), the existential player chooses among minimal responses (AND).
// Plays that reach the depth limit count as losses for the universal player.
class ProofSearch {
 public:
  static constexpr std::uint64_t kInf = std::uint64_t{1} << 60;

  ProofSearch(const Game& game, std::vector<Move> initial, std::size_t depth,
              std::uint64_t budget)
      : game_(game),
        initial_(std::move(initial)),
        depth_(int(depth)),
        budget_(budget) {}

  // The winning initial move, or nullopt with exhausted() telling why.
  std::optional<Move> run() {
    nodes_.push_back(Node{});
    nodes_[0].is_or = true;
    nodes_[0].depth = depth_ + 1;
    for (auto const& m : initial_) {
      add_and(0, GameState{}, m, depth_);
      if (nodes_[std::size_t(nodes_[0].children.back())].pn == 0) {
        break;
      }
    }
    nodes_[0].expanded = true;
    refresh(0);
    while (nodes_[0].pn != 0 && nodes_[0].dn != 0) {
      if (expansions_ >= budget_) {
        exhausted_ = true;
        return std::nullopt;
      }
      auto const leaf = select();
      expand(leaf);
      for (int v = leaf; v >= 0; v = nodes_[v].parent) {
        refresh(v);
      }
    }
    if (nodes_[0].pn != 0) {
      return std::nullopt;
    }
    for (auto c : nodes_[0].children) {
      if (nodes_[c].pn == 0) {
        return nodes_[c].move;
      }
    }
    return std::nullopt;
  }

  bool exhausted() const noexcept { return exhausted_; }
  std::uint64_t expansions() const noexcept { return expansions_; }

 private:
  struct Node {
    int id = 0;
    int parent = -1;
    bool is_or = false;
    bool expanded = false;
    int depth = 0;  // rounds left, OR nodes
    GameState state;           // expanded OR nodes
    std::size_t response = 0;  // OR nodes: index among the responses
    Move move;                 // AND nodes
    std::uint64_t pn = 1;
    std::uint64_t dn = 1;
    std::vector<int> children;
  };

  static std::uint64_t add(std::uint64_t a, std::uint64_t b) {
    return std::min(kInf, a + b);
  }

  int make(int parent, bool is_or) {
    Node n;
    n.id = int(nodes_.size());
    n.parent = parent;
    n.is_or = is_or;
    nodes_.push_back(std::move(n));
    nodes_[std::size_t(parent)].children.push_back(nodes_.back().id);
    return nodes_.back().id;
  }

  // AND node for move m in state s; its children are the surviving
  // responses with `depth` rounds left.
  void add_and(int parent, const GameState& s, const Move& m, int depth) {
    auto const id = make(parent, false);
    nodes_[std::size_t(id)].move = m;
    auto const responses = game_.minimal_responses(s, m);
    for (std::size_t r = 0; r < responses.size(); ++r) {
      if (game_.apply_move(s, m, responses[r]).forall_wins) {
        continue;
      }
      auto const c = make(id, true);
      auto& child = nodes_[std::size_t(c)];
      child.depth = depth;
      child.response = r;
      if (depth == 0) {
        child.pn = kInf;
        child.dn = 0;
        child.expanded = true;
      }
    }
    nodes_[std::size_t(id)].expanded = true;
    refresh(id);
  }

  // Unexpanded OR nodes keep only the response index; the state is rebuilt
  // from the grandparent's.
  GameState rebuild(int v) const {
    auto const& n = nodes_[std::size_t(v)];
    auto const& and_node = nodes_[std::size_t(n.parent)];
    auto const gp = and_node.parent;
    GameState const empty;
    auto const& before = gp == 0 ? empty : nodes_[std::size_t(gp)].state;
    auto const responses = game_.minimal_responses(before, and_node.move);
    return game_.apply_move(before, and_node.move, responses.at(n.response))
        .next;
  }

  void expand(int v) {
    ++expansions_;
    nodes_[std::size_t(v)].state = rebuild(v);
    auto const state = nodes_[std::size_t(v)].state;
    auto const depth = nodes_[std::size_t(v)].depth;
    for (auto const& m : game_.forall_moves(state)) {
      add_and(v, state, m, depth - 1);
      if (nodes_[std::size_t(nodes_[std::size_t(v)].children.back())].pn == 0) {
        break;
      }
    }
    nodes_[std::size_t(v)].expanded = true;
  }

  void refresh(int v) {
    auto& n = nodes_[std::size_t(v)];
    if (!n.expanded) {
      return;
    }
    if (n.is_or) {
      n.pn = kInf;
      n.dn = 0;
      for (auto c : n.children) {
        n.pn = std::min(n.pn, nodes_[std::size_t(c)].pn);
        n.dn = add(n.dn, nodes_[std::size_t(c)].dn);
      }
    } else {
      n.pn = 0;
      n.dn = kInf;
      for (auto c : n.children) {
        n.pn = add(n.pn, nodes_[std::size_t(c)].pn);
        n.dn = std::min(n.dn, nodes_[std::size_t(c)].dn);
      }
    }
  }

  int select() const {
    int v = 0;
    while (nodes_[std::size_t(v)].expanded) {
      auto const& n = nodes_[std::size_t(v)];
      int best = -1;
      for (auto c : n.children) {
        auto const& k = nodes_[std::size_t(c)];
        if (best < 0 || (n.is_or ? k.pn < nodes_[std::size_t(best)].pn
                                 : k.dn < nodes_[std::size_t(best)].dn)) {
          best = c;
        }
      }
      v = best;
    }
    return v;
  }

  const Game& game_;
  std::vector<Move> initial_;
  int depth_;
  std::uint64_t budget_;
  std::uint64_t expansions_ = 0;
  bool exhausted_ = false;
  std::vector<Node> nodes_;
};

struct Saturator {
  const Game& game;
  std::size_t max_play_nodes;
  std::uint64_t budget;
  std::uint64_t states = 0;

  std::optional<Network> run(const GameState& s) {
    if (++states > budget) {
      return std::nullopt;
    }
    auto const move = game.first_forall_move(s);
    if (!move) {
      return s.net;
    }
    for (auto const& r : game.minimal_responses(s, *move)) {
      if (r.nodes.size() > max_play_nodes) {
        continue;
      }
      auto const chk = game.apply_move(s, *move, r);
      if (chk.forall_wins) {
        continue;
      }
      if (auto done = run(chk.next)) {
        return done;
      }
      if (states > budget) {
        return std::nullopt;
      }
    }
    return std::nullopt;
  }
};

}  // namespace

SearchResult bounded_nonrep_search(const OrderedAlgebra& alg,
                                   bool with_identity,
                                   const SearchOptions& options) {
  FiniteGameAlgebra const fa(alg);
  Game const game(fa, with_identity);
  SearchResult out;
  auto initial = game.initial_moves();
  if (!options.initial.empty()) {
    std::vector<Move> chosen;
    for (auto [a, b] : options.initial) {
      if (a >= alg.size() || b >= alg.size() || alg.leq(a, b)) {
        throw ValidationError("initial move needs elements a !<= b");
      }
      chosen.push_back(Move::init(FiniteGameAlgebra::elem(a),
                                  FiniteGameAlgebra::elem(b)));
    }
    initial = std::move(chosen);
  }

  if (options.depth > 0) {
    ProofSearch search(game, initial, options.depth, options.budget);
    auto const win = search.run();
    out.states = search.expansions();
    if (win) {
      out.verdict = SearchVerdict::not_representable;
      out.qualifier = "under minimal-response semantics";
      out.winning_initial = win;
      return out;
    }
    out.budget_exhausted = search.exhausted();
  }

  // Saturate one play per initial move and read off the membership map.
  std::vector<Network> plays;
  std::size_t total = 0;
  for (auto const& m : initial) {
    std::optional<Network> found;
    for (auto const& r : game.minimal_responses(GameState{}, m)) {
      auto const chk = game.apply_move(GameState{}, m, r);
      if (chk.forall_wins) {
        continue;
      }
      Saturator sat{game, options.max_play_nodes, options.saturation_budget};
      found = sat.run(chk.next);
      out.states += sat.states;
      if (found) {
        break;
      }
    }
    if (!found) {
      return out;
    }
    total += found->nodes.size();
    if (total > options.max_nodes || total > kMaxCarrier) {
      return out;
    }
    plays.push_back(std::move(*found));
  }
  if (plays.empty()) {
    return out;
  }
  std::vector<std::string> names;
  for (std::size_t p = 0; p < plays.size(); ++p) {
    for (auto x : plays[p].nodes) {
      names.push_back("p" + std::to_string(p) + "n" + std::to_string(x));
    }
  }
  auto const base = StateSpace::make(names);
  std::vector<Relation> images;
  for (Index a = 0; a < alg.size(); ++a) {
    auto const e = FiniteGameAlgebra::elem(a);
    Relation r(base);
    std::size_t offset = 0;
    for (auto const& net : plays) {
      for (std::size_t i = 0; i < net.nodes.size(); ++i) {
        for (std::size_t j = 0; j < net.nodes.size(); ++j) {
          if (net.has(net.nodes[i], net.nodes[j], e)) {
            r.insert(offset + i, offset + j);
          }
        }
      }
      offset += net.nodes.size();
    }
    images.push_back(std::move(r));
  }
  Representation theta{alg, base, std::move(images),
                       {Symbol::compose_demonic, Symbol::inclusion}};
  if (with_identity) {
    theta.signature.push_back(Symbol::identity);
  }
  auto report = verify_embedding(theta);
  if (report.ok()) {
    out.verdict = SearchVerdict::representable;
  }
  out.theta = std::move(theta);
  out.theta_report = std::move(report);
  return out;
}

// --- Traces -----------------------------------------------------------------

Trace play_script(std::size_t n, ExistsPlayer exists, std::uint64_t seed) {
  AnAlgebra const alg(n);
  Game const game(alg, true);
  ForallScript script(n);
  std::optional<GridStrategy> grid;
  if (exists == ExistsPlayer::grid) {
    grid.emplace(n);
  }
  std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32),
                    std::uint32_t(n)};
  std::mt19937_64 rng(seq);
  Trace t;
  t.n = n;
  t.exists = exists;
  GameState s;
  std::optional<Move> move = script.initial();
  while (move) {
    TraceStep step{*move, 0};
    Network response;
    if (grid) {
      try {
        response = move->kind == Move::Kind::init
                       ? grid->initial(move->a, move->b)
                       : grid->respond(s, *move);
      } catch (const OutOfContract&) {
        t.steps.push_back(std::move(step));
        t.result = "out-of-contract round " + std::to_string(s.round + 1);
        return t;
      }
    } else {
      auto const rs = game.minimal_responses(s, *move);
      std::uniform_int_distribution<std::size_t> pick(0, rs.size() - 1);
      step.response = pick(rng);
      response = rs[step.response];
    }
    auto const chk = game.apply_move(s, *move, response);
    if (!chk.legal) {
      throw ConsistencyError("illegal response in scripted play: " +
                             chk.reason);
    }
    t.steps.push_back(std::move(step));
    s = chk.next;
    if (chk.forall_wins) {
      break;
    }
    move = script.next(s);
  }
  t.result = std::string(game.forall_wins(s) ? "forall-wins" : "exists-survives") +
             " round " + std::to_string(s.round);
  return t;
}

std::string to_string(const Trace& t, const AnAlgebra& alg) {
  Game const game(alg, true);
  std::ostringstream os;
  os << "game " << t.n << " exists "
     << (t.exists == ExistsPlayer::grid ? "grid" : "minimal") << "\n";
  for (auto const& s : t.steps) {
    os << game.show(s.move);
    if (t.exists == ExistsPlayer::minimal) {
      os << " -> " << s.response;
    }
    os << "\n";
  }
  if (!t.result.empty()) {
    os << "result " << t.result << "\n";
  }
  return os.str();
}

Trace parse_trace(std::string_view text) {
  Trace t;
  std::size_t pos = 0;
  bool header = false;
  std::unique_ptr<AnAlgebra> alg;
  while (pos < text.size()) {
    auto const eol = std::min(text.find('\n', pos), text.size());
    auto line = text.substr(pos, eol - pos);
    auto const start = pos;
    pos = eol + 1;
    auto const first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || line[first] == '#') {
      continue;
    }
    auto fail = [&](std::string msg, std::size_t col) {
      throw make_parse_error(std::move(msg), text, start + col);
    };
    if (!header) {
      std::istringstream is{std::string(line)};
      std::string kw, ex, who;
      std::size_t n = 0;
      if (!(is >> kw >> n >> ex >> who) || kw != "game" || ex != "exists" ||
          (who != "grid" && who != "minimal")) {
        fail("expected 'game <n> exists grid|minimal'", first);
      }
      t.n = n;
      t.exists = who == "grid" ? ExistsPlayer::grid : ExistsPlayer::minimal;
      alg = std::make_unique<AnAlgebra>(n);
      header = true;
      continue;
    }
    if (line.substr(first, 7) == "result ") {
      auto r = std::string(line.substr(first + 7));
      while (!r.empty() && (r.back() == '\r' || r.back() == ' ')) {
        r.pop_back();
      }
      t.result = r;
      continue;
    }
    TraceStep step;
    auto const arrow = line.find("->");
    auto move_text = line.substr(0, arrow);
    if (t.exists == ExistsPlayer::minimal) {
      if (arrow == std::string_view::npos) {
        fail("minimal traces give '-> <response>' on each move", first);
      }
      auto const num = line.substr(arrow + 2);
      auto const d = num.find_first_not_of(" \t");
      std::size_t v = 0;
      bool any = false;
      for (auto i = d; d != std::string_view::npos && i < num.size(); ++i) {
        if (std::isdigit(std::uint8_t(num[i]))) {
          v = v * 10 + std::size_t(num[i] - '0');
          any = true;
        } else if (!std::isspace(std::uint8_t(num[i]))) {
          fail("expected a response index", arrow + 2 + i);
        }
      }
      if (!any) {
        fail("expected a response index", arrow + 2);
      }
      step.response = v;
    } else if (arrow != std::string_view::npos) {
      fail("grid traces take no response index", arrow);
    }
    Game const game(*alg, true);
    try {
      step.move = game.parse_move(move_text);
    } catch (const ParseError& e) {
      fail(e.message(), e.offset());
    }
    t.steps.push_back(std::move(step));
  }
  if (!header) {
    throw make_parse_error("missing 'game' header", text, 0);
  }
  return t;
}

std::string replay(const Trace& t) {
  AnAlgebra const alg(t.n);
  Game const game(alg, true);
  std::optional<GridStrategy> grid;
  if (t.exists == ExistsPlayer::grid) {
    grid.emplace(t.n);
  }
  GameState s;
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    auto const& step = t.steps[i];
    auto const where = "step " + std::to_string(i + 1) + ": ";
    if (game.forall_wins(s)) {
      throw ValidationError(where + "the game is already over");
    }
    std::string why;
    if (!game.move_allowed(s, step.move, &why)) {
      throw ValidationError(where + why);
    }
    Network response;
    if (grid) {
      try {
        response = step.move.kind == Move::Kind::init
                       ? grid->initial(step.move.a, step.move.b)
                       : grid->respond(s, step.move);
      } catch (const OutOfContract&) {
        return "out-of-contract round " + std::to_string(s.round + 1);
      }
    } else {
      auto const rs = game.minimal_responses(s, step.move);
      if (step.response >= rs.size()) {
        throw ValidationError(where + "response index out of range");
      }
      response = rs[step.response];
    }
    auto const chk = game.apply_move(s, step.move, response);
    if (!chk.legal) {
      throw ValidationError(where + chk.reason);
    }
    s = chk.next;
  }
  return std::string(game.forall_wins(s) ? "forall-wins" : "exists-survives") +
         " round " + std::to_string(s.round);
}

}  // namespace relic::game

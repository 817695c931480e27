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

#ifndef RELIC_GAME_HPP
#define RELIC_GAME_HPP

// The representation game for (<=, *, 1') structures: networks, the three
// move types, the word structures A_n, a scripted winning strategy for the
// universal player on A_n, the grid strategy for the existential player, and
// a bounded search over finite algebras.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "relic/algebra.hpp"
#include "relic/error.hpp"
#include "relic/representation.hpp"

namespace relic::game {

// Elements are short byte strings; each algebra chooses the encoding.
using Elem = std::string;

class GameAlgebra {
 public:
  virtual ~GameAlgebra() = default;

  virtual bool leq(const Elem& a, const Elem& b) const = 0;
  // Sorted, contains a.
  virtual std::vector<Elem> upclose(const Elem& a) const = 0;
  // nullopt where the product is undefined.
  virtual std::optional<Elem> mul(const Elem& a, const Elem& b) const = 0;
  virtual std::optional<Elem> identity() const = 0;
  // Every (a, b) with a * b == c.
  virtual std::vector<std::pair<Elem, Elem>> factorizations(
      const Elem& c) const = 0;
  // Finite algebras list their elements; infinite ones return nullopt.
  virtual std::optional<std::vector<Elem>> elements() const = 0;

  virtual std::string show(const Elem& a) const = 0;
  // Throws ParseError.
  virtual Elem parse(std::string_view text) const = 0;
};

// --- A_n --------------------------------------------------------------------
// Words over {t, s0, ..., sn}; byte 0 is t and byte i+1 is s_i. The empty
// word is the identity and prints as 1'.

using AnWord = std::string;

inline constexpr std::size_t kMaxAnParameter = 200;

AnWord an_word(std::size_t n, std::string_view text);
std::string an_show(const AnWord& w);
inline AnWord an_t() { return AnWord(1, '\0'); }
inline AnWord an_s(std::size_t i) { return AnWord(1, char(i + 1)); }

// a <= b iff a == b or b replaces the last letter of a by its image under
// L = {(s0, sn)} + {(si, s(i+1) t) : i < n}.
bool an_leq(std::size_t n, const AnWord& a, const AnWord& b);
std::vector<AnWord> an_upclose(std::size_t n, const AnWord& a);
// All words of length <= max_length, shortest first.
std::vector<AnWord> an_words(std::size_t n, std::size_t max_length);

class AnAlgebra final : public GameAlgebra {
 public:
  explicit AnAlgebra(std::size_t n);
  std::size_t n() const noexcept { return n_; }

  bool leq(const Elem& a, const Elem& b) const override;
  std::vector<Elem> upclose(const Elem& a) const override;
  std::optional<Elem> mul(const Elem& a, const Elem& b) const override;
  std::optional<Elem> identity() const override { return Elem(); }
  std::vector<std::pair<Elem, Elem>> factorizations(
      const Elem& c) const override;
  std::optional<std::vector<Elem>> elements() const override {
    return std::nullopt;
  }
  std::string show(const Elem& a) const override { return an_show(a); }
  Elem parse(std::string_view text) const override {
    return an_word(n_, text);
  }

 private:
  std::size_t n_;
};

// A finite ordered algebra; element a is the one-byte string {a}.
class FiniteGameAlgebra final : public GameAlgebra {
 public:
  explicit FiniteGameAlgebra(OrderedAlgebra alg);
  const OrderedAlgebra& algebra() const noexcept { return alg_; }
  static Elem elem(Index a) { return Elem(1, char(a)); }
  static Index index(const Elem& e) { return Index(std::uint8_t(e.at(0))); }

  bool leq(const Elem& a, const Elem& b) const override;
  std::vector<Elem> upclose(const Elem& a) const override;
  std::optional<Elem> mul(const Elem& a, const Elem& b) const override;
  std::optional<Elem> identity() const override;
  std::vector<std::pair<Elem, Elem>> factorizations(
      const Elem& c) const override;
  std::optional<std::vector<Elem>> elements() const override;
  std::string show(const Elem& a) const override;
  Elem parse(std::string_view text) const override;

 private:
  OrderedAlgebra alg_;
};

// The words that occur in the universal player's scripted play on A_n,
// with concatenation where it stays inside the set and the induced order.
OrderedAlgebra an_truncation(std::size_t n);

// --- Networks ---------------------------------------------------------------

using Node = int;

// Either exactly `elems`, or (cofinite) everything except `elems`.
struct ForbSet {
  bool cofinite = false;
  std::set<Elem> elems;

  bool contains(const Elem& e) const {
    return cofinite != (elems.count(e) != 0);
  }
  bool empty() const { return !cofinite && elems.empty(); }
  bool subset_of(const ForbSet& other) const;
  friend bool operator==(const ForbSet&, const ForbSet&) = default;
};

struct Network {
  std::vector<Node> nodes;  // ascending
  std::map<std::pair<Node, Node>, std::set<Elem>> labels;  // absent: empty
  std::map<Node, ForbSet> forb;                            // absent: empty

  const std::set<Elem>& label(Node x, Node y) const;
  const ForbSet& forbidden(Node x) const;
  bool has(Node x, Node y, const Elem& e) const {
    return label(x, y).count(e) != 0;
  }
  bool has_node(Node x) const;
  Node fresh() const { return nodes.empty() ? 0 : nodes.back() + 1; }

  friend bool operator==(const Network&, const Network&) = default;
};

// N is contained in M: nodes, labels and forbidden sets.
bool contained_in(const Network& n, const Network& m);

struct Move {
  enum class Kind { init, witness, demonic, choice };

  Kind kind = Kind::init;
  Node x = 0;
  Node y = 0;
  Node z = 0;
  Elem a;
  Elem a_plus;  // demonic only
  Elem b;

  static Move init(Elem a, Elem b);
  static Move witness(Node x, Node y, Elem a, Elem b);
  static Move demonic(Node x, Node y, Node z, Elem a, Elem a_plus, Elem b);
  static Move choice(Node x, Node y, Node z, Elem a, Elem b);

  friend bool operator==(const Move&, const Move&) = default;
};

struct GameState {
  Network net;
  bool started = false;  // the initial round has been played
  Node x0 = 0;
  Node y0 = 0;
  Elem a0;
  Elem b0;
  std::size_t round = 0;  // moves played after the initial one
};

struct MoveCheck {
  bool legal = false;
  std::string reason;       // why the response is illegal
  bool forall_wins = false; // b0 reached or the network is inconsistent
  std::optional<bool> accepted;  // choice moves
  std::optional<Node> chosen;    // the z, w or accepting node used
  GameState next;
};

class Game {
 public:
  // Without the identity requirement this is the (<=, *) game.
  Game(const GameAlgebra& alg, bool with_identity);

  const GameAlgebra& algebra() const noexcept { return *alg_; }
  bool with_identity() const noexcept { return with_identity_; }

  // Adds the up-closure of e to N(x, y).
  void add_label(Network& net, Node x, Node y, const Elem& e) const;
  // Adds a fresh node; with the identity requirement it gets N(z,z) = 1'^.
  Node add_node(Network& net) const;

  // Labels up-closed and, with the identity requirement, 1' in N(x,y)
  // exactly when x = y.
  bool well_formed(const Network& net, std::string* why = nullptr) const;
  bool consistent(const Network& net) const;
  bool forall_wins(const GameState& s) const;

  // Whether the universal player may make this move in this state.
  bool move_allowed(const GameState& s, const Move& m,
                    std::string* why = nullptr) const;
  // The current network is already a legal response.
  bool trivial(const GameState& s, const Move& m) const;

  MoveCheck apply_move(const GameState& s, const Move& m,
                       const Network& response) const;

  // Witness and demonic moves: one response per existing node plus one
  // with a fresh node. Choice: accept, then reject with a fresh node. Init:
  // a one-node and a two-node network. Ill-formed candidates are dropped.
  std::vector<Network> minimal_responses(const GameState& s,
                                         const Move& m) const;

  // Every allowed non-trivial move in `s` (after the initial round); the
  // order is deterministic. Needs an algebra that can enumerate the
  // relevant elements: finite, or A_n where moves are read off labels.
  std::vector<Move> forall_moves(const GameState& s) const;
  std::optional<Move> first_forall_move(const GameState& s) const;
  // Every initial move a !<= b; finite algebras only.
  std::vector<Move> initial_moves() const;

  std::string show(const Move& m) const;
  Move parse_move(std::string_view text) const;
  std::string show(const Network& net) const;

 private:
  const GameAlgebra* alg_;
  bool with_identity_;
};

// --- Strategies -------------------------------------------------------------

// The universal player's script on A_n: init s0t !<= snt; witness splitting
// s0t; choice (s_n, t) across the new node; witnesses s1 t ... s(n-1) t
// down the chain; a demonic move into the node created by the rejection.
// Node roles are resolved against the actual responses.
class ForallScript {
 public:
  explicit ForallScript(std::size_t n);

  Move initial() const;
  // nullopt once the script is exhausted or its assumptions fail.
  std::optional<Move> next(const GameState& s);

 private:
  std::size_t n_;
  std::size_t step_ = 0;
  Node node1_ = 0;
  Node forbidden_node_ = 0;
  std::vector<Node> chain_;
};

struct Grid {
  std::vector<Node> D;  // ascending
  std::set<Node> T;
  std::map<std::pair<Node, Node>, AnWord> f;

  const AnWord* at(Node x, Node y) const;
  friend bool operator==(const Grid&, const Grid&) = default;
};

// Grid conditions (i)-(iv); one message per violated instance.
std::vector<std::string> check_grid(const Grid& g, std::size_t n);
// The network a grid determines.
Network grid_network(const Grid& g, std::size_t n);
// Hypotheses (2)-(4) at round k; (1) is check_grid plus network equality.
std::vector<std::string> check_hypotheses(const Grid& g, std::size_t n,
                                          std::size_t k);

class OutOfContract : public Error {
 public:
  using Error::Error;
};

// The existential player's grid strategy on A_n (n >= 2), valid for the
// moves of rounds 1 .. n-2.
class GridStrategy {
 public:
  explicit GridStrategy(std::size_t n);

  Network initial(const AnWord& a, const AnWord& b);
  // Throws OutOfContract when round s.round + 1 is n-1 or later, and
  // ConsistencyError when a case the strategy rules out occurs.
  Network respond(const GameState& s, const Move& m);
  const Grid& grid() const noexcept { return grid_; }

 private:
  Node add_node(bool terminal);
  std::size_t n_;
  AnAlgebra alg_;
  Grid grid_;
};

// --- Verification -----------------------------------------------------------

struct GameLemmaOptions {
  std::size_t initial_word_length = 2;  // initial moves a with |a| <= this
  std::size_t exhaustive_max_n = 4;     // larger n are sampled
  std::uint64_t budget = 2'000'000;     // exhaustive sequence limit
  std::uint64_t samples = 10'000;       // sampled sequences
  std::uint64_t seed = 1;
};

struct GameLemmaReport {
  std::size_t n = 0;
  // (a) the script against every minimal response.
  bool script_wins = false;
  std::uint64_t script_tree_nodes = 0;
  std::uint64_t script_tree_leaves = 0;
  std::size_t script_max_rounds = 0;
  std::vector<std::string> script_failure;  // trace of a surviving play
  // (b) the grid strategy against enumerated or sampled move sequences.
  std::size_t grid_rounds = 0;
  bool grid_exhaustive = false;
  std::uint64_t grid_sequences = 0;
  std::uint64_t grid_states = 0;
  // Plays the existential player loses, illegal responses, or cases the
  // strategy does not cover.
  std::uint64_t grid_losses = 0;
  // Rounds after which a grid condition or hypothesis fails.
  std::uint64_t grid_violation_rounds = 0;
  std::vector<std::string> grid_violations;  // first kMaxListed messages
  std::vector<std::string> grid_failure;     // trace of the first problem
  bool inconclusive = false;

  static constexpr std::size_t kMaxListed = 200;

  bool grid_ok() const noexcept {
    return grid_losses == 0 && grid_violation_rounds == 0;
  }
  bool ok() const noexcept { return script_wins && grid_ok() && !inconclusive; }
};

GameLemmaReport verify_game_lemmas(std::size_t n,
                                   const GameLemmaOptions& options = {});
std::string to_string(const GameLemmaReport& r);

enum class SearchVerdict { not_representable, unknown, representable };

std::string_view to_string(SearchVerdict v);

struct SearchOptions {
  std::size_t depth = 3;              // rounds after the initial one
  std::uint64_t budget = 200'000;     // expanded game states
  std::size_t max_nodes = 64;         // nodes in the union of saturated plays
  std::size_t max_play_nodes = 16;    // nodes in one saturated play
  std::uint64_t saturation_budget = 2'000;  // states per saturation attempt
  // Restricts the universal player's initial moves (a, b); empty means all.
  std::vector<std::pair<Index, Index>> initial;
};

struct SearchResult {
  SearchVerdict verdict = SearchVerdict::unknown;
  // "under minimal-response semantics" for not_representable.
  std::string qualifier;
  std::optional<Move> winning_initial;
  std::uint64_t states = 0;
  bool budget_exhausted = false;
  std::optional<Representation> theta;
  std::optional<EmbeddingReport> theta_report;
};

// Looks for a universal win within options.depth rounds against minimal
// responses; failing that, tries to saturate a play for every initial move
// and checks the extracted map a -> {(x,y) : a in N(x,y)}.
SearchResult bounded_nonrep_search(const OrderedAlgebra& alg,
                                   bool with_identity,
                                   const SearchOptions& options = {});

// --- Traces -----------------------------------------------------------------

enum class ExistsPlayer { minimal, grid };

struct TraceStep {
  Move move;
  std::size_t response = 0;  // index into minimal_responses (minimal play)
};

struct Trace {
  std::size_t n = 0;
  ExistsPlayer exists = ExistsPlayer::grid;
  std::vector<TraceStep> steps;
  // "forall-wins round k", "exists-survives round k" or
  // "out-of-contract round k".
  std::string result;
};

// The universal player's script on A_n against the grid strategy or against
// seeded random choices among minimal responses. Stops at a win, when the
// script runs out, or when the grid strategy leaves its contract.
Trace play_script(std::size_t n, ExistsPlayer exists, std::uint64_t seed = 1);

std::string to_string(const Trace& t, const AnAlgebra& alg);
Trace parse_trace(std::string_view text);
// Replays a trace and returns the recomputed result line; throws
// ValidationError on an illegal step.
std::string replay(const Trace& t);

}  // namespace relic::game

#endif  // RELIC_GAME_HPP

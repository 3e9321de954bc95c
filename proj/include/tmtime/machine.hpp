#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tmtime {

using StateId = std::uint32_t;
using SymbolId = std::uint32_t;  // index into the tape alphabet
using RuleIndex = std::uint32_t;
using Word = std::vector<SymbolId>;

enum class Direction : std::int8_t { Left = -1, Right = 1 };

constexpr int step_of(Direction d) { return static_cast<int>(d); }

struct Rule {
  StateId from;
  SymbolId read;
  StateId to;
  SymbolId write;
  Direction move;

  auto operator<=>(const Rule&) const = default;
};

// A machine as written in the text format, before any checking.
struct RuleText {
  std::string from, read, to, write;
  Direction move = Direction::Right;

  bool operator==(const RuleText&) const = default;
};

struct MachineDescription {
  std::vector<std::string> input_alphabet;
  std::vector<std::string> tape_alphabet;
  std::string blank = "_";
  std::string start, accept, reject;
  std::vector<RuleText> rules;
  // Optional state order. Start, accept and reject always come first; states
  // listed here follow in this order, then any others by first appearance.
  // Not part of the text format.
  std::vector<std::string> states;
};

// A validated one-tape NTM (Q, Σ, Γ, blank, δ, start, accept, reject).
//
// States are numbered start = 0, accept = 1, reject = 2, and then every other
// state in order of first appearance in the rule list (unless the description
// carries an explicit order, as composed and decoded machines do). Rules keep their
// declaration order, which fixes the order nondeterministic branches are
// explored in everywhere else in the library.
class Machine {
 public:
  static Machine validate(const MachineDescription& raw);

  std::size_t state_count() const { return state_names_.size(); }
  std::span<const std::string> state_names() const { return state_names_; }
  const std::string& state_name(StateId s) const { return state_names_.at(s); }
  std::span<const std::string> symbols() const { return symbols_; }
  const std::string& symbol_name(SymbolId a) const { return symbols_.at(a); }
  std::span<const SymbolId> input_alphabet() const { return input_; }
  bool in_input_alphabet(SymbolId a) const { return a < is_input_.size() && is_input_[a]; }

  SymbolId blank() const { return blank_; }
  StateId start() const { return 0; }
  StateId accept() const { return 1; }
  StateId reject() const { return 2; }
  bool is_halting(StateId s) const { return s == accept() || s == reject(); }

  std::span<const Rule> rules() const { return rules_; }
  const Rule& rule(RuleIndex i) const { return rules_.at(i); }

  // Indices of rules applicable to (state, symbol), in declaration order.
  std::span<const RuleIndex> rules_for(StateId s, SymbolId a) const {
    const auto& bucket = table_[s * symbols_.size() + a];
    return bucket;
  }

  std::size_t branching() const;  // max number of rules on one (state, symbol)
  bool deterministic() const { return branching() <= 1; }

  int find_state(std::string_view name) const;    // -1 if absent
  int find_symbol(std::string_view name) const;   // -1 if absent

  MachineDescription description() const;

  bool operator==(const Machine& other) const;

 private:
  std::vector<std::string> state_names_;
  std::vector<std::string> symbols_;
  std::vector<SymbolId> input_;
  std::vector<bool> is_input_;
  SymbolId blank_ = 0;
  std::vector<Rule> rules_;
  std::vector<std::vector<RuleIndex>> table_;
};

// Text format ("ntm v1"); see README for the grammar.
MachineDescription parse_machine_text(std::string_view text);
std::string format_machine_text(const Machine& m);
Machine load_machine_file(const std::string& path);
Machine machine_from_text(std::string_view text);

// Composition: runs m1, entering m2's start where m1 would accept. m1's
// reject is merged into m2's reject. States are renamed "a.<name>" (m1) and
// "b.<name>" (m2).
Machine compose(const Machine& m1, const Machine& m2);

// Words. Single-character alphabets read "0110"; otherwise tokens are
// separated by whitespace. Empty text is the empty word.
Word parse_word(const Machine& m, std::string_view text, bool allow_tape_symbols = false);
std::string format_word(const Machine& m, std::span<const SymbolId> w);
std::vector<StateId> parse_states(const Machine& m, std::string_view text);  // "s,a" or "s a"
std::string format_states(const Machine& m, std::span<const StateId> states);

}  // namespace tmtime

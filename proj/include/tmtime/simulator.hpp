#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tmtime/machine.hpp"

namespace tmtime {

// Bi-infinite tape. Cells outside the stored window read as blank; the window
// grows on writes.
class Tape {
 public:
  explicit Tape(SymbolId blank = 0) : blank_(blank) {}
  Tape(SymbolId blank, std::span<const SymbolId> input);

  SymbolId get(std::int64_t cell) const {
    const std::int64_t i = cell - origin_;
    if (i < 0 || i >= static_cast<std::int64_t>(cells_.size())) return blank_;
    return cells_[static_cast<std::size_t>(i)];
  }
  void set(std::int64_t cell, SymbolId a);

  SymbolId blank() const { return blank_; }
  std::map<std::int64_t, SymbolId> non_blank() const;

  // Appends a position-independent fingerprint of the non-blank content,
  // relative to `anchor`.
  void fingerprint(std::int64_t anchor, std::string& out) const;

  bool operator==(const Tape& other) const { return non_blank() == other.non_blank(); }

 private:
  SymbolId blank_;
  std::int64_t origin_ = 0;
  std::vector<SymbolId> cells_;
};

struct Configuration {
  Tape tape;
  std::int64_t head = 0;
  StateId state = 0;
  std::uint64_t step = 0;

  bool operator==(const Configuration&) const = default;
};

struct Computation {
  Word input;
  std::vector<RuleIndex> choices;  // one rule per step
  Configuration final;
  bool halted = false;

  std::uint64_t steps() const { return choices.size(); }
};

using CrossingSequence = std::vector<StateId>;

struct RunViolation {
  Word input;
  Computation computation;
  std::uint64_t steps = 0;
  std::uint64_t bound = 0;
};

Configuration start_configuration(const Machine& m, std::span<const SymbolId> w);

struct Successor {
  RuleIndex rule;
  Configuration next;
};
std::vector<Successor> successors(const Machine& m, const Configuration& c);

// Applies one rule in place; the rule must match the configuration.
void apply_rule(const Machine& m, Configuration& c, RuleIndex rule);

// Re-runs `choices` from the start configuration on `w`, checking every
// choice is applicable. Throws InvalidReplay otherwise.
Configuration replay(const Machine& m, std::span<const SymbolId> w, std::span<const RuleIndex> choices);
Computation replay_computation(const Machine& m, const Word& w, std::span<const RuleIndex> choices);

// Mutable depth-first search state handed to enumeration visitors.
class Run {
 public:
  Run(const Machine& m, std::span<const SymbolId> w);

  const Machine& machine() const { return *m_; }
  const Word& input() const { return input_; }
  const Tape& tape() const { return tape_; }
  std::int64_t head() const { return head_; }
  StateId state() const { return state_; }
  std::uint64_t step() const { return choices_.size(); }
  std::span<const RuleIndex> choices() const { return choices_; }
  bool halted() const { return m_->is_halting(state_); }

  void push(RuleIndex rule);
  void pop();

  Computation to_computation() const;

 private:
  struct Undo {
    std::int64_t head;
    SymbolId old_symbol;
    StateId old_state;
  };
  const Machine* m_;
  Word input_;
  Tape tape_;
  std::int64_t head_ = 0;
  StateId state_ = 0;
  std::vector<RuleIndex> choices_;
  std::vector<Undo> undo_;
};

// Depth-first over every choice sequence in rule declaration order. The
// visitor sees each leaf: a halted computation with at most max_steps steps
// or a computation cut off at exactly max_steps. Returning false stops the
// enumeration.
void for_each_computation(const Machine& m, std::span<const SymbolId> w, std::uint64_t max_steps,
                          const std::function<bool(const Run&)>& visit);
std::vector<Computation> enumerate_computations(const Machine& m, std::span<const SymbolId> w,
                                                std::uint64_t max_steps);

// Generic depth-first walk over computation prefixes (root included), in
// rule declaration order. `on_node` decides whether to descend; `on_leave`
// runs once a node's subtree is finished, before its last step is undone.
enum class Visit { Expand, Skip, Stop };
void depth_first(const Machine& m, std::span<const SymbolId> w, const std::function<Visit(const Run&)>& on_node,
                 const std::function<void(const Run&)>& on_leave = {});

// Ok (nullopt) iff every computation on w halts within C|w|+D steps.
// Otherwise the first computation, in enumeration order, that reaches step
// C|w|+D+1.
// `nodes`, when given, accumulates the number of search nodes visited.
std::optional<RunViolation> check_input(const Machine& m, std::span<const SymbolId> w, std::uint64_t C,
                                        std::uint64_t D, std::uint64_t* nodes = nullptr);

// check_input over Σ^{<=N} in length-then-lexicographic order.
std::optional<RunViolation> brute_force_runs_in_time(const Machine& m, std::uint64_t C, std::uint64_t D,
                                                     std::uint64_t N);

// Calls visit on every word of the given length over `alphabet`, in
// lexicographic order of alphabet positions. Returning false stops.
void for_each_word(std::span<const SymbolId> alphabet, std::size_t length,
                   const std::function<bool(const Word&)>& visit);

// crs_boundary^t: states after each crossing of boundary `boundary` (between
// cells boundary-1 and boundary) during the first t steps.
CrossingSequence crossing_sequence(const Machine& m, const Computation& comp, std::int64_t boundary,
                                   std::uint64_t t);

// All non-empty crossing sequences of the first t steps, keyed by boundary.
std::map<std::int64_t, CrossingSequence> crossing_sequences(const Machine& m, std::span<const SymbolId> w,
                                                            std::span<const RuleIndex> choices);

// Boundary crossed by a step from `head` moving `d`.
constexpr std::int64_t crossed_boundary(std::int64_t head, Direction d) {
  return d == Direction::Right ? head + 1 : head;
}

}  // namespace tmtime

#include "tmtime/simulator.hpp"

#include <algorithm>
#include <cstring>
#include <string>
#include <unordered_map>

#include "tmtime/error.hpp"

namespace tmtime {

Tape::Tape(SymbolId blank, std::span<const SymbolId> input) : blank_(blank), cells_(input.begin(), input.end()) {}

void Tape::set(std::int64_t cell, SymbolId a) {
  if (cells_.empty()) {
    if (a == blank_) return;
    origin_ = cell;
    cells_.push_back(a);
    return;
  }
  std::int64_t i = cell - origin_;
  if (i < 0) {
    if (a == blank_) return;
    const auto grow = static_cast<std::size_t>(-i);
    cells_.insert(cells_.begin(), grow, blank_);
    origin_ = cell;
    i = 0;
  } else if (i >= static_cast<std::int64_t>(cells_.size())) {
    if (a == blank_) return;
    cells_.resize(static_cast<std::size_t>(i) + 1, blank_);
  }
  cells_[static_cast<std::size_t>(i)] = a;
}

std::map<std::int64_t, SymbolId> Tape::non_blank() const {
  std::map<std::int64_t, SymbolId> out;
  for (std::size_t i = 0; i < cells_.size(); ++i)
    if (cells_[i] != blank_) out.emplace(origin_ + static_cast<std::int64_t>(i), cells_[i]);
  return out;
}

void Tape::fingerprint(std::int64_t anchor, std::string& out) const {
  std::size_t lo = 0, hi = cells_.size();
  while (lo < hi && cells_[lo] == blank_) ++lo;
  while (hi > lo && cells_[hi - 1] == blank_) --hi;
  const std::int64_t offset = lo < hi ? origin_ + static_cast<std::int64_t>(lo) - anchor : 0;
  char buf[sizeof offset];
  std::memcpy(buf, &offset, sizeof offset);
  out.append(buf, sizeof buf);
  for (std::size_t i = lo; i < hi; ++i) {
    const SymbolId a = cells_[i];
    out.push_back(static_cast<char>(a & 0xff));
    out.push_back(static_cast<char>((a >> 8) & 0xff));
  }
}

Configuration start_configuration(const Machine& m, std::span<const SymbolId> w) {
  for (SymbolId a : w) {
    if (!m.in_input_alphabet(a))
      throw Error(ErrorCode::SymbolNotInSigma, "input symbol '" + (a < m.symbols().size() ? m.symbol_name(a) : std::to_string(a)) + "' is not in the input alphabet");
  }
  return Configuration{Tape(m.blank(), w), 0, m.start(), 0};
}

void apply_rule(const Machine& m, Configuration& c, RuleIndex rule) {
  const Rule& r = m.rule(rule);
  c.tape.set(c.head, r.write);
  c.head += step_of(r.move);
  c.state = r.to;
  ++c.step;
}

std::vector<Successor> successors(const Machine& m, const Configuration& c) {
  std::vector<Successor> out;
  if (m.is_halting(c.state)) return out;
  for (RuleIndex i : m.rules_for(c.state, c.tape.get(c.head))) {
    Configuration next = c;
    apply_rule(m, next, i);
    out.push_back({i, std::move(next)});
  }
  return out;
}

Configuration replay(const Machine& m, std::span<const SymbolId> w, std::span<const RuleIndex> choices) {
  Configuration c = start_configuration(m, w);
  for (std::size_t t = 0; t < choices.size(); ++t) {
    const RuleIndex i = choices[t];
    if (i >= m.rules().size())
      throw Error(ErrorCode::InvalidReplay, "step " + std::to_string(t + 1) + ": no rule " + std::to_string(i));
    const Rule& r = m.rule(i);
    if (r.from != c.state || r.read != c.tape.get(c.head))
      throw Error(ErrorCode::InvalidReplay, "step " + std::to_string(t + 1) + ": rule " + std::to_string(i) +
                                                " does not apply in state " + m.state_name(c.state));
    apply_rule(m, c, i);
  }
  return c;
}

Computation replay_computation(const Machine& m, const Word& w, std::span<const RuleIndex> choices) {
  Computation comp;
  comp.input = w;
  comp.choices.assign(choices.begin(), choices.end());
  comp.final = replay(m, w, choices);
  comp.halted = m.is_halting(comp.final.state);
  return comp;
}

Run::Run(const Machine& m, std::span<const SymbolId> w)
    : m_(&m), input_(w.begin(), w.end()), tape_(start_configuration(m, w).tape), state_(m.start()) {}

void Run::push(RuleIndex rule) {
  const Rule& r = m_->rule(rule);
  undo_.push_back({head_, tape_.get(head_), state_});
  tape_.set(head_, r.write);
  head_ += step_of(r.move);
  state_ = r.to;
  choices_.push_back(rule);
}

void Run::pop() {
  const Undo u = undo_.back();
  undo_.pop_back();
  choices_.pop_back();
  head_ = u.head;
  state_ = u.old_state;
  tape_.set(head_, u.old_symbol);
}

Computation Run::to_computation() const {
  Computation comp;
  comp.input = input_;
  comp.choices = choices_;
  comp.final = Configuration{tape_, head_, state_, choices_.size()};
  comp.halted = halted();
  return comp;
}

namespace {

// Explicit-stack DFS over choice sequences. `on_node` is called for every
// node (including the root) and returns one of the actions below.
using NodeAction = Visit;

struct Frame {
  std::span<const RuleIndex> rules;
  std::size_t next = 0;
};

template <typename OnNode, typename OnLeave>
void walk(Run& run, OnNode on_node, OnLeave on_leave) {
  std::vector<Frame> stack;
  auto enter = [&]() -> bool {
    switch (on_node(run)) {
      case NodeAction::Stop: return false;
      case NodeAction::Skip: stack.push_back({{}, 0}); return true;
      case NodeAction::Expand:
        stack.push_back({run.machine().rules_for(run.state(), run.tape().get(run.head())), 0});
        return true;
    }
    return true;
  };
  if (!enter()) return;
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.next < f.rules.size()) {
      const RuleIndex rule = f.rules[f.next++];
      run.push(rule);
      if (!enter()) return;
      continue;
    }
    stack.pop_back();
    on_leave(run);
    if (!stack.empty()) run.pop();
  }
}

}  // namespace

void depth_first(const Machine& m, std::span<const SymbolId> w, const std::function<Visit(const Run&)>& on_node,
                 const std::function<void(const Run&)>& on_leave) {
  Run run(m, w);
  walk(run, on_node, [&](const Run& r) {
    if (on_leave) on_leave(r);
  });
}

void for_each_computation(const Machine& m, std::span<const SymbolId> w, std::uint64_t max_steps,
                          const std::function<bool(const Run&)>& visit) {
  Run run(m, w);
  walk(
      run,
      [&](const Run& r) {
        if (r.halted() || r.step() == max_steps) return visit(r) ? NodeAction::Skip : NodeAction::Stop;
        return NodeAction::Expand;
      },
      [](const Run&) {});
}

std::vector<Computation> enumerate_computations(const Machine& m, std::span<const SymbolId> w,
                                                std::uint64_t max_steps) {
  std::vector<Computation> out;
  for_each_computation(m, w, max_steps, [&](const Run& r) {
    out.push_back(r.to_computation());
    return true;
  });
  return out;
}

std::optional<RunViolation> check_input(const Machine& m, std::span<const SymbolId> w, std::uint64_t C,
                                        std::uint64_t D, std::uint64_t* nodes) {
  const std::uint64_t bound = C * w.size() + D;
  const std::uint64_t budget = bound + 1;
  Run run(m, w);
  std::optional<RunViolation> found;

  // For nondeterministic machines, remember for each fully explored
  // configuration (state + tape relative to head) the length of its longest
  // computation. A later occurrence is skipped when that length fits in the
  // steps it has left.
  const bool memo = !m.deterministic();
  std::unordered_map<std::string, std::uint64_t> height_of;
  struct Entry {
    std::string key;  // empty: nothing to record
    std::uint64_t height = 0;
  };
  std::vector<Entry> stack;  // parallel to the DFS stack
  auto key_of = [&](const Run& r) {
    std::string k;
    const StateId s = r.state();
    k.append(reinterpret_cast<const char*>(&s), sizeof(StateId));
    r.tape().fingerprint(r.head(), k);
    return k;
  };

  walk(
      run,
      [&](const Run& r) {
        if (nodes) ++*nodes;
        if (r.step() == budget) {
          found = RunViolation{r.input(), r.to_computation(), r.step(), bound};
          return NodeAction::Stop;
        }
        if (r.halted()) {
          if (memo) stack.push_back({});
          return NodeAction::Skip;
        }
        if (memo) {
          std::string k = key_of(r);
          auto it = height_of.find(k);
          if (it != height_of.end() && r.step() + it->second < budget) {
            stack.push_back({{}, it->second});
            return NodeAction::Skip;
          }
          stack.push_back({std::move(k), 0});
        }
        return NodeAction::Expand;
      },
      [&](const Run&) {
        if (!memo) return;
        Entry e = std::move(stack.back());
        stack.pop_back();
        if (!e.key.empty()) height_of[std::move(e.key)] = e.height;
        if (!stack.empty()) stack.back().height = std::max(stack.back().height, e.height + 1);
      });
  return found;
}

void for_each_word(std::span<const SymbolId> alphabet, std::size_t length,
                   const std::function<bool(const Word&)>& visit) {
  if (alphabet.empty()) {
    if (length == 0) visit(Word{});
    return;
  }
  std::vector<std::size_t> digits(length, 0);
  Word w(length, alphabet[0]);
  while (true) {
    if (!visit(w)) return;
    std::size_t i = length;
    while (i > 0) {
      --i;
      if (++digits[i] < alphabet.size()) {
        w[i] = alphabet[digits[i]];
        break;
      }
      digits[i] = 0;
      w[i] = alphabet[0];
      if (i == 0) return;
    }
    if (length == 0) return;
  }
}

std::optional<RunViolation> brute_force_runs_in_time(const Machine& m, std::uint64_t C, std::uint64_t D,
                                                     std::uint64_t N) {
  std::optional<RunViolation> found;
  for (std::uint64_t n = 0; n <= N && !found; ++n) {
    for_each_word(m.input_alphabet(), n, [&](const Word& w) {
      found = check_input(m, w, C, D);
      return !found;
    });
  }
  return found;
}

CrossingSequence crossing_sequence(const Machine& m, const Computation& comp, std::int64_t boundary,
                                   std::uint64_t t) {
  if (t > comp.choices.size())
    throw Error(ErrorCode::TimeOutOfRange,
                "t = " + std::to_string(t) + " exceeds the computation length " + std::to_string(comp.choices.size()));
  Configuration c = start_configuration(m, comp.input);
  CrossingSequence out;
  for (std::uint64_t i = 0; i < t; ++i) {
    const RuleIndex rule = comp.choices[i];
    const Rule& r = m.rule(rule);
    if (r.from != c.state || r.read != c.tape.get(c.head))
      throw Error(ErrorCode::InvalidReplay, "computation does not replay at step " + std::to_string(i + 1));
    const std::int64_t b = crossed_boundary(c.head, r.move);
    apply_rule(m, c, rule);
    if (b == boundary) out.push_back(c.state);
  }
  return out;
}

std::map<std::int64_t, CrossingSequence> crossing_sequences(const Machine& m, std::span<const SymbolId> w,
                                                            std::span<const RuleIndex> choices) {
  Configuration c = start_configuration(m, w);
  std::map<std::int64_t, CrossingSequence> out;
  for (std::size_t i = 0; i < choices.size(); ++i) {
    const Rule& r = m.rule(choices[i]);
    if (r.from != c.state || r.read != c.tape.get(c.head))
      throw Error(ErrorCode::InvalidReplay, "computation does not replay at step " + std::to_string(i + 1));
    const std::int64_t b = crossed_boundary(c.head, r.move);
    apply_rule(m, c, choices[i]);
    out[b].push_back(c.state);
  }
  return out;
}

}  // namespace tmtime

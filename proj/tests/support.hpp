#pragma once

// Fixtures, a random machine generator and small oracles that recompute
// results with their own sparse-tape simulation, without going through the
// library's Run / Tape / search code.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "tmtime/machine.hpp"

namespace ts {

using namespace tmtime;

inline constexpr std::string_view kHeader =
    "ntm v1\ninput 0 1\ntape 0 1 _\nblank _\nstart s\naccept a\nreject r\n";

inline Machine with_rules(std::string_view rules) { return machine_from_text(std::string(kHeader) + std::string(rules)); }

inline Machine m_acc() { return with_rules("s 0 -> a 0 R\ns 1 -> a 1 R\ns _ -> a _ R\n"); }
inline Machine m_rej() { return with_rules("s 0 -> r 0 R\ns 1 -> r 1 R\ns _ -> r _ R\n"); }
inline Machine m_sweep() { return with_rules("s 0 -> s 0 R\ns 1 -> s 1 R\ns _ -> a _ L\n"); }
inline Machine m_loop() { return with_rules("s 0 -> s 0 R\ns 1 -> s 1 R\ns _ -> s _ R\n"); }
inline Machine m_double() {
  return with_rules(
      "s 0 -> s 0 R\ns 1 -> s 1 R\ns _ -> b _ L\n"
      "b 0 -> b 0 L\nb 1 -> b 1 L\nb _ -> a _ R\n");
}

inline Word word(const Machine& m, std::string_view text) { return parse_word(m, text); }

struct GenOptions {
  std::size_t q_min = 3, q_max = 5;
  std::vector<std::string> input{"0", "1"};
  std::vector<std::string> tape{"0", "1", "_"};
  std::size_t max_branch = 2;
  double halt_bias = 0.3;  // chance a rule goes to accept / reject
};

// A random total machine. State names are s, a, r, then q3, q4, ...
inline Machine random_machine(std::mt19937_64& rng, const GenOptions& o = {}) {
  std::uniform_int_distribution<std::size_t> qd(o.q_min, o.q_max);
  const std::size_t q = qd(rng);
  std::vector<std::string> names{"s", "a", "r"};
  for (std::size_t i = 3; i < q; ++i) names.push_back("q" + std::to_string(i));
  std::vector<std::string> live{"s"};
  for (std::size_t i = 3; i < q; ++i) live.push_back(names[i]);

  MachineDescription d;
  d.input_alphabet = o.input;
  d.tape_alphabet = o.tape;
  d.blank = "_";
  d.start = "s";
  d.accept = "a";
  d.reject = "r";
  d.states = names;
  std::uniform_real_distribution<double> u(0, 1);
  std::uniform_int_distribution<std::size_t> branch(1, o.max_branch);
  std::uniform_int_distribution<std::size_t> sym(0, o.tape.size() - 1);
  std::uniform_int_distribution<std::size_t> any_live(0, live.size() - 1);
  for (const auto& from : live) {
    for (const auto& a : o.tape) {
      const std::size_t b = branch(rng);
      std::vector<RuleText> mine;
      for (std::size_t i = 0; i < b * 4 && mine.size() < b; ++i) {
        RuleText r;
        r.from = from;
        r.read = a;
        const double x = u(rng);
        r.to = x < o.halt_bias * 0.7 ? "a" : x < o.halt_bias ? "r" : live[any_live(rng)];
        r.write = o.tape[sym(rng)];
        r.move = u(rng) < 0.5 ? Direction::Left : Direction::Right;
        bool dup = false;
        for (const auto& e : mine) dup = dup || e == r;
        if (!dup) mine.push_back(r);
      }
      d.rules.insert(d.rules.end(), mine.begin(), mine.end());
    }
  }
  return Machine::validate(d);
}

inline Word random_word(std::mt19937_64& rng, const Machine& m, std::size_t len) {
  auto sigma = m.input_alphabet();
  std::uniform_int_distribution<std::size_t> pick(0, sigma.size() - 1);
  Word w;
  for (std::size_t i = 0; i < len; ++i) w.push_back(sigma[pick(rng)]);
  return w;
}

// Walks a random computation of at most max_steps steps; returns the choices.
inline std::vector<RuleIndex> random_choices(std::mt19937_64& rng, const Machine& m, const Word& w,
                                             std::uint64_t max_steps) {
  std::map<std::int64_t, SymbolId> tape;
  for (std::size_t i = 0; i < w.size(); ++i) tape[static_cast<std::int64_t>(i)] = w[i];
  std::int64_t head = 0;
  StateId state = m.start();
  std::vector<RuleIndex> out;
  while (!m.is_halting(state) && out.size() < max_steps) {
    auto it = tape.find(head);
    const SymbolId a = it == tape.end() ? m.blank() : it->second;
    auto rules = m.rules_for(state, a);
    std::uniform_int_distribution<std::size_t> pick(0, rules.size() - 1);
    const RuleIndex ri = rules[pick(rng)];
    const Rule& r = m.rule(ri);
    tape[head] = r.write;
    head += step_of(r.move);
    state = r.to;
    out.push_back(ri);
  }
  return out;
}

// ---- oracle simulation -------------------------------------------------

struct Trace {
  bool ok = true;  // every choice matched the configuration
  std::map<std::int64_t, SymbolId> tape;
  std::int64_t head = 0;
  StateId state = 0;
  std::uint64_t steps = 0;
  std::map<std::int64_t, std::vector<StateId>> crossings;  // boundary -> states
};

inline Trace oracle_replay(const Machine& m, const Word& w, const std::vector<RuleIndex>& choices,
                           std::optional<std::uint64_t> t = {}) {
  Trace tr;
  for (std::size_t i = 0; i < w.size(); ++i) tr.tape[static_cast<std::int64_t>(i)] = w[i];
  tr.state = m.start();
  const std::uint64_t n = t ? *t : choices.size();
  for (std::uint64_t i = 0; i < n; ++i) {
    const Rule& r = m.rule(choices[i]);
    auto it = tr.tape.find(tr.head);
    const SymbolId a = it == tr.tape.end() ? m.blank() : it->second;
    if (r.from != tr.state || r.read != a || m.is_halting(tr.state)) {
      tr.ok = false;
      return tr;
    }
    tr.tape[tr.head] = r.write;
    // boundary i separates cells i-1 and i
    const std::int64_t boundary = r.move == Direction::Right ? tr.head + 1 : tr.head;
    tr.head += r.move == Direction::Right ? 1 : -1;
    tr.state = r.to;
    tr.crossings[boundary].push_back(r.to);
    ++tr.steps;
  }
  return tr;
}

// Whether some computation on w runs past C|w|+D steps, by plain recursion.
// nullopt when more than node_cap configurations would be visited.
inline std::optional<bool> oracle_violates(const Machine& m, const Word& w, std::uint64_t C, std::uint64_t D,
                                           std::uint64_t node_cap = 2'000'000) {
  const std::uint64_t bound = C * w.size() + D;
  std::map<std::int64_t, SymbolId> tape;
  for (std::size_t i = 0; i < w.size(); ++i) tape[static_cast<std::int64_t>(i)] = w[i];
  std::uint64_t nodes = 0;
  bool blown = false;
  auto rec = [&](auto&& self, std::int64_t head, StateId state, std::uint64_t steps) -> bool {
    if (++nodes > node_cap) {
      blown = true;
      return false;
    }
    if (m.is_halting(state)) return false;
    if (steps == bound) return true;  // not halted and about to take step bound+1
    auto it = tape.find(head);
    const SymbolId a = it == tape.end() ? m.blank() : it->second;
    for (RuleIndex ri : m.rules_for(state, a)) {
      const Rule& r = m.rule(ri);
      const bool had = it != tape.end();
      tape[head] = r.write;
      const bool hit = self(self, head + step_of(r.move), r.to, steps + 1);
      if (had) tape[head] = a;
      else tape.erase(head);
      it = tape.find(head);
      if (hit || blown) return hit;
    }
    return false;
  };
  const bool v = rec(rec, 0, m.start(), 0);
  if (blown) return std::nullopt;
  return v;
}

// ---- oracle part semantics ----------------------------------------------

struct PartOracle {
  std::optional<std::uint64_t> max_length;  // nullopt: no valid computation found
  bool truncated = false;                   // hit the move cap or node cap somewhere
  bool length_is_moves = true;              // length formula equals the move count on every hit
};

// Enumerates every part computation of at most `cap` moves by plain
// recursion over (remainders, content, head, state).
inline PartOracle oracle_part(const Machine& m, const Word& part, const std::vector<StateId>& crs, std::size_t cap,
                              std::uint64_t node_cap = 3'000'000) {
  PartOracle out;
  if (part.empty() || crs.empty()) return out;
  const std::size_t n = part.size();
  Word content = part;
  std::vector<std::uint64_t> internal(n + 1, 0);  // internal[i]: crossings of boundary i, 1 <= i < n
  std::uint64_t nodes = 0;
  auto finish = [&](std::size_t moves) {
    std::uint64_t len = crs.size();
    for (std::size_t i = 1; i < n; ++i) len += internal[i];
    if (len != moves) out.length_is_moves = false;
    if (!out.max_length || len > *out.max_length) out.max_length = len;
  };
  // left remainder crs[lp..], right remainder crs[rp..]
  auto rec = [&](auto&& self, std::size_t lp, std::size_t rp, std::size_t head, StateId state,
                 std::size_t moves) -> void {
    if (++nodes > node_cap) {
      out.truncated = true;
      return;
    }
    if (moves == cap) {
      out.truncated = true;
      return;
    }
    if (m.is_halting(state)) return;
    const SymbolId a = content[head];
    const std::size_t lrem = crs.size() - lp, rrem = crs.size() - rp;
    for (RuleIndex ri : m.rules_for(state, a)) {
      const Rule& r = m.rule(ri);
      content[head] = r.write;
      if (r.move == Direction::Right && head + 1 < n) {
        ++internal[head + 1];
        self(self, lp, rp, head + 1, r.to, moves + 1);
        --internal[head + 1];
      } else if (r.move == Direction::Left && head > 0) {
        ++internal[head];
        self(self, lp, rp, head - 1, r.to, moves + 1);
        --internal[head];
      } else if (r.move == Direction::Left) {  // leaves through the left end
        if (lrem >= 2 && crs[lp] == r.to) self(self, lp + 2, rp, 0, crs[lp + 1], moves + 1);
        if (lrem == 1 && rrem == 0 && crs[lp] == r.to) finish(moves + 1);
      } else {  // leaves through the right end
        if (rrem >= 2 && crs[rp] == r.to) self(self, lp, rp + 2, n - 1, crs[rp + 1], moves + 1);
        if (rrem == 1 && lrem == 0 && crs[rp] == r.to) finish(moves + 1);
      }
      content[head] = a;
    }
  };
  rec(rec, 1, 0, 0, crs[0], 0);
  return out;
}

// Replays a list of (rule, exits-left?, exits-right?, is-ending?) part moves
// given as library PartMove values, checking each against the part rules.
// Returns the length (internal crossings + |crs|) or nullopt if invalid.
template <class Move>
std::optional<std::uint64_t> oracle_part_replay(const Machine& m, const Word& part, const std::vector<StateId>& crs,
                                                const std::vector<Move>& moves) {
  if (part.empty() || crs.empty() || moves.empty()) return std::nullopt;
  const std::size_t n = part.size();
  Word content = part;
  std::size_t lp = 1, rp = 0, head = 0;
  StateId state = crs[0];
  std::uint64_t internal = 0;
  for (std::size_t i = 0; i < moves.size(); ++i) {
    const Rule& r = m.rule(moves[i].rule);
    if (m.is_halting(state) || r.from != state || r.read != content[head]) return std::nullopt;
    content[head] = r.write;
    const bool last = i + 1 == moves.size();
    const std::size_t lrem = crs.size() - lp, rrem = crs.size() - rp;
    if (r.move == Direction::Right && head + 1 < n) {
      ++head, ++internal, state = r.to;
    } else if (r.move == Direction::Left && head > 0) {
      --head, ++internal, state = r.to;
    } else if (r.move == Direction::Left) {
      if (last) {
        if (!(lrem == 1 && rrem == 0 && crs[lp] == r.to)) return std::nullopt;
      } else {
        if (!(lrem >= 2 && crs[lp] == r.to)) return std::nullopt;
        state = crs[lp + 1];
        lp += 2;
      }
    } else {
      if (last) {
        if (!(rrem == 1 && lrem == 0 && crs[rp] == r.to)) return std::nullopt;
      } else {
        if (!(rrem >= 2 && crs[rp] == r.to)) return std::nullopt;
        state = crs[rp + 1];
        rp += 2;
      }
    }
  }
  return internal + crs.size();
}

}  // namespace ts

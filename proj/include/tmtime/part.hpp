#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tmtime/machine.hpp"
#include "tmtime/simulator.hpp"

namespace tmtime {

// Configuration of a computation on a part w with ending crossing sequence
// crs. The two remainders are suffixes of crs, stored as start offsets.
struct PartConfig {
  std::uint32_t left_pos = 0;   // left remainder = crs[left_pos..]
  std::uint32_t right_pos = 0;  // right remainder = crs[right_pos..]
  Word content;
  std::int64_t head = 0;
  StateId state = 0;
  bool ending = false;

  bool operator==(const PartConfig&) const = default;
};

enum class PartMoveKind { Internal, LeftReenter, RightReenter, EndLeft, EndRight };

const char* part_move_name(PartMoveKind k);
std::optional<PartMoveKind> part_move_from_name(std::string_view name);

struct PartMove {
  PartMoveKind kind;
  RuleIndex rule;

  bool operator==(const PartMove&) const = default;
};

struct PartSuccessor {
  PartMove move;
  PartConfig next;
};

// ((q2..ql), w, 0, q1, (q1..ql)). Throws EmptyPart / EmptyCrs.
PartConfig part_start(const Word& w, const CrossingSequence& crs);

// Successors in fixed order: interior moves, left re-entries, right
// re-entries, then endings; within each group by rule order.
std::vector<PartSuccessor> part_successors(const Machine& m, const CrossingSequence& crs, const PartConfig& c);

struct PartComputation {
  Word part;
  CrossingSequence crs;
  std::vector<PartMove> moves;
  std::vector<std::uint64_t> internal_crossings;  // [i-1] counts boundary i, 1 <= i <= n-1
  std::uint64_t length = 0;                       // sum of internal crossings + |crs|
};

// Validates `moves` against the part semantics from the start configuration
// and recomputes the crossing counts. The last move must be an ending.
// Throws InvalidReplay.
PartComputation replay_part(const Machine& m, const Word& part, const CrossingSequence& crs,
                            const std::vector<PartMove>& moves);

// t_M(w, crs): -1 when no valid computation exists, infinite when lengths are
// unbounded.
struct PartTime {
  enum class Kind { None, Finite, Infinite };
  Kind kind = Kind::None;
  std::uint64_t value = 0;

  static PartTime none() { return {}; }
  static PartTime finite(std::uint64_t v) { return {Kind::Finite, v}; }
  static PartTime infinite() { return {Kind::Infinite, 0}; }

  bool valid() const { return kind != Kind::None; }
  bool exceeds(std::uint64_t bound) const {
    return kind == Kind::Infinite || (kind == Kind::Finite && value > bound);
  }
  std::string str() const;

  bool operator==(const PartTime&) const = default;
};

struct PartTimeResult {
  PartTime time;
  std::optional<PartComputation> longest;  // set when time is finite
  std::size_t configurations = 0;          // distinct configurations explored
};

// Explores the whole configuration graph and takes the longest start-to-ending
// path. An empty crs gives -1.
PartTimeResult part_time_search(const Machine& m, const Word& w, const CrossingSequence& crs);
PartTime part_time(const Machine& m, const Word& w, const CrossingSequence& crs);

// A valid part computation longer than `bound`, found by depth-bounded
// search; nullopt iff t_M(w, crs) <= bound or t_M = -1.
std::optional<PartComputation> part_computation_exceeding(const Machine& m, const Word& w,
                                                          const CrossingSequence& crs, std::uint64_t bound,
                                                          std::size_t* configurations = nullptr);
bool part_time_exceeds(const Machine& m, const Word& w, const CrossingSequence& crs, std::uint64_t bound);

// Splits a computation prefix on w1·w·w2 into the induced computation on the
// part w (cells |w1| .. |w1|+|w|-1) and the induced computation on w1·w2.
// Requires |w1| >= 1, |w| >= 1 and equal crossing sequences on the two part
// boundaries after the prefix (BoundaryMismatch otherwise).
struct Splice {
  CrossingSequence crs;
  std::optional<PartComputation> part;  // absent when crs is empty
  Computation cut;
};
Splice splice(const Machine& m, const Word& w1, const Word& w, const Word& w2, std::span<const RuleIndex> choices);

struct CutPasteLengths {
  std::uint64_t full = 0, part = 0, cut = 0;
  bool operator==(const CutPasteLengths&) const = default;
};
// Lengths of the full computation, the induced part computation and the cut
// computation. Throws PreconditionViolated if cut != full - part.
CutPasteLengths cut_paste_check(const Machine& m, const Word& w1, const Word& w, const Word& w2,
                                const Computation& comp);

}  // namespace tmtime

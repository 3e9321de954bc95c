#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tmtime/machine.hpp"
#include "tmtime/part.hpp"
#include "tmtime/simulator.hpp"

namespace tmtime {

using BigInt = boost::multiprecision::cpp_int;

struct BoundsOverride {
  std::uint64_t ell = 0;
  std::uint64_t r = 0;
};

// ell = D + 8q^C and r = D + 12q^C, plus the bounds actually searched.
struct Bounds {
  std::uint64_t C = 0, D = 0, q = 0;
  BigInt ell, r;
  bool overridden = false;
  std::uint64_t ell_eff = 0, r_eff = 0;  // saturate at UINT64_MAX
};

// Throws BadOverride if override.r < override.ell.
Bounds bounds(std::uint64_t q, std::uint64_t C, std::uint64_t D, std::optional<BoundsOverride> override = {});

// sum_{j=0}^{C} q^j (C-j), checked against (q^{C+1}-(C+1)q+C)/(q-1)^2 and,
// for C >= 1, against 4q^{C-1}. Throws PreconditionViolated if a check fails.
BigInt crossing_budget(std::uint64_t q, std::uint64_t C);

// With k the largest multiplicity among crs_i^t for 1 <= i <= |w|, whether
// |w| <= D + 4kq^C. Requires t <= |comp| and t <= C|w|+D.
bool lemma3_multiplicity_check(const Machine& m, const Word& w, const Computation& comp, std::uint64_t t,
                               std::uint64_t C, std::uint64_t D);

// A crossing-sequence prefix together with one context producing it: on input
// w1·w2, computation comp (t0 steps long) leaves crs on boundary |w1|.
struct CrsEntry {
  CrossingSequence crs;
  Word w1, w2;
  Computation comp;
  std::uint64_t t0 = 0;
  std::uint64_t boundary = 0;
};

struct SearchLimits {
  std::uint64_t max_nodes = 200'000'000;  // simulation + part configurations
  unsigned jobs = 1;
};

struct SearchStats {
  std::uint64_t inputs = 0;
  std::uint64_t computation_nodes = 0;
  std::uint64_t crs_entries = 0;
  std::uint64_t parts = 0;
  std::uint64_t part_configurations = 0;
};

// Every crossing-sequence prefix on boundaries 1..n over inputs 1 <= n <= ell,
// deduplicated by content (first provenance wins). Every computation on those
// inputs must halt within Cn+D steps (PreconditionViolated otherwise).
std::vector<CrsEntry> crs_set(const Machine& m, std::uint64_t ell, std::uint64_t C, std::uint64_t D,
                              const SearchLimits& limits = {}, SearchStats* stats = nullptr);

struct PartWitness {
  CrsEntry entry;
  Word part;
  PartComputation part_comp;
  PartTime t_val;
};

struct Witness {
  enum class Kind { Direct, Part };
  Kind kind = Kind::Direct;
  std::optional<RunViolation> direct;
  std::optional<PartWitness> part;
  std::optional<Word> expanded_input;
  std::optional<std::uint64_t> expansion_exponent;
  // A computation on expanded_input exceeding its bound, when it was built.
  std::optional<Computation> expanded_computation;
};

struct DecisionReport {
  enum class Verdict { Runs, Violates };
  Verdict verdict = Verdict::Runs;
  bool exact = false;
  Bounds bounds;
  std::optional<Witness> witness;
  SearchStats stats;
};

struct DecideOptions {
  std::optional<BoundsOverride> override;
  std::uint64_t expand_cap = 1'000'000;
  SearchLimits limits;
};

// Condition (a) over inputs of length <= ell_eff, then condition (b) over
// every crossing-sequence prefix and every input-alphabet part of length
// 1..r_eff. Throws ResourceBudgetExceeded when limits are hit.
DecisionReport decide(const Machine& m, std::uint64_t C, std::uint64_t D, const DecideOptions& options = {});

struct Expansion {
  Word input;
  std::uint64_t exponent = 0;
  std::optional<Computation> computation;  // exceeds C|input|+D when present
};

// w1 · w^{C r_eff + D} · w2, or nullopt if longer than cap. The confirming
// computation interleaves the provenance computation with one copy of the
// part computation per repetition. Throws MissingProvenance.
std::optional<Expansion> expand_part_witness(const Machine& m, std::uint64_t C, std::uint64_t D,
                                             const PartWitness& witness, std::uint64_t r_eff, std::uint64_t cap);

enum class SearchStrategy { Exhaustive, Random };

struct FindOptions {
  SearchStrategy strategy = SearchStrategy::Exhaustive;
  std::uint64_t budget = 1'000'000;  // simulated steps
  std::uint64_t seed = 0;
  std::optional<BoundsOverride> override;
};

// Searches for a violation the way the nondeterministic checker does: direct
// inputs up to ell_eff, then triples w1 w2 w3 tracking the crossing sequences
// around w2 and the two step counters. nullopt when the budget runs out or
// the search space is exhausted.
std::optional<Witness> find_violation(const Machine& m, std::uint64_t C, std::uint64_t D,
                                      const FindOptions& options = {}, SearchStats* stats = nullptr);

// Independent check of a witness by replay. Returns an empty string when the
// witness is sound, otherwise the reason.
std::string verify_witness(const Machine& m, std::uint64_t C, std::uint64_t D, const Witness& w);

// Words over `alphabet` of length lo..hi in length-then-lexicographic order.
std::vector<Word> words_up_to(std::span<const SymbolId> alphabet, std::size_t lo, std::size_t hi);

}  // namespace tmtime

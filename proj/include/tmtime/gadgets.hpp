#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tmtime/compactness.hpp"
#include "tmtime/machine.hpp"

namespace tmtime::gadgets {

struct PrimeWindow {
  std::uint64_t m = 0;
  std::vector<std::uint64_t> primes;
};

bool is_prime(std::uint64_t n);

// The `count` smallest primes in (m, 2m]. Throws WindowTooSmall.
PrimeWindow prime_window(std::uint64_t m, std::size_t count);

struct Alphabet {
  std::vector<std::string> input{"0", "1"};
  std::vector<std::string> tape{"0", "1", "_"};
  std::string blank = "_";
};

// One left-to-right pass accepting exactly the inputs whose length is a
// multiple of p. States c0..c{p-1}, acc, rej.
Machine divisibility_machine(std::uint64_t p, const Alphabet& alphabet = {});

// Symbols phase 1 writes to mark the two ends of the input.
inline constexpr const char* kLeftMark = "[";
inline constexpr const char* kRightMark = "]";

// Passes through the input once per prime, alternating direction, rejecting
// as soon as the length is not divisible by the current prime (and on the
// empty input). Accepts after at most (#primes)·n + 1 steps. With `erase`, the
// tape is blank when it accepts. The alphabet gains the two end marks.
Machine phase1_machine(const std::vector<std::uint64_t>& primes, bool erase, Alphabet alphabet = {});

enum class GadgetMode { Reject, Count };

struct GadgetSpec {
  std::uint64_t K = 1, k = 1;  // T(n) = K n^k + 1
  std::uint64_t C = 2, D = 1;
  GadgetMode mode = GadgetMode::Reject;
};

BigInt time_bound(const GadgetSpec& spec, std::uint64_t n);

struct Manifest {
  GadgetMode mode = GadgetMode::Reject;
  std::vector<std::uint64_t> primes;
  std::uint64_t m = 0;
  BigInt c;
  BigInt T;
  BigInt phase2_step_bound;  // closed-form bound on phase-2 steps before halting or looping
  std::size_t phase2_states = 0;
  BigInt lattice;  // product of the primes
};

struct Phase2 {
  Machine machine;
  BigInt step_bound;
  std::vector<RuleIndex> simulation_rules;  // rules that carry out one step of M
  StateId loop = 0;
};

// Writes w on a blank tape and runs M on it; loops if M accepts, accepts if
// M rejects.
Phase2 rejection_phase2(const Machine& M, const Word& w, const BigInt& T, const Alphabet& alphabet);

// Lays out M's tape on even cells (head cell marked) and the binary counter
// T on odd cells, then simulates M, decrementing the counter before each
// step. Accepts if M halts while the counter lasts, loops otherwise.
Phase2 counting_phase2(const Machine& M, const Word& w, const BigInt& T, const Alphabet& alphabet);

struct Gadget {
  Machine machine;  // compose(phase1, phase2)
  Machine phase1;
  Phase2 phase2;
  Manifest manifest;
};

// The machine that runs in time Cn+D iff M rejects w (Reject mode) or iff M
// makes at most T(|w|) steps on w (Count mode). Its input alphabet is M's.
Gadget build_gadget(const Machine& M, const Word& w, const GadgetSpec& spec);

}  // namespace tmtime::gadgets

#include "tmtime/gadgets.hpp"

#include <algorithm>
#include <set>

#include "tmtime/error.hpp"

namespace tmtime::gadgets {

namespace {

struct Builder {
  MachineDescription d;

  Builder(const Alphabet& a, std::string start, std::string accept, std::string reject) {
    d.input_alphabet = a.input;
    d.tape_alphabet = a.tape;
    d.blank = a.blank;
    d.start = std::move(start);
    d.accept = std::move(accept);
    d.reject = std::move(reject);
  }
  void rule(const std::string& from, const std::string& read, const std::string& to, const std::string& write,
            Direction move) {
    d.rules.push_back({from, read, to, write, move});
  }
  Machine build() const { return Machine::validate(d); }
};

void add_symbol(Alphabet& a, const std::string& s) {
  if (std::find(a.tape.begin(), a.tape.end(), s) == a.tape.end()) a.tape.push_back(s);
}

BigInt pow_big(const BigInt& base, std::uint64_t e) {
  BigInt out = 1;
  for (std::uint64_t i = 0; i < e; ++i) out *= base;
  return out;
}

// Smallest m >= 1 with m^e >= x.
std::uint64_t integer_root_ceil(const BigInt& x, std::uint64_t e) {
  if (x <= 1) return 1;
  std::uint64_t lo = 1, hi = 1;
  while (pow_big(hi, e) < x) hi *= 2;
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (pow_big(mid, e) >= x) hi = mid;
    else lo = mid + 1;
  }
  return lo;
}

BigInt ceil_div(const BigInt& a, const BigInt& b) { return (a + b - 1) / b; }

// Smallest c >= 1 with (cT)^2 >= x.
BigInt c_for_square(const BigInt& x, const BigInt& T) {
  BigInt c = 1;
  BigInt s = boost::multiprecision::sqrt(x);
  if (s * s < x) s += 1;
  c = ceil_div(s, T);
  return c < 1 ? BigInt(1) : c;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d <= n / d; d += 2)
    if (n % d == 0) return false;
  return true;
}

PrimeWindow prime_window(std::uint64_t m, std::size_t count) {
  if (m < 1 || count < 1) throw Error(ErrorCode::InvalidArgument, "prime window needs m >= 1 and count >= 1");
  PrimeWindow w;
  w.m = m;
  for (std::uint64_t p = m + 1; p <= 2 * m && w.primes.size() < count; ++p)
    if (is_prime(p)) w.primes.push_back(p);
  if (w.primes.size() < count) {
    std::size_t found = 0;
    for (std::uint64_t p = m + 1; p <= 2 * m; ++p) found += is_prime(p);
    Error e(ErrorCode::WindowTooSmall, "(" + std::to_string(m) + ", " + std::to_string(2 * m) + "] holds " +
                                           std::to_string(found) + " primes, " + std::to_string(count) + " needed");
    e.found = found;
    e.needed = count;
    throw e;
  }
  return w;
}

Machine divisibility_machine(std::uint64_t p, const Alphabet& alphabet) {
  if (p < 2) throw Error(ErrorCode::InvalidArgument, "divisibility machine needs p >= 2");
  auto c = [](std::uint64_t i) { return "c" + std::to_string(i); };
  Builder b(alphabet, c(0), "acc", "rej");
  for (std::uint64_t i = 1; i < p; ++i) b.d.states.push_back(c(i));
  for (std::uint64_t i = 0; i < p; ++i) {
    for (const auto& a : alphabet.tape) {
      if (std::find(alphabet.input.begin(), alphabet.input.end(), a) != alphabet.input.end())
        b.rule(c(i), a, c((i + 1) % p), a, Direction::Right);
      else if (a == alphabet.blank)
        b.rule(c(i), a, i == 0 ? "acc" : "rej", a, Direction::Right);
      else
        b.rule(c(i), a, "rej", a, Direction::Right);
    }
  }
  return b.build();
}

Machine phase1_machine(const std::vector<std::uint64_t>& primes, bool erase, Alphabet alphabet) {
  if (primes.empty()) throw Error(ErrorCode::InvalidArgument, "phase 1 needs at least one prime");
  for (auto p : primes)
    if (p < 2) throw Error(ErrorCode::InvalidArgument, "phase 1 primes must be >= 2");
  add_symbol(alphabet, kLeftMark);
  add_symbol(alphabet, kRightMark);
  const std::string left_mark = kLeftMark, right_mark = kRightMark, blank = alphabet.blank;
  const std::size_t k = primes.size();
  auto is_input = [&](const std::string& a) {
    return std::find(alphabet.input.begin(), alphabet.input.end(), a) != alphabet.input.end();
  };
  // Pass j (1-based) counts modulo primes[j-1]; odd passes go right, even
  // passes go left. Pass 1 starts on cell 0 and pass 2 on cell n-1, each
  // marking its first cell when a later pass needs it as a turning point.
  // Later passes start next to the previous turning cell with count 1.
  auto st = [](std::size_t j, std::uint64_t i) { return "p" + std::to_string(j) + ".c" + std::to_string(i); };
  auto entry = [](std::size_t j) { return "p" + std::to_string(j) + ".first"; };
  auto write_for = [&](std::size_t j, const std::string& a) { return erase && j == k ? blank : a; };

  Builder b(alphabet, entry(1), "acc", "rej");
  for (std::size_t j = 1; j <= k; ++j) {
    if (j <= 2) b.d.states.push_back(entry(j));
    for (std::uint64_t i = 0; i < primes[j - 1]; ++i) b.d.states.push_back(st(j, i));
  }

  for (const auto& a : alphabet.tape) {
    // Reading a non-input symbol on cell 0 means the input is empty.
    if (is_input(a)) b.rule(entry(1), a, st(1, 1 % primes[0]), k >= 2 ? left_mark : write_for(1, a), Direction::Right);
    else b.rule(entry(1), a, "rej", a, Direction::Right);
  }
  if (k >= 2) {
    for (const auto& a : alphabet.tape) {
      // Pass 1 has rejected n = 1, so cell n-1 is never the marked cell 0.
      if (is_input(a)) b.rule(entry(2), a, st(2, 1 % primes[1]), k >= 3 ? right_mark : write_for(2, a), Direction::Left);
      else b.rule(entry(2), a, "rej", a, Direction::Left);
    }
  }

  for (std::size_t j = 1; j <= k; ++j) {
    const std::uint64_t p = primes[j - 1];
    const bool rightward = j % 2 == 1;
    const Direction fwd = rightward ? Direction::Right : Direction::Left;
    const Direction rev = rightward ? Direction::Left : Direction::Right;
    const bool last = j == k;
    const std::string& end_mark = rightward ? right_mark : left_mark;
    for (std::uint64_t i = 0; i < p; ++i) {
      for (const auto& a : alphabet.tape) {
        if (is_input(a)) {
          b.rule(st(j, i), a, st(j, (i + 1) % p), write_for(j, a), fwd);
        } else if (j == 1 && a == blank) {
          // Cell n: pass 1 turns here without counting it.
          if (i != 0) b.rule(st(j, i), a, "rej", a, Direction::Right);
          else if (last) b.rule(st(j, i), a, "acc", a, Direction::Right);
          else b.rule(st(j, i), a, entry(2), a, Direction::Left);
        } else if (j >= 2 && a == end_mark) {
          // The turning cell is counted by this pass and, as count 1, by the next.
          const bool divisible = (i + 1) % p == 0;
          if (!divisible) b.rule(st(j, i), a, "rej", a, rev);
          else if (last) b.rule(st(j, i), a, "acc", write_for(j, a), rev);
          else b.rule(st(j, i), a, st(j + 1, 1 % primes[j]), write_for(j + 1, a), rev);
        } else {
          b.rule(st(j, i), a, "rej", a, fwd);
        }
      }
    }
  }
  return b.build();
}

BigInt time_bound(const GadgetSpec& spec, std::uint64_t n) { return BigInt(spec.K) * pow_big(n, spec.k) + 1; }

namespace {

Alphabet gadget_alphabet(const Machine& M) {
  Alphabet a;
  a.input.clear();
  for (SymbolId s : M.input_alphabet()) a.input.push_back(M.symbol_name(s));
  a.tape.assign(M.symbols().begin(), M.symbols().end());
  a.blank = M.symbol_name(M.blank());
  add_symbol(a, kLeftMark);
  add_symbol(a, kRightMark);
  return a;
}

void require_fresh(const Machine& M, const std::string& symbol) {
  if (M.find_symbol(symbol) >= 0)
    throw Error(ErrorCode::InvalidArgument, "machine already uses the reserved symbol '" + symbol + "'");
}

// The states of M (other than accept/reject) under the prefix "m.", and the
// mapping of M's halting states.
std::string m_state(const Machine& M, StateId s) { return "m." + M.state_name(s); }

}  // namespace

Phase2 rejection_phase2(const Machine& M, const Word& w, const BigInt& T, const Alphabet& alphabet) {
  const std::string blank = alphabet.blank;
  if (M.symbol_name(M.blank()) != blank) throw Error(ErrorCode::AlphabetMismatch, "M must use the gadget blank");
  auto wr = [](std::size_t i) { return "w" + std::to_string(i); };
  const std::string first = w.empty() ? "back" : wr(w.size() - 1);
  Builder b(alphabet, first, "acc", "rej");
  for (std::size_t i = w.size(); i-- > 1;) b.d.states.push_back(wr(i - 1));
  if (!w.empty()) b.d.states.push_back("back");
  for (StateId s = 0; s < M.state_count(); ++s)
    if (!M.is_halting(s)) b.d.states.push_back(m_state(M, s));
  b.d.states.push_back("loop");

  // Write w right to left, then step back onto its first cell.
  for (std::size_t i = w.size(); i-- > 0;)
    for (const auto& a : alphabet.tape) b.rule(wr(i), a, i == 0 ? "back" : wr(i - 1), M.symbol_name(w[i]), Direction::Left);
  for (const auto& a : alphabet.tape) b.rule("back", a, m_state(M, M.start()), a, Direction::Right);

  auto target = [&](StateId s) {
    if (s == M.accept()) return std::string("loop");
    if (s == M.reject()) return std::string("acc");
    return m_state(M, s);
  };
  for (const Rule& r : M.rules())
    b.rule(m_state(M, r.from), M.symbol_name(r.read), target(r.to), M.symbol_name(r.write), r.move);
  for (StateId s = 0; s < M.state_count(); ++s) {
    if (M.is_halting(s)) continue;
    for (const auto& a : alphabet.tape)
      if (M.find_symbol(a) < 0) b.rule(m_state(M, s), a, "rej", a, Direction::Right);
  }
  for (const auto& a : alphabet.tape) b.rule("loop", a, "loop", a, Direction::Right);

  Phase2 out{b.build(), BigInt(w.size()) + 1 + T, {}, 0};
  const std::size_t first_m_rule = w.size() * alphabet.tape.size() + alphabet.tape.size();
  for (std::size_t i = 0; i < M.rules().size(); ++i) out.simulation_rules.push_back(static_cast<RuleIndex>(first_m_rule + i));
  out.loop = static_cast<StateId>(out.machine.find_state("loop"));
  return out;
}

Phase2 counting_phase2(const Machine& M, const Word& w, const BigInt& T, const Alphabet& base_alphabet) {
  if (T < 1) throw Error(ErrorCode::InvalidArgument, "the counter must start at T >= 1");
  Alphabet alphabet = base_alphabet;
  const std::string blank = alphabet.blank;
  if (M.symbol_name(M.blank()) != blank) throw Error(ErrorCode::AlphabetMismatch, "M must use the gadget blank");

  // Counter digits: plain, least significant (<), most significant (>), or both.
  auto digit = [](int bit, bool lsb, bool msb) {
    return "c" + std::to_string(bit) + (lsb ? "<" : "") + (msb ? ">" : "");
  };
  std::vector<std::string> lsb_digits, all_digits;
  for (int bit = 0; bit < 2; ++bit)
    for (bool lsb : {false, true})
      for (bool msb : {false, true}) {
        const std::string d = digit(bit, lsb, msb);
        require_fresh(M, d);
        add_symbol(alphabet, d);
        all_digits.push_back(d);
        if (lsb) lsb_digits.push_back(d);
      }
  auto marked = [&](SymbolId a) { return "*" + M.symbol_name(a); };
  for (SymbolId a = 0; a < M.symbols().size(); ++a) {
    require_fresh(M, marked(a));
    add_symbol(alphabet, marked(a));
  }
  auto is_lsb = [&](const std::string& s) { return std::find(lsb_digits.begin(), lsb_digits.end(), s) != lsb_digits.end(); };

  // Initial layout from M's cell 0 rightwards: even offsets hold M's tape
  // (cell 0 marked), odd offsets hold the counter, least significant first.
  std::vector<int> bits;
  for (BigInt t = T; t > 0; t >>= 1) bits.push_back(static_cast<int>(t & 1));
  const std::size_t L = bits.size();
  const std::size_t cells = std::max(w.size(), L);
  std::vector<std::string> layout;
  for (std::size_t j = 0; j < cells; ++j) {
    const SymbolId a = j < w.size() ? w[j] : M.blank();
    layout.push_back(j == 0 ? marked(a) : M.symbol_name(a));
    layout.push_back(j < L ? digit(bits[j], j == 0, j + 1 == L) : blank);
  }

  // Control states carry M's state q and the side of M's head relative to
  // the least significant digit (L: M cell <= 0, R: M cell >= 1).
  std::vector<StateId> live;
  for (StateId s = 0; s < M.state_count(); ++s)
    if (!M.is_halting(s)) live.push_back(s);
  const char sides[2] = {'L', 'R'};
  auto name = [&](const char* kind, StateId q, char side) {
    return std::string(kind) + "." + M.state_name(q) + "." + side;
  };
  auto hop = [&](StateId q, Direction d, char side) {
    return "hop." + M.state_name(q) + "." + (d == Direction::Left ? "l" : "r") + "." + side;
  };
  auto wr = [](std::size_t i) { return "w" + std::to_string(i); };
  // Toward the counter from the mark, and toward the mark from the counter.
  auto to_counter = [](char side) { return side == 'R' ? Direction::Left : Direction::Right; };
  auto to_mark = [](char side) { return side == 'R' ? Direction::Right : Direction::Left; };

  Builder b(alphabet, wr(layout.size() - 1), "acc", "rej");
  for (std::size_t i = layout.size() - 1; i-- > 0;) b.d.states.push_back(wr(i));
  for (StateId q : live)
    for (char side : sides) {
      for (const char* kind : {"go", "skip", "dec", "back", "seek", "mark"}) b.d.states.push_back(name(kind, q, side));
      for (Direction d : {Direction::Left, Direction::Right}) b.d.states.push_back(hop(q, d, side));
    }
  b.d.states.push_back("loop");

  for (std::size_t i = layout.size(); i-- > 0;)
    for (const auto& a : alphabet.tape)
      b.rule(wr(i), a, i == 0 ? name("go", M.start(), 'L') : wr(i - 1), layout[i], Direction::Left);

  std::vector<RuleIndex> simulation_rules;
  for (StateId q : live) {
    for (char side : sides) {
      const std::string go = name("go", q, side), skip = name("skip", q, side), dec = name("dec", q, side),
                        back = name("back", q, side), seek = name("seek", q, side), mark = name("mark", q, side);
      for (const auto& a : alphabet.tape) {
        // go: walk to the least significant digit and decrement it.
        if (a == digit(1, true, false) || a == digit(1, true, true)) b.rule(go, a, seek, a == digit(1, true, false) ? digit(0, true, false) : digit(0, true, true), to_mark(side));
        else if (a == digit(0, true, false)) b.rule(go, a, skip, digit(1, true, false), Direction::Right);
        else if (a == digit(0, true, true)) b.rule(go, a, "loop", a, Direction::Right);
        else b.rule(go, a, go, a, to_counter(side));

        // skip: step over an even cell while borrowing.
        b.rule(skip, a, dec, a, Direction::Right);

        // dec: a higher digit, with a borrow pending.
        if (a == digit(1, false, false) || a == digit(1, false, true))
          b.rule(dec, a, back, a == digit(1, false, false) ? digit(0, false, false) : digit(0, false, true), Direction::Left);
        else if (a == digit(0, false, false)) b.rule(dec, a, skip, digit(1, false, false), Direction::Right);
        else if (a == digit(0, false, true)) b.rule(dec, a, "loop", a, Direction::Right);
        else b.rule(dec, a, "rej", a, Direction::Right);

        // back: return left to the least significant digit, then head for the mark.
        if (is_lsb(a)) b.rule(back, a, seek, a, to_mark(side));
        else b.rule(back, a, back, a, Direction::Left);

        // seek: find the marked cell and perform one step of M there.
        if (a.size() > 1 && a[0] == '*' && M.find_symbol(a.substr(1)) >= 0) {
          const auto x = static_cast<SymbolId>(M.find_symbol(a.substr(1)));
          for (RuleIndex ri : M.rules_for(q, x)) {
            const Rule& r = M.rule(ri);
            simulation_rules.push_back(static_cast<RuleIndex>(b.d.rules.size()));
            if (M.is_halting(r.to)) b.rule(seek, a, "acc", M.symbol_name(r.write), r.move);
            else b.rule(seek, a, hop(r.to, r.move, side), M.symbol_name(r.write), r.move);
          }
        } else {
          b.rule(seek, a, seek, a, to_mark(side));
        }

        // mark: the new head cell of M.
        if (M.find_symbol(a) >= 0) b.rule(mark, a, go, marked(static_cast<SymbolId>(M.find_symbol(a))), to_counter(side));
        else b.rule(mark, a, "rej", a, Direction::Right);
      }
      // hop: cross the odd cell between two of M's cells.
      for (Direction d : {Direction::Left, Direction::Right}) {
        const char crossed = d == Direction::Right ? 'R' : 'L';
        for (const auto& a : alphabet.tape)
          b.rule(hop(q, d, side), a, name("mark", q, is_lsb(a) ? crossed : side), a, d);
      }
    }
  }
  for (const auto& a : alphabet.tape) b.rule("loop", a, "loop", a, Direction::Right);

  // Steps before halting or looping: writing the layout, then per decrement
  // t (M's head within t cells of cell 0) at most 2t+1 to reach the counter,
  // 4L borrowing and returning, 2t+1 to reach the mark and 2 to move it.
  const BigInt Lb = L;
  Phase2 out{b.build(), BigInt(layout.size()) + 2 * T * (T + 1) + (T + 1) * (4 * Lb + 4), std::move(simulation_rules), 0};
  out.loop = static_cast<StateId>(out.machine.find_state("loop"));
  return out;
}

Gadget build_gadget(const Machine& M, const Word& w, const GadgetSpec& spec) {
  if (spec.C < 2) throw Error(ErrorCode::InvalidArgument, "gadgets need C >= 2");
  if (spec.D < 1) throw Error(ErrorCode::InvalidArgument, "gadgets need D >= 1");
  if (spec.K < 1 || spec.k < 1) throw Error(ErrorCode::InvalidArgument, "T(n) = K n^k + 1 needs K, k >= 1");
  for (SymbolId a : w)
    if (!M.in_input_alphabet(a)) throw Error(ErrorCode::SymbolNotInSigma, "w is not over M's input alphabet");
  require_fresh(M, kLeftMark);
  require_fresh(M, kRightMark);

  const Alphabet alphabet = gadget_alphabet(M);
  const BigInt T = time_bound(spec, w.size());
  Gadget g;
  g.phase2 = spec.mode == GadgetMode::Reject ? rejection_phase2(M, w, T, alphabet) : counting_phase2(M, w, T, alphabet);
  const Machine& p2 = g.phase2.machine;

  // Phase 1 must run over the same alphabet as phase 2.
  Alphabet full;
  full.input = alphabet.input;
  full.tape.assign(p2.symbols().begin(), p2.symbols().end());
  full.blank = alphabet.blank;

  // m^{C-1} must cover the phase-2 step bound: directly (c T) when
  // rejecting, squared ((c T)^2) when counting.
  Manifest& mf = g.manifest;
  mf.mode = spec.mode;
  mf.T = T;
  mf.phase2_step_bound = g.phase2.step_bound;
  mf.phase2_states = p2.state_count();
  BigInt target;
  if (spec.mode == GadgetMode::Reject) {
    mf.c = ceil_div(g.phase2.step_bound, T);
    target = mf.c * T;
  } else {
    mf.c = c_for_square(g.phase2.step_bound, T);
    target = (mf.c * T) * (mf.c * T);
  }
  std::uint64_t m = integer_root_ceil(target, spec.C - 1);
  while (true) {
    try {
      mf.primes = prime_window(m, spec.C - 1).primes;
      break;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::WindowTooSmall) throw;
      m *= 2;
    }
  }
  mf.m = m;
  mf.lattice = 1;
  for (auto p : mf.primes) mf.lattice *= p;

  g.phase1 = phase1_machine(mf.primes, true, full);
  g.machine = compose(g.phase1, p2);
  return g;
}

}  // namespace tmtime::gadgets

// Acceptance run: one PASS/FAIL line per criterion. Every check is exact;
// each criterion also has a wall-clock target that counts toward its result.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "gadget_support.hpp"
#include "support.hpp"
#include "tmtime/codec.hpp"
#include "tmtime/compactness.hpp"
#include "tmtime/error.hpp"
#include "tmtime/gadgets.hpp"
#include "tmtime/part.hpp"
#include "tmtime/simulator.hpp"

using namespace tmtime;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  std::string first_failure;
  void fail(const std::string& why) {
    if (ok) first_failure = why;
    ok = false;
  }
};

BigInt pow_big(std::uint64_t base, std::uint64_t e) {
  BigInt r = 1;
  for (std::uint64_t i = 0; i < e; ++i) r *= base;
  return r;
}

std::string show(const Machine& m) {
  std::string t = format_machine_text(m);
  std::replace(t.begin(), t.end(), '\n', '/');
  return t;
}

Word concat(std::initializer_list<const Word*> parts) {
  Word out;
  for (const Word* p : parts) out.insert(out.end(), p->begin(), p->end());
  return out;
}

// Checks a witness by re-simulating everything it claims with the test
// oracles. Empty string when it is a genuine violation of C n + D.
std::string independent_check(const Machine& m, std::uint64_t C, std::uint64_t D, const Witness& w) {
  if (w.kind == Witness::Kind::Direct) {
    if (!w.direct) return "direct witness without a violation";
    const auto& v = *w.direct;
    auto tr = ts::oracle_replay(m, v.input, v.computation.choices);
    if (!tr.ok) return "direct computation does not replay";
    if (tr.steps <= C * v.input.size() + D) return "direct computation stays within the bound";
    return {};
  }
  if (!w.part) return "part witness without content";
  const auto& pw = *w.part;
  const auto& e = pw.entry;
  if (e.w1.empty()) return "provenance has an empty left context";
  Word ctx = concat({&e.w1, &e.w2});
  auto tr = ts::oracle_replay(m, ctx, e.comp.choices, e.t0);
  if (!tr.ok) return "provenance computation does not replay";
  if (tr.crossings[static_cast<std::int64_t>(e.w1.size())] != e.crs) return "provenance crossing sequence differs";
  if (pw.part.empty()) return "empty part";
  for (SymbolId a : pw.part)
    if (!m.in_input_alphabet(a)) return "part leaves the input alphabet";
  auto len = ts::oracle_part_replay(m, pw.part, e.crs, pw.part_comp.moves);
  if (!len) return "part computation does not replay";
  if (*len <= C * pw.part.size()) return "part computation is not longer than C|w|";
  if (!w.expanded_input || !w.expanded_computation || !w.expansion_exponent) return "no expanded input";
  Word expect = e.w1;
  for (std::uint64_t i = 0; i < *w.expansion_exponent; ++i) expect.insert(expect.end(), pw.part.begin(), pw.part.end());
  expect.insert(expect.end(), e.w2.begin(), e.w2.end());
  if (expect != *w.expanded_input) return "expanded input is not w1 w^e w2";
  auto big = ts::oracle_replay(m, *w.expanded_input, w.expanded_computation->choices);
  if (!big.ok) return "expanded computation does not replay";
  if (big.steps <= C * w.expanded_input->size() + D) return "expanded computation stays within the bound";
  return {};
}

// ---- 1 -----------------------------------------------------------------

Outcome crossing_identity() {
  Outcome out;
  std::mt19937_64 rng(1001);
  ts::GenOptions opts;
  opts.q_min = 3;
  opts.q_max = 5;
  std::size_t pairs = 0, computations = 0;
  for (int i = 0; i < 4000 && pairs < 600; ++i) {
    Machine m = ts::random_machine(rng, opts);
    Word w = ts::random_word(rng, m, static_cast<std::size_t>(i % 7));
    bool any = false;
    for (int k = 0; k < 8; ++k) {
      auto choices = ts::random_choices(rng, m, w, 60);
      auto tr = ts::oracle_replay(m, w, choices);
      if (!tr.ok || !m.is_halting(tr.state)) continue;
      std::uint64_t sum = 0;
      for (const auto& [b, seq] : tr.crossings) sum += seq.size();
      if (sum != choices.size()) out.fail("oracle identity broken on " + show(m));
      auto lib = crossing_sequences(m, w, choices);
      std::uint64_t lib_sum = 0;
      for (const auto& [b, seq] : lib) lib_sum += seq.size();
      std::map<std::int64_t, CrossingSequence> expect(tr.crossings.begin(), tr.crossings.end());
      if (lib != expect) out.fail("crossing sequences differ from the oracle on " + show(m));
      if (lib_sum != choices.size()) out.fail("|zeta| != sum |crs_i| on " + show(m));
      any = true;
      ++computations;
    }
    if (any) ++pairs;
  }
  if (pairs < 500) out.fail("only " + std::to_string(pairs) + " pairs with a halted computation");
  out.detail = std::to_string(pairs) + " pairs, " + std::to_string(computations) + " halted computations";
  return out;
}

// ---- 2 -----------------------------------------------------------------

Outcome splice_identity() {
  Outcome out;
  std::size_t hits = 0;
  {
    Machine m = ts::m_sweep();
    auto run = [&](std::string_view w) { return enumerate_computations(m, ts::word(m, w), 100).at(0); };
    const auto one = ts::word(m, "1"), two = ts::word(m, "11");
    if (cut_paste_check(m, one, one, one, run("111")) != CutPasteLengths{4, 1, 3}) out.fail("M_SWEEP (4,1,3)");
    if (cut_paste_check(m, one, two, one, run("1111")) != CutPasteLengths{5, 2, 3}) out.fail("M_SWEEP (5,2,3)");
    hits += 2;
  }
  std::mt19937_64 rng(1002);
  for (int i = 0; i < 60000 && hits < 250; ++i) {
    Machine m = ts::random_machine(rng);
    Word w1 = ts::random_word(rng, m, 1 + i % 2), w = ts::random_word(rng, m, 1 + i % 3),
         w2 = ts::random_word(rng, m, i % 2);
    Word full = concat({&w1, &w, &w2});
    auto choices = ts::random_choices(rng, m, full, 40);
    auto tr = ts::oracle_replay(m, full, choices);
    if (!m.is_halting(tr.state)) continue;
    const std::int64_t a = static_cast<std::int64_t>(w1.size()), b = a + static_cast<std::int64_t>(w.size());
    if (tr.crossings[a] != tr.crossings[b]) continue;
    Computation comp = replay_computation(m, full, choices);
    auto lens = cut_paste_check(m, w1, w, w2, comp);
    std::uint64_t part_len = tr.crossings[a].size();
    for (std::int64_t k = a + 1; k < b; ++k) part_len += tr.crossings[k].size();
    if (lens.full != choices.size() || lens.part != part_len || lens.cut != lens.full - lens.part)
      out.fail("lengths differ on " + show(m));
    auto sp = splice(m, w1, w, w2, choices);
    Word cut_input = concat({&w1, &w2});
    auto cut_tr = ts::oracle_replay(m, cut_input, sp.cut.choices);
    if (!cut_tr.ok || cut_tr.state != tr.state || cut_tr.steps != lens.full - part_len)
      out.fail("cut computation does not replay on " + show(m));
    ++hits;
  }
  if (hits < 200) out.fail("only " + std::to_string(hits) + " instances");
  out.detail = std::to_string(hits) + " instances incl. (4,1,3) and (5,2,3)";
  return out;
}

// ---- 3 -----------------------------------------------------------------

Outcome crossing_budget_closed_form() {
  Outcome out;
  int cases = 0;
  for (std::uint64_t q = 2; q <= 10; ++q) {
    for (std::uint64_t C = 1; C <= 8; ++C) {
      BigInt direct = 0;
      for (std::uint64_t j = 0; j <= C; ++j) direct += pow_big(q, j) * (C - j);
      const BigInt num = pow_big(q, C + 1) - BigInt(C + 1) * q + C;
      const BigInt den = BigInt(q - 1) * (q - 1);
      if (num % den != 0 || num / den != direct) out.fail("closed form q=" + std::to_string(q));
      if (direct > 4 * pow_big(q, C - 1)) out.fail("4q^(C-1) bound q=" + std::to_string(q));
      if (crossing_budget(q, C) != direct) out.fail("crossing_budget q=" + std::to_string(q) + " C=" + std::to_string(C));
      ++cases;
    }
  }
  out.detail = std::to_string(cases) + " (q,C) pairs";
  return out;
}

// ---- 4 -----------------------------------------------------------------

Outcome multiplicity_inequality() {
  Outcome out;
  std::mt19937_64 rng(1004);
  ts::GenOptions opts;
  opts.q_min = 3;
  opts.q_max = 4;
  std::size_t samples = 0;
  for (int i = 0; samples < 1500; ++i) {
    Machine m = ts::random_machine(rng, opts);
    const std::uint64_t C = static_cast<std::uint64_t>(i % 4), D = static_cast<std::uint64_t>((i / 4) % 4);
    Word w = ts::random_word(rng, m, 1 + static_cast<std::size_t>(i % 6));
    const std::uint64_t bound = C * w.size() + D;
    auto choices = ts::random_choices(rng, m, w, bound);
    std::uniform_int_distribution<std::uint64_t> pick(0, std::min<std::uint64_t>(choices.size(), bound));
    const std::uint64_t t = pick(rng);
    Computation comp = replay_computation(m, w, choices);
    // oracle multiplicity over boundaries 1..n
    auto tr = ts::oracle_replay(m, w, choices, t);
    std::map<std::vector<StateId>, std::uint64_t> count;
    std::uint64_t k = 0;
    for (std::int64_t b = 1; b <= static_cast<std::int64_t>(w.size()); ++b) k = std::max(k, ++count[tr.crossings[b]]);
    const bool oracle = BigInt(w.size()) <= BigInt(D) + 4 * BigInt(k) * pow_big(m.state_count(), C);
    const bool lib = lemma3_multiplicity_check(m, w, comp, t, C, D);
    if (!lib) out.fail("multiplicity check false on " + show(m));
    if (lib != oracle) out.fail("multiplicity check differs from the oracle on " + show(m));
    ++samples;
  }
  out.detail = std::to_string(samples) + " samples";
  return out;
}

// ---- 5 -----------------------------------------------------------------

Outcome witness_soundness() {
  Outcome out;
  std::mt19937_64 rng(1005);
  ts::GenOptions opts;
  opts.q_min = 3;
  opts.q_max = 4;
  std::size_t machines = 0, decided = 0, violating = 0, part_witnesses = 0, hits = 0, skipped = 0;
  const BoundsOverride ov{4, 4};
  while (machines < 300) {
    // deterministic and mostly-halting machines reach the part condition more often
    opts.halt_bias = 0.2 + 0.1 * static_cast<double>(machines % 6);
    opts.max_branch = 1 + machines % 2;
    Machine m = ts::random_machine(rng, opts);
    ++machines;
    for (std::uint64_t C : {1, 2, 3}) {
      for (std::uint64_t D : {0, 1, 3}) {
        DecideOptions dopt;
        dopt.override = ov;
        dopt.limits.max_nodes = 20'000'000;
        try {
          auto rep = decide(m, C, D, dopt);
          ++decided;
          if (rep.verdict == DecisionReport::Verdict::Violates) {
            ++violating;
            if (!rep.witness) {
              out.fail("violates without a witness on " + show(m));
            } else {
              if (rep.witness->kind == Witness::Kind::Part) ++part_witnesses;
              auto why = independent_check(m, C, D, *rep.witness);
              if (!why.empty()) out.fail("decide C=" + std::to_string(C) + " D=" + std::to_string(D) + ": " + why + " on " + show(m));
            }
          }
        } catch (const Error& e) {
          if (e.code() != ErrorCode::ResourceBudgetExceeded) throw;
          ++skipped;
        }
        for (auto strategy : {SearchStrategy::Exhaustive, SearchStrategy::Random}) {
          FindOptions fo;
          fo.strategy = strategy;
          fo.budget = 50'000;
          fo.seed = machines;
          fo.override = ov;
          if (auto wit = find_violation(m, C, D, fo)) {
            ++hits;
            if (wit->kind == Witness::Kind::Part) ++part_witnesses;
            auto why = independent_check(m, C, D, *wit);
            if (!why.empty()) out.fail("find_violation C=" + std::to_string(C) + " D=" + std::to_string(D) + ": " + why + " on " + show(m));
          }
        }
      }
    }
  }
  if (decided < 50 * 9) out.fail("too many decide runs over budget");
  if (part_witnesses < 5) out.fail("too few part-level witnesses to exercise the part condition");
  std::ostringstream s;
  s << machines << " machines, " << decided << " decided (" << violating << " violating, " << skipped
    << " over budget), " << hits << " search hits, " << part_witnesses << " part witnesses";
  out.detail = s.str();
  return out;
}

// ---- 6 -----------------------------------------------------------------

Machine unary_machine(const std::vector<std::string>& tape, const std::vector<std::vector<RuleText>>& per_symbol) {
  MachineDescription d;
  d.input_alphabet = {"1"};
  d.tape_alphabet = tape;
  d.blank = "_";
  d.start = "s";
  d.accept = "a";
  d.reject = "r";
  d.states = {"s", "a", "r"};
  for (const auto& rs : per_symbol) d.rules.insert(d.rules.end(), rs.begin(), rs.end());
  return Machine::validate(d);
}

std::vector<RuleText> rule_options(const std::vector<std::string>& tape, const std::string& read) {
  std::vector<RuleText> out;
  for (const char* to : {"s", "a", "r"})
    for (const auto& write : tape)
      for (Direction d : {Direction::Left, Direction::Right}) out.push_back({"s", read, to, write, d});
  return out;
}

Outcome unary_exactness() {
  Outcome out;
  std::vector<Machine> corpus;
  const std::vector<std::string> small{"1", "_"}, marked{"1", "x", "_"};
  {
    auto o1 = rule_options(small, "1"), ob = rule_options(small, "_");
    for (const auto& a : o1)
      for (const auto& b : ob) corpus.push_back(unary_machine(small, {{a}, {b}}));
  }
  std::mt19937_64 rng(1006);
  auto sample = [&](const std::vector<RuleText>& opts, std::size_t k) {
    std::vector<RuleText> pick = opts;
    std::shuffle(pick.begin(), pick.end(), rng);
    pick.resize(k);
    return pick;
  };
  for (int i = 0; i < 60; ++i)
    corpus.push_back(unary_machine(small, {sample(rule_options(small, "1"), 2), sample(rule_options(small, "_"), 2)}));
  for (int i = 0; i < 40; ++i)
    corpus.push_back(unary_machine(marked, {sample(rule_options(marked, "1"), 1 + i % 2),
                                            sample(rule_options(marked, "x"), 1), sample(rule_options(marked, "_"), 1)}));

  std::size_t runs = 0, violates = 0, checks = 0;
  std::uint64_t max_n = 0;
  const BoundsOverride ov{6, 6};
  for (const auto& m : corpus) {
    for (std::uint64_t C : {1, 2, 3}) {
      for (std::uint64_t D : {0, 1, 3}) {
        DecideOptions dopt;
        dopt.override = ov;
        auto rep = decide(m, C, D, dopt);
        if (rep.bounds.ell_eff > 6 || rep.bounds.r_eff > 6) out.fail("effective bounds above 6");
        const std::uint64_t N = rep.bounds.ell_eff + (C * rep.bounds.r_eff + D) * rep.bounds.r_eff;
        max_n = std::max(max_n, N);
        auto brute = brute_force_runs_in_time(m, C, D, N);
        const bool decide_runs = rep.verdict == DecisionReport::Verdict::Runs;
        if (decide_runs != !brute.has_value()) {
          std::ostringstream s;
          s << "C=" << C << " D=" << D << " decide " << (decide_runs ? "runs" : "violates") << ", brute force "
            << (brute ? "violates at |w|=" + std::to_string(brute->input.size()) : std::string("runs")) << " to N="
            << N << " on " << show(m);
          out.fail(s.str());
        }
        if (decide_runs) ++runs;
        else ++violates;
        ++checks;
      }
    }
  }
  std::ostringstream s;
  s << corpus.size() << " machines, " << checks << " (machine,C,D) checks (" << runs << " runs, " << violates
    << " violates), N up to " << max_n;
  out.detail = s.str();
  return out;
}

// ---- 7 -----------------------------------------------------------------

// 1 + 8 * 50^100 by schoolbook decimal arithmetic on strings.
std::string decimal_oracle() {
  std::vector<int> digits{1};  // little endian
  auto mul = [&](int f) {
    int carry = 0;
    for (int& d : digits) {
      int v = d * f + carry;
      d = v % 10;
      carry = v / 10;
    }
    while (carry) {
      digits.push_back(carry % 10);
      carry /= 10;
    }
  };
  for (int i = 0; i < 100; ++i) mul(50);
  mul(8);
  int carry = 1;
  for (std::size_t i = 0; carry && i < digits.size(); ++i) {
    int v = digits[i] + carry;
    digits[i] = v % 10;
    carry = v / 10;
  }
  if (carry) digits.push_back(carry);
  std::string s;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) s.push_back(static_cast<char>('0' + *it));
  return s;
}

Outcome bounds_arithmetic() {
  Outcome out;
  auto b = bounds(2, 2, 1);
  if (b.ell != 33 || b.r != 49) out.fail("bounds(2,2,1) = (" + b.ell.str() + "," + b.r.str() + ")");
  auto big = bounds(50, 100, 1);
  const std::string expect = decimal_oracle();
  if (big.ell.str() != expect) out.fail("bounds(50,100,1).ell differs from the decimal oracle");
  if (big.ell != 1 + 8 * pow_big(50, 100)) out.fail("bounds(50,100,1).ell != 1+8*50^100");
  out.detail = "ell(50,100,1) has " + std::to_string(expect.size()) + " digits";
  return out;
}

// ---- 8 -----------------------------------------------------------------

bool code_shape(const std::string& s) {
  // 0+ 1 followed by anything
  std::size_t i = 0;
  while (i < s.size() && s[i] == '0') ++i;
  return i >= 1 && i < s.size() && s[i] == '1';
}

Outcome codec_roundtrip() {
  Outcome out;
  std::mt19937_64 rng(1008);
  ts::GenOptions opts;
  opts.q_min = 3;
  opts.q_max = 6;
  std::size_t machines = 0, compositions = 0;
  for (; machines < 250; ++machines) {
    Machine m = ts::random_machine(rng, opts);
    auto code = codec::encode(m);
    if (!code_shape(code.str())) out.fail("code does not match 0+1...");
    if (code.size() != codec::array_code_length(m.state_count())) out.fail("unexpected code length");
    if (!codec::equivalent(codec::decode(code), m)) out.fail("round trip on " + show(m));
    for (std::size_t pad : {1, 5, 17}) {
      auto padded = codec::BitString(std::string(pad, '0') + code.str());
      if (!codec::equivalent(codec::decode(padded), m)) out.fail("padding invariance on " + show(m));
    }
    if (machines % 5 == 0) {
      Machine other = ts::random_machine(rng, opts);
      auto comp = codec::encode_composition({code, codec::encode(other)});
      if (!code_shape(comp.str())) out.fail("composition code does not match 0+1...");
      if (!codec::equivalent(codec::decode(comp), compose(m, other))) out.fail("composition decode on " + show(m));
      ++compositions;
    }
  }
  out.detail = std::to_string(machines) + " machines, " + std::to_string(compositions) + " compositions";
  return out;
}

// ---- 9 -----------------------------------------------------------------

Outcome gadgets_behaviour() {
  using namespace tmtime::gadgets;
  Outcome out;
  std::mt19937_64 rng(1009);
  std::size_t div_runs = 0;
  for (std::uint64_t p : {2, 3, 5}) {
    Machine m = divisibility_machine(p);
    for (std::size_t n = 0; n <= 4 * p; ++n) {
      for (int k = 0; k < 4; ++k) {
        Word w = k == 0 ? ts::zeros(m, n) : ts::random_word(rng, m, n);
        auto comps = enumerate_computations(m, w, n + 4);
        for (const auto& c : comps) {
          const bool acc = c.halted && c.final.state == m.accept();
          if (!c.halted || acc != (n % p == 0)) out.fail("divisibility p=" + std::to_string(p) + " n=" + std::to_string(n));
        }
        ++div_runs;
      }
    }
  }

  struct Case {
    Machine M;
    std::string w;
    std::uint64_t K;
    GadgetMode mode;
  };
  std::vector<Case> cases{
      {ts::m_acc(), "1", 1, GadgetMode::Reject},   {ts::m_rej(), "1", 1, GadgetMode::Reject},
      {ts::m_sweep(), "1", 1, GadgetMode::Reject}, {ts::m_loop(), "1", 1, GadgetMode::Count},
      {ts::m_acc(), "1", 1, GadgetMode::Count},    {ts::m_sweep(), "11", 1, GadgetMode::Count},
      {ts::m_double(), "1", 1, GadgetMode::Count}, {ts::m_double(), "1", 3, GadgetMode::Count}};
  std::size_t gadget_cases = 0, phase1_samples = 0;
  for (std::uint64_t C : {2, 3}) {
    const std::uint64_t D = 1;
    for (const auto& cs : cases) {
      const Word w = ts::word(cs.M, cs.w);
      auto base = ts::run_first(cs.M, w, 10'000);
      const std::uint64_t T = cs.K * w.size() + 1;  // K n^1 + 1
      const bool expect_runs =
          cs.mode == GadgetMode::Reject ? (base.halted && !base.accepted) : (base.halted && base.steps <= T);
      Gadget g = build_gadget(cs.M, w, GadgetSpec{cs.K, 1, C, D, cs.mode});
      if (!g.machine.deterministic()) out.fail("gadget is nondeterministic");
      const auto lattice = g.manifest.lattice.convert_to<std::uint64_t>();
      for (std::uint64_t n : {lattice, 2 * lattice}) {
        auto r = ts::run_first(g.machine, ts::zeros(g.machine, n), C * n + D + 1);
        const bool runs = r.halted && r.steps <= C * n + D;
        if (runs != expect_runs)
          out.fail("biconditional C=" + std::to_string(C) + " M=" + show(cs.M) + " n=" + std::to_string(n));
        if (r.phase1_steps > (C - 1) * n + 1) out.fail("phase 1 too slow at n=" + std::to_string(n));
        ++phase1_samples;
      }
      for (std::uint64_t n = 0; n < lattice + 3; ++n) {
        if (n > 0 && n % lattice == 0) continue;
        auto r = ts::run_first(g.machine, ts::zeros(g.machine, n), C * n + D + 1);
        if (!r.halted || r.accepted || r.steps > (C - 1) * n + 1)
          out.fail("off-lattice length " + std::to_string(n) + " not rejected in phase 1");
        if (r.phase1_steps > (C - 1) * n + 1) out.fail("phase 1 too slow at n=" + std::to_string(n));
        ++phase1_samples;
      }
      ++gadget_cases;
    }
  }
  std::ostringstream s;
  s << div_runs << " divisibility inputs, " << gadget_cases << " gadget cases, " << phase1_samples
    << " phase-1 samples";
  out.detail = s.str();
  return out;
}

// ---- 10 ----------------------------------------------------------------

Outcome known_verdicts() {
  Outcome out;
  const BoundsOverride ov{4, 4};
  std::size_t checks = 0;
  auto expect = [&](const char* name, const Machine& m, std::uint64_t C, std::uint64_t D, bool runs) {
    DecideOptions dopt;
    dopt.override = ov;
    auto rep = decide(m, C, D, dopt);
    const bool got = rep.verdict == DecisionReport::Verdict::Runs;
    const std::string tag = std::string(name) + " C=" + std::to_string(C) + " D=" + std::to_string(D);
    if (got != runs) out.fail(tag + ": wrong verdict");
    if (runs) {
      auto brute = brute_force_runs_in_time(m, C, D, 8);
      if (brute) out.fail(tag + ": brute force finds a violation");
      for (std::size_t n = 0; n <= 8; ++n) {
        Word w = Word(n, m.input_alphabet()[1 % m.input_alphabet().size()]);
        auto v = ts::oracle_violates(m, w, C, D);
        if (!v || *v) out.fail(tag + ": oracle disagrees at n=" + std::to_string(n));
      }
    } else if (rep.witness) {
      auto why = independent_check(m, C, D, *rep.witness);
      if (!why.empty()) out.fail(tag + ": " + why);
    } else {
      out.fail(tag + ": no witness");
    }
    ++checks;
  };
  expect("M_ACC", ts::m_acc(), 2, 1, true);
  expect("M_SWEEP", ts::m_sweep(), 1, 1, true);
  for (std::uint64_t C = 0; C <= 3; ++C)
    for (std::uint64_t D = 0; D <= 3; ++D) expect("M_LOOP", ts::m_loop(), C, D, false);
  for (std::uint64_t D : {2, 3, 5}) expect("M_DOUBLE", ts::m_double(), 2, D, true);
  expect("M_DOUBLE", ts::m_double(), 1, 3, false);
  out.detail = std::to_string(checks) + " verdicts";
  return out;
}

struct Criterion {
  int id;
  const char* name;
  double target_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "crossing identity", 30, crossing_identity},
      {2, "splice identity", 30, splice_identity},
      {3, "crossing budget closed form", 1, crossing_budget_closed_form},
      {4, "multiplicity inequality", 60, multiplicity_inequality},
      {5, "witness soundness", 300, witness_soundness},
      {6, "exactness on unary machines", 600, unary_exactness},
      {7, "bounds arithmetic", 1, bounds_arithmetic},
      {8, "codec", 10, codec_roundtrip},
      {9, "gadgets", 300, gadgets_behaviour},
      {10, "known-machine verdicts", 120, known_verdicts},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.target_seconds) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "over time target (%.1fs > %.0fs)", secs, c.target_seconds);
      o.fail(buf);
    }
    std::printf("[%s] %2d %s: %s (%.2fs, target %.0fs)\n", o.ok ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(),
                secs, c.target_seconds);
    if (!o.ok) std::printf("       first failure: %s\n", o.first_failure.c_str());
    std::fflush(stdout);
    if (!o.ok) ++failures;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}

#include "tmtime/compactness.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <numeric>
#include <thread>

#include "tmtime/error.hpp"

namespace tmtime {

namespace {

std::uint64_t saturate(const BigInt& x) {
  if (x > BigInt(std::numeric_limits<std::uint64_t>::max())) return std::numeric_limits<std::uint64_t>::max();
  return x.convert_to<std::uint64_t>();
}

BigInt power(std::uint64_t base, std::uint64_t exp) { return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exp)); }

BigInt word_count(std::size_t alphabet, std::uint64_t lo, std::uint64_t hi) {
  BigInt total = 0;
  for (std::uint64_t n = lo; n <= hi; ++n) {
    total += power(alphabet, n);
    if (total > BigInt(std::numeric_limits<std::uint64_t>::max())) break;
  }
  return total;
}

[[noreturn]] void over_budget(const std::string& what) {
  throw Error(ErrorCode::ResourceBudgetExceeded, what);
}

// Smallest i < count with pred(i), evaluating with up to `jobs` threads.
// Indices below the returned one are all evaluated, so the answer matches the
// sequential scan.
template <typename Pred>
std::optional<std::size_t> first_index(std::size_t count, unsigned jobs, Pred pred) {
  if (jobs <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i)
      if (pred(i)) return i;
    return std::nullopt;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best{count};
  std::exception_ptr failure;
  std::size_t failure_index = count;
  std::mutex failure_mutex;
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count || i > best.load()) return;
      try {
        if (pred(i)) {
          std::size_t cur = best.load();
          while (i < cur && !best.compare_exchange_weak(cur, i)) {
          }
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (i < failure_index) {
          failure_index = i;
          failure = std::current_exception();
        }
        std::size_t cur = best.load();
        while (i < cur && !best.compare_exchange_weak(cur, i)) {
        }
      }
    }
  };
  std::vector<std::thread> threads;
  for (unsigned j = 0; j < std::min<std::size_t>(jobs, count); ++j) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (failure && failure_index <= best.load()) std::rethrow_exception(failure);
  if (best.load() == count) return std::nullopt;
  return best.load();
}

Word concat(std::initializer_list<const Word*> parts) {
  Word out;
  for (const Word* p : parts) out.insert(out.end(), p->begin(), p->end());
  return out;
}

// Boundary crossed by the last step of a run.
std::int64_t last_crossing(const Run& r) {
  const Rule& rule = r.machine().rule(r.choices().back());
  return rule.move == Direction::Right ? r.head() : r.head() + 1;
}

bool over_sigma(const Machine& m, const Word& w) {
  return std::all_of(w.begin(), w.end(), [&](SymbolId a) { return m.in_input_alphabet(a); });
}

PartWitness part_witness_from(const Machine& m, const Word& w1, const Word& w2, const Word& w3,
                              std::span<const RuleIndex> choices) {
  Splice s = splice(m, w1, w2, w3, choices);
  PartWitness pw;
  pw.entry.crs = s.crs;
  pw.entry.w1 = w1;
  pw.entry.w2 = w3;
  pw.entry.t0 = s.cut.steps();
  pw.entry.comp = std::move(s.cut);
  pw.entry.boundary = w1.size();
  pw.part = w2;
  pw.part_comp = *s.part;
  pw.t_val = part_time(m, w2, s.crs);
  return pw;
}

void attach_expansion(const Machine& m, std::uint64_t C, std::uint64_t D, Witness& w, std::uint64_t r_eff,
                      std::uint64_t cap) {
  if (!w.part) return;
  if (auto e = expand_part_witness(m, C, D, *w.part, r_eff, cap)) {
    w.expanded_input = std::move(e->input);
    w.expansion_exponent = e->exponent;
    w.expanded_computation = std::move(e->computation);
  } else {
    w.expansion_exponent = C * r_eff + D;
  }
}

}  // namespace

Bounds bounds(std::uint64_t q, std::uint64_t C, std::uint64_t D, std::optional<BoundsOverride> override) {
  Bounds b;
  b.C = C;
  b.D = D;
  b.q = q;
  const BigInt qc = power(q, C);
  b.ell = BigInt(D) + 8 * qc;
  b.r = BigInt(D) + 12 * qc;
  if (override) {
    if (override->r < override->ell)
      throw Error(ErrorCode::BadOverride, "override r = " + std::to_string(override->r) + " is below ell = " +
                                              std::to_string(override->ell));
    b.overridden = true;
    b.ell_eff = override->ell;
    b.r_eff = override->r;
  } else {
    b.ell_eff = saturate(b.ell);
    b.r_eff = saturate(b.r);
  }
  return b;
}

BigInt crossing_budget(std::uint64_t q, std::uint64_t C) {
  if (q < 2) throw Error(ErrorCode::InvalidArgument, "crossing budget needs q >= 2");
  BigInt sum = 0;
  for (std::uint64_t j = 0; j <= C; ++j) sum += power(q, j) * (C - j);
  const BigInt num = power(q, C + 1) - BigInt(C + 1) * q + C;
  const BigInt den = BigInt(q - 1) * (q - 1);
  if (num % den != 0 || num / den != sum)
    throw Error(ErrorCode::PreconditionViolated, "direct sum disagrees with the closed form");
  if (C >= 1 && sum > 4 * power(q, C - 1))
    throw Error(ErrorCode::PreconditionViolated, "direct sum exceeds 4q^(C-1)");
  return sum;
}

bool lemma3_multiplicity_check(const Machine& m, const Word& w, const Computation& comp, std::uint64_t t,
                               std::uint64_t C, std::uint64_t D) {
  if (t > comp.steps()) throw Error(ErrorCode::PreconditionViolated, "t exceeds the computation length");
  if (t > C * w.size() + D) throw Error(ErrorCode::PreconditionViolated, "t exceeds C|w|+D");
  if (comp.input != w) throw Error(ErrorCode::InvalidArgument, "computation is not on w");
  const auto crs = crossing_sequences(m, w, std::span(comp.choices).first(t));
  std::map<CrossingSequence, std::uint64_t> count;
  std::uint64_t k = 0;
  for (std::int64_t i = 1; i <= static_cast<std::int64_t>(w.size()); ++i) {
    auto it = crs.find(i);
    k = std::max(k, ++count[it == crs.end() ? CrossingSequence{} : it->second]);
  }
  return BigInt(w.size()) <= BigInt(D) + 4 * BigInt(k) * power(m.state_count(), C);
}

std::vector<Word> words_up_to(std::span<const SymbolId> alphabet, std::size_t lo, std::size_t hi) {
  std::vector<Word> out;
  for (std::size_t n = lo; n <= hi; ++n)
    for_each_word(alphabet, n, [&](const Word& w) {
      out.push_back(w);
      return true;
    });
  return out;
}

std::vector<CrsEntry> crs_set(const Machine& m, std::uint64_t ell, std::uint64_t C, std::uint64_t D,
                              const SearchLimits& limits, SearchStats* stats) {
  if (word_count(m.input_alphabet().size(), 1, ell) > BigInt(limits.max_nodes))
    over_budget("too many inputs for the crossing-sequence set");
  std::vector<CrsEntry> out;
  std::set<CrossingSequence> seen;
  std::uint64_t nodes = 0;
  for (std::uint64_t n = 1; n <= ell; ++n) {
    const std::uint64_t budget = C * n + D + 1;
    for_each_word(m.input_alphabet(), n, [&](const Word& w) {
      if (stats) ++stats->inputs;
      std::vector<CrossingSequence> at(n + 1);
      auto record = [&](const Run& r, std::uint64_t boundary) {
        if (!seen.insert(at[boundary]).second) return;
        CrsEntry e;
        e.crs = at[boundary];
        e.w1.assign(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(boundary));
        e.w2.assign(w.begin() + static_cast<std::ptrdiff_t>(boundary), w.end());
        e.comp = r.to_computation();
        e.t0 = r.step();
        e.boundary = boundary;
        out.push_back(std::move(e));
      };
      depth_first(
          m, w,
          [&](const Run& r) {
            if (++nodes > limits.max_nodes) over_budget("node limit reached while building the crossing-sequence set");
            if (r.step() == 0) {
              record(r, 1);
            } else {
              const std::int64_t b = last_crossing(r);
              if (b >= 1 && b <= static_cast<std::int64_t>(n)) {
                at[static_cast<std::size_t>(b)].push_back(r.state());
                record(r, static_cast<std::uint64_t>(b));
              }
            }
            if (r.step() == budget)
              throw Error(ErrorCode::PreconditionViolated,
                          "a computation exceeds Cn+D; check condition (a) before building the set");
            return r.halted() ? Visit::Skip : Visit::Expand;
          },
          [&](const Run& r) {
            if (r.step() == 0) return;
            const std::int64_t b = last_crossing(r);
            if (b >= 1 && b <= static_cast<std::int64_t>(n)) at[static_cast<std::size_t>(b)].pop_back();
          });
      return true;
    });
  }
  if (stats) {
    stats->computation_nodes += nodes;
    stats->crs_entries = out.size();
  }
  return out;
}

std::optional<Expansion> expand_part_witness(const Machine& m, std::uint64_t C, std::uint64_t D,
                                             const PartWitness& witness, std::uint64_t r_eff, std::uint64_t cap) {
  const CrsEntry& e = witness.entry;
  if (e.w1.empty() || e.comp.input != concat({&e.w1, &e.w2}) || e.t0 != e.comp.steps() || e.boundary != e.w1.size())
    throw Error(ErrorCode::MissingProvenance, "part witness lacks a usable provenance (w1, w2, computation)");
  const BigInt exponent = BigInt(C) * r_eff + D;
  const BigInt length = BigInt(e.w1.size() + e.w2.size()) + exponent * witness.part.size();
  if (length > BigInt(cap)) return std::nullopt;

  Expansion out;
  out.exponent = exponent.convert_to<std::uint64_t>();
  out.input = e.w1;
  for (std::uint64_t j = 0; j < out.exponent; ++j) out.input.insert(out.input.end(), witness.part.begin(), witness.part.end());
  out.input.insert(out.input.end(), e.w2.begin(), e.w2.end());

  // Outer steps of the provenance computation, split by side of boundary |w1|.
  const auto a = static_cast<std::int64_t>(e.w1.size());
  std::vector<RuleIndex> left, right;
  {
    Configuration c = start_configuration(m, e.comp.input);
    for (RuleIndex i : e.comp.choices) {
      (c.head < a ? left : right).push_back(i);
      apply_rule(m, c, i);
    }
  }
  // Replay the schedule: region 0 is w1 and everything left of it, regions
  // 1..E the copies of the part, region E+1 is w2 and everything right of it.
  const std::uint64_t E = out.exponent;
  const auto& moves = witness.part_comp.moves;
  std::vector<std::size_t> at_move(E + 2, 0);
  std::size_t li = 0, ri = 0;
  std::uint64_t region = 0;
  std::vector<RuleIndex> choices;
  std::int64_t head = 0;
  const std::int64_t right_start = a + static_cast<std::int64_t>(E * witness.part.size());
  while (true) {
    if (region == 0) {
      if (li == left.size()) break;
      const RuleIndex i = left[li++];
      choices.push_back(i);
      const std::int64_t from = head;
      head += step_of(m.rule(i).move);
      if (from == a - 1 && head == a) region = 1;
    } else if (region == E + 1) {
      if (ri == right.size()) break;
      const RuleIndex i = right[ri++];
      choices.push_back(i);
      const std::int64_t from = head;
      head += step_of(m.rule(i).move);
      if (from == right_start && head == right_start - 1) region = E;
    } else {
      std::size_t& p = at_move[region];
      if (p == moves.size()) break;
      const PartMove mv = moves[p++];
      choices.push_back(mv.rule);
      head += step_of(m.rule(mv.rule).move);
      if (mv.kind != PartMoveKind::Internal) region += m.rule(mv.rule).move == Direction::Left ? -1 : 1;
    }
  }
  bool complete = li == left.size() && ri == right.size();
  for (std::uint64_t j = 1; j <= E; ++j) complete = complete && at_move[j] == moves.size();
  if (complete) {
    try {
      Computation comp = replay_computation(m, out.input, choices);
      if (comp.steps() > C * out.input.size() + D) out.computation = std::move(comp);
    } catch (const Error&) {
    }
  }
  return out;
}

DecisionReport decide(const Machine& m, std::uint64_t C, std::uint64_t D, const DecideOptions& options) {
  DecisionReport report;
  report.bounds = bounds(m.state_count(), C, D, options.override);
  const Bounds& b = report.bounds;
  const SearchLimits& limits = options.limits;
  const auto sigma = m.input_alphabet();

  // Condition (a).
  if (word_count(sigma.size(), 0, b.ell_eff) > BigInt(limits.max_nodes))
    over_budget("inputs up to length " + b.ell.str() + " cannot be enumerated within the node limit");
  const std::vector<Word> inputs = words_up_to(sigma, 0, b.ell_eff);
  // Per-index costs make the reported counts independent of the job count:
  // only indices up to the answer are summed.
  std::vector<std::uint64_t> input_cost(inputs.size(), 0);
  std::atomic<std::uint64_t> nodes{0};
  auto direct = first_index(inputs.size(), limits.jobs, [&](std::size_t i) {
    std::uint64_t local = 0;
    const bool bad = check_input(m, inputs[i], C, D, &local).has_value();
    input_cost[i] = local;
    if ((nodes += local) > limits.max_nodes) over_budget("node limit reached while checking short inputs");
    return bad;
  });
  const std::size_t inputs_done = direct ? *direct + 1 : inputs.size();
  report.stats.inputs = inputs_done;
  report.stats.computation_nodes =
      std::accumulate(input_cost.begin(), input_cost.begin() + static_cast<std::ptrdiff_t>(inputs_done), std::uint64_t{0});
  if (direct) {
    Witness w;
    w.kind = Witness::Kind::Direct;
    w.direct = check_input(m, inputs[*direct], C, D);
    report.verdict = DecisionReport::Verdict::Violates;
    report.witness = std::move(w);
    return report;
  }

  // Condition (b).
  SearchLimits set_limits = limits;
  set_limits.max_nodes = limits.max_nodes - std::min<std::uint64_t>(limits.max_nodes, nodes);
  const std::vector<CrsEntry> entries = crs_set(m, b.ell_eff, C, D, set_limits, &report.stats);
  if (word_count(sigma.size(), 1, b.r_eff) * entries.size() > BigInt(limits.max_nodes))
    over_budget("parts up to length " + b.r.str() + " cannot be enumerated within the node limit");
  const std::vector<Word> parts = words_up_to(sigma, 1, b.r_eff);
  const std::size_t pairs = entries.size() * parts.size();
  std::vector<std::uint64_t> pair_cost(pairs, 0);
  std::atomic<std::uint64_t> part_nodes{0};
  auto bad_part = first_index(pairs, limits.jobs, [&](std::size_t i) {
    const CrsEntry& e = entries[i / parts.size()];
    const Word& w = parts[i % parts.size()];
    if (e.crs.empty()) return false;
    std::size_t configs = 0;
    const bool bad = part_computation_exceeding(m, w, e.crs, C * w.size(), &configs).has_value();
    pair_cost[i] = configs;
    if ((part_nodes += configs) > limits.max_nodes) over_budget("node limit reached while checking parts");
    return bad;
  });
  const std::size_t pairs_done = bad_part ? *bad_part + 1 : pairs;
  report.stats.parts = pairs_done;
  report.stats.part_configurations =
      std::accumulate(pair_cost.begin(), pair_cost.begin() + static_cast<std::ptrdiff_t>(pairs_done), std::uint64_t{0});
  if (bad_part) {
    const CrsEntry& e = entries[*bad_part / parts.size()];
    const Word& w = parts[*bad_part % parts.size()];
    PartWitness pw;
    pw.entry = e;
    pw.part = w;
    pw.part_comp = *part_computation_exceeding(m, w, e.crs, C * w.size());
    pw.t_val = part_time(m, w, e.crs);
    Witness wit;
    wit.kind = Witness::Kind::Part;
    wit.part = std::move(pw);
    attach_expansion(m, C, D, wit, b.r_eff, options.expand_cap);
    report.verdict = DecisionReport::Verdict::Violates;
    report.witness = std::move(wit);
    return report;
  }
  report.verdict = DecisionReport::Verdict::Runs;
  report.exact = !b.overridden;
  return report;
}

namespace {

// Tracks the checker's counters and crossing sequences along one computation
// prefix on w1·w2·w3.
struct TripleTracker {
  std::int64_t a, b;
  std::uint64_t bound;       // C|w0| + D
  std::uint64_t part_bound;  // C|w2|
  std::uint64_t in_part = 0;
  CrossingSequence crs1, crs2;

  struct Undo {
    bool in_part, at_a, at_b;
  };
  std::vector<Undo> undo;

  void step(std::int64_t from, const Rule& r) {
    const std::int64_t crossed = crossed_boundary(from, r.move);
    Undo u{from >= a && from < b, crossed == a, crossed == b};
    in_part += u.in_part;
    if (u.at_a) crs1.push_back(r.to);
    if (u.at_b) crs2.push_back(r.to);
    undo.push_back(u);
  }
  void back() {
    const Undo u = undo.back();
    undo.pop_back();
    in_part -= u.in_part;
    if (u.at_a) crs1.pop_back();
    if (u.at_b) crs2.pop_back();
  }
  bool part_hit() const { return in_part > part_bound && crs1 == crs2; }
};

Witness direct_witness(const Run& r, std::uint64_t bound) {
  Witness w;
  w.kind = Witness::Kind::Direct;
  w.direct = RunViolation{r.input(), r.to_computation(), r.step(), bound};
  return w;
}

}  // namespace

std::optional<Witness> find_violation(const Machine& m, std::uint64_t C, std::uint64_t D, const FindOptions& options,
                                      SearchStats* stats) {
  if (options.budget == 0) throw Error(ErrorCode::InvalidArgument, "budget must be at least 1");
  const Bounds b = bounds(m.state_count(), C, D, options.override);
  const std::uint64_t ell = std::min(b.ell_eff, options.budget);
  const std::uint64_t r = std::min(b.r_eff, options.budget);
  const auto sigma = m.input_alphabet();
  std::uint64_t used = 0;
  SearchStats local;
  std::optional<Witness> found;

  auto finish = [&](std::optional<Witness> w) {
    if (w) attach_expansion(m, C, D, *w, b.r_eff, 1'000'000);
    if (stats) *stats = local;
    return w;
  };

  if (options.strategy == SearchStrategy::Exhaustive) {
    // Direct inputs.
    for (std::uint64_t n = 0; n <= ell && !found && used < options.budget; ++n) {
      for_each_word(sigma, n, [&](const Word& w) {
        ++local.inputs;
        std::uint64_t nodes = 0;
        if (auto v = check_input(m, w, C, D, &nodes)) {
          Witness wit;
          wit.kind = Witness::Kind::Direct;
          wit.direct = std::move(*v);
          found = std::move(wit);
        }
        used += nodes;
        local.computation_nodes += nodes;
        return !found && used < options.budget;
      });
    }
    // Triples, by total length.
    for (std::uint64_t n = 2; n <= ell + r && !found && used < options.budget; ++n) {
      for (std::uint64_t l2 = 1; l2 <= std::min(r, n - 1) && !found && used < options.budget; ++l2) {
        for (std::uint64_t l1 = 1; l1 + l2 <= n && !found && used < options.budget; ++l1) {
          const std::uint64_t l3 = n - l1 - l2;
          if (l1 + l3 > ell) continue;
          for_each_word(sigma, n, [&](const Word& w0) {
            ++local.inputs;
            TripleTracker tr{static_cast<std::int64_t>(l1), static_cast<std::int64_t>(l1 + l2), C * n + D, C * l2, 0, {}, {}, {}};
            depth_first(
                m, w0,
                [&](const Run& run) {
                  ++used;
                  ++local.computation_nodes;
                  if (run.step() > 0) {
                    const Rule& rule = m.rule(run.choices().back());
                    tr.step(run.head() - step_of(rule.move), rule);
                  }
                  if (run.step() > tr.bound) {
                    found = direct_witness(run, tr.bound);
                    return Visit::Stop;
                  }
                  if (tr.part_hit()) {
                    const Word w1(w0.begin(), w0.begin() + static_cast<std::ptrdiff_t>(l1));
                    const Word w2(w0.begin() + static_cast<std::ptrdiff_t>(l1),
                                  w0.begin() + static_cast<std::ptrdiff_t>(l1 + l2));
                    const Word w3(w0.begin() + static_cast<std::ptrdiff_t>(l1 + l2), w0.end());
                    Witness wit;
                    wit.kind = Witness::Kind::Part;
                    wit.part = part_witness_from(m, w1, w2, w3, run.choices());
                    found = std::move(wit);
                    return Visit::Stop;
                  }
                  if (used >= options.budget) return Visit::Stop;
                  return run.halted() ? Visit::Skip : Visit::Expand;
                },
                [&](const Run& run) {
                  if (run.step() > 0) tr.back();
                });
            return !found && used < options.budget;
          });
        }
      }
    }
    return finish(std::move(found));
  }

  // Random strategy: alternate direct trials and triple trials, each following
  // one uniformly chosen branch.
  std::mt19937_64 rng(options.seed);
  auto uniform = [&](std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
  };
  auto random_word = [&](std::uint64_t n) {
    Word w(n);
    for (auto& x : w) x = sigma[uniform(0, sigma.size() - 1)];
    return w;
  };
  for (std::uint64_t trial = 0; used < options.budget && !found; ++trial) {
    const bool triple = trial % 2 == 1 && ell >= 1 && r >= 1;
    std::uint64_t l1 = 0, l2 = 0, l3 = 0;
    if (triple) {
      l2 = uniform(1, r);
      l1 = uniform(1, ell);
      l3 = uniform(0, ell - l1);
    } else {
      l1 = uniform(0, ell);
    }
    const Word w0 = random_word(l1 + l2 + l3);
    const std::uint64_t n = w0.size();
    ++local.inputs;
    TripleTracker tr{static_cast<std::int64_t>(l1), static_cast<std::int64_t>(l1 + l2), C * n + D, C * l2, 0, {}, {}, {}};
    Run run(m, w0);
    while (used < options.budget) {
      ++used;
      ++local.computation_nodes;
      if (run.step() > tr.bound) {
        found = direct_witness(run, tr.bound);
        break;
      }
      if (triple && tr.part_hit()) {
        const Word w1(w0.begin(), w0.begin() + static_cast<std::ptrdiff_t>(l1));
        const Word w2(w0.begin() + static_cast<std::ptrdiff_t>(l1), w0.begin() + static_cast<std::ptrdiff_t>(l1 + l2));
        const Word w3(w0.begin() + static_cast<std::ptrdiff_t>(l1 + l2), w0.end());
        Witness wit;
        wit.kind = Witness::Kind::Part;
        wit.part = part_witness_from(m, w1, w2, w3, run.choices());
        found = std::move(wit);
        break;
      }
      if (run.halted()) break;
      const auto options_here = m.rules_for(run.state(), run.tape().get(run.head()));
      const RuleIndex pick = options_here[uniform(0, options_here.size() - 1)];
      const std::int64_t from = run.head();
      run.push(pick);
      tr.step(from, m.rule(pick));
    }
  }
  return finish(std::move(found));
}

std::string verify_witness(const Machine& m, std::uint64_t C, std::uint64_t D, const Witness& w) {
  try {
    if (w.kind == Witness::Kind::Direct) {
      if (!w.direct) return "direct witness without a computation";
      const RunViolation& v = *w.direct;
      if (!over_sigma(m, v.input)) return "input is not over the input alphabet";
      const Computation c = replay_computation(m, v.input, v.computation.choices);
      const std::uint64_t bound = C * v.input.size() + D;
      if (c.steps() <= bound)
        return "computation makes " + std::to_string(c.steps()) + " steps, within the bound " + std::to_string(bound);
      return "";
    }
    if (!w.part) return "part witness without a part computation";
    const PartWitness& p = *w.part;
    if (!over_sigma(m, p.part)) return "part is not over the input alphabet";
    const PartComputation pc = replay_part(m, p.part, p.entry.crs, p.part_comp.moves);
    if (pc.length <= C * p.part.size())
      return "part computation has length " + std::to_string(pc.length) + ", within C|w| = " +
             std::to_string(C * p.part.size());
    const CrsEntry& e = p.entry;
    if (e.w1.empty()) return "provenance w1 is empty";
    if (e.boundary != e.w1.size()) return "provenance boundary differs from |w1|";
    if (!over_sigma(m, e.w1) || !over_sigma(m, e.w2)) return "provenance input is not over the input alphabet";
    const Computation src = replay_computation(m, concat({&e.w1, &e.w2}), e.comp.choices);
    if (e.t0 > src.steps()) return "provenance time exceeds its computation";
    if (crossing_sequence(m, src, static_cast<std::int64_t>(e.boundary), e.t0) != e.crs)
      return "provenance does not produce the crossing sequence";
    if (w.expanded_input && w.expanded_computation) {
      if (w.expanded_computation->input != *w.expanded_input) return "expanded computation is on another input";
      const Computation big = replay_computation(m, *w.expanded_input, w.expanded_computation->choices);
      if (big.steps() <= C * w.expanded_input->size() + D) return "expanded computation stays within its bound";
    }
    return "";
  } catch (const Error& e) {
    return e.what();
  }
}

}  // namespace tmtime

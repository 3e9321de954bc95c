#include <doctest.h>

#include <random>

#include "support.hpp"
#include "tmtime/compactness.hpp"
#include "tmtime/error.hpp"
#include "tmtime/simulator.hpp"

using namespace tmtime;

TEST_CASE("start configuration") {
  Machine acc = ts::m_acc();
  auto c = start_configuration(acc, Word{});
  CHECK(c.tape.non_blank().empty());
  CHECK(c.head == 0);
  CHECK(c.state == acc.start());
  CHECK(c.step == 0);

  Machine sweep = ts::m_sweep();
  auto c2 = start_configuration(sweep, ts::word(sweep, "11"));
  const SymbolId one = static_cast<SymbolId>(sweep.find_symbol("1"));
  CHECK(c2.tape.non_blank() == std::map<std::int64_t, SymbolId>{{0, one}, {1, one}});

  try {
    parse_word(sweep, "1x");
    FAIL("expected SymbolNotInSigma");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SymbolNotInSigma);
  }
  CHECK_THROWS_AS(start_configuration(sweep, Word{sweep.blank()}), Error);
}

TEST_CASE("successors") {
  Machine acc = ts::m_acc();
  auto succ = successors(acc, start_configuration(acc, Word{}));
  REQUIRE(succ.size() == 1);
  CHECK(succ[0].next.state == acc.accept());
  CHECK(succ[0].next.head == 1);
  CHECK(succ[0].next.step == 1);
  CHECK(successors(acc, succ[0].next).empty());

  Machine two = ts::with_rules("s 0 -> a 0 R\ns 1 -> a 1 R\ns 1 -> r 0 L\ns _ -> a _ R\n");
  auto s2 = successors(two, start_configuration(two, ts::word(two, "1")));
  REQUIRE(s2.size() == 2);
  CHECK(s2[0].next.state == two.accept());
  CHECK(s2[1].next.state == two.reject());
  CHECK(s2[1].next.head == -1);
}

TEST_CASE("enumerate_computations examples") {
  Machine acc = ts::m_acc();
  auto a = enumerate_computations(acc, ts::word(acc, "1"), 5);
  REQUIRE(a.size() == 1);
  CHECK(a[0].steps() == 1);
  CHECK(a[0].halted);

  Machine loop = ts::m_loop();
  auto l = enumerate_computations(loop, Word{}, 3);
  REQUIRE(l.size() == 1);
  CHECK(l[0].steps() == 3);
  CHECK_FALSE(l[0].halted);

  Machine sweep = ts::m_sweep();
  auto s = enumerate_computations(sweep, ts::word(sweep, "11"), 10);
  REQUIRE(s.size() == 1);
  CHECK(s[0].steps() == 3);
}

TEST_CASE("enumeration order and replay") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 60; ++i) {
    Machine m = ts::random_machine(rng);
    Word w = ts::random_word(rng, m, i % 4);
    auto comps = enumerate_computations(m, w, 6);
    for (std::size_t k = 0; k < comps.size(); ++k) {
      const auto& c = comps[k];
      CHECK(c.final == replay(m, w, c.choices));
      auto tr = ts::oracle_replay(m, w, c.choices);
      CHECK(tr.ok);
      CHECK(tr.state == c.final.state);
      CHECK(tr.head == c.final.head);
      CHECK(c.halted == m.is_halting(c.final.state));
      CHECK((c.halted || c.steps() == 6));
      if (k > 0) CHECK(comps[k - 1].choices < c.choices);  // declaration order
    }
  }
}

TEST_CASE("replay rejects inapplicable choices") {
  Machine sweep = ts::m_sweep();
  try {
    replay(sweep, ts::word(sweep, "1"), std::vector<RuleIndex>{2});
    FAIL("expected InvalidReplay");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidReplay);
  }
}

TEST_CASE("check_input examples") {
  Machine sweep = ts::m_sweep();
  CHECK_FALSE(check_input(sweep, ts::word(sweep, "11"), 1, 1));
  auto v = check_input(sweep, ts::word(sweep, "11"), 1, 0);
  REQUIRE(v);
  CHECK(v->steps == 3);
  CHECK(v->bound == 2);
  Machine acc = ts::m_acc();
  CHECK_FALSE(check_input(acc, Word{}, 0, 1));
}

TEST_CASE("brute_force_runs_in_time examples") {
  CHECK_FALSE(brute_force_runs_in_time(ts::m_acc(), 2, 1, 4));
  auto l = brute_force_runs_in_time(ts::m_loop(), 2, 1, 0);
  REQUIRE(l);
  CHECK(l->input.empty());
  CHECK(l->steps == 2);
  CHECK(l->bound == 1);
  auto d = brute_force_runs_in_time(ts::m_double(), 1, 3, 4);
  REQUIRE(d);
  CHECK(d->input.size() == 2);
  CHECK(d->steps == 6);
  CHECK(d->bound == 5);
}

TEST_CASE("check_input agrees with the recursive oracle") {
  std::mt19937_64 rng(32);
  ts::GenOptions o;
  o.q_max = 4;
  o.max_branch = 3;
  int checked = 0;
  for (int i = 0; i < 300; ++i) {
    Machine m = ts::random_machine(rng, o);
    Word w = ts::random_word(rng, m, i % 5);
    const std::uint64_t C = i % 3, D = i % 4;
    auto expect = ts::oracle_violates(m, w, C, D);
    if (!expect) continue;
    auto got = check_input(m, w, C, D);
    CHECK(got.has_value() == *expect);
    if (got) {
      CHECK(got->steps == got->bound + 1);
      CHECK(got->computation.steps() == got->steps);
      auto tr = ts::oracle_replay(m, w, got->computation.choices);
      CHECK(tr.ok);
      CHECK(tr.steps > C * w.size() + D);
    }
    ++checked;
  }
  CHECK(checked >= 250);
}

TEST_CASE("check_input does not reuse a configuration with less time left") {
  // (s, 11) is reached at step 2 (halts within 3 more steps, fine there) and
  // again at step 4, where the same 3 steps overrun 2*1+3.
  Machine m = ts::with_rules(
      "s 0 -> a 0 R\ns 1 -> q3 1 L\ns 1 -> q3 1 R\ns _ -> a 0 L\ns _ -> r 0 L\n"
      "q3 0 -> s 1 L\nq3 0 -> a 1 L\nq3 1 -> a 1 R\nq3 _ -> s 1 L\nq3 _ -> s 0 L\n");
  auto v = check_input(m, ts::word(m, "1"), 2, 3);
  REQUIRE(v);
  CHECK(v->steps == 6);
  CHECK(ts::oracle_replay(m, v->input, v->computation.choices).ok);
}

TEST_CASE("check_input agrees with the oracle on halting-heavy machines") {
  std::mt19937_64 rng(33);
  ts::GenOptions o;
  o.q_max = 4;
  int checked = 0, violations = 0;
  for (int i = 0; i < 400; ++i) {
    o.halt_bias = 0.3 + 0.1 * (i % 5);
    o.max_branch = 2 + i % 2;
    Machine m = ts::random_machine(rng, o);
    for (const auto& w : words_up_to(m.input_alphabet(), 0, 3)) {
      for (std::uint64_t C : {1, 2, 3}) {
        for (std::uint64_t D : {0, 1, 3}) {
          auto expect = ts::oracle_violates(m, w, C, D);
          if (!expect) continue;
          CHECK(check_input(m, w, C, D).has_value() == *expect);
          violations += *expect;
          ++checked;
        }
      }
    }
  }
  CHECK(checked >= 10000);
  CHECK(violations >= 1000);
  CHECK(checked - violations >= 1000);
}

TEST_CASE("check_input is monotone in D") {
  std::mt19937_64 rng(33);
  for (int i = 0; i < 100; ++i) {
    Machine m = ts::random_machine(rng);
    Word w = ts::random_word(rng, m, i % 4);
    for (std::uint64_t D = 0; D < 6; ++D)
      if (!check_input(m, w, 1, D)) CHECK_FALSE(check_input(m, w, 1, D + 1));
  }
}

TEST_CASE("brute force agrees with check_input per input") {
  std::mt19937_64 rng(34);
  for (int i = 0; i < 40; ++i) {
    Machine m = ts::random_machine(rng);
    auto bf = brute_force_runs_in_time(m, 2, 2, 3);
    std::optional<RunViolation> first;
    for (std::size_t n = 0; n <= 3 && !first; ++n)
      for_each_word(m.input_alphabet(), n, [&](const Word& w) {
        first = check_input(m, w, 2, 2);
        return !first;
      });
    CHECK(bf.has_value() == first.has_value());
    if (bf && first) CHECK(bf->input == first->input);
  }
}

TEST_CASE("crossing sequences") {
  Machine sweep = ts::m_sweep();
  Word w = ts::word(sweep, "11");
  auto comp = enumerate_computations(sweep, w, 10).at(0);
  CHECK(crossing_sequence(sweep, comp, 1, 3) == CrossingSequence{sweep.start()});
  CHECK(crossing_sequence(sweep, comp, 2, 3) == CrossingSequence{sweep.start(), sweep.accept()});
  CHECK(crossing_sequence(sweep, comp, 1, 0).empty());
  try {
    crossing_sequence(sweep, comp, 1, 4);
    FAIL("expected TimeOutOfRange");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TimeOutOfRange);
  }
}

TEST_CASE("crossing sequences match the oracle trace and sum to the length") {
  std::mt19937_64 rng(35);
  for (int i = 0; i < 200; ++i) {
    Machine m = ts::random_machine(rng);
    Word w = ts::random_word(rng, m, i % 6);
    auto choices = ts::random_choices(rng, m, w, 30);
    Computation comp = replay_computation(m, w, choices);
    auto all = crossing_sequences(m, w, choices);
    auto tr = ts::oracle_replay(m, w, choices);
    std::uint64_t sum = 0;
    for (const auto& [b, crs] : all) {
      sum += crs.size();
      CHECK(crs == tr.crossings[b]);
      CHECK(crossing_sequence(m, comp, b, comp.steps()) == crs);
    }
    CHECK(sum == comp.steps());
    std::uniform_int_distribution<std::uint64_t> tpick(0, comp.steps());
    const std::uint64_t t = tpick(rng);
    auto pref = ts::oracle_replay(m, w, choices, t);
    for (std::int64_t b = -3; b <= static_cast<std::int64_t>(w.size()) + 3; ++b)
      CHECK(crossing_sequence(m, comp, b, t) == pref.crossings[b]);
  }
}

TEST_CASE("depth_first visits every prefix once") {
  Machine m = ts::with_rules("s 0 -> s 0 R\ns 0 -> a 1 L\ns 1 -> s 1 R\ns _ -> a _ L\ns _ -> s 0 R\n");
  Word w = ts::word(m, "00");
  std::uint64_t nodes = 0, leaves = 0;
  depth_first(m, w, [&](const Run& r) {
    ++nodes;
    if (r.halted() || r.step() == 4) {
      ++leaves;
      return Visit::Skip;
    }
    return Visit::Expand;
  });
  CHECK(leaves == enumerate_computations(m, w, 4).size());
  CHECK(nodes > leaves);
}

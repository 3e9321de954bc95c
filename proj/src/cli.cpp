#include "tmtime/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iterator>
#include <map>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tmtime/codec.hpp"
#include "tmtime/compactness.hpp"
#include "tmtime/error.hpp"
#include "tmtime/gadgets.hpp"
#include "tmtime/json_io.hpp"
#include "tmtime/part.hpp"
#include "tmtime/simulator.hpp"

namespace tmtime {

namespace {

using Json = nlohmann::json;
namespace tj = tmtime::json;

enum Exit { kOk = 0, kViolates = 1, kUsage = 2, kInvalidMachine = 3, kBudget = 4 };

int exit_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::MissingTransition:
    case ErrorCode::HaltingStateHasRule:
    case ErrorCode::AlphabetViolation:
    case ErrorCode::DuplicateRule:
    case ErrorCode::DistinctnessViolation:
    case ErrorCode::AlphabetMismatch:
    case ErrorCode::UnsupportedAlphabet:
      return kInvalidMachine;
    case ErrorCode::ResourceBudgetExceeded:
      return kBudget;
    default:
      return kUsage;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

// First-rule computation: always takes the first applicable rule.
Computation first_computation(const Machine& m, const Word& w, std::uint64_t max_steps) {
  Run run(m, w);
  while (!run.halted() && run.step() < max_steps) {
    auto rules = m.rules_for(run.state(), run.tape().get(run.head()));
    run.push(rules.front());
  }
  return run.to_computation();
}

Computation random_computation(const Machine& m, const Word& w, std::uint64_t max_steps, std::mt19937_64& rng) {
  Run run(m, w);
  while (!run.halted() && run.step() < max_steps) {
    auto rules = m.rules_for(run.state(), run.tape().get(run.head()));
    std::uniform_int_distribution<std::size_t> pick(0, rules.size() - 1);
    run.push(rules[pick(rng)]);
  }
  return run.to_computation();
}

std::string choices_text(std::span<const RuleIndex> c) {
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) out += (i ? "," : "") + std::to_string(c[i]);
  return out;
}

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

void describe_computation(const Machine& m, const Computation& c, std::ostream& out) {
  out << "input " << quoted(format_word(m, c.input)) << ": " << c.steps() << " steps, "
      << (c.halted ? "halted in " : "stopped in ") << m.state_name(c.final.state) << "\n";
  out << "  choices " << choices_text(c.choices) << "\n";
}

void describe_witness(const Machine& m, std::uint64_t C, std::uint64_t D, const Witness& w, std::ostream& out) {
  if (w.kind == Witness::Kind::Direct) {
    const auto& v = *w.direct;
    out << "witness: input " << quoted(format_word(m, v.input)) << " has a computation of more than " << v.bound
        << " steps\n";
    out << "  choices " << choices_text(v.computation.choices) << "\n";
    return;
  }
  const auto& p = *w.part;
  out << "witness: part " << quoted(format_word(m, p.part)) << " with crossing sequence "
      << format_states(m, p.entry.crs) << " has t = " << p.t_val.str() << " > " << C * p.part.size() << "\n";
  out << "  provenance: w1 = " << quoted(format_word(m, p.entry.w1)) << ", w2 = " << quoted(format_word(m, p.entry.w2))
      << ", after " << p.entry.t0 << " steps\n";
  out << "  part computation length " << p.part_comp.length << "\n";
  if (w.expanded_input) {
    out << "  expanded input of length " << w.expanded_input->size() << " (exponent " << *w.expansion_exponent << ")";
    if (w.expanded_computation)
      out << ": computation of " << w.expanded_computation->steps() << " steps > "
          << C * w.expanded_input->size() + D;
    out << "\n";
  } else {
    out << "  expansion exceeds the size cap\n";
  }
}

struct Common {
  bool json = false;
  unsigned jobs = 1;
};

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"One-tape NTM running-time analysis"};
  app.name("tmtime");
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  app.add_flag("--json", common.json, "JSON output");
  if (const char* env = std::getenv("TMTIME_JOBS"); env && *env) {
    const std::string v = env;
    if (v.size() > 4 || v.find_first_not_of("0123456789") != std::string::npos || std::stoul(v) < 1 ||
        std::stoul(v) > 1024) {
      err << "TMTIME_JOBS: expected an integer in [1, 1024], got '" << v << "'\n";
      return 2;
    }
    common.jobs = static_cast<unsigned>(std::stoul(v));
  }
  app.add_option("--jobs", common.jobs, "Worker threads for searches (default: TMTIME_JOBS or 1)")
      ->check(CLI::Range(1u, 1024u));

  std::string machine_path, input, part, crs_text, bits, strategy = "exhaustive", mode = "reject", out_path,
                                                            manifest_path, machine2_path;
  std::uint64_t max_steps = 1000, random_runs = 0, seed = 0, C = 2, D = 1, ell = 0, r = 0, expand_cap = 1'000'000,
                budget = 1'000'000, max_nodes = 200'000'000, p = 2, K = 1, k = 1;
  std::int64_t boundary = 0;
  std::uint64_t time = 0;
  bool all = false, as_code = false;

  auto machine_arg = [&](CLI::App* sub) { sub->add_option("machine", machine_path, "Machine file")->required(); };
  auto cd_args = [&](CLI::App* sub) {
    sub->add_option("-C", C, "Linear coefficient")->required();
    sub->add_option("-D", D, "Additive constant")->required();
  };

  auto* validate = app.add_subcommand("validate", "Check a machine file");
  machine_arg(validate);

  auto* simulate = app.add_subcommand("simulate", "Run a machine on one input");
  machine_arg(simulate);
  simulate->add_option("--input", input, "Input word")->required();
  simulate->add_option("--max-steps", max_steps, "Step cap");
  auto* all_flag = simulate->add_flag("--all", all, "Every computation up to the step cap");
  auto* random_opt = simulate->add_option("--random", random_runs, "Number of random computations");
  simulate->add_option("--seed", seed, "Random seed");
  all_flag->excludes(random_opt);

  auto* crossings = app.add_subcommand("crossings", "Crossing sequences of the first-rule computation");
  machine_arg(crossings);
  crossings->add_option("--input", input, "Input word")->required();
  auto* boundary_opt = crossings->add_option("--boundary", boundary, "Boundary index");
  auto* time_opt = crossings->add_option("--time", time, "Prefix length (default: whole computation)");
  crossings->add_option("--max-steps", max_steps, "Step cap");

  auto* part_time_cmd = app.add_subcommand("part-time", "Longest part computation");
  machine_arg(part_time_cmd);
  part_time_cmd->add_option("--part", part, "Part word")->required();
  part_time_cmd->add_option("--crs", crs_text, "Ending crossing sequence, e.g. s,a")->required();

  auto* crs_set_cmd = app.add_subcommand("crs-set", "Crossing-sequence prefixes over short inputs");
  machine_arg(crs_set_cmd);
  crs_set_cmd->add_option("--ell", ell, "Maximum input length")->required();
  cd_args(crs_set_cmd);

  auto* decide_cmd = app.add_subcommand("decide", "Decide whether the machine runs in time Cn+D");
  machine_arg(decide_cmd);
  cd_args(decide_cmd);
  auto* ell_opt = decide_cmd->add_option("--ell", ell, "Override for the input length bound");
  auto* r_opt = decide_cmd->add_option("--r", r, "Override for the part length bound");
  ell_opt->needs(r_opt);
  r_opt->needs(ell_opt);
  decide_cmd->add_option("--expand-cap", expand_cap, "Largest expanded witness input to build");
  decide_cmd->add_option("--max-nodes", max_nodes, "Search node limit");

  auto* find_cmd = app.add_subcommand("find-violation", "Search for a running-time violation");
  machine_arg(find_cmd);
  cd_args(find_cmd);
  find_cmd->add_option("--strategy", strategy, "exhaustive or random")
      ->check(CLI::IsMember({"exhaustive", "random"}));
  find_cmd->add_option("--budget", budget, "Simulated step budget");
  find_cmd->add_option("--seed", seed, "Random seed");
  auto* f_ell = find_cmd->add_option("--ell", ell, "Override for the input length bound");
  auto* f_r = find_cmd->add_option("--r", r, "Override for the part length bound");
  f_ell->needs(f_r);
  f_r->needs(f_ell);

  auto* encode_cmd = app.add_subcommand("encode", "Binary code of a machine");
  machine_arg(encode_cmd);

  auto* decode_cmd = app.add_subcommand("decode", "Machine from a binary code");
  auto* bits_file = decode_cmd->add_option("file", machine_path, "File holding the code");
  auto* bits_opt = decode_cmd->add_option("--bits", bits, "Code given inline");
  bits_file->excludes(bits_opt);

  auto* compose_cmd = app.add_subcommand("compose", "Sequential composition of two machines");
  compose_cmd->add_option("first", machine_path, "First machine")->required();
  compose_cmd->add_option("second", machine2_path, "Second machine")->required();
  compose_cmd->add_flag("--code", as_code, "Print the composition code instead");

  auto* gadget_cmd = app.add_subcommand("gadget", "Hardness gadget constructions");
  gadget_cmd->require_subcommand(1);
  auto* div_cmd = gadget_cmd->add_subcommand("divisibility", "Machine accepting lengths divisible by p");
  div_cmd->add_option("-p", p, "Divisor")->required()->check(CLI::Range(std::uint64_t{1}, std::uint64_t{100000}));
  auto* hard_cmd = gadget_cmd->add_subcommand("hardness", "Machine running in time Cn+D iff the instance is a no");
  hard_cmd->add_option("--machine", machine_path, "Machine M")->required();
  hard_cmd->add_option("--input", input, "Input w")->required();
  cd_args(hard_cmd);
  hard_cmd->add_option("-K", K, "T(n) = K n^k + 1");
  hard_cmd->add_option("-k", k, "T(n) = K n^k + 1");
  hard_cmd->add_option("--mode", mode, "reject or count")->check(CLI::IsMember({"reject", "count"}));
  hard_cmd->add_option("--out", out_path, "Write the machine here instead of stdout");
  hard_cmd->add_option("--manifest", manifest_path, "Write the manifest JSON here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (validate->parsed()) {
      Machine m = load_machine_file(machine_path);
      if (common.json) {
        out << Json{{"valid", true},
                    {"states", m.state_count()},
                    {"input_alphabet", m.input_alphabet().size()},
                    {"tape_alphabet", m.symbols().size()},
                    {"rules", m.rules().size()},
                    {"deterministic", m.deterministic()}}
                   .dump(2)
            << "\n";
      } else {
        out << "ok: " << m.state_count() << " states, |Sigma| = " << m.input_alphabet().size()
            << ", |Gamma| = " << m.symbols().size() << ", " << m.rules().size() << " rules, "
            << (m.deterministic() ? "deterministic" : "nondeterministic") << "\n";
      }
      return kOk;
    }

    if (simulate->parsed()) {
      Machine m = load_machine_file(machine_path);
      Word w = parse_word(m, input);
      std::vector<Computation> comps;
      if (all) {
        comps = enumerate_computations(m, w, max_steps);
      } else if (random_runs > 0) {
        std::mt19937_64 rng(seed);
        for (std::uint64_t i = 0; i < random_runs; ++i) comps.push_back(random_computation(m, w, max_steps, rng));
      } else {
        comps.push_back(first_computation(m, w, max_steps));
      }
      if (common.json) {
        Json a = Json::array();
        for (const auto& c : comps) a.push_back(tj::to_json(m, c));
        out << Json{{"computations", a}}.dump(2) << "\n";
      } else {
        for (const auto& c : comps) describe_computation(m, c, out);
      }
      return kOk;
    }

    if (crossings->parsed()) {
      Machine m = load_machine_file(machine_path);
      Word w = parse_word(m, input);
      Computation c = first_computation(m, w, max_steps);
      const std::uint64_t t = time_opt->count() ? time : c.steps();
      Json j = Json::object();
      if (boundary_opt->count()) {
        auto crs = crossing_sequence(m, c, boundary, t);
        j[std::to_string(boundary)] = format_states(m, crs);
      } else {
        if (t > c.steps()) throw Error(ErrorCode::TimeOutOfRange, "time exceeds the computation length");
        auto all_crs = crossing_sequences(m, w, std::span(c.choices).first(t));
        for (const auto& [b, crs] : all_crs) j[std::to_string(b)] = format_states(m, crs);
      }
      if (common.json) {
        out << Json{{"computation", tj::to_json(m, c)}, {"time", t}, {"crossings", j}}.dump(2) << "\n";
      } else {
        describe_computation(m, c, out);
        if (boundary_opt->count()) {
          out << "boundary " << boundary << " after " << t << " steps: " << j.begin().value().get<std::string>() << "\n";
        } else {
          std::map<std::int64_t, std::string> ordered;
          for (auto it = j.begin(); it != j.end(); ++it) ordered[std::stoll(it.key())] = it.value().get<std::string>();
          for (const auto& [b, s] : ordered) out << "boundary " << b << ": " << s << "\n";
        }
      }
      return kOk;
    }

    if (part_time_cmd->parsed()) {
      Machine m = load_machine_file(machine_path);
      Word w = parse_word(m, part);
      CrossingSequence crs = parse_states(m, crs_text);
      PartTimeResult res = part_time_search(m, w, crs);
      if (common.json) {
        Json j{{"t", res.time.str()}, {"configurations", res.configurations}, {"longest", nullptr}};
        if (res.longest) j["longest"] = tj::to_json(m, *res.longest);
        out << j.dump(2) << "\n";
      } else {
        out << "t = " << res.time.str() << " (" << res.configurations << " configurations)\n";
        if (res.longest) {
          out << "longest:";
          for (const auto& mv : res.longest->moves) out << " " << part_move_name(mv.kind) << "/" << mv.rule;
          out << "\n";
        }
      }
      return kOk;
    }

    if (crs_set_cmd->parsed()) {
      Machine m = load_machine_file(machine_path);
      SearchLimits limits;
      limits.jobs = common.jobs;
      auto entries = crs_set(m, ell, C, D, limits);
      if (common.json) {
        Json a = Json::array();
        for (const auto& e : entries) a.push_back(tj::to_json(m, e));
        out << Json{{"ell", ell}, {"entries", a}}.dump(2) << "\n";
      } else {
        for (const auto& e : entries)
          out << format_states(m, e.crs) << "  boundary " << e.boundary << " of " << quoted(format_word(m, e.w1))
              << quoted(format_word(m, e.w2)) << " after " << e.t0 << " steps\n";
        out << entries.size() << " crossing-sequence prefixes\n";
      }
      return kOk;
    }

    if (decide_cmd->parsed()) {
      Machine m = load_machine_file(machine_path);
      DecideOptions opts;
      if (ell_opt->count()) opts.override = BoundsOverride{ell, r};
      opts.expand_cap = expand_cap;
      opts.limits.max_nodes = max_nodes;
      opts.limits.jobs = common.jobs;
      DecisionReport rep = decide(m, C, D, opts);
      const bool runs = rep.verdict == DecisionReport::Verdict::Runs;
      if (common.json) {
        out << tj::to_json(m, rep).dump(2) << "\n";
      } else {
        out << "verdict: " << (runs ? "RUNS" : "VIOLATES") << " in time " << C << "n+" << D
            << (rep.exact ? " (exact)" : runs ? " (up to the searched bounds)" : "") << "\n";
        out << "bounds: ell = " << rep.bounds.ell << ", r = " << rep.bounds.r;
        if (rep.bounds.overridden) out << " (searched ell = " << rep.bounds.ell_eff << ", r = " << rep.bounds.r_eff << ")";
        out << "\n";
        if (rep.witness) describe_witness(m, C, D, *rep.witness, out);
      }
      return runs ? kOk : kViolates;
    }

    if (find_cmd->parsed()) {
      Machine m = load_machine_file(machine_path);
      FindOptions opts;
      opts.strategy = strategy == "random" ? SearchStrategy::Random : SearchStrategy::Exhaustive;
      opts.budget = budget;
      opts.seed = seed;
      if (f_ell->count()) opts.override = BoundsOverride{ell, r};
      SearchStats stats;
      auto w = find_violation(m, C, D, opts, &stats);
      if (common.json) {
        out << Json{{"found", w.has_value()},
                    {"witness", w ? tj::to_json(m, *w) : Json(nullptr)},
                    {"stats", tj::to_json(stats)}}
                   .dump(2)
            << "\n";
      } else if (w) {
        describe_witness(m, C, D, *w, out);
      } else {
        out << "no violation found\n";
      }
      return w ? kViolates : kOk;
    }

    if (encode_cmd->parsed()) {
      Machine m = load_machine_file(machine_path);
      auto code = codec::encode(m);
      if (common.json) out << Json{{"code", code.str()}, {"length", code.size()}}.dump(2) << "\n";
      else out << code.str() << "\n";
      return kOk;
    }

    if (decode_cmd->parsed()) {
      const std::string text = trim(bits_opt->count() ? bits : read_file(machine_path));
      Machine m = codec::decode(codec::BitString(text));
      if (common.json) out << Json{{"machine", format_machine_text(m)}}.dump(2) << "\n";
      else out << format_machine_text(m);
      return kOk;
    }

    if (compose_cmd->parsed()) {
      Machine m1 = load_machine_file(machine_path);
      Machine m2 = load_machine_file(machine2_path);
      if (as_code) {
        auto code = codec::encode_composition({codec::encode(m1), codec::encode(m2)});
        if (common.json) out << Json{{"code", code.str()}}.dump(2) << "\n";
        else out << code.str() << "\n";
      } else {
        Machine m = compose(m1, m2);
        if (common.json) out << Json{{"machine", format_machine_text(m)}}.dump(2) << "\n";
        else out << format_machine_text(m);
      }
      return kOk;
    }

    if (div_cmd->parsed()) {
      Machine m = gadgets::divisibility_machine(p);
      if (common.json) out << Json{{"machine", format_machine_text(m)}}.dump(2) << "\n";
      else out << format_machine_text(m);
      return kOk;
    }

    if (hard_cmd->parsed()) {
      Machine M = load_machine_file(machine_path);
      Word w = parse_word(M, input);
      gadgets::GadgetSpec spec{K, k, C, D, mode == "count" ? gadgets::GadgetMode::Count : gadgets::GadgetMode::Reject};
      gadgets::Gadget g = gadgets::build_gadget(M, w, spec);
      const std::string text = format_machine_text(g.machine);
      const Json manifest = tj::to_json(g.manifest);
      if (!manifest_path.empty()) {
        std::ofstream f(manifest_path);
        if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write '" + manifest_path + "'");
        f << manifest.dump(2) << "\n";
      }
      if (!out_path.empty()) {
        std::ofstream f(out_path);
        if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write '" + out_path + "'");
        f << text;
      }
      if (common.json) {
        Json j{{"manifest", manifest}, {"states", g.machine.state_count()}, {"rules", g.machine.rules().size()}};
        if (out_path.empty()) j["machine"] = text;
        out << j.dump(2) << "\n";
      } else if (out_path.empty()) {
        out << text;
      } else {
        out << "wrote " << out_path << ": " << g.machine.state_count() << " states, " << g.machine.rules().size()
            << " rules\n";
      }
      return kOk;
    }
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace tmtime

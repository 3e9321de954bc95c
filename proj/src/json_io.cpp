#include "tmtime/json_io.hpp"

#include <string>

#include "tmtime/error.hpp"

namespace tmtime::json {

namespace {

Error bad(const std::string& what) { return Error(ErrorCode::Parse, "json: " + what); }

template <class T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw bad(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw bad(std::string("field '") + key + "' has the wrong type");
  }
}

json states_json(const Machine& m, std::span<const StateId> states) {
  json a = json::array();
  for (StateId s : states) a.push_back(m.state_name(s));
  return a;
}

CrossingSequence states_from(const Machine& m, const json& j) {
  if (!j.is_array()) throw bad("crossing sequence must be an array of state names");
  CrossingSequence out;
  for (const auto& s : j) {
    if (!s.is_string()) throw bad("state names must be strings");
    int id = m.find_state(s.get<std::string>());
    if (id < 0) throw bad("unknown state '" + s.get<std::string>() + "'");
    out.push_back(static_cast<StateId>(id));
  }
  return out;
}

Word word_from(const Machine& m, const json& j, const char* key) {
  return parse_word(m, field<std::string>(j, key), false);
}

std::string big(const BigInt& v) { return v.str(); }

BigInt big_from(const json& j, const char* key) {
  auto s = field<std::string>(j, key);
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw bad(std::string("field '") + key + "' must be a decimal string");
  return BigInt(s);
}

}  // namespace

json to_json(const Machine& m, const Computation& c) {
  return {{"input", format_word(m, c.input)},
          {"choices", c.choices},
          {"steps", c.steps()},
          {"halted", c.halted},
          {"final_state", m.state_name(c.final.state)}};
}

Computation computation_from_json(const Machine& m, const json& j) {
  auto w = word_from(m, j, "input");
  auto choices = field<std::vector<RuleIndex>>(j, "choices");
  Computation c = replay_computation(m, w, choices);
  if (j.contains("steps") && j.at("steps").get<std::uint64_t>() != c.steps()) throw bad("steps do not match choices");
  if (j.contains("final_state") && j.at("final_state").get<std::string>() != m.state_name(c.final.state))
    throw bad("final_state does not match replay");
  return c;
}

json to_json(const Machine& m, const RunViolation& v) {
  return {{"input", format_word(m, v.input)},
          {"computation", to_json(m, v.computation)},
          {"steps", v.steps},
          {"bound", v.bound}};
}

RunViolation violation_from_json(const Machine& m, const json& j) {
  RunViolation v;
  v.input = word_from(m, j, "input");
  v.computation = computation_from_json(m, field<json>(j, "computation"));
  v.steps = field<std::uint64_t>(j, "steps");
  v.bound = field<std::uint64_t>(j, "bound");
  if (v.computation.input != v.input) throw bad("violation input differs from its computation");
  if (v.steps != v.computation.steps()) throw bad("violation steps do not match its computation");
  return v;
}

json to_json(const Machine& m, const PartComputation& p) {
  json moves = json::array();
  for (const auto& mv : p.moves) moves.push_back({{"kind", part_move_name(mv.kind)}, {"rule", mv.rule}});
  return {{"part", format_word(m, p.part)},
          {"crs", states_json(m, p.crs)},
          {"moves", moves},
          {"internal_crossings", p.internal_crossings},
          {"length", p.length}};
}

PartComputation part_from_json(const Machine& m, const json& j) {
  auto part = word_from(m, j, "part");
  auto crs = states_from(m, field<json>(j, "crs"));
  std::vector<PartMove> moves;
  for (const auto& mv : field<json>(j, "moves")) {
    auto kind = part_move_from_name(field<std::string>(mv, "kind"));
    if (!kind) throw bad("unknown move kind '" + field<std::string>(mv, "kind") + "'");
    moves.push_back({*kind, field<RuleIndex>(mv, "rule")});
  }
  PartComputation p = replay_part(m, part, crs, moves);
  if (j.contains("length") && j.at("length").get<std::uint64_t>() != p.length) throw bad("length does not match replay");
  return p;
}

json to_json(const Machine& m, const CrsEntry& e) {
  return {{"crs", states_json(m, e.crs)},
          {"w1", format_word(m, e.w1)},
          {"w2", format_word(m, e.w2)},
          {"computation", to_json(m, e.comp)},
          {"t0", e.t0},
          {"boundary", e.boundary}};
}

CrsEntry crs_entry_from_json(const Machine& m, const json& j) {
  CrsEntry e;
  e.crs = states_from(m, field<json>(j, "crs"));
  e.w1 = word_from(m, j, "w1");
  e.w2 = word_from(m, j, "w2");
  e.comp = computation_from_json(m, field<json>(j, "computation"));
  e.t0 = field<std::uint64_t>(j, "t0");
  e.boundary = field<std::uint64_t>(j, "boundary");
  Word full = e.w1;
  full.insert(full.end(), e.w2.begin(), e.w2.end());
  if (e.comp.input != full) throw bad("crs entry computation is not on w1 w2");
  if (e.t0 > e.comp.steps()) throw bad("t0 exceeds the computation length");
  if (crossing_sequence(m, e.comp, static_cast<std::int64_t>(e.w1.size()), e.t0) != e.crs)
    throw bad("crs does not match the computation");
  return e;
}

json to_json(const Machine& m, const Witness& w) {
  json j;
  if (w.kind == Witness::Kind::Direct) {
    j["kind"] = "direct";
    j["violation"] = to_json(m, *w.direct);
  } else {
    const auto& pw = *w.part;
    j["kind"] = "part";
    j["entry"] = to_json(m, pw.entry);
    j["part"] = format_word(m, pw.part);
    j["part_computation"] = to_json(m, pw.part_comp);
    j["t"] = pw.t_val.str();
  }
  if (w.expanded_input) j["expanded_input"] = format_word(m, *w.expanded_input);
  // The concrete input violating the bound, when one is known.
  if (w.kind == Witness::Kind::Direct) j["input"] = format_word(m, w.direct->input);
  else if (w.expanded_input) j["input"] = format_word(m, *w.expanded_input);
  else j["input"] = nullptr;
  if (w.expansion_exponent) j["expansion_exponent"] = *w.expansion_exponent;
  if (w.expanded_computation) j["expanded_computation"] = to_json(m, *w.expanded_computation);
  return j;
}

Witness witness_from_json(const Machine& m, const json& j) {
  Witness w;
  auto kind = field<std::string>(j, "kind");
  if (kind == "direct") {
    w.kind = Witness::Kind::Direct;
    w.direct = violation_from_json(m, field<json>(j, "violation"));
  } else if (kind == "part") {
    w.kind = Witness::Kind::Part;
    PartWitness pw;
    pw.entry = crs_entry_from_json(m, field<json>(j, "entry"));
    pw.part = word_from(m, j, "part");
    pw.part_comp = part_from_json(m, field<json>(j, "part_computation"));
    auto t = field<std::string>(j, "t");
    if (t == "inf") pw.t_val = PartTime::infinite();
    else if (t == "-1") pw.t_val = PartTime::none();
    else {
      try {
        pw.t_val = PartTime::finite(std::stoull(t));
      } catch (const std::exception&) {
        throw bad("field 't' must be a number, \"inf\" or \"-1\"");
      }
    }
    w.part = std::move(pw);
  } else {
    throw bad("unknown witness kind '" + kind + "'");
  }
  if (j.contains("expanded_input")) w.expanded_input = word_from(m, j, "expanded_input");
  if (j.contains("expansion_exponent")) w.expansion_exponent = j.at("expansion_exponent").get<std::uint64_t>();
  if (j.contains("expanded_computation"))
    w.expanded_computation = computation_from_json(m, j.at("expanded_computation"));
  return w;
}

json to_json(const SearchStats& s) {
  return {{"inputs", s.inputs},
          {"computation_nodes", s.computation_nodes},
          {"crs_entries", s.crs_entries},
          {"parts", s.parts},
          {"part_configurations", s.part_configurations}};
}

json to_json(const Machine& m, const DecisionReport& r) {
  json j = {{"verdict", r.verdict == DecisionReport::Verdict::Runs ? "runs" : "violates"},
            {"exact", r.exact},
            {"C", r.bounds.C},
            {"D", r.bounds.D},
            {"q", r.bounds.q},
            {"ell", big(r.bounds.ell)},
            {"r", big(r.bounds.r)},
            {"overridden", r.bounds.overridden},
            {"ell_eff", r.bounds.ell_eff},
            {"r_eff", r.bounds.r_eff},
            {"witness", nullptr},
            {"stats", to_json(r.stats)}};
  if (r.witness) j["witness"] = to_json(m, *r.witness);
  return j;
}

DecisionReport report_from_json(const Machine& m, const json& j) {
  DecisionReport r;
  auto verdict = field<std::string>(j, "verdict");
  if (verdict == "runs") r.verdict = DecisionReport::Verdict::Runs;
  else if (verdict == "violates") r.verdict = DecisionReport::Verdict::Violates;
  else throw bad("unknown verdict '" + verdict + "'");
  r.exact = field<bool>(j, "exact");
  r.bounds.C = field<std::uint64_t>(j, "C");
  r.bounds.D = field<std::uint64_t>(j, "D");
  r.bounds.q = j.contains("q") ? j.at("q").get<std::uint64_t>() : m.state_count();
  r.bounds.ell = big_from(j, "ell");
  r.bounds.r = big_from(j, "r");
  r.bounds.overridden = j.value("overridden", false);
  r.bounds.ell_eff = field<std::uint64_t>(j, "ell_eff");
  r.bounds.r_eff = field<std::uint64_t>(j, "r_eff");
  if (j.contains("witness") && !j.at("witness").is_null()) r.witness = witness_from_json(m, j.at("witness"));
  if (r.verdict == DecisionReport::Verdict::Violates && !r.witness) throw bad("violates verdict without a witness");
  if (j.contains("stats")) {
    const auto& s = j.at("stats");
    r.stats.inputs = s.value("inputs", std::uint64_t{0});
    r.stats.computation_nodes = s.value("computation_nodes", std::uint64_t{0});
    r.stats.crs_entries = s.value("crs_entries", std::uint64_t{0});
    r.stats.parts = s.value("parts", std::uint64_t{0});
    r.stats.part_configurations = s.value("part_configurations", std::uint64_t{0});
  }
  return r;
}

json to_json(const gadgets::Manifest& mf) {
  return {{"mode", mf.mode == gadgets::GadgetMode::Reject ? "reject" : "count"},
          {"primes", mf.primes},
          {"m", mf.m},
          {"c", big(mf.c)},
          {"T", big(mf.T)},
          {"phase2_step_bound", big(mf.phase2_step_bound)},
          {"phase2_states", mf.phase2_states},
          {"lattice", big(mf.lattice)}};
}

}  // namespace tmtime::json

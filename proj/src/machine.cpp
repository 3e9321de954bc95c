#include "tmtime/machine.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "tmtime/error.hpp"

namespace tmtime {

namespace {

bool valid_token(std::string_view tok) {
  if (tok.empty()) return false;
  for (char c : tok) {
    if (c == '#' || static_cast<unsigned char>(c) <= ' ' || c == 0x7f) return false;
  }
  return true;
}

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

bool all_single_char(std::span<const std::string> tokens) {
  return std::all_of(tokens.begin(), tokens.end(), [](const std::string& t) { return t.size() == 1; });
}

}  // namespace

Machine Machine::validate(const MachineDescription& raw) {
  Machine m;

  std::unordered_map<std::string, SymbolId> sym_index;
  for (const auto& tok : raw.tape_alphabet) {
    if (!valid_token(tok)) throw Error(ErrorCode::AlphabetViolation, "bad tape symbol '" + tok + "'");
    if (!sym_index.emplace(tok, static_cast<SymbolId>(m.symbols_.size())).second)
      throw Error(ErrorCode::AlphabetViolation, "tape symbol '" + tok + "' listed twice");
    m.symbols_.push_back(tok);
  }
  if (raw.input_alphabet.empty()) throw Error(ErrorCode::AlphabetViolation, "input alphabet is empty");
  m.is_input_.assign(m.symbols_.size(), false);
  for (const auto& tok : raw.input_alphabet) {
    auto it = sym_index.find(tok);
    if (it == sym_index.end())
      throw Error(ErrorCode::AlphabetViolation, "input symbol '" + tok + "' is not a tape symbol");
    if (m.is_input_[it->second]) throw Error(ErrorCode::AlphabetViolation, "input symbol '" + tok + "' listed twice");
    m.is_input_[it->second] = true;
    m.input_.push_back(it->second);
  }
  auto blank = sym_index.find(raw.blank);
  if (blank == sym_index.end()) throw Error(ErrorCode::AlphabetViolation, "blank '" + raw.blank + "' is not a tape symbol");
  if (m.is_input_[blank->second]) throw Error(ErrorCode::AlphabetViolation, "blank '" + raw.blank + "' is an input symbol");
  m.blank_ = blank->second;

  for (const auto* name : {&raw.start, &raw.accept, &raw.reject}) {
    if (!valid_token(*name)) throw Error(ErrorCode::Parse, "bad state name '" + *name + "'");
  }
  if (raw.start == raw.accept || raw.start == raw.reject || raw.accept == raw.reject)
    throw Error(ErrorCode::DistinctnessViolation, "start, accept and reject must be pairwise distinct");

  std::unordered_map<std::string, StateId> state_index;
  auto intern = [&](const std::string& name) -> StateId {
    if (!valid_token(name)) throw Error(ErrorCode::Parse, "bad state name '" + name + "'");
    auto [it, inserted] = state_index.emplace(name, static_cast<StateId>(m.state_names_.size()));
    if (inserted) m.state_names_.push_back(name);
    return it->second;
  };
  intern(raw.start);
  intern(raw.accept);
  intern(raw.reject);
  for (const auto& name : raw.states) intern(name);

  auto symbol = [&](const std::string& tok) -> SymbolId {
    auto it = sym_index.find(tok);
    if (it == sym_index.end()) throw Error(ErrorCode::AlphabetViolation, "symbol '" + tok + "' is not in the tape alphabet");
    return it->second;
  };

  std::set<Rule> seen;
  for (const auto& r : raw.rules) {
    Rule rule{intern(r.from), symbol(r.read), intern(r.to), symbol(r.write), r.move};
    if (m.is_halting(rule.from))
      throw Error(ErrorCode::HaltingStateHasRule, "rule from halting state '" + r.from + "'");
    if (!seen.insert(rule).second)
      throw Error(ErrorCode::DuplicateRule, r.from + " " + r.read + " -> " + r.to + " " + r.write);
    m.rules_.push_back(rule);
  }

  const std::size_t q = m.state_names_.size();
  const std::size_t g = m.symbols_.size();
  m.table_.assign(q * g, {});
  for (RuleIndex i = 0; i < m.rules_.size(); ++i) {
    const Rule& r = m.rules_[i];
    m.table_[r.from * g + r.read].push_back(i);
  }
  for (StateId s = 0; s < q; ++s) {
    if (m.is_halting(s)) continue;
    for (SymbolId a = 0; a < g; ++a) {
      if (m.table_[s * g + a].empty())
        throw Error(ErrorCode::MissingTransition, "(" + m.state_names_[s] + "," + m.symbols_[a] + ")");
    }
  }
  return m;
}

std::size_t Machine::branching() const {
  std::size_t b = 0;
  for (const auto& bucket : table_) b = std::max(b, bucket.size());
  return b;
}

int Machine::find_state(std::string_view name) const {
  for (std::size_t i = 0; i < state_names_.size(); ++i)
    if (state_names_[i] == name) return static_cast<int>(i);
  return -1;
}

int Machine::find_symbol(std::string_view name) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i)
    if (symbols_[i] == name) return static_cast<int>(i);
  return -1;
}

MachineDescription Machine::description() const {
  MachineDescription d;
  for (SymbolId a : input_) d.input_alphabet.push_back(symbols_[a]);
  d.tape_alphabet = symbols_;
  d.blank = symbols_[blank_];
  d.start = state_names_[start()];
  d.accept = state_names_[accept()];
  d.reject = state_names_[reject()];
  d.states = state_names_;
  for (const Rule& r : rules_)
    d.rules.push_back({state_names_[r.from], symbols_[r.read], state_names_[r.to], symbols_[r.write], r.move});
  return d;
}

bool Machine::operator==(const Machine& other) const {
  return state_names_ == other.state_names_ && symbols_ == other.symbols_ && input_ == other.input_ &&
         blank_ == other.blank_ && rules_ == other.rules_;
}

MachineDescription parse_machine_text(std::string_view text) {
  MachineDescription d;
  std::map<std::string, bool> seen_header;
  bool have_magic = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  auto fail = [&](const std::string& msg) {
    Error e(ErrorCode::Parse, "line " + std::to_string(line_no) + ": " + msg);
    e.position = line_no;
    throw e;
  };
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tokens = split_ws(line);
    if (tokens.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (!have_magic) {
      if (tokens.size() != 2 || tokens[0] != "ntm" || tokens[1] != "v1") fail("expected 'ntm v1'");
      have_magic = true;
      continue;
    }
    if (tokens.size() == 6 && tokens[2] == "->") {
      RuleText r{tokens[0], tokens[1], tokens[3], tokens[4], Direction::Right};
      if (tokens[5] == "L") r.move = Direction::Left;
      else if (tokens[5] != "R") fail("direction must be L or R");
      d.rules.push_back(std::move(r));
      continue;
    }
    const std::string& key = tokens[0];
    static const std::set<std::string> headers{"input", "tape", "blank", "start", "accept", "reject"};
    if (!headers.count(key)) fail("unrecognised line starting with '" + key + "'");
    if (seen_header[key]) fail("header '" + key + "' repeated");
    seen_header[key] = true;
    std::vector<std::string> args(tokens.begin() + 1, tokens.end());
    if (key == "input" || key == "tape") {
      if (args.empty()) fail("'" + key + "' needs at least one symbol");
      (key == "input" ? d.input_alphabet : d.tape_alphabet) = args;
    } else {
      if (args.size() != 1) fail("'" + key + "' takes exactly one argument");
      if (key == "blank") d.blank = args[0];
      else if (key == "start") d.start = args[0];
      else if (key == "accept") d.accept = args[0];
      else d.reject = args[0];
    }
    if (end == text.size()) break;
  }
  if (!have_magic) fail("empty machine description");
  for (const char* h : {"input", "tape", "blank", "start", "accept", "reject"}) {
    if (!seen_header[h]) {
      line_no = 0;
      fail(std::string("missing header '") + h + "'");
    }
  }
  return d;
}

std::string format_machine_text(const Machine& m) {
  std::ostringstream out;
  auto d = m.description();
  out << "ntm v1\n";
  out << "input";
  for (const auto& s : d.input_alphabet) out << ' ' << s;
  out << "\ntape";
  for (const auto& s : d.tape_alphabet) out << ' ' << s;
  out << "\nblank " << d.blank << "\nstart " << d.start << "\naccept " << d.accept << "\nreject " << d.reject << '\n';
  for (const auto& r : d.rules)
    out << r.from << ' ' << r.read << " -> " << r.to << ' ' << r.write << ' ' << (r.move == Direction::Left ? 'L' : 'R') << '\n';
  return out.str();
}

Machine machine_from_text(std::string_view text) { return Machine::validate(parse_machine_text(text)); }

Machine load_machine_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return machine_from_text(buf.str());
}

Machine compose(const Machine& m1, const Machine& m2) {
  auto d1 = m1.description();
  auto d2 = m2.description();
  auto as_set = [](const std::vector<std::string>& v) { return std::set<std::string>(v.begin(), v.end()); };
  if (as_set(d1.input_alphabet) != as_set(d2.input_alphabet) || as_set(d1.tape_alphabet) != as_set(d2.tape_alphabet) ||
      d1.blank != d2.blank)
    throw Error(ErrorCode::AlphabetMismatch, "composed machines must share input alphabet, tape alphabet and blank");

  MachineDescription out;
  out.input_alphabet = d1.input_alphabet;
  out.tape_alphabet = d1.tape_alphabet;
  out.blank = d1.blank;
  out.start = "a." + d1.start;
  out.accept = "b." + d2.accept;
  out.reject = "b." + d2.reject;
  for (StateId s = 0; s < m1.state_count(); ++s)
    if (!m1.is_halting(s)) out.states.push_back("a." + m1.state_name(s));
  for (StateId s = 0; s < m2.state_count(); ++s)
    if (!m2.is_halting(s)) out.states.push_back("b." + m2.state_name(s));
  auto rename1 = [&](const std::string& s) {
    if (s == d1.accept) return "b." + d2.start;
    if (s == d1.reject) return "b." + d2.reject;
    return "a." + s;
  };
  for (const auto& r : d1.rules) out.rules.push_back({rename1(r.from), r.read, rename1(r.to), r.write, r.move});
  for (const auto& r : d2.rules) out.rules.push_back({"b." + r.from, r.read, "b." + r.to, r.write, r.move});
  return Machine::validate(out);
}

Word parse_word(const Machine& m, std::string_view text, bool allow_tape_symbols) {
  Word w;
  auto resolve = [&](std::string_view tok) {
    int id = m.find_symbol(tok);
    if (id < 0 || (!allow_tape_symbols && !m.in_input_alphabet(static_cast<SymbolId>(id))))
      throw Error(ErrorCode::SymbolNotInSigma, "symbol '" + std::string(tok) + "' is not allowed here");
    w.push_back(static_cast<SymbolId>(id));
  };
  bool has_space = text.find_first_of(" \t,") != std::string_view::npos;
  if (has_space) {
    std::string cleaned(text);
    std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
    for (const auto& tok : split_ws(cleaned)) resolve(tok);
  } else if (all_single_char(m.symbols())) {
    for (char c : text) resolve(std::string_view(&c, 1));
  } else if (!text.empty()) {
    resolve(text);
  }
  return w;
}

std::string format_word(const Machine& m, std::span<const SymbolId> w) {
  std::string out;
  const bool compact = all_single_char(m.symbols());
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!compact && i > 0) out += ' ';
    out += m.symbol_name(w[i]);
  }
  return out;
}

std::vector<StateId> parse_states(const Machine& m, std::string_view text) {
  std::string cleaned(text);
  for (char& c : cleaned)
    if (c == ',' || c == '(' || c == ')') c = ' ';
  std::vector<StateId> out;
  for (const auto& tok : split_ws(cleaned)) {
    int id = m.find_state(tok);
    if (id < 0) throw Error(ErrorCode::InvalidArgument, "unknown state '" + tok + "'");
    out.push_back(static_cast<StateId>(id));
  }
  return out;
}

std::string format_states(const Machine& m, std::span<const StateId> states) {
  std::string out = "(";
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (i) out += ",";
    out += m.state_name(states[i]);
  }
  return out + ")";
}

}  // namespace tmtime

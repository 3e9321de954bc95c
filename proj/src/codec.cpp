#include "tmtime/codec.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "tmtime/error.hpp"

namespace tmtime::codec {

namespace {

const std::vector<std::string> kTape{"0", "1", "_"};
const std::vector<std::string> kInput{"0", "1"};

[[noreturn]] void malformed(std::size_t pos, const std::string& reason) {
  Error e(ErrorCode::MalformedCode, "at bit " + std::to_string(pos) + ": " + reason);
  e.position = pos;
  throw e;
}

// Maps the machine's symbol ids onto the fixed 0,1,_ order.
std::vector<std::size_t> fixed_symbol_order(const Machine& m) {
  std::set<std::string> tape(m.symbols().begin(), m.symbols().end());
  std::set<std::string> input;
  for (SymbolId a : m.input_alphabet()) input.insert(m.symbol_name(a));
  if (tape != std::set<std::string>(kTape.begin(), kTape.end()) ||
      input != std::set<std::string>(kInput.begin(), kInput.end()) || m.symbol_name(m.blank()) != "_")
    throw Error(ErrorCode::UnsupportedAlphabet, "codes exist only for input {0,1} and tape {0,1,_}");
  std::vector<std::size_t> order;  // order[fixed index] = machine symbol id
  for (const auto& tok : kTape) order.push_back(static_cast<std::size_t>(m.find_symbol(tok)));
  return order;
}

std::size_t padding_for(std::size_t q, std::size_t body_length) {
  const std::size_t q2 = q * q;
  std::size_t m = 1;
  if (m + 1 + body_length < q2) m = q2 - 1 - body_length;
  return std::min(m, std::max<std::size_t>(1, 4 * q2));
}

BitString with_padding(std::size_t q, const BitString& body) {
  BitString out;
  const std::size_t m = padding_for(q, body.size());
  for (std::size_t i = 0; i < m; ++i) out.push(false);
  out.push(true);
  out.append(body);
  return out;
}

class Reader {
 public:
  Reader(const BitString& bits, std::size_t begin, std::size_t end) : bits_(bits), pos_(begin), end_(end) {}

  std::size_t pos() const { return pos_; }
  void seek(std::size_t p) { pos_ = p; }
  bool at_end() const { return pos_ >= end_; }

  bool bit(const char* what) {
    if (pos_ >= end_) malformed(pos_, std::string("truncated ") + what);
    return bits_[pos_++];
  }

  std::size_t unary(const char* what) {
    std::size_t n = 0;
    while (bit(what)) ++n;
    return n;
  }

  void skip_padding() {
    std::size_t zeros = 0;
    while (pos_ < end_ && !bits_[pos_]) {
      ++pos_;
      ++zeros;
    }
    if (zeros == 0) malformed(pos_, "code must start with a padding zero");
    bit("padding terminator");
  }

 private:
  const BitString& bits_;
  std::size_t pos_;
  std::size_t end_;
};

// Reads the state count of the code in [begin, end) without building it.
std::size_t code_state_count(const BitString& bits, std::size_t begin, std::size_t end);

Machine decode_range(const BitString& bits, std::size_t begin, std::size_t end);

Machine decode_array(Reader& in, std::size_t end) {
  const std::size_t q_pos = in.pos();
  const std::size_t q = in.unary("state count");
  if (q < 3) malformed(q_pos, "a machine needs at least 3 states");

  MachineDescription d;
  d.input_alphabet = kInput;
  d.tape_alphabet = kTape;
  d.blank = "_";
  auto name = [](std::size_t i) { return "q" + std::to_string(i); };
  d.start = name(0);
  d.accept = name(1);
  d.reject = name(2);
  for (std::size_t i = 3; i < q; ++i) d.states.push_back(name(i));

  for (std::size_t from = 0; from < q; ++from) {
    for (std::size_t a = 0; a < kTape.size(); ++a) {
      for (std::size_t to = 0; to < q; ++to) {
        for (std::size_t cell = 0; cell < kCellBits; ++cell) {
          const std::size_t at = in.pos();
          if (!in.bit("transition table")) continue;
          if (from == 1 || from == 2) malformed(at, "halting state has an outgoing rule");
          d.rules.push_back({name(from), kTape[a], name(to), kTape[cell / 2],
                             cell % 2 == 0 ? Direction::Left : Direction::Right});
        }
      }
    }
  }
  if (in.pos() != end) malformed(in.pos(), "trailing bits after transition table");
  try {
    return Machine::validate(d);
  } catch (const Error& e) {
    malformed(in.pos(), e.what());
  }
}

Machine decode_tuple(const BitString& bits, Reader& in, std::size_t end) {
  const std::size_t k_pos = in.pos();
  const std::size_t k = in.unary("component count");
  if (k < 2) malformed(k_pos, "a tuple code needs at least two components");
  std::vector<Machine> parts;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t len = in.unary("component length");
    const std::size_t begin = in.pos();
    if (begin + len > end) malformed(begin, "component runs past the end of the code");
    parts.push_back(decode_range(bits, begin, begin + len));
    in.seek(begin + len);
  }
  if (!in.at_end()) malformed(in.pos(), "trailing bits after tuple");
  Machine acc = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) acc = compose(acc, parts[i]);
  return acc;
}

Machine decode_range(const BitString& bits, std::size_t begin, std::size_t end) {
  Reader in(bits, begin, end);
  in.skip_padding();
  const std::size_t tag_pos = in.pos();
  const bool t0 = in.bit("tag");
  const bool t1 = in.bit("tag");
  if (!t0) malformed(tag_pos, "unknown tag");
  if (!t1) return decode_array(in, end);
  return decode_tuple(bits, in, end);
}

std::size_t code_state_count(const BitString& bits, std::size_t begin, std::size_t end) {
  Reader in(bits, begin, end);
  in.skip_padding();
  const std::size_t tag_pos = in.pos();
  const bool t0 = in.bit("tag");
  const bool t1 = in.bit("tag");
  if (!t0) malformed(tag_pos, "unknown tag");
  if (!t1) return in.unary("state count");
  const std::size_t k = in.unary("component count");
  std::size_t total = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t len = in.unary("component length");
    const std::size_t b = in.pos();
    if (b + len > end) malformed(b, "component runs past the end of the code");
    total += code_state_count(bits, b, b + len);
    in.seek(b + len);
  }
  return total - 2 * (k - 1);
}

}  // namespace

BitString::BitString(std::string bits) : bits_(std::move(bits)) {
  for (char c : bits_)
    if (c != '0' && c != '1') throw Error(ErrorCode::InvalidArgument, "bit strings contain only '0' and '1'");
}

void BitString::append_unary(std::size_t n) {
  bits_.append(n, '1');
  bits_.push_back('0');
}

std::size_t array_code_length(std::size_t q) {
  const std::size_t body = 2 + (q + 1) + kCellBits * kTape.size() * q * q;
  return padding_for(q, body) + 1 + body;
}

BitString encode(const Machine& m) {
  const auto order = fixed_symbol_order(m);
  const std::size_t q = m.state_count();
  std::vector<std::size_t> fixed_of(m.symbols().size());
  for (std::size_t i = 0; i < order.size(); ++i) fixed_of[order[i]] = i;

  // present[from][a][to] bitmask over the 6 (b, d) pairs
  std::vector<unsigned> present(q * kTape.size() * q, 0);
  for (const Rule& r : m.rules()) {
    const std::size_t cell = 2 * fixed_of[r.write] + (r.move == Direction::Right ? 1 : 0);
    present[(r.from * kTape.size() + fixed_of[r.read]) * q + r.to] |= 1u << cell;
  }
  BitString body;
  body.push(true);
  body.push(false);
  body.append_unary(q);
  for (unsigned mask : present)
    for (std::size_t cell = 0; cell < kCellBits; ++cell) body.push((mask >> cell) & 1u);
  return with_padding(q, body);
}

std::size_t composition_code_length(const std::vector<BitString>& codes) {
  std::size_t body = 2 + codes.size() + 1;
  for (const auto& c : codes) body += 2 * c.size() + 1;
  std::size_t q = 0;
  for (const auto& c : codes) q += code_state_count(c, 0, c.size());
  q -= 2 * (codes.size() - 1);
  return padding_for(q, body) + 1 + body;
}

BitString encode_composition(const std::vector<BitString>& codes) {
  if (codes.size() < 2) throw Error(ErrorCode::EmptyTuple, "a composition code needs at least two components");
  std::size_t q = 0;
  for (const auto& c : codes) q += code_state_count(c, 0, c.size());
  q -= 2 * (codes.size() - 1);
  BitString body;
  body.push(true);
  body.push(true);
  body.append_unary(codes.size());
  for (const auto& c : codes) {
    body.append_unary(c.size());
    body.append(c);
  }
  return with_padding(q, body);
}

Machine decode(const BitString& bits) { return decode_range(bits, 0, bits.size()); }

bool equivalent(const Machine& a, const Machine& b) {
  if (a.state_count() != b.state_count() || a.symbols().size() != b.symbols().size()) return false;
  std::vector<SymbolId> to_b(a.symbols().size());
  for (SymbolId s = 0; s < a.symbols().size(); ++s) {
    int id = b.find_symbol(a.symbol_name(s));
    if (id < 0) return false;
    to_b[s] = static_cast<SymbolId>(id);
  }
  if (to_b[a.blank()] != b.blank()) return false;
  for (SymbolId s : a.input_alphabet())
    if (!b.in_input_alphabet(to_b[s])) return false;
  if (a.input_alphabet().size() != b.input_alphabet().size()) return false;
  std::set<Rule> ra, rb(b.rules().begin(), b.rules().end());
  for (Rule r : a.rules()) {
    r.read = to_b[r.read];
    r.write = to_b[r.write];
    ra.insert(r);
  }
  return ra == rb;
}

}  // namespace tmtime::codec

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "tmtime/machine.hpp"

namespace tmtime::codec {

// Binary machine codes over the fixed alphabets Σ = {0,1}, Γ = {0,1,_}.
//
// Layout (all codes):   0^m 1 <body>,  m >= 1 minimal so the code has length >= q²
//   array body:  10 1^q 0 <cells>
//                one cell per (q1, a, q2), q1/q2 in canonical state order and
//                a in 0,1,_ order; a cell is 6 presence bits, one per (b, d)
//                in (0,L) (0,R) (1,L) (1,R) (_,L) (_,R) order.
//   tuple body:  11 1^k 0 (1^len 0 <component code>)*k
//
// Canonical state order is start, accept, reject, then the remaining states
// in declaration order, which is the order Machine already uses.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::string bits);  // characters must be '0'/'1'

  std::size_t size() const { return bits_.size(); }
  bool operator[](std::size_t i) const { return bits_[i] == '1'; }
  const std::string& str() const { return bits_; }
  void push(bool bit) { bits_.push_back(bit ? '1' : '0'); }
  void append(const BitString& other) { bits_ += other.bits_; }
  void append_unary(std::size_t n);  // 1^n 0

  bool operator==(const BitString&) const = default;

 private:
  std::string bits_;
};

constexpr std::size_t kCellBits = 6;  // 2|Γ|

BitString encode(const Machine& m);
BitString encode_composition(const std::vector<BitString>& codes);
Machine decode(const BitString& bits);

// Exact lengths of freshly emitted codes.
std::size_t array_code_length(std::size_t q);
std::size_t composition_code_length(const std::vector<BitString>& codes);

// True when the two machines have the same states up to canonical indexing
// and the same rule set.
bool equivalent(const Machine& a, const Machine& b);

}  // namespace tmtime::codec

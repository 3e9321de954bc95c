#include "tmtime/part.hpp"

#include <algorithm>
#include <cstring>
#include <deque>
#include <unordered_map>

#include "tmtime/error.hpp"

namespace tmtime {

namespace {

std::string key_of(const PartConfig& c) {
  std::string k;
  if (c.ending) return k;  // all endings collapse into one sink
  const std::uint32_t header[4] = {c.left_pos, c.right_pos, static_cast<std::uint32_t>(c.head), c.state};
  k.append(reinterpret_cast<const char*>(header), sizeof header);
  for (SymbolId a : c.content) {
    k.push_back(static_cast<char>(a & 0xff));
    k.push_back(static_cast<char>((a >> 8) & 0xff));
  }
  return k;
}

// Dense graph of reachable part configurations; node 0 is the start and the
// sink (ending) node is created on first use.
struct PartGraph {
  struct Edge {
    std::size_t to;
    PartMove move;
  };
  std::vector<PartConfig> nodes;
  std::vector<std::vector<Edge>> out;
  std::optional<std::size_t> sink;
};

PartGraph explore(const Machine& m, const CrossingSequence& crs, const PartConfig& start) {
  PartGraph g;
  std::unordered_map<std::string, std::size_t> index;
  auto intern = [&](const PartConfig& c) -> std::size_t {
    auto [it, inserted] = index.emplace(key_of(c), g.nodes.size());
    if (inserted) {
      if (c.ending) g.sink = g.nodes.size();
      g.nodes.push_back(c);
      g.out.emplace_back();
    }
    return it->second;
  };
  intern(start);
  for (std::size_t v = 0; v < g.nodes.size(); ++v) {
    if (g.nodes[v].ending) continue;
    const PartConfig c = g.nodes[v];
    for (auto& s : part_successors(m, crs, c)) {
      const std::size_t u = intern(s.next);
      g.out[v].push_back({u, s.move});
    }
  }
  return g;
}

}  // namespace

const char* part_move_name(PartMoveKind k) {
  switch (k) {
    case PartMoveKind::Internal: return "internal";
    case PartMoveKind::LeftReenter: return "exit-left-reenter";
    case PartMoveKind::RightReenter: return "exit-right-reenter";
    case PartMoveKind::EndLeft: return "ending-left";
    case PartMoveKind::EndRight: return "ending-right";
  }
  return "?";
}

std::optional<PartMoveKind> part_move_from_name(std::string_view name) {
  for (auto k : {PartMoveKind::Internal, PartMoveKind::LeftReenter, PartMoveKind::RightReenter, PartMoveKind::EndLeft,
                 PartMoveKind::EndRight})
    if (name == part_move_name(k)) return k;
  return std::nullopt;
}

std::string PartTime::str() const {
  switch (kind) {
    case Kind::None: return "-1";
    case Kind::Infinite: return "inf";
    case Kind::Finite: return std::to_string(value);
  }
  return "?";
}

PartConfig part_start(const Word& w, const CrossingSequence& crs) {
  if (w.empty()) throw Error(ErrorCode::EmptyPart, "a part has at least one cell");
  if (crs.empty()) throw Error(ErrorCode::EmptyCrs, "the ending crossing sequence is empty");
  PartConfig c;
  c.left_pos = 1;
  c.right_pos = 0;
  c.content = w;
  c.head = 0;
  c.state = crs[0];
  return c;
}

std::vector<PartSuccessor> part_successors(const Machine& m, const CrossingSequence& crs, const PartConfig& c) {
  std::vector<PartSuccessor> interior, left, right, ending;
  if (c.ending || m.is_halting(c.state)) return interior;
  const auto n = static_cast<std::int64_t>(c.content.size());
  const std::size_t l = crs.size();
  const std::size_t left_rem = l - c.left_pos;
  const std::size_t right_rem = l - c.right_pos;
  const auto rules = m.rules_for(c.state, c.content[static_cast<std::size_t>(c.head)]);

  for (RuleIndex i : rules) {
    const Rule& r = m.rule(i);
    const std::int64_t h = c.head + step_of(r.move);
    PartConfig next = c;
    next.content[static_cast<std::size_t>(c.head)] = r.write;
    if (h >= 0 && h < n) {
      next.head = h;
      next.state = r.to;
      interior.push_back({{PartMoveKind::Internal, i}, std::move(next)});
      continue;
    }
    const bool to_left = h < 0;
    const std::size_t rem = to_left ? left_rem : right_rem;
    const std::uint32_t pos = to_left ? c.left_pos : c.right_pos;
    const std::size_t other_rem = to_left ? right_rem : left_rem;
    if (rem >= 2 && crs[pos] == r.to) {
      next.state = crs[pos + 1];
      (to_left ? next.left_pos : next.right_pos) = pos + 2;
      (to_left ? left : right).push_back({{to_left ? PartMoveKind::LeftReenter : PartMoveKind::RightReenter, i}, next});
    }
    if (rem == 1 && other_rem == 0 && crs[pos] == r.to) {
      PartConfig end = next;
      end.ending = true;
      end.state = r.to;
      (to_left ? end.left_pos : end.right_pos) = pos + 1;
      end.head = to_left ? -1 : n;
      ending.push_back({{to_left ? PartMoveKind::EndLeft : PartMoveKind::EndRight, i}, std::move(end)});
    }
  }
  for (auto* group : {&left, &right, &ending})
    for (auto& s : *group) interior.push_back(std::move(s));
  return interior;
}

PartComputation replay_part(const Machine& m, const Word& part, const CrossingSequence& crs,
                            const std::vector<PartMove>& moves) {
  PartConfig c = part_start(part, crs);
  PartComputation out;
  out.part = part;
  out.crs = crs;
  out.internal_crossings.assign(part.size() - 1, 0);
  for (std::size_t t = 0; t < moves.size(); ++t) {
    if (c.ending)
      throw Error(ErrorCode::InvalidReplay, "part move " + std::to_string(t + 1) + " follows the ending");
    bool matched = false;
    for (auto& s : part_successors(m, crs, c)) {
      if (!(s.move == moves[t])) continue;
      if (s.move.kind == PartMoveKind::Internal) {
        const std::int64_t b = crossed_boundary(c.head, m.rule(s.move.rule).move);
        ++out.internal_crossings[static_cast<std::size_t>(b - 1)];
      }
      c = std::move(s.next);
      matched = true;
      break;
    }
    if (!matched)
      throw Error(ErrorCode::InvalidReplay, "part move " + std::to_string(t + 1) + " (" +
                                                part_move_name(moves[t].kind) + ", rule " +
                                                std::to_string(moves[t].rule) + ") does not apply");
  }
  if (!c.ending) throw Error(ErrorCode::InvalidReplay, "part computation does not reach the ending");
  out.moves = moves;
  out.length = crs.size();
  for (auto x : out.internal_crossings) out.length += x;
  return out;
}

PartTimeResult part_time_search(const Machine& m, const Word& w, const CrossingSequence& crs) {
  PartTimeResult res;
  if (crs.empty()) {
    if (w.empty()) throw Error(ErrorCode::EmptyPart, "a part has at least one cell");
    return res;
  }
  const PartGraph g = explore(m, crs, part_start(w, crs));
  res.configurations = g.nodes.size();
  if (!g.sink) return res;

  // Nodes that can reach the ending.
  const std::size_t n = g.nodes.size();
  std::vector<std::vector<std::size_t>> in(n);
  for (std::size_t v = 0; v < n; ++v)
    for (const auto& e : g.out[v]) in[e.to].push_back(v);
  std::vector<char> useful(n, 0);
  std::vector<std::size_t> queue{*g.sink};
  useful[*g.sink] = 1;
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (std::size_t v : in[queue[i]])
      if (!useful[v]) {
        useful[v] = 1;
        queue.push_back(v);
      }
  if (!useful[0]) return res;

  // Longest path by post-order DFS over useful nodes; a back edge means a
  // cycle on some start-to-ending path.
  enum : char { White, Grey, Black };
  std::vector<char> color(n, White);
  std::vector<std::uint64_t> best(n, 0);
  std::vector<std::size_t> choice(n, SIZE_MAX);
  std::vector<std::pair<std::size_t, std::size_t>> stack{{0, 0}};
  color[0] = Grey;
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    if (next < g.out[v].size()) {
      const std::size_t u = g.out[v][next++].to;
      if (!useful[u]) continue;
      if (color[u] == Grey) {
        res.time = PartTime::infinite();
        return res;
      }
      if (color[u] == White) {
        color[u] = Grey;
        stack.push_back({u, 0});
      }
      continue;
    }
    for (std::size_t j = 0; j < g.out[v].size(); ++j) {
      const std::size_t u = g.out[v][j].to;
      if (!useful[u]) continue;
      if (choice[v] == SIZE_MAX || best[u] + 1 > best[v]) {
        best[v] = best[u] + 1;
        choice[v] = j;
      }
    }
    color[v] = Black;
    stack.pop_back();
  }
  res.time = PartTime::finite(best[0]);

  std::vector<PartMove> moves;
  for (std::size_t v = 0; v != *g.sink;) {
    const auto& e = g.out[v][choice[v]];
    moves.push_back(e.move);
    v = e.to;
  }
  res.longest = replay_part(m, w, crs, moves);
  return res;
}

PartTime part_time(const Machine& m, const Word& w, const CrossingSequence& crs) {
  return part_time_search(m, w, crs).time;
}

namespace {

// Shortest continuation from `from` to the ending, or nullopt. Configurations
// proven unable to reach the ending are remembered in `dead`.
std::optional<std::vector<PartMove>> path_to_ending(const Machine& m, const CrossingSequence& crs,
                                                    const PartConfig& from,
                                                    std::unordered_map<std::string, bool>& dead) {
  if (from.ending) return std::vector<PartMove>{};
  struct Node {
    PartConfig c;
    std::size_t parent;
    PartMove move;
  };
  std::vector<Node> nodes{{from, SIZE_MAX, {}}};
  std::unordered_map<std::string, char> seen{{key_of(from), 1}};
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (dead.count(key_of(nodes[i].c))) continue;
    for (auto& s : part_successors(m, crs, nodes[i].c)) {
      if (s.next.ending) {
        std::vector<PartMove> path{s.move};
        for (std::size_t j = i; nodes[j].parent != SIZE_MAX; j = nodes[j].parent) path.push_back(nodes[j].move);
        std::reverse(path.begin(), path.end());
        return path;
      }
      if (seen.emplace(key_of(s.next), 1).second) nodes.push_back({std::move(s.next), i, s.move});
    }
  }
  for (const auto& node : nodes) dead.emplace(key_of(node.c), true);
  return std::nullopt;
}

}  // namespace

std::optional<PartComputation> part_computation_exceeding(const Machine& m, const Word& w,
                                                          const CrossingSequence& crs, std::uint64_t bound,
                                                          std::size_t* configurations) {
  if (crs.empty()) {
    if (w.empty()) throw Error(ErrorCode::EmptyPart, "a part has at least one cell");
    return std::nullopt;
  }
  const PartConfig start = part_start(w, crs);
  std::unordered_map<std::string, std::uint64_t> deepest;  // deepest depth already explored from
  std::unordered_map<std::string, bool> dead;

  struct Frame {
    PartConfig c;
    std::vector<PartSuccessor> succ;
    std::size_t next = 0;
  };
  std::vector<Frame> stack;
  std::vector<PartMove> path;
  std::optional<PartComputation> found;

  // Returns true when the search can stop.
  auto enter = [&](PartConfig c) -> bool {
    const std::uint64_t depth = path.size();
    if (c.ending) {
      if (depth > bound) {
        found = replay_part(m, w, crs, path);
        return true;
      }
      return false;
    }
    auto [it, inserted] = deepest.emplace(key_of(c), depth);
    if (!inserted) {
      if (it->second >= depth) return false;
      it->second = depth;
    }
    if (depth >= bound) {
      if (auto rest = path_to_ending(m, crs, c, dead)) {
        std::vector<PartMove> moves = path;
        moves.insert(moves.end(), rest->begin(), rest->end());
        found = replay_part(m, w, crs, moves);
        return true;
      }
      return false;
    }
    auto succ = part_successors(m, crs, c);
    stack.push_back({std::move(c), std::move(succ), 0});
    return false;
  };

  bool done = enter(start);
  while (!done && !stack.empty()) {
    Frame& f = stack.back();
    if (f.next == f.succ.size()) {
      stack.pop_back();
      if (!path.empty()) path.pop_back();
      continue;
    }
    PartSuccessor& s = f.succ[f.next++];
    path.push_back(s.move);
    const std::size_t before = stack.size();
    done = enter(std::move(s.next));
    if (!done && stack.size() == before) path.pop_back();
  }
  if (configurations) *configurations = deepest.size();
  return found;
}

bool part_time_exceeds(const Machine& m, const Word& w, const CrossingSequence& crs, std::uint64_t bound) {
  return part_computation_exceeding(m, w, crs, bound).has_value();
}

Splice splice(const Machine& m, const Word& w1, const Word& w, const Word& w2, std::span<const RuleIndex> choices) {
  if (w1.empty()) throw Error(ErrorCode::InvalidArgument, "the left context w1 must be non-empty");
  if (w.empty()) throw Error(ErrorCode::EmptyPart, "a part has at least one cell");
  const auto a = static_cast<std::int64_t>(w1.size());
  const auto b = a + static_cast<std::int64_t>(w.size());
  Word input = w1;
  input.insert(input.end(), w.begin(), w.end());
  input.insert(input.end(), w2.begin(), w2.end());

  struct StepInfo {
    std::int64_t head;
    std::int64_t next_head;
  };
  std::vector<StepInfo> steps;
  CrossingSequence at_a, at_b;
  Configuration c = start_configuration(m, input);
  for (std::size_t t = 0; t < choices.size(); ++t) {
    const Rule& r = m.rule(choices[t]);
    if (r.from != c.state || r.read != c.tape.get(c.head))
      throw Error(ErrorCode::InvalidReplay, "computation does not replay at step " + std::to_string(t + 1));
    const std::int64_t h = c.head;
    const std::int64_t crossed = crossed_boundary(h, r.move);
    apply_rule(m, c, choices[t]);
    if (crossed == a) at_a.push_back(c.state);
    if (crossed == b) at_b.push_back(c.state);
    steps.push_back({h, c.head});
  }
  if (at_a != at_b)
    throw Error(ErrorCode::BoundaryMismatch, "crossing sequences at boundaries " + std::to_string(a) + " and " +
                                                 std::to_string(b) + " differ");

  Splice out;
  out.crs = at_a;

  // Part moves, in order; the last exit from the part is the ending.
  std::vector<PartMove> moves;
  std::size_t last_exit = SIZE_MAX;
  for (std::size_t t = 0; t < steps.size(); ++t) {
    const auto [h, h2] = steps[t];
    if (h < a || h >= b) continue;
    if (h2 >= a && h2 < b) {
      moves.push_back({PartMoveKind::Internal, choices[t]});
    } else {
      last_exit = moves.size();
      moves.push_back({h2 < a ? PartMoveKind::LeftReenter : PartMoveKind::RightReenter, choices[t]});
    }
  }
  if (!out.crs.empty()) {
    if (last_exit == SIZE_MAX || last_exit + 1 != moves.size())
      throw Error(ErrorCode::InvalidReplay, "the head does not end outside the part");
    moves.back().kind = moves.back().kind == PartMoveKind::LeftReenter ? PartMoveKind::EndLeft : PartMoveKind::EndRight;
    out.part = replay_part(m, w, out.crs, moves);
  }

  // Outer steps: left of the part while an even number of crossings of the
  // left boundary happened, right of it while an odd number of crossings of
  // the right boundary happened. Segments are stitched in crossing order.
  std::vector<std::vector<RuleIndex>> segments(out.crs.size() + 1);
  std::size_t seen_a = 0, seen_b = 0;
  for (std::size_t t = 0; t < steps.size(); ++t) {
    const auto [h, h2] = steps[t];
    if (h < a) segments[seen_a].push_back(choices[t]);
    else if (h >= b) segments[seen_b].push_back(choices[t]);
    if (crossed_boundary(h, h2 > h ? Direction::Right : Direction::Left) == a) ++seen_a;
    if (crossed_boundary(h, h2 > h ? Direction::Right : Direction::Left) == b) ++seen_b;
  }
  std::vector<RuleIndex> cut_choices;
  for (const auto& seg : segments) cut_choices.insert(cut_choices.end(), seg.begin(), seg.end());
  Word outer = w1;
  outer.insert(outer.end(), w2.begin(), w2.end());
  out.cut = replay_computation(m, outer, cut_choices);
  return out;
}

CutPasteLengths cut_paste_check(const Machine& m, const Word& w1, const Word& w, const Word& w2,
                                const Computation& comp) {
  Word input = w1;
  input.insert(input.end(), w.begin(), w.end());
  input.insert(input.end(), w2.begin(), w2.end());
  if (input != comp.input) throw Error(ErrorCode::InvalidArgument, "computation input is not w1·w·w2");
  const Splice s = splice(m, w1, w, w2, comp.choices);
  CutPasteLengths out{comp.steps(), s.part ? s.part->length : 0, s.cut.steps()};
  if (out.cut != out.full - out.part)
    throw Error(ErrorCode::PreconditionViolated, "cut computation has " + std::to_string(out.cut) +
                                                     " steps, expected " + std::to_string(out.full - out.part));
  return out;
}

}  // namespace tmtime

#include "popsort/machines.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

#include "popsort/divided.hpp"

namespace popsort {

std::string_view to_string(MachineKind kind) {
  switch (kind) {
    case MachineKind::S: return "s";
    case MachineKind::PS: return "ps";
    case MachineKind::PQS: return "pqs";
    case MachineKind::SP: return "sp";
    case MachineKind::SQP: return "sqp";
    case MachineKind::DI: return "di";
  }
  return "?";
}

std::optional<MachineKind> parse_machine_kind(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (MachineKind kind : kAllMachineKinds) {
    if (to_string(kind) == lower) return kind;
  }
  return std::nullopt;
}

char move_token(Move move) {
  switch (move) {
    case Move::Input: return 'I';
    case Move::FlushPop:
    case Move::FlushOutput: return 'F';
    case Move::PushOne: return 'P';
    case Move::DequeueToStack:
    case Move::DequeueToPop: return 'D';
    case Move::Output: return 'O';
  }
  return '?';
}

std::string format_moves(const MoveSequence& moves) {
  std::string out;
  for (std::size_t i = 0; i < moves.size(); ++i) {
    if (i) out += ',';
    out += move_token(moves[i]);
  }
  return out;
}

MoveSequence parse_moves(MachineKind kind, std::string_view text) {
  const bool pop_last = kind == MachineKind::SP || kind == MachineKind::SQP;
  MoveSequence moves;
  for (char c : text) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) continue;
    switch (std::toupper(static_cast<unsigned char>(c))) {
      case 'I': moves.push_back(Move::Input); break;
      case 'F': moves.push_back(pop_last ? Move::FlushOutput : Move::FlushPop); break;
      case 'P': moves.push_back(Move::PushOne); break;
      case 'D':
        moves.push_back(kind == MachineKind::SQP ? Move::DequeueToPop : Move::DequeueToStack);
        break;
      case 'O': moves.push_back(Move::Output); break;
      default: throw ParseError(std::string("unknown move token '") + c + "'");
    }
  }
  return moves;
}

std::string describe(const MachineState& s) {
  auto seq = [](const MachineState::Seq& q) {
    std::string out = "[";
    for (std::size_t i = 0; i < q.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(q[i]);
    }
    return out + "]";
  };
  return "input_pos=" + std::to_string(s.input_pos) + " pop=" + seq(s.pop) +
         " queue=" + seq(s.queue) + " stack=" + seq(s.stack) +
         " next_needed=" + std::to_string(s.next_needed);
}

Machine::Machine(MachineKind kind, Permutation input) : kind_(kind), input_(std::move(input)) {
  if (input_.size() > kMaxMachineLength) {
    throw std::length_error("machine simulation supports n <= " +
                            std::to_string(kMaxMachineLength));
  }
}

namespace {

// Pop stack read top-to-bottom is next_needed, next_needed+1, ...
bool flushable_to_output(const MachineState& s) {
  if (s.pop.empty()) return false;
  int expected = s.next_needed;
  for (auto it = s.pop.rbegin(); it != s.pop.rend(); ++it, ++expected) {
    if (*it != expected) return false;
  }
  return true;
}

bool stack_top_is_next(const MachineState& s) {
  return !s.stack.empty() && s.stack.back() == s.next_needed;
}

}  // namespace

bool Machine::is_legal(const MachineState& s, Move move) const {
  const bool has_input = s.input_pos < input_.size();
  switch (kind_) {
    case MachineKind::S:
      return (move == Move::Input && has_input) || (move == Move::Output && stack_top_is_next(s));
    case MachineKind::PS:
      return (move == Move::Input && has_input) || (move == Move::FlushPop && !s.pop.empty()) ||
             (move == Move::Output && stack_top_is_next(s));
    case MachineKind::PQS:
      return (move == Move::Input && has_input) || (move == Move::FlushPop && !s.pop.empty()) ||
             (move == Move::DequeueToStack && !s.queue.empty()) ||
             (move == Move::Output && stack_top_is_next(s));
    case MachineKind::SP:
      return (move == Move::Input && has_input) || (move == Move::PushOne && !s.stack.empty()) ||
             (move == Move::FlushOutput && flushable_to_output(s));
    case MachineKind::SQP:
      return (move == Move::Input && has_input) || (move == Move::PushOne && !s.stack.empty()) ||
             (move == Move::DequeueToPop && !s.queue.empty()) ||
             (move == Move::FlushOutput && flushable_to_output(s));
    case MachineKind::DI:
      if (move == Move::Input) {
        return has_input && (s.pop.empty() || input_[s.input_pos] > s.pop.back());
      }
      if (move == Move::PushOne) {
        return !s.pop.empty() && (s.stack.empty() || s.pop.back() < s.stack.back());
      }
      return move == Move::Output && stack_top_is_next(s);
  }
  return false;
}

std::vector<Move> Machine::legal_moves(const MachineState& s) const {
  static constexpr std::array<Move, 7> kOrder = {
      Move::Input,        Move::FlushPop, Move::PushOne,    Move::DequeueToStack,
      Move::DequeueToPop, Move::Output,   Move::FlushOutput};
  std::vector<Move> moves;
  for (Move m : kOrder) {
    if (is_legal(s, m)) moves.push_back(m);
  }
  return moves;
}

MachineState Machine::apply(const MachineState& s, Move move) const {
  if (!is_legal(s, move)) {
    throw IllegalMove(std::string("illegal move ") + move_token(move) + " on " +
                          std::string(to_string(kind_)) + " in state " + describe(s),
                      0);
  }
  MachineState t = s;
  const bool stack_first = kind_ == MachineKind::S || kind_ == MachineKind::SP ||
                           kind_ == MachineKind::SQP;
  switch (move) {
    case Move::Input: {
      const auto v = static_cast<std::uint8_t>(input_[t.input_pos++]);
      (stack_first ? t.stack : t.pop).push_back(v);
      break;
    }
    case Move::FlushPop: {
      auto& dest = kind_ == MachineKind::PQS ? t.queue : t.stack;
      while (!t.pop.empty()) {
        dest.push_back(t.pop.back());
        t.pop.pop_back();
      }
      break;
    }
    case Move::PushOne:
      if (kind_ == MachineKind::DI) {
        t.stack.push_back(t.pop.back());
        t.pop.pop_back();
      } else {
        (kind_ == MachineKind::SQP ? t.queue : t.pop).push_back(t.stack.back());
        t.stack.pop_back();
      }
      break;
    case Move::DequeueToStack:
      t.stack.push_back(t.queue.front());
      t.queue.erase(t.queue.begin());
      break;
    case Move::DequeueToPop:
      t.pop.push_back(t.queue.front());
      t.queue.erase(t.queue.begin());
      break;
    case Move::Output:
      t.stack.pop_back();
      ++t.next_needed;
      break;
    case Move::FlushOutput:
      t.next_needed += static_cast<int>(t.pop.size());
      t.pop.clear();
      break;
  }
  return t;
}

bool Machine::is_consistent(const MachineState& s) const {
  const int n = input_.size();
  if (s.input_pos < 0 || s.input_pos > n || s.next_needed < 1 || s.next_needed > n + 1) {
    return false;
  }
  std::vector<int> seen(n + 1, 0);
  for (int i = s.input_pos; i < n; ++i) ++seen[input_[i]];
  for (const auto* q : {&s.pop, &s.queue, &s.stack}) {
    for (int v : *q) {
      if (v < 1 || v > n) return false;
      ++seen[v];
    }
  }
  for (int v = 1; v < s.next_needed; ++v) ++seen[v];
  if (std::any_of(seen.begin() + 1, seen.end(), [](int c) { return c != 1; })) return false;
  const bool has_queue = kind_ == MachineKind::PQS || kind_ == MachineKind::SQP;
  if (!has_queue && !s.queue.empty()) return false;
  if (kind_ == MachineKind::S && !s.pop.empty()) return false;
  if (kind_ == MachineKind::DI) {
    if (!std::is_sorted(s.pop.begin(), s.pop.end(), std::less<>())) return false;
    if (!std::is_sorted(s.stack.begin(), s.stack.end(), std::greater<>())) return false;
  }
  return true;
}

// On queue machines the final device receives the queue in order, followed
// by the first device read top to bottom (unread input may slip in ahead of
// first-device entries, never ahead of queued ones). With x already in the
// final device or arriving before y, y > x, and some z < x arriving after y,
// x must leave before y arrives but cannot leave before z: a trapped 231.
bool Machine::queue_blocks(const MachineState& s) const {
  const bool pqs = kind_ == MachineKind::PQS;
  const auto& final_device = pqs ? s.stack : s.pop;
  const auto& first_device = pqs ? s.pop : s.stack;

  std::array<int, kMaxMachineLength> arrival{};
  int len = 0;
  for (int v : s.queue) arrival[len++] = v;
  const int queued = len;
  for (auto it = first_device.rbegin(); it != first_device.rend(); ++it) arrival[len++] = *it;
  if (len < 2) return false;

  int input_min = kMaxMachineLength + 1;
  for (int i = s.input_pos; i < input_.size(); ++i) input_min = std::min(input_min, input_[i]);

  int after_min = kMaxMachineLength + 1;
  for (int j = len - 1; j >= 0; --j) {
    if (j == queued - 1) after_min = std::min(after_min, input_min);
    const int y = arrival[j];
    const int lo = after_min;
    if (lo < y) {
      for (int x : final_device) {
        if (x > lo && x < y) return true;
      }
      for (int i = 0; i < j; ++i) {
        if (arrival[i] > lo && arrival[i] < y) return true;
      }
    }
    after_min = std::min(after_min, y);
  }
  return false;
}

bool Machine::is_dead(const MachineState& s) const {
  switch (kind_) {
    case MachineKind::PQS:
      if (queue_blocks(s)) return true;
      [[fallthrough]];
    case MachineKind::S:
    case MachineKind::DI:
      // final stack must read increasing from top to bottom
      return std::adjacent_find(s.stack.begin(), s.stack.end(), std::less<>()) != s.stack.end();
    case MachineKind::PS:
      return std::adjacent_find(s.stack.begin(), s.stack.end(), std::less<>()) != s.stack.end() ||
             std::adjacent_find(s.pop.begin(), s.pop.end(), std::greater<>()) != s.pop.end();
    case MachineKind::SP:
    case MachineKind::SQP:
      // the pop stack empties all at once, so it must hold a consecutive run
      for (std::size_t i = 0; i + 1 < s.pop.size(); ++i) {
        if (s.pop[i] != s.pop[i + 1] + 1) return true;
      }
      return kind_ == MachineKind::SQP && queue_blocks(s);
  }
  return false;
}

namespace {

struct PackedKey {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  friend bool operator==(const PackedKey&, const PackedKey&) = default;
};

struct PackedKeyHash {
  std::size_t operator()(const PackedKey& k) const noexcept {
    return static_cast<std::size_t>(k.lo * 0x9e3779b97f4a7c15ull ^ (k.hi + 0x632be59bd9b4e019ull));
  }
};

// n <= 15: one nibble per value with 0 as the device separator. The output
// is implied by what is still in the input and devices.
struct PackedKeyPolicy {
  using Key = PackedKey;
  using Hash = PackedKeyHash;
  static Key make(const MachineState& s) {
    Key k;
    int shift = 0;
    auto put = [&](unsigned nibble) {
      if (shift < 64) {
        k.lo |= static_cast<std::uint64_t>(nibble) << shift;
      } else {
        k.hi |= static_cast<std::uint64_t>(nibble) << (shift - 64);
      }
      shift += 4;
    };
    put(static_cast<unsigned>(s.input_pos));
    for (auto v : s.pop) put(v);
    put(0);
    for (auto v : s.queue) put(v);
    put(0);
    for (auto v : s.stack) put(v);
    return k;
  }
};

struct StringKeyPolicy {
  using Key = std::string;
  using Hash = std::hash<std::string>;
  static Key make(const MachineState& s) {
    std::string k;
    k.reserve(s.pop.size() + s.queue.size() + s.stack.size() + 3);
    k += static_cast<char>(s.input_pos);
    k.append(s.pop.begin(), s.pop.end());
    k += '\0';
    k.append(s.queue.begin(), s.queue.end());
    k += '\0';
    k.append(s.stack.begin(), s.stack.end());
    return k;
  }
};

template <class KeyPolicy>
class Searcher {
 public:
  Searcher(const Machine& machine, SearchOptions options) : machine_(machine), options_(options) {}

  bool run() { return dfs(machine_.initial_state()); }
  const MoveSequence& path() const { return path_; }

 private:
  bool dfs(const MachineState& s) {
    if (machine_.finished(s)) return true;
    if (!visited_.insert(KeyPolicy::make(s)).second) return false;
    if (options_.prune_dead && machine_.is_dead(s)) return false;
    auto moves = machine_.legal_moves(s);
    if (options_.greedy_output) {
      auto out = std::find_if(moves.begin(), moves.end(), [](Move m) {
        return m == Move::Output || m == Move::FlushOutput;
      });
      if (out != moves.end()) moves = {*out};
    }
    for (Move m : moves) {
      path_.push_back(m);
      if (dfs(machine_.apply(s, m))) return true;
      path_.pop_back();
    }
    return false;
  }

  const Machine& machine_;
  SearchOptions options_;
  std::unordered_set<typename KeyPolicy::Key, typename KeyPolicy::Hash> visited_;
  MoveSequence path_;
};

std::optional<MoveSequence> search(MachineKind kind, const Permutation& p, SearchOptions options) {
  Machine machine(kind, p);
  auto run = [&](auto searcher) -> std::optional<MoveSequence> {
    if (!searcher.run()) return std::nullopt;
    return searcher.path();
  };
  if (p.size() <= 15) return run(Searcher<PackedKeyPolicy>(machine, options));
  return run(Searcher<StringKeyPolicy>(machine, options));
}

}  // namespace

bool is_sortable(MachineKind kind, const Permutation& p, SearchOptions options) {
  return search(kind, p, options).has_value();
}

std::optional<MoveSequence> sorting_witness(MachineKind kind, const Permutation& p,
                                            SearchOptions options) {
  return search(kind, p, options);
}

Permutation replay(MachineKind kind, const Permutation& p, const MoveSequence& moves) {
  Machine machine(kind, p);
  MachineState s = machine.initial_state();
  for (std::size_t i = 0; i < moves.size(); ++i) {
    if (!machine.is_legal(s, moves[i])) {
      throw IllegalMove("step " + std::to_string(i + 1) + ": illegal move " +
                            move_token(moves[i]) + " on " + std::string(to_string(kind)) +
                            " in state " + describe(s),
                        i + 1);
    }
    s = machine.apply(s, moves[i]);
  }
  return Permutation::identity(s.next_needed - 1);
}

const std::vector<Permutation>& ps_basis() {
  static const std::vector<Permutation> basis = {
      Permutation{2, 4, 3, 1}, Permutation{3, 1, 4, 2}, Permutation{3, 2, 4, 1}};
  return basis;
}

bool is_sortable_ps_via_basis(const Permutation& p) { return avoids_all(p, ps_basis()); }

bool is_sortable_via_division(MachineKind kind, const Permutation& p) {
  switch (kind) {
    case MachineKind::PS: return exists_division_avoiding(p, ps_division_patterns()).has_value();
    case MachineKind::PQS: return exists_division_avoiding(p, pqs_division_patterns()).has_value();
    default:
      throw std::invalid_argument("no division criterion for machine " +
                                  std::string(to_string(kind)));
  }
}

}  // namespace popsort

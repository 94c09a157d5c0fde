#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/container/static_vector.hpp>

#include "popsort/permutation.hpp"

namespace popsort {

enum class MachineKind { S, PS, PQS, SP, SQP, DI };

inline constexpr std::array<MachineKind, 6> kAllMachineKinds = {
    MachineKind::S, MachineKind::PS, MachineKind::PQS,
    MachineKind::SP, MachineKind::SQP, MachineKind::DI};

/// Lower-case name: "s", "ps", "pqs", "sp", "sqp", "di".
std::string_view to_string(MachineKind kind);
/// Case-insensitive inverse of to_string.
std::optional<MachineKind> parse_machine_kind(std::string_view name);

enum class Move {
  Input,           // input -> first device
  FlushPop,        // whole pop stack -> successor, top first
  PushOne,         // top of first device -> successor
  DequeueToStack,  // queue front -> stack
  DequeueToPop,    // queue front -> pop stack
  Output,          // stack top -> output
  FlushOutput,     // whole pop stack -> output, top first
};

using MoveSequence = std::vector<Move>;

/// One of I, F, P, D, O.
char move_token(Move move);
/// "I,F,O"
std::string format_moves(const MoveSequence& moves);
/// Token meaning depends on the machine: F is FlushOutput on SP/SQP and D is
/// DequeueToPop on SQP. Throws ParseError on unknown or inapplicable tokens.
MoveSequence parse_moves(MachineKind kind, std::string_view text);

/// Hard limit on permutation length for machine simulation.
inline constexpr int kMaxMachineLength = 30;

/// Devices are stored bottom-to-top (back() is the top); the queue is stored
/// front-to-back. On DI the `pop` field holds the first (decreasing) stack.
struct MachineState {
  using Seq = boost::container::static_vector<std::uint8_t, kMaxMachineLength>;

  int input_pos = 0;
  Seq pop;
  Seq queue;
  Seq stack;
  int next_needed = 1;

  friend bool operator==(const MachineState&, const MachineState&) = default;
};

std::string describe(const MachineState& state);

class IllegalMove : public std::logic_error {
 public:
  IllegalMove(const std::string& what, std::size_t step) : std::logic_error(what), step_(step) {}
  /// 1-based index of the offending move within a replayed sequence (0 when
  /// raised outside replay).
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

/// Operational semantics of one machine kind on a fixed input.
class Machine {
 public:
  Machine(MachineKind kind, Permutation input);

  MachineKind kind() const { return kind_; }
  const Permutation& input() const { return input_; }

  MachineState initial_state() const { return MachineState{}; }
  bool finished(const MachineState& s) const { return s.next_needed > input_.size(); }

  /// Moves applicable in `s`, in a fixed order: Input, then transfers, then
  /// output moves. Output moves only emit next_needed.
  std::vector<Move> legal_moves(const MachineState& s) const;
  bool is_legal(const MachineState& s, Move move) const;

  /// Throws IllegalMove when `move` is not legal in `s`.
  MachineState apply(const MachineState& s, Move move) const;

  /// Values in the devices, the unread input and the output partition 1..n,
  /// no queue on queue-less kinds, monotone stacks on DI.
  bool is_consistent(const MachineState& s) const;

  /// True when no continuation from `s` can sort (an inversion is trapped in
  /// a device that can no longer reorder it).
  bool is_dead(const MachineState& s) const;

 private:
  bool queue_blocks(const MachineState& s) const;

  MachineKind kind_;
  Permutation input_;
};

struct SearchOptions {
  /// Take an output move unconditionally whenever one is legal.
  bool greedy_output = true;
  /// Skip states for which Machine::is_dead holds.
  bool prune_dead = true;

  static SearchOptions unpruned() { return {false, false}; }
};

bool is_sortable(MachineKind kind, const Permutation& p, SearchOptions options = {});

std::optional<MoveSequence> sorting_witness(MachineKind kind, const Permutation& p,
                                            SearchOptions options = {});

/// Runs `moves` from the initial state and returns what was output (a prefix
/// of the identity). Throws IllegalMove carrying the 1-based step index.
Permutation replay(MachineKind kind, const Permutation& p, const MoveSequence& moves);

/// Avoidance of 2431, 3142 and 3241.
bool is_sortable_ps_via_basis(const Permutation& p);

/// Division criterion; only PS and PQS have one.
bool is_sortable_via_division(MachineKind kind, const Permutation& p);

const std::vector<Permutation>& ps_basis();

}  // namespace popsort

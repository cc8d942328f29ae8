#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "vcut/sim.hpp"

namespace vcut {

// Leading 3-bit field of every payload, separating protocol lanes so phases
// can overlap without misreading each other's messages.
enum Channel : std::uint8_t {
  kChElect = 0,
  kChBfs = 1,
  kChTree = 2,
  kChFlow = 3,
  kChData = 4,
};

inline int channel_of(const Payload& p) {
  return static_cast<int>(p.read_bits(0, 3));
}

struct BfsLabel {
  VertexId root = 0;
  VertexId parent = 0;  // self at the root
  int depth = 0;
};

enum class AggregateOp : std::uint8_t { Min, Max, Sum, Count };

// Folding a raw node value vs merging two partial results differ for Count
// (a partial is already a tally).
std::uint64_t fold_aggregate(AggregateOp op, std::uint64_t acc, std::uint64_t value);
std::uint64_t combine_aggregate(AggregateOp op, std::uint64_t a, std::uint64_t b);
std::uint64_t aggregate_identity(AggregateOp op);

// Round budgets asserted by tests. Violations are regressions, not slack to
// bump casually.
inline std::int64_t election_round_budget(std::int64_t diameter) {
  std::int64_t lg = 1;
  while ((std::int64_t{1} << lg) < diameter + 2) ++lg;
  return 8 * diameter + 4 * lg + 16;
}
inline std::int64_t bfs_round_budget(std::int64_t diameter) {
  return 2 * diameter + 6;
}
inline std::int64_t flood_round_budget(std::int64_t diameter) {
  return diameter + 2;
}

// Elects the minimum ID; every node learns it. Runs sub-phases with doubling
// flood radius R = 2^i. In each sub-phase every node announces its best known
// candidate, improvements relay up to R hops, and an echo wave runs over the
// adoption forest: a node that adopted candidate c at tree depth d echoes
// (c, subtree count) at a per-depth deadline, so parents fold children counts
// exactly on time. The candidate's owner declares victory only when its own
// tree echo counts all n nodes, which is impossible unless every node holds
// that candidate; the winner then floods DONE. Terminates once the flood
// radius covers the graph, about 6D + O(log D) rounds plus a D-round DONE
// flood.
class ElectionCore {
 public:
  // id_offset shifts candidate values (not node behavior); the relabeling
  // tests use it to check nothing assumes the winner is literally 0.
  void init(const NodeView& view, std::uint64_t id_offset = 0);

  // Feed one simulation round; inbox must contain only kChElect messages
  // addressed to this node.
  void step(std::int64_t round, std::span<const Received> inbox, Outbox& out);

  bool done() const { return done_; }
  bool won() const { return won_; }
  std::uint64_t leader() const { return leader_; }  // offset-adjusted value
  std::int64_t done_round() const { return done_round_; }
  // Next round this core must act even without messages; kClearAlarm if none.
  std::int64_t next_alarm() const;

 private:
  void seed(std::int64_t round, Outbox& out);
  void send_best(Outbox& out);
  void finish(std::int64_t round, std::uint64_t leader_value, bool relay,
              Outbox& out);

  NodeView view_;
  int cand_width_ = 0;
  int depth_width_ = 0;
  int subphase_ = 0;
  std::int64_t sub_start_ = 1;  // S_i; R = 2^i, echo deadline E_i - depth
  std::uint64_t candidate_ = 0;
  std::int64_t depth_ = 0;
  int parent_port_ = -1;
  std::uint64_t count_acc_ = 0;
  bool echoed_ = false;
  bool done_ = false;
  bool won_ = false;
  std::uint64_t leader_ = 0;
  std::int64_t done_round_ = -1;
};

// Builds a BFS tree by an offer wave (1 hop per round, ties to the lowest
// port), with yes/no replies so every node learns its children, and an echo
// wave carrying the subtree's max depth back up. The root is complete when
// its own echo condition fires, about 2D rounds after the start. Optionally
// piggybacks an aggregate fold on the echo so the root also learns
// op(all node values) at no extra round cost.
class BfsCore {
 public:
  struct Config {
    int instance = 0;  // tag bit so two trees can coexist
    bool aggregate = false;
    AggregateOp op = AggregateOp::Sum;
    int agg_width = 0;
    std::uint64_t agg_value = 0;  // this node's input to the fold
  };

  void init(const NodeView& view, const Config& cfg);
  // Call once on the root to launch the wave (counts as its adoption round).
  void start_root(std::int64_t round, Outbox& out);
  // Feed one round of kChBfs messages with the matching instance bit.
  void step(std::int64_t round, std::span<const Received> inbox, Outbox& out);

  bool joined() const { return joined_; }
  bool is_root() const { return is_root_; }
  int depth() const { return depth_; }
  int parent_port() const { return parent_port_; }
  const std::vector<int>& children() const { return children_; }
  // True once this node's echo is sent (root: the whole tree is built).
  bool complete() const { return complete_; }
  std::int64_t complete_round() const { return complete_round_; }
  int tree_depth() const { return tree_depth_; }  // root, after complete()
  std::uint64_t aggregate() const { return agg_acc_; }

  // Wake needed at offer_round + 2 so nodes whose offers all went to the
  // parent side still tally replies; kClearAlarm once replies are in.
  std::int64_t next_alarm() const;

 private:
  void maybe_echo(std::int64_t round, Outbox& out);
  void send_offers(std::int64_t round, Outbox& out);

  NodeView view_;
  Config cfg_;
  int depth_field_ = 0;
  bool joined_ = false;
  bool is_root_ = false;
  int depth_ = 0;
  int parent_port_ = -1;
  std::int64_t offer_round_ = -1;  // replies are all in at offer_round_ + 2
  bool replies_in_ = false;
  int replies_seen_ = 0;
  std::vector<int> children_;
  int pending_children_ = 0;
  int max_depth_ = 0;
  std::uint64_t agg_acc_ = 0;
  bool complete_ = false;
  std::int64_t complete_round_ = -1;
  int tree_depth_ = -1;
};

// Standalone single-phase programs wrapping the cores (the top-level
// algorithm embeds the cores directly instead).

// Output: leader value, 32 bits.
ProgramFactory make_leader_election_program();

// Output: depth (32) | has_parent flag | parent id (32). Root starts round 1.
ProgramFactory make_bfs_tree_program(VertexId root);

// Builds the tree, then floods the root's value down it.
// Output: value (value_width bits). The root's value comes from the shared
// input "value" (value_width bits).
ProgramFactory make_broadcast_program(VertexId root, int value_width);

// Builds the tree with the fold piggybacked on the echo, then floods the
// result down. Every node outputs op(all inputs), padded to 64 bits (Sum and
// Count results can outgrow value_width). Node inputs come from the shared
// input "values": n fields of value_width bits, indexed by node ID.
ProgramFactory make_converge_program(VertexId root, AggregateOp op,
                                     int value_width);

// Min-label flooding in G minus the excluded set (shared input "excluded",
// n flag bits). Output: participated flag | label (32). Excluded nodes output
// a 0 flag and never forward. Runs n+2 rounds; used for verification only.
ProgramFactory make_component_label_program();

}  // namespace vcut

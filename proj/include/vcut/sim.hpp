#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "vcut/bits.hpp"
#include "vcut/graph.hpp"

namespace vcut {

// Engine-level failures: invalid config, bandwidth violations, sends on
// non-incident ports, deadlocks. Messages name the offending node and round.
struct SimError : std::runtime_error {
  explicit SimError(const std::string& what) : std::runtime_error(what) {}
};

// One received message. port indexes into the receiver's neighbor list, so
// programs can stay ID-oblivious when they want to.
struct Received {
  int port = 0;
  Payload payload;
};

// Everything a node knows before round 1: its own ID, its neighbors' IDs
// (ascending), n, any shared inputs (e.g. the cut budget), and a private
// seed derived from the global seed and the node ID.
struct NodeView {
  VertexId my_id = 0;
  VertexId n = 0;
  std::span<const VertexId> neighbors;
  const std::map<std::string, BitVec>* extra_inputs = nullptr;
  std::uint64_t rng_seed = 0;

  int degree() const { return static_cast<int>(neighbors.size()); }
  // Port of neighbor v, or -1 if v is not adjacent.
  int port_of(VertexId v) const;
};

// Collects a node's sends for the current round. At most one message per
// port; each payload must fit the configured bandwidth.
class Outbox {
 public:
  void send(int port, const Payload& payload);
  int bandwidth_bits() const { return bandwidth_; }

 private:
  friend class Engine;
  void reset(VertexId node, std::span<const VertexId> neighbors,
             std::int64_t round);

  int bandwidth_ = 0;
  VertexId node_ = 0;
  int degree_ = 0;
  std::int64_t round_ = 0;
  const VertexId* nbrs_ = nullptr;  // for error messages naming the edge
  std::vector<Payload> slots_;
  std::vector<std::uint8_t> sent_;
  std::vector<int> touched_;
};

// Scheduling hint returned from step(). EveryRound nodes step each round;
// OnMessage nodes step only when a message arrives or their alarm fires.
// NoChange keeps the previous policy (all nodes start as EveryRound).
enum class Wake : std::uint8_t { NoChange, EveryRound, OnMessage };

// Alarm sentinels for StepResult::wake_at.
inline constexpr std::int64_t kKeepAlarm = -1;
inline constexpr std::int64_t kClearAlarm = -2;

struct StepResult {
  bool halt = false;
  BitVec output;  // final output, read when halt is set
  Wake wake = Wake::NoChange;
  // kKeepAlarm leaves any pending alarm in place, kClearAlarm cancels it,
  // any future round schedules a wakeup at that round. A fired alarm clears
  // itself.
  std::int64_t wake_at = kKeepAlarm;
};

inline StepResult keep_running() { return {}; }
inline StepResult halt_with(BitVec output) {
  StepResult r;
  r.halt = true;
  r.output = std::move(output);
  return r;
}
inline StepResult sleep_for_messages() {
  StepResult r;
  r.wake = Wake::OnMessage;
  return r;
}
inline StepResult sleep_until(std::int64_t round) {
  StepResult r;
  r.wake = Wake::OnMessage;
  r.wake_at = round;
  return r;
}

// Per-node behavior. init() runs before round 1 and must not send; step()
// runs in every round the node is awake for, sees the messages delivered
// this round, and may send through the outbox.
class NodeProgram {
 public:
  virtual ~NodeProgram() = default;
  virtual void init(const NodeView& view) = 0;
  virtual StepResult step(std::int64_t round, std::span<const Received> inbox,
                          Outbox& out) = 0;
};

using ProgramFactory =
    std::function<std::unique_ptr<NodeProgram>(const NodeView&)>;

// Default per-edge bandwidth: ceil(8 * log2(n+1)) bits, i.e. eight ID widths
// worth of room (minus rounding). Exact integer computation.
int default_bandwidth_bits(VertexId n);

struct SimConfig {
  int bandwidth_bits = 0;  // 0 means default_bandwidth_bits(n)
  std::int64_t max_rounds = 0;
  std::uint64_t global_seed = 0;
  bool collect_trace = false;
  std::map<std::string, BitVec> extra_inputs;
};

struct TraceRecord {
  std::int64_t round = 0;
  VertexId sender = 0;
  VertexId receiver = 0;
  Payload payload;
};

// One line per message: "round sender receiver bit_len payload_hex"
// (payload_hex is "-" for zero-length payloads).
std::string dump_trace(const std::vector<TraceRecord>& trace);

// Hash of the empty trace; also the fold seed.
inline constexpr std::uint64_t kTraceHashEmpty = 0x9e3779b97f4a7c15ull;

struct RunMetrics {
  std::int64_t rounds_used = 0;
  std::int64_t total_messages = 0;
  int max_bits_edge_round = 0;
  bool halted_all = false;
  std::uint64_t trace_hash = kTraceHashEmpty;
};

// Synchronous executor. Rounds are numbered from 1; a message sent in round
// r is delivered in round r+1. The graph must outlive the engine. Nodes are
// stepped in ascending ID order, and per-round messages are accounted in
// (sender, port) order, so traces and hashes are canonical no matter how a
// program orders its sends.
class Engine {
 public:
  Engine(const Graph& g, const ProgramFactory& factory, SimConfig cfg);

  // Runs to completion (all nodes halted, max_rounds hit, or SimError).
  // Call once.
  const RunMetrics& run();

  const RunMetrics& metrics() const { return metrics_; }
  const std::vector<BitVec>& outputs() const { return outputs_; }
  const std::vector<TraceRecord>& trace() const { return trace_; }
  NodeProgram& program(VertexId v) { return *programs_.at(v); }
  const NodeView& view(VertexId v) const { return views_.at(v); }
  int bandwidth_bits() const { return bandwidth_; }

 private:
  void flush_outbox();
  void build_step_list(std::int64_t round);
  std::int64_t next_alarm_round();

  const Graph& graph_;
  SimConfig cfg_;
  int bandwidth_ = 0;
  std::vector<NodeView> views_;
  std::vector<std::unique_ptr<NodeProgram>> programs_;
  std::vector<std::vector<int>> rev_port_;

  std::vector<std::vector<Received>> inbox_cur_, inbox_next_;
  std::vector<VertexId> arrivals_cur_, arrivals_next_;
  std::vector<Wake> policy_;
  std::vector<std::int64_t> alarm_;
  // (round, node) pairs; stale entries are skipped against alarm_ on pop
  std::priority_queue<std::pair<std::int64_t, VertexId>,
                      std::vector<std::pair<std::int64_t, VertexId>>,
                      std::greater<>>
      alarm_queue_;
  std::vector<std::uint8_t> halted_;
  std::vector<BitVec> outputs_;
  VertexId alive_ = 0;
  VertexId always_count_ = 0;

  Outbox outbox_;
  std::vector<VertexId> step_list_;
  std::vector<std::uint8_t> in_step_;

  std::uint64_t hash_ = kTraceHashEmpty;
  bool round_hashed_ = false;
  std::vector<TraceRecord> trace_;
  RunMetrics metrics_;
  bool ran_ = false;
};

struct RunResult {
  std::vector<BitVec> outputs;
  RunMetrics metrics;
  std::vector<TraceRecord> trace;
};

RunResult run_sync(const Graph& g, const ProgramFactory& factory,
                   const SimConfig& cfg);

}  // namespace vcut

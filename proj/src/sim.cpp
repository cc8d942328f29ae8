#include "vcut/sim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "vcut/rng.hpp"

namespace vcut {

namespace {

std::string node_round(VertexId node, std::int64_t round) {
  return "node " + std::to_string(node) + " round " + std::to_string(round);
}

}  // namespace

int NodeView::port_of(VertexId v) const {
  auto it = std::lower_bound(neighbors.begin(), neighbors.end(), v);
  if (it == neighbors.end() || *it != v) return -1;
  return static_cast<int>(it - neighbors.begin());
}

int default_bandwidth_bits(VertexId n) {
  if (n < 1) throw SimError("default_bandwidth_bits: n must be positive");
  std::uint64_t x = static_cast<std::uint64_t>(n) + 1;
  if (std::has_single_bit(x)) return 8 * (std::bit_width(x) - 1);
  // For x not a power of two, 8*log2(x) is at least ~1e-8 away from any
  // integer when x <= 2^24+1, far beyond long double error, so the ceiling
  // is exact.
  return static_cast<int>(
      std::ceil(8.0L * std::log2(static_cast<long double>(x))));
}

void Outbox::reset(VertexId node, std::span<const VertexId> neighbors,
                   std::int64_t round) {
  node_ = node;
  degree_ = static_cast<int>(neighbors.size());
  nbrs_ = neighbors.data();
  round_ = round;
}

void Outbox::send(int port, const Payload& payload) {
  if (port < 0 || port >= degree_)
    throw SimError("send on non-incident port " + std::to_string(port) + ": " +
                   node_round(node_, round_) + " has degree " +
                   std::to_string(degree_));
  std::string edge = "edge (" + std::to_string(node_) + "," +
                     std::to_string(nbrs_[port]) + ")";
  if (static_cast<int>(payload.nbits) > bandwidth_)
    throw SimError("bandwidth violation: " + node_round(node_, round_) + " " +
                   edge + ": " + std::to_string(payload.nbits) + " bits > " +
                   std::to_string(bandwidth_));
  if (sent_[port])
    throw SimError("duplicate send: " + node_round(node_, round_) + " " + edge);
  sent_[port] = 1;
  slots_[port] = payload;
  touched_.push_back(port);
}

Engine::Engine(const Graph& g, const ProgramFactory& factory, SimConfig cfg)
    : graph_(g), cfg_(std::move(cfg)) {
  const VertexId n = g.n();
  if (n < 1) throw SimError("cannot simulate an empty graph");
  if (!is_connected(g)) throw SimError("graph is not connected");
  if (cfg_.max_rounds < 1) throw SimError("max_rounds must be >= 1");
  bandwidth_ =
      cfg_.bandwidth_bits > 0 ? cfg_.bandwidth_bits : default_bandwidth_bits(n);
  if (bandwidth_ < id_width(n))
    throw SimError("bandwidth " + std::to_string(bandwidth_) +
                   " bits cannot carry one vertex ID (need " +
                   std::to_string(id_width(n)) + ")");

  rev_port_.resize(n);
  int max_degree = 0;
  for (VertexId v = 0; v < n; ++v) {
    auto nbrs = g.neighbors(v);
    max_degree = std::max(max_degree, static_cast<int>(nbrs.size()));
    rev_port_[v].resize(nbrs.size());
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      auto row = g.neighbors(nbrs[i]);
      auto it = std::lower_bound(row.begin(), row.end(), v);
      rev_port_[v][i] = static_cast<int>(it - row.begin());
    }
  }

  views_.resize(n);
  programs_.reserve(n);
  for (VertexId v = 0; v < n; ++v) {
    views_[v] = NodeView{v, n, g.neighbors(v), &cfg_.extra_inputs,
                         mix64(cfg_.global_seed, static_cast<std::uint64_t>(v))};
    auto p = factory(views_[v]);
    if (!p) throw SimError("program factory returned null for node " +
                           std::to_string(v));
    p->init(views_[v]);
    programs_.push_back(std::move(p));
  }

  inbox_cur_.resize(n);
  inbox_next_.resize(n);
  policy_.assign(n, Wake::EveryRound);
  alarm_.assign(n, -1);
  halted_.assign(n, 0);
  outputs_.resize(n);
  alive_ = n;
  always_count_ = n;
  in_step_.assign(n, 0);

  outbox_.bandwidth_ = bandwidth_;
  outbox_.slots_.resize(max_degree);
  outbox_.sent_.assign(max_degree, 0);
}

void Engine::flush_outbox() {
  Outbox& ob = outbox_;
  if (ob.touched_.empty()) return;
  std::sort(ob.touched_.begin(), ob.touched_.end());
  const VertexId u = ob.node_;
  for (int port : ob.touched_) {
    const Payload& p = ob.slots_[port];
    const VertexId v = ob.nbrs_[port];
    if (!round_hashed_) {
      hash_ = mix64(hash_ ^ static_cast<std::uint64_t>(ob.round_));
      round_hashed_ = true;
    }
    std::uint64_t key =
        (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
        static_cast<std::uint32_t>(v);
    hash_ = mix64(hash_ ^ key);
    hash_ = mix64(hash_ ^ p.w[0]);
    hash_ = mix64(hash_ ^ p.w[1]);
    hash_ = mix64(hash_ ^ p.nbits);
    auto& box = inbox_next_[v];
    if (box.empty()) arrivals_next_.push_back(v);
    box.push_back(Received{rev_port_[u][port], p});
    ++metrics_.total_messages;
    metrics_.max_bits_edge_round =
        std::max(metrics_.max_bits_edge_round, static_cast<int>(p.nbits));
    if (cfg_.collect_trace) trace_.push_back(TraceRecord{ob.round_, u, v, p});
    ob.sent_[port] = 0;
  }
  ob.touched_.clear();
}

void Engine::build_step_list(std::int64_t round) {
  step_list_.clear();
  while (!alarm_queue_.empty() && alarm_queue_.top().first <= round) {
    auto [r, v] = alarm_queue_.top();
    alarm_queue_.pop();
    if (halted_[v] || alarm_[v] != r) continue;  // stale entry
    alarm_[v] = -1;
    if (!in_step_[v]) {
      in_step_[v] = 1;
      step_list_.push_back(v);
    }
  }
  if (always_count_ > 0) {
    for (VertexId v = 0; v < graph_.n(); ++v) {
      if (halted_[v] || in_step_[v]) continue;
      if (policy_[v] == Wake::EveryRound || !inbox_cur_[v].empty()) {
        in_step_[v] = 1;
        step_list_.push_back(v);
      }
    }
  } else {
    for (VertexId v : arrivals_cur_) {
      if (halted_[v] || in_step_[v]) continue;
      in_step_[v] = 1;
      step_list_.push_back(v);
    }
  }
  std::sort(step_list_.begin(), step_list_.end());
  for (VertexId v : step_list_) in_step_[v] = 0;
}

std::int64_t Engine::next_alarm_round() {
  while (!alarm_queue_.empty()) {
    auto [r, v] = alarm_queue_.top();
    if (halted_[v] || alarm_[v] != r) {
      alarm_queue_.pop();
      continue;
    }
    return r;
  }
  return -1;
}

const RunMetrics& Engine::run() {
  if (ran_) throw SimError("Engine::run called twice");
  ran_ = true;
  std::int64_t round = 1;
  std::int64_t last_active = 0;
  bool timeout = false;
  while (alive_ > 0) {
    if (round > cfg_.max_rounds) {
      timeout = true;
      break;
    }
    build_step_list(round);
    if (step_list_.empty()) {
      // Nothing due this round: jump ahead to the next alarm, or fail loudly
      // if no message or alarm can ever wake the remaining nodes.
      std::int64_t next = next_alarm_round();
      if (next < 0)
        throw SimError("deadlock at round " + std::to_string(round) + ": " +
                       std::to_string(alive_) +
                       " nodes running but no message or alarm pending");
      if (next > cfg_.max_rounds) {
        timeout = true;
        break;
      }
      round = next;
      continue;
    }
    round_hashed_ = false;
    for (VertexId v : step_list_) {
      outbox_.reset(v, graph_.neighbors(v), round);
      StepResult res = programs_[v]->step(
          round, std::span<const Received>(inbox_cur_[v]), outbox_);
      flush_outbox();
      if (res.halt) {
        halted_[v] = 1;
        outputs_[v] = std::move(res.output);
        if (policy_[v] == Wake::EveryRound) --always_count_;
        alarm_[v] = -1;
        --alive_;
        continue;
      }
      if (res.wake != Wake::NoChange && res.wake != policy_[v]) {
        if (policy_[v] == Wake::EveryRound)
          --always_count_;
        else
          ++always_count_;
        policy_[v] = res.wake;
      }
      if (res.wake_at == kClearAlarm) {
        alarm_[v] = -1;
      } else if (res.wake_at != kKeepAlarm) {
        if (res.wake_at <= round)
          throw SimError("wake_at " + std::to_string(res.wake_at) +
                         " is not in the future: " + node_round(v, round));
        alarm_[v] = res.wake_at;
        alarm_queue_.push({res.wake_at, v});
      }
    }
    last_active = round;
    for (VertexId v : arrivals_cur_) inbox_cur_[v].clear();
    arrivals_cur_.clear();
    std::swap(inbox_cur_, inbox_next_);
    std::swap(arrivals_cur_, arrivals_next_);
    ++round;
  }
  metrics_.rounds_used = timeout ? cfg_.max_rounds : last_active;
  metrics_.halted_all = alive_ == 0;
  metrics_.trace_hash = hash_;
  return metrics_;
}

std::string dump_trace(const std::vector<TraceRecord>& trace) {
  std::string out;
  for (const TraceRecord& t : trace) {
    out += std::to_string(t.round);
    out += ' ';
    out += std::to_string(t.sender);
    out += ' ';
    out += std::to_string(t.receiver);
    out += ' ';
    out += std::to_string(t.payload.nbits);
    out += ' ';
    std::string hx = t.payload.hex();
    out += hx.empty() ? "-" : hx;
    out += '\n';
  }
  return out;
}

RunResult run_sync(const Graph& g, const ProgramFactory& factory,
                   const SimConfig& cfg) {
  Engine engine(g, factory, cfg);
  engine.run();
  return RunResult{engine.outputs(), engine.metrics(), engine.trace()};
}

}  // namespace vcut

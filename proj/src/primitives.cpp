#include "vcut/primitives.hpp"

#include <algorithm>
#include <limits>
#include <memory>
#include <tuple>
#include <utility>

namespace vcut {

namespace {

// Second field (after channel and, for BFS, the instance bit) of every
// primitive message.
enum ElectTag : std::uint64_t { kElectBest = 0, kElectEcho = 1, kElectDone = 2 };
enum BfsTag : std::uint64_t { kBfsOffer = 0, kBfsNo = 1, kBfsEcho = 2 };

}  // namespace

std::uint64_t aggregate_identity(AggregateOp op) {
  switch (op) {
    case AggregateOp::Min:
      return std::numeric_limits<std::uint64_t>::max();
    case AggregateOp::Max:
    case AggregateOp::Sum:
    case AggregateOp::Count:
      return 0;
  }
  return 0;
}

std::uint64_t fold_aggregate(AggregateOp op, std::uint64_t acc,
                             std::uint64_t value) {
  switch (op) {
    case AggregateOp::Min:
      return std::min(acc, value);
    case AggregateOp::Max:
      return std::max(acc, value);
    case AggregateOp::Sum:
      return acc + value;
    case AggregateOp::Count:
      return acc + 1;
  }
  return acc;
}

std::uint64_t combine_aggregate(AggregateOp op, std::uint64_t a,
                                std::uint64_t b) {
  switch (op) {
    case AggregateOp::Min:
      return std::min(a, b);
    case AggregateOp::Max:
      return std::max(a, b);
    case AggregateOp::Sum:
    case AggregateOp::Count:
      return a + b;
  }
  return a;
}

void ElectionCore::init(const NodeView& view, std::uint64_t id_offset) {
  view_ = view;
  candidate_ = static_cast<std::uint64_t>(view.my_id) + id_offset;
  cand_width_ = id_width(static_cast<std::int64_t>(view.n) - 1 +
                         static_cast<std::int64_t>(id_offset));
  // Depth never exceeds twice the covering radius, which is at most 2(D+1),
  // so id_width(n) + 3 leaves slack even on a path.
  depth_width_ = id_width(view.n) + 3;
}

void ElectionCore::send_best(Outbox& out) {
  Payload p;
  p.append_bits(kChElect, 3);
  p.append_bits(kElectBest, 2);
  p.append_bits(candidate_, cand_width_);
  p.append_bits(static_cast<std::uint64_t>(depth_), depth_width_);
  for (int port = 0; port < view_.degree(); ++port) out.send(port, p);
}

void ElectionCore::seed(std::int64_t /*round*/, Outbox& out) {
  count_acc_ = 0;
  echoed_ = false;
  send_best(out);
}

void ElectionCore::finish(std::int64_t round, std::uint64_t leader_value,
                          bool relay, Outbox& out) {
  done_ = true;
  leader_ = leader_value;
  done_round_ = round;
  if (!relay) return;
  Payload p;
  p.append_bits(kChElect, 3);
  p.append_bits(kElectDone, 2);
  p.append_bits(leader_value, cand_width_);
  for (int port = 0; port < view_.degree(); ++port) out.send(port, p);
}

void ElectionCore::step(std::int64_t round, std::span<const Received> inbox,
                        Outbox& out) {
  if (done_) return;
  if (view_.n == 1) {
    won_ = true;
    finish(round, candidate_, false, out);
    return;
  }

  // A DONE arrival ends the election here; relay it once and stop. This runs
  // before anything else so no other traffic goes out this round.
  for (const Received& m : inbox) {
    BitReader<Payload> r(m.payload);
    r.take(3);
    if (r.take(2) != kElectDone) continue;
    finish(round, r.take(cand_width_), true, out);
    return;
  }

  // Move to the sub-phase whose window contains this round. S_{i+1} follows
  // one round after the previous echo deadline E_i = S_i + 3 * 2^i.
  while (round > sub_start_ + 3 * (std::int64_t{1} << subphase_)) {
    sub_start_ += 3 * (std::int64_t{1} << subphase_) + 1;
    ++subphase_;
  }
  const std::int64_t radius = std::int64_t{1} << subphase_;
  const std::int64_t last_arrival = sub_start_ + radius;
  const std::int64_t echo_base = sub_start_ + 3 * radius;
  const int count_width = id_width(view_.n);

  // Fold child echoes that carry my current candidate. A mismatch means the
  // child queued the echo before hearing something smaller; dropping it only
  // lowers the count, so a winner can never overcount.
  for (const Received& m : inbox) {
    BitReader<Payload> r(m.payload);
    r.take(3);
    if (r.take(2) != kElectEcho) continue;
    const std::uint64_t cand = r.take(cand_width_);
    const std::uint64_t cnt = r.take(count_width);
    if (!echoed_ && cand == candidate_) count_acc_ += cnt;
  }

  // Adopt the smallest announced candidate, breaking ties toward the
  // shallower sender and then the lower port so runs are deterministic.
  // Announcements past the sub-phase flood window are not possible; the
  // round check is belt and braces.
  bool improved = false;
  std::uint64_t best_c = 0;
  std::int64_t best_d = 0;
  int best_port = -1;
  if (round <= last_arrival) {
    for (const Received& m : inbox) {
      BitReader<Payload> r(m.payload);
      r.take(3);
      if (r.take(2) != kElectBest) continue;
      const std::uint64_t c = r.take(cand_width_);
      const std::int64_t d = static_cast<std::int64_t>(r.take(depth_width_));
      bool better;
      if (!improved) {
        better = c < candidate_;
      } else {
        better = std::tie(c, d, m.port) < std::tie(best_c, best_d, best_port);
      }
      if (better) {
        best_c = c;
        best_d = d;
        best_port = m.port;
        improved = true;
      }
    }
  }
  if (improved) {
    candidate_ = best_c;
    depth_ = best_d + 1;
    parent_port_ = best_port;
    // Relay only while the hop can still land inside the flood window.
    if (round < last_arrival) send_best(out);
  }

  if (round == sub_start_) seed(round, out);

  // Per-depth echo deadline: deeper nodes echo earlier, so a child's echo
  // lands exactly on its parent's deadline and counts fold on time.
  if (!echoed_ && round == echo_base - depth_) {
    echoed_ = true;
    const std::uint64_t total = count_acc_ + 1;
    if (parent_port_ >= 0) {
      Payload p;
      p.append_bits(kChElect, 3);
      p.append_bits(kElectEcho, 2);
      p.append_bits(candidate_, cand_width_);
      p.append_bits(total, count_width);
      out.send(parent_port_, p);
    } else if (total == static_cast<std::uint64_t>(view_.n)) {
      // Every node echoed my value through my tree, so every node holds it;
      // in particular no smaller value exists anywhere.
      won_ = true;
      finish(round, candidate_, true, out);
    }
  }
}

std::int64_t ElectionCore::next_alarm() const {
  if (done_) return kClearAlarm;
  const std::int64_t echo_base =
      sub_start_ + 3 * (std::int64_t{1} << subphase_);
  return echoed_ ? echo_base + 1 : echo_base - depth_;
}

void BfsCore::init(const NodeView& view, const Config& cfg) {
  view_ = view;
  cfg_ = cfg;
  depth_field_ = id_width(static_cast<std::int64_t>(view.n) - 1);
  agg_acc_ = fold_aggregate(cfg.op, aggregate_identity(cfg.op), cfg.agg_value);
}

void BfsCore::start_root(std::int64_t round, Outbox& out) {
  joined_ = true;
  is_root_ = true;
  depth_ = 0;
  offer_round_ = round;
  send_offers(round, out);
}

void BfsCore::send_offers(std::int64_t /*round*/, Outbox& out) {
  // One message to every port. The parent's copy carries the to_parent flag
  // and doubles as the yes-reply; everyone else gets a recruiting offer,
  // which an already joined receiver reads as a no.
  for (int port = 0; port < view_.degree(); ++port) {
    Payload p;
    p.append_bits(kChBfs, 3);
    p.append_bits(static_cast<std::uint64_t>(cfg_.instance), 1);
    p.append_bits(kBfsOffer, 2);
    p.append_flag(port == parent_port_);
    p.append_bits(static_cast<std::uint64_t>(depth_), depth_field_);
    out.send(port, p);
  }
}

void BfsCore::maybe_echo(std::int64_t round, Outbox& out) {
  if (complete_ || !replies_in_ || pending_children_ > 0) return;
  complete_ = true;
  complete_round_ = round;
  if (is_root_) {
    tree_depth_ = max_depth_;
    return;
  }
  Payload p;
  p.append_bits(kChBfs, 3);
  p.append_bits(static_cast<std::uint64_t>(cfg_.instance), 1);
  p.append_bits(kBfsEcho, 2);
  p.append_bits(static_cast<std::uint64_t>(max_depth_), depth_field_);
  if (cfg_.aggregate) p.append_bits(agg_acc_, cfg_.agg_width);
  out.send(parent_port_, p);
}

void BfsCore::step(std::int64_t round, std::span<const Received> inbox,
                   Outbox& out) {
  if (!joined_) {
    // All offers arriving together sit at the same distance from the root;
    // the depth comparison matters only as a tie guard.
    int best_depth = -1;
    int best_port = -1;
    for (const Received& m : inbox) {
      BitReader<Payload> r(m.payload);
      r.take(4);
      if (r.take(2) != kBfsOffer) continue;
      r.take_flag();  // to_parent never points at an unjoined node
      const int d = static_cast<int>(r.take(depth_field_));
      if (best_port < 0 || d < best_depth ||
          (d == best_depth && m.port < best_port)) {
        best_depth = d;
        best_port = m.port;
      }
    }
    if (best_port < 0) return;
    joined_ = true;
    depth_ = best_depth + 1;
    max_depth_ = depth_;
    parent_port_ = best_port;
    offer_round_ = round;
    send_offers(round, out);
    return;
  }

  // Two rounds after my offers went out, every offered port has answered:
  // with a to_parent offer (it adopted me), a plain offer (it adopted someone
  // else that round), or an explicit no (it had joined earlier).
  const bool due = round == offer_round_ + 2 && !replies_in_;
  for (const Received& m : inbox) {
    BitReader<Payload> r(m.payload);
    r.take(4);
    const std::uint64_t tag = r.take(2);
    if (tag == kBfsOffer) {
      if (r.take_flag()) {
        if (due) {
          children_.push_back(m.port);
          ++pending_children_;
        }
      } else {
        // Recruiting offer reaching a joined node: decline, timed to land on
        // the sender's own tally round.
        Payload no;
        no.append_bits(kChBfs, 3);
        no.append_bits(static_cast<std::uint64_t>(cfg_.instance), 1);
        no.append_bits(kBfsNo, 2);
        out.send(m.port, no);
      }
    } else if (tag == kBfsEcho) {
      const int md = static_cast<int>(r.take(depth_field_));
      max_depth_ = std::max(max_depth_, md);
      if (cfg_.aggregate)
        agg_acc_ = combine_aggregate(cfg_.op, agg_acc_, r.take(cfg_.agg_width));
      --pending_children_;
    }
  }
  if (due) {
    replies_seen_ = static_cast<int>(inbox.size());
    replies_in_ = true;
  }
  maybe_echo(round, out);
}

std::int64_t BfsCore::next_alarm() const {
  // The tally round needs an alarm: a node whose only neighbor is its parent
  // gets no traffic then. Everything later is message driven.
  if (joined_ && !replies_in_) return offer_round_ + 2;
  return kClearAlarm;
}

namespace {

std::uint64_t shared_input(const NodeView& view, const char* key, int pos,
                           int width, std::uint64_t fallback = 0) {
  if (view.extra_inputs == nullptr) return fallback;
  auto it = view.extra_inputs->find(key);
  if (it == view.extra_inputs->end()) return fallback;
  return it->second.read_bits(static_cast<std::uint32_t>(pos), width);
}

std::vector<Received> take_channel(std::span<const Received> inbox, int ch) {
  std::vector<Received> out;
  for (const Received& m : inbox)
    if (channel_of(m.payload) == ch) out.push_back(m);
  return out;
}

StepResult run_with_alarm(std::int64_t alarm) {
  StepResult r = sleep_for_messages();
  r.wake_at = alarm;
  return r;
}

class ElectionProgram final : public NodeProgram {
 public:
  void init(const NodeView& view) override {
    core_.init(view, shared_input(view, "id_offset", 0, 16));
  }

  StepResult step(std::int64_t round, std::span<const Received> inbox,
                  Outbox& out) override {
    core_.step(round, inbox, out);
    if (core_.done()) {
      BitVec bits;
      bits.append_bits(core_.leader(), 32);
      return halt_with(std::move(bits));
    }
    return run_with_alarm(core_.next_alarm());
  }

 private:
  ElectionCore core_;
};

class BfsTreeProgram final : public NodeProgram {
 public:
  explicit BfsTreeProgram(VertexId root) : root_(root) {}

  void init(const NodeView& view) override {
    view_ = view;
    core_.init(view, BfsCore::Config{});
  }

  StepResult step(std::int64_t round, std::span<const Received> inbox,
                  Outbox& out) override {
    if (round == 1 && view_.my_id == root_) core_.start_root(round, out);
    core_.step(round, inbox, out);
    if (core_.complete()) {
      BitVec bits;
      bits.append_bits(static_cast<std::uint64_t>(core_.depth()), 32);
      const bool has_parent = core_.parent_port() >= 0;
      bits.append_flag(has_parent);
      const VertexId parent =
          has_parent ? view_.neighbors[core_.parent_port()] : view_.my_id;
      bits.append_bits(static_cast<std::uint64_t>(parent), 32);
      return halt_with(std::move(bits));
    }
    return run_with_alarm(core_.next_alarm());
  }

 private:
  VertexId root_;
  NodeView view_;
  BfsCore core_;
};

// Shared by broadcast and converge: build the tree, then push one value down
// it and halt as the value passes through.
class TreeFloodProgram : public NodeProgram {
 public:
  explicit TreeFloodProgram(VertexId root) : root_(root) {}

  void init(const NodeView& view) override {
    view_ = view;
    core_.init(view, tree_config(view));
  }

  StepResult step(std::int64_t round, std::span<const Received> inbox,
                  Outbox& out) override {
    if (round == 1 && view_.my_id == root_) core_.start_root(round, out);
    if (!core_.complete()) core_.step(round, take_channel(inbox, kChBfs), out);

    std::uint64_t value = 0;
    bool have = false;
    if (core_.complete() && view_.my_id == root_) {
      value = root_value();
      have = true;
    } else {
      const auto data = take_channel(inbox, kChData);
      if (!data.empty()) {
        value = data.front().payload.read_bits(3, flood_width());
        have = true;
      }
    }
    if (!have) return run_with_alarm(core_.next_alarm());

    Payload p;
    p.append_bits(kChData, 3);
    p.append_bits(value, flood_width());
    for (int port : core_.children()) out.send(port, p);
    BitVec bits;
    bits.append_bits(value, output_width());
    return halt_with(std::move(bits));
  }

 protected:
  virtual BfsCore::Config tree_config(const NodeView& view) = 0;
  virtual int flood_width() const = 0;
  virtual int output_width() const = 0;
  virtual std::uint64_t root_value() = 0;

  VertexId root_;
  NodeView view_;
  BfsCore core_;
};

class BroadcastProgram final : public TreeFloodProgram {
 public:
  BroadcastProgram(VertexId root, int value_width)
      : TreeFloodProgram(root), value_width_(value_width) {}

 private:
  BfsCore::Config tree_config(const NodeView& view) override {
    if (view.my_id == root_)
      value_ = shared_input(view, "value", 0, value_width_);
    return BfsCore::Config{};
  }
  int flood_width() const override { return value_width_; }
  int output_width() const override { return value_width_; }
  std::uint64_t root_value() override { return value_; }

  int value_width_;
  std::uint64_t value_ = 0;
};

class ConvergeProgram final : public TreeFloodProgram {
 public:
  ConvergeProgram(VertexId root, AggregateOp op, int value_width)
      : TreeFloodProgram(root), op_(op), value_width_(value_width) {}

 private:
  BfsCore::Config tree_config(const NodeView& view) override {
    // Sums and counts need headroom beyond one input's width.
    agg_width_ = value_width_;
    if (op_ == AggregateOp::Sum || op_ == AggregateOp::Count)
      agg_width_ = std::min(64, value_width_ + id_width(view.n));
    BfsCore::Config cfg;
    cfg.aggregate = true;
    cfg.op = op_;
    cfg.agg_width = agg_width_;
    cfg.agg_value =
        shared_input(view, "values", view.my_id * value_width_, value_width_);
    return cfg;
  }
  int flood_width() const override { return agg_width_; }
  int output_width() const override { return 64; }
  std::uint64_t root_value() override { return core_.aggregate(); }

  AggregateOp op_;
  int value_width_;
  int agg_width_ = 0;
};

class ComponentLabelProgram final : public NodeProgram {
 public:
  void init(const NodeView& view) override {
    view_ = view;
    label_width_ = id_width(static_cast<std::int64_t>(view.n) - 1);
    excluded_ = shared_input(view, "excluded", view.my_id, 1) != 0;
    eligible_.resize(view.neighbors.size());
    for (std::size_t i = 0; i < view.neighbors.size(); ++i)
      eligible_[i] = shared_input(view, "excluded", view.neighbors[i], 1) == 0;
    label_ = static_cast<std::uint64_t>(view.my_id);
  }

  StepResult step(std::int64_t round, std::span<const Received> inbox,
                  Outbox& out) override {
    if (excluded_) {
      BitVec bits;
      bits.append_flag(false);
      bits.append_bits(0, 32);
      return halt_with(std::move(bits));
    }
    bool announce = round == 1;
    for (const Received& m : inbox) {
      const std::uint64_t v = m.payload.read_bits(3, label_width_);
      if (v < label_) {
        label_ = v;
        announce = true;
      }
    }
    if (announce) {
      Payload p;
      p.append_bits(kChData, 3);
      p.append_bits(label_, label_width_);
      for (int port = 0; port < view_.degree(); ++port)
        if (eligible_[port]) out.send(port, p);
    }
    // Labels need at most the component's diameter plus one round to settle;
    // n + 2 covers every case and keeps the halt round common to all nodes.
    const std::int64_t halt_round = static_cast<std::int64_t>(view_.n) + 2;
    if (round >= halt_round) {
      BitVec bits;
      bits.append_flag(true);
      bits.append_bits(label_, 32);
      return halt_with(std::move(bits));
    }
    return run_with_alarm(halt_round);
  }

 private:
  NodeView view_;
  int label_width_ = 0;
  bool excluded_ = false;
  std::vector<char> eligible_;
  std::uint64_t label_ = 0;
};

}  // namespace

ProgramFactory make_leader_election_program() {
  return [](const NodeView&) { return std::make_unique<ElectionProgram>(); };
}

ProgramFactory make_bfs_tree_program(VertexId root) {
  return [root](const NodeView&) {
    return std::make_unique<BfsTreeProgram>(root);
  };
}

ProgramFactory make_broadcast_program(VertexId root, int value_width) {
  return [root, value_width](const NodeView&) {
    return std::make_unique<BroadcastProgram>(root, value_width);
  };
}

ProgramFactory make_converge_program(VertexId root, AggregateOp op,
                                     int value_width) {
  return [root, op, value_width](const NodeView&) {
    return std::make_unique<ConvergeProgram>(root, op, value_width);
  };
}

ProgramFactory make_component_label_program() {
  return [](const NodeView&) {
    return std::make_unique<ComponentLabelProgram>();
  };
}

}  // namespace vcut

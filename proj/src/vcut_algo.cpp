#include "vcut/vcut_algo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "vcut/bits.hpp"
#include "vcut/primitives.hpp"
#include "vcut/rng.hpp"

namespace vcut {
namespace {

// All coordination after the tree is built runs over kChTree messages with a
// shared header [channel 3][dir 1][sub 4]. dir 0 flows root -> leaves, dir 1
// leaves -> root. Commands carry a hop countdown so that every node executes
// the command in the same round (issue round + tree depth + 1) regardless of
// its distance from the root.
enum TreeSub : int {
  kCmdPrep = 0,     // [cd][d_tree]  announces tree depth, arms the barrier
  kCmdScan = 1,     // [cd]          min (degree, id) converge
  kCmdTrial = 2,    // [cd][a][b]    reset flow state for pair (a, b)
  kCmdAug = 3,      // [cd][epoch]   start one augmentation wave
  kCmdPoll = 4,     // [cd]          progress snapshot converge
  kCmdCollect = 5,  // [cd]          separator members report upward
  kCmdExtract = 6,  // [cd][u]       u streams its neighbor ids upward
  kCmdGather = 7,   // [cd]          every node streams its owned edges up
  kCmdFinal = 8,    // [tag][count]  verdict flood, count ids follow
  kItemDown = 9,    // [id]          one verdict id, relayed in order
  kReply = 10,      // [slot][value] converge reply to parent
  kItemUp = 11,     // opaque item, relayed verbatim toward the root
  kDoneUp = 12,     // subtree-finished marker (gather)
};

// Converge slots; a slot fixes the value width and fold operation so replies
// from different primitives can never be confused.
enum ConvergeSlot : int {
  kSlotScan = 0,     // min over (degree << w_id) | id
  kSlotAbort = 1,    // OR of "this trial pair is adjacent"
  kSlotPoll = 2,     // [progress sum, capped][b reached][aug done]
  kSlotMinFlag = 3,  // min flagged id, n when unflagged
};

constexpr int kChFlowWave = 0;  // [fwd 1][rev 1] residual arc offers
constexpr int kChFlowBt = 1;    // [side 1] backtrack step, side 1 = out

constexpr int kDataToken = 0;    // [counter]
constexpr int kDataRet = 1;      // [low][counter]
constexpr int kDataVisited = 2;  // [disc]

// Split-vertex parent pointers for the flow wave.
constexpr int kParNone = -3;
constexpr int kParInternal = -2;

constexpr int kSideIn = 0;
constexpr int kSideOut = 1;

std::uint64_t shared_input(const NodeView& view, const char* key, int pos,
                           int width, std::uint64_t fallback) {
  if (view.extra_inputs == nullptr) return fallback;
  auto it = view.extra_inputs->find(key);
  if (it == view.extra_inputs->end()) return fallback;
  return it->second.read_bits(static_cast<std::uint32_t>(pos), width);
}

// ceil(log2(n)) for n >= 2; the polylog unit used by budgets and T.
int ceil_log2(VertexId n) {
  return id_width(std::max<std::int64_t>(n, 2) - 1);
}

struct Cmd {
  int sub = 0;
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  std::int64_t barrier = 0;
};

// Shared skeleton for every distributed cut program: elect a leader, build its
// BFS tree, then run a command/converge protocol over the tree. Subclasses
// drive the protocol through the virtual hooks; the base class owns message
// routing, command barriers, converge folding, item streams, the verdict
// flood, and the one-message-per-edge-per-round port discipline (tree traffic
// claims a port first, everything else defers through pending flags).
class CongestProgram : public NodeProgram {
 public:
  void init(const NodeView& view) final {
    view_ = view;
    n_ = view.n;
    my_id_ = view.my_id;
    w_id_ = id_width(static_cast<std::int64_t>(n_) - 1);
    w_idn_ = id_width(static_cast<std::int64_t>(n_));
    w_cd_ = w_idn_ + 2;
    port_round_.assign(view.neighbors.size(), -1);
    election_.init(view);
    init_program();
  }

  StepResult step(std::int64_t round, std::span<const Received> inbox,
                  Outbox& out) final {
    cur_round_ = round;
    switch (phase_) {
      case Ph::Elect:
        return elect_step(round, inbox, out);
      case Ph::Tree:
        return tree_step(round, inbox, out);
      case Ph::Ready:
        return ready_step(round, inbox, out);
    }
    return keep_running();
  }

 protected:
  enum class Ph { Elect, Tree, Ready };

  virtual void init_program() {}
  // Runs at the Prep barrier, once the whole tree knows d_tree.
  virtual void on_prepared(std::int64_t, Outbox&) {}
  virtual void on_command(const Cmd&, std::int64_t, Outbox&) {}
  // Root only: a converge completed with the folded value.
  virtual void on_converge_done(int, std::uint64_t, std::int64_t, Outbox&) {}
  // Root only: one ItemUp reached the root.
  virtual void on_up_item(const Payload&, std::int64_t, Outbox&) {}
  // Non-tree channels (flow, token walk), delivered before barriers fire so
  // that snapshots taken at a barrier include this round's arrivals.
  virtual void on_messages(const std::vector<Received>&, std::int64_t) {}
  // Per-round tick after streams, before flush; safe place to issue commands.
  virtual void on_round(std::int64_t, Outbox&) {}
  // Deferred non-tree sends; must check port_free per port.
  virtual void flush_sends(std::int64_t, Outbox&) {}
  virtual std::int64_t subclass_alarm(std::int64_t) { return kClearAlarm; }

  bool port_free(int q) const { return port_round_[q] != cur_round_; }
  void claim(int q) { port_round_[q] = cur_round_; }

  int slot_width(int slot) const {
    switch (slot) {
      case kSlotScan:
        return 2 * w_id_;
      case kSlotAbort:
        return 1;
      case kSlotPoll:
        return w_id_ + 4;
      default:
        return w_idn_;
    }
  }

  std::uint64_t slot_identity(int slot) const {
    switch (slot) {
      case kSlotScan:
        return (std::uint64_t{1} << (2 * w_id_)) - 1;
      case kSlotMinFlag:
        return static_cast<std::uint64_t>(n_);
      default:
        return 0;
    }
  }

  std::uint64_t fold_slot(int slot, std::uint64_t acc, std::uint64_t v) const {
    switch (slot) {
      case kSlotScan:
      case kSlotMinFlag:
        return std::min(acc, v);
      case kSlotAbort:
        return acc | v;
      case kSlotPoll: {
        // Progress sums saturate at the field cap; the reached/done bits OR.
        std::uint64_t cap = (std::uint64_t{1} << (w_id_ + 2)) - 1;
        std::uint64_t sum = std::min((acc >> 2) + (v >> 2), cap);
        return (sum << 2) | ((acc | v) & 3);
      }
      default:
        return acc | v;
    }
  }

  Payload build_cmd(int sub, std::int64_t cd, std::uint64_t a,
                    std::uint64_t b) const {
    Payload p;
    p.append_bits(kChTree, 3);
    p.append_bits(0, 1);
    p.append_bits(static_cast<std::uint64_t>(sub), 4);
    p.append_bits(static_cast<std::uint64_t>(cd), w_cd_);
    switch (sub) {
      case kCmdPrep:
        p.append_bits(a, w_cd_);
        break;
      case kCmdTrial:
        p.append_bits(a, w_id_);
        p.append_bits(b, w_id_);
        break;
      case kCmdAug:
        p.append_bits(a, 2);
        break;
      case kCmdExtract:
        p.append_bits(a, w_id_);
        break;
      default:
        break;
    }
    return p;
  }

  void relay_cmd(int sub, std::int64_t cd, std::uint64_t a, std::uint64_t b,
                 Outbox& out) {
    Payload p = build_cmd(sub, cd, a, b);
    for (int q : children_) {
      out.send(q, p);
      claim(q);
    }
  }

  // Root only. Every node, root included, executes the command at the barrier.
  std::int64_t issue_cmd(int sub, std::uint64_t a, std::uint64_t b,
                         std::int64_t round, Outbox& out) {
    std::int64_t barrier = round + d_tree_ + 1;
    pending_.push_back(Cmd{sub, a, b, barrier});
    relay_cmd(sub, d_tree_, a, b, out);
    return barrier;
  }

  // Arms the echo for one converge; the send round is staggered by depth so
  // children replies arrive exactly in the round their parent sends.
  void start_converge(int slot, std::uint64_t value, std::int64_t round) {
    cv_active_ = true;
    cv_slot_ = slot;
    cv_acc_ = fold_slot(slot, slot_identity(slot), value);
    cv_send_ = round + 1 + (d_tree_ - depth_);
  }

  void push_up(const Payload& p) { up_q_.push_back(p); }

  Payload item_up_id(VertexId id) const {
    Payload p;
    p.append_bits(kChTree, 3);
    p.append_bits(1, 1);
    p.append_bits(kItemUp, 4);
    p.append_bits(static_cast<std::uint64_t>(id), w_id_);
    return p;
  }

  // Root only: flood the verdict. The cut ids stream down one per round after
  // the header; every node halts the round its copy completes.
  void send_final(bool found, std::vector<VertexId> ids, std::int64_t round,
                  Outbox& out) {
    (void)round;
    Payload p;
    p.append_bits(kChTree, 3);
    p.append_bits(0, 1);
    p.append_bits(kCmdFinal, 4);
    p.append_flag(found);
    p.append_bits(ids.size(), w_id_);
    for (int q : children_) {
      out.send(q, p);
      claim(q);
    }
    fin_tag_ = found;
    fin_need_ = ids.size();
    fin_ids_ = ids;
    for (VertexId v : ids) down_q_.push_back(v);
    complete_final();
  }

  NodeView view_;
  VertexId n_ = 0;
  VertexId my_id_ = 0;
  int w_id_ = 0;
  int w_idn_ = 0;
  int w_cd_ = 0;
  int kappa_ = 1;

  bool is_leader_ = false;
  VertexId leader_id_ = -1;
  int d_tree_ = 0;
  int depth_ = 0;
  int parent_port_ = -1;
  std::vector<int> children_;
  int done_children_ = 0;
  std::deque<Payload> up_q_;

 private:
  StepResult elect_step(std::int64_t round, std::span<const Received> inbox,
                        Outbox& out) {
    std::vector<Received> em;
    for (const Received& m : inbox)
      if (channel_of(m.payload) == kChElect) em.push_back(m);
    election_.step(round, em, out);
    if (election_.done()) {
      leader_id_ = static_cast<VertexId>(election_.leader());
      is_leader_ = election_.won();
      BfsCore::Config bc;
      bfs_.init(view_, bc);
      phase_ = Ph::Tree;
      // The DONE flood outruns this root's offers by at least one hop, so
      // starting next round can never race a node still electing.
      if (is_leader_) return {false, {}, Wake::OnMessage, round + 1};
      return {false, {}, Wake::OnMessage, kClearAlarm};
    }
    return {false, {}, Wake::OnMessage, election_.next_alarm()};
  }

  StepResult tree_step(std::int64_t round, std::span<const Received> inbox,
                       Outbox& out) {
    std::vector<Received> bm;
    const Received* prep = nullptr;
    for (const Received& m : inbox) {
      int ch = channel_of(m.payload);
      if (ch == kChBfs)
        bm.push_back(m);
      else if (ch == kChTree)
        prep = &m;  // only Prep can arrive in this phase
    }
    if (is_leader_ && !root_started_) {
      root_started_ = true;
      bfs_.start_root(round, out);
      return {false, {}, Wake::OnMessage, bfs_.next_alarm()};
    }
    bfs_.step(round, bm, out);
    if (is_leader_ && bfs_.complete()) {
      d_tree_ = bfs_.tree_depth();
      enter_ready();
      std::int64_t b =
          issue_cmd(kCmdPrep, static_cast<std::uint64_t>(d_tree_), 0, round, out);
      return {false, {}, Wake::OnMessage, b};
    }
    if (prep != nullptr) {
      BitReader<Payload> rd(prep->payload);
      rd.take(3);
      rd.take(1);
      int sub = static_cast<int>(rd.take(4));
      auto cd = static_cast<std::int64_t>(rd.take(w_cd_));
      std::uint64_t dt = rd.take(w_cd_);
      d_tree_ = static_cast<int>(dt);
      enter_ready();
      pending_.push_back(Cmd{sub, dt, 0, round + cd});
      if (cd > 1) relay_cmd(sub, cd - 1, dt, 0, out);
      return {false, {}, Wake::OnMessage, round + cd};
    }
    return {false, {}, Wake::OnMessage, bfs_.next_alarm()};
  }

  void enter_ready() {
    phase_ = Ph::Ready;
    depth_ = is_leader_ ? 0 : bfs_.depth();
    parent_port_ = is_leader_ ? -1 : bfs_.parent_port();
    children_ = bfs_.children();
  }

  StepResult ready_step(std::int64_t round, std::span<const Received> inbox,
                        Outbox& out) {
    std::vector<Received> other;
    for (const Received& m : inbox) {
      int ch = channel_of(m.payload);
      if (ch == kChTree)
        handle_tree(m, round, out);
      else if (ch == kChFlow || ch == kChData)
        other.push_back(m);
    }
    on_messages(other, round);

    // Barriers fire after message processing so command handlers see a state
    // that includes everything delivered this round.
    for (std::size_t i = 0; i < pending_.size();) {
      if (pending_[i].barrier == round) {
        Cmd c = pending_[i];
        pending_.erase(pending_.begin() + static_cast<std::ptrdiff_t>(i));
        if (c.sub == kCmdPrep)
          on_prepared(round, out);
        else
          on_command(c, round, out);
      } else {
        ++i;
      }
    }

    if (cv_active_ && round == cv_send_) {
      cv_active_ = false;
      if (depth_ == 0) {
        on_converge_done(cv_slot_, cv_acc_, round, out);
      } else {
        Payload p;
        p.append_bits(kChTree, 3);
        p.append_bits(1, 1);
        p.append_bits(kReply, 4);
        p.append_bits(static_cast<std::uint64_t>(cv_slot_), 2);
        p.append_bits(cv_acc_, slot_width(cv_slot_));
        out.send(parent_port_, p);
        claim(parent_port_);
      }
    }

    if (!up_q_.empty() && parent_port_ >= 0 && port_free(parent_port_)) {
      out.send(parent_port_, up_q_.front());
      claim(parent_port_);
      up_q_.pop_front();
    }
    if (!down_q_.empty()) {
      bool free = true;
      for (int q : children_) free = free && port_free(q);
      if (free) {
        Payload p;
        p.append_bits(kChTree, 3);
        p.append_bits(0, 1);
        p.append_bits(kItemDown, 4);
        p.append_bits(static_cast<std::uint64_t>(down_q_.front()), w_id_);
        down_q_.pop_front();
        for (int q : children_) {
          out.send(q, p);
          claim(q);
        }
      }
    }

    on_round(round, out);
    flush_sends(round, out);

    if (want_halt_ && down_q_.empty()) return halt_with(final_bits_);

    std::int64_t alarm = kClearAlarm;
    auto want = [&](std::int64_t r) {
      if (r > round && (alarm == kClearAlarm || r < alarm)) alarm = r;
    };
    for (const Cmd& c : pending_) want(c.barrier);
    if (cv_active_) want(cv_send_);
    if (!up_q_.empty() || !down_q_.empty()) want(round + 1);
    std::int64_t sa = subclass_alarm(round);
    if (sa != kClearAlarm) want(sa);
    return {false, {}, Wake::OnMessage, alarm};
  }

  void handle_tree(const Received& m, std::int64_t round, Outbox& out) {
    BitReader<Payload> rd(m.payload);
    rd.take(3);
    int dir = static_cast<int>(rd.take(1));
    int sub = static_cast<int>(rd.take(4));
    if (dir == 0) {
      if (sub == kCmdFinal) {
        bool tag = rd.take_flag();
        std::uint64_t count = rd.take(w_id_);
        for (int q : children_) {
          out.send(q, m.payload);
          claim(q);
        }
        fin_tag_ = tag;
        fin_need_ = static_cast<std::size_t>(count);
        fin_ids_.clear();
        if (fin_need_ == 0) complete_final();
        return;
      }
      if (sub == kItemDown) {
        auto id = static_cast<VertexId>(rd.take(w_id_));
        for (int q : children_) {
          out.send(q, m.payload);
          claim(q);
        }
        fin_ids_.push_back(id);
        if (fin_ids_.size() == fin_need_) complete_final();
        return;
      }
      auto cd = static_cast<std::int64_t>(rd.take(w_cd_));
      std::uint64_t a = 0;
      std::uint64_t b = 0;
      switch (sub) {
        case kCmdPrep:
          a = rd.take(w_cd_);
          break;
        case kCmdTrial:
          a = rd.take(w_id_);
          b = rd.take(w_id_);
          break;
        case kCmdAug:
          a = rd.take(2);
          break;
        case kCmdExtract:
          a = rd.take(w_id_);
          break;
        default:
          break;
      }
      pending_.push_back(Cmd{sub, a, b, round + cd});
      if (cd > 1) relay_cmd(sub, cd - 1, a, b, out);
      return;
    }
    if (sub == kReply) {
      int slot = static_cast<int>(rd.take(2));
      std::uint64_t v = rd.take(slot_width(slot));
      if (cv_active_ && slot == cv_slot_) cv_acc_ = fold_slot(slot, cv_acc_, v);
      return;
    }
    if (sub == kItemUp) {
      if (depth_ == 0)
        on_up_item(m.payload, round, out);
      else
        up_q_.push_back(m.payload);
      return;
    }
    if (sub == kDoneUp) ++done_children_;
  }

  void complete_final() {
    BitVec v;
    v.append_flag(fin_tag_);
    v.append_bits(static_cast<std::uint64_t>(kappa_), 16);
    for (VertexId id : fin_ids_)
      v.append_bits(static_cast<std::uint64_t>(id), w_idn_);
    final_bits_ = v;
    want_halt_ = true;
  }

  Ph phase_ = Ph::Elect;
  ElectionCore election_;
  BfsCore bfs_;
  bool root_started_ = false;

  std::vector<Cmd> pending_;
  bool cv_active_ = false;
  int cv_slot_ = 0;
  std::uint64_t cv_acc_ = 0;
  std::int64_t cv_send_ = -1;

  std::deque<VertexId> down_q_;
  bool fin_active_ = false;
  bool fin_tag_ = false;
  std::size_t fin_need_ = 0;
  std::vector<VertexId> fin_ids_;
  BitVec final_bits_;
  bool want_halt_ = false;

  std::vector<std::int64_t> port_round_;
  std::int64_t cur_round_ = -1;
};

// Searches for a vertex cut of size <= kappa. After the degree scan rules the
// singleton-neighborhood cuts in or out, the leader samples vertex pairs and
// runs a capped Ford-Fulkerson on the vertex-split graph for each: one
// augmentation per epoch, a reactive residual wave moving one hop per round,
// and a backtrack walk that flips flow along the found path. If some epoch
// settles (a full poll window with zero progress) before reaching b with at
// most kappa units routed, the in-reached/not-out-reached nodes are exactly a
// minimum a-b separator and stream their ids to the leader.
class FindCutProgram final : public CongestProgram {
 protected:
  void init_program() override {
    kappa_ = static_cast<int>(shared_input(view_, "kappa", 0, 16, 1));
    whp_c_ = static_cast<int>(shared_input(view_, "whp_c", 0, 8, 1));
    trials_total_ = 2 * whp_c_ * ceil_log2(n_) + 8;
    int deg = view_.degree();
    pend_fwd_.assign(deg, 0);
    pend_rev_.assign(deg, 0);
    rng_ = std::make_unique<Rng>(view_.rng_seed);
  }

  void on_prepared(std::int64_t round, Outbox& out) override {
    poll_gap_ = 2 * d_tree_ + 4;
    if (!is_leader_) return;
    lst_ = L::Scan;
    issue_cmd(kCmdScan, 0, 0, round, out);
  }

  void on_command(const Cmd& c, std::int64_t round, Outbox& out) override {
    switch (c.sub) {
      case kCmdScan: {
        std::uint64_t v =
            (static_cast<std::uint64_t>(view_.degree()) << w_id_) |
            static_cast<std::uint64_t>(my_id_);
        start_converge(kSlotScan, v, round);
        break;
      }
      case kCmdTrial: {
        reset_trial(static_cast<VertexId>(c.a), static_cast<VertexId>(c.b));
        bool adjacent =
            (fl_is_a_ && view_.port_of(fl_b_) >= 0) ||
            (fl_is_b_ && view_.port_of(fl_a_) >= 0);
        start_converge(kSlotAbort, adjacent ? 1 : 0, round);
        break;
      }
      case kCmdAug:
        arm_epoch(static_cast<int>(c.a));
        break;
      case kCmdPoll: {
        std::uint64_t cap = (std::uint64_t{1} << (w_id_ + 2)) - 1;
        std::uint64_t prog = progress_;
        if (pend_count_ > 0 || pend_bt_port_ >= 0) ++prog;
        std::uint64_t v = (std::min(prog, cap) << 2) |
                          (reached_b_ ? 2u : 0u) | (aug_done_ ? 1u : 0u);
        start_converge(kSlotPoll, v, round);
        progress_ = 0;
        break;
      }
      case kCmdCollect:
        if (fl_active_ && !fl_is_a_ && !fl_is_b_ && reach_in_ && !reach_out_) {
          if (is_leader_)
            take_item(my_id_, round, out);
          else
            push_up(item_up_id(my_id_));
        }
        break;
      case kCmdExtract:
        if (my_id_ == static_cast<VertexId>(c.a))
          for (VertexId v : view_.neighbors) push_up(item_up_id(v));
        break;
      default:
        break;
    }
  }

  void on_converge_done(int slot, std::uint64_t acc, std::int64_t round,
                        Outbox& out) override {
    switch (slot) {
      case kSlotScan: {
        std::uint64_t deg = acc >> w_id_;
        auto u = static_cast<VertexId>(acc & ((std::uint64_t{1} << w_id_) - 1));
        if (deg <= static_cast<std::uint64_t>(kappa_)) {
          // A minimum-degree vertex with deg <= kappa: its neighborhood
          // isolates it (n >= deg + 2 since kappa <= n - 2).
          if (u == my_id_) {
            std::vector<VertexId> ids(view_.neighbors.begin(),
                                      view_.neighbors.end());
            finalize_found(std::move(ids), round, out);
          } else {
            need_ = static_cast<int>(deg);
            got_.clear();
            lst_ = L::Extract;
            issue_cmd(kCmdExtract, static_cast<std::uint64_t>(u), 0, round, out);
          }
        } else {
          trial_ = 0;
          draws_ = 0;
          start_trial(round, out);
        }
        break;
      }
      case kSlotAbort:
        if (acc != 0) {
          if (draws_ >= 4) {
            ++trial_;
            draws_ = 0;
            start_trial(round, out);
          } else {
            draw_and_issue(round, out);
          }
        } else {
          flow_f_ = 0;
          begin_aug(round, out);
        }
        break;
      case kSlotPoll: {
        bool done = (acc & 1) != 0;
        bool reached = (acc & 2) != 0;
        std::uint64_t prog = acc >> 2;
        if (done) {
          ++flow_f_;
          if (flow_f_ > kappa_) {
            ++trial_;
            draws_ = 0;
            start_trial(round, out);
          } else {
            begin_aug(round, out);
          }
        } else if (prog == 0 && !reached && flow_f_ >= 1) {
          // Settled without reaching b: current flow is maximum and equals
          // the separator size.
          need_ = flow_f_;
          got_.clear();
          lst_ = L::Collect;
          issue_cmd(kCmdCollect, 0, 0, round, out);
        } else if (prog == 0) {
          // Settled in a state the protocol cannot certify; burn the trial
          // rather than risk an unsound verdict. Not expected to happen.
          ++trial_;
          draws_ = 0;
          start_trial(round, out);
        }
        break;
      }
      default:
        break;
    }
  }

  void on_up_item(const Payload& p, std::int64_t round, Outbox& out) override {
    if (lst_ != L::Extract && lst_ != L::Collect) return;
    BitReader<Payload> rd(p);
    rd.take(8);
    take_item(static_cast<VertexId>(rd.take(w_id_)), round, out);
  }

  void on_messages(const std::vector<Received>& ms,
                   std::int64_t round) override {
    (void)round;
    for (const Received& m : ms) {
      BitReader<Payload> rd(m.payload);
      if (static_cast<int>(rd.take(3)) != kChFlow) continue;
      int kind = static_cast<int>(rd.take(1));
      int epoch = static_cast<int>(rd.take(2));
      if (!fl_active_ || epoch != fl_epoch_) continue;
      if (kind == kChFlowWave) {
        bool fwd = rd.take_flag();
        bool rev = rd.take_flag();
        if (fwd) offer_fwd(m.port);
        if (rev) offer_rev(m.port);
      } else {
        int side = static_cast<int>(rd.take(1));
        handle_bt(side, m.port);
      }
    }
  }

  void on_round(std::int64_t round, Outbox& out) override {
    if (is_leader_ && lst_ == L::Augment && round == next_poll_) {
      issue_cmd(kCmdPoll, 0, 0, round, out);
      next_poll_ += poll_gap_;
    }
  }

  void flush_sends(std::int64_t round, Outbox& out) override {
    (void)round;
    if (!fl_active_) return;
    if (pend_bt_port_ >= 0 && port_free(pend_bt_port_)) {
      Payload p;
      p.append_bits(kChFlow, 3);
      p.append_bits(kChFlowBt, 1);
      p.append_bits(static_cast<std::uint64_t>(fl_epoch_), 2);
      p.append_bits(static_cast<std::uint64_t>(pend_bt_side_), 1);
      out.send(pend_bt_port_, p);
      claim(pend_bt_port_);
      pend_bt_port_ = -1;
    }
    if (pend_count_ == 0) return;
    for (int q = 0; q < view_.degree() && pend_count_ > 0; ++q) {
      if (!pend_fwd_[q] && !pend_rev_[q]) continue;
      if (!port_free(q)) continue;
      Payload p;
      p.append_bits(kChFlow, 3);
      p.append_bits(kChFlowWave, 1);
      p.append_bits(static_cast<std::uint64_t>(fl_epoch_), 2);
      p.append_flag(pend_fwd_[q] != 0);
      p.append_flag(pend_rev_[q] != 0);
      out.send(q, p);
      claim(q);
      if (pend_fwd_[q]) --pend_count_;
      if (pend_rev_[q]) --pend_count_;
      pend_fwd_[q] = 0;
      pend_rev_[q] = 0;
    }
  }

  std::int64_t subclass_alarm(std::int64_t round) override {
    std::int64_t a = kClearAlarm;
    if (is_leader_ && lst_ == L::Augment) a = next_poll_;
    if (fl_active_ && (pend_count_ > 0 || pend_bt_port_ >= 0)) {
      std::int64_t r = round + 1;
      if (a == kClearAlarm || r < a) a = r;
    }
    return a;
  }

 private:
  enum class L { Idle, Scan, Extract, AbortWait, Augment, Collect, Final };

  void set_fwd(int q) {
    if (pend_fwd_[q]) return;
    pend_fwd_[q] = 1;
    ++pend_count_;
  }
  void set_rev(int q) {
    if (pend_rev_[q]) return;
    pend_rev_[q] = 1;
    ++pend_count_;
  }

  void reset_trial(VertexId a, VertexId b) {
    fl_active_ = true;
    fl_a_ = a;
    fl_b_ = b;
    fl_is_a_ = my_id_ == a;
    fl_is_b_ = my_id_ == b;
    fl_epoch_ = -1;  // waves stay dead until the first Aug arms an epoch
    flow_prev_ = -1;
    flow_next_ = -1;
    carrying_ = false;
    a_next_.clear();
    clear_epoch_state();
  }

  void clear_epoch_state() {
    reach_in_ = false;
    reach_out_ = false;
    par_in_ = kParNone;
    par_out_ = kParNone;
    reached_b_ = false;
    bt_started_ = false;
    aug_done_ = false;
    progress_ = 0;
    pend_bt_port_ = -1;
    pend_count_ = 0;
    std::fill(pend_fwd_.begin(), pend_fwd_.end(), 0);
    std::fill(pend_rev_.begin(), pend_rev_.end(), 0);
  }

  void arm_epoch(int epoch) {
    clear_epoch_state();
    fl_epoch_ = epoch;
    if (!fl_is_a_) return;
    // The source seeds forward offers everywhere flow is not already routed.
    for (int q = 0; q < view_.degree(); ++q)
      if (std::find(a_next_.begin(), a_next_.end(), q) == a_next_.end())
        set_fwd(q);
  }

  // A forward offer reaches this node's in-side.
  void offer_fwd(int p) {
    if (fl_is_a_) return;
    if (fl_is_b_) {
      if (reached_b_) return;
      reached_b_ = true;
      ++progress_;
      if (!bt_started_) {
        // The sink starts the backtrack immediately; the augmenting path's
        // last arc is sender_out -> b.
        bt_started_ = true;
        pend_bt_port_ = p;
        pend_bt_side_ = kSideOut;
      }
      return;
    }
    gain_in(p);
  }

  // A reverse offer (sender in-reached, flow sender -> me cancelled) reaches
  // this node's out-side. Only valid across the arc carrying our flow.
  void offer_rev(int p) {
    if (fl_is_a_ || fl_is_b_) return;
    if (flow_next_ == p) gain_out(p);
  }

  void gain_in(int par) {
    if (reach_in_) return;
    reach_in_ = true;
    par_in_ = par;
    ++progress_;
    if (!carrying_) {
      gain_out(kParInternal);
    } else if (flow_prev_ >= 0) {
      set_rev(flow_prev_);
    }
  }

  void gain_out(int par) {
    if (reach_out_) return;
    reach_out_ = true;
    par_out_ = par;
    ++progress_;
    for (int q = 0; q < view_.degree(); ++q)
      if (q != flow_next_) set_fwd(q);
    if (carrying_ && !reach_in_) gain_in(kParInternal);
  }

  void handle_bt(int side, int q) {
    ++progress_;
    if (side == kSideOut) {
      if (fl_is_a_) {
        a_next_.push_back(q);
        aug_done_ = true;
        return;
      }
      flow_next_ = q;  // new flow me -> sender
      bt_walk(kSideOut);
    } else {
      if (fl_is_a_) return;
      if (flow_prev_ == q) flow_prev_ = -1;  // flow sender -> me cancelled
      bt_walk(kSideIn);
    }
  }

  // Walk the local parent chain backward, flipping flow along the augmenting
  // path, until the walk leaves over an edge arc.
  void bt_walk(int side) {
    for (;;) {
      int par = side == kSideOut ? par_out_ : par_in_;
      if (par == kParInternal) {
        carrying_ = side == kSideOut;
        side = side == kSideOut ? kSideIn : kSideOut;
        continue;
      }
      if (par < 0) return;  // corrupt walk; drop rather than loop
      if (side == kSideOut) {
        // Reverse edge arc: our flow toward par is cancelled.
        if (flow_next_ == par) flow_next_ = -1;
        pend_bt_port_ = par;
        pend_bt_side_ = kSideIn;
      } else {
        // Forward edge arc: new flow par -> me.
        flow_prev_ = par;
        pend_bt_port_ = par;
        pend_bt_side_ = kSideOut;
      }
      return;
    }
  }

  // Leader side.
  void start_trial(std::int64_t round, Outbox& out) {
    if (trial_ >= trials_total_) {
      finalize_none(round, out);
      return;
    }
    draw_and_issue(round, out);
  }

  void draw_and_issue(std::int64_t round, Outbox& out) {
    ++draws_;
    auto a = static_cast<VertexId>(rng_->below(static_cast<std::uint64_t>(n_)));
    auto b =
        static_cast<VertexId>(rng_->below(static_cast<std::uint64_t>(n_) - 1));
    if (b >= a) ++b;
    cur_a_ = a;
    cur_b_ = b;
    lst_ = L::AbortWait;
    issue_cmd(kCmdTrial, static_cast<std::uint64_t>(a),
              static_cast<std::uint64_t>(b), round, out);
  }

  void begin_aug(std::int64_t round, Outbox& out) {
    ++aug_ctr_;
    lst_ = L::Augment;
    issue_cmd(kCmdAug, aug_ctr_ & 3, 0, round, out);
    next_poll_ = round + poll_gap_;
  }

  void take_item(VertexId id, std::int64_t round, Outbox& out) {
    got_.push_back(id);
    if (static_cast<int>(got_.size()) == need_)
      finalize_found(std::move(got_), round, out);
  }

  void finalize_found(std::vector<VertexId> ids, std::int64_t round,
                      Outbox& out) {
    std::sort(ids.begin(), ids.end());
    lst_ = L::Final;
    send_final(true, std::move(ids), round, out);
  }

  void finalize_none(std::int64_t round, Outbox& out) {
    lst_ = L::Final;
    send_final(false, {}, round, out);
  }

  int whp_c_ = 1;
  int trials_total_ = 0;
  std::unique_ptr<Rng> rng_;

  // Flow state, one trial at a time.
  bool fl_active_ = false;
  VertexId fl_a_ = -1;
  VertexId fl_b_ = -1;
  bool fl_is_a_ = false;
  bool fl_is_b_ = false;
  int fl_epoch_ = -1;
  bool reach_in_ = false;
  bool reach_out_ = false;
  int par_in_ = kParNone;
  int par_out_ = kParNone;
  int flow_prev_ = -1;
  int flow_next_ = -1;
  bool carrying_ = false;
  std::vector<int> a_next_;
  bool reached_b_ = false;
  bool bt_started_ = false;
  bool aug_done_ = false;
  std::uint64_t progress_ = 0;
  std::vector<std::uint8_t> pend_fwd_;
  std::vector<std::uint8_t> pend_rev_;
  int pend_count_ = 0;
  int pend_bt_port_ = -1;
  int pend_bt_side_ = kSideIn;

  // Leader bookkeeping.
  L lst_ = L::Idle;
  int trial_ = 0;
  int draws_ = 0;
  VertexId cur_a_ = -1;
  VertexId cur_b_ = -1;
  int flow_f_ = 0;
  std::uint64_t aug_ctr_ = 0;
  std::int64_t next_poll_ = -1;
  std::int64_t poll_gap_ = 0;
  int need_ = 0;
  std::vector<VertexId> got_;
};

// Exact articulation-point detection by a token walk: the elected root runs a
// depth-first traversal in which the token moves one hop per round, every
// newly visited node announces itself to its other neighbors in the same
// round, and returns carry (low, counter) back. Because announcements always
// land before the token can revisit, the walk never wastes a probe on a
// visited neighbor, so the whole traversal takes one round per tree edge
// direction, about 2n rounds. Token-walk trees have no cross edges, which is
// what makes the classic low/disc test exact here.
class KappaOneProgram final : public CongestProgram {
 protected:
  void init_program() override {
    kappa_ = 1;
    int deg = view_.degree();
    nbr_seen_.assign(deg, 0);
    nbr_disc_.assign(deg, -1);
    ann_pend_.assign(deg, 0);
  }

  void on_prepared(std::int64_t round, Outbox& out) override {
    (void)out;
    if (!is_leader_) return;
    visit(0, -1);
    advance(round);
  }

  void on_messages(const std::vector<Received>& ms,
                   std::int64_t round) override {
    // Fold announcements first so the token holder's next-port scan sees
    // every visit that happened through this round.
    for (const Received& m : ms) {
      BitReader<Payload> rd(m.payload);
      if (static_cast<int>(rd.take(3)) != kChData) continue;
      if (static_cast<int>(rd.take(2)) != kDataVisited) continue;
      auto disc = static_cast<std::int64_t>(rd.take(w_id_));
      nbr_seen_[m.port] = 1;
      nbr_disc_[m.port] = disc;
      if (visited_ && m.port != par_port_)
        low_ = std::min(low_, disc);
    }
    for (const Received& m : ms) {
      BitReader<Payload> rd(m.payload);
      if (static_cast<int>(rd.take(3)) != kChData) continue;
      int kind = static_cast<int>(rd.take(2));
      if (kind == kDataToken) {
        auto counter = static_cast<std::int64_t>(rd.take(w_idn_));
        if (!visited_) {
          visit(counter, m.port);
          advance(round);
        }
      } else if (kind == kDataRet) {
        auto low = static_cast<std::int64_t>(rd.take(w_id_));
        auto counter = static_cast<std::int64_t>(rd.take(w_idn_));
        counter_next_ = counter;
        low_ = std::min(low_, low);
        ++dfs_children_;
        if (par_port_ >= 0 && low >= disc_) flag_ = true;
        advance(round);
      }
    }
  }

  void on_command(const Cmd& c, std::int64_t round, Outbox& out) override {
    (void)out;
    if (c.sub != kCmdScan) return;
    std::uint64_t v = flag_ ? static_cast<std::uint64_t>(my_id_)
                            : static_cast<std::uint64_t>(n_);
    start_converge(kSlotMinFlag, v, round);
  }

  void on_converge_done(int slot, std::uint64_t acc, std::int64_t round,
                        Outbox& out) override {
    if (slot != kSlotMinFlag) return;
    if (acc < static_cast<std::uint64_t>(n_)) {
      std::vector<VertexId> ids{static_cast<VertexId>(acc)};
      send_final(true, std::move(ids), round, out);
    } else {
      send_final(false, {}, round, out);
    }
  }

  void on_round(std::int64_t round, Outbox& out) override {
    if (is_leader_ && root_finished_ && !scan_issued_) {
      scan_issued_ = true;
      issue_cmd(kCmdScan, 0, 0, round, out);
    }
  }

  void flush_sends(std::int64_t round, Outbox& out) override {
    (void)round;
    for (int q = 0; q < view_.degree(); ++q) {
      if (!ann_pend_[q] || !port_free(q)) continue;
      Payload p;
      p.append_bits(kChData, 3);
      p.append_bits(kDataVisited, 2);
      p.append_bits(static_cast<std::uint64_t>(disc_), w_id_);
      out.send(q, p);
      claim(q);
      ann_pend_[q] = 0;
    }
    if (pend_token_port_ >= 0 && port_free(pend_token_port_)) {
      Payload p;
      p.append_bits(kChData, 3);
      p.append_bits(kDataToken, 2);
      p.append_bits(static_cast<std::uint64_t>(pend_token_counter_), w_idn_);
      out.send(pend_token_port_, p);
      claim(pend_token_port_);
      pend_token_port_ = -1;
    }
    if (pend_ret_ && port_free(par_port_)) {
      Payload p;
      p.append_bits(kChData, 3);
      p.append_bits(kDataRet, 2);
      p.append_bits(static_cast<std::uint64_t>(pend_ret_low_), w_id_);
      p.append_bits(static_cast<std::uint64_t>(pend_ret_counter_), w_idn_);
      out.send(par_port_, p);
      claim(par_port_);
      pend_ret_ = false;
    }
  }

  std::int64_t subclass_alarm(std::int64_t round) override {
    bool pend = pend_token_port_ >= 0 || pend_ret_ ||
                std::find(ann_pend_.begin(), ann_pend_.end(), 1) !=
                    ann_pend_.end();
    return pend ? round + 1 : kClearAlarm;
  }

 private:
  void visit(std::int64_t counter, int from_port) {
    visited_ = true;
    disc_ = counter;
    counter_next_ = counter + 1;
    par_port_ = from_port;
    low_ = disc_;
    if (par_port_ >= 0) nbr_seen_[par_port_] = 1;  // it sent us the token
    for (int q = 0; q < view_.degree(); ++q) {
      if (q == par_port_) continue;  // the parent learns from our RET
      if (nbr_disc_[q] >= 0) low_ = std::min(low_, nbr_disc_[q]);
      ann_pend_[q] = 1;
    }
  }

  void advance(std::int64_t round) {
    (void)round;
    while (probe_ < view_.degree() && nbr_seen_[probe_]) ++probe_;
    if (probe_ < view_.degree()) {
      int q = probe_;
      nbr_seen_[q] = 1;  // our token is about to visit it
      ann_pend_[q] = 0;  // the token itself announces us
      pend_token_port_ = q;
      pend_token_counter_ = counter_next_;
      return;
    }
    if (par_port_ >= 0) {
      pend_ret_ = true;
      pend_ret_low_ = low_;
      pend_ret_counter_ = counter_next_;
    } else {
      flag_ = dfs_children_ >= 2;
      root_finished_ = true;
    }
  }

  bool visited_ = false;
  std::int64_t disc_ = 0;
  std::int64_t low_ = 0;
  std::int64_t counter_next_ = 0;
  int par_port_ = -1;
  int probe_ = 0;
  int dfs_children_ = 0;
  bool flag_ = false;
  bool root_finished_ = false;
  bool scan_issued_ = false;
  std::vector<std::uint8_t> nbr_seen_;
  std::vector<std::int64_t> nbr_disc_;
  std::vector<std::uint8_t> ann_pend_;

  int pend_token_port_ = -1;
  std::int64_t pend_token_counter_ = 0;
  bool pend_ret_ = false;
  std::int64_t pend_ret_low_ = 0;
  std::int64_t pend_ret_counter_ = 0;
};

// Reference protocol: every node streams its owned edges (the ones where it is
// the smaller endpoint) up the tree, the leader rebuilds the graph and runs
// the sequential oracle. Linear in m, so it sidesteps every sublinear
// technique; useful as a distributed ground truth.
class BaselineGatherProgram final : public CongestProgram {
 protected:
  void init_program() override {
    kappa_ = static_cast<int>(shared_input(view_, "kappa", 0, 16, 1));
  }

  void on_prepared(std::int64_t round, Outbox& out) override {
    if (is_leader_) issue_cmd(kCmdGather, 0, 0, round, out);
  }

  void on_command(const Cmd& c, std::int64_t round, Outbox& out) override {
    (void)round;
    (void)out;
    if (c.sub != kCmdGather) return;
    armed_ = true;
    for (VertexId v : view_.neighbors) {
      if (my_id_ >= v) continue;
      if (is_leader_) {
        edges_.emplace_back(my_id_, v);
      } else {
        Payload p;
        p.append_bits(kChTree, 3);
        p.append_bits(1, 1);
        p.append_bits(kItemUp, 4);
        p.append_bits(static_cast<std::uint64_t>(my_id_), w_id_);
        p.append_bits(static_cast<std::uint64_t>(v), w_id_);
        push_up(p);
      }
    }
  }

  void on_up_item(const Payload& p, std::int64_t round, Outbox& out) override {
    (void)round;
    (void)out;
    BitReader<Payload> rd(p);
    rd.take(8);
    auto u = static_cast<VertexId>(rd.take(w_id_));
    auto v = static_cast<VertexId>(rd.take(w_id_));
    edges_.emplace_back(u, v);
  }

  void on_round(std::int64_t round, Outbox& out) override {
    if (!armed_) return;
    if (is_leader_) {
      if (computed_ || done_children_ != static_cast<int>(children_.size()))
        return;
      computed_ = true;
      Graph g = Graph::from_edges(n_, std::move(edges_));
      CutResult r = has_cut_at_most(g, kappa_);
      std::vector<VertexId> ids = r.cut;
      std::sort(ids.begin(), ids.end());
      send_final(r.has_cut, std::move(ids), round, out);
      return;
    }
    // A subtree is done once its own edges and every child's stream have been
    // flushed; the marker shares the parent port with items, so it naturally
    // waits for a round with nothing left to send.
    if (done_sent_ || !up_q_.empty()) return;
    if (done_children_ != static_cast<int>(children_.size())) return;
    if (!port_free(parent_port_)) return;
    Payload p;
    p.append_bits(kChTree, 3);
    p.append_bits(1, 1);
    p.append_bits(kDoneUp, 4);
    out.send(parent_port_, p);
    claim(parent_port_);
    done_sent_ = true;
  }

  std::int64_t subclass_alarm(std::int64_t round) override {
    if (!armed_ || is_leader_ || done_sent_) return kClearAlarm;
    if (up_q_.empty() && done_children_ == static_cast<int>(children_.size()))
      return round + 1;
    return kClearAlarm;
  }

 private:
  bool armed_ = false;
  bool done_sent_ = false;
  bool computed_ = false;
  std::vector<std::pair<VertexId, VertexId>> edges_;
};

void validate_instance(const Graph& g, int kappa, const char* who) {
  if (g.n() < 3)
    throw GraphError(std::string(who) + ": need at least 3 vertices");
  if (kappa < 1 || kappa > g.n() - 2)
    throw GraphError(std::string(who) + ": kappa must be in [1, n-2]");
  if (!is_connected(g))
    throw GraphError(std::string(who) + ": graph must be connected");
}

BitVec encode_u16(std::uint64_t v) {
  BitVec b;
  b.append_bits(v, 16);
  return b;
}

FindReport run_and_decode(const Graph& g, const ProgramFactory& factory,
                          SimConfig cfg, int kappa, const char* who) {
  RunResult rr = run_sync(g, factory, cfg);
  FindReport rep;
  rep.metrics = rr.metrics;
  rep.result.kappa = kappa;
  if (!rr.metrics.halted_all) {
    rep.outcome = RunOutcome::kTimeout;
    return rep;
  }
  for (const BitVec& o : rr.outputs)
    if (!(o == rr.outputs[0]))
      throw GraphError(std::string(who) + ": nodes disagree on the verdict");
  rep.verdict_bits = rr.outputs[0];
  rep.result = decode_verdict(rep.verdict_bits, g.n());
  rep.outcome =
      rep.result.has_cut ? RunOutcome::kCutFound : RunOutcome::kNoCutWithin;
  return rep;
}

}  // namespace

const char* to_string(RunOutcome o) {
  switch (o) {
    case RunOutcome::kNoCutWithin:
      return "no_cut_within";
    case RunOutcome::kCutFound:
      return "cut_found";
    case RunOutcome::kTimeout:
      return "timeout";
  }
  return "unknown";
}

BitVec encode_verdict(const CutResult& r, VertexId n) {
  int w = id_width(static_cast<std::int64_t>(n));
  BitVec b;
  b.append_flag(r.has_cut);
  b.append_bits(static_cast<std::uint64_t>(r.kappa), 16);
  if (r.has_cut)
    for (VertexId v : r.cut) {
      if (v < 0 || v >= n)
        throw GraphError("encode_verdict: cut vertex out of range");
      b.append_bits(static_cast<std::uint64_t>(v), w);
    }
  return b;
}

CutResult decode_verdict(const BitVec& bits, VertexId n) {
  int w = id_width(static_cast<std::int64_t>(n));
  if (bits.size_bits() < 17) throw GraphError("decode_verdict: truncated");
  BitReader<BitVec> rd(bits);
  CutResult r;
  r.has_cut = rd.take_flag();
  r.kappa = static_cast<int>(rd.take(16));
  std::uint32_t rest = bits.size_bits() - 17;
  if (rest % static_cast<std::uint32_t>(w) != 0)
    throw GraphError("decode_verdict: malformed id list");
  for (std::uint32_t i = 0; i < rest / static_cast<std::uint32_t>(w); ++i)
    r.cut.push_back(static_cast<VertexId>(rd.take(w)));
  if (!r.has_cut && !r.cut.empty())
    throw GraphError("decode_verdict: ids on a negative verdict");
  return r;
}

std::int64_t PhasePlan::total() const {
  std::int64_t t = 0;
  for (const PhaseBudget& p : phases) t += p.rounds;
  return t;
}

PhasePlan make_phase_plan(VertexId n, int diameter, int kappa, int whp_c) {
  std::int64_t d = diameter;
  std::int64_t lg = ceil_log2(n);
  std::int64_t trials = 2 * whp_c * lg + 8;
  std::int64_t per_epoch = 4 * static_cast<std::int64_t>(n) + 6 * d + 40;
  PhasePlan plan;
  plan.phases.push_back({"elect", election_round_budget(d)});
  plan.phases.push_back({"tree", bfs_round_budget(d)});
  plan.phases.push_back({"scan", 4 * (2 * d + 8)});
  plan.phases.push_back(
      {"trials", trials * (4 * (2 * d + 8) + (kappa + 2) * per_epoch)});
  plan.phases.push_back({"final", d + kappa + 16});
  return plan;
}

double envelope_denominator(VertexId n, int diameter, int kappa) {
  double lg = ceil_log2(n);
  double k = kappa;
  return k * k * k * (diameter + std::sqrt(static_cast<double>(n))) * lg * lg *
         lg;
}

std::int64_t default_max_rounds(VertexId n, int diameter, int kappa,
                                int whp_c) {
  return make_phase_plan(n, diameter, kappa, whp_c).total();
}

ProgramFactory make_find_cut_program() {
  return [](const NodeView&) { return std::make_unique<FindCutProgram>(); };
}

ProgramFactory make_kappa_one_program() {
  return [](const NodeView&) { return std::make_unique<KappaOneProgram>(); };
}

ProgramFactory make_baseline_gather_program() {
  return [](const NodeView&) {
    return std::make_unique<BaselineGatherProgram>();
  };
}

FindReport find_vertex_cut(const Graph& g, int kappa, SimConfig cfg,
                           FindOptions opt) {
  validate_instance(g, kappa, "find_vertex_cut");
  if (opt.whp_c < 1)
    throw GraphError("find_vertex_cut: whp_c must be at least 1");
  GraphStats st = stats(g);
  cfg.extra_inputs["kappa"] = encode_u16(static_cast<std::uint64_t>(kappa));
  cfg.extra_inputs["whp_c"] = BitVec{};
  cfg.extra_inputs["whp_c"].append_bits(static_cast<std::uint64_t>(opt.whp_c),
                                        8);
  if (cfg.max_rounds == 0)
    cfg.max_rounds = default_max_rounds(g.n(), st.diameter, kappa, opt.whp_c);
  return run_and_decode(g, make_find_cut_program(), std::move(cfg), kappa,
                        "find_vertex_cut");
}

std::int64_t kappa_one_max_rounds(VertexId n, int diameter) {
  std::int64_t lg = ceil_log2(n);
  return 48 * static_cast<std::int64_t>(diameter) * lg * lg;
}

std::int64_t baseline_max_rounds(VertexId /*n*/, std::int64_t m, int diameter,
                                 int kappa) {
  std::int64_t d = diameter;
  return election_round_budget(d) + bfs_round_budget(d) + (2 * d + 8) +
         (m + 4 * d + 64) + (d + kappa + 16);
}

FindReport kappa_one_cut(const Graph& g, SimConfig cfg) {
  validate_instance(g, 1, "kappa_one_cut");
  GraphStats st = stats(g);
  if (cfg.max_rounds == 0) {
    cfg.max_rounds = kappa_one_max_rounds(g.n(), st.diameter);
  }
  return run_and_decode(g, make_kappa_one_program(), std::move(cfg), 1,
                        "kappa_one_cut");
}

FindReport find_cut_baseline_gather(const Graph& g, int kappa, SimConfig cfg) {
  validate_instance(g, kappa, "find_cut_baseline_gather");
  GraphStats st = stats(g);
  cfg.extra_inputs["kappa"] = encode_u16(static_cast<std::uint64_t>(kappa));
  if (cfg.max_rounds == 0) {
    cfg.max_rounds = baseline_max_rounds(g.n(), st.m, st.diameter, kappa);
  }
  return run_and_decode(g, make_baseline_gather_program(), std::move(cfg),
                        kappa, "find_cut_baseline_gather");
}

VerifiedReport run_with_verification(const Graph& g, int kappa,
                                     const std::vector<std::uint64_t>& seeds,
                                     SimConfig cfg, FindOptions opt) {
  validate_instance(g, kappa, "run_with_verification");
  VerifiedReport vr;
  vr.oracle = has_cut_at_most(g, kappa);
  vr.all_cuts_verified = true;
  for (std::uint64_t seed : seeds) {
    SimConfig c = cfg;
    c.global_seed = seed;
    FindReport r = find_vertex_cut(g, kappa, std::move(c), opt);
    SeedRun sr;
    sr.seed = seed;
    sr.outcome = r.outcome;
    sr.result = r.result;
    sr.rounds_used = r.metrics.rounds_used;
    if (r.outcome == RunOutcome::kCutFound) {
      sr.cut_verified = static_cast<int>(r.result.cut.size()) <= kappa &&
                        verify_cut(g, r.result.cut);
      sr.matches_oracle = sr.cut_verified && vr.oracle.has_cut;
      if (!sr.cut_verified) {
        ++vr.false_positives;
        vr.all_cuts_verified = false;
      }
    } else if (r.outcome == RunOutcome::kNoCutWithin) {
      sr.matches_oracle = !vr.oracle.has_cut;
      if (vr.oracle.has_cut) ++vr.false_negatives;
    } else {
      ++vr.timeouts;
    }
    if (vr.runs.empty()) {
      vr.rounds_min = sr.rounds_used;
      vr.rounds_max = sr.rounds_used;
    } else {
      vr.rounds_min = std::min(vr.rounds_min, sr.rounds_used);
      vr.rounds_max = std::max(vr.rounds_max, sr.rounds_used);
    }
    vr.runs.push_back(std::move(sr));
  }
  if (!vr.runs.empty()) {
    double sum = 0;
    for (const SeedRun& sr : vr.runs)
      sum += static_cast<double>(sr.rounds_used);
    vr.rounds_mean = sum / static_cast<double>(vr.runs.size());
  }
  return vr;
}

}  // namespace vcut

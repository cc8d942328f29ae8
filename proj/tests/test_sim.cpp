#include <algorithm>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "doctest.h"
#include "vcut/generate.hpp"
#include "vcut/rng.hpp"
#include "vcut/sim.hpp"

using namespace vcut;

namespace {

// Adapter for quick one-off programs. The function is copied per node, so
// mutable captures give each node private state.
struct FnProgram : NodeProgram {
  using Fn = std::function<StepResult(const NodeView&, std::int64_t,
                                      std::span<const Received>, Outbox&)>;
  explicit FnProgram(Fn fn) : fn_(std::move(fn)) {}
  void init(const NodeView& view) override { view_ = view; }
  StepResult step(std::int64_t round, std::span<const Received> inbox,
                  Outbox& out) override {
    return fn_(view_, round, inbox, out);
  }
  Fn fn_;
  NodeView view_;
};

ProgramFactory fn_factory(FnProgram::Fn fn) {
  return [fn](const NodeView&) { return std::make_unique<FnProgram>(fn); };
}

// Round 1: send own ID everywhere. Round 2: halt with min(own, received).
struct EchoMin : NodeProgram {
  void init(const NodeView& view) override { view_ = view; }
  StepResult step(std::int64_t round, std::span<const Received> inbox,
                  Outbox& out) override {
    int w = id_width(view_.n);
    if (round == 1) {
      Payload p;
      p.append_bits(static_cast<std::uint64_t>(view_.my_id), w);
      for (int port = 0; port < view_.degree(); ++port) out.send(port, p);
      return {};
    }
    std::uint64_t best = static_cast<std::uint64_t>(view_.my_id);
    for (const Received& r : inbox) best = std::min(best, r.payload.read_bits(0, w));
    StepResult res;
    res.halt = true;
    res.output.append_bits(best, w);
    return res;
  }
  NodeView view_;
};

// Node 0 starts a relay flood; everyone outputs the round of first reception
// (the source outputs its first reception too, from the echo back).
struct FloodProbe : NodeProgram {
  void init(const NodeView& view) override { view_ = view; }
  StepResult step(std::int64_t round, std::span<const Received> inbox,
                  Outbox& out) override {
    Payload pulse;
    pulse.append_flag(true);
    if (round == 1 && view_.my_id == 0) {
      for (int port = 0; port < view_.degree(); ++port) out.send(port, pulse);
      return {};
    }
    if (!inbox.empty() && first_reception_ == 0) {
      first_reception_ = round;
      for (int port = 0; port < view_.degree(); ++port) out.send(port, pulse);
      return {};
    }
    if (first_reception_ != 0) {
      StepResult res;
      res.halt = true;
      res.output.append_bits(static_cast<std::uint64_t>(first_reception_), 16);
      return res;
    }
    return {};
  }
  NodeView view_;
  std::int64_t first_reception_ = 0;
};

// ID-oblivious: leaves start a wave, everyone outputs its distance to the
// nearest leaf. Uses only degrees and ports.
struct LeafDistance : NodeProgram {
  void init(const NodeView& view) override { view_ = view; }
  StepResult step(std::int64_t round, std::span<const Received> inbox,
                  Outbox& out) override {
    Payload pulse;
    pulse.append_flag(true);
    if (round == 1 && view_.degree() == 1) {
      out.send(0, pulse);
      StepResult res;
      res.halt = true;
      res.output.append_bits(0, 16);
      return res;
    }
    if (!inbox.empty()) {
      for (int port = 0; port < view_.degree(); ++port) out.send(port, pulse);
      StepResult res;
      res.halt = true;
      res.output.append_bits(static_cast<std::uint64_t>(round - 1), 16);
      return res;
    }
    return {};
  }
  NodeView view_;
};

ProgramFactory make(auto maker) {
  return [maker](const NodeView&) { return maker(); };
}

SimConfig quick_cfg(std::int64_t max_rounds = 1000) {
  SimConfig cfg;
  cfg.max_rounds = max_rounds;
  return cfg;
}

std::uint64_t fold_trace(const std::vector<TraceRecord>& trace) {
  std::uint64_t h = kTraceHashEmpty;
  std::int64_t marked = -1;
  for (const TraceRecord& t : trace) {
    if (t.round != marked) {
      h = mix64(h ^ static_cast<std::uint64_t>(t.round));
      marked = t.round;
    }
    std::uint64_t key =
        (static_cast<std::uint64_t>(static_cast<std::uint32_t>(t.sender)) << 32) |
        static_cast<std::uint32_t>(t.receiver);
    h = mix64(h ^ key);
    h = mix64(h ^ t.payload.w[0]);
    h = mix64(h ^ t.payload.w[1]);
    h = mix64(h ^ t.payload.nbits);
  }
  return h;
}

}  // namespace

TEST_CASE("default bandwidth is ceil(8*log2(n+1))") {
  CHECK(default_bandwidth_bits(1) == 8);
  CHECK(default_bandwidth_bits(3) == 16);
  CHECK(default_bandwidth_bits(10) == 28);
  CHECK(default_bandwidth_bits(255) == 64);
  CHECK(default_bandwidth_bits(4096) == 97);
}

TEST_CASE("echo-min on a triangle") {
  Graph g = generate(clique_spec(3));
  auto res = run_sync(g, make([] { return std::make_unique<EchoMin>(); }),
                      quick_cfg());
  CHECK(res.metrics.rounds_used == 2);
  CHECK(res.metrics.halted_all);
  CHECK(res.metrics.total_messages == 6);
  for (VertexId v = 0; v < 3; ++v)
    CHECK(res.outputs[v].read_bits(0, id_width(3)) == 0);
}

TEST_CASE("bandwidth violations are fatal and name the edge") {
  Graph k2 = Graph::from_edges(2, {{0, 1}});
  SimConfig cfg = quick_cfg();
  cfg.bandwidth_bits = 2;
  auto factory = fn_factory([](const NodeView&, std::int64_t,
                               std::span<const Received>, Outbox& out) {
    Payload p;
    p.append_bits(5, 3);
    out.send(0, p);
    return StepResult{};
  });
  try {
    run_sync(k2, factory, cfg);
    FAIL("expected SimError");
  } catch (const SimError& e) {
    std::string what = e.what();
    CHECK(what.find("bandwidth violation") != std::string::npos);
    CHECK(what.find("node 0") != std::string::npos);
    CHECK(what.find("round 1") != std::string::npos);
    CHECK(what.find("edge (0,1)") != std::string::npos);
  }
}

TEST_CASE("send rejects bad ports and duplicates") {
  Graph k2 = Graph::from_edges(2, {{0, 1}});
  auto bad_port = fn_factory([](const NodeView&, std::int64_t,
                                std::span<const Received>, Outbox& out) {
    out.send(3, Payload{});
    return StepResult{};
  });
  CHECK_THROWS_AS(run_sync(k2, bad_port, quick_cfg()), SimError);

  auto dup = fn_factory([](const NodeView&, std::int64_t,
                           std::span<const Received>, Outbox& out) {
    out.send(0, Payload{});
    out.send(0, Payload{});
    return StepResult{};
  });
  CHECK_THROWS_AS(run_sync(k2, dup, quick_cfg()), SimError);
}

TEST_CASE("identical runs produce identical hashes, seeds matter") {
  Graph g = generate(cycle_spec(9));
  auto factory = fn_factory([](const NodeView& view, std::int64_t round,
                               std::span<const Received>, Outbox& out) {
    if (round == 1) {
      Rng rng(view.rng_seed);
      Payload p;
      p.append_bits(rng.below(256), 8);
      for (int port = 0; port < view.degree(); ++port) out.send(port, p);
      return StepResult{};
    }
    return halt_with({});
  });
  SimConfig cfg = quick_cfg();
  cfg.global_seed = 11;
  auto a = run_sync(g, factory, cfg);
  auto b = run_sync(g, factory, cfg);
  CHECK(a.metrics.trace_hash == b.metrics.trace_hash);
  CHECK(a.metrics.total_messages == b.metrics.total_messages);
  SimConfig other = cfg;
  other.global_seed = 12;
  auto c = run_sync(g, factory, other);
  CHECK(a.metrics.trace_hash != c.metrics.trace_hash);
}

TEST_CASE("messages sent in round r arrive exactly in round r+1") {
  Graph p6 = generate(path_spec(6));
  auto res = run_sync(p6, make([] { return std::make_unique<FloodProbe>(); }),
                      quick_cfg());
  for (VertexId v = 1; v < 6; ++v)
    CHECK(res.outputs[v].read_bits(0, 16) == static_cast<std::uint64_t>(v) + 1);
  // the source hears the relay bounce back two rounds later
  CHECK(res.outputs[0].read_bits(0, 16) == 3);
}

TEST_CASE("ID-oblivious programs see relabeled graphs identically") {
  Graph p5 = generate(path_spec(5));
  std::vector<VertexId> perm = {3, 0, 4, 1, 2};
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (auto [u, v] : p5.edges()) edges.emplace_back(perm[u], perm[v]);
  Graph relabeled = Graph::from_edges(5, std::move(edges));

  auto factory = make([] { return std::make_unique<LeafDistance>(); });
  auto a = run_sync(p5, factory, quick_cfg());
  auto b = run_sync(relabeled, factory, quick_cfg());
  for (VertexId v = 0; v < 5; ++v) {
    CHECK(b.outputs[perm[v]].read_bits(0, 16) == a.outputs[v].read_bits(0, 16));
  }
}

TEST_CASE("empty run hashes to the documented constant") {
  Graph g = generate(cycle_spec(4));
  auto res = run_sync(g, fn_factory([](const NodeView&, std::int64_t,
                                       std::span<const Received>, Outbox&) {
                        return halt_with({});
                      }),
                      quick_cfg());
  CHECK(res.metrics.rounds_used == 1);
  CHECK(res.metrics.total_messages == 0);
  CHECK(res.metrics.trace_hash == kTraceHashEmpty);
}

TEST_CASE("one payload bit changes the hash") {
  Graph k2 = Graph::from_edges(2, {{0, 1}});
  auto factory_sending = [](std::uint64_t value) {
    return fn_factory([value](const NodeView& view, std::int64_t round,
                              std::span<const Received>, Outbox& out) {
      if (round == 1 && view.my_id == 0) {
        Payload p;
        p.append_bits(value, 8);
        out.send(0, p);
        return StepResult{};
      }
      return halt_with({});
    });
  };
  auto a = run_sync(k2, factory_sending(0b10100000), quick_cfg());
  auto b = run_sync(k2, factory_sending(0b10100001), quick_cfg());
  CHECK(a.metrics.trace_hash != b.metrics.trace_hash);
}

TEST_CASE("send order within a round does not affect the hash") {
  Graph g = generate(cycle_spec(7));
  auto factory_order = [](bool ascending) {
    return fn_factory([ascending](const NodeView& view, std::int64_t round,
                                  std::span<const Received>, Outbox& out) {
      if (round == 1) {
        Payload p;
        p.append_bits(static_cast<std::uint64_t>(view.my_id), 8);
        if (ascending) {
          for (int port = 0; port < view.degree(); ++port) out.send(port, p);
        } else {
          for (int port = view.degree() - 1; port >= 0; --port) out.send(port, p);
        }
        return StepResult{};
      }
      return halt_with({});
    });
  };
  auto a = run_sync(g, factory_order(true), quick_cfg());
  auto b = run_sync(g, factory_order(false), quick_cfg());
  CHECK(a.metrics.trace_hash == b.metrics.trace_hash);
  CHECK(a.metrics.trace_hash != kTraceHashEmpty);
}

TEST_CASE("trace dump format") {
  Graph k2 = Graph::from_edges(2, {{0, 1}});
  SimConfig cfg = quick_cfg();
  cfg.collect_trace = true;
  auto res = run_sync(
      k2, fn_factory([](const NodeView& view, std::int64_t round,
                        std::span<const Received>, Outbox& out) {
        if (round == 1 && view.my_id == 0) {
          Payload p;
          p.append_bits(0b1010, 4);
          out.send(0, p);
          return StepResult{};
        }
        if (round == 2 && view.my_id == 1) out.send(0, Payload{});
        return round >= 2 ? halt_with({}) : keep_running();
      }),
      cfg);
  CHECK(dump_trace(res.trace) == "1 0 1 4 a\n2 1 0 0 -\n");
}

TEST_CASE("recomputing the hash from the trace matches the engine") {
  Graph g = generate(gnp_spec(12, 0.4, 5, true));
  SimConfig cfg = quick_cfg();
  cfg.collect_trace = true;
  cfg.global_seed = 3;
  auto factory = fn_factory([](const NodeView& view, std::int64_t round,
                               std::span<const Received>, Outbox& out) {
    Rng rng(mix64(view.rng_seed, static_cast<std::uint64_t>(round)));
    if (round <= 3) {
      for (int port = 0; port < view.degree(); ++port) {
        if (rng.chance(0.5)) continue;
        Payload p;
        p.append_bits(rng.below(1u << 10), 10);
        out.send(port, p);
      }
      return StepResult{};
    }
    return halt_with({});
  });
  auto res = run_sync(g, factory, cfg);
  CHECK(res.metrics.trace_hash == fold_trace(res.trace));
  CHECK(res.metrics.max_bits_edge_round == 10);
}

TEST_CASE("inbox ports are ascending and name the true sender") {
  Graph g = generate(gnp_spec(10, 0.5, 9, true));
  auto factory = fn_factory([](const NodeView& view, std::int64_t round,
                               std::span<const Received> inbox, Outbox& out) {
    int w = id_width(view.n);
    if (round == 1) {
      Payload p;
      p.append_bits(static_cast<std::uint64_t>(view.my_id), w);
      for (int port = 0; port < view.degree(); ++port) out.send(port, p);
      return StepResult{};
    }
    bool ok = inbox.size() == static_cast<std::size_t>(view.degree());
    for (std::size_t i = 0; i < inbox.size(); ++i) {
      if (i > 0 && inbox[i].port <= inbox[i - 1].port) ok = false;
      auto claimed = inbox[i].payload.read_bits(0, w);
      if (claimed != static_cast<std::uint64_t>(view.neighbors[inbox[i].port]))
        ok = false;
    }
    StepResult res;
    res.halt = true;
    res.output.append_flag(ok);
    return res;
  });
  auto res = run_sync(g, factory, quick_cfg());
  for (VertexId v = 0; v < g.n(); ++v) CHECK(res.outputs[v].read_bits(0, 1) == 1);
}

TEST_CASE("max_rounds stops a non-halting program") {
  Graph g = generate(cycle_spec(5));
  auto res = run_sync(g, fn_factory([](const NodeView&, std::int64_t,
                                       std::span<const Received>, Outbox&) {
                        return StepResult{};
                      }),
                      quick_cfg(7));
  CHECK_FALSE(res.metrics.halted_all);
  CHECK(res.metrics.rounds_used == 7);
}

TEST_CASE("deadlocked programs fail loudly") {
  Graph g = generate(cycle_spec(5));
  auto factory = fn_factory([](const NodeView&, std::int64_t,
                               std::span<const Received>, Outbox&) {
    return sleep_for_messages();
  });
  CHECK_THROWS_AS(run_sync(g, factory, quick_cfg()), SimError);
}

TEST_CASE("alarms fast-forward idle stretches without touching the hash") {
  Graph g = generate(cycle_spec(6));
  auto factory = fn_factory([](const NodeView&, std::int64_t round,
                               std::span<const Received>, Outbox&) {
    if (round == 1)
      return sleep_until(50);
    return halt_with({});
  });
  auto res = run_sync(g, factory, quick_cfg());
  CHECK(res.metrics.rounds_used == 50);
  CHECK(res.metrics.halted_all);
  CHECK(res.metrics.total_messages == 0);
  CHECK(res.metrics.trace_hash == kTraceHashEmpty);
}

TEST_CASE("alarm past max_rounds counts as a timeout") {
  Graph g = generate(cycle_spec(6));
  auto factory = fn_factory([](const NodeView&, std::int64_t,
                               std::span<const Received>, Outbox&) {
    return sleep_until(500);
  });
  auto res = run_sync(g, factory, quick_cfg(20));
  CHECK_FALSE(res.metrics.halted_all);
  CHECK(res.metrics.rounds_used == 20);
}

TEST_CASE("messages to halted nodes are dropped") {
  Graph k2 = Graph::from_edges(2, {{0, 1}});
  auto factory = fn_factory([](const NodeView& view, std::int64_t round,
                               std::span<const Received>, Outbox& out) {
    if (view.my_id == 0) return halt_with({});
    if (round <= 2) {
      Payload p;
      p.append_flag(true);
      out.send(0, p);
      return StepResult{};
    }
    return halt_with({});
  });
  auto res = run_sync(k2, factory, quick_cfg());
  CHECK(res.metrics.halted_all);
  CHECK(res.metrics.total_messages == 2);
}

TEST_CASE("configs are validated") {
  Graph g = generate(cycle_spec(5));
  auto idle = fn_factory([](const NodeView&, std::int64_t,
                            std::span<const Received>, Outbox&) {
    return halt_with({});
  });
  SimConfig no_rounds;
  CHECK_THROWS_AS(run_sync(g, idle, no_rounds), SimError);
  SimConfig thin = quick_cfg();
  thin.bandwidth_bits = 2;  // id_width(5) == 3
  CHECK_THROWS_AS(run_sync(g, idle, thin), SimError);
  Graph split = Graph::from_edges(4, {{0, 1}, {2, 3}});
  CHECK_THROWS_AS(run_sync(split, idle, quick_cfg()), SimError);
}

TEST_CASE("wake_at must be in the future") {
  Graph g = generate(cycle_spec(5));
  auto factory = fn_factory([](const NodeView&, std::int64_t round,
                               std::span<const Received>, Outbox&) {
    StepResult res;
    res.wake_at = round;
    return res;
  });
  CHECK_THROWS_AS(run_sync(g, factory, quick_cfg()), SimError);
}

TEST_CASE("extra inputs reach every node") {
  Graph g = generate(cycle_spec(4));
  SimConfig cfg = quick_cfg();
  BitVec kappa;
  kappa.append_bits(3, 16);
  cfg.extra_inputs["kappa"] = kappa;
  auto res = run_sync(g, fn_factory([](const NodeView& view, std::int64_t,
                                       std::span<const Received>, Outbox&) {
                        StepResult res;
                        res.halt = true;
                        auto it = view.extra_inputs->find("kappa");
                        REQUIRE(it != view.extra_inputs->end());
                        res.output.append_bits(it->second.read_bits(0, 16), 16);
                        return res;
                      }),
                      cfg);
  for (VertexId v = 0; v < 4; ++v) CHECK(res.outputs[v].read_bits(0, 16) == 3);
}

TEST_CASE("port_of finds neighbors") {
  Graph g = generate(cycle_spec(5));
  auto res = run_sync(g, fn_factory([](const NodeView& view, std::int64_t,
                                       std::span<const Received>, Outbox&) {
                        StepResult res;
                        res.halt = true;
                        VertexId nb = view.neighbors[1];
                        bool ok = view.port_of(nb) == 1 &&
                                  view.port_of(view.my_id) == -1;
                        res.output.append_flag(ok);
                        return res;
                      }),
                      quick_cfg());
  for (VertexId v = 0; v < 5; ++v) CHECK(res.outputs[v].read_bits(0, 1) == 1);
}

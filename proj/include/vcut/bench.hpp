#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "vcut/generate.hpp"
#include "vcut/graph.hpp"

namespace vcut {

struct CutResult;   // oracle.hpp
struct FindReport;  // vcut_algo.hpp

// Which distributed program a benchmark case exercises. Names match the
// CLI's --algo values.
enum class BenchMode {
  kMain,      // sampled-pair search, any kappa
  kKappaOne,  // articulation-point specialization, kappa fixed at 1
  kBaseline,  // gather-everything reference
};

const char* to_string(BenchMode m);
BenchMode bench_mode_from_name(std::string_view name);

// One corpus entry: a generator spec plus the kappa values to sweep. The
// graph is built once from spec.seed; only the algorithm seed varies across
// runs, so the oracle answer is shared by every seed of a (case, kappa) pair.
struct BenchCase {
  GenSpec spec;
  BenchMode mode = BenchMode::kMain;
  std::vector<int> kappas = {1};
  int whp_c = 1;
};

// One simulated run, flattened for serialization. A record deliberately
// repeats what the graph and plan imply (n, diameter, budgets) so that it is
// self-contained: summaries and envelope checks can be redone from records
// alone, without regenerating anything.
struct BenchRecord {
  std::string graph;  // GenSpec::describe() of the instance
  std::string family;
  std::string mode;
  VertexId n = 0;
  std::int64_t m = 0;
  int diameter = 0;
  int max_degree = 0;
  int kappa = 0;
  int whp_c = 1;
  std::uint64_t seed = 0;
  std::string outcome;  // no_cut_within | cut_found | timeout
  int cut_size = -1;    // -1 when no cut was reported
  bool oracle_has_cut = false;
  bool matches_oracle = false;
  bool cut_verified = false;  // vacuously true for negatives and timeouts
  std::int64_t rounds_used = 0;
  std::int64_t max_rounds = 0;
  std::int64_t total_messages = 0;
  std::uint64_t trace_hash = 0;
  double envelope_ratio = 0.0;  // rounds / round-bound denominator; 0 for baseline
  double wall_seconds = 0.0;
};

// Tallies over a record set. Always derived: loading a report recomputes the
// summary from the records instead of trusting the serialized copy.
struct BenchSummary {
  int records = 0;
  int cuts_found = 0;
  int mismatches = 0;  // record disagrees with the oracle on has-cut
  int unsound = 0;     // reported cut that failed witness verification
  int timeouts = 0;
  double mismatch_rate = 0.0;
  double max_envelope_ratio = 0.0;
  double wall_seconds = 0.0;  // summed over records
};

struct BenchReport {
  std::vector<BenchRecord> records;
  BenchSummary summary;
};

BenchSummary recompute_summary(const std::vector<BenchRecord>& records);

// Runs every (case, kappa, seed) combination with algorithm seeds
// base_seed + i for i in [0, seeds_per_case). sink, when set, sees each
// record as it completes; the CLI uses this to stream one line per record.
using RecordSink = std::function<void(const BenchRecord&)>;
BenchReport run_bench(const std::vector<BenchCase>& cases, int seeds_per_case,
                      std::uint64_t base_seed = 1, const RecordSink& sink = {});

// Flattens one finished run into a record; run_bench uses it internally and
// the CLI reuses it for single simulate invocations, where the graph came
// from a file rather than a generator (graph_label / family are free-form
// there). Witness verification happens here.
BenchRecord make_bench_record(std::string graph_label, std::string family,
                              BenchMode mode, const Graph& g,
                              const GraphStats& st, int kappa, int whp_c,
                              std::uint64_t seed, const CutResult& oracle,
                              const FindReport& run, std::int64_t max_rounds,
                              double wall_seconds);

// Report serialization. bench_report_from_json accepts its own output and
// round-trips records exactly (summary is recomputed on load). Records also
// serialize individually for line-oriented streams.
std::string bench_report_json(const BenchReport& report);
BenchReport bench_report_from_json(const std::string& text);
std::string bench_record_json(const BenchRecord& record);
std::string bench_summary_json(const BenchSummary& summary);

// Corpus files are a JSON array of cases, e.g.
//   [{"family": "cycle", "n": 256, "kappas": [1, 2]},
//    {"family": "planted", "a": 126, "k": 2, "b": 126, "exact": true,
//     "seed": 9, "kappas": [2], "mode": "main"}]
// Omitted fields take the defaults above; an empty array is a valid corpus.
std::vector<BenchCase> corpus_from_json(const std::string& text);
std::string corpus_json(const std::vector<BenchCase>& cases);

// Built-in corpora. smoke finishes in seconds and backs the unit tests; full
// is the acceptance sweep over cycles, trees, random graphs, planted cuts,
// and cliques up to n = 4096.
std::vector<BenchCase> bench_corpus_smoke();
std::vector<BenchCase> bench_corpus_full();

}  // namespace vcut

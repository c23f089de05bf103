#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bhd/estimate.hpp"
#include "bhd/graph.hpp"
#include "bhd/spectral.hpp"

// Command implementations behind the `bhd` executable. Each command reads
// and writes through streams or paths so that tests drive them in-process.
namespace bhd::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kData = 3, kNumeric = 4 };

struct GraphSource {
  std::string path;
  // Restrict to the largest connected component after loading.
  bool lcc = false;
};

Graph load_graph(const GraphSource& src);

struct SpectralOverrides {
  std::optional<double> lambda;
  std::optional<double> gamma2;
};

// Estimates whatever is not overridden; gamma2 only when needed.
SpectralInfo resolve_spectral(const Graph& g, const SpectralOverrides& o, bool need_gamma2);

struct QuerySpec {
  Method method = Method::exact;
  OriginalId s = 0;
  std::optional<OriginalId> t;
  double epsilon = 0.1;
  double delta = 0.01;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> max_samples;
  unsigned jobs = 1;
  unsigned batch = 256;
  double time_budget_s = 86400.0;
  SpectralOverrides spectral;
  // Fill ground_truth/abs_error from the dense oracle.
  bool with_truth = false;
};

// One CSV line. Empty optionals print as empty fields.
struct BenchRow {
  std::string method;
  OriginalId s = 0;
  std::optional<OriginalId> t;
  std::optional<double> estimate;
  bool timeout = false;
  std::optional<double> ground_truth;
  std::optional<double> abs_error;
  std::optional<std::uint64_t> walks_or_iters;
  double time_ms = 0.0;
  std::optional<double> epsilon;
  std::optional<std::uint64_t> seed;
  // Not printed: the sampler hit an external cap.
  bool capped = false;
};

extern const char* const kCsvHeader;

// Shortest round-trip decimal form.
std::string format_double(double x);
std::string format_row(const BenchRow& row);

// n, m, degrees, components, bipartiteness and LCC size as key=value lines;
// with `spectral`, also the lambda and gamma2 estimates of the LCC.
void cmd_stats(const GraphSource& src, bool spectral, std::ostream& out);

// Runs one query against an already loaded graph.
BenchRow run_query(const Graph& g, const QuerySpec& spec, std::ostream& warn);

// Loads the graph, runs the query, prints the CSV header and one row.
BenchRow cmd_query(const GraphSource& src, const QuerySpec& spec, std::ostream& out,
                   std::ostream& warn);

inline constexpr std::int64_t kGroundTruthLength = 1000;

// "s t" lines resolved to dense ids. Throws DataError on unknown ids or s == t.
std::vector<std::pair<NodeId, NodeId>> read_pairs(const Graph& g, const std::string& path);

// beta^1000 per pair, computed concurrently on `jobs` threads.
std::vector<double> ground_truth_values(const Graph& g,
                                        const std::vector<std::pair<NodeId, NodeId>>& pairs,
                                        unsigned jobs);

// Writes "s,t,beta" rows (original ids), one per input line, no dedupe.
void cmd_ground_truth(const GraphSource& src, const std::string& pairs_path,
                      const std::string& out_csv, unsigned jobs = 1);

struct BenchSpec {
  std::vector<Method> methods{Method::push, Method::push_plus, Method::stw, Method::swf};
  std::vector<double> eps_list{0.01, 0.02, 0.05, 0.1, 0.2};
  std::size_t num_pairs = 100;
  std::uint64_t seed = 1;
  double delta = 0.01;
  std::optional<std::uint64_t> max_samples = 1'000'000;
  unsigned jobs = 1;
  unsigned batch = 256;
  double time_budget_s = 86400.0;
  SpectralOverrides spectral;
};

struct BenchSummaryLine {
  Method method;
  double epsilon = 0.0;
  std::size_t completed = 0;
  std::size_t timeouts = 0;
  double mean_abs_error = 0.0;
  double mean_time_ms = 0.0;
};

struct BenchResult {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  std::vector<BenchRow> rows;
  std::vector<BenchSummaryLine> summary;
};

// num_pairs distinct unordered pairs drawn uniformly with the given seed.
std::vector<std::pair<NodeId, NodeId>> sample_pairs(const Graph& g, std::size_t num_pairs,
                                                    std::uint64_t seed);

// Query i of every (method, eps) block uses seed spec.seed + i, so any row
// can be reproduced with `bhd query --seed`.
BenchResult run_bench(const Graph& g, const BenchSpec& spec, std::ostream& warn);

// run_bench plus CSV output and a per-(method, eps) summary on `report`.
BenchResult cmd_bench(const GraphSource& src, const BenchSpec& spec, const std::string& out_csv,
                      std::ostream& report, std::ostream& warn);

// Full command line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bhd::cli

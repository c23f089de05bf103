#include "bhd/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "bhd/error.hpp"
#include "bhd/exact.hpp"
#include "bhd/nodal.hpp"
#include "bhd/parallel.hpp"
#include "bhd/push.hpp"
#include "bhd/random.hpp"
#include "bhd/rwalk.hpp"

namespace bhd::cli {

const char* const kCsvHeader =
    "method,s,t,estimate,ground_truth,abs_error,walks_or_iters,time_ms,epsilon,seed";

Graph load_graph(const GraphSource& src) {
  Graph g = build_graph(read_edge_list(src.path));
  return src.lcc ? largest_connected_component(g) : g;
}

SpectralInfo resolve_spectral(const Graph& g, const SpectralOverrides& o, bool need_gamma2) {
  SpectralInfo info;
  info.lambda = o.lambda ? *o.lambda : estimate_lambda(g);
  if (!(info.lambda > 0.0 && info.lambda < 1.0)) throw ParameterError("--lambda must lie in (0, 1)");
  if (o.gamma2 || need_gamma2) {
    info.gamma2 = o.gamma2 ? *o.gamma2 : estimate_gamma2(g);
    if (!(info.gamma2 > 0.0)) throw ParameterError("--gamma2 must be positive");
    info.phi = 2.0 / (info.gamma2 * info.gamma2);
  }
  return info;
}

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

std::string format_row(const BenchRow& row) {
  std::ostringstream os;
  auto opt = [&os](const auto& v) {
    if (!v) return;
    if constexpr (std::is_same_v<std::decay_t<decltype(*v)>, double>) {
      os << format_double(*v);
    } else {
      os << *v;
    }
  };
  os << row.method << ',' << row.s << ',';
  opt(row.t);
  os << ',';
  if (row.timeout) {
    os << "timeout";
  } else {
    opt(row.estimate);
  }
  os << ',';
  opt(row.ground_truth);
  os << ',';
  opt(row.abs_error);
  os << ',';
  opt(row.walks_or_iters);
  os << ',' << std::fixed << std::setprecision(3) << row.time_ms << ',';
  opt(row.epsilon);
  os << ',';
  opt(row.seed);
  return os.str();
}

void cmd_stats(const GraphSource& src, bool spectral, std::ostream& out) {
  Graph full = build_graph(read_edge_list(src.path));
  Graph lcc = largest_connected_component(full);
  const Graph& g = src.lcc ? lcc : full;
  out << "n=" << g.num_nodes() << '\n'
      << "m=" << g.num_edges() << '\n'
      << "avg_degree=" << std::fixed << std::setprecision(2) << g.average_degree() << '\n'
      << "min_degree=" << g.min_degree() << '\n'
      << "max_degree=" << g.max_degree() << '\n'
      << "components=" << g.num_components() << '\n'
      << "bipartite=" << (g.bipartite() ? "true" : "false") << '\n'
      << "lcc_n=" << lcc.num_nodes() << '\n'
      << "lcc_m=" << lcc.num_edges() << '\n';
  if (!spectral) return;
  out << std::setprecision(9);
  if (lcc.bipartite()) {
    out << "lambda=n/a (bipartite)\n";
  } else {
    out << "lambda=" << estimate_lambda(lcc) << '\n';
  }
  out << "gamma2=" << estimate_gamma2(lcc) << '\n';
}

namespace {

NodeId resolve_id(const Graph& g, OriginalId id) {
  auto v = g.find(id);
  if (!v) throw ParameterError("unknown node id " + std::to_string(id));
  return *v;
}

bool is_sampler(Method m) { return m == Method::stw || m == Method::swf || !is_pairwise(m); }

void warn_capped(std::ostream& warn, const BenchRow& row) {
  warn << "warning: " << row.method << " query (" << row.s;
  if (row.t) warn << ", " << *row.t;
  warn << ") hit the sample cap before its stopping rule; the (eps, delta) guarantee "
          "does not cover this estimate\n";
}

}  // namespace

BenchRow run_query(const Graph& g, const QuerySpec& spec, std::ostream& warn) {
  const Method m = spec.method;
  const NodeId s = resolve_id(g, spec.s);
  std::optional<NodeId> t;
  if (spec.t) t = resolve_id(g, *spec.t);
  if (is_pairwise(m) && m != Method::exact && !t) {
    throw ParameterError(std::string(method_name(m)) + " needs a target node (--t)");
  }
  if (!is_pairwise(m) && t) {
    throw ParameterError(std::string(method_name(m)) + " is a nodal query; drop --t");
  }
  if (t && *t == s) throw ParameterError("pairwise query needs distinct nodes");

  BenchRow row;
  row.method = method_name(m);
  row.s = spec.s;
  row.t = spec.t;
  if (m != Method::exact) row.epsilon = spec.epsilon;
  if (is_sampler(m)) row.seed = spec.seed;

  std::optional<DenseOracle> oracle;
  if (m == Method::exact || spec.with_truth) oracle = build_oracle(g);

  if (m == Method::exact) {
    const auto start = Clock::now();
    row.estimate = t ? exact_pair(*oracle, s, *t) : exact_nodal(*oracle, s);
    row.time_ms = elapsed_ms_since(start);
  } else {
    g.require_walkable();
    const SpectralInfo spectral = resolve_spectral(g, spec.spectral, m == Method::snb_plus);
    SamplingOptions so;
    so.seed = spec.seed;
    so.jobs = spec.jobs;
    so.batch = spec.batch;
    so.max_samples = spec.max_samples;
    so.deadline = Deadline::after(spec.time_budget_s);
    Estimate e;
    NodalEstimate ne;
    switch (m) {
      case Method::push:
        e = query_push(g, spectral, s, *t, spec.epsilon, so.deadline);
        break;
      case Method::push_plus:
        e = query_push_plus(g, spectral, s, *t, spec.epsilon, so.deadline);
        break;
      case Method::stw:
        e = query_stw(g, spectral, s, *t, spec.epsilon, spec.delta, so);
        break;
      case Method::swf:
        e = query_swf(g, spectral, s, *t, spec.epsilon, spec.delta, so);
        break;
      case Method::snb:
        ne = query_snb(g, spectral, s, spec.epsilon, spec.delta, {so});
        break;
      case Method::snb_plus:
        ne = query_snb_plus(g, spectral, s, spec.epsilon, spec.delta, {so});
        break;
      case Method::exact:
        break;
    }
    if (is_pairwise(m)) {
      row.estimate = e.value;
      row.walks_or_iters = e.work;
      row.time_ms = e.elapsed_ms;
      row.capped = e.capped;
    } else {
      row.estimate = ne.value;
      row.walks_or_iters = ne.samples;
      row.time_ms = ne.elapsed_ms;
      row.capped = ne.capped;
    }
  }
  if (spec.with_truth) {
    row.ground_truth = t ? exact_pair(*oracle, s, *t) : exact_nodal(*oracle, s);
    row.abs_error = std::abs(*row.estimate - *row.ground_truth);
  }
  if (row.capped) warn_capped(warn, row);
  return row;
}

BenchRow cmd_query(const GraphSource& src, const QuerySpec& spec, std::ostream& out,
                   std::ostream& warn) {
  Graph g = load_graph(src);
  BenchRow row = run_query(g, spec, warn);
  out << kCsvHeader << '\n' << format_row(row) << '\n';
  return row;
}

std::vector<std::pair<NodeId, NodeId>> read_pairs(const Graph& g, const std::string& path) {
  EdgeList raw = read_edge_list(path);
  std::vector<std::pair<NodeId, NodeId>> pairs;
  pairs.reserve(raw.pairs.size());
  for (auto [a, b] : raw.pairs) {
    auto s = g.find(a), t = g.find(b);
    if (!s || !t) throw DataError(path + ": pair (" + std::to_string(a) + ", " +
                                  std::to_string(b) + ") names a node not in the graph");
    if (*s == *t) throw DataError(path + ": pair with s == t (" + std::to_string(a) + ")");
    pairs.emplace_back(*s, *t);
  }
  return pairs;
}

std::vector<double> ground_truth_values(const Graph& g,
                                        const std::vector<std::pair<NodeId, NodeId>>& pairs,
                                        unsigned jobs) {
  std::vector<double> values(pairs.size());
  parallel_for(pairs.size(), std::max(1u, jobs), [&](std::size_t i) {
    auto h = push_residual(g, pairs[i].first, pairs[i].second, kGroundTruthLength);
    values[i] = beta_from_residual(h, g.num_nodes());
  });
  return values;
}

void cmd_ground_truth(const GraphSource& src, const std::string& pairs_path,
                      const std::string& out_csv, unsigned jobs) {
  Graph g = load_graph(src);
  auto pairs = read_pairs(g, pairs_path);
  auto values = ground_truth_values(g, pairs, jobs);
  std::ofstream out(out_csv);
  if (!out) throw DataError("cannot write " + out_csv);
  out << "s,t,beta\n";
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    out << g.original_id(pairs[i].first) << ',' << g.original_id(pairs[i].second) << ','
        << format_double(values[i]) << '\n';
  }
}

std::vector<std::pair<NodeId, NodeId>> sample_pairs(const Graph& g, std::size_t num_pairs,
                                                    std::uint64_t seed) {
  const std::uint64_t n = g.num_nodes();
  if (n < 2 || num_pairs > n * (n - 1) / 2) {
    throw ParameterError("cannot draw " + std::to_string(num_pairs) + " distinct pairs from " +
                         std::to_string(n) + " nodes");
  }
  Rng rng(derive_seed(seed, 0xbe4c));
  std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(n - 1));
  std::set<std::pair<NodeId, NodeId>> seen;
  std::vector<std::pair<NodeId, NodeId>> pairs;
  while (pairs.size() < num_pairs) {
    NodeId a = pick(rng), b = pick(rng);
    if (a == b) continue;
    if (seen.insert(std::minmax(a, b)).second) pairs.emplace_back(a, b);
  }
  return pairs;
}

BenchResult run_bench(const Graph& g, const BenchSpec& spec, std::ostream& warn) {
  for (Method m : spec.methods) {
    if (!is_pairwise(m)) throw ParameterError("bench runs pairwise methods only");
  }
  g.require_walkable();
  BenchResult result;
  result.pairs = sample_pairs(g, spec.num_pairs, spec.seed);
  const auto truth = ground_truth_values(g, result.pairs, spec.jobs);
  const SpectralInfo spectral = resolve_spectral(g, spec.spectral, false);
  std::optional<DenseOracle> oracle;
  if (std::find(spec.methods.begin(), spec.methods.end(), Method::exact) != spec.methods.end()) {
    oracle = build_oracle(g);
  }

  struct Task {
    Method method;
    double epsilon;
    std::size_t pair;
  };
  std::vector<Task> tasks;
  for (Method m : spec.methods)
    for (double eps : spec.eps_list)
      for (std::size_t i = 0; i < result.pairs.size(); ++i) tasks.push_back({m, eps, i});

  result.rows.resize(tasks.size());
  parallel_for(tasks.size(), std::max(1u, spec.jobs), [&](std::size_t k) {
    const Task& task = tasks[k];
    const auto [s, t] = result.pairs[task.pair];
    BenchRow& row = result.rows[k];
    row.method = method_name(task.method);
    row.s = g.original_id(s);
    row.t = g.original_id(t);
    row.ground_truth = truth[task.pair];
    if (task.method != Method::exact) row.epsilon = task.epsilon;
    const std::uint64_t seed = spec.seed + task.pair;
    if (task.method == Method::stw || task.method == Method::swf) row.seed = seed;

    SamplingOptions so;
    so.seed = seed;
    so.jobs = 1;
    so.batch = spec.batch;
    so.max_samples = spec.max_samples;
    so.deadline = Deadline::after(spec.time_budget_s);
    const auto start = Clock::now();
    try {
      Estimate e;
      switch (task.method) {
        case Method::exact:
          e.value = exact_pair(*oracle, s, t);
          e.elapsed_ms = elapsed_ms_since(start);
          break;
        case Method::push:
          e = query_push(g, spectral, s, t, task.epsilon, so.deadline);
          break;
        case Method::push_plus:
          e = query_push_plus(g, spectral, s, t, task.epsilon, so.deadline);
          break;
        case Method::stw:
          e = query_stw(g, spectral, s, t, task.epsilon, spec.delta, so);
          break;
        case Method::swf:
          e = query_swf(g, spectral, s, t, task.epsilon, spec.delta, so);
          break;
        default:
          break;
      }
      row.estimate = e.value;
      row.abs_error = std::abs(e.value - truth[task.pair]);
      if (task.method != Method::exact) row.walks_or_iters = e.work;
      row.time_ms = e.elapsed_ms;
      row.capped = e.capped;
    } catch (const TimeoutError&) {
      row.timeout = true;
      row.time_ms = elapsed_ms_since(start);
    }
  });

  std::size_t capped = 0;
  for (Method m : spec.methods) {
    for (double eps : spec.eps_list) {
      BenchSummaryLine line{m, eps};
      for (std::size_t k = 0; k < tasks.size(); ++k) {
        if (tasks[k].method != m || tasks[k].epsilon != eps) continue;
        const BenchRow& row = result.rows[k];
        if (row.timeout) {
          ++line.timeouts;
          continue;
        }
        ++line.completed;
        line.mean_abs_error += *row.abs_error;
        line.mean_time_ms += row.time_ms;
        capped += row.capped;
      }
      if (line.completed) {
        line.mean_abs_error /= static_cast<double>(line.completed);
        line.mean_time_ms /= static_cast<double>(line.completed);
      }
      result.summary.push_back(line);
    }
  }
  if (capped) {
    warn << "warning: " << capped
         << " bench queries hit --max-samples before their stopping rule; their (eps, delta) "
            "guarantee does not hold\n";
  }
  return result;
}

BenchResult cmd_bench(const GraphSource& src, const BenchSpec& spec, const std::string& out_csv,
                      std::ostream& report, std::ostream& warn) {
  Graph g = load_graph(src);
  BenchResult result = run_bench(g, spec, warn);
  std::ofstream out(out_csv);
  if (!out) throw DataError("cannot write " + out_csv);
  out << kCsvHeader << '\n';
  for (const auto& row : result.rows) out << format_row(row) << '\n';
  report << "method,epsilon,completed,timeouts,mean_abs_error,mean_time_ms\n";
  for (const auto& line : result.summary) {
    report << method_name(line.method) << ',' << format_double(line.epsilon) << ','
           << line.completed << ',' << line.timeouts << ',' << format_double(line.mean_abs_error)
           << ',' << std::fixed << std::setprecision(3) << line.mean_time_ms << '\n';
    report.unsetf(std::ios::fixed);
  }
  return result;
}

namespace {

void add_graph_options(CLI::App* cmd, GraphSource& src) {
  cmd->add_option("graph", src.path, "Edge-list file (\"u v\" per line)")->required();
  cmd->add_flag("--lcc", src.lcc, "Restrict to the largest connected component");
}

void add_spectral_options(CLI::App* cmd, SpectralOverrides& o) {
  cmd->add_option("--lambda", o.lambda, "Use this lambda instead of estimating it");
  cmd->add_option("--gamma2", o.gamma2, "Use this algebraic connectivity instead of estimating it");
}

std::vector<Method> parse_methods(const std::string& list) {
  std::vector<Method> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_method(item));
  return out;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Biharmonic distance queries on undirected graphs", "bhd"};
  app.require_subcommand(1);

  GraphSource src;
  bool spectral = false;
  auto* stats = app.add_subcommand("stats", "Graph statistics");
  add_graph_options(stats, src);
  stats->add_flag("--spectral", spectral, "Also estimate lambda and gamma2");

  QuerySpec q;
  std::string method = "push";
  auto add_query_options = [&](CLI::App* cmd, bool with_method, bool with_t) {
    add_graph_options(cmd, src);
    if (with_method) {
      cmd->add_option("--method", method, "exact, push, push+, stw, swf, snb or snb+")
          ->capture_default_str();
    }
    cmd->add_option("--s", q.s, "Source node (original id)")->required();
    if (with_t) cmd->add_option("--t", q.t, "Target node (original id)");
    cmd->add_option("--eps", q.epsilon, "Additive error")->capture_default_str();
    cmd->add_option("--delta", q.delta, "Failure probability")->capture_default_str();
    cmd->add_option("--seed", q.seed, "Random seed")->capture_default_str();
    cmd->add_option("--max-samples", q.max_samples, "Cap on samples / walk quadruples");
    cmd->add_option("--jobs", q.jobs, "Worker threads")->capture_default_str();
    cmd->add_option("--batch", q.batch, "Samples per worker between stopping checks")
        ->capture_default_str();
    cmd->add_option("--time-budget", q.time_budget_s, "Seconds allowed per query")
        ->capture_default_str();
    cmd->add_flag("--with-truth", q.with_truth, "Add dense-oracle ground truth to the row");
    add_spectral_options(cmd, q.spectral);
  };
  auto* query = app.add_subcommand("query", "Answer one pairwise or nodal query");
  add_query_options(query, true, true);
  auto* exact_pair_cmd = app.add_subcommand("exact-pair", "Exact pairwise distance (dense)");
  add_graph_options(exact_pair_cmd, src);
  exact_pair_cmd->add_option("--s", q.s, "Source node (original id)")->required();
  exact_pair_cmd->add_option("--t", q.t, "Target node (original id)")->required();
  auto* exact_nodal_cmd = app.add_subcommand("exact-nodal", "Exact nodal distance (dense)");
  add_graph_options(exact_nodal_cmd, src);
  exact_nodal_cmd->add_option("--s", q.s, "Source node (original id)")->required();

  std::string pairs_path, out_csv;
  unsigned gt_jobs = 1;
  auto* gt = app.add_subcommand("ground-truth", "Push with ell = 1000 for listed pairs");
  add_graph_options(gt, src);
  gt->add_option("--pairs", pairs_path, "File of \"s t\" lines")->required();
  gt->add_option("--out", out_csv, "Output CSV")->required();
  gt->add_option("--jobs", gt_jobs, "Worker threads")->capture_default_str();

  BenchSpec bench_spec;
  std::string bench_methods = "push,push+,stw,swf";
  std::uint64_t max_samples = *bench_spec.max_samples;
  auto* bench = app.add_subcommand("bench", "Random-pair benchmark against ground truth");
  add_graph_options(bench, src);
  bench->add_option("--methods", bench_methods, "Comma-separated pairwise methods")
      ->capture_default_str();
  bench->add_option("--eps", bench_spec.eps_list, "Error thresholds")->delimiter(',');
  bench->add_option("--pairs", bench_spec.num_pairs, "Number of random pairs")
      ->capture_default_str();
  bench->add_option("--seed", bench_spec.seed, "Random seed")->capture_default_str();
  bench->add_option("--delta", bench_spec.delta, "Failure probability")->capture_default_str();
  bench->add_option("--max-samples", max_samples, "Cap on samples per query")
      ->capture_default_str();
  bench->add_option("--jobs", bench_spec.jobs, "Concurrent queries")->capture_default_str();
  bench->add_option("--batch", bench_spec.batch, "SWF samples between stopping checks")
      ->capture_default_str();
  bench->add_option("--time-budget", bench_spec.time_budget_s, "Seconds allowed per query")
      ->capture_default_str();
  bench->add_option("--out", out_csv, "Output CSV")->required();
  add_spectral_options(bench, bench_spec.spectral);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*stats) {
      cmd_stats(src, spectral, out);
    } else if (*query) {
      q.method = parse_method(method);
      cmd_query(src, q, out, err);
    } else if (*exact_pair_cmd || *exact_nodal_cmd) {
      q.method = Method::exact;
      cmd_query(src, q, out, err);
    } else if (*gt) {
      cmd_ground_truth(src, pairs_path, out_csv, gt_jobs);
    } else if (*bench) {
      bench_spec.methods = parse_methods(bench_methods);
      bench_spec.max_samples = max_samples;
      cmd_bench(src, bench_spec, out_csv, out, err);
    }
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    return kData;
  } catch (const NumericError& e) {
    err << "error: " << e.what() << '\n';
    return kNumeric;
  } catch (const TimeoutError& e) {
    err << "error: " << e.what() << '\n';
    return kNumeric;
  }
  return kOk;
}

}  // namespace bhd::cli

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "bhd/error.hpp"
#include "bhd/exact.hpp"
#include "bhd/generators.hpp"
#include "bhd/nodal.hpp"
#include "bhd/push.hpp"
#include "bhd/rwalk.hpp"

namespace py = pybind11;
using namespace bhd;

namespace {

SamplingOptions sampling(std::uint64_t seed, unsigned jobs, unsigned batch,
                         std::optional<std::uint64_t> max_samples) {
  SamplingOptions o;
  o.seed = seed;
  o.jobs = jobs;
  o.batch = batch;
  o.max_samples = max_samples;
  return o;
}

NodalOptions nodal(std::uint64_t seed, unsigned jobs, std::optional<std::uint64_t> max_samples) {
  NodalOptions o;
  o.sampling = sampling(seed, jobs, 256, max_samples);
  return o;
}

}  // namespace

PYBIND11_MODULE(_bhd, m) {
  m.doc() = "Biharmonic distance queries on undirected graphs";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<ParameterError>(m, "ParameterError", base.ptr());
  auto data = py::register_exception<DataError>(m, "DataError", base.ptr());
  auto numeric = py::register_exception<NumericError>(m, "NumericError", base.ptr());
  py::register_exception<TimeoutError>(m, "TimeoutError", base.ptr());
  (void)data;
  (void)numeric;

  py::class_<Graph>(m, "Graph")
      .def_static(
          "from_edges",
          [](const std::vector<std::pair<OriginalId, OriginalId>>& edges) {
            return build_graph(EdgeList{edges});
          },
          py::arg("edges"), "Build from (u, v) pairs; self-loops and duplicates are dropped.")
      .def_static(
          "from_text",
          [](const std::string& text) {
            std::istringstream in(text);
            return build_graph(parse_edge_list(in));
          },
          py::arg("text"))
      .def_static("read", [](const std::string& path) { return build_graph(read_edge_list(path)); },
                  py::arg("path"))
      .def_property_readonly("num_nodes", &Graph::num_nodes)
      .def_property_readonly("num_edges", &Graph::num_edges)
      .def_property_readonly("min_degree", &Graph::min_degree)
      .def_property_readonly("max_degree", &Graph::max_degree)
      .def_property_readonly("connected", &Graph::connected)
      .def_property_readonly("bipartite", &Graph::bipartite)
      .def_property_readonly("num_components", &Graph::num_components)
      .def("degree", &Graph::degree, py::arg("v"))
      .def("degrees", [](const Graph& g) {
        auto d = g.degrees();
        return std::vector<std::uint32_t>(d.begin(), d.end());
      })
      .def("neighbors", [](const Graph& g, NodeId v) {
        if (v >= g.num_nodes()) throw ParameterError("node id out of range");
        auto nb = g.neighbors(v);
        return std::vector<NodeId>(nb.begin(), nb.end());
      }, py::arg("v"))
      .def("original_id", &Graph::original_id, py::arg("v"))
      .def("find", &Graph::find, py::arg("original_id"),
           "Dense id of an original id, or None.")
      .def("to_text", [](const Graph& g) {
        std::ostringstream out;
        write_edge_list(g, out);
        return out.str();
      })
      .def("largest_connected_component", &largest_connected_component)
      .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; })
      .def("__repr__", [](const Graph& g) {
        return "Graph(n=" + std::to_string(g.num_nodes()) + ", m=" + std::to_string(g.num_edges()) +
               ")";
      });

  m.def("complete", &gen::complete, py::arg("n"));
  m.def("cycle", &gen::cycle, py::arg("n"));
  m.def("path", &gen::path, py::arg("n"));
  m.def("star", &gen::star, py::arg("leaves"));
  m.def("erdos_renyi", &gen::erdos_renyi, py::arg("n"), py::arg("p"), py::arg("seed"),
        py::arg("require_walkable") = true);

  py::class_<SpectralInfo>(m, "SpectralInfo")
      .def_readonly("lambda_", &SpectralInfo::lambda)
      .def_readonly("gamma2", &SpectralInfo::gamma2)
      .def_readonly("phi", &SpectralInfo::phi)
      .def("__repr__", [](const SpectralInfo& s) {
        return "SpectralInfo(lambda=" + std::to_string(s.lambda) +
               ", gamma2=" + std::to_string(s.gamma2) + ")";
      });
  m.def("estimate_spectral",
        [](const Graph& g, bool with_gamma2) { return estimate_spectral(g, with_gamma2); },
        py::arg("graph"), py::arg("with_gamma2") = false);
  m.def("make_spectral", &make_spectral, py::arg("lambda_"), py::arg("gamma2"));
  m.def("estimate_lambda", [](const Graph& g) { return estimate_lambda(g); }, py::arg("graph"));
  m.def("estimate_gamma2", [](const Graph& g) { return estimate_gamma2(g); }, py::arg("graph"));

  py::class_<DenseOracle>(m, "DenseOracle")
      .def(py::init([](const Graph& g, NodeId limit) { return build_oracle(g, limit); }),
           py::arg("graph"), py::arg("size_limit") = DenseOracle::kDefaultSizeLimit)
      .def("pair", [](const DenseOracle& o, NodeId s, NodeId t) { return exact_pair(o, s, t); },
           py::arg("s"), py::arg("t"))
      .def("nodal", [](const DenseOracle& o, NodeId s) { return exact_nodal(o, s); }, py::arg("s"))
      .def_property_readonly("num_nodes", &DenseOracle::num_nodes);

  m.def("universal_length", &universal_length, py::arg("n"), py::arg("lambda_"),
        py::arg("epsilon"));
  m.def("pairwise_length", &pairwise_length, py::arg("graph"), py::arg("s"), py::arg("t"),
        py::arg("lambda_"), py::arg("epsilon"));
  m.def("truncated", [](const Graph& g, NodeId s, NodeId t, std::int64_t ell) {
    return beta_from_residual(push_residual(g, s, t, ell), g.num_nodes());
  }, py::arg("graph"), py::arg("s"), py::arg("t"), py::arg("ell"),
        "Series truncated after ell terms.");

  py::class_<Estimate>(m, "Estimate")
      .def_readonly("value", &Estimate::value)
      .def_property_readonly("method", [](const Estimate& e) { return std::string(method_name(e.method)); })
      .def_readonly("work", &Estimate::work)
      .def_readonly("ell", &Estimate::ell)
      .def_readonly("epsilon", &Estimate::epsilon)
      .def_readonly("delta", &Estimate::delta)
      .def_readonly("sample_cap", &Estimate::sample_cap)
      .def_readonly("capped", &Estimate::capped)
      .def_readonly("elapsed_ms", &Estimate::elapsed_ms)
      .def("__repr__", [](const Estimate& e) {
        return "Estimate(" + std::string(method_name(e.method)) + ", value=" +
               std::to_string(e.value) + ", work=" + std::to_string(e.work) + ")";
      });

  m.def("push", [](const Graph& g, const SpectralInfo& sp, NodeId s, NodeId t, double eps) {
    return query_push(g, sp, s, t, eps);
  }, py::arg("graph"), py::arg("spectral"), py::arg("s"), py::arg("t"), py::arg("epsilon"));
  m.def("push_plus", [](const Graph& g, const SpectralInfo& sp, NodeId s, NodeId t, double eps) {
    return query_push_plus(g, sp, s, t, eps);
  }, py::arg("graph"), py::arg("spectral"), py::arg("s"), py::arg("t"), py::arg("epsilon"));

  auto pair_sampler = [&](const char* name, auto fn) {
    m.def(name,
          [fn](const Graph& g, const SpectralInfo& sp, NodeId s, NodeId t, double eps,
               double delta, std::uint64_t seed, unsigned jobs, unsigned batch,
               std::optional<std::uint64_t> max_samples) {
            py::gil_scoped_release release;
            return fn(g, sp, s, t, eps, delta, sampling(seed, jobs, batch, max_samples));
          },
          py::arg("graph"), py::arg("spectral"), py::arg("s"), py::arg("t"), py::arg("epsilon"),
          py::arg("delta") = 0.01, py::arg("seed") = 1, py::arg("jobs") = 1,
          py::arg("batch") = 256, py::arg("max_samples") = py::none());
  };
  pair_sampler("swf", [](auto&&... a) { return query_swf(a...); });
  pair_sampler("stw", [](auto&&... a) { return query_stw(a...); });

  py::class_<NodalEstimate>(m, "NodalEstimate")
      .def_readonly("node", &NodalEstimate::node)
      .def_readonly("value", &NodalEstimate::value)
      .def_readonly("pairs_evaluated", &NodalEstimate::pairs_evaluated)
      .def_readonly("sampling_probability", &NodalEstimate::sampling_probability)
      .def_readonly("per_pair_epsilon", &NodalEstimate::per_pair_epsilon)
      .def_readonly("per_pair_delta", &NodalEstimate::per_pair_delta)
      .def_readonly("samples", &NodalEstimate::samples)
      .def_readonly("capped", &NodalEstimate::capped)
      .def_readonly("elapsed_ms", &NodalEstimate::elapsed_ms);

  auto nodal_sampler = [&](const char* name, auto fn) {
    m.def(name,
          [fn](const Graph& g, const SpectralInfo& sp, NodeId s, double eps, double delta,
               std::uint64_t seed, unsigned jobs, std::optional<std::uint64_t> max_samples) {
            py::gil_scoped_release release;
            return fn(g, sp, s, eps, delta, nodal(seed, jobs, max_samples));
          },
          py::arg("graph"), py::arg("spectral"), py::arg("s"), py::arg("epsilon"),
          py::arg("delta") = 0.01, py::arg("seed") = 1, py::arg("jobs") = 1,
          py::arg("max_samples") = py::none());
  };
  nodal_sampler("snb", [](auto&&... a) { return query_snb(a...); });
  nodal_sampler("snb_plus", [](auto&&... a) { return query_snb_plus(a...); });

  m.def("bernoulli_subset",
        [](NodeId n, double p, std::uint64_t seed, std::optional<NodeId> exclude) {
          Rng rng(seed);
          return bernoulli_subset(n, p, rng, exclude);
        },
        py::arg("n"), py::arg("p"), py::arg("seed"), py::arg("exclude") = py::none());
}

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "growthlab/asymptotics.hpp"
#include "growthlab/model.hpp"
#include "growthlab/moments.hpp"
#include "growthlab/oracle.hpp"
#include "growthlab/verify.hpp"

namespace py = pybind11;
using namespace growthlab;

namespace {

py::dict traj_to_dict(const Trajectory& traj) {
    py::dict d;
    d["N"] = traj.n_vertices;
    d["x"] = traj.edge_counts;
    d["delta_last"] = traj.delta_last;
    if (traj.edge_times) {
        py::list events;
        for (const auto& e : *traj.edge_times)
            events.append(py::make_tuple(e.i, e.j, e.time));
        d["edge_times"] = events;
    }
    return d;
}

py::list reports_to_list(const std::vector<GofReport>& reports) {
    py::list out;
    for (const auto& r : reports) {
        py::dict d;
        d["test"] = r.test;
        d["name"] = r.name;
        d["statistic"] = r.statistic;
        d["p_value"] = r.p_value ? py::object(py::float_(*r.p_value)) : py::none();
        d["sample_size"] = r.sample_size;
        d["verdict"] = r.pass ? "pass" : "fail";
        out.append(d);
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_growthlab, m) {
    m.doc() = "random graph growth model: samplers, exact moments, limit laws";

    m.def("simulate_pool",
          [](std::int64_t N, std::uint64_t seed, std::uint64_t replicate, bool track_edges) {
              return traj_to_dict(simulate_pool({N}, {seed, replicate}, track_edges));
          },
          py::arg("N"), py::arg("seed") = 0, py::arg("replicate") = 0,
          py::arg("track_edges") = false);
    m.def("simulate_urn",
          [](std::int64_t N, std::uint64_t seed, std::uint64_t replicate) {
              return traj_to_dict(simulate_urn({N}, {seed, replicate}));
          },
          py::arg("N"), py::arg("seed") = 0, py::arg("replicate") = 0);
    m.def("simulate_insertion",
          [](std::int64_t N, std::uint64_t seed, std::uint64_t replicate) {
              return simulate_insertion({N}, {seed, replicate}).parts;
          },
          py::arg("N"), py::arg("seed") = 0, py::arg("replicate") = 0);

    m.def("neg_hypergeom_pmf", &neg_hypergeom_pmf, py::arg("M"), py::arg("K"), py::arg("ell"));
    m.def("edge_probability", &edge_probability, py::arg("N"), py::arg("n"), py::arg("i"),
          py::arg("j"));
    m.def("exact_distribution",
          [](std::int64_t N, std::int64_t n) { return exact_distribution(N, n); },
          py::arg("N"), py::arg("n"));

    m.def("mean_edges", &mean_edges, py::arg("N"), py::arg("n"));
    m.def("mean_table", &mean_table, py::arg("N"));
    m.def("variance_table",
          [](std::int64_t N) { return variance_table_recursion(N); }, py::arg("N"));
    m.def("second_difference_mean", &second_difference_mean, py::arg("N"), py::arg("n"));
    m.def("first_edge_survival", &first_edge_survival, py::arg("N"), py::arg("n"));
    m.def("last_stage_mean", &last_stage_mean, py::arg("N"));

    m.def("phi", &phi, py::arg("t"));
    m.def("psi", &psi, py::arg("t"));
    m.def("cov_kernel", &cov_kernel, py::arg("s"), py::arg("t"));
    m.def("first_edge_limit_cdf", &first_edge_limit_cdf, py::arg("x"));
    m.def("first_edge_limit_moment", &first_edge_limit_moment, py::arg("alpha"));
    m.def("early_poisson_cumulative", &early_poisson_cumulative, py::arg("t"));
    m.def("erlang_cdf", &erlang_cdf, py::arg("m"), py::arg("x"));

    m.def("simulate_limit_diffusion",
          [](const std::vector<double>& grid, std::uint64_t seed, std::uint64_t replicate,
             const std::string& method) {
              const auto path = simulate_limit_diffusion(
                  grid, {seed, replicate},
                  method == "euler" ? DiffusionMethod::kEuler : DiffusionMethod::kExact);
              return py::make_tuple(path.grid, path.y);
          },
          py::arg("grid"), py::arg("seed") = 0, py::arg("replicate") = 0,
          py::arg("method") = "exact");

    m.def("check_moments",
          [](std::int64_t N, std::int64_t reps, std::uint64_t seed) {
              VerifyOptions opts;
              opts.master_seed = seed;
              return reports_to_list(check_moments(N, reps, opts));
          },
          py::arg("N"), py::arg("reps"), py::arg("seed") = 0);
    m.def("check_martingales",
          [](std::int64_t N, std::int64_t reps, std::uint64_t seed) {
              VerifyOptions opts;
              opts.master_seed = seed;
              return reports_to_list(check_martingales(N, reps, opts));
          },
          py::arg("N"), py::arg("reps"), py::arg("seed") = 0);
    m.def("check_sampler_equivalence",
          [](std::int64_t N, std::int64_t reps, std::uint64_t seed) {
              VerifyOptions opts;
              opts.master_seed = seed;
              return reports_to_list(check_sampler_equivalence(N, reps, opts));
          },
          py::arg("N"), py::arg("reps"), py::arg("seed") = 0);
}

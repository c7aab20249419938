// growthlab command-line front end: simulate trajectories, dump exact
// moment tables and limit curves, sample the limit diffusion, and run
// the statistical verification suites.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "growthlab/asymptotics.hpp"
#include "growthlab/model.hpp"
#include "growthlab/moments.hpp"
#include "growthlab/oracle.hpp"
#include "growthlab/verify.hpp"

namespace {

using growthlab::GofReport;
using growthlab::ModelParams;
using growthlab::SeedSpec;
using growthlab::Trajectory;
using growthlab::VerifyOptions;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::vector<double> parse_grid(const std::string& spec) {
    std::vector<double> grid;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) grid.push_back(std::stod(tok));
    }
    if (grid.empty()) throw CLI::ValidationError("--t-grid", "empty grid");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] < 0.0 || grid[i] > 1.0)
            throw CLI::ValidationError("--t-grid", "grid values must lie in [0, 1]");
        if (i > 0 && grid[i] <= grid[i - 1])
            throw CLI::ValidationError("--t-grid", "grid must be strictly increasing");
    }
    return grid;
}

std::uint64_t env_seed() {
    if (const char* s = std::getenv("GROWTHLAB_SEED")) return std::strtoull(s, nullptr, 10);
    return 0;
}

class Output {
  public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw std::runtime_error("cannot open output file: " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

int run_simulate(std::int64_t n, std::int64_t reps, std::uint64_t seed,
                 const std::string& sampler, bool track_edges, const std::string& format,
                 const std::string& out_path) {
    Output out(out_path);
    auto make = [&](std::int64_t rep) -> Trajectory {
        const SeedSpec spec{seed, static_cast<std::uint64_t>(rep)};
        if (sampler == "pool") return growthlab::simulate_pool({n}, spec, track_edges);
        if (sampler == "insertion")
            return growthlab::composition_to_trajectory(n, growthlab::simulate_insertion({n}, spec));
        return growthlab::simulate_urn({n}, spec);
    };
    if (format == "json") {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (std::int64_t rep = 0; rep < reps; ++rep) {
            const auto traj = make(rep);
            nlohmann::ordered_json j;
            j["replicate"] = rep;
            j["x"] = traj.edge_counts;
            j["delta_last"] = traj.delta_last;
            arr.push_back(std::move(j));
        }
        out.stream() << arr.dump(2) << "\n";
    } else {
        out.stream() << "replicate,n,x,delta_next\r\n";
        for (std::int64_t rep = 0; rep < reps; ++rep) {
            const auto traj = make(rep);
            for (std::int64_t i = 1; i <= n; ++i) {
                out.stream() << rep << ',' << i << ',' << traj.x(i) << ',';
                if (i == n) out.stream() << traj.delta_last;
                out.stream() << "\r\n";
            }
        }
    }
    return 0;
}

int run_moments(std::int64_t n, const std::string& numeric_mode, const std::string& format,
                const std::string& out_path) {
    Output out(out_path);
    if (numeric_mode == "rational") {
        const auto table = growthlab::moment_table_rational(n);
        if (format == "json") {
            nlohmann::ordered_json arr = nlohmann::ordered_json::array();
            for (std::int64_t i = 1; i <= n; ++i) {
                nlohmann::ordered_json j;
                j["n"] = i;
                j["mu"] = table.mu[static_cast<std::size_t>(i - 1)].str();
                j["sigma2"] = table.sigma2[static_cast<std::size_t>(i - 1)].str();
                arr.push_back(std::move(j));
            }
            out.stream() << arr.dump(2) << "\n";
        } else {
            out.stream() << "n,mu,sigma2\r\n";
            for (std::int64_t i = 1; i <= n; ++i)
                out.stream() << i << ',' << table.mu[static_cast<std::size_t>(i - 1)].str() << ','
                             << table.sigma2[static_cast<std::size_t>(i - 1)].str() << "\r\n";
        }
        return 0;
    }
    const auto table = growthlab::moment_table(n);
    if (format == "json") {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (std::int64_t i = 1; i <= n; ++i) {
            nlohmann::ordered_json j;
            j["n"] = i;
            j["mu"] = table.mu[static_cast<std::size_t>(i - 1)];
            j["sigma2"] = table.sigma2[static_cast<std::size_t>(i - 1)];
            arr.push_back(std::move(j));
        }
        out.stream() << arr.dump(2) << "\n";
    } else {
        out.stream() << "n,mu,sigma2\r\n";
        for (std::int64_t i = 1; i <= n; ++i)
            out.stream() << i << ',' << fmt(table.mu[static_cast<std::size_t>(i - 1)]) << ','
                         << fmt(table.sigma2[static_cast<std::size_t>(i - 1)]) << "\r\n";
    }
    return 0;
}

int run_limits(const std::vector<double>& grid, double t_ref, const std::string& format,
               const std::string& out_path) {
    Output out(out_path);
    auto cov_vs_ref = [t_ref](double t) {
        const double s = std::min(t, t_ref), u = std::max(t, t_ref);
        return growthlab::cov_kernel(s, u);
    };
    if (format == "json") {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (double t : grid) {
            nlohmann::ordered_json j;
            j["t"] = t;
            j["phi"] = growthlab::phi(t);
            j["psi"] = growthlab::psi(t);
            j["cov_t_ref"] = cov_vs_ref(t);
            arr.push_back(std::move(j));
        }
        out.stream() << arr.dump(2) << "\n";
    } else {
        out.stream() << "t,phi,psi,cov_t_ref\r\n";
        for (double t : grid)
            out.stream() << fmt(t) << ',' << fmt(growthlab::phi(t)) << ','
                         << fmt(growthlab::psi(t)) << ',' << fmt(cov_vs_ref(t)) << "\r\n";
    }
    return 0;
}

int run_diffusion(const std::vector<double>& grid, std::int64_t reps, std::uint64_t seed,
                  const std::string& method, const std::string& format,
                  const std::string& out_path) {
    Output out(out_path);
    const auto m = method == "euler" ? growthlab::DiffusionMethod::kEuler
                                     : growthlab::DiffusionMethod::kExact;
    if (format == "json") {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (std::int64_t rep = 0; rep < reps; ++rep) {
            const auto path = growthlab::simulate_limit_diffusion(
                grid, {seed, static_cast<std::uint64_t>(rep)}, m);
            nlohmann::ordered_json j;
            j["path"] = rep;
            j["t"] = path.grid;
            j["y"] = path.y;
            arr.push_back(std::move(j));
        }
        out.stream() << arr.dump(2) << "\n";
    } else {
        out.stream() << "path,t,y\r\n";
        for (std::int64_t rep = 0; rep < reps; ++rep) {
            const auto path = growthlab::simulate_limit_diffusion(
                grid, {seed, static_cast<std::uint64_t>(rep)}, m);
            for (std::size_t i = 0; i < path.grid.size(); ++i)
                out.stream() << rep << ',' << fmt(path.grid[i]) << ',' << fmt(path.y[i])
                             << "\r\n";
        }
    }
    return 0;
}

struct SuiteParams {
    std::int64_t n = 0;
    std::int64_t reps = 0;
    std::int64_t tail = 2;
    double horizon = 3.0;
};

std::vector<GofReport> run_suite(const std::string& name, SuiteParams p,
                                 const VerifyOptions& opts) {
    if (name == "moments") {
        if (p.n == 0) p.n = 8;
        if (p.reps == 0) p.reps = 100000;
        return growthlab::check_moments(p.n, p.reps, opts);
    }
    if (name == "equivalence") {
        if (p.n == 0) p.n = 4;
        if (p.reps == 0) p.reps = 100000;
        return growthlab::check_sampler_equivalence(p.n, p.reps, opts);
    }
    if (name == "martingales") {
        if (p.n == 0) p.n = 100;
        if (p.reps == 0) p.reps = 10000;
        return growthlab::check_martingales(p.n, p.reps, opts);
    }
    if (name == "fluid") {
        if (p.reps == 0) p.reps = 100;
        std::vector<std::int64_t> ns{500, 2000};
        if (p.n != 0) ns = {p.n / 4, p.n};
        return growthlab::check_fluid_limit(ns, p.reps, opts);
    }
    if (name == "first-edge") {
        if (p.n == 0) p.n = 1000000;
        if (p.reps == 0) p.reps = 10000;
        return growthlab::check_first_edge(p.n, p.reps, opts);
    }
    if (name == "early-poisson") {
        if (p.n == 0) p.n = 1000000;
        if (p.reps == 0) p.reps = 10000;
        return growthlab::check_early_poisson(p.n, p.horizon, p.reps, opts);
    }
    if (name == "gaussian") {
        if (p.n == 0) p.n = 2000;
        if (p.reps == 0) p.reps = 4000;
        return growthlab::check_gaussian_fluctuations(p.n, p.reps, {}, opts);
    }
    if (name == "last-stage") {
        if (p.n == 0) p.n = 1000;
        if (p.reps == 0) p.reps = 1000;
        return growthlab::check_last_stage(p.n, p.reps, p.tail, opts);
    }
    throw CLI::ValidationError("--suite", "unknown suite: " + name);
}

int run_verify(const std::string& suites, SuiteParams params, const VerifyOptions& opts,
               const std::string& out_path) {
    Output out(out_path);
    nlohmann::ordered_json result = nlohmann::ordered_json::array();
    bool ok = true;
    std::stringstream ss(suites);
    std::string name;
    while (std::getline(ss, name, ',')) {
        if (name.empty()) continue;
        const auto reports = run_suite(name, params, opts);
        for (const auto& r : reports) {
            auto j = r.to_json();
            j["suite"] = name;
            result.push_back(std::move(j));
        }
        ok = ok && growthlab::all_pass(reports);
    }
    out.stream() << result.dump(2) << "\n";
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"growthlab: random graph growth model simulator and verifier"};
    app.require_subcommand(1);

    std::int64_t n = 0, reps = 1, tail = 2;
    std::uint64_t seed = env_seed();
    int threads = 0;
    double horizon = 3.0, t_ref = 0.3;
    std::string format = "csv", out_path, sampler = "urn", method = "exact";
    std::string t_grid_spec = "0,0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1";
    std::string numeric_mode = "float", suites = "moments,equivalence,martingales";
    bool track_edges = false;

    auto add_common = [&](CLI::App* cmd, bool needs_n) {
        auto* opt = cmd->add_option("--N", n, "number of vertices");
        if (needs_n) opt->required()->check(CLI::Range(std::int64_t(2), std::int64_t(100000000)));
        cmd->add_option("--seed", seed, "master seed (env GROWTHLAB_SEED as fallback)");
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--out", out_path, "output file (default stdout)");
        cmd->add_option("--threads", threads, "worker threads, 0 = auto");
    };

    auto* sim = app.add_subcommand("simulate", "simulate trajectories");
    add_common(sim, true);
    sim->add_option("--reps", reps, "number of replicates")->check(CLI::PositiveNumber);
    sim->add_option("--sampler", sampler, "sampler to use")
        ->check(CLI::IsMember({"pool", "urn", "insertion"}));
    sim->add_flag("--track-edges", track_edges, "record edge identities and times (pool only)");

    auto* mom = app.add_subcommand("moments", "exact mean/variance tables");
    add_common(mom, true);
    mom->add_option("--numeric-mode", numeric_mode, "rational or float")
        ->check(CLI::IsMember({"rational", "float"}));

    auto* lim = app.add_subcommand("limits", "limit curves phi, psi and covariance");
    add_common(lim, false);
    lim->add_option("--t-grid", t_grid_spec, "comma-separated grid in [0,1]");
    lim->add_option("--t-ref", t_ref, "reference time for the covariance column");

    auto* dif = app.add_subcommand("diffusion", "sample the limit diffusion");
    add_common(dif, false);
    dif->add_option("--reps", reps, "number of paths")->check(CLI::PositiveNumber);
    dif->add_option("--t-grid", t_grid_spec, "comma-separated grid in [0,1]");
    dif->add_option("--method", method, "exact or euler")
        ->check(CLI::IsMember({"exact", "euler"}));

    auto* ver = app.add_subcommand("verify", "run verification suites");
    add_common(ver, false);
    std::int64_t ver_reps = 0;
    ver->add_option("--reps", ver_reps, "replicates per suite (0 = suite default)");
    ver->add_option("--suite", suites, "comma-separated subset of: moments,equivalence,"
                                       "martingales,fluid,first-edge,early-poisson,gaussian,"
                                       "last-stage");
    ver->add_option("--m", tail, "tail length for the last-stage suite");
    ver->add_option("--T", horizon, "horizon for the early-poisson suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sim->parsed())
            return run_simulate(n, reps, seed, sampler, track_edges, format, out_path);
        if (mom->parsed()) return run_moments(n, numeric_mode, format, out_path);
        if (lim->parsed()) return run_limits(parse_grid(t_grid_spec), t_ref, format, out_path);
        if (dif->parsed())
            return run_diffusion(parse_grid(t_grid_spec), reps, seed, method, format, out_path);
        if (ver->parsed()) {
            VerifyOptions opts;
            opts.master_seed = seed;
            opts.threads = threads;
            SuiteParams params;
            params.n = n;
            params.reps = ver_reps;
            params.tail = tail;
            params.horizon = horizon;
            return run_verify(suites, params, opts, out_path);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

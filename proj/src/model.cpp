#include "growthlab/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace growthlab {

namespace {

// Pool simulation keeps every virtual edge identity in memory.
constexpr std::int64_t kMaxPoolEdges = 50'000'000;

void check_urn(std::int64_t total, std::int64_t white) {
    if (white < 0 || total < white)
        throw std::invalid_argument("negative hypergeometric: need 0 <= K <= M");
    if (white == 0 && total > 0)
        throw std::invalid_argument("no white balls: increment undefined");
}

}  // namespace

void validate(const ModelParams& params) {
    if (params.n_vertices < 2)
        throw std::invalid_argument("ModelParams: N must be at least 2");
}

double neg_hypergeom_log_pmf(std::int64_t total, std::int64_t white, std::int64_t ell) {
    check_urn(total, white);
    if (ell < 0 || ell > total - white)
        throw std::invalid_argument("negative hypergeometric: ell outside support");
    if (total == 0) return 0.0;  // empty urn: zero draws with probability 1
    const double M = static_cast<double>(total);
    const double K = static_cast<double>(white);
    const double l = static_cast<double>(ell);
    // C(M-l-1, K-1) / C(M, K)
    return std::lgamma(M - l) - std::lgamma(K) - std::lgamma(M - K - l + 1.0) -
           std::lgamma(M + 1.0) + std::lgamma(K + 1.0) + std::lgamma(M - K + 1.0);
}

double neg_hypergeom_pmf(std::int64_t total, std::int64_t white, std::int64_t ell) {
    return std::exp(neg_hypergeom_log_pmf(total, white, ell));
}

std::int64_t neg_hypergeom_sample(std::int64_t total, std::int64_t white, Rng& rng) {
    check_urn(total, white);
    if (total == white) return 0;

    const std::int64_t black = total - white;
    const double mean = static_cast<double>(black) / static_cast<double>(white + 1);

    if (mean <= 32.0) {
        // inverse cdf via the ratio recurrence p_{l+1} = p_l (M-K-l)/(M-l-1)
        double u = rng.uniform();
        double p = static_cast<double>(white) / static_cast<double>(total);
        for (std::int64_t ell = 0; ell < black; ++ell) {
            if (u < p) return ell;
            u -= p;
            p *= static_cast<double>(black - ell) / static_cast<double>(total - ell - 1);
        }
        return black;  // fp rounding exhausted the mass
    }

    // Survival S(l) = P[X >= l] = C(M-l, K)... expressed through gammas:
    // log S(l) = lg(M-K+1) - lg(M-K-l+1) + lg(M-l+1) - lg(M+1).
    // X = max{ l : S(l) > U } located by binary search.
    const double base = std::lgamma(static_cast<double>(black) + 1.0) -
                        std::lgamma(static_cast<double>(total) + 1.0);
    const double log_u = std::log(rng.uniform_pos());
    auto log_surv = [&](std::int64_t ell) {
        return base + std::lgamma(static_cast<double>(total - ell) + 1.0) -
               std::lgamma(static_cast<double>(black - ell) + 1.0);
    };
    std::int64_t lo = 0, hi = black;  // invariant: log_surv(lo) > log_u
    while (lo < hi) {
        const std::int64_t mid = lo + (hi - lo + 1) / 2;
        if (log_surv(mid) > log_u)
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

Trajectory simulate_pool(const ModelParams& params, SeedSpec seed, bool track_edges) {
    validate(params);
    const std::int64_t N = params.n_vertices;
    if (choose2(N) > kMaxPoolEdges)
        throw std::invalid_argument(
            "simulate_pool: N(N-1)/2 exceeds the edge-tracking memory cap");

    Rng rng(seed);
    Trajectory traj;
    traj.n_vertices = N;
    traj.edge_counts.resize(static_cast<std::size_t>(N));
    if (track_edges) traj.edge_times.emplace();

    std::vector<std::pair<std::int32_t, std::int32_t>> pool_edges;
    pool_edges.reserve(static_cast<std::size_t>(std::min<std::int64_t>(choose2(N), 1 << 20)));

    const double total_events = static_cast<double>(N + choose2(N));
    std::int64_t n = 0, k = 0, event = 0;

    while (n < N || !pool_edges.empty()) {
        ++event;
        const std::int64_t virtual_vertices = N - n;
        const std::uint64_t pool_size =
            static_cast<std::uint64_t>(virtual_vertices + static_cast<std::int64_t>(pool_edges.size()));
        const std::uint64_t r = rng.uniform_below(pool_size);
        if (r < static_cast<std::uint64_t>(virtual_vertices)) {
            ++n;
            for (std::int32_t i = 1; i < n; ++i)
                pool_edges.emplace_back(i, static_cast<std::int32_t>(n));
            traj.edge_counts[static_cast<std::size_t>(n - 1)] = k;
            if (n == N) traj.delta_last = static_cast<std::int64_t>(pool_edges.size());
        } else {
            const std::size_t idx = static_cast<std::size_t>(r) - static_cast<std::size_t>(virtual_vertices);
            if (track_edges) {
                const auto [i, j] = pool_edges[idx];
                traj.edge_times->push_back(
                    {i, j, static_cast<double>(n) + static_cast<double>(event) / (total_events + 1.0)});
            }
            pool_edges[idx] = pool_edges.back();
            pool_edges.pop_back();
            ++k;
        }
    }
    return traj;
}

Trajectory simulate_urn(const ModelParams& params, SeedSpec seed) {
    validate(params);
    const std::int64_t N = params.n_vertices;
    Rng rng(seed);
    Trajectory traj;
    traj.n_vertices = N;
    traj.edge_counts.resize(static_cast<std::size_t>(N));

    std::int64_t k = 0;
    traj.edge_counts[0] = 0;
    for (std::int64_t n = 1; n < N; ++n) {
        const std::int64_t white = N - n;
        const std::int64_t total = white + choose2(n) - k;
        k += neg_hypergeom_sample(total, white, rng);
        traj.edge_counts[static_cast<std::size_t>(n)] = k;
    }
    traj.delta_last = choose2(N) - k;
    return traj;
}

WeakComposition simulate_insertion(const ModelParams& params, SeedSpec seed) {
    validate(params);
    const std::int64_t N = params.n_vertices;
    Rng rng(seed);

    // parts[g] counts black balls between white g and white g+1
    // (parts[0] before white 1, parts[N] after white N).
    WeakComposition comp;
    comp.parts.assign(static_cast<std::size_t>(N + 1), 0);

    for (std::int64_t n = 3; n <= N; ++n) {
        // the region strictly right of white ball n-1 spans gaps n-1..N
        std::int64_t region_balls = 0;
        for (std::int64_t g = n - 1; g <= N; ++g) region_balls += comp.parts[static_cast<std::size_t>(g)];
        for (std::int64_t insertion = 0; insertion < n - 2; ++insertion) {
            const std::int64_t positions = region_balls + (N - n + 2);
            std::int64_t r = static_cast<std::int64_t>(rng.uniform_below(static_cast<std::uint64_t>(positions)));
            for (std::int64_t g = n - 1; g <= N; ++g) {
                const std::int64_t slots = comp.parts[static_cast<std::size_t>(g)] + 1;
                if (r < slots) {
                    ++comp.parts[static_cast<std::size_t>(g)];
                    break;
                }
                r -= slots;
            }
            ++region_balls;
        }
    }
    // Edges i <- N enter the pool only at hour N and are forced into the
    // trailing segment.
    comp.parts[static_cast<std::size_t>(N)] += N - 1;
    return comp;
}

Trajectory composition_to_trajectory(std::int64_t n_vertices, const WeakComposition& comp) {
    if (static_cast<std::int64_t>(comp.parts.size()) != n_vertices + 1)
        throw std::invalid_argument("composition_to_trajectory: need N+1 parts");
    Trajectory traj;
    traj.n_vertices = n_vertices;
    traj.edge_counts.resize(static_cast<std::size_t>(n_vertices));
    std::int64_t x = 0;
    for (std::int64_t n = 1; n <= n_vertices; ++n) {
        x += comp.parts[static_cast<std::size_t>(n - 1)];
        traj.edge_counts[static_cast<std::size_t>(n - 1)] = x;
    }
    traj.delta_last = comp.parts[static_cast<std::size_t>(n_vertices)];
    return traj;
}

double edge_probability(std::int64_t n_total, std::int64_t n, std::int64_t i, std::int64_t j) {
    if (!(1 <= i && i < j && j <= n && n <= n_total))
        throw std::invalid_argument("edge_probability: need 1 <= i < j <= n <= N");
    return static_cast<double>(n - j) / static_cast<double>(n_total - j + 1);
}

AgedRecentSplit split_aged_recent(const Trajectory& traj, std::int64_t m, std::int64_t n) {
    if (!traj.edge_times)
        throw std::invalid_argument("split_aged_recent: trajectory lacks edge_times");
    if (!(1 <= m && m < n && n <= traj.n_vertices))
        throw std::invalid_argument("split_aged_recent: need 1 <= m < n <= N");

    AgedRecentSplit split{m, n, 0, 0};
    for (const EdgeEvent& e : *traj.edge_times) {
        const double t = e.time;
        if (t >= static_cast<double>(n)) continue;  // occupied after hour n
        if (e.j <= m) {
            if (t > static_cast<double>(m)) ++split.aged;
        } else {
            ++split.recent;  // origin entered after hour m, occupied by n
        }
    }
    return split;
}

}  // namespace growthlab

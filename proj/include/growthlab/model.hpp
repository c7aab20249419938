#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "growthlab/rng.hpp"

namespace growthlab {

struct ModelParams {
    std::int64_t n_vertices = 2;  // N
};

void validate(const ModelParams& params);

inline std::int64_t choose2(std::int64_t n) { return n * (n - 1) / 2; }

// One edge occupancy event. time lies strictly between whole hours:
// an edge occupied between hours h and h+1 carries time in (h, h+1),
// with the fractional part encoding the global event index.
struct EdgeEvent {
    std::int32_t i = 0;  // smaller endpoint
    std::int32_t j = 0;  // larger endpoint (edge i <- j)
    double time = 0.0;
};

// Edge-count path X_1..X_N plus the terminal increment.
struct Trajectory {
    std::int64_t n_vertices = 0;
    std::vector<std::int64_t> edge_counts;  // edge_counts[n-1] = X_n
    std::int64_t delta_last = 0;            // edges missing in G_N
    std::optional<std::vector<EdgeEvent>> edge_times;

    std::int64_t x(std::int64_t n) const { return edge_counts[n - 1]; }
};

struct UrnState {
    std::int64_t total = 0;  // M
    std::int64_t white = 0;  // K
};

struct WeakComposition {
    // parts.size() == N+1; parts sum to N(N-1)/2.
    // parts[i] is distributed as the increment entering hour i+1;
    // the final part aggregates everything after the last vertex.
    std::vector<std::int64_t> parts;
};

struct AgedRecentSplit {
    std::int64_t m = 0;
    std::int64_t n = 0;
    std::int64_t aged = 0;    // edges i<-j, j <= m, occupied in hours (m, n]
    std::int64_t recent = 0;  // edges with origin hour in (m, n], occupied by n
};

// pmf of the number of black balls drawn without replacement before the
// first white, from total M balls of which K are white.
double neg_hypergeom_pmf(std::int64_t total, std::int64_t white, std::int64_t ell);
double neg_hypergeom_log_pmf(std::int64_t total, std::int64_t white, std::int64_t ell);

// Exact draw. Uses the inverse-cdf ratio recurrence when the expected
// value is small and a binary search on the log-survival otherwise.
std::int64_t neg_hypergeom_sample(std::int64_t total, std::int64_t white, Rng& rng);

// Event-level simulation with the explicit pool of virtual vertices
// and edges. Edge identities are tracked throughout; edge_times is
// populated iff track_edges.
Trajectory simulate_pool(const ModelParams& params, SeedSpec seed, bool track_edges = false);

// Markov-chain simulation of (X_n) alone via negative hypergeometric
// increments. Cost O(N + total edges).
Trajectory simulate_urn(const ModelParams& params, SeedSpec seed);

// Insertion construction: hours 1 and 2 idle, in hour n the balls
// scheduled right of white n-1 are inserted one by one; everything
// after the last white ball forms the terminal part.
WeakComposition simulate_insertion(const ModelParams& params, SeedSpec seed);

// Builds the Trajectory encoded by a weak composition.
Trajectory composition_to_trajectory(std::int64_t n_vertices, const WeakComposition& comp);

// P[edge i<-j occupied at hour n] = (n-j)/(N-j+1).
double edge_probability(std::int64_t n_total, std::int64_t n, std::int64_t i, std::int64_t j);

AgedRecentSplit split_aged_recent(const Trajectory& traj, std::int64_t m, std::int64_t n);

}  // namespace growthlab

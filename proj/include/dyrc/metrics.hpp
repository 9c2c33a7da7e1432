#pragma once

#include <algorithm>
#include <cstddef>
#include <queue>
#include <vector>

#include "dyrc/error.hpp"
#include "dyrc/graph.hpp"
#include "dyrc/spectral.hpp"

namespace dyrc {

struct NetworkMetrics {
    double nu = 0.0;     // spectral radius
    double rho = 0.0;    // density
    double k_in = 0.0;   // mean in-degree
    double k_out = 0.0;  // mean out-degree
    double c = 0.0;      // global (average local) clustering coefficient
    double b = 0.0;      // average betweenness centrality
};

/// Neighbour lists of the undirected support: i ~ j iff w(i,j) != 0 or w(j,i) != 0.
[[nodiscard]] inline std::vector<std::vector<std::size_t>> undirected_support(const WeightedDigraph& g) {
    const auto n = g.n();
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && (g.has_edge(i, j) || g.has_edge(j, i))) adj[i].push_back(j);
    return adj;
}

/// Off-diagonal arcs over N(N-1). For an undirected graph this is 2E/(N(N-1));
/// for a directed one its expectation under G(n, p) is p.
[[nodiscard]] inline double density(const WeightedDigraph& g) {
    const auto n = static_cast<double>(g.n());
    return static_cast<double>(g.arc_count()) / (n * (n - 1.0));
}

/// Mean over v of 2T(v) / (k(v)(k(v) - 1)), with nodes of degree < 2 contributing 0.
[[nodiscard]] inline double average_clustering(const std::vector<std::vector<std::size_t>>& adj) {
    const auto n = adj.size();
    if (n == 0) return 0.0;
    std::vector<char> mark(n, 0);
    double total = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
        const auto& nv = adj[v];
        const auto k = nv.size();
        if (k < 2) continue;
        for (auto u : nv) mark[u] = 1;
        std::size_t links = 0;  // each neighbour-neighbour edge counted twice
        for (auto u : nv)
            for (auto w : adj[u])
                if (mark[w]) ++links;
        for (auto u : nv) mark[u] = 0;
        const double triangles = static_cast<double>(links) / 2.0;
        total += 2.0 * triangles / (static_cast<double>(k) * static_cast<double>(k - 1));
    }
    return total / static_cast<double>(n);
}

/// Mean over v of sum_{s<w, s,w != v} sigma(s,w|v) / sigma(s,w) on an
/// unweighted undirected graph. Brandes' accumulation over ordered sources,
/// halved for unordered pairs. No further normalization.
[[nodiscard]] inline double average_betweenness(const std::vector<std::vector<std::size_t>>& adj) {
    const auto n = adj.size();
    if (n == 0) return 0.0;
    std::vector<double> centrality(n, 0.0);
    std::vector<double> sigma(n), delta(n);
    std::vector<long> dist(n);
    std::vector<std::size_t> order;
    order.reserve(n);
    for (std::size_t s = 0; s < n; ++s) {
        std::fill(sigma.begin(), sigma.end(), 0.0);
        std::fill(delta.begin(), delta.end(), 0.0);
        std::fill(dist.begin(), dist.end(), -1L);
        order.clear();
        sigma[s] = 1.0;
        dist[s] = 0;
        std::queue<std::size_t> frontier;
        frontier.push(s);
        while (!frontier.empty()) {
            const auto v = frontier.front();
            frontier.pop();
            order.push_back(v);
            for (auto w : adj[v]) {
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    frontier.push(w);
                }
                if (dist[w] == dist[v] + 1) sigma[w] += sigma[v];
            }
        }
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            const auto w = *it;
            for (auto v : adj[w])
                if (dist[v] == dist[w] - 1) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            if (w != s) centrality[w] += delta[w];
        }
    }
    double total = 0.0;
    for (double x : centrality) total += x / 2.0;
    return total / static_cast<double>(n);
}

/// All six metrics. Clustering and betweenness use the undirected support.
[[nodiscard]] inline NetworkMetrics metrics(const WeightedDigraph& g) {
    require(g.n() >= 2, Errc::InvalidArgument, "metrics need at least 2 nodes");
    const auto& w = g.weights();
    const auto n = static_cast<double>(g.n());
    const Eigen::ArrayXXd support = (w.array() != 0.0).cast<double>();

    NetworkMetrics m;
    m.nu = spectral_radius(g);
    m.rho = density(g);
    m.k_out = support.rowwise().sum().sum() / n;
    m.k_in = support.colwise().sum().sum() / n;
    const auto adj = undirected_support(g);
    m.c = average_clustering(adj);
    m.b = average_betweenness(adj);
    return m;
}

}  // namespace dyrc

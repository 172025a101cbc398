#include "qnet/graph_gen.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_set>

namespace qnet {

namespace {

std::uint64_t pack_edge(std::uint32_t u, std::uint32_t v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | v;
}

std::uint64_t max_edges(std::uint32_t n) {
    return static_cast<std::uint64_t>(n) * (n - 1) / 2;
}

void add_edge(UnderlyingGraph& g, std::unordered_set<std::uint64_t>& seen, std::uint32_t u,
              std::uint32_t v) {
    if (u > v) std::swap(u, v);
    seen.insert(pack_edge(u, v));
    g.edges.emplace_back(u, v);
    g.adjacency[u].push_back(v);
    g.adjacency[v].push_back(u);
}

}  // namespace

bool UnderlyingGraph::has_edge(std::uint32_t u, std::uint32_t v) const {
    if (u >= n || v >= n || u == v) return false;
    // scan the shorter adjacency list; degrees are small in practice
    const auto& list = adjacency[u].size() <= adjacency[v].size() ? adjacency[u] : adjacency[v];
    const std::uint32_t other = adjacency[u].size() <= adjacency[v].size() ? v : u;
    return std::find(list.begin(), list.end(), other) != list.end();
}

bool UnderlyingGraph::connected() const {
    if (n == 0) return false;
    std::vector<char> visited(n, 0);
    std::vector<std::uint32_t> stack{0};
    visited[0] = 1;
    std::uint32_t reached = 1;
    while (!stack.empty()) {
        const std::uint32_t u = stack.back();
        stack.pop_back();
        for (std::uint32_t v : adjacency[u]) {
            if (!visited[v]) {
                visited[v] = 1;
                ++reached;
                stack.push_back(v);
            }
        }
    }
    return reached == n;
}

void UnderlyingGraph::validate() const {
    if (adjacency.size() != n) throw Error("graph: adjacency size != n");
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(edges.size() * 2);
    for (const auto& [u, v] : edges) {
        if (u >= n || v >= n) throw Error("graph: endpoint out of range");
        if (u == v) throw Error("graph: self-loop");
        if (!seen.insert(pack_edge(u, v)).second) throw Error("graph: duplicate edge");
    }
    std::size_t degree_sum = 0;
    for (const auto& list : adjacency) degree_sum += list.size();
    if (degree_sum != 2 * edges.size()) throw Error("graph: adjacency out of sync");
    if (!connected()) throw Error("graph: not connected");
}

UnderlyingGraph er_gnm_connected(std::uint32_t n, std::uint64_t m, std::mt19937_64& rng,
                                 std::uint64_t max_attempts) {
    if (n < 2 || m < n - 1)
        throw InfeasibleError("er_gnm_connected: m < n-1 cannot be connected");
    if (m > max_edges(n))
        throw InfeasibleError("er_gnm_connected: m exceeds n(n-1)/2");

    std::uniform_int_distribution<std::uint32_t> pick(0, n - 1);
    for (std::uint64_t attempt = 0; attempt < max_attempts; ++attempt) {
        UnderlyingGraph g;
        g.n = n;
        g.adjacency.assign(n, {});
        g.edges.reserve(m);
        std::unordered_set<std::uint64_t> seen;
        seen.reserve(m * 2);
        // sample m distinct pairs without replacement
        while (g.edges.size() < m) {
            const std::uint32_t u = pick(rng);
            const std::uint32_t v = pick(rng);
            if (u == v || seen.count(pack_edge(u, v))) continue;
            add_edge(g, seen, u, v);
        }
        if (g.connected()) return g;
    }
    throw MaxRetriesError("er_gnm_connected: no connected draw in " +
                          std::to_string(max_attempts) + " attempts");
}

UnderlyingGraph ba_graph(std::uint32_t n, std::uint64_t m_total, std::mt19937_64& rng) {
    if (n < 2) throw InfeasibleError("ba_graph: need n >= 2");
    if (m_total < n - 1) throw InfeasibleError("ba_graph: m_total < n-1 cannot be connected");
    if (m_total > max_edges(n)) throw InfeasibleError("ba_graph: m_total exceeds n(n-1)/2");

    UnderlyingGraph g;
    g.n = n;
    g.adjacency.assign(n, {});
    g.edges.reserve(m_total);
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(m_total * 2);

    // Degree-proportional sampling pool: one entry per incident edge end.
    std::vector<std::uint32_t> pool{0, 1};
    add_edge(g, seen, 0, 1);

    for (std::uint32_t v = 2; v < n; ++v) {
        const std::uint64_t nodes_left = n - 1 - v;
        // keep one edge of budget for every node still to be placed
        const std::uint64_t budget = m_total - g.edges.size() - nodes_left;
        const std::uint32_t attach = static_cast<std::uint32_t>(std::min<std::uint64_t>(2, budget));
        std::uint32_t first = n;  // sentinel
        for (std::uint32_t j = 0; j < attach;) {
            const std::uint32_t target =
                pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
            if (target == first) continue;
            add_edge(g, seen, v, target);
            first = target;
            ++j;
        }
        for (std::uint32_t j = 0; j < attach; ++j) pool.push_back(v);
    }

    // Top up to the exact edge count with preferentially-sampled endpoints.
    std::uint64_t stale = 0;
    while (g.edges.size() < m_total) {
        const std::uint32_t u =
            pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
        const std::uint32_t v =
            pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
        if (u == v || seen.count(pack_edge(u, v))) {
            // near-complete graphs reject almost every preferential draw;
            // fall back to a uniform missing pair
            if (++stale > 64ULL * n + 1024) {
                std::vector<std::pair<std::uint32_t, std::uint32_t>> missing;
                for (std::uint32_t a = 0; a < n; ++a)
                    for (std::uint32_t b = a + 1; b < n; ++b)
                        if (!seen.count(pack_edge(a, b))) missing.emplace_back(a, b);
                while (g.edges.size() < m_total) {
                    const std::size_t i =
                        std::uniform_int_distribution<std::size_t>(0, missing.size() - 1)(rng);
                    add_edge(g, seen, missing[i].first, missing[i].second);
                    pool.push_back(missing[i].first);
                    pool.push_back(missing[i].second);
                    missing.erase(missing.begin() + static_cast<std::ptrdiff_t>(i));
                }
                break;
            }
            continue;
        }
        add_edge(g, seen, u, v);
        pool.push_back(u);
        pool.push_back(v);
        stale = 0;
    }
    return g;
}

void save_graph(const UnderlyingGraph& g, std::ostream& out) {
    out << "# graph v1\n" << g.n << ' ' << g.edges.size() << '\n';
    for (const auto& [u, v] : g.edges) out << u << ' ' << v << '\n';
}

UnderlyingGraph load_graph(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("# graph v1", 0) != 0)
        throw ParseError("missing '# graph v1' header");
    std::uint32_t n = 0;
    std::uint64_t m = 0;
    if (!(in >> n >> m)) throw ParseError("bad graph size line");
    UnderlyingGraph g;
    g.n = n;
    g.adjacency.assign(n, {});
    g.edges.reserve(m);
    std::unordered_set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < m; ++i) {
        std::uint32_t u, v;
        if (!(in >> u >> v)) throw ParseError("graph: expected " + std::to_string(m) + " edges");
        if (u == v || u >= n || v >= n) throw ParseError("graph: bad edge");
        add_edge(g, seen, u, v);
    }
    g.validate();
    return g;
}

}  // namespace qnet

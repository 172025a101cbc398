#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <utility>
#include <vector>

#include "qnet/errors.hpp"

namespace qnet {

/// Hidden graph superimposed on a question set: simple, connected, with an
/// exact edge count.
struct UnderlyingGraph {
    std::uint32_t n = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // u < v
    std::vector<std::vector<std::uint32_t>> adjacency;           // size n

    std::size_t num_edges() const { return edges.size(); }
    bool has_edge(std::uint32_t u, std::uint32_t v) const;
    bool connected() const;

    /// Checks simplicity, adjacency consistency and connectivity;
    /// throws Error on violation. Generators call this before returning.
    void validate() const;
};

/// Uniform G(n, m) conditioned on connectivity, by rejection: regenerate
/// until connected (unbiased), up to max_attempts.
/// Throws InfeasibleError (m < n-1 or m > n(n-1)/2) or MaxRetriesError.
UnderlyingGraph er_gnm_connected(std::uint32_t n, std::uint64_t m, std::mt19937_64& rng,
                                 std::uint64_t max_attempts = 10000);

/// Preferential-attachment graph with exactly m_total edges: nodes arrive
/// one at a time and attach to up to two existing nodes chosen by degree,
/// then extra distinct preferentially-sampled edges top the count up to
/// m_total. Connected by construction.
/// Throws InfeasibleError (n < 2, m_total < n-1 or m_total > n(n-1)/2).
UnderlyingGraph ba_graph(std::uint32_t n, std::uint64_t m_total, std::mt19937_64& rng);

/// Text format: "# graph v1" header, "n m" line, then "u v" edge lines.
void save_graph(const UnderlyingGraph& g, std::ostream& out);
UnderlyingGraph load_graph(std::istream& in);

}  // namespace qnet

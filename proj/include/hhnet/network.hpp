#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "hhnet/degree_dist.hpp"
#include "hhnet/rng.hpp"

namespace hhnet {

struct Edge {
    std::uint32_t a = 0;
    std::uint32_t b = 0;
};

/// m households of n individuals plus the global configuration-model
/// multigraph. Individual i belongs to household i / n. Self-pairs and
/// repeated pairs are kept.
class Network {
  public:
    Network(std::size_t households, int household_size, std::vector<std::uint32_t> degrees,
            std::vector<Edge> edges, std::optional<std::uint32_t> dropped_owner);

    std::size_t households() const { return m_; }
    int household_size() const { return n_; }
    std::size_t individuals() const { return degrees_.size(); }
    std::size_t household_of(std::size_t individual) const { return individual / static_cast<std::size_t>(n_); }

    const std::vector<std::uint32_t> &degrees() const { return degrees_; }
    const std::vector<Edge> &edges() const { return edges_; }
    /// Owner of the half-edge discarded when the half-edge total was odd.
    std::optional<std::uint32_t> dropped_owner() const { return dropped_owner_; }

    /// Global neighbours of i, one entry per incident half-edge (a self-loop
    /// contributes i twice).
    std::span<const std::uint32_t> neighbours(std::size_t individual) const
    {
        return {neighbours_.data() + offsets_[individual], neighbours_.data() + offsets_[individual + 1]};
    }

  private:
    std::size_t m_;
    int n_;
    std::vector<std::uint32_t> degrees_;
    std::vector<Edge> edges_;
    std::optional<std::uint32_t> dropped_owner_;
    std::vector<std::size_t> offsets_;
    std::vector<std::uint32_t> neighbours_;
};

struct BuildOptions {
    /// Rebuild until there are no self-loops or parallel edges.
    bool require_simple = false;
    std::size_t max_attempts = 10000;
};

/// Uniform perfect matching of half-edges 0..half_edges-1 (shuffle, then
/// pair neighbours). With an odd count the last shuffled half-edge, a
/// uniformly random one, is left out and returned in `dropped`.
struct Matching {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::optional<std::size_t> dropped;
};
Matching random_matching(std::size_t half_edges, Rng &rng);

/// Degrees i.i.d. from `degree`, then a uniform half-edge matching.
Network build_network(std::size_t households, int household_size, const DegreeDistribution &degree, Rng &rng,
                      const BuildOptions &options = {});

/// Configuration-model pairing for a given degree sequence.
Network pair_degree_sequence(std::size_t households, int household_size, std::vector<std::uint32_t> degrees,
                             Rng &rng);

struct ImperfectionStats {
    std::size_t self_loops = 0;
    std::size_t parallel_edges = 0;
    std::size_t household_self_loops = 0;
    std::size_t household_parallel_edges = 0;
};

/// Exact counts. parallel_edges is the excess multiplicity over distinct
/// unordered non-loop pairs; the household versions do the same on the
/// quotient graph where each household is one vertex.
ImperfectionStats imperfection_stats(const Network &net);

/// Debug dumps: `src,dst` and `individual,household,degree`.
void write_edge_list_csv(const Network &net, std::ostream &out);
void write_degrees_csv(const Network &net, std::ostream &out);

} // namespace hhnet

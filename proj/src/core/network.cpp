#include "hhnet/network.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <string>
#include <tuple>

#include "hhnet/errors.hpp"

namespace hhnet {

Network::Network(std::size_t households, int household_size, std::vector<std::uint32_t> degrees,
                 std::vector<Edge> edges, std::optional<std::uint32_t> dropped_owner)
    : m_(households), n_(household_size), degrees_(std::move(degrees)), edges_(std::move(edges)),
      dropped_owner_(dropped_owner)
{
    const std::size_t count = degrees_.size();
    offsets_.assign(count + 1, 0);
    for (const Edge &e : edges_) {
        ++offsets_[e.a + 1];
        ++offsets_[e.b + 1];
    }
    for (std::size_t i = 0; i < count; ++i)
        offsets_[i + 1] += offsets_[i];
    neighbours_.resize(offsets_.back());
    std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (const Edge &e : edges_) {
        neighbours_[cursor[e.a]++] = e.b;
        neighbours_[cursor[e.b]++] = e.a;
    }
}

Matching random_matching(std::size_t half_edges, Rng &rng)
{
    std::vector<std::size_t> order(half_edges);
    for (std::size_t i = 0; i < half_edges; ++i)
        order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);

    Matching out;
    if (half_edges % 2 == 1) {
        out.dropped = order.back();
        order.pop_back();
    }
    out.pairs.reserve(order.size() / 2);
    for (std::size_t i = 0; i + 1 < order.size(); i += 2)
        out.pairs.emplace_back(order[i], order[i + 1]);
    return out;
}

Network pair_degree_sequence(std::size_t households, int household_size, std::vector<std::uint32_t> degrees,
                             Rng &rng)
{
    std::vector<std::uint32_t> owner;
    for (std::size_t i = 0; i < degrees.size(); ++i)
        owner.insert(owner.end(), degrees[i], static_cast<std::uint32_t>(i));

    Matching matching = random_matching(owner.size(), rng);
    std::vector<Edge> edges;
    edges.reserve(matching.pairs.size());
    for (const auto &[x, y] : matching.pairs)
        edges.push_back({owner[x], owner[y]});
    std::optional<std::uint32_t> dropped;
    if (matching.dropped)
        dropped = owner[*matching.dropped];
    return Network(households, household_size, std::move(degrees), std::move(edges), dropped);
}

Network build_network(std::size_t households, int household_size, const DegreeDistribution &degree, Rng &rng,
                      const BuildOptions &options)
{
    if (households < 1)
        throw InvalidParameter("network needs at least one household");
    if (household_size < 1)
        throw InvalidParameter("household size must be >= 1");
    const std::size_t count = households * static_cast<std::size_t>(household_size);
    if (count > std::numeric_limits<std::uint32_t>::max())
        throw InvalidParameter("population too large for 32-bit individual indices");

    for (std::size_t attempt = 0; attempt < std::max<std::size_t>(options.max_attempts, 1); ++attempt) {
        std::vector<std::uint32_t> degrees(count);
        for (auto &d : degrees) {
            const std::size_t k = degree.sample(rng);
            if (k > std::numeric_limits<std::uint32_t>::max())
                throw InvalidParameter("sampled degree exceeds 32-bit range");
            d = static_cast<std::uint32_t>(k);
        }
        Network net = pair_degree_sequence(households, household_size, std::move(degrees), rng);
        if (!options.require_simple)
            return net;
        const ImperfectionStats stats = imperfection_stats(net);
        if (stats.self_loops == 0 && stats.parallel_edges == 0)
            return net;
    }
    throw ConvergenceError("no simple network after " + std::to_string(options.max_attempts) + " attempts");
}

namespace {

// Sorted (min, max) keys; returns (loops, excess multiplicity of non-loops).
std::pair<std::size_t, std::size_t> loops_and_repeats(std::vector<std::pair<std::uint64_t, std::uint64_t>> keys)
{
    std::size_t loops = 0, repeats = 0;
    std::sort(keys.begin(), keys.end());
    for (std::size_t i = 0; i < keys.size(); ++i) {
        if (keys[i].first == keys[i].second)
            ++loops;
        else if (i > 0 && keys[i] == keys[i - 1])
            ++repeats;
    }
    return {loops, repeats};
}

} // namespace

ImperfectionStats imperfection_stats(const Network &net)
{
    std::vector<std::pair<std::uint64_t, std::uint64_t>> individual, household;
    individual.reserve(net.edges().size());
    household.reserve(net.edges().size());
    for (const Edge &e : net.edges()) {
        individual.emplace_back(std::min(e.a, e.b), std::max(e.a, e.b));
        const auto ha = net.household_of(e.a), hb = net.household_of(e.b);
        household.emplace_back(std::min(ha, hb), std::max(ha, hb));
    }
    ImperfectionStats out;
    std::tie(out.self_loops, out.parallel_edges) = loops_and_repeats(std::move(individual));
    std::tie(out.household_self_loops, out.household_parallel_edges) = loops_and_repeats(std::move(household));
    return out;
}

void write_edge_list_csv(const Network &net, std::ostream &out)
{
    out << "src,dst\n";
    for (const Edge &e : net.edges())
        out << e.a << ',' << e.b << '\n';
}

void write_degrees_csv(const Network &net, std::ostream &out)
{
    out << "individual,household,degree\n";
    for (std::size_t i = 0; i < net.individuals(); ++i)
        out << i << ',' << net.household_of(i) << ',' << net.degrees()[i] << '\n';
}

} // namespace hhnet

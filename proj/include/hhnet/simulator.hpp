#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "hhnet/analytics.hpp"
#include "hhnet/network.hpp"
#include "hhnet/rng.hpp"

namespace hhnet {

struct EpidemicOutcome {
    std::size_t individuals_infected = 1; // includes the initial case
    std::size_t households_infected = 1;
    std::size_t initial_individual = 0;
};

/// Final outcome of one epidemic on `net`.
///
/// Percolation form: an infected individual i draws I_i, then would infect
/// each household-mate with probability 1 - exp(-lambda_L I_i) and each
/// global neighbour (per incident half-edge) with 1 - exp(-lambda_G I_i).
/// The outcome is the set reachable from the initial case. Arcs are drawn
/// lazily, when i is first reached.
EpidemicOutcome run_epidemic(const Network &net, const ModelParams &params, Rng &rng);

/// As run_epidemic with an explicit initial case and contact key. Every
/// uniform is a function of (key, individual, slot), so two calls with the
/// same key and different rates see identical underlying draws; the final
/// size is then monotone in lambda_G and lambda_L.
EpidemicOutcome run_epidemic_keyed(const Network &net, const ModelParams &params, std::uint64_t key,
                                   std::size_t initial_individual);

/// Pick the initial case per params.initial. Throws InvalidParameter when no
/// individual has the requested degree.
std::size_t choose_initial(const Network &net, const InitialMode &mode, Rng &rng);

inline constexpr double kDefaultCutoff = 0.15;

/// individuals_infected >= cutoff_fraction * m * n (boundary inclusive).
bool classify_major(const EpidemicOutcome &outcome, const Network &net, double cutoff_fraction = kDefaultCutoff);

struct BatchOptions {
    std::size_t households = 1000;
    std::size_t replicates = 2000;
    double cutoff_fraction = kDefaultCutoff;
    std::uint64_t seed = 1;
    unsigned threads = 0;       // 0: hardware concurrency
    bool fixed_network = false; // one network (from seed) shared by every replicate
};

struct ReplicateRecord {
    std::size_t replicate = 0;
    std::size_t final_size = 0;
    std::size_t households_infected = 0;
    bool is_major = false;
};

struct BatchSummary {
    std::size_t replicates = 0;
    double cutoff_fraction = kDefaultCutoff;
    std::size_t n_major = 0;
    double p_hat = 0.0;
    double p_se = 0.0;
    // Mean relative final size over major outbreaks; empty when n_major == 0.
    std::optional<double> z_hat;
    std::optional<double> z_se;
};

/// Replicate r uses a generator seeded from (seed, r) and, unless
/// fixed_network is set, its own freshly built network. The result does not
/// depend on the thread count.
BatchSummary run_batch(const ModelParams &params, const BatchOptions &options,
                       std::vector<ReplicateRecord> *records = nullptr);

/// p_hat, SE = sqrt(p(1-p)/n0); z_hat, SE = sd / sqrt(n1).
BatchSummary summarize(const std::vector<ReplicateRecord> &records, std::size_t population, double cutoff_fraction);

void write_replicates_csv(const std::vector<ReplicateRecord> &records, std::ostream &out);

} // namespace hhnet

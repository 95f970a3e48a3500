#include "hhnet/simulator.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>

#include "hhnet/errors.hpp"

namespace hhnet {

namespace {

// Slot layout of the hashed uniforms of one individual.
constexpr std::uint64_t kPeriodSlot = 0;
constexpr std::uint64_t kLocalSlotBase = 1;

} // namespace

std::size_t choose_initial(const Network &net, const InitialMode &mode, Rng &rng)
{
    if (mode.kind == InitialMode::Kind::UniformRandom)
        return std::uniform_int_distribution<std::size_t>(0, net.individuals() - 1)(rng);

    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < net.individuals(); ++i)
        if (net.degrees()[i] == mode.degree)
            candidates.push_back(i);
    if (candidates.empty())
        throw InvalidParameter("no individual with degree " + std::to_string(mode.degree) + " in the network");
    return candidates[std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(rng)];
}

EpidemicOutcome run_epidemic_keyed(const Network &net, const ModelParams &params, std::uint64_t key,
                                   std::size_t initial_individual)
{
    params.validate();
    if (params.n != net.household_size())
        throw InvalidParameter("household size mismatch: params.n = " + std::to_string(params.n) +
                               ", network n = " + std::to_string(net.household_size()));
    if (initial_individual >= net.individuals())
        throw std::out_of_range("initial individual outside the population");

    const std::size_t n = static_cast<std::size_t>(net.household_size());
    const std::uint64_t global_slot_base = kLocalSlotBase + n;

    std::vector<std::uint8_t> infected(net.individuals(), 0);
    std::vector<std::uint8_t> household_hit(net.households(), 0);
    std::vector<std::size_t> queue{initial_individual};
    queue.reserve(64);

    EpidemicOutcome out;
    out.initial_individual = initial_individual;
    out.individuals_infected = 0;
    out.households_infected = 0;
    auto infect = [&](std::size_t j) {
        infected[j] = 1;
        ++out.individuals_infected;
        auto &hit = household_hit[net.household_of(j)];
        if (!hit) {
            hit = 1;
            ++out.households_infected;
        }
        queue.push_back(j);
    };
    queue.clear();
    infect(initial_individual);

    for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::size_t i = queue[head];
        const double period = params.period.quantile(hashed_uniform(key, i, kPeriodSlot));
        const double q_local = contact_prob(params.lambda_L, period);
        const double q_global = contact_prob(params.lambda_G, period);

        if (q_local > 0.0) {
            const std::size_t base = net.household_of(i) * n;
            for (std::size_t t = 0; t < n; ++t) {
                const std::size_t j = base + t;
                if (j != i && !infected[j] && hashed_uniform(key, i, kLocalSlotBase + t) < q_local)
                    infect(j);
            }
        }
        if (q_global > 0.0) {
            const auto nbrs = net.neighbours(i);
            for (std::size_t s = 0; s < nbrs.size(); ++s) {
                const std::size_t j = nbrs[s];
                if (!infected[j] && hashed_uniform(key, i, global_slot_base + s) < q_global)
                    infect(j);
            }
        }
    }
    return out;
}

EpidemicOutcome run_epidemic(const Network &net, const ModelParams &params, Rng &rng)
{
    const std::size_t initial = choose_initial(net, params.initial, rng);
    const std::uint64_t key = rng();
    return run_epidemic_keyed(net, params, key, initial);
}

bool classify_major(const EpidemicOutcome &outcome, const Network &net, double cutoff_fraction)
{
    return static_cast<double>(outcome.individuals_infected) >=
           cutoff_fraction * static_cast<double>(net.individuals());
}

BatchSummary summarize(const std::vector<ReplicateRecord> &records, std::size_t population, double cutoff_fraction)
{
    BatchSummary out;
    out.replicates = records.size();
    out.cutoff_fraction = cutoff_fraction;
    long double sum = 0.0L, sum_sq = 0.0L;
    for (const auto &r : records) {
        if (!r.is_major)
            continue;
        ++out.n_major;
        const long double z = static_cast<long double>(r.final_size) / static_cast<long double>(population);
        sum += z;
        sum_sq += z * z;
    }
    if (out.replicates == 0)
        return out;
    const double n0 = static_cast<double>(out.replicates);
    out.p_hat = static_cast<double>(out.n_major) / n0;
    out.p_se = std::sqrt(out.p_hat * (1.0 - out.p_hat) / n0);
    if (out.n_major > 0) {
        const long double n1 = static_cast<long double>(out.n_major);
        const long double mean = sum / n1;
        out.z_hat = static_cast<double>(mean);
        if (out.n_major > 1) {
            const long double var = std::max((sum_sq - n1 * mean * mean) / (n1 - 1.0L), 0.0L);
            out.z_se = static_cast<double>(std::sqrt(var / n1));
        }
    }
    return out;
}

BatchSummary run_batch(const ModelParams &params, const BatchOptions &options, std::vector<ReplicateRecord> *records)
{
    params.validate();
    if (options.replicates < 1)
        throw InvalidParameter("run_batch needs at least one replicate");
    if (options.households < 1)
        throw InvalidParameter("run_batch needs at least one household");
    if (!(options.cutoff_fraction >= 0.0 && options.cutoff_fraction <= 1.0))
        throw InvalidParameter("cutoff fraction must lie in [0, 1]");

    std::optional<Network> shared;
    if (options.fixed_network) {
        Rng net_rng(derive_seed(options.seed, ~std::uint64_t{0}));
        shared.emplace(build_network(options.households, params.n, params.degree, net_rng));
    }

    std::vector<ReplicateRecord> results(options.replicates);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        try {
            for (std::size_t r = next++; r < options.replicates; r = next++) {
                Rng rng(derive_seed(options.seed, r));
                std::optional<Network> own;
                if (!shared)
                    own.emplace(build_network(options.households, params.n, params.degree, rng));
                const Network &net = shared ? *shared : *own;
                const EpidemicOutcome outcome = run_epidemic(net, params, rng);
                results[r] = {r, outcome.individuals_infected, outcome.households_infected,
                              classify_major(outcome, net, options.cutoff_fraction)};
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure)
                failure = std::current_exception();
            next = options.replicates;
        }
    };

    unsigned threads = options.threads ? options.threads : std::max(1U, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, options.replicates));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back(worker);
    }
    if (failure)
        std::rethrow_exception(failure);

    const std::size_t population = options.households * static_cast<std::size_t>(params.n);
    BatchSummary summary = summarize(results, population, options.cutoff_fraction);
    if (records)
        *records = std::move(results);
    return summary;
}

void write_replicates_csv(const std::vector<ReplicateRecord> &records, std::ostream &out)
{
    out << "replicate,final_size,households_infected,is_major\n";
    for (const auto &r : records)
        out << r.replicate << ',' << r.final_size << ',' << r.households_infected << ',' << (r.is_major ? 1 : 0)
            << '\n';
}

} // namespace hhnet

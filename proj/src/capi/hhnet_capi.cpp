#include "hhnet.h"

#include <cstring>
#include <fstream>
#include <string>

#include "hhnet/analytics.hpp"
#include "hhnet/errors.hpp"
#include "hhnet/network.hpp"
#include "hhnet/simulator.hpp"

struct hhnet_degree {
    hhnet::DegreeDistribution value;
};
struct hhnet_period {
    hhnet::InfectiousPeriod value;
};
struct hhnet_model {
    hhnet::ModelParams value;
};
struct hhnet_network {
    hhnet::Network value;
};

namespace {

thread_local std::string last_error;

hhnet_status fail(hhnet_status status, const std::string &message)
{
    last_error = message;
    return status;
}

// Maps exceptions from the core onto status codes.
template <class F>
hhnet_status guarded(F &&body)
{
    try {
        body();
        last_error.clear();
        return HHNET_OK;
    } catch (const hhnet::InvalidParameter &e) {
        return fail(HHNET_ERR_INVALID_ARGUMENT, e.what());
    } catch (const hhnet::DomainError &e) {
        return fail(HHNET_ERR_DOMAIN, e.what());
    } catch (const hhnet::DegenerateError &e) {
        return fail(HHNET_ERR_DEGENERATE, e.what());
    } catch (const hhnet::ConditioningError &e) {
        return fail(HHNET_ERR_CONDITIONING, e.what());
    } catch (const hhnet::ConvergenceError &e) {
        return fail(HHNET_ERR_NO_CONVERGENCE, e.what());
    } catch (const hhnet::NoRootError &e) {
        return fail(HHNET_ERR_NO_ROOT, e.what());
    } catch (const hhnet::ModeError &e) {
        return fail(HHNET_ERR_MODE, e.what());
    } catch (const std::out_of_range &e) {
        return fail(HHNET_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::bad_alloc &) {
        return fail(HHNET_ERR_INTERNAL, "out of memory");
    } catch (const std::exception &e) {
        return fail(HHNET_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(HHNET_ERR_INTERNAL, "unknown error");
    }
}

#define HHNET_REQUIRE(ptr)                                                                                   \
    do {                                                                                                     \
        if (!(ptr))                                                                                          \
            return fail(HHNET_ERR_INVALID_ARGUMENT, #ptr " must not be null");                               \
    } while (0)

std::size_t cap_or_default(size_t tail_cap)
{
    return tail_cap == 0 ? hhnet::DegreeDistribution::kDefaultTailCap : tail_cap;
}

template <class Make>
hhnet_status make_degree(hhnet_degree **out, Make &&make)
{
    HHNET_REQUIRE(out);
    *out = nullptr;
    return guarded([&] { *out = new hhnet_degree{make()}; });
}

template <class Make>
hhnet_status make_period(hhnet_period **out, Make &&make)
{
    HHNET_REQUIRE(out);
    *out = nullptr;
    return guarded([&] { *out = new hhnet_period{make()}; });
}

hhnet_method to_c(hhnet::PgfMethod method)
{
    switch (method) {
    case hhnet::PgfMethod::ClosedFormFixed:
        return HHNET_METHOD_CLOSED_FORM_FIXED;
    case hhnet::PgfMethod::ClosedFormZeroInf:
        return HHNET_METHOD_CLOSED_FORM_ZERO_INF;
    case hhnet::PgfMethod::ClosedFormTriangular:
        return HHNET_METHOD_CLOSED_FORM_TRIANGULAR;
    case hhnet::PgfMethod::MonteCarloEmpirical:
        return HHNET_METHOD_MONTE_CARLO_EMPIRICAL;
    }
    return HHNET_METHOD_CLOSED_FORM_FIXED;
}

hhnet_status copy_mass(const hhnet::MassFunction &mass, double *out, size_t len)
{
    if (len < mass.size())
        return fail(HHNET_ERR_INVALID_ARGUMENT, "output buffer shorter than the household size");
    std::copy(mass.probs.begin(), mass.probs.end(), out);
    return HHNET_OK;
}

} // namespace

extern "C" {

const char *hhnet_version(void) { return "1.0.0"; }

const char *hhnet_last_error(void) { return last_error.c_str(); }

const char *hhnet_status_name(hhnet_status status)
{
    switch (status) {
    case HHNET_OK:
        return "ok";
    case HHNET_ERR_INVALID_ARGUMENT:
        return "invalid argument";
    case HHNET_ERR_DOMAIN:
        return "domain error";
    case HHNET_ERR_DEGENERATE:
        return "degenerate distribution";
    case HHNET_ERR_CONDITIONING:
        return "numerical conditioning";
    case HHNET_ERR_NO_CONVERGENCE:
        return "no convergence";
    case HHNET_ERR_NO_ROOT:
        return "no root";
    case HHNET_ERR_MODE:
        return "unsupported initial mode";
    case HHNET_ERR_IO:
        return "i/o error";
    case HHNET_ERR_INTERNAL:
        return "internal error";
    }
    return "unknown status";
}

const char *hhnet_method_name(hhnet_method method)
{
    switch (method) {
    case HHNET_METHOD_CLOSED_FORM_FIXED:
        return hhnet::method_name(hhnet::PgfMethod::ClosedFormFixed);
    case HHNET_METHOD_CLOSED_FORM_ZERO_INF:
        return hhnet::method_name(hhnet::PgfMethod::ClosedFormZeroInf);
    case HHNET_METHOD_CLOSED_FORM_TRIANGULAR:
        return hhnet::method_name(hhnet::PgfMethod::ClosedFormTriangular);
    case HHNET_METHOD_MONTE_CARLO_EMPIRICAL:
        return hhnet::method_name(hhnet::PgfMethod::MonteCarloEmpirical);
    }
    return "unknown";
}

/* degree distribution */

hhnet_status hhnet_degree_poisson(double mean, hhnet_degree **out)
{
    return make_degree(out, [&] { return hhnet::DegreeDistribution::poisson(mean); });
}

hhnet_status hhnet_degree_geometric(double success_prob, hhnet_degree **out)
{
    return make_degree(out, [&] { return hhnet::DegreeDistribution::geometric(success_prob); });
}

hhnet_status hhnet_degree_geometric_mean(double mean, hhnet_degree **out)
{
    return make_degree(out, [&] { return hhnet::DegreeDistribution::geometric_with_mean(mean); });
}

hhnet_status hhnet_degree_constant(size_t degree, hhnet_degree **out)
{
    return make_degree(out, [&] { return hhnet::DegreeDistribution::constant(degree); });
}

hhnet_status hhnet_degree_power_law(size_t k_star, double exponent, size_t flat_start, size_t tail_cap,
                                    hhnet_degree **out)
{
    return make_degree(out, [&] {
        return hhnet::DegreeDistribution::power_law(k_star, exponent, flat_start, cap_or_default(tail_cap));
    });
}

hhnet_status hhnet_degree_power_law_cutoff(double scale, double exponent, size_t tail_cap, hhnet_degree **out)
{
    return make_degree(out, [&] {
        return hhnet::DegreeDistribution::power_law_cutoff(scale, exponent, cap_or_default(tail_cap));
    });
}

void hhnet_degree_free(hhnet_degree *degree) { delete degree; }

hhnet_status hhnet_degree_moments(const hhnet_degree *degree, double *mean, double *variance)
{
    HHNET_REQUIRE(degree);
    if (mean)
        *mean = degree->value.mean();
    if (variance)
        *variance = degree->value.variance();
    return HHNET_OK;
}

hhnet_status hhnet_degree_pmf(const hhnet_degree *degree, size_t k, double *out)
{
    HHNET_REQUIRE(degree);
    HHNET_REQUIRE(out);
    return guarded([&] { *out = degree->value.pmf(k); });
}

hhnet_status hhnet_degree_pgf(const hhnet_degree *degree, double s, double *out)
{
    HHNET_REQUIRE(degree);
    HHNET_REQUIRE(out);
    return guarded([&] { *out = degree->value.pgf(s); });
}

hhnet_status hhnet_degree_describe(const hhnet_degree *degree, char *buf, size_t len)
{
    HHNET_REQUIRE(degree);
    HHNET_REQUIRE(buf);
    if (len == 0)
        return fail(HHNET_ERR_INVALID_ARGUMENT, "buffer length must be positive");
    const std::string text = degree->value.describe();
    const std::size_t n = std::min(text.size(), len - 1);
    std::memcpy(buf, text.data(), n);
    buf[n] = '\0';
    return HHNET_OK;
}

/* infectious period */

hhnet_status hhnet_period_fixed(double duration, hhnet_period **out)
{
    return make_period(out, [&] { return hhnet::InfectiousPeriod::fixed(duration); });
}

hhnet_status hhnet_period_zero_or_infinite(double p_infinite, hhnet_period **out)
{
    return make_period(out, [&] { return hhnet::InfectiousPeriod::zero_or_infinite(p_infinite); });
}

hhnet_status hhnet_period_exponential(double mean, hhnet_period **out)
{
    return make_period(out, [&] { return hhnet::InfectiousPeriod::exponential(mean); });
}

void hhnet_period_free(hhnet_period *period) { delete period; }

hhnet_status hhnet_period_laplace(const hhnet_period *period, double theta, double *out)
{
    HHNET_REQUIRE(period);
    HHNET_REQUIRE(out);
    return guarded([&] { *out = period->value.laplace(theta); });
}

/* household */

hhnet_status hhnet_local_final_size_dist(int n, double lambda_L, const hhnet_period *period, double *out, size_t len)
{
    HHNET_REQUIRE(period);
    HHNET_REQUIRE(out);
    hhnet_status copied = HHNET_OK;
    const hhnet_status status =
        guarded([&] { copied = copy_mass(hhnet::local_final_size_dist(n, lambda_L, period->value), out, len); });
    return status != HHNET_OK ? status : copied;
}

hhnet_status hhnet_susceptibility_set_dist(int n, double lambda_L, const hhnet_period *period, double *out,
                                           size_t len)
{
    HHNET_REQUIRE(period);
    HHNET_REQUIRE(out);
    hhnet_status copied = HHNET_OK;
    const hhnet_status status = guarded(
        [&] { copied = copy_mass(hhnet::susceptibility_set_dist(n, lambda_L, period->value), out, len); });
    return status != HHNET_OK ? status : copied;
}

/* model */

hhnet_status hhnet_model_create(int n, double lambda_L, double lambda_G, const hhnet_degree *degree,
                                const hhnet_period *period, hhnet_model **out)
{
    HHNET_REQUIRE(degree);
    HHNET_REQUIRE(period);
    HHNET_REQUIRE(out);
    *out = nullptr;
    return guarded([&] {
        hhnet::ModelParams params;
        params.n = n;
        params.lambda_L = lambda_L;
        params.lambda_G = lambda_G;
        params.degree = degree->value;
        params.period = period->value;
        params.validate();
        *out = new hhnet_model{std::move(params)};
    });
}

void hhnet_model_free(hhnet_model *model) { delete model; }

hhnet_status hhnet_model_set_lambda_local(hhnet_model *model, double lambda_L)
{
    HHNET_REQUIRE(model);
    return guarded([&] {
        hhnet::ModelParams trial = model->value;
        trial.lambda_L = lambda_L;
        trial.validate();
        model->value.lambda_L = lambda_L;
    });
}

hhnet_status hhnet_model_set_lambda_global(hhnet_model *model, double lambda_G)
{
    HHNET_REQUIRE(model);
    return guarded([&] {
        hhnet::ModelParams trial = model->value;
        trial.lambda_G = lambda_G;
        trial.validate();
        model->value.lambda_G = lambda_G;
    });
}

hhnet_status hhnet_model_set_initial_degree(hhnet_model *model, long long degree)
{
    HHNET_REQUIRE(model);
    model->value.initial = degree < 0 ? hhnet::InitialMode::uniform_random()
                                      : hhnet::InitialMode::specific_degree(static_cast<std::size_t>(degree));
    return HHNET_OK;
}

hhnet_status hhnet_model_set_monte_carlo(hhnet_model *model, size_t draws, uint64_t seed)
{
    HHNET_REQUIRE(model);
    if (draws < 2)
        return fail(HHNET_ERR_INVALID_ARGUMENT, "Monte Carlo PGFs need at least two draws");
    model->value.monte_carlo = {draws, seed};
    return HHNET_OK;
}

hhnet_status hhnet_model_degree_moments(const hhnet_model *model, double *mean, double *variance)
{
    HHNET_REQUIRE(model);
    if (mean)
        *mean = model->value.degree.mean();
    if (variance)
        *variance = model->value.degree.variance();
    return HHNET_OK;
}

hhnet_status hhnet_analyze(const hhnet_model *model, hhnet_analytics_result *out)
{
    HHNET_REQUIRE(model);
    HHNET_REQUIRE(out);
    return guarded([&] {
        const hhnet::AnalyticsReport r = hhnet::analyze(model->value);
        *out = {r.r_star, r.sigma, r.xi, r.p_major, r.z_final, to_c(r.method), r.pathological ? 1 : 0};
    });
}

hhnet_status hhnet_r_star(const hhnet_model *model, double *out)
{
    HHNET_REQUIRE(model);
    HHNET_REQUIRE(out);
    return guarded([&] { *out = hhnet::r_star(model->value); });
}

hhnet_status hhnet_critical_lambda_g(const hhnet_model *model, double *out)
{
    HHNET_REQUIRE(model);
    HHNET_REQUIRE(out);
    return guarded([&] { *out = hhnet::critical_lambda_g(model->value); });
}

/* simulation */

hhnet_batch_options hhnet_batch_options_default(void)
{
    const hhnet::BatchOptions d;
    return {d.households, d.replicates, d.cutoff_fraction, d.seed, d.threads, d.fixed_network ? 1 : 0};
}

hhnet_status hhnet_run_batch(const hhnet_model *model, const hhnet_batch_options *options,
                             hhnet_batch_summary *summary, hhnet_replicate_record *records)
{
    HHNET_REQUIRE(model);
    HHNET_REQUIRE(options);
    HHNET_REQUIRE(summary);
    return guarded([&] {
        hhnet::BatchOptions opts;
        opts.households = options->households;
        opts.replicates = options->replicates;
        opts.cutoff_fraction = options->cutoff_fraction;
        opts.seed = options->seed;
        opts.threads = options->threads;
        opts.fixed_network = options->fixed_network != 0;
        std::vector<hhnet::ReplicateRecord> recs;
        const hhnet::BatchSummary s = hhnet::run_batch(model->value, opts, records ? &recs : nullptr);
        *summary = {s.replicates,          s.cutoff_fraction,    s.n_major, s.p_hat, s.p_se,
                    s.z_hat ? 1 : 0,       s.z_hat.value_or(0.0), s.z_se ? 1 : 0, s.z_se.value_or(0.0)};
        if (records)
            for (std::size_t i = 0; i < recs.size(); ++i)
                records[i] = {recs[i].replicate, recs[i].final_size, recs[i].households_infected,
                              recs[i].is_major ? 1 : 0};
    });
}

/* networks */

hhnet_status hhnet_network_build(size_t households, int n, const hhnet_degree *degree, uint64_t seed,
                                 int require_simple, hhnet_network **out)
{
    HHNET_REQUIRE(degree);
    HHNET_REQUIRE(out);
    *out = nullptr;
    return guarded([&] {
        hhnet::Rng rng(seed);
        hhnet::BuildOptions opts;
        opts.require_simple = require_simple != 0;
        *out = new hhnet_network{hhnet::build_network(households, n, degree->value, rng, opts)};
    });
}

void hhnet_network_free(hhnet_network *net) { delete net; }

hhnet_status hhnet_network_edge_count(const hhnet_network *net, size_t *out)
{
    HHNET_REQUIRE(net);
    HHNET_REQUIRE(out);
    *out = net->value.edges().size();
    return HHNET_OK;
}

hhnet_status hhnet_network_imperfections(const hhnet_network *net, hhnet_imperfections *out)
{
    HHNET_REQUIRE(net);
    HHNET_REQUIRE(out);
    return guarded([&] {
        const hhnet::ImperfectionStats s = hhnet::imperfection_stats(net->value);
        *out = {s.self_loops, s.parallel_edges, s.household_self_loops, s.household_parallel_edges};
    });
}

hhnet_status hhnet_network_write_csv(const hhnet_network *net, const char *edges_path, const char *degrees_path)
{
    HHNET_REQUIRE(net);
    HHNET_REQUIRE(edges_path);
    HHNET_REQUIRE(degrees_path);
    std::ofstream edges(edges_path, std::ios::binary);
    std::ofstream degrees(degrees_path, std::ios::binary);
    if (!edges || !degrees)
        return fail(HHNET_ERR_IO, "cannot open network dump files for writing");
    hhnet::write_edge_list_csv(net->value, edges);
    hhnet::write_degrees_csv(net->value, degrees);
    if (!edges || !degrees)
        return fail(HHNET_ERR_IO, "failed writing network dump files");
    last_error.clear();
    return HHNET_OK;
}

} // extern "C"

#include "hhnet/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hhnet/errors.hpp"

namespace hhnet {

void ModelParams::validate() const
{
    if (n < 1)
        throw InvalidParameter("household size n must be >= 1");
    if (!(lambda_L >= 0.0) || !std::isfinite(lambda_L))
        throw InvalidParameter("lambda_L must be a finite rate >= 0");
    if (!(lambda_G >= 0.0) || !std::isfinite(lambda_G))
        throw InvalidParameter("lambda_G must be a finite rate >= 0");
}

const char *method_name(PgfMethod method)
{
    switch (method) {
    case PgfMethod::ClosedFormFixed:
        return "ClosedFormFixed";
    case PgfMethod::ClosedFormZeroInf:
        return "ClosedFormZeroInf";
    case PgfMethod::ClosedFormTriangular:
        return "ClosedFormTriangular";
    case PgfMethod::MonteCarloEmpirical:
        return "MonteCarloEmpirical";
    }
    return "unknown";
}

namespace {

PgfMethod forward_method(const InfectiousPeriod &period)
{
    switch (period.kind()) {
    case PeriodKind::Fixed:
        return PgfMethod::ClosedFormFixed;
    case PeriodKind::ZeroOrInfinite:
        return PgfMethod::ClosedFormZeroInf;
    case PeriodKind::Exponential:
        return PgfMethod::MonteCarloEmpirical;
    }
    return PgfMethod::MonteCarloEmpirical;
}

// R* with mu_T supplied, so lambda_G sweeps do not re-solve the household.
double r_star_given(const ModelParams &params, double mu_T)
{
    const DegreeDistribution &d = params.degree;
    if (!(d.mean() > 0.0))
        throw DegenerateError("R* undefined: mean degree is zero");
    const double offspring_edges = d.mean() * (mu_T + 1.0) + d.variance() / d.mean() - 1.0;
    return offspring_edges * global_contact_prob(params);
}

using SharedDegree = std::shared_ptr<const DegreeDistribution>;

// PGF of K0 for the subsequent generations: K0 ~ D~ - 1.
PgfEvaluator size_biased_minus_one(SharedDegree degree)
{
    if (!(degree->mean() > 0.0))
        throw DegenerateError("size-biased degree undefined: mean degree is zero");
    return [degree](double x) { return degree->size_biased_pgf(x); };
}

PgfEvaluator initial_degree_pgf(const ModelParams &params, SharedDegree degree)
{
    if (params.initial.kind == InitialMode::Kind::SpecificDegree) {
        const double d = static_cast<double>(params.initial.degree);
        return [d](double x) { return std::pow(x, d); };
    }
    return [degree](double x) { return degree->pgf(x); };
}

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

// f_K0(x) f_H(f_D(x)), x = 1 - p + s p: the random-sum form shared by the
// fixed-period forward PGFs (H = T) and all backward PGFs (H = M).
PgfEvaluator thinned_random_sum(PgfEvaluator k0, std::shared_ptr<const MassFunction> household,
                                SharedDegree degree, double p)
{
    return [k0 = std::move(k0), household = std::move(household), degree = std::move(degree), p](double s) {
        const double x = clamp01(1.0 - p + s * p);
        return clamp01(k0(x) * household->pgf(degree->pgf(x)));
    };
}

struct EmpiricalOffspring {
    std::vector<double> mass;
    double mean = 0.0;
    double mean_se = 0.0;
};

EmpiricalOffspring simulate_offspring(const ModelParams &params, bool subsequent, std::uint64_t seed)
{
    const std::size_t draws = params.monte_carlo.draws;
    if (draws < 2)
        throw InvalidParameter("Monte Carlo PGFs need at least two draws");
    Rng rng(seed);
    std::vector<std::size_t> degrees(static_cast<std::size_t>(params.n));
    std::vector<double> counts;
    long double sum = 0.0L, sum_sq = 0.0L;
    for (std::size_t t = 0; t < draws; ++t) {
        if (subsequent)
            degrees[0] = params.degree.sample_size_biased(rng);
        else if (params.initial.kind == InitialMode::Kind::SpecificDegree)
            degrees[0] = params.initial.degree;
        else
            degrees[0] = params.degree.sample(rng);
        for (std::size_t i = 1; i < degrees.size(); ++i)
            degrees[i] = params.degree.sample(rng);
        const std::size_t c = sample_phi(degrees, 0, params.lambda_L, params.lambda_G, params.period, rng,
                                         subsequent ? DegreeConvention::Subsequent : DegreeConvention::Root);
        if (c >= counts.size())
            counts.resize(c + 1, 0.0);
        counts[c] += 1.0;
        sum += c;
        sum_sq += static_cast<long double>(c) * c;
    }
    EmpiricalOffspring out;
    out.mass.resize(counts.size());
    for (std::size_t k = 0; k < counts.size(); ++k)
        out.mass[k] = counts[k] / static_cast<double>(draws);
    const long double mean = sum / draws;
    const long double var = (sum_sq - draws * mean * mean) / (draws - 1);
    out.mean = static_cast<double>(mean);
    out.mean_se = std::sqrt(static_cast<double>(std::max(var, 0.0L)) / static_cast<double>(draws));
    return out;
}

PgfEvaluator empirical_pgf(std::vector<double> mass)
{
    auto shared = std::make_shared<const MassFunction>(MassFunction{std::move(mass)});
    return [shared](double s) { return clamp01(shared->pgf(s)); };
}

} // namespace

double global_contact_prob(const ModelParams &params)
{
    return 1.0 - params.period.laplace(params.lambda_G);
}

double r_star(const ModelParams &params)
{
    params.validate();
    return r_star_given(params, mean_local_final_size(params.n, params.lambda_L, params.period));
}

PgfPair forward_pgfs(const ModelParams &params)
{
    params.validate();
    PgfPair out;
    out.method = forward_method(params.period);
    const auto degree = std::make_shared<const DegreeDistribution>(params.degree);

    switch (params.period.kind()) {
    case PeriodKind::Fixed: {
        const double p_global = global_contact_prob(params);
        auto t = std::make_shared<const MassFunction>(
            local_final_size_dist(params.n, params.lambda_L, params.period));
        out.initial = thinned_random_sum(initial_degree_pgf(params, degree), t, degree, p_global);
        out.subsequent = thinned_random_sum(size_biased_minus_one(degree), t, degree, p_global);
        break;
    }
    case PeriodKind::ZeroOrInfinite: {
        // An infinite-period infective contacts every neighbour (rate > 0);
        // a zero-period one contacts nobody.
        const double p = params.period.parameter();
        const double q_global = params.lambda_G > 0.0 ? 1.0 : 0.0;
        const double q_local = params.lambda_L > 0.0 ? 1.0 : 0.0;
        const int others = params.n - 1;
        auto make = [degree, p, q_global, q_local, others](PgfEvaluator k0) -> PgfEvaluator {
            return [k0 = std::move(k0), degree, p, q_global, q_local, others](double s) {
                const double x = 1.0 - q_global + q_global * s;
                const double member = 1.0 - p * q_local + p * q_local * degree->pgf(x);
                return clamp01(1.0 - p + p * k0(x) * std::pow(member, others));
            };
        };
        out.initial = make(initial_degree_pgf(params, degree));
        out.subsequent = make(size_biased_minus_one(degree));
        break;
    }
    case PeriodKind::Exponential: {
        if (!(degree->mean() > 0.0))
            throw DegenerateError("forward PGFs undefined: mean degree is zero");
        const auto seed = params.monte_carlo.seed;
        auto initial = simulate_offspring(params, false, derive_seed(seed, 1));
        auto subsequent = simulate_offspring(params, true, derive_seed(seed, 2));
        out.subsequent_mean = subsequent.mean;
        out.subsequent_mean_se = subsequent.mean_se;
        out.initial = empirical_pgf(std::move(initial.mass));
        out.subsequent = empirical_pgf(std::move(subsequent.mass));
        break;
    }
    }
    return out;
}

PgfPair backward_pgfs(const ModelParams &params)
{
    params.validate();
    PgfPair out;
    switch (params.period.kind()) {
    case PeriodKind::Fixed:
        out.method = PgfMethod::ClosedFormFixed;
        break;
    case PeriodKind::ZeroOrInfinite:
        out.method = PgfMethod::ClosedFormZeroInf;
        break;
    case PeriodKind::Exponential:
        out.method = PgfMethod::ClosedFormTriangular;
        break;
    }
    const auto degree = std::make_shared<const DegreeDistribution>(params.degree);
    const double p_global = global_contact_prob(params);
    auto m = std::make_shared<const MassFunction>(susceptibility_set_dist(params.n, params.lambda_L, params.period));
    out.initial = thinned_random_sum([degree](double x) { return degree->pgf(x); }, m, degree, p_global);
    out.subsequent = thinned_random_sum(size_biased_minus_one(degree), m, degree, p_global);
    return out;
}

FixedPoint smallest_fixed_point(const PgfEvaluator &pgf, double tol, std::size_t max_iterations)
{
    if (!(tol > 0.0))
        throw InvalidParameter("fixed-point tolerance must be positive");
    FixedPoint out;
    out.pathological = pgf(0.0) == 0.0 && std::abs(pgf(0.5) - 0.5) < tol;

    double s = 0.0;
    for (std::size_t it = 1; it <= max_iterations; ++it) {
        const double next = pgf(s);
        if (std::abs(next - s) < tol) {
            out.value = next;
            out.iterations = it;
            return out;
        }
        s = next;
    }

    // Cap reached: s sits below the smallest root, so pgf(x) - x > 0 on
    // [s, root). Look for a point above the root where pgf(x) < x.
    out.iterations = max_iterations;
    out.polished = true;
    double lo = s;
    double hi = -1.0;
    for (int k = 1; k <= 60; ++k) {
        const double u = 1.0 - (1.0 - lo) * std::ldexp(1.0, -k);
        if (pgf(u) - u < 0.0) {
            hi = u;
            break;
        }
    }
    if (hi < 0.0) {
        if (std::abs(pgf(lo) - lo) > 1e-6 && 1.0 - lo > 1e-6)
            throw ConvergenceError("smallest fixed point: iteration cap reached and no bisection bracket found");
        out.value = 1.0;
        return out;
    }
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        (pgf(mid) - mid > 0.0 ? lo : hi) = mid;
    }
    out.value = 0.5 * (lo + hi);
    return out;
}

double major_outbreak_prob(const ModelParams &params)
{
    params.validate();
    if (!(params.degree.mean() > 0.0) || r_star(params) <= 1.0)
        return 0.0;
    const PgfPair fwd = forward_pgfs(params);
    const double sigma = smallest_fixed_point(fwd.subsequent).value;
    return clamp01(1.0 - fwd.initial(sigma));
}

double expected_relative_final_size(const ModelParams &params)
{
    params.validate();
    if (params.initial.kind != InitialMode::Kind::UniformRandom)
        throw ModeError("expected relative final size is defined for a uniformly chosen individual only");
    if (!(params.degree.mean() > 0.0) || r_star(params) <= 1.0)
        return 0.0;
    const PgfPair bwd = backward_pgfs(params);
    const double xi = smallest_fixed_point(bwd.subsequent).value;
    return clamp01(1.0 - bwd.initial(xi));
}

double critical_lambda_g(const ModelParams &params)
{
    params.validate();
    if (!(params.degree.mean() > 0.0))
        throw NoRootError("no critical lambda_G: mean degree is zero");
    const double mu_T = mean_local_final_size(params.n, params.lambda_L, params.period);
    ModelParams trial = params;
    auto excess = [&](double lambda_G) {
        trial.lambda_G = lambda_G;
        return r_star_given(trial, mu_T) - 1.0;
    };

    const double edges = params.degree.mean() * (mu_T + 1.0) + params.degree.variance() / params.degree.mean() - 1.0;
    if (edges * (1.0 - params.period.prob_zero()) <= 1.0)
        throw NoRootError("no critical lambda_G: R* <= 1 even as lambda_G -> infinity");

    double lo = 0.0, hi = 1.0;
    while (excess(hi) < 0.0) {
        lo = hi;
        hi *= 2.0;
        if (!std::isfinite(hi))
            throw NoRootError("no critical lambda_G found below overflow");
    }
    while (hi - lo > 1e-13 * std::max(1.0, hi)) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        (excess(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

AnalyticsReport analyze(const ModelParams &params)
{
    params.validate();
    AnalyticsReport out;
    out.method = forward_method(params.period);
    if (!(params.degree.mean() > 0.0))
        return out;
    out.r_star = r_star(params);
    if (out.r_star <= 1.0)
        return out;

    const PgfPair fwd = forward_pgfs(params);
    const FixedPoint sigma = smallest_fixed_point(fwd.subsequent);
    out.sigma = sigma.value;
    out.p_major = clamp01(1.0 - fwd.initial(sigma.value));

    const PgfPair bwd = backward_pgfs(params);
    const FixedPoint xi = smallest_fixed_point(bwd.subsequent);
    out.xi = xi.value;
    out.z_final = clamp01(1.0 - bwd.initial(xi.value));
    out.pathological = sigma.pathological || xi.pathological;
    return out;
}

} // namespace hhnet

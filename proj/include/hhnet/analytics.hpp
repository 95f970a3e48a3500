#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "hhnet/degree_dist.hpp"
#include "hhnet/household.hpp"
#include "hhnet/infectious_period.hpp"

namespace hhnet {

/// How the population's initial infective is picked.
struct InitialMode {
    enum class Kind { UniformRandom, SpecificDegree };
    Kind kind = Kind::UniformRandom;
    std::size_t degree = 0; // SpecificDegree only

    static InitialMode uniform_random() { return {}; }
    static InitialMode specific_degree(std::size_t d) { return {Kind::SpecificDegree, d}; }
};

/// Settings for the Monte Carlo forward PGFs (Exponential infectious period).
struct MonteCarloOptions {
    std::size_t draws = 1000000;
    std::uint64_t seed = 20090101;
};

struct ModelParams {
    int n = 1;
    double lambda_L = 0.0;
    double lambda_G = 0.0;
    DegreeDistribution degree = DegreeDistribution::constant(0);
    InfectiousPeriod period = InfectiousPeriod::fixed(1.0);
    InitialMode initial{};
    MonteCarloOptions monte_carlo{};

    /// Throws InvalidParameter on n < 1 or negative / non-finite rates.
    void validate() const;
};

enum class PgfMethod { ClosedFormFixed, ClosedFormZeroInf, ClosedFormTriangular, MonteCarloEmpirical };

const char *method_name(PgfMethod method);

using PgfEvaluator = std::function<double(double)>;

/// PGFs of the initial-generation and subsequent-generation offspring.
struct PgfPair {
    PgfEvaluator initial;
    PgfEvaluator subsequent;
    PgfMethod method = PgfMethod::ClosedFormFixed;
    // Monte Carlo only: sample mean of the subsequent offspring and its SE.
    double subsequent_mean = 0.0;
    double subsequent_mean_se = 0.0;
};

/// p_G = 1 - phi(lambda_G).
double global_contact_prob(const ModelParams &params);

/// R* = (mu_D (mu_T + 1) + sigma^2_D / mu_D - 1)(1 - phi(lambda_G)).
/// Throws DegenerateError when mu_D == 0.
double r_star(const ModelParams &params);

/// Forward offspring PGFs f_C, f_C~. Closed form for Fixed and ZeroOrInfinite,
/// empirical PGF over params.monte_carlo.draws households otherwise.
PgfPair forward_pgfs(const ModelParams &params);

/// Backward (susceptibility-set) offspring PGFs f_B, f_B~; closed form for
/// every infectious-period kind. The initial generation always uses K0 = D.
PgfPair backward_pgfs(const ModelParams &params);

struct FixedPoint {
    double value = 1.0;
    std::size_t iterations = 0;
    bool polished = false;    // finished by bisection after the iteration cap
    bool pathological = false; // pgf is the identity: every point is fixed
};

/// Smallest solution of pgf(s) = s on [0, 1] by monotone iteration from 0,
/// with a bisection polish if `max_iterations` is exhausted.
FixedPoint smallest_fixed_point(const PgfEvaluator &pgf, double tol = 1e-12,
                                std::size_t max_iterations = 1000000);

/// 1 - f_C(sigma); 0 when R* <= 1.
double major_outbreak_prob(const ModelParams &params);

/// 1 - f_B(xi); 0 when R* <= 1. Throws ModeError for SpecificDegree.
double expected_relative_final_size(const ModelParams &params);

/// Smallest lambda_G with R* >= 1, by bisection (params.lambda_G ignored).
/// Throws NoRootError if R* stays <= 1 as lambda_G -> infinity.
double critical_lambda_g(const ModelParams &params);

/// Everything the analytics command reports.
struct AnalyticsReport {
    double r_star = 0.0;
    double sigma = 1.0;
    double xi = 1.0;
    double p_major = 0.0;
    double z_final = 0.0;
    PgfMethod method = PgfMethod::ClosedFormFixed;
    bool pathological = false;
};

/// One pass computing R*, sigma, xi and both outbreak quantities. The
/// relative final size uses the uniformly-chosen backward initial generation
/// irrespective of params.initial.
AnalyticsReport analyze(const ModelParams &params);

} // namespace hhnet

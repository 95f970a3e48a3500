#include <doctest.h>

#include <cmath>
#include <vector>

#include "hhnet/analytics.hpp"
#include "hhnet/errors.hpp"
#include "oracles.hpp"

using hhnet::DegreeDistribution;
using hhnet::InfectiousPeriod;
using hhnet::ModelParams;

namespace {

ModelParams make(int n, double lambda_L, double lambda_G, DegreeDistribution d,
                 InfectiousPeriod p = InfectiousPeriod::fixed(1.0))
{
    ModelParams m;
    m.n = n;
    m.lambda_L = lambda_L;
    m.lambda_G = lambda_G;
    m.degree = std::move(d);
    m.period = p;
    return m;
}

ModelParams reference() { return make(3, 1.0, 0.1, DegreeDistribution::poisson(5.0)); }

} // namespace

TEST_CASE("R* for the reference household model")
{
    const ModelParams m = reference();
    const double mu_T = oracle::mean_of(oracle::fixed_period(3, 1.0, 1.0).final_size);
    const double want = oracle::r_star(5.0, 5.0, mu_T, 1.0 - std::exp(-0.1));
    CHECK(hhnet::r_star(m) == doctest::Approx(want).epsilon(1e-12));
    CHECK(std::abs(hhnet::r_star(m) - 1.21723) < 1e-4);
}

TEST_CASE("no global transmission means no major outbreak")
{
    const auto r = hhnet::analyze(make(3, 1.0, 0.0, DegreeDistribution::poisson(5.0)));
    CHECK(r.r_star == 0.0);
    CHECK(r.p_major == 0.0);
    CHECK(r.z_final == 0.0);
    CHECK(r.sigma == 1.0);
}

TEST_CASE("smallest fixed point of a quadratic pgf")
{
    const auto fp = hhnet::smallest_fixed_point([](double s) { return 0.25 + 0.75 * s * s; });
    CHECK(std::abs(fp.value - 1.0 / 3.0) < 1e-10);
    CHECK(std::abs(fp.value - oracle::quadratic_extinction(0.75, 0.0, 0.25)) < 1e-10);

    const auto sub = hhnet::smallest_fixed_point([](double s) { return 0.6 + 0.4 * s * s; });
    CHECK(sub.value == doctest::Approx(1.0).epsilon(1e-9));

    const auto id = hhnet::smallest_fixed_point([](double s) { return s; });
    CHECK(id.pathological);
    CHECK(id.value == 0.0);
}

TEST_CASE("slowly converging fixed point is polished")
{
    // Critical-ish offspring law: iteration converges slowly near s = 1.
    const auto fp = hhnet::smallest_fixed_point([](double s) { return 0.5 + 0.5 * s * s * s * s; }, 1e-12, 50);
    const double s = fp.value;
    CHECK(std::abs(0.5 + 0.5 * s * s * s * s - s) < 1e-10);
    CHECK(s < 1.0);
}

TEST_CASE("fixed periods: outbreak probability equals final size")
{
    const std::vector<ModelParams> sets = {
        reference(),
        make(2, 0.5, 0.2, DegreeDistribution::geometric_with_mean(6.0)),
        make(4, 2.0, 0.15, DegreeDistribution::constant(5), InfectiousPeriod::fixed(0.7)),
        make(5, 0.3, 0.3, DegreeDistribution::power_law(8, 3.5)),
        make(3, 1.0, 0.1, DegreeDistribution::power_law_cutoff(100.0, 1.5), InfectiousPeriod::fixed(1.5)),
    };
    for (const auto &m : sets) {
        CAPTURE(m.degree.describe());
        const auto r = hhnet::analyze(m);
        REQUIRE(r.r_star > 1.0);
        CHECK(r.p_major > 0.0);
        CHECK(std::abs(r.p_major - r.z_final) < 1e-9);
        CHECK(std::abs(hhnet::major_outbreak_prob(m) - hhnet::expected_relative_final_size(m)) < 1e-9);
        CHECK(r.method == hhnet::PgfMethod::ClosedFormFixed);
    }
}

TEST_CASE("forward and backward pgfs match sampled household offspring")
{
    for (const auto &period : {InfectiousPeriod::fixed(1.0), InfectiousPeriod::zero_or_infinite(0.6)}) {
        CAPTURE(period.describe());
        ModelParams m = make(3, 0.8, 0.3, DegreeDistribution::poisson(3.0), period);
        const auto fwd = hhnet::forward_pgfs(m);
        const auto bwd = hhnet::backward_pgfs(m);
        hhnet::Rng rng(99);
        const int draws = 200000;
        const double s = 0.6;
        double f_sub = 0.0, f_init = 0.0, b_sub = 0.0, b_init = 0.0;
        std::vector<std::size_t> d(3);
        for (int i = 0; i < draws; ++i) {
            for (auto &x : d)
                x = m.degree.sample(rng);
            f_init += std::pow(s, static_cast<double>(hhnet::sample_phi(d, 0, 0.8, 0.3, period, rng)));
            b_init += std::pow(s, static_cast<double>(hhnet::sample_psi(d, 0, 0.8, 0.3, period, rng).first));
            d[0] = m.degree.sample_size_biased(rng);
            f_sub += std::pow(s, static_cast<double>(hhnet::sample_phi(d, 0, 0.8, 0.3, period, rng,
                                                                       hhnet::DegreeConvention::Subsequent)));
            b_sub += std::pow(s, static_cast<double>(hhnet::sample_psi(d, 0, 0.8, 0.3, period, rng,
                                                                       hhnet::DegreeConvention::Subsequent)
                                                         .first));
        }
        // Each estimate is a mean of values in [0, 1]: SE <= 0.5 / sqrt(draws).
        const double tol = 4.0 * 0.5 / std::sqrt(static_cast<double>(draws));
        CHECK(std::abs(fwd.initial(s) - f_init / draws) < tol);
        CHECK(std::abs(fwd.subsequent(s) - f_sub / draws) < tol);
        CHECK(std::abs(bwd.initial(s) - b_init / draws) < tol);
        CHECK(std::abs(bwd.subsequent(s) - b_sub / draws) < tol);
    }
}

TEST_CASE("method tags follow the infectious period")
{
    CHECK(hhnet::forward_pgfs(reference()).method == hhnet::PgfMethod::ClosedFormFixed);
    auto zi = reference();
    zi.period = InfectiousPeriod::zero_or_infinite(0.5);
    CHECK(hhnet::forward_pgfs(zi).method == hhnet::PgfMethod::ClosedFormZeroInf);
    auto ex = reference();
    ex.period = InfectiousPeriod::exponential(1.0);
    ex.monte_carlo.draws = 100000;
    const auto pair = hhnet::forward_pgfs(ex);
    CHECK(pair.method == hhnet::PgfMethod::MonteCarloEmpirical);
    CHECK(std::abs(pair.subsequent_mean - hhnet::r_star(ex)) <= 4.0 * pair.subsequent_mean_se);
    CHECK(hhnet::backward_pgfs(ex).method == hhnet::PgfMethod::ClosedFormTriangular);
}

TEST_CASE("Monte Carlo pgfs are reproducible from the seed")
{
    auto ex = reference();
    ex.period = InfectiousPeriod::exponential(1.0);
    ex.monte_carlo = {50000, 17};
    const auto a = hhnet::analyze(ex), b = hhnet::analyze(ex);
    CHECK(a.p_major == b.p_major);
    CHECK(a.sigma == b.sigma);
}

TEST_CASE("subcritical models")
{
    auto m = make(3, 1.0, 0.01, DegreeDistribution::poisson(2.0));
    REQUIRE(hhnet::r_star(m) < 1.0);
    const auto r = hhnet::analyze(m);
    CHECK(r.p_major == 0.0);
    CHECK(r.z_final == 0.0);
    CHECK(r.sigma == 1.0);
    CHECK(hhnet::analyze(make(3, 1.0, 0.5, DegreeDistribution::constant(0))).p_major == 0.0);
}

TEST_CASE("outbreak probability grows with the global rate")
{
    double prev = -1.0;
    for (double g = 0.05; g < 1.0; g += 0.05) {
        const double p = hhnet::major_outbreak_prob(make(3, 1.0, g, DegreeDistribution::poisson(5.0)));
        CHECK(p >= prev);
        prev = p;
    }
    CHECK(prev > 0.9);
}

TEST_CASE("initial infective of specified degree")
{
    auto m = reference();
    double prev = -1.0;
    for (std::size_t d = 0; d < 10; ++d) {
        m.initial = hhnet::InitialMode::specific_degree(d);
        const double p = hhnet::major_outbreak_prob(m);
        CHECK(p >= prev);
        prev = p;
    }
    m.initial = hhnet::InitialMode::specific_degree(0);
    auto isolated = m;
    isolated.n = 1;
    CHECK(hhnet::major_outbreak_prob(isolated) == 0.0);
    CHECK_THROWS_AS(hhnet::expected_relative_final_size(m), hhnet::ModeError);
}

TEST_CASE("critical global rate: closed forms")
{
    // No local contact: the household is irrelevant and R* = (mu + var/mu - 1)(1 - e^-lambda).
    for (int n : {1, 2, 5, 10}) {
        const auto m = make(n, 0.0, 0.0, DegreeDistribution::poisson(5.0));
        CHECK(std::abs(hhnet::critical_lambda_g(m) - std::log(1.25)) < 1e-8);
    }
    // Very fast local spread: the household behaves as one node of degree D_1 + ... + D_n.
    for (int n : {2, 3, 6}) {
        const auto m = make(n, 1e6, 0.0, DegreeDistribution::poisson(5.0));
        const double sum_mean = n * 5.0, sum_var = n * 5.0;
        const double want = oracle::critical_rate_fixed_unit_period(sum_mean + sum_var / sum_mean - 1.0);
        CHECK(std::abs(hhnet::critical_lambda_g(m) - want) < 1e-6);
    }
    // R* equals one at the critical value.
    auto m = reference();
    m.lambda_G = hhnet::critical_lambda_g(m);
    CHECK(hhnet::r_star(m) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("critical global rate: no root")
{
    CHECK_THROWS_AS(hhnet::critical_lambda_g(make(1, 0.0, 0.0, DegreeDistribution::constant(1))), hhnet::NoRootError);
    CHECK_THROWS_AS(hhnet::critical_lambda_g(make(3, 1.0, 0.0, DegreeDistribution::constant(0))), hhnet::NoRootError);
}

TEST_CASE("critical curves fall with local rate and household size")
{
    const auto degree = DegreeDistribution::poisson(5.0);
    for (int n = 2; n <= 10; ++n) {
        double prev = INFINITY;
        for (double x = 0.0; x <= 3.0; x += 0.25) {
            const double c = hhnet::critical_lambda_g(make(n, x / (n - 1), 0.0, degree));
            CHECK(c < prev);
            prev = c;
        }
    }
    for (double x : {0.25, 1.0, 3.0}) {
        double prev = INFINITY;
        for (int n = 2; n <= 10; ++n) {
            const double c = hhnet::critical_lambda_g(make(n, x / (n - 1), 0.0, degree));
            CHECK(c < prev);
            prev = c;
        }
    }
}

TEST_CASE("degree-family sweep")
{
    // Small k* give subcritical epidemics under the sweep parameters.
    for (std::size_t k : {1, 2, 3})
        CHECK(hhnet::major_outbreak_prob(make(3, 1.0, 0.1, DegreeDistribution::power_law(k, 3.5))) == 0.0);
    CHECK(hhnet::major_outbreak_prob(make(3, 1.0, 0.1, DegreeDistribution::power_law(5, 3.5))) > 0.0);
    CHECK(hhnet::major_outbreak_prob(make(3, 1.0, 0.1, DegreeDistribution::power_law_cutoff(10.0, 1.5))) == 0.0);
    CHECK(hhnet::major_outbreak_prob(make(3, 1.0, 0.1, DegreeDistribution::power_law_cutoff(485.0, 1.5))) > 0.0);
    CHECK(hhnet::major_outbreak_prob(make(3, 1.0, 0.1, DegreeDistribution::constant(0))) == 0.0);

    // Near the Poisson threshold, a heavy tail gives a larger outbreak probability at equal mean.
    const auto heavy = DegreeDistribution::power_law(5, 3.5);
    const double p_heavy = hhnet::major_outbreak_prob(make(3, 1.0, 0.1, heavy));
    const double p_light = hhnet::major_outbreak_prob(make(3, 1.0, 0.1, DegreeDistribution::poisson(heavy.mean())));
    CHECK(p_heavy > p_light);
}

TEST_CASE("parameter validation")
{
    CHECK_THROWS_AS(hhnet::analyze(make(0, 1.0, 0.1, DegreeDistribution::poisson(5.0))), hhnet::InvalidParameter);
    CHECK_THROWS_AS(hhnet::analyze(make(3, -1.0, 0.1, DegreeDistribution::poisson(5.0))), hhnet::InvalidParameter);
    CHECK_THROWS_AS(hhnet::analyze(make(3, 1.0, NAN, DegreeDistribution::poisson(5.0))), hhnet::InvalidParameter);
}

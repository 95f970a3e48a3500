#include "hhnet/household.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "hhnet/errors.hpp"

namespace hhnet {

namespace {

constexpr double kClampTolerance = 1e-12;
constexpr double kUpperTolerance = 1e-6;

void require_household_size(int n)
{
    if (n < 1)
        throw InvalidParameter("household size must be >= 1");
}

void require_rate(double rate, const char *what)
{
    if (!(rate >= 0.0) || !std::isfinite(rate))
        throw InvalidParameter(std::string(what) + " must be a finite rate >= 0");
}

// Pascal's triangle up to row `rows`.
std::vector<std::vector<double>> binomials(int rows)
{
    std::vector<std::vector<double>> c(static_cast<std::size_t>(rows) + 1);
    for (int r = 0; r <= rows; ++r) {
        c[r].assign(static_cast<std::size_t>(r) + 1, 1.0);
        for (int k = 1; k < r; ++k)
            c[r][k] = c[r - 1][k - 1] + c[r - 1][k];
    }
    return c;
}

double checked(double value, const char *system, int index)
{
    if (value < -kClampTolerance || value > 1.0 + kUpperTolerance || !std::isfinite(value))
        throw ConditioningError(std::string(system) + ": entry " + std::to_string(index) + " = " +
                                std::to_string(value) + " is outside [0, 1]; the triangular system is "
                                "ill-conditioned for these parameters");
    return value < 0.0 ? 0.0 : value;
}

void renormalise(std::vector<double> &p, const char *system)
{
    const double total = std::accumulate(p.begin(), p.end(), 0.0);
    if (std::abs(total - 1.0) > 1e-9)
        throw ConditioningError(std::string(system) + ": mass function sums to " + std::to_string(total));
    for (double &x : p)
        x /= total;
}

std::size_t count(const std::vector<bool> &v)
{
    return static_cast<std::size_t>(std::count(v.begin(), v.end(), true));
}

} // namespace

double MassFunction::mean() const
{
    double m = 0.0;
    for (std::size_t k = 1; k < probs.size(); ++k)
        m += static_cast<double>(k) * probs[k];
    return m;
}

double MassFunction::pgf(double s) const
{
    double acc = 0.0;
    for (std::size_t k = probs.size(); k-- > 0;)
        acc = acc * s + probs[k];
    return acc;
}

MassFunction local_final_size_dist(int n, double lambda_L, const InfectiousPeriod &period)
{
    require_household_size(n);
    require_rate(lambda_L, "lambda_L");
    const int susceptibles = n - 1;
    const auto c = binomials(susceptibles);

    std::vector<double> p(static_cast<std::size_t>(n), 0.0);
    for (int l = 0; l <= susceptibles; ++l) {
        const double phi = period.laplace(lambda_L * (susceptibles - l));
        double value = c[susceptibles][l] * std::pow(phi, l + 1);
        for (int k = 0; k < l; ++k)
            value -= c[susceptibles - k][l - k] * p[k] * std::pow(phi, l - k);
        p[l] = checked(value, "final-size system", l);
    }
    renormalise(p, "final-size system");
    return {std::move(p)};
}

double mean_local_final_size(int n, double lambda_L, const InfectiousPeriod &period)
{
    return local_final_size_dist(n, lambda_L, period).mean();
}

MassFunction susceptibility_set_dist(int n, double lambda_L, const InfectiousPeriod &period)
{
    require_household_size(n);
    require_rate(lambda_L, "lambda_L");
    const auto c = binomials(n);

    // alpha[k]: every member of a k-household reaches the focal member.
    std::vector<double> alpha(static_cast<std::size_t>(n) + 1, 0.0);
    std::vector<double> phi(static_cast<std::size_t>(n) + 1, 1.0);
    for (int j = 1; j <= n; ++j)
        phi[j] = period.laplace(lambda_L * j);

    for (int k = 1; k <= n; ++k) {
        double value = 1.0;
        for (int j = 1; j < k; ++j)
            value -= c[k - 1][j - 1] * alpha[j] * std::pow(phi[j], k - j);
        alpha[k] = checked(value, "susceptibility-set system", k);
    }

    std::vector<double> p(static_cast<std::size_t>(n), 0.0);
    for (int k = 1; k <= n; ++k)
        p[k - 1] = checked(c[n - 1][k - 1] * alpha[k] * std::pow(phi[k], n - k), "susceptibility-set system",
                           k - 1);
    renormalise(p, "susceptibility-set system");
    return {std::move(p)};
}

std::vector<bool> LocalDigraph::reachable_from(int j) const
{
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::vector<int> stack{j};
    seen[j] = true;
    while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        for (int v = 0; v < n; ++v)
            if (!seen[v] && arc(u, v)) {
                seen[v] = true;
                stack.push_back(v);
            }
    }
    return seen;
}

std::vector<bool> LocalDigraph::reaching(int j) const
{
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::vector<int> stack{j};
    seen[j] = true;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int u = 0; u < n; ++u)
            if (!seen[u] && arc(u, v)) {
                seen[u] = true;
                stack.push_back(u);
            }
    }
    return seen;
}

LocalDigraph sample_local_digraph(int n, double lambda_L, const InfectiousPeriod &period, Rng &rng)
{
    require_household_size(n);
    require_rate(lambda_L, "lambda_L");
    LocalDigraph g;
    g.n = n;
    g.arcs.assign(static_cast<std::size_t>(n) * n, 0);
    g.periods.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        g.periods[i] = period.sample(rng);
        const double q = contact_prob(lambda_L, g.periods[i]);
        for (int j = 0; j < n; ++j)
            if (j != i && uniform01(rng) < q)
                g.arcs[static_cast<std::size_t>(i * n + j)] = 1;
    }
    return g;
}

namespace {

std::vector<std::size_t> effective_degrees(std::span<const std::size_t> degrees, std::size_t initial,
                                           DegreeConvention convention)
{
    if (degrees.empty())
        throw InvalidParameter("degree vector must be non-empty");
    if (initial >= degrees.size())
        throw std::out_of_range("initial index " + std::to_string(initial) + " outside household of size " +
                                std::to_string(degrees.size()));
    std::vector<std::size_t> d(degrees.begin(), degrees.end());
    if (convention == DegreeConvention::Subsequent) {
        if (d[initial] == 0)
            throw InvalidParameter("a globally infected initial case must have degree >= 1");
        --d[initial];
    }
    return d;
}

std::size_t binomial(std::size_t trials, double p, Rng &rng)
{
    if (trials == 0 || p <= 0.0)
        return 0;
    if (p >= 1.0)
        return trials;
    return std::binomial_distribution<std::size_t>(trials, p)(rng);
}

} // namespace

std::size_t sample_phi(std::span<const std::size_t> degrees, std::size_t initial, double lambda_L,
                       double lambda_G, const InfectiousPeriod &period, Rng &rng, DegreeConvention convention)
{
    require_rate(lambda_G, "lambda_G");
    const auto d = effective_degrees(degrees, initial, convention);
    const int n = static_cast<int>(d.size());
    const LocalDigraph g = sample_local_digraph(n, lambda_L, period, rng);
    const auto infected = g.reachable_from(static_cast<int>(initial));
    std::size_t total = 0;
    for (int i = 0; i < n; ++i)
        if (infected[i])
            total += binomial(d[i], contact_prob(lambda_G, g.periods[i]), rng);
    return total;
}

std::pair<std::size_t, std::size_t> sample_psi(std::span<const std::size_t> degrees, std::size_t initial,
                                               double lambda_L, double lambda_G,
                                               const InfectiousPeriod &period, Rng &rng,
                                               DegreeConvention convention)
{
    require_rate(lambda_G, "lambda_G");
    const auto d = effective_degrees(degrees, initial, convention);
    const int n = static_cast<int>(d.size());
    const LocalDigraph g = sample_local_digraph(n, lambda_L, period, rng);
    const auto members = g.reaching(static_cast<int>(initial));
    const double p_global = 1.0 - period.laplace(lambda_G);
    std::size_t contacting = 0, silent = 0;
    for (int i = 0; i < n; ++i) {
        if (!members[i])
            continue;
        const std::size_t b = binomial(d[i], p_global, rng);
        contacting += b;
        silent += d[i] - b;
    }
    return {contacting, silent};
}

namespace {

struct Counts {
    std::vector<long double> forward, backward;
    explicit Counts(int n) : forward(static_cast<std::size_t>(n), 0.0L), backward(static_cast<std::size_t>(n), 0.0L) {}

    void add(const LocalDigraph &g, long double weight)
    {
        forward[count(g.reachable_from(0)) - 1] += weight;
        backward[count(g.reaching(0)) - 1] += weight;
    }

    LocalOracle finish(long double total, std::size_t draws) const
    {
        LocalOracle out;
        out.draws = draws;
        for (long double x : forward)
            out.final_size.probs.push_back(static_cast<double>(x / total));
        for (long double x : backward)
            out.susceptibility.probs.push_back(static_cast<double>(x / total));
        return out;
    }
};

LocalOracle enumerate_fixed(int n, double lambda_L, const InfectiousPeriod &period)
{
    const double q = contact_prob(lambda_L, period.parameter());
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j)
                pairs.emplace_back(i, j);

    Counts counts(n);
    LocalDigraph g;
    g.n = n;
    const std::size_t configs = std::size_t{1} << pairs.size();
    for (std::size_t mask = 0; mask < configs; ++mask) {
        g.arcs.assign(static_cast<std::size_t>(n) * n, 0);
        long double weight = 1.0L;
        for (std::size_t a = 0; a < pairs.size(); ++a) {
            const bool present = (mask >> a) & 1U;
            weight *= present ? q : 1.0 - q;
            if (present)
                g.arcs[static_cast<std::size_t>(pairs[a].first * n + pairs[a].second)] = 1;
        }
        counts.add(g, weight);
    }
    return counts.finish(1.0L, 0);
}

LocalOracle enumerate_zero_or_infinite(int n, double lambda_L, const InfectiousPeriod &period)
{
    const double p = period.parameter();
    Counts counts(n);
    LocalDigraph g;
    g.n = n;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        g.arcs.assign(static_cast<std::size_t>(n) * n, 0);
        long double weight = 1.0L;
        for (int i = 0; i < n; ++i) {
            const bool infinite = (mask >> i) & 1U;
            weight *= infinite ? p : 1.0 - p;
            if (infinite && lambda_L > 0.0)
                for (int j = 0; j < n; ++j)
                    if (j != i)
                        g.arcs[static_cast<std::size_t>(i * n + j)] = 1;
        }
        counts.add(g, weight);
    }
    return counts.finish(1.0L, 0);
}

} // namespace

LocalOracle brute_force_local(int n, double lambda_L, const InfectiousPeriod &period, std::size_t mc_draws,
                              std::uint64_t seed)
{
    require_household_size(n);
    require_rate(lambda_L, "lambda_L");
    if (period.kind() == PeriodKind::Exponential) {
        if (mc_draws == 0)
            throw InvalidParameter("Monte Carlo oracle needs at least one draw");
        Rng rng(seed);
        Counts counts(n);
        for (std::size_t t = 0; t < mc_draws; ++t)
            counts.add(sample_local_digraph(n, lambda_L, period, rng), 1.0L);
        return counts.finish(static_cast<long double>(mc_draws), mc_draws);
    }
    if (n > kMaxExhaustiveHousehold)
        throw InvalidParameter("exhaustive enumeration supports households of size <= " +
                               std::to_string(kMaxExhaustiveHousehold));
    return period.kind() == PeriodKind::Fixed ? enumerate_fixed(n, lambda_L, period)
                                              : enumerate_zero_or_infinite(n, lambda_L, period);
}

MassFunction brute_force_final_size_dist(int n, double lambda_L, const InfectiousPeriod &period,
                                         std::size_t mc_draws, std::uint64_t seed)
{
    return brute_force_local(n, lambda_L, period, mc_draws, seed).final_size;
}

MassFunction brute_force_susceptibility_dist(int n, double lambda_L, const InfectiousPeriod &period,
                                             std::size_t mc_draws, std::uint64_t seed)
{
    return brute_force_local(n, lambda_L, period, mc_draws, seed).susceptibility;
}

} // namespace hhnet

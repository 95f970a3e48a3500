#pragma once

// Reference values computed without the library's own algorithms: direct
// enumeration of household digraphs, independent Monte Carlo, and closed
// forms. Shared by the unit tests and the acceptance runner.

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace oracle {

struct LocalDists {
    std::vector<double> final_size;     // P(T = k), k = 0..n-1
    std::vector<double> susceptibility; // P(M = k)
    std::vector<double> final_size_se;  // Monte Carlo only
    std::vector<double> susceptibility_se;
};

// Individuals reachable from `root` (excluding it) in a digraph on n nodes.
inline int reach_count(int n, const std::vector<std::uint32_t> &out_mask, int root)
{
    std::uint32_t seen = 1u << root, frontier = seen;
    while (frontier) {
        std::uint32_t next = 0;
        for (int i = 0; i < n; ++i)
            if (frontier & (1u << i))
                next |= out_mask[i];
        frontier = next & ~seen;
        seen |= next;
    }
    return __builtin_popcount(seen) - 1;
}

inline std::vector<std::uint32_t> transpose(int n, const std::vector<std::uint32_t> &out_mask)
{
    std::vector<std::uint32_t> in(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (out_mask[i] & (1u << j))
                in[j] |= 1u << i;
    return in;
}

// Arcs i->j independent with probability q: sum over all 2^(n(n-1)) arc sets.
inline LocalDists enumerate_independent_arcs(int n, double q)
{
    LocalDists d{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0), {}, {}};
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j)
                slots.emplace_back(i, j);
    const std::uint64_t sets = std::uint64_t{1} << slots.size();
    for (std::uint64_t s = 0; s < sets; ++s) {
        std::vector<std::uint32_t> out(n, 0);
        double w = 1.0;
        for (std::size_t k = 0; k < slots.size(); ++k) {
            if (s >> k & 1u) {
                out[slots[k].first] |= 1u << slots[k].second;
                w *= q;
            } else {
                w *= 1.0 - q;
            }
        }
        d.final_size[reach_count(n, out, 0)] += w;
        d.susceptibility[reach_count(n, transpose(n, out), 0)] += w;
    }
    return d;
}

// Fixed infectious period c: every arc present with probability 1 - exp(-lambda c).
inline LocalDists fixed_period(int n, double lambda, double c) { return enumerate_independent_arcs(n, -std::expm1(-lambda * c)); }

// Period infinite with probability p, else zero: enumerate the 2^n period outcomes.
// An infinitely infectious individual contacts every housemate when lambda > 0.
inline LocalDists zero_or_infinite(int n, double lambda, double p)
{
    LocalDists d{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0), {}, {}};
    const std::uint32_t everyone = (1u << n) - 1;
    for (std::uint32_t live = 0; live < (1u << n); ++live) {
        std::vector<std::uint32_t> out(n, 0);
        double w = 1.0;
        for (int i = 0; i < n; ++i) {
            const bool infinite = live & (1u << i);
            w *= infinite ? p : 1.0 - p;
            if (infinite && lambda > 0.0)
                out[i] = everyone & ~(1u << i);
        }
        d.final_size[reach_count(n, out, 0)] += w;
        d.susceptibility[reach_count(n, transpose(n, out), 0)] += w;
    }
    return d;
}

// Monte Carlo with exponential periods of the given mean.
inline LocalDists exponential_mc(int n, double lambda, double mean, std::size_t draws, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> period(1.0 / mean);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> t(n, 0.0), m(n, 0.0);
    std::vector<std::uint32_t> out(n);
    for (std::size_t r = 0; r < draws; ++r) {
        for (int i = 0; i < n; ++i) {
            const double q = -std::expm1(-lambda * period(rng));
            out[i] = 0;
            for (int j = 0; j < n; ++j)
                if (j != i && u(rng) < q)
                    out[i] |= 1u << j;
        }
        t[reach_count(n, out, 0)] += 1.0;
        m[reach_count(n, transpose(n, out), 0)] += 1.0;
    }
    LocalDists d;
    const double N = static_cast<double>(draws);
    for (int k = 0; k < n; ++k) {
        const double pt = t[k] / N, pm = m[k] / N;
        d.final_size.push_back(pt);
        d.susceptibility.push_back(pm);
        d.final_size_se.push_back(std::sqrt(pt * (1.0 - pt) / N));
        d.susceptibility_se.push_back(std::sqrt(pm * (1.0 - pm) / N));
    }
    return d;
}

inline double mean_of(const std::vector<double> &mass)
{
    double s = 0.0;
    for (std::size_t k = 0; k < mass.size(); ++k)
        s += static_cast<double>(k) * mass[k];
    return s;
}

inline double binomial_pmf(int n, int k, double p)
{
    return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)) * std::pow(p, k) *
           std::pow(1.0 - p, n - k);
}

inline double poisson_pmf(double mean, std::size_t k)
{
    return std::exp(-mean + static_cast<double>(k) * std::log(mean) - std::lgamma(static_cast<double>(k) + 1.0));
}

// Households-level threshold from the degree moments, mean local final size
// and the per-edge transmission probability.
inline double r_star(double mu_D, double var_D, double mu_T, double p_global)
{
    return (mu_D * (mu_T + 1.0) + var_D / mu_D - 1.0) * p_global;
}

// Smallest lambda_G with r_star >= 1 for a fixed unit period: solves
// edges * (1 - exp(-lambda)) = 1.
inline double critical_rate_fixed_unit_period(double offspring_edges)
{
    if (offspring_edges <= 1.0)
        throw std::domain_error("no critical rate");
    return -std::log1p(-1.0 / offspring_edges);
}

// Smallest root in [0, 1] of a s^2 + b s + c = s, for a + b + c = 1.
inline double quadratic_extinction(double a, double b, double c)
{
    // a s^2 + (b - 1) s + c = 0 has roots 1 and c / a.
    (void)b;
    return std::min(1.0, c / a);
}

} // namespace oracle

#include "hhnet/degree_dist.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "hhnet/errors.hpp"

namespace hhnet {

namespace {

// sum_{k >= n} k^{-s} for s > 1 by Euler-Maclaurin; n is large, so a few
// correction terms leave an error far below double rounding.
long double zeta_tail(long double s, long double n)
{
    const long double f = std::pow(n, -s);
    long double sum = n * f / (s - 1.0L) + f / 2.0L;
    sum += s * f / (12.0L * n);
    sum -= s * (s + 1) * (s + 2) * f / (720.0L * n * n * n);
    sum += s * (s + 1) * (s + 2) * (s + 3) * (s + 4) * f / (30240.0L * n * n * n * n * n);
    return sum;
}

std::string shortest(double x)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

void check_unit_interval(double s)
{
    if (!(s >= 0.0 && s <= 1.0))
        throw DomainError("pgf argument must lie in [0, 1], got " + shortest(s));
}

} // namespace

const char *family_name(DegreeFamily family)
{
    switch (family) {
    case DegreeFamily::Poisson:
        return "poisson";
    case DegreeFamily::Geometric:
        return "geometric";
    case DegreeFamily::Constant:
        return "constant";
    case DegreeFamily::PowerLaw:
        return "power_law";
    case DegreeFamily::PowerLawCutoff:
        return "power_law_cutoff";
    }
    return "unknown";
}

DegreeDistribution DegreeDistribution::poisson(double mean)
{
    if (!(mean > 0.0) || !std::isfinite(mean))
        throw InvalidParameter("poisson degree: mean must be positive and finite");
    DegreeDistribution d;
    d.family_ = DegreeFamily::Poisson;
    d.param_ = mean;
    d.parameters_ = {mean};
    d.moments_ = {mean, mean};
    return d;
}

DegreeDistribution DegreeDistribution::geometric(double success_prob)
{
    if (!(success_prob > 0.0 && success_prob < 1.0))
        throw InvalidParameter("geometric degree: success probability must lie in (0, 1)");
    DegreeDistribution d;
    d.family_ = DegreeFamily::Geometric;
    d.param_ = success_prob;
    d.parameters_ = {success_prob};
    const double q = 1.0 - success_prob;
    d.moments_ = {q / success_prob, q / (success_prob * success_prob)};
    return d;
}

DegreeDistribution DegreeDistribution::geometric_with_mean(double mean)
{
    if (!(mean > 0.0) || !std::isfinite(mean))
        throw InvalidParameter("geometric degree: mean must be positive and finite");
    return geometric(1.0 / (1.0 + mean));
}

DegreeDistribution DegreeDistribution::constant(std::size_t degree)
{
    DegreeDistribution d;
    d.family_ = DegreeFamily::Constant;
    d.param_ = static_cast<double>(degree);
    d.parameters_ = {d.param_};
    d.moments_ = {d.param_, 0.0};
    return d;
}

DegreeDistribution DegreeDistribution::power_law(std::size_t k_star, double exponent, std::size_t flat_start,
                                                 std::size_t tail_cap)
{
    if (k_star < 1)
        throw InvalidParameter("power_law degree: k_star must be >= 1");
    if (!(exponent > 2.0) || !std::isfinite(exponent))
        throw InvalidParameter("power_law degree: exponent must exceed 2");
    if (flat_start > 1)
        throw InvalidParameter("power_law degree: flat segment must start at 0 or 1");
    if (tail_cap <= k_star)
        throw InvalidParameter("power_law degree: tail_cap must exceed k_star");

    std::vector<double> w(tail_cap + 1, 0.0);
    const double flat = std::pow(static_cast<double>(k_star), -exponent);
    for (std::size_t k = flat_start; k <= k_star; ++k)
        w[k] = flat;
    for (std::size_t k = k_star + 1; k <= tail_cap; ++k)
        w[k] = std::pow(static_cast<double>(k), -exponent);

    DegreeDistribution d;
    d.family_ = DegreeFamily::PowerLaw;
    d.parameters_ = {static_cast<double>(k_star), exponent, static_cast<double>(flat_start)};

    // Moments include the analytic remainder beyond tail_cap; the truncated
    // variance is short by O(tail_cap^(3 - exponent)), which is far from
    // negligible for heavy tails. The variance series only converges for
    // exponent > 3; otherwise the truncated value is kept.
    long double h0 = 0.0L, h1 = 0.0L, h2 = 0.0L;
    for (std::size_t k = 0; k <= tail_cap; ++k) {
        const long double kk = static_cast<long double>(k);
        h0 += w[k];
        h1 += kk * w[k];
        h2 += kk * kk * w[k];
    }
    const long double a = exponent, n = static_cast<long double>(tail_cap) + 1.0L;
    const long double z = h0 + zeta_tail(a, n);
    const long double m1 = (h1 + zeta_tail(a - 1.0L, n)) / z;

    d.tabulate(std::move(w));
    d.moments_.mean = static_cast<double>(m1);
    if (exponent > 3.0) {
        const long double m2 = (h2 + zeta_tail(a - 2.0L, n)) / z;
        d.moments_.variance = static_cast<double>(m2 - m1 * m1);
    }
    return d;
}

DegreeDistribution DegreeDistribution::power_law_cutoff(double scale, double exponent, std::size_t tail_cap)
{
    if (!(scale > 0.0) || !std::isfinite(scale))
        throw InvalidParameter("power_law_cutoff degree: scale must be positive and finite");
    if (!(exponent > 0.0) || !std::isfinite(exponent))
        throw InvalidParameter("power_law_cutoff degree: exponent must be positive");
    if (tail_cap < 1)
        throw InvalidParameter("power_law_cutoff degree: tail_cap must be >= 1");

    std::vector<double> w(tail_cap + 1, 0.0);
    long double total = 0.0L;
    for (std::size_t k = 1; k <= tail_cap; ++k) {
        const double kk = static_cast<double>(k);
        w[k] = std::exp(-exponent * std::log(kk) - kk / scale);
        total += w[k];
    }
    // Trim the far tail once it carries negligible mass; keeps pgf sums short.
    long double tail = 0.0L;
    std::size_t last = tail_cap;
    while (last > 1 && tail + w[last] <= 1e-17L * total) {
        tail += w[last];
        --last;
    }
    w.resize(last + 1);

    DegreeDistribution d;
    d.family_ = DegreeFamily::PowerLawCutoff;
    d.parameters_ = {scale, exponent};
    d.tabulate(std::move(w));
    return d;
}

void DegreeDistribution::tabulate(std::vector<double> weights)
{
    long double total = 0.0L;
    for (double x : weights)
        total += x;
    pmf_.resize(weights.size());
    for (std::size_t k = 0; k < weights.size(); ++k)
        pmf_[k] = static_cast<double>(weights[k] / total);

    long double mean = 0.0L;
    for (std::size_t k = 0; k < pmf_.size(); ++k)
        mean += static_cast<long double>(k) * pmf_[k];
    long double var = 0.0L;
    for (std::size_t k = 0; k < pmf_.size(); ++k) {
        const long double dev = static_cast<long double>(k) - mean;
        var += dev * dev * pmf_[k];
    }
    moments_ = {static_cast<double>(mean), static_cast<double>(var)};
    table_mean_ = moments_.mean;

    cdf_.resize(pmf_.size());
    size_biased_cdf_.resize(pmf_.size());
    long double acc = 0.0L, sb = 0.0L;
    for (std::size_t k = 0; k < pmf_.size(); ++k) {
        acc += pmf_[k];
        sb += static_cast<long double>(k) * pmf_[k] / mean;
        cdf_[k] = static_cast<double>(acc);
        size_biased_cdf_[k] = static_cast<double>(sb);
    }
    cdf_.back() = 1.0;
    size_biased_cdf_.back() = 1.0;
}

std::string DegreeDistribution::describe() const
{
    std::string out = family_name(family_);
    out += '(';
    const std::size_t shown = family_ == DegreeFamily::PowerLaw ? 2 : parameters_.size();
    for (std::size_t i = 0; i < shown; ++i) {
        if (i)
            out += ',';
        out += shortest(parameters_[i]);
    }
    out += ')';
    return out;
}

double DegreeDistribution::pmf(std::size_t k) const
{
    const double kk = static_cast<double>(k);
    switch (family_) {
    case DegreeFamily::Poisson:
        return std::exp(kk * std::log(param_) - param_ - std::lgamma(kk + 1.0));
    case DegreeFamily::Geometric:
        return param_ * std::pow(1.0 - param_, kk);
    case DegreeFamily::Constant:
        return kk == param_ ? 1.0 : 0.0;
    case DegreeFamily::PowerLaw:
    case DegreeFamily::PowerLawCutoff:
        return k < pmf_.size() ? pmf_[k] : 0.0;
    }
    return 0.0;
}

double DegreeDistribution::pgf(double s) const
{
    check_unit_interval(s);
    switch (family_) {
    case DegreeFamily::Poisson:
        return std::exp(param_ * (s - 1.0));
    case DegreeFamily::Geometric:
        return param_ / (1.0 - (1.0 - param_) * s);
    case DegreeFamily::Constant:
        return std::pow(s, param_);
    case DegreeFamily::PowerLaw:
    case DegreeFamily::PowerLawCutoff:
        break;
    }
    if (s == 1.0)
        return 1.0;
    double sum = 0.0, sk = 1.0;
    for (std::size_t k = 0; k < pmf_.size() && sk > 0.0; ++k) {
        sum += pmf_[k] * sk;
        sk *= s;
    }
    return sum;
}

double DegreeDistribution::pgf_prime(double s) const
{
    check_unit_interval(s);
    switch (family_) {
    case DegreeFamily::Poisson:
        return param_ * std::exp(param_ * (s - 1.0));
    case DegreeFamily::Geometric: {
        const double denom = 1.0 - (1.0 - param_) * s;
        return param_ * (1.0 - param_) / (denom * denom);
    }
    case DegreeFamily::Constant:
        return param_ == 0.0 ? 0.0 : param_ * std::pow(s, param_ - 1.0);
    case DegreeFamily::PowerLaw:
    case DegreeFamily::PowerLawCutoff:
        break;
    }
    if (s == 1.0)
        return table_mean_;
    double sum = 0.0, sk = 1.0;
    for (std::size_t k = 1; k < pmf_.size() && sk > 0.0; ++k) {
        sum += static_cast<double>(k) * pmf_[k] * sk;
        sk *= s;
    }
    return sum;
}

void DegreeDistribution::require_nondegenerate() const
{
    if (!(moments_.mean > 0.0))
        throw DegenerateError("size-biased degree undefined: mean degree is zero");
}

double DegreeDistribution::size_biased_pmf(std::size_t k) const
{
    require_nondegenerate();
    const double norm = pmf_.empty() ? moments_.mean : table_mean_;
    return static_cast<double>(k) * pmf(k) / norm;
}

double DegreeDistribution::size_biased_pgf(double s) const
{
    require_nondegenerate();
    const double norm = pmf_.empty() ? moments_.mean : table_mean_;
    return pgf_prime(s) / norm;
}

double DegreeDistribution::size_biased_mean() const
{
    require_nondegenerate();
    return moments_.mean + moments_.variance / moments_.mean;
}

std::size_t DegreeDistribution::sample(Rng &rng) const
{
    switch (family_) {
    case DegreeFamily::Poisson:
        return std::poisson_distribution<std::size_t>(param_)(rng);
    case DegreeFamily::Geometric:
        return std::geometric_distribution<std::size_t>(param_)(rng);
    case DegreeFamily::Constant:
        return static_cast<std::size_t>(param_);
    case DegreeFamily::PowerLaw:
    case DegreeFamily::PowerLawCutoff:
        break;
    }
    const double u = uniform01(rng);
    const auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
    return static_cast<std::size_t>(it - cdf_.begin());
}

std::size_t DegreeDistribution::sample_size_biased(Rng &rng) const
{
    require_nondegenerate();
    switch (family_) {
    case DegreeFamily::Poisson:
        return 1 + std::poisson_distribution<std::size_t>(param_)(rng);
    case DegreeFamily::Geometric:
        // k p^2 (1-p)^{k-1}: one plus the failures before the second success.
        return 1 + std::negative_binomial_distribution<std::size_t>(2, param_)(rng);
    case DegreeFamily::Constant:
        return static_cast<std::size_t>(param_);
    case DegreeFamily::PowerLaw:
    case DegreeFamily::PowerLawCutoff:
        break;
    }
    const double u = uniform01(rng);
    const auto it = std::lower_bound(size_biased_cdf_.begin(), size_biased_cdf_.end(), u);
    return static_cast<std::size_t>(it - size_biased_cdf_.begin());
}

std::size_t DegreeDistribution::support_max() const
{
    switch (family_) {
    case DegreeFamily::Poisson:
    case DegreeFamily::Geometric:
        return std::numeric_limits<std::size_t>::max();
    case DegreeFamily::Constant:
        return static_cast<std::size_t>(param_);
    case DegreeFamily::PowerLaw:
    case DegreeFamily::PowerLawCutoff:
        break;
    }
    return pmf_.size() - 1;
}

} // namespace hhnet

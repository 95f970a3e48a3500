#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hhnet/rng.hpp"

namespace hhnet {

enum class DegreeFamily { Poisson, Geometric, Constant, PowerLaw, PowerLawCutoff };

const char *family_name(DegreeFamily family);

struct Moments {
    double mean = 0.0;
    double variance = 0.0;
};

/// Global-degree distribution D of the configuration-model network.
///
/// Poisson and Geometric use closed forms throughout. PowerLaw and
/// PowerLawCutoff are tabulated on {0, ..., tail_cap} and renormalised over
/// that support; the truncated law drives pmf, pgf and sampling. PowerLaw
/// moments() add the analytic remainder beyond tail_cap, so they are those
/// of the untruncated law (the two differ by less than 1e-6 in the mean).
///
/// Instances are immutable after construction and safe to share between
/// threads. Sampling takes a caller-owned generator.
class DegreeDistribution {
  public:
    static constexpr std::size_t kDefaultTailCap = 100000;

    /// P(D=k) = e^{-mean} mean^k / k!
    static DegreeDistribution poisson(double mean);
    /// P(D=k) = p (1-p)^k, k >= 0.
    static DegreeDistribution geometric(double success_prob);
    /// Geometric with the given mean, p = 1 / (1 + mean).
    static DegreeDistribution geometric_with_mean(double mean);
    static DegreeDistribution constant(std::size_t degree);
    /// p_k proportional to k_star^{-a} on flat_start <= k <= k_star and to
    /// k^{-a} above k_star. Requires a > 2 so the variance is finite.
    static DegreeDistribution power_law(std::size_t k_star, double exponent, std::size_t flat_start = 0,
                                        std::size_t tail_cap = kDefaultTailCap);
    /// p_k proportional to k^{-a} e^{-k/scale}, k >= 1.
    static DegreeDistribution power_law_cutoff(double scale, double exponent,
                                               std::size_t tail_cap = kDefaultTailCap);

    DegreeFamily family() const { return family_; }
    /// Human-readable form, e.g. "poisson(5)".
    std::string describe() const;
    /// Family parameters in declaration order of the factory.
    const std::vector<double> &parameters() const { return parameters_; }

    double pmf(std::size_t k) const;
    Moments moments() const { return moments_; }
    double mean() const { return moments_.mean; }
    double variance() const { return moments_.variance; }

    /// f_D(s) = E[s^D], s in [0, 1].
    double pgf(double s) const;
    /// f_D'(s).
    double pgf_prime(double s) const;

    /// P(D~ = k) = k p_k / mu_D. Throws DegenerateError when mu_D == 0.
    double size_biased_pmf(std::size_t k) const;

    /// PGF of D~: f_D'(s) / f_D'(1). Throws DegenerateError when mu_D == 0.
    double size_biased_pgf(double s) const;
    /// E[D~] = mu_D + sigma^2_D / mu_D.
    double size_biased_mean() const;

    std::size_t sample(Rng &rng) const;
    std::size_t sample_size_biased(Rng &rng) const;

    /// Largest k with positive mass (tail_cap for tabulated families);
    /// SIZE_MAX for Poisson/Geometric.
    std::size_t support_max() const;

  private:
    DegreeDistribution() = default;
    void tabulate(std::vector<double> weights);
    void require_nondegenerate() const;

    DegreeFamily family_ = DegreeFamily::Constant;
    std::vector<double> parameters_;
    Moments moments_;
    double table_mean_ = 0.0; // mean of the tabulated (truncated) law

    // Poisson: mean. Geometric: success probability. Constant: degree.
    double param_ = 0.0;

    // Tabulated families only.
    std::vector<double> pmf_;
    std::vector<double> cdf_;
    std::vector<double> size_biased_cdf_;
};

} // namespace hhnet

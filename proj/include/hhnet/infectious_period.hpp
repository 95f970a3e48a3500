#pragma once

#include <limits>
#include <string>

#include "hhnet/rng.hpp"

namespace hhnet {

/// Sentinel for an infinite infectious period.
inline constexpr double kInfinitePeriod = std::numeric_limits<double>::infinity();

enum class PeriodKind { Fixed, ZeroOrInfinite, Exponential };

const char *period_kind_name(PeriodKind kind);

/// Infectious-period distribution I, described by its Laplace transform
/// phi(theta) = E[exp(-theta I)].
class InfectiousPeriod {
  public:
    /// P(I = c) = 1, c > 0.
    static InfectiousPeriod fixed(double duration);
    /// P(I = inf) = 1 - P(I = 0) = p.
    static InfectiousPeriod zero_or_infinite(double p_infinite);
    static InfectiousPeriod exponential(double mean);

    PeriodKind kind() const { return kind_; }
    double parameter() const { return param_; }
    std::string describe() const;

    double laplace(double theta) const;
    /// P(I = 0); the contact probability 1 - phi(lambda) tends to 1 - P(I = 0)
    /// as lambda grows.
    double prob_zero() const;

    /// Inverse-cdf transform of a uniform on (0, 1).
    double quantile(double u) const;
    double sample(Rng &rng) const { return quantile(uniform01(rng)); }

  private:
    InfectiousPeriod(PeriodKind kind, double param) : kind_(kind), param_(param) {}

    PeriodKind kind_;
    double param_;
};

/// Probability 1 - exp(-rate * period) that a Poisson(rate) contact process
/// fires at least once during `period`. Exactly 1 for an infinite period
/// with rate > 0 and exactly 0 when rate == 0.
double contact_prob(double rate, double period);

} // namespace hhnet

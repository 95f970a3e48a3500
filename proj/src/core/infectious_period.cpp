#include "hhnet/infectious_period.hpp"

#include <charconv>
#include <cmath>

#include "hhnet/errors.hpp"

namespace hhnet {

const char *period_kind_name(PeriodKind kind)
{
    switch (kind) {
    case PeriodKind::Fixed:
        return "fixed";
    case PeriodKind::ZeroOrInfinite:
        return "zero_or_infinite";
    case PeriodKind::Exponential:
        return "exponential";
    }
    return "unknown";
}

InfectiousPeriod InfectiousPeriod::fixed(double duration)
{
    if (!(duration > 0.0) || !std::isfinite(duration))
        throw InvalidParameter("fixed infectious period: duration must be positive and finite");
    return {PeriodKind::Fixed, duration};
}

InfectiousPeriod InfectiousPeriod::zero_or_infinite(double p_infinite)
{
    if (!(p_infinite >= 0.0 && p_infinite <= 1.0))
        throw InvalidParameter("zero_or_infinite infectious period: p must lie in [0, 1]");
    return {PeriodKind::ZeroOrInfinite, p_infinite};
}

InfectiousPeriod InfectiousPeriod::exponential(double mean)
{
    if (!(mean > 0.0) || !std::isfinite(mean))
        throw InvalidParameter("exponential infectious period: mean must be positive and finite");
    return {PeriodKind::Exponential, mean};
}

std::string InfectiousPeriod::describe() const
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, param_);
    return std::string(period_kind_name(kind_)) + "(" + std::string(buf, res.ptr) + ")";
}

double InfectiousPeriod::laplace(double theta) const
{
    if (!(theta >= 0.0))
        throw DomainError("Laplace transform requires theta >= 0");
    if (theta == 0.0)
        return 1.0;
    switch (kind_) {
    case PeriodKind::Fixed:
        return std::exp(-theta * param_);
    case PeriodKind::ZeroOrInfinite:
        return 1.0 - param_;
    case PeriodKind::Exponential:
        return 1.0 / (1.0 + theta * param_);
    }
    return 1.0;
}

double InfectiousPeriod::prob_zero() const
{
    return kind_ == PeriodKind::ZeroOrInfinite ? 1.0 - param_ : 0.0;
}

double InfectiousPeriod::quantile(double u) const
{
    switch (kind_) {
    case PeriodKind::Fixed:
        return param_;
    case PeriodKind::ZeroOrInfinite:
        return u < 1.0 - param_ ? 0.0 : kInfinitePeriod;
    case PeriodKind::Exponential:
        return -param_ * std::log1p(-u);
    }
    return 0.0;
}

double contact_prob(double rate, double period)
{
    if (rate == 0.0 || period == 0.0)
        return 0.0;
    if (std::isinf(period))
        return 1.0;
    return -std::expm1(-rate * period);
}

} // namespace hhnet

#pragma once

#include <stdexcept>
#include <string>

namespace zetaforge {

// Base for every domain error raised by the library. `kind()` is the short
// machine-readable tag that the CLI reports.
class Error : public std::runtime_error {
public:
    Error(const char* kind, const std::string& what)
        : std::runtime_error(std::string(kind) + ": " + what), kind_(kind) {}
    const char* kind() const noexcept { return kind_; }

private:
    const char* kind_;
};

#define ZF_DEFINE_ERROR(Name)                                                  \
    class Name : public Error {                                                \
    public:                                                                    \
        explicit Name(const std::string& what) : Error(#Name, what) {}         \
    };

ZF_DEFINE_ERROR(InvalidArgument)
ZF_DEFINE_ERROR(DenominatorNotInvertible)
ZF_DEFINE_ERROR(OrderTooSmall)
ZF_DEFINE_ERROR(PoleInCoefficient)
ZF_DEFINE_ERROR(NonInvertibleLeadingTerm)
ZF_DEFINE_ERROR(NonvanishingInnerConstant)
ZF_DEFINE_ERROR(UnsupportedIndex)
ZF_DEFINE_ERROR(IndexNotIntegral)
ZF_DEFINE_ERROR(PoleAtOne)
ZF_DEFINE_ERROR(SeriesRegimeViolated)
ZF_DEFINE_ERROR(UnsupportedIndexPair)
ZF_DEFINE_ERROR(TableExhausted)
ZF_DEFINE_ERROR(NotConverged)
ZF_DEFINE_ERROR(TailDominates)
ZF_DEFINE_ERROR(IllConditioned)
ZF_DEFINE_ERROR(NonIntegrable)
ZF_DEFINE_ERROR(FitUnstable)
ZF_DEFINE_ERROR(QuadratureFailure)
ZF_DEFINE_ERROR(OutOfStrip)
ZF_DEFINE_ERROR(NotAUnit)
ZF_DEFINE_ERROR(TauInZp)
ZF_DEFINE_ERROR(SAtOne)
ZF_DEFINE_ERROR(DomainViolated)
ZF_DEFINE_ERROR(PrecisionExhausted)

#undef ZF_DEFINE_ERROR

}  // namespace zetaforge

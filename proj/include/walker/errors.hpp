#pragma once

#include <stdexcept>
#include <string>

namespace walker {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// symexpr
struct InsufficientJet : Error { using Error::Error; };
struct DivisionByZeroExpr : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

// walker
struct SingularMetric : Error { using Error::Error; };
struct DimensionTooSmall : Error { using Error::Error; };

// decomp
struct NotWalkerCompatible : Error { using Error::Error; };
struct InvalidBlocks : Error { using Error::Error; };

// holonomy
struct NonPositiveDefiniteH : Error { using Error::Error; };
struct NotClosedUnderBracket : Error { using Error::Error; };

// families
struct VDependence : Error { using Error::Error; };
struct BadDependence : Error { using Error::Error; };
struct OrderingViolation : Error { using Error::Error; };
struct Lambda2Zero : Error { using Error::Error; };
struct ZeroHMatrix : Error { using Error::Error; };
struct AsymmetricF : Error { using Error::Error; };
struct TraceNotZero : Error { using Error::Error; };

} // namespace walker

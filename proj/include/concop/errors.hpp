#pragma once

#include <stdexcept>
#include <string>

namespace concop {

// Every library failure derives from Error so callers (and the CLI, which
// maps algebra failures to exit code 3) can catch one type.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct MonotonicityViolation : Error { using Error::Error; };
struct NotMaximal            : Error { using Error::Error; };
struct NotAResolvent         : Error { using Error::Error; };
struct OrientationMismatch   : Error { using Error::Error; };
struct NegativeRange         : Error { using Error::Error; };
struct NegativeDomain        : Error { using Error::Error; };
struct EmptyInterval         : Error { using Error::Error; };
struct BadParameter          : Error { using Error::Error; };
struct BadBounds             : Error { using Error::Error; };
struct NotProbOp             : Error { using Error::Error; };
struct NotProbabilistic      : Error { using Error::Error; };
struct NotIntegrable         : Error { using Error::Error; };
struct DegenerateDenominator : Error { using Error::Error; };
struct NotAModulus           : Error { using Error::Error; };
struct CompositionNotMaximal : Error { using Error::Error; };
struct ZeroPivot             : Error { using Error::Error; };
struct EmptySamples          : Error { using Error::Error; };
struct EmptyParallelSum      : Error { using Error::Error; };
struct ToleranceUnreachable  : Error { using Error::Error; };
struct NotLogSubadditive     : Error { using Error::Error; };
struct OutOfSupport          : Error { using Error::Error; };
struct OutOfDomain           : Error { using Error::Error; };
struct ZeroDensity           : Error { using Error::Error; };
struct ShapeMismatch         : Error { using Error::Error; };
struct UnknownScenario       : Error { using Error::Error; };
struct ParseError            : Error { using Error::Error; };

}  // namespace concop

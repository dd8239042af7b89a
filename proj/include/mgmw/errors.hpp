#pragma once

#include <stdexcept>
#include <string>

namespace mgmw {

// Every library failure carries a short machine-readable kind so the CLI
// can map it to an exit code and tests can assert on it.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define MGMW_ERROR_KIND(Name)                                          \
    struct Name : Error {                                              \
        explicit Name(const std::string& what) : Error(#Name, what) {} \
    }

MGMW_ERROR_KIND(InvalidMultiuserPair);
MGMW_ERROR_KIND(InvalidGraph);
MGMW_ERROR_KIND(NotStrictlyConvexPoint);
MGMW_ERROR_KIND(UndefinedWeight);
MGMW_ERROR_KIND(RegionNotFixed);
MGMW_ERROR_KIND(TooLargeForExact);
MGMW_ERROR_KIND(UnknownScheduler);
MGMW_ERROR_KIND(ConvexityViolated);
MGMW_ERROR_KIND(ConstructionFailed);
MGMW_ERROR_KIND(BadEpsilon);
MGMW_ERROR_KIND(CornerOperatingPoint);
MGMW_ERROR_KIND(ConfigError);

#undef MGMW_ERROR_KIND

}  // namespace mgmw

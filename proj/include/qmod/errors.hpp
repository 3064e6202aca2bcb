#pragma once

#include <stdexcept>
#include <string>

namespace qmod {

// Raised when a requested computation would exceed a configured feasibility
// guard.  Carries a human-readable size estimate so callers can report why.
struct CapExceeded : std::runtime_error {
    std::string estimate;
    CapExceeded(const std::string& what, std::string est)
        : std::runtime_error(what + " (estimated size: " + est + ")"), estimate(std::move(est)) {}
};

// Raised when an algebra presentation fails validation.  `witness` names the
// offending path or input fragment.
struct ValidationError : std::runtime_error {
    std::string witness;
    ValidationError(const std::string& what, std::string wit)
        : std::runtime_error(what + (wit.empty() ? "" : " [witness: " + wit + "]")),
          witness(std::move(wit)) {}
};

// Raised on malformed input files.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace qmod

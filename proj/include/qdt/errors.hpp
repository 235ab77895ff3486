#pragma once
#include <stdexcept>

namespace qdt {

/** Raised on malformed user input (quiver files, flags). CLI exit code 2. */
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/** Raised when an enumeration guard is exceeded. CLI exit code 3. */
struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace qdt

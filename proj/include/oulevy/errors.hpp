#pragma once

#include <stdexcept>
#include <string>

namespace oulevy {

// Bad arguments / malformed input (CLI exit code 2 when raised during config
// parsing, otherwise a plain programming error).
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace oulevy

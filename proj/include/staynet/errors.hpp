#pragma once

#include <stdexcept>

namespace staynet {

// Bad configuration: schema, flags, generator settings. CLI exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Unreadable or structurally unusable input data. CLI exit code 1.
struct IngestError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace staynet

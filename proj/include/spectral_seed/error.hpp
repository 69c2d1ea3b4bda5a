#pragma once

#include <stdexcept>
#include <string>

namespace spectral_seed {

// Base of every error raised by the library. Messages are short and stable
// so callers (and the CLI) can surface them verbatim.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace spectral_seed

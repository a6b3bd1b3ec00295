#pragma once

#include <stdexcept>
#include <string>

namespace wsrt {

// Analysis/parse failure. CLI maps this to exit code 2.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace wsrt

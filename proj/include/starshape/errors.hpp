#pragma once
#include <stdexcept>
#include <string>

namespace starshape {

// File / format problems (CLI exit code 3).
struct io_error : std::runtime_error {
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

// Numeric failures: bracketing, non-convergence (CLI exit code 4).
struct solver_error : std::runtime_error {
    explicit solver_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace starshape

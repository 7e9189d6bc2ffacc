#ifndef CBF_ERRORS_HPP
#define CBF_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace cbf {

// Invalid arguments or violated preconditions. The CLI maps this to exit code 2.
struct domain_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Numerical failure (quadrature budget exceeded, non-convergent series or
// extrapolation, inversion failure). Carries a diagnostics string so callers
// can report what was tried. The CLI maps this to exit code 3.
struct numeric_error : std::runtime_error {
    std::string diagnostics;

    explicit numeric_error(const std::string& what, std::string diag = {})
        : std::runtime_error(what), diagnostics(std::move(diag)) {}
};

}  // namespace cbf

#endif

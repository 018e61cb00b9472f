#ifndef ALPHASUN_ERRORS_HPP
#define ALPHASUN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace alphasun {

// Thrown when an iterative scheme (series, quadrature, fixed point) fails to
// reach its tolerance. The message carries the partial-result diagnostics.
class evaluation_error : public std::runtime_error {
  public:
    explicit evaluation_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown on invalid wiring (unknown spec tag, missing inverse, ...).
class config_error : public std::invalid_argument {
  public:
    explicit config_error(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace alphasun

#endif

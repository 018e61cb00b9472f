#ifndef ALPHASUN_DIST_PARAMS_HPP
#define ALPHASUN_DIST_PARAMS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace alphasun {

// Parameter pair shared by the Frechet-case and Weibull-case families.
// The boundary values alpha = 0 and alpha = 1 are degenerate members of
// other families and are rejected; tests use alpha = 1e-9 as a surrogate.
struct DistParams {
    double alpha;
    double gamma;

    DistParams(double a, double g) : alpha(a), gamma(g) {
        if (!(a > 0.0) || !(a < 1.0))
            throw std::domain_error("DistParams: alpha must lie in (0,1)");
        if (!(g > 0.0)) throw std::domain_error("DistParams: gamma must be > 0");
    }
};

enum class MomentKind { y_positive, x_negative_lattice, y_hat, z_hat, perpetuity };

// Exact integer-moment lattice produced by the product recursions.
// values[n-1] holds the n-th moment.
struct MomentSequence {
    std::vector<double> values;
    MomentKind kind;

    MomentSequence(std::vector<double> v, MomentKind k);
};

std::string to_string(MomentKind k);

}  // namespace alphasun

#endif

#include "alphasun/dist_params.hpp"

#include <cmath>

namespace alphasun {

MomentSequence::MomentSequence(std::vector<double> v, MomentKind k)
    : values(std::move(v)), kind(k) {
    double lfact = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double m = values[i];
        if (!(m > 0.0) || !std::isfinite(m))
            throw std::domain_error("MomentSequence: entries must be finite and positive");
        if (kind == MomentKind::y_positive) {
            lfact += std::log(static_cast<double>(i + 1));
            if (std::log(m) > lfact * (1.0 + 1e-12) + 1e-9)
                throw std::domain_error("MomentSequence: E[Y^n] <= n! violated");
        }
    }
}

std::string to_string(MomentKind k) {
    switch (k) {
        case MomentKind::y_positive: return "Y-positive";
        case MomentKind::x_negative_lattice: return "X-negative-lattice";
        case MomentKind::y_hat: return "hat-Y";
        case MomentKind::z_hat: return "hat-Z";
        case MomentKind::perpetuity: return "perpetuity";
    }
    return "unknown";
}

}  // namespace alphasun

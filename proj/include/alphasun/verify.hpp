#ifndef ALPHASUN_VERIFY_HPP
#define ALPHASUN_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "alphasun/dist_params.hpp"

namespace alphasun::verify {

struct CheckResult {
    std::string name;
    bool pass = false;
    double observed = 0.0;
    double bound = 0.0;
    std::string note;
};

using Checks = std::vector<CheckResult>;

// Cross-representation agreement of E[Y^n], n = 1..3: exact product,
// truncated factor product (K draws_K), perpetuity Monte Carlo.
Checks moment_agreement(const DistParams& p, int draws, int K, std::uint64_t seed);

// Dual-route constant: infinite product vs moment-asymptotics extrapolation.
Checks constant_dual_route(const DistParams& p, double rel_bound = 1e-3);
Checks constant_boundary_surrogate();

// Density solver certificates for one parameter pair.
Checks density_frechet(const DistParams& p);
Checks density_weibull(const DistParams& p);

// Mellin-equation residuals on the canonical probe points.
Checks mellin_residuals(const DistParams& p);

// alpha -> 0 boundary: solved Weibull-case density vs the closed-form member.
Checks weibull_boundary();

// Moment-determinacy thresholds and Krein-curve discrimination.
Checks mdet_thresholds(const std::vector<double>& gammas);

// Factorization checks: jumpless beta reproduction (KS) and the Bessel
// local-time product-moment identities.
Checks factorizations(std::uint64_t seed);

// Storage recurrence: KS to each limit law and the n-trend of KS medians.
Checks storage_convergence(std::uint64_t seed);

// Orders battery: beta crossings, three peacock families, Mittag-Leffler
// monotonicity, and the limit-moment probes.
Checks orders_suite(std::uint64_t seed);

// Shape diagnostics: sign-change counts and discrete log-concavity.
Checks shape_diagnostics();

// Light per-parameter suite used by the command-line `verify`.
Checks quick_suite(const DistParams& p, std::uint64_t seed);

}  // namespace alphasun::verify

#endif

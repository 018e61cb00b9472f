#ifndef ALPHASUN_SPECFUN_HPP
#define ALPHASUN_SPECFUN_HPP

#include <cstddef>

namespace alphasun::specfun {

// Tolerances for series evaluation. rel_tol must sit in (0, 1e-6],
// max_terms >= 64; both are validated at construction.
struct EvalOptions {
    double rel_tol = 1e-12;
    int max_terms = 4096;

    EvalOptions() = default;
    EvalOptions(double tol, int terms);
};

// log Gamma(x) for x > 0. Relative error <= 1e-12.
double ln_gamma(double x);

// psi(x) = Gamma'(x)/Gamma(x) for x > 0. Relative error <= 1e-10.
double digamma(double x);

// Gauss hypergeometric 2F1(a,b;c;z) for real arguments, c > 0, z < 1.
// z in [0,1) is summed directly; z < 0 goes through the Pfaff transformation
// to the argument z/(z-1) in (0,1). Coverage is limited to parameter families
// with a convergent transformed series (all uses in this project qualify).
double gauss_2f1(double a, double b, double c, double z,
                 const EvalOptions& opts = EvalOptions());

// Mittag-Leffler E_alpha(z) = sum_n z^n / Gamma(1 + alpha n), alpha in (0,1].
// z >= 0: term-wise series, switching to the exponential asymptotic
// E_alpha(z) ~ exp(z^(1/alpha))/alpha once z^(1/alpha) is large (the result
// may then overflow to +inf; see log_mittag_leffler).
// z < 0, alpha < 1: the completely monotone spectral representation, which is
// immune to the catastrophic cancellation of the raw alternating series.
double mittag_leffler(double alpha, double z, const EvalOptions& opts = EvalOptions());

// log E_alpha(z) for z >= 0; stays finite where the value itself overflows.
double log_mittag_leffler(double alpha, double z, const EvalOptions& opts = EvalOptions());

namespace detail {

// psi'(x), x > 0 (used for k^-2 tail sums and log-beta variances).
double trigamma(double x);

// Regularized upper incomplete gamma Q(a,x) = Gamma(a,x)/Gamma(a), a > 0, x >= 0.
double gamma_q(double a, double x);

// 2F1(a,b;c;z) - 1 summed directly for z in [0,1); avoids the cancellation of
// computing a value near 1 and then subtracting 1.
double gauss_2f1_m1_direct(double a, double b, double c, double z,
                           const EvalOptions& opts);

}  // namespace detail

}  // namespace alphasun::specfun

#endif

#ifndef ALPHASUN_QUADRATURE_HPP
#define ALPHASUN_QUADRATURE_HPP

#include <functional>

namespace alphasun::quad {

struct Result {
    double value = 0.0;
    double abs_err = 0.0;
    int evals = 0;
};

// Adaptive Gauss-Kronrod (G7,K15) on a finite interval.
// abs_floor stops refinement of segments whose contribution is negligible.
Result integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-10, double abs_floor = 1e-14);

// Same, refined value only; throws evaluation_error if the error estimate
// fails both tolerances.
double integrate_checked(const std::function<double(double)>& f, double a, double b,
                         double rel_tol = 1e-10, double abs_floor = 1e-14);

// Semi-infinite [a, inf) via x = a + t/(1-t).
double integrate_to_inf(const std::function<double(double)>& f, double a,
                        double rel_tol = 1e-10, double abs_floor = 1e-14);

// Integral over [a, b) of g with an algebraic singularity g(x) ~ (b-x)^(-p),
// 0 <= p < 1, removed by the substitution b - x = v^(1/(1-p)).
double integrate_left_of_singularity(const std::function<double(double)>& g, double a,
                                     double b, double p, double rel_tol = 1e-10);

// Fixed-order 20-point Gauss-Legendre panel (no adaptivity, no error estimate).
double gauss20(const std::function<double(double)>& f, double a, double b);

}  // namespace alphasun::quad

#endif

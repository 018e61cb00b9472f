#ifndef ALPHASUN_STOCHASTIC_ORDERS_HPP
#define ALPHASUN_STOCHASTIC_ORDERS_HPP

#include <functional>
#include <string>
#include <vector>

#include "alphasun/rng.hpp"

namespace alphasun::orders {

// Expectation matrix of a call-function battery over an indexed family,
// with the monotonicity verdict for the convex order.
struct ConvexOrderReport {
    std::vector<double> index_grid;
    std::vector<double> c_grid;                        // call strikes (last column is x^2)
    std::vector<std::vector<double>> expectations;     // [index][test function]
    std::vector<double> means;
    bool monotone = false;
    double max_violation = 0.0;
};

// Number of sign changes of f_{ta,tb} - f_{sa,sb} (beta densities) on (0,1).
int beta_crossing_count(double a, double b, double s, double t, int grid = 4096);

// Checks E[psi(X_i)] monotone nondecreasing in the family index for
// psi_c(x) = (x-c)_+ over a c-grid plus x^2. The family is provided by a
// sampler per index; `tol` absorbs Monte Carlo noise (3 combined standard
// errors are added on top for sampled families when n_draws > 0).
ConvexOrderReport convex_order_check(
    const std::vector<double>& index_grid,
    const std::function<std::vector<double>(std::size_t, Rng&)>& family_sampler,
    int n_draws, std::uint64_t seed, double tol = 1e-4, int n_strikes = 64);

// Deterministic variant for families with numeric expectations.
ConvexOrderReport convex_order_check_quadrature(
    const std::vector<double>& index_grid,
    const std::function<double(std::size_t, const std::function<double(double)>&)>& expect,
    double tol = 1e-4, int n_strikes = 64);

// E[Ltilde^n]: moments of the renormalized local-time variable from the
// convergent beta product with alpha = 1 - d/2, gamma = 1 - 2p.
double ltilde_moment(double d, double p, int n);

// Draws of Ltilde via the truncated beta product with lognormal tail
// completion; used for the call-function battery.
class LtildeSampler {
  public:
    LtildeSampler(double d, double p, int K = 512);
    double draw(Rng& rng) const;

  private:
    double alpha_, gamma_;
    int K_;
    std::vector<double> b_, lnEB_;  // per-factor beta shape and log-mean
    double dshape_;
    double sigma_tail_;
};

struct MonotonicityVerdict {
    bool monotone = false;
    double max_violation = 0.0;
    std::string detail;
};

// alpha -> E_alpha(Gamma(1+alpha) z) nonincreasing on (0,1), each z in the grid.
MonotonicityVerdict ml_monotonicity(const std::vector<double>& z_grid,
                                    const std::vector<double>& alpha_grid,
                                    double slack = 1e-8);

// alpha -> Gamma(1+(b+1)a) Gamma(1+(a_+b)a) / (Gamma(1+b a) Gamma(1+(a_+b+1)a))
// strictly decreasing on the alpha grid.
MonotonicityVerdict prefactor_monotone(double a, double b,
                                       const std::vector<double>& alpha_grid,
                                       double slack = 1e-8);

// Sign changes of x -> c1 (1 - c2 x^delta)^{1/delta} + x - 1 on (0,1).
int single_crossing_count(double c1, double c2, double delta, int grid = 8192);

}  // namespace alphasun::orders

#endif

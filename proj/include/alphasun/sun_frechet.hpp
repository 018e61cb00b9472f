#ifndef ALPHASUN_SUN_FRECHET_HPP
#define ALPHASUN_SUN_FRECHET_HPP

#include <vector>

#include "alphasun/dist_params.hpp"
#include "alphasun/rng.hpp"

namespace alphasun::frechet {

// Laplace exponent of the killed compound Poisson process attached to
// Y = X^(-gamma):
//   F(lambda) = 2F1(gamma, lambda gamma; 1 + lambda gamma; alpha)
//             = 1 + Phi(lambda).
// Every call cross-checks the hypergeometric series against an adaptive
// quadrature of the Euler integral to 1e-9 and returns the series value.
double laplace_exponent_F(const DistParams& p, double lambda);

// Quadrature route alone (the internal cross-check path, exposed for tests).
double laplace_exponent_F_quad(const DistParams& p, double lambda);

// Levy jump tail  Pi(t) = (1 - alpha e^{-t/gamma})^{-gamma} - 1,  t >= 0.
double levy_jump_tail(const DistParams& p, double t);

// Inverse of the normalized tail: returns t with Pi(t)/Pi(0) = 1-u, u in (0,1).
double sample_jump(const DistParams& p, double u);

// E[Y^n] = prod_{k=1..n} k / F(k); n = 0 gives the empty product 1.
double moment_Y(const DistParams& p, int n);

// G(lambda) = 2F1(gamma, 1; 1 + lambda gamma; alpha/(alpha-1)); satisfies
// F(lambda) = (1-alpha)^(-gamma) G(lambda) (Kummer) and
// G(k) = 1 + alpha/(k(alpha-1)) + O(k^-2).
double G_factor(const DistParams& p, double lambda);

// The density prefactor of the left tail of the Frechet-case density,
//   c = gamma (1-alpha)^{gamma/(alpha-1)} e^{alpha psi(1)/(alpha-1)}
//       prod_k e^{alpha/((alpha-1)k)} / G(k),
// evaluated with an adaptive truncation plus an explicit k^-2 + k^-3
// tail-sum correction.
double c_constant(const DistParams& p);

// Same constant recovered from the large-n moment asymptotics
//   E[Y^n]/n! ~ c' n^{alpha/(1-alpha)} (1-alpha)^{gamma n},
// extrapolated by a cubic-in-1/n least-squares fit of log r_n over
// n in [n_lo, n_hi]. Independent validation route for c_constant.
double c_constant_from_moments(const DistParams& p, int n_lo = 50, int n_hi = 400);

// One draw of the factor Y_k (density k x^{k-1} (1-alpha x^{1/gamma})^{-gamma}/F(k)
// on (0,1)) by rejection; acceptance rate is (1-alpha)^gamma F(k) >= (1-alpha)^gamma.
double factor_sample_Y(const DistParams& p, int k, Rng& rng);

// Multiplicative-product sampler for Y: the truncated product
//   (1/F(1)) prod_{k<=K} ((k+1)F(k))/(k F(k+1)) Y_k
// collapses to ((K+1)/F(K+1)) prod_{k<=K} Y_k. The dropped tail factors have
// unit mean, so the deterministic tail-mean correction is exactly 1; the
// sampler additionally completes the tail with a mean-one lognormal whose
// log-variance matches the closed-form second-moment deficit
//   beta_2 = (K+2)F(K+1) / ((K+1)F(K+2)),
// which removes the O(n^2/K) bias on low moments.
class ProductSamplerY {
  public:
    ProductSamplerY(const DistParams& p, int K);
    double draw(Rng& rng) const;
    double tail_sigma() const { return sigma_tail_; }

  private:
    DistParams p_;
    int K_;
    double ln_prefactor_;  // ln(K+1) - ln F(K+1)
    double sigma_tail_;
};

// Convenience one-shot form matching the operation signature; K >= 8.
double sample_Y_product(const DistParams& p, int K, Rng& rng);

// Moment table as a tagged sequence (kind y_positive).
MomentSequence moment_sequence_Y(const DistParams& p, int n_max);

}  // namespace alphasun::frechet

#endif

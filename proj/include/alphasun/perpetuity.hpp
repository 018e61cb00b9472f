#ifndef ALPHASUN_PERPETUITY_HPP
#define ALPHASUN_PERPETUITY_HPP

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "alphasun/dist_params.hpp"
#include "alphasun/rng.hpp"

namespace alphasun::perpetuity {

// A subordinator triple (q, b, pi) described through the jump tail
// t -> pi(t, inf). Immutable after construction.
struct SubordinatorSpec {
    double q = 0.0;                                    // killing rate
    double b = 0.0;                                    // drift
    std::function<double(double)> tail;                // t > 0 -> pi(t, inf)
    std::optional<std::function<double(double)>> tail_inverse;  // v -> t with pi(t,inf)=v
    double total_mass = 0.0;                           // pi(0+, inf), may be +inf
    double support_end = std::numeric_limits<double>::infinity();  // sup of jump sizes
    // order p of the algebraic blow-up pi(-log x, inf) ~ (1-x)^{-p} as x -> 1
    // (0 when the total mass is finite); used by the quadrature.
    double endpoint_order = 0.0;
    std::string label;

    void validate() const;
};

// Factor law of index k: atom of mass b k / Phi(k) at 1 plus the density
// k x^{k-1} (q + pi(-log x, inf)) / Phi(k) on (0,1).
struct FactorLaw {
    int k = 1;
    double atom_weight = 0.0;
    std::function<double(double)> ac_density;
};

// Phi(lambda) = lambda (b + int_0^1 x^{lambda-1} (q + pi(-log x, inf)) dx).
double laplace_exponent(const SubordinatorSpec& spec, double lambda);

// E[I^n] = prod_{k<=n} k / Phi(k), computed in log space.
double perpetuity_moment(const SubordinatorSpec& spec, int n);

FactorLaw factor_law(const SubordinatorSpec& spec, int k);

// Draws one factor Y_k. Bounded q + pi tails use rejection; unbounded tails
// go through a 4096-node monotone inverse-CDF table built on first use.
class FactorSampler {
  public:
    FactorSampler(const SubordinatorSpec& spec, int k);
    double draw(Rng& rng) const;
    double phi_k() const { return phi_k_; }

  private:
    SubordinatorSpec spec_;
    int k_;
    double phi_k_;
    double atom_weight_;
    double env_bound_;                 // sup of q + tail(-log x) when finite
    std::vector<double> table_x_;      // inverse-CDF table (unbounded tails)
    std::vector<double> table_cdf_;
};

// Truncated product sampler for the terminal value in the factorization
//   I = (1/Phi(1)) prod_k ((k+1)Phi(k))/(k Phi(k+1)) Y_k.
// Prefactors telescope to (K+1)/Phi(K+1); the dropped tail has unit mean
// (deterministic correction = 1) and its second-moment deficit
//   beta_2 = (K+2)Phi(K+1)/((K+1)Phi(K+2))
// is completed by a mean-one lognormal factor.
class ProductSampler {
  public:
    ProductSampler(const SubordinatorSpec& spec, int K);
    double draw(Rng& rng) const;

  private:
    int K_;
    double ln_prefactor_;
    double sigma_tail_;
    std::vector<FactorSampler> factors_;
};

// Direct Monte Carlo of int_0^inf e^{-sigma_t} dt. Killed processes are
// simulated exactly to the killing time; unkilled paths stop once the
// remaining-mass bound e^{-sigma}/Phi(1) drops below eps and add half of the
// bound as bias control. Infinite-activity specs replace jumps smaller than
// jump_eps by their exact mean drift.
class PerpetuitySimulator {
  public:
    PerpetuitySimulator(const SubordinatorSpec& spec, double eps = 1e-12,
                        double jump_eps = 1e-4);
    double draw(Rng& rng) const;

  private:
    SubordinatorSpec spec_;
    double eps_;
    double rate_;        // effective jump rate
    double drift_;       // b plus small-jump compensation
    double ln_phi1_;
    double jump_floor_;  // jumps below this folded into drift_
    std::vector<double> inv_u_;   // inverse-CDF table for conditioned jumps
    std::vector<double> inv_t_;
    double sample_jump_size(Rng& rng) const;
};

double simulate_perpetuity(const SubordinatorSpec& spec, Rng& rng, double eps = 1e-12);

// Built-in specs.
SubordinatorSpec make_alpha_sun(const DistParams& p);       // killed, q=1, b=0
SubordinatorSpec make_alpha_sun_hat(const DistParams& p);   // unkilled, bounded jumps
SubordinatorSpec make_jumpless(double q, double b);
SubordinatorSpec make_bessel_local_time(double alpha, double gamma);

// Registry addressable by name: alpha_sun | alpha_sun_hat | jumpless | bessel_local_time.
SubordinatorSpec builtin_spec(const std::string& name, double a_or_q, double g_or_b);

// Size-biased beta factorization: B_{a,b} as a k>=0-indexed product; used to
// exercise the general factorization beyond integer-shift factor laws.
double sample_sized_biased_beta(double a, double b, int K, Rng& rng);

// Sufficient condition for the inverse-local-time value at 1 to be a
// generalized Gamma convolution: (1-alpha) gamma >= alpha or gamma in [1,2].
bool ggc_condition(double alpha, double gamma);

}  // namespace alphasun::perpetuity

#endif

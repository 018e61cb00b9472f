#ifndef ALPHASUN_STORAGE_SIM_HPP
#define ALPHASUN_STORAGE_SIM_HPP

#include <functional>
#include <vector>

#include "alphasun/rng.hpp"

namespace alphasun::storage {

// Input laws for the recurrence Y_n = max(Y_{n-1}, alpha Y_{n-1} + X_n):
//  pareto_frechet:      P(X > x) = x^{-gamma}, x >= 1
//  bounded_weibull:     X = -U^{1/gamma}  (P(X > -x) = x^{gamma} on [0,1])
//  exponential_gumbel:  X ~ Exp(1)
struct InputLaw {
    enum class Tag { pareto_frechet, bounded_weibull, exponential_gumbel };
    Tag tag = Tag::pareto_frechet;
    double gamma = 1.0;

    double draw(Rng& rng) const;
};

// Runs the chain for n steps from Y_0 = X_0 and returns Y_n.
double run_chain(const InputLaw& law, double alpha, long n, Rng& rng);

// Seeded Monte Carlo batch with summary statistics and ecdf access.
class SampleBatch {
  public:
    explicit SampleBatch(std::vector<double> values);
    std::size_t count() const { return sorted_.size(); }
    double mean() const { return mean_; }
    double variance() const { return var_; }
    const std::vector<double>& sorted() const { return sorted_; }
    double ecdf(double x) const;

  private:
    std::vector<double> sorted_;
    double mean_ = 0.0;
    double var_ = 0.0;
};

// Renormalized end values:
//  Frechet domain:  Y_n / n^{1/gamma}
//  Weibull domain:  Y_n * n^{1/gamma}   (negative values)
//  Gumbel domain:   Y_n - log n
SampleBatch renormalized_batch(const InputLaw& law, double alpha, long n, int batch,
                               Rng& rng);

// Kolmogorov-Smirnov sup distance between the batch and a reference cdf.
double ks_distance(const SampleBatch& sample, const std::function<double(double)>& ref_cdf);

// One-parameter fits used before KS comparison: multiplicative for scale
// families, additive for location families. Both match medians.
double median_scale_fit(const SampleBatch& sample, double ref_median);
double median_shift_fit(const SampleBatch& sample, double ref_median);

}  // namespace alphasun::storage

#endif

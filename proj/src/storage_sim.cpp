#include "alphasun/storage_sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace alphasun::storage {

double InputLaw::draw(Rng& rng) const {
    switch (tag) {
        case Tag::pareto_frechet:
            return std::pow(rng.uniform01(), -1.0 / gamma);
        case Tag::bounded_weibull:
            return -std::pow(rng.uniform01(), 1.0 / gamma);
        case Tag::exponential_gumbel:
            return rng.exponential();
    }
    return 0.0;
}

double run_chain(const InputLaw& law, double alpha, long n, Rng& rng) {
    if (n < 1) throw std::domain_error("run_chain: n >= 1");
    double y = law.draw(rng);  // Y_0 = X_0
    for (long i = 0; i < n; ++i) {
        const double cand = alpha * y + law.draw(rng);
        if (cand > y) y = cand;
    }
    return y;
}

SampleBatch::SampleBatch(std::vector<double> values) : sorted_(std::move(values)) {
    std::sort(sorted_.begin(), sorted_.end());
    double m = 0.0;
    for (double v : sorted_) m += v;
    m /= static_cast<double>(sorted_.size());
    double s = 0.0;
    for (double v : sorted_) s += (v - m) * (v - m);
    mean_ = m;
    var_ = s / std::max<std::size_t>(1, sorted_.size() - 1);
}

double SampleBatch::ecdf(double x) const {
    const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
    return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

SampleBatch renormalized_batch(const InputLaw& law, double alpha, long n, int batch,
                               Rng& rng) {
    if (batch < 1) throw std::domain_error("renormalized_batch: batch >= 1");
    std::vector<double> out;
    out.reserve(batch);
    for (int i = 0; i < batch; ++i) {
        const double y = run_chain(law, alpha, n, rng);
        switch (law.tag) {
            case InputLaw::Tag::pareto_frechet:
                out.push_back(y / std::pow(static_cast<double>(n), 1.0 / law.gamma));
                break;
            case InputLaw::Tag::bounded_weibull:
                out.push_back(y * std::pow(static_cast<double>(n), 1.0 / law.gamma));
                break;
            case InputLaw::Tag::exponential_gumbel:
                out.push_back(y - std::log(static_cast<double>(n)));
                break;
        }
    }
    return SampleBatch(std::move(out));
}

double ks_distance(const SampleBatch& sample, const std::function<double(double)>& ref_cdf) {
    const auto& xs = sample.sorted();
    if (xs.empty()) throw std::domain_error("ks_distance: empty sample");
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double f = ref_cdf(xs[i]);
        d = std::max(d, std::fabs((i + 1) / n - f));
        d = std::max(d, std::fabs(f - i / n));
    }
    return d;
}

namespace {
double median_of(const SampleBatch& s) {
    const auto& xs = s.sorted();
    const std::size_t n = xs.size();
    return (n % 2) ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}
}  // namespace

double median_scale_fit(const SampleBatch& sample, double ref_median) {
    const double m = median_of(sample);
    if (m == 0.0) throw std::domain_error("median_scale_fit: zero sample median");
    return ref_median / m;
}

double median_shift_fit(const SampleBatch& sample, double ref_median) {
    return ref_median - median_of(sample);
}

}  // namespace alphasun::storage

#include "alphasun/stochastic_orders.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "alphasun/errors.hpp"
#include "alphasun/specfun.hpp"

namespace alphasun::orders {

using specfun::detail::trigamma;

int beta_crossing_count(double a, double b, double s, double t, int grid) {
    if (!(a > 0.0) || !(b > 0.0) || !(s > 0.0) || !(t > 0.0))
        throw std::domain_error("beta_crossing_count: positive parameters required");
    if (grid < 2048) throw std::domain_error("beta_crossing_count: grid >= 2048");
    if (s == t) return 0;
    // log f_t - log f_s = C + a(t-s) ln x + b(t-s) ln(1-x)
    auto lbeta = [](double u, double v) {
        return specfun::ln_gamma(u) + specfun::ln_gamma(v) - specfun::ln_gamma(u + v);
    };
    const double C = lbeta(s * a, s * b) - lbeta(t * a, t * b);
    int changes = 0;
    double prev = 0.0;
    for (int i = 1; i < grid; ++i) {
        const double x = static_cast<double>(i) / grid;
        const double delta = C + a * (t - s) * std::log(x) + b * (t - s) * std::log1p(-x);
        if (prev != 0.0 && delta != 0.0 && ((delta > 0) != (prev > 0))) ++changes;
        if (delta != 0.0) prev = delta;
    }
    return changes;
}

namespace {

ConvexOrderReport battery_from_samples(const std::vector<double>& index_grid,
                                       const std::vector<std::vector<double>>& samples,
                                       double tol, int n_strikes, bool with_se) {
    ConvexOrderReport rep;
    rep.index_grid = index_grid;
    // pooled strike grid across the 0.1%..99.9% range
    std::vector<double> pool;
    for (const auto& s : samples) pool.insert(pool.end(), s.begin(), s.end());
    std::sort(pool.begin(), pool.end());
    const double qlo = pool[static_cast<std::size_t>(0.001 * (pool.size() - 1))];
    const double qhi = pool[static_cast<std::size_t>(0.999 * (pool.size() - 1))];
    for (int j = 0; j < n_strikes; ++j)
        rep.c_grid.push_back(qlo + (qhi - qlo) * j / (n_strikes - 1.0));

    std::vector<std::vector<double>> se(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& xs = samples[i];
        const double n = static_cast<double>(xs.size());
        double mean = 0.0;
        for (double v : xs) mean += v;
        mean /= n;
        rep.means.push_back(mean);
        std::vector<double> row;
        std::vector<double> row_se;
        for (double c : rep.c_grid) {
            double m = 0.0, m2 = 0.0;
            for (double v : xs) {
                const double y = std::max(0.0, v - c);
                m += y;
                m2 += y * y;
            }
            m /= n;
            m2 /= n;
            row.push_back(m);
            row_se.push_back(with_se ? std::sqrt(std::max(0.0, m2 - m * m) / n) : 0.0);
        }
        double q = 0.0, q2 = 0.0;
        for (double v : xs) {
            q += v * v;
            q2 += v * v * v * v;
        }
        q /= n;
        q2 /= n;
        row.push_back(q);
        row_se.push_back(with_se ? std::sqrt(std::max(0.0, q2 - q * q) / n) : 0.0);
        rep.expectations.push_back(std::move(row));
        se[i] = std::move(row_se);
    }
    // equal-means precondition
    for (std::size_t i = 1; i < rep.means.size(); ++i) {
        const double allow =
            tol + (with_se ? 4.0 * (std::sqrt(rep.expectations[i].back()) +
                                    std::sqrt(rep.expectations[0].back())) /
                                 std::sqrt(static_cast<double>(samples[0].size()))
                           : 0.0);
        if (std::fabs(rep.means[i] - rep.means[0]) > std::max(1e-6, allow)) {
            std::ostringstream os;
            os << "convex_order_check: family means differ (" << rep.means[0] << " vs "
               << rep.means[i] << "); not a valid peacock comparison";
            throw std::domain_error(os.str());
        }
    }
    rep.monotone = true;
    rep.max_violation = 0.0;
    for (std::size_t i = 0; i + 1 < rep.expectations.size(); ++i) {
        for (std::size_t j = 0; j < rep.expectations[i].size(); ++j) {
            const double allow = tol + 3.0 * (se[i][j] + se[i + 1][j]);
            const double diff = rep.expectations[i][j] - rep.expectations[i + 1][j];
            if (diff > allow) {
                rep.monotone = false;
                rep.max_violation = std::max(rep.max_violation, diff - allow);
            }
        }
    }
    return rep;
}

}  // namespace

ConvexOrderReport convex_order_check(
    const std::vector<double>& index_grid,
    const std::function<std::vector<double>(std::size_t, Rng&)>& family_sampler,
    int n_draws, std::uint64_t seed, double tol, int n_strikes) {
    std::vector<std::vector<double>> samples;
    for (std::size_t i = 0; i < index_grid.size(); ++i) {
        Rng rng = Rng::split(seed, i);
        samples.push_back(family_sampler(i, rng));
        if (static_cast<int>(samples.back().size()) != n_draws)
            throw config_error("convex_order_check: sampler returned wrong batch size");
    }
    return battery_from_samples(index_grid, samples, tol, n_strikes, true);
}

ConvexOrderReport convex_order_check_quadrature(
    const std::vector<double>& index_grid,
    const std::function<double(std::size_t, const std::function<double(double)>&)>& expect,
    double tol, int n_strikes) {
    ConvexOrderReport rep;
    rep.index_grid = index_grid;
    // strikes across (0,1): quadrature families in this project live on (0,1)
    for (int j = 0; j < n_strikes; ++j)
        rep.c_grid.push_back((j + 0.5) / n_strikes);
    for (std::size_t i = 0; i < index_grid.size(); ++i) {
        rep.means.push_back(expect(i, [](double x) { return x; }));
        std::vector<double> row;
        for (double c : rep.c_grid)
            row.push_back(expect(i, [c](double x) { return std::max(0.0, x - c); }));
        row.push_back(expect(i, [](double x) { return x * x; }));
        rep.expectations.push_back(std::move(row));
    }
    for (std::size_t i = 1; i < rep.means.size(); ++i)
        if (std::fabs(rep.means[i] - rep.means[0]) > 1e-6)
            throw std::domain_error("convex_order_check: family means differ");
    rep.monotone = true;
    for (std::size_t i = 0; i + 1 < rep.expectations.size(); ++i)
        for (std::size_t j = 0; j < rep.expectations[i].size(); ++j) {
            const double diff = rep.expectations[i][j] - rep.expectations[i + 1][j];
            if (diff > tol) {
                rep.monotone = false;
                rep.max_violation = std::max(rep.max_violation, diff - tol);
            }
        }
    return rep;
}

namespace {

void ltilde_params(double d, double p, double& alpha, double& gamma) {
    if (!(d > 0.0) || !(d < 2.0)) throw std::domain_error("ltilde: d in (0,2)");
    if (!(p < 0.5)) throw std::domain_error("ltilde: p < 1/2");
    alpha = 1.0 - d / 2.0;
    gamma = 1.0 - 2.0 * p;
}

}  // namespace

double ltilde_moment(double d, double p, int n) {
    if (n < 1) throw std::domain_error("ltilde_moment: n >= 1");
    if (n == 1) return 1.0;  // normalized by construction
    double alpha, gamma;
    ltilde_params(d, p, alpha, gamma);
    const double dd = gamma * (1.0 / alpha - 1.0);
    // factors ((k+1)/(k+alpha))^n E[B_{b_k, dd}^n], b_k = gamma(1+k/alpha), k >= 0
    auto log_factor = [&](double k) {
        const double b = gamma * (1.0 + k / alpha);
        double t = n * (std::log(k + 1.0) - std::log(k + alpha));
        for (int j = 0; j < n; ++j) t += std::log(b + j) - std::log(b + dd + j);
        return t;
    };
    const long K = std::max<long>(200000, std::lround(400.0 * alpha / gamma));
    double sum = 0.0, comp = 0.0;
    for (long k = 0; k < K; ++k) {
        const double t = log_factor(static_cast<double>(k));
        const double y = t - comp;
        const double s = sum + y;
        comp = (s - sum) - y;
        sum = s;
    }
    // k^-2 + k^-3 tail through the factor values at K/2 and K
    const double t1 = log_factor(K / 2.0), t2 = log_factor(static_cast<double>(K));
    const double kh = K / 2.0, kf = static_cast<double>(K);
    const double a11 = 1.0 / (kh * kh), a12 = 1.0 / (kh * kh * kh);
    const double a21 = 1.0 / (kf * kf), a22 = 1.0 / (kf * kf * kf);
    const double det = a11 * a22 - a12 * a21;
    const double A = (t1 * a22 - t2 * a12) / det;
    const double B = (a11 * t2 - a21 * t1) / det;
    sum += A * trigamma(kf) + B * (0.5 / (kf * kf));
    if (!std::isfinite(sum)) throw evaluation_error("ltilde_moment: product diverged");
    return std::exp(sum);
}

LtildeSampler::LtildeSampler(double d, double p, int K) : K_(K) {
    ltilde_params(d, p, alpha_, gamma_);
    dshape_ = gamma_ * (1.0 / alpha_ - 1.0);
    b_.resize(K);
    lnEB_.resize(K);
    for (int k = 0; k < K; ++k) {
        b_[k] = gamma_ * (1.0 + static_cast<double>(k) / alpha_);
        lnEB_[k] = std::log(b_[k]) - std::log(b_[k] + dshape_);
    }
    // tail log-variance sum_{k>=K} Var(ln B_k) = psi'(b_k) - psi'(b_k + d)
    double s2 = 0.0;
    const int M = K + 4000;
    double last = 0.0;
    for (int k = K; k < M; ++k) {
        const double b = gamma_ * (1.0 + static_cast<double>(k) / alpha_);
        last = trigamma(b) - trigamma(b + dshape_);
        s2 += last;
    }
    s2 += last * static_cast<double>(M);  // terms ~ C/k^2: remaining sum ~ C/M = last*M
    sigma_tail_ = std::sqrt(std::max(0.0, s2));
}

double LtildeSampler::draw(Rng& rng) const {
    double ls = 0.0;
    for (int k = 0; k < K_; ++k) {
        const double B = rng.beta(b_[k], dshape_);
        ls += std::log((k + 1.0) / (k + alpha_)) + std::log(B);
    }
    const double z = rng.normal();
    return std::exp(ls - 0.5 * sigma_tail_ * sigma_tail_ + sigma_tail_ * z);
}

MonotonicityVerdict ml_monotonicity(const std::vector<double>& z_grid,
                                    const std::vector<double>& alpha_grid,
                                    double slack) {
    MonotonicityVerdict v;
    v.monotone = true;
    for (double z : z_grid) {
        std::vector<double> vals;
        for (double a : alpha_grid) {
            const double arg = std::exp(specfun::ln_gamma(1.0 + a)) * z;
            if (arg >= 0.0)
                vals.push_back(specfun::log_mittag_leffler(a, arg));
            else
                vals.push_back(std::log(specfun::mittag_leffler(a, arg)));
        }
        for (std::size_t i = 0; i + 1 < vals.size(); ++i) {
            const double diff = vals[i + 1] - vals[i];
            if (diff > slack) {
                v.monotone = false;
                v.max_violation = std::max(v.max_violation, diff);
                std::ostringstream os;
                os << "violation at z=" << z << " between alpha=" << alpha_grid[i]
                   << " and " << alpha_grid[i + 1];
                v.detail = os.str();
            }
        }
    }
    return v;
}

MonotonicityVerdict prefactor_monotone(double a, double b,
                                       const std::vector<double>& alpha_grid,
                                       double slack) {
    if (!(a > 0.0) || !(b > 0.0))
        throw std::domain_error("prefactor_monotone: a, b > 0");
    MonotonicityVerdict v;
    v.monotone = true;
    std::vector<double> vals;
    for (double al : alpha_grid) {
        const double lr = specfun::ln_gamma(1.0 + (b + 1.0) * al) +
                          specfun::ln_gamma(1.0 + (a + b) * al) -
                          specfun::ln_gamma(1.0 + b * al) -
                          specfun::ln_gamma(1.0 + (a + b + 1.0) * al);
        vals.push_back(std::exp(lr));
    }
    for (std::size_t i = 0; i + 1 < vals.size(); ++i) {
        const double diff = vals[i + 1] - vals[i];
        if (diff > slack) {  // genuine increase
            v.monotone = false;
            v.max_violation = std::max(v.max_violation, diff);
        } else if (std::fabs(diff) < 1e-14) {  // tie: not strictly decreasing
            v.monotone = false;
            v.detail = "tie between adjacent grid points";
        }
    }
    return v;
}

int single_crossing_count(double c1, double c2, double delta, int grid) {
    if (!(c1 > 0.0) || !(c2 > 0.0) || c1 >= 1.0 || c2 >= 1.0 || delta <= 1.0)
        throw std::domain_error("single_crossing_count: need c1, c2 < 1 < delta");
    int changes = 0;
    double prev = 0.0;
    for (int i = 1; i < grid; ++i) {
        const double x = static_cast<double>(i) / grid;
        const double inner = 1.0 - c2 * std::pow(x, delta);
        const double f = c1 * std::pow(inner, 1.0 / delta) + x - 1.0;
        if (prev != 0.0 && f != 0.0 && ((f > 0) != (prev > 0))) ++changes;
        if (f != 0.0) prev = f;
    }
    return changes;
}

}  // namespace alphasun::orders

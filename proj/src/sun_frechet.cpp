#include "alphasun/sun_frechet.hpp"

#include <cmath>
#include <sstream>

#include "alphasun/errors.hpp"
#include "alphasun/quadrature.hpp"
#include "alphasun/specfun.hpp"

namespace alphasun::frechet {

using specfun::EvalOptions;

namespace {

const EvalOptions kOpts(1e-12, 8192);

double lnF(const DistParams& p, double lambda);

// least-squares solve of the tiny normal systems used by the moment fit
void solve4(double M[4][5]) {
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::fabs(M[r][col]) > std::fabs(M[piv][col])) piv = r;
        for (int c = 0; c < 5; ++c) std::swap(M[col][c], M[piv][c]);
        for (int r = col + 1; r < 4; ++r) {
            const double f = M[r][col] / M[col][col];
            for (int c = col; c < 5; ++c) M[r][c] -= f * M[col][c];
        }
    }
    for (int col = 3; col >= 0; --col) {
        for (int c = col + 1; c < 4; ++c) M[col][4] -= M[col][c] * M[c][4];
        M[col][4] /= M[col][col];
    }
}

}  // namespace

double laplace_exponent_F_quad(const DistParams& p, double lambda) {
    // F(lambda) = int_0^inf (1 - alpha e^{-v/(lambda gamma)})^{-gamma} e^{-v} dv,
    // from the Euler integral with x = e^{-v/(lambda gamma)}.
    const double s = 1.0 / (lambda * p.gamma);
    auto f = [&](double v) {
        return std::pow(1.0 - p.alpha * std::exp(-s * v), -p.gamma) * std::exp(-v);
    };
    // integrand is bounded by (1-alpha)^{-gamma} e^{-v}; cut at e^{-40}
    return quad::integrate_checked(f, 0.0, 40.0, 1e-11) +
           quad::integrate_checked(f, 40.0, 80.0, 1e-11);
}

double laplace_exponent_F(const DistParams& p, double lambda) {
    if (lambda < 0.0) throw std::domain_error("laplace_exponent_F: lambda >= 0");
    if (lambda == 0.0) return 1.0;
    const double series =
        specfun::gauss_2f1(p.gamma, lambda * p.gamma, 1.0 + lambda * p.gamma, p.alpha, kOpts);
    const double quadr = laplace_exponent_F_quad(p, lambda);
    if (std::fabs(series - quadr) > 1e-9 * std::fabs(series)) {
        std::ostringstream os;
        os << "laplace_exponent_F: series/quadrature mismatch at lambda=" << lambda
           << ": " << series << " vs " << quadr;
        throw evaluation_error(os.str());
    }
    return series;
}

double levy_jump_tail(const DistParams& p, double t) {
    if (t < 0.0) throw std::domain_error("levy_jump_tail: t >= 0");
    // expm1 keeps precision when the tail is already tiny
    const double e = p.alpha * std::exp(-t / p.gamma);
    return std::expm1(-p.gamma * std::log1p(-e));
}

double sample_jump(const DistParams& p, double u) {
    if (!(u > 0.0) || !(u < 1.0)) throw std::domain_error("sample_jump: u in (0,1)");
    const double total = levy_jump_tail(p, 0.0);
    const double target = (1.0 - u) * total;
    const double inner = 1.0 - std::pow(1.0 + target, -1.0 / p.gamma);
    return -p.gamma * std::log(inner / p.alpha);
}

namespace {

double lnF(const DistParams& p, double lambda) {
    return std::log(laplace_exponent_F(p, lambda));
}

}  // namespace

double moment_Y(const DistParams& p, int n) {
    if (n < 0) throw std::domain_error("moment_Y: n >= 0");
    double ls = 0.0;
    for (int k = 1; k <= n; ++k) ls += std::log(static_cast<double>(k)) - lnF(p, k);
    return std::exp(ls);
}

double G_factor(const DistParams& p, double lambda) {
    if (!(lambda > 0.0)) throw std::domain_error("G_factor: lambda > 0");
    const double z = p.alpha / (p.alpha - 1.0);
    return specfun::gauss_2f1(p.gamma, 1.0, 1.0 + lambda * p.gamma, z, kOpts);
}

namespace {

// log of the k-th product factor  e^{beta/k} / G(k),  beta = alpha/(alpha-1).
// G goes through Pfaff: G(k) = (1-alpha) 2F1(1+k gamma-gamma, 1; 1+k gamma; alpha),
// and log G is assembled from log1p pieces to keep the k^-2-sized result exact.
double c_log_factor(const DistParams& p, double k) {
    const double beta = p.alpha / (p.alpha - 1.0);
    const double c0 = 1.0 + k * p.gamma;
    const double sm1 =
        specfun::detail::gauss_2f1_m1_direct(c0 - p.gamma, 1.0, c0, p.alpha, kOpts);
    // ln G = ln(1-alpha) + ln(1+sm1)
    const double lnG = std::log1p(-p.alpha) + std::log1p(sm1);
    return beta / k - lnG;
}

}  // namespace

double c_constant(const DistParams& p) {
    const double beta = p.alpha / (p.alpha - 1.0);
    const double pref = std::log(p.gamma) + (p.gamma / (p.alpha - 1.0)) * std::log1p(-p.alpha) +
                        p.alpha * specfun::digamma(1.0) / (p.alpha - 1.0);
    const int K = 20000;
    double sum = 0.0, comp = 0.0;
    for (int k = 1; k <= K; ++k) {
        const double t = c_log_factor(p, k);
        const double y = t - comp;
        const double s = sum + y;
        comp = (s - sum) - y;
        sum = s;
    }
    // factors must be essentially 1 by the cap (the fitted tail absorbs the rest)
    const double tK = c_log_factor(p, K);
    if (std::fabs(tK) > 1e-6)
        throw evaluation_error("c_constant: product factors not converged at K_max");
    // tail sum: t(k) = A/k^2 + B/k^3 through the values at K/2 and K
    const double th = c_log_factor(p, K / 2.0);
    const double kh = K / 2.0, kf = K;
    // [1/kh^2 1/kh^3; 1/kf^2 1/kf^3] [A B]' = [th tK]'
    const double a11 = 1.0 / (kh * kh), a12 = 1.0 / (kh * kh * kh);
    const double a21 = 1.0 / (kf * kf), a22 = 1.0 / (kf * kf * kf);
    const double det = a11 * a22 - a12 * a21;
    const double A = (th * a22 - tK * a12) / det;
    const double B = (a11 * tK - a21 * th) / det;
    // sum_{k>K} 1/k^2 = psi'(K+1); sum_{k>K} 1/k^3 ~ 1/(2K^2) - 1/(2K^3) + ...
    const double s2 = specfun::detail::trigamma(K + 1.0);
    const double s3 = 0.5 / (static_cast<double>(K) * K) - 0.5 / (static_cast<double>(K) * K * K);
    sum += A * s2 + B * s3;
    (void)beta;
    return std::exp(pref + sum);
}

double c_constant_from_moments(const DistParams& p, int n_lo, int n_hi) {
    const double a1 = p.alpha / (1.0 - p.alpha);
    const double lg1ma = std::log1p(-p.alpha);
    double lf = 0.0;
    // normal equations for log r_n = c0 + c1/n + c2/n^2 + c3/n^3
    double M[4][5] = {{0}};
    for (int k = 1; k <= n_hi; ++k) {
        lf += lnF(p, k);
        if (k >= n_lo) {
            const double n = k;
            const double lr = -lf - a1 * std::log(n) - p.gamma * n * lg1ma;
            const double x[4] = {1.0, 1.0 / n, 1.0 / (n * n), 1.0 / (n * n * n)};
            for (int i = 0; i < 4; ++i) {
                for (int j = 0; j < 4; ++j) M[i][j] += x[i] * x[j];
                M[i][4] += x[i] * lr;
            }
        }
    }
    solve4(M);
    const double log_rinf = M[0][4];
    // r_inf = c_g (1-alpha)^{gamma/(1-alpha)} and c = gamma c_g
    return p.gamma * std::exp(log_rinf - (p.gamma / (1.0 - p.alpha)) * lg1ma);
}

double factor_sample_Y(const DistParams& p, int k, Rng& rng) {
    if (k < 1) throw std::domain_error("factor_sample_Y: k >= 1");
    const double lacc = p.gamma * std::log1p(-p.alpha);
    for (;;) {
        const double x = std::pow(rng.uniform01(), 1.0 / k);
        // accept w.p. (1-alpha x^{1/gamma})^{-gamma} (1-alpha)^{gamma} in (0,1]
        const double lp = -p.gamma * std::log1p(-p.alpha * std::pow(x, 1.0 / p.gamma)) + lacc;
        if (std::log(rng.uniform01()) < lp) return x;
    }
}

ProductSamplerY::ProductSamplerY(const DistParams& p, int K) : p_(p), K_(K) {
    if (K < 8) throw std::domain_error("ProductSamplerY: K >= 8");
    const double lnFK1 = lnF(p, K + 1.0);
    const double lnFK2 = lnF(p, K + 2.0);
    ln_prefactor_ = std::log(K + 1.0) - lnFK1;
    const double ln_beta2 = std::log((K + 2.0) / (K + 1.0)) + lnFK1 - lnFK2;
    sigma_tail_ = std::sqrt(std::max(0.0, 2.0 * ln_beta2));
}

double ProductSamplerY::draw(Rng& rng) const {
    double ls = 0.0;
    for (int k = 1; k <= K_; ++k) ls += std::log(factor_sample_Y(p_, k, rng));
    const double z = rng.normal();
    return std::exp(ln_prefactor_ + ls - 0.5 * sigma_tail_ * sigma_tail_ + sigma_tail_ * z);
}

double sample_Y_product(const DistParams& p, int K, Rng& rng) {
    return ProductSamplerY(p, K).draw(rng);
}

MomentSequence moment_sequence_Y(const DistParams& p, int n_max) {
    std::vector<double> v;
    v.reserve(n_max);
    double ls = 0.0;
    for (int k = 1; k <= n_max; ++k) {
        ls += std::log(static_cast<double>(k)) - lnF(p, k);
        v.push_back(std::exp(ls));
    }
    return MomentSequence(std::move(v), MomentKind::y_positive);
}

}  // namespace alphasun::frechet

#include "alphasun/perpetuity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "alphasun/errors.hpp"
#include "alphasun/quadrature.hpp"
#include "alphasun/specfun.hpp"
#include "alphasun/sun_frechet.hpp"
#include "alphasun/sun_weibull.hpp"

namespace alphasun::perpetuity {

void SubordinatorSpec::validate() const {
    if (q < 0.0 || b < 0.0) throw config_error("SubordinatorSpec: q, b >= 0");
    const bool no_jumps = total_mass == 0.0;
    if (q == 0.0 && b == 0.0 && no_jumps)
        throw config_error("SubordinatorSpec: (q, b, pi) must not all vanish");
}

double laplace_exponent(const SubordinatorSpec& spec, double lambda) {
    if (!(lambda > 0.0)) throw std::domain_error("laplace_exponent: lambda > 0");
    double integral = 0.0;
    if (spec.total_mass > 0.0 || spec.q > 0.0) {
        auto w = [&](double x) { return spec.q + spec.tail(-std::log(x)); };
        auto f = [&](double x) { return std::pow(x, lambda - 1.0) * w(x); };
        if (spec.endpoint_order > 0.0) {
            integral = quad::integrate_checked(f, 0.0, 0.5, 1e-11) +
                       quad::integrate_left_of_singularity(f, 0.5, 1.0,
                                                           spec.endpoint_order, 1e-11);
        } else {
            integral = quad::integrate_checked(f, 0.0, 1.0, 1e-11);
        }
    }
    return lambda * (spec.b + integral);
}

double perpetuity_moment(const SubordinatorSpec& spec, int n) {
    if (n < 0) throw std::domain_error("perpetuity_moment: n >= 0");
    double ls = 0.0;
    for (int k = 1; k <= n; ++k)
        ls += std::log(static_cast<double>(k)) - std::log(laplace_exponent(spec, k));
    return std::exp(ls);
}

FactorLaw factor_law(const SubordinatorSpec& spec, int k) {
    if (k < 1) throw std::domain_error("factor_law: k >= 1");
    FactorLaw law;
    law.k = k;
    const double phi = laplace_exponent(spec, k);
    law.atom_weight = spec.b * k / phi;
    law.ac_density = [spec, k, phi](double x) {
        if (x <= 0.0 || x >= 1.0) return 0.0;
        return k * std::pow(x, k - 1.0) * (spec.q + spec.tail(-std::log(x))) / phi;
    };
    return law;
}

FactorSampler::FactorSampler(const SubordinatorSpec& spec, int k)
    : spec_(spec), k_(k) {
    if (k < 1) throw std::domain_error("FactorSampler: k >= 1");
    phi_k_ = laplace_exponent(spec, k);
    atom_weight_ = spec.b * k / phi_k_;
    if (std::isfinite(spec.total_mass)) {
        env_bound_ = spec.q + spec.total_mass;
        return;
    }
    // Unbounded tail near x=1: build a monotone inverse-CDF table for the
    // continuous part. Right half uses the substitution v = (1-x)^(1-p)
    // that removes the (1-x)^{-p} blow-up.
    env_bound_ = 0.0;
    const double p = spec.endpoint_order;
    if (!(p > 0.0) && !spec.tail_inverse)
        throw config_error("FactorSampler: unbounded tail needs endpoint_order or inverse");
    auto dens = [&](double x) {
        return k * std::pow(x, k - 1.0) * (spec.q + spec.tail(-std::log(x)));
    };
    const int n_left = 2048, n_right = 2048;
    const double x_lo = std::pow(1e-14, 1.0 / k);
    std::vector<double> xs;
    xs.reserve(n_left + n_right + 1);
    for (int i = 0; i <= n_left; ++i)
        xs.push_back(x_lo * std::pow(0.5 / x_lo, static_cast<double>(i) / n_left));
    const double q1 = 1.0 / (1.0 - p);
    const double v_half = std::pow(0.5, 1.0 - p);  // v at x = 0.5
    for (int i = 1; i <= n_right; ++i) {
        // v shrinks geometrically toward 0 (x -> 1)
        const double v = v_half * std::pow(1e-12, static_cast<double>(i) / n_right);
        xs.push_back(1.0 - std::pow(v, q1));
    }
    table_x_ = xs;
    table_cdf_.assign(xs.size(), 0.0);
    double acc = 0.0;
    for (std::size_t i = 1; i < xs.size(); ++i) {
        const double a = xs[i - 1], bb = xs[i];
        double seg;
        if (bb <= 0.5 + 1e-12) {
            seg = quad::gauss20(dens, a, bb);
        } else {
            const double va = std::pow(1.0 - a, 1.0 - p);
            const double vb = std::pow(1.0 - bb, 1.0 - p);
            auto g = [&](double v) {
                const double x = 1.0 - std::pow(v, q1);
                return dens(x) * q1 * std::pow(v, q1 - 1.0);
            };
            seg = quad::gauss20(g, vb, va);
        }
        acc += seg;
        table_cdf_[i] = acc;
    }
    // normalize; cross-check against Phi(k)/k * k = continuous mass
    const double expect = phi_k_ * (1.0 - atom_weight_) / phi_k_;  // = 1 - atom
    const double got = acc / phi_k_;
    if (std::fabs(got - expect) > 1e-6 * std::max(1.0, expect))
        throw evaluation_error("FactorSampler: CDF normalization mismatch");
    for (auto& c : table_cdf_) c /= acc;
}

double FactorSampler::draw(Rng& rng) const {
    const double u0 = rng.uniform01();
    if (u0 < atom_weight_) return 1.0;
    if (table_x_.empty()) {
        // bounded envelope rejection: propose x = u^{1/k}
        for (;;) {
            const double x = std::pow(rng.uniform01(), 1.0 / k_);
            const double w = spec_.q + spec_.tail(-std::log(x));
            if (rng.uniform01() * env_bound_ <= w) return x;
        }
    }
    const double u = rng.uniform01();
    auto it = std::lower_bound(table_cdf_.begin(), table_cdf_.end(), u);
    if (it == table_cdf_.begin()) return table_x_.front();
    if (it == table_cdf_.end()) return table_x_.back();
    const std::size_t i = static_cast<std::size_t>(it - table_cdf_.begin());
    const double c0 = table_cdf_[i - 1], c1 = table_cdf_[i];
    const double w = (c1 > c0) ? (u - c0) / (c1 - c0) : 0.5;
    return table_x_[i - 1] + w * (table_x_[i] - table_x_[i - 1]);
}

ProductSampler::ProductSampler(const SubordinatorSpec& spec, int K) : K_(K) {
    if (K < 8) throw std::domain_error("ProductSampler: K >= 8");
    spec.validate();
    factors_.reserve(K);
    for (int k = 1; k <= K; ++k) factors_.emplace_back(spec, k);
    const double l1 = std::log(laplace_exponent(spec, K + 1.0));
    const double l2 = std::log(laplace_exponent(spec, K + 2.0));
    ln_prefactor_ = std::log(K + 1.0) - l1;
    const double ln_beta2 = std::log((K + 2.0) / (K + 1.0)) + l1 - l2;
    sigma_tail_ = std::sqrt(std::max(0.0, 2.0 * ln_beta2));
}

double ProductSampler::draw(Rng& rng) const {
    double ls = 0.0;
    for (const auto& f : factors_) ls += std::log(f.draw(rng));
    const double z = rng.normal();
    return std::exp(ln_prefactor_ + ls - 0.5 * sigma_tail_ * sigma_tail_ + sigma_tail_ * z);
}

PerpetuitySimulator::PerpetuitySimulator(const SubordinatorSpec& spec, double eps,
                                         double jump_eps)
    : spec_(spec), eps_(eps) {
    spec.validate();
    ln_phi1_ = std::log(laplace_exponent(spec, 1.0));
    drift_ = spec.b;
    jump_floor_ = 0.0;
    if (spec.total_mass == 0.0) {
        rate_ = 0.0;
    } else if (std::isfinite(spec.total_mass)) {
        rate_ = spec.total_mass;
    } else {
        if (!(eps > 0.0))
            throw config_error("PerpetuitySimulator: infinite activity needs eps > 0");
        jump_floor_ = jump_eps;
        rate_ = spec.tail(jump_floor_);
        // exact mean of the removed small jumps: int_0^eps pi(t,inf) dt - eps pi(eps,inf)
        const double p = spec.endpoint_order;  // tail(t) ~ t^{-p} at 0+
        auto g = [&](double t) { return spec.tail(t); };
        double small_mass;
        if (p > 0.0) {
            const double qq = 1.0 / (1.0 - p);
            auto h = [&](double v) {
                return g(std::pow(v, qq)) * qq * std::pow(v, qq - 1.0);
            };
            small_mass = quad::integrate_checked(h, 0.0, std::pow(jump_floor_, 1.0 - p), 1e-10);
        } else {
            small_mass = quad::integrate_checked(g, 0.0, jump_floor_, 1e-10);
        }
        drift_ += small_mass - jump_floor_ * rate_;
    }
    const bool conditioned = jump_floor_ > 0.0;
    if (rate_ > 0.0 && !spec.tail_inverse) {
        // inverse-CDF table for P(S > s)/P(S > floor) on a log-refined u-grid
        const double base = conditioned ? rate_ : spec.tail(0.0);
        const double lo = jump_floor_;
        double hi = std::min(spec.support_end, 1.0 + lo);
        while (spec.tail(hi) > 1e-12 * base && hi < 1e6) hi *= 2.0;
        const int n = 4096;
        inv_u_.resize(n + 1);
        inv_t_.resize(n + 1);
        for (int i = 0; i <= n; ++i) {
            // survival levels geometric from 1 down to 1e-12
            const double s_level = std::pow(1e-12, static_cast<double>(i) / n);
            inv_u_[i] = s_level;
            double a = lo, bnd = hi;
            for (int it = 0; it < 200; ++it) {
                const double m = 0.5 * (a + bnd);
                if (spec.tail(m) / base > s_level)
                    a = m;
                else
                    bnd = m;
            }
            inv_t_[i] = 0.5 * (a + bnd);
        }
    }
}

double PerpetuitySimulator::sample_jump_size(Rng& rng) const {
    const double u = rng.uniform01();  // survival level of the drawn jump
    if (spec_.tail_inverse && jump_floor_ == 0.0)
        return (*spec_.tail_inverse)(u * spec_.total_mass);
    // table lookup on geometric survival levels
    const double s_level = u;
    const double pos = std::log(s_level) / std::log(1e-12) * (inv_u_.size() - 1.0);
    const double idx = std::clamp(pos, 0.0, inv_u_.size() - 1.0);
    const std::size_t i0 = static_cast<std::size_t>(idx);
    const std::size_t i1 = std::min(i0 + 1, inv_t_.size() - 1);
    const double w = idx - i0;
    return inv_t_[i0] * (1.0 - w) + inv_t_[i1] * w;
}

double PerpetuitySimulator::draw(Rng& rng) const {
    double sigma = 0.0;
    double total = 0.0;
    const double stop_bound = eps_;
    for (int step = 0; step < 1000000; ++step) {
        // remaining-mass bound e^{-sigma}/Phi(1)
        if (std::exp(-sigma - ln_phi1_) < stop_bound)
            return total + 0.5 * std::exp(-sigma - ln_phi1_);
        double tau_jump = (rate_ > 0.0) ? rng.exponential() / rate_
                                        : std::numeric_limits<double>::infinity();
        double tau_kill = (spec_.q > 0.0) ? rng.exponential() / spec_.q
                                           : std::numeric_limits<double>::infinity();
        const double tau = std::min(tau_jump, tau_kill);
        if (!std::isfinite(tau)) {
            // pure drift forever
            if (drift_ > 0.0) return total + std::exp(-sigma) / drift_;
            return total;  // degenerate; validate() excludes this
        }
        if (drift_ > 0.0)
            total += std::exp(-sigma) * -std::expm1(-drift_ * tau) / drift_;
        else
            total += std::exp(-sigma) * tau;
        if (tau_kill <= tau_jump) return total;  // killed: integral ends here
        sigma += drift_ * tau + sample_jump_size(rng);
    }
    throw evaluation_error("PerpetuitySimulator: path did not terminate");
}

double simulate_perpetuity(const SubordinatorSpec& spec, Rng& rng, double eps) {
    return PerpetuitySimulator(spec, eps).draw(rng);
}

SubordinatorSpec make_alpha_sun(const DistParams& p) {
    SubordinatorSpec s;
    s.q = 1.0;
    s.b = 0.0;
    s.tail = [p](double t) { return frechet::levy_jump_tail(p, t); };
    s.total_mass = frechet::levy_jump_tail(p, 0.0);
    const double total = s.total_mass;
    s.tail_inverse = [p, total](double v) {
        const double inner = 1.0 - std::pow(1.0 + v, -1.0 / p.gamma);
        return -p.gamma * std::log(inner / p.alpha);
    };
    s.label = "alpha_sun";
    return s;
}

SubordinatorSpec make_alpha_sun_hat(const DistParams& p) {
    SubordinatorSpec s;
    s.q = 0.0;
    s.b = 0.0;
    s.tail = [p](double t) { return weibull::levy_jump_tail_hat(p, t); };
    s.total_mass = std::pow(1.0 - p.alpha, p.gamma);
    s.support_end = p.gamma * std::log(1.0 / p.alpha);
    s.tail_inverse = [p](double v) {
        const double inner = 1.0 - std::pow(v, 1.0 / p.gamma);
        return p.gamma * std::log(inner / p.alpha);
    };
    s.label = "alpha_sun_hat";
    return s;
}

SubordinatorSpec make_jumpless(double q, double b) {
    if (!(q > 0.0) || !(b > 0.0)) throw config_error("jumpless: q, b > 0");
    SubordinatorSpec s;
    s.q = q;
    s.b = b;
    s.tail = [](double) { return 0.0; };
    s.total_mass = 0.0;
    s.support_end = 0.0;
    s.label = "jumpless";
    return s;
}

SubordinatorSpec make_bessel_local_time(double alpha, double gamma) {
    if (!(alpha > 0.0) || !(alpha < 1.0) || !(gamma > 0.0))
        throw config_error("bessel_local_time: alpha in (0,1), gamma > 0");
    SubordinatorSpec s;
    s.q = 0.0;
    s.b = 0.0;
    const double pref = std::pow(gamma / 2.0, alpha) / std::tgamma(alpha + 1.0);
    s.tail = [alpha, gamma, pref](double t) {
        if (t <= 0.0) return std::numeric_limits<double>::infinity();
        // (g/2)^a e^{-g t} (1 - e^{-g t / a})^{-a} / Gamma(1+a)
        return pref * std::exp(-gamma * t) *
               std::pow(-std::expm1(-gamma * t / alpha), -alpha);
    };
    s.total_mass = std::numeric_limits<double>::infinity();
    s.endpoint_order = alpha;
    s.label = "bessel_local_time";
    return s;
}

SubordinatorSpec builtin_spec(const std::string& name, double a_or_q, double g_or_b) {
    if (name == "alpha_sun") return make_alpha_sun(DistParams(a_or_q, g_or_b));
    if (name == "alpha_sun_hat") return make_alpha_sun_hat(DistParams(a_or_q, g_or_b));
    if (name == "jumpless") return make_jumpless(a_or_q, g_or_b);
    if (name == "bessel_local_time") return make_bessel_local_time(a_or_q, g_or_b);
    throw config_error("builtin_spec: unknown tag '" + name + "'");
}

double sample_sized_biased_beta(double a, double b, int K, Rng& rng) {
    if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("sized_biased_beta: a, b > 0");
    if (K < 8) throw std::domain_error("sized_biased_beta: K >= 8");
    // factors k = 0..K-1: atom (k+a)/(k+a+b) at 1, else density (k+a) x^{k+a-1};
    // prefactors telescope to (K+a)/(K+a+b).
    double ls = std::log((K + a) / (K + a + b));
    for (int k = 0; k < K; ++k) {
        const double atom = (k + a) / (k + a + b);
        if (rng.uniform01() >= atom)
            ls += std::log(rng.uniform01()) / (k + a);
    }
    const double beta2 =
        (K + a + 2.0) * (K + a + b + 1.0) / ((K + a + 1.0) * (K + a + b + 2.0));
    const double sig = std::sqrt(std::max(0.0, 2.0 * std::log(beta2)));
    return std::exp(ls - 0.5 * sig * sig + sig * rng.normal());
}

bool ggc_condition(double alpha, double gamma) {
    return ((1.0 - alpha) * gamma >= alpha) || (gamma >= 1.0 && gamma <= 2.0);
}

}  // namespace alphasun::perpetuity

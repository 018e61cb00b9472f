#include "alphasun/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "alphasun/ide_solver.hpp"
#include "alphasun/perpetuity.hpp"
#include "alphasun/quadrature.hpp"
#include "alphasun/rng.hpp"
#include "alphasun/specfun.hpp"
#include "alphasun/stochastic_orders.hpp"
#include "alphasun/storage_sim.hpp"
#include "alphasun/sun_frechet.hpp"
#include "alphasun/sun_weibull.hpp"

namespace alphasun::verify {

namespace {

std::string tag(const DistParams& p) {
    std::ostringstream os;
    os << "(a=" << p.alpha << ",g=" << p.gamma << ")";
    return os.str();
}

CheckResult mk(const std::string& name, double observed, double bound, bool pass,
               const std::string& note = "") {
    return CheckResult{name, pass, observed, bound, note};
}

CheckResult below(const std::string& name, double observed, double bound,
                  const std::string& note = "") {
    return mk(name, observed, bound, observed <= bound, note);
}

struct MomentStats {
    double mean, se;
};

MomentStats empirical_moment(const std::vector<double>& xs, int n) {
    double m = 0.0, m2 = 0.0;
    for (double v : xs) {
        const double y = std::pow(v, n);
        m += y;
        m2 += y * y;
    }
    const double cnt = static_cast<double>(xs.size());
    m /= cnt;
    m2 /= cnt;
    return {m, std::sqrt(std::max(0.0, m2 - m * m) / cnt)};
}

}  // namespace

Checks moment_agreement(const DistParams& p, int draws, int K, std::uint64_t seed) {
    Checks out;
    frechet::ProductSamplerY prod(p, K);
    auto spec = perpetuity::make_alpha_sun(p);
    perpetuity::PerpetuitySimulator sim(spec);
    std::vector<double> xs_prod(draws), xs_perp(draws);
    Rng r1 = Rng::split(seed, 1), r2 = Rng::split(seed, 2);
    for (int i = 0; i < draws; ++i) xs_prod[i] = prod.draw(r1);
    for (int i = 0; i < draws; ++i) xs_perp[i] = sim.draw(r2);
    for (int n = 1; n <= 3; ++n) {
        const double exact = frechet::moment_Y(p, n);
        const auto a = empirical_moment(xs_prod, n);
        const auto b = empirical_moment(xs_perp, n);
        out.push_back(below("moment" + tag(p) + " n=" + std::to_string(n) + " product-vs-exact",
                            std::fabs(a.mean - exact), 3.0 * a.se));
        out.push_back(below("moment" + tag(p) + " n=" + std::to_string(n) + " perpetuity-vs-exact",
                            std::fabs(b.mean - exact), 3.0 * b.se));
        out.push_back(below("moment" + tag(p) + " n=" + std::to_string(n) + " product-vs-perpetuity",
                            std::fabs(a.mean - b.mean),
                            3.0 * std::sqrt(a.se * a.se + b.se * b.se)));
    }
    return out;
}

Checks constant_dual_route(const DistParams& p, double rel_bound) {
    Checks out;
    const double c1 = frechet::c_constant(p);
    const double c2 = frechet::c_constant_from_moments(p);
    out.push_back(below("c_dual" + tag(p), std::fabs(c2 - c1) / c1, rel_bound,
                        "product=" + std::to_string(c1) + " fit=" + std::to_string(c2)));
    return out;
}

Checks constant_boundary_surrogate() {
    Checks out;
    for (double g : {1.0, 2.0}) {
        DistParams p(1e-9, g);
        const double c = frechet::c_constant(p);
        out.push_back(below("c_boundary(g=" + std::to_string(g) + ")",
                            std::fabs(c - g) / g, 1e-6));
    }
    return out;
}

Checks density_frechet(const DistParams& p) {
    Checks out;
    auto td = ide::solve_frechet(p);
    out.push_back(below("frechet_residual" + tag(p), ide::equation_residual(td), 1e-6));
    out.push_back(below("frechet_norm_defect" + tag(p),
                        std::fabs(td.normalization_defect), 1e-6));
    // right-tail constant: h(x) x^{gamma+1} within 2% of gamma at the top
    const double tail_c = td.values.back() * std::pow(td.grid.back(), p.gamma + 1.0);
    out.push_back(below("frechet_tail_const" + tag(p),
                        std::fabs(tail_c - p.gamma) / p.gamma, 0.02));
    // left tail vs the analytic form with the independently computed constant,
    // compared where the form's own next-order correction has decayed
    auto ltc = ide::frechet_left_tail_check(p);
    std::ostringstream note;
    note << "at E=" << ltc.E_at_xmin << ", fitted C=" << ltc.C_fit
         << (ltc.depth_capped ? " (depth capped by double range)" : "");
    out.push_back(mk("frechet_left_tail" + tag(p), ltc.worst_dev, 0.05,
                     ltc.worst_dev <= 0.05, note.str()));
    // moment cross-check: int x^{-gamma} h = E[Y]
    const double m1 = ide::mellin(td, 1.0 - p.gamma);
    const double m1_exact = frechet::moment_Y(p, 1);
    out.push_back(below("frechet_momentY1" + tag(p),
                        std::fabs(m1 - m1_exact) / m1_exact, 1e-4));
    return out;
}

Checks density_weibull(const DistParams& p) {
    Checks out;
    auto td = ide::solve_weibull(p);
    out.push_back(below("weibull_residual" + tag(p), ide::equation_residual(td), 1e-6));
    out.push_back(below("weibull_norm_defect" + tag(p),
                        std::fabs(td.normalization_defect), 1e-6));
    // flat-ratio fit residual of the right tail (log scale; 5% ~ 0.0488)
    out.push_back(below("weibull_tail_fit" + tag(p), td.right_tail.fit_residual,
                        std::log(1.05)));
    const double m1 = ide::mellin(td, 1.0 + p.gamma);
    const double m1_exact = weibull::moment_Yhat(p, 1);
    out.push_back(below("weibull_momentYhat1" + tag(p),
                        std::fabs(m1 - m1_exact) / m1_exact, 1e-4));
    return out;
}

Checks mellin_residuals(const DistParams& p) {
    Checks out;
    auto tdf = ide::solve_frechet(p);
    for (double s : {-1.0, 0.0, 0.5, 1.0}) {
        out.push_back(below("mellin_frechet" + tag(p) + " s=" + std::to_string(s),
                            ide::mellin_residual_frechet(tdf, s), 1e-4));
    }
    auto tdw = ide::solve_weibull(p);
    for (double s : {-2.0, -1.0, 0.0, 1.0, 2.0, 3.0}) {
        out.push_back(below("mellin_weibull" + tag(p) + " s=" + std::to_string(s),
                            ide::mellin_residual_weibull(tdw, s), 1e-4));
    }
    return out;
}

Checks weibull_boundary() {
    Checks out;
    DistParams p(1e-6, 2.0);
    auto td = ide::solve_weibull(p);
    // compare against gamma x^{gamma-1} exp(-x^gamma) over the central 99% mass
    const double xlo = ide::quantile(td, 0.005);
    const double xhi = ide::quantile(td, 0.995);
    double worst = 0.0;
    for (std::size_t i = 0; i < td.grid.size(); ++i) {
        const double x = td.grid[i];
        if (x < xlo || x > xhi) continue;
        const double ref = p.gamma * std::pow(x, p.gamma - 1.0) *
                           std::exp(-std::pow(x, p.gamma));
        worst = std::max(worst, std::fabs(td.values[i] - ref) / ref);
    }
    out.push_back(below("weibull_boundary(a=1e-6,g=2)", worst, 0.01));
    return out;
}

namespace {

// per-decade increment ratio of the growth curve near the cutoff 1e9
double decade_ratio_at_1e9(const std::vector<std::pair<double, double>>& curve) {
    // curve holds (10^d, I(10^d)); need increments over decades 8 and 9
    double i8 = 0.0, i9 = 0.0;
    for (std::size_t i = 1; i < curve.size(); ++i) {
        const double inc = curve[i].second - curve[i - 1].second;
        if (std::fabs(curve[i].first - 1e8) < 1e2) i8 = inc;
        if (std::fabs(curve[i].first - 1e9) < 1e3) i9 = inc;
    }
    return (i8 > 0.0) ? i9 / i8 : 0.0;
}

}  // namespace

Checks mdet_thresholds(const std::vector<double>& gammas) {
    Checks out;
    for (double g : gammas) {
        DistParams p(0.5, g);
        // verdict flips exactly at t = 2 gamma (inclusive), both cases
        auto at = [&](double t) { return weibull::mdet_verdict_hat(p, t); };
        auto af = [&](double t) { return weibull::mdet_verdict_frechet(p, t); };
        bool flips = at(2.0 * g).m_det && !at(2.0 * g + 1e-9).m_det &&
                     at(0.5 * g).m_det && !at(-1.0).m_det && af(2.0 * g).m_det &&
                     !af(2.0 * g + 1e-9).m_det && af(3.0 * g).m_det == false;
        out.push_back(mk("mdet_flip(g=" + std::to_string(g) + ")", flips ? 1.0 : 0.0,
                         1.0, flips));
        // +-0.1 discrimination by cutoff 1e9 through the per-decade increment ratio
        auto vd = at(2.0 * g - 0.1);
        auto vp = at(2.0 * g + 0.1);
        const double rd = decade_ratio_at_1e9(vd.krein_growth_curve);
        const double rp = decade_ratio_at_1e9(vp.krein_growth_curve);
        out.push_back(mk("mdet_curve_diverges(g=" + std::to_string(g) + ",t=2g-0.1)", rd,
                         1.005, rd >= 1.005));
        out.push_back(mk("mdet_curve_plateaus(g=" + std::to_string(g) + ",t=2g+0.1)", rp,
                         0.995, rp > 0.0 && rp <= 0.995));
        // the plateau curve must actually flatten under extended cutoffs
        const auto& c = vp.krein_growth_curve;
        bool flat = c.size() >= 2 &&
                    (c.back().second - c[c.size() - 2].second) < 1e-6;
        out.push_back(mk("mdet_curve_flat(g=" + std::to_string(g) + ",t=2g+0.1)",
                         flat ? 1.0 : 0.0, 1.0, flat));
    }
    return out;
}

namespace {

// rho_n = E[Lhat^n]/E[Lhat]^n via the pure-beta product ((LT) route)
double bessel_rho_LT(double alpha, double gamma, int n) {
    return orders::ltilde_moment(2.0 * (1.0 - alpha), (1.0 - gamma) / 2.0, n);
}

// rho_n via the beta-power product ((LTA) first identity)
double bessel_rho_LTA(double alpha, double gamma, int n) {
    const double s = alpha / gamma;
    auto logEY = [&](double k, int m) {
        const double a = alpha * (1.0 + k / gamma);
        return specfun::ln_gamma(a + s * m) + specfun::ln_gamma(a + 1.0 - alpha) -
               specfun::ln_gamma(a) - specfun::ln_gamma(a + 1.0 - alpha + s * m);
    };
    auto log_factor = [&](double k) { return logEY(k, n) - n * logEY(k, 1); };
    const long K = 100000;
    double sum = 0.0, comp = 0.0;
    for (long k = 0; k < K; ++k) {
        const double t = log_factor(static_cast<double>(k));
        const double y = t - comp;
        const double ss = sum + y;
        comp = (ss - sum) - y;
        sum = ss;
    }
    const double t1 = log_factor(K / 2.0), t2 = log_factor(static_cast<double>(K));
    const double kh = K / 2.0, kf = static_cast<double>(K);
    const double a11 = 1.0 / (kh * kh), a12 = 1.0 / (kh * kh * kh);
    const double a21 = 1.0 / (kf * kf), a22 = 1.0 / (kf * kf * kf);
    const double det = a11 * a22 - a12 * a21;
    const double A = (t1 * a22 - t2 * a12) / det;
    const double B = (a11 * t2 - a21 * t1) / det;
    sum += A * specfun::detail::trigamma(kf) + B * (0.5 / (kf * kf));
    return std::exp(sum);
}

// rho_n through the subordinator factorization: size-bias factor times the
// perpetuity moments computed from the quadrature Laplace exponent
double bessel_rho_subordinator(double alpha, double gamma, int n) {
    auto spec = perpetuity::make_bessel_local_time(alpha, gamma);
    double lr = 0.0;
    for (int j = 1; j <= n; ++j)
        lr += std::log(static_cast<double>(j)) -
              std::log(perpetuity::laplace_exponent(spec, j));
    lr += n * std::log(perpetuity::laplace_exponent(spec, 1.0));
    const double s = alpha / gamma;
    auto logEY0 = [&](int m) {
        return specfun::ln_gamma(alpha + s * m) + specfun::ln_gamma(1.0) -
               specfun::ln_gamma(alpha) - specfun::ln_gamma(1.0 + s * m);
    };
    lr += logEY0(n) - n * logEY0(1);
    return std::exp(lr);
}

}  // namespace

Checks factorizations(std::uint64_t seed) {
    Checks out;
    // jumpless: the K=400 product reproduces B_{1,gamma}; KS against the
    // closed-form cdf 1-(1-x)^gamma at 1e5 draws
    for (double g : {1.0, 2.0}) {
        auto spec = perpetuity::make_jumpless(g, 1.0);
        perpetuity::ProductSampler prod(spec, 400);
        Rng rng = Rng::split(seed, 77 + static_cast<int>(g));
        std::vector<double> xs(100000);
        for (auto& v : xs) v = prod.draw(rng);
        storage::SampleBatch batch(std::move(xs));
        const double ks = storage::ks_distance(batch, [g](double x) {
            if (x <= 0.0) return 0.0;
            if (x >= 1.0) return 1.0;
            return 1.0 - std::pow(1.0 - x, g);
        });
        out.push_back(below("jumpless_beta_ks(g=" + std::to_string(g) + ")", ks, 0.01));
    }
    // Bessel local-time product-moment identities, three routes pairwise
    for (double a : {0.25, 0.5, 0.75}) {
        for (double g : {0.5, 1.0, 1.5}) {
            for (int n = 2; n <= 4; ++n) {
                const double r1 = bessel_rho_LT(a, g, n);
                const double r2 = bessel_rho_LTA(a, g, n);
                const double r3 = bessel_rho_subordinator(a, g, n);
                std::ostringstream nm;
                nm << "bessel_rho(a=" << a << ",g=" << g << ",n=" << n << ")";
                const double d12 = std::fabs(r1 - r2) / r1;
                const double d13 = std::fabs(r1 - r3) / r1;
                out.push_back(below(nm.str() + " LT-vs-LTA", d12, 1e-6));
                out.push_back(below(nm.str() + " LT-vs-subordinator", d13, 1e-6));
            }
        }
    }
    return out;
}

Checks storage_convergence(std::uint64_t seed) {
    Checks out;
    const double alpha = 0.5;
    auto tdf = ide::solve_frechet(DistParams(alpha, 1.0));
    auto tdw = ide::solve_weibull(DistParams(alpha, 1.0));

    struct Domain {
        storage::InputLaw law;
        std::function<double(const storage::SampleBatch&)> ks;
        std::string name;
    };
    std::vector<Domain> domains;
    domains.push_back({{storage::InputLaw::Tag::pareto_frechet, 1.0},
                       [&](const storage::SampleBatch& b) {
                           const double s = storage::median_scale_fit(b, ide::quantile(tdf, 0.5));
                           return storage::ks_distance(b, [&](double x) {
                               return ide::cdf(tdf, x * s);
                           });
                       },
                       "frechet"});
    domains.push_back({{storage::InputLaw::Tag::bounded_weibull, 1.0},
                       [&](const storage::SampleBatch& b) {
                           // negated sample against the Weibull-case law
                           std::vector<double> neg;
                           neg.reserve(b.count());
                           for (double v : b.sorted()) neg.push_back(-v);
                           storage::SampleBatch nb(std::move(neg));
                           const double s = storage::median_scale_fit(nb, ide::quantile(tdw, 0.5));
                           return storage::ks_distance(nb, [&](double x) {
                               return ide::cdf(tdw, x * s);
                           });
                       },
                       "weibull"});
    domains.push_back({{storage::InputLaw::Tag::exponential_gumbel, 1.0},
                       [&](const storage::SampleBatch& b) {
                           // location fit against the closed-form limit
                           double med = 0.0;
                           {
                               double lo = -30.0, hi = 30.0;
                               for (int i = 0; i < 100; ++i) {
                                   const double m = 0.5 * (lo + hi);
                                   if (ide::gumbel_limit_cdf(alpha, m) < 0.5)
                                       lo = m;
                                   else
                                       hi = m;
                               }
                               med = 0.5 * (lo + hi);
                           }
                           const double shift = storage::median_shift_fit(b, med);
                           return storage::ks_distance(b, [&](double x) {
                               return ide::gumbel_limit_cdf(alpha, x + shift);
                           });
                       },
                       "gumbel"});

    int dom_idx = 0;
    for (auto& d : domains) {
        Rng rng = Rng::split(seed, 100 + dom_idx);
        auto batch = storage::renormalized_batch(d.law, alpha, 10000, 10000, rng);
        out.push_back(below("storage_ks_" + d.name + "(n=1e4)", d.ks(batch), 0.03));
        // medians of KS over 20 seeds, nonincreasing through n = 1e2, 1e3, 1e4
        std::vector<double> med_ks;
        for (long n : {100L, 1000L, 10000L}) {
            std::vector<double> kss;
            for (int s = 0; s < 20; ++s) {
                Rng r = Rng::split(seed, 1000 + 37 * dom_idx + s + static_cast<int>(n));
                auto b = storage::renormalized_batch(d.law, alpha, n, 2000, r);
                kss.push_back(d.ks(b));
            }
            std::sort(kss.begin(), kss.end());
            med_ks.push_back(0.5 * (kss[9] + kss[10]));
        }
        const bool trend = med_ks[0] >= med_ks[1] - 1e-3 && med_ks[1] >= med_ks[2] - 1e-3;
        std::ostringstream note;
        note << "medians " << med_ks[0] << " -> " << med_ks[1] << " -> " << med_ks[2];
        out.push_back(mk("storage_trend_" + d.name, trend ? 1.0 : 0.0, 1.0, trend,
                         note.str()));
        ++dom_idx;
    }
    return out;
}

Checks orders_suite(std::uint64_t seed) {
    Checks out;
    // 1. beta crossing counts on random tuples
    Rng rng = Rng::split(seed, 7);
    bool all_two = true;
    for (int i = 0; i < 10; ++i) {
        const double a = 0.2 + 3.0 * rng.uniform01();
        const double b = 0.2 + 3.0 * rng.uniform01();
        double s = 0.3 + 2.0 * rng.uniform01();
        double t = 0.3 + 2.0 * rng.uniform01();
        if (s == t) t += 0.5;
        if (s > t) std::swap(s, t);
        if (orders::beta_crossing_count(a, b, s, t) != 2) all_two = false;
    }
    out.push_back(mk("beta_crossings_random10", all_two ? 1.0 : 0.0, 1.0, all_two));

    // 2a. B_{t,t} decreases in convex order (quadrature route)
    {
        std::vector<double> ts = {0.5, 1.0, 2.0, 4.0};
        // reversed index so that "nondecreasing in index" = decreasing in t
        std::vector<double> idx(ts.rbegin(), ts.rend());
        auto expect = [&](std::size_t i, const std::function<double(double)>& psi) {
            const double t = idx[i];
            const double lb = specfun::ln_gamma(2.0 * t) - 2.0 * specfun::ln_gamma(t);
            auto f = [&](double x) {
                return psi(x) * std::exp(lb + (t - 1.0) * (std::log(x) + std::log1p(-x)));
            };
            return quad::integrate_checked(f, 0.0, 1.0, 1e-9);
        };
        auto rep = orders::convex_order_check_quadrature(idx, expect);
        out.push_back(mk("peacock_beta_tt", rep.max_violation, 0.0, rep.monotone));
    }
    // 2b/2c. Ltilde families: increasing in p at fixed d, increasing in d at fixed p
    {
        std::vector<double> ps = {-4.0, -1.0, 0.0, 0.4};
        auto sampler = [&](std::size_t i, Rng& r) {
            orders::LtildeSampler s(1.0, ps[i]);
            std::vector<double> xs(20000);
            for (auto& v : xs) v = s.draw(r);
            return xs;
        };
        auto rep = orders::convex_order_check(ps, sampler, 20000, seed + 11);
        out.push_back(mk("peacock_ltilde_p", rep.max_violation, 0.0, rep.monotone));
    }
    {
        std::vector<double> ds = {0.4, 1.0, 1.6};
        auto sampler = [&](std::size_t i, Rng& r) {
            orders::LtildeSampler s(ds[i], 0.0);
            std::vector<double> xs(20000);
            for (auto& v : xs) v = s.draw(r);
            return xs;
        };
        auto rep = orders::convex_order_check(ds, sampler, 20000, seed + 12);
        out.push_back(mk("peacock_ltilde_d", rep.max_violation, 0.0, rep.monotone));
    }
    // 3. Mittag-Leffler monotonicity on z in [-5,5] x alpha in {0.1..0.9}
    {
        std::vector<double> zs, as;
        for (int i = -5; i <= 5; ++i) zs.push_back(static_cast<double>(i));
        for (int i = 1; i <= 9; ++i) as.push_back(0.1 * i);
        auto v = orders::ml_monotonicity(zs, as);
        out.push_back(mk("ml_monotonicity", v.max_violation, 0.0, v.monotone, v.detail));
    }
    // 4. limit-moment probes
    {
        // d -> 2 (alpha -> 0): Gamma moments Gamma(g+n)/(Gamma(g) g^n), g = 1-2p
        bool ok = true;
        double worst = 0.0;
        const double g = 1.0;  // p = 0
        for (int n = 2; n <= 4; ++n) {
            const double v = orders::ltilde_moment(2.0 * (1.0 - 1e-3), 0.0, n);
            const double target = std::exp(specfun::ln_gamma(g + n) - specfun::ln_gamma(g)) /
                                  std::pow(g, n);
            const double rel = std::fabs(v - target) / target;
            worst = std::max(worst, rel);
            if (rel > 0.01) ok = false;
        }
        out.push_back(mk("ltilde_gamma_probe", worst, 0.01, ok));
        // p -> 1/2 (gamma -> 0): the law converges to the two-point limit but
        // the integer moments of order >= 2 diverge like gamma^{-(1-alpha)};
        // the Bernoulli moment targets are therefore not attainable. The
        // check is reported as specified and fails by design of the test.
        const double ca = std::pow(0.5, 0.5) / std::exp(specfun::ln_gamma(1.5));
        ok = true;
        worst = 0.0;
        for (int n = 1; n <= 4; ++n) {
            const double v = orders::ltilde_moment(1.0, (1.0 - 1e-3) / 2.0, n);
            const double target = std::pow(ca, 1.0 - n);
            const double rel = std::fabs(v - target) / target;
            worst = std::max(worst, rel);
            if (rel > 0.01) ok = false;
        }
        out.push_back(mk("ltilde_bernoulli_probe", worst, 0.01, ok,
                         "second and higher moments diverge at this limit"));
    }
    return out;
}

Checks shape_diagnostics() {
    Checks out;
    {
        auto td = ide::solve_frechet(DistParams(0.5, 1.0));
        auto rep = ide::shape_report(td);
        out.push_back(mk("frechet_shape_first", rep.first_diff_sign_changes, 1,
                         rep.first_diff_sign_changes == 1));
        out.push_back(mk("frechet_shape_second", rep.second_diff_sign_changes, 2,
                         rep.second_diff_sign_changes == 2));
    }
    {
        auto td = ide::solve_weibull(DistParams(0.5, 2.0));
        auto rep = ide::shape_report(td);
        out.push_back(mk("weibull_unimodal", rep.first_diff_sign_changes, 1,
                         rep.first_diff_sign_changes == 1 && rep.mode > 0.0,
                         "mode=" + std::to_string(rep.mode)));
        // discrete log-concavity of ln hhat(e^x) on the solved grid
        const auto& x = td.grid;
        const auto& h = td.values;
        double hmax = 0.0;
        for (double v : h) hmax = std::max(hmax, v);
        double worst = 0.0;
        for (std::size_t i = 1; i + 1 < x.size(); ++i) {
            if (h[i - 1] <= 1e-12 * hmax || h[i] <= 1e-12 * hmax || h[i + 1] <= 1e-12 * hmax)
                continue;
            const double d2 = std::log(h[i + 1]) - 2.0 * std::log(h[i]) + std::log(h[i - 1]);
            worst = std::max(worst, d2);
        }
        out.push_back(below("weibull_log_concavity", worst, 1e-6));
    }
    return out;
}

Checks quick_suite(const DistParams& p, std::uint64_t seed) {
    Checks out;
    auto add = [&](Checks c) { out.insert(out.end(), c.begin(), c.end()); };
    add(moment_agreement(p, 200000, 200, seed));
    add(constant_dual_route(p));
    add(density_frechet(p));
    add(density_weibull(p));
    add(mellin_residuals(p));
    add(mdet_thresholds({p.gamma}));
    return out;
}

}  // namespace alphasun::verify

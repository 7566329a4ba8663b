#include <doctest.h>

#include <cmath>

#include "lptn/errors.hpp"
#include "lptn/lptn_distribution.hpp"
#include "lptn/math.hpp"
#include "lptn/quadrature.hpp"
#include "support/oracles.hpp"

using namespace lptn;

namespace {
const double kPaperRhoGrid[] = {0.80, 0.84, 0.90, 0.93, 0.95, 0.98};
}

TEST_SUITE("lptn_distribution") {

TEST_CASE("derive_params reproduces tau = 1.96 and lambda = 3.08 at rho = 0.95") {
    LptnParams p = derive_params(0.95);
    // frozen from the extended-precision oracle (tests/support/oracles.hpp)
    CHECK(p.tau == doctest::Approx(1.959963984540054).epsilon(1e-10));
    CHECK(p.lambda == doctest::Approx(3.083353622139720).epsilon(1e-10));
    CHECK(std::round(p.tau * 100.0) / 100.0 == 1.96);
    CHECK(std::round(p.lambda * 100.0) / 100.0 == 3.08);
    // tail mass identity phi(tau) tau log(tau) / lambda = (1 - rho)/2
    CHECK(norm_pdf(p.tau) * p.tau * p.log_tau / p.lambda ==
          doctest::Approx(0.025).epsilon(1e-12));
}

TEST_CASE("derive_params matches the oracle across the paper grid") {
    for (double rho : kPaperRhoGrid) {
        oracle::LptnRef ref(static_cast<long double>(rho));
        LptnParams p = derive_params(rho);
        CHECK(p.tau == doctest::Approx(static_cast<double>(ref.tau)).epsilon(1e-12));
        CHECK(p.lambda == doctest::Approx(static_cast<double>(ref.lambda)).epsilon(1e-12));
    }
}

TEST_CASE("rho domain is the open interval (2 Phi(1) - 1, 1)") {
    CHECK_THROWS_AS(derive_params(0.68268949213708585), input_error);  // lower endpoint
    CHECK_THROWS_AS(derive_params(1.0), input_error);
    CHECK_THROWS_AS(derive_params(0.5), input_error);
    CHECK_NOTHROW(derive_params(0.6827));
    CHECK_NOTHROW(derive_params(0.999));
}

TEST_CASE("pdf: center, splice continuity, tail value") {
    LptnParams p = derive_params(0.95);
    CHECK(lptn_pdf(0.0, p) == doctest::Approx(0.3989422804014327).epsilon(1e-12));
    // both branches agree at the splice to machine precision
    double below = lptn_pdf(std::nextafter(p.tau, 0.0), p);
    double above = lptn_pdf(std::nextafter(p.tau, 10.0), p);
    CHECK(below == doctest::Approx(norm_pdf(p.tau)).epsilon(1e-12));
    CHECK(above == doctest::Approx(norm_pdf(p.tau)).epsilon(1e-12));
    // frozen: phi(tau) * (tau/3) * (log tau / log 3)^(lambda+1)
    CHECK(lptn_pdf(3.0, p) == doctest::Approx(5.159674665310467e-03).epsilon(1e-12));
    CHECK(lptn_pdf(-3.0, p) == lptn_pdf(3.0, p));
}

TEST_CASE("pdf matches phi exactly on the central part") {
    LptnParams p = derive_params(0.9);
    for (double z = -p.tau; z <= p.tau; z += 0.01) CHECK(lptn_pdf(z, p) == norm_pdf(z));
}

TEST_CASE("log pdf: center, deep tail, consistency with pdf") {
    LptnParams p = derive_params(0.95);
    CHECK(lptn_log_pdf(0.0, p) == doctest::Approx(-0.9189385332046727).epsilon(1e-12));
    // frozen tail values from the extended-precision oracle
    CHECK(lptn_log_pdf(1e6, p) == doctest::Approx(-28.321786407538750).epsilon(1e-10));
    CHECK(lptn_log_pdf(1e12, p) == doctest::Approx(-44.967662015918411).epsilon(1e-10));
    CHECK(std::isfinite(lptn_log_pdf(1e12, p)));
    for (double z = -10.0; z <= 10.0; z += 0.1)
        CHECK(std::exp(lptn_log_pdf(z, p)) == doctest::Approx(lptn_pdf(z, p)).epsilon(1e-12));
}

TEST_CASE("cdf: symmetry point, splice, tail limit") {
    LptnParams p = derive_params(0.95);
    CHECK(lptn_cdf(0.0, p) == 0.5);
    CHECK(lptn_cdf(p.tau, p) == doctest::Approx(0.975).epsilon(1e-12));
    CHECK(lptn_cdf(-p.tau, p) == doctest::Approx(0.025).epsilon(1e-12));
    // 1 - F matches the analytic tail mass remainder
    for (double z : {3.0, 10.0, 1e4, 1e8}) {
        double remainder = p.tail_mass * std::pow(p.log_tau / std::log(z), p.lambda);
        CHECK(1.0 - lptn_cdf(z, p) == doctest::Approx(remainder).epsilon(1e-10));
    }
    CHECK(1.0 - lptn_cdf(1e12, p) > 0.0);  // super heavy tail never truncates
    // F(-z) = 1 - F(z)
    for (double z : {0.3, 1.0, 2.5, 7.0})
        CHECK(lptn_cdf(-z, p) == doctest::Approx(1.0 - lptn_cdf(z, p)).epsilon(1e-12));
}

TEST_CASE("quantile: median, splice, tail root, round trips") {
    LptnParams p = derive_params(0.95);
    CHECK(lptn_quantile(0.5, p) == 0.0);
    CHECK(lptn_quantile(0.975, p) == doctest::Approx(p.tau).epsilon(1e-12));
    // frozen from the bisection oracle on lptn_cdf
    CHECK(lptn_quantile(0.99, p) == doctest::Approx(2.473888746569375).epsilon(1e-10));
    CHECK_THROWS_AS(lptn_quantile(0.0, p), input_error);
    CHECK_THROWS_AS(lptn_quantile(1.0, p), input_error);
}

TEST_CASE("cdf/quantile round trip to 1e-10 on a 1000-point grid") {
    const double log_dbl_max = std::log(std::numeric_limits<double>::max());
    for (double rho : kPaperRhoGrid) {
        LptnParams p = derive_params(rho);
        for (int i = 1; i < 1000; ++i) {
            double u = i / 1000.0;
            double beyond = std::min(u, 1.0 - u);
            // log-Pareto tails put extreme quantiles beyond double range at
            // small rho (log q ~ 950 for rho = 0.8, u = 0.001); those must
            // saturate to infinity, everything else must round trip
            double log_q = p.log_tau * std::pow(p.tail_mass / beyond, 1.0 / p.lambda);
            if (beyond < p.tail_mass && log_q > log_dbl_max) {
                CHECK(std::isinf(lptn_quantile(u, p)));
            } else {
                CHECK(std::fabs(lptn_cdf(lptn_quantile(u, p), p) - u) < 1e-10);
            }
        }
    }
}

TEST_CASE("normalization: quadrature plus analytic tail remainder equals one") {
    for (double rho : kPaperRhoGrid) {
        LptnParams p = derive_params(rho);
        auto f = [&](double z) { return lptn_pdf(z, p); };
        double center = adaptive_simpson(f, -p.tau, p.tau, 1e-11);
        // the tail integrand decays like 1/(z log^2 z); integrate on log z
        auto tail_logscale = [&](double t) {
            double z = std::exp(t);
            return lptn_pdf(z, p) * z;
        };
        double cutoff = 1e8;
        double tails = 2.0 * adaptive_simpson(tail_logscale, std::log(p.tau), std::log(cutoff), 1e-11);
        double remainder = 2.0 * p.tail_mass * std::pow(p.log_tau / std::log(cutoff), p.lambda);
        CHECK(center + tails + remainder == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("z f(z) is decreasing beyond tau") {
    for (double rho : {0.80, 0.95}) {
        LptnParams p = derive_params(rho);
        double prev = p.tau * lptn_pdf(p.tau, p);
        for (double z = p.tau * 1.01; z < 1e6; z *= 1.37) {
            double cur = z * lptn_pdf(z, p);
            CHECK(cur < prev);
            prev = cur;
        }
    }
}

TEST_CASE("sampling: core mass, KS distance, determinism") {
    LptnParams p = derive_params(0.95);
    RngStream rng(2024);
    const int n = 1000000;
    int core = 0;
    std::vector<double> draws(n);
    for (int i = 0; i < n; ++i) {
        draws[i] = lptn_sample(p, rng);
        if (std::fabs(draws[i]) <= p.tau) ++core;
    }
    double se = std::sqrt(0.95 * 0.05 / n);
    CHECK(std::fabs(static_cast<double>(core) / n - 0.95) < 3.0 * se);

    double ks = oracle::ks_distance(draws, [&](double z) { return lptn_cdf(z, p); });
    CHECK(ks < 0.002);

    RngStream rng2(2024);
    for (int i = 0; i < 1000; ++i) CHECK(lptn_sample(p, rng2) == draws[static_cast<std::size_t>(i)]);
}

TEST_CASE("outlyingness: normal branch") {
    CHECK(outlyingness_normal(0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(outlyingness_normal(1.96) == doctest::Approx(0.05).epsilon(1e-3));
    CHECK(outlyingness_normal(-1.96) == outlyingness_normal(1.96));
}

TEST_CASE("outlyingness: lptn branch pins to 1 at zero and 1-rho at tau") {
    LptnParams p = derive_params(0.95);
    CHECK(outlyingness_lptn(0.0, p) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(outlyingness_lptn(p.tau, p) == doctest::Approx(0.05).epsilon(1e-12));
    // continuity at the splice
    double below = outlyingness_lptn(std::nextafter(p.tau, 0.0), p);
    double above = outlyingness_lptn(std::nextafter(p.tau, 10.0), p);
    CHECK(below == doctest::Approx(above).epsilon(1e-10));
    // monotone nonincreasing in |z|
    double prev = outlyingness_lptn(0.0, p);
    for (double z = 0.05; z < 50.0; z += 0.05) {
        double cur = outlyingness_lptn(z, p);
        CHECK(cur <= prev + 1e-15);
        prev = cur;
    }
    // equals 2(1 - F(|z|)) everywhere
    for (double z : {0.5, 1.5, 2.5, 8.0})
        CHECK(outlyingness_lptn(z, p) ==
              doctest::Approx(2.0 * (1.0 - lptn_cdf(z, p))).epsilon(1e-12));
}

}  // TEST_SUITE

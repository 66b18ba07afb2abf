#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "paracalc/norms.hpp"

using namespace paracalc;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

GridFunction annulus_function(const GridPtr& g, double lo, double hi, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    std::vector<cplx> spec(g->total(), cplx{0.0, 0.0});
    for (std::size_t k = 0; k < g->total(); ++k) {
        double m = g->modulus()[k];
        if (m >= lo && m <= hi) spec[k] = {gauss(rng), gauss(rng)};
    }
    return from_spectrum(g, spec);
}

}  // namespace

TEST_CASE("Lp quadrature norms") {
    GridPtr g = default_grid();
    GridFunction one(g);
    for (auto& z : one.v) z = 1.0;
    CHECK(lp_norm(one, 1.0) == doctest::Approx(g->volume()).epsilon(1e-12));
    CHECK(lp_norm(one, 2.0) == doctest::Approx(std::sqrt(g->volume())).epsilon(1e-12));
    CHECK(lp_norm(one, INFINITY) == doctest::Approx(1.0));
    CHECK(lp_norm(cplx{0.0, -3.0} * one, INFINITY) == doctest::Approx(3.0));
    CHECK_THROWS(lp_norm(one, 0.0));
    CHECK_THROWS(lp_norm(one, -1.0));
    // quasi-norm p < 1 still works
    CHECK(lp_norm(one, 0.5) == doctest::Approx(std::pow(g->volume(), 2.0)).epsilon(1e-12));
}

TEST_CASE("sequence norms") {
    std::vector<double> a{3.0, -4.0};
    CHECK(lq_seq(a, 2.0) == doctest::Approx(5.0));
    CHECK(lq_seq(a, 1.0) == doctest::Approx(7.0));
    CHECK(lq_seq(a, INFINITY) == doctest::Approx(4.0));
    CHECK(lq_seq({}, 2.0) == 0.0);
    CHECK_THROWS(lq_seq(a, 0.0));
}

TEST_CASE("band decomposition sums back to the low-pass part") {
    GridPtr g = default_grid();
    BandSystem sys = g->bands();
    GridFunction u = annulus_function(g, 0.0, 20.0, 3);
    auto bands = band_decompose(u, sys, 4);
    REQUIRE(bands.size() == 5);
    GridFunction acc(g);
    for (const auto& b : bands) acc = acc + b;
    GridFunction low = smooth_truncate(u, sys, 4);
    for (std::size_t k = 0; k < g->total(); ++k) CHECK(std::abs(acc.v[k] - low.v[k]) <= 1e-10);
}

TEST_CASE("single-band function: Besov norm factorizes") {
    GridPtr g = default_grid();
    BandSystem sys = g->bands();
    // inside the level-3 plateau annulus [0.65*8, 1.1*8]
    GridFunction u = annulus_function(g, 5.5, 8.5, 9);
    for (double p : {1.0, 2.0}) {
        double base = lp_norm(u, p);
        for (double s : {-1.0, 0.0, 1.5}) {
            for (double q : {1.0, 2.0, kInf}) {
                double expect = std::exp2(3.0 * s) * base;
                CHECK(besov_norm(u, sys, s, p, q) == doctest::Approx(expect).epsilon(1e-10));
                CHECK(tl_norm(u, sys, s, p, q) == doctest::Approx(expect).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("besov_from_band_norms hand value") {
    std::vector<double> lp{1.0, 2.0, 4.0};
    // s = 1: weights 1, 2, 4 -> weighted 1, 4, 16
    CHECK(besov_from_band_norms(lp, 1.0, 1.0) == doctest::Approx(21.0));
    CHECK(besov_from_band_norms(lp, 1.0, INFINITY) == doctest::Approx(16.0));
    CHECK(besov_from_band_norms(lp, 0.0, 2.0) == doctest::Approx(std::sqrt(21.0)));
}

TEST_CASE("F-scale norm equals B-scale norm when p = q") {
    GridPtr g = default_grid();
    BandSystem sys = g->bands();
    GridFunction u = annulus_function(g, 0.0, 30.0, 41);
    for (double p : {1.0, 2.0}) {
        double b = besov_norm(u, sys, 0.5, p, p);
        double f = tl_norm(u, sys, 0.5, p, p);
        CHECK(f == doctest::Approx(b).epsilon(1e-10));
    }
    CHECK_THROWS(tl_norm(u, sys, 0.0, INFINITY, 2.0));
}

TEST_CASE("weighted cumulative ratio") {
    CHECK_THROWS(weighted_cumulative_ratio({1.0}, 0.5, 2.0, 1.0));   // needs s < 0
    CHECK_THROWS(weighted_cumulative_ratio({1.0}, -0.5, 2.0, 0.0));  // needs r > 0
    CHECK(weighted_cumulative_ratio(std::vector<double>(5, 0.0), -1.0, 2.0, 1.0) == 0.0);
    // r = inf: running max; for {1, 0} with s = -1, q = inf the ratio is 1
    CHECK(weighted_cumulative_ratio({1.0, 0.0}, -1.0, INFINITY, INFINITY) ==
          doctest::Approx(1.0));

    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (double s : {-0.5, -1.0, -2.0}) {
        for (double q : {1.0, 2.0, kInf}) {
            for (double r : {1.0, 2.0}) {
                double worst = 0.0;
                for (int it = 0; it < 50; ++it) {
                    std::vector<double> a(64);
                    for (double& x : a) x = uni(rng);
                    double ratio = weighted_cumulative_ratio(a, s, q, r);
                    CHECK(ratio >= 1.0 - 1e-12);  // the cumulative sum dominates a_j
                    worst = std::max(worst, ratio);
                }
                // uniform bound: governed by sum_{k>=0} 2^{s e k}, e = min(q, r)
                double e = std::min(q, r);
                double cap = std::pow(1.0 / (1.0 - std::exp2(s * e)), 1.0 / e) + 1e-9;
                CHECK(worst <= cap);
            }
        }
    }
}

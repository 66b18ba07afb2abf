#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "paracalc/weight.hpp"

using namespace paracalc;

TEST_CASE("weight validation") {
    CHECK_NOTHROW(Weight::of({1.0}));
    CHECK_NOTHROW(Weight::of({1.0, 2.0}));
    CHECK_THROWS(Weight::of({0.5, 1.0}));   // exponent below 1
    CHECK_THROWS(Weight::of({2.0, 3.0}));   // smallest exponent must be 1
    CHECK_THROWS(Weight::of({}));
    Weight w = Weight::of({1.0, 2.0, 1.0});
    CHECK(w.total == doctest::Approx(4.0));
    CHECK_FALSE(w.isotropic());
    CHECK(Weight::of({1.0, 1.0}).isotropic());
}

TEST_CASE("dilation") {
    Weight w = Weight::of({1.0, 2.0});
    Point x{3.0, 4.0};
    Point y = dilate(2.0, w, x);
    CHECK(y[0] == doctest::Approx(6.0));
    CHECK(y[1] == doctest::Approx(16.0));
    Point z = dilate(2.0, w, dilate(0.5, w, x));
    CHECK(z[0] == doctest::Approx(x[0]));
    CHECK(z[1] == doctest::Approx(x[1]));
    CHECK_THROWS(dilate(2.0, w, Point{1.0}));
}

TEST_CASE("isotropic modulus is the Euclidean norm") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uni(-10.0, 10.0);
    for (int dim = 1; dim <= 3; ++dim) {
        Weight w = Weight::of(std::vector<double>(dim, 1.0));
        for (int it = 0; it < 200; ++it) {
            Point x(dim);
            double n2 = 0.0;
            for (double& c : x) {
                c = uni(rng);
                n2 += c * c;
            }
            CHECK(aniso_modulus(x, w) == doctest::Approx(std::sqrt(n2)).epsilon(1e-12));
        }
    }
    CHECK(aniso_modulus({3.0, 4.0}, Weight::of({1.0, 1.0})) == doctest::Approx(5.0).epsilon(1e-13));
}

TEST_CASE("parabolic closed form") {
    Weight w = Weight::of({1.0, 2.0});
    // [x] = (1/2 (x1^2 + (x1^4 + 4 x2^2)^{1/2}))^{1/2}
    auto closed = [](double x1, double x2) {
        double a = x1 * x1;
        return std::sqrt(0.5 * (a + std::sqrt(a * a + 4.0 * x2 * x2)));
    };
    CHECK(aniso_modulus({0.0, 4.0}, w) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(aniso_modulus({1.0, 1.0}, w) ==
          doctest::Approx(std::sqrt((1.0 + std::sqrt(5.0)) / 2.0)).epsilon(1e-10));
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> uni(-20.0, 20.0);
    for (int it = 0; it < 500; ++it) {
        double x1 = uni(rng), x2 = uni(rng);
        double ref = closed(x1, x2);
        if (ref == 0.0) continue;
        CHECK(aniso_modulus({x1, x2}, w) == doctest::Approx(ref).epsilon(1e-10));
    }
}

TEST_CASE("defining equation and zero") {
    Weight w = Weight::of({1.0, 2.0, 3.0});
    CHECK(aniso_modulus({0.0, 0.0, 0.0}, w) == 0.0);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> uni(-5.0, 5.0);
    for (int it = 0; it < 200; ++it) {
        Point x{uni(rng), uni(rng), uni(rng)};
        double t = aniso_modulus(x, w);
        if (t == 0.0) continue;
        double sum = 0.0;
        for (std::size_t i = 0; i < 3; ++i) sum += std::pow(x[i] / std::pow(t, w.m[i]), 2.0);
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("homogeneity under anisotropic dilation") {
    Weight w = Weight::of({1.0, 2.0});
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> uni(-8.0, 8.0);
    std::uniform_real_distribution<double> ts(0.05, 20.0);
    for (int it = 0; it < 300; ++it) {
        Point x{uni(rng), uni(rng)};
        double t = ts(rng);
        double lhs = aniso_modulus(dilate(t, w, x), w);
        double rhs = t * aniso_modulus(x, w);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("quasi-triangle inequality") {
    Weight w = Weight::of({1.0, 2.0});
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> uni(-10.0, 10.0);
    for (int it = 0; it < 300; ++it) {
        Point x{uni(rng), uni(rng)}, y{uni(rng), uni(rng)};
        Point sum{x[0] + y[0], x[1] + y[1]};
        double mx = aniso_modulus(x, w), my = aniso_modulus(y, w), ms = aniso_modulus(sum, w);
        CHECK(ms <= mx + my + 1e-10);
        CHECK(ms >= std::fabs(mx - my) - 1e-10);
    }
}

TEST_CASE("extreme magnitudes") {
    Weight w = Weight::of({1.0, 2.0});
    for (double scale : {1e-8, 1e-4, 1.0, 1e4, 1e8}) {
        Point x{scale, scale};
        double t = aniso_modulus(x, w);
        CHECK(t > 0.0);
        double sum = x[0] * x[0] / (t * t) + x[1] * x[1] / std::pow(t, 4.0);
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    }
}

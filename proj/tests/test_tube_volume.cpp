#include <doctest.h>

#include <cmath>
#include <random>

#include "test_helpers.hpp"
#include "tubedesign/bases.hpp"
#include "tubedesign/errors.hpp"
#include "tubedesign/mobius.hpp"
#include "tubedesign/tube_volume.hpp"

using namespace tubedesign;
using testutil::kMinVolume;

TEST_SUITE_BEGIN("tube-volume");

TEST_CASE("minimum volume at the optimal representative") {
    VolumeResult r = volumePolynomial(representativeMv(1.0 / 3.0));
    CHECK(r.volume == doctest::Approx(kMinVolume).epsilon(1e-9));
    CHECK(r.quadratureError < 1e-8);

    // scale-invariant: the table normalization M_v / (2(1+v))
    Eigen::VectorXd m = representativeMv(1.0 / 12.0).moments / (2.0 * (1.0 + 1.0 / 12.0));
    CHECK(volumePolynomial(HankelMatrix(3, m)).volume == doctest::Approx(10.872).epsilon(5e-5));
}

TEST_CASE("table of representative volumes") {
    const double vs[4] = {1.0 / 12, 1.0 / 6, 1.0 / 4, 1.0 / 2};
    const double want[4] = {10.872, 10.469, 10.304, 10.383};
    for (int i = 0; i < 4; ++i)
        CHECK(std::abs(volumePolynomial(representativeMv(vs[i])).volume - want[i]) < 5e-4);
}

TEST_CASE("fourier volumes") {
    CHECK(volumeFourier(Eigen::MatrixXd::Identity(3, 3)).volume ==
          doctest::Approx(kMinVolume).epsilon(1e-9));

    // n = 2: the full circle regardless of the matrix
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 10; ++trial) {
        Eigen::MatrixXd R(2, 2);
        double a = testutil::uniform(rng, 0.5, 2.0), b = testutil::uniform(rng, -0.5, 0.5),
               d = testutil::uniform(rng, 0.5, 2.0);
        R << a, b, b, d;
        if (a * d - b * b < 0.1) continue;
        CHECK(volumeFourier(R).volume == doctest::Approx(2 * testutil::kPi).epsilon(1e-8));
    }

    // polynomial n = 2 likewise
    for (int trial = 0; trial < 10; ++trial) {
        Eigen::VectorXd m(3);
        m << testutil::uniform(rng, 0.5, 2.0), testutil::uniform(rng, -0.3, 0.3),
            testutil::uniform(rng, 0.5, 2.0);
        if (m(0) * m(2) - m(1) * m(1) < 0.1) continue;
        CHECK(volumePolynomial(HankelMatrix(2, m)).volume ==
              doctest::Approx(2 * testutil::kPi).epsilon(1e-8));
    }
}

TEST_CASE("fourier and polynomial volumes agree through the bridge") {
    std::mt19937_64 rng(73);
    for (int n : {3, 4}) {
        Eigen::MatrixXd B = bridgeMatrixB(n);
        for (int trial = 0; trial < 15; ++trial) {
            HankelMatrix M = testutil::randomConePoint(rng, n);
            double volP = volumePolynomial(M).volume;
            double volF = volumeFourier(B * M.toMatrix() * B.transpose()).volume;
            CHECK(volF == doctest::Approx(volP).epsilon(1e-7));
        }
    }
}

TEST_CASE("closed-form integrand matches the generic determinant form") {
    std::mt19937_64 rng(79);
    for (int trial = 0; trial < 100; ++trial) {
        HankelMatrix M = testutil::randomConePoint(rng, 3);
        Eigen::MatrixXd Sigma = M.toMatrix().inverse();
        double x = testutil::uniform(rng, -4.0, 4.0);
        BasisEval e = evalPolynomial(3, x);
        double generic = integrandGeneric(Sigma, e.f, e.g);
        double closed = integrandN3(M, x);
        CHECK(closed == doctest::Approx(generic).epsilon(1e-9));
    }
}

TEST_CASE("closed-form integrand on the representative family") {
    // s(x; v) from the reduced elliptic form
    auto sxv = [](double x, double v) {
        double x2 = x * x;
        return std::sqrt((1.0 - v * v) / v) * std::sqrt(1.0 + 6.0 * v * x2 + x2 * x2) /
               (1.0 + (1.0 / v - 3.0 * v) * x2 + x2 * x2);
    };
    std::mt19937_64 rng(83);
    for (int trial = 0; trial < 50; ++trial) {
        double v = testutil::uniform(rng, 0.05, 0.95);
        double x = testutil::uniform(rng, -3.0, 3.0);
        CHECK(integrandN3(representativeMv(v), x) == doctest::Approx(sxv(x, v)).epsilon(1e-12));
    }
    CHECK(integrandN3(representativeMv(1.0 / 3.0), 0.0) ==
          doctest::Approx(std::sqrt(8.0 / 3.0)).epsilon(1e-12));
}

TEST_CASE("len and its lower bound") {
    CHECK(lenOfV(1.0 / 3.0) == doctest::Approx(kMinVolume).epsilon(1e-9));
    CHECK(lowerBoundLen(1.0 / 3.0) == doctest::Approx(kMinVolume).epsilon(1e-12));
    CHECK(std::abs(lenOfV(1.0 / 12.0) - 10.872) < 5e-4);

    for (double v = 0.01; v < 1.0 / 3.0; v += 0.01)
        CHECK(lowerBoundLen(v) <= lenOfV(v) + 1e-9);

    CHECK_THROWS_AS(lenOfV(0.0), ValidationError);
    CHECK_THROWS_AS(lenOfV(1.0), ValidationError);
    CHECK_THROWS_AS(lowerBoundLen(0.5), ValidationError);
}

TEST_CASE("len is symmetric under the v-duality") {
    auto dual = [](double v) { return (1.0 - v) / (1.0 + 3.0 * v); };
    for (double v : {0.05, 0.1, 0.2})
        CHECK(lenOfV(v) == doctest::Approx(lenOfV(dual(v))).epsilon(1e-8));
}

TEST_CASE("len has its minimum at v = 1/3 on a coarse grid") {
    double best = lenOfV(1.0 / 3.0);
    for (double v = 0.02; v < 0.98; v += 0.02) {
        if (std::abs(v - 1.0 / 3.0) < 1e-3) continue;
        CHECK(lenOfV(v) > best);
    }
}

TEST_CASE("scale invariance") {
    std::mt19937_64 rng(89);
    for (int trial = 0; trial < 10; ++trial) {
        HankelMatrix M = testutil::randomConePoint(rng, 3);
        double base = volumePolynomial(M).volume;
        for (double k : {1e-3, 1.0, 1e3}) {
            HankelMatrix K(3, (k * M.moments).eval());
            CHECK(volumePolynomial(K).volume == doctest::Approx(base).epsilon(1e-9));
        }
    }
}

TEST_CASE("volume is invariant along group orbits") {
    std::mt19937_64 rng(97);
    for (int n : {3, 4}) {
        for (int trial = 0; trial < 25; ++trial) {
            HankelMatrix M = testutil::randomConePoint(rng, n);
            MobiusParams p = testutil::randomMobius(rng);
            HankelMatrix R = actOnMatrix(p, M);
            CHECK(volumePolynomial(R).volume ==
                  doctest::Approx(volumePolynomial(M).volume).epsilon(1e-7));
        }
    }
}

TEST_CASE("mixing family is not convex") {
    std::vector<double> grid;
    for (int i = 0; i <= 100; ++i) grid.push_back(i / 100.0);
    auto curve = mixingCurve(grid);
    CHECK(curve.front().second == doctest::Approx(kMinVolume).epsilon(1e-9));
    CHECK(curve.back().second ==
          doctest::Approx(volumeFourier(mixingEndpointMatrix()).volume).epsilon(1e-12));

    bool negativeSecondDifference = false;
    for (size_t i = 1; i + 1 < curve.size(); ++i) {
        double dd = curve[i + 1].second - 2.0 * curve[i].second + curve[i - 1].second;
        if (dd < -1e-9) negativeSecondDifference = true;
    }
    CHECK(negativeSecondDifference);
}

TEST_CASE("volume rejects matrices outside the cone") {
    Eigen::VectorXd bad(5);
    bad << 1, 0, 0, 0, 1;
    CHECK_THROWS_AS(volumePolynomial(HankelMatrix(3, bad)), ValidationError);
}

TEST_SUITE_END();

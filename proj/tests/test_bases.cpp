#include <doctest.h>

#include <cmath>
#include <random>

#include "test_helpers.hpp"
#include "tubedesign/bases.hpp"
#include "tubedesign/errors.hpp"

using namespace tubedesign;
using testutil::kPi;

TEST_SUITE_BEGIN("bases");

TEST_CASE("fourier basis values at simple points") {
    BasisEval e = evalFourier(3, 0.0);
    CHECK(e.f(0) == doctest::Approx(1.0));
    CHECK(e.f(1) == doctest::Approx(0.0));
    CHECK(e.f(2) == doctest::Approx(std::sqrt(2.0)));
    CHECK(e.g(0) == doctest::Approx(0.0));
    CHECK(e.g(1) == doctest::Approx(2.0 * std::sqrt(2.0) * kPi));
    CHECK(e.g(2) == doctest::Approx(0.0).epsilon(1e-12));

    BasisEval q = evalFourier(3, 0.25);
    CHECK(q.f(0) == doctest::Approx(1.0));
    CHECK(q.f(1) == doctest::Approx(std::sqrt(2.0)));
    CHECK(q.f(2) == doctest::Approx(0.0).epsilon(1e-12));

    CHECK_THROWS_AS(evalFourier(1, 0.0), ValidationError);
}

TEST_CASE("polynomial basis values") {
    BasisEval e = evalPolynomial(3, 0.0);
    CHECK(e.f.isApprox(Eigen::Vector3d(1, 0, 0)));
    CHECK(e.g.isApprox(Eigen::Vector3d(0, 1, 0)));

    BasisEval e2 = evalPolynomial(3, 2.0);
    CHECK(e2.f.isApprox(Eigen::Vector3d(1, 2, 4)));
    CHECK(e2.g.isApprox(Eigen::Vector3d(0, 1, 4)));

    BasisEval e3 = evalPolynomial(4, -1.0);
    CHECK(e3.f.isApprox(Eigen::Vector4d(1, -1, 1, -1)));
    CHECK(e3.g.isApprox(Eigen::Vector4d(0, 1, -2, 3)));

    CHECK(polynomialBasisAtInfinity(3).isApprox(Eigen::Vector3d(0, 0, 1)));
}

TEST_CASE("derivatives match central finite differences") {
    std::mt19937_64 rng(101);
    const double h = 1e-5;
    for (int n = 2; n <= 6; ++n) {
        for (int trial = 0; trial < 20; ++trial) {
            double t = testutil::uniform(rng, -0.45, 0.45);
            BasisEval e = evalFourier(n, t);
            Eigen::VectorXd fd = (evalFourier(n, t + h).f - evalFourier(n, t - h).f) / (2 * h);
            CHECK((e.g - fd).cwiseAbs().maxCoeff() < 1e-6);

            double x = testutil::uniform(rng, -3.0, 3.0);
            BasisEval p = evalPolynomial(n, x);
            Eigen::VectorXd pd = (evalPolynomial(n, x + h).f - evalPolynomial(n, x - h).f) / (2 * h);
            CHECK((p.g - pd).cwiseAbs().maxCoeff() < 1e-6);
        }
    }
}

TEST_CASE("fourier basis is orthonormal on the circle") {
    std::vector<double> x, w;
    testutil::gaussLegendre(256, -0.5, 0.5, x, w);
    for (int n = 2; n <= 6; ++n) {
        Eigen::MatrixXd G = Eigen::MatrixXd::Zero(n, n);
        for (size_t k = 0; k < x.size(); ++k) {
            Eigen::VectorXd f = evalFourier(n, x[k]).f;
            G += w[k] * f * f.transpose();
        }
        CHECK(testutil::maxAbsDiff(G, Eigen::MatrixXd::Identity(n, n)) < 1e-8);
    }
}

TEST_CASE("variance function") {
    MobiusParams id{1, 0, 0, 1};
    CHECK(varianceP(3, id, 0.7) == doctest::Approx(std::pow(1.0 + 0.49, 2)));
    CHECK(varianceP(3, id, 0.0) == doctest::Approx(1.0));
    CHECK(varianceP(3, MobiusParams{2, 0, 0, 1}, 1.0) == doctest::Approx(25.0));
    CHECK_THROWS_AS(varianceP(3, MobiusParams{1, 2, 2, 4}, 0.0), ValidationError);

    // positivity on a wide sweep
    MobiusParams p{0.3, -1.2, 2.0, 0.4};
    for (double xx = -50.0; xx <= 50.0; xx += 0.7) CHECK(varianceP(4, p, xx) > 0.0);
}

TEST_CASE("variance function composes through the group") {
    // sigmaP^2(phi(x; p); p0) = sigmaP^2(x; p0 * p) * lambda(x; p)^2
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 50; ++trial) {
        MobiusParams p = testutil::randomMobius(rng);
        MobiusParams p0 = testutil::randomMobius(rng);
        MobiusParams comp{p0.a * p.a + p0.b * p.c, p0.a * p.b + p0.b * p.d,
                          p0.c * p.a + p0.d * p.c, p0.c * p.b + p0.d * p.d};
        int n = 2 + static_cast<int>(trial % 4);
        double x = testutil::uniform(rng, -2.0, 2.0);
        double den = p.c * x + p.d;
        if (std::abs(den) < 0.1) continue;
        double y = (p.a * x + p.b) / den;
        double lambda = std::pow(den, -(n - 1));
        double lhs = varianceP(n, p0, y);
        double rhs = varianceP(n, comp, x) * lambda * lambda;
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
}

TEST_CASE("bridge matrix golden values") {
    Eigen::MatrixXd B3 = bridgeMatrixB(3);
    Eigen::MatrixXd want3(3, 3);
    want3 << 1, 0, 1, 0, 2 * std::sqrt(2.0), 0, std::sqrt(2.0), 0, -std::sqrt(2.0);
    CHECK(testutil::maxAbsDiff(B3, want3) < 1e-12);

    // The n=4 coefficient pattern; the defining identity fixes the sqrt2
    // normalization of every row.
    Eigen::MatrixXd B4 = bridgeMatrixB(4);
    Eigen::MatrixXd pattern(4, 4);
    pattern << 1, 0, 1, 0, 0, 1, 0, 1, 1, 0, -3, 0, 0, 3, 0, -1;
    CHECK(testutil::maxAbsDiff(B4 / std::sqrt(2.0), pattern) < 1e-12);
}

TEST_CASE("bridge identity f_F(t) = B f_P(tan pi t) lambda0") {
    std::mt19937_64 rng(7);
    for (int n = 2; n <= 6; ++n) {
        Eigen::MatrixXd B = bridgeMatrixB(n);
        for (int trial = 0; trial < 100; ++trial) {
            double t = testutil::uniform(rng, -0.499, 0.499);
            double x = std::tan(kPi * t);
            double lambda0 = std::pow(1.0 + x * x, -(n - 1) / 2.0);
            Eigen::VectorXd lhs = evalFourier(n, t).f;
            Eigen::VectorXd rhs = B * evalPolynomial(n, x).f * lambda0;
            CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-10);
        }
    }
}

TEST_CASE("gram inverse closed form") {
    Eigen::MatrixXd G3 = gramBInverse(3);
    Eigen::MatrixXd want(3, 3);
    want << 3.0 / 8, 0, 1.0 / 8, 0, 1.0 / 8, 0, 1.0 / 8, 0, 3.0 / 8;
    CHECK(testutil::maxAbsDiff(G3, want) < 1e-12);

    // equals (3/8) M_{1/3}
    Eigen::MatrixXd M13(3, 3);
    M13 << 1, 0, 1.0 / 3, 0, 1.0 / 3, 0, 1.0 / 3, 0, 1;
    CHECK(testutil::maxAbsDiff(G3, 0.375 * M13) < 1e-12);

    for (int n = 2; n <= 6; ++n) {
        Eigen::MatrixXd B = bridgeMatrixB(n);
        Eigen::MatrixXd numeric = (B.transpose() * B).inverse();
        CHECK(testutil::maxAbsDiff(numeric, gramBInverse(n)) < 1e-9);
    }
}

TEST_CASE("tangent map conventions") {
    CHECK(tanMap(0.25).value() == doctest::Approx(1.0));
    CHECK(tanMap(0.0).value() == doctest::Approx(0.0));
    CHECK(tanMap(0.5).isInfinite());
    CHECK(tanMapInverse(ExtendedReal::infinity()) == doctest::Approx(0.5));
    CHECK(tanMapInverse(ExtendedReal(1.0)) == doctest::Approx(0.25));
    CHECK_THROWS_AS(tanMap(0.75), ValidationError);

    std::mt19937_64 rng(5);
    for (int i = 0; i < 50; ++i) {
        double t = testutil::uniform(rng, -0.499, 0.5);
        CHECK(tanMapInverse(tanMap(t)) == doctest::Approx(t).epsilon(1e-12));
    }
}

TEST_SUITE_END();

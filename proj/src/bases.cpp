#include "tubedesign/bases.hpp"

#include <cmath>
#include <vector>

#include "tubedesign/errors.hpp"

namespace tubedesign {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrt2 = 1.41421356237309504880;

void requireDimension(int n) {
    if (n < 2) throw ValidationError("basis dimension must be at least 2, got " + std::to_string(n));
}

// Integer polynomial helpers for the bridge-matrix tables (coefficients in
// increasing degree).  Magnitudes stay far below 2^63 for any practical n.
using IPoly = std::vector<long long>;

IPoly polyMul(const IPoly &p, const IPoly &q) {
    IPoly r(p.size() + q.size() - 1, 0);
    for (size_t i = 0; i < p.size(); ++i)
        for (size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
    return r;
}

void polyAcc(IPoly &acc, const IPoly &p, long long scale) {
    if (acc.size() < p.size()) acc.resize(p.size(), 0);
    for (size_t i = 0; i < p.size(); ++i) acc[i] += scale * p[i];
}

IPoly polyPow(const IPoly &p, int k) {
    IPoly r{1};
    for (int i = 0; i < k; ++i) r = polyMul(r, p);
    return r;
}

long long binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

} // namespace

bool MobiusParams::valid() const {
    double scale = std::max(1.0, a * a + b * b + c * c + d * d);
    return std::abs(det()) > 1e-12 * scale;
}

Model Model::fourier(int n) {
    requireDimension(n);
    Model m;
    m.kind = ModelKind::Fourier;
    m.n = n;
    return m;
}

Model Model::weightedPolynomial(int n, const MobiusParams &variance) {
    requireDimension(n);
    if (!variance.valid())
        throw ValidationError("degenerate variance parameters: ad - bc is zero");
    Model m;
    m.kind = ModelKind::WeightedPolynomial;
    m.n = n;
    m.variance = variance;
    return m;
}

BasisEval evalFourier(int n, double t) {
    requireDimension(n);
    BasisEval e;
    e.f.resize(n);
    e.g.resize(n);
    if (n % 2 == 1) {
        e.f(0) = 1.0;
        e.g(0) = 0.0;
        for (int k = 1; 2 * k < n; ++k) {
            double w = 2.0 * kPi * k;
            e.f(2 * k - 1) = kSqrt2 * std::sin(w * t);
            e.f(2 * k) = kSqrt2 * std::cos(w * t);
            e.g(2 * k - 1) = kSqrt2 * w * std::cos(w * t);
            e.g(2 * k) = -kSqrt2 * w * std::sin(w * t);
        }
    } else {
        for (int j = 1; 2 * j <= n; ++j) {
            double w = (2.0 * j - 1.0) * kPi;
            e.f(2 * j - 2) = kSqrt2 * std::cos(w * t);
            e.f(2 * j - 1) = kSqrt2 * std::sin(w * t);
            e.g(2 * j - 2) = -kSqrt2 * w * std::sin(w * t);
            e.g(2 * j - 1) = kSqrt2 * w * std::cos(w * t);
        }
    }
    return e;
}

BasisEval evalPolynomial(int n, double x) {
    requireDimension(n);
    if (!std::isfinite(x)) throw ValidationError("evalPolynomial needs a finite point");
    BasisEval e;
    e.f.resize(n);
    e.g.resize(n);
    double p = 1.0;
    for (int k = 0; k < n; ++k) {
        e.f(k) = p;
        e.g(k) = (k == 0) ? 0.0 : k * e.f(k - 1);
        p *= x;
    }
    return e;
}

Eigen::VectorXd polynomialBasisAtInfinity(int n) {
    requireDimension(n);
    Eigen::VectorXd f = Eigen::VectorXd::Zero(n);
    f(n - 1) = 1.0;
    return f;
}

double varianceP(int n, const MobiusParams &p, double x) {
    requireDimension(n);
    if (!p.valid()) throw ValidationError("degenerate-mobius: ad - bc is zero");
    double q = (p.b * p.b + p.d * p.d) + 2.0 * (p.a * p.b + p.c * p.d) * x +
               (p.a * p.a + p.c * p.c) * x * x;
    return std::pow(q, n - 1);
}

double variancePLeading(int n, const MobiusParams &p) {
    requireDimension(n);
    if (!p.valid()) throw ValidationError("degenerate-mobius: ad - bc is zero");
    return std::pow(p.a * p.a + p.c * p.c, n - 1);
}

double variancePRatio(int n, const MobiusParams &num, const MobiusParams &den,
                      const ExtendedReal &x) {
    if (x.isInfinite()) return variancePLeading(n, num) / variancePLeading(n, den);
    return varianceP(n, num, x.value()) / varianceP(n, den, x.value());
}

// Multiple-angle expansions give each basis entry as an exact integer
// polynomial in x times (1+x^2)^{-(n-1)/2}; rows of B are those coefficient
// arrays (up to the sqrt2 normalization of the trigonometric basis).
Eigen::MatrixXd bridgeMatrixB(int n) {
    requireDimension(n);
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n, n);
    const IPoly onePlusX2{1, 0, 1};

    auto setRow = [&](int row, const IPoly &coeffs, double scale) {
        for (size_t j = 0; j < coeffs.size(); ++j) B(row, static_cast<int>(j)) = scale * coeffs[j];
    };

    if (n % 2 == 1) {
        int m = (n - 1) / 2;
        // sin(2 pi k t) = P_k(x) / (1+x^2)^k with sin(2 pi t) = 2x/(1+x^2),
        // cos(2 pi t) = (1-x^2)/(1+x^2).
        const IPoly twoX{0, 2};
        const IPoly oneMinusX2{1, 0, -1};
        setRow(0, polyPow(onePlusX2, m), 1.0);
        for (int k = 1; k <= m; ++k) {
            IPoly ps, pc;
            for (int r = 0; 2 * r + 1 <= k; ++r) {
                long long sgn = (r % 2 == 0) ? 1 : -1;
                polyAcc(ps, polyMul(polyPow(twoX, 2 * r + 1), polyPow(oneMinusX2, k - 2 * r - 1)),
                        sgn * binom(k, 2 * r + 1));
            }
            for (int r = 0; 2 * r <= k; ++r) {
                long long sgn = (r % 2 == 0) ? 1 : -1;
                polyAcc(pc, polyMul(polyPow(twoX, 2 * r), polyPow(oneMinusX2, k - 2 * r)),
                        sgn * binom(k, 2 * r));
            }
            setRow(2 * k - 1, polyMul(ps, polyPow(onePlusX2, m - k)), kSqrt2);
            setRow(2 * k, polyMul(pc, polyPow(onePlusX2, m - k)), kSqrt2);
        }
    } else {
        int m = n / 2;
        // cos((2j-1) pi t), sin((2j-1) pi t) expand in sin(pi t) = x/sqrt(1+x^2),
        // cos(pi t) = 1/sqrt(1+x^2); the half powers combine into integers.
        for (int j = 1; j <= m; ++j) {
            int k = 2 * j - 1;
            IPoly qc, qs;
            for (int r = 0; 2 * r <= k; ++r) {
                long long sgn = (r % 2 == 0) ? 1 : -1;
                IPoly mono(2 * r + 1, 0);
                mono[2 * r] = 1;
                polyAcc(qc, mono, sgn * binom(k, 2 * r));
            }
            for (int r = 0; 2 * r + 1 <= k; ++r) {
                long long sgn = (r % 2 == 0) ? 1 : -1;
                IPoly mono(2 * r + 2, 0);
                mono[2 * r + 1] = 1;
                polyAcc(qs, mono, sgn * binom(k, 2 * r + 1));
            }
            IPoly lift = polyPow(onePlusX2, (n - 1 - k) / 2);
            setRow(2 * j - 2, polyMul(qc, lift), kSqrt2);
            setRow(2 * j - 1, polyMul(qs, lift), kSqrt2);
        }
    }
    return B;
}

Eigen::MatrixXd gramBInverse(int n) {
    requireDimension(n);
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(n, n);
    double logPiGammaN = std::log(kPi) + std::lgamma(static_cast<double>(n));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            if ((i + j) % 2 != 0) continue;
            double h = (i + j - 1) / 2.0;
            G(i - 1, j - 1) = std::exp(std::lgamma(h) + std::lgamma(n - h) - logPiGammaN);
        }
    return G;
}

ExtendedReal tanMap(double t) {
    if (t <= -0.5 || t > 0.5)
        throw ValidationError("time parameter must lie in (-1/2, 1/2]");
    if (t == 0.5) return ExtendedReal::infinity();
    return ExtendedReal(std::tan(kPi * t));
}

double tanMapInverse(const ExtendedReal &x) {
    if (x.isInfinite()) return 0.5;
    return std::atan(x.value()) / kPi;
}

} // namespace tubedesign

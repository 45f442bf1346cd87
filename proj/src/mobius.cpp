#include "tubedesign/mobius.hpp"

#include <cmath>

#include "tubedesign/errors.hpp"

namespace tubedesign {

namespace {

void requireValid(const MobiusParams &p) {
    if (!p.valid()) throw ValidationError("degenerate-mobius: ad - bc is zero");
}

double binom(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

} // namespace

ExtendedReal mobiusApply(const MobiusParams &p, const ExtendedReal &x) {
    requireValid(p);
    if (x.isInfinite()) {
        if (p.c == 0.0) return ExtendedReal::infinity();
        return ExtendedReal(p.a / p.c);
    }
    double den = p.c * x.value() + p.d;
    if (den == 0.0) return ExtendedReal::infinity();
    double y = (p.a * x.value() + p.b) / den;
    if (!std::isfinite(y)) return ExtendedReal::infinity();
    return ExtendedReal(y);
}

MobiusParams mobiusCompose(const MobiusParams &p2, const MobiusParams &p1) {
    return {p2.a * p1.a + p2.b * p1.c, p2.a * p1.b + p2.b * p1.d,
            p2.c * p1.a + p2.d * p1.c, p2.c * p1.b + p2.d * p1.d};
}

MobiusParams mobiusInverse(const MobiusParams &p) { return {p.d, -p.b, -p.c, p.a}; }

bool mobiusEquivalent(const MobiusParams &p, const MobiusParams &q, double tol) {
    // Cross products vanish iff the quadruples are proportional.
    double pv[4] = {p.a, p.b, p.c, p.d};
    double qv[4] = {q.a, q.b, q.c, q.d};
    double np = 0.0, nq = 0.0;
    for (int i = 0; i < 4; ++i) {
        np = std::max(np, std::abs(pv[i]));
        nq = std::max(nq, std::abs(qv[i]));
    }
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (std::abs(pv[i] * qv[j] - pv[j] * qv[i]) > tol * np * nq) return false;
    return true;
}

Eigen::MatrixXd repMatrix(int n, const MobiusParams &p) {
    requireValid(p);
    if (n < 2) throw ValidationError("representation dimension must be at least 2");
    Eigen::MatrixXd A(n, n);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            double s = 0.0;
            int lo = std::max(0, i + j - n - 1);
            int hi = std::min(i - 1, j - 1);
            for (int l = lo; l <= hi; ++l)
                s += binom(i - 1, l) * binom(n - i, j - 1 - l) * std::pow(p.a, l) *
                     std::pow(p.b, i - 1 - l) * std::pow(p.c, j - 1 - l) *
                     std::pow(p.d, n + 1 - i - j + l);
            A(i - 1, j - 1) = s;
        }
    return A;
}

double lambdaFactor(int n, const MobiusParams &p, double x) {
    return std::pow(p.c * x + p.d, -(n - 1));
}

MobiusDecomposition mobiusDecompose(const MobiusParams &p) {
    requireValid(p);
    MobiusDecomposition d;
    double cd2 = p.c * p.c + p.d * p.d;
    d.q = p.det() / cd2;
    d.r = (p.a * p.c + p.b * p.d) / cd2;
    double root = std::sqrt(cd2);
    d.s = p.d / root;
    d.t = p.c / root;
    d.branch = (p.det() > 0.0) ? 1 : -1;
    d.scaleBase = cd2;
    return d;
}

MobiusParams recompose(const MobiusDecomposition &d) {
    return mobiusCompose({d.q, d.r, 0.0, 1.0}, {d.s, -d.t, d.t, d.s});
}

HankelMatrix actOnMatrix(const Eigen::MatrixXd &A, const HankelMatrix &M) {
    Eigen::MatrixXd R = A * M.toMatrix() * A.transpose();
    double dev = 0.0;
    HankelMatrix out = HankelMatrix::fromMatrix(R, &dev);
    double scale = R.cwiseAbs().maxCoeff();
    if (dev > 1e-8 * scale)
        throw NumericalError("numerical-action-failure",
                             "transformed matrix breaks Hankel symmetry beyond tolerance");
    return out;
}

HankelMatrix actOnMatrix(const MobiusParams &p, const HankelMatrix &M) {
    return actOnMatrix(repMatrix(M.n, p), M);
}

TransformedDesign actOnDesign(const MobiusParams &p, const Design &design,
                              const MobiusParams &oldVariance) {
    requireValid(p);
    if (design.domain != Domain::RealLine)
        throw ValidationError("the group acts on real-line (polynomial) designs");
    design.validate();
    TransformedDesign out;
    out.design.domain = Domain::RealLine;
    out.design.atoms.reserve(design.atoms.size());
    for (const auto &a : design.atoms) out.design.atoms.push_back({mobiusApply(p, a.x), a.w});
    // sigmaP^2(phi(x); new) matches sigmaP^2(x; old) up to the lambda factor,
    // so the pushforward information matrix is the congruence image A M A^T.
    // The 1/|det| normalization makes that equality exact rather than
    // proportional (the parameter quadruple enters sigmaP^2 with its scale).
    MobiusParams v = mobiusCompose(oldVariance, mobiusInverse(p));
    double s = std::abs(p.det());
    out.variance = {v.a / s, v.b / s, v.c / s, v.d / s};
    return out;
}

} // namespace tubedesign

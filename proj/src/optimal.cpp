#include "tubedesign/optimal.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "tubedesign/errors.hpp"
#include "tubedesign/tube_volume.hpp"

namespace tubedesign {

namespace {

constexpr double kPi = 3.14159265358979323846;

double uniformTime(int n, int i) { return static_cast<double>(i) / n - (n + 1.0) / (2.0 * n); }

// Sextic whose real roots provide the group element diagonalizing the
// (u,1,1;1,1,1;1,1,w) form into (u~,0,v~;0,v~,0;v~,0,w~).
struct Sextic {
    double u, w;
    double coef[7];

    Sextic(double u_, double w_) : u(u_), w(w_) {
        coef[6] = -2.0 + 3.0 * w - w * w;
        coef[5] = -6.0 + 7.0 * w - u * w * w;
        coef[4] = -10.0 + 15.0 * w - 5.0 * u * w;
        coef[3] = -10.0 * u + 10.0 * w;
        coef[2] = 10.0 - 15.0 * u + 5.0 * u * w;
        coef[1] = 6.0 - 7.0 * u + u * u * w;
        coef[0] = 2.0 - 3.0 * u + u * u;
    }

    double operator()(double x) const {
        double r = coef[6];
        for (int k = 5; k >= 0; --k) r = r * x + coef[k];
        return r;
    }
    double derivative(double x) const {
        double r = 6.0 * coef[6];
        for (int k = 5; k >= 1; --k) r = r * x + k * coef[k];
        return r;
    }
};

double rejector1(double x, double u) {
    // f1(x; u) = (x+1)^3 + (u-1); b of the group element divides by it.
    double t = x + 1.0;
    return t * t * t + (u - 1.0);
}

double rejector2(double x, double u, double w) {
    // f2(x; u, w) = 4x + 6x^2 + 4x^3 + u + x^4 w; proportional to ad - bc.
    return ((w * x + 4.0) * x + 6.0) * x * x + 4.0 * x + u;
}

std::vector<double> sexticRealRoots(const Sextic &f) {
    // Sign anchors from the existence proof: 0, -1, and +-X for the leading
    // behaviour.  A sign change is guaranteed among {f(-X), f(-1), f(0), f(X)}.
    const double X = 1e6;
    const double anchors[4] = {-X, -1.0, 0.0, X};
    std::vector<double> roots;

    double fv[4];
    for (int i = 0; i < 4; ++i) fv[i] = f(anchors[i]);

    double scale = 0.0;
    for (int k = 0; k <= 6; ++k) scale = std::max(scale, std::abs(f.coef[k]));
    for (int i = 1; i < 3; ++i)
        if (std::abs(fv[i]) <= 1e-12 * scale) roots.push_back(anchors[i]);

    for (int i = 0; i + 1 < 4; ++i) {
        double lo = anchors[i], hi = anchors[i + 1];
        double flo = fv[i], fhi = fv[i + 1];
        if (flo == 0.0 || fhi == 0.0) continue;
        if ((flo > 0.0) == (fhi > 0.0)) continue;
        while (hi - lo > 1e-13 * std::max({1.0, std::abs(lo), std::abs(hi)})) {
            double mid = 0.5 * (lo + hi);
            double fm = f(mid);
            if (fm == 0.0) {
                lo = hi = mid;
                break;
            }
            if ((fm > 0.0) == (flo > 0.0)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        double x = 0.5 * (lo + hi);
        double d = f.derivative(x);
        if (d != 0.0) x -= f(x) / d; // one Newton polish
        roots.push_back(x);
    }
    return roots;
}

} // namespace

Design dOptimalFourier(int n, double theta) {
    if (n < 2) throw ValidationError("dimension must be at least 2");
    double bound = 1.0 / (2.0 * n);
    if (!(theta > -bound && theta < bound))
        throw ValidationError("theta must lie in (-1/(2n), 1/(2n))");
    Design d;
    d.domain = Domain::FourierCircle;
    for (int i = 1; i <= n; ++i) d.atoms.push_back({ExtendedReal(uniformTime(n, i) - theta), 1.0 / n});
    return d;
}

Design dOptimalPolynomial(int n, const MobiusParams &varParams, double s, double t) {
    if (n < 2) throw ValidationError("dimension must be at least 2");
    if (std::abs(s * s + t * t - 1.0) > 1e-9)
        throw ValidationError("rotation parameters must satisfy s^2 + t^2 = 1");
    if (!varParams.valid()) throw ValidationError("degenerate variance parameters");
    MobiusParams rot{s, -t, t, s};
    MobiusParams map = mobiusCompose(mobiusInverse(varParams), rot);
    Design d;
    d.domain = Domain::RealLine;
    for (int i = 1; i <= n; ++i) {
        ExtendedReal x0(std::tan(kPi * uniformTime(n, i)));
        d.atoms.push_back({mobiusApply(map, x0), 1.0 / n});
    }
    return d;
}

HankelMatrix scaledDOptimalMoments(int n) {
    if (n < 2) throw ValidationError("dimension must be at least 2");
    Eigen::VectorXd m = Eigen::VectorXd::Zero(2 * n - 1);
    double logDen = 0.5 * std::log(kPi) + std::lgamma(n - 0.5);
    for (int k = 0; k <= 2 * n - 2; k += 2) {
        double h = (k + 1) / 2.0;
        m(k) = std::exp(std::lgamma(h) + std::lgamma(n - h) - logDen);
    }
    return HankelMatrix(n, std::move(m));
}

double vDual(double v) {
    if (!(v > 0.0 && v < 1.0)) throw ValidationError("v must lie in (0,1)");
    return (1.0 - v) / (1.0 + 3.0 * v);
}

OrbitPoint reduceToOrbitRep(const HankelMatrix &M) {
    if (M.n != 3) throw ValidationError("orbit reduction is implemented for n = 3");
    if (!isInCone(M)) throw ValidationError("moment matrix is not in the cone");

    // Step 1: canonical representation -> corner form (u,1,1;1,1,1;1,1,w).
    CanonicalRep rep = canonicalRep(M);
    double x1 = rep.finiteAtoms[0].first;
    double x2 = rep.finiteAtoms[1].first, w2 = rep.finiteAtoms[1].second;
    double scale1 = std::pow(w2, 0.25);
    MobiusParams toM{scale1 * (x1 - x2), -scale1 * x1, 0.0, -scale1};
    MobiusParams t1 = mobiusInverse(toM);
    HankelMatrix corner = actOnMatrix(t1, M);

    double pivot = corner.moments(1); // all three off-corner entries coincide
    double u = corner.moments(0) / pivot;
    double w = corner.moments(4) / pivot;

    // Step 2: kill the odd moments with a root of the sextic.
    MobiusParams t2;
    if (std::abs(u - 2.0) < 1e-9) {
        t2 = {1.0, -0.5, 0.0, 1.0};
    } else {
        Sextic f(u, w);
        std::vector<double> roots = sexticRealRoots(f);
        std::sort(roots.begin(), roots.end(),
                  [](double a, double b) { return std::abs(a) < std::abs(b); });
        bool found = false;
        for (double x : roots) {
            if (std::abs(rejector1(x, u)) < 1e-10) continue;
            if (std::abs(rejector2(x, u, w)) < 1e-10) continue;
            double b = -(((w * x + 3.0) * x + 3.0) * x + 1.0) / rejector1(x, u);
            t2 = {1.0, b, x, 1.0};
            found = true;
            break;
        }
        if (!found)
            throw NumericalError("reduction-failure",
                                 "no admissible real root of the reduction sextic; u=" +
                                     std::to_string(u) + " w=" + std::to_string(w));
    }
    HankelMatrix diag = actOnMatrix(t2, corner);

    // Step 3: diagonal rescaling onto M_v.
    double ut = diag.moments(0), vt = diag.moments(2), wt = diag.moments(4);
    MobiusParams t3{std::pow(wt, -0.25), 0.0, 0.0, std::pow(ut, -0.25)};
    MobiusParams total = mobiusCompose(t3, mobiusCompose(t2, t1));

    // Step 4: fold into the canonical branch v <= 1/3.
    double v = vt / std::sqrt(ut * wt);
    if (v > 1.0 / 3.0) {
        double norm = std::pow(2.0 + 6.0 * v, -0.25);
        total = mobiusCompose({norm, -norm, norm, norm}, total);
    }

    // Report the unit-determinant representative of the transform; the
    // leftover factor then lands in the scale (pure rescalings of M report
    // their factor rather than being absorbed).
    double detNorm = std::sqrt(std::abs(total.det()));
    total = {total.a / detNorm, total.b / detNorm, total.c / detNorm, total.d / detNorm};

    HankelMatrix reduced = actOnMatrix(total, M);
    OrbitPoint out;
    out.scale = 0.5 * (reduced.moments(0) + reduced.moments(4));
    out.v = reduced.moments(2) / out.scale;
    out.transform = total;
    Eigen::VectorXd target(5);
    target << 1.0, 0.0, out.v, 0.0, 1.0;
    out.residual = (reduced.moments - out.scale * target).cwiseAbs().maxCoeff() / out.scale;
    if (out.residual > 1e-6)
        throw NumericalError("reduction-failure",
                             "reduced matrix deviates from M_v; residual " + std::to_string(out.residual) +
                                 ", v " + std::to_string(out.v));
    return out;
}

Design tvOptimalPolynomial(const MobiusParams &varParams, const MobiusParams &freeParams) {
    if (!varParams.valid() || !freeParams.valid())
        throw ValidationError("degenerate transformation parameters");
    MobiusParams inv = mobiusInverse(freeParams);
    Design d;
    d.domain = Domain::RealLine;
    double total = 0.0;
    for (int i = 1; i <= 3; ++i) {
        ExtendedReal x = mobiusApply(inv, ExtendedReal(std::tan(kPi * uniformTime(3, i))));
        double p = variancePRatio(3, varParams, freeParams, x);
        d.atoms.push_back({x, p});
        total += p;
    }
    for (auto &a : d.atoms) a.w /= total;
    return d;
}

Design tvOptimalFourier(double q, double r, double theta) {
    if (q == 0.0) throw ValidationError("q must be nonzero");
    Design d;
    d.domain = Domain::FourierCircle;
    double total = 0.0;
    for (int i = 1; i <= 3; ++i) {
        double tan0 = std::tan(kPi * (uniformTime(3, i) - theta));
        double t, p;
        if (!std::isfinite(tan0)) {
            t = 0.5;
            p = std::pow(q * q, 2);
        } else {
            double x = q * tan0 + r;
            t = std::atan(x) / kPi;
            double ratio = (1.0 + x * x) / (1.0 + tan0 * tan0);
            p = ratio * ratio;
        }
        d.atoms.push_back({ExtendedReal(t), p});
        total += p;
    }
    for (auto &a : d.atoms) a.w /= total;
    return d;
}

Eigen::MatrixXd orbitTangent(const HankelMatrix &M, double step) {
    int dim = 2 * M.n - 1;
    Eigen::MatrixXd T(dim, 4);
    for (int k = 0; k < 4; ++k) {
        double p[4] = {1.0, 0.0, 0.0, 1.0};
        double m[4] = {1.0, 0.0, 0.0, 1.0};
        p[k] += step;
        m[k] -= step;
        HankelMatrix plus = actOnMatrix(MobiusParams{p[0], p[1], p[2], p[3]}, M);
        HankelMatrix minus = actOnMatrix(MobiusParams{m[0], m[1], m[2], m[3]}, M);
        T.col(k) = (plus.moments - minus.moments) / (2.0 * step);
    }
    return T;
}

int orbitTangentRank(const HankelMatrix &M) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(orbitTangent(M));
    double cutoff = 1e-8 * svd.singularValues()(0);
    int rank = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > cutoff) ++rank;
    return rank;
}

HessianReport localHessianCheck(int n) {
    if (n < 3 || n > 6) throw ValidationError("the local check covers n in {3,...,6}");
    HankelMatrix base = scaledDOptimalMoments(n);
    const int dim = 2 * n - 1;
    const double quadTol = 1e-10;

    auto volumeAt = [&](const Eigen::VectorXd &m) {
        return volumePolynomial(HankelMatrix(n, m), quadTol).volume;
    };
    Eigen::VectorXd h(dim);
    for (int i = 0; i < dim; ++i) h(i) = 1e-4 * (1.0 + std::abs(base.moments(i)));

    // Symmetric four-point cross stencil at a given step multiplier.
    auto hessianAt = [&](double mult) {
        Eigen::MatrixXd H(dim, dim);
        for (int i = 0; i < dim; ++i)
            for (int j = i; j < dim; ++j) {
                double hi = mult * h(i), hj = mult * h(j);
                Eigen::VectorXd m = base.moments;
                m(i) += hi;
                m(j) += hj;
                double pp = volumeAt(m);
                m(j) -= 2.0 * hj;
                double pm = volumeAt(m);
                m(i) -= 2.0 * hi;
                double mm = volumeAt(m);
                m(j) += 2.0 * hj;
                double mp = volumeAt(m);
                H(i, j) = H(j, i) = (pp - pm - mp + mm) / (4.0 * hi * hj);
            }
        return H;
    };

    Eigen::MatrixXd H = hessianAt(1.0);
    Eigen::MatrixXd Hcoarse = hessianAt(2.0);

    HessianReport rep;
    rep.n = n;
    // The cross stencil is symmetric by construction, so step-size
    // instability is measured by step-doubling disagreement instead.
    rep.instability = (H - Hcoarse).cwiseAbs().maxCoeff() / H.cwiseAbs().maxCoeff();
    if (rep.instability > 0.05)
        throw NumericalError("accuracy-failure",
                             "finite-difference Hessian is step-size unstable beyond 5%");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    rep.eigenvalues = es.eigenvalues();
    double lambdaMax = rep.eigenvalues.cwiseAbs().maxCoeff();
    for (int i = 0; i < dim; ++i)
        if (std::abs(rep.eigenvalues(i)) < 1e-4 * lambdaMax) ++rep.nullDim;
    rep.orbitDim = orbitTangentRank(base);
    return rep;
}

} // namespace tubedesign

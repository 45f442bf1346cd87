#include "tubedesign/moment_cone.hpp"

#include <algorithm>
#include <cmath>

#include "tubedesign/errors.hpp"

namespace tubedesign {

HankelMatrix::HankelMatrix(int n_, Eigen::VectorXd m) : n(n_), moments(std::move(m)) {
    if (n < 2) throw ValidationError("Hankel dimension must be at least 2");
    if (moments.size() != 2 * n - 1)
        throw ValidationError("moment vector must have length 2n-1 = " + std::to_string(2 * n - 1) +
                              ", got " + std::to_string(moments.size()));
}

Eigen::MatrixXd HankelMatrix::toMatrix() const {
    Eigen::MatrixXd M(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M(i, j) = moments(i + j);
    return M;
}

HankelMatrix HankelMatrix::fromMatrix(const Eigen::MatrixXd &M, double *maxDeviation) {
    if (M.rows() != M.cols() || M.rows() < 2) throw ValidationError("square matrix of size >= 2 expected");
    int n = static_cast<int>(M.rows());
    Eigen::VectorXd m = Eigen::VectorXd::Zero(2 * n - 1);
    Eigen::VectorXi count = Eigen::VectorXi::Zero(2 * n - 1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            m(i + j) += M(i, j);
            count(i + j) += 1;
        }
    for (int k = 0; k < 2 * n - 1; ++k) m(k) /= count(k);
    if (maxDeviation) {
        double dev = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) dev = std::max(dev, std::abs(M(i, j) - m(i + j)));
        *maxDeviation = dev;
    }
    return HankelMatrix(n, std::move(m));
}

HankelMatrix representativeMv(double v) {
    Eigen::VectorXd m(5);
    m << 1.0, 0.0, v, 0.0, 1.0;
    return HankelMatrix(3, std::move(m));
}

double Design::totalWeight() const {
    double s = 0.0;
    for (const auto &a : atoms) s += a.w;
    return s;
}

void Design::validate() const {
    if (atoms.empty()) throw ValidationError("design has no atoms");
    for (const auto &a : atoms) {
        if (!(a.w > 0.0)) throw ValidationError("design weights must be positive");
        if (domain == Domain::FourierCircle) {
            if (a.x.isInfinite()) throw ValidationError("fourier designs cannot place mass at infinity");
            if (a.x.value() <= -0.5 || a.x.value() > 0.5)
                throw ValidationError("fourier atoms must lie in (-1/2, 1/2]");
        }
    }
    for (size_t i = 0; i < atoms.size(); ++i)
        for (size_t j = i + 1; j < atoms.size(); ++j)
            if (atoms[i].x == atoms[j].x) throw ValidationError("design atoms must be distinct");
}

HankelMatrix CanonicalRep::reconstruct(int n) const {
    Eigen::VectorXd m = Eigen::VectorXd::Zero(2 * n - 1);
    for (const auto &[x, w] : finiteAtoms) {
        double p = w;
        for (int k = 0; k < 2 * n - 1; ++k) {
            m(k) += p;
            p *= x;
        }
    }
    m(2 * n - 2) += infinityWeight;
    return HankelMatrix(n, std::move(m));
}

HankelMatrix infoMatrixPolynomial(const Model &model, const Design &design) {
    if (model.kind != ModelKind::WeightedPolynomial)
        throw ValidationError("polynomial information matrix needs a weighted-polynomial model");
    if (design.domain != Domain::RealLine)
        throw ValidationError("polynomial designs live on the real line");
    design.validate();
    int n = model.n;
    Eigen::VectorXd m = Eigen::VectorXd::Zero(2 * n - 1);
    for (const auto &a : design.atoms) {
        if (a.x.isInfinite()) {
            m(2 * n - 2) += a.w / variancePLeading(n, model.variance);
            continue;
        }
        double x = a.x.value();
        double p = a.w / varianceP(n, model.variance, x);
        for (int k = 0; k < 2 * n - 1; ++k) {
            m(k) += p;
            p *= x;
        }
    }
    return HankelMatrix(n, std::move(m));
}

Eigen::MatrixXd infoMatrixFourier(const Model &model, const Design &design) {
    if (model.kind != ModelKind::Fourier)
        throw ValidationError("fourier information matrix needs a fourier model");
    if (design.domain != Domain::FourierCircle)
        throw ValidationError("fourier designs live on the circle (-1/2, 1/2]");
    design.validate();
    int n = model.n;
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
    for (const auto &a : design.atoms) {
        Eigen::VectorXd f = evalFourier(n, a.x.value()).f;
        M.noalias() += a.w * f * f.transpose();
    }
    return M;
}

InfoMatrixResult infoMatrix(const Model &model, const Design &design) {
    InfoMatrixResult r;
    if (model.kind == ModelKind::Fourier) {
        r.dense = infoMatrixFourier(model, design);
        r.inCone = isPositiveDefinite(r.dense);
    } else {
        r.hankel = infoMatrixPolynomial(model, design);
        r.dense = r.hankel.toMatrix();
        r.inCone = isInCone(r.hankel);
    }
    return r;
}

bool isPositiveDefinite(const Eigen::MatrixXd &A) {
    int n = static_cast<int>(A.rows());
    double tol = 1e-12 * A.trace();
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
    for (int k = 0; k < n; ++k) {
        double pivot = A(k, k) - L.row(k).head(k).squaredNorm();
        if (!(pivot > tol)) return false;
        L(k, k) = std::sqrt(pivot);
        for (int i = k + 1; i < n; ++i)
            L(i, k) = (A(i, k) - L.row(i).head(k).dot(L.row(k).head(k))) / L(k, k);
    }
    return true;
}

bool isInCone(const HankelMatrix &M) { return isPositiveDefinite(M.toMatrix()); }

CanonicalRep canonicalRep(const HankelMatrix &M) {
    const int n = M.n;
    const Eigen::VectorXd &m = M.moments;

    // Coefficients of the monic atom polynomial from the Hankel system on
    // the first 2n-2 moments (those are the moments of the finite part).
    Eigen::MatrixXd H(n - 1, n - 1);
    Eigen::VectorXd rhs(n - 1);
    for (int i = 0; i < n - 1; ++i) {
        for (int j = 0; j < n - 1; ++j) H(i, j) = m(i + j);
        rhs(i) = -m(i + n - 1);
    }
    Eigen::VectorXd coef = H.colPivHouseholderQr().solve(rhs);

    // Companion-matrix roots of x^{n-1} + c_{n-2} x^{n-2} + ... + c_0.
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n - 1, n - 1);
    for (int i = 1; i < n - 1; ++i) C(i, i - 1) = 1.0;
    for (int i = 0; i < n - 1; ++i) C(i, n - 2) = -coef(i);
    Eigen::EigenSolver<Eigen::MatrixXd> es(C);
    if (es.info() != Eigen::Success)
        throw NumericalError("representation-failure", "atom polynomial eigensolver failed");

    std::vector<double> roots;
    for (int i = 0; i < n - 1; ++i) {
        std::complex<double> z = es.eigenvalues()(i);
        if (std::abs(z.imag()) >= 1e-8 * (1.0 + std::abs(z.real())))
            throw NumericalError("representation-failure",
                                 "atom polynomial has non-real roots; matrix is numerically on the cone boundary");
        roots.push_back(z.real());
    }
    std::sort(roots.begin(), roots.end());
    double span = 1.0 + std::abs(roots.front()) + std::abs(roots.back());
    for (size_t i = 1; i < roots.size(); ++i)
        if (roots[i] - roots[i - 1] < 1e-8 * span)
            throw NumericalError("representation-failure", "atom polynomial has nearly repeated roots");

    // Vandermonde system for the finite weights.
    Eigen::MatrixXd V(n - 1, n - 1);
    for (int k = 0; k < n - 1; ++k)
        for (int i = 0; i < n - 1; ++i) V(k, i) = std::pow(roots[i], k);
    Eigen::VectorXd w = V.colPivHouseholderQr().solve(m.head(n - 1));

    CanonicalRep rep;
    double scale = std::abs(m(0)) + std::abs(m(2 * n - 2));
    for (int i = 0; i < n - 1; ++i) {
        if (!(w(i) > 1e-12 * scale))
            throw NumericalError("representation-failure", "nonpositive finite atom weight");
        rep.finiteAtoms.emplace_back(roots[i], w(i));
    }
    double tail = 0.0;
    for (int i = 0; i < n - 1; ++i) tail += w(i) * std::pow(roots[i], 2 * n - 2);
    rep.infinityWeight = m(2 * n - 2) - tail;
    if (rep.infinityWeight < 1e-12 * scale)
        throw NumericalError("representation-failure", "vanishing mass at infinity; matrix is on the cone boundary");
    return rep;
}

Design rescaleWeights(const Design &design, const VarianceFn &sigma1Sq, const VarianceFn &sigma2Sq) {
    design.validate();
    Design out = design;
    double total = 0.0;
    for (auto &a : out.atoms) {
        double s1 = sigma1Sq(a.x);
        double s2 = sigma2Sq(a.x);
        if (!(s1 > 0.0) || !(s2 > 0.0))
            throw ValidationError("variance functions must be positive on the design atoms");
        a.w *= s2 / s1;
        total += a.w;
    }
    for (auto &a : out.atoms) a.w /= total;
    return out;
}

} // namespace tubedesign

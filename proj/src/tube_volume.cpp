#include "tubedesign/tube_volume.hpp"

#include <cmath>

#include "tubedesign/errors.hpp"
#include "tubedesign/quadrature.hpp"

namespace tubedesign {

namespace {

constexpr double kPi = 3.14159265358979323846;

Eigen::MatrixXd choleskyFactor(const Eigen::MatrixXd &M) {
    Eigen::LLT<Eigen::MatrixXd> llt(M);
    if (llt.info() != Eigen::Success)
        throw ValidationError("matrix is not positive definite");
    return llt.matrixL();
}

// sqrt(det2)/quadratic-form with Sigma = M^{-1}, evaluated through the
// whitened vectors u = L^{-1} f, v = L^{-1} g (M = L L^T).  The 2x2
// determinant becomes the Gram minor sum |u|^2|v|^2 - (u.v)^2 =
// sum_{i<j} (u_i v_j - u_j v_i)^2, which is nonnegative term by term and
// avoids the cancellation of the direct formula when f and g align.
double whitenedIntegrand(const Eigen::MatrixXd &L, const Eigen::VectorXd &f,
                         const Eigen::VectorXd &g) {
    Eigen::VectorXd u = L.triangularView<Eigen::Lower>().solve(f);
    Eigen::VectorXd v = L.triangularView<Eigen::Lower>().solve(g);
    int n = static_cast<int>(u.size());
    double det2 = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double minor = u(i) * v(j) - u(j) * v(i);
            det2 += minor * minor;
        }
    return std::sqrt(det2) / u.squaredNorm();
}

VolumeResult reportResult(const QuadratureResult &q) {
    VolumeResult r{2.0 * q.value, 2.0 * q.errorEstimate, q.nodes};
    if (!q.converged)
        throw NumericalError("accuracy-failure",
                             "quadrature did not converge; best estimate " + std::to_string(r.volume) +
                                 " with error bound " + std::to_string(r.quadratureError));
    return r;
}

VolumeResult integrateOverLine(const std::function<double(double)> &integrandX, double absTol) {
    // x = tan(pi t) maps the line onto a compact interval and removes the
    // 1/x^2 tail of the integrand.
    auto g = [&](double t) {
        double x = std::tan(kPi * t);
        return integrandX(x) * kPi * (1.0 + x * x);
    };
    return reportResult(adaptiveGaussKronrod(g, -0.5, 0.5, absTol, 40));
}

} // namespace

double integrandGeneric(const Eigen::MatrixXd &Sigma, const Eigen::VectorXd &f,
                        const Eigen::VectorXd &g) {
    double ff = f.dot(Sigma * f);
    double gg = g.dot(Sigma * g);
    double fg = f.dot(Sigma * g);
    double det2 = ff * gg - fg * fg;
    if (det2 < 0.0) {
        if (det2 < -1e-12 * ff * gg)
            throw NumericalError("internal-consistency-failure",
                                 "negative 2x2 determinant beyond round-off tolerance");
        det2 = 0.0;
    }
    return std::sqrt(det2) / ff;
}

double integrandN3(const HankelMatrix &M, double x) {
    if (M.n != 3) throw ValidationError("the closed-form integrand is specific to n = 3");
    const Eigen::VectorXd &m = M.moments;
    double det = m(0) * (m(2) * m(4) - m(3) * m(3)) - m(1) * (m(1) * m(4) - m(2) * m(3)) +
                 m(2) * (m(1) * m(3) - m(2) * m(2));
    // h1(x) = det(M) * (m0 x^4 - 4 m1 x^3 + 6 m2 x^2 - 4 m3 x + m4)
    double q = (((m(0) * x - 4.0 * m(1)) * x + 6.0 * m(2)) * x - 4.0 * m(3)) * x + m(4);
    double h1 = det * q;
    if (h1 < 0.0) {
        double x2 = x * x;
        double qAbs = ((std::abs(m(0)) * x2 + 4.0 * std::abs(m(1)) * std::abs(x) + 6.0 * std::abs(m(2))) * x2 +
                       4.0 * std::abs(m(3)) * std::abs(x)) +
                      std::abs(m(4));
        if (h1 < -1e-12 * std::abs(det) * qAbs)
            throw NumericalError("internal-consistency-failure",
                                 "h1 negative beyond round-off tolerance");
        h1 = 0.0;
    }
    // h0(x) = f_P(x)^T adj(M) f_P(x)
    double a0 = m(2) * m(4) - m(3) * m(3);
    double a1 = 2.0 * (m(2) * m(3) - m(1) * m(4));
    double a2 = m(0) * m(4) + 2.0 * m(1) * m(3) - 3.0 * m(2) * m(2);
    double a3 = 2.0 * (m(1) * m(2) - m(0) * m(3));
    double a4 = m(0) * m(2) - m(1) * m(1);
    double h0 = (((a4 * x + a3) * x + a2) * x + a1) * x + a0;
    return std::sqrt(h1) / h0;
}

VolumeResult volumePolynomialGeneric(const HankelMatrix &M, double absTol) {
    if (!isInCone(M)) throw ValidationError("moment matrix is not in the cone");
    Eigen::MatrixXd L = choleskyFactor(M.toMatrix());
    int n = M.n;
    return integrateOverLine(
        [&](double x) {
            BasisEval e = evalPolynomial(n, x);
            return whitenedIntegrand(L, e.f, e.g);
        },
        absTol);
}

VolumeResult volumePolynomial(const HankelMatrix &M, double absTol) {
    if (M.n != 3) return volumePolynomialGeneric(M, absTol);
    if (!isInCone(M)) throw ValidationError("moment matrix is not in the cone");
    return integrateOverLine([&](double x) { return integrandN3(M, x); }, absTol);
}

VolumeResult volumeFourier(const Eigen::MatrixXd &M, double absTol) {
    if (M.rows() != M.cols() || M.rows() < 2) throw ValidationError("square SPD matrix expected");
    int n = static_cast<int>(M.rows());
    Eigen::MatrixXd L = choleskyFactor(M);
    auto g = [&](double t) {
        BasisEval e = evalFourier(n, t);
        return whitenedIntegrand(L, e.f, e.g);
    };
    return reportResult(adaptiveGaussKronrod(g, -0.5, 0.5, absTol, 40));
}

double lenOfV(double v, double absTol) {
    if (!(v > 0.0 && v < 1.0)) throw ValidationError("v must lie in (0,1)");
    double lead = std::sqrt((1.0 - v * v) / v);
    double mid = 1.0 / v - 3.0 * v;
    VolumeResult r = integrateOverLine(
        [&](double x) {
            double x2 = x * x;
            double x4 = x2 * x2;
            return lead * std::sqrt(1.0 + 6.0 * v * x2 + x4) / (1.0 + mid * x2 + x4);
        },
        absTol);
    return r.volume;
}

double lowerBoundLen(double v) {
    if (!(v > 0.0 && v <= 1.0 / 3.0 + 1e-15))
        throw ValidationError("the residue lower bound is only valid on (0, 1/3]");
    double lead = std::sqrt((1.0 - v * v) / v);
    double inner = 3.0 * v * v * v + 6.0 * v * v - 5.0 * v +
                   8.0 * std::sqrt(v * (1.0 + 3.0 * v) / (1.0 - v));
    return 2.0 * kPi * lead * inner / (4.0 * (1.0 + v) * (1.0 + v));
}

Eigen::MatrixXd mixingEndpointMatrix() {
    Eigen::MatrixXd M1(3, 3);
    double offDiag = (std::sqrt(2.0) + std::sqrt(6.0)) / 3.0;
    M1 << 1.0, 0.0, offDiag, 0.0, 1.0 / 3.0, 0.0, offDiag, 0.0, 5.0 / 3.0;
    return M1;
}

std::vector<std::pair<double, double>> mixingCurve(const std::vector<double> &cGrid) {
    Eigen::MatrixXd I = Eigen::MatrixXd::Identity(3, 3);
    Eigen::MatrixXd M1 = mixingEndpointMatrix();
    std::vector<std::pair<double, double>> out;
    out.reserve(cGrid.size());
    for (double c : cGrid) {
        if (c < 0.0 || c > 1.0) throw ValidationError("mixing parameter must lie in [0,1]");
        Eigen::MatrixXd M = (1.0 - c) * I + c * M1;
        out.emplace_back(c, volumeFourier(M).volume);
    }
    return out;
}

} // namespace tubedesign

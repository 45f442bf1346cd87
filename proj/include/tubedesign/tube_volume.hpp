#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "tubedesign/moment_cone.hpp"

namespace tubedesign {

// Length of the two-branch normalized-basis trajectory on the unit sphere.
struct VolumeResult {
    double volume = 0.0;
    double quadratureError = 0.0;
    long nodes = 0;
};

// Tube-volume criterion 2 * integral of sqrt(det2)/quadratic-form over the
// real line, with Sigma = M^{-1}.  The improper integral is mapped to
// (-1/2,1/2) by x = tan(pi t) before adaptive quadrature.  n = 3 dispatches
// to the explicit quartic integrand; the generic determinant path stays
// available as an oracle.
VolumeResult volumePolynomial(const HankelMatrix &M, double absTol = 1e-9);
VolumeResult volumePolynomialGeneric(const HankelMatrix &M, double absTol = 1e-9);

// Same criterion for the trigonometric basis, integrating over (-1/2,1/2].
VolumeResult volumeFourier(const Eigen::MatrixXd &M, double absTol = 1e-9);

// Generic integrand sqrt((f'Sf)(g'Sg)-(f'Sg)^2)/(f'Sf) at one point, with
// S = M^{-1} supplied directly.
double integrandGeneric(const Eigen::MatrixXd &Sigma, const Eigen::VectorXd &f,
                        const Eigen::VectorXd &g);

// n = 3 closed-form integrand sqrt(h1(x))/h0(x) built from the explicit
// quartic coefficient formulas in the moments.
double integrandN3(const HankelMatrix &M, double x);

// len(v) = volume of the orbit representative M_v, 0 < v < 1.
double lenOfV(double v, double absTol = 1e-9);

// Closed-form residue evaluation of the lower bound, valid on (0, 1/3].
double lowerBoundLen(double v);

// Volumes of the mixing family M(c) = (1-c) I + c M1 between the two
// three-point fourier designs; a witness that the criterion is not convex.
Eigen::MatrixXd mixingEndpointMatrix();
std::vector<std::pair<double, double>> mixingCurve(const std::vector<double> &cGrid);

} // namespace tubedesign

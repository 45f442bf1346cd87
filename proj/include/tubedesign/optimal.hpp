#pragma once

#include <Eigen/Dense>

#include "tubedesign/mobius.hpp"
#include "tubedesign/moment_cone.hpp"

namespace tubedesign {

// Result of reducing a cone point onto its orbit representative M_v:
// actOnMatrix(repMatrix(transform), input) = scale * M_v, v in (0, 1/3].
struct OrbitPoint {
    double v = 0.0;
    MobiusParams transform;
    double scale = 1.0;
    double residual = 0.0; // max entrywise deviation from scale * M_v
};

// Equally spaced n-point design shifted by theta; its information matrix is
// the identity for any theta in (-1/(2n), 1/(2n)).
Design dOptimalFourier(int n, double theta);

// D-optimal n-point design for the weighted polynomial model with variance
// sigmaP^2(.; varParams), parameterized by a rotation (s,t), s^2+t^2=1.
Design dOptimalPolynomial(int n, const MobiusParams &varParams, double s, double t);

// Moments of the scaled D-optimal information matrix (top-left entry 1):
// m_k = Gamma((k+1)/2) Gamma(n-(k+1)/2) / (sqrt(pi) Gamma(n-1/2)) for even k.
HankelMatrix scaledDOptimalMoments(int n);

// The involution v -> (1-v)/(1+3v); fixed point 1/3.
double vDual(double v);

// Reduce a 3x3 cone point to the orbit representative family M_v through the
// canonical-representation, sextic-root and diagonal-rescaling steps.
OrbitPoint reduceToOrbitRep(const HankelMatrix &M);

// Three-point tube-volume optimal designs (n = 3); the returned design
// carries probability weights and achieves volume 4 pi sqrt(2/3) under the
// stated variance model.
Design tvOptimalPolynomial(const MobiusParams &varParams, const MobiusParams &freeParams);
Design tvOptimalFourier(double q, double r, double theta);

// Derivative of the moment vector of A_p M A_p^T in the four group-parameter
// directions at the identity (columns a,b,c,d); its rank is the orbit
// dimension counted together with the scaling direction.
Eigen::MatrixXd orbitTangent(const HankelMatrix &M, double step = 1e-6);
int orbitTangentRank(const HankelMatrix &M);

// Finite-difference Hessian of the volume in moment coordinates at the
// scaled D-optimal matrix, with orbit-tangent rank at the same point.
struct HessianReport {
    int n = 0;
    Eigen::VectorXd eigenvalues; // ascending
    int nullDim = 0;             // |lambda| < 1e-4 * lambda_max
    int orbitDim = 0;            // rank of the orbit tangent map
    double instability = 0.0;    // step-doubling disagreement, relative
};
HessianReport localHessianCheck(int n);

} // namespace tubedesign

#pragma once

#include <Eigen/Dense>

#include "tubedesign/bases.hpp"
#include "tubedesign/extended_real.hpp"
#include "tubedesign/moment_cone.hpp"

namespace tubedesign {

// Fractional-linear action on the projective line, with the conventions
// inf -> a/c and -d/c -> inf.
ExtendedReal mobiusApply(const MobiusParams &p, const ExtendedReal &x);

// Group product: compose(p2, p1) acts as p2 after p1 (2x2 matrix product).
MobiusParams mobiusCompose(const MobiusParams &p2, const MobiusParams &p1);
MobiusParams mobiusInverse(const MobiusParams &p);

// Projective equality: proportional parameter quadruples.
bool mobiusEquivalent(const MobiusParams &p, const MobiusParams &q, double tol = 1e-10);

// The n x n representation A(a,b,c,d) defined by
// f_P((ax+b)/(cx+d)) = lambda(x) A f_P(x), lambda(x) = (cx+d)^{-(n-1)},
// with entries given by the binomial double sum.
Eigen::MatrixXd repMatrix(int n, const MobiusParams &p);

// The invariant factor lambda(x; a,b,c,d) = (cx+d)^{-(n-1)}.
double lambdaFactor(int n, const MobiusParams &p, double x);

// Affine-times-rotation factorization: the map equals
// phi(.; q, r, 0, 1) composed with phi(.; s, -t, t, s), s^2+t^2 = 1,
// and the matrix satisfies A = k(n) A(q,r,0,1) A(s,-t,t,s).
struct MobiusDecomposition {
    double q = 1.0, r = 0.0; // affine part x -> qx + r
    double s = 1.0, t = 0.0; // rotation part (s,-t,t,s)
    int branch = 1;          // sign of ad - bc
    double scaleBase = 1.0;  // c^2 + d^2

    double k(int n) const { return std::pow(scaleBase, (n - 1) / 2.0); }
};
MobiusDecomposition mobiusDecompose(const MobiusParams &p);
MobiusParams recompose(const MobiusDecomposition &d);

// Congruence action A M A^T on the moment cone, re-read as a moment vector.
// Fails if the numerical result breaks Hankel symmetry beyond 1e-8 relative.
HankelMatrix actOnMatrix(const Eigen::MatrixXd &A, const HankelMatrix &M);
HankelMatrix actOnMatrix(const MobiusParams &p, const HankelMatrix &M);

// Pushforward of a weighted polynomial design: atoms move by phi, weights
// are kept, and the variance parameters are conjugated so that the new
// information matrix equals A M_old A^T.
struct TransformedDesign {
    Design design;
    MobiusParams variance;
};
TransformedDesign actOnDesign(const MobiusParams &p, const Design &design,
                              const MobiusParams &oldVariance);

} // namespace tubedesign

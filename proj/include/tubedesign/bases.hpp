#pragma once

#include <Eigen/Dense>

#include "tubedesign/extended_real.hpp"

namespace tubedesign {

// Parameters (a,b,c,d) of the fractional-linear map x -> (ax+b)/(cx+d),
// ad - bc != 0.  Stored un-normalized; equality is projective.
struct MobiusParams {
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

    double det() const { return a * d - b * c; }
    // Degeneracy test, relative to the parameter scale.
    bool valid() const;
};

enum class ModelKind { Fourier, WeightedPolynomial };

// Regression family: trigonometric with n orthonormal components on the
// circle (-1/2,1/2], or degree-(n-1) polynomial on the real line with
// variance function sigmaP^2(x; variance) = Q(x)^{n-1}.
struct Model {
    ModelKind kind = ModelKind::Fourier;
    int n = 2;
    MobiusParams variance; // used only for WeightedPolynomial

    static Model fourier(int n);
    static Model weightedPolynomial(int n, const MobiusParams &variance);
};

// Basis vector and its pointwise derivative.
struct BasisEval {
    Eigen::VectorXd f;
    Eigen::VectorXd g;
};

// Trigonometric basis: n = 2m+1 gives (1, sqrt2 sin 2pi t, sqrt2 cos 2pi t,
// ..., sqrt2 cos 2pi m t); n = 2m gives the half-integer frequency pairs
// (sqrt2 cos pi t, sqrt2 sin pi t, ..., sqrt2 cos (n-1)pi t, sqrt2 sin (n-1)pi t).
BasisEval evalFourier(int n, double t);

// (1, x, ..., x^{n-1}) and its derivative.
BasisEval evalPolynomial(int n, double x);

// Polynomial basis limit at the point at infinity, (0,...,0,1).
Eigen::VectorXd polynomialBasisAtInfinity(int n);

// Variance function {(b^2+d^2) + 2(ab+cd)x + (a^2+c^2)x^2}^{n-1}.
// Strictly positive on the whole line for nondegenerate params.
double varianceP(int n, const MobiusParams &params, double x);

// Leading behaviour of varianceP: sigmaP^2(x)/x^{2(n-1)} -> (a^2+c^2)^{n-1}.
// This is the variance weight attached to an atom at infinity.
double variancePLeading(int n, const MobiusParams &params);

// Ratio sigmaP^2(x; num)/sigmaP^2(x; den), well defined also at infinity.
double variancePRatio(int n, const MobiusParams &num, const MobiusParams &den,
                      const ExtendedReal &x);

// The n x n bridge matrix with f_F(t) = B f_P(tan pi t) (1+x^2)^{-(n-1)/2}.
// Built from exact integer multiple-angle coefficient tables.
Eigen::MatrixXd bridgeMatrixB(int n);

// (B^T B)^{-1} in closed form: Gamma((i+j-1)/2) Gamma(n-(i+j-1)/2) / (pi Gamma(n))
// for even i+j, zero otherwise.
Eigen::MatrixXd gramBInverse(int n);

// x = tan(pi t) on (-1/2,1/2], with t = 1/2 mapped to the point at infinity.
ExtendedReal tanMap(double t);
// Inverse map back into (-1/2,1/2].
double tanMapInverse(const ExtendedReal &x);

} // namespace tubedesign

#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "tubedesign/bases.hpp"
#include "tubedesign/extended_real.hpp"

namespace tubedesign {

// Moment vector (m_0,...,m_{2n-2}) viewed as the n x n Hankel matrix
// (m_{i+j-2}).  Membership in the moment cone means positive definiteness.
struct HankelMatrix {
    int n = 0;
    Eigen::VectorXd moments; // length 2n-1

    HankelMatrix() = default;
    HankelMatrix(int n_, Eigen::VectorXd m);

    Eigen::MatrixXd toMatrix() const;
    // Averages anti-diagonals of a (numerically) Hankel matrix back into a
    // moment vector; maxDeviation reports the largest Hankel-symmetry breach.
    static HankelMatrix fromMatrix(const Eigen::MatrixXd &M, double *maxDeviation = nullptr);
};

// The one-parameter orbit representatives ((1,0,v),(0,v,0),(v,0,1)).
HankelMatrix representativeMv(double v);

enum class Domain { FourierCircle, RealLine };

struct Atom {
    ExtendedReal x;
    double w = 0.0;
};

// Finitely supported nonnegative design measure.  A probability design
// additionally has unit total mass; that is checked only where needed.
struct Design {
    Domain domain = Domain::RealLine;
    std::vector<Atom> atoms;

    double totalWeight() const;
    void validate() const; // positive weights, distinct in-domain atoms
};

// Unique representation of a cone point as n-1 finite atoms plus a mass at
// the point at infinity.
struct CanonicalRep {
    std::vector<std::pair<double, double>> finiteAtoms; // (x_i, w_i), x_i increasing
    double infinityWeight = 0.0;

    HankelMatrix reconstruct(int n) const;
};

// Information matrix of a design: sum of f(x_i) f(x_i)^T w_i / sigma^2(x_i).
// The polynomial form is Hankel by construction; atoms at infinity contribute
// w * f_P(inf) f_P(inf)^T weighted by the leading coefficient of sigmaP^2.
HankelMatrix infoMatrixPolynomial(const Model &model, const Design &design);
Eigen::MatrixXd infoMatrixFourier(const Model &model, const Design &design);

struct InfoMatrixResult {
    HankelMatrix hankel;    // polynomial models
    Eigen::MatrixXd dense;  // fourier models
    bool inCone = false;
};
InfoMatrixResult infoMatrix(const Model &model, const Design &design);

// Positive definiteness via Cholesky with pivot tolerance 1e-12 * trace.
bool isInCone(const HankelMatrix &M);
bool isPositiveDefinite(const Eigen::MatrixXd &M);

// Prony-type recovery of the canonical representation: the finite atoms are
// the roots of the monic degree-(n-1) polynomial solving the Hankel system
// on (m_0,...,m_{2n-3}); weights solve the Vandermonde system; the leftover
// top moment is the mass at infinity.  Throws representation-failure on
// boundary-of-cone inputs (non-real/repeated roots, nonpositive weights).
CanonicalRep canonicalRep(const HankelMatrix &M);

// New weights q_i = k p_i sigma2^2(x_i)/sigma1^2(x_i) with k normalizing the
// total mass to 1; the two designs then carry proportional information.
using VarianceFn = std::function<double(const ExtendedReal &)>;
Design rescaleWeights(const Design &design, const VarianceFn &sigma1Sq, const VarianceFn &sigma2Sq);

} // namespace tubedesign

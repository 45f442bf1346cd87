#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "tubedesign/moment_cone.hpp"

namespace tubedesign {

// Band-width request: confidence level, connected-component count of the
// +-psi trajectory, and basis dimension.
struct BandSpec {
    double alpha = 0.05;
    int chi = 2;
    int n = 3;
};

struct ThresholdResult {
    double c = 0.0;
    bool feasible = true; // false when even c = 0 cannot reach level alpha
};

// Tube approximation threshold: (vol/2pi) P(chi^2_2 > c^2) = alpha solved in
// closed form as c = sqrt(2 log(vol/(2 pi alpha))).
ThresholdResult tubeThreshold(double volume, double alpha);

// Conservative bound (vol/2pi) e^{-c^2/2} + chi P(chi^2_1 > c^2) and the
// threshold solving bound = alpha by monotone bisection on (0, 50].
double naimanBound(double volume, int chi, double c);
ThresholdResult naimanThreshold(double volume, int chi, double alpha);

// Finite-sphere (uniform direction) variant with beta tails, valid for
// 0 < c < 1; returns 0 for c >= 1.
double naimanBoundUniformDirection(double volume, int chi, int n, double c);

// Regularized incomplete beta I_x(a,b) (continued-fraction evaluation).
double regularizedIncompleteBeta(double a, double b, double x);

struct SimulationResult {
    std::vector<double> alphas;
    std::vector<double> quantiles; // upper-alpha empirical quantiles
    long reps = 0;
    std::uint64_t seed = 0;
};

// Normalized whitened trajectory psi(t) = M^{-1/2} f_P(tan pi t) (normalized)
// of a 3x3 cone point, precomputed on a 2048-point grid, with the band
// statistic max_t |xi . psi(t)| located by grid scan plus golden-section
// refinement around the best cell.
class BandTrajectory {
public:
    static constexpr int kGridSize = 2048;

    explicit BandTrajectory(const HankelMatrix &M);
    // psi at time t; periodic in t, t = 1/2 is the point at infinity.
    Eigen::Vector3d direction(double t) const;
    double maximize(const Eigen::Vector3d &xi) const;

private:
    Eigen::Matrix3d whitener_;
    Eigen::Matrix<double, 3, Eigen::Dynamic> psi_;
    std::vector<double> times_;
};

// Empirical upper quantiles of max_x |xi^T psi(x)|, xi ~ N(0, I_3), where
// psi is the normalized whitened basis trajectory of the 3x3 cone point M.
// The maximum is located on a 2048-point grid in t = atan(x)/pi and refined
// by golden-section search.  Replications are split into fixed-size chunks
// with per-chunk derived seeds, so results are bit-identical for a given
// (seed, reps) regardless of the number of worker threads.
SimulationResult simulateQuantiles(const HankelMatrix &M, const std::vector<double> &alphas,
                                   long reps, std::uint64_t seed, int threads = 0);

struct TableOneRow {
    double v = 0.0;
    double volume = 0.0;
    double w10 = 0.0, w05 = 0.0; // empirical upper quantiles
    double c10 = 0.0, c05 = 0.0; // tube-approximation thresholds
};

// The six three-point designs D(v) with x = 1/sqrt(v), p = (1+v)/2 under the
// canonical quartic variance: volumes, simulated quantiles and theoretical
// thresholds.  All rows share the same random draws (common random numbers).
std::vector<TableOneRow> tableOne(long reps, std::uint64_t seed, int threads = 0);

// The design D(v) itself and its information matrix M_v / (2(1+v)).
Design tableOneDesign(double v);
HankelMatrix tableOneInfoMatrix(double v);

} // namespace tubedesign

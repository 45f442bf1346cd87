#include "tubedesign/bands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <random>
#include <thread>

#include "tubedesign/errors.hpp"
#include "tubedesign/tube_volume.hpp"

namespace tubedesign {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

// P(chi^2_1 > c^2) = 2 (1 - Phi(c)) through the complementary error function.
double chi1Tail(double c) { return std::erfc(c / std::sqrt(2.0)); }

double betaContinuedFraction(double a, double b, double x) {
    const int maxIter = 300;
    const double tiny = 1e-300;
    double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0, d = 1.0 - qab * x / qap;
    if (std::abs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= maxIter; ++m) {
        int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-15) return h;
    }
    throw NumericalError("accuracy-failure", "incomplete beta continued fraction did not converge");
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

int resolveThreads(int requested) {
    if (requested > 0) return requested;
    if (const char *env = std::getenv("TUBEDESIGN_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

template <class Fn>
double goldenSectionMax(const Fn &g, double lo, double hi, double tol) {
    const double invPhi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - invPhi * (b - a);
    double x2 = a + invPhi * (b - a);
    double f1 = g(x1), f2 = g(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invPhi * (b - a);
            f2 = g(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invPhi * (b - a);
            f1 = g(x1);
        }
    }
    return std::max(f1, f2);
}

} // namespace

BandTrajectory::BandTrajectory(const HankelMatrix &M) {
    if (M.n != 3) throw ValidationError("the simulator covers n = 3");
    if (!isInCone(M)) throw ValidationError("moment matrix is not in the cone");
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(M.toMatrix());
    double floorVal = 1e-14 * es.eigenvalues().maxCoeff();
    Eigen::Vector3d inv;
    for (int i = 0; i < 3; ++i) inv(i) = 1.0 / std::sqrt(std::max(es.eigenvalues()(i), floorVal));
    whitener_ = es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();

    psi_.resize(3, kGridSize);
    times_.resize(kGridSize);
    for (int j = 0; j < kGridSize; ++j) {
        double t = -0.5 + (j + 1) / static_cast<double>(kGridSize);
        times_[j] = t;
        psi_.col(j) = direction(t);
    }
}

Eigen::Vector3d BandTrajectory::direction(double t) const {
    Eigen::Vector3d f;
    // tan is periodic, so t outside the base interval (from wrapped
    // refinement brackets) evaluates the same trajectory point.
    double shifted = t - std::round(t);
    if (std::abs(std::abs(shifted) - 0.5) < 1e-15) {
        f << 0.0, 0.0, 1.0;
    } else {
        double x = std::tan(kPi * shifted);
        f << 1.0, x, x * x;
    }
    Eigen::Vector3d u = whitener_ * f;
    return u / u.norm();
}

double BandTrajectory::maximize(const Eigen::Vector3d &xi) const {
    int best = 0;
    double bestVal = -1.0;
    for (int j = 0; j < kGridSize; ++j) {
        double v = std::abs(xi.dot(psi_.col(j)));
        if (v > bestVal) {
            bestVal = v;
            best = j;
        }
    }
    double step = 1.0 / kGridSize;
    double center = times_[best];
    auto g = [&](double t) { return std::abs(xi.dot(direction(t))); };
    double refined = goldenSectionMax(g, center - step, center + step, 1e-10);
    return std::max(bestVal, refined);
}

ThresholdResult tubeThreshold(double volume, double alpha) {
    if (!(volume > 0.0)) throw ValidationError("volume must be positive");
    if (!(alpha > 0.0 && alpha < 1.0)) throw ValidationError("alpha must lie in (0,1)");
    double ratio = volume / (kTwoPi * alpha);
    if (ratio <= 1.0) return {0.0, false};
    return {std::sqrt(2.0 * std::log(ratio)), true};
}

double naimanBound(double volume, int chi, double c) {
    if (!(volume > 0.0)) throw ValidationError("volume must be positive");
    if (chi < 0) throw ValidationError("component count cannot be negative");
    return volume / kTwoPi * std::exp(-0.5 * c * c) + chi * chi1Tail(c);
}

ThresholdResult naimanThreshold(double volume, int chi, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw ValidationError("alpha must lie in (0,1)");
    double lo = 0.0, hi = 50.0;
    if (naimanBound(volume, chi, lo) <= alpha) return {0.0, false};
    if (naimanBound(volume, chi, hi) >= alpha)
        throw NumericalError("accuracy-failure", "threshold exceeds the bisection range (0, 50]");
    for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
        double mid = 0.5 * (lo + hi);
        if (naimanBound(volume, chi, mid) > alpha)
            lo = mid;
        else
            hi = mid;
    }
    return {0.5 * (lo + hi), true};
}

double regularizedIncompleteBeta(double a, double b, double x) {
    if (!(a > 0.0 && b > 0.0)) throw ValidationError("beta parameters must be positive");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    double logFront = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
                      b * std::log1p(-x);
    double front = std::exp(logFront);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * betaContinuedFraction(a, b, x) / a;
    return 1.0 - std::exp(std::lgamma(a + b) - std::lgamma(b) - std::lgamma(a) + b * std::log1p(-x) +
                          a * std::log(x)) *
                     betaContinuedFraction(b, a, 1.0 - x) / b;
}

double naimanBoundUniformDirection(double volume, int chi, int n, double c) {
    if (!(volume > 0.0)) throw ValidationError("volume must be positive");
    if (n < 3) throw ValidationError("the uniform-direction bound needs n >= 3");
    if (!(c > 0.0)) throw ValidationError("c must be positive");
    if (c >= 1.0) return 0.0;
    double c2 = c * c;
    double tube = 1.0 - regularizedIncompleteBeta(1.0, (n - 2) / 2.0, c2);
    double boundary = 1.0 - regularizedIncompleteBeta(0.5, (n - 1) / 2.0, c2);
    return volume / kTwoPi * tube + chi * boundary;
}

SimulationResult simulateQuantiles(const HankelMatrix &M, const std::vector<double> &alphas,
                                   long reps, std::uint64_t seed, int threads) {
    if (reps < 1000) throw ValidationError("at least 1000 replications are required");
    for (double a : alphas)
        if (!(a > 0.0 && a < 1.0)) throw ValidationError("alpha must lie in (0,1)");
    TrajectoryGrid grid(M);

    const long chunkSize = 8192;
    const long numChunks = (reps + chunkSize - 1) / chunkSize;
    std::vector<double> maxima(static_cast<size_t>(reps));

    int workers = std::min<long>(resolveThreads(threads), numChunks);
    std::atomic<long> nextChunk{0};
    auto worker = [&]() {
        for (;;) {
            long chunk = nextChunk.fetch_add(1);
            if (chunk >= numChunks) return;
            std::mt19937_64 rng(splitmix64(seed ^ (0x5851F42D4C957F2DULL * (chunk + 1))));
            std::normal_distribution<double> normal(0.0, 1.0);
            long begin = chunk * chunkSize;
            long end = std::min(begin + chunkSize, reps);
            for (long i = begin; i < end; ++i) {
                Eigen::Vector3d xi(normal(rng), normal(rng), normal(rng));
                maxima[static_cast<size_t>(i)] = maximizeStatistic(grid, xi);
            }
        }
    };
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
        for (auto &th : pool) th.join();
    }

    std::sort(maxima.begin(), maxima.end());
    SimulationResult out;
    out.alphas = alphas;
    out.reps = reps;
    out.seed = seed;
    for (double a : alphas) {
        long k = static_cast<long>(std::ceil((1.0 - a) * reps));
        k = std::clamp(k, 1L, reps);
        out.quantiles.push_back(maxima[static_cast<size_t>(k - 1)]);
    }
    return out;
}

Design tableOneDesign(double v) {
    if (!(v > 0.0 && v < 1.0)) throw ValidationError("v must lie in (0,1)");
    double x = 1.0 / std::sqrt(v);
    double p = (1.0 + v) / 2.0;
    Design d;
    d.domain = Domain::RealLine;
    d.atoms = {{ExtendedReal(-x), p / 2.0}, {ExtendedReal(0.0), 1.0 - p}, {ExtendedReal(x), p / 2.0}};
    return d;
}

HankelMatrix tableOneInfoMatrix(double v) {
    Model model = Model::weightedPolynomial(3, MobiusParams{1.0, 0.0, 0.0, 1.0});
    return infoMatrixPolynomial(model, tableOneDesign(v));
}

std::vector<TableOneRow> tableOne(long reps, std::uint64_t seed, int threads) {
    const double vs[6] = {1.0 / 12, 1.0 / 9, 1.0 / 6, 1.0 / 4, 1.0 / 3, 1.0 / 2};
    std::vector<TableOneRow> rows;
    for (double v : vs) {
        HankelMatrix M = tableOneInfoMatrix(v);
        TableOneRow row;
        row.v = v;
        row.volume = volumePolynomial(M).volume;
        SimulationResult sim = simulateQuantiles(M, {0.10, 0.05}, reps, seed, threads);
        row.w10 = sim.quantiles[0];
        row.w05 = sim.quantiles[1];
        row.c10 = tubeThreshold(row.volume, 0.10).c;
        row.c05 = tubeThreshold(row.volume, 0.05).c;
        rows.push_back(row);
    }
    return rows;
}

} // namespace tubedesign

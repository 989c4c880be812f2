#pragma once

#include <cstdint>
#include <vector>

#include "youngwave/diagnostics.hpp"
#include "youngwave/grid.hpp"
#include "youngwave/noise.hpp"
#include "youngwave/young.hpp"

namespace youngwave {

struct DirectConfig {
    int n0 = 2;  // coarsest dyadic level
    int n1 = 8;  // finest dyadic level
    double rho = 0.75;
    bool skipZeroCheck = false;  // test-only: accept Z with Z(0,.) != 0

    void validate(const HolderExponents& ex) const;
};

/// J_n(s,t) = sum over the dyadic cells of [0,s] x [t-s,t+s] with lower-left
/// corner (u_i, v_j) = (s i/2^n, t-s+s j/2^n) of G(u_i,v_j) times the cell
/// increment of X, where G = 1/2 on |t-v| < s-u and 0 elsewhere. X is given on
/// a (time, space) grid containing every node of level n1. levels[k] holds
/// J_{n0+k}; the gaps |J_{n+1} - J_n| are the telescoping terms.
YoungResult direct_linear(const GridField& X, double s, double t, const HolderExponents& ex, const DirectConfig& cfg);

/// Same sums with the weight G(u_i,v_j) Z(u_i,v_j); Z lives on X's grid,
/// must vanish at time 0 and requires gamma + gammaHat > 5/3.
YoungResult direct_weighted(const GridField& X, const GridField& Z, double s, double t, const HolderExponents& ex,
                            const DirectConfig& cfg);

/// Regression of the telescoping gaps of a direct result against the mesh.
RegressionFit gap_decay(const YoungResult& r);

struct DirectField {
    GridField field;
    SquareFilter valid;  // probe boxes whose four corners have the whole cone inside the window
};

/// Direct integral at every node of X's grid, using the native cells of X
/// (time mesh must equal space mesh). Apexes whose cone leaves the spatial
/// window hold 0 and are excluded by `valid`.
DirectField direct_field(const GridField& X);

struct ComparisonParams {
    NoiseSpec noise{0.85, 0.3, 0.5, 42};
    int n = 64;      // rotated intervals per axis
    int ratio = 4;   // fine original cells per rotated cell along the time axis
    int levels = 4;  // dyadic probe scales for the exponent estimates
    int seeds = 30;
    int jobs = 1;
};

struct SeedComparison {
    std::uint64_t seed;
    RegressionFit rotated;
    RegressionFit direct;
    RegressionFit gapDecay;
};

struct ComparisonReport {
    double rotatedExponentSum = 0.0;
    double directExponentSum = 0.0;
    double gap = 0.0;
    double gapDecaySlope = 0.0;
    std::vector<SeedComparison> perSeed;
};

/// For each seed, one original-frame sample feeds both pipelines: the rotated
/// field (and its snapped cone integral) and the direct field. Seeds are
/// noise.seed, noise.seed + 1, ...
SeedComparison compare_one(const ComparisonParams& p, std::uint64_t seed);
ComparisonReport regularity_comparison(const ComparisonParams& p);

}  // namespace youngwave

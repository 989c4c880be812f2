#pragma once

#include <optional>
#include <vector>

#include "youngwave/diagnostics.hpp"
#include "youngwave/grid.hpp"
#include "youngwave/sigma.hpp"

namespace youngwave {

enum class Scheme { Marching, Picard };

struct SolverConfig {
    double T = 0.5;  // the rotated domain is [-T/sqrt2, T/sqrt2]^2
    double kappa = 0.55;
    double kappaHat = 0.55;
    int n = 48;  // intervals per axis
    Scheme scheme = Scheme::Marching;
    double picardTol = 1e-8;
    int picardMaxIter = 30;
    int maxLag = 0;  // semi-norm lag cap; 0 means min(n, 32)
    bool fallback = true;

    void validate() const;
    Rectangle domain() const;
    int lag() const;
};

struct OriginalValue {
    double time, space, value;
};

struct SolveResult {
    GridField yRotated;
    std::vector<OriginalValue> yOriginal;  // active rotated nodes in (time, space) coordinates
    int iterations = 0;                    // Picard applications; 0 for marching
    double residual = 0.0;                 // sup + total semi-norm of the last Picard update
    bool converged = true;
    bool fallbackUsed = false;
    int bands = 1;  // anti-diagonal bands solved one after another
    HolderSeminorms seminorms;
};

/// Explicit scheme: y(i,j) = sum over whole cells (a,b) with a < i, b < j,
/// a + b >= n of sigma(y(a,b)) times the cell increment of x, evaluated in
/// increasing i + j. Nodes on and below the initial line i + j = n are 0.
/// Every scheme sums a cone the same way: each row a over ascending b, then
/// the row totals over ascending a.
SolveResult solve_marching(const GridField& x, const SigmaFn& sig, const SolverConfig& cfg);

/// Fixed-point iteration of the same discrete map from y = 0. If it does not
/// converge within picardMaxIter, the anti-diagonals are split into 2, 4, ...
/// bands solved in order (when cfg.fallback is set).
SolveResult solve_picard(const GridField& x, const SigmaFn& sig, const SolverConfig& cfg);

SolveResult solve(const GridField& x, const SigmaFn& sig, const SolverConfig& cfg);

/// One application of the discrete solution map to y.
GridField apply_solution_map(const GridField& x, const SigmaFn& sig, const GridField& y);

/// Sum of the cell increments of x over whole cells of the cone of node (i,j),
/// in the solvers' order (row totals over ascending b, added over ascending a).
double snapped_cone_sum(const GridField& x, int i, int j);

/// Solution at original-frame points (time, space): linear interpolation on
/// the two triangles of each rotated cell split along its anti-diagonal.
std::vector<double> pull_back(const GridField& yRot, const std::vector<std::pair<double, double>>& queries);

struct SelfConvergence {
    RegressionFit fit;
    std::vector<double> meshes;     // coarser mesh of each compared pair
    std::vector<double> distances;  // sup distance on the coarser grid
};

/// Solves on xFine coarsened by 2^(levels-1), ..., 2, 1 and regresses the sup
/// distance between successive solutions on the coarser mesh.
SelfConvergence self_convergence_study(const GridField& xFine, const SigmaFn& sig, const SolverConfig& cfg,
                                       int levels);

}  // namespace youngwave

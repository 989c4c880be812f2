#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "youngwave/grid.hpp"

namespace youngwave {

enum class FitStatus {
    Ok,
    Exact,       // every magnitude is zero: no error left to regress
    Degenerate,  // the probed quantity vanishes identically
};

std::string to_string(FitStatus s);

/// Ordinary least squares of log(magnitude) on log(scale).
struct RegressionFit {
    FitStatus status = FitStatus::Ok;
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    int pointsUsed = 0;
    int zerosDropped = 0;
    std::vector<double> scales;
    std::vector<double> magnitudes;
};

/// Zero magnitudes are dropped and counted. Fewer than three nonzero points
/// throw StatisticsError, except when every magnitude is zero, which returns
/// the Exact sentinel.
RegressionFit scaling_regression(const std::vector<std::pair<double, double>>& pairs);

/// Decides whether a dyadic probe square (given as a node box) enters the estimate.
using SquareFilter = std::function<bool(const IndexBox&)>;

/// Keeps squares whose lower-left node satisfies i + j >= n, i.e. squares
/// lying on or above the anti-diagonal of an n x n grid.
SquareFilter above_antidiagonal(int n);

/// Root-mean-square rectangular increment over tiled dyadic squares of side
/// 2^k cells, k = 0..levels-1, regressed against the side length. The slope
/// estimates the sum of the two rectangular exponents.
RegressionFit rect_exponent_sum_estimate(const GridField& f, int levels, const SquareFilter& accept = {});

/// Axis-by-axis variant: rectangles 2^k x 1 cells (first) and 1 x 2^k cells
/// (second). Slopes estimate gamma and gammaHat separately; noisier than the
/// square probe.
std::pair<RegressionFit, RegressionFit> anisotropic_exponent_estimate(const GridField& f, int levels,
                                                                      const SquareFilter& accept = {});

}  // namespace youngwave

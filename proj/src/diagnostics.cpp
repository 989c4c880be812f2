#include "youngwave/diagnostics.hpp"

#include <cmath>

#include "youngwave/errors.hpp"

namespace youngwave {

std::string to_string(FitStatus s) {
    switch (s) {
        case FitStatus::Ok: return "ok";
        case FitStatus::Exact: return "exact";
        case FitStatus::Degenerate: return "degenerate";
    }
    return "unknown";
}

RegressionFit scaling_regression(const std::vector<std::pair<double, double>>& pairs) {
    RegressionFit fit;
    std::vector<double> lx, ly;
    for (const auto& [scale, mag] : pairs) {
        if (!(scale > 0.0) || !std::isfinite(scale)) throw StatisticsError("regression scales must be positive");
        if (!(mag >= 0.0) || !std::isfinite(mag)) throw StatisticsError("regression magnitudes must be >= 0");
        if (mag == 0.0) {
            ++fit.zerosDropped;
            continue;
        }
        fit.scales.push_back(scale);
        fit.magnitudes.push_back(mag);
        lx.push_back(std::log(scale));
        ly.push_back(std::log(mag));
    }
    if (lx.empty() && !pairs.empty()) {
        fit.status = FitStatus::Exact;
        return fit;
    }
    if (lx.size() < 3) throw StatisticsError("fewer than 3 nonzero points for a scaling regression");

    const double n = static_cast<double>(lx.size());
    double mx = 0, my = 0;
    for (std::size_t k = 0; k < lx.size(); ++k) {
        mx += lx[k];
        my += ly[k];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t k = 0; k < lx.size(); ++k) {
        sxx += (lx[k] - mx) * (lx[k] - mx);
        sxy += (lx[k] - mx) * (ly[k] - my);
        syy += (ly[k] - my) * (ly[k] - my);
    }
    if (sxx <= 0.0) throw StatisticsError("all regression scales coincide");
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r2 = syy > 0.0 ? std::min(1.0, sxy * sxy / (sxx * syy)) : 1.0;
    fit.pointsUsed = static_cast<int>(lx.size());
    return fit;
}

SquareFilter above_antidiagonal(int n) {
    return [n](const IndexBox& b) { return b.i1 + b.j1 >= n; };
}

namespace {

// RMS of rectangular increments over the tiling of f by boxes of spanS x spanT cells.
std::pair<double, int> tiled_rms(const GridField& f, int spanS, int spanT, const SquareFilter& accept) {
    double sum = 0.0;
    int count = 0;
    for (int i = 0; i + spanS <= f.ns(); i += spanS)
        for (int j = 0; j + spanT <= f.nt(); j += spanT) {
            const IndexBox b{i, i + spanS, j, j + spanT};
            if (accept && !accept(b)) continue;
            const double d = f.increment(b);
            sum += d * d;
            ++count;
        }
    return {count > 0 ? std::sqrt(sum / count) : 0.0, count};
}

RegressionFit probe_regression(const GridField& f, int levels, const SquareFilter& accept, int axis) {
    if (levels < 4) throw StatisticsError("at least 4 dyadic scales are required");
    std::vector<std::pair<double, double>> pairs;
    bool anyNonzero = false;
    for (int k = 0; k < levels; ++k) {
        const int side = 1 << k;
        const int spanS = axis == 1 ? 1 : side;
        const int spanT = axis == 0 ? 1 : side;
        if (spanS > f.ns() || spanT > f.nt()) throw StatisticsError("dyadic scale exceeds the grid");
        const auto [rms, count] = tiled_rms(f, spanS, spanT, accept);
        if (count == 0) throw StatisticsError("no probe rectangle accepted at some scale");
        anyNonzero = anyNonzero || rms > 0.0;
        const double scale = axis == 1 ? side * f.dt() : side * f.ds();
        pairs.emplace_back(scale, rms);
    }
    if (!anyNonzero) {
        RegressionFit fit;
        fit.status = FitStatus::Degenerate;
        return fit;
    }
    return scaling_regression(pairs);
}

}  // namespace

RegressionFit rect_exponent_sum_estimate(const GridField& f, int levels, const SquareFilter& accept) {
    return probe_regression(f, levels, accept, -1);
}

std::pair<RegressionFit, RegressionFit> anisotropic_exponent_estimate(const GridField& f, int levels,
                                                                      const SquareFilter& accept) {
    return {probe_regression(f, levels, accept, 0), probe_regression(f, levels, accept, 1)};
}

}  // namespace youngwave

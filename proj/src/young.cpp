#include "youngwave/young.hpp"

#include <algorithm>
#include <cmath>

#include "youngwave/errors.hpp"

namespace youngwave {

namespace {

// Neumaier's variant of Kahan summation.
class CompensatedSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

constexpr long kCompensationThreshold = 1L << 16;

void check_levels(int levels, int spanA, int spanB) {
    if (levels < 2) throw ParameterError("at least 2 refinement levels are required");
    if (levels > 30) throw ParameterError("too many refinement levels");
    const int coarsest = 1 << (levels - 1);
    if (spanA % coarsest != 0 || spanB % coarsest != 0)
        throw AlignmentError("grid spans are not divisible by 2^(levels-1)");
}

double path_sum(const SampledPath& y, const SampledPath& g, int stride) {
    const int n = y.intervals();
    double s = 0.0;
    CompensatedSum cs;
    const bool comp = n / stride > kCompensationThreshold;
    for (int k = 0; k < n; k += stride) {
        const double term = y.values[k] * (g.values[k + stride] - g.values[k]);
        if (comp)
            cs.add(term);
        else
            s += term;
    }
    return comp ? cs.value() : s;
}

}  // namespace

YoungResult young_integral_1d(const SampledPath& y, const SampledPath& g, int levels) {
    if (y.values.size() < 2 || y.values.size() != g.values.size() || y.a != g.a || y.b != g.b)
        throw AlignmentError("1-d Young integral needs both paths on the same grid");
    if (!(y.a < y.b)) throw GeometryError("degenerate integration interval");
    const int n = y.intervals();
    check_levels(levels, n, n);
    const double h = (y.b - y.a) / n;

    YoungResult r;
    for (int l = levels - 1; l >= 0; --l) {
        const int stride = 1 << l;
        r.levels.push_back({stride * h, path_sum(y, g, stride)});
    }
    r.value = r.levels.back().sum;
    r.cauchyGap = std::abs(r.levels.back().sum - r.levels[r.levels.size() - 2].sum);
    return r;
}

void require_young_exponents(const HolderExponents& ex, const HolderExponents& ey) {
    ex.validate();
    ey.validate();
    if (!(ex.gamma + ey.gamma > 1.0) || !(ex.gammaHat + ey.gammaHat > 1.0))
        throw ContractError("rectangular exponents of integrand and integrator must sum above 1 in each variable");
    if (!(ey.alpha > 1.0 - ex.gamma) || !(ey.beta > 1.0 - ex.gammaHat))
        throw ContractError("directional exponents of the integrand are too small for the integrator");
}

double riemann_sum(const GridField& y, const GridField& x, const IndexBox& box, int stride) {
    if (!y.sameGrid(x)) throw AlignmentError("integrand and integrator live on different grids");
    if (box.i1 < 0 || box.j1 < 0 || box.i2 > x.ns() || box.j2 > x.nt() || box.i1 >= box.i2 || box.j1 >= box.j2)
        throw GeometryError("integration box outside the grid");
    if (box.spanS() % stride != 0 || box.spanT() % stride != 0)
        throw AlignmentError("integration box is not a union of stride cells");

    const long cells = static_cast<long>(box.spanS() / stride) * (box.spanT() / stride);
    const bool comp = cells > kCompensationThreshold;
    CompensatedSum cs;
    double s = 0.0;
    for (int i = box.i1; i < box.i2; i += stride)
        for (int j = box.j1; j < box.j2; j += stride) {
            const double dx = x(i + stride, j + stride) - x(i + stride, j) - x(i, j + stride) + x(i, j);
            const double term = y(i, j) * dx;
            if (comp)
                cs.add(term);
            else
                s += term;
        }
    return comp ? cs.value() : s;
}

double young_bound(double constant, const HolderSeminorms& xn, const HolderSeminorms& yn, const HolderExponents& ex,
                   const HolderExponents& ey, double ds, double dt) {
    const double base = std::pow(ds, ex.gamma) * std::pow(dt, ex.gammaHat);
    const double smooth = std::pow(ds, ey.gamma) * std::pow(dt, ey.gammaHat) + std::pow(ds, ey.alpha) +
                          std::pow(dt, ey.beta);
    return constant * xn.rect * base * (yn.sup + yn.total * smooth);
}

YoungResult young_integral_2d(const GridField& y, const GridField& x, const HolderExponents& ex,
                              const HolderExponents& ey, const YoungOptions& opts,
                              const std::optional<Rectangle>& region) {
    require_young_exponents(ex, ey);
    if (!y.sameGrid(x)) throw AlignmentError("integrand and integrator live on different grids");
    const IndexBox box = region ? x.box(*region) : IndexBox{0, x.ns(), 0, x.nt()};
    if (box.i1 >= box.i2 || box.j1 >= box.j2) throw GeometryError("empty integration region");
    check_levels(opts.levels, box.spanS(), box.spanT());

    YoungResult r;
    for (int l = opts.levels - 1; l >= 0; --l) {
        const int stride = 1 << l;
        r.levels.push_back({stride * std::max(x.ds(), x.dt()), riemann_sum(y, x, box, stride)});
    }
    r.value = r.levels.back().sum;
    r.cauchyGap = std::abs(r.levels.back().sum - r.levels[r.levels.size() - 2].sum);

    if (opts.certificate) {
        HolderSeminorms xn, yn;
        if (opts.xNorms && opts.yNorms) {
            xn = *opts.xNorms;
            yn = *opts.yNorms;
        } else {
            const bool whole = box.i1 == 0 && box.j1 == 0 && box.i2 == x.ns() && box.j2 == x.nt();
            const GridField xs = whole ? x : x.restrict(box);
            const GridField ys = whole ? y : y.restrict(box);
            xn = opts.xNorms ? *opts.xNorms : holder_seminorms_multiscale(xs, ex);
            yn = opts.yNorms ? *opts.yNorms : holder_seminorms_multiscale(ys, ey);
        }
        const double spanS = box.spanS() * x.ds(), spanT = box.spanT() * x.dt();
        r.boundCertificate = young_bound(opts.certificateConstant, xn, yn, ex, ey, spanS, spanT);
        const double anchor = y(box.i1, box.j1) * x.increment(box);
        for (const auto& lv : r.levels)
            if (std::abs(lv.sum - anchor) > r.boundCertificate * (1.0 + 1e-12) + 1e-300)
                r.certificateViolated = true;
    }
    return r;
}

DecompositionTerms decomposition_identity_check(const GridField& y, const GridField& x, const HolderExponents& ex,
                                                const HolderExponents& ey, const std::optional<Rectangle>& region) {
    require_young_exponents(ex, ey);
    if (!y.sameGrid(x)) throw AlignmentError("integrand and integrator live on different grids");
    const IndexBox b = region ? x.box(*region) : IndexBox{0, x.ns(), 0, x.nt()};

    // Centered integrand y(u,v) - y(s1,v) - y(u,t1) + y(s1,t1), zero on the two lower edges.
    std::vector<double> chi(y.values().size(), 0.0);
    for (int i = b.i1; i <= b.i2; ++i)
        for (int j = b.j1; j <= b.j2; ++j)
            chi[y.index(i, j)] = y(i, j) - y(b.i1, j) - y(i, b.j1) + y(b.i1, b.j1);
    const GridField chiField(y.domain(), y.ns(), y.nt(), std::move(chi));

    SampledPath yLeft{x.t(b.j1), x.t(b.j2), {}}, xStrip{x.t(b.j1), x.t(b.j2), {}};
    for (int j = b.j1; j <= b.j2; ++j) {
        yLeft.values.push_back(y(b.i1, j));
        xStrip.values.push_back(x(b.i2, j) - x(b.i1, j));
    }
    SampledPath yBottom{x.s(b.i1), x.s(b.i2), {}}, xBand{x.s(b.i1), x.s(b.i2), {}};
    for (int i = b.i1; i <= b.i2; ++i) {
        yBottom.values.push_back(y(i, b.j1));
        xBand.values.push_back(x(i, b.j2) - x(i, b.j1));
    }

    // Boundary pieces at the native mesh; young_integral_1d needs even spans,
    // odd spans fall back to the plain sums.
    const int levels = (b.spanS() % 2 == 0 && b.spanT() % 2 == 0) ? 2 : 0;
    DecompositionTerms d;
    if (levels == 2) {
        d.boundaryT = young_integral_1d(yLeft, xStrip, 2).value;
        d.boundaryS = young_integral_1d(yBottom, xBand, 2).value;
    } else {
        d.boundaryT = 0.0;
        for (std::size_t k = 0; k + 1 < yLeft.values.size(); ++k)
            d.boundaryT += yLeft.values[k] * (xStrip.values[k + 1] - xStrip.values[k]);
        d.boundaryS = 0.0;
        for (std::size_t k = 0; k + 1 < yBottom.values.size(); ++k)
            d.boundaryS += yBottom.values[k] * (xBand.values[k + 1] - xBand.values[k]);
    }
    d.integral = riemann_sum(y, x, b);
    d.centered = riemann_sum(chiField, x, b);
    d.corner = y(b.i1, b.j1) * x.increment(b);
    d.residual = std::abs(d.integral - (d.centered + d.boundaryT + d.boundaryS - d.corner));
    return d;
}

RegressionFit convergence_order(const GridField& y, const GridField& x, const HolderExponents& ex,
                                const HolderExponents& ey, int levels, const std::optional<Rectangle>& region) {
    YoungOptions opts;
    opts.levels = levels;
    opts.certificate = false;
    const YoungResult r = young_integral_2d(y, x, ex, ey, opts, region);
    std::vector<std::pair<double, double>> gaps;
    int nonzero = 0;
    for (std::size_t k = 0; k + 1 < r.levels.size(); ++k) {
        const double g = std::abs(r.levels[k].sum - r.levels[k + 1].sum);
        if (g > 0.0) ++nonzero;
        gaps.emplace_back(r.levels[k].mesh, g);
    }
    if (nonzero == 0) {
        RegressionFit fit;
        fit.status = FitStatus::Exact;
        return fit;
    }
    if (nonzero < 4) throw StatisticsError("fewer than 4 usable Cauchy gaps");
    return scaling_regression(gaps);
}

double calibrate_certificate_constant(const std::vector<std::pair<GridField, GridField>>& pairs,
                                      const HolderExponents& ex, const HolderExponents& ey, int levels) {
    double worst = 0.0;
    for (const auto& [y, x] : pairs) {
        YoungOptions opts;
        opts.levels = levels;
        opts.certificateConstant = 1.0;
        const YoungResult r = young_integral_2d(y, x, ex, ey, opts);
        if (r.boundCertificate <= 0.0) continue;
        const double anchor = y(0, 0) * x.increment({0, x.ns(), 0, x.nt()});
        for (const auto& lv : r.levels) worst = std::max(worst, std::abs(lv.sum - anchor) / r.boundCertificate);
    }
    return worst;
}

}  // namespace youngwave

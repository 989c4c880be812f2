#include "youngwave/solver.hpp"

#include <algorithm>
#include <cmath>

#include "youngwave/errors.hpp"

namespace youngwave {

void SolverConfig::validate() const {
    if (!(T > 0.0) || !std::isfinite(T)) throw ParameterError("T must be positive");
    if (n < 2) throw ParameterError("solver grid needs at least 2 intervals");
    if (!(kappa > 0.0 && kappa < 1.0) || !(kappaHat > 0.0 && kappaHat < 1.0))
        throw ParameterError("solution exponents must lie in (0, 1)");
    if (!(picardTol > 0.0)) throw ParameterError("Picard tolerance must be positive");
    if (picardMaxIter < 1) throw ParameterError("Picard needs at least one iteration");
    if (maxLag < 0) throw ParameterError("semi-norm lag must be >= 0");
}

Rectangle SolverConfig::domain() const {
    const double c = T / std::sqrt(2.0);
    return {-c, c, -c, c};
}

int SolverConfig::lag() const { return maxLag > 0 ? std::min(maxLag, n) : std::min(n, 32); }

namespace {

void check_noise_grid(const GridField& x, const SolverConfig& cfg) {
    cfg.validate();
    const Rectangle d = cfg.domain();
    const double tol = 1e-9 * d.width();
    if (x.ns() != cfg.n || x.nt() != cfg.n || std::abs(x.domain().s1() - d.s1()) > tol ||
        std::abs(x.domain().s2() - d.s2()) > tol || std::abs(x.domain().t1() - d.t1()) > tol ||
        std::abs(x.domain().t2() - d.t2()) > tol)
        throw AlignmentError("noise grid does not match the solver domain");
}

inline double cell_dx(const GridField& x, int a, int b) {
    return x(a + 1, b + 1) - x(a + 1, b) - x(a, b + 1) + x(a, b);
}

void fill_original(SolveResult& r, const SolverConfig& cfg) {
    const int n = cfg.n;
    const double d = cfg.T / n;
    r.yOriginal.clear();
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j)
            if (i + j >= n) r.yOriginal.push_back({(i + j - n) * d, (j - i) * d, r.yRotated(i, j)});
}

HolderExponents solution_exponents(const SolverConfig& cfg) {
    return HolderExponents::rectangular(cfg.kappa, cfg.kappaHat);
}

double update_size(const GridField& diff, const SolverConfig& cfg) {
    return diff.supNorm() + holder_seminorms(diff, solution_exponents(cfg), cfg.lag()).total;
}

// Cone sums in the fixed order shared by every scheme: R(a,j) accumulates
// row a over b = 0..j-1, then y(i,j) accumulates R(0,j), ..., R(i-1,j).
// Nodes (i,j) with lo < i + j <= hi take the new value; all others keep y's.
GridField map_on_band(const GridField& x, const SigmaFn& sig, const GridField& y, int lo, int hi) {
    const int n = x.ns();
    auto at = [n](int i, int j) { return static_cast<std::size_t>(i) * (n + 1) + j; };
    std::vector<double> R(static_cast<std::size_t>(n + 1) * (n + 1), 0.0);
    for (int a = 0; a < n; ++a)
        for (int j = 1; j <= n; ++j) {
            const int b = j - 1;
            R[at(a, j)] = R[at(a, j - 1)] + (a + b >= n ? sig(y(a, b)) * cell_dx(x, a, b) : 0.0);
        }
    std::vector<double> out(y.values().begin(), y.values().end());
    for (int j = 0; j <= n; ++j) {
        double acc = 0.0;
        for (int i = 0; i <= n; ++i) {
            if (i + j > lo && i + j <= hi) out[at(i, j)] = acc;
            if (i < n) acc += R[at(i, j)];
        }
    }
    return GridField(x.domain(), n, n, std::move(out));
}

}  // namespace

GridField apply_solution_map(const GridField& x, const SigmaFn& sig, const GridField& y) {
    if (!x.sameGrid(y) || x.ns() != x.nt()) throw AlignmentError("solution map needs a square grid shared with x");
    return map_on_band(x, sig, y, -1, 2 * x.ns());
}

double snapped_cone_sum(const GridField& x, int i, int j) {
    const int n = x.ns();
    if (i < 0 || j < 0 || i > n || j > x.nt()) throw GeometryError("node outside the grid");
    double s = 0.0;
    for (int a = 0; a < i; ++a) {
        double row = 0.0;
        for (int b = 0; b < j; ++b) row += a + b >= n ? cell_dx(x, a, b) : 0.0;
        s += row;
    }
    return s;
}

SolveResult solve_marching(const GridField& x, const SigmaFn& sig, const SolverConfig& cfg) {
    check_noise_grid(x, cfg);
    const int n = cfg.n;
    std::vector<double> y(static_cast<std::size_t>(n + 1) * (n + 1), 0.0);
    std::vector<double> R(y.size(), 0.0);  // R(a,j): row a of the cone sum over b < j
    auto at = [n](int i, int j) { return static_cast<std::size_t>(i) * (n + 1) + j; };
    // Anti-diagonal order: every term on the right refers to a node with a
    // smaller i + j, so each value is final when it is read.
    for (int d = n + 1; d <= 2 * n; ++d)
        for (int i = d - n; i <= n; ++i) {
            const int j = d - i;
            const int a = i - 1, b = j - 1;
            R[at(a, j)] = R[at(a, b)] + (a + b >= n ? sig(y[at(a, b)]) * cell_dx(x, a, b) : 0.0);
            y[at(i, j)] = y[at(a, j)] + R[at(a, j)];
        }
    SolveResult r{GridField(cfg.domain(), n, n, std::move(y)), {}, 0, 0.0, true, false, 1, {}};
    r.seminorms = holder_seminorms(r.yRotated, solution_exponents(cfg), cfg.lag());
    fill_original(r, cfg);
    return r;
}

namespace {

struct BandOutcome {
    GridField y;
    int iterations;
    double residual;
    bool converged;
};

BandOutcome iterate_band(const GridField& x, const SigmaFn& sig, GridField y, int lo, int hi,
                         const SolverConfig& cfg) {
    double res = 0.0;
    for (int k = 1; k <= cfg.picardMaxIter; ++k) {
        GridField next = map_on_band(x, sig, y, lo, hi);
        res = update_size(next - y, cfg);
        y = std::move(next);
        if (res < cfg.picardTol) return {std::move(y), k, res, true};
    }
    return {std::move(y), cfg.picardMaxIter, res, false};
}

}  // namespace

SolveResult solve_picard(const GridField& x, const SigmaFn& sig, const SolverConfig& cfg) {
    check_noise_grid(x, cfg);
    const int n = cfg.n;
    const GridField zero = GridField::zeros(cfg.domain(), n, n);

    BandOutcome whole = iterate_band(x, sig, zero, -1, 2 * n, cfg);
    SolveResult r{whole.y, {}, whole.iterations, whole.residual, whole.converged, false, 1, {}};

    if (!whole.converged && cfg.fallback) {
        for (int bands = 2; bands <= 2 * n; bands *= 2) {
            const int count = std::min(bands, n);
            GridField y = zero;
            int iters = 0;
            double res = 0.0;
            bool ok = true;
            for (int k = 0; k < count && ok; ++k) {
                const int lo = n + (k * n) / count, hi = n + ((k + 1) * n) / count;
                BandOutcome b = iterate_band(x, sig, std::move(y), lo, hi, cfg);
                y = std::move(b.y);
                iters += b.iterations;
                res = std::max(res, b.residual);
                ok = b.converged;
            }
            if (ok) {
                r = {std::move(y), {}, iters, res, true, true, count, {}};
                break;
            }
            if (count == n) break;
        }
    }
    r.seminorms = holder_seminorms(r.yRotated, solution_exponents(cfg), cfg.lag());
    fill_original(r, cfg);
    return r;
}

SolveResult solve(const GridField& x, const SigmaFn& sig, const SolverConfig& cfg) {
    return cfg.scheme == Scheme::Marching ? solve_marching(x, sig, cfg) : solve_picard(x, sig, cfg);
}

std::vector<double> pull_back(const GridField& yRot, const std::vector<std::pair<double, double>>& queries) {
    const Rectangle& d = yRot.domain();
    const double tol = 1e-12 * std::max(1.0, d.width());
    std::vector<double> out;
    out.reserve(queries.size());
    for (const auto& [time, space] : queries) {
        if (time < -tol) throw GeometryError("query before the initial time");
        const auto [s, t] = unrotate_coords(time, space);
        if (s < d.s1() - tol || s > d.s2() + tol || t < d.t1() - tol || t > d.t2() + tol)
            throw GeometryError("query outside the solution domain");
        const double ps = (s - d.s1()) / yRot.ds(), pt = (t - d.t1()) / yRot.dt();
        const int a = std::clamp(static_cast<int>(std::floor(ps)), 0, yRot.ns() - 1);
        const int b = std::clamp(static_cast<int>(std::floor(pt)), 0, yRot.nt() - 1);
        const double p = std::clamp(ps - a, 0.0, 1.0), q = std::clamp(pt - b, 0.0, 1.0);
        const double f00 = yRot(a, b), f10 = yRot(a + 1, b), f01 = yRot(a, b + 1), f11 = yRot(a + 1, b + 1);
        if (p + q <= 1.0)
            out.push_back(f00 + p * (f10 - f00) + q * (f01 - f00));
        else
            out.push_back(f11 + (1.0 - p) * (f01 - f11) + (1.0 - q) * (f10 - f11));
    }
    return out;
}

SelfConvergence self_convergence_study(const GridField& xFine, const SigmaFn& sig, const SolverConfig& cfg,
                                       int levels) {
    if (levels < 3) throw StatisticsError("self-convergence needs at least 3 levels");
    const int top = 1 << (levels - 1);
    if (xFine.ns() % top != 0 || xFine.ns() != xFine.nt())
        throw AlignmentError("fine grid not divisible by the coarsest stride");

    std::vector<GridField> sols;
    for (int l = 0; l < levels; ++l) {
        const int stride = top >> l;
        SolverConfig c = cfg;
        c.n = xFine.ns() / stride;
        sols.push_back(solve(xFine.coarsen(stride), sig, c).yRotated);
    }
    SelfConvergence out;
    std::vector<std::pair<double, double>> pairs;
    for (int l = 0; l + 1 < levels; ++l) {
        const double dist = (sols[l + 1].coarsen(2) - sols[l]).supNorm();
        out.meshes.push_back(sols[l].ds());
        out.distances.push_back(dist);
        pairs.emplace_back(sols[l].ds(), dist);
    }
    out.fit = scaling_regression(pairs);
    return out;
}

}  // namespace youngwave

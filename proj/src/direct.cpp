#include "youngwave/direct.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "youngwave/errors.hpp"
#include "youngwave/solver.hpp"

namespace youngwave {

void DirectConfig::validate(const HolderExponents& ex) const {
    ex.validate();
    if (n0 < 0 || n1 <= n0 || n1 > 24) throw ParameterError("dyadic levels must satisfy 0 <= n0 < n1 <= 24");
    if (!(ex.gamma + ex.gammaHat > 1.0)) throw ContractError("gamma + gammaHat <= 1: telescoping series not summable");
    if (!(rho > (1.0 - ex.gamma) / ex.gammaHat && rho < 1.0))
        throw ParameterError("rho must lie in ((1 - gamma)/gammaHat, 1)");
}

namespace {

template <class Weight>
YoungResult dyadic_sums(const GridField& X, double s, double t, const DirectConfig& cfg, Weight&& weight) {
    if (!(s > 0.0)) throw GeometryError("direct integral needs a positive time");
    const Rectangle& d = X.domain();
    const double tol = 1e-9 * std::max(1.0, s);
    if (d.s1() > tol || d.s2() < s - tol || d.t1() > t - s + tol || d.t2() < t + s - tol)
        throw GeometryError("cone rectangle leaves the field domain");

    const int top = 1 << cfg.n1;
    std::vector<int> I(top + 1), J(2 * top + 1);
    for (int i = 0; i <= top; ++i) I[i] = X.nodeS(s * i / top);
    for (int j = 0; j <= 2 * top; ++j) J[j] = X.nodeT(t - s + s * j / top);

    YoungResult r;
    for (int n = cfg.n0; n <= cfg.n1; ++n) {
        const int N = 1 << n, stride = top >> n;
        double sum = 0.0;
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < 2 * N; ++j) {
                if (std::abs(N - j) >= N - i) continue;
                const int a = I[i * stride], b = I[(i + 1) * stride];
                const int c = J[j * stride], e = J[(j + 1) * stride];
                sum += 0.5 * weight(a, c) * (X(b, e) - X(b, c) - X(a, e) + X(a, c));
            }
        r.levels.push_back({s / N, sum});
    }
    r.value = r.levels.back().sum;
    r.cauchyGap = std::abs(r.levels.back().sum - r.levels[r.levels.size() - 2].sum);
    return r;
}

}  // namespace

YoungResult direct_linear(const GridField& X, double s, double t, const HolderExponents& ex,
                          const DirectConfig& cfg) {
    cfg.validate(ex);
    return dyadic_sums(X, s, t, cfg, [](int, int) { return 1.0; });
}

YoungResult direct_weighted(const GridField& X, const GridField& Z, double s, double t, const HolderExponents& ex,
                            const DirectConfig& cfg) {
    cfg.validate(ex);
    if (!(ex.gamma + ex.gammaHat > 5.0 / 3.0)) throw ContractError("weighted direct integral needs gamma + gammaHat > 5/3");
    if (!Z.sameGrid(X)) throw AlignmentError("weight and noise live on different grids");
    for (double v : Z.values())
        if (!std::isfinite(v)) throw ContractError("weight must be bounded");
    if (!cfg.skipZeroCheck) {
        const int i0 = Z.nodeS(0.0);
        for (int j = 0; j <= Z.nt(); ++j)
            if (Z(i0, j) != 0.0) throw ContractError("weight must vanish at time 0");
    }
    return dyadic_sums(X, s, t, cfg, [&Z](int a, int c) { return Z(a, c); });
}

RegressionFit gap_decay(const YoungResult& r) {
    std::vector<std::pair<double, double>> pairs;
    for (std::size_t k = 0; k + 1 < r.levels.size(); ++k)
        pairs.emplace_back(r.levels[k].mesh, std::abs(r.levels[k + 1].sum - r.levels[k].sum));
    return scaling_regression(pairs);
}

DirectField direct_field(const GridField& X) {
    if (std::abs(X.ds() - X.dt()) > 1e-9 * X.ds()) throw AlignmentError("direct field needs equal time and space mesh");
    if (std::abs(X.domain().s1()) > 1e-12 * X.domain().width()) throw GeometryError("time window must start at 0");
    const int nk = X.ns(), nl = X.nt();
    auto w = [&X](int i, int j) { return X(i + 1, j + 1) - X(i + 1, j) - X(i, j + 1) + X(i, j); };
    auto valid = [nl](int K, int L) { return K == 0 || (L >= K - 1 && L <= nl - K); };

    // F(K,L) = sum of cell increments over {i < K, |L - j| < K - i}; the two
    // cones one step back overlap in the cone two steps back and miss only
    // the cells (K-1,L) and (K-2,L).
    std::vector<double> F(static_cast<std::size_t>(nk + 1) * (nl + 1), 0.0);
    auto at = [nl](int K, int L) { return static_cast<std::size_t>(K) * (nl + 1) + L; };
    for (int K = 1; K <= nk; ++K)
        for (int L = 0; L <= nl; ++L) {
            if (!valid(K, L)) continue;
            double v = w(K - 1, L);
            if (K >= 2) v += F[at(K - 1, L - 1)] + F[at(K - 1, L + 1)] - F[at(K - 2, L)] + w(K - 2, L);
            F[at(K, L)] = v;
        }
    for (double& v : F) v *= 0.5;
    SquareFilter filter = [valid](const IndexBox& b) {
        return valid(b.i1, b.j1) && valid(b.i1, b.j2) && valid(b.i2, b.j1) && valid(b.i2, b.j2);
    };
    return {GridField(X.domain(), nk, nl, std::move(F)), std::move(filter)};
}

SeedComparison compare_one(const ComparisonParams& p, std::uint64_t seed) {
    NoiseSpec spec = p.noise;
    spec.seed = seed;
    const double T = spec.T;
    const int nf = p.n * p.ratio;
    const GridField X = sample_original_field(spec, Rectangle(0.0, T, -T, T), nf, 2 * nf).field;

    SeedComparison out{seed, {}, {}, {}};
    const GridField x = rotated_from_original(X, T, p.n);
    SolverConfig cfg;
    cfg.T = T;
    cfg.n = p.n;
    const GridField rotatedIntegral = solve_marching(x, sigma_constant(1.0), cfg).yRotated;
    out.rotated = rect_exponent_sum_estimate(rotatedIntegral, p.levels, above_antidiagonal(p.n));

    const DirectField df = direct_field(X);
    out.direct = rect_exponent_sum_estimate(df.field, p.levels, df.valid);

    const double g = spec.H + (2.0 - spec.nu) / 2.0;
    DirectConfig dc;
    dc.n1 = static_cast<int>(std::lround(std::log2(nf)));
    dc.n0 = std::max(1, dc.n1 - 6);
    dc.rho = 0.5 * (1.0 + (1.0 - g / 2.0) / (g / 2.0));
    out.gapDecay = gap_decay(direct_linear(X, T, 0.0, HolderExponents::uniform(g / 2.0), dc));
    return out;
}

ComparisonReport regularity_comparison(const ComparisonParams& p) {
    p.noise.validate();
    if (p.seeds < 1) throw ParameterError("at least one seed is required");
    if (p.n < 2 || p.ratio < 1 || (p.n * p.ratio & (p.n * p.ratio - 1)) != 0)
        throw ParameterError("n * ratio must be a power of two");
    ComparisonReport rep;
    rep.perSeed.resize(p.seeds);
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int k = next++; k < p.seeds; k = next++) rep.perSeed[k] = compare_one(p, p.noise.seed + k);
    };
    const int jobs = std::max(1, std::min(p.jobs, p.seeds));
    std::vector<std::thread> pool;
    for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    for (const auto& sc : rep.perSeed) {
        rep.rotatedExponentSum += sc.rotated.slope / p.seeds;
        rep.directExponentSum += sc.direct.slope / p.seeds;
        rep.gapDecaySlope += sc.gapDecay.slope / p.seeds;
    }
    rep.gap = rep.rotatedExponentSum - rep.directExponentSum;
    return rep;
}

}  // namespace youngwave

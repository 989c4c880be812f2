#include "youngwave/sigma.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "youngwave/errors.hpp"
#include "youngwave/rng.hpp"

namespace youngwave {

namespace {

using Derivs = std::array<std::function<double(double)>, 4>;

// Sup-norms read off a fine sample of [-12, 12]; every catalog entry is
// periodic or settles to its asymptotes well inside that window.
std::array<double, 4> sampled_bounds(const Derivs& d) {
    std::array<double, 4> b{};
    constexpr int kSamples = 240001;
    for (int k = 0; k < kSamples; ++k) {
        const double u = -12.0 + 24.0 * k / (kSamples - 1);
        for (int m = 0; m < 4; ++m) b[m] = std::max(b[m], std::abs(d[m](u)));
    }
    return b;
}

}  // namespace

bool SigmaFn::bounded() const { return std::isfinite(derivativeBounds[0]); }

SigmaFn sigma_affine(double a, double b) {
    const double sup = a == 0.0 ? std::abs(b) : std::numeric_limits<double>::infinity();
    return {"affine", [a, b](double u) { return a * u + b; }, {sup, std::abs(a), 0.0, 0.0}};
}

SigmaFn sigma_sin() {
    return {"sin", [](double u) { return std::sin(u); }, {1.0, 1.0, 1.0, 1.0}};
}

SigmaFn sigma_tanh() {
    static const std::array<double, 4> bounds = sampled_bounds({
        [](double u) { return std::tanh(u); },
        [](double u) { const double c = 1.0 / std::cosh(u); return c * c; },
        [](double u) { const double c = 1.0 / std::cosh(u); return -2.0 * std::tanh(u) * c * c; },
        [](double u) {
            const double th = std::tanh(u), c2 = 1.0 / (std::cosh(u) * std::cosh(u));
            return c2 * (4.0 * th * th - 2.0 * c2);
        },
    });
    return {"tanh", [](double u) { return std::tanh(u); }, bounds};
}

SigmaFn sigma_bump() {
    static const std::array<double, 4> bounds = sampled_bounds({
        [](double u) { return std::exp(-u * u); },
        [](double u) { return -2.0 * u * std::exp(-u * u); },
        [](double u) { return (4.0 * u * u - 2.0) * std::exp(-u * u); },
        [](double u) { return (12.0 * u - 8.0 * u * u * u) * std::exp(-u * u); },
    });
    return {"bump", [](double u) { return std::exp(-u * u); }, bounds};
}

SigmaFn sigma_constant(double c) {
    return {"constant", [c](double) { return c; }, {std::abs(c), 0.0, 0.0, 0.0}};
}

SigmaFn sigma_by_name(const std::string& name, double a, double b) {
    if (name == "affine") return sigma_affine(a, b);
    if (name == "sin") return sigma_sin();
    if (name == "tanh") return sigma_tanh();
    if (name == "bump") return sigma_bump();
    if (name == "constant") return sigma_constant(a);
    throw ParameterError("unknown sigma '" + name + "'");
}

GridField compose(const SigmaFn& sig, const GridField& y) { return y.map(sig.f); }

namespace {

int resolve_lag(const GridField& y, int maxLag) { return maxLag > 0 ? maxLag : std::min(y.ns(), y.nt()); }

}  // namespace

InequalityCheck check_growth_inequality(const SigmaFn& sig, const GridField& y, const HolderExponents& e,
                                        int maxLag) {
    const int lag = resolve_lag(y, maxLag);
    const double ny = holder_seminorms(y, e, lag).total;
    InequalityCheck c;
    c.lhs = holder_seminorms(compose(sig, y), e, lag).total;
    c.rhs = ny * (1.0 + ny);
    c.degenerate = c.rhs == 0.0;
    return c;
}

InequalityCheck check_lipschitz_inequality(const SigmaFn& sig, const GridField& y1, const GridField& y2,
                                           const HolderExponents& e, int maxLag) {
    if (!y1.sameGrid(y2)) throw AlignmentError("Lipschitz check needs both fields on one grid");
    const int lag = resolve_lag(y1, maxLag);
    const GridField diff = y1 - y2;
    const double n1 = holder_seminorms(y1, e, lag).total;
    const double n2 = holder_seminorms(y2, e, lag).total;
    const double nd = holder_seminorms(diff, e, lag).total;
    InequalityCheck c;
    c.lhs = holder_seminorms(compose(sig, y1) - compose(sig, y2), e, lag).total;
    c.rhs = (diff.supNorm() + nd) * (1.0 + n1 + n2 + nd + (n1 + nd) * (n1 + nd));
    c.degenerate = c.rhs == 0.0;
    return c;
}

double fit_constant(const std::vector<InequalityCheck>& checks) {
    double c = 0.0;
    for (const auto& k : checks)
        if (!k.degenerate) c = std::max(c, k.ratio());
    return c;
}

GridField random_smooth_field(std::uint64_t seed, std::uint64_t index, int n, double ampLo, double ampHi) {
    if (!(ampLo > 0.0) || !(ampHi >= ampLo)) throw ParameterError("amplitude range must be positive");
    Rng rng(seed, index);
    const double amp = std::exp(rng.uniform(std::log(ampLo), std::log(ampHi)));
    struct Mode {
        double c, ks, kt, ps, pt;
    };
    std::vector<Mode> modes(4);
    for (auto& m : modes) m = {rng.normal(), rng.uniform(0.5, 4.0), rng.uniform(0.5, 4.0), rng.uniform(0.0, 6.3),
                               rng.uniform(0.0, 6.3)};
    const double offset = rng.normal();
    return GridField(Rectangle(0.0, 1.0, 0.0, 1.0), n, n, [&](double s, double t) {
        double v = offset;
        for (const auto& m : modes) v += m.c * std::sin(m.ks * s + m.ps) * std::cos(m.kt * t + m.pt);
        return amp * v;
    });
}

}  // namespace youngwave

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "youngwave/grid.hpp"

namespace youngwave {

/// Coefficient function of the equation together with sup-norms of the
/// function and its first three derivatives.
struct SigmaFn {
    std::string id;
    std::function<double(double)> f;
    std::array<double, 4> derivativeBounds{};  // sup |sigma|, |sigma'|, |sigma''|, |sigma'''|

    double operator()(double u) const { return f(u); }
    /// False for the affine family, whose sup-norm is infinite unless a = 0.
    bool bounded() const;
};

SigmaFn sigma_affine(double a, double b);
SigmaFn sigma_sin();
SigmaFn sigma_tanh();
SigmaFn sigma_bump();  // exp(-u^2)
SigmaFn sigma_constant(double c);

/// Catalog lookup: "affine" (a, b), "sin", "tanh", "bump", "constant" (c).
/// Throws ParameterError for unknown names.
SigmaFn sigma_by_name(const std::string& name, double a = 1.0, double b = 0.0);

GridField compose(const SigmaFn& sig, const GridField& y);

struct InequalityCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    bool degenerate = false;  // rhs vanishes: the check is vacuous

    double ratio() const { return degenerate ? 0.0 : lhs / rhs; }
};

/// lhs = total semi-norm of sigma(y); rhs = |y| (1 + |y|).
InequalityCheck check_growth_inequality(const SigmaFn& sig, const GridField& y, const HolderExponents& e,
                                        int maxLag = 0);

/// lhs = total semi-norm of sigma(y1) - sigma(y2);
/// rhs = (|y1-y2|_inf + |y1-y2|) (1 + |y1| + |y2| + |y1-y2| + (|y1| + |y1-y2|)^2).
InequalityCheck check_lipschitz_inequality(const SigmaFn& sig, const GridField& y1, const GridField& y2,
                                           const HolderExponents& e, int maxLag = 0);

/// Smallest constant C with lhs <= C rhs over the checks; degenerate entries are skipped.
double fit_constant(const std::vector<InequalityCheck>& checks);

/// Random smooth field on [0,1]^2 with n cells per axis: a sum of a few
/// products of sines and cosines with log-uniform overall amplitude in
/// [ampLo, ampHi]. Deterministic in (seed, index).
GridField random_smooth_field(std::uint64_t seed, std::uint64_t index, int n, double ampLo = 0.05,
                              double ampHi = 5.0);

}  // namespace youngwave

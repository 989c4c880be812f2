#pragma once

#include <optional>
#include <vector>

#include "youngwave/diagnostics.hpp"
#include "youngwave/grid.hpp"

namespace youngwave {

/// Samples of a one-parameter function at a + k (b-a)/n, k = 0..n.
struct SampledPath {
    double a = 0.0;
    double b = 1.0;
    std::vector<double> values;

    int intervals() const { return static_cast<int>(values.size()) - 1; }
};

struct RiemannLevel {
    double mesh;
    double sum;
};

struct YoungResult {
    double value = 0.0;                // finest-level Riemann sum
    std::vector<RiemannLevel> levels;  // coarsest first
    double cauchyGap = 0.0;            // |finest - next coarser|
    double boundCertificate = 0.0;     // 0 when no certificate was requested
    bool certificateViolated = false;
};

/// Multiplicative constant of the a-priori bound used by the certificate:
/// calibrate_certificate_constant gives 0.105 on the polynomial and
/// trigonometric pairs of the test suite (grids 64 and 128, exponents 0.6 and
/// 0.9, 4 levels); frozen with a factor 1.5 of slack.
inline constexpr double kCertificateConstant = 0.16;

struct YoungOptions {
    int levels = 4;
    bool certificate = true;
    double certificateConstant = kCertificateConstant;
    // Semi-norms entering the certificate; estimated on the integration
    // region when absent.
    std::optional<HolderSeminorms> xNorms;
    std::optional<HolderSeminorms> yNorms;
};

/// Left-point Riemann-Stieltjes sums  sum y(t_k) (g(t_{k+1}) - g(t_k))  on
/// nested dyadic partitions; the finest partition is the sample grid.
YoungResult young_integral_1d(const SampledPath& y, const SampledPath& g, int levels);

/// Checks the exponent conditions needed for the two-parameter integral of y
/// against x: gamma_x + rho_y > 1, gammaHat_x + rhoHat_y > 1,
/// alpha_y > 1 - gamma_x, beta_y > 1 - gammaHat_x. Throws ContractError.
void require_young_exponents(const HolderExponents& ex, const HolderExponents& ey);

/// Lower-left-corner Riemann sum of y against the cell increments of x over
/// the node box, on cells of `stride` x `stride` fine cells. Row-major
/// ascending order; compensated summation above 2^16 cells.
double riemann_sum(const GridField& y, const GridField& x, const IndexBox& box, int stride = 1);

/// Two-parameter integral of y against x over `region` (whole domain when
/// absent), evaluated on dyadic coarsenings of the common grid.
YoungResult young_integral_2d(const GridField& y, const GridField& x, const HolderExponents& ex,
                              const HolderExponents& ey, const YoungOptions& opts = {},
                              const std::optional<Rectangle>& region = std::nullopt);

/// A-priori bound on |integral| over a box of the given side lengths.
double young_bound(double constant, const HolderSeminorms& xNorms, const HolderSeminorms& yNorms,
                   const HolderExponents& ex, const HolderExponents& ey, double ds, double dt);

struct DecompositionTerms {
    double integral = 0.0;          // integral of y dx
    double centered = 0.0;          // integral of (y(u,v) - y(s1,v) - y(u,t1) + y(s1,t1)) dx
    double boundaryT = 0.0;         // integral over t of y(s1,.) d(x(s2,.) - x(s1,.))
    double boundaryS = 0.0;         // integral over s of y(.,t1) d(x(.,t2) - x(.,t1))
    double corner = 0.0;            // y(s1,t1) * increment of x over the region
    double residual = 0.0;          // |integral - (centered + boundaryT + boundaryS - corner)|
};

/// Evaluates both sides of the corner decomposition of the two-parameter
/// integral, each piece with this module's own integrals.
DecompositionTerms decomposition_identity_check(const GridField& y, const GridField& x, const HolderExponents& ex,
                                                const HolderExponents& ey,
                                                const std::optional<Rectangle>& region = std::nullopt);

/// Slope of log |S_k - S_{k+1}| against log mesh_k over the dyadic levels of
/// young_integral_2d. Needs at least 4 nonzero gaps; all-zero gaps give the
/// Exact sentinel.
RegressionFit convergence_order(const GridField& y, const GridField& x, const HolderExponents& ex,
                                const HolderExponents& ey, int levels,
                                const std::optional<Rectangle>& region = std::nullopt);

/// Largest ratio |S - y(s1,t1) dx| / bound(C = 1) over all levels of the
/// given pairs: the smallest constant for which no level violates the bound.
double calibrate_certificate_constant(const std::vector<std::pair<GridField, GridField>>& pairs,
                                      const HolderExponents& ex, const HolderExponents& ey, int levels);

}  // namespace youngwave

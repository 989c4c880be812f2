#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <vector>

#include "youngwave/grid.hpp"

namespace youngwave {

struct Interval {
    double a, b;
};

/// Fractional noise in time (Hurst index H) and Riesz noise in space (|x|^-nu).
struct NoiseSpec {
    double H = 0.75;
    double nu = 0.5;
    double T = 0.5;  // time horizon
    std::uint64_t seed = 0;

    double cH() const { return H * (2.0 * H - 1.0); }
    void validate() const;
};

/// c_H int_I1 int_I2 |u-v|^(2H-2) du dv in closed form.
double time_kernel(Interval i1, Interval i2, double H);
/// int_J1 int_J2 |x-y|^-nu dx dy in closed form.
double space_kernel(Interval j1, Interval j2, double nu);

struct CholeskyResult {
    Eigen::MatrixXd L;
    double jitter = 0.0;  // diagonal shift that was added, 0 when none was needed
};

/// Lower Cholesky factor of a symmetric PSD matrix. Adds diagonal jitter
/// starting at 1e-12 trace/n and doubling up to 1e-6 trace/n if the plain
/// factorization fails; throws NumericalError beyond that.
CholeskyResult robust_cholesky(const Eigen::MatrixXd& a);

struct OriginalSample {
    GridField field;
    double jitter = 0.0;
};

/// Exact sample of the noise on a (time, space) grid. The domain must start
/// at time 0 and contain space 0 as a node. Cell increments are drawn with
/// the product covariance time_kernel x space_kernel and summed into point
/// values with X = 0 on both axes; negative space uses the signed convention.
OriginalSample sample_original_field(const NoiseSpec& spec, const Rectangle& domain, int ns, int nt,
                                     std::uint64_t replicate = 0);

inline constexpr int kDefaultRotatedCap = 64;

/// Exact sampler of the rotated field x on the square [-c,c]^2, c = T/sqrt2,
/// with n intervals per axis. x(s,t) is the noise mass of the rotated cone
/// {u <= s, v <= t, u + v >= 0}; it vanishes on and below the initial line.
/// The covariance of the cell masses is assembled once (slab quadrature with
/// `slabs` sub-intervals per half cell in time, closed-form kernels otherwise)
/// and factored densely.
class RotatedSampler {
public:
    RotatedSampler(double H, double nu, double T, int n, int cap = kDefaultRotatedCap, int slabs = 4);

    GridField sample(std::uint64_t seed, std::uint64_t replicate = 0) const;
    /// Cell-mass atoms: full cells above the initial line and the upper
    /// halves of the cells it crosses.
    int atoms() const;
    double jitter() const;
    int n() const { return n_; }
    Rectangle domain() const;
    /// Assembled covariance between atoms k and l (testing hook).
    double atomCovariance(int k, int l) const;
    /// Cell (a,b) of atom k.
    std::pair<int, int> atomCell(int k) const;

    struct Factor;

private:
    double H_, nu_, T_;
    int n_;
    std::shared_ptr<const Factor> factor_;
};

GridField sample_rotated_field(const NoiseSpec& spec, int n, std::uint64_t replicate = 0,
                               int cap = kDefaultRotatedCap);

/// Rotated field on n intervals computed from a fine original-frame sample
/// covering [0,T] x [-T,T] whose mesh is T/(n*ratio) in both directions.
/// Fine cells cut by a diamond edge through their diagonal count one half.
GridField rotated_from_original(const GridField& X, double T, int n);

}  // namespace youngwave

#include "youngwave/noise.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

#include "youngwave/errors.hpp"
#include "youngwave/rng.hpp"

namespace youngwave {

void NoiseSpec::validate() const {
    if (!(H > 0.5 && H < 1.0)) throw ParameterError("H must lie in (1/2, 1)");
    if (!(nu > 0.0 && nu < 1.0)) throw ParameterError("nu must lie in (0, 1)");
    if (!(T > 0.0) || !std::isfinite(T)) throw ParameterError("T must be positive");
}

double time_kernel(Interval i1, Interval i2, double H) {
    if (!(H > 0.5 && H < 1.0)) throw ParameterError("H must lie in (1/2, 1)");
    const double p = 2.0 * H;
    auto g = [p](double z) { return std::pow(std::abs(z), p); };
    return 0.5 * (g(i1.b - i2.a) + g(i1.a - i2.b) - g(i1.a - i2.a) - g(i1.b - i2.b));
}

double space_kernel(Interval j1, Interval j2, double nu) {
    if (!(nu > 0.0 && nu < 1.0)) throw ParameterError("nu must lie in (0, 1)");
    const double q = 2.0 - nu, norm = (1.0 - nu) * (2.0 - nu);
    auto F = [q, norm](double z) { return std::pow(std::abs(z), q) / norm; };
    return F(j1.b - j2.a) + F(j1.a - j2.b) - F(j1.a - j2.a) - F(j1.b - j2.b);
}

CholeskyResult robust_cholesky(const Eigen::MatrixXd& a) {
    const Eigen::Index n = a.rows();
    if (n == 0) return {};
    Eigen::LLT<Eigen::MatrixXd> llt(a);
    if (llt.info() == Eigen::Success) return {llt.matrixL(), 0.0};
    const double scale = std::max(a.trace() / static_cast<double>(n), 1e-300);
    for (double j = 1e-12 * scale; j <= 1e-6 * scale * (1.0 + 1e-12); j *= 2.0) {
        Eigen::MatrixXd shifted = a;
        shifted.diagonal().array() += j;
        llt.compute(shifted);
        if (llt.info() == Eigen::Success) return {llt.matrixL(), j};
    }
    throw NumericalError("covariance not positive definite even with maximal jitter");
}

namespace {

Eigen::MatrixXd cell_kernel_matrix(int cells, double h, const std::function<double(Interval, Interval)>& k,
                                   double origin) {
    Eigen::MatrixXd m(cells, cells);
    for (int p = 0; p < cells; ++p)
        for (int q = 0; q <= p; ++q) {
            const double v = k({origin + p * h, origin + (p + 1) * h}, {origin + q * h, origin + (q + 1) * h});
            m(p, q) = v;
            m(q, p) = v;
        }
    return m;
}

}  // namespace

OriginalSample sample_original_field(const NoiseSpec& spec, const Rectangle& domain, int ns, int nt,
                                     std::uint64_t replicate) {
    spec.validate();
    if (ns < 1 || nt < 1) throw ParameterError("grid needs at least one cell per axis");
    if (std::abs(domain.s1()) > 1e-12 * domain.width()) throw GeometryError("time window must start at 0");
    const GridField probe = GridField::zeros(domain, ns, nt);
    int j0 = 0;
    try {
        j0 = probe.nodeT(0.0);
    } catch (const AlignmentError&) {
        throw GeometryError("space window must contain 0 as a grid node");
    }

    const double H = spec.H, nu = spec.nu;
    const CholeskyResult lt = robust_cholesky(cell_kernel_matrix(
        ns, probe.ds(), [H](Interval a, Interval b) { return time_kernel(a, b, H); }, 0.0));
    const CholeskyResult lx = robust_cholesky(cell_kernel_matrix(
        nt, probe.dt(), [nu](Interval a, Interval b) { return space_kernel(a, b, nu); }, domain.t1()));

    Rng rng(spec.seed, replicate);
    Eigen::MatrixXd z(ns, nt);
    for (int i = 0; i < ns; ++i)
        for (int j = 0; j < nt; ++j) z(i, j) = rng.normal();
    const Eigen::MatrixXd m = lt.L.triangularView<Eigen::Lower>() * z * lx.L.transpose().triangularView<Eigen::Upper>();

    std::vector<double> v(static_cast<std::size_t>(ns + 1) * (nt + 1), 0.0);
    auto at = [nt, &v](int i, int j) -> double& { return v[static_cast<std::size_t>(i) * (nt + 1) + j]; };
    for (int i = 1; i <= ns; ++i) {
        double row = 0.0;
        for (int j = j0 + 1; j <= nt; ++j) {
            row += m(i - 1, j - 1);
            at(i, j) = at(i - 1, j) + row;
        }
        row = 0.0;
        for (int j = j0 - 1; j >= 0; --j) {
            row -= m(i - 1, j);
            at(i, j) = at(i - 1, j) + row;
        }
    }
    return {GridField(domain, ns, nt, std::move(v)), std::max(lt.jitter, lx.jitter)};
}

// Atoms of the rotated field are cell masses. In the original frame a rotated
// cell is a diamond of half-diagonal delta = T/n; it is integrated as a stack
// of time slabs of length delta/m whose spatial extent is the diamond's width
// at the slab midpoint. Slab ends sit on a delta/m lattice in time and a
// delta/(2m) lattice in space, so both kernels reduce to lookup tables.
struct RotatedSampler::Factor {
    struct Slab {
        int p;       // time slab index
        int lo, hi;  // spatial extent in units of delta/(2m)
    };
    int m = 4;
    std::vector<std::pair<int, int>> cells;
    std::vector<std::vector<Slab>> slabs;
    std::vector<double> kt;  // time kernel by slab index distance
    std::vector<double> F;   // scaled second antiderivative by integer argument
    Eigen::MatrixXd L;
    double jitter = 0.0;

    double cov(int k, int l) const {
        double c = 0.0;
        for (const auto& a : slabs[k])
            for (const auto& b : slabs[l]) {
                const double sp = F[std::abs(a.hi - b.lo)] + F[std::abs(a.lo - b.hi)] - F[std::abs(a.lo - b.lo)] -
                                  F[std::abs(a.hi - b.hi)];
                c += kt[std::abs(a.p - b.p)] * sp;
            }
        return c;
    }
};

namespace {

std::shared_ptr<const RotatedSampler::Factor> build_factor(double H, double nu, double T, int n, int m);

using FactorKey = std::tuple<double, double, double, int, int>;

std::mutex& cache_mutex() {
    static std::mutex mu;
    return mu;
}

std::map<FactorKey, std::shared_ptr<const RotatedSampler::Factor>>& cache() {
    static std::map<FactorKey, std::shared_ptr<const RotatedSampler::Factor>> c;
    return c;
}

constexpr std::size_t kCacheEntries = 4;

}  // namespace

RotatedSampler::RotatedSampler(double H, double nu, double T, int n, int cap, int slabs)
    : H_(H), nu_(nu), T_(T), n_(n) {
    NoiseSpec{H, nu, T, 0}.validate();
    if (n < 1) throw ParameterError("rotated grid needs at least one interval");
    if (slabs < 1 || slabs > 64) throw ParameterError("slab count must lie in [1, 64]");
    if (n > cap) {
        std::ostringstream os;
        os << "rotated grid of " << n << " intervals exceeds the dense-sampler cap of " << cap;
        throw SizeError(os.str());
    }
    const FactorKey key{H, nu, T, n, slabs};
    {
        std::lock_guard<std::mutex> lock(cache_mutex());
        auto it = cache().find(key);
        if (it != cache().end()) {
            factor_ = it->second;
            return;
        }
    }
    auto f = build_factor(H, nu, T, n, slabs);
    std::lock_guard<std::mutex> lock(cache_mutex());
    if (cache().size() >= kCacheEntries) cache().erase(cache().begin());
    cache().emplace(key, f);
    factor_ = std::move(f);
}

namespace {

std::shared_ptr<const RotatedSampler::Factor> build_factor(double H, double nu, double T, int n, int m) {
    auto f = std::make_shared<RotatedSampler::Factor>();
    f->m = m;
    const double delta = T / n;
    const double tau = delta / m, eta = delta / (2.0 * m);

    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (a + b < n - 1) continue;
            const bool half = a + b == n - 1;
            const int c0 = (a + b + 1 - n) * m;
            const int x0 = (b - a) * 2 * m + 2 * m * n;  // shifted so every endpoint is >= 0
            std::vector<RotatedSampler::Factor::Slab> sl;
            for (int p = half ? c0 : c0 - m; p < c0 + m; ++p) {
                const int k = p >= c0 ? p - c0 : c0 - 1 - p;
                const int w = 2 * m - 2 * k - 1;
                sl.push_back({p, x0 - w, x0 + w});
            }
            f->cells.emplace_back(a, b);
            f->slabs.push_back(std::move(sl));
        }

    const int maxP = n * m + 1;
    f->kt.resize(maxP + 1);
    const double p2 = 2.0 * H, tscale = 0.5 * std::pow(tau, p2);
    for (int k = 0; k <= maxP; ++k)
        f->kt[k] = tscale * (std::pow(k + 1.0, p2) + std::pow(std::abs(k - 1.0), p2) - 2.0 * std::pow(double(k), p2));
    const int maxZ = 4 * m * n + 4 * m + 2;
    f->F.resize(maxZ + 1);
    const double q = 2.0 - nu, fscale = std::pow(eta, q) / ((1.0 - nu) * (2.0 - nu));
    for (int z = 0; z <= maxZ; ++z) f->F[z] = fscale * std::pow(double(z), q);

    const int N = static_cast<int>(f->cells.size());
    Eigen::MatrixXd cov(N, N);
    for (int k = 0; k < N; ++k)
        for (int l = 0; l <= k; ++l) {
            const double c = f->cov(k, l);
            cov(k, l) = c;
            cov(l, k) = c;
        }
    CholeskyResult ch = robust_cholesky(cov);
    f->L = std::move(ch.L);
    f->jitter = ch.jitter;
    return f;
}

}  // namespace

int RotatedSampler::atoms() const { return static_cast<int>(factor_->cells.size()); }
double RotatedSampler::jitter() const { return factor_->jitter; }
double RotatedSampler::atomCovariance(int k, int l) const { return factor_->cov(k, l); }
std::pair<int, int> RotatedSampler::atomCell(int k) const { return factor_->cells.at(k); }

Rectangle RotatedSampler::domain() const {
    const double c = T_ / std::sqrt(2.0);
    return {-c, c, -c, c};
}

namespace {

GridField cumulate_cells(const Rectangle& dom, int n, const std::vector<double>& cell) {
    std::vector<double> v(static_cast<std::size_t>(n + 1) * (n + 1), 0.0);
    for (int i = 1; i <= n; ++i) {
        double row = 0.0;
        for (int j = 1; j <= n; ++j) {
            row += cell[static_cast<std::size_t>(i - 1) * n + (j - 1)];
            v[static_cast<std::size_t>(i) * (n + 1) + j] = v[static_cast<std::size_t>(i - 1) * (n + 1) + j] + row;
        }
    }
    return GridField(dom, n, n, std::move(v));
}

}  // namespace

GridField RotatedSampler::sample(std::uint64_t seed, std::uint64_t replicate) const {
    Rng rng(seed, replicate);
    const int N = atoms();
    Eigen::VectorXd z(N);
    for (int k = 0; k < N; ++k) z(k) = rng.normal();
    const Eigen::VectorXd mass = factor_->L.triangularView<Eigen::Lower>() * z;
    std::vector<double> cell(static_cast<std::size_t>(n_) * n_, 0.0);
    for (int k = 0; k < N; ++k) {
        const auto [a, b] = factor_->cells[k];
        cell[static_cast<std::size_t>(a) * n_ + b] = mass(k);
    }
    return cumulate_cells(domain(), n_, cell);
}

GridField sample_rotated_field(const NoiseSpec& spec, int n, std::uint64_t replicate, int cap) {
    spec.validate();
    return RotatedSampler(spec.H, spec.nu, spec.T, n, cap).sample(spec.seed, replicate);
}

GridField rotated_from_original(const GridField& X, double T, int n) {
    if (n < 1) throw ParameterError("rotated grid needs at least one interval");
    const Rectangle want(0.0, T, -T, T);
    const double tol = 1e-9 * T;
    if (std::abs(X.domain().s1()) > tol || std::abs(X.domain().s2() - T) > tol ||
        std::abs(X.domain().t1() + T) > tol || std::abs(X.domain().t2() - T) > tol)
        throw GeometryError("original sample must cover [0,T] x [-T,T]");
    if (X.ns() % n != 0 || X.nt() != 2 * X.ns()) throw AlignmentError("original sample mesh incompatible with n");
    const int r = X.ns() / n;

    auto fine = [&X](int p, int q) { return X(p + 1, q + 1) - X(p + 1, q) - X(p, q + 1) + X(p, q); };
    std::vector<double> cell(static_cast<std::size_t>(n) * n, 0.0);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (a + b < n - 1) continue;
            const int P0 = (a + b + 1 - n) * r, Q0 = (b - a) * r + n * r;
            double mass = 0.0;
            for (int p = -r; p < r; ++p) {
                if (P0 + p < 0) continue;
                for (int q = -r; q < r; ++q) {
                    int lo = 1 << 30, hi = 0;
                    for (int dp = 0; dp <= 1; ++dp)
                        for (int dq = 0; dq <= 1; ++dq) {
                            const int d = std::abs(p + dp) + std::abs(q + dq);
                            lo = std::min(lo, d);
                            hi = std::max(hi, d);
                        }
                    if (lo >= r) continue;
                    mass += (hi <= r ? 1.0 : 0.5) * fine(P0 + p, Q0 + q);
                }
            }
            cell[static_cast<std::size_t>(a) * n + b] = mass;
        }
    const double c = T / std::sqrt(2.0);
    return cumulate_cells(Rectangle(-c, c, -c, c), n, cell);
}

}  // namespace youngwave

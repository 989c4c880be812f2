#include "youngwave/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "youngwave/errors.hpp"

namespace youngwave {

Rectangle::Rectangle(double s1, double s2, double t1, double t2) : s1_(s1), s2_(s2), t1_(t1), t2_(t2) {
    if (!(s1 < s2) || !(t1 < t2) || !std::isfinite(s1) || !std::isfinite(s2) || !std::isfinite(t1) ||
        !std::isfinite(t2)) {
        std::ostringstream msg;
        msg << "degenerate rectangle [" << s1 << "," << s2 << "]x[" << t1 << "," << t2 << "]";
        throw GeometryError(msg.str());
    }
}

bool Rectangle::contains(const Rectangle& o, double tol) const {
    return o.s1_ >= s1_ - tol && o.s2_ <= s2_ + tol && o.t1_ >= t1_ - tol && o.t2_ <= t2_ + tol;
}

GridField::GridField(Rectangle domain, int ns, int nt, std::vector<double> values)
    : domain_(domain), ns_(ns), nt_(nt), values_(std::move(values)) {
    if (ns <= 0 || nt <= 0) throw ParameterError("grid counts must be positive");
    if (values_.size() != static_cast<std::size_t>(ns + 1) * static_cast<std::size_t>(nt + 1))
        throw ParameterError("value count does not match (ns+1)*(nt+1)");
    ds_ = domain_.width() / ns_;
    dt_ = domain_.height() / nt_;
    for (double v : values_)
        if (!std::isfinite(v)) throw ParameterError("grid field values must be finite");
}

GridField::GridField(Rectangle domain, int ns, int nt, const std::function<double(double, double)>& f)
    : GridField(domain, ns, nt, [&] {
          if (ns <= 0 || nt <= 0) throw ParameterError("grid counts must be positive");
          std::vector<double> v(static_cast<std::size_t>(ns + 1) * (nt + 1));
          const double ds = domain.width() / ns, dt = domain.height() / nt;
          for (int i = 0; i <= ns; ++i)
              for (int j = 0; j <= nt; ++j)
                  v[static_cast<std::size_t>(i) * (nt + 1) + j] = f(domain.s1() + i * ds, domain.t1() + j * dt);
          return v;
      }()) {}

GridField GridField::zeros(Rectangle domain, int ns, int nt) {
    return GridField(domain, ns, nt, std::vector<double>(static_cast<std::size_t>(ns + 1) * (nt + 1), 0.0));
}

namespace {

int snap(double x, double origin, double step, int n, const char* axis) {
    const double k = (x - origin) / step;
    const double r = std::round(k);
    if (std::abs(k - r) > 1e-9 * std::max(1.0, std::abs(k)) || r < 0 || r > n) {
        std::ostringstream msg;
        msg << "coordinate " << axis << "=" << x << " is not a grid node";
        throw AlignmentError(msg.str());
    }
    return static_cast<int>(r);
}

}  // namespace

int GridField::nodeS(double s) const { return snap(s, domain_.s1(), ds_, ns_, "s"); }
int GridField::nodeT(double t) const { return snap(t, domain_.t1(), dt_, nt_, "t"); }

IndexBox GridField::box(const Rectangle& r) const {
    return {nodeS(r.s1()), nodeS(r.s2()), nodeT(r.t1()), nodeT(r.t2())};
}

Rectangle GridField::rect(const IndexBox& b) const { return {s(b.i1), s(b.i2), t(b.j1), t(b.j2)}; }

double GridField::increment(const IndexBox& b) const {
    return (*this)(b.i2, b.j2) - (*this)(b.i2, b.j1) - (*this)(b.i1, b.j2) + (*this)(b.i1, b.j1);
}

GridField GridField::coarsen(int stride) const {
    if (stride <= 0 || ns_ % stride != 0 || nt_ % stride != 0)
        throw AlignmentError("grid counts are not divisible by the coarsening stride");
    const int cs = ns_ / stride, ct = nt_ / stride;
    std::vector<double> v(static_cast<std::size_t>(cs + 1) * (ct + 1));
    for (int i = 0; i <= cs; ++i)
        for (int j = 0; j <= ct; ++j) v[static_cast<std::size_t>(i) * (ct + 1) + j] = (*this)(i * stride, j * stride);
    return GridField(domain_, cs, ct, std::move(v));
}

GridField GridField::restrict(const IndexBox& b) const {
    if (b.i1 < 0 || b.j1 < 0 || b.i2 > ns_ || b.j2 > nt_ || b.i1 >= b.i2 || b.j1 >= b.j2)
        throw GeometryError("restriction box outside the grid");
    std::vector<double> v;
    v.reserve(static_cast<std::size_t>(b.spanS() + 1) * (b.spanT() + 1));
    for (int i = b.i1; i <= b.i2; ++i)
        for (int j = b.j1; j <= b.j2; ++j) v.push_back((*this)(i, j));
    return GridField(rect(b), b.spanS(), b.spanT(), std::move(v));
}

bool GridField::sameGrid(const GridField& o) const {
    if (ns_ != o.ns_ || nt_ != o.nt_) return false;
    const double tol = 1e-12 * std::max({1.0, std::abs(domain_.s2()), std::abs(domain_.t2())});
    return std::abs(domain_.s1() - o.domain_.s1()) <= tol && std::abs(domain_.s2() - o.domain_.s2()) <= tol &&
           std::abs(domain_.t1() - o.domain_.t1()) <= tol && std::abs(domain_.t2() - o.domain_.t2()) <= tol;
}

double GridField::supNorm() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

GridField GridField::operator+(const GridField& o) const {
    if (!sameGrid(o)) throw AlignmentError("adding fields on different grids");
    std::vector<double> v(values_.size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = values_[k] + o.values_[k];
    return GridField(domain_, ns_, nt_, std::move(v));
}

GridField GridField::operator-(const GridField& o) const {
    if (!sameGrid(o)) throw AlignmentError("subtracting fields on different grids");
    std::vector<double> v(values_.size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = values_[k] - o.values_[k];
    return GridField(domain_, ns_, nt_, std::move(v));
}

GridField GridField::scaled(double a) const {
    std::vector<double> v(values_);
    for (double& x : v) x *= a;
    return GridField(domain_, ns_, nt_, std::move(v));
}

GridField GridField::map(const std::function<double(double)>& f) const {
    std::vector<double> v(values_.size());
    std::transform(values_.begin(), values_.end(), v.begin(), f);
    return GridField(domain_, ns_, nt_, std::move(v));
}

double rect_increment(const GridField& f, const Rectangle& r) { return f.increment(f.box(r)); }

void HolderExponents::validate() const {
    for (double e : {gamma, gammaHat, alpha, beta})
        if (!(e > 0.0 && e < 1.0)) throw ParameterError("Hoelder exponents must lie in (0,1)");
}

HolderSeminorms holder_seminorms(const GridField& f, const HolderExponents& e, int maxLag) {
    e.validate();
    if (maxLag <= 0) throw ParameterError("maxLag must be positive");
    if (maxLag > std::min(f.ns(), f.nt())) throw ParameterError("maxLag exceeds the grid size");

    const int ns = f.ns(), nt = f.nt();
    const int lagS = std::min(maxLag, ns), lagT = std::min(maxLag, nt);
    std::vector<double> wRectS(lagS + 1), wRectT(lagT + 1), wDirS(lagS + 1), wDirT(lagT + 1);
    for (int a = 1; a <= lagS; ++a) {
        wRectS[a] = std::pow(a * f.ds(), -e.gamma);
        wDirS[a] = std::pow(a * f.ds(), -e.alpha);
    }
    for (int b = 1; b <= lagT; ++b) {
        wRectT[b] = std::pow(b * f.dt(), -e.gammaHat);
        wDirT[b] = std::pow(b * f.dt(), -e.beta);
    }

    HolderSeminorms out;
    const double* v = f.values().data();
    const std::size_t row = static_cast<std::size_t>(nt) + 1;

    for (int i1 = 0; i1 < ns; ++i1) {
        const double* r1 = v + i1 * row;
        for (int a = 1; a <= lagS && i1 + a <= ns; ++a) {
            const double* r2 = v + (i1 + a) * row;
            const double wa = wRectS[a];
            for (int j1 = 0; j1 < nt; ++j1) {
                const double base = r2[j1] - r1[j1];
                for (int b = 1; b <= lagT && j1 + b <= nt; ++b) {
                    const double d = r2[j1 + b] - r1[j1 + b] - base;
                    out.rect = std::max(out.rect, std::abs(d) * wa * wRectT[b]);
                }
            }
            for (int j = 0; j <= nt; ++j) out.dir1 = std::max(out.dir1, std::abs(r2[j] - r1[j]) * wDirS[a]);
        }
    }
    for (int i = 0; i <= ns; ++i) {
        const double* r = v + i * row;
        for (int j1 = 0; j1 < nt; ++j1)
            for (int b = 1; b <= lagT && j1 + b <= nt; ++b)
                out.dir2 = std::max(out.dir2, std::abs(r[j1 + b] - r[j1]) * wDirT[b]);
    }
    out.sup = f.supNorm();
    out.total = out.rect + out.dir1 + out.dir2;
    return out;
}

HolderSeminorms holder_seminorms_multiscale(const GridField& f, const HolderExponents& e, int coarseCells,
                                            int fineLag) {
    int stride = 1;
    while ((f.ns() / stride > coarseCells || f.nt() / stride > coarseCells) && f.ns() % (2 * stride) == 0 &&
           f.nt() % (2 * stride) == 0)
        stride *= 2;
    const GridField coarse = stride == 1 ? f : f.coarsen(stride);
    HolderSeminorms c = holder_seminorms(coarse, e, std::min(coarse.ns(), coarse.nt()));
    if (stride > 1) {
        const HolderSeminorms fine = holder_seminorms(f, e, std::min({fineLag, f.ns(), f.nt()}));
        c.rect = std::max(c.rect, fine.rect);
        c.dir1 = std::max(c.dir1, fine.dir1);
        c.dir2 = std::max(c.dir2, fine.dir2);
        c.sup = f.supNorm();
        c.total = c.rect + c.dir1 + c.dir2;
    }
    return c;
}

std::pair<double, double> rotate_coords(double s, double t) {
    constexpr double r = 1.0 / std::numbers::sqrt2;
    return {(t + s) * r, (t - s) * r};
}

std::pair<double, double> unrotate_coords(double time, double space) {
    constexpr double r = 1.0 / std::numbers::sqrt2;
    return {(time - space) * r, (time + space) * r};
}

}  // namespace youngwave

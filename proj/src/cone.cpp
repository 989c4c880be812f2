#include "youngwave/cone.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "youngwave/errors.hpp"

namespace youngwave {

Cone::Cone(double s, double t, Frame frame) : s_(s), t_(t), frame_(frame) {
    if (!std::isfinite(s) || !std::isfinite(t)) throw GeometryError("cone apex must be finite");
    if (frame == Frame::Rotated && !(t + s > 0.0)) throw GeometryError("rotated cone needs t + s > 0");
    if (frame == Frame::Original && !(s > 0.0)) throw GeometryError("original-frame cone needs a positive time");
}

Cone Cone::toRotated() const {
    if (frame_ == Frame::Rotated) return *this;
    const auto [s, t] = unrotate_coords(s_, t_);
    return Cone(s, t, Frame::Rotated);
}

double Cone::leg() const {
    const Cone r = toRotated();
    return r.t_ + r.s_;
}

Rectangle Cone::boundingBox() const {
    const Cone r = toRotated();
    return {-r.t_, r.s_, -r.s_, r.t_};
}

double ConeCover::coveredArea() const {
    double a = 0.0;
    for (const auto& q : squares) a += q.rect.area();
    return a;
}

double ConeCover::summability(double gamma, double gammaHat) const {
    double v = 0.0;
    for (const auto& q : squares) v += std::pow(q.rect.width(), gamma) * std::pow(q.rect.height(), gammaHat);
    return v;
}

void ConeCover::writeCsv(std::ostream& os) const {
    os << "level,idx,s1,s2,t1,t2\n";
    os.precision(17);
    for (const auto& q : squares)
        os << q.level << ',' << q.idx << ',' << q.rect.s1() << ',' << q.rect.s2() << ',' << q.rect.t1() << ','
           << q.rect.t2() << '\n';
}

ConeCover dyadic_cover(const Cone& cone, int depth, CoverKind kind) {
    if (depth < 1) throw ParameterError("cover depth must be >= 1");
    if (depth > 24) throw ParameterError("cover depth too large");
    const Cone c = cone.toRotated();

    ConeCover cover;
    cover.depth = depth;
    cover.kind = kind;
    std::vector<std::pair<double, double>> apexes{{c.s(), c.t()}};
    double side = c.leg() / 2.0;
    for (int level = 1; level <= depth; ++level) {
        std::sort(apexes.begin(), apexes.end());
        std::vector<std::pair<double, double>> next;
        next.reserve(apexes.size() * 2);
        int idx = 0;
        for (const auto& [a, b] : apexes) {
            if (kind == CoverKind::Dyadic) {
                cover.squares.push_back({level, idx++, Rectangle(a - side, a, b - side, b)});
            } else {
                const double h = side / 2.0;
                for (int qi = 0; qi < 2; ++qi)
                    for (int qj = 0; qj < 2; ++qj) {
                        const double s1 = a - side + qi * h, t1 = b - side + qj * h;
                        cover.squares.push_back({level, idx++, Rectangle(s1, s1 + h, t1, t1 + h)});
                    }
            }
            next.emplace_back(a - side, b);
            next.emplace_back(a, b - side);
        }
        apexes = std::move(next);
        side /= 2.0;
    }
    return cover;
}

namespace {

int snap_index(double x, double origin, double step) { return static_cast<int>(std::lround((x - origin) / step)); }

int largest_stride(const IndexBox& b, int maxLevels) {
    int stride = 1;
    for (int l = 1; l < maxLevels; ++l) {
        const int next = stride * 2;
        if (b.spanS() % next != 0 || b.spanT() % next != 0) break;
        stride = next;
    }
    return stride;
}

}  // namespace

ConeIntegralResult cone_integral(const GridField& y, const GridField& x, const Cone& cone, const HolderExponents& ex,
                                 const HolderExponents& ey, const ConeIntegralOptions& opts) {
    require_young_exponents(ex, ey);
    if (!y.sameGrid(x)) throw AlignmentError("integrand and integrator live on different grids");
    if (opts.levels < 1) throw ParameterError("at least one level is required");
    const Cone c = cone.toRotated();
    const Rectangle bbox = c.boundingBox();
    const double tol = 1e-9 * std::max({1.0, std::abs(bbox.s1()), std::abs(bbox.s2())});
    if (!x.domain().contains(bbox, tol)) throw GeometryError("cone exceeds the field domain");

    const ConeCover cover = dyadic_cover(c, opts.depth, opts.kind);
    std::vector<IndexBox> boxes;
    ConeIntegralResult out;
    for (const auto& q : cover.squares) {
        const IndexBox b{snap_index(q.rect.s1(), x.domain().s1(), x.ds()),
                         snap_index(q.rect.s2(), x.domain().s1(), x.ds()),
                         snap_index(q.rect.t1(), x.domain().t1(), x.dt()),
                         snap_index(q.rect.t2(), x.domain().t1(), x.dt())};
        if (b.i1 >= b.i2 || b.j1 >= b.j2) {
            ++out.squaresSkipped;
            continue;
        }
        boxes.push_back(b);
    }
    out.squaresUsed = static_cast<int>(boxes.size());

    for (int l = opts.levels - 1; l >= 0; --l) {
        double sum = 0.0;
        for (const auto& b : boxes) sum += riemann_sum(y, x, b, std::min(1 << l, largest_stride(b, opts.levels)));
        out.integral.levels.push_back({(1 << l) * std::max(x.ds(), x.dt()), sum});
    }
    out.integral.value = out.integral.levels.back().sum;
    out.integral.cauchyGap =
        out.integral.levels.size() > 1
            ? std::abs(out.integral.levels.back().sum - out.integral.levels[out.integral.levels.size() - 2].sum)
            : 0.0;

    // Each of the 2^depth uncovered corner cones has leg L/2^depth; the
    // single-cone estimate C |x| (|y|_inf + |y|) leg^(g+gh) summed over them.
    const IndexBox bb = x.box(Rectangle(std::max(bbox.s1(), x.domain().s1()), std::min(bbox.s2(), x.domain().s2()),
                                        std::max(bbox.t1(), x.domain().t1()), std::min(bbox.t2(), x.domain().t2())));
    const HolderSeminorms xn = holder_seminorms_multiscale(x.restrict(bb), ex);
    const HolderSeminorms yn = holder_seminorms_multiscale(y.restrict(bb), ey);
    const double g = ex.gamma + ex.gammaHat;
    out.tailBound = opts.certificateConstant * xn.rect * (yn.sup + yn.total) * std::pow(c.leg(), g) *
                    std::pow(2.0, -opts.depth * (g - 1.0));
    out.integral.boundCertificate = out.tailBound;
    return out;
}

}  // namespace youngwave

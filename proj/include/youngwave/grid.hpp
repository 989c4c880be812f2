#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace youngwave {

/// Axis-parallel rectangle [s1,s2] x [t1,t2] with s1 < s2 and t1 < t2.
class Rectangle {
public:
    Rectangle(double s1, double s2, double t1, double t2);

    double s1() const { return s1_; }
    double s2() const { return s2_; }
    double t1() const { return t1_; }
    double t2() const { return t2_; }
    double width() const { return s2_ - s1_; }
    double height() const { return t2_ - t1_; }
    double area() const { return width() * height(); }

    bool contains(const Rectangle& other, double tol = 0.0) const;
    bool operator==(const Rectangle&) const = default;

private:
    double s1_, s2_, t1_, t2_;
};

/// Inclusive node-index box [i1,i2] x [j1,j2] on a grid, i1 < i2, j1 < j2.
struct IndexBox {
    int i1, i2, j1, j2;
    int spanS() const { return i2 - i1; }
    int spanT() const { return j2 - j1; }
};

/// Values of a two-parameter function on the uniform tensor grid
/// s1 + i*ds, t1 + j*dt, i = 0..ns, j = 0..nt. Storage is row-major with
/// i as the slow index. Immutable once built.
class GridField {
public:
    GridField(Rectangle domain, int ns, int nt, std::vector<double> values);
    GridField(Rectangle domain, int ns, int nt, const std::function<double(double, double)>& f);

    static GridField zeros(Rectangle domain, int ns, int nt);

    const Rectangle& domain() const { return domain_; }
    int ns() const { return ns_; }
    int nt() const { return nt_; }
    double ds() const { return ds_; }
    double dt() const { return dt_; }
    double s(int i) const { return domain_.s1() + i * ds_; }
    double t(int j) const { return domain_.t1() + j * dt_; }

    double operator()(int i, int j) const { return values_[index(i, j)]; }
    std::span<const double> values() const { return values_; }
    std::size_t index(int i, int j) const {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(nt_ + 1) + static_cast<std::size_t>(j);
    }

    /// Node index of coordinate s (resp. t); throws AlignmentError if s is
    /// not within a relative 1e-9 cell fraction of a node.
    int nodeS(double s) const;
    int nodeT(double t) const;
    IndexBox box(const Rectangle& r) const;
    Rectangle rect(const IndexBox& b) const;

    /// Rectangular increment over a node box:
    /// f(i2,j2) - f(i2,j1) - f(i1,j2) + f(i1,j1).
    double increment(const IndexBox& b) const;

    /// Every stride-th node, keeping both boundaries. ns and nt must be divisible by stride.
    GridField coarsen(int stride) const;
    /// Restriction to a node box, as a field on the corresponding sub-rectangle.
    GridField restrict(const IndexBox& b) const;

    bool sameGrid(const GridField& other) const;
    double supNorm() const;

    GridField operator+(const GridField& o) const;
    GridField operator-(const GridField& o) const;
    GridField scaled(double a) const;
    GridField map(const std::function<double(double)>& f) const;

private:
    Rectangle domain_;
    int ns_, nt_;
    double ds_, dt_;
    std::vector<double> values_;
};

/// Rectangular increment over a node-aligned rectangle; the sign convention
/// makes the increment of u*v over [a,b]x[c,d] equal (b-a)(d-c).
double rect_increment(const GridField& f, const Rectangle& r);

/// Exponents: (gamma, gammaHat) for rectangular increments, alpha and beta
/// for one-directional increments in s and t. All in (0,1).
struct HolderExponents {
    double gamma;
    double gammaHat;
    double alpha;
    double beta;

    static HolderExponents uniform(double e) { return {e, e, e, e}; }
    static HolderExponents rectangular(double g, double gh) { return {g, gh, g, gh}; }
    void validate() const;
};

struct HolderSeminorms {
    double rect = 0.0;
    double dir1 = 0.0;
    double dir2 = 0.0;
    double sup = 0.0;
    double total = 0.0;  // rect + dir1 + dir2
};

/// Grid estimate of the Hoelder semi-norms: suprema over node-aligned
/// rectangles (and directional node pairs) whose index spans are at most
/// maxLag. A lower bound of the continuum quantity, nondecreasing in maxLag.
/// Cost is O(ns * nt * maxLag^2).
HolderSeminorms holder_seminorms(const GridField& f, const HolderExponents& e, int maxLag);

/// Same estimator combining all lags on a coarsened copy (at most coarseCells
/// cells per axis) with lags <= fineLag at full resolution. Used where a
/// whole-domain estimate is needed on large grids.
HolderSeminorms holder_seminorms_multiscale(const GridField& f, const HolderExponents& e, int coarseCells = 32,
                                            int fineLag = 2);

/// (s,t) -> ((t+s)/sqrt2, (t-s)/sqrt2): maps a point of the rotated frame to
/// the original (time, space) frame.
std::pair<double, double> rotate_coords(double s, double t);
/// Inverse of rotate_coords: original (time, space) -> rotated (s,t).
std::pair<double, double> unrotate_coords(double time, double space);

}  // namespace youngwave

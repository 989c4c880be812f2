#pragma once

#include <iosfwd>
#include <vector>

#include "youngwave/grid.hpp"
#include "youngwave/young.hpp"

namespace youngwave {

enum class Frame { Original, Rotated };

/// Light cone with a given apex. In the rotated frame the cone with apex
/// (s,t) is the right triangle {u <= s, v <= t, u + v >= 0}, with legs
/// parallel to the axes and hypotenuse on the initial line v = -u. In the
/// original (time, space) frame the apex (S,X) spans the triangle
/// {0 <= u <= S, |v - X| <= S - u}.
class Cone {
public:
    Cone(double s, double t, Frame frame = Frame::Rotated);

    double s() const { return s_; }
    double t() const { return t_; }
    Frame frame() const { return frame_; }

    Cone toRotated() const;
    /// Leg length t + s of the rotated triangle.
    double leg() const;
    double area() const { return 0.5 * leg() * leg(); }
    /// Smallest rectangle containing the rotated cone: [-t, s] x [-s, t].
    Rectangle boundingBox() const;

private:
    double s_, t_;
    Frame frame_;
};

struct CoverSquare {
    int level;
    int idx;
    Rectangle rect;
};

enum class CoverKind {
    Dyadic,     // level k holds 2^(k-1) squares of side leg/2^k along the hypotenuse
    Quartered,  // the dyadic cover with every square split into its four quadrants
};

struct ConeCover {
    std::vector<CoverSquare> squares;
    int depth = 0;
    CoverKind kind = CoverKind::Dyadic;

    double coveredArea() const;
    /// Sum over the squares of width^gamma * height^gammaHat.
    double summability(double gamma, double gammaHat) const;
    /// Writes `level,idx,s1,s2,t1,t2` rows with a header line.
    void writeCsv(std::ostream& os) const;
};

/// Staircase cover of a rotated cone down to the given depth. Squares of one
/// level are ordered by increasing s.
ConeCover dyadic_cover(const Cone& c, int depth, CoverKind kind = CoverKind::Dyadic);

struct ConeIntegralResult {
    YoungResult integral;    // levels hold the cone-wide sums at each stride
    double tailBound = 0.0;  // bound on the part of the cone left uncovered
    int squaresUsed = 0;
    int squaresSkipped = 0;  // squares that collapse below one cell when snapped
};

struct ConeIntegralOptions {
    int depth = 10;
    int levels = 3;
    CoverKind kind = CoverKind::Dyadic;
    double certificateConstant = kCertificateConstant;
};

/// Integral of y against x over the rotated cone, as the sum of the
/// two-parameter integrals over the (grid-snapped) cover squares.
ConeIntegralResult cone_integral(const GridField& y, const GridField& x, const Cone& c, const HolderExponents& ex,
                                 const HolderExponents& ey, const ConeIntegralOptions& opts = {});

}  // namespace youngwave

#include <doctest.h>

#include <cmath>

#include "youngwave/errors.hpp"
#include "youngwave/grid.hpp"
#include "youngwave/rng.hpp"

using namespace youngwave;

TEST_SUITE("grid") {
    TEST_CASE("rectangle rejects degenerate sides") {
        CHECK_THROWS_AS(Rectangle(1.0, 1.0, 0.0, 1.0), GeometryError);
        CHECK_THROWS_AS(Rectangle(0.0, 1.0, 2.0, 1.0), GeometryError);
        const Rectangle r(0.0, 2.0, -1.0, 1.0);
        CHECK(r.area() == doctest::Approx(4.0));
        CHECK(r.contains(Rectangle(0.5, 1.0, 0.0, 0.5)));
        CHECK_FALSE(r.contains(Rectangle(0.5, 2.5, 0.0, 0.5)));
    }

    TEST_CASE("increment of a bilinear function is the rectangle area") {
        const GridField f(Rectangle(0.0, 1.0, 0.0, 1.0), 8, 8, [](double u, double v) { return u * v; });
        CHECK(rect_increment(f, Rectangle(0.25, 0.75, 0.125, 0.5)) == doctest::Approx(0.5 * 0.375));
        const GridField g(Rectangle(0.0, 1.0, 0.0, 1.0), 8, 8, [](double u, double v) { return u + v * v; });
        CHECK(rect_increment(g, Rectangle(0.25, 0.75, 0.125, 0.5)) == doctest::Approx(0.0).epsilon(1e-14));
    }

    TEST_CASE("off-grid corners throw alignment errors") {
        const GridField f = GridField::zeros(Rectangle(0.0, 1.0, 0.0, 1.0), 4, 4);
        CHECK_THROWS_AS(f.nodeS(0.3), AlignmentError);
        CHECK_THROWS_AS(f.nodeT(1.5), AlignmentError);
        CHECK(f.nodeS(0.75) == 3);
    }

    TEST_CASE("coarsen and restrict keep node values") {
        const GridField f(Rectangle(0.0, 2.0, 0.0, 1.0), 8, 4, [](double u, double v) { return u * u - 3 * v; });
        const GridField c = f.coarsen(2);
        CHECK(c.ns() == 4);
        CHECK(c(3, 1) == f(6, 2));
        CHECK_THROWS_AS(f.coarsen(3), AlignmentError);
        const GridField r = f.restrict({2, 6, 1, 3});
        CHECK(r.domain() == Rectangle(0.5, 1.5, 0.25, 0.75));
        CHECK(r(1, 1) == f(3, 2));
    }

    TEST_CASE("seminorms of u*v against an explicit rectangle sweep") {
        const GridField f(Rectangle(0.0, 1.0, 0.0, 1.0), 6, 6, [](double u, double v) { return u * v; });
        const HolderExponents e = HolderExponents::uniform(0.5);
        // rect increment over a x b cells is a b h^2; weighted by (a h)^-1/2 (b h)^-1/2
        // it grows with the lag, so the largest lag wins: sqrt(a b) h at a = b = lag.
        for (int lag : {1, 3, 6}) {
            const HolderSeminorms s = holder_seminorms(f, e, lag);
            CHECK(s.rect == doctest::Approx(lag / 6.0));
        }
        const HolderSeminorms s = holder_seminorms(f, e, 6);
        // directional: |u2 - u1| v <= (a h) * 1, weighted -> sqrt(a h) at v = 1, a = 6
        CHECK(s.dir1 == doctest::Approx(1.0));
        CHECK(s.dir2 == doctest::Approx(1.0));
        CHECK(s.sup == doctest::Approx(1.0));
        CHECK(s.total == doctest::Approx(s.rect + s.dir1 + s.dir2));
    }

    TEST_CASE("seminorms are monotone in the lag and rejected when out of range") {
        Rng rng(7);
        std::vector<double> v(17 * 17);
        for (double& x : v) x = rng.normal();
        const GridField f(Rectangle(0.0, 1.0, 0.0, 1.0), 16, 16, v);
        const HolderExponents e{0.6, 0.7, 0.4, 0.5};
        double prev = 0.0;
        for (int lag = 1; lag <= 16; ++lag) {
            const double r = holder_seminorms(f, e, lag).rect;
            CHECK(r >= prev);
            prev = r;
        }
        CHECK_THROWS_AS(holder_seminorms(f, e, 0), ParameterError);
        CHECK_THROWS_AS(holder_seminorms(f, e, 17), ParameterError);
        CHECK_THROWS_AS(holder_seminorms(f, HolderExponents::uniform(1.0), 2), ParameterError);
    }

    TEST_CASE("seminorm triangle inequality on random pairs") {
        for (int k = 0; k < 10; ++k) {
            Rng rng(11, k);
            std::vector<double> a(13 * 13), b(13 * 13);
            for (double& x : a) x = rng.normal();
            for (double& x : b) x = rng.uniform(-3.0, 3.0);
            const Rectangle d(0.0, 1.0, 0.0, 1.0);
            const GridField f(d, 12, 12, a), g(d, 12, 12, b);
            const HolderExponents e{0.3, 0.8, 0.5, 0.9};
            const HolderSeminorms sf = holder_seminorms(f, e, 12), sg = holder_seminorms(g, e, 12),
                                  sfg = holder_seminorms(f + g, e, 12);
            CHECK(sfg.rect <= sf.rect + sg.rect + 1e-12);
            CHECK(sfg.dir1 <= sf.dir1 + sg.dir1 + 1e-12);
            CHECK(sfg.dir2 <= sf.dir2 + sg.dir2 + 1e-12);
        }
    }

    TEST_CASE("multiscale estimate is a lower bound of the all-lag estimate") {
        Rng rng(3);
        std::vector<double> v(65 * 65);
        for (double& x : v) x = rng.normal();
        const GridField f(Rectangle(0.0, 1.0, 0.0, 1.0), 64, 64, v);
        const HolderExponents e = HolderExponents::uniform(0.5);
        const HolderSeminorms full = holder_seminorms(f, e, 64);
        const HolderSeminorms ms = holder_seminorms_multiscale(f, e, 16, 2);
        CHECK(ms.rect <= full.rect + 1e-12);
        CHECK(ms.dir1 <= full.dir1 + 1e-12);
        CHECK(ms.rect >= holder_seminorms(f, e, 2).rect - 1e-12);
    }

    TEST_CASE("rotation round trip and initial line") {
        const auto [time, space] = rotate_coords(-0.3, 0.3);
        CHECK(time == doctest::Approx(0.0));
        CHECK(space == doctest::Approx(0.6 / std::sqrt(2.0)));
        for (double s : {-0.7, 0.1, 2.5})
            for (double t : {-1.0, 0.4}) {
                const auto [a, b] = rotate_coords(s, t);
                const auto [s2, t2] = unrotate_coords(a, b);
                CHECK(s2 == doctest::Approx(s));
                CHECK(t2 == doctest::Approx(t));
            }
    }
}

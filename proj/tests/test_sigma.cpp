#include <doctest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"
#include "youngwave/errors.hpp"
#include "youngwave/sigma.hpp"

using namespace youngwave;

namespace {

const Rectangle kUnit(0.0, 1.0, 0.0, 1.0);
const HolderExponents kE{0.6, 0.6, 0.7, 0.7};

}  // namespace

TEST_SUITE("sigma") {
    TEST_CASE("catalog") {
        for (const char* name : {"sin", "tanh", "bump"}) {
            const SigmaFn s = sigma_by_name(name);
            CHECK(s.id == name);
            CHECK(s.bounded());
        }
        CHECK(sigma_by_name("affine", 2.0, 1.0)(3.0) == 7.0);
        CHECK_FALSE(sigma_affine(2.0, 1.0).bounded());
        CHECK(sigma_affine(0.0, -2.0).bounded());
        CHECK(sigma_by_name("constant", 4.0)(-9.0) == 4.0);
        CHECK_THROWS_AS(sigma_by_name("cosh"), ParameterError);
    }

    TEST_CASE("derivative bounds") {
        const SigmaFn t = sigma_tanh();
        CHECK(t.derivativeBounds[0] == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(t.derivativeBounds[1] == doctest::Approx(1.0));
        // |tanh''| peaks at 4/(3 sqrt 3), |tanh'''| at 2 (u = 0)
        CHECK(t.derivativeBounds[2] == doctest::Approx(4.0 / (3.0 * std::sqrt(3.0))).epsilon(1e-6));
        CHECK(t.derivativeBounds[3] == doctest::Approx(2.0).epsilon(1e-6));
        const SigmaFn b = sigma_bump();
        CHECK(b.derivativeBounds[0] == doctest::Approx(1.0));
        CHECK(b.derivativeBounds[1] == doctest::Approx(std::sqrt(2.0) * std::exp(-0.5)).epsilon(1e-6));
        CHECK(b.derivativeBounds[2] == doctest::Approx(2.0));
    }

    TEST_CASE("compose is pointwise") {
        const GridField y(kUnit, 8, 8, [](double u, double v) { return u * v; });
        CHECK(compose(sigma_tanh(), y)(8, 8) == doctest::Approx(0.76159).epsilon(1e-5));
        const GridField half(kUnit, 8, 8, [](double, double) { return std::numbers::pi / 2; });
        CHECK(compose(sigma_sin(), half).supNorm() == 1.0);
        const GridField c = compose(sigma_constant(3.5), y);
        for (double v : c.values()) CHECK(v == 3.5);
        for (int i = 0; i <= 8; ++i)
            for (int j = 0; j <= 8; ++j) CHECK(compose(sigma_bump(), y)(i, j) == std::exp(-y(i, j) * y(i, j)));
    }

    TEST_CASE("affine sigma scales the semi-norms exactly") {
        // dyadic values keep a*y + b and its differences exact in floating point
        const GridField y(kUnit, 16, 16, [](double u, double v) { return std::round(64 * std::sin(5 * u + 2 * v * v)) / 64; });
        for (double a : {-0.5, 2.0, 0.25}) {
            const HolderSeminorms ny = holder_seminorms(y, kE, 16);
            const HolderSeminorms ns = holder_seminorms(compose(sigma_affine(a, 0.75), y), kE, 16);
            CHECK(ns.rect == std::abs(a) * ny.rect);
            CHECK(ns.dir1 == std::abs(a) * ny.dir1);
            CHECK(ns.dir2 == std::abs(a) * ny.dir2);
        }
    }

    TEST_CASE("trivial cases of the inequalities") {
        const GridField zero = GridField::zeros(kUnit, 16, 16);
        const InequalityCheck g0 = check_growth_inequality(sigma_sin(), zero, kE);
        CHECK(g0.lhs == 0.0);
        CHECK(g0.degenerate);
        const GridField y = random_smooth_field(1, 0, 16);
        CHECK(check_growth_inequality(sigma_constant(2.0), y, kE).lhs == 0.0);
        CHECK(check_lipschitz_inequality(sigma_tanh(), y, y, kE).lhs == 0.0);
        CHECK(check_lipschitz_inequality(sigma_constant(-1.0), y, random_smooth_field(1, 1, 16), kE).lhs == 0.0);
        CHECK_THROWS_AS(check_lipschitz_inequality(sigma_sin(), y, random_smooth_field(1, 1, 8), kE), AlignmentError);
        CHECK(fit_constant({g0}) == 0.0);
    }

    TEST_CASE("fitted growth constant for sin is stable across seeds") {
        std::vector<double> fits;
        for (std::uint64_t seed : {11u, 12u, 13u}) {
            std::vector<InequalityCheck> cs;
            for (int k = 0; k < 50; ++k) cs.push_back(check_growth_inequality(sigma_sin(), random_smooth_field(seed, k, 24), kE));
            fits.push_back(fit_constant(cs));
        }
        for (double c : fits) {
            CHECK(c > 0.0);
            CHECK(c < 10.0);
        }
    }

    TEST_CASE("Lipschitz constant for sin is finite") {
        std::vector<InequalityCheck> cs;
        for (int k = 0; k < 30; ++k)
            cs.push_back(check_lipschitz_inequality(sigma_sin(), random_smooth_field(5, 2 * k, 24),
                                                    random_smooth_field(5, 2 * k + 1, 24), kE));
        const double c = fit_constant(cs);
        CHECK(std::isfinite(c));
        CHECK(c > 0.0);
        CHECK(c < 10.0);
    }

    TEST_CASE("random smooth fields are deterministic") {
        const GridField a = random_smooth_field(3, 4, 16), b = random_smooth_field(3, 4, 16);
        CHECK(same_values(a, b));
        CHECK_FALSE(same_values(a, random_smooth_field(3, 5, 16)));
        CHECK_THROWS_AS(random_smooth_field(3, 4, 16, 0.0, 1.0), ParameterError);
    }
}

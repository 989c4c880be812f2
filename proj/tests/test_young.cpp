#include <doctest.h>

#include <cmath>

#include "youngwave/errors.hpp"
#include "youngwave/noise.hpp"
#include "youngwave/young.hpp"

using namespace youngwave;

namespace {

SampledPath sample_path(double a, double b, int n, double (*f)(double)) {
    SampledPath p{a, b, {}};
    for (int k = 0; k <= n; ++k) p.values.push_back(f(a + (b - a) * k / n));
    return p;
}

const Rectangle kUnit(0.0, 1.0, 0.0, 1.0);
const HolderExponents kSmooth = HolderExponents::uniform(0.9);

}  // namespace

TEST_SUITE("young") {
    TEST_CASE("1-d sums") {
        const SampledPath one = sample_path(0, 1, 1024, [](double) { return 1.0; });
        const SampledPath g = sample_path(0, 1, 1024, [](double t) { return std::sin(3 * t); });
        const YoungResult r = young_integral_1d(one, g, 5);
        for (const auto& lv : r.levels) CHECK(lv.sum == doctest::Approx(std::sin(3.0)).epsilon(1e-14));

        const SampledPath id = sample_path(0, 1, 1024, [](double t) { return t; });
        const SampledPath sq = sample_path(0, 1, 1024, [](double t) { return t * t; });
        CHECK(std::abs(young_integral_1d(id, id, 4).value - 0.5) < 1e-3);
        CHECK(std::abs(young_integral_1d(id, sq, 4).value - 2.0 / 3.0) < 1e-3);
        CHECK_THROWS_AS(young_integral_1d(id, sample_path(0, 1, 512, [](double t) { return t; }), 3), AlignmentError);
        CHECK_THROWS_AS(young_integral_1d(id, id, 1), ParameterError);
    }

    TEST_CASE("constant integrand reproduces the increment at every level") {
        const GridField x(kUnit, 64, 64, [](double u, double v) { return std::exp(u) * std::cos(2 * v) + u * u; });
        const GridField y(kUnit, 64, 64, [](double, double) { return 2.5; });
        YoungOptions o;
        o.levels = 5;
        const YoungResult r = young_integral_2d(y, x, kSmooth, kSmooth, o);
        const double want = 2.5 * x.increment({0, 64, 0, 64});
        for (const auto& lv : r.levels) CHECK(lv.sum == doctest::Approx(want).epsilon(1e-13));
        CHECK(r.levels.size() == 5);
        CHECK(r.levels.front().mesh > r.levels.back().mesh);
    }

    TEST_CASE("analytic oracles on polynomial pairs") {
        const GridField y1(kUnit, 512, 512, [](double u, double) { return u; });
        const GridField x1(kUnit, 512, 512, [](double u, double v) { return u * u * v; });
        YoungOptions o;
        CHECK(std::abs(young_integral_2d(y1, x1, kSmooth, kSmooth, o).value - 2.0 / 3.0) < 1e-3);
        const GridField uv(kUnit, 512, 512, [](double u, double v) { return u * v; });
        CHECK(std::abs(young_integral_2d(uv, uv, kSmooth, kSmooth, o).value - 0.25) < 1e-3);
    }

    TEST_CASE("linearity and additivity per level") {
        const GridField x(kUnit, 64, 64, [](double u, double v) { return std::sin(u + 2 * v) * u; });
        const GridField y1(kUnit, 64, 64, [](double u, double v) { return u * v + 1; });
        const GridField y2(kUnit, 64, 64, [](double u, double v) { return std::cos(u - v); });
        YoungOptions o;
        o.certificate = false;
        const YoungResult a = young_integral_2d(y1, x, kSmooth, kSmooth, o);
        const YoungResult b = young_integral_2d(y2, x, kSmooth, kSmooth, o);
        const YoungResult c = young_integral_2d(y1.scaled(2.0) + y2.scaled(-3.0), x, kSmooth, kSmooth, o);
        for (std::size_t k = 0; k < a.levels.size(); ++k)
            CHECK(c.levels[k].sum == doctest::Approx(2 * a.levels[k].sum - 3 * b.levels[k].sum).epsilon(1e-10));

        o.levels = 3;
        const YoungResult whole = young_integral_2d(y1, x, kSmooth, kSmooth, o);
        double parts[3] = {0, 0, 0};
        for (const Rectangle& r : {Rectangle(0, 0.5, 0, 0.5), Rectangle(0.5, 1, 0, 0.5), Rectangle(0, 0.5, 0.5, 1),
                                   Rectangle(0.5, 1, 0.5, 1)}) {
            const YoungResult p = young_integral_2d(y1, x, kSmooth, kSmooth, o, r);
            for (int k = 0; k < 3; ++k) parts[k] += p.levels[k].sum;
        }
        for (int k = 0; k < 3; ++k) CHECK(parts[k] == doctest::Approx(whole.levels[k].sum).epsilon(1e-10));
    }

    TEST_CASE("exponent contract and grid checks") {
        const GridField f = GridField::zeros(kUnit, 16, 16);
        YoungOptions o;
        CHECK_THROWS_AS(young_integral_2d(f, f, HolderExponents::uniform(0.4), HolderExponents::uniform(0.5), o),
                        ContractError);
        const HolderExponents weakDir{0.9, 0.9, 0.05, 0.9};
        CHECK_THROWS_AS(young_integral_2d(f, f, HolderExponents::uniform(0.5), weakDir, o), ContractError);
        CHECK_THROWS_AS(young_integral_2d(f, GridField::zeros(kUnit, 32, 32), kSmooth, kSmooth, o), AlignmentError);
        o.levels = 6;
        CHECK_THROWS_AS(young_integral_2d(f, f, kSmooth, kSmooth, o), AlignmentError);
    }

    TEST_CASE("certificate holds on smooth pairs with the frozen constant") {
        for (int n : {32, 64, 128}) {
            const GridField y(kUnit, n, n, [](double u, double v) { return 1 + u * v * v; });
            const GridField x(kUnit, n, n, [](double u, double v) { return u * u * v + u * v; });
            YoungOptions o;
            const YoungResult r = young_integral_2d(y, x, kSmooth, kSmooth, o);
            CHECK(r.boundCertificate > 0.0);
            CHECK_FALSE(r.certificateViolated);
        }
    }

    TEST_CASE("certificate flags a bound that is too tight") {
        const GridField y(kUnit, 64, 64, [](double u, double v) { return std::sin(5 * u) * v; });
        const GridField x(kUnit, 64, 64, [](double u, double v) { return u * v; });
        YoungOptions o;
        o.certificateConstant = 1e-6;
        CHECK(young_integral_2d(y, x, kSmooth, kSmooth, o).certificateViolated);
    }

    TEST_CASE("decomposition identity") {
        const GridField c(kUnit, 256, 256, [](double, double) { return 3.0; });
        const GridField xuv(kUnit, 256, 256, [](double u, double v) { return u * v; });
        CHECK(decomposition_identity_check(c, xuv, kSmooth, kSmooth).residual == 0.0);
        const GridField yu(kUnit, 256, 256, [](double u, double) { return u; });
        CHECK(decomposition_identity_check(yu, xuv, kSmooth, kSmooth).residual < 1e-6);
        const GridField ys(kUnit, 256, 256, [](double u, double v) { return std::sin(u + v); });
        const DecompositionTerms d = decomposition_identity_check(ys, xuv, kSmooth, kSmooth);
        CHECK(d.residual < 1e-4);
        // the pieces are not trivially zero
        CHECK(std::abs(d.centered) > 1e-3);
        CHECK(std::abs(d.boundaryS) > 1e-3);
        CHECK(std::abs(d.boundaryT) > 1e-3);
        const DecompositionTerms sub = decomposition_identity_check(ys, xuv, kSmooth, kSmooth,
                                                                    Rectangle(0.25, 0.75, 0.5, 1.0));
        CHECK(sub.residual < 1e-12);
    }

    TEST_CASE("convergence order") {
        const GridField y(kUnit, 512, 512, [](double u, double) { return u; });
        const GridField x(kUnit, 512, 512, [](double u, double v) { return u * u * v; });
        const RegressionFit f = convergence_order(y, x, kSmooth, kSmooth, 6);
        CHECK(f.slope >= 0.9);
        const GridField c(kUnit, 512, 512, [](double, double) { return 1.0; });
        CHECK(convergence_order(c, x, kSmooth, kSmooth, 6).status == FitStatus::Exact);
        CHECK_THROWS_AS(convergence_order(y, x, kSmooth, kSmooth, 4), StatisticsError);
    }

    // The fluctuation of the coarse gaps swamps the trend on small grids; 1024
    // cells with the five finest levels is where the slope settles.
    TEST_CASE("convergence order on rough noise is positive") {
        int positive = 0;
        const int runs = 50;
        const HolderExponents e = HolderExponents::uniform(0.7);
        for (int k = 0; k < runs; ++k) {
            NoiseSpec spec{0.75, 0.5, 1.0, 900u + k};
            const GridField x = sample_original_field(spec, kUnit, 1024, 1024).field;
            if (convergence_order(x, x, e, e, 5).slope > 0.2) ++positive;
        }
        CHECK(positive >= 45);
    }

    TEST_CASE("calibration returns the worst ratio") {
        std::vector<std::pair<GridField, GridField>> pairs;
        pairs.emplace_back(GridField(kUnit, 64, 64, [](double u, double v) { return 1 + u * v * v; }),
                           GridField(kUnit, 64, 64, [](double u, double v) { return u * u * v + u * v; }));
        const double c = calibrate_certificate_constant(pairs, kSmooth, kSmooth, 4);
        CHECK(c > 0.0);
        CHECK(c <= kCertificateConstant);
        YoungOptions o;
        o.certificateConstant = c * 0.999;
        CHECK(young_integral_2d(pairs[0].first, pairs[0].second, kSmooth, kSmooth, o).certificateViolated);
    }
}

#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "youngwave/diagnostics.hpp"
#include "youngwave/errors.hpp"
#include "youngwave/rng.hpp"

using namespace youngwave;

TEST_SUITE("diagnostics") {
    TEST_CASE("power law magnitudes give the exponent") {
        std::vector<std::pair<double, double>> p;
        for (double h : {0.5, 0.25, 0.125, 0.0625}) p.emplace_back(h, h * h);
        const RegressionFit f = scaling_regression(p);
        CHECK(f.slope == doctest::Approx(2.0));
        CHECK(f.r2 == doctest::Approx(1.0));
        CHECK(f.pointsUsed == 4);

        for (auto& q : p) q.second = 3.0;
        CHECK(scaling_regression(p).slope == doctest::Approx(0.0).epsilon(1e-12));
    }

    TEST_CASE("scale equivariance shifts only the intercept") {
        std::vector<std::pair<double, double>> p{{1, 0.3}, {2, 0.9}, {4, 1.7}, {8, 4.1}};
        const RegressionFit a = scaling_regression(p);
        for (auto& q : p) q.second *= 5.0;
        const RegressionFit b = scaling_regression(p);
        CHECK(b.slope == doctest::Approx(a.slope));
        CHECK(b.intercept - a.intercept == doctest::Approx(std::log(5.0)));
    }

    TEST_CASE("zeros are dropped and too few points throw") {
        const RegressionFit f = scaling_regression({{1, 0}, {2, 1}, {4, 2}, {8, 4}});
        CHECK(f.zerosDropped == 1);
        CHECK(f.slope == doctest::Approx(1.0));
        CHECK_THROWS_AS(scaling_regression({{1, 1}, {2, 2}, {4, 0}}), StatisticsError);
        CHECK(scaling_regression({{1, 0}, {2, 0}, {4, 0}}).status == FitStatus::Exact);
        CHECK_THROWS_AS(scaling_regression({{-1, 1}, {2, 2}, {4, 3}}), StatisticsError);
    }

    TEST_CASE("fractional path increments recover the Hurst index") {
        // Exact fBm on 1024 points by Cholesky of the covariance.
        const int n = 1024;
        const double H = 0.7;
        Eigen::MatrixXd c(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const double a = (i + 1.0) / n, b = (j + 1.0) / n;
                c(i, j) = 0.5 * (std::pow(a, 2 * H) + std::pow(b, 2 * H) - std::pow(std::abs(a - b), 2 * H));
            }
        const Eigen::MatrixXd L = Eigen::LLT<Eigen::MatrixXd>(c).matrixL();
        double mean = 0.0;
        const int reps = 4;
        for (int r = 0; r < reps; ++r) {
            Rng rng(2024, r);
            Eigen::VectorXd z(n);
            for (int k = 0; k < n; ++k) z(k) = rng.normal();
            Eigen::VectorXd path(n + 1);
            path(0) = 0.0;
            path.tail(n) = L * z;
            std::vector<std::pair<double, double>> p;
            for (int lag = 1; lag <= 64; lag *= 2) {
                double ms = 0.0;
                int cnt = 0;
                for (int k = 0; k + lag <= n; k += lag, ++cnt) ms += std::pow(path(k + lag) - path(k), 2);
                p.emplace_back(double(lag) / n, ms / cnt);
            }
            mean += scaling_regression(p).slope / 2.0 / reps;
        }
        CHECK(mean == doctest::Approx(H).epsilon(0.1 / H));
    }

    TEST_CASE("square probes on monomials") {
        const GridField f(Rectangle(0.0, 1.0, 0.0, 1.0), 64, 64, [](double u, double v) { return u * v; });
        CHECK(rect_exponent_sum_estimate(f, 5).slope == doctest::Approx(2.0).epsilon(0.025));
        const GridField g(Rectangle(0.0, 1.0, 0.0, 1.0), 64, 64,
                          [](double u, double v) { return u * u * v; });
        CHECK(rect_exponent_sum_estimate(g, 5).slope == doctest::Approx(2.0).epsilon(0.025));
        const auto [a, b] = anisotropic_exponent_estimate(f, 5);
        CHECK(a.slope == doctest::Approx(1.0));
        CHECK(b.slope == doctest::Approx(1.0));
        CHECK(rect_exponent_sum_estimate(GridField::zeros(Rectangle(0, 1, 0, 1), 32, 32), 4).status ==
              FitStatus::Degenerate);
        CHECK_THROWS_AS(rect_exponent_sum_estimate(f, 3), StatisticsError);
    }

    TEST_CASE("anti-diagonal filter") {
        const SquareFilter f = above_antidiagonal(8);
        CHECK(f({4, 6, 4, 6}));
        CHECK_FALSE(f({3, 5, 4, 6}));
    }
}

#include <catch_amalgamated.hpp>

#include <psforge/verify.hpp>

#include "helpers.hpp"

using namespace psforge;

namespace {

// Independent root-finder for sin(T - S) = k sin(T + S) on the pi-window
// around S, bisected to convergence; the closed form must match it.
double bisectionStep(double u, double u1, double u2, double p, double q) {
    const double k = p * q / 4.0;
    const double s = (u1 + u2) / 4.0;
    const double j = std::floor(s / std::numbers::pi + 0.5);
    double lo = j * std::numbers::pi - std::numbers::pi / 2 + 1e-14;
    double hi = j * std::numbers::pi + std::numbers::pi / 2 - 1e-14;
    auto h = [&](double t) { return std::sin(t - s) - k * std::sin(t + s); };
    double flo = h(lo);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = h(mid);
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 4.0 * (0.5 * (lo + hi)) - u;
}

}  // namespace

TEST_CASE("closed-form step on a frozen example", "[hirota]") {
    REQUIRE_THAT(hirotaStep(0.1, 0.4, -0.2, 0.8, 0.8),
                 Catch::Matchers::WithinAbs(0.17598210302499098, 1e-15));
}

TEST_CASE("closed-form step solves the lattice equation", "[hirota]") {
    auto g = pstest::rng(501);
    for (int i = 0; i < 2000; ++i) {
        const double u = pstest::uniform(g, -2 * std::numbers::pi, 2 * std::numbers::pi);
        const double u1 = pstest::uniform(g, -2 * std::numbers::pi, 2 * std::numbers::pi);
        const double u2 = pstest::uniform(g, -2 * std::numbers::pi, 2 * std::numbers::pi);
        const double p = pstest::randomSign(g) * pstest::uniform(g, 0.2, 1.6);
        const double q = pstest::randomSign(g) * pstest::uniform(g, 0.2, 1.6);
        const double u12 = hirotaStep(u, u1, u2, p, q);
        REQUIRE(hirotaEquationResidual(u, u1, u2, u12, p, q) < 1e-12);
    }
}

TEST_CASE("closed-form step matches the bisection oracle", "[hirota]") {
    auto g = pstest::rng(502);
    double worst = 0.0;
    for (int i = 0; i < 2000; ++i) {
        const double u = pstest::uniform(g, -2 * std::numbers::pi, 2 * std::numbers::pi);
        const double u1 = pstest::uniform(g, -2 * std::numbers::pi, 2 * std::numbers::pi);
        const double u2 = pstest::uniform(g, -2 * std::numbers::pi, 2 * std::numbers::pi);
        const double p = pstest::randomSign(g) * pstest::uniform(g, 0.2, 1.6);
        const double q = pstest::randomSign(g) * pstest::uniform(g, 0.2, 1.6);
        worst = std::max(worst, std::abs(hirotaStep(u, u1, u2, p, q) - bisectionStep(u, u1, u2, p, q)));
    }
    INFO("worst deviation " << worst);
    REQUIRE(worst < 1e-12);
}

TEST_CASE("step is continuous across the branch seam and guards the pole", "[hirota]") {
    // u1 + u2 crossing 2 pi moves S across the atan2 seam
    const double eps = 1e-9;
    const double below = hirotaStep(0.3, std::numbers::pi, std::numbers::pi - eps, 0.9, 0.7);
    const double above = hirotaStep(0.3, std::numbers::pi, std::numbers::pi + eps, 0.9, 0.7);
    REQUIRE(std::abs(above - below) < 1e-6);

    // |k| close to 1 still solves the equation
    const double u12 = hirotaStep(0.1, 0.2, 0.3, 1.99, 1.99);
    REQUIRE(hirotaEquationResidual(0.1, 0.2, 0.3, u12, 1.99, 1.99) < 1e-9);

    REQUIRE_THROWS_AS(hirotaStep(0.0, 0.0, 0.0, 2.0, 2.0), std::domain_error);
}

TEST_CASE("grids from potentials satisfy axis recursions and the equation", "[hirota]") {
    auto g = pstest::rng(503);
    const int N = 6, M = 6;
    const NormalizedPotentials pot = pstest::randomPotentials(g, N, M);
    const HirotaGrid grid = hirotaGridFromPotentials(pot, N, M);
    REQUIRE(grid.at(0, 0) == 0.0);
    for (int n = 0; n < N; ++n)
        REQUIRE_THAT(grid.at(n + 1, 0) + grid.at(n, 0),
                     Catch::Matchers::WithinAbs(2.0 * pot.alpha[n], 1e-13));
    for (int m = 0; m < M; ++m)
        REQUIRE_THAT(grid.at(0, m + 1) + grid.at(0, m),
                     Catch::Matchers::WithinAbs(2.0 * pot.beta[m], 1e-13));
    REQUIRE(hirotaResidual(grid) < 1e-12);
}

TEST_CASE("oracle transitions are unimodular and unitary at real lambda", "[hirota]") {
    auto g = pstest::rng(504);
    for (int i = 0; i < 100; ++i) {
        const double du = pstest::uniform(g, -6, 6);
        const double su = pstest::uniform(g, -6, 6);
        const double p = pstest::randomSign(g) * pstest::uniform(g, 0.2, 1.8);
        const double q = pstest::randomSign(g) * pstest::uniform(g, 0.2, 1.8);
        const double l = pstest::uniform(g, 0.3, 3.0);
        for (const Mat2& t : {transitionU(du, p, l), transitionV(su, q, l)}) {
            REQUIRE(std::abs(t.det() - cplx{1.0}) < 1e-14);
            REQUIRE(specialUnitarityResidual(t) < 1e-13);
        }
    }
}

TEST_CASE("oracle surface integrates path-independently", "[hirota]") {
    auto g = pstest::rng(505);
    const int N = 5, M = 5;
    const NormalizedPotentials pot = pstest::randomPotentials(g, N, M);
    for (double lambda : {0.5, 1.0, 2.0}) {
        const OracleSurface o = hirotaOracleSurface(pot, N, M, lambda);
        INFO("path deviation " << o.pathDeviation);
        REQUIRE(o.pathDeviation < 1e-11);
        REQUIRE(maxAbsDiff(o.frameAt(0, 0), Mat2::identity()) == 0.0);
        REQUIRE(maxAbsDiff(o.mesh.at(0, 0), Vector3{}) < 1e-9);
        for (int n = 0; n <= N; ++n)
            for (int m = 0; m <= M; ++m)
                REQUIRE(specialUnitarityResidual(o.frameAt(n, m)) < 1e-12);
    }
}

TEST_CASE("oracle mesh is itself discrete pseudospherical", "[hirota]") {
    auto g = pstest::rng(506);
    const int N = 5, M = 5;
    const NormalizedPotentials pot = pstest::randomPotentials(g, N, M);
    const OracleSurface o = hirotaOracleSurface(pot, N, M, 1.0);
    // finite-difference Sym points carry ~1e-11 noise; the structure must
    // still be visible well below any geometric tolerance
    const MeshChecks checks = checkDiscretePS(o.mesh);
    REQUIRE(checks.coplanarityMax < 1e-8);
    REQUIRE(checks.oppositeEdgeMax < 1e-9);
}

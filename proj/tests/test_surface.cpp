#include <catch_amalgamated.hpp>

#include <psforge/verify.hpp>

#include "helpers.hpp"

using namespace psforge;

TEST_CASE("symPoint on a frozen one-factor frame", "[surface]") {
    FactorChain c;
    c.push(PlusFactor{0.0, cplx{0.0, 0.5}});
    const Vector3 v = symPoint(c, 1.0);
    REQUIRE_THAT(v.x, Catch::Matchers::WithinAbs(0.8, 1e-14));
    REQUIRE_THAT(v.y, Catch::Matchers::WithinAbs(0.0, 1e-14));
    REQUIRE_THAT(v.z, Catch::Matchers::WithinAbs(0.0, 1e-14));
}

TEST_CASE("symPoint ignores lambda-independent right factors", "[surface]") {
    auto g = pstest::rng(601);
    const FactorChain c = pstest::randomChain(g, 12);
    FactorChain shifted = c;
    shifted.push(PhaseFactor{0.9});
    shifted.push(PhaseFactor{-0.2});
    for (double l : {0.5, 1.0, 2.3})
        REQUIRE(maxAbsDiff(symPoint(c, l), symPoint(shifted, l)) < 1e-12);
}

TEST_CASE("symPoint of the empty chain is the origin", "[surface]") {
    REQUIRE(maxAbsDiff(symPoint(FactorChain{}, 1.0), Vector3{}) == 0.0);
    REQUIRE_THROWS_AS(symPoint(FactorChain{}, 0.0), std::domain_error);
    REQUIRE_THROWS_AS(symPoint(FactorChain{}, -1.0), std::domain_error);
}

TEST_CASE("sym points of loop chains stay in su2 across the family", "[surface]") {
    auto g = pstest::rng(602);
    for (int i = 0; i < 20; ++i) {
        const FactorChain c = pstest::randomChain(g, 15);
        for (double l : {0.4, 0.9, 1.0, 1.7, 3.1}) {
            const Mat2 f = evalChain(c, cplx{l});
            const Mat2 x = l * (lambdaDerivativeChain(c, l) * f.inverseUnimodular());
            REQUIRE(su2Residual(x) < 1e-10);
            REQUIRE_NOTHROW(symPoint(c, l));
        }
    }
}

TEST_CASE("symMesh equals pointwise symPoint regardless of threading", "[surface]") {
    auto g = pstest::rng(603);
    const NormalizedPotentials pot = pstest::randomPotentials(g, 4, 4);
    const FrameGrid frames = buildFrames(pot, 4, 4, false);
    const SurfaceMesh mesh = symMesh(frames, 1.3);
    for (int n = 0; n <= 4; ++n)
        for (int m = 0; m <= 4; ++m)
            REQUIRE(maxAbsDiff(mesh.at(n, m), symPoint(frames.at(n, m), 1.3)) == 0.0);
}

TEST_CASE("planar lattice passes the PS geometry checks trivially", "[surface]") {
    SurfaceMesh mesh;
    mesh.N = mesh.M = 4;
    mesh.vertices.resize(25);
    for (int n = 0; n <= 4; ++n)
        for (int m = 0; m <= 4; ++m) mesh.at(n, m) = Vector3{double(n), double(m), 0.0};
    const MeshChecks checks = checkDiscretePS(mesh);
    REQUIRE(checks.coplanarityMax == 0.0);
    REQUIRE(checks.oppositeEdgeMax == 0.0);
    REQUIRE(checks.coplanarity.size() == 9);
    REQUIRE(checks.oppositeEdge.size() == 16);
}

TEST_CASE("degenerate meshes are reported, not thrown", "[surface]") {
    SurfaceMesh mesh;
    mesh.N = mesh.M = 2;
    mesh.vertices.assign(9, Vector3{});  // every vertex collapsed
    const MeshChecks checks = checkDiscretePS(mesh);
    REQUIRE(std::isinf(checks.coplanarityMax));
    REQUIRE(checks.oppositeEdgeMax == 0.0);
}

TEST_CASE("the revolution surfaces are discrete pseudospherical", "[surface]") {
    const FrameGrid frames = buildFrames(revolutionPotentials(0.8, 8), 8, 8, false);
    for (double lambda : {1.0, 1.5}) {
        const MeshChecks checks = checkDiscretePS(symMesh(frames, lambda));
        INFO("lambda " << lambda << " coplanarity " << checks.coplanarityMax << " opposite edge "
                       << checks.oppositeEdgeMax);
        REQUIRE(checks.coplanarityMax < 1e-12);
        REQUIRE(checks.oppositeEdgeMax < 1e-12);
    }
}

TEST_CASE("transition extraction recovers the lattice data", "[surface]") {
    auto g = pstest::rng(604);
    const int N = 4, M = 4;
    const NormalizedPotentials pot = pstest::randomPotentials(g, N, M);
    const FrameGrid frames = buildFrames(pot, N, M, false);
    const HirotaGrid grid = hirotaGridFromPotentials(pot, N, M);
    const std::vector<double> probes{0.6, 1.0, 1.7};
    for (int n = 0; n < N; ++n)
        for (int m = 0; m < M; ++m) {
            const double hint = pot.q[m] < 0 ? -1.0 : 1.0;
            const CellTransitions cell = extractTransitions(frames, n, m, probes, hint);
            REQUIRE(cell.fitResidual < 1e-10);
            REQUIRE_THAT(cell.p, Catch::Matchers::WithinAbs(pot.p[n], 1e-10));
            REQUIRE_THAT(cell.q, Catch::Matchers::WithinAbs(pot.q[m], 1e-10));
            REQUIRE(pstest::mod4piDistance(cell.uDiff, grid.at(n + 1, m) - grid.at(n, m)) < 1e-10);
            REQUIRE(pstest::mod4piDistance(cell.uSum, grid.at(n, m + 1) + grid.at(n, m)) < 1e-10);
        }
}

TEST_CASE("the q sign hint is a pure gauge", "[surface]") {
    auto g = pstest::rng(605);
    const int N = 3, M = 3;
    const NormalizedPotentials pot = pstest::randomPotentials(g, N, M);
    const FrameGrid frames = buildFrames(pot, N, M, false);
    const std::vector<double> probes{0.6, 1.0, 1.7};
    const CellTransitions plusHint = extractTransitions(frames, 1, 1, probes, 1.0);
    const CellTransitions minusHint = extractTransitions(frames, 1, 1, probes, -1.0);
    REQUIRE_THAT(plusHint.q, Catch::Matchers::WithinAbs(-minusHint.q, 1e-13));
    REQUIRE(pstest::mod4piDistance(plusHint.uSum, minusHint.uSum + 2 * std::numbers::pi) < 1e-10);
    // the U side is hint-independent
    REQUIRE(plusHint.p == minusHint.p);
    REQUIRE(plusHint.uDiff == minusHint.uDiff);
}

TEST_CASE("recoverPotentials round-trips alpha, beta, p, q", "[surface]") {
    auto g = pstest::rng(606);
    const int N = 5, M = 5;
    const NormalizedPotentials pot = pstest::randomPotentials(g, N, M);
    const FrameGrid frames = buildFrames(pot, N, M, false);
    const std::vector<double> probes{0.6, 1.0, 1.7};
    std::vector<double> hints(M);
    for (int m = 0; m < M; ++m) hints[m] = pot.q[m] < 0 ? -1.0 : 1.0;

    const RecoveredPotentials rec = recoverPotentials(frames, probes, hints);
    REQUIRE(rec.maxFitResidual < 1e-10);
    for (int n = 0; n < N; ++n) {
        REQUIRE_THAT(rec.grid.p[n], Catch::Matchers::WithinAbs(pot.p[n], 1e-10));
        REQUIRE(pstest::mod2piDistance(rec.alpha[n], pot.alpha[n]) < 1e-10);
    }
    for (int m = 0; m < M; ++m) {
        REQUIRE_THAT(rec.grid.q[m], Catch::Matchers::WithinAbs(pot.q[m], 1e-10));
        REQUIRE(pstest::mod2piDistance(rec.beta[m], pot.beta[m]) < 1e-10);
    }
    REQUIRE(hirotaResidual(rec.grid) < 1e-10);
}

TEST_CASE("recovered Hirota residual is hint-invariant", "[surface]") {
    auto g = pstest::rng(607);
    const int N = 4, M = 4;
    const NormalizedPotentials pot = pstest::randomPotentials(g, N, M);
    const FrameGrid frames = buildFrames(pot, N, M, false);
    const std::vector<double> probes{0.6, 1.0, 1.7};
    // default hints: recovered (beta, q) may flip to the equivalent gauge
    // (beta + pi, -q), but the lattice residual cannot see the difference
    const RecoveredPotentials rec = recoverPotentials(frames, probes);
    REQUIRE(rec.maxFitResidual < 1e-10);
    REQUIRE(hirotaResidual(rec.grid) < 1e-10);
    for (int m = 0; m < M; ++m) {
        const bool straight = pstest::mod2piDistance(rec.beta[m], pot.beta[m]) < 1e-9 &&
                              std::abs(rec.grid.q[m] - pot.q[m]) < 1e-9;
        const bool flipped =
            pstest::mod2piDistance(rec.beta[m], pot.beta[m] + std::numbers::pi) < 1e-9 &&
            std::abs(rec.grid.q[m] + pot.q[m]) < 1e-9;
        REQUIRE((straight || flipped));
    }
}

TEST_CASE("verifySurface produces a clean report on valid surfaces", "[surface]") {
    const FrameGrid frames = buildFrames(revolutionPotentials(0.8, 8), 6, 6, true);
    const VerificationReport rep = verifySurface(frames, 1.0);
    REQUIRE(rep.coplanarityMax < 1e-10);
    REQUIRE(rep.oppositeEdgeMax < 1e-10);
    REQUIRE(rep.hirotaResidualMax < 1e-10);
    REQUIRE(rep.unitarityMax < 1e-11);
    REQUIRE(rep.frameCrossCheckMax < 1e-11);
    REQUIRE(rep.coplanarity.size() == 25);
    REQUIRE(rep.oppositeEdge.size() == 36);
    REQUIRE(rep.hirotaResidual.size() == 36);
    REQUIRE(rep.unitarity.size() == 49);
    REQUIRE(rep.frameCrossCheck.size() == 49);
    REQUIRE(rep.withinGeometric(1e-9));
    REQUIRE(rep.withinAlgebraic(1e-10));
}

TEST_CASE("verifySurface needs the alternate assembly", "[surface]") {
    const FrameGrid frames = buildFrames(revolutionPotentials(0.8, 8), 3, 3, false);
    REQUIRE_THROWS_AS(verifySurface(frames, 1.0), std::invalid_argument);
}

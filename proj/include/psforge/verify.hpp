#pragma once
// Discrete pseudospherical validity checks and the full verification pass.
//
// A quad mesh is discrete-PS when every interior vertex star is planar and
// every quad has opposite edges of equal length.  Both are measured as
// scale-free residuals:
//
//   coplanarity(n,m)  = (|det[v1 v2 v1b]| + |det[v1 v2 v2b]|) / meanEdge^3
//   oppositeEdge(n,m) = max | |edge| - |opposite edge| |
//
// The full pass re-derives the Hirota data from fitted transitions, checks
// unitarity of the frames at the construction lambda, and compares the two
// Birkhoff assemblies of each frame.  Everything is reported, not thrown:
// degenerate geometry shows up as an infinite residual.

#include <limits>

#include "transitions.hpp"

namespace psforge {

struct MeshChecks {
    double coplanarityMax = 0.0;
    double oppositeEdgeMax = 0.0;
    std::vector<double> coplanarity;   // (N-1)*(M-1), interior vertices, row-major
    std::vector<double> oppositeEdge;  // N*M, quads, row-major
};

inline MeshChecks checkDiscretePS(const SurfaceMesh& mesh) {
    MeshChecks out;
    const int N = mesh.N, M = mesh.M;
    out.coplanarity.assign(std::max(0, N - 1) * std::max(0, M - 1), 0.0);
    out.oppositeEdge.assign(N * M, 0.0);
    for (int n = 1; n < N; ++n)
        for (int m = 1; m < M; ++m) {
            const Vector3& f = mesh.at(n, m);
            const Vector3 v1 = mesh.at(n + 1, m) - f;
            const Vector3 v2 = mesh.at(n, m + 1) - f;
            const Vector3 v1b = mesh.at(n - 1, m) - f;
            const Vector3 v2b = mesh.at(n, m - 1) - f;
            const double meanEdge = 0.25 * (norm(v1) + norm(v2) + norm(v1b) + norm(v2b));
            const double vol = std::abs(tripleProduct(v1, v2, v1b)) + std::abs(tripleProduct(v1, v2, v2b));
            const double res = meanEdge > 0.0 ? vol / (meanEdge * meanEdge * meanEdge)
                                              : std::numeric_limits<double>::infinity();
            out.coplanarity[(n - 1) * (M - 1) + (m - 1)] = res;
            out.coplanarityMax = std::max(out.coplanarityMax, res);
        }
    for (int n = 0; n < N; ++n)
        for (int m = 0; m < M; ++m) {
            const double e1 = norm(mesh.at(n + 1, m) - mesh.at(n, m));
            const double e1o = norm(mesh.at(n + 1, m + 1) - mesh.at(n, m + 1));
            const double e2 = norm(mesh.at(n, m + 1) - mesh.at(n, m));
            const double e2o = norm(mesh.at(n + 1, m + 1) - mesh.at(n + 1, m));
            const double res = std::max(std::abs(e1 - e1o), std::abs(e2 - e2o));
            out.oppositeEdge[n * M + m] = res;
            out.oppositeEdgeMax = std::max(out.oppositeEdgeMax, res);
        }
    return out;
}

struct VerificationReport {
    int N = 0, M = 0;
    double lambda = 1.0;
    double coplanarityMax = 0.0;
    double oppositeEdgeMax = 0.0;
    double hirotaResidualMax = 0.0;
    double unitarityMax = 0.0;
    double frameCrossCheckMax = 0.0;
    std::vector<double> coplanarity;      // (N-1)*(M-1)
    std::vector<double> oppositeEdge;     // N*M
    std::vector<double> hirotaResidual;   // N*M
    std::vector<double> unitarity;        // (N+1)*(M+1)
    std::vector<double> frameCrossCheck;  // (N+1)*(M+1)

    bool withinGeometric(double tol) const {
        return coplanarityMax <= tol && oppositeEdgeMax <= tol;
    }
    bool withinAlgebraic(double tol) const {
        return hirotaResidualMax <= tol && unitarityMax <= tol && frameCrossCheckMax <= tol;
    }
};

// Full verification of one surface of the associated family.  The frame
// grid must carry the alternate assembly (the cross-check needs it).
inline VerificationReport verifySurface(const FrameGrid& frames, double lambda) {
    if (!frames.hasAlternate)
        throw std::invalid_argument("verifySurface: frame grid lacks the alternate assembly");
    if (!(lambda > 0.0)) throw std::domain_error("verifySurface: lambda must be positive");

    VerificationReport rep;
    rep.N = frames.N;
    rep.M = frames.M;
    rep.lambda = lambda;

    const SurfaceMesh mesh = symMesh(frames, lambda);
    MeshChecks geo = checkDiscretePS(mesh);
    rep.coplanarityMax = geo.coplanarityMax;
    rep.oppositeEdgeMax = geo.oppositeEdgeMax;
    rep.coplanarity = std::move(geo.coplanarity);
    rep.oppositeEdge = std::move(geo.oppositeEdge);

    rep.unitarity.assign((frames.N + 1) * (frames.M + 1), 0.0);
    rep.frameCrossCheck.assign((frames.N + 1) * (frames.M + 1), 0.0);
    parallelFor(0, frames.N + 1, [&](int n) {
        for (int m = 0; m <= frames.M; ++m) {
            const Mat2 f = evalChain(frames.at(n, m), cplx{lambda});
            rep.unitarity[frames.index(n, m)] = specialUnitarityResidual(f);
            rep.frameCrossCheck[frames.index(n, m)] =
                maxAbsDiff(f, evalChain(frames.alternateAt(n, m), cplx{lambda}));
        }
    });
    for (double v : rep.unitarity) rep.unitarityMax = std::max(rep.unitarityMax, v);
    for (double v : rep.frameCrossCheck) rep.frameCrossCheckMax = std::max(rep.frameCrossCheckMax, v);

    const double probes[] = {0.6 * lambda, lambda, 1.7 * lambda};
    const RecoveredPotentials rec = recoverPotentials(frames, probes);
    rep.hirotaResidual.assign(frames.N * frames.M, 0.0);
    double worst = 0.0;
    for (int n = 0; n < frames.N; ++n)
        for (int m = 0; m < frames.M; ++m) {
            const double r = hirotaResidualAt(rec.grid, n, m);
            rep.hirotaResidual[n * frames.M + m] = r;
            worst = std::max(worst, r);
        }
    rep.hirotaResidualMax = std::max(worst, rec.maxFitResidual);
    return rep;
}

}  // namespace psforge

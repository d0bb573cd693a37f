#pragma once
// Discrete sine-Gordon (Hirota) lattice
//
//   sin((u12 - u1 - u2 + u)/4) = (p q / 4) sin((u12 + u1 + u2 + u)/4),
//
// solved for u12 in closed form: with k = pq/4, S = (u1+u2)/4 and T =
// (u12+u)/4 the equation reads sin(T - S) = k sin(T + S), i.e.
// tan T = tan S (1+k)/(1-k) on the branch containing S.  |k| < 1 holds under
// the standing assumption |p|/2, |q|/2 < 1, so the step never degenerates;
// the branch is pinned to keep T in the same pi-window as S, which makes the
// step continuous in (u1 + u2) and exact for the axis data.
//
// Also here: the direct lattice integrator used as the oracle for the
// d'Alembert pipeline.  It works on plain matrices via the discrete moving
// frame one-step transitions
//
//   U(n,m) = (1/D+) [[ e^{-i du/2}, (i/2) p lam ], [ (i/2) p lam, e^{i du/2} ]]
//   V(n,m) = (1/D-) [[ 1, -(i/2) q e^{ i su/2} / lam ],
//                    [    -(i/2) q e^{-i su/2} / lam, 1 ]]
//
// (du = u1 - u, su = u2 + u, D± the usual normalizers); its Sym points come
// from Richardson-extrapolated central differences, deliberately sharing no
// code with the factor-chain evaluation.

#include <cmath>
#include <numbers>

#include "sym.hpp"

namespace psforge {

inline double hirotaStep(double u, double u1, double u2, double p, double q) {
    const double k = p * q / 4.0;
    if (!(std::abs(k) < 1.0)) throw std::domain_error("hirotaStep: need |p q / 4| < 1");
    const double s = (u1 + u2) / 4.0;
    const double j = std::floor(s / std::numbers::pi + 0.5);
    const double s0 = s - j * std::numbers::pi;
    const double r = (1.0 + k) / (1.0 - k);
    const double t = j * std::numbers::pi + std::atan2(r * std::sin(s0), std::cos(s0));
    return 4.0 * t - u;
}

inline double hirotaEquationResidual(double u, double u1, double u2, double u12, double p, double q) {
    return std::abs(std::sin((u12 - u1 - u2 + u) / 4.0) -
                    (p * q / 4.0) * std::sin((u12 + u1 + u2 + u) / 4.0));
}

struct HirotaGrid {
    int N = 0, M = 0;
    std::vector<double> u;  // (N+1)*(M+1), row-major in n
    std::vector<double> p;  // N entries
    std::vector<double> q;  // M entries

    int index(int n, int m) const {
        if (n < 0 || m < 0 || n > N || m > M) throw std::out_of_range("HirotaGrid: vertex outside window");
        return n * (M + 1) + m;
    }
    double& at(int n, int m) { return u[index(n, m)]; }
    double at(int n, int m) const { return u[index(n, m)]; }
};

// Axis data u(n,0), u(0,m) from the potential functions (u(0,0) = 0, the
// same gauge the frame construction induces), interior by the closed-form
// step.
inline HirotaGrid hirotaGridFromPotentials(const NormalizedPotentials& pot, int N, int M) {
    pot.requireWindow(N, M);
    HirotaGrid g;
    g.N = N;
    g.M = M;
    g.u.assign((N + 1) * (M + 1), 0.0);
    g.p.assign(pot.p.begin(), pot.p.begin() + N);
    g.q.assign(pot.q.begin(), pot.q.begin() + M);
    for (int n = 0; n < N; ++n) g.at(n + 1, 0) = 2.0 * pot.alpha[n] - g.at(n, 0);
    for (int m = 0; m < M; ++m) g.at(0, m + 1) = 2.0 * pot.beta[m] - g.at(0, m);
    for (int n = 0; n < N; ++n)
        for (int m = 0; m < M; ++m)
            g.at(n + 1, m + 1) = hirotaStep(g.at(n, m), g.at(n + 1, m), g.at(n, m + 1), g.p[n], g.q[m]);
    return g;
}

inline double hirotaResidualAt(const HirotaGrid& g, int n, int m) {
    return hirotaEquationResidual(g.at(n, m), g.at(n + 1, m), g.at(n, m + 1), g.at(n + 1, m + 1),
                                  g.p.at(n), g.q.at(m));
}

inline double hirotaResidual(const HirotaGrid& g) {
    double worst = 0.0;
    for (int n = 0; n < g.N; ++n)
        for (int m = 0; m < g.M; ++m) worst = std::max(worst, hirotaResidualAt(g, n, m));
    return worst;
}

// ------------------------------------------------------- oracle integrator

inline Mat2 transitionU(double du, double p, double lambda) {
    const double dp = std::sqrt(1.0 + 0.25 * p * p * lambda * lambda);
    const cplx e = std::exp(-0.5 * kI * du);
    const cplx off = 0.5 * kI * p * lambda;
    return {e / dp, off / dp, off / dp, std::conj(e) / dp};
}

inline Mat2 transitionV(double su, double q, double lambda) {
    const double dm = std::sqrt(1.0 + 0.25 * q * q / (lambda * lambda));
    const cplx off = -0.5 * kI * q / lambda;
    return {cplx{1.0 / dm}, off * std::exp(0.5 * kI * su) / dm,
            off * std::exp(-0.5 * kI * su) / dm, cplx{1.0 / dm}};
}

struct OracleSurface {
    HirotaGrid grid;
    double lambda = 1.0;
    std::vector<Mat2> frames;  // (N+1)*(M+1), row-major in n
    SurfaceMesh mesh;
    double pathDeviation = 0.0;  // n-first vs m-first integration

    const Mat2& frameAt(int n, int m) const { return frames[grid.index(n, m)]; }
};

inline OracleSurface hirotaOracleSurface(const NormalizedPotentials& pot, int N, int M, double lambda) {
    if (!(lambda > 0.0)) throw std::domain_error("hirotaOracleSurface: lambda must be positive");
    OracleSurface o;
    o.grid = hirotaGridFromPotentials(pot, N, M);
    o.lambda = lambda;
    const HirotaGrid& g = o.grid;

    auto framesAt = [&](double l) {
        std::vector<Mat2> f((N + 1) * (M + 1));
        f[g.index(0, 0)] = Mat2::identity();
        for (int n = 0; n < N; ++n)
            f[g.index(n + 1, 0)] =
                f[g.index(n, 0)] * transitionU(g.at(n + 1, 0) - g.at(n, 0), g.p[n], l);
        for (int n = 0; n <= N; ++n)
            for (int m = 0; m < M; ++m)
                f[g.index(n, m + 1)] =
                    f[g.index(n, m)] * transitionV(g.at(n, m + 1) + g.at(n, m), g.q[m], l);
        return f;
    };
    o.frames = framesAt(lambda);

    // other integration order; agreement = discrete zero-curvature check
    {
        std::vector<Mat2> f2((N + 1) * (M + 1));
        f2[g.index(0, 0)] = Mat2::identity();
        for (int m = 0; m < M; ++m)
            f2[g.index(0, m + 1)] =
                f2[g.index(0, m)] * transitionV(g.at(0, m + 1) + g.at(0, m), g.q[m], lambda);
        for (int m = 0; m <= M; ++m)
            for (int n = 0; n < N; ++n)
                f2[g.index(n + 1, m)] =
                    f2[g.index(n, m)] * transitionU(g.at(n + 1, m) - g.at(n, m), g.p[n], lambda);
        for (std::size_t i = 0; i < o.frames.size(); ++i)
            o.pathDeviation = std::max(o.pathDeviation, maxAbsDiff(o.frames[i], f2[i]));
    }

    // Sym via Richardson-extrapolated central differences
    const double h = 1e-5;
    const auto fP = framesAt(lambda + h), fM = framesAt(lambda - h);
    const auto fPh = framesAt(lambda + 0.5 * h), fMh = framesAt(lambda - 0.5 * h);
    o.mesh.N = N;
    o.mesh.M = M;
    o.mesh.lambda = lambda;
    o.mesh.vertices.resize((N + 1) * (M + 1));
    for (int n = 0; n <= N; ++n)
        for (int m = 0; m <= M; ++m) {
            const int i = g.index(n, m);
            const Mat2 d1 = (1.0 / (2.0 * h)) * (fP[i] - fM[i]);
            const Mat2 d2 = (1.0 / h) * (fPh[i] - fMh[i]);
            const Mat2 df = (1.0 / 3.0) * (4.0 * d2 - d1);
            const Mat2 x = lambda * (df * o.frames[i].inverseUnimodular());
            o.mesh.vertices[i] = fromSu2(x, 1e-6);  // FD noise dominates here
        }
    return o;
}

}  // namespace psforge

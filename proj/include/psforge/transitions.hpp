#pragma once
// Transition-matrix extraction: read the Hirota data back off a frame grid.
//
// T^U = F(n,m)^{-1} F(n+1,m) and T^V = F(n,m)^{-1} F(n,m+1) must match the
// one-step templates of the discrete moving frame; fitting them across a few
// lambda samples recovers p(n), q(m) and the edge data u1 - u and u2 + u,
// hence u itself (up to the u(0,0) = 0 gauge) and the potential functions
//
//   alpha(n) = (u(n,0) + u(n+1,0))/2,   beta(m) = (u(0,m) + u(0,m+1))/2.
//
// Frames assembled from generalized potential chains sit in a diagonally
// rotated gauge: T^U picks up a constant diagonal phase per column n while
// T^V stays template-shaped under conjugation by that same phase (the V
// template absorbs equal-endpoint conjugation into usum). The gauge angles
// w(n) are read off arg T^U_12 along row 0, defined mod pi (the leftover
// sign flip is the usual p-sign gauge), and vanish identically for frames
// built from normalized potentials.
//
// The V template is invariant under (q, usum) -> (-q, usum + 2 pi), so the
// sign of q is a genuine gauge choice; callers supply a hint (default +1).
// All downstream residuals are invariant under that flip.

#include <span>

#include "hirota.hpp"

namespace psforge {

namespace detail {

inline Mat2 frameTransition(const FrameGrid& frames, int n, int m, int dn, int dm, double l) {
    const Mat2 base = evalChain(frames.at(n, m), cplx{l});
    return base.inverseUnimodular() * evalChain(frames.at(n + dn, m + dm), cplx{l});
}

inline Mat2 gaugeDiag(double g) {
    return Mat2{std::exp(kI * g), cplx{}, cplx{}, std::exp(-kI * g)};
}

// w(0) = 0 and w(n) + w(n+1) = arg T^U_12(n,0) - pi/2 (mod pi): exactly the
// diagonal conjugation that makes the off-diagonal of every U transition
// purely imaginary again.
inline std::vector<double> columnGauges(const FrameGrid& frames, double anchorLambda) {
    std::vector<double> w(frames.N + 1, 0.0);
    for (int n = 0; n < frames.N; ++n) {
        const Mat2 t = frameTransition(frames, n, 0, 1, 0, anchorLambda);
        const double phi = std::arg(t.m12);
        w[n + 1] = std::remainder(phi - w[n] - 0.5 * std::numbers::pi, std::numbers::pi);
    }
    return w;
}

struct UFit {
    double p = 0.0, uDiff = 0.0, residual = 0.0;
};

struct VFit {
    double q = 0.0, uSum = 0.0, residual = 0.0;
};

// |T12|^2 = (p/2)^2 lam^2 / (1 + (p/2)^2 lam^2), sign(p) = sign(Im T12),
// then  sum_lam T11 D+  ~  e^{-i uDiff / 2}.
inline UFit fitUTransition(const FrameGrid& frames, int n, int m, std::span<const double> lambdas,
                           double wLeft, double wRight) {
    UFit fit;
    const Mat2 gl = gaugeDiag(-wLeft), gr = gaugeDiag(wRight);
    double pAcc = 0.0;
    for (double l : lambdas) {
        const Mat2 t = gl * frameTransition(frames, n, m, 1, 0, l) * gr;
        const double t12sq = std::norm(t.m12);
        if (!(t12sq < 1.0)) throw std::domain_error("fitUTransition: degenerate U transition");
        const double psq = 4.0 * t12sq / (l * l * (1.0 - t12sq));
        pAcc += std::copysign(std::sqrt(psq), t.m12.imag());
    }
    fit.p = pAcc / static_cast<double>(lambdas.size());
    if (std::abs(fit.p) < 1e-12)
        throw std::domain_error("fitUTransition: vanishing p, u-difference undetermined");
    cplx z{};
    for (double l : lambdas) {
        const Mat2 t = gl * frameTransition(frames, n, m, 1, 0, l) * gr;
        z += t.m11 * std::sqrt(1.0 + 0.25 * fit.p * fit.p * l * l);
    }
    fit.uDiff = -2.0 * std::arg(z);
    for (double l : lambdas)
        fit.residual =
            std::max(fit.residual, maxAbsDiff(gl * frameTransition(frames, n, m, 1, 0, l) * gr,
                                              transitionU(fit.uDiff, fit.p, l)));
    return fit;
}

// |T12|^2 = (q/2)^2 / (lam^2 + (q/2)^2),  then  2 i lam D- T12 = q e^{i uSum / 2}.
inline VFit fitVTransition(const FrameGrid& frames, int n, int m, std::span<const double> lambdas,
                           double qSignHint, double wColumn) {
    VFit fit;
    const Mat2 gl = gaugeDiag(-wColumn), gr = gaugeDiag(wColumn);
    double qAcc = 0.0;
    for (double l : lambdas) {
        const Mat2 t = gl * frameTransition(frames, n, m, 0, 1, l) * gr;
        const double t12sq = std::norm(t.m12);
        if (!(t12sq < 1.0)) throw std::domain_error("fitVTransition: degenerate V transition");
        qAcc += std::sqrt(4.0 * t12sq * l * l / (1.0 - t12sq));
    }
    const double qMag = qAcc / static_cast<double>(lambdas.size());
    if (qMag < 1e-12) throw std::domain_error("fitVTransition: vanishing q, u-sum undetermined");
    fit.q = (qSignHint < 0.0 ? -1.0 : 1.0) * qMag;
    cplx w{};
    for (double l : lambdas) {
        const Mat2 t = gl * frameTransition(frames, n, m, 0, 1, l) * gr;
        w += 2.0 * kI * l * std::sqrt(1.0 + 0.25 * qMag * qMag / (l * l)) * t.m12;
    }
    fit.uSum = 2.0 * std::arg(w / fit.q);
    for (double l : lambdas)
        fit.residual =
            std::max(fit.residual, maxAbsDiff(gl * frameTransition(frames, n, m, 0, 1, l) * gr,
                                              transitionV(fit.uSum, fit.q, l)));
    return fit;
}

}  // namespace detail

struct CellTransitions {
    double uDiff = 0.0;  // u(n+1, m) - u(n, m)
    double uSum = 0.0;   // u(n, m+1) + u(n, m)
    double p = 0.0;
    double q = 0.0;
    double fitResidual = 0.0;  // worst template deviation over the samples
};

inline CellTransitions extractTransitions(const FrameGrid& frames, int n, int m,
                                          std::span<const double> lambdas, double qSignHint = 1.0) {
    if (lambdas.empty()) throw std::invalid_argument("extractTransitions: need lambda samples");
    if (n < 0 || m < 0 || n >= frames.N || m >= frames.M)
        throw std::out_of_range("extractTransitions: cell outside window");
    const std::vector<double> w = detail::columnGauges(frames, lambdas[lambdas.size() / 2]);
    const detail::UFit u = detail::fitUTransition(frames, n, m, lambdas, w[n], w[n + 1]);
    const detail::VFit v = detail::fitVTransition(frames, n, m, lambdas, qSignHint, w[n]);
    const CellTransitions out{u.uDiff, v.uSum, u.p, v.q, std::max(u.residual, v.residual)};
    if (out.fitResidual > 1e-6)
        throw std::domain_error("extractTransitions: transitions do not fit the one-step templates");
    return out;
}

struct RecoveredPotentials {
    std::vector<double> alpha, beta;
    HirotaGrid grid;  // u over the full window plus the recovered p, q
    double maxFitResidual = 0.0;
};

// Rebuild the Hirota data of a frame grid: u along row 0 from the U
// transitions, u everywhere else from the V transitions, p(n) from row 0,
// q(m) from column 0.
inline RecoveredPotentials recoverPotentials(const FrameGrid& frames, std::span<const double> lambdas,
                                             std::span<const double> qSignHints = {}) {
    if (lambdas.empty()) throw std::invalid_argument("recoverPotentials: need lambda samples");
    if (frames.N < 1 || frames.M < 1)
        throw std::invalid_argument("recoverPotentials: need at least a 1x1 window");
    if (!qSignHints.empty() && qSignHints.size() != static_cast<std::size_t>(frames.M))
        throw std::invalid_argument("recoverPotentials: need one q sign hint per column");

    RecoveredPotentials out;
    out.grid.N = frames.N;
    out.grid.M = frames.M;
    out.grid.u.assign((frames.N + 1) * (frames.M + 1), 0.0);
    out.grid.p.assign(frames.N, 0.0);
    out.grid.q.assign(frames.M, 0.0);

    const std::vector<double> w = detail::columnGauges(frames, lambdas[lambdas.size() / 2]);
    for (int n = 0; n < frames.N; ++n) {
        const detail::UFit fit = detail::fitUTransition(frames, n, 0, lambdas, w[n], w[n + 1]);
        out.grid.p[n] = fit.p;
        out.grid.at(n + 1, 0) = out.grid.at(n, 0) + fit.uDiff;
        out.maxFitResidual = std::max(out.maxFitResidual, fit.residual);
    }
    for (int m = 0; m < frames.M; ++m) {
        const double hint = qSignHints.empty() ? 1.0 : qSignHints[m];
        for (int n = 0; n <= frames.N; ++n) {
            const detail::VFit fit = detail::fitVTransition(frames, n, m, lambdas, hint, w[n]);
            if (n == 0) out.grid.q[m] = fit.q;
            out.grid.at(n, m + 1) = fit.uSum - out.grid.at(n, m);
            out.maxFitResidual = std::max(out.maxFitResidual, fit.residual);
        }
    }

    out.alpha.resize(frames.N);
    for (int n = 0; n < frames.N; ++n) out.alpha[n] = 0.5 * (out.grid.at(n, 0) + out.grid.at(n + 1, 0));
    out.beta.resize(frames.M);
    for (int m = 0; m < frames.M; ++m) out.beta[m] = 0.5 * (out.grid.at(0, m) + out.grid.at(0, m + 1));
    return out;
}

}  // namespace psforge

#pragma once
// The nonlinear d'Alembert construction: potentials -> extended frames.
//
// For normalized potentials the generating loop at (n, m) is
//
//   C(n,m) = (F+(n) d(k(n)/2))^{-1} G-(m),
//
// and with the Birkhoff split C = V- V+ the extended frame is
//
//   F(n,m) = F+(n) d(k(n)/2) V-        (primary assembly)
//          = G-(m) V+^{-1}             (alternate assembly, same product).
//
// Generalized potentials replace the two prefixes by ordered products of the
// per-step chains eta_n, eta_m.  Frames are represented as factor chains,
// never as matrices, so every lambda stays available downstream.
//
// A whole window is built row-incrementally: fix n, split the inverted
// prefix once, then append one xi-(m) (or eta_m chain) per column, which the
// incremental split absorbs with a single swap sweep.  Rows are independent,
// hence row-parallel.

#include "birkhoff.hpp"
#include "parallel.hpp"
#include "potentials.hpp"

namespace psforge {

struct FrameGrid {
    int N = 0, M = 0;
    bool hasAlternate = false;
    std::vector<FactorChain> primary;    // (N+1)*(M+1), row-major in n
    std::vector<FactorChain> alternate;  // filled when hasAlternate

    int index(int n, int m) const {
        if (n < 0 || m < 0 || n > N || m > M) throw std::out_of_range("FrameGrid: vertex outside window");
        return n * (M + 1) + m;
    }
    const FactorChain& at(int n, int m) const { return primary[index(n, m)]; }
    const FactorChain& alternateAt(int n, int m) const {
        if (!hasAlternate) throw std::logic_error("FrameGrid: alternate assembly was not built");
        return alternate[index(n, m)];
    }
};

namespace detail {

// One row of the window: prefix * vMinus per column, and optionally the
// alternate assembly minusSteps(0..m-1) * vPlus^{-1}.
template <typename MinusStep>
void buildFrameRow(FrameGrid& grid, int n, const FactorChain& prefix, MinusStep&& minusStep) {
    IncrementalSplit split;
    split.append(invertChain(prefix));
    FactorChain minusPrefix;
    for (int m = 0; m <= grid.M; ++m) {
        if (m > 0) {
            const FactorChain step = minusStep(m - 1);
            split.append(step);
            minusPrefix.append(step);
        }
        grid.primary[grid.index(n, m)] = prefix + split.minusChain();
        if (grid.hasAlternate)
            grid.alternate[grid.index(n, m)] = minusPrefix + invertChain(split.plusChain());
    }
}

}  // namespace detail

inline FrameGrid buildFrames(const NormalizedPotentials& pot, int N, int M, bool withAlternate = false) {
    pot.requireWindow(N, M);
    FrameGrid grid;
    grid.N = N;
    grid.M = M;
    grid.hasAlternate = withAlternate;
    grid.primary.resize((N + 1) * (M + 1));
    if (withAlternate) grid.alternate.resize((N + 1) * (M + 1));
    parallelFor(0, N + 1, [&](int n) {
        FactorChain prefix = solveFramePlus(pot, n);
        prefix.push(phaseK(pot, n));
        detail::buildFrameRow(grid, n, prefix, [&](int m) {
            FactorChain step;
            step.push(xiMinus(pot, m));
            return step;
        });
    });
    return grid;
}

inline FrameGrid buildFrames(const GeneralizedPotentials& pot, int N, int M, bool withAlternate = false) {
    if (N < 0 || M < 0) throw std::invalid_argument("buildFrames: window must be nonnegative");
    FrameGrid grid;
    grid.N = N;
    grid.M = M;
    grid.hasAlternate = withAlternate;
    grid.primary.resize((N + 1) * (M + 1));
    if (withAlternate) grid.alternate.resize((N + 1) * (M + 1));
    parallelFor(0, N + 1, [&](int n) {
        FactorChain prefix;
        for (int j = 0; j < n; ++j) prefix.append(pot.etaN(j));
        detail::buildFrameRow(grid, n, prefix, [&](int m) { return pot.etaM(m); });
    });
    return grid;
}

// Single-vertex variants, assembled through the batch split; the grid
// builder above must agree with these (it does, see the tests).
inline FactorChain extendedFrame(const NormalizedPotentials& pot, int n, int m) {
    pot.requireWindow(n, m);
    FactorChain prefix = solveFramePlus(pot, n);
    prefix.push(phaseK(pot, n));
    const BirkhoffParts split = birkhoffSplit(invertChain(prefix) + solveFrameMinus(pot, m));
    return prefix + split.minus;
}

inline FactorChain extendedFrameAlternate(const NormalizedPotentials& pot, int n, int m) {
    pot.requireWindow(n, m);
    FactorChain prefix = solveFramePlus(pot, n);
    prefix.push(phaseK(pot, n));
    const FactorChain gMinus = solveFrameMinus(pot, m);
    const BirkhoffParts split = birkhoffSplit(invertChain(prefix) + gMinus);
    return gMinus + invertChain(split.plus);
}

inline FactorChain frameFromGeneralized(const GeneralizedPotentials& pot, int n, int m) {
    if (n < 0 || m < 0) throw std::invalid_argument("frameFromGeneralized: indices must be nonnegative");
    FactorChain prefix;
    for (int j = 0; j < n; ++j) prefix.append(pot.etaN(j));
    FactorChain gen = invertChain(prefix);
    for (int j = 0; j < m; ++j) gen.append(pot.etaM(j));
    const BirkhoffParts split = birkhoffSplit(gen);
    return prefix + split.minus;
}

}  // namespace psforge

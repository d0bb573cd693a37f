#pragma once
// Birkhoff factorization on factor chains, done exactly.
//
// The kernel is the two-factor swap identity
//
//   e+(theta, a) e-(kappa, b) = e-(kappa~, b~) e+(theta~, a~)
//
// with  w = 1 - a conj(b) e^{-i(theta+kappa)},  s = theta + kappa + 2 arg(w),
// one angle chosen freely (we zero kappa~ by default so minus factors stay
// normalized), the other equal to s minus the chosen one, and
//
//   a~ = a e^{-i(kappa + kappa~)},   b~ = b e^{i(theta + theta~)}.
//
// Both parameter moduli are preserved, so a chain never leaves the
// admissible region and the swap never breaks down (|w| >= 1 - |a||b| > 0).
//
// Repeated swaps sort any chain into  vMinus * vPlus * d(delta)  with every
// vMinus angle zero; that is the Birkhoff decomposition with the minus part
// normalized to Id at lambda = infinity.  Two implementations are provided:
// an incremental one that maintains the sorted state under appends (used by
// the frame builders, one swap sweep per appended factor) and an independent
// batch one (phase sweep + bubble passes + angle cascade) used to cross-check
// it.

#include <cstddef>
#include <utility>

#include "factors.hpp"

namespace psforge {

enum class SwapNormalization { ZeroKappa, ZeroTheta };

inline std::pair<MinusFactor, PlusFactor> swapPlusMinus(
    const PlusFactor& p, const MinusFactor& m,
    SwapNormalization normalization = SwapNormalization::ZeroKappa) {
    const cplx w = cplx{1.0} - p.a * std::conj(m.b) * std::exp(-kI * (p.theta + m.kappa));
    if (w == cplx{0.0}) throw std::domain_error("swapPlusMinus: breakdown, w == 0");
    const double s = p.theta + m.kappa + 2.0 * std::arg(w);
    const double thetaT = normalization == SwapNormalization::ZeroKappa ? s : 0.0;
    const double kappaT = normalization == SwapNormalization::ZeroKappa ? 0.0 : s;
    const cplx aT = p.a * std::exp(-kI * (m.kappa + kappaT));
    const cplx bT = m.b * std::exp(kI * (p.theta + thetaT));
    return {MinusFactor{kappaT, bT}, PlusFactor{thetaT, aT}};
}

struct BirkhoffParts {
    FactorChain minus;  // all angles zero; -> Id as lambda -> infinity
    FactorChain plus;   // plus factors, then the trailing phase if nonzero
};

// Maintains  product(appended factors) = minus * plus * d(delta)  with all
// minus angles zero.  Appending a minus factor bubbles it right-to-left
// through the plus block, so a frame row costs one sweep per lattice step.
class IncrementalSplit {
public:
    void append(const Factor& f) {
        if (const auto* d = std::get_if<PhaseFactor>(&f)) {
            delta_ += d->delta;
            return;
        }
        // move f through the trailing phase first: d(delta) f = f' d(delta)
        const Factor g = conjugateByPhase(delta_, f);
        if (const auto* p = std::get_if<PlusFactor>(&g)) {
            plus_.push_back(*p);
            return;
        }
        MinusFactor cur = std::get<MinusFactor>(g);
        for (std::size_t i = plus_.size(); i-- > 0;) {
            auto [mT, pT] = swapPlusMinus(plus_[i], cur, SwapNormalization::ZeroKappa);
            plus_[i] = pT;
            cur = mT;
            ++swaps_;
        }
        if (cur.kappa != 0.0) {
            // only reachable when the plus block was empty, so the stripped
            // phase commutes straight into delta
            const double ka = cur.kappa;
            cur = MinusFactor{0.0, cur.b * std::exp(kI * ka)};
            delta_ += ka;
        }
        minus_.push_back(cur);
    }

    void append(const FactorChain& c) {
        for (const Factor& f : c.factors) append(f);
    }

    const std::vector<MinusFactor>& minusFactors() const { return minus_; }
    const std::vector<PlusFactor>& plusFactors() const { return plus_; }
    double trailingDelta() const { return delta_; }
    std::size_t swapCount() const { return swaps_; }

    FactorChain minusChain() const {
        FactorChain out;
        out.factors.reserve(minus_.size());
        for (const auto& m : minus_) out.push(m);
        return out;
    }

    FactorChain plusChain() const {
        FactorChain out;
        out.factors.reserve(plus_.size() + 1);
        for (const auto& p : plus_) out.push(p);
        if (delta_ != 0.0) out.push(PhaseFactor{delta_});
        return out;
    }

    BirkhoffParts parts() const { return {minusChain(), plusChain()}; }

private:
    std::vector<MinusFactor> minus_;
    std::vector<PlusFactor> plus_;
    double delta_ = 0.0;
    std::size_t swaps_ = 0;
};

// Batch split of a materialized chain.  Deliberately not implemented on top
// of IncrementalSplit: phases are swept out first, then adjacent plus/minus
// pairs are bubble-swapped to exhaustion, then the leftover minus angles are
// cascaded into the trailing phase.
inline BirkhoffParts birkhoffSplit(const FactorChain& chain) {
    double delta = 0.0;
    std::vector<Factor> work;
    work.reserve(chain.size());
    for (const Factor& f : chain.factors) {
        if (const auto* d = std::get_if<PhaseFactor>(&f)) {
            delta += d->delta;
            continue;
        }
        work.push_back(conjugateByPhase(delta, f));
    }

    bool swapped = true;
    while (swapped) {
        swapped = false;
        for (std::size_t i = 0; i + 1 < work.size(); ++i) {
            const auto* p = std::get_if<PlusFactor>(&work[i]);
            const auto* m = std::get_if<MinusFactor>(&work[i + 1]);
            if (!p || !m) continue;
            auto [mT, pT] = swapPlusMinus(*p, *m, SwapNormalization::ZeroKappa);
            work[i] = mT;
            work[i + 1] = pT;
            swapped = true;
        }
    }

    BirkhoffParts out;
    double carry = 0.0;  // phase travelling right through the sorted chain
    for (const Factor& f : work) {
        if (const auto* m = std::get_if<MinusFactor>(&f)) {
            // d(carry) e-(kappa, b) = e-(0, b e^{i(kappa + 2 carry)}) d(kappa + carry)
            out.minus.push(MinusFactor{0.0, m->b * std::exp(kI * (m->kappa + 2.0 * carry))});
            carry += m->kappa;
        } else {
            out.plus.push(conjugateByPhase(carry, f));
        }
    }
    delta += carry;
    if (delta != 0.0) out.plus.push(PhaseFactor{delta});
    return out;
}

}  // namespace psforge

#pragma once
// Discrete potential data and the elementary one-step factors built from it.
//
// Normalized potentials are two pairs of one-variable tables (alpha, p) in n
// and (beta, q) in m, subject to alpha(0) = 0 and 0 < |p|/2, |q|/2 < 1.
// They induce the canonical transition factors
//
//   xi+(n) = e+(0,  (i/2) p(n) e^{-i alpha(n)})
//   xi-(m) = e-(0, -(i/2) q(m) e^{ i beta(m)})
//
// and the accumulated diagonal correction d(k(n)/2) with
// k(n) = 2 sum_{j<n} (-1)^{j+n} alpha(j).
//
// Generalized potentials keep only the structure that the construction
// actually needs: one factor chain per lattice step in each direction.  The
// surface-of-revolution family eta_n = A+ L A-, eta_m = eta_n^{-1} is the
// canonical example.

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "factors.hpp"

namespace psforge {

struct NormalizedPotentials {
    std::vector<double> alpha, p;  // indexed by n
    std::vector<double> beta, q;   // indexed by m

    NormalizedPotentials(std::vector<double> alpha_, std::vector<double> beta_,
                         std::vector<double> p_, std::vector<double> q_)
        : alpha(std::move(alpha_)), p(std::move(p_)), beta(std::move(beta_)), q(std::move(q_)) {
        if (alpha.size() != p.size())
            throw std::invalid_argument("NormalizedPotentials: alpha and p tables must pair up");
        if (beta.size() != q.size())
            throw std::invalid_argument("NormalizedPotentials: beta and q tables must pair up");
        if (!alpha.empty() && std::abs(alpha[0]) > 1e-15)
            throw std::invalid_argument("NormalizedPotentials: alpha(0) must vanish");
        for (double v : alpha)
            if (!std::isfinite(v)) throw std::invalid_argument("NormalizedPotentials: alpha not finite");
        for (double v : beta)
            if (!std::isfinite(v)) throw std::invalid_argument("NormalizedPotentials: beta not finite");
        auto checkHalfOpen = [](const std::vector<double>& t, const char* name) {
            for (double v : t) {
                if (!std::isfinite(v) || v == 0.0 || std::abs(v) >= 2.0)
                    throw std::invalid_argument(std::string("NormalizedPotentials: ") + name +
                                                " entries need 0 < |value|/2 < 1");
            }
        };
        checkHalfOpen(p, "p");
        checkHalfOpen(q, "q");
    }

    int maxN() const { return static_cast<int>(alpha.size()); }
    int maxM() const { return static_cast<int>(beta.size()); }

    void requireWindow(int n, int m) const {
        if (n < 0 || m < 0 || n > maxN() || m > maxM())
            throw std::out_of_range("NormalizedPotentials: window exceeds the tables");
    }
};

inline PlusFactor xiPlus(const NormalizedPotentials& pot, int n) {
    return {0.0, 0.5 * kI * pot.p.at(n) * std::exp(-kI * pot.alpha.at(n))};
}

inline MinusFactor xiMinus(const NormalizedPotentials& pot, int m) {
    return {0.0, -0.5 * kI * pot.q.at(m) * std::exp(kI * pot.beta.at(m))};
}

// D(n) = d(k(n)/2) with k(n) = 2 sum_{j<n} (-1)^{j+n} alpha(j), k(0) = 0.
inline PhaseFactor phaseK(const NormalizedPotentials& pot, int n) {
    double k = 0.0;
    for (int j = 0; j < n; ++j) k += (((j + n) % 2 == 0) ? 2.0 : -2.0) * pot.alpha.at(j);
    return PhaseFactor{0.5 * k};
}

// F+(n) = xi+(0) ... xi+(n-1), without the diagonal correction.
inline FactorChain solveFramePlus(const NormalizedPotentials& pot, int n) {
    FactorChain out;
    out.factors.reserve(n);
    for (int j = 0; j < n; ++j) out.push(xiPlus(pot, j));
    return out;
}

// G-(m) = xi-(0) ... xi-(m-1).
inline FactorChain solveFrameMinus(const NormalizedPotentials& pot, int m) {
    FactorChain out;
    out.factors.reserve(m);
    for (int j = 0; j < m; ++j) out.push(xiMinus(pot, j));
    return out;
}

struct GeneralizedPotentials {
    std::function<FactorChain(int)> etaN;  // step n -> n+1
    std::function<FactorChain(int)> etaM;  // step m -> m+1
};

// eta_n = A+ L A- with A+ = e+(0, (i/2)q), A- = e-(0, -(i/2)q), L = d(pi/ell),
// constant in n; eta_m is its inverse, so the generating loop is
// C(n,m) = eta^{-(n+m)}.
inline GeneralizedPotentials revolutionPotentials(double q, int ell) {
    if (!(std::abs(q) > 0.0) || std::abs(q) >= 2.0 || !std::isfinite(q))
        throw std::invalid_argument("revolutionPotentials: need 0 < |q|/2 < 1");
    if (ell < 1) throw std::invalid_argument("revolutionPotentials: ell must be a positive integer");
    FactorChain etaN;
    etaN.push(PlusFactor{0.0, 0.5 * kI * q});
    etaN.push(PhaseFactor{std::numbers::pi / ell});
    etaN.push(MinusFactor{0.0, -0.5 * kI * q});
    const FactorChain etaM = invertChain(etaN);
    return {[etaN](int) { return etaN; }, [etaM](int) { return etaM; }};
}

// Normalized potentials viewed as generalized ones (xi+ steps need the
// diagonal correction folded in: eta_n = d(k(n)/2)^{-1} xi+(n) d(k(n+1)/2)).
inline GeneralizedPotentials asGeneralized(const NormalizedPotentials& pot) {
    return {[pot](int n) {
                FactorChain c;
                c.push(PhaseFactor{-phaseK(pot, n).delta});
                c.push(xiPlus(pot, n));
                c.push(phaseK(pot, n + 1));
                return c;
            },
            [pot](int m) {
                FactorChain c;
                c.push(xiMinus(pot, m));
                return c;
            }};
}

}  // namespace psforge

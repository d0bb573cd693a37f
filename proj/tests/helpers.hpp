#pragma once
// Shared test fixtures: deterministic RNG, random factors/chains/potentials
// and the lambda sample sets used across the suite.

#include <numbers>
#include <random>
#include <vector>

#include <psforge/birkhoff.hpp>
#include <psforge/potentials.hpp>

namespace pstest {

using namespace psforge;

inline std::mt19937_64 rng(unsigned seed) { return std::mt19937_64{seed}; }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline double randomSign(std::mt19937_64& g) { return g() % 2 ? 1.0 : -1.0; }

// parameter in the open disk of the given radius
inline cplx diskParameter(std::mt19937_64& g, double radius = 0.64) {
    while (true) {
        const cplx v{uniform(g, -radius, radius), uniform(g, -radius, radius)};
        if (std::abs(v) < radius) return v;
    }
}

inline PlusFactor randomPlus(std::mt19937_64& g, double radius = 0.64) {
    return {uniform(g, -std::numbers::pi, std::numbers::pi), diskParameter(g, radius)};
}

inline MinusFactor randomMinus(std::mt19937_64& g, double radius = 0.64) {
    return {uniform(g, -std::numbers::pi, std::numbers::pi), diskParameter(g, radius)};
}

inline PhaseFactor randomPhase(std::mt19937_64& g) {
    return PhaseFactor{uniform(g, -std::numbers::pi, std::numbers::pi)};
}

inline Factor randomFactor(std::mt19937_64& g, double radius = 0.64) {
    switch (g() % 3) {
        case 0: return randomPlus(g, radius);
        case 1: return randomMinus(g, radius);
        default: return randomPhase(g);
    }
}

inline FactorChain randomChain(std::mt19937_64& g, std::size_t length, double radius = 0.64) {
    FactorChain c;
    for (std::size_t i = 0; i < length; ++i) c.push(randomFactor(g, radius));
    return c;
}

inline std::vector<double> realLambdaSamples() { return {0.25, 0.5, 0.8, 1.0, 1.3, 2.0, 3.0, 4.0}; }

inline std::vector<cplx> circleLambdaSamples() {
    std::vector<cplx> out;
    for (int k = 1; k <= 8; ++k)
        out.push_back(std::exp(cplx{0.0, std::numbers::pi * k / 4.5}));
    return out;
}

inline std::vector<cplx> allLambdaSamples() {
    std::vector<cplx> out;
    for (double l : realLambdaSamples()) out.emplace_back(l);
    for (const cplx& l : circleLambdaSamples()) out.push_back(l);
    return out;
}

// alpha, beta in [-pi/2, pi/2] (alpha(0) = 0), p, q in +-[0.2, 1.8]
inline NormalizedPotentials randomPotentials(std::mt19937_64& g, int N, int M) {
    std::vector<double> alpha(N), beta(M), p(N), q(M);
    for (int n = 0; n < N; ++n) {
        alpha[n] = n == 0 ? 0.0 : uniform(g, -std::numbers::pi / 2, std::numbers::pi / 2);
        p[n] = randomSign(g) * uniform(g, 0.2, 1.8);
    }
    for (int m = 0; m < M; ++m) {
        beta[m] = uniform(g, -std::numbers::pi / 2, std::numbers::pi / 2);
        q[m] = randomSign(g) * uniform(g, 0.2, 1.8);
    }
    return {alpha, beta, p, q};
}

inline double mod2piDistance(double a, double b) { return std::abs(std::remainder(a - b, 2.0 * std::numbers::pi)); }

inline double mod4piDistance(double a, double b) { return std::abs(std::remainder(a - b, 4.0 * std::numbers::pi)); }

}  // namespace pstest

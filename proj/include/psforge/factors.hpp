#pragma once
// Elementary loop factors and chains thereof.
//
//   e+(theta, a)(lam) = (1 + |a|^2 lam^2)^{-1/2}  [[ e^{i theta},  a lam        ],
//                                                  [ -conj(a) lam, e^{-i theta} ]]
//   e-(kappa, b)(lam) = (1 + |b|^2 lam^-2)^{-1/2} [[ e^{i kappa},  b/lam        ],
//                                                  [ -conj(b)/lam, e^{-i kappa} ]]
//   d(delta)(lam)     = diag(e^{i delta}, e^{-i delta})
//
// Each has det == 1 identically, is special unitary for real lam, satisfies
// the twisting identity s3 g(lam) s3 = g(-lam) and the loop-group reality
// condition g(lam) conj(g(conj lam))^T = Id.  Ordered products of these
// factors are the representation of every loop used in the pipeline; the
// product matrix is only ever formed pointwise in lam.

#include <cstddef>
#include <stdexcept>
#include <variant>
#include <vector>

#include "core.hpp"

namespace psforge {

namespace detail {
inline void requireUnitModulusBound(const cplx& v, const char* what) {
    if (!(std::abs(v) < 1.0))  // also rejects NaN
        throw std::invalid_argument(std::string(what) + ": off-diagonal parameter needs modulus < 1");
}
}  // namespace detail

struct PlusFactor {
    double theta = 0.0;
    cplx a{};

    PlusFactor() = default;
    PlusFactor(double theta_, cplx a_) : theta(theta_), a(a_) {
        detail::requireUnitModulusBound(a, "PlusFactor");
    }
};

struct MinusFactor {
    double kappa = 0.0;
    cplx b{};

    MinusFactor() = default;
    MinusFactor(double kappa_, cplx b_) : kappa(kappa_), b(b_) {
        detail::requireUnitModulusBound(b, "MinusFactor");
    }
};

struct PhaseFactor {
    double delta = 0.0;

    PhaseFactor() = default;
    explicit PhaseFactor(double delta_) : delta(delta_) {}
};

using Factor = std::variant<PlusFactor, MinusFactor, PhaseFactor>;

// ------------------------------------------------------------- evaluation

namespace detail {
// 1/sqrt of the normalizer argument; the principal square root is only
// ambiguous on the closed negative real axis, which we reject.
inline cplx invSqrtNormalizer(const cplx& arg, const char* what) {
    if (arg.imag() == 0.0 && arg.real() <= 0.0)
        throw std::domain_error(std::string(what) +
                                ": normalizer argument on the closed negative real axis");
    return cplx{1.0} / std::sqrt(arg);
}
}  // namespace detail

inline Mat2 evalFactor(const PlusFactor& f, cplx lambda) {
    if (lambda == cplx{0.0}) throw std::domain_error("evalFactor: lambda must be nonzero");
    const cplx n = detail::invSqrtNormalizer(cplx{1.0} + std::norm(f.a) * lambda * lambda, "PlusFactor");
    const cplx e = std::exp(kI * f.theta);
    return {n * e, n * f.a * lambda, -n * std::conj(f.a) * lambda, n * std::conj(e)};
}

inline Mat2 evalFactor(const MinusFactor& f, cplx lambda) {
    if (lambda == cplx{0.0}) throw std::domain_error("evalFactor: lambda must be nonzero");
    const cplx li = cplx{1.0} / lambda;
    const cplx n = detail::invSqrtNormalizer(cplx{1.0} + std::norm(f.b) * li * li, "MinusFactor");
    const cplx e = std::exp(kI * f.kappa);
    return {n * e, n * f.b * li, -n * std::conj(f.b) * li, n * std::conj(e)};
}

inline Mat2 evalFactor(const PhaseFactor& f, cplx) {
    const cplx e = std::exp(kI * f.delta);
    return {e, cplx{0.0}, cplx{0.0}, std::conj(e)};
}

inline Mat2 evalFactor(const Factor& f, cplx lambda) {
    return std::visit([&](const auto& g) { return evalFactor(g, lambda); }, f);
}

// d/d lambda at real lambda, in closed form.
inline Mat2 factorLambdaDerivative(const Factor& f, double lambda) {
    if (lambda == 0.0) throw std::domain_error("factorLambdaDerivative: lambda must be nonzero");
    if (const auto* p = std::get_if<PlusFactor>(&f)) {
        const double s = 1.0 + std::norm(p->a) * lambda * lambda;
        const double n = 1.0 / std::sqrt(s);
        const Mat2 off{cplx{0.0}, p->a, -std::conj(p->a), cplx{0.0}};
        return n * off - (std::norm(p->a) * lambda / s) * evalFactor(*p, lambda);
    }
    if (const auto* m = std::get_if<MinusFactor>(&f)) {
        const double li = 1.0 / lambda;
        const double s = 1.0 + std::norm(m->b) * li * li;
        const double n = 1.0 / std::sqrt(s);
        const Mat2 off{cplx{0.0}, -m->b * li * li, std::conj(m->b) * li * li, cplx{0.0}};
        return n * off + (std::norm(m->b) * li * li * li / s) * evalFactor(*m, lambda);
    }
    return Mat2{};  // phases are lambda-independent
}

// --------------------------------------------------------- factor algebra

inline Factor invertFactor(const Factor& f) {
    if (const auto* p = std::get_if<PlusFactor>(&f)) return PlusFactor{-p->theta, -p->a};
    if (const auto* m = std::get_if<MinusFactor>(&f)) return MinusFactor{-m->kappa, -m->b};
    return PhaseFactor{-std::get<PhaseFactor>(f).delta};
}

enum class Side { Left, Right };

// Single-factor identities  d(delta) e+- = e+-' ,  e+- d(delta) = e+-'' :
// the angle gains delta either way; the parameter turns by e^{+-i delta}.
inline Factor absorbPhase(const PhaseFactor& d, const Factor& f, Side side) {
    const cplx turn = std::exp(kI * (side == Side::Left ? d.delta : -d.delta));
    if (const auto* p = std::get_if<PlusFactor>(&f)) return PlusFactor{p->theta + d.delta, p->a * turn};
    if (const auto* m = std::get_if<MinusFactor>(&f)) return MinusFactor{m->kappa + d.delta, m->b * turn};
    return PhaseFactor{std::get<PhaseFactor>(f).delta + d.delta};
}

// d(delta) f d(-delta): the angle is unchanged, the parameter turns by e^{2i delta}.
inline Factor conjugateByPhase(double delta, const Factor& f) {
    const cplx turn = std::exp(kI * (2.0 * delta));
    if (const auto* p = std::get_if<PlusFactor>(&f)) return PlusFactor{p->theta, p->a * turn};
    if (const auto* m = std::get_if<MinusFactor>(&f)) return MinusFactor{m->kappa, m->b * turn};
    return f;
}

// ----------------------------------------------------------------- chains

struct FactorChain {
    std::vector<Factor> factors;

    FactorChain() = default;
    explicit FactorChain(std::vector<Factor> fs) : factors(std::move(fs)) {}

    bool empty() const { return factors.empty(); }
    std::size_t size() const { return factors.size(); }

    void push(const Factor& f) { factors.push_back(f); }
    void append(const FactorChain& other) {
        factors.insert(factors.end(), other.factors.begin(), other.factors.end());
    }
};

inline FactorChain operator+(FactorChain lhs, const FactorChain& rhs) {
    lhs.append(rhs);
    return lhs;
}

inline Mat2 evalChain(const FactorChain& c, cplx lambda) {
    Mat2 out = Mat2::identity();
    for (const Factor& f : c.factors) out = out * evalFactor(f, lambda);
    return out;
}

inline FactorChain invertChain(const FactorChain& c) {
    FactorChain out;
    out.factors.reserve(c.size());
    for (auto it = c.factors.rbegin(); it != c.factors.rend(); ++it)
        out.push(invertFactor(*it));
    return out;
}

// Product rule over the chain: sum_i prefix_i * dM_i * suffix_{i+1},
// with one suffix sweep and one running prefix (linear cost).
inline Mat2 lambdaDerivativeChain(const FactorChain& c, double lambda) {
    const std::size_t k = c.size();
    if (k == 0) return Mat2{};
    std::vector<Mat2> evals(k);
    for (std::size_t i = 0; i < k; ++i) evals[i] = evalFactor(c.factors[i], cplx{lambda});
    std::vector<Mat2> suffix(k + 1);
    suffix[k] = Mat2::identity();
    for (std::size_t i = k; i-- > 0;) suffix[i] = evals[i] * suffix[i + 1];
    Mat2 out{};
    Mat2 prefix = Mat2::identity();
    for (std::size_t i = 0; i < k; ++i) {
        out = out + prefix * factorLambdaDerivative(c.factors[i], lambda) * suffix[i + 1];
        prefix = prefix * evals[i];
    }
    return out;
}

// ---------------------------------------------------- loop-group residuals

// || s3 F(lam) s3 - F(-lam) ||
inline double twistResidual(const FactorChain& c, cplx lambda) {
    Mat2 f = evalChain(c, lambda);
    f.m12 = -f.m12;
    f.m21 = -f.m21;
    return maxAbsDiff(f, evalChain(c, -lambda));
}

// || F(lam) conj(F(conj lam))^T - Id ||  together with |det - 1|.
// For real lam this is exactly the special-unitarity residual.
inline double realityResidual(const FactorChain& c, cplx lambda) {
    const Mat2 f = evalChain(c, lambda);
    const Mat2 g = evalChain(c, std::conj(lambda));
    const double rel = maxAbsDiff(f * g.conjugate().transpose(), Mat2::identity());
    return std::max(rel, std::abs(f.det() - cplx{1.0}));
}

}  // namespace psforge

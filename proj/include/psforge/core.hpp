#pragma once
// 2x2 complex-matrix kernel and the su(2) <-> R^3 dictionary
//
//   (x, y, z)  <->  [[ iz/2, (ix - y)/2 ],
//                    [ (ix + y)/2, -iz/2 ]]
//
// under which <X,Y> = -2 Re tr(XY) is the Euclidean inner product.
// Everything downstream (loop factors, frames, Sym formula) runs on
// this fixed-size algebra, so no general linear-algebra dependency.

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace psforge {

using cplx = std::complex<double>;

inline constexpr cplx kI{0.0, 1.0};

// ---------------------------------------------------------------- Vector3

struct Vector3 {
    double x = 0.0, y = 0.0, z = 0.0;
};

inline Vector3 operator+(const Vector3& a, const Vector3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vector3 operator-(const Vector3& a, const Vector3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vector3 operator*(double s, const Vector3& v) { return {s * v.x, s * v.y, s * v.z}; }

inline double dot(const Vector3& a, const Vector3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline Vector3 cross(const Vector3& a, const Vector3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vector3& v) { return std::sqrt(dot(v, v)); }

inline double tripleProduct(const Vector3& a, const Vector3& b, const Vector3& c) {
    return dot(a, cross(b, c));
}

inline double maxAbsDiff(const Vector3& a, const Vector3& b) {
    return std::max({std::abs(a.x - b.x), std::abs(a.y - b.y), std::abs(a.z - b.z)});
}

// ------------------------------------------------------------------- Mat2

struct Mat2 {
    cplx m11{}, m12{}, m21{}, m22{};

    static Mat2 identity() { return {cplx{1.0}, cplx{0.0}, cplx{0.0}, cplx{1.0}}; }

    cplx trace() const { return m11 + m22; }
    cplx det() const { return m11 * m22 - m12 * m21; }

    Mat2 adjoint() const { return {std::conj(m11), std::conj(m21), std::conj(m12), std::conj(m22)}; }
    Mat2 conjugate() const { return {std::conj(m11), std::conj(m12), std::conj(m21), std::conj(m22)}; }
    Mat2 transpose() const { return {m11, m21, m12, m22}; }

    // Adjugate; equals the inverse when det == 1, which all loop-group
    // evaluations in this library satisfy.
    Mat2 inverseUnimodular() const { return {m22, -m12, -m21, m11}; }

    double maxAbs() const {
        return std::max({std::abs(m11), std::abs(m12), std::abs(m21), std::abs(m22)});
    }
};

inline Mat2 operator*(const Mat2& a, const Mat2& b) {
    return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
            a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22};
}

inline Mat2 operator+(const Mat2& a, const Mat2& b) {
    return {a.m11 + b.m11, a.m12 + b.m12, a.m21 + b.m21, a.m22 + b.m22};
}

inline Mat2 operator-(const Mat2& a, const Mat2& b) {
    return {a.m11 - b.m11, a.m12 - b.m12, a.m21 - b.m21, a.m22 - b.m22};
}

inline Mat2 operator*(const cplx& s, const Mat2& a) {
    return {s * a.m11, s * a.m12, s * a.m21, s * a.m22};
}

inline Mat2 operator*(double s, const Mat2& a) { return cplx{s} * a; }

inline double maxAbsDiff(const Mat2& a, const Mat2& b) { return (a - b).maxAbs(); }

// ----------------------------------------------------- group membership

inline double specialUnitarityResidual(const Mat2& m) {
    const double unitary = maxAbsDiff(m * m.adjoint(), Mat2::identity());
    return std::max(unitary, std::abs(m.det() - cplx{1.0}));
}

inline bool isSpecialUnitary(const Mat2& m, double tol = 1e-10) {
    return specialUnitarityResidual(m) <= tol;
}

// Anti-Hermitian and traceless.
inline double su2Residual(const Mat2& m) {
    return std::max(std::abs(m.trace()), (m + m.adjoint()).maxAbs());
}

inline bool isSu2(const Mat2& m, double tol = 1e-10) { return su2Residual(m) <= tol; }

// ------------------------------------------------------ the identification

inline Mat2 toSu2(const Vector3& v) {
    return {cplx{0.0, 0.5 * v.z}, cplx{-0.5 * v.y, 0.5 * v.x},
            cplx{0.5 * v.y, 0.5 * v.x}, cplx{0.0, -0.5 * v.z}};
}

inline Vector3 fromSu2(const Mat2& m, double tol = 1e-9) {
    const double res = su2Residual(m);
    if (res > tol)
        throw std::invalid_argument("fromSu2: matrix is not in su(2), residual " + std::to_string(res));
    return {2.0 * m.m12.imag(), -2.0 * m.m12.real(), 2.0 * m.m11.imag()};
}

inline double innerProduct(const Mat2& x, const Mat2& y) { return -2.0 * (x * y).trace().real(); }

}  // namespace psforge

#pragma once
// Sym formula: immersion from an extended frame chain,
//
//   f^lambda = lambda (d/d lambda F) F^{-1}  in su(2) ~ R^3,
//
// evaluated with the closed-form chain derivative (no numerical
// differentiation).  The result is checked against su(2) before it is
// identified with a point of R^3; right-multiplying the chain by any
// lambda-independent factor leaves the point unchanged.

#include "dalembert.hpp"

namespace psforge {

inline Vector3 symPoint(const FactorChain& frame, double lambda) {
    if (!(lambda > 0.0)) throw std::domain_error("symPoint: lambda must be positive");
    const Mat2 f = evalChain(frame, cplx{lambda});
    const Mat2 df = lambdaDerivativeChain(frame, lambda);
    const Mat2 x = lambda * (df * f.inverseUnimodular());
    return fromSu2(x, 1e-10);
}

struct SurfaceMesh {
    int N = 0, M = 0;
    double lambda = 1.0;
    std::vector<Vector3> vertices;  // (N+1)*(M+1), row-major in n

    int index(int n, int m) const {
        if (n < 0 || m < 0 || n > N || m > M)
            throw std::out_of_range("SurfaceMesh: vertex outside window");
        return n * (M + 1) + m;
    }
    const Vector3& at(int n, int m) const { return vertices[index(n, m)]; }
    Vector3& at(int n, int m) { return vertices[index(n, m)]; }
};

inline SurfaceMesh symMesh(const FrameGrid& frames, double lambda) {
    SurfaceMesh mesh;
    mesh.N = frames.N;
    mesh.M = frames.M;
    mesh.lambda = lambda;
    mesh.vertices.resize((frames.N + 1) * (frames.M + 1));
    parallelFor(0, frames.N + 1, [&](int n) {
        for (int m = 0; m <= frames.M; ++m)
            mesh.at(n, m) = symPoint(frames.at(n, m), lambda);
    });
    return mesh;
}

inline SurfaceMesh buildMesh(const NormalizedPotentials& pot, int N, int M, double lambda) {
    return symMesh(buildFrames(pot, N, M), lambda);
}

inline SurfaceMesh buildMesh(const GeneralizedPotentials& pot, int N, int M, double lambda) {
    return symMesh(buildFrames(pot, N, M), lambda);
}

}  // namespace psforge

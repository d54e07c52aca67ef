// superop.hpp — 16x16 superoperator algebra over a row-major operator basis

#pragma once

#include <complex>

#include <Eigen/Dense>

namespace dk {

using Mat4c = Eigen::Matrix4cd;
using Mat16c = Eigen::Matrix<std::complex<double>, 16, 16>;
using Vec16c = Eigen::Matrix<std::complex<double>, 16, 1>;

/// Row-major flattening: component i = 4m + n holds <m|rho|n>, i.e. the
/// coefficient of the basis operator |m><n|.
inline Vec16c vec_rm(const Mat4c& rho) {
    Vec16c v;
    for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n) v(4 * m + n) = rho(m, n);
    return v;
}

inline Mat4c unvec_rm(const Vec16c& v) {
    Mat4c rho;
    for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n) rho(m, n) = v(4 * m + n);
    return rho;
}

/// Superoperator for rho -> A rho B; kron(A, B^T) in the row-major flattening.
inline Mat16c lift(const Mat4c& A, const Mat4c& B) {
    Mat16c M;
    for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n)
            for (int p = 0; p < 4; ++p)
                for (int q = 0; q < 4; ++q)
                    M(4 * m + n, 4 * p + q) = A(m, p) * B(q, n);
    return M;
}

/// Superoperator for rho -> [H, rho].
inline Mat16c commutator_superop(const Mat4c& H) {
    const Mat4c id = Mat4c::Identity();
    return lift(H, id) - lift(id, H);
}

/// Hermitian-conjugate superoperator: (hc T)(rho) = (T(rho^dagger))^dagger.
inline Mat16c hc_superop(const Mat16c& T) {
    Mat16c M;
    for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n)
            for (int p = 0; p < 4; ++p)
                for (int q = 0; q < 4; ++q)
                    M(4 * m + n, 4 * p + q) =
                        std::conj(T(4 * n + m, 4 * q + p));
    return M;
}

}  // namespace dk

// dressed.hpp — Coulomb-dressed eigensystem and jump-operator decomposition

#pragma once

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "dipolekit/coupling.hpp"

namespace dk {

using Mat4 = Eigen::Matrix4d;
using Mat4c = Eigen::Matrix4cd;
using Vec4 = Eigen::Vector4d;

/// Eigensystem of the two-dipole Hamiltonian including the static Coulomb
/// coupling. Bare basis order is {gg, eg, ge, ee}. All closed forms are
/// rewritten via omega0 - eta = -C^2/(omega0 + eta) to avoid cancellation.
struct DressedBasis {
    double omega0{0.0};
    double C{0.0};
    double eta{0.0};            // sqrt(omega0^2 + C^2)
    Vec4 eps{Vec4::Zero()};     // energies eps1..eps4
    Mat4 vecs{Mat4::Identity()};  // columns: dressed vectors over bare basis
    double a{0.0}, b{0.0}, c{0.0}, d{0.0};  // mixing coefficients
    double omega1{0.0};         // eta - C
    double omega2{0.0};         // eta + C
};

inline DressedBasis dressed_basis(double omega0, double C) {
    if (!(omega0 > 0.0)) throw std::domain_error("omega0 must be positive");
    DressedBasis db;
    db.omega0 = omega0;
    db.C = C;
    db.eta = std::hypot(omega0, C);
    const double s = omega0 + db.eta;
    db.eps << omega0 - db.eta, omega0 - C, omega0 + C, omega0 + db.eta;
    db.eps(0) = -C * C / s;  // omega0 - eta without cancellation
    db.omega1 = db.eta - C;
    db.omega2 = db.eta + C;

    const double norm1 = std::hypot(s, C);
    const double sg = C < 0.0 ? -1.0 : 1.0;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    db.vecs.setZero();
    db.vecs.col(0) << s / norm1, 0, 0, -C / norm1;
    db.vecs.col(1) << 0, inv_sqrt2, -inv_sqrt2, 0;
    db.vecs.col(2) << 0, inv_sqrt2, inv_sqrt2, 0;
    db.vecs.col(3) << std::abs(C) / norm1, 0, 0, sg * s / norm1;

    const double denom = std::sqrt(2.0 * (s * s + C * C));
    db.a = (s - C) / denom;
    db.c = (s + C) / denom;
    db.b = sg * db.a;
    db.d = sg * db.c;
    return db;
}

/// The four positive-frequency eigenoperators A[mu][zeta] in the dressed
/// basis; each has exactly two nonzero entries. Negative frequencies are the
/// conjugate transposes.
struct JumpOperatorSet {
    Mat4c A[2][2];  // [mu-1][0: omega1, 1: omega2]
    double zeta[2]{0.0, 0.0};

    const Mat4c& at(int mu, int zeta_index) const { return A[mu - 1][zeta_index]; }
};

inline JumpOperatorSet jump_operators(const DressedBasis& db) {
    auto unit = [](int m, int n) {
        Mat4c e = Mat4c::Zero();
        e(m, n) = 1.0;
        return e;
    };
    JumpOperatorSet js;
    js.zeta[0] = db.omega1;
    js.zeta[1] = db.omega2;
    js.A[0][0] = db.a * unit(0, 1) + db.b * unit(2, 3);   // A_{1 omega1}
    js.A[0][1] = db.c * unit(0, 2) - db.d * unit(1, 3);   // A_{1 omega2}
    js.A[1][0] = -db.a * unit(0, 1) + db.b * unit(2, 3);  // A_{2 omega1}
    js.A[1][1] = db.c * unit(0, 2) + db.d * unit(1, 3);   // A_{2 omega2}
    return js;
}

/// <eps3| d1 + d2 |eps1> by explicit contraction of d(sigma1^x + sigma2^x)
/// over the stored eigenvectors; equals 2a d in closed form.
inline Vec3 collective_dipole_element(const DressedBasis& db, const Vec3& d) {
    Mat4 sx_sum = Mat4::Zero();
    sx_sum(0, 1) = sx_sum(1, 0) = 1.0;  // sigma1^x: gg <-> eg
    sx_sum(2, 3) = sx_sum(3, 2) = 1.0;  //           ge <-> ee
    sx_sum(0, 2) = sx_sum(2, 0) = 1.0;  // sigma2^x: gg <-> ge
    sx_sum(1, 3) = sx_sum(3, 1) = 1.0;  //           eg <-> ee
    const double element = db.vecs.col(2).dot(sx_sum * db.vecs.col(0));
    return element * d;
}

/// Vacuum decay rates of the symmetric channel: the dressed-picture
/// gamma_s = 2c^2 [gamma_self(omega2) + gamma_cross(omega2)] and the
/// bare-picture gamma_s0 = gamma + gamma12(omega0).
inline void symmetric_decay_rates(const DressedBasis& db,
                                  const CouplingSet& cs, double& gamma_s,
                                  double& gamma_s0) {
    const auto& p = cs.params;
    const double gs_self = cs.gamma * db.omega2 / p.omega0;
    const double gs_cross = p.d.dot(tau_tensor(db.omega2, p.Rvec) * p.d) *
                            p.omega0 * p.omega0 / (db.omega2 * db.omega2);
    gamma_s = 2.0 * db.c * db.c * (gs_self + gs_cross);
    gamma_s0 = cs.gamma + p.d.dot(tau_tensor(p.omega0, p.Rvec) * p.d);
}

}  // namespace dk

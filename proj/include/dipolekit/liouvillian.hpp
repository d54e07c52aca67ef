// liouvillian.hpp — master-equation generators, propagation, steady states

#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "dipolekit/dressed.hpp"
#include "dipolekit/superop.hpp"

namespace dk {

enum class BasisKind { bare, dressed };
enum class Flavor { standard, partial_secular, full_secular };

/// 16x16 generator over a declared operator basis. dressed_vecs maps dressed
/// components to the bare basis regardless of kind (used for populations).
struct Liouvillian {
    Mat16c gen{Mat16c::Zero()};
    BasisKind kind{BasisKind::bare};
    Flavor flavor{Flavor::standard};
    Mat4 dressed_vecs{Mat4::Identity()};
    double omega0{0.0};
};

namespace detail {

inline Mat4c sigma_minus(int mu) {
    Mat4c s = Mat4c::Zero();
    if (mu == 1) {
        s(0, 1) = 1.0;  // |gg><eg|
        s(2, 3) = 1.0;  // |ge><ee|
    } else {
        s(0, 2) = 1.0;  // |gg><ge|
        s(1, 3) = 1.0;  // |eg><ee|
    }
    return s;
}

/// rate * (L rho R - 1/2 {R L, rho}) as a superoperator.
inline Mat16c lindblad_term(std::complex<double> rate, const Mat4c& L,
                            const Mat4c& R) {
    const Mat4c id = Mat4c::Identity();
    const Mat4c K = R * L;
    return rate * (lift(L, R) - 0.5 * (lift(K, id) + lift(id, K)));
}

}  // namespace detail

/// Standard two-dipole generator over the bare basis: coherent part with the
/// shifted frequency and cross shift, dissipators with rates evaluated at
/// omega0 and thermal occupation N(omega0).
inline Liouvillian build_standard(const CouplingSet& cs,
                                 const DressedBasis& db) {
    const double g = cs.gamma;
    const double g12 = cs.gamma12_at(cs.params.omega0) / (1.0 + cs.N(cs.params.omega0));
    if (std::abs(g12) > g * (1.0 + 1e-12))
        throw NumericalError("cross decay exceeds self decay; rate matrix not PSD");
    const double N = cs.N(cs.params.omega0);
    const double omega_t = cs.params.omega0 + cs.delta;

    Mat4c H = Mat4c::Zero();
    Mat4c sm[2] = {detail::sigma_minus(1), detail::sigma_minus(2)};
    for (int mu = 0; mu < 2; ++mu)
        H += omega_t * sm[mu].adjoint() * sm[mu];
    H += cs.delta12 * (sm[0].adjoint() * sm[1] + sm[1].adjoint() * sm[0]);

    Mat16c gen = std::complex<double>(0, -1) * commutator_superop(H);
    for (int mu = 0; mu < 2; ++mu)
        for (int nu = 0; nu < 2; ++nu) {
            const double rate = (mu == nu) ? g : g12;
            gen += detail::lindblad_term((1.0 + N) * rate, sm[nu],
                                         sm[mu].adjoint());
            gen += detail::lindblad_term(N * rate, sm[nu].adjoint(), sm[mu]);
        }

    Liouvillian L;
    L.gen = gen;
    L.kind = BasisKind::bare;
    L.flavor = Flavor::standard;
    L.dressed_vecs = db.vecs;
    L.omega0 = cs.params.omega0;
    return L;
}

namespace detail {

inline std::complex<double> Gamma_at(const CouplingSet& cs, int mu, int nu,
                                     double omega) {
    return mu == nu ? cs.Gamma_self(omega) : cs.Gamma_cross(omega);
}

inline double gamma_at(const CouplingSet& cs, int mu, int nu, double omega) {
    return mu == nu ? cs.gamma_self_at(omega) : cs.gamma12_at(omega);
}

}  // namespace detail

/// Partial-secular generator over the dressed basis: keeps cross terms
/// between the two positive gap frequencies, with both emission and
/// absorption blocks plus their Hermitian conjugates.
inline Liouvillian build_partial_secular(const CouplingSet& cs,
                                         const DressedBasis& db,
                                         const JumpOperatorSet& js) {
    Mat4c Hd = Mat4c::Zero();
    for (int m = 0; m < 4; ++m) Hd(m, m) = db.eps(m);

    Mat16c gen = std::complex<double>(0, -1) * commutator_superop(Hd);
    const Mat4c id = Mat4c::Identity();
    for (int zi = 0; zi < 2; ++zi)
        for (int zj = 0; zj < 2; ++zj)
            for (int mu = 0; mu < 2; ++mu)
                for (int nu = 0; nu < 2; ++nu) {
                    const double zeta = js.zeta[zi];
                    const Mat4c& Anu = js.A[nu][zi];
                    const Mat4c Amu_dag = js.A[mu][zj].adjoint();
                    const std::complex<double> Gp =
                        detail::Gamma_at(cs, mu, nu, zeta);
                    const std::complex<double> Gm =
                        detail::Gamma_at(cs, mu, nu, -zeta);
                    const Mat16c T1 =
                        Gp * (lift(Anu, Amu_dag) -
                              lift(Amu_dag * Anu, id));
                    const Mat16c T2 =
                        Gm * (lift(Anu.adjoint(), Amu_dag.adjoint()) -
                              lift(Amu_dag.adjoint() * Anu.adjoint(), id));
                    gen += T1 + hc_superop(T1) + T2 + hc_superop(T2);
                }

    Liouvillian L;
    L.gen = gen;
    L.kind = BasisKind::dressed;
    L.flavor = Flavor::partial_secular;
    L.dressed_vecs = db.vecs;
    L.omega0 = cs.params.omega0;
    return L;
}

/// Full-secular generator over the dressed basis: shifted Hamiltonian plus
/// Lindblad dissipators diagonal in the gap frequency.
inline Liouvillian build_full_secular(const CouplingSet& cs,
                                      const DressedBasis& db,
                                      const JumpOperatorSet& js) {
    Mat4c H = Mat4c::Zero();
    for (int m = 0; m < 4; ++m) H(m, m) = db.eps(m);

    Mat16c diss = Mat16c::Zero();
    for (int zi = 0; zi < 2; ++zi)
        for (int sign = 0; sign < 2; ++sign) {
            const double omega = sign == 0 ? js.zeta[zi] : -js.zeta[zi];
            const double gs = detail::gamma_at(cs, 0, 0, omega);
            const double gx = detail::gamma_at(cs, 0, 1, omega);
            if (std::abs(gx) > gs * (1.0 + 1e-12) + 1e-300)
                throw NumericalError("rate matrix not PSD at a gap frequency");
            for (int mu = 0; mu < 2; ++mu)
                for (int nu = 0; nu < 2; ++nu) {
                    const Mat4c Amu = sign == 0
                                          ? Mat4c(js.A[mu][zi])
                                          : Mat4c(js.A[mu][zi].adjoint());
                    const Mat4c Anu = sign == 0
                                          ? Mat4c(js.A[nu][zi])
                                          : Mat4c(js.A[nu][zi].adjoint());
                    H += detail::Gamma_at(cs, mu, nu, omega).imag() *
                         Amu.adjoint() * Anu;
                    diss += detail::lindblad_term(
                        detail::gamma_at(cs, mu, nu, omega), Anu,
                        Amu.adjoint());
                }
        }

    Liouvillian L;
    L.gen = std::complex<double>(0, -1) * commutator_superop(H) + diss;
    L.kind = BasisKind::dressed;
    L.flavor = Flavor::full_secular;
    L.dressed_vecs = db.vecs;
    L.omega0 = cs.params.omega0;
    return L;
}

/// exp(gen t) via spectral decomposition, with a scaled-and-squared fallback
/// when the eigenbasis is ill-conditioned.
struct Propagator {
    Mat16c gen;
    bool spectral{false};
    Vec16c lambda;
    Mat16c W;
    Eigen::PartialPivLU<Mat16c> Wlu;

    static Propagator make(const Mat16c& gen,
                           double cond_limit = 1e12) {
        Propagator p;
        p.gen = gen;
        Eigen::ComplexEigenSolver<Mat16c> es(gen);
        if (es.info() == Eigen::Success) {
            Eigen::JacobiSVD<Mat16c> svd(es.eigenvectors());
            const double smin = svd.singularValues().minCoeff();
            const double smax = svd.singularValues().maxCoeff();
            if (smin > 0.0 && smax / smin < cond_limit) {
                p.spectral = true;
                p.lambda = es.eigenvalues();
                p.W = es.eigenvectors();
                p.Wlu = Eigen::PartialPivLU<Mat16c>(p.W);
                // Rayleigh-quotient refinement: diag(W^-1 gen W) is accurate
                // to second order in the eigenpair residuals, which matters
                // when slow rates coexist with fast phases in one generator.
                // Ill-conditioned (near-defective) eigenvalues keep their
                // backward-consistent values: refining them independently of
                // the eigenvectors corrupts the secular t e^(lambda t) terms.
                const Mat16c Winv = p.Wlu.solve(Mat16c::Identity());
                const Vec16c rayleigh = (Winv * gen * p.W).diagonal();
                for (int i = 0; i < 16; ++i) {
                    const double kappa =
                        p.W.col(i).norm() * Winv.row(i).norm();
                    if (kappa < 1e3) p.lambda(i) = rayleigh(i);
                }
            }
        }
        return p;
    }

    Vec16c apply(double t, const Vec16c& v) const {
        if (spectral) {
            Vec16c y = Wlu.solve(v);
            for (int i = 0; i < 16; ++i) y(i) *= std::exp(lambda(i) * t);
            return W * y;
        }
        return transfer(t) * v;
    }

    Mat16c transfer(double t) const {
        if (spectral) {
            Vec16c e;
            for (int i = 0; i < 16; ++i) e(i) = std::exp(lambda(i) * t);
            return W * e.asDiagonal() * Wlu.solve(Mat16c::Identity());
        }
        return Mat16c((gen * t).exp());
    }
};

struct Trajectory {
    std::vector<double> times;
    std::vector<Mat4c> states;  // bare basis
    std::vector<double> p_s, p_stationary, p_gg, p_eps1, p_eps2;
    std::vector<double> min_eigenvalue;
};

inline Trajectory propagate(const Liouvillian& L, const Mat4c& rho0,
                            const std::vector<double>& times) {
    if ((rho0 - rho0.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
        throw std::domain_error("initial state must be Hermitian");
    if (std::abs(rho0.trace() - 1.0) > 1e-10)
        throw std::domain_error("initial state must have unit trace");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < 0.0 || (i > 0 && times[i] <= times[i - 1]))
            throw std::domain_error("times must be sorted and nonnegative");
    }
    const Mat4c V = L.dressed_vecs.cast<std::complex<double>>();
    const Mat4c rho_gen = L.kind == BasisKind::dressed
                              ? Mat4c(V.adjoint() * rho0 * V)
                              : rho0;
    const Propagator prop = Propagator::make(L.gen);
    const Vec16c v0 = vec_rm(rho_gen);

    Eigen::Vector4cd sym;  // bare symmetric state
    sym << 0, 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 0;
    const Eigen::Vector4cd e1 = V.col(0), e2 = V.col(1);

    Trajectory tr;
    tr.times = times;
    for (double t : times) {
        Mat4c rho = unvec_rm(prop.apply(t, v0));
        if (L.kind == BasisKind::dressed) rho = V * rho * V.adjoint();
        const Mat4c herm = 0.5 * (rho + rho.adjoint());
        Eigen::SelfAdjointEigenSolver<Mat4c> se(herm);
        tr.states.push_back(rho);
        tr.p_s.push_back(std::real(sym.dot(herm * sym)));
        tr.p_gg.push_back(std::real(herm(0, 0)));
        tr.p_eps1.push_back(std::real(e1.dot(herm * e1)));
        tr.p_eps2.push_back(std::real(e2.dot(herm * e2)));
        tr.p_stationary.push_back(L.flavor == Flavor::standard
                                      ? tr.p_gg.back()
                                      : tr.p_eps1.back());
        tr.min_eigenvalue.push_back(se.eigenvalues().minCoeff());
    }
    return tr;
}

/// Trace-one kernel vector of the generator, reported in the bare basis.
inline Mat4c steady_state(const Liouvillian& L) {
    Eigen::ComplexEigenSolver<Mat16c> es(L.gen);
    if (es.info() != Eigen::Success)
        throw NumericalError("generator eigendecomposition failed");
    const double tol = 1e-10 * std::max(L.gen.cwiseAbs().maxCoeff(), 1e-300);
    int kernel_index = -1;
    int kernel_count = 0;
    for (int i = 0; i < 16; ++i) {
        if (std::abs(es.eigenvalues()(i)) < tol) {
            ++kernel_count;
            kernel_index = i;
        }
    }
    if (kernel_count != 1)
        throw NumericalError("steady state kernel is degenerate or missing");
    Mat4c rho = unvec_rm(es.eigenvectors().col(kernel_index));
    rho = 0.5 * (rho + rho.adjoint());
    rho /= rho.trace();
    if (L.kind == BasisKind::dressed) {
        const Mat4c V = L.dressed_vecs.cast<std::complex<double>>();
        rho = V * rho * V.adjoint();
    }
    return rho;
}

}  // namespace dk

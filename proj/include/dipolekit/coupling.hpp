// coupling.hpp — coupling tensors, rates, and principal-value shift functions

#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "dipolekit/quadrature.hpp"
#include "dipolekit/units.hpp"

namespace dk {

using Mat3 = Eigen::Matrix3d;

/// Bose-Einstein occupation at frequency omega; empty beta means vacuum (0).
inline double thermal_n(double omega, const std::optional<double>& beta) {
    if (!beta) return 0.0;
    return 1.0 / std::expm1(*beta * omega);
}

namespace detail {

inline constexpr long double pi_l = 3.141592653589793238462643383279503L;

/// Dipole contractions with the transverse projectors: pp = d.(1-RR).d,
/// p3 = d.(1-3RR).d. Shared by every coupling coefficient below.
struct Projections {
    double pp;
    double p3;
};

inline Projections project(const Vec3& d, const Vec3& Rhat) {
    const double dd = d.squaredNorm();
    const double dr = d.dot(Rhat);
    return {dd - dr * dr, dd - 3.0 * dr * dr};
}

inline void require_separation(const Vec3& Rvec) {
    if (!(Rvec.norm() > 0.0))
        throw std::domain_error("coupling tensors need nonzero separation");
}

/// cos(x)/x^2 - sin(x)/x^3, series-expanded for small x where the direct
/// form loses ~1e-16/x^3 to cancellation.
inline double cos_sin_radial(double x) {
    if (std::abs(x) < 0.1) {
        const double x2 = x * x;
        return -1.0 / 3.0 +
               x2 * (1.0 / 30.0 + x2 * (-1.0 / 840.0 + x2 / 45360.0));
    }
    return std::cos(x) / (x * x) - std::sin(x) / (x * x * x);
}

}  // namespace detail

/// Transverse field correlation tensor tau_ij(omega, R); symmetric, real.
inline Mat3 tau_tensor(double omega, const Vec3& Rvec) {
    detail::require_separation(Rvec);
    const double R = Rvec.norm();
    const Vec3 n = Rvec / R;
    const double x = omega * R;
    const Mat3 perp = Mat3::Identity() - n * n.transpose();
    const Mat3 quad = Mat3::Identity() - 3.0 * n * n.transpose();
    const double pre = omega * omega * omega / (2.0 * M_PI);
    return pre *
           (perp * (std::sin(x) / x) + quad * detail::cos_sin_radial(x));
}

/// Resonant energy-transfer tensor V_ij(omega, R); Delta12 = d_i d_j V_ij.
inline Mat3 v_tensor(double omega, const Vec3& Rvec) {
    detail::require_separation(Rvec);
    const double R = Rvec.norm();
    const Vec3 n = Rvec / R;
    const double x = omega * R;
    const double sx = std::sin(x), cx = std::cos(x);
    const Mat3 perp = Mat3::Identity() - n * n.transpose();
    const Mat3 quad = Mat3::Identity() - 3.0 * n * n.transpose();
    const double pre = -omega * omega * omega / (4.0 * M_PI);
    return pre * (perp * (cx / x) - quad * (sx / (x * x) + cx / (x * x * x)));
}

/// Static dipole-dipole Coulomb coupling C = d.(1-3RR).d / (4 pi R^3).
inline double static_coulomb(const Vec3& d, const Vec3& Rvec) {
    detail::require_separation(Rvec);
    const double R = Rvec.norm();
    const auto pr = detail::project(d, Rvec / R);
    return pr.p3 / (4.0 * M_PI * R * R * R);
}

/// Resonant-transfer shift Delta12 = d_i d_j V_ij(omega, R). Contracted in
/// extended precision so the closed-form identity with the transverse part
/// survives across the whole near-to-far-zone range.
inline double delta12(double omega, const Vec3& d, const Vec3& Rvec) {
    detail::require_separation(Rvec);
    const double R = Rvec.norm();
    const auto pr = detail::project(d, Rvec / R);
    const long double x = static_cast<long double>(omega) * R;
    const long double sx = sinl(x), cx = cosl(x);
    const long double w3 = static_cast<long double>(omega) * omega * omega;
    const long double bracket = static_cast<long double>(pr.pp) * cx / x -
                                static_cast<long double>(pr.p3) *
                                    (sx / (x * x) + cx / (x * x * x));
    return static_cast<double>(-w3 / (4.0L * detail::pi_l) * bracket);
}

/// Transverse-field part of the resonant-transfer shift; differs from
/// delta12 only through (1-cos x) in the R^-3 term, written as 2 sin^2(x/2).
inline double delta12_transverse(double omega, const Vec3& d, const Vec3& Rvec) {
    detail::require_separation(Rvec);
    const double R = Rvec.norm();
    const auto pr = detail::project(d, Rvec / R);
    const long double x = static_cast<long double>(omega) * R;
    const long double sx = sinl(x), cx = cosl(x);
    const long double one_minus_cx = 2.0L * sinl(0.5L * x) * sinl(0.5L * x);
    const long double w3 = static_cast<long double>(omega) * omega * omega;
    const long double bracket = static_cast<long double>(pr.pp) * cx / x -
                                static_cast<long double>(pr.p3) *
                                    (sx / (x * x) - one_minus_cx / (x * x * x));
    return static_cast<double>(-w3 / (4.0L * detail::pi_l) * bracket);
}

/// Single-dipole spontaneous rate gamma = omega0^3 |d|^2 / (3 pi).
inline double gamma0(double omega0, const Vec3& d) {
    return omega0 * omega0 * omega0 * d.squaredNorm() / (3.0 * M_PI);
}

/// Self decay rate at signed frequency: (1+N)gamma*omega/omega0 for omega>0;
/// for omega<0 the absorption form N(|omega|) times the spontaneous rate at
/// |omega| (vanishes at vacuum).
inline double gamma_self(double omega, double omega0, const Vec3& d,
                         const std::optional<double>& beta) {
    const double g = gamma0(omega0, d);
    const double aw = std::abs(omega);
    const double spont = g * aw / omega0;
    const double n = thermal_n(aw, beta);
    return omega > 0.0 ? (1.0 + n) * spont : n * spont;
}

/// Cross decay rate at signed frequency: (1+N) d.tau(omega,R).d omega0^2/omega^2
/// for omega>0; N(|omega|) times the spontaneous form at |omega| otherwise.
inline double gamma_cross(double omega, double omega0, const Vec3& d,
                          const Vec3& Rvec, const std::optional<double>& beta) {
    const double aw = std::abs(omega);
    const double spont =
        d.dot(tau_tensor(aw, Rvec) * d) * omega0 * omega0 / (aw * aw);
    const double n = thermal_n(aw, beta);
    return omega > 0.0 ? (1.0 + n) * spont : n * spont;
}

namespace detail {

/// PV integral of g(x)/(pole - x) over contiguous subintervals with
/// per-interval panel caps; the pole must not sit on an interior edge.
template <class G>
double pv_piecewise(G&& g, double pole, const std::vector<double>& edges,
                    const std::vector<double>& caps) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        total += quad::principal_value(g, pole, edges[i], edges[i + 1], caps[i]);
    return total;
}

/// Shared PV machinery for the shift functions: integrate
/// num(w_k) [ (1+N_k)/(omega - w_k) + N_k/(omega + w_k) ] over (0, upper)
/// with regulator exp(-eps w_k) and Richardson extrapolation in eps.
/// osc_cap limits the panel width for oscillatory numerators (<=0: none).
template <class Num>
double pv_shift(Num&& num, double omega, const NaturalParams& p,
                double osc_cap, double eps, double upper) {
    if (!(std::abs(omega) > 0.0))
        throw std::domain_error("shift function needs nonzero frequency");
    if (!(p.cutoff > std::abs(omega)))
        throw std::domain_error("cutoff must exceed |omega|");
    const double cutoff = upper;
    // Resolve the thermal knee and the pole region finely, the smooth tail
    // coarsely; oscillatory numerators additionally cap every panel.
    const double s_char =
        std::max(std::abs(omega), p.beta ? 1.0 / *p.beta : std::abs(omega));
    double split = std::min(cutoff, 40.0 * s_char);
    if (split > 0.9 * cutoff) split = cutoff;
    auto cap = [&](double w) {
        return osc_cap > 0.0 ? std::min(w, osc_cap) : w;
    };
    std::vector<double> edges{0.0, split};
    std::vector<double> caps{cap(s_char / 4.0)};
    // Octave subdivision of the tail: the integrands carry 1/omega_k
    // structure over several decades, which uniform panels under-resolve.
    double lo = split;
    while (lo < cutoff) {
        const double hi = std::min(2.0 * lo, cutoff);
        edges.push_back(hi);
        caps.push_back(cap(0.5 * (hi - lo)));
        lo = hi;
    }
    auto eval = [&](double eps_k) {
        // Beyond ~45/eps the regulator has extinguished the integrand; clip
        // the edge list there so long oscillatory tails stay affordable.
        const double reach = std::max(45.0 / eps_k, split);
        std::vector<double> e2{edges.front()};
        std::vector<double> c2;
        for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
            const double hi = std::min(edges[i + 1], reach);
            if (hi <= e2.back()) break;
            e2.push_back(hi);
            c2.push_back(caps[i]);
        }
        auto emission = [&](double wk) {
            return num(wk) * (1.0 + thermal_n(wk, p.beta)) *
                   std::exp(-eps_k * wk);
        };
        double value = pv_piecewise(emission, omega, e2, c2);
        if (p.beta) {
            // N_k/(omega + w_k) = -N_k / ((-omega) - w_k)
            auto absorption = [&](double wk) {
                return num(wk) * thermal_n(wk, p.beta) * std::exp(-eps_k * wk);
            };
            value -= pv_piecewise(absorption, -omega, e2, c2);
        }
        return value;
    };
    return quad::regulator_extrapolate(eval, eps);
}

}  // namespace detail

/// Principal-value shift S_self(omega) (signed frequency argument); the
/// integral is truncated at the declared UV cutoff.
inline double pv_shift_self(double omega, const NaturalParams& p) {
    const double g = gamma0(p.omega0, p.d);
    auto num = [&](double wk) { return g / (2.0 * M_PI) * wk / p.omega0; };
    return detail::pv_shift(num, omega, p, 0.0, p.pv_regulator_eps, p.cutoff);
}

/// Principal-value shift S_cross(omega) with oscillatory-tail panel cap.
inline double pv_shift_cross(double omega, const NaturalParams& p) {
    const auto pr = detail::project(p.d, p.Rhat);
    const double R = p.R;
    auto num = [&](double wk) {
        const double x = wk * R;
        const double dtaud =
            wk * wk * wk / (2.0 * M_PI) *
            (pr.pp * std::sin(x) / x + pr.p3 * detail::cos_sin_radial(x));
        return dtaud * p.omega0 * p.omega0 / (wk * wk) / (2.0 * M_PI);
    };
    // The oscillatory integrand converges without a cutoff; the slow 1/w_k
    // tail past the cutoff still matters, so integrate to where the
    // regulator extinguishes it. The regulator scale follows the
    // oscillation period so the tail stays a bounded number of panels.
    const double eps = std::max(p.pv_regulator_eps, 1e-3 * R);
    const double upper = std::max(p.cutoff, 160.0 / eps);
    return detail::pv_shift(num, omega, p, M_PI / R, eps, upper);
}

/// All coupling coefficients for one scenario, with memoized shift integrals.
struct CouplingSet {
    NaturalParams params;
    double C{0.0};             // static Coulomb coupling [1/s]
    double gamma{0.0};         // single-dipole decay [1/s]
    double delta{0.0};         // single-dipole shift S(omega0) - S(-omega0) [1/s]
    double delta12{0.0};       // resonant-transfer shift at omega0 [1/s]
    double delta12_transverse{0.0};

    double N(double omega) const { return thermal_n(omega, params.beta); }

    double gamma_self_at(double omega) const {
        return gamma_self(omega, params.omega0, params.d, params.beta);
    }
    double gamma12_at(double omega) const {
        return gamma_cross(omega, params.omega0, params.d, params.Rvec,
                           params.beta);
    }

    double S_self(double omega) const {
        auto it = s_self_.find(omega);
        if (it != s_self_.end()) return it->second;
        const double v = pv_shift_self(omega, params);
        s_self_.emplace(omega, v);
        return v;
    }
    double S_cross(double omega) const {
        auto it = s_cross_.find(omega);
        if (it != s_cross_.end()) return it->second;
        const double v = pv_shift_cross(omega, params);
        s_cross_.emplace(omega, v);
        return v;
    }

    std::complex<double> Gamma_self(double omega) const {
        return {0.5 * gamma_self_at(omega), S_self(omega)};
    }
    std::complex<double> Gamma_cross(double omega) const {
        return {0.5 * gamma12_at(omega), S_cross(omega)};
    }

    static CouplingSet make(const NaturalParams& p, bool with_delta = true) {
        CouplingSet cs;
        cs.params = p;
        cs.C = static_coulomb(p.d, p.Rvec);
        cs.gamma = gamma0(p.omega0, p.d);
        cs.delta12 = dk::delta12(p.omega0, p.d, p.Rvec);
        cs.delta12_transverse = dk::delta12_transverse(p.omega0, p.d, p.Rvec);
        if (with_delta) cs.delta = cs.S_self(p.omega0) - cs.S_self(-p.omega0);
        return cs;
    }

private:
    mutable std::map<double, double> s_self_;
    mutable std::map<double, double> s_cross_;
};

}  // namespace dk

// regression.hpp — two-time correlations via quantum regression, and spectra

#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dipolekit/liouvillian.hpp"

namespace dk {

/// Regression machinery bound to one generator: component vectors/matrices
/// over the operator basis x_i = |m><n| (i = 4m + n, generator basis).
struct RegressionEngine {
    Liouvillian L;
    Propagator prop;
    Mat4c V;  // dressed vectors over the bare basis

    static RegressionEngine make(const Liouvillian& liou) {
        RegressionEngine e;
        e.L = liou;
        e.prop = Propagator::make(liou.gen);
        e.V = liou.dressed_vecs.cast<std::complex<double>>();
        return e;
    }

    Mat4c to_gen(const Mat4c& op_bare) const {
        return L.kind == BasisKind::dressed ? Mat4c(V.adjoint() * op_bare * V)
                                           : op_bare;
    }

    /// <O(t) O'(t')> for t >= t' >= 0; operators and state in the bare basis.
    std::complex<double> correlate(const Mat4c& O_bare, const Mat4c& Op_bare,
                                   const Mat4c& rho0_bare, double t,
                                   double tprime) const {
        if (t < tprime || tprime < 0.0)
            throw std::domain_error("regression requires t >= t' >= 0");
        const Mat4c O = to_gen(O_bare);
        const Mat4c Op = to_gen(Op_bare);
        const Mat4c rho = to_gen(rho0_bare);
        const Vec16c ov = vec_rm(O.transpose());  // O_i = tr(O x_i)
        const Mat16c opmat = lift(Op, Mat4c::Identity());  // tr(x_i^† O' x_j)
        Vec16c v = prop.apply(tprime, vec_rm(rho));
        v = opmat * v;
        v = prop.apply(t - tprime, v);
        return ov.cwiseProduct(v).sum();  // plain transpose contraction
    }

    /// Correlation array entry C_{nmp}(t,t') = (F(t-t') X_m F(t'))_{np} with
    /// X_m the left-multiplication matrix of x_m; p must index a diagonal
    /// basis operator (the initial state).
    std::complex<double> corr_entry(int n, int m, int p, double t,
                                    double tprime) const {
        if (t < tprime || tprime < 0.0)
            throw std::domain_error("regression requires t >= t' >= 0");
        if (p % 5 != 0)
            throw std::domain_error("initial index must be diagonal");
        Mat4c xm = Mat4c::Zero();
        xm(m / 4, m % 4) = 1.0;
        const Mat16c Xm = lift(xm, Mat4c::Identity());
        Vec16c v = Vec16c::Zero();
        v(p) = 1.0;
        v = prop.apply(tprime, v);
        v = Xm * v;
        v = prop.apply(t - tprime, v);
        return v(n);
    }
};

/// RWA source-field lowering operator in the generator basis: transition
/// matrix elements of sigma1^x + sigma2^x weighted by the squared transition
/// frequency, lowering part only.
inline Mat4c source_lowering(const Liouvillian& L, const DressedBasis& db) {
    Mat4 sx_sum = Mat4::Zero();
    sx_sum(0, 1) = sx_sum(1, 0) = 1.0;
    sx_sum(2, 3) = sx_sum(3, 2) = 1.0;
    sx_sum(0, 2) = sx_sum(2, 0) = 1.0;
    sx_sum(1, 3) = sx_sum(3, 1) = 1.0;
    Vec4 energy;
    Mat4 x;
    if (L.kind == BasisKind::dressed) {
        energy = db.eps;
        x = db.vecs.transpose() * sx_sum * db.vecs;
    } else {
        energy << 0.0, L.omega0, L.omega0, 2.0 * L.omega0;
        x = sx_sum;
    }
    Mat4c B = Mat4c::Zero();
    for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n)
            if (energy(n) > energy(m)) {
                const double gap = energy(n) - energy(m);
                B(m, n) = gap * gap * x(m, n);
            }
    return B;
}

struct SpectrumCurve {
    std::vector<double> omega_grid;  // [1/s]
    std::vector<double> values;
    double peak_center{0.0};  // [1/s]
    double peak_height{0.0};
    double fwhm{0.0};  // [1/s]
    double mu_det{1.0};
    std::string note;
};

namespace detail {

inline void fill_lorentzian(SpectrumCurve& sc, double amplitude, double rate,
                            double center) {
    sc.peak_center = center;
    sc.fwhm = rate;
    sc.peak_height = amplitude / (0.25 * rate * rate);
    sc.values.reserve(sc.omega_grid.size());
    for (double w : sc.omega_grid) {
        const double dw = w - center;
        sc.values.push_back(amplitude / (0.25 * rate * rate + dw * dw));
    }
}

}  // namespace detail

/// Lorentzian spectrum of the bare symmetric-state decay channel.
inline SpectrumCurve spectrum_standard(const CouplingSet& cs,
                                       const DressedBasis& db,
                                       const std::vector<double>& omega_grid,
                                       double mu_det = 1.0) {
    double gamma_s = 0.0, gamma_s0 = 0.0;
    symmetric_decay_rates(db, cs, gamma_s, gamma_s0);
    const double w0 = cs.params.omega0;
    const double center = w0 + cs.delta + cs.delta12;
    SpectrumCurve sc;
    sc.omega_grid = omega_grid;
    sc.mu_det = mu_det;
    detail::fill_lorentzian(sc, 2.0 * w0 * w0 * w0 * w0 * mu_det, gamma_s0,
                            center);
    return sc;
}

/// Shifted symmetric-to-stationary transition frequency of the dressed
/// picture, assembled from the S functions at the gap frequencies.
inline double omega2_shifted(const CouplingSet& cs, const DressedBasis& db) {
    const double w1 = db.omega1, w2 = db.omega2;
    const double a = db.a, b = db.b, c = db.c;
    return w2 + 2.0 * (cs.S_self(-w1) * (b * b - a * a) +
                       cs.S_cross(-w1) * (b * b + a * a) +
                       c * c * (cs.S_self(w2) - cs.S_self(-w2) +
                                cs.S_cross(w2) - cs.S_cross(-w2)));
}

/// Lorentzian spectrum of the dressed symmetric-channel decay.
inline SpectrumCurve spectrum_new(const CouplingSet& cs,
                                  const DressedBasis& db,
                                  const std::vector<double>& omega_grid,
                                  double mu_det = 1.0) {
    double gamma_s = 0.0, gamma_s0 = 0.0;
    symmetric_decay_rates(db, cs, gamma_s, gamma_s0);
    const double amp = 2.0 * db.a * db.omega2 * db.omega2;
    SpectrumCurve sc;
    sc.omega_grid = omega_grid;
    sc.mu_det = mu_det;
    detail::fill_lorentzian(sc, amp * amp * mu_det, gamma_s,
                            omega2_shifted(cs, db));
    return sc;
}

/// Windowed double-time-integral spectrum from the regression engine;
/// trapezoidal rule on a uniform grid of nt points over [0, T].
inline SpectrumCurve spectrum_numeric(const Liouvillian& L,
                                      const DressedBasis& db,
                                      const Mat4c& rho0_bare, double T, int nt,
                                      const std::vector<double>& omega_grid,
                                      double mu_det = 1.0) {
    if (nt < 2 || !(T > 0.0)) throw std::domain_error("bad spectrum window");
    const RegressionEngine eng = RegressionEngine::make(L);
    const Mat4c B = source_lowering(L, db);
    const Mat4c rho = eng.to_gen(rho0_bare);
    const double dt = T / (nt - 1);

    // G(t_i, t_j) = u(t_i - t_j) . w_j with u(tau)^T = O^T F(tau) and
    // w_j = O' F(t_j) rho; only tau = t_i - t_j enters the phase, so the
    // double sum collapses to a single sum over tau.
    const Vec16c ov = vec_rm(Mat4c(B.adjoint()).transpose());
    const Mat16c opmat = lift(B, Mat4c::Identity());
    std::vector<Vec16c> w(nt), u(nt);
    Vec16c state = vec_rm(rho);
    const Mat16c step = eng.prop.transfer(dt);
    const Mat16c step_t = step.transpose();
    Vec16c uacc = ov;
    for (int j = 0; j < nt; ++j) {
        w[j] = opmat * state;
        u[j] = uacc;
        state = step * state;
        uacc = step_t * uacc;
    }
    std::vector<std::complex<double>> h(nt, 0.0);
    for (int tau = 0; tau < nt; ++tau)
        for (int j = 0; j + tau < nt; ++j) {
            const int i = j + tau;
            double wgt = 1.0;
            if (i == 0 || i == nt - 1) wgt *= 0.5;
            if (j == 0 || j == nt - 1) wgt *= 0.5;
            h[tau] += wgt * u[tau].cwiseProduct(w[j]).sum();
        }

    SpectrumCurve sc;
    sc.omega_grid = omega_grid;
    sc.mu_det = mu_det;
    sc.values.reserve(omega_grid.size());
    for (double om : omega_grid) {
        std::complex<double> s = h[0];
        for (int tau = 1; tau < nt; ++tau)
            s += 2.0 * (std::exp(std::complex<double>(0.0, -om * dt * tau)) *
                        h[tau])
                           .real();
        sc.values.push_back(mu_det * dt * dt * s.real());
    }

    // Grid-based peak metadata with parabolic refinement of the maximum.
    int imax = 0;
    for (int i = 1; i < static_cast<int>(sc.values.size()); ++i)
        if (sc.values[i] > sc.values[imax]) imax = i;
    sc.peak_height = sc.values.empty() ? 0.0 : sc.values[imax];
    sc.peak_center = sc.omega_grid.empty() ? 0.0 : sc.omega_grid[imax];
    if (imax > 0 && imax + 1 < static_cast<int>(sc.values.size())) {
        const double y0 = sc.values[imax - 1], y1 = sc.values[imax],
                     y2 = sc.values[imax + 1];
        const double denom = y0 - 2.0 * y1 + y2;
        if (denom != 0.0) {
            const double frac = 0.5 * (y0 - y2) / denom;
            sc.peak_center += frac * (sc.omega_grid[imax + 1] -
                                      sc.omega_grid[imax]);
        }
    }
    const double half = 0.5 * sc.peak_height;
    double lo = sc.omega_grid.front(), hi = sc.omega_grid.back();
    for (int i = imax; i > 0; --i)
        if (sc.values[i - 1] < half) {
            const double f = (half - sc.values[i - 1]) /
                             (sc.values[i] - sc.values[i - 1]);
            lo = sc.omega_grid[i - 1] + f * (sc.omega_grid[i] - sc.omega_grid[i - 1]);
            break;
        }
    for (int i = imax; i + 1 < static_cast<int>(sc.values.size()); ++i)
        if (sc.values[i + 1] < half) {
            const double f = (sc.values[i] - half) /
                             (sc.values[i] - sc.values[i + 1]);
            hi = sc.omega_grid[i] + f * (sc.omega_grid[i + 1] - sc.omega_grid[i]);
            break;
        }
    sc.fwhm = hi - lo;
    return sc;
}

}  // namespace dk

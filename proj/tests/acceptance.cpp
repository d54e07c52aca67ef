// acceptance.cpp — end-to-end acceptance gate, one verdict line per criterion

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <random>
#include <vector>

#include "dipolekit/gauge.hpp"
#include "dipolekit/regression.hpp"
#include "dipolekit/units.hpp"

using namespace dk;

namespace {

int failures = 0;

void verdict(int number, bool ok, const char* what, double metric,
             double seconds) {
    std::printf("criterion %d: %s  %s = %.3e  (%.2f s)\n", number,
                ok ? "PASS" : "FAIL", what, metric, seconds);
    if (!ok) ++failures;
}

double now_seconds() {
    using clock = std::chrono::steady_clock;
    static const clock::time_point t0 = clock::now();
    return std::chrono::duration<double>(clock::now() - t0).count();
}

NaturalParams scaled_scenario(double C_over_omega0, double R = 1e-1) {
    NaturalParams p;
    p.omega0 = 1.0;
    p.R = R;
    p.Rvec = Vec3(0, 0, R);
    p.Rhat = Vec3(0, 0, 1);
    const double d2 = C_over_omega0 * 4.0 * M_PI * R * R * R;
    p.d = Vec3(std::sqrt(d2), 0, 0);
    p.cutoff = 2.0 * M_PI / p.R;
    p.pv_regulator_eps = 1e-3 / p.cutoff;
    return p;
}

Mat4c symmetric_state() {
    Eigen::Vector4cd s;
    s << 0, 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 0;
    return s * s.adjoint();
}

Mat4c antisymmetric_state() {
    Eigen::Vector4cd a;
    a << 0, 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 0;
    return a * a.adjoint();
}

Mat4c random_density_matrix(std::mt19937& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Mat4c G;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            G(i, j) = std::complex<double>(g(rng), g(rng));
    Mat4c rho = G * G.adjoint();
    return rho / rho.trace();
}

// Abel-regulated frequency-integral evaluation of the resonant-transfer
// shift, independent of the closed form.
double delta12_frequency_integral(double omega0, const Vec3& d,
                                  const Vec3& Rvec) {
    const double R = Rvec.norm();
    const auto pr = detail::project(d, Vec3(Rvec / R));
    auto dtaud = [&](double wk) {
        const double x = wk * R;
        return wk * wk * wk / (2.0 * M_PI) *
               (pr.pp * std::sin(x) / x +
                pr.p3 * (std::cos(x) / (x * x) - std::sin(x) / (x * x * x)));
    };
    auto eval = [&](double eps) {
        auto h = [&](double wk) {
            return dtaud(wk) * wk / M_PI / (omega0 + wk) * std::exp(-eps * wk);
        };
        return quad::principal_value(h, omega0, 0.0, 45.0 / eps, M_PI / R);
    };
    return quad::regulator_extrapolate(eval, 1e-3 * R);
}

std::vector<double> time_grid(double tmax, int n) {
    std::vector<double> t;
    for (int i = 0; i < n; ++i) t.push_back(1e-12 + tmax * (i + 1) / n);
    return t;
}

// first grid time at which the stationary population overtakes the
// symmetric one
double crossover_time(const Trajectory& tr) {
    for (std::size_t i = 0; i < tr.times.size(); ++i)
        if (tr.p_stationary[i] >= tr.p_s[i]) return tr.times[i];
    return tr.times.back() * 2.0;
}

void criterion_1() {
    const double t0 = now_seconds();
    const double w0 = 1.7;
    const GaugeProbe probes[4] = {
        {GaugeProbe::Kind::coulomb, w0, 0.0},
        {GaugeProbe::Kind::multipolar, w0, 0.0},
        {GaugeProbe::Kind::symmetric, w0, 0.0},
        {GaugeProbe::Kind::constant, w0, 0.37},
    };
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> ulog(-2.0, 4.0);
    std::uniform_real_distribution<double> un(0.0, 5.0);
    double maxrel = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const double wk = w0 * std::pow(10.0, ulog(rng));
        if (std::abs(wk - w0) < 1e-6 * w0) continue;
        const double Nk = un(rng);
        for (const GaugeProbe& pr : probes) {
            for (Level lv : {Level::excited, Level::ground}) {
                const double got = gauge_shift_integrand(lv, wk, Nk, pr);
                const double want = gauge_shift_closed_form(lv, wk, Nk, w0);
                maxrel = std::max(maxrel, std::abs(got - want) /
                                              std::max(std::abs(want), 1.0));
            }
            const double got = gauge_delta12_integrand(wk, pr);
            const double want = gauge_delta12_closed_form(wk, w0);
            maxrel = std::max(
                maxrel, std::abs(got - want) / std::max(std::abs(want), 1.0));
        }
    }
    const double dt = now_seconds() - t0;
    verdict(1, maxrel <= 1e-10 && dt < 1.0, "gauge identity max rel dev",
            maxrel, dt);
}

void criterion_2() {
    const double t0 = now_seconds();
    double maxrel = 0.0;
    const double w = 1.0;
    const Vec3 d(0.05, 0, 0);
    for (double x : {0.1, 1.0, 10.0}) {
        const Vec3 Rvec(0, 0, x / w);
        const double oracle = delta12_frequency_integral(w, d, Rvec);
        const double closed = delta12(w, d, Rvec);
        maxrel = std::max(maxrel,
                          std::abs(oracle - closed) / std::abs(closed));
    }
    const NaturalParams p = to_natural(rydberg_defaults(50));
    const double dS = pv_shift_cross(p.omega0, p) + pv_shift_cross(-p.omega0, p);
    const double closed = delta12_transverse(p.omega0, p.d, p.Rvec);
    const double srel = std::abs(dS - closed) / std::abs(closed);
    const double dt = now_seconds() - t0;
    verdict(2, maxrel <= 1e-3 && srel <= 1e-2 && dt < 30.0,
            "transfer-shift quadrature max rel dev", std::max(maxrel, srel),
            dt);
}

void criterion_3() {
    const double t0 = now_seconds();
    const double w = 1.0;
    const Vec3 d(0.3, 0.5, 0.2);
    const Vec3 nhat = Vec3(1, 2, -1).normalized();
    double maxrel = 0.0;
    for (int i = 0; i <= 40; ++i) {
        const double x = std::pow(10.0, -2.0 + 4.0 * i / 40.0);
        const Vec3 Rvec = nhat * (x / w);
        const double C = static_coulomb(d, Rvec);
        const double diff =
            delta12(w, d, Rvec) - delta12_transverse(w, d, Rvec);
        maxrel = std::max(maxrel, std::abs(diff - C) / std::abs(C));
    }
    verdict(3, maxrel <= 1e-12, "shift-difference identity max rel dev",
            maxrel, now_seconds() - t0);
}

void criterion_4() {
    const double t0 = now_seconds();
    // trajectory coincidence at very wide separation
    const NaturalParams p = to_natural(rydberg_defaults(50, 1e6));
    const CouplingSet cs = CouplingSet::make(p, false);
    const DressedBasis db = dressed_basis(p.omega0, cs.C);
    const JumpOperatorSet js = jump_operators(db);
    const Liouvillian Ls = build_standard(cs, db);
    const Liouvillian Lp = build_partial_secular(cs, db, js);
    const std::vector<double> times = time_grid(5.0 / cs.gamma, 50);
    const Trajectory ts = propagate(Ls, symmetric_state(), times);
    const Trajectory tp = propagate(Lp, symmetric_state(), times);
    double maxdiff = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        maxdiff = std::max(maxdiff, std::abs(ts.p_s[i] - tp.p_s[i]));
        maxdiff = std::max(maxdiff, std::abs(ts.p_gg[i] - tp.p_gg[i]));
    }
    // spectrum coincidence at weak coupling
    const NaturalParams pw = scaled_scenario(1e-6, 1.0);
    const CouplingSet csw = CouplingSet::make(pw);
    const DressedBasis dbw = dressed_basis(pw.omega0, csw.C);
    const std::vector<double> grid = {pw.omega0};
    const SpectrumCurve bare = spectrum_standard(csw, dbw, grid);
    const SpectrumCurve dressed = spectrum_new(csw, dbw, grid);
    double specrel = std::abs(dressed.peak_center / bare.peak_center - 1.0);
    specrel = std::max(specrel,
                       std::abs(dressed.peak_height / bare.peak_height - 1.0));
    specrel = std::max(specrel, std::abs(dressed.fwhm / bare.fwhm - 1.0));
    verdict(4, maxdiff <= 1e-3 && specrel <= 1e-4,
            "weak-coupling coincidence max dev", std::max(maxdiff, specrel),
            now_seconds() - t0);
}

void criterion_5() {
    const double t0 = now_seconds();
    const NaturalParams p = to_natural(rydberg_defaults(50));
    const CouplingSet cs = CouplingSet::make(p, false);
    const DressedBasis db = dressed_basis(p.omega0, cs.C);
    const JumpOperatorSet js = jump_operators(db);
    const bool c_ok = std::abs(cs.C / 3.72e10 - 1.0) <= 1e-2;
    double gs = 0.0, gs0 = 0.0;
    symmetric_decay_rates(db, cs, gs, gs0);
    const bool ratio_ok = std::abs(gs / gs0 / 15.0 - 1.0) <= 0.10;
    const Liouvillian Ls = build_standard(cs, db);
    const Liouvillian Lp = build_partial_secular(cs, db, js);
    const std::vector<double> times = time_grid(5.0 / cs.gamma, 400);
    const Trajectory ts = propagate(Ls, symmetric_state(), times);
    const Trajectory tp = propagate(Lp, symmetric_state(), times);
    const bool cross_ok = crossover_time(tp) < crossover_time(ts);
    verdict(5, c_ok && ratio_ok && cross_ok,
            "strong-coupling rate enhancement", gs / gs0,
            now_seconds() - t0);
}

void criterion_6() {
    const double t0 = now_seconds();
    const NaturalParams p = to_natural(rydberg_defaults(50));
    const CouplingSet cs = CouplingSet::make(p, false);
    const DressedBasis db = dressed_basis(p.omega0, cs.C);
    const JumpOperatorSet js = jump_operators(db);
    const Liouvillian Ls = build_standard(cs, db);
    const Liouvillian Lp = build_partial_secular(cs, db, js);
    const std::vector<double> times = time_grid(5.0 / cs.gamma, 40);
    double drift = 0.0;
    for (const Liouvillian& L : {Ls, Lp}) {
        const Trajectory tr = propagate(L, antisymmetric_state(), times);
        for (std::size_t i = 0; i < times.size(); ++i) {
            const Eigen::Vector4cd a =
                Eigen::Vector4cd(0, 1.0 / std::sqrt(2.0),
                                 -1.0 / std::sqrt(2.0), 0);
            const std::complex<double> pa = a.dot(tr.states[i] * a);
            drift = std::max(drift, std::abs(pa.real() - 1.0));
        }
    }
    verdict(6, drift <= 1e-6, "dark-state population drift", drift,
            now_seconds() - t0);
}

void criterion_7() {
    const double t0 = now_seconds();
    auto ratios = [](double sep, double& pos_ratio, double& shift_diff,
                     double& height_ratio) {
        const NaturalParams p = to_natural(rydberg_defaults(50, sep));
        const CouplingSet cs = CouplingSet::make(p);
        const DressedBasis db = dressed_basis(p.omega0, cs.C);
        double gs = 0.0, gs0 = 0.0;
        symmetric_decay_rates(db, cs, gs, gs0);
        const double w2t = omega2_shifted(cs, db);
        const double w0t = p.omega0 + cs.delta + cs.delta12;
        pos_ratio = w2t / w0t;
        shift_diff = w2t - w0t;
        const double amp = 2.0 * db.a * db.omega2 * db.omega2;
        height_ratio = 2.0 * std::pow(p.omega0, 4) / (0.25 * gs0 * gs0) /
                       (amp * amp / (0.25 * gs * gs));
    };
    double pos = 0.0, diff = 0.0, hr = 0.0, unused = 0.0;
    ratios(15.0, unused, unused, hr);
    ratios(5.0, pos, unused, unused);
    ratios(20.0, unused, diff, unused);
    const bool ok = hr >= 1.5 && hr <= 2.5 && pos >= 1.7 && pos <= 2.3 &&
                    diff >= 0.5e9 && diff <= 2.0e9;
    verdict(7, ok, "peak-position ratio at close separation", pos,
            now_seconds() - t0);
}

void criterion_8() {
    const double t0 = now_seconds();
    const NaturalParams p = scaled_scenario(3.7207236024);
    const CouplingSet cs = CouplingSet::make(p);
    const DressedBasis db = dressed_basis(p.omega0, cs.C);
    const JumpOperatorSet js = jump_operators(db);
    double maxrel = 0.0;
    // collective coherence correlation, bare picture
    {
        const Liouvillian L = build_standard(cs, db);
        const RegressionEngine eng = RegressionEngine::make(L);
        double gs = 0.0, gs0 = 0.0;
        symmetric_decay_rates(db, cs, gs, gs0);
        const double wt = p.omega0 + cs.delta + cs.delta12;
        Mat4c sp = Mat4c::Zero();
        sp(1, 0) = sp(3, 2) = sp(2, 0) = sp(3, 1) = 1.0;
        for (double tp : {0.0, 0.5 / gs0})
            for (double dt : {0.0, 1.0 / gs0}) {
                const double t = tp + dt;
                const std::complex<double> got =
                    eng.correlate(sp, sp.adjoint(), symmetric_state(), t, tp);
                const std::complex<double> want =
                    2.0 * std::exp(-(gs0 / 2.0) * (t + tp)) *
                    std::exp(std::complex<double>(0.0, wt * (t - tp)));
                maxrel = std::max(maxrel, std::abs(got - want) /
                                              std::abs(want));
            }
    }
    // dressed coherence correlation and stationary intensity
    bool stationary_zero = false;
    double semigroup = 0.0;
    {
        const Liouvillian L = build_full_secular(cs, db, js);
        const RegressionEngine eng = RegressionEngine::make(L);
        const double rate =
            db.c * db.c *
            (cs.gamma_self_at(db.omega2) + cs.gamma12_at(db.omega2));
        const double w2t = omega2_shifted(cs, db);
        for (double tp : {0.0, 0.3 / rate})
            for (double dt : {0.0, 1.0 / rate}) {
                const double t = tp + dt;
                const std::complex<double> got =
                    eng.corr_entry(2, 2, 10, t, tp);
                const std::complex<double> want =
                    std::exp(-rate * (t + tp)) *
                    std::exp(std::complex<double>(0.0, w2t * (t - tp)));
                maxrel = std::max(maxrel, std::abs(got - want) /
                                              std::abs(want));
            }
        const Mat4c B = source_lowering(L, db);
        Mat4c ground = Mat4c::Zero();
        ground(0, 0) = 1.0;
        stationary_zero =
            std::abs((B.adjoint() * B * ground).trace()) == 0.0;
        for (auto [t1, t2] : {std::pair{0.3, 0.7}, {2.0, 5.0}}) {
            const Mat16c lhs = eng.prop.transfer(t1 + t2);
            const Mat16c rhs = eng.prop.transfer(t1) * eng.prop.transfer(t2);
            semigroup =
                std::max(semigroup, (lhs - rhs).cwiseAbs().maxCoeff());
        }
    }
    verdict(8, maxrel <= 1e-8 && semigroup <= 1e-10 && stationary_zero,
            "correlation closed-form max rel dev", maxrel,
            now_seconds() - t0);
}

void criterion_9() {
    const double t0 = now_seconds();
    const NaturalParams p = scaled_scenario(3.7207236024);
    const CouplingSet cs = CouplingSet::make(p);
    const DressedBasis db = dressed_basis(p.omega0, cs.C);
    const JumpOperatorSet js = jump_operators(db);
    const Liouvillian Ls = build_standard(cs, db);
    const Liouvillian Lp = build_partial_secular(cs, db, js);
    const Liouvillian Lf = build_full_secular(cs, db, js);
    std::mt19937 rng(11);
    const std::vector<double> times = time_grid(5.0 / cs.gamma, 10);
    double hygiene = 0.0;
    for (const Liouvillian& L : {Ls, Lp, Lf})
        for (int k = 0; k < 5; ++k) {
            const Trajectory tr =
                propagate(L, random_density_matrix(rng), times);
            for (const Mat4c& rho : tr.states) {
                hygiene = std::max(hygiene, std::abs(rho.trace() - 1.0));
                hygiene = std::max(
                    hygiene,
                    (rho - rho.adjoint()).cwiseAbs().maxCoeff());
            }
        }
    double mineig = 0.0;
    for (const Liouvillian& L : {Ls, Lf})
        for (int k = 0; k < 20; ++k) {
            const Trajectory tr =
                propagate(L, random_density_matrix(rng), times);
            for (double e : tr.min_eigenvalue) mineig = std::min(mineig, e);
        }
    Vec16c theta11 = Vec16c::Zero();
    theta11(0) = 1.0;
    const double kernel = (Lf.gen * theta11).cwiseAbs().maxCoeff() /
                          Lf.gen.cwiseAbs().maxCoeff();
    const bool ok = hygiene <= 1e-12 && mineig >= -1e-10 && kernel <= 1e-12;
    verdict(9, ok, "trace/Hermiticity max dev", hygiene,
            now_seconds() - t0);
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    if (failures == 0) {
        std::printf("acceptance: all 9 criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criteria failed\n", failures);
    return 1;
}

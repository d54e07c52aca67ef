// gauge.hpp — gauge-parameter probes and alpha-independent shift integrands

#pragma once

#include <cmath>
#include <stdexcept>

namespace dk {

/// Generalized gauge parameter alpha_k and the resulting mode coefficients
/// u_k^[+-] = (1-alpha)sqrt(omega0/omega_k) -+ alpha sqrt(omega_k/omega0).
struct GaugeProbe {
    enum class Kind { coulomb, multipolar, symmetric, constant };

    Kind kind{Kind::coulomb};
    double omega0{1.0};
    double alpha_const{0.0};  // used when kind == constant

    double alpha(double omega_k) const {
        switch (kind) {
            case Kind::coulomb: return 0.0;
            case Kind::multipolar: return 1.0;
            case Kind::symmetric: return omega0 / (omega0 + omega_k);
            case Kind::constant: return alpha_const;
        }
        return 0.0;
    }
    double u_plus(double omega_k) const {
        const double a = alpha(omega_k);
        return (1.0 - a) * std::sqrt(omega0 / omega_k) -
               a * std::sqrt(omega_k / omega0);
    }
    double u_minus(double omega_k) const {
        const double a = alpha(omega_k);
        return (1.0 - a) * std::sqrt(omega0 / omega_k) +
               a * std::sqrt(omega_k / omega0);
    }
};

enum class Level { excited, ground };

/// Full bracketed level-shift integrand (self-energy pieces folded in via the
/// two-level substitution identities); independent of the gauge choice.
inline double gauge_shift_integrand(Level level, double omega_k, double N_k,
                                    const GaugeProbe& probe) {
    if (!(omega_k > 0.0)) throw std::domain_error("omega_k must be positive");
    const double w0 = probe.omega0;
    if (omega_k == w0) throw std::domain_error("integrand pole at omega_k = omega0");
    const double a = probe.alpha(omega_k);
    const double up = probe.u_plus(omega_k);
    const double um = probe.u_minus(omega_k);
    const double r = w0 / omega_k;
    if (level == Level::excited)
        return a * a - a * (a - 2.0) * (1.0 + 2.0 * N_k) * r +
               w0 * (up * up * N_k / (omega_k + w0) -
                     um * um * (1.0 + N_k) / (omega_k - w0));
    return a * a + a * (a - 2.0) * (1.0 + 2.0 * N_k) * r +
           w0 * (um * um * N_k / (omega_k - w0) -
                 up * up * (1.0 + N_k) / (omega_k + w0));
}

/// Closed form the shift integrand must collapse to for every alpha.
inline double gauge_shift_closed_form(Level level, double omega_k, double N_k,
                                      double omega0) {
    const double pre = omega0 * omega0 / omega_k;
    if (level == Level::excited)
        return pre * ((1.0 + N_k) / (omega0 - omega_k) + N_k / (omega0 + omega_k));
    return -pre * ((1.0 + N_k) / (omega0 + omega_k) + N_k / (omega0 - omega_k));
}

/// Bracketed integrand of the cross-shift in an arbitrary gauge; collapses to
/// omega_k^2 / (omega0^2 - omega_k^2) for every alpha.
inline double gauge_delta12_integrand(double omega_k, const GaugeProbe& probe) {
    if (!(omega_k > 0.0)) throw std::domain_error("omega_k must be positive");
    const double w0 = probe.omega0;
    if (omega_k == w0) throw std::domain_error("integrand pole at omega_k = omega0");
    const double a = probe.alpha(omega_k);
    const double up = probe.u_plus(omega_k);
    const double um = probe.u_minus(omega_k);
    return a * a - 1.0 -
           0.5 * w0 * (up * up / (omega_k + w0) + um * um / (omega_k - w0));
}

inline double gauge_delta12_closed_form(double omega_k, double omega0) {
    return omega_k * omega_k / (omega0 * omega0 - omega_k * omega_k);
}

}  // namespace dk

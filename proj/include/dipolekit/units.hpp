// units.hpp — SI scenario ingestion and conversion to natural units (hbar = eps0 = c = 1)

#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "dipolekit/constants.hpp"

namespace dk {

using Vec3 = Eigen::Vector3d;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Physical scenario in SI units. Temperature is either an inverse temperature
/// beta [1/J] or the vacuum (all thermal occupations exactly zero).
struct ScenarioConfig {
    double omega0_si{0.0};        // transition angular frequency [rad/s]
    Vec3 dipole_si{0, 0, 0};      // transition dipole moment [C m]
    Vec3 separation_si{0, 0, 0};  // R2 - R1 [m]
    std::optional<double> beta_si{};  // inverse temperature [1/J]; empty = vacuum
    double cutoff_si{0.0};        // UV cutoff angular frequency [rad/s]
    std::optional<int> rydberg_n{};

    void validate() const {
        if (!(omega0_si > 0.0)) throw ConfigError("omega0 must be positive");
        if (!(separation_si.norm() > 0.0)) throw ConfigError("separation must be nonzero");
        if (!(dipole_si.norm() > 0.0)) throw ConfigError("dipole moment must be nonzero");
        if (!(cutoff_si > omega0_si)) throw ConfigError("cutoff must exceed omega0");
        if (beta_si && !(*beta_si > 0.0)) throw ConfigError("beta must be positive");
    }
};

/// Scenario in natural units. Frequencies and rates are in 1/s, lengths are
/// light-travel times R/c [s], and the dipole magnitude is pre-scaled so that
/// gamma = omega0^3 |d|^2 / (3 pi) holds with no further constants.
struct NaturalParams {
    double omega0{0.0};
    Vec3 d{0, 0, 0};              // scaled dipole vector
    Vec3 Rvec{0, 0, 0};           // separation as light time [s]
    Vec3 Rhat{0, 0, 1};
    double R{0.0};                // |Rvec| [s]
    std::optional<double> beta{}; // inverse temperature [s]; empty = vacuum
    double cutoff{0.0};           // [1/s]
    double pv_regulator_eps{0.0}; // [s]

    bool vacuum() const { return !beta.has_value(); }
};

inline NaturalParams to_natural(const ScenarioConfig& cfg) {
    cfg.validate();
    namespace k = constants;
    NaturalParams p;
    p.omega0 = cfg.omega0_si;
    // d_nat = d_si / sqrt(eps0 hbar c^3); then C = d^2/(4 pi R^3) and
    // gamma = omega0^3 d^2 / (3 pi) come out directly in 1/s.
    const double dipole_scale =
        1.0 / std::sqrt(k::epsilon0 * k::hbar * k::c_light * k::c_light * k::c_light);
    p.d = cfg.dipole_si * dipole_scale;
    p.Rvec = cfg.separation_si / k::c_light;
    p.R = p.Rvec.norm();
    p.Rhat = p.Rvec / p.R;
    if (cfg.beta_si) p.beta = *cfg.beta_si * k::hbar;
    p.cutoff = cfg.cutoff_si;
    p.pv_regulator_eps = 1e-3 / p.cutoff;
    return p;
}

inline ScenarioConfig to_si(const NaturalParams& p) {
    namespace k = constants;
    ScenarioConfig cfg;
    cfg.omega0_si = p.omega0;
    cfg.dipole_si =
        p.d * std::sqrt(k::epsilon0 * k::hbar * k::c_light * k::c_light * k::c_light);
    cfg.separation_si = p.Rvec * k::c_light;
    if (p.beta) cfg.beta_si = *p.beta / k::hbar;
    cfg.cutoff_si = p.cutoff;
    return cfg;
}

/// Rydberg-flavored defaults: radius r_a = n^2 a0, maximum dipole moment
/// (3/2) n^2 a0 e perpendicular to the separation axis, microwave transition,
/// cutoff at the inverse dipole-radius wavelength 2 pi c / r_a, vacuum field.
inline ScenarioConfig rydberg_defaults(int n, double separation_over_ra = 10.0) {
    if (n < 1) throw ConfigError("principal quantum number must be >= 1");
    namespace k = constants;
    const double ra = static_cast<double>(n) * n * k::bohr_radius;
    const double dmag = 1.5 * static_cast<double>(n) * n * k::bohr_radius * k::elementary_charge;
    ScenarioConfig cfg;
    cfg.omega0_si = 1e10;
    cfg.dipole_si = Vec3(dmag, 0, 0);
    cfg.separation_si = Vec3(0, 0, separation_over_ra * ra);
    cfg.cutoff_si = 2.0 * M_PI * k::c_light / ra;
    cfg.rydberg_n = n;
    return cfg;
}

inline double rydberg_radius_si(int n) {
    return static_cast<double>(n) * n * constants::bohr_radius;
}

}  // namespace dk

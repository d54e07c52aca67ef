// quadrature.hpp — Gauss-Legendre panels and principal-value integration

#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace dk {

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace quad {

struct GaussRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

/// Nodes and weights by Newton iteration on the Legendre recurrence.
inline const GaussRule& gauss_legendre(int n = 24) {
    static thread_local int cached_n = -1;
    static thread_local GaussRule rule;
    if (cached_n == n) return rule;
    rule.nodes.assign(n, 0.0);
    rule.weights.assign(n, 0.0);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.weights[n - 1 - i] = rule.weights[i];
    }
    cached_n = n;
    return rule;
}

/// Integrate f over [a, b] splitting into panels no wider than max_panel.
template <class F>
double panels(F&& f, double a, double b, double max_panel,
              int points_per_panel = 24) {
    if (!(b > a)) return 0.0;
    const auto& gl = gauss_legendre(points_per_panel);
    const int np = std::max(1, static_cast<int>(std::ceil((b - a) / max_panel)));
    const double h = (b - a) / np;
    double total = 0.0;
    for (int p = 0; p < np; ++p) {
        const double lo = a + p * h;
        const double mid = lo + 0.5 * h;
        double s = 0.0;
        for (std::size_t i = 0; i < gl.nodes.size(); ++i)
            s += gl.weights[i] * f(mid + 0.5 * h * gl.nodes[i]);
        total += 0.5 * h * s;
    }
    return total;
}

/// PV integral of g(x)/(pole - x) over [a, b]. The pole may lie inside or
/// outside the domain; inside, the symmetric window [pole-delta, pole+delta]
/// is folded to the regular integrand [g(pole-u) - g(pole+u)]/u.
template <class G>
double principal_value(G&& g, double pole, double a, double b,
                       double max_panel) {
    if (!(b > a)) return 0.0;
    if (pole <= a || pole >= b) {
        return panels([&](double x) { return g(x) / (pole - x); }, a, b, max_panel);
    }
    const double delta = 0.5 * std::min(pole - a, b - pole);
    double result = panels(
        [&](double u) { return (g(pole - u) - g(pole + u)) / u; }, 0.0, delta,
        std::min(max_panel, delta));
    result += panels([&](double x) { return g(x) / (pole - x); }, a, pole - delta,
                     max_panel);
    result += panels([&](double x) { return g(x) / (pole - x); }, pole + delta, b,
                     max_panel);
    return result;
}

/// Evaluate a regulated integral at eps, eps/2, eps/4 and extrapolate the
/// regulator away (linear Richardson on each pair). The two extrapolants must
/// agree; otherwise the quadrature has not converged in the regulator.
template <class Eval>
double regulator_extrapolate(Eval&& eval, double eps,
                             double agreement_tol = 1e-4) {
    const double i0 = eval(eps);
    const double i1 = eval(0.5 * eps);
    const double i2 = eval(0.25 * eps);
    const double e1 = 2.0 * i1 - i0;
    const double e2 = 2.0 * i2 - i1;
    const double scale = std::max({std::abs(e1), std::abs(e2), 1e-300});
    if (std::abs(e1 - e2) > agreement_tol * scale)
        throw NumericalError("regulator extrapolation did not converge");
    return e2;
}

}  // namespace quad
}  // namespace dk

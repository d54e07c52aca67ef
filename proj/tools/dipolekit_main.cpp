// dipolekit_main.cpp — CLI front end: JSON scenario in, CSV tables out

#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dipolekit/gauge.hpp"
#include "dipolekit/regression.hpp"
#include "dipolekit/units.hpp"

using nlohmann::json;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct Grid {
    double from{0.0};
    double to{0.0};
    int points{0};

    std::vector<double> values() const {
        std::vector<double> v;
        v.reserve(points);
        for (int i = 0; i < points; ++i)
            v.push_back(from + (to - from) * i / (points - 1));
        return v;
    }
};

struct RunRequest {
    dk::ScenarioConfig scenario;
    std::string model{"standard"};
    std::string initial{"symmetric"};
    double mu_det{1.0};
    unsigned seed{12345};
    int probes{100};
    std::optional<Grid> time_grid;
    std::optional<Grid> frequency_grid;
    std::optional<Grid> separation_grid;  // [m]
    std::optional<double> fixed_time;     // [s]
};

void require_keys(const json& obj, const std::set<std::string>& allowed,
                  const std::string& context) {
    for (const auto& item : obj.items())
        if (!allowed.count(item.key()))
            throw dk::ConfigError("unknown key \"" + item.key() + "\" in " +
                                  context);
}

double as_number(const json& j, const std::string& what) {
    if (!j.is_number()) throw dk::ConfigError(what + " must be a number");
    return j.get<double>();
}

dk::Vec3 as_vec3(const json& j, const std::string& what) {
    if (!j.is_array() || j.size() != 3)
        throw dk::ConfigError(what + " must be an array of three numbers");
    return dk::Vec3(as_number(j[0], what), as_number(j[1], what),
                    as_number(j[2], what));
}

Grid parse_grid(const json& j, const std::string& context) {
    if (!j.is_object()) throw dk::ConfigError(context + " must be an object");
    require_keys(j, {"from", "to", "points"}, context);
    for (const char* k : {"from", "to", "points"})
        if (!j.contains(k))
            throw dk::ConfigError(context + " needs \"" + k + "\"");
    Grid g;
    g.from = as_number(j["from"], context + ".from");
    g.to = as_number(j["to"], context + ".to");
    if (!j["points"].is_number_integer())
        throw dk::ConfigError(context + ".points must be an integer");
    g.points = j["points"].get<int>();
    if (g.points < 2) throw dk::ConfigError(context + ".points must be >= 2");
    if (!(g.to > g.from))
        throw dk::ConfigError(context + " must be strictly increasing");
    return g;
}

dk::ScenarioConfig parse_scenario(const json& j) {
    if (!j.is_object()) throw dk::ConfigError("\"scenario\" must be an object");
    dk::ScenarioConfig cfg;
    if (j.contains("rydberg_n")) {
        require_keys(j, {"rydberg_n", "separation_over_ra", "beta_si"},
                     "scenario");
        if (!j["rydberg_n"].is_number_integer())
            throw dk::ConfigError("scenario.rydberg_n must be an integer");
        double sep = 10.0;
        if (j.contains("separation_over_ra"))
            sep = as_number(j["separation_over_ra"],
                            "scenario.separation_over_ra");
        cfg = dk::rydberg_defaults(j["rydberg_n"].get<int>(), sep);
    } else {
        require_keys(j,
                     {"omega0_si", "dipole_si", "separation_si", "beta_si",
                      "cutoff_si"},
                     "scenario");
        for (const char* k : {"omega0_si", "dipole_si", "separation_si",
                              "cutoff_si"})
            if (!j.contains(k))
                throw dk::ConfigError(std::string("scenario needs \"") + k +
                                      "\"");
        cfg.omega0_si = as_number(j["omega0_si"], "scenario.omega0_si");
        cfg.dipole_si = as_vec3(j["dipole_si"], "scenario.dipole_si");
        cfg.separation_si =
            as_vec3(j["separation_si"], "scenario.separation_si");
        cfg.cutoff_si = as_number(j["cutoff_si"], "scenario.cutoff_si");
    }
    if (j.contains("beta_si"))
        cfg.beta_si = as_number(j["beta_si"], "scenario.beta_si");
    cfg.validate();
    return cfg;
}

RunRequest parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw dk::ConfigError("cannot open config file " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw dk::ConfigError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw dk::ConfigError("config must be a JSON object");
    require_keys(j,
                 {"scenario", "model", "initial", "mu_det", "seed", "probes",
                  "time_grid", "frequency_grid", "separation_grid",
                  "fixed_time"},
                 "config");
    if (!j.contains("scenario")) throw dk::ConfigError("config needs \"scenario\"");
    RunRequest req;
    req.scenario = parse_scenario(j["scenario"]);
    if (j.contains("model")) {
        if (!j["model"].is_string())
            throw dk::ConfigError("model must be a string");
        req.model = j["model"].get<std::string>();
    }
    if (j.contains("initial")) {
        if (!j["initial"].is_string())
            throw dk::ConfigError("initial must be a string");
        req.initial = j["initial"].get<std::string>();
    }
    if (j.contains("mu_det")) {
        req.mu_det = as_number(j["mu_det"], "mu_det");
        if (!(req.mu_det > 0.0)) throw dk::ConfigError("mu_det must be positive");
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned())
            throw dk::ConfigError("seed must be a nonnegative integer");
        req.seed = j["seed"].get<unsigned>();
    }
    if (j.contains("probes")) {
        if (!j["probes"].is_number_integer())
            throw dk::ConfigError("probes must be an integer");
        req.probes = j["probes"].get<int>();
        if (req.probes < 1) throw dk::ConfigError("probes must be >= 1");
    }
    if (j.contains("time_grid"))
        req.time_grid = parse_grid(j["time_grid"], "time_grid");
    if (j.contains("frequency_grid"))
        req.frequency_grid = parse_grid(j["frequency_grid"], "frequency_grid");
    if (j.contains("separation_grid")) {
        req.separation_grid =
            parse_grid(j["separation_grid"], "separation_grid");
        if (!(req.separation_grid->from > 0.0))
            throw dk::ConfigError("separation_grid must be positive");
    }
    if (j.contains("fixed_time")) {
        req.fixed_time = as_number(j["fixed_time"], "fixed_time");
        if (!(*req.fixed_time >= 0.0))
            throw dk::ConfigError("fixed_time must be nonnegative");
    }
    return req;
}

dk::Flavor parse_model(const std::string& model) {
    if (model == "standard") return dk::Flavor::standard;
    if (model == "partial") return dk::Flavor::partial_secular;
    if (model == "secular") return dk::Flavor::full_secular;
    throw dk::ConfigError("model must be standard, partial, or secular");
}

dk::Mat4c initial_state(const std::string& name, const dk::DressedBasis& db) {
    Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    if (name == "symmetric") {
        v(1) = v(2) = inv_sqrt2;
    } else if (name == "antisymmetric") {
        v(1) = inv_sqrt2;
        v(2) = -inv_sqrt2;
    } else if (name == "gg") {
        v(0) = 1.0;
    } else if (name == "ee") {
        v(3) = 1.0;
    } else if (name == "eps1") {
        v = db.vecs.col(0).cast<std::complex<double>>();
    } else {
        throw dk::ConfigError(
            "initial must be symmetric, antisymmetric, gg, ee, or eps1");
    }
    return v * v.adjoint();
}

dk::Liouvillian build_model(dk::Flavor flavor, const dk::CouplingSet& cs,
                            const dk::DressedBasis& db) {
    if (flavor == dk::Flavor::standard) return dk::build_standard(cs, db);
    const dk::JumpOperatorSet js = dk::jump_operators(db);
    if (flavor == dk::Flavor::partial_secular)
        return dk::build_partial_secular(cs, db, js);
    return dk::build_full_secular(cs, db, js);
}

// 12 significant digits, scientific; byte-stable across runs
std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.11e", x);
    return buf;
}

void write_csv(const std::string& out_path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    std::ostringstream os;
    for (std::size_t i = 0; i < header.size(); ++i)
        os << (i ? "," : "") << header[i];
    os << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << (i ? "," : "") << fmt(row[i]);
        os << "\n";
    }
    if (out_path.empty()) {
        std::cout << os.str();
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw dk::ConfigError("cannot open output file " + out_path);
    f << os.str();
}

std::vector<double> population_row(const dk::Trajectory& tr, std::size_t i) {
    return {tr.times[i],   tr.p_s[i],    tr.p_stationary[i], tr.p_gg[i],
            tr.p_eps1[i],  tr.p_eps2[i], tr.min_eigenvalue[i]};
}

const std::vector<std::string> kPopulationHeader = {
    "t [s]",        "p_s [1]",    "p_stationary [1]",   "p_gg [1]",
    "p_eps1 [1]",   "p_eps2 [1]", "min_eigenvalue [1]"};

// replaces the separation magnitude, keeping direction and cutoff
dk::NaturalParams at_separation(const dk::ScenarioConfig& cfg, double R_si) {
    dk::ScenarioConfig c = cfg;
    c.separation_si = cfg.separation_si * (R_si / cfg.separation_si.norm());
    return dk::to_natural(c);
}

void cmd_coeffs(const RunRequest& req, const std::string& out_path) {
    const dk::NaturalParams p = dk::to_natural(req.scenario);
    const dk::CouplingSet cs = dk::CouplingSet::make(p);
    const dk::DressedBasis db = dk::dressed_basis(p.omega0, cs.C);
    double gs = 0.0, gs0 = 0.0;
    dk::symmetric_decay_rates(db, cs, gs, gs0);
    write_csv(out_path,
              {"C [1/s]", "gamma [1/s]", "gamma12 [1/s]", "delta12 [1/s]",
               "delta12_transverse [1/s]", "delta [1/s]", "eta [1/s]",
               "omega1 [1/s]", "omega2 [1/s]", "a [1]", "b [1]", "c [1]",
               "d [1]", "gamma_s [1/s]", "gamma_s0 [1/s]"},
              {{cs.C, cs.gamma, cs.gamma12_at(p.omega0), cs.delta12,
                cs.delta12_transverse, cs.delta, db.eta, db.omega1, db.omega2,
                db.a, db.b, db.c, db.d, gs, gs0}});
}

void cmd_populations(const RunRequest& req, const std::string& out_path) {
    if (!req.time_grid)
        throw dk::ConfigError("populations requires \"time_grid\"");
    if (req.time_grid->from < 0.0)
        throw dk::ConfigError("time_grid must be nonnegative");
    const dk::NaturalParams p = dk::to_natural(req.scenario);
    const dk::CouplingSet cs = dk::CouplingSet::make(p);
    const dk::DressedBasis db = dk::dressed_basis(p.omega0, cs.C);
    const dk::Liouvillian L = build_model(parse_model(req.model), cs, db);
    const dk::Trajectory tr =
        dk::propagate(L, initial_state(req.initial, db), req.time_grid->values());
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < tr.times.size(); ++i)
        rows.push_back(population_row(tr, i));
    write_csv(out_path, kPopulationHeader, rows);
}

void cmd_sweep(const RunRequest& req, const std::string& out_path) {
    if (!req.separation_grid)
        throw dk::ConfigError("sweep requires \"separation_grid\"");
    if (!req.fixed_time) throw dk::ConfigError("sweep requires \"fixed_time\"");
    const dk::Flavor flavor = parse_model(req.model);
    const std::vector<double> seps = req.separation_grid->values();
    std::vector<std::future<std::vector<double>>> futures;
    for (double R_si : seps)
        futures.push_back(std::async(std::launch::async, [&, R_si] {
            const dk::NaturalParams p = at_separation(req.scenario, R_si);
            const dk::CouplingSet cs = dk::CouplingSet::make(p);
            const dk::DressedBasis db = dk::dressed_basis(p.omega0, cs.C);
            const dk::Liouvillian L = build_model(flavor, cs, db);
            const dk::Trajectory tr = dk::propagate(
                L, initial_state(req.initial, db), {*req.fixed_time});
            std::vector<double> row = {R_si};
            const std::vector<double> pops = population_row(tr, 0);
            row.insert(row.end(), pops.begin() + 1, pops.end());
            return row;
        }));
    std::vector<std::vector<double>> rows;
    for (auto& f : futures) rows.push_back(f.get());
    std::vector<std::string> header = {"R [m]"};
    header.insert(header.end(), kPopulationHeader.begin() + 1,
                  kPopulationHeader.end());
    write_csv(out_path, header, rows);
}

void cmd_spectrum(const RunRequest& req, const std::string& out_path) {
    if (!req.frequency_grid)
        throw dk::ConfigError("spectrum requires \"frequency_grid\"");
    const dk::NaturalParams p = dk::to_natural(req.scenario);
    const dk::CouplingSet cs = dk::CouplingSet::make(p);
    const dk::DressedBasis db = dk::dressed_basis(p.omega0, cs.C);
    const std::vector<double> grid = req.frequency_grid->values();
    const dk::SpectrumCurve s = dk::spectrum_new(cs, db, grid, req.mu_det);
    const dk::SpectrumCurve s0 =
        dk::spectrum_standard(cs, db, grid, req.mu_det);
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < grid.size(); ++i)
        rows.push_back({grid[i], s.values[i], s0.values[i]});
    write_csv(out_path, {"omega [1/s]", "s [arb]", "s0 [arb]"}, rows);
}

void cmd_peaks(const RunRequest& req, const std::string& out_path) {
    if (!req.separation_grid)
        throw dk::ConfigError("peaks requires \"separation_grid\"");
    const std::vector<double> seps = req.separation_grid->values();
    std::vector<std::future<std::vector<double>>> futures;
    for (double R_si : seps)
        futures.push_back(std::async(std::launch::async, [&, R_si] {
            const dk::NaturalParams p = at_separation(req.scenario, R_si);
            const dk::CouplingSet cs = dk::CouplingSet::make(p);
            const dk::DressedBasis db = dk::dressed_basis(p.omega0, cs.C);
            const std::vector<double> grid = {p.omega0};
            const dk::SpectrumCurve s =
                dk::spectrum_new(cs, db, grid, req.mu_det);
            const dk::SpectrumCurve s0 =
                dk::spectrum_standard(cs, db, grid, req.mu_det);
            return std::vector<double>{R_si,          s.peak_center,
                                       s.peak_height, s.fwhm,
                                       s0.peak_center, s0.peak_height,
                                       s0.fwhm};
        }));
    std::vector<std::vector<double>> rows;
    for (auto& f : futures) rows.push_back(f.get());
    write_csv(out_path,
              {"R [m]", "s_center [1/s]", "s_height [arb]", "s_fwhm [1/s]",
               "s0_center [1/s]", "s0_height [arb]", "s0_fwhm [1/s]"},
              rows);
}

void cmd_gauge_check(const RunRequest& req, const std::string& out_path) {
    const dk::NaturalParams p = dk::to_natural(req.scenario);
    const double w0 = p.omega0;
    const dk::GaugeProbe probes[4] = {
        {dk::GaugeProbe::Kind::coulomb, w0, 0.0},
        {dk::GaugeProbe::Kind::multipolar, w0, 0.0},
        {dk::GaugeProbe::Kind::symmetric, w0, 0.0},
        {dk::GaugeProbe::Kind::constant, w0, 0.37},
    };
    std::mt19937 rng(req.seed);
    std::uniform_real_distribution<double> ulog(-2.0, 4.0);
    std::uniform_real_distribution<double> un(0.0, 5.0);
    double maxrel = 0.0;
    for (int trial = 0; trial < req.probes; ++trial) {
        const double wk = w0 * std::pow(10.0, ulog(rng));
        if (std::abs(wk - w0) < 1e-6 * w0) continue;
        const double Nk = un(rng);
        for (const dk::GaugeProbe& pr : probes) {
            for (dk::Level lv : {dk::Level::excited, dk::Level::ground}) {
                const double got = dk::gauge_shift_integrand(lv, wk, Nk, pr);
                const double want =
                    dk::gauge_shift_closed_form(lv, wk, Nk, w0);
                maxrel = std::max(maxrel, std::abs(got - want) /
                                              std::max(std::abs(want), 1.0));
            }
            const double got = dk::gauge_delta12_integrand(wk, pr);
            const double want = dk::gauge_delta12_closed_form(wk, w0);
            maxrel = std::max(
                maxrel, std::abs(got - want) / std::max(std::abs(want), 1.0));
        }
    }
    write_csv(out_path,
              {"probes [1]", "seed [1]", "max_rel_deviation [1]"},
              {{static_cast<double>(req.probes),
                static_cast<double>(req.seed), maxrel}});
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-dipole master-equation toolkit"};
    app.require_subcommand(1);
    std::string config_path, out_path, model_override, initial_override;
    std::optional<unsigned> seed_override;
    app.add_option("--config", config_path, "JSON config file")->required();
    app.add_option("--model", model_override,
                   "override model: standard, partial, secular");
    app.add_option("--initial", initial_override,
                   "override initial state: symmetric, antisymmetric, gg, ee, "
                   "eps1");
    app.add_option("--out", out_path, "output CSV path (default stdout)");
    app.add_option("--seed", seed_override, "override gauge-check seed");
    const char* names[] = {"coeffs",  "populations", "sweep",
                           "spectrum", "peaks",      "gauge-check"};
    for (const char* n : names) app.add_subcommand(n)->fallthrough();
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }
    try {
        RunRequest req = parse_config(config_path);
        if (!model_override.empty()) req.model = model_override;
        if (!initial_override.empty()) req.initial = initial_override;
        if (seed_override) req.seed = *seed_override;
        parse_model(req.model);               // validate early
        const std::string cmd = app.get_subcommands()[0]->get_name();
        if (cmd == "coeffs") cmd_coeffs(req, out_path);
        else if (cmd == "populations") cmd_populations(req, out_path);
        else if (cmd == "sweep") cmd_sweep(req, out_path);
        else if (cmd == "spectrum") cmd_spectrum(req, out_path);
        else if (cmd == "peaks") cmd_peaks(req, out_path);
        else cmd_gauge_check(req, out_path);
    } catch (const dk::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const dk::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return 0;
}

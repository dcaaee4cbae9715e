// tools/cli.hpp: batch jobs behind the qsl command line.
//
// run() executes one job and returns the process exit status:
//   0 success, 2 precondition failure (bad input or flags), 3 numeric failure.

#pragma once

#include "qsl/qsl.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace qsl::cli {

using json = nlohmann::json;

struct JobConfig {
    std::string command;
    std::string input;     // series JSON
    std::string preset;    // sin | cos | cos3 | threefreq
    std::string q;         // series JSON for roundtrip (falls back to input/preset)
    std::string atoms;     // AtomMeasure JSON
    std::string rec;       // ReconstructionResult JSON
    std::string zeros;     // ZeroSet JSON
    std::optional<Rect> rect;
    double tol = 1e-12;
    double tail_tol = 1e-10;
    double epsilon = 0.05;
    std::optional<double> y0;
    std::string output;    // empty: standard output
    std::string format = "json";
    double bump_center = 0.0;
    double bump_half_width = 0.4;
    double zeta_im = 1.0;
    int zeta_count = 20;
    double tau_min = 0.0;
    double tau_max = 10.0;
    double r_max = 0.0;    // growth grid radius; 0 picks the window reach
};

/// Exit-code carrier for flag and file problems found before any numerics run.
class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

[[nodiscard]] inline Rect parse_rect(const std::string& text) {
    std::vector<double> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError("--rect expects x_min,x_max,y_min,y_max; could not read '" + item + "'");
        }
    }
    if (v.size() != 4) throw UsageError("--rect expects four comma-separated numbers x_min,x_max,y_min,y_max");
    Rect r{v[0], v[1], v[2], v[3]};
    if (!(r.x_min < r.x_max) || !(r.y_min < r.y_max))
        throw UsageError("--rect needs x_min < x_max and y_min < y_max");
    return r;
}

[[nodiscard]] inline json config_json(const JobConfig& c) {
    json j = {{"command", c.command}, {"input", c.input},     {"preset", c.preset},
              {"q", c.q},             {"atoms", c.atoms},     {"rec", c.rec},
              {"zeros", c.zeros},     {"tol", c.tol},         {"tail_tol", c.tail_tol},
              {"epsilon", c.epsilon}, {"format", c.format},   {"bump_center", c.bump_center},
              {"bump_half_width", c.bump_half_width},         {"zeta_im", c.zeta_im},
              {"zeta_count", c.zeta_count},                   {"tau_min", c.tau_min},
              {"tau_max", c.tau_max}, {"r_max", c.r_max},     {"output", c.output}};
    j["rect"] = c.rect ? io::to_json(*c.rect) : json(nullptr);
    j["y0"] = c.y0 ? json(*c.y0) : json(nullptr);
    return j;
}

namespace detail {

inline json read_json(const std::string& path, const char* flag) {
    std::ifstream in(path);
    if (!in) throw UsageError(std::string(flag) + ": cannot open '" + path + "'");
    try {
        json j = json::parse(in);
        // accept both bare objects and wrapped job outputs
        if (j.is_object() && j.contains("result") && j.contains("schema")) return j.at("result");
        return j;
    } catch (const json::parse_error& e) {
        throw UsageError(std::string(flag) + ": '" + path + "' is not valid JSON (" + e.what() + ")");
    }
}

inline ExpSum load_series(const JobConfig& c, const std::string& path, const char* flag) {
    if (!path.empty()) return io::expsum_from_json(read_json(path, flag));
    if (!c.input.empty()) return io::expsum_from_json(read_json(c.input, "--input"));
    if (!c.preset.empty()) return presets::by_name(c.preset);
    throw UsageError("command '" + c.command + "' needs a series: pass --input <file> or --preset <name>");
}

inline bool has_series(const JobConfig& c) { return !c.input.empty() || !c.preset.empty() || !c.q.empty(); }

inline const Rect& need_rect(const JobConfig& c) {
    if (!c.rect) throw UsageError("command '" + c.command + "' needs --rect x_min,x_max,y_min,y_max");
    return *c.rect;
}

inline ZeroSet find_in(const ExpSum& q, const JobConfig& c) {
    zeros::FindOptions opt;
    opt.threads = zeros::threads_from_env();
    return zeros::find_zeros(q, need_rect(c), c.tol, opt);
}

inline ZeroSet maybe_number(ZeroSet zs) {
    if (zs.total_multiplicity() >= 10) return zeros::enumerate(zs);
    return zs;
}

inline ZeroSet load_zeros(const JobConfig& c) {
    if (!c.zeros.empty()) return io::zeroset_from_json(read_json(c.zeros, "--zeros"));
    if (!has_series(c))
        throw UsageError("command '" + c.command + "' needs zeros: pass --zeros <file> or a series with --rect");
    return maybe_number(find_in(load_series(c, c.q, "--q"), c));
}

inline AtomMeasure load_atoms(const JobConfig& c) {
    if (!c.atoms.empty()) return io::atoms_from_json(read_json(c.atoms, "--atoms"));
    if (!has_series(c))
        throw UsageError("command '" + c.command + "' needs atoms: pass --atoms <file> or a series");
    return spectral::atoms(load_series(c, c.q, "--q"), c.tail_tol);
}

inline std::string csv_header(const JobConfig& c) {
    return std::string("# schema=") + io::kSchema + " version=" + kVersion + "\n# config=" + config_json(c).dump() + "\n";
}

inline std::string zeros_csv(const ZeroSet& zs) {
    std::string out = "re,im,mult\n";
    for (const auto& p : zs.points)
        out += io::fmt(p.location.real()) + "," + io::fmt(p.location.imag()) + "," + std::to_string(p.multiplicity) + "\n";
    return out;
}

struct Artifact {
    json result;
    std::string csv;  // empty when the command has no CSV form
};

inline Artifact execute(const JobConfig& c) {
    Artifact a;
    if (c.command == "zeros") {
        const ExpSum q = load_series(c, c.q, "--q");
        const ZeroSet zs = maybe_number(find_in(q, c));
        a.result = io::to_json(zs);
        a.result["count"] = zs.total_multiplicity();
        a.result["strip"] = zeros::strip_bound(q).half_width;
        a.csv = zeros_csv(zs);
    } else if (c.command == "atoms") {
        const AtomMeasure m = spectral::atoms(load_series(c, c.q, "--q"), c.tail_tol);
        a.result = io::to_json(m);
        a.csv = io::to_csv(m);
    } else if (c.command == "pair") {
        const TestFunction phi{c.bump_center, c.bump_half_width};
        const ZeroSet zs = load_zeros(c);
        const AtomMeasure m = load_atoms(c);
        const auto rep = spectral::verify_duality(zs, m, phi);
        a.result = {{"test_function", io::to_json(phi)},
                    {"zero_side", io::complex_json(rep.zero_side)},
                    {"atom_side", io::complex_json(rep.atom_side)},
                    {"rel_error", io::real(rep.rel_error)},
                    {"zero_tail_bound", io::real(rep.zero_tail)},
                    {"atom_discarded", io::real(rep.atom_discarded)},
                    {"zero_count", zs.total_multiplicity()},
                    {"zero_window", io::to_json(zs.window)}};
    } else if (c.command == "verify-der") {
        const ZeroSet zs = load_zeros(c);
        const AtomMeasure m = load_atoms(c);
        if (c.zeta_count < 1) throw UsageError("--zeta-count must be positive");
        std::vector<cplx> zeta;
        for (int k = 0; k < c.zeta_count; ++k) zeta.emplace_back(static_cast<double>(k) / c.zeta_count, c.zeta_im);
        const auto rep = spectral::verify_der(zs, m, zeta);
        a.result = {{"max_rel_error", io::real(rep.max_rel_error)},
                    {"fitted_L", io::real(rep.fitted_L)},
                    {"window_terms", rep.window_terms},
                    {"window_tail_estimate", io::real(rep.window_tail)},
                    {"atom_tail_estimate", io::real(rep.atom_tail)},
                    {"samples", c.zeta_count},
                    {"zeta_im", c.zeta_im}};
    } else if (c.command == "reconstruct") {
        const AtomMeasure m = load_atoms(c);
        const ReconstructionResult r = reconstruct::from_atoms(m, c.y0.value_or(-1.0), c.tail_tol);
        a.result = io::to_json(r);
    } else if (c.command == "roundtrip") {
        if (c.rec.empty()) throw UsageError("command 'roundtrip' needs --rec <file>");
        const ExpSum q = load_series(c, c.q, "--q");
        const ReconstructionResult r = io::reconstruction_from_json(read_json(c.rec, "--rec"));
        const auto rep = reconstruct::verify_roundtrip(q, r, need_rect(c));
        a.result = {{"zeros_q", rep.zeros_q},
                    {"zeros_rec", rep.zeros_rec},
                    {"max_zero_distance", io::real(rep.max_zero_distance)},
                    {"ratio_constancy", io::real(rep.ratio_constancy)},
                    {"ratio_mean", io::complex_json(rep.ratio_mean)},
                    {"theta", io::real(rep.theta)},
                    {"measured_d", io::complex_json(rep.measured_d)},
                    {"grid_points", rep.grid_points}};
    } else if (c.command == "apcheck") {
        if (!(c.epsilon > 0.0)) throw UsageError("--epsilon must be positive");
        const ZeroSet zs = load_zeros(c);
        const auto rep = apcheck::almost_periods(zs, c.epsilon, apcheck::default_tau_grid(c.tau_min, c.tau_max, c.epsilon));
        a.result = io::to_json(rep);
        a.result["translation_bound"] = apcheck::translation_bound(zs);
        if (zs.numbering) {
            const double reach = std::min(-zs.window.x_min, zs.window.x_max);
            std::vector<double> grid;
            for (int k = 1; k <= 16; ++k) grid.push_back(reach * k / 16.0);
            const auto d = apcheck::density(zs, grid);
            a.result["density"] = io::real(d.density);
            a.result["rho"] = io::real(d.rho);
            a.result["rho_consistency"] = io::real(d.rho_consistency);
        }
        a.csv = io::to_csv(rep);
    } else if (c.command == "growth") {
        const ZeroSet zs = load_zeros(c);
        const AtomMeasure m = load_atoms(c);
        double top = c.r_max;
        if (!(top > 0.0)) top = std::max(1.0, std::min(-zs.window.x_min, zs.window.x_max));
        std::vector<double> grid;
        for (int k = 1; k <= 32; ++k) grid.push_back(top * k / 32.0);
        const auto g = cfourier::growth(zs, m, grid);
        const auto cond = spectral::check_conditions(m, grid);
        a.result = {{"r_grid", g.r_grid},
                    {"m_mu", g.m_mu},
                    {"atom_cumulative", g.atom_cumulative},
                    {"fitted_L", io::real(g.fitted_L)},
                    {"neig_cutoffs", cond.neig_cutoffs},
                    {"neig_sums", cond.neig_sums},
                    {"neig_diverges", cond.neig_diverges},
                    {"min_gap", io::real(cond.min_gap)},
                    {"max_unit_count", cond.max_unit_count}};
        std::string csv = "r,m_mu,atom_cumulative\n";
        for (std::size_t i = 0; i < g.r_grid.size(); ++i)
            csv += io::fmt(g.r_grid[i]) + "," + io::fmt(g.m_mu[i]) + "," + io::fmt(g.atom_cumulative[i]) + "\n";
        a.csv = csv;
    } else {
        throw UsageError("unknown command '" + c.command +
                         "' (zeros, atoms, pair, verify-der, reconstruct, roundtrip, apcheck, growth)");
    }
    return a;
}

}  // namespace detail

/// Runs one job; diagnostics go to `err`. Returns the exit status.
inline int run(const JobConfig& c, std::ostream& err = std::cerr) {
    try {
        if (c.format != "json" && c.format != "csv") throw UsageError("--format must be json or csv");
        if (!(c.tol > 0.0) || !(c.tail_tol > 0.0)) throw UsageError("--tol and --tail-tol must be positive");
        const detail::Artifact a = detail::execute(c);
        std::string text;
        if (c.format == "csv") {
            if (a.csv.empty()) throw UsageError("command '" + c.command + "' has no CSV form; use --format json");
            text = detail::csv_header(c) + a.csv;
        } else {
            const json doc = {{"schema", io::kSchema}, {"version", kVersion}, {"config", config_json(c)}, {"result", a.result}};
            text = doc.dump(2) + "\n";
        }
        if (c.output.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(c.output, std::ios::binary);
            if (!out) throw UsageError("--output: cannot write '" + c.output + "'");
            out << text;
        }
        return 0;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return is_precondition(e.kind()) ? 2 : 3;
    } catch (const json::exception& e) {
        err << "error: malformed input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace qsl::cli

// qsl/serialize.hpp: JSON and CSV forms of the qsl value types.
//
// Non-finite reals are written as null and read back as +inf.

#pragma once

#include "qsl/apcheck.hpp"
#include "qsl/atoms.hpp"
#include "qsl/cfourier.hpp"
#include "qsl/error.hpp"
#include "qsl/reconstruct.hpp"
#include "qsl/strip_zeros.hpp"
#include "qsl/wiener.hpp"

#include <json.hpp>

#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

namespace qsl::io {

using json = nlohmann::json;

inline constexpr const char* kSchema = "qsl/1";

inline json real(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

inline double get_real(const json& j, const char* key, double fallback = 0.0) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (v.is_null()) return std::numeric_limits<double>::infinity();
    if (!v.is_number()) fail(ErrorKind::InvalidArgument, std::string("field '") + key + "' must be a number");
    return v.get<double>();
}

inline const json& require(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        fail(ErrorKind::InvalidArgument, std::string("missing field '") + key + "'");
    return j.at(key);
}

inline json complex_json(cplx c) { return {{"re", real(c.real())}, {"im", real(c.imag())}}; }
inline cplx complex_from(const json& j) { return {get_real(j, "re"), get_real(j, "im")}; }

// ExpSum

inline json to_json(const ExpSum& p) {
    json terms = json::array();
    for (const auto& t : p.terms())
        terms.push_back({{"freq", real(t.freq)}, {"re", real(t.coef.real())}, {"im", real(t.coef.imag())}});
    return {{"terms", terms},
            {"merge_tol", real(p.merge_tol())},
            {"drop_tol", real(p.drop_tol())},
            {"discarded_norm", real(p.discarded_norm())}};
}

inline ExpSum expsum_from_json(const json& j) {
    std::vector<Term> terms;
    for (const auto& t : require(j, "terms")) {
        require(t, "freq");
        terms.push_back({get_real(t, "freq"), complex_from(t)});
    }
    return ExpSum(std::move(terms), get_real(j, "merge_tol", kDefaultMergeTol), get_real(j, "drop_tol", 0.0),
                  get_real(j, "discarded_norm", 0.0));
}

// Rect / ZeroSet

inline json to_json(const Rect& r) {
    return {{"x_min", real(r.x_min)}, {"x_max", real(r.x_max)}, {"y_min", real(r.y_min)}, {"y_max", real(r.y_max)}};
}

inline Rect rect_from_json(const json& j) {
    Rect r{get_real(j, "x_min"), get_real(j, "x_max"), get_real(j, "y_min"), get_real(j, "y_max")};
    r.validate();
    return r;
}

inline json to_json(const ZeroSet& zs) {
    json pts = json::array();
    for (const auto& p : zs.points)
        pts.push_back({{"re", real(p.location.real())}, {"im", real(p.location.imag())}, {"mult", p.multiplicity}});
    json out = {{"window", to_json(zs.window)}, {"points", pts}, {"max_residual", real(zs.max_residual)}};
    if (zs.numbering) {
        const Numbering& n = *zs.numbering;
        out["rho"] = real(n.rho);
        out["m_bound"] = real(n.m_bound);
        json phi = json::array();
        for (long k = n.first_index; k <= n.last_index(); ++k)
            phi.push_back({{"n", k}, {"re", real(n.phi_at(k).real())}, {"im", real(n.phi_at(k).imag())}});
        out["phi"] = phi;
    }
    return out;
}

inline ZeroSet zeroset_from_json(const json& j) {
    ZeroSet zs;
    zs.window = rect_from_json(require(j, "window"));
    for (const auto& p : require(j, "points")) {
        const int mult = p.value("mult", 1);
        if (mult < 1) fail(ErrorKind::InvalidArgument, "multiplicity must be positive");
        zs.points.push_back({complex_from(p), mult});
    }
    zs.max_residual = get_real(j, "max_residual", 0.0);
    if (j.contains("rho") && j.contains("phi")) {
        Numbering n;
        n.rho = get_real(j, "rho");
        n.m_bound = get_real(j, "m_bound", 0.0);
        const json& phi = j.at("phi");
        if (!phi.empty()) n.first_index = phi.front().at("n").get<long>();
        for (const auto& e : phi) n.phi.push_back(complex_from(e));
        zs.numbering = std::move(n);
    }
    return zs;
}

// TestFunction

inline json to_json(const TestFunction& phi) {
    return {{"kind", "standard_bump"}, {"center", real(phi.center)}, {"half_width", real(phi.half_width)},
            {"base_nodes", phi.base_nodes}, {"max_levels", phi.max_levels}};
}

inline TestFunction testfunction_from_json(const json& j) {
    if (j.value("kind", std::string("standard_bump")) != "standard_bump")
        fail(ErrorKind::InvalidArgument, "only the standard_bump test function is supported");
    TestFunction phi;
    phi.center = get_real(j, "center", 0.0);
    phi.half_width = get_real(j, "half_width", 1.0);
    phi.base_nodes = j.value("base_nodes", phi.base_nodes);
    phi.max_levels = j.value("max_levels", phi.max_levels);
    phi.validate();
    return phi;
}

// AtomMeasure

inline json to_json(const AtomMeasure& m) {
    json entries = json::array();
    for (const auto& a : m.entries)
        entries.push_back({{"gamma", real(a.gamma)}, {"re", real(a.b.real())}, {"im", real(a.b.imag())}});
    return {{"kappa", real(m.kappa)},
            {"entries", entries},
            {"center_shift", real(m.center_shift)},
            {"tail_tol", real(m.tail_tol)},
            {"s_upper", real(m.s_upper)},
            {"s_lower", real(m.s_lower)},
            {"discarded_upper", real(m.discarded_upper)},
            {"discarded_lower", real(m.discarded_lower)},
            {"gamma_max_upper", real(m.gamma_max_upper)},
            {"gamma_max_lower", real(m.gamma_max_lower)}};
}

inline AtomMeasure atoms_from_json(const json& j) {
    std::vector<Atom> atoms;
    for (const auto& e : require(j, "entries")) atoms.push_back({get_real(e, "gamma"), complex_from(e)});
    AtomMeasure m = make_atom_measure(std::move(atoms));
    m.kappa = get_real(j, "kappa", 0.0);
    m.center_shift = get_real(j, "center_shift", 0.0);
    m.tail_tol = get_real(j, "tail_tol", 0.0);
    m.s_upper = get_real(j, "s_upper", 0.0);
    m.s_lower = get_real(j, "s_lower", 0.0);
    m.discarded_upper = get_real(j, "discarded_upper", 0.0);
    m.discarded_lower = get_real(j, "discarded_lower", 0.0);
    m.gamma_max_upper = get_real(j, "gamma_max_upper", std::numeric_limits<double>::infinity());
    m.gamma_max_lower = get_real(j, "gamma_max_lower", std::numeric_limits<double>::infinity());
    return m;
}

inline std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

inline std::string to_csv(const AtomMeasure& m) {
    std::string out = "gamma,re,im\n";
    for (const auto& a : m.entries) out += fmt(a.gamma) + "," + fmt(a.b.real()) + "," + fmt(a.b.imag()) + "\n";
    return out;
}

// ReconstructionResult

inline json to_json(const ReconstructionResult& r) {
    return {{"series", to_json(r.series)},
            {"log_series", to_json(r.log_series)},
            {"y0", real(r.y0)},
            {"b0", real(r.b0)},
            {"kappa", real(r.kappa)},
            {"center_shift", real(r.center_shift)},
            {"normalization", complex_json(r.normalization)},
            {"excess_mass", real(r.excess_mass)}};
}

inline ReconstructionResult reconstruction_from_json(const json& j) {
    ReconstructionResult r;
    r.series = expsum_from_json(require(j, "series"));
    if (j.contains("log_series")) r.log_series = expsum_from_json(j.at("log_series"));
    r.y0 = get_real(j, "y0");
    r.b0 = get_real(j, "b0");
    r.kappa = get_real(j, "kappa");
    r.center_shift = get_real(j, "center_shift", 0.0);
    if (j.contains("normalization")) r.normalization = complex_from(j.at("normalization"));
    r.excess_mass = get_real(j, "excess_mass", 0.0);
    return r;
}

// AlmostPeriodReport

inline json to_json(const AlmostPeriodReport& rep) {
    json checks = json::array();
    for (const auto& c : rep.checks)
        checks.push_back({{"tau", real(c.tau)}, {"max_displacement", real(c.max_displacement)}, {"accepted", c.accepted}});
    return {{"epsilon", real(rep.epsilon)},
            {"window", {real(rep.window_lo), real(rep.window_hi)}},
            {"periods", rep.periods},
            {"max_gap", real(rep.max_gap)},
            {"checks", checks}};
}

inline std::string to_csv(const AlmostPeriodReport& rep) {
    std::string out = "tau,max_displacement,accepted\n";
    for (const auto& c : rep.checks)
        out += fmt(c.tau) + "," + fmt(c.max_displacement) + "," + (c.accepted ? "1" : "0") + "\n";
    return out;
}

}  // namespace qsl::io

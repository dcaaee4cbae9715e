// qsl/cfourier.hpp: compactly supported test functions, their transforms
// φ̂^c(z) = ∫ φ(t) e^{-2πizt} dt on the strip, and the two pairings
// ⟨μ_A, φ̂^c⟩ = Σ mult·φ̂^c(a) and ⟨Σ b_γ δ_γ, φ⟩ = Σ b_γ φ(γ).

#pragma once

#include "qsl/atoms.hpp"
#include "qsl/error.hpp"
#include "qsl/strip_zeros.hpp"
#include "qsl/wiener.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace qsl {

/// Standard bump φ(t) = exp(-1/(1-u²)), u = (t - center)/half_width, |u| < 1.
struct TestFunction {
    double center = 0.0;
    double half_width = 1.0;
    int base_nodes = 64;   // trapezoid nodes before accounting for oscillation
    int max_levels = 12;   // node doublings before giving up

    [[nodiscard]] double lo() const noexcept { return center - half_width; }
    [[nodiscard]] double hi() const noexcept { return center + half_width; }

    [[nodiscard]] double operator()(double t) const noexcept {
        const double u = (t - center) / half_width;
        if (!(std::abs(u) < 1.0)) return 0.0;
        const double gap = (1.0 - u) * (1.0 + u);
        return std::exp(-1.0 / gap);
    }

    void validate() const {
        if (!(half_width > 0.0) || !std::isfinite(center))
            fail(ErrorKind::InvalidArgument, "test function needs half_width > 0");
        if (base_nodes < 8 || base_nodes > (1 << 20))
            fail(ErrorKind::InvalidArgument, "base_nodes out of range [8, 2^20]");
        if (max_levels < 1 || max_levels > 30) fail(ErrorKind::InvalidArgument, "max_levels out of range [1, 30]");
    }
};

namespace cfourier {

inline constexpr double kMaxStripHeight = 10.0;

namespace detail {

struct NodeSum {
    cplx value{0.0, 0.0};
    double abs_mass = 0.0;
};

/// Σ φ(t) e^{-2πizt} over t = a + (k + offset)·step, k = 0..count-1.
inline NodeSum node_sum(const TestFunction& phi, cplx z, double a, double step, long count, double offset) {
    NodeSum s;
    for (long k = 0; k < count; ++k) {
        const double t = a + (static_cast<double>(k) + offset) * step;
        const double f = phi(t);
        if (f == 0.0) continue;
        // φ(t) e^{-2πizt} = φ(t) e^{2π y t} e^{-2πi x t}
        const double mag = f * std::exp(kTwoPi * z.imag() * t);
        const double ph = -kTwoPi * z.real() * t;
        s.value += cplx(mag * std::cos(ph), mag * std::sin(ph));
        s.abs_mass += mag;
    }
    return s;
}

}  // namespace detail

/// φ̂^c(z) by the trapezoid rule on the support. The integrand vanishes with
/// all its derivatives at both ends, so the rule converges faster than any
/// power of the step; nodes are doubled until two levels agree to 1e-12
/// relative (or 1e-15 of ∫|φ|e^{2πyt} when the transform itself is tiny).
[[nodiscard]] inline cplx hat_c(const TestFunction& phi, cplx z) {
    phi.validate();
    if (std::abs(z.imag()) > kMaxStripHeight)
        fail(ErrorKind::InvalidArgument, "hat_c is limited to |Im z| <= 10");
    const double a = phi.lo();
    const double len = phi.hi() - a;
    // about 2.5 nodes per oscillation of e^{-2πixt} on top of the base count
    long n = phi.base_nodes + static_cast<long>(std::ceil(2.5 * len * std::abs(z.real())));
    double step = len / static_cast<double>(n);
    detail::NodeSum acc = detail::node_sum(phi, z, a, step, n, 0.0);
    cplx prev = acc.value * step;
    for (int level = 0; level < phi.max_levels; ++level) {
        const detail::NodeSum mid = detail::node_sum(phi, z, a, step, n, 0.5);
        acc.value += mid.value;
        acc.abs_mass += mid.abs_mass;
        n *= 2;
        step *= 0.5;
        const cplx cur = acc.value * step;
        const double diff = std::abs(cur - prev);
        if (diff <= std::max(1e-12 * std::abs(cur), 1e-15 * acc.abs_mass * step)) return cur;
        prev = cur;
    }
    fail(ErrorKind::QuadratureNotConverged,
         "hat_c did not converge at z = (" + std::to_string(z.real()) + ", " + std::to_string(z.imag()) + ")");
}

/// ∫ φ(t) dt.
[[nodiscard]] inline double integral(const TestFunction& phi) { return hat_c(phi, {0.0, 0.0}).real(); }

/// C = max over the sample of |φ̂^c(z)| · max(1, |z|)^m.
[[nodiscard]] inline double decay_check(const TestFunction& phi, int m, const std::vector<cplx>& sample) {
    double c = 0.0;
    for (const auto& z : sample)
        c = std::max(c, std::abs(hat_c(phi, z)) * std::pow(std::max(1.0, std::abs(z)), m));
    return c;
}

struct PairResult {
    cplx value{0.0, 0.0};
    double tail_bound = 0.0;      // bound on the contribution of zeros outside the window
    double decay_constant = 0.0;  // measured C for the power m used
    int terms = 0;
};

/// ⟨μ_A, φ̂^c⟩ over the zeros in the window, plus a bound on the rest.
///
/// Outside the window the zeros are assumed to keep the window's unit-interval
/// density and vertical extent; with |φ̂^c(z)| ≤ C |z|^{-m} that leaves at most
/// 2·D·C·(R^{-m} + R^{1-m}/(m-1)) where R is the distance from 0 to the nearer
/// vertical edge of the window.
[[nodiscard]] inline PairResult pair_zeros(const ZeroSet& zs, const TestFunction& phi,
                                           double tolerance = std::numeric_limits<double>::infinity(),
                                           int m = 3) {
    PairResult out;
    for (const auto& p : zs.points) {
        out.value += static_cast<double>(p.multiplicity) * hat_c(phi, p.location);
        out.terms += p.multiplicity;
    }
    if (zs.points.empty()) return out;

    const double reach = std::min(-zs.window.x_min, zs.window.x_max);
    if (!(reach > 1.0))
        fail(ErrorKind::WindowTooSmall, "zero window must extend beyond ±1 around the origin");
    // Zeros outside the window are assumed to stay in the strip occupied by
    // the ones inside it.
    double y_lo = 0.0, y_hi = 0.0;
    for (const auto& p : zs.points) {
        y_lo = std::min(y_lo, p.location.imag());
        y_hi = std::max(y_hi, p.location.imag());
    }
    y_lo = std::max(y_lo, -kMaxStripHeight);
    y_hi = std::min(y_hi, kMaxStripHeight);
    std::vector<cplx> sample;
    const double step = std::max(0.5, reach / 40.0);
    for (double x = 0.0; x <= 2.0 * reach; x += step) {
        for (double y : {y_lo, 0.0, y_hi}) {
            sample.emplace_back(x, y);
            sample.emplace_back(-x, y);
        }
    }
    out.decay_constant = decay_check(phi, m, sample);
    const double density = zeros::unit_window_max(zs);
    out.tail_bound = 2.0 * density * out.decay_constant *
                     (std::pow(reach, -m) + std::pow(reach, 1 - m) / (m - 1));
    if (out.tail_bound > tolerance)
        fail(ErrorKind::WindowTooSmall, "tail bound " + std::to_string(out.tail_bound) +
                                            " exceeds tolerance " + std::to_string(tolerance));
    return out;
}

/// Σ_{γ ∈ supp φ} b_γ φ(γ).
[[nodiscard]] inline cplx pair_atoms(const AtomMeasure& atoms, const TestFunction& phi) {
    cplx s{0.0, 0.0};
    for (const auto& a : atoms.entries) {
        if (a.gamma <= phi.lo() || a.gamma >= phi.hi()) continue;
        s += a.b * phi(a.gamma);
    }
    return s;
}

struct GrowthDiagnostics {
    std::vector<double> r_grid;
    std::vector<double> m_mu;               // zeros with |z| ≤ r, with multiplicity
    std::vector<double> atom_cumulative;    // Σ_{|γ|<r} |b_γ|
    double fitted_L = 0.0;                  // slope of log Σ_{|γ|<r}|b_γ| against r
};

/// Least-squares slope of log(values) against r over the upper half of the grid.
[[nodiscard]] inline double fit_exponential_rate(const std::vector<double>& r, const std::vector<double>& values) {
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = r.size() / 2; i < r.size(); ++i)
        if (values[i] > 0.0) pts.emplace_back(r[i], std::log(values[i]));
    if (pts.size() < 2) return 0.0;
    double mx = 0.0, my = 0.0;
    for (const auto& [x, y] : pts) {
        mx += x;
        my += y;
    }
    mx /= pts.size();
    my /= pts.size();
    double sxy = 0.0, sxx = 0.0;
    for (const auto& [x, y] : pts) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    return sxx > 0.0 ? sxy / sxx : 0.0;
}

[[nodiscard]] inline GrowthDiagnostics growth(const ZeroSet& zs, const AtomMeasure& atoms,
                                              const std::vector<double>& r_grid) {
    GrowthDiagnostics g;
    g.r_grid = r_grid;
    std::sort(g.r_grid.begin(), g.r_grid.end());
    for (double r : g.r_grid) {
        double count = 0.0;
        for (const auto& p : zs.points)
            if (std::abs(p.location) <= r) count += p.multiplicity;
        g.m_mu.push_back(count);
        g.atom_cumulative.push_back(atoms.variation(r));
    }
    g.fitted_L = fit_exponential_rate(g.r_grid, g.atom_cumulative);
    return g;
}

}  // namespace cfourier
}  // namespace qsl

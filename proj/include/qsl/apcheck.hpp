// qsl/apcheck.hpp: finite-window diagnostics for almost periodicity and
// translation boundedness of zero sets, and for almost periods of functions.
//
// A shift τ is an ε-almost period of a point set A if A + τ can be matched
// to A point by point with every displacement below ε. On a window only the
// points whose shifted image stays inside the window can be matched, so the
// verdicts here are diagnostics rather than proofs.

#pragma once

#include "qsl/error.hpp"
#include "qsl/strip_zeros.hpp"
#include "qsl/wiener.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace qsl {

struct PeriodCheck {
    double tau = 0.0;
    double max_displacement = 0.0;  // +inf when no matching was found
    bool accepted = false;
};

struct AlmostPeriodReport {
    double epsilon = 0.0;
    double window_lo = 0.0;
    double window_hi = 0.0;
    std::vector<double> periods;       // accepted τ, increasing
    double max_gap = 0.0;              // largest gap between accepted τ (grid ends included)
    std::vector<PeriodCheck> checks;   // one per candidate τ, increasing
};

namespace apcheck {

[[nodiscard]] inline double translation_bound(const ZeroSet& zs) {
    return static_cast<double>(zeros::unit_window_max(zs));
}

namespace detail {

/// Maximum bipartite matching by augmenting paths on the ε-neighbourhood graph.
class Matcher {
public:
    explicit Matcher(std::vector<std::vector<std::size_t>> adj, std::size_t right)
        : adj_(std::move(adj)), owner_(right, npos) {}

    [[nodiscard]] bool perfect() {
        for (std::size_t u = 0; u < adj_.size(); ++u) {
            seen_.assign(owner_.size(), false);
            if (!augment(u)) return false;
        }
        return true;
    }

private:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    bool augment(std::size_t u) {
        for (std::size_t v : adj_[u]) {
            if (seen_[v]) continue;
            seen_[v] = true;
            if (owner_[v] == npos || augment(owner_[v])) {
                owner_[v] = u;
                return true;
            }
        }
        return false;
    }

    std::vector<std::vector<std::size_t>> adj_;
    std::vector<std::size_t> owner_;
    std::vector<bool> seen_;
};

/// Indices of points of `pts` (sorted by real part) within eps of z.
inline std::vector<std::size_t> near(const std::vector<cplx>& pts, cplx z, double eps) {
    std::vector<std::size_t> out;
    auto it = std::lower_bound(pts.begin(), pts.end(), z.real() - eps,
                               [](const cplx& p, double v) { return p.real() < v; });
    for (; it != pts.end() && it->real() <= z.real() + eps; ++it)
        if (std::abs(*it - z) < eps) out.push_back(static_cast<std::size_t>(it - pts.begin()));
    return out;
}

/// Matches `from` + τ into `to`, each point within eps of its partner and no
/// partner used twice. Returns the largest displacement, or +inf.
inline double match(const std::vector<cplx>& from, const std::vector<cplx>& to, double tau, double eps) {
    std::vector<std::vector<std::size_t>> adj(from.size());
    std::vector<bool> used(to.size(), false);
    bool greedy_ok = true;
    double worst = 0.0;
    for (std::size_t i = 0; i < from.size(); ++i) {
        const cplx target = from[i] + tau;
        adj[i] = near(to, target, eps);
        if (adj[i].empty()) return std::numeric_limits<double>::infinity();
        if (!greedy_ok) continue;
        std::size_t best = to.size();
        double d = eps;
        for (std::size_t j : adj[i]) {
            if (!used[j] && std::abs(to[j] - target) < d) {
                d = std::abs(to[j] - target);
                best = j;
            }
        }
        if (best == to.size()) {
            greedy_ok = false;
            continue;
        }
        used[best] = true;
        worst = std::max(worst, d);
    }
    if (greedy_ok) return worst;
    if (!Matcher(adj, to.size()).perfect()) return std::numeric_limits<double>::infinity();
    worst = 0.0;
    for (std::size_t i = 0; i < from.size(); ++i) {
        double d = eps;
        for (std::size_t j : adj[i]) d = std::min(d, std::abs(to[j] - (from[i] + tau)));
        worst = std::max(worst, d);
    }
    return worst;
}

inline std::vector<cplx> in_band(const std::vector<cplx>& pts, double lo, double hi) {
    std::vector<cplx> out;
    for (const auto& p : pts)
        if (p.real() >= lo && p.real() <= hi) out.push_back(p);
    return out;
}

inline void finish(AlmostPeriodReport& rep, const std::vector<double>& tau_grid) {
    for (const auto& c : rep.checks)
        if (c.accepted) rep.periods.push_back(c.tau);
    if (rep.periods.empty() || tau_grid.empty()) {
        rep.max_gap = std::numeric_limits<double>::infinity();
        return;
    }
    const auto [lo, hi] = std::minmax_element(tau_grid.begin(), tau_grid.end());
    rep.max_gap = std::max(rep.periods.front() - *lo, *hi - rep.periods.back());
    for (std::size_t i = 1; i < rep.periods.size(); ++i)
        rep.max_gap = std::max(rep.max_gap, rep.periods[i] - rep.periods[i - 1]);
}

}  // namespace detail

/// Candidate shifts between lo and hi at spacing ε/4.
[[nodiscard]] inline std::vector<double> default_tau_grid(double lo, double hi, double epsilon) {
    std::vector<double> grid;
    const double step = epsilon / 4.0;
    const long count = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    for (long k = 0; k <= count; ++k) grid.push_back(lo + k * step);
    return grid;
}

/// Tests every τ of the grid as an ε-almost period of the zero set. Points
/// within ε of the edge of the overlap of the window and its shift are left
/// out of the matching.
[[nodiscard]] inline AlmostPeriodReport almost_periods(const ZeroSet& zs, double epsilon,
                                                       std::vector<double> tau_grid) {
    if (!(epsilon > 0.0)) fail(ErrorKind::InvalidArgument, "epsilon must be positive");
    std::sort(tau_grid.begin(), tau_grid.end());
    AlmostPeriodReport rep;
    rep.epsilon = epsilon;
    rep.window_lo = zs.window.x_min;
    rep.window_hi = zs.window.x_max;
    const std::vector<cplx> pts = zs.expanded();
    const std::size_t total = pts.size();

    for (double tau : tau_grid) {
        // a ∈ core needs a + τ in the window as well.
        const double lo = std::max(rep.window_lo, rep.window_lo - tau) + epsilon;
        const double hi = std::min(rep.window_hi, rep.window_hi - tau) - epsilon;
        const std::vector<cplx> core = detail::in_band(pts, lo, hi);
        if (total > 0 && static_cast<double>(core.size()) < 0.8 * static_cast<double>(total))
            fail(ErrorKind::WindowTooSmall, "shift " + std::to_string(tau) +
                                                " keeps fewer than 80% of the points in the window");
        PeriodCheck c;
        c.tau = tau;
        // Quick rejection on a handful of points before the full matching.
        bool quick_fail = false;
        for (std::size_t k = 0; k < std::min<std::size_t>(core.size(), 4); ++k)
            quick_fail = quick_fail || detail::near(pts, core[k] + tau, epsilon).empty();
        if (quick_fail) {
            c.max_displacement = std::numeric_limits<double>::infinity();
        } else {
            const double fwd = detail::match(core, pts, tau, epsilon);
            // reverse direction: every point whose preimage lies in the core band
            const std::vector<cplx> image = detail::in_band(pts, lo + tau, hi + tau);
            const double back = std::isfinite(fwd) ? detail::match(image, pts, -tau, epsilon)
                                                   : std::numeric_limits<double>::infinity();
            c.max_displacement = std::max(fwd, back);
        }
        c.accepted = c.max_displacement < epsilon;
        rep.checks.push_back(c);
    }
    detail::finish(rep, tau_grid);
    return rep;
}

/// τ is accepted when max over x_grid of |Q(x+τ) - Q(x)| < ε. The entries'
/// max_displacement holds that maximum.
[[nodiscard]] inline AlmostPeriodReport ap_function_periods(const ExpSum& q, double epsilon,
                                                            std::vector<double> tau_grid,
                                                            const std::vector<double>& x_grid) {
    if (!(epsilon > 0.0)) fail(ErrorKind::InvalidArgument, "epsilon must be positive");
    std::sort(tau_grid.begin(), tau_grid.end());
    AlmostPeriodReport rep;
    rep.epsilon = epsilon;
    if (!x_grid.empty()) {
        const auto [lo, hi] = std::minmax_element(x_grid.begin(), x_grid.end());
        rep.window_lo = *lo;
        rep.window_hi = *hi;
    }
    for (double tau : tau_grid) {
        PeriodCheck c;
        c.tau = tau;
        for (double x : x_grid)
            c.max_displacement = std::max(c.max_displacement,
                                          std::abs(wiener::eval(q, {x + tau, 0.0}) - wiener::eval(q, {x, 0.0})));
        c.accepted = c.max_displacement < epsilon;
        rep.checks.push_back(c);
    }
    detail::finish(rep, tau_grid);
    return rep;
}

/// Upper bound Σ|q_ω| |e^{2πiωτ} - 1| for sup_x |Q(x+τ) - Q(x)|.
[[nodiscard]] inline double predicted_displacement(const ExpSum& q, double tau) {
    double s = 0.0;
    for (const auto& t : q.terms())
        s += std::abs(t.coef) * 2.0 * std::abs(std::sin(kPi * t.freq * tau));
    return s;
}

struct DensityReport {
    double density = 0.0;
    double rho = 0.0;
    double rho_consistency = 0.0;  // |density - 1/ρ|
    std::vector<double> r_grid;
    std::vector<double> ratios;    // count(-R, R) / (2R)
};

/// Fits count(-R,R)/(2R) ≈ d + c/R over the radii of r_grid inside the window.
[[nodiscard]] inline DensityReport density(const ZeroSet& zs, const std::vector<double>& r_grid) {
    if (!zs.numbering) fail(ErrorKind::NotNumbered, "density needs a numbered zero set");
    DensityReport rep;
    rep.rho = zs.numbering->rho;
    const double reach = std::min(-zs.window.x_min, zs.window.x_max);
    for (double r : r_grid) {
        if (!(r > 0.0) || r > reach) continue;
        double count = 0.0;
        for (const auto& p : zs.points)
            if (std::abs(p.location.real()) < r) count += p.multiplicity;
        rep.r_grid.push_back(r);
        rep.ratios.push_back(count / (2.0 * r));
    }
    if (rep.r_grid.empty())
        fail(ErrorKind::WindowTooSmall, "no radius of the grid fits inside the zero window");
    if (rep.r_grid.size() == 1) {
        rep.density = rep.ratios.front();
    } else {
        // least squares in (1, 1/R)
        double s1 = 0, sx = 0, sxx = 0, sy = 0, sxy = 0;
        for (std::size_t i = 0; i < rep.r_grid.size(); ++i) {
            const double x = 1.0 / rep.r_grid[i];
            s1 += 1;
            sx += x;
            sxx += x * x;
            sy += rep.ratios[i];
            sxy += x * rep.ratios[i];
        }
        const double det = s1 * sxx - sx * sx;
        rep.density = std::abs(det) > 1e-300 ? (sxx * sy - sx * sxy) / det : sy / s1;
    }
    rep.rho_consistency = std::abs(rep.density - 1.0 / rep.rho);
    return rep;
}

}  // namespace apcheck
}  // namespace qsl

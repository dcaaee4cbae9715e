// qsl/strip_zeros.hpp: zeros of exponential sums inside a horizontal strip.
//
// Zeros are counted with the argument principle: the change of arg Q along
// the boundary of a rectangle, tracked by adaptive refinement so that no
// single step turns the phase by more than a fixed angle. Rectangles are
// bisected until each holds one zero (polished by Newton) or one unresolvable
// cluster (reported once, with its multiplicity).

#pragma once

#include "qsl/error.hpp"
#include "qsl/wiener.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <future>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

namespace qsl {

struct Rect {
    double x_min = 0.0;
    double x_max = 0.0;
    double y_min = 0.0;
    double y_max = 0.0;

    [[nodiscard]] double width() const noexcept { return x_max - x_min; }
    [[nodiscard]] double height() const noexcept { return y_max - y_min; }
    [[nodiscard]] cplx center() const noexcept {
        return {0.5 * (x_min + x_max), 0.5 * (y_min + y_max)};
    }
    [[nodiscard]] bool contains(cplx z, double margin = 0.0) const noexcept {
        return z.real() >= x_min - margin && z.real() <= x_max + margin &&
               z.imag() >= y_min - margin && z.imag() <= y_max + margin;
    }
    void validate() const {
        if (!(x_min < x_max) || !(y_min < y_max) || !std::isfinite(x_min) ||
            !std::isfinite(x_max) || !std::isfinite(y_min) || !std::isfinite(y_max))
            fail(ErrorKind::InvalidArgument, "rectangle needs x_min < x_max and y_min < y_max");
    }
};

/// Closed strip |Im z| ≤ half_width containing every zero.
struct Strip {
    double half_width = 0.0;
    bool zero_free = false;  // single-term sums have no zeros at all
};

struct ZeroPoint {
    cplx location;
    int multiplicity = 1;
};

/// Numbering a_n = ρn + φ(n) of a multiset, n = first_index, first_index+1, …
struct Numbering {
    double rho = 0.0;
    long first_index = 0;
    std::vector<cplx> phi;
    double m_bound = 0.0;

    [[nodiscard]] long last_index() const noexcept {
        return first_index + static_cast<long>(phi.size()) - 1;
    }
    [[nodiscard]] bool has(long n) const noexcept { return n >= first_index && n <= last_index(); }
    [[nodiscard]] cplx phi_at(long n) const { return phi.at(static_cast<std::size_t>(n - first_index)); }
    [[nodiscard]] cplx location(long n) const { return rho * static_cast<double>(n) + phi_at(n); }
};

struct ZeroSet {
    std::vector<ZeroPoint> points;  // sorted by (Re, Im)
    Rect window;
    std::optional<Numbering> numbering;
    double max_residual = 0.0;  // largest |Q(a)| / scale over polished points

    [[nodiscard]] int total_multiplicity() const noexcept {
        int s = 0;
        for (const auto& p : points) s += p.multiplicity;
        return s;
    }
    /// Locations repeated by multiplicity, in (Re, Im) order.
    [[nodiscard]] std::vector<cplx> expanded() const {
        std::vector<cplx> out;
        for (const auto& p : points)
            for (int k = 0; k < p.multiplicity; ++k) out.push_back(p.location);
        return out;
    }
};

struct ContourOptions {
    // A boundary sample with |Q| below boundary_floor · Σ|q_ω|e^{-2πωy} is
    // treated as a zero on the contour.
    double boundary_floor = 1e3 * std::numeric_limits<double>::epsilon();
    double max_step_angle = kPi / 4.0;
    double max_residual = 0.25;
};

struct WindingReport {
    int count = 0;
    double residual = 0.0;          // |winding − count|
    double min_modulus_ratio = 0.0; // min over samples of |Q| / scale
    long evaluations = 0;
};

namespace zeros {

namespace detail {

inline void sort_points(std::vector<ZeroPoint>& pts) {
    std::sort(pts.begin(), pts.end(), [](const ZeroPoint& a, const ZeroPoint& b) {
        if (a.location.real() != b.location.real()) return a.location.real() < b.location.real();
        return a.location.imag() < b.location.imag();
    });
}

struct EdgeWalker {
    const ExpSum& q;
    const ContourOptions& opt;
    double spread;
    double min_ratio = std::numeric_limits<double>::infinity();
    long evals = 0;

    struct Sample {
        cplx z;
        cplx v;
    };

    Sample sample(cplx z) {
        ++evals;
        const cplx v = wiener::eval(q, z);
        const double scale = wiener::magnitude_scale(q, z.imag());
        const double ratio = scale > 0.0 ? std::abs(v) / scale : 0.0;
        min_ratio = std::min(min_ratio, ratio);
        if (!(ratio > opt.boundary_floor))
            fail(ErrorKind::BoundaryZero,
                 "|Q| falls below the contour safety floor at z = (" + std::to_string(z.real()) +
                     ", " + std::to_string(z.imag()) + ")");
        return {z, v};
    }

    // Phase change between two samples, refined until every step is small
    // and the midpoint agrees with the direct estimate.
    double refine(const Sample& a, const Sample& b, int depth) {
        const double direct = std::arg(b.v / a.v);
        const Sample m = sample(0.5 * (a.z + b.z));
        const double d1 = std::arg(m.v / a.v);
        const double d2 = std::arg(b.v / m.v);
        const bool small = std::abs(d1) <= opt.max_step_angle && std::abs(d2) <= opt.max_step_angle;
        if (small && std::abs(d1 + d2 - direct) < 1e-9) return d1 + d2;
        const double len = std::abs(b.z - a.z);
        if (depth > 60 || len < 1e-14 * std::max(1.0, std::abs(a.z)))
            fail(ErrorKind::BoundaryZero, "phase cannot be resolved along the contour (zero on edge)");
        return refine(a, m, depth + 1) + refine(m, b, depth + 1);
    }

    double edge(cplx from, cplx to) {
        const double len = std::abs(to - from);
        const int n = 4 + static_cast<int>(std::ceil(len * spread * 8.0));
        double total = 0.0;
        Sample prev = sample(from);
        for (int k = 1; k <= n; ++k) {
            const cplx z = (k == n) ? to : from + (to - from) * (static_cast<double>(k) / n);
            const Sample cur = sample(z);
            total += refine(prev, cur, 0);
            prev = cur;
        }
        return total;
    }
};

}  // namespace detail

/// Winding number of Q around ∂rect with diagnostics.
[[nodiscard]] inline WindingReport winding(const ExpSum& q, const Rect& rect,
                                           const ContourOptions& opt = {}) {
    rect.validate();
    if (q.empty()) fail(ErrorKind::BoundaryZero, "Q is identically zero");
    detail::EdgeWalker walker{q, opt, q.max_freq() - q.min_freq()};
    const cplx a(rect.x_min, rect.y_min), b(rect.x_max, rect.y_min);
    const cplx c(rect.x_max, rect.y_max), d(rect.x_min, rect.y_max);
    const double total = walker.edge(a, b) + walker.edge(b, c) + walker.edge(c, d) + walker.edge(d, a);
    const double w = total / kTwoPi;
    WindingReport rep;
    rep.count = static_cast<int>(std::lround(w));
    rep.residual = std::abs(w - rep.count);
    rep.min_modulus_ratio = walker.min_ratio;
    rep.evaluations = walker.evals;
    if (rep.residual >= opt.max_residual)
        fail(ErrorKind::NonIntegerWinding, "winding residual " + std::to_string(rep.residual));
    if (rep.count < 0)
        fail(ErrorKind::NonIntegerWinding, "negative winding number for an entire function");
    return rep;
}

/// Zeros of Q in rect counted with multiplicity.
[[nodiscard]] inline int count_zeros(const ExpSum& q, const Rect& rect, const ContourOptions& opt = {}) {
    return winding(q, rect, opt).count;
}

/// Half-width H of a strip containing every zero of Q.
///
/// With ω_min the lowest frequency, for y ≥ 0 the term q_{ω_min}e^{2πi ω_min z}
/// dominates all others once |q_{ω_min}| > Σ_{ω≠ω_min}|q_ω| e^{-2π(ω−ω_min)y};
/// symmetrically ω_max dominates for y ≤ 0. H is the larger crossing point.
[[nodiscard]] inline Strip strip_bound(const ExpSum& q) {
    if (q.empty()) fail(ErrorKind::EndpointNotAttained, "Q has empty spectrum");
    if (q.size() == 1) return {0.0, true};
    const auto& terms = q.terms();
    auto crossing = [&](const Term& dom, auto decay) {
        // smallest y ≥ 0 with |q_dom| > Σ |q_ω| e^{-2π decay(ω) y}, decay > 0
        auto rest = [&](double y) {
            double s = 0.0;
            for (const auto& t : terms)
                if (&t != &dom) s += std::abs(t.coef) * std::exp(-kTwoPi * decay(t.freq) * y);
            return s;
        };
        const double lead = std::abs(dom.coef);
        if (rest(0.0) < lead) return 0.0;
        double hi = 1.0;
        while (rest(hi) >= lead) hi *= 2.0;
        double lo = 0.0;
        for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
            const double mid = 0.5 * (lo + hi);
            (rest(mid) >= lead ? lo : hi) = mid;
        }
        return hi;
    };
    const Term& lo_term = terms.front();
    const Term& hi_term = terms.back();
    if (std::abs(lo_term.coef) <= q.drop_tol() || std::abs(hi_term.coef) <= q.drop_tol())
        fail(ErrorKind::EndpointNotAttained, "spectrum endpoint coefficient is below drop_tol");
    const double up = crossing(lo_term, [&](double w) { return w - lo_term.freq; });
    const double down = crossing(hi_term, [&](double w) { return hi_term.freq - w; });
    return {std::max(up, down), false};
}

struct FindOptions {
    ContourOptions contour;
    unsigned threads = 1;
    std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
    int max_nudges = 12;
};

namespace detail {

struct Finder {
    const ExpSum& q;
    double tol;
    const FindOptions& opt;
    std::mt19937_64 rng;
    std::vector<ZeroPoint> found;
    double max_residual = 0.0;

    double scale_at(cplx z) const { return wiener::magnitude_scale(q, z.imag()); }

    // Newton polishing; multiplicity k uses the modified step k·Q/Q'.
    std::optional<cplx> newton(cplx z, int k, const Rect& rect) {
        const double margin = 1e-9 * std::max(1.0, std::abs(rect.center()));
        for (int it = 0; it < 80; ++it) {
            const auto [v, dv] = wiener::eval_with_derivative(q, z);
            if (v == cplx(0.0, 0.0)) return z;
            if (dv == cplx(0.0, 0.0)) return std::nullopt;
            const cplx step = static_cast<double>(k) * v / dv;
            z -= step;
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return std::nullopt;
            if (!rect.contains(z, std::max(rect.width(), rect.height()))) return std::nullopt;
            if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(z))) {
                // one more step to settle
                const auto [v2, dv2] = wiener::eval_with_derivative(q, z);
                if (dv2 != cplx(0.0, 0.0)) z -= static_cast<double>(k) * v2 / dv2;
                break;
            }
        }
        const double res = std::abs(wiener::eval(q, z)) / scale_at(z);
        if (!rect.contains(z, margin)) return std::nullopt;
        // Simple zeros must reach the requested residual; clusters settle at
        // the noise floor of an order-k zero.
        // Rounding in the phases 2πωx limits what any evaluation can reach.
        const double eps = std::numeric_limits<double>::epsilon();
        const double noise = 16.0 * eps * (1.0 + kTwoPi * q.max_abs_freq() * std::abs(z));
        const double limit = (k == 1) ? std::max(tol, noise) : std::max(tol, 100.0 * noise);
        if (res > limit) return std::nullopt;
        return z;
    }

    static double cluster_radius(int k, cplx c) {
        const double eps = std::numeric_limits<double>::epsilon();
        return 10.0 * std::pow(eps, 1.0 / (k + 1)) * std::max(1.0, std::abs(c));
    }

    std::optional<int> try_count(const Rect& r) {
        try {
            return count_zeros(q, r, opt.contour);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::BoundaryZero || e.kind() == ErrorKind::NonIntegerWinding)
                return std::nullopt;
            throw;
        }
    }

    void emit(cplx z, int k) {
        found.push_back({z, k});
        max_residual = std::max(max_residual, std::abs(wiener::eval(q, z)) / scale_at(z));
    }

    void solve(const Rect& rect, int count) {
        if (count == 0) return;
        const cplx c = rect.center();
        const double size = std::max(rect.width(), rect.height());
        const double res_floor = 1e3 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(c));

        if (count == 1) {
            if (auto z = newton(c, 1, rect)) {
                emit(*z, 1);
                return;
            }
        } else if (size < 0.25) {
            // Cluster test: converge with the multiplicity-k step, then check
            // that a small box around the limit holds all k zeros.
            if (auto z = newton(c, count, rect)) {
                const double h = cluster_radius(count, *z);
                const Rect box{z->real() - h, z->real() + h, z->imag() - h, z->imag() + h};
                if (auto k = try_count(box); k && *k == count) {
                    emit(*z, count);
                    return;
                }
            }
            if (size < cluster_radius(count, c)) {
                emit(c, count);
                return;
            }
        }
        if (size < res_floor) {
            emit(c, count);
            return;
        }

        // Bisect the longer side, moving the cut off any zero it hits.
        const bool split_x = rect.width() >= rect.height();
        std::uniform_real_distribution<double> jitter(-0.1, 0.1);
        for (int attempt = 0; attempt <= opt.max_nudges; ++attempt) {
            const double frac = 0.5 + (attempt == 0 ? 0.0123 : jitter(rng));
            Rect a = rect, b = rect;
            if (split_x) {
                const double cut = rect.x_min + frac * rect.width();
                a.x_max = cut;
                b.x_min = cut;
            } else {
                const double cut = rect.y_min + frac * rect.height();
                a.y_max = cut;
                b.y_min = cut;
            }
            const auto ca = try_count(a);
            if (!ca) continue;
            const auto cb = try_count(b);
            if (!cb) continue;
            if (*ca + *cb != count) continue;
            solve(a, *ca);
            solve(b, *cb);
            return;
        }
        if (count >= 2 && size < 1e-3) {
            emit(c, count);
            return;
        }
        fail(ErrorKind::ResolutionLimit, "could not split a rectangle of size " + std::to_string(size) +
                                             " holding " + std::to_string(count) + " zeros");
    }
};

inline Rect grow(const Rect& r, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> jitter(0.0, 0.01);
    return {r.x_min - jitter(rng), r.x_max + jitter(rng), r.y_min - jitter(rng), r.y_max + jitter(rng)};
}

}  // namespace detail

inline unsigned threads_from_env() {
    if (const char* s = std::getenv("QSL_THREADS")) {
        const long v = std::strtol(s, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    return 1;
}

/// All zeros of Q in rect, polished so that |Q(a)| ≤ tol · Σ|q_ω|e^{-2πω Im a}.
/// If ∂rect passes through a zero the rectangle is grown by a small jitter; the
/// rectangle actually used is returned as the window.
[[nodiscard]] inline ZeroSet find_zeros(const ExpSum& q, const Rect& rect, double tol,
                                        const FindOptions& opt = {}) {
    rect.validate();
    if (!(tol > 0.0)) fail(ErrorKind::InvalidArgument, "tol must be positive");
    std::mt19937_64 rng(opt.seed);
    Rect window = rect;
    std::optional<int> total;
    for (int attempt = 0; attempt <= opt.max_nudges; ++attempt) {
        try {
            total = count_zeros(q, window, opt.contour);
            break;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::BoundaryZero || attempt == opt.max_nudges) throw;
            window = detail::grow(rect, rng);
        }
    }

    ZeroSet out;
    out.window = window;
    const unsigned threads = std::max(1u, opt.threads);
    if (threads == 1 || *total < 2 * static_cast<int>(threads)) {
        detail::Finder f{q, tol, opt, std::mt19937_64(opt.seed ^ 0x51ULL), {}, 0.0};
        f.solve(window, *total);
        out.points = std::move(f.found);
        out.max_residual = f.max_residual;
    } else {
        // Cut the window into vertical slabs and solve them concurrently.
        std::vector<Rect> slabs;
        std::vector<int> counts;
        double x = window.x_min;
        const double w = window.width() / threads;
        std::uniform_real_distribution<double> jitter(-0.05, 0.05);
        for (unsigned i = 0; i < threads; ++i) {
            Rect s = window;
            s.x_min = x;
            if (i + 1 == threads) {
                s.x_max = window.x_max;
                counts.push_back(count_zeros(q, s, opt.contour));
            } else {
                std::optional<int> c;
                for (int attempt = 0; attempt <= opt.max_nudges && !c; ++attempt) {
                    s.x_max = window.x_min + (i + 1) * w + (attempt ? jitter(rng) * w : 0.0);
                    try {
                        c = count_zeros(q, s, opt.contour);
                    } catch (const Error& e) {
                        if (e.kind() != ErrorKind::BoundaryZero) throw;
                    }
                }
                if (!c) fail(ErrorKind::ResolutionLimit, "could not place a slab boundary");
                counts.push_back(*c);
            }
            slabs.push_back(s);
            x = s.x_max;
        }
        int sum = 0;
        for (int c : counts) sum += c;
        if (sum != *total) fail(ErrorKind::NonIntegerWinding, "slab counts do not add up");
        std::vector<std::future<detail::Finder>> jobs;
        for (unsigned i = 0; i < threads; ++i) {
            jobs.push_back(std::async(std::launch::async, [&, i] {
                detail::Finder f{q, tol, opt, std::mt19937_64(opt.seed ^ (0x51ULL + i)), {}, 0.0};
                f.solve(slabs[i], counts[i]);
                return f;
            }));
        }
        for (auto& j : jobs) {
            auto f = j.get();
            out.points.insert(out.points.end(), f.found.begin(), f.found.end());
            out.max_residual = std::max(out.max_residual, f.max_residual);
        }
    }
    detail::sort_points(out.points);
    return out;
}

/// Zero set from explicit locations (multiplicities merged for coincident points).
[[nodiscard]] inline ZeroSet make_zero_set(std::vector<cplx> locations, const Rect& window) {
    ZeroSet z;
    z.window = window;
    for (const auto& a : locations) z.points.push_back({a, 1});
    detail::sort_points(z.points);
    std::vector<ZeroPoint> merged;
    for (const auto& p : z.points) {
        if (!merged.empty() && std::abs(merged.back().location - p.location) < 1e-12) {
            merged.back().multiplicity += p.multiplicity;
        } else {
            merged.push_back(p);
        }
    }
    z.points = std::move(merged);
    return z;
}

/// Numbering a_n = ρn + φ(n). Points are ordered by (Re, Im) and repeated by
/// multiplicity. Index 0 goes to the point nearest the origin; among equally
/// near points the one giving the smallest sup|φ| wins unless `anchor` picks a
/// position in the expanded list explicitly.
[[nodiscard]] inline ZeroSet enumerate(const ZeroSet& zs, std::optional<std::size_t> anchor = std::nullopt) {
    const std::vector<cplx> a = zs.expanded();
    if (a.size() < 10)
        fail(ErrorKind::TooFewPoints, "numbering needs at least 10 points, got " + std::to_string(a.size()));

    // ρ from the first members of the first and last groups of equal real part,
    // so that conjugate pairs do not bias the slope.
    const double tie = 1e-9;
    std::size_t last_group = a.size() - 1;
    while (last_group > 0 && std::abs(a[last_group - 1].real() - a.back().real()) <= tie) --last_group;
    if (last_group == 0)
        fail(ErrorKind::TooFewPoints, "all points share one real part; no slope");
    const double rho = (a[last_group].real() - a.front().real()) / static_cast<double>(last_group);
    if (!(rho > 0.0)) fail(ErrorKind::TooFewPoints, "degenerate real-part spread");

    auto build = [&](std::size_t zero_pos) {
        Numbering num;
        num.rho = rho;
        num.first_index = -static_cast<long>(zero_pos);
        num.phi.reserve(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            const long n = num.first_index + static_cast<long>(i);
            num.phi.push_back(a[i] - rho * static_cast<double>(n));
            num.m_bound = std::max(num.m_bound, std::abs(num.phi.back()));
        }
        return num;
    };

    Numbering best;
    if (anchor) {
        if (*anchor >= a.size()) fail(ErrorKind::InvalidArgument, "anchor outside the zero list");
        best = build(*anchor);
    } else {
        double dmin = std::numeric_limits<double>::infinity();
        for (const auto& z : a) dmin = std::min(dmin, std::abs(z));
        bool have = false;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (std::abs(a[i]) > dmin + 1e-9) continue;
            Numbering cand = build(i);
            if (!have || cand.m_bound < best.m_bound - 1e-12) {
                best = std::move(cand);
                have = true;
            }
        }
    }
    ZeroSet out = zs;
    out.numbering = std::move(best);
    return out;
}

/// Points within `eps` of some zero are skipped; returns min |Q| elsewhere on a
/// grid over Re ∈ window, |Im| ≤ s.
[[nodiscard]] inline double separation(const ExpSum& q, const ZeroSet& zs, double eps, double s) {
    if (!(eps > 0.0) || !(s >= 0.0)) fail(ErrorKind::InvalidArgument, "separation needs eps > 0, s ≥ 0");
    const double spread = std::max(q.max_freq() - q.min_freq(), 1e-3);
    const double h = std::min(eps / 4.0, 1.0 / (16.0 * spread));
    const auto pts = zs.expanded();
    const int nx = static_cast<int>(std::ceil(zs.window.width() / h));
    const int ny = std::max(1, static_cast<int>(std::ceil(2.0 * s / h)));
    double m = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= nx; ++i) {
        const double x = zs.window.x_min + zs.window.width() * i / nx;
        for (int j = 0; j <= ny; ++j) {
            const double y = -s + 2.0 * s * j / ny;
            const cplx z(x, y);
            double dist = std::numeric_limits<double>::infinity();
            auto it = std::lower_bound(pts.begin(), pts.end(), x - eps - 1.0,
                                       [](const cplx& p, double v) { return p.real() < v; });
            for (; it != pts.end() && it->real() <= x + eps + 1.0; ++it) dist = std::min(dist, std::abs(*it - z));
            if (dist < eps) continue;
            const double v = std::abs(wiener::eval(q, z));
            if (v < 1e3 * std::numeric_limits<double>::epsilon() * wiener::magnitude_scale(q, y))
                fail(ErrorKind::ZeroEscape, "|Q| vanishes at distance " + std::to_string(dist) +
                                                " from every listed zero (missed zero?)");
            m = std::min(m, v);
        }
    }
    return m;
}

struct LindelofRow {
    double r = 0.0;
    double count_over_r = 0.0;
    double reciprocal_sum = 0.0;  // |Σ_{|a|≤r} 1/a|
};

[[nodiscard]] inline std::vector<LindelofRow> lindelof_diag(const ZeroSet& zs, const std::vector<double>& r_grid) {
    const auto pts = zs.expanded();
    for (const auto& a : pts)
        if (std::abs(a) < 1e-9) fail(ErrorKind::ZeroAtOrigin, "zero set contains the origin");
    std::vector<LindelofRow> rows;
    if (pts.empty()) return rows;
    for (double r : r_grid) {
        LindelofRow row;
        row.r = r;
        long cnt = 0;
        cplx s{0.0, 0.0};
        for (const auto& a : pts) {
            if (std::abs(a) <= r) {
                ++cnt;
                s += 1.0 / a;
            }
        }
        row.count_over_r = r > 0.0 ? static_cast<double>(cnt) / r : 0.0;
        row.reciprocal_sum = std::abs(s);
        rows.push_back(row);
    }
    return rows;
}

/// Largest multiplicity-counted number of points with Re in a closed unit
/// window [t, t+1], over all real t.
[[nodiscard]] inline int unit_window_max(const ZeroSet& zs) {
    // the best closed window [t, t+1] can always be slid right until t hits a point
    std::vector<std::pair<double, int>> xs;
    for (const auto& p : zs.points) xs.push_back({p.location.real(), p.multiplicity});
    std::sort(xs.begin(), xs.end());
    int best = 0, count = 0;
    std::size_t j = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (j < i) {
            j = i;
            count = 0;
        }
        while (j < xs.size() && xs[j].first <= xs[i].first + 1.0) count += xs[j++].second;
        best = std::max(best, count);
        count -= xs[i].second;
    }
    return best;
}

}  // namespace zeros
}  // namespace qsl

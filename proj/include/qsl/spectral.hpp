// qsl/spectral.hpp: the atom measure Σ b_γ δ_γ attached to the zero set of
// an exponential sum, and numerical checks of the identities it satisfies.
//
// Pipeline for Q with spectrum [ω_min, ω_max]:
//   centre:      Q_c = Q·e^{-2πi·center_shift·z}, spectrum [-κ, κ]
//   upper line:  Q_c = q_{-κ} e^{-2πiκz} (1 + P),   spec P ⊂ (0, 2κ]
//                log(1+P) = Σ p_γ e^{2πiγz}  ⇒  b_γ = -γ p_γ   (γ > 0)
//   lower line:  Q_c = q_κ e^{2πiκz} (1 + P̃),     spec P̃ ⊂ [-2κ, 0)
//                handled by reflecting z ↦ -z and reusing the upper path
//   b_0 = 2κ
// The logarithms are taken on a horizontal line where the remainder has
// Wiener norm ≤ 2/3 so that the Mercator series converges geometrically.

#pragma once

#include "qsl/atoms.hpp"
#include "qsl/cfourier.hpp"
#include "qsl/error.hpp"
#include "qsl/strip_zeros.hpp"
#include "qsl/wiener.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace qsl {
namespace spectral {

inline constexpr double kLineNorm = 2.0 / 3.0;
inline constexpr double kLineGrid = 1e-6;

struct Normalized {
    double kappa = 0.0;
    cplx q_minus_kappa{0.0, 0.0};
    ExpSum P;
    double center_shift = 0.0;
};

namespace detail {

inline void require_endpoints(const ExpSum& q) {
    if (q.size() < 2)
        fail(ErrorKind::DegenerateSpectrum, "need at least two frequencies (spectrum width 2κ > 0)");
    if (q.terms().front().coef == cplx{} || q.terms().back().coef == cplx{})
        fail(ErrorKind::EndpointNotAttained, "extreme frequencies must carry nonzero coefficients");
}

/// Remainder factor at one end: terms q_ω/q_end at frequency ω - ω_end.
inline ExpSum remainder(const ExpSum& q, const Term& end) {
    std::vector<Term> terms;
    terms.reserve(q.size() - 1);
    for (const auto& t : q.terms()) {
        if (t.freq == end.freq) continue;
        terms.push_back({t.freq - end.freq, t.coef / end.coef});
    }
    return ExpSum(std::move(terms), q.merge_tol(), 0.0, q.discarded_norm() / std::abs(end.coef));
}

}  // namespace detail

/// Factor Q_c = q_{-κ} e^{-2πiκz}(1 + P).
[[nodiscard]] inline Normalized normalize(const ExpSum& q) {
    detail::require_endpoints(q);
    Normalized n;
    n.center_shift = 0.5 * (q.min_freq() + q.max_freq());
    n.kappa = 0.5 * (q.max_freq() - q.min_freq());
    if (!(n.kappa > 0.0)) fail(ErrorKind::DegenerateSpectrum, "κ = 0");
    n.q_minus_kappa = q.terms().front().coef;
    n.P = detail::remainder(q, q.terms().front());
    return n;
}

/// Factor Q_c = q_κ e^{2πiκz}(1 + P̃); returns (q_κ, P̃).
[[nodiscard]] inline std::pair<cplx, ExpSum> normalize_lower(const ExpSum& q) {
    detail::require_endpoints(q);
    return {q.terms().back().coef, detail::remainder(q, q.terms().back())};
}

/// Smallest s ≥ 0 on a 1e-6 grid with ‖P(· + is)‖_W ≤ 2/3.
[[nodiscard]] inline double choose_line(const ExpSum& p) {
    if (p.norm() <= kLineNorm) return 0.0;
    if (p.empty() || !(p.min_freq() > 0.0))
        fail(ErrorKind::InvalidArgument, "choose_line needs a strictly positive spectrum");
    auto ok = [&](long k) { return wiener::shift_line(p, k * kLineGrid).norm() <= kLineNorm; };
    long lo = 0, hi = 1;
    while (!ok(hi)) {
        lo = hi;
        hi *= 2;
        if (hi > (1L << 40)) fail(ErrorKind::Overflow, "choose_line: no admissible line found");
    }
    while (hi - lo > 1) {
        const long mid = lo + (hi - lo) / 2;
        (ok(mid) ? hi : lo) = mid;
    }
    return hi * kLineGrid;
}

struct LineAtoms {
    std::vector<Atom> atoms;     // γ > 0, b_γ = -γ p_γ
    double s = 0.0;
    double discarded = 0.0;      // series tail plus dropped mass, on the line
    double gamma_max = 0.0;      // atoms complete below this frequency
};

/// Atoms of log(1 + P) for spec P ⊂ (0, ∞), up to `max_gamma`. The series is
/// taken on the line `lift` above the smallest admissible one.
[[nodiscard]] inline LineAtoms line_atoms(const ExpSum& p, double tail_tol, double max_gamma,
                                          double lift = 0.0) {
    if (!(lift >= 0.0)) fail(ErrorKind::InvalidArgument, "line lift must be non-negative");
    LineAtoms out;
    out.s = choose_line(p) + lift;
    const ExpSum on_line = wiener::shift_line(p, out.s);
    const double half = 0.5 * tail_tol;
    const auto [order, tail] = wiener::log1p_order(on_line.norm(), half);
    // Powers P^n with n > order start at frequency (order+1)·min_freq, so
    // everything strictly below that is exact.
    const double exact_below = (order + 1) * p.min_freq();
    out.gamma_max = std::min(max_gamma, exact_below);
    const double cap = out.gamma_max * (1.0 - 1e-12);
    const ExpSum log_line = wiener::log1p(on_line, half, cap);
    out.discarded = tail;

    // Drop the smallest terms while their total stays within tail_tol/2.
    std::vector<Term> terms = log_line.terms();
    std::vector<std::size_t> idx(terms.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return std::abs(terms[a].coef) < std::abs(terms[b].coef);
    });
    std::vector<bool> keep(terms.size(), true);
    double dropped = 0.0;
    for (std::size_t i : idx) {
        const double m = std::abs(terms[i].coef);
        if (dropped + m > half) break;
        dropped += m;
        keep[i] = false;
    }
    out.discarded += dropped;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (!keep[i]) continue;
        const double g = terms[i].freq;
        const cplx unshifted = terms[i].coef * std::exp(kTwoPi * g * out.s);
        out.atoms.push_back({g, -g * unshifted});
    }
    return out;
}

/// Atom measure of the zero set of Q. Frequencies |γ| ≥ max_gamma are not
/// computed. `lift` raises both lines; the atoms do not depend on it.
[[nodiscard]] inline AtomMeasure atoms(const ExpSum& q, double tail_tol,
                                       double max_gamma = kNoCap, double lift = 0.0) {
    if (!(tail_tol > 0.0)) fail(ErrorKind::InvalidArgument, "tail_tol must be positive");
    const Normalized n = normalize(q);
    const auto lower = normalize_lower(q);
    const LineAtoms up = line_atoms(n.P, tail_tol, max_gamma, lift);
    const LineAtoms down = line_atoms(wiener::reflect(lower.second), tail_tol, max_gamma, lift);

    std::vector<Atom> all;
    all.reserve(up.atoms.size() + down.atoms.size() + 1);
    all.push_back({0.0, cplx(2.0 * n.kappa, 0.0)});
    for (const auto& a : up.atoms) all.push_back(a);
    for (const auto& a : down.atoms) all.push_back({-a.gamma, a.b});

    AtomMeasure m = make_atom_measure(std::move(all), q.merge_tol());
    m.kappa = n.kappa;
    m.center_shift = n.center_shift;
    m.tail_tol = tail_tol;
    m.s_upper = up.s;
    m.s_lower = down.s;
    m.discarded_upper = up.discarded;
    m.discarded_lower = down.discarded;
    m.gamma_max_upper = up.gamma_max;
    m.gamma_max_lower = down.gamma_max;
    return m;
}

/// Growth rate L of Σ_{|γ|<r}|b_γ| over r up to the largest atom.
[[nodiscard]] inline double fitted_rate(const AtomMeasure& m) {
    double top = 0.0;
    for (const auto& a : m.entries) top = std::max(top, std::abs(a.gamma));
    if (top <= 0.0) return 0.0;
    std::vector<double> r, v;
    for (int i = 1; i <= 32; ++i) {
        r.push_back(top * i / 32.0 + 1e-9);
        v.push_back(m.variation(r.back()));
    }
    return std::max(0.0, cfourier::fit_exponential_rate(r, v));
}

/// Atom side of the derivative identity:
///   Im ζ > 0:  -2πi Σ_{γ>0} b_γ e^{2πiγζ} - πi b_0
///   Im ζ < 0:   2πi Σ_{γ<0} b_γ e^{2πiγζ} + πi b_0
[[nodiscard]] inline cplx log_derivative(const AtomMeasure& m, cplx zeta) {
    const cplx i{0.0, 1.0};
    const bool upper = zeta.imag() > 0.0;
    cplx s{0.0, 0.0};
    for (const auto& a : m.entries) {
        if (upper ? a.gamma <= 0.0 : a.gamma >= 0.0) continue;
        s += a.b * std::exp(i * (kTwoPi * a.gamma) * zeta);
    }
    const cplx b0 = m.b0();
    return upper ? -i * kTwoPi * s - i * kPi * b0 : i * kTwoPi * s + i * kPi * b0;
}

/// Symmetric partial-fraction sum Σ_{|n|≤N} 1/(ζ - a_n) with the lattice
/// tail Σ_{|n|>N} 1/(ζ - ρn - φ̄) added in closed form (φ̄ = mean offset).
struct PartialFraction {
    cplx value{0.0, 0.0};
    long terms = 0;            // N
    double tail_error = 0.0;   // estimate of what the lattice tail model misses
};

[[nodiscard]] inline PartialFraction partial_fraction(const ZeroSet& zs, cplx zeta) {
    if (!zs.numbering) fail(ErrorKind::NotNumbered, "partial fractions need a numbered zero set");
    const Numbering& num = *zs.numbering;
    const long big = std::min(-num.first_index, num.last_index());
    if (big < 1) fail(ErrorKind::WindowTooSmall, "numbering is not two-sided around index 0");
    PartialFraction out;
    out.terms = big;
    cplx mean{0.0, 0.0};
    for (long n = -big; n <= big; ++n) {
        out.value += 1.0 / (zeta - num.location(n));
        mean += num.phi_at(n);
    }
    mean /= static_cast<double>(2 * big + 1);
    double spread = 0.0;
    for (long n = -big; n <= big; ++n) spread = std::max(spread, std::abs(num.phi_at(n) - mean));

    const double rho = num.rho;
    const double nn = static_cast<double>(big);
    const cplx w = zeta - mean;
    // 1/(w-ρn) + 1/(w+ρn) = -2w/(ρ²n²) - 2w³/(ρ⁴n⁴) - …
    const double inv2 = 1.0 / nn - 0.5 / (nn * nn) + 1.0 / (6.0 * nn * nn * nn);
    const double inv4 = 1.0 / (3.0 * nn * nn * nn);
    out.value += -2.0 * w / (rho * rho) * inv2 - 2.0 * w * w * w / std::pow(rho, 4) * inv4;
    // Offsets that wander from their mean leave O(spread/(ρ²N)); the next
    // lattice term is O(|w|⁵/(ρ⁶N⁵)).
    out.tail_error = 2.0 * spread / (rho * rho * nn) + 2.0 * std::pow(std::abs(w), 5) / (5.0 * std::pow(rho, 6) * std::pow(nn, 5));
    return out;
}

struct DerReport {
    double max_rel_error = 0.0;
    double fitted_L = 0.0;
    long window_terms = 0;
    double window_tail = 0.0;   // largest partial-fraction tail estimate over samples
    double atom_tail = 0.0;     // estimate of atoms beyond the computed range
};

/// Compares the partial-fraction logarithmic derivative of the canonical
/// product with the atom series at each sample.
[[nodiscard]] inline DerReport verify_der(const ZeroSet& zeros, const AtomMeasure& m,
                                          const std::vector<cplx>& zeta_samples,
                                          double tolerance = kNoCap) {
    const ZeroSet zs = zeros.numbering ? zeros : zeros::enumerate(zeros);
    DerReport rep;
    rep.fitted_L = fitted_rate(m);
    double strip = 0.0;
    for (const auto& p : zs.points) strip = std::max(strip, std::abs(p.location.imag()));
    double bmax = 0.0;
    for (const auto& a : m.entries) bmax = std::max(bmax, std::abs(a.b));

    for (const auto& zeta : zeta_samples) {
        const double y = std::abs(zeta.imag());
        if (!(y > rep.fitted_L / kTwoPi) || !(y > strip))
            fail(ErrorKind::LineTooLow, "sample line Im ζ = " + std::to_string(zeta.imag()) +
                                            " must lie above the zeros and above L/2π = " +
                                            std::to_string(rep.fitted_L / kTwoPi));
        const PartialFraction pf = partial_fraction(zs, zeta);
        rep.window_terms = pf.terms;
        rep.window_tail = std::max(rep.window_tail, pf.tail_error);
        const double gmax = zeta.imag() > 0 ? m.gamma_max_upper : m.gamma_max_lower;
        if (std::isfinite(gmax))
            rep.atom_tail = std::max(rep.atom_tail, bmax * std::exp(-kTwoPi * gmax * y) / -std::expm1(-kTwoPi * y));
        const cplx rhs = log_derivative(m, zeta);
        const double scale = std::max(std::abs(rhs), std::numeric_limits<double>::min());
        rep.max_rel_error = std::max(rep.max_rel_error, std::abs(pf.value - rhs) / scale);
        if (pf.tail_error / scale > tolerance)
            fail(ErrorKind::WindowTooSmall, "partial-fraction tail " + std::to_string(pf.tail_error) +
                                                " exceeds the tolerance; widen the zero window");
    }
    return rep;
}

struct DualityReport {
    double rel_error = 0.0;
    cplx zero_side{0.0, 0.0};
    cplx atom_side{0.0, 0.0};
    double zero_tail = 0.0;
    double atom_discarded = 0.0;
};

/// ⟨μ_A, φ̂^c⟩ against Σ b_γ φ(γ).
[[nodiscard]] inline DualityReport verify_duality(const ZeroSet& zeros, const AtomMeasure& m,
                                                  const TestFunction& phi,
                                                  double tolerance = kNoCap) {
    if (phi.hi() > m.gamma_max_upper || phi.lo() < -m.gamma_max_lower)
        fail(ErrorKind::WindowTooSmall, "test function support reaches past the computed atoms");
    DualityReport rep;
    const cfourier::PairResult lhs = cfourier::pair_zeros(zeros, phi, tolerance);
    rep.zero_side = lhs.value;
    rep.zero_tail = lhs.tail_bound;
    rep.atom_side = cfourier::pair_atoms(m, phi);
    rep.atom_discarded = m.discarded_upper + m.discarded_lower;
    rep.rel_error = std::abs(rep.zero_side - rep.atom_side) / (1.0 + std::abs(rep.atom_side));
    return rep;
}

struct ConditionReport {
    double fitted_L = 0.0;
    std::vector<double> neig_cutoffs;   // δ = 2^{-j}
    std::vector<double> neig_sums;      // Σ_{δ ≤ |γ| < 1} |b_γ/γ|
    bool neig_diverges = false;
    double min_gap = 0.0;               // smallest spacing of consecutive γ
    int max_unit_count = 0;             // most atoms in any window [t, t+1]
    std::vector<double> r_grid;
    std::vector<double> variation;      // Σ_{|γ|<r}|b_γ|
};

[[nodiscard]] inline ConditionReport check_conditions(const AtomMeasure& m, const std::vector<double>& r_grid) {
    ConditionReport rep;
    rep.r_grid = r_grid;
    std::sort(rep.r_grid.begin(), rep.r_grid.end());
    for (double r : rep.r_grid) rep.variation.push_back(m.variation(r));
    rep.fitted_L = std::max(0.0, cfourier::fit_exponential_rate(rep.r_grid, rep.variation));

    double smallest = kNoCap;
    for (const auto& a : m.entries)
        if (a.gamma != 0.0) smallest = std::min(smallest, std::abs(a.gamma));
    // Only bands [2^{-j}, 2^{1-j}) that lie above the smallest atom are complete.
    for (int j = 0; j <= 60; ++j) {
        const double delta = std::ldexp(1.0, -j);
        if (j > 0 && delta < smallest) break;
        double s = 0.0;
        for (const auto& a : m.entries) {
            const double g = std::abs(a.gamma);
            if (g >= delta && g < 1.0) s += std::abs(a.b) / g;
        }
        rep.neig_cutoffs.push_back(delta);
        rep.neig_sums.push_back(s);
    }
    const auto& S = rep.neig_sums;
    if (S.size() >= 4) {
        const std::size_t k = S.size() - 1;
        const double d1 = S[k] - S[k - 1], d2 = S[k - 1] - S[k - 2], d3 = S[k - 2] - S[k - 3];
        rep.neig_diverges = d1 > 0.0 && d1 >= d2 && d2 >= d3;
    }

    rep.min_gap = kNoCap;
    for (std::size_t i = 1; i < m.entries.size(); ++i)
        rep.min_gap = std::min(rep.min_gap, m.entries[i].gamma - m.entries[i - 1].gamma);
    if (m.entries.size() < 2) rep.min_gap = 0.0;
    std::size_t j = 0;
    for (std::size_t i = 0; i < m.entries.size(); ++i) {
        if (j < i) j = i;
        while (j + 1 < m.entries.size() && m.entries[j + 1].gamma <= m.entries[i].gamma + 1.0) ++j;
        rep.max_unit_count = std::max(rep.max_unit_count, static_cast<int>(j - i + 1));
    }
    return rep;
}

}  // namespace spectral
}  // namespace qsl

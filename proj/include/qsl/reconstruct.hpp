// qsl/reconstruct.hpp: rebuild an exponential sum from its atom measure.
//
// On a line Im z = y0 above the zeros, integrating the derivative identity
// gives
//     log f(x + i·y0) + iπ b_0 x = -Σ_{γ>0} (b_γ/γ) e^{-2πγ y0} e^{2πiγx} + const,
// so g = exp(right side) is a Wiener series Σ β_ω e^{2πiωx} and
//     f(z) = Σ β_ω e^{π(2ω - b_0) y0} e^{πi(2ω - b_0) z}.
// The free multiplicative constant is fixed by f(0) = 1.

#pragma once

#include "qsl/atoms.hpp"
#include "qsl/error.hpp"
#include "qsl/spectral.hpp"
#include "qsl/strip_zeros.hpp"
#include "qsl/wiener.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace qsl {

struct ReconstructionResult {
    ExpSum series;          // f as Σ c_ω e^{2πiωz}
    double y0 = 0.0;
    ExpSum log_series;
    cplx normalization{1.0, 0.0};  // factor applied so that f(0) = 1
    double b0 = 0.0;
    double kappa = 0.0;
    double center_shift = 0.0;
    double excess_mass = 0.0;  // Wiener mass of g found above frequency b_0 (removed)
};

namespace reconstruct {

/// Estimate of Σ |b_γ/γ| e^{-2πγ y0} over the positive atoms that were not
/// computed (γ ≥ gamma_max_upper), assuming |b_γ| stays below the largest
/// computed one and the atoms are at least `gap` apart.
[[nodiscard]] inline double log_tail_estimate(const AtomMeasure& m, double y0) {
    if (!std::isfinite(m.gamma_max_upper)) return 0.0;
    double bmax = 0.0, gap = kNoCap;
    for (std::size_t i = 0; i < m.entries.size(); ++i) {
        bmax = std::max(bmax, std::abs(m.entries[i].b));
        if (i > 0) gap = std::min(gap, m.entries[i].gamma - m.entries[i - 1].gamma);
    }
    if (!std::isfinite(gap) || gap <= 0.0) gap = 1.0;
    const double g = m.gamma_max_upper;
    return bmax / g * std::exp(-kTwoPi * g * y0) / -std::expm1(-kTwoPi * gap * y0);
}

[[nodiscard]] inline ExpSum log_series(const AtomMeasure& m, double y0) {
    const double L = spectral::fitted_rate(m);
    if (!(y0 > L / kTwoPi))
        fail(ErrorKind::LineTooLow, "log series needs y0 > L/2π = " + std::to_string(L / kTwoPi) +
                                        " for absolute convergence");
    std::vector<double> grid;
    for (int i = 1; i <= 16; ++i) grid.push_back(i / 16.0);
    if (spectral::check_conditions(m, grid).neig_diverges)
        fail(ErrorKind::NeigDiverges, "Σ_{0<|γ|<1} |b_γ/γ| grows across refinements");
    std::vector<Term> terms;
    for (const auto& a : m.entries) {
        if (a.gamma <= 0.0) continue;
        terms.push_back({a.gamma, -(a.b / a.gamma) * std::exp(-kTwoPi * a.gamma * y0)});
    }
    return ExpSum(std::move(terms), kDefaultMergeTol, 0.0, log_tail_estimate(m, y0));
}

/// Build f from the atoms. A negative y0 picks the line automatically:
/// L/2π + 0.25, doubled until the log-series tail estimate is below tail_tol.
[[nodiscard]] inline ReconstructionResult from_atoms(const AtomMeasure& m, double y0, double tail_tol) {
    if (!(tail_tol > 0.0)) fail(ErrorKind::InvalidArgument, "tail_tol must be positive");
    const double b0 = m.b0().real();
    if (!(b0 > 0.0) || std::abs(m.b0().imag()) > 1e-9 * b0)
        fail(ErrorKind::InvalidArgument, "the atom at 0 must be real and positive (it is the zero density)");
    if (y0 < 0.0) {
        y0 = spectral::fitted_rate(m) / kTwoPi + 0.25;
        for (int k = 0; log_tail_estimate(m, y0) > tail_tol; ++k) {
            if (k > 20) fail(ErrorKind::LineTooLow, "no line found where the log series tail meets tail_tol");
            y0 *= 2.0;
        }
    }

    ReconstructionResult rec;
    rec.y0 = y0;
    rec.b0 = b0;
    rec.kappa = m.kappa;
    rec.center_shift = m.center_shift;
    rec.log_series = log_series(m, y0);

    // g has spectrum in [0, b_0] in exact arithmetic; compute a little beyond
    // so that leakage above b_0 can be measured before it is cut off.
    const double cap = 2.0 * b0;
    const ExpSum g = wiener::exp(rec.log_series, tail_tol, cap);
    const double edge = b0 + std::max(kDefaultMergeTol, 1e-9 * b0);
    double inside = 0.0;
    std::vector<Term> terms;
    for (const auto& t : g.terms()) {
        const double amp = std::exp(kPi * (2.0 * t.freq - b0) * y0);
        if (t.freq > edge) {
            rec.excess_mass += std::abs(t.coef) * amp;
            continue;
        }
        terms.push_back({t.freq - 0.5 * b0, t.coef * amp});
        inside += std::abs(t.coef) * amp;
    }
    if (rec.excess_mass > std::max(1e3 * tail_tol, 1e-8) * inside)
        fail(ErrorKind::SpectrumUnbounded, "reconstructed spectrum leaks above b_0 (mass " +
                                               std::to_string(rec.excess_mass) + ")");
    for (const auto& t : terms)
        if (std::abs(t.freq) > 10.0 * std::max(m.kappa, 0.5 * b0))
            fail(ErrorKind::SpectrumUnbounded, "reconstructed frequency beyond 10κ");

    // Cutting g at the cap does not touch coefficients below it (the spectrum
    // is non-negative), so only the series tail and the log-series tail count.
    const double r = rec.log_series.norm();
    const double d = rec.log_series.discarded_norm();
    const double certified = wiener::exp_order(r, tail_tol).second + std::exp(r) * std::expm1(d);
    const double amp_max = std::exp(kPi * b0 * y0);
    ExpSum raw(std::move(terms), kDefaultMergeTol, 0.0, certified * amp_max + rec.excess_mass);
    const cplx at0 = wiener::eval(raw, {0.0, 0.0});
    if (std::abs(at0) <= 1e-9 * raw.norm())
        fail(ErrorKind::ZeroAtOrigin, "the zero set contains 0; translate x ↦ x + c first");
    rec.normalization = 1.0 / at0;
    rec.series = wiener::scale(raw, rec.normalization);
    return rec;
}

struct ProductValue {
    cplx value{0.0, 0.0};
    double tail_estimate = 0.0;
    long terms = 0;
};

/// (1 - z/a_0) Π_{n=1..N} (1 - z/a_n)(1 - z/a_{-n}) over the numbered window.
[[nodiscard]] inline ProductValue canonical_product(const ZeroSet& zs, cplx z) {
    if (!zs.numbering) fail(ErrorKind::NotNumbered, "canonical product needs a numbered zero set");
    const Numbering& num = *zs.numbering;
    for (const auto& p : zs.points)
        if (std::abs(p.location) < 1e-9)
            fail(ErrorKind::ZeroAtOrigin, "the zero set contains 0; translate x ↦ x + c first");
    const long big = std::min(-num.first_index, num.last_index());
    if (big < 1) fail(ErrorKind::WindowTooSmall, "numbering is not two-sided around index 0");
    ProductValue out;
    out.terms = big;
    out.value = 1.0 - z / num.location(0);
    cplx mean = num.phi_at(0);
    for (long n = 1; n <= big; ++n) {
        out.value *= (1.0 - z / num.location(n)) * (1.0 - z / num.location(-n));
        mean += num.phi_at(n) + num.phi_at(-n);
    }
    mean /= static_cast<double>(2 * big + 1);
    double spread = 0.0;
    for (long n = -big; n <= big; ++n) spread = std::max(spread, std::abs(num.phi_at(n) - mean));
    // Remaining pairs contribute log ≈ z(2φ̄ - z)/(ρ²n²) each.
    const double r2 = num.rho * num.rho;
    const double nn = static_cast<double>(big);
    const double lt = (std::abs(z * (2.0 * mean - z)) + 2.0 * std::abs(z) * spread) / (r2 * (nn - 0.5)) +
                      std::pow(std::abs(z) + std::abs(mean), 4) / (r2 * r2 * nn * nn * nn);
    out.tail_estimate = std::abs(out.value) * std::expm1(lt);
    return out;
}

struct RoundtripReport {
    int zeros_q = 0;
    int zeros_rec = 0;
    double max_zero_distance = 0.0;
    double ratio_constancy = 0.0;   // max |r - mean r| / |mean r|
    cplx ratio_mean{0.0, 0.0};
    double theta = 0.0;             // phase rate in Q = C f e^{iθz}
    cplx measured_d{0.0, 0.0};      // mean of Q'/Q - f'/f over the grid
    int grid_points = 0;
};

/// Zeros of Q and of the reconstruction in `rect` must agree within
/// `zero_tol`; Q / (f e^{iθz}) must then be constant.
[[nodiscard]] inline RoundtripReport verify_roundtrip(const ExpSum& q, const ReconstructionResult& rec,
                                                      const Rect& rect, double zero_tol = 1e-6) {
    rect.validate();
    RoundtripReport rep;
    const ZeroSet zq = zeros::find_zeros(q, rect, 1e-12);
    const ZeroSet zf = zeros::find_zeros(rec.series, rect, 1e-12);
    rep.zeros_q = zq.total_multiplicity();
    rep.zeros_rec = zf.total_multiplicity();
    if (rep.zeros_q != rep.zeros_rec)
        fail(ErrorKind::ZeroMismatch, "Q has " + std::to_string(rep.zeros_q) + " zeros in the rectangle, the reconstruction " +
                                          std::to_string(rep.zeros_rec));
    std::vector<cplx> a = zq.expanded(), b = zf.expanded();
    std::vector<bool> used(b.size(), false);
    for (const auto& z : a) {
        std::size_t best = b.size();
        double d = kNoCap;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (used[j]) continue;
            if (std::abs(b[j] - z) < d) {
                d = std::abs(b[j] - z);
                best = j;
            }
        }
        used[best] = true;
        rep.max_zero_distance = std::max(rep.max_zero_distance, d);
    }
    if (rep.max_zero_distance > zero_tol)
        fail(ErrorKind::ZeroMismatch, "zero sets differ by " + std::to_string(rep.max_zero_distance));

    const spectral::Normalized n = spectral::normalize(q);
    rep.theta = kPi * rec.b0 - kTwoPi * n.kappa + kTwoPi * n.center_shift;
    const cplx i{0.0, 1.0};
    std::vector<cplx> ratios;
    cplx dsum{0.0, 0.0};
    for (int ix = 0; ix < 20; ++ix) {
        for (int iy = 0; iy < 20; ++iy) {
            const cplx z(rect.x_min + (ix + 0.5) * rect.width() / 20.0,
                         rect.y_min + (iy + 0.5) * rect.height() / 20.0);
            bool near = false;
            for (const auto& zz : a) near = near || std::abs(zz - z) < 0.1;
            if (near) continue;
            const auto [qv, qd] = wiener::eval_with_derivative(q, z);
            const auto [fv, fd] = wiener::eval_with_derivative(rec.series, z);
            ratios.push_back(qv / (fv * std::exp(i * rep.theta * z)));
            dsum += qd / qv - fd / fv;
        }
    }
    rep.grid_points = static_cast<int>(ratios.size());
    if (ratios.empty()) return rep;
    for (const auto& r : ratios) rep.ratio_mean += r;
    rep.ratio_mean /= static_cast<double>(ratios.size());
    for (const auto& r : ratios)
        rep.ratio_constancy = std::max(rep.ratio_constancy, std::abs(r - rep.ratio_mean) / std::abs(rep.ratio_mean));
    rep.measured_d = dsum / static_cast<double>(ratios.size());
    return rep;
}

}  // namespace reconstruct
}  // namespace qsl

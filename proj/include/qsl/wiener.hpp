// qsl/wiener.hpp: absolutely convergent exponential sums with exact spectra.
//
// An ExpSum stores Σ q_ω e^{2πiωx} as a sorted list of (ω, q_ω) pairs. Every
// operation keeps two pieces of bookkeeping:
//
//   merge_tol       frequencies closer than this are the same frequency
//   discarded_norm  an upper bound on the Wiener norm Σ|q| of everything that
//                   was thrown away (dropped small coefficients, truncated
//                   series tails, frequencies above a cap)
//
// so that eval() can report a certified error bound. Values are immutable
// once built; all operations are pure.

#pragma once

#include "qsl/error.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qsl {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kDefaultMergeTol = 1e-9;
inline constexpr std::size_t kMaxTerms = 10'000'000;
inline constexpr double kNoCap = std::numeric_limits<double>::infinity();

struct Term {
    double freq = 0.0;
    cplx coef{0.0, 0.0};
};

class ExpSum {
public:
    ExpSum() = default;

    explicit ExpSum(std::vector<Term> terms, double merge_tol = kDefaultMergeTol,
                    double drop_tol = 0.0, double discarded_norm = 0.0)
        : terms_(std::move(terms)), merge_tol_(merge_tol), drop_tol_(drop_tol),
          discarded_(discarded_norm) {
        if (!(merge_tol_ >= 0.0) || !(drop_tol_ >= 0.0) || !(discarded_ >= 0.0))
            fail(ErrorKind::InvalidArgument, "ExpSum tolerances must be non-negative");
        canonicalize();
    }

    static ExpSum constant(cplx c, double merge_tol = kDefaultMergeTol, double drop_tol = 0.0) {
        return ExpSum({{0.0, c}}, merge_tol, drop_tol);
    }

    static ExpSum monomial(double freq, cplx c, double merge_tol = kDefaultMergeTol,
                           double drop_tol = 0.0) {
        return ExpSum({{freq, c}}, merge_tol, drop_tol);
    }

    [[nodiscard]] const std::vector<Term>& terms() const noexcept { return terms_; }
    [[nodiscard]] std::size_t size() const noexcept { return terms_.size(); }
    [[nodiscard]] bool empty() const noexcept { return terms_.empty(); }
    [[nodiscard]] double merge_tol() const noexcept { return merge_tol_; }
    [[nodiscard]] double drop_tol() const noexcept { return drop_tol_; }
    [[nodiscard]] double discarded_norm() const noexcept { return discarded_; }

    /// Wiener norm of the stored terms.
    [[nodiscard]] double norm() const noexcept {
        double s = 0.0;
        for (const auto& t : terms_) s += std::abs(t.coef);
        return s;
    }

    [[nodiscard]] double min_freq() const { return terms_.empty() ? 0.0 : terms_.front().freq; }
    [[nodiscard]] double max_freq() const { return terms_.empty() ? 0.0 : terms_.back().freq; }
    [[nodiscard]] double max_abs_freq() const {
        return terms_.empty() ? 0.0 : std::max(std::abs(min_freq()), std::abs(max_freq()));
    }

    /// Coefficient stored at `freq` (within merge_tol), or zero.
    [[nodiscard]] cplx coefficient(double freq) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), freq - merge_tol_,
                                   [](const Term& t, double f) { return t.freq < f; });
        if (it != terms_.end() && std::abs(it->freq - freq) <= merge_tol_) return it->coef;
        return {0.0, 0.0};
    }

    [[nodiscard]] std::vector<double> spectrum() const {
        std::vector<double> out;
        out.reserve(terms_.size());
        for (const auto& t : terms_) out.push_back(t.freq);
        return out;
    }

    /// Same terms with different bookkeeping tolerances (re-canonicalized).
    [[nodiscard]] ExpSum with_tolerances(double merge_tol, double drop_tol) const {
        return ExpSum(terms_, merge_tol, drop_tol, discarded_);
    }

    [[nodiscard]] ExpSum with_discarded(double discarded_norm) const {
        ExpSum out = *this;
        out.discarded_ = discarded_norm;
        return out;
    }

private:
    void canonicalize() {
        for (const auto& t : terms_) {
            if (!std::isfinite(t.freq) || !std::isfinite(t.coef.real()) ||
                !std::isfinite(t.coef.imag()))
                fail(ErrorKind::Overflow, "non-finite frequency or coefficient in ExpSum");
        }
        const auto by_freq = [](const Term& a, const Term& b) { return a.freq < b.freq; };
        if (!std::is_sorted(terms_.begin(), terms_.end(), by_freq))
            std::stable_sort(terms_.begin(), terms_.end(), by_freq);
        std::vector<Term> merged;
        merged.reserve(terms_.size());
        std::size_t i = 0;
        while (i < terms_.size()) {
            // A cluster chains through neighbours closer than merge_tol; it is
            // labelled by the frequency of its largest contributor.
            std::size_t j = i + 1;
            cplx sum = terms_[i].coef;
            double label = terms_[i].freq;
            double best = std::abs(terms_[i].coef);
            while (j < terms_.size() && terms_[j].freq - terms_[j - 1].freq <= merge_tol_) {
                sum += terms_[j].coef;
                if (std::abs(terms_[j].coef) > best) {
                    best = std::abs(terms_[j].coef);
                    label = terms_[j].freq;
                }
                ++j;
            }
            const double mod = std::abs(sum);
            if (mod <= drop_tol_) {
                discarded_ += mod;
            } else {
                merged.push_back({label, sum});
            }
            i = j;
        }
        terms_ = std::move(merged);
    }

    std::vector<Term> terms_;
    double merge_tol_ = kDefaultMergeTol;
    double drop_tol_ = 0.0;
    double discarded_ = 0.0;
};

namespace wiener {

namespace detail {

inline double joint_merge(const ExpSum& a, const ExpSum& b) {
    return std::max(a.merge_tol(), b.merge_tol());
}
inline double joint_drop(const ExpSum& a, const ExpSum& b) {
    return std::max(a.drop_tol(), b.drop_tol());
}

/// Merge of two frequency-sorted lists; a term within `tol` of the last
/// output term is added into it.
inline std::vector<Term> merge_fold(const std::vector<Term>& a, const std::vector<Term>& b, double tol) {
    std::vector<Term> out;
    out.reserve(a.size() + b.size());
    auto push = [&](const Term& t) {
        if (!out.empty() && t.freq - out.back().freq <= tol) {
            out.back().coef += t.coef;
        } else {
            out.push_back(t);
        }
    };
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) push(a[i].freq <= b[j].freq ? a[i++] : b[j++]);
    while (i < a.size()) push(a[i++]);
    while (j < b.size()) push(b[j++]);
    return out;
}

}  // namespace detail

[[nodiscard]] inline ExpSum add(const ExpSum& p, const ExpSum& q) {
    std::vector<Term> terms;
    terms.reserve(p.size() + q.size());
    terms.insert(terms.end(), p.terms().begin(), p.terms().end());
    terms.insert(terms.end(), q.terms().begin(), q.terms().end());
    return ExpSum(std::move(terms), detail::joint_merge(p, q), detail::joint_drop(p, q),
                  p.discarded_norm() + q.discarded_norm());
}

[[nodiscard]] inline ExpSum scale(const ExpSum& p, cplx c) {
    std::vector<Term> terms = p.terms();
    for (auto& t : terms) t.coef *= c;
    return ExpSum(std::move(terms), p.merge_tol(), p.drop_tol(), p.discarded_norm() * std::abs(c));
}

[[nodiscard]] inline ExpSum sub(const ExpSum& p, const ExpSum& q) { return add(p, scale(q, -1.0)); }

/// Product. Terms of the product with frequency above `max_freq` are
/// discarded into discarded_norm; with a non-negative spectrum this leaves
/// the product exact below the cap.
[[nodiscard]] inline ExpSum mul(const ExpSum& p, const ExpSum& q, double max_freq = kNoCap) {
    const double np = p.norm();
    const double nq = q.norm();
    const double dp = p.discarded_norm();
    const double dq = q.discarded_norm();
    double discarded = np * dq + dp * nq + dp * dq;

    // Each row a + q is already sorted. Rows are merged as a balanced tree,
    // folding frequencies within merge_tol together as they meet, which keeps
    // the intermediate lists short when the spectra overlap.
    const double tol = detail::joint_merge(p, q);
    const auto& pt = p.terms();
    auto build = [&](auto&& self, std::size_t lo, std::size_t hi) -> std::vector<Term> {
        if (hi - lo == 1) {
            std::vector<Term> row;
            row.reserve(q.size());
            for (const auto& b : q.terms()) {
                const double f = pt[lo].freq + b.freq;
                const cplx c = pt[lo].coef * b.coef;
                if (f > max_freq) {
                    discarded += std::abs(c);
                } else {
                    row.push_back({f, c});
                }
            }
            return row;
        }
        const std::size_t mid = lo + (hi - lo) / 2;
        std::vector<Term> merged = detail::merge_fold(self(self, lo, mid), self(self, mid, hi), tol);
        if (merged.size() > kMaxTerms)
            fail(ErrorKind::CapExceeded, "product needs more than " + std::to_string(kMaxTerms) + " terms");
        return merged;
    };
    std::vector<Term> terms = pt.empty() || q.empty() ? std::vector<Term>{} : build(build, 0, pt.size());
    return ExpSum(std::move(terms), detail::joint_merge(p, q), detail::joint_drop(p, q), discarded);
}

/// x ↦ P(x + iy): each coefficient q_ω becomes q_ω e^{-2πωy}.
[[nodiscard]] inline ExpSum shift_line(const ExpSum& p, double y) {
    std::vector<Term> terms = p.terms();
    for (auto& t : terms) {
        t.coef *= std::exp(-kTwoPi * t.freq * y);
        if (!std::isfinite(t.coef.real()) || !std::isfinite(t.coef.imag()))
            fail(ErrorKind::Overflow, "shift_line: coefficient at frequency " +
                                          std::to_string(t.freq) + " overflows for y = " +
                                          std::to_string(y));
    }
    // Dropped terms are assumed to lie inside the stored frequency range.
    double growth = 1.0;
    if (!p.empty())
        growth = std::max(std::exp(-kTwoPi * p.min_freq() * y), std::exp(-kTwoPi * p.max_freq() * y));
    return ExpSum(std::move(terms), p.merge_tol(), p.drop_tol(), p.discarded_norm() * growth);
}

/// Multiply by e^{2πi·shift·z}: every frequency moves by `shift`.
[[nodiscard]] inline ExpSum shift_frequencies(const ExpSum& p, double shift) {
    std::vector<Term> terms = p.terms();
    for (auto& t : terms) t.freq += shift;
    return ExpSum(std::move(terms), p.merge_tol(), p.drop_tol(), p.discarded_norm());
}

/// z ↦ P(-z): every frequency changes sign.
[[nodiscard]] inline ExpSum reflect(const ExpSum& p) {
    std::vector<Term> terms = p.terms();
    for (auto& t : terms) t.freq = -t.freq;
    return ExpSum(std::move(terms), p.merge_tol(), p.drop_tol(), p.discarded_norm());
}

/// Keeps frequencies inside [lo, hi]; the rest goes to discarded_norm.
[[nodiscard]] inline ExpSum restrict_spectrum(const ExpSum& p, double lo, double hi) {
    std::vector<Term> kept;
    double dropped = 0.0;
    for (const auto& t : p.terms()) {
        if (t.freq >= lo && t.freq <= hi) {
            kept.push_back(t);
        } else {
            dropped += std::abs(t.coef);
        }
    }
    return ExpSum(std::move(kept), p.merge_tol(), p.drop_tol(), p.discarded_norm() + dropped);
}

[[nodiscard]] inline cplx eval(const ExpSum& p, cplx z) {
    cplx s{0.0, 0.0};
    for (const auto& t : p.terms()) {
        const double mag = std::exp(-kTwoPi * t.freq * z.imag());
        const double ph = kTwoPi * t.freq * z.real();
        s += t.coef * cplx(mag * std::cos(ph), mag * std::sin(ph));
    }
    return s;
}

/// Value and z-derivative in one pass.
[[nodiscard]] inline std::pair<cplx, cplx> eval_with_derivative(const ExpSum& p, cplx z) {
    cplx s{0.0, 0.0};
    cplx ds{0.0, 0.0};
    for (const auto& t : p.terms()) {
        const double mag = std::exp(-kTwoPi * t.freq * z.imag());
        const double ph = kTwoPi * t.freq * z.real();
        const cplx v = t.coef * cplx(mag * std::cos(ph), mag * std::sin(ph));
        s += v;
        ds += cplx(0.0, kTwoPi * t.freq) * v;
    }
    return {s, ds};
}

/// Σ|q_ω| e^{-2πω Im z}: the modulus scale of P near z.
[[nodiscard]] inline double magnitude_scale(const ExpSum& p, double y) {
    double s = 0.0;
    for (const auto& t : p.terms()) s += std::abs(t.coef) * std::exp(-kTwoPi * t.freq * y);
    return s;
}

/// Bound on |eval(P, z) - true value| implied by the discarded mass.
[[nodiscard]] inline double eval_error_bound(const ExpSum& p, cplx z) {
    return p.discarded_norm() * std::exp(kTwoPi * p.max_abs_freq() * std::abs(z.imag()));
}

/// Term-wise derivative d/dx. The discarded mass is carried unchanged; it does
/// not bound the derivative of the dropped part.
[[nodiscard]] inline ExpSum derivative(const ExpSum& p) {
    std::vector<Term> terms = p.terms();
    for (auto& t : terms) t.coef *= cplx(0.0, kTwoPi * t.freq);
    return ExpSum(std::move(terms), p.merge_tol(), p.drop_tol(), p.discarded_norm());
}

/// Number of Mercator terms N with Σ_{n>N} r^n/n ≤ tail_tol, and the bound.
[[nodiscard]] inline std::pair<int, double> log1p_order(double r, double tail_tol) {
    if (r <= 0.0) return {0, 0.0};
    int n = 0;
    double rn1 = r;  // r^{n+1}
    for (;;) {
        const double bound = rn1 / ((n + 1) * (1.0 - r));
        if (bound <= tail_tol) return {n, bound};
        ++n;
        rn1 *= r;
        if (n > 100000) fail(ErrorKind::CapExceeded, "log1p: tail bound needs > 1e5 terms");
    }
}

/// Number of exponential terms N with Σ_{n>N} r^n/n! ≤ tail_tol, and the bound.
[[nodiscard]] inline std::pair<int, double> exp_order(double r, double tail_tol) {
    if (r <= 0.0) return {0, 0.0};
    int n = 0;
    double term = r;  // r^{n+1}/(n+1)!
    for (;;) {
        if (static_cast<double>(n + 2) > r) {
            const double bound = term / (1.0 - r / (n + 2));
            if (bound <= tail_tol) return {n, bound};
        }
        ++n;
        term *= r / (n + 1);
        if (n > 100000) fail(ErrorKind::CapExceeded, "exp: tail bound needs > 1e5 terms");
    }
}

/// log(1 + P) by the Mercator series, for ‖P‖_W < 1. Frequencies above
/// `max_freq` are discarded while forming powers.
[[nodiscard]] inline ExpSum log1p(const ExpSum& p, double tail_tol, double max_freq = kNoCap) {
    const double r = p.norm();
    const double d = p.discarded_norm();
    if (r >= 1.0)
        fail(ErrorKind::NormTooLarge,
             "log1p requires Wiener norm < 1 for the logarithm series, got " + std::to_string(r));
    if (r + d >= 1.0)
        fail(ErrorKind::NormTooLarge, "log1p: norm plus discarded mass reaches 1");
    const auto [order, tail] = log1p_order(r, tail_tol);

    const ExpSum base = p.with_discarded(0.0);
    ExpSum result({}, p.merge_tol(), p.drop_tol());
    ExpSum power = restrict_spectrum(base, -kNoCap, max_freq);
    for (int n = 1; n <= order; ++n) {
        if (n > 1) power = mul(power, base, max_freq);
        const double sign = (n % 2 == 1) ? 1.0 : -1.0;
        result = add(result, scale(power, sign / n));
    }
    // |log(1+a) - log(1+b)| ≤ |a-b| / (1 - max(|a|,|b|)) in the Banach algebra.
    const double propagated = d / (1.0 - r - d);
    return result.with_discarded(result.discarded_norm() + tail + propagated);
}

/// exp(P) by its power series truncated with a certified factorial tail.
[[nodiscard]] inline ExpSum exp(const ExpSum& p, double tail_tol, double max_freq = kNoCap) {
    const double r = p.norm();
    const double d = p.discarded_norm();
    const auto [order, tail] = exp_order(r, tail_tol);

    const ExpSum base = p.with_discarded(0.0);
    ExpSum result = ExpSum::constant(1.0, p.merge_tol(), p.drop_tol());
    ExpSum term = result;
    for (int n = 1; n <= order; ++n) {
        term = scale(mul(term, base, max_freq), 1.0 / n);
        result = add(result, term);
    }
    const double propagated = std::exp(r) * std::expm1(d);
    return result.with_discarded(result.discarded_norm() + tail + propagated);
}

}  // namespace wiener

inline ExpSum operator+(const ExpSum& a, const ExpSum& b) { return wiener::add(a, b); }
inline ExpSum operator-(const ExpSum& a, const ExpSum& b) { return wiener::sub(a, b); }
inline ExpSum operator*(const ExpSum& a, const ExpSum& b) { return wiener::mul(a, b); }
inline ExpSum operator*(cplx c, const ExpSum& a) { return wiener::scale(a, c); }

}  // namespace qsl

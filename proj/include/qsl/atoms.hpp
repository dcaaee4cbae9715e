// qsl/atoms.hpp: pure-point measures Σ b_γ δ_γ on the real line.

#pragma once

#include "qsl/wiener.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace qsl {

struct Atom {
    double gamma = 0.0;
    cplx b{0.0, 0.0};
};

struct AtomMeasure {
    std::vector<Atom> entries;  // strictly increasing gamma
    double kappa = 0.0;         // half-width of the centred spectrum
    double s_upper = 0.0;       // line Im z = s_upper used for γ > 0
    double s_lower = 0.0;       // line Im z = -s_lower used for γ < 0
    double tail_tol = 0.0;
    double center_shift = 0.0;  // Q was multiplied by e^{-2πi·center_shift·z}
    // Wiener mass given up on each line (series tail plus dropped terms).
    double discarded_upper = 0.0;
    double discarded_lower = 0.0;
    // Atoms are complete on (-gamma_max_lower, gamma_max_upper); beyond that
    // the truncated series no longer determines them.
    double gamma_max_upper = std::numeric_limits<double>::infinity();
    double gamma_max_lower = std::numeric_limits<double>::infinity();

    [[nodiscard]] cplx at(double gamma, double tol = 1e-9) const {
        auto it = std::lower_bound(entries.begin(), entries.end(), gamma - tol,
                                   [](const Atom& a, double g) { return a.gamma < g; });
        if (it != entries.end() && std::abs(it->gamma - gamma) <= tol) return it->b;
        return {0.0, 0.0};
    }

    [[nodiscard]] cplx b0() const { return at(0.0); }

    /// Σ_{|γ|<r} |b_γ|
    [[nodiscard]] double variation(double r) const {
        double s = 0.0;
        for (const auto& a : entries)
            if (std::abs(a.gamma) < r) s += std::abs(a.b);
        return s;
    }
};

/// Measure from an unordered list; equal gammas are summed.
[[nodiscard]] inline AtomMeasure make_atom_measure(std::vector<Atom> atoms, double merge_tol = 1e-9) {
    std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.gamma < b.gamma; });
    AtomMeasure m;
    for (const auto& a : atoms) {
        if (!m.entries.empty() && a.gamma - m.entries.back().gamma <= merge_tol) {
            m.entries.back().b += a.b;
        } else {
            m.entries.push_back(a);
        }
    }
    return m;
}

}  // namespace qsl

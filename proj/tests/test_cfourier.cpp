#include "catch_amalgamated.hpp"

#include "qsl/cfourier.hpp"

#include <cmath>
#include <random>

using namespace qsl;
using Catch::Approx;

namespace {

// ∫_{-1}^{1} exp(-1/(1-u²)) du
constexpr double kBumpMass = 0.443993816168079;

// Composite Simpson on the support; deliberately independent of hat_c.
cplx simpson(const TestFunction& phi, cplx z, int n = 20000) {
    const double a = phi.lo(), h = (phi.hi() - phi.lo()) / n;
    cplx s{0.0, 0.0};
    for (int k = 0; k <= n; ++k) {
        const double t = a + k * h;
        const double w = (k == 0 || k == n) ? 1.0 : (k % 2 ? 4.0 : 2.0);
        s += w * phi(t) * std::exp(cplx(0.0, -kTwoPi) * z * t);
    }
    return s * h / 3.0;
}

ZeroSet lattice(int lo, int hi) {
    std::vector<cplx> pts;
    for (int n = lo; n <= hi; ++n) pts.emplace_back(n, 0.0);
    return zeros::make_zero_set(pts, {lo - 0.5, hi + 0.5, -1, 1});
}

}  // namespace

TEST_CASE("bump shape") {
    const TestFunction phi{2.0, 0.4};
    CHECK(phi(2.0) == Approx(std::exp(-1.0)));
    CHECK(phi(2.4) == 0.0);
    CHECK(phi(1.5) == 0.0);
    CHECK(phi(2.3) > 0.0);
    CHECK_THROWS_AS(cfourier::hat_c(TestFunction{0.0, -1.0}, 0.0), Error);
}

TEST_CASE("hat_c at the origin is the bump mass") {
    for (double h : {0.1, 0.4, 1.0, 2.7}) {
        const TestFunction phi{0.3, h};
        CHECK(cfourier::integral(phi) == Approx(kBumpMass * h).epsilon(1e-12));
    }
}

TEST_CASE("hat_c conjugate symmetry for an even bump") {
    const TestFunction phi{0.0, 0.8};
    const double floor = 1e-15 * cfourier::integral(phi);
    for (double x : {0.1, 1.0, 3.7, 25.0}) {
        const cplx a = cfourier::hat_c(phi, x), b = cfourier::hat_c(phi, -x);
        CHECK(std::abs(a - std::conj(b)) <= 1e-13 * std::abs(a) + floor);
        CHECK(std::abs(a.imag()) <= 1e-12 * std::abs(a) + floor);
    }
    for (double y : {-3.0, -0.5, 0.5, 4.0}) {
        const cplx v = cfourier::hat_c(phi, {0.0, y});
        CHECK(std::abs(v.imag()) <= 1e-13 * std::abs(v));
    }
}

TEST_CASE("hat_c off the axis is the transform of the weighted bump") {
    const TestFunction phi{0.5, 1.0};
    for (double y : {-1.2, 0.7}) {
        for (double x : {0.0, 2.3}) {
            // ∫φ(t)e^{2πyt}e^{-2πixt}dt by an independent rule
            cplx s{0.0, 0.0};
            const int n = 20000;
            const double h = 2.0 / n;
            for (int k = 0; k <= n; ++k) {
                const double t = phi.lo() + k * h;
                const double w = (k == 0 || k == n) ? 1.0 : (k % 2 ? 4.0 : 2.0);
                s += w * phi(t) * std::exp(kTwoPi * y * t) * std::exp(cplx(0.0, -kTwoPi * x * t));
            }
            s *= h / 3.0;
            const cplx v = cfourier::hat_c(phi, {x, y});
            CHECK(std::abs(v - s) <= 1e-10 * std::abs(s));
        }
    }
}

TEST_CASE("hat_c agrees with a refined and an independent quadrature") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ux(-20.0, 20.0), uy(-2.0, 2.0);
    const TestFunction phi{0.2, 1.0};
    TestFunction fine = phi;
    fine.base_nodes *= 2;
    fine.max_levels += 1;
    for (int k = 0; k < 50; ++k) {
        const cplx z(ux(rng), uy(rng));
        const cplx v = cfourier::hat_c(phi, z);
        CHECK(std::abs(v - cfourier::hat_c(fine, z)) <= 1e-10 * std::abs(v));
        CHECK(std::abs(v - simpson(phi, z)) <= 1e-9 * std::abs(v));
    }
}

TEST_CASE("hat_c guards the strip height") {
    CHECK_THROWS_AS(cfourier::hat_c(TestFunction{}, {0.0, 10.5}), Error);
    TestFunction stingy{0.0, 1.0, 8, 1};
    try {
        (void)cfourier::hat_c(stingy, {40.0, 0.0});
        FAIL("expected non-convergence");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::QuadratureNotConverged);
    }
}

TEST_CASE("convolution becomes a product") {
    const TestFunction phi{0.3, 0.5}, psi{-0.2, 0.7};
    // g = φ ⋆ ψ tabulated on its support, each value by the trapezoid rule
    const double g_lo = phi.lo() + psi.lo(), g_hi = phi.hi() + psi.hi();
    const int ng = 1200, ns = 1200;
    std::vector<double> g(ng + 1);
    const double hg = (g_hi - g_lo) / ng, hs = (phi.hi() - phi.lo()) / ns;
    for (int i = 0; i <= ng; ++i) {
        const double u = g_lo + i * hg;
        double s = 0.0;
        for (int j = 0; j <= ns; ++j) {
            const double t = phi.lo() + j * hs;
            s += phi(t) * psi(u - t);
        }
        g[i] = s * hs;
    }
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> ux(-4.0, 4.0), uy(-1.0, 1.0);
    for (int k = 0; k < 20; ++k) {
        const cplx z(ux(rng), uy(rng));
        cplx lhs{0.0, 0.0};
        for (int i = 0; i <= ng; ++i) lhs += g[i] * std::exp(cplx(0.0, -kTwoPi) * z * (g_lo + i * hg));
        lhs *= hg;
        const cplx rhs = cfourier::hat_c(phi, z) * cfourier::hat_c(psi, z);
        CHECK(std::abs(lhs - rhs) <= 1e-8);
    }
}

TEST_CASE("decay_check") {
    const TestFunction phi{0.0, 0.6};
    const double mass = cfourier::integral(phi);
    CHECK(cfourier::decay_check(phi, 0, {0.0}) == Approx(mass).epsilon(1e-12));
    CHECK(cfourier::decay_check(phi, 0, {0.0, 1.5, {2.0, 0.5}}) >= mass);
    CHECK(cfourier::decay_check(phi, 3, {}) == 0.0);

    // beyond the oscillation onset |φ̂^c(x)|·x^m stays bounded as x doubles
    for (int m : {1, 2, 3}) {
        double prev = 0.0;
        for (double x = 16.0; x <= 128.0; x *= 2.0) {
            std::vector<cplx> s;
            for (double t = x; t <= 2.0 * x; t += 0.05) s.emplace_back(t, 0.0);
            const double c = cfourier::decay_check(phi, m, s);
            if (prev > 0.0) CHECK(c <= 2.0 * prev);
            prev = c;
        }
    }

    // refining the quadrature does not raise the measured constant
    std::vector<cplx> s;
    for (double x = -30.0; x <= 30.0; x += 0.7) s.emplace_back(x, 0.3);
    double prev = std::numeric_limits<double>::infinity();
    for (int nodes : {64, 128, 256, 512}) {
        TestFunction f = phi;
        f.base_nodes = nodes;
        const double c = cfourier::decay_check(f, 3, s);
        CHECK(c <= prev * (1.0 + 1e-12));
        prev = c;
    }
}

TEST_CASE("pair_zeros on the integers is Poisson summation") {
    // Σ_n φ̂(n) = Σ_k φ(k) = φ(0) = e^{-1} when the support lies in (-1, 1)
    const TestFunction phi{0.0, 0.4};
    const auto r = cfourier::pair_zeros(lattice(-200, 200), phi, 1e-4);
    CHECK(r.terms == 401);
    CHECK(std::abs(r.value.imag()) < 1e-14);
    CHECK(std::abs(r.value - std::exp(-1.0)) <= r.tail_bound + 1e-12);
    CHECK(r.tail_bound < 1e-4);

    double direct = 0.0;
    for (int n = -200; n <= 200; ++n) direct += cfourier::hat_c(phi, n).real();
    CHECK(r.value.real() == Approx(direct).epsilon(1e-14));
}

TEST_CASE("pair_zeros edge cases") {
    const TestFunction phi{0.0, 0.4};
    ZeroSet none;
    none.window = {-5, 5, -1, 1};
    CHECK(cfourier::pair_zeros(none, phi).value == cplx(0.0));

    try {
        (void)cfourier::pair_zeros(lattice(-3, 3), phi, 1e-12);
        FAIL("expected WindowTooSmall");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::WindowTooSmall);
    }

    // triangle inequality against the crude bound
    std::vector<cplx> pts;
    for (int n = -30; n <= 30; ++n) pts.emplace_back(n + 0.3, 0.2 * std::sin(n));
    const ZeroSet zs = zeros::make_zero_set(pts, {-30.5, 30.5, -1, 1});
    const TestFunction off{5.0, 0.5};
    const double l1 = cfourier::integral(off);
    const auto r = cfourier::pair_zeros(zs, off);
    CHECK(std::abs(r.value) <= l1 * pts.size() * std::exp(kTwoPi * 0.2 * 5.5));
}

TEST_CASE("pairings are additive") {
    const TestFunction phi{0.4, 0.9};
    std::vector<cplx> left, right, all;
    for (int n = -40; n <= 40; ++n) {
        const cplx a(n * 0.9 + 0.1, 0.3 * std::cos(n));
        (n < 3 ? left : right).push_back(a);
        all.push_back(a);
    }
    const Rect w{-40.0, 40.0, -1, 1};
    const cplx sum = cfourier::pair_zeros(zeros::make_zero_set(left, w), phi).value +
                     cfourier::pair_zeros(zeros::make_zero_set(right, w), phi).value;
    const cplx whole = cfourier::pair_zeros(zeros::make_zero_set(all, w), phi).value;
    CHECK(std::abs(sum - whole) <= 1e-13 * std::abs(whole) + 1e-15);

    std::vector<Atom> a1{{0.1, 2.0}, {0.7, cplx(0, 1)}}, a2{{-0.3, 0.5}, {1.1, -1.0}};
    std::vector<Atom> both = a1;
    both.insert(both.end(), a2.begin(), a2.end());
    const cplx s = cfourier::pair_atoms(make_atom_measure(a1), phi) + cfourier::pair_atoms(make_atom_measure(a2), phi);
    CHECK(std::abs(s - cfourier::pair_atoms(make_atom_measure(both), phi)) < 1e-15);
}

TEST_CASE("pair_atoms") {
    const TestFunction at0{0.0, 0.4};
    CHECK(cfourier::pair_atoms(make_atom_measure({{0.0, 1.0}}), at0) == cplx(std::exp(-1.0)));
    CHECK(cfourier::pair_atoms(make_atom_measure({{1.0, 1.0}, {-0.4, 3.0}, {0.4, 3.0}}), at0) == cplx(0.0));

    std::vector<Atom> ints;
    for (int k = -10; k <= 10; ++k) ints.push_back({static_cast<double>(k), 1.0});
    const TestFunction at2{2.0, 0.4};
    CHECK(cfourier::pair_atoms(make_atom_measure(ints), at2) == cplx(at2(2.0)));
}

TEST_CASE("growth") {
    std::vector<Atom> ints;
    for (int k = -200; k <= 200; ++k) ints.push_back({static_cast<double>(k), 1.0});
    std::vector<double> grid;
    for (double r = 10.5; r < 200.0; r += 10.0) grid.push_back(r);

    const auto g = cfourier::growth(lattice(-200, 200), make_atom_measure(ints), grid);
    REQUIRE(g.m_mu.size() == grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(g.m_mu[i] == 2.0 * std::floor(grid[i]) + 1.0);
        CHECK(g.atom_cumulative[i] == 2.0 * std::floor(grid[i]) + 1.0);
        if (i > 0) CHECK(g.m_mu[i] >= g.m_mu[i - 1]);
    }
    CHECK(g.m_mu.back() / grid.back() == Approx(2.0).epsilon(0.01));
    CHECK(std::abs(g.fitted_L) < 0.01);

    const auto e = cfourier::growth(lattice(-5, 5), AtomMeasure{}, {1.0, 2.0});
    for (double v : e.atom_cumulative) CHECK(v == 0.0);
    CHECK(e.fitted_L == 0.0);

    std::vector<Atom> expo;
    for (int k = 0; k < 60; ++k) expo.push_back({static_cast<double>(k), std::exp(1.5 * k)});
    std::vector<double> g2;
    for (double r = 5.5; r < 60.0; r += 2.0) g2.push_back(r);
    CHECK(cfourier::growth(ZeroSet{}, make_atom_measure(expo), g2).fitted_L == Approx(1.5).epsilon(0.01));
}

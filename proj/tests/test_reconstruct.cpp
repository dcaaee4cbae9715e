#include "catch_amalgamated.hpp"

#include "qsl/presets.hpp"
#include "qsl/reconstruct.hpp"

#include <cmath>
#include <random>

using namespace qsl;
using Catch::Approx;

namespace {

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error thrown");
    return ErrorKind::InvalidArgument;
}

ZeroSet half_lattice(int n) {
    std::vector<cplx> pts;
    for (int k = -n; k < n; ++k) pts.emplace_back(k + 0.5, 0.0);
    return zeros::enumerate(zeros::make_zero_set(pts, {-n - 0.25, n + 0.25, -1, 1}));
}

int significant_terms(const ExpSum& s, double rel) {
    int n = 0;
    for (const auto& t : s.terms()) n += std::abs(t.coef) > rel * s.norm();
    return n;
}

}  // namespace

TEST_CASE("log_series") {
    const AtomMeasure m = spectral::atoms(presets::cosine(), 1e-12);
    const ExpSum l = reconstruct::log_series(m, 0.5);
    REQUIRE(l.size() >= 20);
    for (const auto& t : l.terms()) {
        const double k = t.freq;
        CHECK(k == std::round(k));
        CHECK(k >= 1.0);
        const double want = -std::pow(-1.0, k) * std::exp(-kPi * k) / k;
        CHECK(std::abs(t.coef - want) <= 1e-12 * std::abs(want) + 1e-300);
    }
    CHECK(l.coefficient(0.0) == cplx(0.0));

    const ExpSum twice = reconstruct::log_series(m, 1.0);
    for (const auto& t : twice.terms())
        CHECK(std::abs(t.coef - l.coefficient(t.freq) * std::exp(-kPi * t.freq)) <= 1e-12 * std::abs(t.coef) + 1e-300);

    CHECK(reconstruct::log_series(make_atom_measure({{0.0, 1.0}, {-1.0, 1.0}}), 0.5).empty());
}

TEST_CASE("log_series guards") {
    std::vector<Atom> wild{{0.0, 1.0}};
    for (int k = 1; k <= 40; ++k) wild.push_back({static_cast<double>(k), std::exp(3.0 * k)});
    CHECK(kind_of([&] { (void)reconstruct::log_series(make_atom_measure(wild), 0.1); }) == ErrorKind::LineTooLow);

    std::vector<Atom> harmonic{{0.0, 1.0}};
    for (int k = 2; k <= 4000; ++k) harmonic.push_back({1.0 / k, 1.0 / k});
    CHECK(kind_of([&] { (void)reconstruct::log_series(make_atom_measure(harmonic, 0.0), 0.5); }) ==
          ErrorKind::NeigDiverges);
}

TEST_CASE("from_atoms rebuilds the cosine") {
    const AtomMeasure m = spectral::atoms(presets::cosine(), 1e-12);
    const ReconstructionResult rec = reconstruct::from_atoms(m, 0.5, 1e-12);
    CHECK(rec.b0 == 1.0);
    CHECK(std::abs(wiener::eval(rec.series, 0.0) - 1.0) < 1e-8);
    CHECK(std::abs(wiener::eval(rec.series, 0.5)) < 1e-8);
    for (const cplx z : {cplx(0.3, 0.0), cplx(1.7, 0.4), cplx(-2.2, -0.9)})
        CHECK(std::abs(wiener::eval(rec.series, z) - std::cos(kPi * z)) < 1e-8 * std::max(1.0, std::abs(std::cos(kPi * z))));
    CHECK(rec.series.max_abs_freq() <= 0.5 + 1e-9);
    CHECK(significant_terms(rec.series, 1e-10) == 2);
}

TEST_CASE("from_atoms refuses a zero at the origin") {
    const AtomMeasure m = spectral::atoms(presets::sine(), 1e-12);
    CHECK(kind_of([&] { (void)reconstruct::from_atoms(m, 0.5, 1e-12); }) == ErrorKind::ZeroAtOrigin);
    CHECK(kind_of([] { (void)reconstruct::from_atoms(AtomMeasure{}, 0.5, 1e-12); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("from_atoms picks a line automatically") {
    const AtomMeasure m = spectral::atoms(presets::cos3(), 1e-12);
    const ReconstructionResult rec = reconstruct::from_atoms(m, -1.0, 1e-10);
    CHECK(rec.y0 >= spectral::fitted_rate(m) / kTwoPi + 0.25 - 1e-12);
    CHECK(reconstruct::log_tail_estimate(m, rec.y0) <= 1e-10);
}

TEST_CASE("round trip through 2cos(2πz)+3") {
    const ExpSum q = presets::cos3();
    const AtomMeasure m = spectral::atoms(q, 1e-12);
    const ReconstructionResult rec = reconstruct::from_atoms(m, -1.0, 1e-12);
    const auto rep = reconstruct::verify_roundtrip(q, rec, {-3.2, 3.3, -1, 1});
    CHECK(rep.zeros_q == 12);
    CHECK(rep.zeros_rec == 12);
    CHECK(rep.max_zero_distance < 1e-6);
    CHECK(rep.ratio_constancy < 1e-6);
    CHECK(std::abs(rep.measured_d - cplx(0.0, rep.theta)) < 1e-6);
    // f(0) = 1 and Q(0) = 5
    CHECK(std::abs(rep.ratio_mean - 5.0) < 1e-6);
    CHECK(significant_terms(rec.series, 1e-10) == 3);
    CHECK(significant_terms(rec.series, 1e-10) <= 25);
}

TEST_CASE("round trip invariances") {
    const ExpSum q = presets::cosine();
    const Rect r{-2.3, 2.4, -1, 1};
    const ReconstructionResult rec = reconstruct::from_atoms(spectral::atoms(q, 1e-12), -1.0, 1e-12);
    const auto base = reconstruct::verify_roundtrip(q, rec, r);
    CHECK(base.ratio_constancy < 1e-5);
    CHECK(std::abs(base.theta) < 1e-12);

    const auto five = reconstruct::verify_roundtrip(wiener::scale(q, 5.0), rec, r);
    CHECK(std::abs(five.ratio_mean - 5.0 * base.ratio_mean) < 1e-8);
    CHECK(five.max_zero_distance < 1e-6);

    const ExpSum moved = q * ExpSum::monomial(1.0, 1.0);
    const AtomMeasure mm = spectral::atoms(moved, 1e-12);
    CHECK(mm.center_shift == Approx(1.0));
    const ReconstructionResult rm = reconstruct::from_atoms(mm, -1.0, 1e-12);
    const auto shifted = reconstruct::verify_roundtrip(moved, rm, r);
    CHECK(shifted.max_zero_distance < 1e-6);
    CHECK(shifted.ratio_constancy < 1e-5);
    CHECK(shifted.theta == Approx(kTwoPi));
}

TEST_CASE("round trip reports a mismatch") {
    const ReconstructionResult rec = reconstruct::from_atoms(spectral::atoms(presets::cosine(), 1e-12), -1.0, 1e-12);
    CHECK(kind_of([&] { (void)reconstruct::verify_roundtrip(presets::cos3(), rec, {-2.3, 2.4, -1, 1}); }) ==
          ErrorKind::ZeroMismatch);
}

TEST_CASE("reconstruction does not depend on the line") {
    for (const ExpSum& q : {presets::cosine(), presets::cos3()}) {
        const AtomMeasure m = spectral::atoms(q, 1e-12);
        const Rect r{-2.3, 2.4, -1, 1};
        const double y0 = spectral::fitted_rate(m) / kTwoPi + 0.3;
        const ZeroSet a = zeros::find_zeros(reconstruct::from_atoms(m, y0, 1e-12).series, r, 1e-12);
        const ZeroSet b = zeros::find_zeros(reconstruct::from_atoms(m, y0 + 0.25, 1e-12).series, r, 1e-12);
        REQUIRE(a.points.size() == b.points.size());
        for (std::size_t i = 0; i < a.points.size(); ++i)
            CHECK(std::abs(a.points[i].location - b.points[i].location) < 1e-6);
    }
}

TEST_CASE("exp of the log series matches the pointwise exponential") {
    const AtomMeasure m = spectral::atoms(presets::cos3(), 1e-12);
    const double y0 = spectral::fitted_rate(m) / kTwoPi + 0.3;
    const ExpSum l = reconstruct::log_series(m, y0);
    const double tau = 1e-12;
    const ExpSum g = wiener::exp(l, tau);
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> ux(-5.0, 5.0);
    for (int k = 0; k < 50; ++k) {
        const double x = ux(rng);
        const cplx pointwise = std::exp(wiener::eval(l, x));
        const double bound = g.discarded_norm() + std::abs(pointwise) * std::expm1(l.discarded_norm()) + 1e-14;
        CHECK(std::abs(wiener::eval(g, x) - pointwise) <= bound);
    }
}

TEST_CASE("canonical product over the half-integers") {
    const ZeroSet zs = half_lattice(1000);
    CHECK(std::abs(reconstruct::canonical_product(zs, 0.0).value - 1.0) < 1e-15);
    CHECK(std::abs(reconstruct::canonical_product(zs, 0.5).value) < 1e-15);
    const auto at1 = reconstruct::canonical_product(zs, 1.0);
    CHECK(std::abs(at1.value + 1.0) <= at1.tail_estimate + 1e-12);
    CHECK(at1.tail_estimate < 5e-3);
    for (const cplx z : {cplx(0.3, 0.2), cplx(-1.1, 0.7)}) {
        const auto p = reconstruct::canonical_product(zs, z);
        CHECK(std::abs(p.value - std::cos(kPi * z)) <= p.tail_estimate + 1e-12);
    }
}

TEST_CASE("canonical product and reconstruction share zeros") {
    const ReconstructionResult rec = reconstruct::from_atoms(spectral::atoms(presets::cosine(), 1e-12), -1.0, 1e-12);
    const ZeroSet zs = half_lattice(400);
    for (long n = -3; n <= 3; ++n) {
        const cplx a = zs.numbering->location(n);
        CHECK(std::abs(reconstruct::canonical_product(zs, a).value) < 1e-15);
        CHECK(std::abs(wiener::eval(rec.series, a)) < 1e-8);
    }
}

TEST_CASE("canonical product guards") {
    std::vector<cplx> ints;
    for (int n = -10; n <= 10; ++n) ints.emplace_back(n, 0.0);
    const ZeroSet raw = zeros::make_zero_set(ints, {-10.5, 10.5, -1, 1});
    CHECK(kind_of([&] { (void)reconstruct::canonical_product(raw, 0.3); }) == ErrorKind::NotNumbered);
    CHECK(kind_of([&] { (void)reconstruct::canonical_product(zeros::enumerate(raw), 0.3); }) == ErrorKind::ZeroAtOrigin);
}

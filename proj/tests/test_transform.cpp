#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "thetasph/transform.hpp"

using namespace thetasph;

namespace {

// shared fixtures: rank-one bump on [0.5,1.5] (Θ=∅) and ball at 0 (Θ=Π)
struct Config {
    RootSystem rs;
    MultiplicityFn m;
    ThetaSubset theta;
    SampledFn f;
    SpectralGrid sg;
    std::vector<std::vector<double>> pts;
};

Config make_a1(long mv, bool full, int space_pts = 0, int spec_pts = 0) {
    auto rs = RootSystem::build(Family::A, 1);
    auto theta = full ? ThetaSubset::full(rs) : ThetaSubset::empty(rs);
    auto m = MultiplicityFn::constant(mv);
    std::vector<double> lo, hi, c;
    double hw;
    if (full) {
        lo = {-2.0};
        hi = {2.0};
        c = {0.0};
        hw = 1.2;  // support [-1.2, 1.2] in the z coordinate
    } else {
        lo = {0.0};
        hi = {2.2};
        c = {1.0};
        hw = 0.5;  // support [0.5, 1.5]
    }
    SpaceGrid grid = default_space_grid(rs, lo, hi);
    if (space_pts) {
        grid.axes[0].count = space_pts;
        grid.axes[0].step = (hi[0] - lo[0]) / (space_pts - 1);
    }
    SpectralGrid sg = spec_pts ? SpectralGrid::cube(1, 40.0, spec_pts) : default_spectral_grid(rs);
    double r = metric_radius(rs, {hw});
    Config cfg{rs, m, theta, bump(rs, theta, grid, c, r, 2.0), sg,
               default_test_points(rs, theta, m, grid, 41)};
    return cfg;
}

Config make_a2(long mv, bool full) {
    auto rs = RootSystem::build(Family::A, 2);
    auto theta = full ? ThetaSubset::full(rs) : ThetaSubset::make(rs, {0});
    auto m = MultiplicityFn::constant(mv);
    std::vector<double> lo, hi, c;
    double r;
    if (full) {
        lo = {-2.4, -2.4};
        hi = {2.4, 2.4};
        c = {0.0, 0.0};
        r = 1.0;
    } else {
        // center on the C_Θ ray α₁(H)=0: W_Θ-fixed
        lo = {-1.6, -0.3};
        hi = {1.6, 2.9};
        c = {0.0, 1.3};
        r = 0.55;
    }
    SpaceGrid grid = default_space_grid(rs, lo, hi);
    SpectralGrid sg = default_spectral_grid(rs);
    Config cfg{rs, m, theta, bump(rs, theta, grid, c, r, 2.0), sg,
               default_test_points(rs, theta, m, grid, 15)};
    return cfg;
}

}  // namespace

TEST_CASE("bump construction and invariants") {
    auto cfg = make_a1(2, false, 512, 64);
    // positive inside, zero outside the claimed support
    double inside = 0.0;
    for (size_t i = 0; i < cfg.f.grid.total(); ++i) {
        double z = cfg.f.grid.point(i)[0];
        if (z > 0.55 && z < 1.45) inside = std::max(inside, cfg.f.values[i]);
        if (z < 0.5 || z > 1.5) CHECK(std::abs(cfg.f.values[i]) < 1e-14);
    }
    CHECK(inside > 0.1);
    // ∫ bump > 0
    CHECK(euclidean_fourier(cfg.rs, cfg.f, {Cplx(0.0, 0.0)}).real() > 0.0);
    // support touching the cone boundary rejected
    CHECK_THROWS_AS((void)bump(cfg.rs, cfg.theta, cfg.f.grid, {0.3}, 0.5, 2.0),
                    std::invalid_argument);
    // W_Θ-symmetrized bump passes the invariance check (A2, Θ={α₁})
    auto cfg2 = make_a2(2, false);
    for (const auto& w : cfg2.theta.theta_weyl) {
        for (size_t i = 0; i < cfg2.f.grid.total(); i += 97) {
            auto x = cfg2.f.grid.point(i);
            auto wx = cfg2.rs.apply_to_point(w, x);
            // nearest grid value at the mapped point, when representable
            const auto& ax = cfg2.f.grid.axes;
            long i0 = std::lround((wx[0] - ax[0].min) / ax[0].step);
            long i1 = std::lround((wx[1] - ax[1].min) / ax[1].step);
            if (i0 < 0 || i1 < 0 || i0 >= ax[0].count || i1 >= ax[1].count) continue;
            std::vector<double> snapped = {ax[0].min + i0 * ax[0].step,
                                           ax[1].min + i1 * ax[1].step};
            if (std::abs(snapped[0] - wx[0]) > 1e-9 || std::abs(snapped[1] - wx[1]) > 1e-9)
                continue;
            CHECK(std::abs(cfg2.f.values[(size_t)i0 + (size_t)ax[0].count * i1] -
                           cfg2.f.values[i]) < 1e-12);
        }
    }
}

TEST_CASE("euclidean fourier: shift theorem and decay") {
    auto cfg = make_a1(0, false, 1024, 0);
    // translate f by t ⇒ transform multiplied by e^{λ(t)}
    double t = 3 * cfg.f.grid.axes[0].step;
    SampledFn shifted = cfg.f;
    size_t shift_cells = 3;
    for (size_t i = shifted.values.size(); i-- > shift_cells;)
        shifted.values[i] = cfg.f.values[i - shift_cells];
    for (size_t i = 0; i < shift_cells; ++i) shifted.values[i] = 0.0;
    for (Cplx lam : {Cplx(0.0, 1.0), Cplx(0.0, -2.3), Cplx(0.2, 0.7)}) {
        Cplx lhs = euclidean_fourier(cfg.rs, shifted, {lam});
        Cplx rhs = euclidean_fourier(cfg.rs, cfg.f, {lam}) * std::exp(lam * t);
        CHECK(std::abs(lhs - rhs) < 1e-8 * std::abs(rhs));
    }
    // |F f(iξ)| ≤ C₃ (1+|ξ|)^{-3} with a finite fitted constant over |ξ| ≤ 40
    double c3 = 0.0;
    for (double xi = 0.5; xi <= 40.0; xi += 0.5) {
        double v = std::abs(euclidean_fourier(cfg.rs, cfg.f, {Cplx(0.0, xi)}));
        c3 = std::max(c3, v * std::pow(1.0 + xi, 3.0));
    }
    CHECK(std::isfinite(c3));
    CHECK(c3 > 0.0);
}

TEST_CASE("theta transform: m=0 is the euclidean transform") {
    auto cfg = make_a1(0, false, 512, 0);
    for (Cplx lam : {Cplx(0.0, 0.8), Cplx(0.0, -1.7), Cplx(0.1, 0.4)}) {
        Cplx lhs = theta_transform(cfg.rs, cfg.m, cfg.theta, cfg.f, {lam});
        Cplx rhs = euclidean_fourier(cfg.rs, cfg.f, {lam});
        CHECK(std::abs(lhs - rhs) < 1e-12 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("theta transform against an independent closed-form quadrature") {
    // A1, Θ=Π, m=2: (1/|W|)∫ f(z)·sinh(λz)/(λ sinh z)·c⁺(2;ρ)·Δ(2;z) dz
    auto cfg = make_a1(2, true, 1024, 0);
    for (Cplx lam : {Cplx(0.0, 0.9), Cplx(0.0, 2.2)}) {
        Cplx oracle(0.0, 0.0);
        for (size_t i = 0; i < cfg.f.grid.total(); ++i) {
            double z = cfg.f.grid.point(i)[0];
            if (cfg.f.values[i] == 0.0 || std::abs(z) < 1e-12) continue;
            Cplx phi = std::sinh(lam * z) / (lam * std::sinh(z));
            double dz2 = std::pow(std::exp(z) - std::exp(-z), 2.0);
            oracle += cfg.f.values[i] * phi * dz2;
        }
        oracle *= cfg.f.grid.cell() * space_measure(cfg.rs) / 2.0;
        Cplx got = theta_transform(cfg.rs, cfg.m, cfg.theta, cfg.f, {lam});
        CHECK(std::abs(got - oracle) < 1e-9 * std::abs(oracle));
    }
}

TEST_CASE("fast grid transforms match the direct route") {
    // rank one
    auto cfg = make_a1(4, false, 256, 16);
    auto fast = transform_on_grid(cfg.rs, cfg.m, cfg.theta, cfg.f, cfg.sg);
    for (size_t i = 0; i < cfg.sg.total(); i += 3) {
        Cplx direct = theta_transform(cfg.rs, cfg.m, cfg.theta, cfg.f, cfg.sg.lambda(i));
        CHECK(std::abs(fast[i] - direct) < 1e-10 * std::max(1.0, std::abs(direct)));
    }
    // rank two, complex case, both Θ
    for (bool full : {false, true}) {
        auto cfg2 = make_a2(2, full);
        SpectralGrid small = SpectralGrid::cube(2, 20.0, 24);
        auto fast2 = transform_on_grid(cfg2.rs, cfg2.m, cfg2.theta, cfg2.f, small);
        for (size_t i = 0; i < small.total(); i += 41) {
            Cplx direct = theta_transform(cfg2.rs, cfg2.m, cfg2.theta, cfg2.f, small.lambda(i));
            CHECK(std::abs(fast2[i] - direct) < 1e-8 * std::max(1.0, std::abs(direct)));
        }
    }
}

TEST_CASE("transform entirety: e-(m)·F f finite across the poles of phi") {
    // A1, Θ=∅, m=2: 𝓕f has a pole at λ=0; e⁻𝓕f stays finite (circle of values)
    auto cfg = make_a1(2, false, 512, 0);
    double maxv = 0.0;
    for (int j = 0; j < 8; ++j) {
        double th = 2 * 3.14159265358979 * j / 8.0;
        Cplx lam = 1e-2 * Cplx(std::cos(th), std::sin(th));
        Cplx v = theta_transform(cfg.rs, cfg.m, cfg.theta, cfg.f, {lam}, true);
        CHECK(std::isfinite(std::abs(v)));
        maxv = std::max(maxv, std::abs(v));
    }
    CHECK(maxv < 10.0);
}

TEST_CASE("round trips at reduced resolution (sanity before acceptance)") {
    auto cfg = make_a1(2, false, 1024, 1024);
    auto res = run_roundtrip(cfg.rs, cfg.m, cfg.theta, cfg.f, cfg.sg, cfg.pts);
    CHECK(res.k > 0.0);
    CHECK(res.sup_error < 2e-3 * res.peak);
    // calibrated k close to the m-independent Fourier constant (2π)^{-l}/|W|
    auto cfg0 = make_a1(0, false, 1024, 1024);
    auto res0 = run_roundtrip(cfg0.rs, cfg0.m, cfg0.theta, cfg0.f, cfg0.sg, cfg0.pts);
    CHECK(res0.sup_error < 1e-6);
    double k_expect = 1.0 / (2.0 * 3.14159265358979 * 2.0);
    CHECK(res0.k == doctest::Approx(k_expect).epsilon(1e-6));
    // calibrated k reused on a second, different bump
    SampledFn other = bump(cfg.rs, cfg.theta, cfg.f.grid, {1.1}, 0.35, 3.0);
    auto g = transform_on_grid(cfg.rs, cfg.m, cfg.theta, other, cfg.sg);
    double sup = 0.0;
    for (const auto& x : cfg.pts) {
        double u = invert_classical(cfg.rs, cfg.m, cfg.theta, cfg.sg, g, res.k, x).real();
        size_t idx = (size_t)std::lround((x[0] - other.grid.axes[0].min) / other.grid.axes[0].step);
        sup = std::max(sup, std::abs(u - other.values[idx]));
    }
    CHECK(sup < 1e-3);
}

TEST_CASE("pav: coset averaging") {
    auto rs = RootSystem::build(Family::A, 2);
    auto theta = ThetaSubset::make(rs, {0});
    // W-invariant g → (|W|/|W_Θ|)·g
    auto ginv = [&](std::vector<Cplx> lam) {
        Cplx s(0.0, 0.0);
        for (const auto& w : rs.weyl()) {
            auto wl = w.apply(lam);
            s += wl[0] * wl[0] + wl[1] * wl[1] + wl[0] * wl[1];
        }
        return s;
    };
    std::vector<Cplx> lam = {Cplx(0.3, 0.2), Cplx(0.7, -0.4)};
    Cplx expect = 3.0 * ginv(lam);
    CHECK(std::abs(pav(rs, theta, ginv, lam) - expect) < 1e-12 * std::abs(expect));
    // Θ=Π → g itself
    auto full = ThetaSubset::full(rs);
    CHECK(std::abs(pav(rs, full, ginv, lam) - ginv(lam)) < 1e-12 * std::abs(ginv(lam)));
}

TEST_CASE("functional equation of transforms: Pav F_Theta f = (-1)^d F_Pi f") {
    auto cfg = make_a1(2, false, 1024, 0);
    // f̃: the W-invariant extension of f to the line (even extension)
    SampledFn fsym = cfg.f;
    SpaceGrid sgrid = default_space_grid(cfg.rs, {-2.2}, {2.2});
    sgrid.axes[0].count = 2047;
    sgrid.axes[0].step = 4.4 / 2046;
    SampledFn ftilde;
    ftilde.grid = sgrid;
    ftilde.values.resize(sgrid.total());
    for (size_t i = 0; i < sgrid.total(); ++i) {
        double z = std::abs(sgrid.point(i)[0]);
        size_t idx = (size_t)std::lround((z - cfg.f.grid.axes[0].min) / cfg.f.grid.axes[0].step);
        ftilde.values[i] = idx < cfg.f.values.size() ? cfg.f.values[idx] : 0.0;
    }
    auto full = ThetaSubset::full(cfg.rs);
    auto gtheta = [&](std::vector<Cplx> lam) {
        return theta_transform(cfg.rs, cfg.m, cfg.theta, cfg.f, lam);
    };
    long d = d_theta(cfg.rs, cfg.theta, cfg.m);
    for (int t = 0; t < 20; ++t) {
        std::vector<Cplx> lam = {Cplx(0.03 * t - 0.2, 0.4 + 0.11 * t)};
        Cplx lhs = pav(cfg.rs, cfg.theta, gtheta, lam);
        Cplx rhs = theta_transform(cfg.rs, cfg.m, full, ftilde, lam);
        if (d % 2 != 0) rhs = -rhs;
        CHECK(std::abs(lhs - rhs) < 2e-6 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("wave packet: invariance identity and support") {
    auto cfg = make_a1(4, false, 1024, 1024);
    auto g = transform_on_grid(cfg.rs, cfg.m, cfg.theta, cfg.f, cfg.sg);
    // 𝓘g = (|W_Θ|/|W|)·𝓘(P^av g): P^av here needs g as a function; use the
    // transform itself as the callable
    auto gfun = [&](std::vector<Cplx> lam) {
        return theta_transform(cfg.rs, cfg.m, cfg.theta, cfg.f, lam);
    };
    SpectralGrid small = SpectralGrid::cube(1, 40.0, 512);
    std::vector<Cplx> gvals(small.total()), pavvals(small.total());
    for (size_t i = 0; i < small.total(); ++i) {
        gvals[i] = gfun(small.lambda(i));
        pavvals[i] = pav(cfg.rs, cfg.theta, gfun, small.lambda(i));
    }
    for (double z : {0.7, 1.0, 1.3}) {
        Cplx a = wave_packet(cfg.rs, cfg.m, small, gvals, {z});
        Cplx b = wave_packet(cfg.rs, cfg.m, small, pavvals, {z});
        CHECK(std::abs(a - 0.5 * b) < 1e-8 * std::max(1.0, std::abs(a)));
    }
    // W-invariance of the wave packet in H
    Cplx plus = wave_packet(cfg.rs, cfg.m, cfg.sg, g, {0.9});
    Cplx minus = wave_packet(cfg.rs, cfg.m, cfg.sg, g, {-0.9});
    CHECK(std::abs(plus - minus) < 1e-9 * std::max(1.0, std::abs(plus)));
    // support: vanishes outside conv(W·C) = [-1.5, 1.5]
    double peak = 0.0;
    for (const auto& x : cfg.pts)
        peak = std::max(peak, std::abs(wave_packet(cfg.rs, cfg.m, cfg.sg, g, x)));
    for (double z : {1.7, 2.1, 2.6}) {
        CHECK(std::abs(wave_packet(cfg.rs, cfg.m, cfg.sg, g, {z})) < 1e-4 * peak);
    }
}

TEST_CASE("shifted-contour inversion, A1, Theta=empty, m=4") {
    auto cfg = make_a1(4, false, 1024, 1024);
    auto res = run_roundtrip(cfg.rs, cfg.m, cfg.theta, cfg.f, cfg.sg, cfg.pts);
    auto gfun = [&](std::vector<Cplx> lam) {
        return theta_transform(cfg.rs, cfg.m, cfg.theta, cfg.f, lam);
    };
    // admissible shifts: μ ∈ −𝔞*_Θ(m): μ = −tα with t ≥ m/2 = 2
    std::vector<double> mu1 = {-2.0}, mu2 = {-3.1};
    for (const auto& x : {std::vector<double>{0.8}, std::vector<double>{1.2}}) {
        Cplx v1 = invert_shifted(cfg.rs, cfg.m, cfg.theta, cfg.sg, gfun, mu1, res.k, x);
        Cplx v2 = invert_shifted(cfg.rs, cfg.m, cfg.theta, cfg.sg, gfun, mu2, res.k, x);
        CHECK(std::abs(v1 - v2) < 1e-6 * std::max(1.0, std::abs(v1)));
        // agreement with the classical route
        auto g = transform_on_grid(cfg.rs, cfg.m, cfg.theta, cfg.f, cfg.sg);
        Cplx vc = invert_classical(cfg.rs, cfg.m, cfg.theta, cfg.sg, g, res.k, x);
        CHECK(std::abs(v1 - vc) < 1e-3);
    }
    // rejected shifts and configurations
    CHECK_THROWS_AS((void)invert_shifted(cfg.rs, cfg.m, cfg.theta, cfg.sg, gfun, {-1.0}, res.k,
                                         {1.0}),
                    ShiftOutsideCone);
    auto rsg2 = RootSystem::build(Family::G2, 2);
    auto thetaG = ThetaSubset::make(rsg2, {0});
    auto mG = MultiplicityFn::constant(4);
    SpectralGrid sgG = SpectralGrid::cube(2, 5.0, 8);
    auto gz = [](std::vector<Cplx>) { return Cplx(0.0, 0.0); };
    CHECK_THROWS_AS((void)invert_shifted(rsg2, mG, thetaG, sgG, gz, {-3.0, -3.0}, 1.0, {1.0, 1.0}),
                    ConditionA2Violated);
}

TEST_CASE("annihilation of non-coset terms as the shift grows") {
    // ∫ g(λ+μ_t)e^{−w(λ+μ_t)(log a)}dλ → 0 for w ∉ W_Θ, μ_t = −tβ − μ₀
    auto cfg = make_a1(2, false, 1024, 512);
    auto gfun = [&](std::vector<Cplx> lam) {
        return theta_transform(cfg.rs, cfg.m, cfg.theta, cfg.f, lam);
    };
    double z = 1.1;
    double prev = 1e300;
    for (double tshift : {1.5, 3.0, 5.0, 7.0}) {
        SpectralGrid sg = cfg.sg;
        Cplx acc(0.0, 0.0);
        for (size_t i = 0; i < sg.total(); ++i) {
            auto lam = sg.lambda(i);
            lam[0] -= tshift;  // λ + μ_t
            // w = the nontrivial coset: e^{−w(λ+μ)(z)} = e^{+(λ+μ)(z)}
            acc += gfun(lam) * std::exp(lam[0] * z);
        }
        double val = std::abs(acc * sg.cell() * spectral_measure(cfg.rs));
        CHECK(val < prev);
        prev = val;
    }
    CHECK(prev < 1e-6);
}

TEST_CASE("support localization in C(r,X0), rank one") {
    // supp 𝓘_Θ g ⊂ C(r,X⁰) = [0.45, ∞): the wave packet dies on (0, 0.45)
    auto cfg = make_a1(4, false, 1024, 1024);
    auto g = transform_on_grid(cfg.rs, cfg.m, cfg.theta, cfg.f, cfg.sg);
    double peak = 0.0;
    for (const auto& x : cfg.pts)
        peak = std::max(peak, std::abs(wave_packet(cfg.rs, cfg.m, cfg.sg, g, x)));
    for (double z : {0.12, 0.2, 0.3, 0.42}) {
        CHECK(std::abs(wave_packet(cfg.rs, cfg.m, cfg.sg, g, {z})) < 1e-4 * peak);
    }
}

TEST_CASE("PW membership: transforms pass, wrong exponential type fails") {
    auto cfg = make_a1(2, false, 1024, 0);
    std::vector<std::vector<double>> C = {{0.5}, {1.5}};
    auto gfun = [&](std::vector<Cplx> lam) {
        return theta_transform(cfg.rs, cfg.m, cfg.theta, cfg.f, lam);
    };
    PWReport rep = pw_membership(cfg.rs, cfg.m, cfg.theta, gfun, C);
    CHECK(rep.verdict);
    CHECK(rep.entire_test < 1e-6);
    // g(λ) = e^{λ(H₀)} with H₀ ∉ C: decay fit must fail in the H₀ direction
    auto gbad = [&](std::vector<Cplx> lam) { return std::exp(lam[0] * 2.5); };
    PWReport repbad = pw_membership(cfg.rs, cfg.m, cfg.theta, gbad, C);
    CHECK(!repbad.verdict);
    bool some_decay_failed = false;
    for (bool ok : repbad.decay_ok) some_decay_failed = some_decay_failed || !ok;
    CHECK(some_decay_failed);
}

TEST_CASE("PW membership: rank-one counterexample fails only the entire test") {
    // g(λ) = (a/(λ−1) + b/(λ+1))h(λ), a ≠ −b, m = 4: condition 1 holds, the
    // P^av circle residues do not vanish.
    auto cfg = make_a1(4, false, 1024, 0);
    std::vector<std::vector<double>> C = {{0.5}, {1.5}};
    SampledFn h_src = cfg.f;
    auto h = [&](Cplx lam) { return euclidean_fourier(cfg.rs, h_src, {lam}); };
    const double a = 1.0, b = 0.5;
    auto gbad = [&](std::vector<Cplx> lam) {
        return (a / (lam[0] - 1.0) + b / (lam[0] + 1.0)) * h(lam[0]);
    };
    PWReport rep = pw_membership(cfg.rs, cfg.m, cfg.theta, gbad, C);
    for (bool ok : rep.decay_ok) CHECK(ok);
    CHECK(rep.entire_test > 1e-3);
    CHECK(!rep.verdict);
}

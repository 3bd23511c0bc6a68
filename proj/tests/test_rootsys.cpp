#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "thetasph/rootsystem.hpp"

using namespace thetasph;

TEST_CASE("A1 basic data") {
    auto rs = RootSystem::build(Family::A, 1);
    CHECK(rs.roots().size() == 2);
    CHECK(rs.positive_roots().size() == 1);
    CHECK(rs.weyl().size() == 2);
}

TEST_CASE("A2 basics and lambda_alpha") {
    auto rs = RootSystem::build(Family::A, 2);
    CHECK(rs.roots().size() == 6);
    CHECK(rs.positive_roots().size() == 3);
    CHECK(rs.weyl().size() == 6);
    // Σ⁺ = {α₁, α₂, α₁+α₂}
    RatVec a12 = {Rat(1), Rat(1)};
    CHECK(rs.is_positive_root(a12));
    // ⟨α₁, α₁+α₂⟩/⟨α₁+α₂, α₁+α₂⟩ = 1/2 with the Bourbaki Gram matrix
    RatVec a1 = {Rat(1), Rat(0)};
    CHECK(rs.lambda_alpha(a1, a12) == Rat(1, 2));
    // longest element has length |Σ⁺| = 3
    CHECK(rs.weyl().back().length == 3);
}

TEST_CASE("G2 closure gives 12 roots, |W| = 12") {
    auto rs = RootSystem::build(Family::G2, 2);
    CHECK(rs.roots().size() == 12);
    CHECK(rs.weyl().size() == 12);
}

TEST_CASE("B2 Weyl group of order 8") {
    auto rs = RootSystem::build(Family::B, 2);
    CHECK(rs.roots().size() == 8);
    CHECK(rs.weyl().size() == 8);
}

TEST_CASE("inadmissible family/rank combinations") {
    CHECK_THROWS_AS(RootSystem::build(Family::D, 2), std::invalid_argument);
    CHECK_THROWS_AS(RootSystem::build(Family::B, 1), std::invalid_argument);
    CHECK_THROWS_AS((void)RootSystem::build(Family::G2, 3), std::invalid_argument);
}

TEST_CASE("reflection closure and length function, ranks <= 3") {
    for (const std::string name : {"A1", "A2", "A3", "B2", "B3", "C3", "D3", "G2"}) {
        auto rs = RootSystem::build(name);
        CAPTURE(name);
        // every w maps roots to roots
        for (const auto& w : rs.weyl()) {
            for (const auto& alpha : rs.roots()) CHECK(rs.is_root(w.apply(alpha)));
            // ℓ(w) from the word equals the inversion count
            CHECK((int)w.word.size() == w.length);
            CHECK(rs.length_of(w.mat) == w.length);
        }
    }
}

TEST_CASE("coset decomposition W = W^Θ × W_Θ is a bijection") {
    for (const std::string name : {"A2", "A3", "B2", "B3", "G2"}) {
        auto rs = RootSystem::build(name);
        for (int mask = 0; mask < (1 << rs.rank()); ++mask) {
            std::vector<int> idx;
            for (int i = 0; i < rs.rank(); ++i)
                if (mask & (1 << i)) idx.push_back(i);
            auto theta = ThetaSubset::make(rs, idx);
            auto reps = min_coset_reps(rs, theta);
            CHECK(reps.size() * theta.theta_weyl.size() == rs.weyl().size());
            std::set<std::vector<RatVec>> all;
            for (const auto& u : reps)
                for (const auto& v : theta.theta_weyl) all.insert(rs.compose(u, v).mat);
            CHECK(all.size() == rs.weyl().size());
            // each rep is shortest in its coset (brute force)
            for (const auto& u : reps)
                for (const auto& v : theta.theta_weyl) {
                    if (v.length == 0) continue;
                    CHECK(rs.compose(u, v).length > u.length);
                }
            // Lemma: nontrivial reps send some β ∈ Π∖Θ to a negative root
            for (const auto& u : reps) {
                if (u.length == 0) continue;
                bool found = false;
                for (int i = 0; i < rs.rank(); ++i) {
                    if (theta.contains(i)) continue;
                    RatVec e(rs.rank(), Rat(0));
                    e[i] = 1;
                    RatVec im = u.apply(e);
                    bool neg = true;
                    for (const auto& c : im)
                        if (c > 0) neg = false;
                    if (neg) found = true;
                }
                CHECK(found);
            }
        }
    }
}

TEST_CASE("min_coset_reps special cases") {
    auto rs = RootSystem::build(Family::A, 2);
    CHECK(min_coset_reps(rs, ThetaSubset::full(rs)).size() == 1);
    CHECK(min_coset_reps(rs, ThetaSubset::make(rs, {0})).size() == 3);
    auto rs1 = RootSystem::build(Family::A, 1);
    CHECK(min_coset_reps(rs1, ThetaSubset::empty(rs1)).size() == 2);
}

TEST_CASE("cone membership") {
    auto rs1 = RootSystem::build(Family::A, 1);
    auto empty1 = ThetaSubset::empty(rs1);
    CHECK(cone_membership(rs1, {Rat(1)}, ConeKind::a_theta, empty1));
    CHECK(!cone_membership(rs1, {Rat(-1)}, ConeKind::a_theta, empty1));
    // Θ=Π: no conditions
    auto rs2 = RootSystem::build(Family::A, 2);
    auto full2 = ThetaSubset::full(rs2);
    CHECK(cone_membership(rs2, {Rat(-5), Rat(3)}, ConeKind::a_theta, full2));
    // A2, Θ={α₁}: fundamental coweight of α₂ lies in C_Θ
    auto theta = ThetaSubset::make(rs2, {0});
    RatVec x = {Rat(0), Rat(1)};  // α₁(H)=0, α₂(H)=1
    CHECK(cone_membership(rs2, x, ConeKind::C_theta, theta));
    CHECK(!cone_membership(rs2, {Rat(1), Rat(1)}, ConeKind::C_theta, theta));
    // C(r,X⁰)
    ConeParams params;
    params.r = 2;
    params.X0 = x;
    CHECK(cone_membership(rs2, {Rat(0), Rat(3)}, ConeKind::C_rX0, theta, &params));
    CHECK(!cone_membership(rs2, {Rat(0), Rat(1)}, ConeKind::C_rX0, theta, &params));
}

TEST_CASE("dual cone membership, exact") {
    auto rs = RootSystem::build(Family::A, 1);
    auto empty = ThetaSubset::empty(rs);
    RatVec zero = {Rat(0)};
    CHECK(dual_cone_membership(rs, zero, empty, {}, false));
    RatVec alpha = {Rat(1)};
    std::vector<std::pair<RatVec, Rat>> thr2 = {{alpha, Rat(1)}};   // m=2: m_α/2 = 1
    std::vector<std::pair<RatVec, Rat>> thr4 = {{alpha, Rat(2)}};   // m=4: m_α/2 = 2
    CHECK(dual_cone_membership(rs, alpha, empty, thr2, true));      // λ_α=1 ≥ 1
    CHECK(!dual_cone_membership(rs, alpha, empty, thr4, true));     // λ_α=1 < 2
    // direction outside the cone
    RatVec neg = {Rat(-1)};
    CHECK(!dual_cone_membership(rs, neg, empty, {}, false));
}

TEST_CASE("support function") {
    auto rs = RootSystem::build(Family::A, 2);
    ConvexBody origin{{RatVec{Rat(0), Rat(0)}}};
    RatVec lam = {Rat(3), Rat(-2)};
    CHECK(support_function(rs, origin, lam) == Rat(0));
    // E = conv{−H, H}, λ(H) = 2 → q_E(λ) = 2
    RatVec H = {Rat(1), Rat(2)};
    RatVec negH = {Rat(-1), Rat(-2)};
    ConvexBody seg{{H, negH}};
    RatVec lam2 = {Rat(2), Rat(0)};
    CHECK(support_function(rs, seg, lam2) == Rat(2));
    // q_{wE}(λ) = q_E(w^{-1}λ) on W-orbits
    ConvexBody orbit;
    for (const auto& w : rs.weyl()) orbit.generators.push_back(rs.apply_to_point(w, H));
    for (const auto& w : rs.weyl()) {
        ConvexBody worbit;
        for (const auto& g : orbit.generators)
            worbit.generators.push_back(rs.apply_to_point(w, g));
        CHECK(support_function(rs, worbit, lam) ==
              support_function(rs, orbit, rs.inverse(w).apply(lam)));
    }
}

TEST_CASE("sublinearity of the support function on sampled pairs") {
    auto rs = RootSystem::build(Family::A, 2);
    ConvexBody body{{RatVec{Rat(1), Rat(0)}, RatVec{Rat(0), Rat(1)}, RatVec{Rat(-1), Rat(1)}}};
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> dist(-5, 5);
    for (int trial = 0; trial < 50; ++trial) {
        RatVec a = {Rat(dist(rng)), Rat(dist(rng))};
        RatVec b = {Rat(dist(rng)), Rat(dist(rng))};
        RatVec s = {a[0] + b[0], a[1] + b[1]};
        CHECK(support_function(rs, body, s) <=
              support_function(rs, body, a) + support_function(rs, body, b));
    }
}

TEST_CASE("disjointness of u(a_theta) for distinct coset reps") {
    auto rs = RootSystem::build(Family::A, 2);
    auto theta = ThetaSubset::make(rs, {0});
    auto reps = min_coset_reps(rs, theta);
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    auto in_a_theta = [&](const std::vector<double>& x) {
        for (const auto& alpha : positive_complement(rs, theta))
            if (rs.pair_point(alpha, x) <= 0) return false;
        return true;
    };
    for (size_t i = 0; i < reps.size(); ++i)
        for (size_t j = i + 1; j < reps.size(); ++j) {
            for (int t = 0; t < 1000; ++t) {
                std::vector<double> x = {dist(rng), dist(rng)};
                if (!in_a_theta(x)) continue;
                auto xi = rs.apply_to_point(reps[i], x);
                auto xj = rs.apply_to_point(reps[j], x);
                bool same = std::abs(xi[0] - xj[0]) < 1e-12 && std::abs(xi[1] - xj[1]) < 1e-12;
                CHECK(!same);
            }
        }
}

#pragma once

#include <map>
#include <vector>

#include "thetasph/laurent.hpp"
#include "thetasph/multiplicity.hpp"
#include "thetasph/rootsystem.hpp"

namespace thetasph {

// Element of the localization ℂ[A_ℂ][Δ^{-1}]: num / Δ^dpow.
struct LocLaurent {
    LaurentPoly num;
    long dpow = 0;

    bool is_zero() const { return num.is_zero(); }
    // Cancel Δ factors where possible (keeps dpow minimal, never negative).
    void normalize(const RootSystem& rs);
};

// Polynomial in the commuting directions A_{α_1},…,A_{α_l} with rational
// coefficients; multi-index i means Π_j A_{α_j}^{i_j}.
struct SymPoly {
    int rank = 0;
    std::map<std::vector<int>, Rat> monomials;

    static SymPoly constant(int rank, Rat c);
    // linear form ⟨·-direction v⟩ + c, v in root coordinates of 𝔞*
    static SymPoly linear(const RatVec& v, Rat c);
    SymPoly operator*(const SymPoly& o) const;
    SymPoly& operator*=(const SymPoly& o) { return *this = *this * o; }
    SymPoly operator+(const SymPoly& o) const;
    long degree() const;
};

// q(m;λ) = Π_{α>0} (λ_α + m_α/2) as an element of S(𝔞).
SymPoly q_poly(const RootSystem& rs, const MultiplicityFn& m);
// p_L(λ) = ⟨λ,λ⟩.
SymPoly laplace_poly(const RootSystem& rs);

// Dunkl-Cherednik operator T(m;A_v) applied to f;
// v ∈ 𝔞* in root coordinates describes the direction A_v ∈ 𝔞.
LaurentPoly cherednik_apply(const RootSystem& rs, const MultiplicityFn& m, const RatVec& v,
                            const LaurentPoly& f);

// T(m;p) for p ∈ S(𝔞) by composition (the operators commute).
LaurentPoly cherednik_poly_apply(const RootSystem& rs, const MultiplicityFn& m, const SymPoly& p,
                                 const LaurentPoly& f);

// Fundamental shift operators on W-invariant f, through the Cherednik route.
// G₊(2;m) = (−1)^{|Σ⁺|} Δ^{-1} T(m;q(m)) on ℂ[A_ℂ]^W  (sign validated against
// the rank-one and complex closed forms).
LaurentPoly shift2_plus_apply(const RootSystem& rs, const MultiplicityFn& m,
                              const LaurentPoly& f);
// G₋(−2;m+2) = |W|^{-1} Σ_v v(T(m;q(m)) ∘ Δ) on ℂ[A_ℂ]^W.
LaurentPoly shift2_minus_apply(const RootSystem& rs, const MultiplicityFn& m_plus_2,
                               const LaurentPoly& f);

// D_m f = Δ(m)·(G₊(2;m−2)∘…∘G₊(2;0)) f for constant multiplicity m = 2k.
// Every Δ-division along the chain must be exact.
LaurentPoly D_m_apply(const RootSystem& rs, int k, const LaurentPoly& f);

// g with g·Δ^power = f, exact; throws on remainder.
LaurentPoly divide_by_delta(const RootSystem& rs, const LaurentPoly& f, int power);

// π(λ)e⁺_Π(m;λ) = Π_{α>0} Π_{k=0}^{m_α/2-1} (k² − λ_α²), exact at rational λ.
GRat pi_eplus_product(const RootSystem& rs, const MultiplicityFn& m,
                      const std::vector<GRat>& lambda);

}  // namespace thetasph

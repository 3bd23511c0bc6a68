#pragma once

#include <functional>
#include <map>

#include "thetasph/cherednik.hpp"

namespace thetasph {

// Symbolic element of ℂ_Δ[A_ℂ] ⊗ S(𝔞) ⊗ ℂ[W]: finitely many terms
// coeff · ∂^I ⊗ w with coeff ∈ ℂ[A_ℂ][Δ^{-1}].  Multi-indices are over the
// directions ∂(A_{α_1}),…,∂(A_{α_l}).
class DiffReflOp {
  public:
    using Key = std::pair<std::vector<int>, int>;  // (multi-index, weyl index)

    explicit DiffReflOp(const RootSystem& rs) : rs_(&rs) {}
    static DiffReflOp identity(const RootSystem& rs);
    static DiffReflOp scalar(const RootSystem& rs, const Rat& c);
    // T(m;A_v) with v ∈ 𝔞* in root coordinates.
    static DiffReflOp cherednik(const RootSystem& rs, const MultiplicityFn& m, const RatVec& v);

    const std::map<Key, LocLaurent>& terms() const { return terms_; }
    DiffReflOp operator*(const DiffReflOp& o) const;  // composition
    DiffReflOp operator+(const DiffReflOp& o) const;
    DiffReflOp operator-(const DiffReflOp& o) const;

    // Υ: drop the group components, returning multi-index → coefficient.
    std::map<std::vector<int>, LocLaurent> upsilon() const;

    // Apply the full differential-reflection operator to f (exact).
    LocLaurent apply(const LaurentPoly& f) const;

  private:
    const RootSystem* rs_;
    std::map<Key, LocLaurent> terms_;
    void add(const Key& k, const LocLaurent& c);
    int weyl_index(const WeylElement& w) const;
};

// D_q = Δ^k D(m;q) with q(λ) = Π_{α∈Σ} Π_{k=-m_α/2+1}^{m_α/2-1} (λ_α − k) and k
// minimal so that all coefficients are regular (decided by exact division).
struct DqOperator {
    long order = 0;
    long delta_power = 0;
    std::map<std::vector<int>, LaurentPoly> coeffs;

    // Σ_I coeff_I(x) d_I where d_I is supplied by the caller (I-th directional
    // derivative of the target function along the A_{α_i}).
    Cplx apply_numeric(const RootSystem& rs, const std::vector<double>& x,
                       const std::function<Cplx(const std::vector<int>&)>& derivative) const;
};

DqOperator build_Dq(const RootSystem& rs, const MultiplicityFn& m);

// Expected order Σ_{α∈Σ}(m_α−1) and the factored principal symbol
// Δ^k(H)·Π_{α∈Σ} λ_α^{m_α−1}; symbol evaluated numerically for spot checks.
long dq_expected_order(const RootSystem& rs, const MultiplicityFn& m);
Cplx dq_principal_symbol(const RootSystem& rs, const MultiplicityFn& m, long delta_power,
                         const std::vector<double>& x, const std::vector<Cplx>& lambda);
Cplx dq_symbol_from_coeffs(const RootSystem& rs, const DqOperator& dq,
                           const std::vector<double>& x, const std::vector<Cplx>& lambda);

}  // namespace thetasph

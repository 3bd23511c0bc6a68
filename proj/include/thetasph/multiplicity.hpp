#pragma once

#include <map>
#include <string>

#include "thetasph/laurent.hpp"
#include "thetasph/rootsystem.hpp"

namespace thetasph {

// W-invariant multiplicity function, keyed by root length class so that
// W-invariance holds by construction.
class MultiplicityFn {
  public:
    MultiplicityFn() = default;
    static MultiplicityFn constant(long m);
    static MultiplicityFn short_long(long m_short, long m_long);
    // "2", {"all":2} or {"short":0,"long":2} (JSON handled by the CLI layer).
    static MultiplicityFn parse(const std::string& spec);

    bool is_constant() const { return m_short_ == m_long_; }
    long constant_value() const;
    long short_value() const { return m_short_; }
    long long_value() const { return m_long_; }

    long value(const RootSystem& rs, const RatVec& alpha) const;
    bool all_even() const { return m_short_ % 2 == 0 && m_long_ % 2 == 0; }
    bool all_nonneg() const { return m_short_ >= 0 && m_long_ >= 0; }
    bool is_zero() const { return m_short_ == 0 && m_long_ == 0; }
    std::string str() const;

  private:
    long m_short_ = 0;
    long m_long_ = 0;
};

// ρ(m) = ½ Σ_{α>0} m_α α, in root coordinates.
RatVec rho(const RootSystem& rs, const MultiplicityFn& m);

// Δ(m) = Π_{α>0} (e^α − e^{−α})^{m_α} as an exact Laurent polynomial; m even.
LaurentPoly delta_weight(const RootSystem& rs, const MultiplicityFn& m);

// d(Θ,m) = ½ Σ_{α ∈ Σ⁺∖⟨Θ⟩⁺} m_α
long d_theta(const RootSystem& rs, const ThetaSubset& theta, const MultiplicityFn& m);

struct ConditionA {
    bool holds_A1 = false;
    bool holds_A2 = false;
    bool holds() const { return holds_A1 || holds_A2; }
};

ConditionA condition_A(const RootSystem& rs, const ThetaSubset& theta, const MultiplicityFn& m);

// 𝔞*_Θ(m) membership thresholds λ_α ≥ m_α/2 for dual_cone_membership.
std::vector<std::pair<RatVec, Rat>> dual_cone_thresholds(const RootSystem& rs,
                                                         const ThetaSubset& theta,
                                                         const MultiplicityFn& m);

}  // namespace thetasph

#pragma once

#include <map>
#include <optional>
#include <vector>

#include "thetasph/rational.hpp"
#include "thetasph/rootsystem.hpp"

namespace thetasph {

// Finitely supported exact function on the weight lattice P, i.e. the group
// ring of P with Gaussian-rational scalars.  Exponents are stored in root
// coordinates, always at full rank.
class LaurentPoly {
  public:
    using Terms = std::map<RatVec, GRat>;

    LaurentPoly() = default;
    explicit LaurentPoly(int rank) : rank_(rank) {}
    static LaurentPoly constant(int rank, GRat c);
    static LaurentPoly exponential(const RatVec& mu, GRat c = GRat(1));

    int rank() const { return rank_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }

    void add_term(const RatVec& mu, const GRat& c);
    GRat coeff(const RatVec& mu) const;

    LaurentPoly operator-() const;
    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }
    LaurentPoly operator*(const GRat& c) const;
    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.terms_ == b.terms_;
    }

    // ∂(A_v) where v ∈ 𝔞* in root coordinates: e^μ ↦ ⟨μ,v⟩ e^μ.
    LaurentPoly derivative(const RootSystem& rs, const RatVec& direction) const;

    // w·e^μ = e^{wμ}
    LaurentPoly weyl_image(const WeylElement& w) const;
    bool weyl_invariant(const RootSystem& rs) const;
    bool weyl_alternating(const RootSystem& rs) const;

    // All exponents in the restricted weight lattice P.
    bool exponents_in_lattice(const RootSystem& rs) const;

    // Exact division; nullopt when the divisor does not divide exactly.
    std::optional<LaurentPoly> divide_exact(const LaurentPoly& divisor) const;

    // Numeric evaluation at a = exp H, H in wall coordinates (real or complex).
    Cplx eval_point(const RootSystem& rs, const std::vector<double>& x) const;
    Cplx eval_point(const RootSystem& rs, const std::vector<Cplx>& x) const;

    std::string str() const;

  private:
    int rank_ = 0;
    Terms terms_;
};

LaurentPoly one_minus_exp(const RatVec& mu);         // 1 − e^{μ}
LaurentPoly exp_minus_exp(const RatVec& alpha);      // e^{α} − e^{−α}
LaurentPoly weyl_denominator(const RootSystem& rs);  // Δ = Π_{α>0} (e^α − e^{−α})

}  // namespace thetasph

#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "thetasph/rational.hpp"

namespace thetasph {

// Conventions used throughout the library:
//  - functionals on 𝔞 (roots, weights, spectral parameters) are stored by their
//    coordinates over the simple roots; the bilinear form is the exact Gram matrix.
//  - points of 𝔞 are stored by their wall coordinates x_i = α_i(H), so that
//    λ(H) = Σ_i c_i x_i is a plain dot product for λ = Σ_i c_i α_i.
enum class Family { A, B, C, D, G2 };

Family family_from_string(const std::string& s);
std::string family_to_string(Family f);

struct WeylElement {
    std::vector<RatVec> mat;   // action on functionals in root coordinates, column j = w(α_j)
    std::vector<int> word;     // reduced word in simple reflections (0-based)
    int length = 0;

    RatVec apply(const RatVec& coords) const;
    std::vector<Cplx> apply(const std::vector<Cplx>& coords) const;
    std::vector<GRat> apply(const std::vector<GRat>& coords) const;
    bool operator==(const WeylElement& o) const { return mat == o.mat; }
};

class RootSystem {
  public:
    static RootSystem build(Family family, int rank);
    static RootSystem build(const std::string& name);  // e.g. "A1", "B3", "G2"

    Family family() const { return family_; }
    int rank() const { return rank_; }
    std::string name() const;

    const std::vector<RatVec>& roots() const { return roots_; }
    const std::vector<RatVec>& positive_roots() const { return positive_; }
    const std::vector<std::vector<Rat>>& gram() const { return gram_; }

    // ⟨λ,μ⟩ for functionals in root coordinates.
    Rat inner(const RatVec& a, const RatVec& b) const;
    Cplx inner(const std::vector<Cplx>& a, const std::vector<Cplx>& b) const;
    GRat inner(const std::vector<GRat>& a, const std::vector<GRat>& b) const;

    // λ_α = ⟨λ,α⟩/⟨α,α⟩.  α must be a root.
    Rat lambda_alpha(const RatVec& lambda, const RatVec& alpha) const;
    Cplx lambda_alpha(const std::vector<Cplx>& lambda, const RatVec& alpha) const;
    GRat lambda_alpha(const std::vector<GRat>& lambda, const RatVec& alpha) const;

    // α(H) for a point H in wall coordinates.
    Rat pair_point(const RatVec& functional, const RatVec& x) const;
    double pair_point(const RatVec& functional, const std::vector<double>& x) const;

    bool is_root(const RatVec& coords) const;
    bool is_positive_root(const RatVec& coords) const;

    // Weyl group, enumerated and cached on first use; canonical order (length, word).
    const std::vector<WeylElement>& weyl() const;
    int weyl_order_cap() const { return weyl_cap_; }
    void set_weyl_order_cap(int cap) { weyl_cap_ = cap; }
    const WeylElement& identity() const;
    WeylElement simple_reflection(int i) const;
    WeylElement compose(const WeylElement& a, const WeylElement& b) const;
    WeylElement inverse(const WeylElement& w) const;
    int length_of(const std::vector<RatVec>& mat) const;
    int sign_of(const WeylElement& w) const { return w.length % 2 == 0 ? 1 : -1; }

    // Action of w on a point of 𝔞 in wall coordinates: x_i(wH) = (w^{-1}α_i)(H).
    RatVec apply_to_point(const WeylElement& w, const RatVec& x) const;
    std::vector<double> apply_to_point(const WeylElement& w, const std::vector<double>& x) const;

    // Weight-lattice membership: λ_α ∈ ℤ for all roots α.
    bool in_weight_lattice(const RatVec& lambda) const;

  private:
    Family family_;
    int rank_ = 0;
    std::vector<RatVec> roots_;
    std::vector<RatVec> positive_;
    std::vector<std::vector<Rat>> gram_;
    int weyl_cap_ = 100000;
    mutable std::vector<WeylElement> weyl_;
    mutable std::vector<std::vector<RatVec>> point_mats_;  // per weyl element

    friend const std::vector<RatVec>& point_matrices(const RootSystem&);
};

struct ThetaSubset {
    std::vector<int> indices;             // 0-based simple-root indices, sorted
    std::vector<RatVec> theta_positive;   // ⟨Θ⟩⁺
    std::vector<WeylElement> theta_weyl;  // W_Θ in canonical order

    static ThetaSubset make(const RootSystem& rs, std::vector<int> indices);
    static ThetaSubset full(const RootSystem& rs);
    static ThetaSubset empty(const RootSystem& rs);
    // "Pi", "empty", or comma-separated 1-based indices such as "1" or "1,3".
    static ThetaSubset parse(const RootSystem& rs, const std::string& spec);

    bool is_full(const RootSystem& rs) const { return (int)indices.size() == rs.rank(); }
    bool contains(int idx) const {
        return std::find(indices.begin(), indices.end(), idx) != indices.end();
    }
    bool in_theta_span(const RatVec& root) const;
    std::string str() const;
};

// Σ⁺ ∖ ⟨Θ⟩⁺.
std::vector<RatVec> positive_complement(const RootSystem& rs, const ThetaSubset& theta);

// Minimal-length coset representatives W^Θ = {w : ℓ(w r_α) > ℓ(w) ∀ α∈Θ}.
std::vector<WeylElement> min_coset_reps(const RootSystem& rs, const ThetaSubset& theta);

enum class ConeKind { a_plus, a_theta, C_theta, C_rX0 };

struct ConeParams {
    Rat r{0};
    RatVec X0;  // wall coordinates
};

bool cone_membership(const RootSystem& rs, const RatVec& x, ConeKind kind,
                     const ThetaSubset& theta, const ConeParams* params = nullptr);

// λ ∈ Σ_{α∈Σ⁺∖⟨Θ⟩⁺} ℝ⁺₀ α, decided by exact rational feasibility; with_m adds
// the thresholds λ_α ≥ m_α/2 defining 𝔞*_Θ(m).
bool dual_cone_membership(const RootSystem& rs, const RatVec& lambda, const ThetaSubset& theta,
                          const std::vector<std::pair<RatVec, Rat>>& m_half_thresholds,
                          bool with_m);

struct ConvexBody {
    std::vector<RatVec> generators;  // wall coordinates
};

Rat support_function(const RootSystem& rs, const ConvexBody& body, const RatVec& lambda);
double support_function(const RootSystem& rs, const std::vector<std::vector<double>>& generators,
                        const std::vector<double>& lambda);

// Exact feasibility of {A c = b, c ≥ 0} by phase-one simplex over ℚ.
bool rational_cone_feasible(const std::vector<RatVec>& generators_cols, const RatVec& target);

}  // namespace thetasph

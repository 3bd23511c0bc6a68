#pragma once

#include "thetasph/hcseries.hpp"
#include "thetasph/multiplicity.hpp"
#include "thetasph/rankone.hpp"
#include "thetasph/rootsystem.hpp"

namespace thetasph {

struct PoleHit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class CFactorKind { c_plus, c_minus, c_plus_c, e_minus, e_plus, pi, q };

Cplx c_factors_eval(const RootSystem& rs, CFactorKind kind, const ThetaSubset& theta,
                    const MultiplicityFn& m, const std::vector<Cplx>& lambda,
                    double eps_sing = 1e-8);
GRat c_factors_eval_exact(const RootSystem& rs, CFactorKind kind, const ThetaSubset& theta,
                          const MultiplicityFn& m, const std::vector<GRat>& lambda);

// c⁺_Π(m;ρ(m)), the normalization of the Heckman-Opdam hypergeometric function.
double c_plus_at_rho(const RootSystem& rs, const MultiplicityFn& m);

enum class PhiRoute { auto_select, series, closed };

// φ_Θ(m;λ,a) with H = log a in wall coordinates of 𝔞_Θ.
Cplx phi_theta(const RootSystem& rs, const MultiplicityFn& m, const ThetaSubset& theta,
               const std::vector<Cplx>& lambda, const std::vector<double>& x,
               PhiRoute route = PhiRoute::auto_select, int series_N = 40);

// Series route: c⁻_Θ(m;λ) Σ_{w∈W_Θ} c⁺_Θ(m;wλ) Φ(m;wλ,a); H is mapped into the
// closed positive chamber by W_Θ.
Cplx phi_theta_series(const RootSystem& rs, const MultiplicityFn& m, const ThetaSubset& theta,
                      const std::vector<Cplx>& lambda, const std::vector<double>& x, int N);

enum class RankOneNorm { hc_series, takahashi, phi_theta };

// Rank-one closed forms; theta_full selects Θ=Π (else Θ=∅).
Cplx phi_theta_closed_rank1(const RootSystem& rs, long m, bool theta_full, Cplx lambda, double z,
                            RankOneNorm normalization);

// Complex case m≡2: (−1)^{|Σ⁺∖⟨Θ⟩⁺|} π(λ)^{-1} Δ(a)^{-1} Σ_{w∈W_Θ} ε(w)e^{wλ(log a)};
// on walls of 𝔞_Θ inside the cone the value is filled by one-sided Richardson
// extrapolation along the ρ-direction.
Cplx phi_theta_closed_complex(const RootSystem& rs, const ThetaSubset& theta,
                              const std::vector<Cplx>& lambda, const std::vector<double>& x);

// Δ(m;a)·φ_Θ(m;λ,a), computed without wall divisions (used by quadratures).
Cplx delta_phi_theta(const RootSystem& rs, const MultiplicityFn& m, const ThetaSubset& theta,
                     const std::vector<Cplx>& lambda, const std::vector<double>& x);

// |φ_Π − (−1)^{d(Θ,m)} Σ_{W_Θ∖W} φ_Θ(m;wλ,·)| / |φ_Π|.
double functional_equation_residual(const RootSystem& rs, const MultiplicityFn& m,
                                    const ThetaSubset& theta, const std::vector<Cplx>& lambda,
                                    const std::vector<double>& x);

// |ML(m)φ − ⟨λ,λ⟩φ| / |⟨λ,λ⟩φ| with second derivatives by central differences.
double eigen_residual(const RootSystem& rs, const MultiplicityFn& m,
                      const std::vector<Cplx>& lambda, const std::vector<double>& x,
                      double h_step = 1e-4, int series_N = 40);

// e⁻_Θ(m;λ)·φ_Θ(m;λ,a); near zeros of e⁻_Θ the value is recovered by a
// 32-point circle average of radius 1e-2 in the singular λ_α-coordinate.
Cplx regularized_phi(const RootSystem& rs, const MultiplicityFn& m, const ThetaSubset& theta,
                     const std::vector<Cplx>& lambda, const std::vector<double>& x,
                     int series_N = 40);

// Σ_{w∈W} P_{D_m}(−wλ, a) e^{−wλ(log a)} (= Δ(m;a)·π(λ)e⁺_Π(m;λ)·φ_Π(m;−λ,a)),
// entire in λ; available for rank one, the complex case, and m = 0.
bool dm_symbol_available(const RootSystem& rs, const MultiplicityFn& m);
Cplx dm_symbol_eval(const RootSystem& rs, const MultiplicityFn& m, const std::vector<Cplx>& nu,
                    const std::vector<double>& x);
Cplx inversion_kernel(const RootSystem& rs, const MultiplicityFn& m,
                      const std::vector<Cplx>& lambda, const std::vector<double>& x);

}  // namespace thetasph

#pragma once

#include <map>
#include <string>
#include <vector>

#include "thetasph/multiplicity.hpp"
#include "thetasph/rootsystem.hpp"

namespace thetasph {

struct SingularSpectral : std::runtime_error {
    std::vector<int> mu;  // offending lattice point (μ = 2ν given by ν)
    explicit SingularSpectral(std::vector<int> mu_, const std::string& what)
        : std::runtime_error(what), mu(std::move(mu_)) {}
};

struct NotInChamber : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RouteMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Elements ν of the positive semigroup Λ with height Σν_i ≤ N, by height.
std::vector<std::vector<int>> lattice_shells(int rank, int N);
inline int height_of(const std::vector<int>& nu) {
    int h = 0;
    for (int v : nu) h += v;
    return h;
}

// Γ-coefficient table of the Harish-Chandra series, indexed by ν (μ = 2ν).
template <class S>
struct GammaTable {
    int N = 0;
    std::map<std::vector<int>, S> entries;
};

double singular_distance(const RootSystem& rs, const std::vector<Cplx>& lambda, int N);

GammaTable<Cplx> gamma_coeffs(const RootSystem& rs, const MultiplicityFn& m,
                              const std::vector<Cplx>& lambda, int N,
                              double eps_sing = 1e-8);
GammaTable<GRat> gamma_coeffs_exact(const RootSystem& rs, const MultiplicityFn& m,
                                    const std::vector<GRat>& lambda, int N);

struct PhiValue {
    Cplx value{0.0, 0.0};
    double tail_bound = 0.0;
};

// Φ(m;λ,a) = e^{(λ−ρ(m))(log a)} Σ_ν Γ_{2ν} e^{−2ν(log a)} truncated at height N
// in ν; H in wall coordinates, strictly inside 𝔞⁺.
PhiValue phi_series(const RootSystem& rs, const MultiplicityFn& m,
                    const std::vector<Cplx>& lambda, const std::vector<double>& x, int N,
                    double eps_sing = 1e-8);

// b-coefficients: Π_{α>0}(1−e^{−2α})^{m_α/2} = Σ_ν b_ν e^{−2ν}.
std::map<std::vector<int>, Rat> b_coeffs(const RootSystem& rs, const MultiplicityFn& m, int N);

// a-coefficients by the Appendix recursion and by convolution with Γ; the two
// routes are cross-checked to rel_tol (RouteMismatch otherwise).
std::map<std::vector<int>, Cplx> a_coeffs(const RootSystem& rs, const MultiplicityFn& m,
                                          const std::vector<Cplx>& lambda, int N,
                                          double rel_tol = 1e-10, double eps_sing = 1e-8);

// d-coefficients of Δ_c(m) = Π(1−e^{−2α})^{−c m_α/2}; H_shift in wall coords
// must satisfy α(H) ≥ max{2c⟨ρ(m),α⟩, 0}.
std::map<std::vector<int>, double> d_coeffs(const RootSystem& rs, const MultiplicityFn& m,
                                            double c, const std::vector<double>& H_shift, int N);

struct CRChoice {
    double c = 0.0;
    double r = 1.001;
};
CRChoice choose_c_r(const RootSystem& rs, const MultiplicityFn& m);

}  // namespace thetasph

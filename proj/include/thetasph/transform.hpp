#pragma once

#include <functional>

#include "thetasph/special.hpp"

namespace thetasph {

struct ConditionA2Violated : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ShiftOutsideCone : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GridAxis {
    double min = 0.0;
    double step = 0.0;
    int count = 0;
};

struct SpaceGrid {
    std::vector<GridAxis> axes;

    size_t total() const;
    std::vector<double> point(size_t flat) const;
    double cell() const;
};

// Real-valued function sampled on a rectangular grid in wall coordinates.
struct SampledFn {
    SpaceGrid grid;
    std::vector<double> values;
    std::vector<std::vector<double>> support;  // generators of the claimed support
    bool w_theta_invariant = false;

    double value_at(size_t flat) const { return values[flat]; }
};

// Box of imaginary spectral nodes λ = i·y (+ optional real shift), midpoint
// offsets keep the nodes off the singular hyperplanes λ_α ∈ ℤ.
struct SpectralGrid {
    std::vector<double> halfwidth;
    std::vector<int> points;
    std::vector<double> offsets;     // per-axis fraction of a cell, default staggered
    std::vector<double> shift;       // real shift μ in root coordinates (may be empty)

    static SpectralGrid cube(int rank, double L, int M);
    size_t total() const;
    std::vector<Cplx> lambda(size_t flat) const;
    double cell() const;
};

// Lebesgue volume scale of a unit cell of wall coordinates: 1/sqrt(det Gram).
double space_measure(const RootSystem& rs);
double spectral_measure(const RootSystem& rs);

// Smooth radial bump supported in the ball B(center, radius) ⊂ 𝔞_Θ.
SampledFn bump(const RootSystem& rs, const ThetaSubset& theta, const SpaceGrid& grid,
               const std::vector<double>& center, double radius, double smoothness);

// ∫ f(H) e^{λ(H)} dH by the trapezoid rule (f vanishes at the grid edge).
Cplx euclidean_fourier(const RootSystem& rs, const SampledFn& f, const std::vector<Cplx>& lambda);

// Θ-spherical transform |W_Θ|^{-1} ∫ f φ_Θ(m;λ,a) Δ(m;a) da over the grid.
// With regularized=true returns e⁻_Θ(m;λ)·𝓕_Θf(λ).
Cplx theta_transform(const RootSystem& rs, const MultiplicityFn& m, const ThetaSubset& theta,
                     const SampledFn& f, const std::vector<Cplx>& lambda,
                     bool regularized = false);

// Classical inversion: k (|W|/|W_Θ|) (−1)^{d(Θ,m)} ∫ g φ_Π(m;−λ) |c⁺|^{-2} dλ,
// with the integrand assembled through the entire D_m kernel.
Cplx invert_classical(const RootSystem& rs, const MultiplicityFn& m, const ThetaSubset& theta,
                      const SpectralGrid& sg, const std::vector<Cplx>& g_values, double k_const,
                      const std::vector<double>& x);

// Wave packet 𝓘g(a) = ∫ g(λ) φ_Π(m;−λ,a) π(λ)e⁺_Π(m;λ) dλ.
Cplx wave_packet(const RootSystem& rs, const MultiplicityFn& m, const SpectralGrid& sg,
                 const std::vector<Cplx>& g_values, const std::vector<double>& x);

// Shifted-contour inversion (Condition A₂, μ ∈ −𝔞*_Θ(m)):
// f(a) = (−1)^d k |W| D_m ∫ g(λ+μ) e^{−(λ+μ)(log a)} dλ / Δ(m;a).
Cplx invert_shifted(const RootSystem& rs, const MultiplicityFn& m, const ThetaSubset& theta,
                    const SpectralGrid& sg, const std::function<Cplx(std::vector<Cplx>)>& g,
                    const std::vector<double>& mu, double k_const, const std::vector<double>& x);

// P^av_Θ g(λ) = Σ_{u∈W^Θ} g(u^{-1}λ).
Cplx pav(const RootSystem& rs, const ThetaSubset& theta,
         const std::function<Cplx(std::vector<Cplx>)>& g, const std::vector<Cplx>& lambda);

struct PWReport {
    std::vector<double> decay_constants;  // fitted C_N, N = 1..4
    std::vector<bool> decay_ok;
    double entire_test = 0.0;  // max relative circle residue over candidate poles
    std::vector<std::vector<double>> support_estimate;
    bool verdict = false;
};

PWReport pw_membership(const RootSystem& rs, const MultiplicityFn& m, const ThetaSubset& theta,
                       const std::function<Cplx(std::vector<Cplx>)>& g,
                       const std::vector<std::vector<double>>& support_C);

// Least-squares scalar matching invert_classical∘theta_transform to the input.
double calibrate_k(const RootSystem& rs, const MultiplicityFn& m, const ThetaSubset& theta,
                   const SampledFn& reference, const SpectralGrid& sg,
                   const std::vector<std::vector<double>>& test_points);

// Grid-wide transform of a sampled function (all spectral nodes).
std::vector<Cplx> transform_on_grid(const RootSystem& rs, const MultiplicityFn& m,
                                    const ThetaSubset& theta, const SampledFn& f,
                                    const SpectralGrid& sg);

struct RoundtripResult {
    double k = 0.0;
    double sup_error = 0.0;
    double peak = 1.0;
    size_t n_test_points = 0;
};

RoundtripResult run_roundtrip(const RootSystem& rs, const MultiplicityFn& m,
                              const ThetaSubset& theta, const SampledFn& f,
                              const SpectralGrid& sg,
                              const std::vector<std::vector<double>>& test_points);

// Canonical desk-scale grids per the verification protocol.
SpaceGrid default_space_grid(const RootSystem& rs, const std::vector<double>& lo,
                             const std::vector<double>& hi);
SpectralGrid default_spectral_grid(const RootSystem& rs);
int default_space_points(int rank);

// Grid nodes in 𝔞_Θ with a wall margin, spread across the grid box.
std::vector<std::vector<double>> default_test_points(const RootSystem& rs,
                                                     const ThetaSubset& theta,
                                                     const MultiplicityFn& m,
                                                     const SpaceGrid& grid, int per_axis);

// Metric radius of the ball whose wall-coordinate box halfwidths are hw_i.
double metric_radius(const RootSystem& rs, const std::vector<double>& hw);

}  // namespace thetasph

#pragma once

#include <vector>

#include "thetasph/cherednik.hpp"

namespace thetasph {

// Functions of the form e^{λz}·N(v)/(1−v²)^p with v = e^{−z}, closed under
// d/dz and division by sinh z.  Scalar is Cplx or GRat.
template <class Scalar>
struct RankOneFn {
    Scalar lambda{0};
    std::vector<Scalar> ncoeffs = {Scalar(1)};  // N(v) = Σ_k ncoeffs[k] v^k
    long p = 0;

    void differentiate() {
        // N ← (λN − vN′)(1−v²) − 2p v²N;  p ← p+1
        std::vector<Scalar> a(ncoeffs.size() + 1, Scalar(0));
        for (size_t k = 0; k < ncoeffs.size(); ++k) {
            a[k] += lambda * ncoeffs[k];
            if (k >= 1) a[k] -= Scalar((long)k) * ncoeffs[k];  // hold: vN' has v^k coeff k·n_k
        }
        // a = λN − vN′ where (vN′)_k = k n_k
        std::vector<Scalar> out(a.size() + 2, Scalar(0));
        for (size_t k = 0; k < a.size(); ++k) {
            out[k] += a[k];
            out[k + 2] -= a[k];
        }
        for (size_t k = 0; k < ncoeffs.size(); ++k) out[k + 2] -= Scalar(2 * p) * ncoeffs[k];
        while (!out.empty() && scalar_is_zero(out.back())) out.pop_back();
        ncoeffs = std::move(out);
        ++p;
    }

    void divide_sinh() {
        // ·2v/(1−v²)
        std::vector<Scalar> out(ncoeffs.size() + 1, Scalar(0));
        for (size_t k = 0; k < ncoeffs.size(); ++k) out[k + 1] = Scalar(2) * ncoeffs[k];
        ncoeffs = std::move(out);
        ++p;
    }

    void scale(const Scalar& c) {
        for (auto& v : ncoeffs) v *= c;
    }
};

Cplx rankone_eval(const RankOneFn<Cplx>& f, Cplx z);
Cplx rankone_eval_dz(RankOneFn<Cplx> f, Cplx z, int order);

// Harish-Chandra series Φ(m;λ,z) (Γ₀ = 1) by m/2-fold application of
// (1/sinh z)d/dz to e^{λz}, normalized by 2^{m/2} Π_{k=0}^{m/2-1}(λ−k).
template <class Scalar>
RankOneFn<Scalar> phi_closed_rank1_fn(long m, const Scalar& lambda) {
    if (m < 2 || m % 2 != 0) throw std::invalid_argument("phi_closed_rank1: m must be even >= 2");
    RankOneFn<Scalar> f;
    f.lambda = lambda;
    Scalar norm(1);
    for (long k = 0; k < m / 2; ++k) {
        f.differentiate();
        f.divide_sinh();
        norm *= Scalar(2) * (lambda - Scalar(k));
    }
    f.scale(Scalar(1) / norm);
    return f;
}

// Takahashi form: φ_Π(m;λ,z)/c⁺_Π(m;ρ(m)) as a pair of RankOneFn's at ±λ.
struct TakahashiForm {
    RankOneFn<Cplx> plus, minus;
};
TakahashiForm takahashi_rank1(long m, Cplx lambda);
Cplx takahashi_eval(const TakahashiForm& t, Cplx z);

// Δ(m;z)·Φ(m;λ,z) = e^{λz} N(v) v^{−m} / norm — regular across z = 0.
Cplx delta_phi_rank1(long m, Cplx lambda, double z);

// Localized rank-one operator algebra: elements num/Δ^k over A1.
LocLaurent loc_dz(const RootSystem& rs, const LocLaurent& f);
// G₊(2;·) = −Δ^{-1} d/dz, independent of the multiplicity.
LocLaurent loc_gplus(const RootSystem& rs, const LocLaurent& f);
// D_m f = Δ(m)·G₊^{m/2} f on any localized input (rank one, constant even m).
LocLaurent loc_Dm_rank1(const RootSystem& rs, long m, const LocLaurent& f);

// Symbol of D_m in rank one: D_m e^{νz} = (Σ_j S_j(z) ν^j) e^{νz}.
std::vector<LaurentPoly> dm_symbol_rank1(const RootSystem& rs, long m);

// Exact conversion for integer (or rational) real λ: e^{λz}N(v)/(1−v²)^p into
// the localized group ring over A1.
LocLaurent rankone_to_loc(const RootSystem& rs, const RankOneFn<GRat>& f);

}  // namespace thetasph

#include "thetasph/rankone.hpp"

#include <cmath>

namespace thetasph {

namespace {

void require_rank_one(const RootSystem& rs) {
    if (rs.rank() != 1) throw std::invalid_argument("rank-one routine called on higher rank");
}

// d/dz direction: pairing e^{cα} ↦ c, i.e. the 𝔞*-vector α/⟨α,α⟩.
RatVec z_direction(const RootSystem& rs) {
    RatVec alpha(1, Rat(1));
    RatVec v(1);
    v[0] = Rat(1) / rs.inner(alpha, alpha);
    return v;
}

}  // namespace

Cplx rankone_eval(const RankOneFn<Cplx>& f, Cplx z) {
    Cplx v = std::exp(-z);
    Cplx n(0.0, 0.0);
    Cplx vk(1.0, 0.0);
    for (const auto& c : f.ncoeffs) {
        n += c * vk;
        vk *= v;
    }
    Cplx denom = std::pow(1.0 - v * v, (double)f.p);
    return std::exp(f.lambda * z) * n / denom;
}

Cplx rankone_eval_dz(RankOneFn<Cplx> f, Cplx z, int order) {
    for (int i = 0; i < order; ++i) f.differentiate();
    return rankone_eval(f, z);
}

TakahashiForm takahashi_rank1(long m, Cplx lambda) {
    if (m < 2 || m % 2 != 0) throw std::invalid_argument("takahashi_rank1: m must be even >= 2");
    TakahashiForm t;
    t.plus.lambda = lambda;
    t.minus.lambda = -lambda;
    Cplx pref(1.0, 0.0);
    for (long k = 0; k < m / 2; ++k) {
        t.plus.differentiate();
        t.plus.divide_sinh();
        t.minus.differentiate();
        t.minus.divide_sinh();
        pref *= Cplx((double)(m / 2 + k)) / (lambda * lambda - Cplx((double)(k * k)));
    }
    // prefactor 1/2^{m/2-1}, not 2^{m/2-1}: forced by the Γ₀ = 1 normalization
    // of the series (the two agree at m = 2); extra ½ splits cosh into e^{±λz}
    pref /= std::pow(2.0, (double)(m / 2 - 1)) * 2.0;
    t.plus.scale(pref);
    t.minus.scale(pref);
    return t;
}

Cplx takahashi_eval(const TakahashiForm& t, Cplx z) {
    return rankone_eval(t.plus, z) + rankone_eval(t.minus, z);
}

Cplx delta_phi_rank1(long m, Cplx lambda, double z) {
    if (m == 0) return std::exp(lambda * z);
    RankOneFn<Cplx> f = phi_closed_rank1_fn<Cplx>(m, lambda);
    // Δ(m;z)Φ = e^{λz} N(v) v^{−m} (1−v²)^{m−p}, with p = m after the chain.
    Cplx v = std::exp(Cplx(-z));
    Cplx n(0.0, 0.0);
    Cplx vk(1.0, 0.0);
    for (const auto& c : f.ncoeffs) {
        n += c * vk;
        vk *= v;
    }
    return std::exp(lambda * z) * n * std::pow(v, (double)-m);
}

LocLaurent loc_dz(const RootSystem& rs, const LocLaurent& f) {
    require_rank_one(rs);
    RatVec v = z_direction(rs);
    if (f.dpow == 0) return LocLaurent{f.num.derivative(rs, v), 0};
    LaurentPoly delta = weyl_denominator(rs);
    LaurentPoly num = f.num.derivative(rs, v) * delta -
                      f.num * delta.derivative(rs, v) * GRat(Rat(f.dpow));
    return LocLaurent{num, f.dpow + 1};
}

LocLaurent loc_gplus(const RootSystem& rs, const LocLaurent& f) {
    LocLaurent d = loc_dz(rs, f);
    LocLaurent out{-d.num, d.dpow + 1};
    out.normalize(rs);
    return out;
}

LocLaurent loc_Dm_rank1(const RootSystem& rs, long m, const LocLaurent& f) {
    require_rank_one(rs);
    if (m < 0 || m % 2 != 0) throw std::invalid_argument("loc_Dm_rank1: m must be even >= 0");
    LocLaurent g = f;
    for (long j = 0; j < m / 2; ++j) g = loc_gplus(rs, g);
    LaurentPoly dm = delta_weight(rs, MultiplicityFn::constant(m));
    LocLaurent out{g.num * dm, g.dpow};
    out.normalize(rs);
    return out;
}

std::vector<LaurentPoly> dm_symbol_rank1(const RootSystem& rs, long m) {
    require_rank_one(rs);
    if (m % 2 != 0 || m < 0) throw std::invalid_argument("dm_symbol_rank1: even m required");
    // state: D e^{νz} = Σ_j C_j(z) ν^j e^{νz}
    std::vector<LocLaurent> C = {LocLaurent{LaurentPoly::constant(1, GRat(1)), 0}};
    for (long step = 0; step < m / 2; ++step) {
        std::vector<LocLaurent> next(C.size() + 1, LocLaurent{LaurentPoly(1), 0});
        for (size_t j = 0; j < C.size() + 1; ++j) {
            LocLaurent acc{LaurentPoly(1), 0};
            if (j < C.size()) acc = loc_dz(rs, C[j]);
            if (j >= 1) {
                LaurentPoly delta = weyl_denominator(rs);
                LocLaurent prev = C[j - 1];
                // bring to the same Δ power before adding
                long d = std::max(acc.dpow, prev.dpow);
                LaurentPoly na = acc.num, nb = prev.num;
                for (long i = acc.dpow; i < d; ++i) na *= delta;
                for (long i = prev.dpow; i < d; ++i) nb *= delta;
                acc = LocLaurent{na + nb, d};
            }
            next[j] = LocLaurent{-acc.num, acc.dpow + 1};  // −Δ^{-1}(C_j' + C_{j-1})
            next[j].normalize(rs);
        }
        C = std::move(next);
    }
    LaurentPoly dm = delta_weight(rs, MultiplicityFn::constant(m));
    std::vector<LaurentPoly> out;
    for (auto& c : C) {
        LocLaurent s{c.num * dm, c.dpow};
        s.normalize(rs);
        if (s.dpow != 0)
            throw std::runtime_error("dm_symbol_rank1: coefficient failed to regularize");
        out.push_back(s.num);
    }
    return out;
}

LocLaurent rankone_to_loc(const RootSystem& rs, const RankOneFn<GRat>& f) {
    require_rank_one(rs);
    if (!f.lambda.is_real()) throw std::invalid_argument("rankone_to_loc: complex λ");
    LaurentPoly num(1);
    for (size_t k = 0; k < f.ncoeffs.size(); ++k) {
        if (f.ncoeffs[k].is_zero()) continue;
        RatVec mu(1);
        mu[0] = f.lambda.re - Rat((long)k) + Rat(f.p);  // e^{λz}·v^k·e^{pz}
        num.add_term(mu, f.ncoeffs[k]);
    }
    LocLaurent out{num, f.p};  // (1−v²)^{−p} = e^{pz}/Δ^p in rank one
    out.normalize(rs);
    return out;
}

}  // namespace thetasph

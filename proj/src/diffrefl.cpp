#include "thetasph/diffrefl.hpp"

#include <stdexcept>

namespace thetasph {

namespace {

LaurentPoly delta_of(const RootSystem& rs) { return weyl_denominator(rs); }

LocLaurent loc_mul(const LocLaurent& a, const LocLaurent& b) {
    return LocLaurent{a.num * b.num, a.dpow + b.dpow};
}

LocLaurent loc_add(const RootSystem& rs, const LocLaurent& a, const LocLaurent& b) {
    LaurentPoly delta = delta_of(rs);
    long d = std::max(a.dpow, b.dpow);
    LaurentPoly na = a.num, nb = b.num;
    for (long i = a.dpow; i < d; ++i) na *= delta;
    for (long i = b.dpow; i < d; ++i) nb *= delta;
    LocLaurent out{na + nb, d};
    if (out.num.is_zero()) out.dpow = 0;
    return out;
}

// ∂_i of num/Δ^d along A_{α_i}.
LocLaurent loc_derivative(const RootSystem& rs, const LocLaurent& a, int i) {
    RatVec ei(rs.rank(), Rat(0));
    ei[i] = 1;
    LaurentPoly delta = delta_of(rs);
    if (a.dpow == 0) return LocLaurent{a.num.derivative(rs, ei), 0};
    LaurentPoly dnum = a.num.derivative(rs, ei) * delta - a.num * delta.derivative(rs, ei) *
                                                              GRat(Rat(a.dpow));
    return LocLaurent{dnum, a.dpow + 1};
}

LocLaurent loc_weyl(const RootSystem& rs, const WeylElement& w, const LocLaurent& a) {
    int eps = rs.sign_of(w);
    LocLaurent out{a.num.weyl_image(w), a.dpow};
    if (eps < 0 && a.dpow % 2 != 0) out.num = -out.num;
    return out;
}

// w applied to the monomial ∂^I as an element of S(𝔞).
SymPoly weyl_on_monomial(const RootSystem& rs, const WeylElement& w, const std::vector<int>& I) {
    SymPoly p = SymPoly::constant(rs.rank(), Rat(1));
    for (int i = 0; i < (int)I.size(); ++i) {
        if (I[i] == 0) continue;
        RatVec ei(rs.rank(), Rat(0));
        ei[i] = 1;
        SymPoly lin = SymPoly::linear(w.apply(ei), Rat(0));
        for (int rep = 0; rep < I[i]; ++rep) p *= lin;
    }
    return p;
}

std::vector<std::vector<int>> sub_multiindices(const std::vector<int>& I) {
    std::vector<std::vector<int>> out = {std::vector<int>(I.size(), 0)};
    for (size_t i = 0; i < I.size(); ++i) {
        std::vector<std::vector<int>> next;
        for (const auto& k : out)
            for (int v = 0; v <= I[i]; ++v) {
                auto kk = k;
                kk[i] = v;
                next.push_back(kk);
            }
        out = std::move(next);
    }
    return out;
}

Rat binom_multi(const std::vector<int>& I, const std::vector<int>& K) {
    auto binom = [](int n, int k) {
        Rat r(1);
        for (int j = 1; j <= k; ++j) r *= rat_frac(n - k + j, j);
        return r;
    };
    Rat r(1);
    for (size_t i = 0; i < I.size(); ++i) r *= binom(I[i], K[i]);
    return r;
}

}  // namespace

int DiffReflOp::weyl_index(const WeylElement& w) const {
    const auto& ws = rs_->weyl();
    for (int i = 0; i < (int)ws.size(); ++i)
        if (ws[i].mat == w.mat) return i;
    throw std::logic_error("weyl element not found");
}

void DiffReflOp::add(const Key& k, const LocLaurent& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(k, c);
    } else {
        it->second = loc_add(*rs_, it->second, c);
        if (it->second.is_zero()) terms_.erase(it);
    }
}

DiffReflOp DiffReflOp::identity(const RootSystem& rs) { return scalar(rs, Rat(1)); }

DiffReflOp DiffReflOp::scalar(const RootSystem& rs, const Rat& c) {
    DiffReflOp op(rs);
    if (c != 0)
        op.terms_[{std::vector<int>(rs.rank(), 0), 0}] =
            LocLaurent{LaurentPoly::constant(rs.rank(), GRat(c)), 0};
    return op;
}

DiffReflOp DiffReflOp::cherednik(const RootSystem& rs, const MultiplicityFn& m, const RatVec& v) {
    DiffReflOp op(rs);
    const std::vector<int> zero(rs.rank(), 0);
    // ∂(A_v)
    for (int i = 0; i < rs.rank(); ++i) {
        if (v[i] == 0) continue;
        std::vector<int> I = zero;
        I[i] = 1;
        op.add({I, 0}, LocLaurent{LaurentPoly::constant(rs.rank(), GRat(v[i])), 0});
    }
    // −ρ(m)(A_v)
    Rat rv = rs.inner(rho(rs, m), v);
    if (rv != 0) op.add({zero, 0}, LocLaurent{LaurentPoly::constant(rs.rank(), GRat(-rv)), 0});
    // Σ m_α α(A_v) (1−e^{−2α})^{−1} ⊗ (1 − r_α);  (1−e^{−2α})^{−1} = e^{Σβ}Π_{β≠α}(1−e^{−2β})/Δ
    RatVec rho1(rs.rank(), Rat(0));
    for (const auto& beta : rs.positive_roots())
        for (int i = 0; i < rs.rank(); ++i) rho1[i] += beta[i];
    for (const auto& alpha : rs.positive_roots()) {
        long ma = m.value(rs, alpha);
        if (ma == 0) continue;
        Rat av = rs.inner(alpha, v);
        if (av == 0) continue;
        LaurentPoly num = LaurentPoly::exponential(rho1, GRat(Rat(ma) * av));
        for (const auto& beta : rs.positive_roots()) {
            if (beta == alpha) continue;
            RatVec m2(rs.rank());
            for (int i = 0; i < rs.rank(); ++i) m2[i] = -2 * beta[i];
            num *= one_minus_exp(m2);
        }
        LocLaurent coeff{num, 1};
        op.add({zero, 0}, coeff);
        // find r_α among the Weyl elements
        WeylElement refl;
        refl.mat.resize(rs.rank());
        for (int j = 0; j < rs.rank(); ++j) {
            RatVec e(rs.rank(), Rat(0));
            e[j] = 1;
            Rat la = rs.inner(e, alpha) / rs.inner(alpha, alpha);
            for (int i = 0; i < rs.rank(); ++i) e[i] -= 2 * la * alpha[i];
            refl.mat[j] = e;
        }
        coeff.num = -coeff.num;
        op.add({zero, op.weyl_index(refl)}, coeff);
    }
    return op;
}

DiffReflOp DiffReflOp::operator+(const DiffReflOp& o) const {
    DiffReflOp out = *this;
    for (const auto& [k, c] : o.terms_) out.add(k, c);
    return out;
}

DiffReflOp DiffReflOp::operator-(const DiffReflOp& o) const {
    DiffReflOp out = *this;
    for (const auto& [k, c] : o.terms_) {
        LocLaurent neg{-c.num, c.dpow};
        out.add(k, neg);
    }
    return out;
}

DiffReflOp DiffReflOp::operator*(const DiffReflOp& o) const {
    const RootSystem& rs = *rs_;
    const auto& ws = rs.weyl();
    DiffReflOp out(rs);
    for (const auto& [ka, ca] : terms_) {
        const auto& [Ia, wa_idx] = ka;
        const WeylElement& wa = ws[wa_idx];
        for (const auto& [kb, cb] : o.terms_) {
            const auto& [Ib, wb_idx] = kb;
            // w_a acting on the right factor
            LocLaurent cb_w = loc_weyl(rs, wa, cb);
            SymPoly mono_w = weyl_on_monomial(rs, wa, Ib);
            WeylElement wab = rs.compose(wa, ws[wb_idx]);
            int wab_idx = out.weyl_index(wab);
            for (const auto& [J, cJ] : mono_w.monomials) {
                // ∂^{Ia} ∘ (cb_w · cJ) = Σ_{K≤Ia} binom(Ia,K) ∂^{Ia−K}(cb_w·cJ) ∘ ∂^{K}
                LocLaurent base{cb_w.num * GRat(cJ), cb_w.dpow};
                for (const auto& K : sub_multiindices(Ia)) {
                    std::vector<int> IminusK(Ia.size());
                    for (size_t i = 0; i < Ia.size(); ++i) IminusK[i] = Ia[i] - K[i];
                    LocLaurent der = base;
                    for (size_t i = 0; i < IminusK.size(); ++i)
                        for (int rep = 0; rep < IminusK[i]; ++rep)
                            der = loc_derivative(rs, der, (int)i);
                    if (der.is_zero()) continue;
                    Rat b = binom_multi(Ia, K);
                    LocLaurent contrib = loc_mul(ca, LocLaurent{der.num * GRat(b), der.dpow});
                    std::vector<int> total(K.size());
                    for (size_t i = 0; i < K.size(); ++i) total[i] = K[i] + J[i];
                    out.add({total, wab_idx}, contrib);
                }
            }
        }
    }
    return out;
}

std::map<std::vector<int>, LocLaurent> DiffReflOp::upsilon() const {
    std::map<std::vector<int>, LocLaurent> out;
    for (const auto& [k, c] : terms_) {
        auto it = out.find(k.first);
        if (it == out.end())
            out.emplace(k.first, c);
        else
            it->second = loc_add(*rs_, it->second, c);
    }
    for (auto it = out.begin(); it != out.end();) {
        if (it->second.is_zero())
            it = out.erase(it);
        else
            ++it;
    }
    return out;
}

LocLaurent DiffReflOp::apply(const LaurentPoly& f) const {
    const RootSystem& rs = *rs_;
    const auto& ws = rs.weyl();
    LocLaurent acc{LaurentPoly(rs.rank()), 0};
    for (const auto& [k, c] : terms_) {
        LaurentPoly g = f.weyl_image(ws[k.second]);
        for (size_t i = 0; i < k.first.size(); ++i) {
            RatVec ei(rs.rank(), Rat(0));
            ei[i] = 1;
            for (int rep = 0; rep < k.first[i]; ++rep) g = g.derivative(rs, ei);
        }
        acc = loc_add(rs, acc, LocLaurent{c.num * g, c.dpow});
    }
    acc.normalize(rs);
    return acc;
}

DqOperator build_Dq(const RootSystem& rs, const MultiplicityFn& m) {
    if (!m.all_even()) throw std::invalid_argument("build_Dq requires even multiplicities");
    DiffReflOp op = DiffReflOp::identity(rs);
    for (const auto& alpha : rs.roots()) {
        long ma = m.value(rs, alpha);
        if (ma == 0) continue;
        Rat norm = rs.inner(alpha, alpha);
        RatVec v(rs.rank());
        for (int i = 0; i < rs.rank(); ++i) v[i] = alpha[i] / norm;  // direction H_α/2
        DiffReflOp t = DiffReflOp::cherednik(rs, m, v);
        for (long k = -ma / 2 + 1; k <= ma / 2 - 1; ++k) {
            op = op * (t - DiffReflOp::scalar(rs, Rat(k)));
        }
    }
    auto coeffs = op.upsilon();
    long kmax = 0;
    for (auto& [I, c] : coeffs) {
        c.normalize(rs);
        kmax = std::max(kmax, c.dpow);
    }
    DqOperator dq;
    dq.delta_power = kmax;
    LaurentPoly delta = weyl_denominator(rs);
    for (auto& [I, c] : coeffs) {
        LaurentPoly num = c.num;
        for (long i = c.dpow; i < kmax; ++i) num *= delta;
        long ord = 0;
        for (int vI : I) ord += vI;
        dq.order = std::max(dq.order, ord);
        dq.coeffs.emplace(I, std::move(num));
    }
    return dq;
}

long dq_expected_order(const RootSystem& rs, const MultiplicityFn& m) {
    long order = 0;
    for (const auto& alpha : rs.roots()) order += m.value(rs, alpha) - 1;
    return order;
}

Cplx dq_principal_symbol(const RootSystem& rs, const MultiplicityFn& m, long delta_power,
                         const std::vector<double>& x, const std::vector<Cplx>& lambda) {
    Cplx prod(1.0, 0.0);
    LaurentPoly delta = weyl_denominator(rs);
    Cplx dval = delta.eval_point(rs, x);
    for (long i = 0; i < delta_power; ++i) prod *= dval;
    for (const auto& alpha : rs.roots()) {
        Cplx la = rs.lambda_alpha(lambda, alpha);
        for (long k = 0; k < m.value(rs, alpha) - 1; ++k) prod *= la;
    }
    return prod;
}

Cplx dq_symbol_from_coeffs(const RootSystem& rs, const DqOperator& dq,
                           const std::vector<double>& x, const std::vector<Cplx>& lambda) {
    // Σ_{|I| = order} coeff_I(x) · ⟨λ-direction products⟩: ∂_i ↦ ⟨λ, α_i⟩.
    Cplx sum(0.0, 0.0);
    for (const auto& [I, coeff] : dq.coeffs) {
        long ord = 0;
        for (int v : I) ord += v;
        if (ord != dq.order) continue;
        Cplx term = coeff.eval_point(rs, x);
        for (size_t i = 0; i < I.size(); ++i) {
            RatVec ei(rs.rank(), Rat(0));
            ei[i] = 1;
            Cplx pairing(0.0, 0.0);
            for (int j = 0; j < rs.rank(); ++j) pairing += rs.gram()[i][j].get_d() * lambda[j];
            for (int rep = 0; rep < I[i]; ++rep) term *= pairing;
        }
        sum += term;
    }
    return sum;
}

Cplx DqOperator::apply_numeric(const RootSystem& rs, const std::vector<double>& x,
                               const std::function<Cplx(const std::vector<int>&)>& derivative)
    const {
    Cplx sum(0.0, 0.0);
    for (const auto& [I, coeff] : coeffs) sum += coeff.eval_point(rs, x) * derivative(I);
    return sum;
}

}  // namespace thetasph

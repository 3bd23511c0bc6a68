#include "thetasph/cherednik.hpp"

#include <stdexcept>

namespace thetasph {

void LocLaurent::normalize(const RootSystem& rs) {
    if (num.is_zero()) {
        dpow = 0;
        return;
    }
    static thread_local std::map<std::string, LaurentPoly> delta_cache;
    auto it = delta_cache.find(rs.name());
    if (it == delta_cache.end()) it = delta_cache.emplace(rs.name(), weyl_denominator(rs)).first;
    const LaurentPoly& delta = it->second;
    while (dpow > 0) {
        auto q = num.divide_exact(delta);
        if (!q) break;
        num = *q;
        --dpow;
    }
}

SymPoly SymPoly::constant(int rank, Rat c) {
    SymPoly p;
    p.rank = rank;
    if (c != 0) p.monomials[std::vector<int>(rank, 0)] = c;
    return p;
}

SymPoly SymPoly::linear(const RatVec& v, Rat c) {
    SymPoly p;
    p.rank = (int)v.size();
    std::vector<int> zero(p.rank, 0);
    if (c != 0) p.monomials[zero] = c;
    for (int i = 0; i < p.rank; ++i) {
        if (v[i] == 0) continue;
        std::vector<int> mi = zero;
        mi[i] = 1;
        p.monomials[mi] = v[i];
    }
    return p;
}

SymPoly SymPoly::operator*(const SymPoly& o) const {
    SymPoly p;
    p.rank = rank ? rank : o.rank;
    for (const auto& [a, ca] : monomials)
        for (const auto& [b, cb] : o.monomials) {
            std::vector<int> s = a;
            for (size_t i = 0; i < b.size(); ++i) s[i] += b[i];
            Rat c = ca * cb;
            auto it = p.monomials.find(s);
            if (it != p.monomials.end()) c += it->second;
            if (c == 0)
                p.monomials.erase(s);
            else
                p.monomials[s] = c;
        }
    return p;
}

SymPoly SymPoly::operator+(const SymPoly& o) const {
    SymPoly p = *this;
    p.rank = rank ? rank : o.rank;
    for (const auto& [b, cb] : o.monomials) {
        Rat c = cb;
        auto it = p.monomials.find(b);
        if (it != p.monomials.end()) c += it->second;
        if (c == 0)
            p.monomials.erase(b);
        else
            p.monomials[b] = c;
    }
    return p;
}

long SymPoly::degree() const {
    long d = 0;
    for (const auto& [mi, c] : monomials) {
        long s = 0;
        for (int v : mi) s += v;
        d = std::max(d, s);
    }
    return d;
}

SymPoly q_poly(const RootSystem& rs, const MultiplicityFn& m) {
    SymPoly p = SymPoly::constant(rs.rank(), Rat(1));
    for (const auto& alpha : rs.positive_roots()) {
        Rat norm = rs.inner(alpha, alpha);
        RatVec v(rs.rank());
        for (int i = 0; i < rs.rank(); ++i) v[i] = alpha[i] / norm;  // H_α/2 = A_{α/⟨α,α⟩}
        p *= SymPoly::linear(v, rat_frac(m.value(rs, alpha), 2));
    }
    return p;
}

SymPoly laplace_poly(const RootSystem& rs) {
    // p_L = Σ_{ij} (G^{-1})_{ij} A_{α_i} A_{α_j}
    const int l = rs.rank();
    std::vector<RatVec> ginv(l, RatVec(2 * l, Rat(0)));
    for (int i = 0; i < l; ++i) {
        for (int j = 0; j < l; ++j) ginv[i][j] = rs.gram()[i][j];
        ginv[i][l + i] = 1;
    }
    for (int col = 0; col < l; ++col) {
        int piv = -1;
        for (int r = col; r < l; ++r)
            if (ginv[r][col] != 0) {
                piv = r;
                break;
            }
        std::swap(ginv[piv], ginv[col]);
        Rat d = ginv[col][col];
        for (auto& v : ginv[col]) v /= d;
        for (int r = 0; r < l; ++r) {
            if (r == col || ginv[r][col] == 0) continue;
            Rat f = ginv[r][col];
            for (int c = 0; c < 2 * l; ++c) ginv[r][c] -= f * ginv[col][c];
        }
    }
    SymPoly p;
    p.rank = l;
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j) {
            Rat c = ginv[i][l + j];
            if (c == 0) continue;
            std::vector<int> mi(l, 0);
            mi[i] += 1;
            mi[j] += 1;
            auto it = p.monomials.find(mi);
            if (it == p.monomials.end())
                p.monomials[mi] = c;
            else {
                it->second += c;
                if (it->second == 0) p.monomials.erase(it);
            }
        }
    return p;
}

LaurentPoly cherednik_apply(const RootSystem& rs, const MultiplicityFn& m, const RatVec& v,
                            const LaurentPoly& f) {
    if (f.is_zero()) return LaurentPoly(rs.rank());
    LaurentPoly out = f.derivative(rs, v);
    RatVec rho_m = rho(rs, m);
    Rat rho_v = rs.inner(rho_m, v);
    if (rho_v != 0) out -= f * GRat(rho_v);
    for (const auto& alpha : rs.positive_roots()) {
        long ma = m.value(rs, alpha);
        if (ma == 0) continue;
        Rat alpha_v = rs.inner(alpha, v);
        if (alpha_v == 0) continue;
        // r_α(μ) = μ − 2⟨μ,α⟩/⟨α,α⟩ α on exponents
        LaurentPoly reflected(rs.rank());
        for (const auto& [mu, c] : f.terms()) {
            Rat la = rs.inner(mu, alpha) / rs.inner(alpha, alpha);
            RatVec img = mu;
            for (int i = 0; i < rs.rank(); ++i) img[i] -= 2 * la * alpha[i];
            reflected.add_term(img, c);
        }
        LaurentPoly diff = f - reflected;
        if (diff.is_zero()) continue;
        RatVec minus_two_alpha(rs.rank());
        for (int i = 0; i < rs.rank(); ++i) minus_two_alpha[i] = -2 * alpha[i];
        auto quotient = diff.divide_exact(one_minus_exp(minus_two_alpha));
        if (!quotient)
            throw std::runtime_error(
                "cherednik_apply: (1 - e^{-2a}) division failed; exponent outside P?");
        out += *quotient * GRat(Rat(ma) * alpha_v);
    }
    return out;
}

LaurentPoly cherednik_poly_apply(const RootSystem& rs, const MultiplicityFn& m, const SymPoly& p,
                                 const LaurentPoly& f) {
    LaurentPoly out(rs.rank());
    for (const auto& [mi, c] : p.monomials) {
        LaurentPoly g = f;
        for (int i = 0; i < (int)mi.size(); ++i) {
            RatVec ei(rs.rank(), Rat(0));
            ei[i] = 1;
            for (int rep = 0; rep < mi[i]; ++rep) g = cherednik_apply(rs, m, ei, g);
        }
        out += g * GRat(c);
    }
    return out;
}

static int shift_sign(const RootSystem& rs) {
    return (int)rs.positive_roots().size() % 2 == 0 ? 1 : -1;
}

LaurentPoly shift2_plus_apply(const RootSystem& rs, const MultiplicityFn& m,
                              const LaurentPoly& f) {
    if (!f.weyl_invariant(rs))
        throw std::invalid_argument("shift2_plus_apply: input not W-invariant");
    LaurentPoly g = cherednik_poly_apply(rs, m, q_poly(rs, m), f);
    auto quotient = g.divide_exact(weyl_denominator(rs));
    if (!quotient) throw std::runtime_error("shift2_plus_apply: Δ-division left a remainder");
    return *quotient * GRat(Rat(shift_sign(rs)));
}

LaurentPoly shift2_minus_apply(const RootSystem& rs, const MultiplicityFn& m_plus_2,
                               const LaurentPoly& f) {
    if (!f.weyl_invariant(rs))
        throw std::invalid_argument("shift2_minus_apply: input not W-invariant");
    MultiplicityFn m = MultiplicityFn::short_long(m_plus_2.short_value() - 2,
                                                  m_plus_2.long_value() - 2);
    if (!m.all_nonneg() || !m.all_even())
        throw std::invalid_argument("shift2_minus_apply: m+2 must be even with values >= 2");
    LaurentPoly g = cherednik_poly_apply(rs, m, q_poly(rs, m), weyl_denominator(rs) * f);
    LaurentPoly sum(rs.rank());
    for (const auto& w : rs.weyl()) sum += g.weyl_image(w);
    return sum * GRat(rat_frac(1, (long)rs.weyl().size()));
}

LaurentPoly D_m_apply(const RootSystem& rs, int k, const LaurentPoly& f) {
    if (k <= 0) throw std::invalid_argument("D_m_apply: k must be positive");
    if (!f.weyl_invariant(rs)) throw std::invalid_argument("D_m_apply: input not W-invariant");
    const LaurentPoly delta = weyl_denominator(rs);
    const GRat sign{Rat(shift_sign(rs))};
    LaurentPoly g = f;
    for (int j = 0; j < k; ++j) {
        MultiplicityFn mj = MultiplicityFn::constant(2 * j);
        LaurentPoly t = cherednik_poly_apply(rs, mj, q_poly(rs, mj), g);
        auto quotient = t.divide_exact(delta);
        if (!quotient)
            throw std::runtime_error("D_m_apply: Δ-division left a remainder (shift step " +
                                     std::to_string(j) + ")");
        g = *quotient * sign;
    }
    return delta_weight(rs, MultiplicityFn::constant(2 * k)) * g;
}

LaurentPoly divide_by_delta(const RootSystem& rs, const LaurentPoly& f, int power) {
    if (power < 1) throw std::invalid_argument("divide_by_delta: power must be >= 1");
    const LaurentPoly delta = weyl_denominator(rs);
    LaurentPoly g = f;
    for (int i = 0; i < power; ++i) {
        auto quotient = g.divide_exact(delta);
        if (!quotient) throw std::runtime_error("divide_by_delta: nonzero remainder");
        g = *quotient;
    }
    return g;
}

GRat pi_eplus_product(const RootSystem& rs, const MultiplicityFn& m,
                      const std::vector<GRat>& lambda) {
    GRat prod{Rat(1)};
    for (const auto& alpha : rs.positive_roots()) {
        GRat la = rs.lambda_alpha(lambda, alpha);
        long half = m.value(rs, alpha) / 2;
        for (long k = 0; k < half; ++k) prod *= GRat(Rat(k * k)) - la * la;
    }
    return prod;
}

}  // namespace thetasph

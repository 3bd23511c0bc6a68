#include "thetasph/laurent.hpp"

#include <cmath>
#include <sstream>

namespace thetasph {

LaurentPoly LaurentPoly::constant(int rank, GRat c) {
    LaurentPoly p(rank);
    if (!c.is_zero()) p.terms_[RatVec(rank, Rat(0))] = std::move(c);
    return p;
}

LaurentPoly LaurentPoly::exponential(const RatVec& mu, GRat c) {
    LaurentPoly p((int)mu.size());
    if (!c.is_zero()) p.terms_[mu] = std::move(c);
    return p;
}

void LaurentPoly::add_term(const RatVec& mu, const GRat& c) {
    if (rank_ == 0) rank_ = (int)mu.size();
    if ((int)mu.size() != rank_) throw std::invalid_argument("LaurentPoly: rank mismatch");
    if (c.is_zero()) return;
    auto it = terms_.find(mu);
    if (it == terms_.end()) {
        terms_.emplace(mu, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

GRat LaurentPoly::coeff(const RatVec& mu) const {
    auto it = terms_.find(mu);
    return it == terms_.end() ? GRat(0) : it->second;
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly p(rank_);
    for (const auto& [mu, c] : terms_) p.terms_[mu] = -c;
    return p;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    if (rank_ == 0) rank_ = o.rank_;
    for (const auto& [mu, c] : o.terms_) add_term(mu, c);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    if (rank_ == 0) rank_ = o.rank_;
    for (const auto& [mu, c] : o.terms_) add_term(mu, -c);
    return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly p(a.rank_ ? a.rank_ : b.rank_);
    for (const auto& [mu, c] : a.terms_) {
        for (const auto& [nu, d] : b.terms_) {
            RatVec sum = mu;
            for (size_t i = 0; i < nu.size(); ++i) sum[i] += nu[i];
            p.add_term(sum, c * d);
        }
    }
    return p;
}

LaurentPoly LaurentPoly::operator*(const GRat& c) const {
    LaurentPoly p(rank_);
    if (c.is_zero()) return p;
    for (const auto& [mu, d] : terms_) p.terms_[mu] = c * d;
    return p;
}

LaurentPoly LaurentPoly::derivative(const RootSystem& rs, const RatVec& direction) const {
    LaurentPoly p(rank_);
    for (const auto& [mu, c] : terms_) {
        Rat pairing = rs.inner(mu, direction);
        if (pairing != 0) p.add_term(mu, c * GRat(pairing));
    }
    return p;
}

LaurentPoly LaurentPoly::weyl_image(const WeylElement& w) const {
    LaurentPoly p(rank_);
    for (const auto& [mu, c] : terms_) p.add_term(w.apply(mu), c);
    return p;
}

bool LaurentPoly::weyl_invariant(const RootSystem& rs) const {
    for (int i = 0; i < rs.rank(); ++i) {
        if (!(weyl_image(rs.simple_reflection(i)) == *this)) return false;
    }
    return true;
}

bool LaurentPoly::weyl_alternating(const RootSystem& rs) const {
    for (int i = 0; i < rs.rank(); ++i) {
        if (!(weyl_image(rs.simple_reflection(i)) == -*this)) return false;
    }
    return true;
}

bool LaurentPoly::exponents_in_lattice(const RootSystem& rs) const {
    for (const auto& [mu, c] : terms_)
        if (!rs.in_weight_lattice(mu)) return false;
    return true;
}

std::optional<LaurentPoly> LaurentPoly::divide_exact(const LaurentPoly& divisor) const {
    if (divisor.is_zero()) throw std::domain_error("division by zero polynomial");
    if (is_zero()) return LaurentPoly(rank_);
    const size_t rank = terms_.begin()->first.size();
    // Rescale exponents to a common integer lattice, then run multivariate
    // division by a single divisor under lex order.
    mpz_class denlcm(1);
    auto scan = [&](const Terms& t) {
        for (const auto& [mu, c] : t)
            for (const auto& v : mu) {
                mpz_class d = v.get_den();
                denlcm = denlcm / gcd(denlcm, d) * d;
            }
    };
    scan(terms_);
    scan(divisor.terms_);
    using Key = std::vector<long>;
    auto to_int = [&](const RatVec& mu) {
        Key k(rank, 0);
        for (size_t i = 0; i < mu.size(); ++i) {
            mpq_class scaled = mu[i] * Rat(denlcm);
            k[i] = (long)scaled.get_num().get_si();
        }
        return k;
    };
    std::map<Key, GRat, std::greater<Key>> f, g;  // lex-descending
    for (const auto& [mu, c] : terms_) f[to_int(mu)] = c;
    for (const auto& [mu, c] : divisor.terms_) g[to_int(mu)] = c;
    const Key glead = g.begin()->first;
    const GRat glc = g.begin()->second;
    // Newton-polytope bound: exact division forces every quotient exponent to
    // stay coordinate-wise above cwmin(f) − cwmin(g).
    Key fmin(rank, 0), gmin(rank, 0);
    auto cwmin = [&](const std::map<Key, GRat, std::greater<Key>>& t, Key& out) {
        out = t.begin()->first;
        for (const auto& [k, c] : t)
            for (size_t i = 0; i < rank; ++i) out[i] = std::min(out[i], k[i]);
    };
    cwmin(f, fmin);
    cwmin(g, gmin);
    std::map<Key, GRat> q;
    long guard = 4 * (long)(terms_.size() + 4) * (long)(divisor.terms_.size() + 4) * 4096;
    while (!f.empty()) {
        if (--guard < 0) return std::nullopt;
        Key flead = f.begin()->first;
        GRat flc = f.begin()->second;
        Key shift(rank);
        for (size_t i = 0; i < rank; ++i) {
            shift[i] = flead[i] - glead[i];
            if (shift[i] < fmin[i] - gmin[i]) return std::nullopt;
        }
        GRat factor = flc / glc;
        q[shift] += factor;
        for (const auto& [k, c] : g) {
            Key tk(rank);
            for (size_t i = 0; i < rank; ++i) tk[i] = k[i] + shift[i];
            auto it = f.find(tk);
            GRat nv = (it == f.end() ? GRat(0) : it->second) - factor * c;
            if (nv.is_zero()) {
                if (it != f.end()) f.erase(it);
            } else {
                f[tk] = nv;
            }
        }
    }
    LaurentPoly result((int)rank);
    Rat scale = Rat(1) / Rat(denlcm);
    for (const auto& [k, c] : q) {
        if (c.is_zero()) continue;
        RatVec mu(rank);
        for (size_t i = 0; i < rank; ++i) mu[i] = Rat((long)k[i]) * scale;
        result.add_term(mu, c);
    }
    if (!(result * divisor == *this)) return std::nullopt;
    return result;
}

Cplx LaurentPoly::eval_point(const RootSystem& rs, const std::vector<double>& x) const {
    Cplx sum(0.0, 0.0);
    for (const auto& [mu, c] : terms_) {
        double e = 0;
        for (size_t i = 0; i < mu.size(); ++i) e += mu[i].get_d() * x[i];
        sum += c.to_complex() * std::exp(e);
    }
    return sum;
}

Cplx LaurentPoly::eval_point(const RootSystem& rs, const std::vector<Cplx>& x) const {
    Cplx sum(0.0, 0.0);
    for (const auto& [mu, c] : terms_) {
        Cplx e(0.0, 0.0);
        for (size_t i = 0; i < mu.size(); ++i) e += mu[i].get_d() * x[i];
        sum += c.to_complex() * std::exp(e);
    }
    return sum;
}

std::string LaurentPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [mu, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")e^[";
        for (size_t i = 0; i < mu.size(); ++i) {
            if (i) os << ",";
            os << mu[i].get_str();
        }
        os << "]";
    }
    return os.str();
}

LaurentPoly one_minus_exp(const RatVec& mu) {
    LaurentPoly p = LaurentPoly::constant((int)mu.size(), GRat(1));
    p.add_term(mu, GRat(-1));
    return p;
}

LaurentPoly exp_minus_exp(const RatVec& alpha) {
    LaurentPoly p = LaurentPoly::exponential(alpha);
    RatVec neg = alpha;
    for (auto& v : neg) v = -v;
    p.add_term(neg, GRat(-1));
    return p;
}

LaurentPoly weyl_denominator(const RootSystem& rs) {
    LaurentPoly p = LaurentPoly::constant(rs.rank(), GRat(1));
    for (const auto& alpha : rs.positive_roots()) p *= exp_minus_exp(alpha);
    return p;
}

}  // namespace thetasph

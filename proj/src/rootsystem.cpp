#include "thetasph/rootsystem.hpp"

#include <map>
#include <set>
#include <sstream>

namespace thetasph {

Family family_from_string(const std::string& s) {
    if (s == "A") return Family::A;
    if (s == "B") return Family::B;
    if (s == "C") return Family::C;
    if (s == "D") return Family::D;
    if (s == "G" || s == "G2") return Family::G2;
    throw std::invalid_argument("unknown root-system family: " + s);
}

std::string family_to_string(Family f) {
    switch (f) {
        case Family::A: return "A";
        case Family::B: return "B";
        case Family::C: return "C";
        case Family::D: return "D";
        case Family::G2: return "G";
    }
    return "?";
}

RatVec WeylElement::apply(const RatVec& coords) const {
    const int l = (int)mat.size();
    RatVec out(l, Rat(0));
    for (int j = 0; j < l; ++j) {
        if (coords[j] == 0) continue;
        for (int i = 0; i < l; ++i) out[i] += mat[j][i] * coords[j];
    }
    return out;
}

template <class S>
static std::vector<S> apply_generic(const std::vector<RatVec>& mat, const std::vector<S>& coords) {
    const int l = (int)mat.size();
    std::vector<S> out(l, S(0));
    for (int j = 0; j < l; ++j)
        for (int i = 0; i < l; ++i) out[i] += scalar_cast(mat[j][i], (S*)nullptr) * coords[j];
    return out;
}

std::vector<Cplx> WeylElement::apply(const std::vector<Cplx>& coords) const {
    return apply_generic(mat, coords);
}
std::vector<GRat> WeylElement::apply(const std::vector<GRat>& coords) const {
    return apply_generic(mat, coords);
}

static std::vector<std::vector<Rat>> make_gram(Family f, int l) {
    std::vector<std::vector<Rat>> g(l, std::vector<Rat>(l, Rat(0)));
    auto chain = [&](int upto) {
        for (int i = 0; i < upto; ++i) g[i][i] = 2;
        for (int i = 0; i + 1 < upto; ++i) g[i][i + 1] = g[i + 1][i] = -1;
    };
    switch (f) {
        case Family::A:
            chain(l);
            break;
        case Family::B:
            chain(l - 1);
            g[l - 1][l - 1] = 1;
            if (l >= 2) g[l - 2][l - 1] = g[l - 1][l - 2] = -1;
            break;
        case Family::C:
            chain(l - 1);
            g[l - 1][l - 1] = 4;
            if (l >= 2) g[l - 2][l - 1] = g[l - 1][l - 2] = -2;
            break;
        case Family::D:
            chain(l - 1);
            g[l - 1][l - 1] = 2;
            if (l >= 3) g[l - 3][l - 1] = g[l - 1][l - 3] = -1;
            break;
        case Family::G2:
            g = {{Rat(2), Rat(-3)}, {Rat(-3), Rat(6)}};
            break;
    }
    return g;
}

RootSystem RootSystem::build(Family family, int rank) {
    bool ok = false;
    switch (family) {
        case Family::A: ok = rank >= 1; break;
        case Family::B: ok = rank >= 2; break;
        case Family::C: ok = rank >= 2; break;
        case Family::D: ok = rank >= 3; break;
        case Family::G2: ok = rank == 2; break;
    }
    if (!ok)
        throw std::invalid_argument("inadmissible (family, rank): " + family_to_string(family) +
                                    std::to_string(rank));

    RootSystem rs;
    rs.family_ = family;
    rs.rank_ = rank;
    rs.gram_ = make_gram(family, rank);

    // Close the simple roots under the simple reflections.
    std::set<RatVec> closure;
    std::vector<RatVec> queue;
    for (int i = 0; i < rank; ++i) {
        RatVec e(rank, Rat(0));
        e[i] = 1;
        closure.insert(e);
        queue.push_back(e);
    }
    auto reflect = [&](int i, const RatVec& c) {
        RatVec out = c;
        Rat pairing(0);
        for (int j = 0; j < rank; ++j) pairing += rs.gram_[i][j] * c[j];
        out[i] -= 2 * pairing / rs.gram_[i][i];
        return out;
    };
    while (!queue.empty()) {
        RatVec c = queue.back();
        queue.pop_back();
        for (int i = 0; i < rank; ++i) {
            RatVec r = reflect(i, c);
            if (closure.insert(r).second) queue.push_back(r);
        }
    }
    for (const auto& c : closure) rs.roots_.push_back(c);
    for (const auto& c : rs.roots_) {
        bool pos = true;
        for (const auto& v : c)
            if (v < 0) pos = false;
        if (pos) rs.positive_.push_back(c);
    }
    std::sort(rs.positive_.begin(), rs.positive_.end());
    return rs;
}

RootSystem RootSystem::build(const std::string& name) {
    if (name.empty()) throw std::invalid_argument("empty root-system name");
    Family f = family_from_string(name.substr(0, 1));
    int rank = f == Family::G2 && name.size() == 1 ? 2 : std::stoi(name.substr(1));
    return build(f, rank);
}

std::string RootSystem::name() const { return family_to_string(family_) + std::to_string(rank_); }

Rat RootSystem::inner(const RatVec& a, const RatVec& b) const {
    Rat s(0);
    for (int i = 0; i < rank_; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < rank_; ++j) s += a[i] * gram_[i][j] * b[j];
    }
    return s;
}

template <class S>
static S inner_generic(const std::vector<std::vector<Rat>>& g, const std::vector<S>& a,
                       const std::vector<S>& b) {
    S s(0);
    const int l = (int)g.size();
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j) s += a[i] * scalar_cast(g[i][j], (S*)nullptr) * b[j];
    return s;
}

Cplx RootSystem::inner(const std::vector<Cplx>& a, const std::vector<Cplx>& b) const {
    return inner_generic(gram_, a, b);
}
GRat RootSystem::inner(const std::vector<GRat>& a, const std::vector<GRat>& b) const {
    return inner_generic(gram_, a, b);
}

Rat RootSystem::lambda_alpha(const RatVec& lambda, const RatVec& alpha) const {
    if (!is_root(alpha)) throw std::invalid_argument("lambda_alpha: not a root");
    return inner(lambda, alpha) / inner(alpha, alpha);
}

template <class S>
static S lambda_alpha_generic(const RootSystem& rs, const std::vector<S>& lambda,
                              const RatVec& alpha) {
    if (!rs.is_root(alpha)) throw std::invalid_argument("lambda_alpha: not a root");
    S s(0);
    const auto& g = rs.gram();
    const int l = rs.rank();
    for (int i = 0; i < l; ++i) {
        Rat gi(0);
        for (int j = 0; j < l; ++j) gi += g[i][j] * alpha[j];
        s += lambda[i] * scalar_cast(gi, (S*)nullptr);
    }
    return s / scalar_cast(rs.inner(alpha, alpha), (S*)nullptr);
}

Cplx RootSystem::lambda_alpha(const std::vector<Cplx>& lambda, const RatVec& alpha) const {
    return lambda_alpha_generic(*this, lambda, alpha);
}
GRat RootSystem::lambda_alpha(const std::vector<GRat>& lambda, const RatVec& alpha) const {
    return lambda_alpha_generic(*this, lambda, alpha);
}

Rat RootSystem::pair_point(const RatVec& functional, const RatVec& x) const {
    Rat s(0);
    for (int i = 0; i < rank_; ++i) s += functional[i] * x[i];
    return s;
}

double RootSystem::pair_point(const RatVec& functional, const std::vector<double>& x) const {
    double s = 0;
    for (int i = 0; i < rank_; ++i) s += functional[i].get_d() * x[i];
    return s;
}

bool RootSystem::is_root(const RatVec& coords) const {
    return std::find(roots_.begin(), roots_.end(), coords) != roots_.end();
}

bool RootSystem::is_positive_root(const RatVec& coords) const {
    return std::find(positive_.begin(), positive_.end(), coords) != positive_.end();
}

int RootSystem::length_of(const std::vector<RatVec>& mat) const {
    WeylElement w;
    w.mat = mat;
    int inv = 0;
    for (const auto& alpha : positive_) {
        RatVec im = w.apply(alpha);
        bool neg = true;
        for (const auto& v : im)
            if (v > 0) neg = false;
        if (neg) ++inv;
    }
    return inv;
}

WeylElement RootSystem::simple_reflection(int i) const {
    WeylElement w;
    w.mat.assign(rank_, RatVec(rank_, Rat(0)));
    for (int j = 0; j < rank_; ++j) {
        RatVec e(rank_, Rat(0));
        e[j] = 1;
        Rat pairing = gram_[i][j];
        e[i] -= 2 * pairing / gram_[i][i];
        for (int k = 0; k < rank_; ++k) w.mat[j][k] = e[k];
    }
    w.word = {i};
    w.length = 1;
    return w;
}

WeylElement RootSystem::compose(const WeylElement& a, const WeylElement& b) const {
    // (a∘b)(α_j) = a(b(α_j))
    WeylElement w;
    w.mat.resize(rank_);
    for (int j = 0; j < rank_; ++j) w.mat[j] = a.apply(b.mat[j]);
    w.word = a.word;
    w.word.insert(w.word.end(), b.word.begin(), b.word.end());
    w.length = length_of(w.mat);
    return w;
}

WeylElement RootSystem::inverse(const WeylElement& w) const {
    WeylElement inv;
    inv.mat.assign(rank_, RatVec(rank_, Rat(0)));
    // inverse of the rational matrix by Gauss-Jordan
    std::vector<RatVec> m(rank_, RatVec(2 * rank_, Rat(0)));
    for (int i = 0; i < rank_; ++i)
        for (int j = 0; j < rank_; ++j) m[i][j] = w.mat[j][i];  // row-major copy
    for (int i = 0; i < rank_; ++i) m[i][rank_ + i] = 1;
    for (int col = 0; col < rank_; ++col) {
        int piv = -1;
        for (int r = col; r < rank_; ++r)
            if (m[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) throw std::runtime_error("singular Weyl matrix");
        std::swap(m[piv], m[col]);
        Rat d = m[col][col];
        for (auto& v : m[col]) v /= d;
        for (int r = 0; r < rank_; ++r) {
            if (r == col || m[r][col] == 0) continue;
            Rat f = m[r][col];
            for (int c = 0; c < 2 * rank_; ++c) m[r][c] -= f * m[col][c];
        }
    }
    for (int j = 0; j < rank_; ++j)
        for (int i = 0; i < rank_; ++i) inv.mat[j][i] = m[i][rank_ + j];
    inv.length = length_of(inv.mat);
    std::vector<int> word(w.word.rbegin(), w.word.rend());
    inv.word = word;
    return inv;
}

const WeylElement& RootSystem::identity() const { return weyl().front(); }

const std::vector<WeylElement>& RootSystem::weyl() const {
    if (!weyl_.empty()) return weyl_;
    std::map<std::vector<RatVec>, WeylElement> seen;
    WeylElement id;
    id.mat.assign(rank_, RatVec(rank_, Rat(0)));
    for (int i = 0; i < rank_; ++i) id.mat[i][i] = 1;
    id.length = 0;
    seen[id.mat] = id;
    std::vector<WeylElement> queue = {id};
    std::vector<WeylElement> gens;
    for (int i = 0; i < rank_; ++i) gens.push_back(simple_reflection(i));
    while (!queue.empty()) {
        WeylElement w = queue.back();
        queue.pop_back();
        for (int i = 0; i < rank_; ++i) {
            WeylElement next = compose(w, gens[i]);
            if (next.length != (int)w.length + 1) continue;  // keep words reduced
            next.word = w.word;
            next.word.push_back(i);
            if (seen.emplace(next.mat, next).second) {
                queue.push_back(next);
                if ((int)seen.size() > weyl_cap_)
                    throw std::runtime_error("Weyl group order exceeds cap");
            }
        }
    }
    for (auto& [mat, w] : seen) weyl_.push_back(w);
    std::sort(weyl_.begin(), weyl_.end(), [](const WeylElement& a, const WeylElement& b) {
        if (a.length != b.length) return a.length < b.length;
        return a.word < b.word;
    });
    return weyl_;
}

RatVec RootSystem::apply_to_point(const WeylElement& w, const RatVec& x) const {
    // x_i(wH) = (w^{-1}α_i)(H)
    WeylElement winv = inverse(w);
    RatVec out(rank_, Rat(0));
    for (int i = 0; i < rank_; ++i) {
        RatVec e(rank_, Rat(0));
        e[i] = 1;
        RatVec back = winv.apply(e);
        for (int j = 0; j < rank_; ++j) out[i] += back[j] * x[j];
    }
    return out;
}

std::vector<double> RootSystem::apply_to_point(const WeylElement& w,
                                               const std::vector<double>& x) const {
    WeylElement winv = inverse(w);
    std::vector<double> out(rank_, 0.0);
    for (int i = 0; i < rank_; ++i) {
        RatVec e(rank_, Rat(0));
        e[i] = 1;
        RatVec back = winv.apply(e);
        for (int j = 0; j < rank_; ++j) out[i] += back[j].get_d() * x[j];
    }
    return out;
}

bool RootSystem::in_weight_lattice(const RatVec& lambda) const {
    for (const auto& alpha : positive_) {
        Rat la = inner(lambda, alpha) / inner(alpha, alpha);
        if (la.get_den() != 1) return false;
    }
    return true;
}

ThetaSubset ThetaSubset::make(const RootSystem& rs, std::vector<int> indices) {
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    for (int i : indices)
        if (i < 0 || i >= rs.rank()) throw std::invalid_argument("theta index out of range");
    ThetaSubset t;
    t.indices = indices;
    for (const auto& alpha : rs.positive_roots())
        if (t.in_theta_span(alpha)) t.theta_positive.push_back(alpha);
    // W_Θ by closure over the selected simple reflections.
    std::map<std::vector<RatVec>, WeylElement> seen;
    WeylElement id = rs.weyl().front();
    seen[id.mat] = id;
    std::vector<WeylElement> queue = {id};
    while (!queue.empty()) {
        WeylElement w = queue.back();
        queue.pop_back();
        for (int i : indices) {
            WeylElement next = rs.compose(w, rs.simple_reflection(i));
            if (seen.emplace(next.mat, next).second) queue.push_back(next);
        }
    }
    for (auto& [mat, w] : seen) t.theta_weyl.push_back(w);
    std::sort(t.theta_weyl.begin(), t.theta_weyl.end(),
              [](const WeylElement& a, const WeylElement& b) {
                  if (a.length != b.length) return a.length < b.length;
                  return a.word < b.word;
              });
    return t;
}

ThetaSubset ThetaSubset::full(const RootSystem& rs) {
    std::vector<int> all(rs.rank());
    for (int i = 0; i < rs.rank(); ++i) all[i] = i;
    return make(rs, all);
}

ThetaSubset ThetaSubset::empty(const RootSystem& rs) { return make(rs, {}); }

ThetaSubset ThetaSubset::parse(const RootSystem& rs, const std::string& spec) {
    if (spec == "Pi" || spec == "pi" || spec == "full") return full(rs);
    if (spec == "empty" || spec == "none" || spec.empty()) return empty(rs);
    std::vector<int> idx;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        int i = std::stoi(tok);
        if (i < 1 || i > rs.rank()) throw std::invalid_argument("theta index out of range: " + tok);
        idx.push_back(i - 1);
    }
    return make(rs, idx);
}

bool ThetaSubset::in_theta_span(const RatVec& root) const {
    for (int i = 0; i < (int)root.size(); ++i)
        if (root[i] != 0 && !contains(i)) return false;
    return true;
}

std::string ThetaSubset::str() const {
    if (indices.empty()) return "empty";
    std::string s;
    for (size_t k = 0; k < indices.size(); ++k) {
        if (k) s += ",";
        s += std::to_string(indices[k] + 1);
    }
    return s;
}

std::vector<RatVec> positive_complement(const RootSystem& rs, const ThetaSubset& theta) {
    std::vector<RatVec> out;
    for (const auto& alpha : rs.positive_roots())
        if (!theta.in_theta_span(alpha)) out.push_back(alpha);
    return out;
}

std::vector<WeylElement> min_coset_reps(const RootSystem& rs, const ThetaSubset& theta) {
    std::vector<WeylElement> reps;
    for (const auto& w : rs.weyl()) {
        bool minimal = true;
        for (int i : theta.indices) {
            WeylElement wr = rs.compose(w, rs.simple_reflection(i));
            if (wr.length <= w.length) {
                minimal = false;
                break;
            }
        }
        if (minimal) reps.push_back(w);
    }
    return reps;
}

bool cone_membership(const RootSystem& rs, const RatVec& x, ConeKind kind,
                     const ThetaSubset& theta, const ConeParams* params) {
    switch (kind) {
        case ConeKind::a_plus: {
            for (const auto& alpha : rs.positive_roots())
                if (rs.pair_point(alpha, x) <= 0) return false;
            return true;
        }
        case ConeKind::a_theta: {
            for (const auto& alpha : positive_complement(rs, theta))
                if (rs.pair_point(alpha, x) <= 0) return false;
            return true;
        }
        case ConeKind::C_theta: {
            for (int i = 0; i < rs.rank(); ++i) {
                Rat v = x[i];  // α_i(H)
                if (theta.contains(i)) {
                    if (v != 0) return false;
                } else {
                    if (v <= 0) return false;
                }
            }
            return true;
        }
        case ConeKind::C_rX0: {
            if (!params || params->r <= 0)
                throw std::invalid_argument("C_rX0 requires r > 0 and X0");
            if (!cone_membership(rs, params->X0, ConeKind::C_theta, theta))
                throw std::invalid_argument("C_rX0 requires X0 in C_Θ");
            RatVec shifted = x;
            for (int i = 0; i < rs.rank(); ++i) shifted[i] -= params->r * params->X0[i];
            for (const auto& alpha : positive_complement(rs, theta))
                if (rs.pair_point(alpha, shifted) < 0) return false;
            return true;
        }
    }
    return false;
}

// Phase-one simplex over exact rationals for {A c = b, c ≥ 0}.
bool rational_cone_feasible(const std::vector<RatVec>& generators_cols, const RatVec& target) {
    const int m = (int)target.size();
    const int n = (int)generators_cols.size();
    // rows: m equations; variables: n original + m artificials
    std::vector<RatVec> T(m, RatVec(n + m + 1, Rat(0)));
    for (int i = 0; i < m; ++i) {
        Rat b = target[i];
        int sign = b >= 0 ? 1 : -1;
        for (int j = 0; j < n; ++j) T[i][j] = Rat(sign) * generators_cols[j][i];
        T[i][n + i] = 1;
        T[i][n + m] = Rat(sign) * b;
    }
    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) basis[i] = n + i;
    // objective: minimize sum of artificials
    RatVec obj(n + m + 1, Rat(0));
    for (int i = 0; i < m; ++i)
        for (int c = 0; c <= n + m; ++c) obj[c] += T[i][c];
    int guard = 0;
    while (true) {
        if (++guard > 10000) throw std::runtime_error("simplex: iteration guard tripped");
        int enter = -1;
        for (int j = 0; j < n; ++j)
            if (obj[j] > 0) {
                enter = j;
                break;
            }
        if (enter < 0) break;
        int leave = -1;
        Rat best(0);
        for (int i = 0; i < m; ++i) {
            if (T[i][enter] <= 0) continue;
            Rat ratio = T[i][n + m] / T[i][enter];
            if (leave < 0 || ratio < best) {
                best = ratio;
                leave = i;
            }
        }
        if (leave < 0) return false;  // unbounded; cannot happen for phase one
        Rat piv = T[leave][enter];
        for (auto& v : T[leave]) v /= piv;
        for (int i = 0; i < m; ++i) {
            if (i == leave || T[i][enter] == 0) continue;
            Rat f = T[i][enter];
            for (int c = 0; c <= n + m; ++c) T[i][c] -= f * T[leave][c];
        }
        Rat f = obj[enter];
        for (int c = 0; c <= n + m; ++c) obj[c] -= f * T[leave][c];
        basis[leave] = enter;
    }
    return obj[n + m] == 0;
}

bool dual_cone_membership(const RootSystem& rs, const RatVec& lambda, const ThetaSubset& theta,
                          const std::vector<std::pair<RatVec, Rat>>& m_half_thresholds,
                          bool with_m) {
    auto complement = positive_complement(rs, theta);
    if (!rational_cone_feasible(complement, lambda)) return false;
    if (with_m) {
        for (const auto& [alpha, half_m] : m_half_thresholds) {
            if (rs.lambda_alpha(lambda, alpha) < half_m) return false;
        }
    }
    return true;
}

Rat support_function(const RootSystem& rs, const ConvexBody& body, const RatVec& lambda) {
    if (body.generators.empty()) throw std::invalid_argument("support function of empty set");
    Rat best;
    bool first = true;
    for (const auto& x : body.generators) {
        Rat v = rs.pair_point(lambda, x);
        if (first || v > best) {
            best = v;
            first = false;
        }
    }
    return best;
}

double support_function(const RootSystem& rs, const std::vector<std::vector<double>>& generators,
                        const std::vector<double>& lambda) {
    if (generators.empty()) throw std::invalid_argument("support function of empty set");
    double best = -1e300;
    for (const auto& x : generators) {
        double v = 0;
        for (int i = 0; i < rs.rank(); ++i) v += lambda[i] * x[i];
        best = std::max(best, v);
    }
    return best;
}

}  // namespace thetasph

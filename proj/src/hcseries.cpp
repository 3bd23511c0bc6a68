#include "thetasph/hcseries.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace thetasph {

std::vector<std::vector<int>> lattice_shells(int rank, int N) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(rank, 0);
    // enumerate all ν ∈ ℕ^rank with Σν ≤ N, then order by height
    std::function<void(int, int)> rec = [&](int pos, int remaining) {
        if (pos == rank) {
            out.push_back(cur);
            return;
        }
        for (int v = 0; v <= remaining; ++v) {
            cur[pos] = v;
            rec(pos + 1, remaining - v);
        }
        cur[pos] = 0;
    };
    rec(0, N);
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return height_of(a) < height_of(b);
    });
    return out;
}

namespace {

RatVec nu_to_ratvec(const std::vector<int>& nu) {
    RatVec v(nu.size());
    for (size_t i = 0; i < nu.size(); ++i) v[i] = nu[i];
    return v;
}

template <class S>
S pair_lambda(const RootSystem& rs, const std::vector<S>& lambda, const RatVec& w) {
    // ⟨λ, w⟩ with w rational
    S s(0);
    for (int i = 0; i < rs.rank(); ++i) {
        Rat gi(0);
        for (int j = 0; j < rs.rank(); ++j) gi += rs.gram()[i][j] * w[j];
        s += lambda[i] * scalar_cast(gi, (S*)nullptr);
    }
    return s;
}

// Core Γ recursion, shared by the exact and floating instantiations.
template <class S>
GammaTable<S> gamma_core(const RootSystem& rs, const MultiplicityFn& m,
                         const std::vector<S>& lambda, int N,
                         const std::function<void(const std::vector<int>&, const S&)>& check) {
    GammaTable<S> table;
    table.N = N;
    RatVec rho_m = rho(rs, m);
    auto shells = lattice_shells(rs.rank(), N);
    for (const auto& nu : shells) {
        if (height_of(nu) == 0) {
            table.entries[nu] = S(1);
            continue;
        }
        RatVec mu = nu_to_ratvec(nu);
        for (auto& v : mu) v *= 2;
        Rat mu_mu = rs.inner(mu, mu);
        S denom = scalar_cast(mu_mu, (S*)nullptr) - S(2) * pair_lambda(rs, lambda, mu);
        check(nu, denom);
        S rhs(0);
        for (const auto& alpha : rs.positive_roots()) {
            long ma = m.value(rs, alpha);
            if (ma == 0) continue;
            S alpha_lambda = pair_lambda(rs, lambda, alpha);
            for (int k = 1;; ++k) {
                std::vector<int> prev(nu.size());
                bool ok = true;
                for (size_t i = 0; i < nu.size(); ++i) {
                    Rat c = Rat(nu[i]) - Rat(k) * alpha[i];
                    if (c < 0 || c.get_den() != 1) {
                        ok = false;
                        break;
                    }
                    prev[i] = (int)c.get_num().get_si();
                }
                if (!ok) break;
                // ⟨μ + ρ(m) − 2kα − λ, α⟩
                RatVec shift = mu;
                for (int i = 0; i < rs.rank(); ++i) shift[i] += rho_m[i] - Rat(2 * k) * alpha[i];
                Rat rational_part = rs.inner(shift, alpha);
                S factor = scalar_cast(rational_part, (S*)nullptr) - alpha_lambda;
                rhs += S(2 * ma) * table.entries.at(prev) * factor;
            }
        }
        table.entries[nu] = rhs / denom;
    }
    return table;
}

}  // namespace

double singular_distance(const RootSystem& rs, const std::vector<Cplx>& lambda, int N) {
    double best = 1e300;
    for (const auto& nu : lattice_shells(rs.rank(), N)) {
        if (height_of(nu) == 0) continue;
        RatVec mu = nu_to_ratvec(nu);
        for (auto& v : mu) v *= 2;
        Cplx denom = Cplx(rs.inner(mu, mu).get_d()) - 2.0 * pair_lambda(rs, lambda, mu);
        double mu_norm = std::sqrt(rs.inner(mu, mu).get_d());
        best = std::min(best, std::abs(denom) / mu_norm);
    }
    for (const auto& alpha : rs.positive_roots()) {
        Cplx la = rs.lambda_alpha(lambda, alpha);
        for (int n = 1; n <= N; ++n) best = std::min(best, std::abs(la - Cplx((double)n)));
    }
    return best;
}

GammaTable<Cplx> gamma_coeffs(const RootSystem& rs, const MultiplicityFn& m,
                              const std::vector<Cplx>& lambda, int N, double eps_sing) {
    return gamma_core<Cplx>(rs, m, lambda, N, [&](const std::vector<int>& nu, const Cplx& d) {
        RatVec mu = nu_to_ratvec(nu);
        for (auto& v : mu) v *= 2;
        double mu_norm = std::sqrt(rs.inner(mu, mu).get_d());
        if (std::abs(d) / mu_norm <= eps_sing)
            throw SingularSpectral(nu, "spectral parameter on/near hyperplane <mu,mu-2l>=0");
    });
}

GammaTable<GRat> gamma_coeffs_exact(const RootSystem& rs, const MultiplicityFn& m,
                                    const std::vector<GRat>& lambda, int N) {
    return gamma_core<GRat>(rs, m, lambda, N, [&](const std::vector<int>& nu, const GRat& d) {
        if (d.is_zero()) throw SingularSpectral(nu, "spectral parameter on hyperplane <mu,mu-2l>=0");
    });
}

PhiValue phi_series(const RootSystem& rs, const MultiplicityFn& m,
                    const std::vector<Cplx>& lambda, const std::vector<double>& x, int N,
                    double eps_sing) {
    for (double xi : x)
        if (xi <= 0) throw NotInChamber("phi_series: point not in the open positive chamber");
    GammaTable<Cplx> table = gamma_coeffs(rs, m, lambda, N, eps_sing);
    RatVec rho_m = rho(rs, m);
    Cplx lead(0.0, 0.0);
    for (int i = 0; i < rs.rank(); ++i) lead += lambda[i] * x[i];
    double rho_x = 0.0;
    for (int i = 0; i < rs.rank(); ++i) rho_x += rho_m[i].get_d() * x[i];
    Cplx sum(0.0, 0.0);
    double shell_last = 0.0, shell_prev = 0.0;
    int current_h = 0;
    for (const auto& [nu, g] : table.entries) {
        double nux = 0.0;
        for (size_t i = 0; i < nu.size(); ++i) nux += 2.0 * nu[i] * x[i];
        Cplx term = g * std::exp(-nux);
        int h = height_of(nu);
        if (h != current_h) {
            shell_prev = shell_last;
            shell_last = 0.0;
            current_h = h;
        }
        shell_last = std::max(shell_last, std::abs(term));
        sum += term;
    }
    PhiValue out;
    out.value = std::exp(lead - rho_x) * sum;
    double ratio = shell_prev > 0 ? std::min(0.999, shell_last / shell_prev) : 0.5;
    out.tail_bound = std::abs(std::exp(lead - rho_x)) * shell_last * ratio / (1.0 - ratio);
    return out;
}

std::map<std::vector<int>, Rat> b_coeffs(const RootSystem& rs, const MultiplicityFn& m, int N) {
    std::map<std::vector<int>, Rat> poly;
    poly[std::vector<int>(rs.rank(), 0)] = 1;
    for (const auto& alpha : rs.positive_roots()) {
        long half = m.value(rs, alpha) / 2;
        std::vector<int> a_idx(rs.rank());
        for (int i = 0; i < rs.rank(); ++i) a_idx[i] = (int)alpha[i].get_num().get_si();
        for (long rep = 0; rep < half; ++rep) {
            std::map<std::vector<int>, Rat> next;
            for (const auto& [nu, c] : poly) {
                next[nu] += c;
                std::vector<int> shifted = nu;
                for (int i = 0; i < rs.rank(); ++i) shifted[i] += a_idx[i];
                if (height_of(shifted) <= N) next[shifted] -= c;
            }
            for (auto it = next.begin(); it != next.end();) {
                if (it->second == 0)
                    it = next.erase(it);
                else
                    ++it;
            }
            poly = std::move(next);
        }
    }
    return poly;
}

std::map<std::vector<int>, Cplx> a_coeffs(const RootSystem& rs, const MultiplicityFn& m,
                                          const std::vector<Cplx>& lambda, int N, double rel_tol,
                                          double eps_sing) {
    // Route 1: recursion.  The recursion factor is m_α(m_α + 2m_{2α} − 2)⟨α,α⟩;
    // Σ reduced means m_{2α} = 0 throughout.
    std::map<std::vector<int>, Cplx> rec;
    auto shells = lattice_shells(rs.rank(), N);
    for (const auto& nu : shells) {
        if (height_of(nu) == 0) {
            rec[nu] = Cplx(1.0, 0.0);
            continue;
        }
        RatVec mu = nu_to_ratvec(nu);
        for (auto& v : mu) v *= 2;
        Cplx denom = Cplx(rs.inner(mu, mu).get_d()) - 2.0 * pair_lambda(rs, lambda, mu);
        double mu_norm = std::sqrt(rs.inner(mu, mu).get_d());
        if (std::abs(denom) / mu_norm <= eps_sing)
            throw SingularSpectral(nu, "a_coeffs: singular spectral parameter");
        Cplx rhs(0.0, 0.0);
        for (const auto& alpha : rs.positive_roots()) {
            long ma = m.value(rs, alpha);
            double factor = (double)ma * (double)(ma - 2) * rs.inner(alpha, alpha).get_d();
            if (factor == 0.0) continue;
            for (int k = 1;; ++k) {
                std::vector<int> prev(nu.size());
                bool ok = true;
                for (size_t i = 0; i < nu.size(); ++i) {
                    Rat c = Rat(nu[i]) - Rat(k) * alpha[i];
                    if (c < 0 || c.get_den() != 1) {
                        ok = false;
                        break;
                    }
                    prev[i] = (int)c.get_num().get_si();
                }
                if (!ok) break;
                rhs += factor * (double)k * rec.at(prev);
            }
        }
        rec[nu] = rhs / denom;
    }
    // Route 2: convolution a = b * Γ.
    GammaTable<Cplx> gamma = gamma_coeffs(rs, m, lambda, N, eps_sing);
    auto b = b_coeffs(rs, m, N);
    double scale = 0.0;
    for (const auto& [nu, v] : rec) scale = std::max(scale, std::abs(v));
    for (const auto& nu : shells) {
        Cplx conv(0.0, 0.0);
        for (const auto& [kappa, bc] : b) {
            std::vector<int> eta(nu.size());
            bool ok = true;
            for (size_t i = 0; i < nu.size(); ++i) {
                eta[i] = nu[i] - kappa[i];
                if (eta[i] < 0) ok = false;
            }
            if (!ok) continue;
            conv += Cplx(bc.get_d()) * gamma.entries.at(eta);
        }
        if (std::abs(conv - rec.at(nu)) > rel_tol * std::max(1.0, scale))
            throw RouteMismatch("a_coeffs: recursion and convolution disagree at height " +
                                std::to_string(height_of(nu)));
    }
    return rec;
}

std::map<std::vector<int>, double> d_coeffs(const RootSystem& rs, const MultiplicityFn& m,
                                            double c, const std::vector<double>& H_shift, int N) {
    if (c < 0) throw std::invalid_argument("d_coeffs: c must be >= 0");
    RatVec rho_m = rho(rs, m);
    for (const auto& alpha : rs.positive_roots()) {
        double aH = rs.pair_point(alpha, H_shift);
        double bound = std::max(2.0 * c * rs.inner(rho_m, alpha).get_d(), 0.0);
        if (aH < bound - 1e-12)
            throw std::invalid_argument("d_coeffs: H_shift violates α(H) ≥ max{2c⟨ρ(m),α⟩,0}");
    }
    std::map<std::vector<int>, double> d;
    for (const auto& nu : lattice_shells(rs.rank(), N)) {
        if (height_of(nu) == 0) {
            d[nu] = 1.0;
            continue;
        }
        RatVec mu = nu_to_ratvec(nu);
        for (auto& v : mu) v *= 2;
        double lhs = rs.inner(mu, mu).get_d();
        for (int i = 0; i < rs.rank(); ++i) lhs += 2.0 * nu[i] * H_shift[i];
        double rhs = 0.0;
        for (const auto& alpha : rs.positive_roots()) {
            long ma = m.value(rs, alpha);
            if (ma == 0) continue;
            double aH = rs.pair_point(alpha, H_shift);
            double lin = 2.0 * c * ma * (aH / 2.0 - c * rs.inner(rho_m, alpha).get_d());
            double quad = c * ma * (c * ma + 2.0) * rs.inner(alpha, alpha).get_d();
            for (int k = 1;; ++k) {
                std::vector<int> prev(nu.size());
                bool ok = true;
                for (size_t i = 0; i < nu.size(); ++i) {
                    Rat cc = Rat(nu[i]) - Rat(k) * alpha[i];
                    if (cc < 0 || cc.get_den() != 1) {
                        ok = false;
                        break;
                    }
                    prev[i] = (int)cc.get_num().get_si();
                }
                if (!ok) break;
                rhs += (lin + k * quad) * d.at(prev);
            }
        }
        d[nu] = rhs / lhs;
    }
    return d;
}

CRChoice choose_c_r(const RootSystem& rs, const MultiplicityFn& m) {
    CRChoice out;
    out.r = 1.0 + 1e-3;
    auto satisfied = [&](double c) {
        for (const auto& alpha : rs.positive_roots()) {
            long ma = m.value(rs, alpha);
            if (ma == 0) continue;  // m_α = 0 treated as α absent
            double lhs = c * (c * (double)ma + 2.0);
            double rhs = out.r * std::abs((double)ma - 2.0);
            if (lhs < rhs - 1e-15) return false;
        }
        return true;
    };
    for (int k = 0; k <= 1000; ++k) {
        double c = k * 1e-3;
        if (satisfied(c)) {
            out.c = c;
            return out;
        }
    }
    throw std::logic_error("choose_c_r: no c in [0,1) found");
}

}  // namespace thetasph

#include "thetasph/special.hpp"

#include <cmath>
#include <functional>
#include <numbers>

namespace thetasph {

namespace {

template <class S>
S c_factor_core(const RootSystem& rs, CFactorKind kind, const ThetaSubset& theta,
                const MultiplicityFn& m, const std::vector<S>& lambda,
                const std::function<void(const S&)>& pole_check) {
    auto complement = positive_complement(rs, theta);
    S prod(1);
    switch (kind) {
        case CFactorKind::c_plus:
            for (const auto& alpha : theta.theta_positive) {
                S la = rs.lambda_alpha(lambda, alpha);
                for (long k = 0; k < m.value(rs, alpha) / 2; ++k) {
                    S den = la + S(k);
                    pole_check(den);
                    prod = prod / den;
                }
            }
            break;
        case CFactorKind::c_minus:
            for (const auto& alpha : complement) {
                S la = rs.lambda_alpha(lambda, alpha);
                for (long k = -m.value(rs, alpha) / 2 + 1; k <= 0; ++k) {
                    S den = S(k) - la;
                    pole_check(den);
                    prod = prod / den;
                }
            }
            break;
        case CFactorKind::c_plus_c:
            for (const auto& alpha : complement) {
                S la = rs.lambda_alpha(lambda, alpha);
                for (long k = 0; k < m.value(rs, alpha) / 2; ++k) {
                    S den = la + S(k);
                    pole_check(den);
                    prod = prod / den;
                }
            }
            break;
        case CFactorKind::e_minus:
            for (const auto& alpha : complement) {
                S la = rs.lambda_alpha(lambda, alpha);
                for (long k = -m.value(rs, alpha) / 2 + 1; k <= m.value(rs, alpha) / 2 - 1; ++k)
                    prod *= la - S(k);
            }
            break;
        case CFactorKind::e_plus: {
            long sign_exp = 0;
            for (const auto& alpha : theta.theta_positive) sign_exp += m.value(rs, alpha);
            if ((sign_exp / 2) % 2 != 0) prod = -prod;
            for (const auto& alpha : theta.theta_positive) {
                S la = rs.lambda_alpha(lambda, alpha);
                for (long k = -m.value(rs, alpha) / 2 + 1; k <= m.value(rs, alpha) / 2 - 1; ++k)
                    prod *= la - S(k);
            }
            break;
        }
        case CFactorKind::pi:
            for (const auto& alpha : rs.positive_roots()) prod *= rs.lambda_alpha(lambda, alpha);
            break;
        case CFactorKind::q:
            for (const auto& alpha : rs.roots()) {
                S la = rs.lambda_alpha(lambda, alpha);
                for (long k = -m.value(rs, alpha) / 2 + 1; k <= m.value(rs, alpha) / 2 - 1; ++k)
                    prod *= la - S(k);
            }
            break;
    }
    return prod;
}

std::vector<Cplx> to_cplx(const std::vector<double>& x) {
    return std::vector<Cplx>(x.begin(), x.end());
}

Cplx pair_lambda_point(const std::vector<Cplx>& lambda, const std::vector<double>& x) {
    Cplx s(0.0, 0.0);
    for (size_t i = 0; i < lambda.size(); ++i) s += lambda[i] * x[i];
    return s;
}

}  // namespace

Cplx c_factors_eval(const RootSystem& rs, CFactorKind kind, const ThetaSubset& theta,
                    const MultiplicityFn& m, const std::vector<Cplx>& lambda, double eps_sing) {
    return c_factor_core<Cplx>(rs, kind, theta, m, lambda, [&](const Cplx& den) {
        if (std::abs(den) <= eps_sing) throw PoleHit("c-function pole hit");
    });
}

GRat c_factors_eval_exact(const RootSystem& rs, CFactorKind kind, const ThetaSubset& theta,
                          const MultiplicityFn& m, const std::vector<GRat>& lambda) {
    return c_factor_core<GRat>(rs, kind, theta, m, lambda, [&](const GRat& den) {
        if (den.is_zero()) throw PoleHit("c-function pole hit (exact)");
    });
}

double c_plus_at_rho(const RootSystem& rs, const MultiplicityFn& m) {
    RatVec rho_m = rho(rs, m);
    double prod = 1.0;
    for (const auto& alpha : rs.positive_roots()) {
        double la = rs.inner(rho_m, alpha).get_d() / rs.inner(alpha, alpha).get_d();
        for (long k = 0; k < m.value(rs, alpha) / 2; ++k) prod /= la + (double)k;
    }
    return prod;
}

Cplx phi_theta_series(const RootSystem& rs, const MultiplicityFn& m, const ThetaSubset& theta,
                      const std::vector<Cplx>& lambda, const std::vector<double>& x, int N) {
    // map H into the closed positive chamber by W_Θ
    std::vector<double> xc = x;
    bool found = false;
    for (const auto& w : theta.theta_weyl) {
        std::vector<double> cand = rs.apply_to_point(w, x);
        bool ok = true;
        for (double v : cand)
            if (v < 0) ok = false;
        if (ok) {
            xc = cand;
            found = true;
            break;
        }
    }
    if (!found) throw NotInChamber("phi_theta_series: H not in W_Θ(closure of positive chamber)");
    if (m.is_zero()) {
        Cplx sum(0.0, 0.0);
        for (const auto& w : theta.theta_weyl)
            sum += std::exp(pair_lambda_point(w.apply(lambda), xc));
        return sum;
    }
    Cplx cminus = c_factors_eval(rs, CFactorKind::c_minus, theta, m, lambda);
    Cplx sum(0.0, 0.0);
    for (const auto& w : theta.theta_weyl) {
        std::vector<Cplx> wl = w.apply(lambda);
        Cplx cplus = c_factors_eval(rs, CFactorKind::c_plus, theta, m, wl);
        sum += cplus * phi_series(rs, m, wl, xc, N).value;
    }
    return cminus * sum;
}

Cplx phi_theta_closed_rank1(const RootSystem& rs, long m, bool theta_full, Cplx lambda, double z,
                            RankOneNorm normalization) {
    if (rs.rank() != 1) throw std::invalid_argument("phi_theta_closed_rank1: rank must be 1");
    if (z == 0.0 && !theta_full) throw std::invalid_argument("phi_theta_closed_rank1: z = 0");
    if (m == 0) {
        if (normalization == RankOneNorm::phi_theta)
            return theta_full ? std::exp(lambda * z) + std::exp(-lambda * z)
                              : std::exp(lambda * z);
        return std::exp(lambda * z);
    }
    switch (normalization) {
        case RankOneNorm::hc_series:
            return rankone_eval(phi_closed_rank1_fn<Cplx>(m, lambda), Cplx(z));
        case RankOneNorm::takahashi:
            return takahashi_eval(takahashi_rank1(m, lambda), Cplx(z));
        case RankOneNorm::phi_theta: {
            MultiplicityFn mm = MultiplicityFn::constant(m);
            if (theta_full) {
                double cr = c_plus_at_rho(rs, mm);
                return cr * takahashi_eval(takahashi_rank1(m, lambda), Cplx(z));
            }
            ThetaSubset empty = ThetaSubset::empty(rs);
            std::vector<Cplx> lam = {lambda};
            Cplx cm = c_factors_eval(rs, CFactorKind::c_minus, empty, mm, lam);
            return cm * rankone_eval(phi_closed_rank1_fn<Cplx>(m, lambda), Cplx(z));
        }
    }
    throw std::logic_error("unreachable");
}

Cplx phi_theta_closed_complex(const RootSystem& rs, const ThetaSubset& theta,
                              const std::vector<Cplx>& lambda, const std::vector<double>& x) {
    LaurentPoly delta = weyl_denominator(rs);
    Cplx dval = delta.eval_point(rs, x);
    double scale = 0.0;
    for (double v : x) scale = std::max(scale, std::abs(v));
    if (std::abs(dval) < 1e-9 * std::max(1.0, scale)) {
        // one-sided Richardson along the regular ρ-direction
        const double eps = 1e-3;
        auto shift_eval = [&](double t) {
            std::vector<double> xs = x;
            for (auto& v : xs) v += t;
            return phi_theta_closed_complex(rs, theta, lambda, xs);
        };
        return 2.0 * shift_eval(eps) - shift_eval(2.0 * eps);
    }
    MultiplicityFn m2 = MultiplicityFn::constant(2);
    Cplx pi = c_factors_eval(rs, CFactorKind::pi, ThetaSubset::full(rs), m2, lambda, 0.0);
    if (std::abs(pi) == 0.0) throw PoleHit("phi_theta_closed_complex: pi(lambda) = 0");
    Cplx sum(0.0, 0.0);
    for (const auto& w : theta.theta_weyl)
        sum += (double)rs.sign_of(w) * std::exp(pair_lambda_point(w.apply(lambda), x));
    double sign = positive_complement(rs, theta).size() % 2 == 0 ? 1.0 : -1.0;
    return sign * sum / (pi * dval);
}

Cplx phi_theta(const RootSystem& rs, const MultiplicityFn& m, const ThetaSubset& theta,
               const std::vector<Cplx>& lambda, const std::vector<double>& x, PhiRoute route,
               int series_N) {
    if (m.is_zero()) {
        Cplx sum(0.0, 0.0);
        for (const auto& w : theta.theta_weyl)
            sum += std::exp(pair_lambda_point(w.apply(lambda), x));
        return sum;
    }
    const bool complex_case = m.is_constant() && m.constant_value() == 2;
    const bool rank_one = rs.rank() == 1 && m.is_constant();
    if (route == PhiRoute::closed || (route == PhiRoute::auto_select && (complex_case || rank_one))) {
        if (rank_one)
            return phi_theta_closed_rank1(rs, m.constant_value(), theta.is_full(rs), lambda[0],
                                          x[0], RankOneNorm::phi_theta);
        if (complex_case) return phi_theta_closed_complex(rs, theta, lambda, x);
        throw std::invalid_argument("no closed form for this (system, m)");
    }
    return phi_theta_series(rs, m, theta, lambda, x, series_N);
}

Cplx delta_phi_theta(const RootSystem& rs, const MultiplicityFn& m, const ThetaSubset& theta,
                     const std::vector<Cplx>& lambda, const std::vector<double>& x) {
    if (m.is_zero()) {
        Cplx sum(0.0, 0.0);
        for (const auto& w : theta.theta_weyl)
            sum += std::exp(pair_lambda_point(w.apply(lambda), x));
        return sum;
    }
    if (m.is_constant() && m.constant_value() == 2) {
        // Δ(2)φ_Θ = ±Δ(H)·π(λ)^{-1} Σ ε(w) e^{wλ}
        LaurentPoly delta = weyl_denominator(rs);
        Cplx dval = delta.eval_point(rs, x);
        MultiplicityFn m2 = MultiplicityFn::constant(2);
        Cplx pi = c_factors_eval(rs, CFactorKind::pi, ThetaSubset::full(rs), m2, lambda, 0.0);
        Cplx sum(0.0, 0.0);
        for (const auto& w : theta.theta_weyl)
            sum += (double)rs.sign_of(w) * std::exp(pair_lambda_point(w.apply(lambda), x));
        double sign = positive_complement(rs, theta).size() % 2 == 0 ? 1.0 : -1.0;
        return sign * dval * sum / pi;
    }
    if (rs.rank() == 1 && m.is_constant()) {
        long mv = m.constant_value();
        if (theta.is_full(rs)) {
            Cplx sum(0.0, 0.0);
            for (const auto& w : theta.theta_weyl) {
                std::vector<Cplx> wl = w.apply(lambda);
                Cplx cplus = c_factors_eval(rs, CFactorKind::c_plus, theta, m, wl);
                sum += cplus * delta_phi_rank1(mv, wl[0], x[0]);
            }
            return sum;
        }
        Cplx cminus = c_factors_eval(rs, CFactorKind::c_minus, theta, m, lambda);
        return cminus * delta_phi_rank1(mv, lambda[0], x[0]);
    }
    throw std::invalid_argument("delta_phi_theta: unsupported (system, m) combination");
}

double functional_equation_residual(const RootSystem& rs, const MultiplicityFn& m,
                                    const ThetaSubset& theta, const std::vector<Cplx>& lambda,
                                    const std::vector<double>& x) {
    ThetaSubset full = ThetaSubset::full(rs);
    Cplx lhs = phi_theta(rs, m, full, lambda, x);
    Cplx rhs(0.0, 0.0);
    for (const auto& u : min_coset_reps(rs, theta)) {
        std::vector<Cplx> wl = rs.inverse(u).apply(lambda);
        rhs += phi_theta(rs, m, theta, wl, x);
    }
    long d = d_theta(rs, theta, m);
    if (d % 2 != 0) rhs = -rhs;
    return std::abs(lhs - rhs) / std::abs(lhs);
}

double eigen_residual(const RootSystem& rs, const MultiplicityFn& m,
                      const std::vector<Cplx>& lambda, const std::vector<double>& x,
                      double h_step, int series_N) {
    if (h_step <= 1e-12) throw std::invalid_argument("eigen_residual: step underflow");
    const int l = rs.rank();
    ThetaSubset full = ThetaSubset::full(rs);
    auto phi = [&](const std::vector<double>& xx) {
        return phi_theta_series(rs, m, full, lambda, xx, series_N);
    };
    // wall-coordinate step corresponding to A_{α_i} is the i-th Gram column
    auto step_vec = [&](int i) {
        std::vector<double> s(l);
        for (int j = 0; j < l; ++j) s[j] = rs.gram()[j][i].get_d();
        return s;
    };
    auto offset = [&](const std::vector<double>& base, const std::vector<double>& dir, double t) {
        std::vector<double> out = base;
        for (int j = 0; j < l; ++j) out[j] += t * dir[j];
        return out;
    };
    // inverse Gram for the flat Laplacian
    std::vector<std::vector<double>> ginv(l, std::vector<double>(l, 0.0));
    {
        std::vector<std::vector<double>> a(l, std::vector<double>(2 * l, 0.0));
        for (int i = 0; i < l; ++i) {
            for (int j = 0; j < l; ++j) a[i][j] = rs.gram()[i][j].get_d();
            a[i][l + i] = 1.0;
        }
        for (int col = 0; col < l; ++col) {
            int piv = col;
            for (int r = col; r < l; ++r)
                if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
            std::swap(a[piv], a[col]);
            double d = a[col][col];
            for (auto& v : a[col]) v /= d;
            for (int r = 0; r < l; ++r) {
                if (r == col) continue;
                double f = a[r][col];
                for (int c = 0; c < 2 * l; ++c) a[r][c] -= f * a[col][c];
            }
        }
        for (int i = 0; i < l; ++i)
            for (int j = 0; j < l; ++j) ginv[i][j] = a[i][l + j];
    }
    Cplx phi0 = phi(x);
    // L_A φ = Σ_{ij} (G^{-1})_{ij} ∂_i ∂_j φ
    Cplx lap(0.0, 0.0);
    for (int i = 0; i < l; ++i) {
        auto si = step_vec(i);
        for (int j = 0; j < l; ++j) {
            if (ginv[i][j] == 0.0) continue;
            Cplx dij;
            if (i == j) {
                dij = (phi(offset(x, si, h_step)) - 2.0 * phi0 + phi(offset(x, si, -h_step))) /
                      (h_step * h_step);
            } else {
                auto sj = step_vec(j);
                auto pp = offset(offset(x, si, h_step), sj, h_step);
                auto pm = offset(offset(x, si, h_step), sj, -h_step);
                auto mp = offset(offset(x, si, -h_step), sj, h_step);
                auto mm = offset(offset(x, si, -h_step), sj, -h_step);
                dij = (phi(pp) - phi(pm) - phi(mp) + phi(mm)) / (4.0 * h_step * h_step);
            }
            lap += ginv[i][j] * dij;
        }
    }
    // Σ m_α coth(α(H)) ∂(A_α) φ
    Cplx first(0.0, 0.0);
    for (const auto& alpha : rs.positive_roots()) {
        long ma = m.value(rs, alpha);
        if (ma == 0) continue;
        double aH = rs.pair_point(alpha, x);
        double coth = (1.0 + std::exp(-2.0 * aH)) / (1.0 - std::exp(-2.0 * aH));
        std::vector<double> sa(l, 0.0);
        for (int i = 0; i < l; ++i) {
            auto si = step_vec(i);
            for (int j = 0; j < l; ++j) sa[j] += alpha[i].get_d() * si[j];
        }
        Cplx da = (phi(offset(x, sa, h_step)) - phi(offset(x, sa, -h_step))) / (2.0 * h_step);
        first += (double)ma * coth * da;
    }
    RatVec rho_m = rho(rs, m);
    double rho2 = rs.inner(rho_m, rho_m).get_d();
    std::vector<Cplx> l2 = lambda;
    Cplx lambda2 = rs.inner(l2, l2);
    Cplx ml = lap + first + rho2 * phi0;
    return std::abs(ml - lambda2 * phi0) / std::abs(lambda2 * phi0);
}

Cplx regularized_phi(const RootSystem& rs, const MultiplicityFn& m, const ThetaSubset& theta,
                     const std::vector<Cplx>& lambda, const std::vector<double>& x, int series_N) {
    const double trigger = 5e-3, radius = 1e-2;
    auto eval = [&](const std::vector<Cplx>& lam) {
        Cplx em = c_factors_eval(rs, CFactorKind::e_minus, theta, m, lam, 0.0);
        return em * phi_theta(rs, m, theta, lam, x, PhiRoute::auto_select, series_N);
    };
    // near a zero of e⁻_Θ?
    bool near_pole = false;
    for (const auto& alpha : positive_complement(rs, theta)) {
        Cplx la = rs.lambda_alpha(lambda, alpha);
        for (long k = -m.value(rs, alpha) / 2 + 1; k <= m.value(rs, alpha) / 2 - 1; ++k)
            if (std::abs(la - Cplx((double)k)) < trigger) near_pole = true;
    }
    if (!near_pole) return eval(lambda);
    // mean over a circle in a transverse complex direction; e⁻φ_Θ is entire, so
    // the average equals the value at the center.
    RatVec alpha_dir = positive_complement(rs, theta).front();
    Cplx acc(0.0, 0.0);
    const int npts = 32;
    for (int j = 0; j < npts; ++j) {
        double th = 2.0 * std::numbers::pi * j / npts;
        Cplx t = radius * Cplx(std::cos(th), std::sin(th));
        std::vector<Cplx> lam = lambda;
        for (int i = 0; i < rs.rank(); ++i) lam[i] += t * alpha_dir[i].get_d();
        acc += eval(lam);
    }
    return acc / (double)npts;
}

bool dm_symbol_available(const RootSystem& rs, const MultiplicityFn& m) {
    if (m.is_zero()) return true;
    if (m.is_constant() && m.constant_value() == 2) return true;
    if (rs.rank() == 1 && m.is_constant() && m.constant_value() % 2 == 0) return true;
    return false;
}

Cplx dm_symbol_eval(const RootSystem& rs, const MultiplicityFn& m, const std::vector<Cplx>& nu,
                    const std::vector<double>& x) {
    if (m.is_zero()) return Cplx(1.0, 0.0);
    if (rs.rank() == 1 && m.is_constant()) {
        static thread_local std::map<std::pair<std::string, long>, std::vector<LaurentPoly>>
            cache;
        auto key = std::make_pair(rs.name(), m.constant_value());
        auto it = cache.find(key);
        if (it == cache.end())
            it = cache.emplace(key, dm_symbol_rank1(rs, m.constant_value())).first;
        Cplx c = nu[0];  // d/dz eigenvalue of e^{ν z}
        Cplx sum(0.0, 0.0);
        Cplx cj(1.0, 0.0);
        for (const auto& S : it->second) {
            sum += S.eval_point(rs, x) * cj;
            cj *= c;
        }
        return sum;
    }
    if (m.is_constant() && m.constant_value() == 2) {
        // D₂ = σ̃ Δ Π ∂(A_α):  σ̃ = (−1)^{|Σ⁺|} / Π⟨α,α⟩
        double sigma = 1.0;
        for (const auto& alpha : rs.positive_roots()) sigma /= rs.inner(alpha, alpha).get_d();
        if (rs.positive_roots().size() % 2 != 0) sigma = -sigma;
        LaurentPoly delta = weyl_denominator(rs);
        Cplx prod = sigma * delta.eval_point(rs, x);
        for (const auto& alpha : rs.positive_roots()) {
            Cplx pairing(0.0, 0.0);
            for (int i = 0; i < rs.rank(); ++i)
                for (int j = 0; j < rs.rank(); ++j)
                    pairing += nu[i] * rs.gram()[i][j].get_d() * alpha[j].get_d();
            prod *= pairing;
        }
        return prod;
    }
    throw std::invalid_argument("dm_symbol_eval: no closed operator for this (system, m)");
}

Cplx inversion_kernel(const RootSystem& rs, const MultiplicityFn& m,
                      const std::vector<Cplx>& lambda, const std::vector<double>& x) {
    Cplx sum(0.0, 0.0);
    for (const auto& w : rs.weyl()) {
        std::vector<Cplx> wl = w.apply(lambda);
        std::vector<Cplx> neg(wl.size());
        for (size_t i = 0; i < wl.size(); ++i) neg[i] = -wl[i];
        sum += dm_symbol_eval(rs, m, neg, x) * std::exp(pair_lambda_point(neg, x));
    }
    return sum;
}

}  // namespace thetasph

#include "thetasph/transform.hpp"

#include <cmath>
#include <numbers>

namespace thetasph {

namespace {

Cplx pair_cplx(const std::vector<Cplx>& lambda, const std::vector<double>& x) {
    Cplx s(0.0, 0.0);
    for (size_t i = 0; i < lambda.size(); ++i) s += lambda[i] * x[i];
    return s;
}

double det_gram(const RootSystem& rs) {
    const int l = rs.rank();
    std::vector<std::vector<double>> a(l, std::vector<double>(l));
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j) a[i][j] = rs.gram()[i][j].get_d();
    double det = 1.0;
    for (int col = 0; col < l; ++col) {
        int piv = col;
        for (int r = col; r < l; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (piv != col) {
            std::swap(a[piv], a[col]);
            det = -det;
        }
        det *= a[col][col];
        for (int r = col + 1; r < l; ++r) {
            double f = a[r][col] / a[col][col];
            for (int c = col; c < l; ++c) a[r][c] -= f * a[col][c];
        }
    }
    return det;
}

}  // namespace

size_t SpaceGrid::total() const {
    size_t t = 1;
    for (const auto& ax : axes) t *= (size_t)ax.count;
    return t;
}

std::vector<double> SpaceGrid::point(size_t flat) const {
    std::vector<double> x(axes.size());
    for (size_t i = 0; i < axes.size(); ++i) {
        size_t idx = flat % (size_t)axes[i].count;
        flat /= (size_t)axes[i].count;
        x[i] = axes[i].min + axes[i].step * (double)idx;
    }
    return x;
}

double SpaceGrid::cell() const {
    double c = 1.0;
    for (const auto& ax : axes) c *= ax.step;
    return c;
}

SpectralGrid SpectralGrid::cube(int rank, double L, int M) {
    SpectralGrid sg;
    sg.halfwidth.assign(rank, L);
    sg.points.assign(rank, M);
    sg.offsets.resize(rank);
    // staggered per-axis offsets: keeps sums Σ y_i away from 0 as well
    for (int i = 0; i < rank; ++i) sg.offsets[i] = 0.5 + 0.08 * (double)i;
    return sg;
}

size_t SpectralGrid::total() const {
    size_t t = 1;
    for (int p : points) t *= (size_t)p;
    return t;
}

std::vector<Cplx> SpectralGrid::lambda(size_t flat) const {
    std::vector<Cplx> lam(points.size());
    for (size_t i = 0; i < points.size(); ++i) {
        size_t idx = flat % (size_t)points[i];
        flat /= (size_t)points[i];
        double h = 2.0 * halfwidth[i] / (double)points[i];
        double y = -halfwidth[i] + ((double)idx + offsets[i]) * h;
        lam[i] = Cplx(0.0, y);
        if (!shift.empty()) lam[i] += Cplx(shift[i], 0.0);
    }
    return lam;
}

double SpectralGrid::cell() const {
    double c = 1.0;
    for (size_t i = 0; i < points.size(); ++i) c *= 2.0 * halfwidth[i] / (double)points[i];
    return c;
}

double space_measure(const RootSystem& rs) { return 1.0 / std::sqrt(det_gram(rs)); }
double spectral_measure(const RootSystem& rs) { return std::sqrt(det_gram(rs)); }

SampledFn bump(const RootSystem& rs, const ThetaSubset& theta, const SpaceGrid& grid,
               const std::vector<double>& center, double radius, double smoothness) {
    // ball must sit inside 𝔞_Θ with positive margin: α(c) > r·|α| on Σ⁺∖⟨Θ⟩⁺
    for (const auto& alpha : positive_complement(rs, theta)) {
        double ac = rs.pair_point(alpha, center);
        double an = std::sqrt(rs.inner(alpha, alpha).get_d());
        if (ac <= radius * an)
            throw std::invalid_argument("bump: support touches the cone boundary");
    }
    // center must be W_Θ-fixed so the radial profile is W_Θ-invariant
    for (const auto& w : theta.theta_weyl) {
        auto wc = rs.apply_to_point(w, center);
        for (int i = 0; i < rs.rank(); ++i)
            if (std::abs(wc[i] - center[i]) > 1e-12)
                throw std::invalid_argument("bump: center not W_Θ-fixed");
    }
    const int l = rs.rank();
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
    SampledFn f;
    f.grid = grid;
    f.values.resize(grid.total(), 0.0);
    for (size_t idx = 0; idx < grid.total(); ++idx) {
        auto x = grid.point(idx);
        double t2 = 0.0;
        for (int i = 0; i < l; ++i)
            for (int j = 0; j < l; ++j)
                t2 += (x[i] - center[i]) * ginv[i][j] * (x[j] - center[j]);
        t2 /= radius * radius;
        if (t2 < 1.0) f.values[idx] = std::exp(smoothness - smoothness / (1.0 - t2));
    }
    // claimed support: bounding box of the metric ball, |x_i − c_i| ≤ r√(G_ii)
    std::vector<std::vector<double>> gens;
    for (size_t corner = 0; corner < ((size_t)1 << l); ++corner) {
        std::vector<double> g = center;
        for (int i = 0; i < l; ++i) {
            double s = std::sqrt(rs.gram()[i][i].get_d());
            g[i] += ((corner >> i) & 1) ? radius * s : -radius * s;
        }
        gens.push_back(g);
    }
    f.support = gens;
    f.w_theta_invariant = true;
    return f;
}

Cplx euclidean_fourier(const RootSystem& rs, const SampledFn& f, const std::vector<Cplx>& lambda) {
    Cplx sum(0.0, 0.0);
    for (size_t idx = 0; idx < f.grid.total(); ++idx) {
        double v = f.values[idx];
        if (v == 0.0) continue;
        sum += v * std::exp(pair_cplx(lambda, f.grid.point(idx)));
    }
    return sum * f.grid.cell() * space_measure(rs);
}

Cplx theta_transform(const RootSystem& rs, const MultiplicityFn& m, const ThetaSubset& theta,
                     const SampledFn& f, const std::vector<Cplx>& lambda, bool regularized) {
    Cplx sum(0.0, 0.0);
    if (!regularized) {
        for (size_t idx = 0; idx < f.grid.total(); ++idx) {
            double v = f.values[idx];
            if (v == 0.0) continue;
            sum += v * delta_phi_theta(rs, m, theta, lambda, f.grid.point(idx));
        }
    } else {
        LaurentPoly dm = delta_weight(rs, m);
        for (size_t idx = 0; idx < f.grid.total(); ++idx) {
            double v = f.values[idx];
            if (v == 0.0) continue;
            auto x = f.grid.point(idx);
            sum += v * regularized_phi(rs, m, theta, lambda, x) * dm.eval_point(rs, x).real();
        }
    }
    return sum * f.grid.cell() * space_measure(rs) / (double)theta.theta_weyl.size();
}

namespace {

// Rank-two fast path for m = 0 and the complex case: per Weyl element the
// phase w(iy)(H) couples one spatial axis to a single spectral axis, so the
// grid transform factors into two tabulated partial sums.
std::vector<Cplx> fast_grid_transform_rank2(const RootSystem& rs, const MultiplicityFn& m,
                                            const ThetaSubset& theta, const SampledFn& f,
                                            const SpectralGrid& sg) {
    const bool complex_case = !m.is_zero();
    const int M0 = f.grid.axes[0].count, M1 = f.grid.axes[1].count;
    const int P0 = sg.points[0], P1 = sg.points[1];
    // A[x] = f (m=0) or f·Δ (m=2)
    LaurentPoly delta = weyl_denominator(rs);
    std::vector<double> A((size_t)M0 * M1);
    for (size_t idx = 0; idx < f.grid.total(); ++idx) {
        double v = f.values[idx];
        if (v != 0.0 && complex_case) v *= delta.eval_point(rs, f.grid.point(idx)).real();
        A[idx] = v;  // flat index: idx = i0 + M0*i1 matches SpaceGrid::point
    }
    auto xs = [&](int axis, int i) { return f.grid.axes[axis].min + f.grid.axes[axis].step * i; };
    auto ys = [&](int axis, int i) {
        double h = 2.0 * sg.halfwidth[axis] / (double)sg.points[axis];
        return -sg.halfwidth[axis] + ((double)i + sg.offsets[axis]) * h;
    };
    std::vector<Cplx> sum((size_t)P0 * P1, Cplx(0.0, 0.0));
    for (const auto& w : theta.theta_weyl) {
        // phase: Σ_k d_k(y)·x_k with d_k(y) = Σ_j y_j M[j][k], M[j][k] = (w α_j)_k
        double M[2][2];
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) M[j][k] = w.mat[j][k].get_d();
        // pick spatial axis a whose phase uses a single spectral variable
        int a = -1, ja = -1;
        for (int k = 0; k < 2 && a < 0; ++k) {
            int nz = -1;
            bool single = true;
            for (int j = 0; j < 2; ++j) {
                if (M[j][k] != 0.0) {
                    if (nz >= 0) single = false;
                    nz = j;
                }
            }
            if (single && nz >= 0) {
                a = k;
                ja = nz;
            }
        }
        if (a < 0) throw std::logic_error("fast_grid_transform_rank2: no separable axis");
        const int o = 1 - a;
        const int Pa = sg.points[ja];
        const int Ma = f.grid.axes[a].count, Mo = f.grid.axes[o].count;
        // inner kernel table exp(i y_{ja} M[ja][a] x_a)
        std::vector<Cplx> Ea((size_t)Pa * Ma);
        for (int iy = 0; iy < Pa; ++iy)
            for (int ix = 0; ix < Ma; ++ix)
                Ea[(size_t)iy * Ma + ix] = std::exp(Cplx(0.0, ys(ja, iy) * M[ja][a] * xs(a, ix)));
        // partial sums T[iy][io]
        std::vector<Cplx> T((size_t)Pa * Mo, Cplx(0.0, 0.0));
        for (int io = 0; io < Mo; ++io)
            for (int ix = 0; ix < Ma; ++ix) {
                size_t flat = a == 0 ? (size_t)ix + (size_t)M0 * io : (size_t)io + (size_t)M0 * ix;
                double v = A[flat];
                if (v == 0.0) continue;
                for (int iy = 0; iy < Pa; ++iy)
                    T[(size_t)iy * Mo + io] += v * Ea[(size_t)iy * Ma + ix];
            }
        // outer kernels exp(i y_j M[j][o] x_o), one table per spectral axis
        std::vector<Cplx> E0((size_t)P0 * Mo), E1((size_t)P1 * Mo);
        for (int iy = 0; iy < P0; ++iy)
            for (int io = 0; io < Mo; ++io)
                E0[(size_t)iy * Mo + io] = std::exp(Cplx(0.0, ys(0, iy) * M[0][o] * xs(o, io)));
        for (int iy = 0; iy < P1; ++iy)
            for (int io = 0; io < Mo; ++io)
                E1[(size_t)iy * Mo + io] = std::exp(Cplx(0.0, ys(1, iy) * M[1][o] * xs(o, io)));
        double sign = complex_case ? (double)rs.sign_of(w) : 1.0;
        for (int i1 = 0; i1 < P1; ++i1)
            for (int i0 = 0; i0 < P0; ++i0) {
                int iya = ja == 0 ? i0 : i1;
                Cplx s(0.0, 0.0);
                const Cplx* Trow = &T[(size_t)iya * Mo];
                const Cplx* e0 = &E0[(size_t)i0 * Mo];
                const Cplx* e1 = &E1[(size_t)i1 * Mo];
                for (int io = 0; io < Mo; ++io) s += Trow[io] * e0[io] * e1[io];
                sum[(size_t)i0 + (size_t)P0 * i1] += sign * s;
            }
    }
    const double scale = f.grid.cell() * space_measure(rs) / (double)theta.theta_weyl.size();
    std::vector<Cplx> out(sg.total());
    for (size_t i = 0; i < sg.total(); ++i) {
        Cplx v = sum[i] * scale;
        if (complex_case) {
            auto lam = sg.lambda(i);
            Cplx pi(1.0, 0.0);
            for (const auto& alpha : rs.positive_roots()) pi *= rs.lambda_alpha(lam, alpha);
            double sgn = positive_complement(rs, theta).size() % 2 == 0 ? 1.0 : -1.0;
            v = sgn * v / pi;
        }
        out[i] = v;
    }
    return out;
}

// Rank-one path: build the λ-dependent factors once, then sweep the grid.
std::vector<Cplx> grid_transform_rank1(const RootSystem& rs, const MultiplicityFn& m,
                                       const ThetaSubset& theta, const SampledFn& f,
                                       const SpectralGrid& sg) {
    const long mv = m.is_zero() ? 0 : m.constant_value();
    std::vector<std::pair<size_t, double>> support;
    for (size_t idx = 0; idx < f.grid.total(); ++idx)
        if (f.values[idx] != 0.0) support.emplace_back(idx, f.values[idx]);
    std::vector<Cplx> out(sg.total());
    for (size_t i = 0; i < sg.total(); ++i) {
        auto lam = sg.lambda(i);
        // terms: Δ(m)φ_Θ(λ,z) = Σ_t c_t e^{λ_t z} N_t(e^{−z}) e^{m z}
        struct Term {
            Cplx coef, lambda;
            std::vector<Cplx> n;
        };
        std::vector<Term> terms;
        if (mv == 0) {
            for (const auto& w : theta.theta_weyl)
                terms.push_back({Cplx(1.0, 0.0), w.apply(lam)[0], {Cplx(1.0, 0.0)}});
        } else if (theta.is_full(rs)) {
            for (const auto& w : theta.theta_weyl) {
                std::vector<Cplx> wl = w.apply(lam);
                Cplx cp = c_factors_eval(rs, CFactorKind::c_plus, theta, m, wl);
                terms.push_back({cp, wl[0], phi_closed_rank1_fn<Cplx>(mv, wl[0]).ncoeffs});
            }
        } else {
            Cplx cm = c_factors_eval(rs, CFactorKind::c_minus, theta, m, lam);
            terms.push_back({cm, lam[0], phi_closed_rank1_fn<Cplx>(mv, lam[0]).ncoeffs});
        }
        Cplx acc(0.0, 0.0);
        for (const auto& [idx, fv] : support) {
            double z = f.grid.point(idx)[0];
            Cplx v = std::exp(Cplx(-z));
            Cplx point(0.0, 0.0);
            for (const auto& t : terms) {
                Cplx n(0.0, 0.0), vk(1.0, 0.0);
                for (const auto& c : t.n) {
                    n += c * vk;
                    vk *= v;
                }
                point += t.coef * std::exp(t.lambda * z) * n;
            }
            acc += fv * point * std::exp((double)mv * z);
        }
        out[i] = acc * f.grid.cell() * space_measure(rs) / (double)theta.theta_weyl.size();
    }
    return out;
}

}  // namespace

std::vector<Cplx> transform_on_grid(const RootSystem& rs, const MultiplicityFn& m,
                                    const ThetaSubset& theta, const SampledFn& f,
                                    const SpectralGrid& sg) {
    const bool complex_case = m.is_constant() && !m.is_zero() && m.constant_value() == 2;
    if (rs.rank() == 2 && sg.shift.empty() && (m.is_zero() || complex_case))
        return fast_grid_transform_rank2(rs, m, theta, f, sg);
    if (rs.rank() == 1 && sg.shift.empty() && m.is_constant())
        return grid_transform_rank1(rs, m, theta, f, sg);
    std::vector<Cplx> out(sg.total());
    for (size_t i = 0; i < sg.total(); ++i) out[i] = theta_transform(rs, m, theta, f, sg.lambda(i));
    return out;
}

Cplx invert_classical(const RootSystem& rs, const MultiplicityFn& m, const ThetaSubset& theta,
                      const SpectralGrid& sg, const std::vector<Cplx>& g_values, double k_const,
                      const std::vector<double>& x) {
    LaurentPoly dm = delta_weight(rs, m);
    double dmx = dm.eval_point(rs, x).real();
    Cplx sum(0.0, 0.0);
    for (size_t i = 0; i < sg.total(); ++i)
        sum += g_values[i] * inversion_kernel(rs, m, sg.lambda(i), x);
    double factor = k_const * (double)rs.weyl().size() / (double)theta.theta_weyl.size();
    if (d_theta(rs, theta, m) % 2 != 0) factor = -factor;
    return factor * sum * sg.cell() * spectral_measure(rs) / dmx;
}

Cplx wave_packet(const RootSystem& rs, const MultiplicityFn& m, const SpectralGrid& sg,
                 const std::vector<Cplx>& g_values, const std::vector<double>& x) {
    LaurentPoly dm = delta_weight(rs, m);
    double dmx = dm.eval_point(rs, x).real();
    Cplx sum(0.0, 0.0);
    for (size_t i = 0; i < sg.total(); ++i)
        sum += g_values[i] * inversion_kernel(rs, m, sg.lambda(i), x);
    return sum * sg.cell() * spectral_measure(rs) / dmx;
}

Cplx invert_shifted(const RootSystem& rs, const MultiplicityFn& m, const ThetaSubset& theta,
                    const SpectralGrid& sg, const std::function<Cplx(std::vector<Cplx>)>& g,
                    const std::vector<double>& mu, double k_const, const std::vector<double>& x) {
    ConditionA cond = condition_A(rs, theta, m);
    if (!cond.holds_A2)
        throw ConditionA2Violated("invert_shifted requires Condition A2 for " + rs.name() +
                                  ", theta={" + theta.str() + "}");
    // μ ∈ −𝔞*_Θ(m): check −μ against the dual cone with thresholds
    RatVec neg_mu(rs.rank());
    for (int i = 0; i < rs.rank(); ++i) {
        // exact rationalization of the double
        neg_mu[i] = Rat(-mu[i] * 1048576.0) / 1048576;
    }
    if (!dual_cone_membership(rs, neg_mu, theta, dual_cone_thresholds(rs, theta, m), true))
        throw ShiftOutsideCone("invert_shifted: shift not in -a*_theta(m)");
    if (!dm_symbol_available(rs, m))
        throw std::invalid_argument("invert_shifted: no closed D_m for this multiplicity");
    LaurentPoly dm = delta_weight(rs, m);
    double dmx = dm.eval_point(rs, x).real();
    Cplx sum(0.0, 0.0);
    for (size_t i = 0; i < sg.total(); ++i) {
        std::vector<Cplx> lam = sg.lambda(i);
        for (int j = 0; j < rs.rank(); ++j) lam[j] += mu[j];
        std::vector<Cplx> neg(lam.size());
        for (size_t j = 0; j < lam.size(); ++j) neg[j] = -lam[j];
        sum += g(lam) * dm_symbol_eval(rs, m, neg, x) * std::exp(pair_cplx(neg, x));
    }
    double factor = k_const * (double)rs.weyl().size();
    if (d_theta(rs, theta, m) % 2 != 0) factor = -factor;
    return factor * sum * sg.cell() * spectral_measure(rs) / dmx;
}

Cplx pav(const RootSystem& rs, const ThetaSubset& theta,
         const std::function<Cplx(std::vector<Cplx>)>& g, const std::vector<Cplx>& lambda) {
    Cplx sum(0.0, 0.0);
    for (const auto& u : min_coset_reps(rs, theta)) sum += g(rs.inverse(u).apply(lambda));
    return sum;
}

PWReport pw_membership(const RootSystem& rs, const MultiplicityFn& m, const ThetaSubset& theta,
                       const std::function<Cplx(std::vector<Cplx>)>& g,
                       const std::vector<std::vector<double>>& support_C) {
    PWReport rep;
    const int l = rs.rank();
    // Condition 1: |e⁻_Θ g| ≤ C_N (1+|λ|)^{-N} e^{q_C(Re λ)} over shifted contours.
    std::vector<std::vector<double>> shifts;
    shifts.push_back(std::vector<double>(l, 0.0));
    for (int i = 0; i < l; ++i)
        for (double s : {0.6, -0.6, 1.2, -1.2}) {
            std::vector<double> sh(l, 0.0);
            sh[i] = s;
            shifts.push_back(sh);
        }
    const int shells = 12;
    const double Ymax = 30.0;
    auto eminus = [&](const std::vector<Cplx>& lam) {
        return c_factors_eval(rs, CFactorKind::e_minus, theta, m, lam, 0.0);
    };
    for (int N = 1; N <= 4; ++N) {
        std::vector<double> shell_max(shells, 0.0);
        for (const auto& sh : shifts) {
            for (int s = 0; s < shells; ++s) {
                double Y = Ymax * (double)(s + 1) / (double)shells;
                // a few directions on the |Im λ| = Y sphere
                for (int dir = 0; dir < (l == 1 ? 2 : 8); ++dir) {
                    std::vector<Cplx> lam(l);
                    if (l == 1) {
                        lam[0] = Cplx(sh[0], dir == 0 ? Y : -Y);
                    } else {
                        double th = 2.0 * std::numbers::pi * dir / 8.0 + 0.19;
                        lam[0] = Cplx(sh[0], Y * std::cos(th));
                        lam[1] = Cplx(sh[1], Y * std::sin(th));
                    }
                    std::vector<Cplx> l2 = lam;
                    double norm = std::sqrt(std::abs(rs.inner(l2, l2)));
                    std::vector<double> re(l);
                    for (int i = 0; i < l; ++i) re[i] = lam[i].real();
                    double qc = support_function(rs, support_C, re);
                    double t = std::abs(eminus(lam) * g(lam)) *
                               std::pow(1.0 + norm, (double)N) * std::exp(-qc);
                    shell_max[s] = std::max(shell_max[s], t);
                }
            }
        }
        double cN = 0.0, inner = 0.0, outer = 0.0;
        for (int s = 0; s < shells; ++s) {
            cN = std::max(cN, shell_max[s]);
            if (s < shells / 2)
                inner = std::max(inner, shell_max[s]);
            else
                outer = std::max(outer, shell_max[s]);
        }
        rep.decay_constants.push_back(cN);
        rep.decay_ok.push_back(std::isfinite(cN) && outer <= inner * (1.0 + 1e-9) + 1e-300);
    }
    // Condition 2: P^av g entire across candidate e⁻ zeros (circle residues).
    auto pav_g = [&](const std::vector<Cplx>& lam) { return pav(rs, theta, g, lam); };
    double worst = 0.0;
    const double radius = 1e-2;
    const int npts = 32;
    for (const auto& alpha : positive_complement(rs, theta)) {
        for (long k = -m.value(rs, alpha) / 2 + 1; k <= m.value(rs, alpha) / 2 - 1; ++k) {
            for (int probe = 0; probe < (l == 1 ? 1 : 3); ++probe) {
                std::vector<Cplx> center(l, Cplx(0.0, 0.0));
                for (int i = 0; i < l; ++i) center[i] = Cplx((double)k * alpha[i].get_d(), 0.0);
                if (l > 1 && probe > 0) {
                    // move along the hyperplane λ_α = k with an imaginary offset
                    center[(probe - 1) % l] += Cplx(0.0, 0.45 * probe);
                    // re-project: adjust along α so λ_α = k again
                    Cplx la = rs.lambda_alpha(center, alpha);
                    Cplx corr = Cplx((double)k, 0.0) - la;
                    for (int i = 0; i < l; ++i) center[i] += corr * alpha[i].get_d();
                }
                Cplx res(0.0, 0.0);
                double scale = 0.0;
                for (int j = 0; j < npts; ++j) {
                    double th = 2.0 * std::numbers::pi * j / npts;
                    Cplx t = radius * Cplx(std::cos(th), std::sin(th));
                    std::vector<Cplx> lam = center;
                    for (int i = 0; i < l; ++i) lam[i] += t * alpha[i].get_d();
                    Cplx val = pav_g(lam);
                    res += val * t;
                    scale = std::max(scale, std::abs(val));
                }
                res /= (double)npts;
                if (scale > 0.0) worst = std::max(worst, std::abs(res) / (radius * scale));
            }
        }
    }
    rep.entire_test = worst;
    // crude directional support estimate from the largest contributing shifts
    for (int i = 0; i < l; ++i) {
        std::vector<double> lo(l, 0.0), hi(l, 0.0);
        for (double t : {1.0, 2.0}) {
            std::vector<Cplx> lam(l, Cplx(0.0, 0.3));
            lam[i] += Cplx(t, 0.0);
            double v = std::log(std::abs(eminus(lam) * g(lam)) + 1e-300) / t;
            hi[i] = std::max(hi[i], v);
            lam[i] -= Cplx(2.0 * t, 0.0);
            v = std::log(std::abs(eminus(lam) * g(lam)) + 1e-300) / t;
            lo[i] = std::max(lo[i], v);
        }
        std::vector<double> ghi(l, 0.0), glo(l, 0.0);
        ghi[i] = hi[i];
        glo[i] = -lo[i];
        rep.support_estimate.push_back(ghi);
        rep.support_estimate.push_back(glo);
    }
    bool decay_all = true;
    for (bool ok : rep.decay_ok) decay_all = decay_all && ok;
    rep.verdict = decay_all && rep.entire_test < 1e-6;
    return rep;
}

double calibrate_k(const RootSystem& rs, const MultiplicityFn& m, const ThetaSubset& theta,
                   const SampledFn& reference, const SpectralGrid& sg,
                   const std::vector<std::vector<double>>& test_points) {
    auto g = transform_on_grid(rs, m, theta, reference, sg);
    double num = 0.0, den = 0.0;
    bool degenerate = true;
    for (const auto& x : test_points) {
        double u = invert_classical(rs, m, theta, sg, g, 1.0, x).real();
        // reference value by nearest grid point
        double fx = 0.0;
        {
            std::vector<double> xx = x;
            size_t flat = 0, mul = 1;
            for (size_t i = 0; i < reference.grid.axes.size(); ++i) {
                const auto& ax = reference.grid.axes[i];
                long idx = std::lround((xx[i] - ax.min) / ax.step);
                idx = std::clamp(idx, 0l, (long)ax.count - 1);
                flat += (size_t)idx * mul;
                mul *= (size_t)ax.count;
            }
            fx = reference.values[flat];
        }
        if (std::abs(fx) > 1e-12) degenerate = false;
        num += fx * u;
        den += u * u;
    }
    if (degenerate || den == 0.0) throw std::invalid_argument("calibrate_k: degenerate reference");
    return num / den;
}

RoundtripResult run_roundtrip(const RootSystem& rs, const MultiplicityFn& m,
                              const ThetaSubset& theta, const SampledFn& f,
                              const SpectralGrid& sg,
                              const std::vector<std::vector<double>>& test_points) {
    RoundtripResult out;
    out.k = calibrate_k(rs, m, theta, f, sg, test_points);
    auto g = transform_on_grid(rs, m, theta, f, sg);
    double sup = 0.0, peak = 0.0;
    for (const auto& x : test_points) {
        double u = invert_classical(rs, m, theta, sg, g, out.k, x).real();
        double fx;
        {
            size_t flat = 0, mul = 1;
            for (size_t i = 0; i < f.grid.axes.size(); ++i) {
                const auto& ax = f.grid.axes[i];
                long idx = std::lround((x[i] - ax.min) / ax.step);
                idx = std::clamp(idx, 0l, (long)ax.count - 1);
                flat += (size_t)idx * mul;
                mul *= (size_t)ax.count;
            }
            fx = f.values[flat];
        }
        sup = std::max(sup, std::abs(u - fx));
        peak = std::max(peak, std::abs(fx));
    }
    out.sup_error = sup;
    out.peak = peak;
    out.n_test_points = test_points.size();
    return out;
}

SpaceGrid default_space_grid(const RootSystem& rs, const std::vector<double>& lo,
                             const std::vector<double>& hi) {
    SpaceGrid g;
    int n = default_space_points(rs.rank());
    for (int i = 0; i < rs.rank(); ++i) {
        GridAxis ax;
        ax.count = n;
        ax.min = lo[i];
        ax.step = (hi[i] - lo[i]) / (double)(n - 1);
        g.axes.push_back(ax);
    }
    return g;
}

int default_space_points(int rank) { return rank == 1 ? 4096 : 256; }

SpectralGrid default_spectral_grid(const RootSystem& rs) {
    return rs.rank() == 1 ? SpectralGrid::cube(1, 40.0, 4096) : SpectralGrid::cube(2, 20.0, 256);
}

double metric_radius(const RootSystem& rs, const std::vector<double>& hw) {
    double r = 1e300;
    for (int i = 0; i < rs.rank(); ++i)
        r = std::min(r, hw[i] / std::sqrt(rs.gram()[i][i].get_d()));
    return r;
}

std::vector<std::vector<double>> default_test_points(const RootSystem& rs,
                                                     const ThetaSubset& theta,
                                                     const MultiplicityFn& m,
                                                     const SpaceGrid& grid, int per_axis) {
    // candidates snapped to grid nodes, so reference values are exact
    std::vector<std::vector<double>> out;
    LaurentPoly dm = delta_weight(rs, m);
    const double margin = 0.08;
    std::vector<int> idx(rs.rank(), 0);
    while (true) {
        std::vector<double> x(rs.rank());
        for (int i = 0; i < rs.rank(); ++i) {
            const auto& ax = grid.axes[i];
            double raw = ax.min + (ax.step * (ax.count - 1)) * ((double)idx[i] + 0.41) /
                                      (double)per_axis;
            long node = std::lround((raw - ax.min) / ax.step);
            node = std::clamp(node, 0l, (long)ax.count - 1);
            x[i] = ax.min + ax.step * (double)node;
        }
        bool in_domain = true;
        for (const auto& alpha : positive_complement(rs, theta))
            if (rs.pair_point(alpha, x) <= margin) in_domain = false;
        if (in_domain && !m.is_zero() && std::abs(dm.eval_point(rs, x).real()) < 1e-3)
            in_domain = false;
        if (in_domain) out.push_back(x);
        int i = 0;
        for (; i < rs.rank(); ++i) {
            if (++idx[i] < per_axis) break;
            idx[i] = 0;
        }
        if (i == rs.rank()) break;
    }
    return out;
}

}  // namespace thetasph

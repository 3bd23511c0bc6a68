#include "thetasph/multiplicity.hpp"

#include <sstream>

namespace thetasph {

MultiplicityFn MultiplicityFn::constant(long m) {
    MultiplicityFn f;
    f.m_short_ = f.m_long_ = m;
    return f;
}

MultiplicityFn MultiplicityFn::short_long(long m_short, long m_long) {
    MultiplicityFn f;
    f.m_short_ = m_short;
    f.m_long_ = m_long;
    return f;
}

MultiplicityFn MultiplicityFn::parse(const std::string& spec) {
    return constant(std::stol(spec));
}

long MultiplicityFn::constant_value() const {
    if (!is_constant()) throw std::logic_error("multiplicity is not constant");
    return m_short_;
}

long MultiplicityFn::value(const RootSystem& rs, const RatVec& alpha) const {
    if (!rs.is_root(alpha)) throw std::invalid_argument("multiplicity of a non-root");
    if (m_short_ == m_long_) return m_short_;
    // shortest squared length present in the system
    Rat minlen = rs.inner(rs.roots().front(), rs.roots().front());
    for (const auto& beta : rs.roots()) minlen = std::min(minlen, rs.inner(beta, beta));
    return rs.inner(alpha, alpha) == minlen ? m_short_ : m_long_;
}

std::string MultiplicityFn::str() const {
    if (is_constant()) return std::to_string(m_short_);
    std::ostringstream os;
    os << "short=" << m_short_ << ",long=" << m_long_;
    return os.str();
}

RatVec rho(const RootSystem& rs, const MultiplicityFn& m) {
    RatVec r(rs.rank(), Rat(0));
    for (const auto& alpha : rs.positive_roots()) {
        Rat half_m = rat_frac(m.value(rs, alpha), 2);
        for (int i = 0; i < rs.rank(); ++i) r[i] += half_m * alpha[i];
    }
    return r;
}

LaurentPoly delta_weight(const RootSystem& rs, const MultiplicityFn& m) {
    if (!m.all_even()) throw std::invalid_argument("delta_weight requires even multiplicities");
    LaurentPoly p = LaurentPoly::constant(rs.rank(), GRat(1));
    for (const auto& alpha : rs.positive_roots()) {
        long ma = m.value(rs, alpha);
        LaurentPoly factor = exp_minus_exp(alpha);
        for (long k = 0; k < ma; ++k) p *= factor;
    }
    return p;
}

long d_theta(const RootSystem& rs, const ThetaSubset& theta, const MultiplicityFn& m) {
    long sum = 0;
    for (const auto& alpha : positive_complement(rs, theta)) sum += m.value(rs, alpha);
    if (sum % 2 != 0) throw std::logic_error("d(Θ,m) not an integer");
    return sum / 2;
}

ConditionA condition_A(const RootSystem& rs, const ThetaSubset& theta, const MultiplicityFn& m) {
    ConditionA out;
    auto complement = positive_complement(rs, theta);
    out.holds_A1 = true;
    for (const auto& alpha : complement)
        if (m.value(rs, alpha) > 2) out.holds_A1 = false;
    out.holds_A2 = false;
    if ((int)theta.indices.size() == rs.rank() - 1) {
        int beta_idx = -1;
        for (int i = 0; i < rs.rank(); ++i)
            if (!theta.contains(i)) beta_idx = i;
        RatVec beta(rs.rank(), Rat(0));
        beta[beta_idx] = 1;
        out.holds_A2 = true;
        for (const auto& alpha : complement)
            if (rs.inner(beta, alpha) < 0) out.holds_A2 = false;
    }
    return out;
}

std::vector<std::pair<RatVec, Rat>> dual_cone_thresholds(const RootSystem& rs,
                                                         const ThetaSubset& theta,
                                                         const MultiplicityFn& m) {
    std::vector<std::pair<RatVec, Rat>> out;
    for (const auto& alpha : positive_complement(rs, theta))
        out.emplace_back(alpha, rat_frac(m.value(rs, alpha), 2));
    return out;
}

}  // namespace thetasph

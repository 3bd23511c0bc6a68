#include "thetasph/tables.hpp"

namespace thetasph {

std::string ktable_to_string(KTable t) {
    switch (t) {
        case KTable::Riemannian: return "Riemannian";
        case KTable::NCC: return "NCC";
        case KTable::KepsII: return "KepsII";
    }
    return "?";
}

std::optional<KTable> ktable_from_string(const std::string& s) {
    if (s == "Riemannian" || s == "riemannian") return KTable::Riemannian;
    if (s == "NCC" || s == "ncc") return KTable::NCC;
    if (s == "KepsII" || s == "kepsii" || s == "KepsII ") return KTable::KepsII;
    return std::nullopt;
}

const std::vector<KEpsilonEntry>& k_epsilon_all() {
    static const std::vector<KEpsilonEntry> rows = {
        // Riemannian symmetric pairs with even multiplicities
        {"sl(n,C)", "su(n)", "", "A", "n-1", "2", KTable::Riemannian, "n>=2"},
        {"so(2n+1,C)", "so(2n+1)", "", "B", "n", "2", KTable::Riemannian, "n>=2"},
        {"sp(n,C)", "sp(n)", "", "C", "n", "2", KTable::Riemannian, "n>=3"},
        {"so(2n,C)", "so(2n)", "", "D", "n", "2", KTable::Riemannian, "n>=4"},
        {"e6(C)", "e6", "", "E6", "6", "2", KTable::Riemannian, ""},
        {"e7(C)", "e7", "", "E7", "7", "2", KTable::Riemannian, ""},
        {"e8(C)", "e8", "", "E8", "8", "2", KTable::Riemannian, ""},
        {"f4(C)", "f4", "", "F4", "4", "2", KTable::Riemannian, ""},
        {"g2(C)", "g2", "", "G2", "2", "2", KTable::Riemannian, ""},
        {"su*(2n)", "sp(n)", "", "A", "n-1", "4", KTable::Riemannian, "n>=2"},
        {"e6(-26)", "f4(-20)", "", "A", "2", "8", KTable::Riemannian, ""},
        {"so(2n+1,1)", "so(2n+1)", "", "A", "1", "2n", KTable::Riemannian, "n>=3"},

        // Non-compactly causal (K_ε I) symmetric pairs with even multiplicities
        {"sl(n,C)", "su(n-j,j)", "sl(n-j,C)+sl(j,C)+C", "A", "n-1", "2", KTable::NCC,
         "n>=2, 1<=j<=[n/2]"},
        {"so(2n+1,C)", "so(2n-1,2)", "so(2n-1,C)+C", "B", "n", "2", KTable::NCC, "n>=2"},
        {"sp(n,C)", "sp(n,R)", "gl(n,C)", "C", "n", "2", KTable::NCC, "n>=3"},
        {"so(2n,C)", "so(2n-2,2)", "so(2n-2,C)+C", "D", "n", "2", KTable::NCC, "n>=4"},
        {"so(2n,C)", "so*(2n)", "gl(n,C)", "D", "n", "2", KTable::NCC, "n>=4"},
        {"e6(C)", "e6(-14)", "so(10,C)+C", "E6", "6", "2", KTable::NCC, ""},
        {"e7(C)", "e7(-25)", "e6(C)+C", "E7", "7", "2", KTable::NCC, ""},
        {"su*(2n)", "sp(n-j,j)", "su*(2(n-j))+su*(2j)+R", "A", "n-1", "4", KTable::NCC,
         "n>=2, 1<=j<=[n/2]"},
        {"e6(-26)", "f4(-20)", "so(9,1)+R", "A", "2", "8", KTable::NCC, ""},
        {"so(2n+1,1)", "so(2n,1)", "so(2n+1)+R", "A", "1", "2n", KTable::NCC, "n>=3"},

        // Remaining K_ε II symmetric pairs with even multiplicities
        {"so(2n+1,C)", "so(2(n-j)+1,2j)", "so(2(n-j)+1,C)+so(2j,C)", "B", "n", "2", KTable::KepsII,
         "n>=2, 2<=j<=n"},
        {"sp(n,C)", "sp(n-j,j)", "sp(n-j,C)+sp(j,C)", "C", "n", "2", KTable::KepsII,
         "n>=3, 1<=j<=[n/2]"},
        {"so(2n,C)", "so(2(n-j),2j)", "so(2(n-j),C)+so(2j,C)", "D", "n", "2", KTable::KepsII,
         "n>=4, 2<=j<=[n/2]"},
        {"e6(C)", "e6(2)", "sl(6,C)+sl(2,C)", "E6", "6", "2", KTable::KepsII, ""},
        {"e7(C)", "e7(7)", "sl(8,C)", "E7", "7", "2", KTable::KepsII, ""},
        {"e7(C)", "e7(-5)", "so(12,C)+sl(2,C)", "E7", "7", "2", KTable::KepsII, ""},
        {"e8(C)", "e8(8)", "so(16,C)", "E8", "8", "2", KTable::KepsII, ""},
        {"e8(C)", "e8(-24)", "e7(C)+sl(2,C)", "E8", "8", "2", KTable::KepsII, ""},
        {"f4(C)", "f4(4)", "sp(3,C)+sl(2,C)", "F4", "4", "2", KTable::KepsII, ""},
        {"f4(C)", "f4(-20)", "so(9,C)", "F4", "4", "2", KTable::KepsII, ""},
        {"g2(C)", "g2(2)", "sl(2,C)+sl(2,C)", "G2", "2", "2", KTable::KepsII, ""},
    };
    return rows;
}

std::vector<KEpsilonEntry> k_epsilon_query(const KEpsilonFilter& filter) {
    std::vector<KEpsilonEntry> out;
    for (const auto& row : k_epsilon_all()) {
        if (filter.g_name && row.g_name != *filter.g_name) continue;
        if (filter.sigma_family && row.sigma_family != *filter.sigma_family) continue;
        if (filter.table && row.table != *filter.table) continue;
        out.push_back(row);
    }
    return out;
}

}  // namespace thetasph

#pragma once

#include <optional>
#include <string>
#include <vector>

namespace thetasph {

enum class KTable { Riemannian, NCC, KepsII };

std::string ktable_to_string(KTable t);
std::optional<KTable> ktable_from_string(const std::string& s);

// One row of the classification of K_ε symmetric pairs with even
// multiplicities; parameterized families keep their range constraints as text.
struct KEpsilonEntry {
    std::string g_name;
    std::string h_name;
    std::string fixed_subalgebra;  // g^{θθ_ε}; empty for the Riemannian table
    std::string sigma_family;      // "A","B","C","D","E6","E7","E8","F4","G2"
    std::string sigma_rank_expr;   // "n-1", "n", "1", "2", ...
    std::string m_value;           // "2", "4", "8", "2n"
    KTable table;
    std::string constraints;  // e.g. "n>=2, 1<=j<=[n/2]"
};

struct KEpsilonFilter {
    std::optional<std::string> g_name;
    std::optional<std::string> sigma_family;
    std::optional<KTable> table;
};

const std::vector<KEpsilonEntry>& k_epsilon_all();
std::vector<KEpsilonEntry> k_epsilon_query(const KEpsilonFilter& filter);

}  // namespace thetasph

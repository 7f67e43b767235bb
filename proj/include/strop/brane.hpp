#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace strop {

/// Reserved label for the ambient manifold itself.
inline const std::string kTop = "⊤";

struct Brane {
    std::string id;
    int dim = 0;
    std::optional<std::vector<int>> betti;  // indexed 0..dim when present
};

/// Sorted label multiset with the ambient label absorbed, together with the
/// generic transversal-intersection dimension and an emptiness verdict.
struct FormalIntersection {
    std::vector<std::string> labels;  // sorted, no ambient label
    int dim = 0;
    bool empty = false;

    bool is_ambient() const { return labels.empty(); }

    friend bool operator==(const FormalIntersection&, const FormalIntersection&) = default;
    friend auto operator<=>(const FormalIntersection&, const FormalIntersection&) = default;
};

class BraneContext {
public:
    /// Ambient-only context, mostly for tests.
    explicit BraneContext(int ambient_dim);

    void add_brane(Brane b);

    /// Marks a label multiset as geometrically empty. Supersets of a declared
    /// multiset are treated as empty too, so no closure is materialized.
    void declare_empty(std::vector<std::string> labels);

    int ambient_dim() const { return d_; }
    bool has(const std::string& label) const;
    const Brane& brane(const std::string& label) const;
    const std::map<std::string, Brane>& branes() const { return branes_; }
    const std::set<std::vector<std::string>>& declared_empty() const { return declared_empty_; }

    FormalIntersection intersect(const std::vector<std::string>& labels) const;

    /// [lo,hi] of degrees where homology can live; nullopt when empty.
    std::optional<std::pair<int, int>> degree_range(const FormalIntersection& fi) const;

    /// Coarse Betti-product bound for rank of H_degree; nullopt when some
    /// participant lacks Betti data.
    std::optional<int> rank_upper_bound(const FormalIntersection& fi, int degree) const;

private:
    bool declared_empty_contains(const std::vector<std::string>& sorted_labels) const;

    int d_;
    std::map<std::string, Brane> branes_;
    std::set<std::vector<std::string>> declared_empty_;
};

}  // namespace strop

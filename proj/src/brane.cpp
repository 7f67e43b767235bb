#include "strop/brane.hpp"

#include <algorithm>

#include "strop/errors.hpp"

namespace strop {

BraneContext::BraneContext(int ambient_dim) : d_(ambient_dim) {
    if (ambient_dim < 1) fail("BadContext", "ambient dimension must be >= 1");
    branes_[kTop] = Brane{kTop, d_, std::nullopt};
}

void BraneContext::add_brane(Brane b) {
    if (b.id.empty()) fail("BadContext", "brane id must be a nonempty token");
    if (b.id == kTop) {
        if (b.dim != d_) fail("BadContext", "the ambient label must have dim = ambient_dim");
    } else if (b.dim < 0 || b.dim > d_) {
        fail("BadContext", "brane '" + b.id + "' has dim outside [0, ambient_dim]");
    }
    if (b.betti) {
        if (static_cast<int>(b.betti->size()) != b.dim + 1)
            fail("BadContext", "brane '" + b.id + "': betti length must be dim+1");
        if ((*b.betti)[0] < 1)
            fail("BadContext", "brane '" + b.id + "': betti[0] must be >= 1");
        for (int v : *b.betti)
            if (v < 0) fail("BadContext", "brane '" + b.id + "': betti entries must be >= 0");
    }
    if (b.id != kTop && branes_.count(b.id))
        fail("BadContext", "duplicate brane id '" + b.id + "'");
    branes_[b.id] = std::move(b);
}

void BraneContext::declare_empty(std::vector<std::string> labels) {
    std::erase(labels, kTop);
    if (labels.empty()) fail("BadContext", "cannot declare the ambient manifold empty");
    for (const auto& l : labels)
        if (!has(l)) fail("UnknownLabel", "empty_intersections references unknown label '" + l + "'");
    std::sort(labels.begin(), labels.end());
    declared_empty_.insert(std::move(labels));
}

bool BraneContext::has(const std::string& label) const { return branes_.count(label) != 0; }

const Brane& BraneContext::brane(const std::string& label) const {
    auto it = branes_.find(label);
    if (it == branes_.end()) fail("UnknownLabel", "unknown brane label '" + label + "'");
    return it->second;
}

bool BraneContext::declared_empty_contains(const std::vector<std::string>& sorted_labels) const {
    for (const auto& decl : declared_empty_)
        if (std::includes(sorted_labels.begin(), sorted_labels.end(), decl.begin(), decl.end()))
            return true;
    return false;
}

FormalIntersection BraneContext::intersect(const std::vector<std::string>& labels) const {
    FormalIntersection fi;
    for (const auto& l : labels) {
        brane(l);  // existence check
        if (l != kTop) fi.labels.push_back(l);
    }
    std::sort(fi.labels.begin(), fi.labels.end());
    if (fi.labels.empty()) {
        fi.dim = d_;
        fi.empty = false;
        return fi;
    }
    // Generic transversality: dim = sum of dims - (r-1)*d, repeats counted as
    // perturbed self-intersections (two full participants).
    int r = static_cast<int>(fi.labels.size());
    int sum = 0;
    for (const auto& l : fi.labels) sum += brane(l).dim;
    fi.dim = sum - (r - 1) * d_;
    fi.empty = fi.dim < 0 || declared_empty_contains(fi.labels);
    return fi;
}

std::optional<std::pair<int, int>> BraneContext::degree_range(const FormalIntersection& fi) const {
    if (fi.empty) return std::nullopt;
    return std::make_pair(0, fi.dim);
}

std::optional<int> BraneContext::rank_upper_bound(const FormalIntersection& fi, int degree) const {
    if (fi.empty) return 0;
    if (degree < 0 || degree > fi.dim) return 0;
    const std::vector<std::string>* parts = &fi.labels;
    std::vector<std::string> ambient_only{kTop};
    if (parts->empty()) parts = &ambient_only;

    // Convolution of participant Betti vectors, truncated at fi.dim. This is a
    // deliberately coarse Kuenneth-style bound, not actual homology.
    std::vector<long long> acc{1};
    for (const auto& l : *parts) {
        const Brane& b = brane(l);
        if (!b.betti) return std::nullopt;
        std::vector<long long> next(std::min<std::size_t>(fi.dim + 1, acc.size() + b.betti->size() - 1), 0);
        for (std::size_t i = 0; i < acc.size(); ++i)
            for (std::size_t j = 0; j < b.betti->size(); ++j)
                if (i + j < next.size()) next[i + j] += acc[i] * (*b.betti)[j];
        acc = std::move(next);
    }
    if (degree >= static_cast<int>(acc.size())) return 0;
    return static_cast<int>(acc[degree]);
}

}  // namespace strop

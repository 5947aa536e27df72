#include "jetbrane/space.hpp"

#include <algorithm>
#include <set>

namespace jetbrane {

SpaceSpec SpaceSpec::make(int dim, std::vector<std::string> names) {
    if (dim < 1 || dim > kMaxDim) {
        throw SchemaError("space dimension must be between 1 and " + std::to_string(kMaxDim) +
                          ", got " + std::to_string(dim));
    }
    if (static_cast<int>(names.size()) != dim) {
        throw SchemaError("expected " + std::to_string(dim) + " coordinate names, got " +
                          std::to_string(names.size()));
    }
    std::set<std::string> seen;
    for (const auto& n : names) {
        if (n.empty()) throw SchemaError("empty coordinate name");
        if (!seen.insert(n).second) throw SchemaError("duplicate coordinate name '" + n + "'");
    }
    return SpaceSpec{dim, std::move(names)};
}

int SpaceSpec::coord_index(const std::string& name) const {
    for (size_t i = 0; i < coord_names.size(); ++i) {
        if (coord_names[i] == name) return static_cast<int>(i);
    }
    return -1;
}

MultiIndex MultiIndex::single(int coord) {
    MultiIndex m;
    m.counts_[static_cast<size_t>(coord)] = 1;
    return m;
}

MultiIndex MultiIndex::of(std::initializer_list<int> coords) {
    MultiIndex m;
    for (int c : coords) m = m.plus(c);
    return m;
}

int MultiIndex::order() const {
    int n = 0;
    for (uint8_t c : counts_) n += c;
    return n;
}

int MultiIndex::lowest() const {
    for (int c = 0; c < kMaxDim; ++c) {
        if (counts_[static_cast<size_t>(c)] > 0) return c;
    }
    return -1;
}

MultiIndex MultiIndex::plus(int coord) const {
    MultiIndex m = *this;
    auto& slot = m.counts_[static_cast<size_t>(coord)];
    if (slot == 255) throw SchemaError("multi-index order overflow");
    ++slot;
    return m;
}

MultiIndex MultiIndex::minus(int coord) const {
    MultiIndex m = *this;
    auto& slot = m.counts_[static_cast<size_t>(coord)];
    if (slot == 0) throw SchemaError("multi-index does not contain coordinate " + std::to_string(coord));
    --slot;
    return m;
}

MultiIndex MultiIndex::merged(const MultiIndex& other) const {
    MultiIndex m = *this;
    for (int c = 0; c < kMaxDim; ++c) {
        int total = m.counts_[static_cast<size_t>(c)] + other.counts_[static_cast<size_t>(c)];
        if (total > 255) throw SchemaError("multi-index order overflow");
        m.counts_[static_cast<size_t>(c)] = static_cast<uint8_t>(total);
    }
    return m;
}

MultiIndex MultiIndex::difference(const MultiIndex& other) const {
    MultiIndex m = *this;
    for (int c = 0; c < kMaxDim; ++c) {
        if (other.counts_[static_cast<size_t>(c)] > m.counts_[static_cast<size_t>(c)]) {
            throw SchemaError("multi-index difference underflow");
        }
        m.counts_[static_cast<size_t>(c)] =
            static_cast<uint8_t>(m.counts_[static_cast<size_t>(c)] - other.counts_[static_cast<size_t>(c)]);
    }
    return m;
}

std::vector<int> MultiIndex::entries() const {
    std::vector<int> out;
    out.reserve(static_cast<size_t>(order()));
    for (int c = 0; c < kMaxDim; ++c) {
        for (int k = 0; k < counts_[static_cast<size_t>(c)]; ++k) out.push_back(c);
    }
    return out;
}

std::strong_ordering MultiIndex::compare(const MultiIndex& other) const {
    int la = order(), lb = other.order();
    if (la != lb) return la <=> lb;
    // Equal length: lexicographic on sorted entries. At the first coordinate
    // where multiplicities differ, the index with MORE copies of that (smaller)
    // coordinate is lexicographically smaller.
    for (int c = 0; c < kMaxDim; ++c) {
        uint8_t ca = counts_[static_cast<size_t>(c)], cb = other.counts_[static_cast<size_t>(c)];
        if (ca != cb) return cb <=> ca;
    }
    return std::strong_ordering::equal;
}

uint32_t MultiIndex::packed() const {
    uint32_t v = 0;
    for (int c = 0; c < kMaxDim; ++c) v = (v << 8) | counts_[static_cast<size_t>(c)];
    return v;
}

std::vector<MultiIndex> multi_indices_up_to(int dim, int max_order) {
    std::vector<MultiIndex> out;
    std::vector<MultiIndex> level{MultiIndex{}};
    out.push_back(MultiIndex{});
    for (int k = 1; k <= max_order; ++k) {
        std::vector<MultiIndex> next;
        for (const auto& m : level) {
            // extend by coordinates >= the largest already present to avoid duplicates
            int start = 0;
            auto e = m.entries();
            if (!e.empty()) start = e.back();
            for (int c = start; c < dim; ++c) next.push_back(m.plus(c));
        }
        std::sort(next.begin(), next.end());
        out.insert(out.end(), next.begin(), next.end());
        level = std::move(next);
    }
    return out;
}

}  // namespace jetbrane

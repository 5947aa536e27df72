#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "jetbrane/errors.hpp"

namespace jetbrane {

/// Engine limit on spacetime dimension (not a mathematical one).
inline constexpr int kMaxDim = 4;

/// Base-space description: dimension and coordinate names.
struct SpaceSpec {
    int dim = 1;
    std::vector<std::string> coord_names;

    static SpaceSpec make(int dim, std::vector<std::string> names);

    int coord_index(const std::string& name) const;  // -1 when unknown
};

/// Unordered (symmetric) derivative index: a multiset over coordinate
/// indices, stored as per-coordinate multiplicities. Entries read off in
/// nondecreasing order.
class MultiIndex {
  public:
    MultiIndex() = default;

    static MultiIndex single(int coord);
    static MultiIndex of(std::initializer_list<int> coords);

    int order() const;  // |mu|
    int count(int coord) const { return counts_[static_cast<size_t>(coord)]; }
    bool empty() const { return order() == 0; }
    bool contains(int coord) const { return count(coord) > 0; }
    int lowest() const;  // smallest coordinate present; -1 when empty

    MultiIndex plus(int coord) const;
    MultiIndex minus(int coord) const;  // requires contains(coord)
    MultiIndex merged(const MultiIndex& other) const;  // multiset union
    MultiIndex difference(const MultiIndex& other) const;  // requires other <= this

    std::vector<int> entries() const;

    /// Order: by |mu|, then lexicographically on the sorted entry list.
    std::strong_ordering compare(const MultiIndex& other) const;

    friend bool operator==(const MultiIndex& a, const MultiIndex& b) { return a.counts_ == b.counts_; }
    friend bool operator!=(const MultiIndex& a, const MultiIndex& b) { return !(a == b); }
    friend bool operator<(const MultiIndex& a, const MultiIndex& b) {
        return a.compare(b) == std::strong_ordering::less;
    }

    uint32_t packed() const;

  private:
    std::array<uint8_t, kMaxDim> counts_{};
};

/// All multi-indices over coordinates [0, dim) with |mu| <= max_order,
/// in canonical (length, lexicographic) order.
std::vector<MultiIndex> multi_indices_up_to(int dim, int max_order);

}  // namespace jetbrane

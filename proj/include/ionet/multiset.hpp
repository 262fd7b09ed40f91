#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "ionet/error.hpp"

namespace ionet {

namespace detail {
inline void require_same_size(const Marking& a, const Marking& b) {
    if (a.size() != b.size())
        throw InvalidArgument("marking dimensions differ: " + std::to_string(a.size()) + " vs " +
                              std::to_string(b.size()));
}
}  // namespace detail

/// |M|: the total number of tokens.
inline Count size(const Marking& m) { return std::accumulate(m.begin(), m.end(), Count{0}); }

inline Marking operator+(const Marking& a, const Marking& b) {
    detail::require_same_size(a, b);
    Marking r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

/// Truncated difference: (a − b)(p) = max(a(p) − b(p), 0).
inline Marking monus(const Marking& a, const Marking& b) {
    detail::require_same_size(a, b);
    Marking r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max<Count>(a[i] - b[i], 0);
    return r;
}

/// Componentwise minimum.
inline Marking meet(const Marking& a, const Marking& b) {
    detail::require_same_size(a, b);
    Marking r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::min(a[i], b[i]);
    return r;
}

/// Componentwise a ≤ b.
inline bool leq(const Marking& a, const Marking& b) {
    detail::require_same_size(a, b);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

inline bool is_zero(const Marking& m) {
    return std::all_of(m.begin(), m.end(), [](Count c) { return c == 0; });
}

/// Indices of the marked places, ascending.
inline std::vector<std::size_t> carrier(const Marking& m) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i] >= 1) out.push_back(i);
    return out;
}

/// The {0,1}-marking of a place set.
inline Marking indicator(std::size_t n, const std::vector<std::size_t>& places) {
    Marking m(n, 0);
    for (auto p : places) {
        if (p >= n) throw InvalidArgument("place index out of range");
        m[p] = 1;
    }
    return m;
}

/// "(1,0,2)".
inline std::string to_string(const Marking& m) {
    std::string s = "(";
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(m[i]);
    }
    return s + ")";
}

}  // namespace ionet

#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "ionet/error.hpp"

namespace ionet {

/// Interns fixed-width vectors of 32-bit words and hands out dense, stable ids.
/// Backed by one flat array plus an open-addressing index, so millions of small states
/// cost a few words each.
class StateStore {
public:
    using Id = std::uint32_t;
    static constexpr Id kNone = std::numeric_limits<Id>::max();

    explicit StateStore(std::size_t width) : width_(width) { table_.assign(64, kNone); }

    std::size_t width() const { return width_; }
    std::size_t size() const { return count_; }

    std::span<const std::uint32_t> get(Id id) const { return {data_.data() + std::size_t(id) * width_, width_}; }

    Id find(std::span<const std::uint32_t> v) const {
        std::size_t mask = table_.size() - 1;
        for (std::size_t i = hash(v) & mask;; i = (i + 1) & mask) {
            Id id = table_[i];
            if (id == kNone) return kNone;
            if (equal(id, v)) return id;
        }
    }

    /// Returns (id, inserted).
    std::pair<Id, bool> insert(std::span<const std::uint32_t> v) {
        if ((count_ + 1) * 2 > table_.size()) grow();
        std::size_t mask = table_.size() - 1;
        for (std::size_t i = hash(v) & mask;; i = (i + 1) & mask) {
            Id id = table_[i];
            if (id == kNone) {
                if (count_ >= kNone - 1) throw InvalidArgument("state store is full");
                Id fresh = static_cast<Id>(count_++);
                data_.insert(data_.end(), v.begin(), v.end());
                table_[i] = fresh;
                return {fresh, true};
            }
            if (equal(id, v)) return {id, false};
        }
    }

private:
    static std::size_t hash(std::span<const std::uint32_t> v) {
        std::uint64_t h = 0x9E3779B97F4A7C15ull ^ v.size();
        for (auto w : v) {
            h ^= w;
            h *= 0xff51afd7ed558ccdull;
            h ^= h >> 32;
        }
        h ^= h >> 29;
        h *= 0xc4ceb9fe1a85ec53ull;
        h ^= h >> 32;
        return static_cast<std::size_t>(h);
    }

    bool equal(Id id, std::span<const std::uint32_t> v) const {
        const std::uint32_t* a = data_.data() + std::size_t(id) * width_;
        for (std::size_t k = 0; k < width_; ++k)
            if (a[k] != v[k]) return false;
        return true;
    }

    void grow() {
        std::vector<Id> t(table_.size() * 2, kNone);
        std::size_t mask = t.size() - 1;
        for (Id id = 0; id < count_; ++id) {
            std::size_t i = hash(get(id)) & mask;
            while (t[i] != kNone) i = (i + 1) & mask;
            t[i] = id;
        }
        table_.swap(t);
    }

    std::size_t width_;
    std::size_t count_ = 0;
    std::vector<std::uint32_t> data_;
    std::vector<Id> table_;
};

/// Packs a marking into 32-bit words; throws when a count does not fit.
inline void pack_marking(const Marking& m, std::vector<std::uint32_t>& out) {
    out.resize(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] < 0 || m[i] > Count(std::numeric_limits<std::uint32_t>::max() - 1))
            throw InvalidArgument("token count does not fit the exploration state encoding");
        out[i] = static_cast<std::uint32_t>(m[i]);
    }
}

inline Marking unpack_marking(std::span<const std::uint32_t> v, std::size_t n) {
    Marking m(n);
    for (std::size_t i = 0; i < n; ++i) m[i] = v[i];
    return m;
}

/// Fixed-size bitset over transitions (or places) held in 64-bit words.
class Bits {
public:
    Bits() = default;
    explicit Bits(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}
    std::size_t size() const { return n_; }
    void set(std::size_t i) { w_[i >> 6] |= 1ull << (i & 63); }
    bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void fill() {
        for (std::size_t i = 0; i < n_; ++i) set(i);
    }
    Bits& operator|=(const Bits& o) {
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] |= o.w_[k];
        return *this;
    }
    Bits& operator&=(const Bits& o) {
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= o.w_[k];
        return *this;
    }
    bool all() const {
        for (std::size_t i = 0; i < n_; ++i)
            if (!test(i)) return false;
        return true;
    }
    bool none() const {
        for (auto w : w_)
            if (w) return false;
        return true;
    }
    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : w_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }
    std::vector<std::size_t> items() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < n_; ++i)
            if (test(i)) out.push_back(i);
        return out;
    }
    bool operator==(const Bits&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

}  // namespace ionet

#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ionet/error.hpp"
#include "ionet/multiset.hpp"

namespace ionet {

/// One weighted edge endpoint; `weight` is always ≥ 1.
struct Arc {
    std::size_t place;
    Count weight;
    bool operator==(const Arc&) const = default;
};

inline constexpr Count kMaxWeight = std::numeric_limits<std::int32_t>::max();

/// Identifiers may not be empty, contain whitespace, '#', ':' or '=', or shadow a keyword.
inline bool valid_identifier(std::string_view id) {
    if (id.empty() || id == "pre" || id == "post" || id == "net" || id == "place" || id == "trans") return false;
    for (char c : id) {
        auto u = static_cast<unsigned char>(c);
        if (u <= 0x20 || c == '#' || c == ':' || c == '=' || u == 0x7f) return false;
    }
    return true;
}

/// A Petri net (P, T, F). Places and transitions are indexed in declaration order.
/// Once built, a Net is only read, so it can be shared freely between threads.
class Net {
public:
    explicit Net(std::string name = "net") : name_(std::move(name)) {}

    const std::string& name() const { return name_; }
    void set_name(std::string name) { name_ = std::move(name); }

    std::size_t add_place(const std::string& id) {
        declare(id);
        index_.emplace(id, Entry{true, places_.size()});
        places_.push_back(id);
        return places_.size() - 1;
    }

    /// Adds a transition. Arcs may come in any order; repeated places are an error.
    std::size_t add_transition(const std::string& id, std::vector<Arc> pre, std::vector<Arc> post) {
        normalize(id, pre, "pre");
        normalize(id, post, "post");
        declare(id);
        index_.emplace(id, Entry{false, transitions_.size()});
        transitions_.push_back(id);
        for (const auto& a : pre) max_weight_ = std::max(max_weight_, a.weight);
        for (const auto& a : post) max_weight_ = std::max(max_weight_, a.weight);
        has_edges_ = has_edges_ || !pre.empty() || !post.empty();
        pre_.push_back(std::move(pre));
        post_.push_back(std::move(post));
        return transitions_.size() - 1;
    }

    std::size_t num_places() const { return places_.size(); }
    std::size_t num_transitions() const { return transitions_.size(); }
    const std::string& place(std::size_t p) const { return places_.at(p); }
    const std::string& transition(std::size_t t) const { return transitions_.at(t); }
    const std::vector<std::string>& places() const { return places_; }
    const std::vector<std::string>& transitions() const { return transitions_; }

    std::optional<std::size_t> place_index(std::string_view id) const {
        auto it = index_.find(std::string(id));
        if (it == index_.end() || !it->second.is_place) return std::nullopt;
        return it->second.index;
    }
    std::optional<std::size_t> transition_index(std::string_view id) const {
        auto it = index_.find(std::string(id));
        if (it == index_.end() || it->second.is_place) return std::nullopt;
        return it->second.index;
    }
    std::size_t require_place(std::string_view id) const {
        if (auto p = place_index(id)) return *p;
        throw UnknownIdentifier(std::string(id));
    }
    std::size_t require_transition(std::string_view id) const {
        if (auto t = transition_index(id)) return *t;
        throw UnknownIdentifier(std::string(id));
    }

    /// Sparse pre/post arcs, sorted by place index.
    const std::vector<Arc>& pre_arcs(std::size_t t) const { return pre_.at(t); }
    const std::vector<Arc>& post_arcs(std::size_t t) const { return post_.at(t); }

    /// F(p, t).
    Count pre_weight(std::size_t p, std::size_t t) const { return lookup(pre_.at(t), p); }
    /// F(t, p).
    Count post_weight(std::size_t t, std::size_t p) const { return lookup(post_.at(t), p); }

    /// w: the largest edge weight, 1 for an edgeless net.
    Count max_weight() const { return has_edges_ ? max_weight_ : 1; }

    bool operator==(const Net& o) const {
        return name_ == o.name_ && places_ == o.places_ && transitions_ == o.transitions_ && pre_ == o.pre_ &&
               post_ == o.post_;
    }

private:
    struct Entry {
        bool is_place;
        std::size_t index;
    };

    void declare(const std::string& id) {
        if (!valid_identifier(id)) throw InvalidArgument("invalid identifier '" + id + "'");
        if (index_.count(id)) throw InvalidArgument("duplicate identifier '" + id + "'");
    }

    void normalize(const std::string& id, std::vector<Arc>& arcs, const char* side) const {
        std::sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) { return a.place < b.place; });
        for (std::size_t i = 0; i < arcs.size(); ++i) {
            if (arcs[i].place >= places_.size())
                throw InvalidArgument("transition '" + id + "' references an undeclared place");
            if (arcs[i].weight < 1 || arcs[i].weight > kMaxWeight)
                throw InvalidArgument("transition '" + id + "' has a " + side + " weight outside [1, 2^31-1]");
            if (i && arcs[i].place == arcs[i - 1].place)
                throw InvalidArgument("transition '" + id + "' lists place '" + places_[arcs[i].place] + "' twice in " +
                                      side);
        }
    }

    static Count lookup(const std::vector<Arc>& arcs, std::size_t p) {
        auto it = std::lower_bound(arcs.begin(), arcs.end(), p, [](const Arc& a, std::size_t q) { return a.place < q; });
        return it != arcs.end() && it->place == p ? it->weight : 0;
    }

    std::string name_;
    std::vector<std::string> places_;
    std::vector<std::string> transitions_;
    std::vector<std::vector<Arc>> pre_;
    std::vector<std::vector<Arc>> post_;
    std::unordered_map<std::string, Entry> index_;
    Count max_weight_ = 1;
    bool has_edges_ = false;
};

namespace detail {
inline void require_marking(const Net& net, const Marking& m) {
    if (m.size() != net.num_places())
        throw InvalidArgument("marking has " + std::to_string(m.size()) + " entries but the net has " +
                              std::to_string(net.num_places()) + " places");
    for (Count c : m)
        if (c < 0) throw InvalidArgument("marking has a negative entry");
}
inline void require_transition(const Net& net, std::size_t t) {
    if (t >= net.num_transitions()) throw InvalidArgument("transition index out of range");
}
}  // namespace detail

inline Marking pre_mset(const Net& net, std::size_t t) {
    detail::require_transition(net, t);
    Marking m(net.num_places(), 0);
    for (const auto& a : net.pre_arcs(t)) m[a.place] = a.weight;
    return m;
}
inline Marking pre_mset(const Net& net, std::string_view t) { return pre_mset(net, net.require_transition(t)); }

inline Marking post_mset(const Net& net, std::size_t t) {
    detail::require_transition(net, t);
    Marking m(net.num_places(), 0);
    for (const auto& a : net.post_arcs(t)) m[a.place] = a.weight;
    return m;
}
inline Marking post_mset(const Net& net, std::string_view t) { return post_mset(net, net.require_transition(t)); }

inline bool enabled(const Net& net, const Marking& m, std::size_t t) {
    detail::require_marking(net, m);
    detail::require_transition(net, t);
    for (const auto& a : net.pre_arcs(t))
        if (m[a.place] < a.weight) return false;
    return true;
}
inline bool enabled(const Net& net, const Marking& m, std::string_view t) {
    return enabled(net, m, net.require_transition(t));
}

/// M' = M − pre(t) + post(t); throws NotEnabled when M does not cover pre(t).
inline Marking fire(const Net& net, const Marking& m, std::size_t t) {
    if (!enabled(net, m, t))
        throw NotEnabled(0, t, m, "transition '" + net.transition(t) + "' is not enabled at " + to_string(m));
    Marking r = m;
    for (const auto& a : net.pre_arcs(t)) r[a.place] -= a.weight;
    for (const auto& a : net.post_arcs(t)) r[a.place] += a.weight;
    return r;
}
inline Marking fire(const Net& net, const Marking& m, std::string_view t) {
    return fire(net, m, net.require_transition(t));
}

struct Step {
    std::size_t transition;
    Marking marking;
    bool operator==(const Step&) const = default;
};

/// M0 −t1→ M1 −t2→ … with every intermediate marking kept.
struct Execution {
    Marking start;
    std::vector<Step> steps;

    const Marking& end() const { return steps.empty() ? start : steps.back().marking; }
    std::vector<std::size_t> sequence() const {
        std::vector<std::size_t> s;
        for (const auto& st : steps) s.push_back(st.transition);
        return s;
    }
};

inline Execution replay(const Net& net, const Marking& m0, const std::vector<std::size_t>& sequence) {
    detail::require_marking(net, m0);
    Execution ex{m0, {}};
    for (std::size_t i = 0; i < sequence.size(); ++i) {
        const auto t = sequence[i];
        detail::require_transition(net, t);
        const Marking& cur = ex.end();
        if (!enabled(net, cur, t))
            throw NotEnabled(i, t, cur,
                             "step " + std::to_string(i) + ": transition '" + net.transition(t) +
                                 "' is not enabled at " + to_string(cur));
        Marking next = fire(net, cur, t);
        ex.steps.push_back({t, std::move(next)});
    }
    return ex;
}

inline std::vector<std::size_t> transition_indices(const Net& net, const std::vector<std::string>& names) {
    std::vector<std::size_t> out;
    for (const auto& n : names) out.push_back(net.require_transition(n));
    return out;
}

inline std::vector<std::size_t> place_indices(const Net& net, const std::vector<std::string>& names) {
    std::vector<std::size_t> out;
    for (const auto& n : names) out.push_back(net.require_place(n));
    return out;
}

/// Replays a sequence given by transition names.
inline Execution replay_named(const Net& net, const Marking& m0, const std::vector<std::string>& sequence) {
    return replay(net, m0, transition_indices(net, sequence));
}

/// The same places with only the transitions listed in `keep` (in their original order).
inline Net restrict_transitions(const Net& net, const std::vector<bool>& keep) {
    if (keep.size() != net.num_transitions()) throw InvalidArgument("transition mask has the wrong size");
    Net r(net.name());
    for (const auto& p : net.places()) r.add_place(p);
    for (std::size_t t = 0; t < net.num_transitions(); ++t)
        if (keep[t]) r.add_transition(net.transition(t), net.pre_arcs(t), net.post_arcs(t));
    return r;
}

/// Conversions between index lists and membership masks.
inline std::vector<bool> mask_of(std::size_t n, const std::vector<std::size_t>& items) {
    std::vector<bool> m(n, false);
    for (auto i : items) {
        if (i >= n) throw InvalidArgument("index out of range");
        m[i] = true;
    }
    return m;
}

inline std::vector<std::size_t> items_of(const std::vector<bool>& mask) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < mask.size(); ++i)
        if (mask[i]) out.push_back(i);
    return out;
}

}  // namespace ionet

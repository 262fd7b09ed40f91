#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "ionet/error.hpp"
#include "ionet/net.hpp"

namespace ionet {

inline constexpr std::string_view kDummyPlace = "__dummy";
inline constexpr std::size_t kDummySource = std::numeric_limits<std::size_t>::max();

/// Class membership of a whole net. A net belongs to a class when every transition does.
struct NetClass {
    bool ordinary = true;
    bool conservative = true;
    bool bimo = true;
    bool bio = true;
    bool imo = true;
    bool io = true;
    Count max_weight = 1;
    bool operator==(const NetClass&) const = default;
};

/// Class membership of a single transition.
struct TransitionClass {
    bool conservative;
    bool bimo;
    bool bio;
    bool imo;
    bool io;
};

namespace detail {

inline Count total(const std::vector<Arc>& arcs) {
    Count s = 0;
    for (const auto& a : arcs) s += a.weight;
    return s;
}

/// |pre − post| for sparse sorted arc lists.
inline Count excess(const std::vector<Arc>& pre, const std::vector<Arc>& post) {
    Count s = 0;
    std::size_t j = 0;
    for (const auto& a : pre) {
        while (j < post.size() && post[j].place < a.place) ++j;
        Count out = (j < post.size() && post[j].place == a.place) ? post[j].weight : 0;
        if (a.weight > out) s += a.weight - out;
    }
    return s;
}

}  // namespace detail

/// Per-transition class. A transition with an empty pre-mset is judged through the dummy place:
/// it becomes (dummy; ∅; ⟦dummy⟧ + post), so it is BIMO and BIO, and IMO only when post is empty.
inline TransitionClass classify_transition(const Net& net, std::size_t t) {
    const auto& pre = net.pre_arcs(t);
    const auto& post = net.post_arcs(t);
    const Count npre = detail::total(pre), npost = detail::total(post);
    TransitionClass c{};
    c.conservative = npre == npost;
    if (pre.empty()) {
        c.bimo = c.bio = true;
        c.imo = post.empty();
    } else {
        c.bimo = detail::excess(pre, post) <= 1;
        // |observations| = |pre| − 1 and |destinations| = |post| − |observations|.
        c.bio = c.bimo && npre <= 2;
        c.imo = c.bimo && npost == npre;
    }
    c.io = c.bio && c.imo;
    return c;
}

inline NetClass classify(const Net& net) {
    NetClass c;
    c.max_weight = net.max_weight();
    c.ordinary = c.max_weight == 1;
    for (std::size_t t = 0; t < net.num_transitions(); ++t) {
        auto tc = classify_transition(net, t);
        c.conservative = c.conservative && tc.conservative;
        c.bimo = c.bimo && tc.bimo;
        c.bio = c.bio && tc.bio;
        c.imo = c.imo && tc.imo;
        c.io = c.io && tc.io;
    }
    return c;
}

/// (source; observations; destinations) with pre = ⟦source⟧ + observations and
/// post = observations + destinations. A dummy source (`source == kDummySource`) stands for the
/// dummy place; its loop token is then reported in `dummy_destination` rather than in `destinations`.
struct Presentation {
    std::size_t source = kDummySource;
    Marking observations;
    Marking destinations;
    bool dummy_destination = false;

    bool dummy_source() const { return source == kDummySource; }
    /// k: the number of destination tokens, the dummy's loop token included.
    Count destination_count() const { return size(destinations) + (dummy_destination ? 1 : 0); }
    Count observation_count() const { return size(observations); }
    bool operator==(const Presentation&) const = default;
};

inline Presentation presentation(const Net& net, std::size_t t) {
    detail::require_transition(net, t);
    const auto& pre = net.pre_arcs(t);
    const auto& post = net.post_arcs(t);
    Presentation pr;
    pr.observations.assign(net.num_places(), 0);
    if (pre.empty()) {
        pr.destinations = post_mset(net, t);
        pr.dummy_destination = true;
        return pr;
    }
    const Count ex = detail::excess(pre, post);
    if (ex > 1)
        throw NotBimo("transition '" + net.transition(t) + "' consumes " + std::to_string(ex) +
                      " tokens more than it returns; it is not BIMO");
    if (ex == 1) {
        for (const auto& a : pre)
            if (a.weight > net.post_weight(t, a.place)) pr.source = a.place;
    } else {
        pr.source = pre.front().place;  // lowest-index place with pre ≥ 1
    }
    Marking pm = pre_mset(net, t);
    pm[pr.source] -= 1;
    pr.observations = pm;
    pr.destinations = post_mset(net, t);
    for (std::size_t p = 0; p < pm.size(); ++p) pr.destinations[p] -= pm[p];
    return pr;
}
inline Presentation presentation(const Net& net, std::string_view t) {
    return presentation(net, net.require_transition(t));
}

/// The net extended with the dummy place, plus the bookkeeping needed to lift markings.
struct AugmentedNet {
    Net net;
    bool added = false;
    std::size_t dummy = kDummySource;

    /// Lifts a marking of the original net: the dummy carries one token.
    Marking lift(const Marking& m) const {
        Marking r = m;
        if (added) r.push_back(1);
        return r;
    }
    /// Drops the dummy entry.
    Marking project(const Marking& m) const {
        Marking r = m;
        if (added) r.pop_back();
        return r;
    }
};

/// Gives every transition with an empty pre-mset a loop through a fresh last place `__dummy`.
/// Nets without such transitions come back unchanged.
inline AugmentedNet dummy_augment(const Net& net) {
    if (net.place_index(kDummyPlace) || net.transition_index(kDummyPlace))
        throw InvalidArgument("identifier '" + std::string(kDummyPlace) + "' is reserved");
    bool needed = false;
    for (std::size_t t = 0; t < net.num_transitions(); ++t) needed = needed || net.pre_arcs(t).empty();
    if (!needed) return {net, false, kDummySource};
    Net r(net.name());
    for (const auto& p : net.places()) r.add_place(p);
    const std::size_t d = r.add_place(std::string(kDummyPlace));
    for (std::size_t t = 0; t < net.num_transitions(); ++t) {
        auto pre = net.pre_arcs(t);
        auto post = net.post_arcs(t);
        if (pre.empty()) {
            pre.push_back({d, 1});
            post.push_back({d, 1});
        }
        r.add_transition(net.transition(t), std::move(pre), std::move(post));
    }
    return {std::move(r), true, d};
}

/// Rows of the bound table, finest applicable class first.
enum class TableRow { OrdImo, Io, Imo, OrdBimo, Bimo };

inline std::string_view row_name(TableRow r) {
    switch (r) {
        case TableRow::OrdImo: return "ord-IMO";
        case TableRow::Io: return "IO";
        case TableRow::Imo: return "IMO";
        case TableRow::OrdBimo: return "ord-BIMO";
        case TableRow::Bimo: return "BIMO";
    }
    return "?";
}

/// The finest bound-table row that applies; throws NotBimo outside the family.
inline TableRow table_row(const NetClass& c) {
    if (!c.bimo) throw NotBimo("net is not BIMO");
    if (c.imo && c.ordinary) return TableRow::OrdImo;
    if (c.io) return TableRow::Io;
    if (c.imo) return TableRow::Imo;
    if (c.ordinary) return TableRow::OrdBimo;
    return TableRow::Bimo;
}

/// Human-readable finest class label, e.g. "ord-IO" or "BIMO"; "none" outside the family.
inline std::string class_label(const NetClass& c) {
    if (!c.bimo) return "none";
    std::string base = c.io ? "IO" : c.imo ? "IMO" : c.bio ? "BIO" : "BIMO";
    return (c.ordinary ? "ord-" : "") + base;
}

}  // namespace ionet

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "ionet/classify.hpp"
#include "ionet/error.hpp"
#include "ionet/net.hpp"
#include "ionet/state_store.hpp"

namespace ionet {

/// The subnet of moving edges: (source, t) and (t, destination) for each presentation, all of weight 1.
/// Built over the dummy-augmented net, so `net` may carry one extra last place `__dummy`.
struct RelaxedNet {
    Net net;
    bool has_dummy = false;
    std::size_t base_places = 0;  // |P| of the net it was built from
};

inline RelaxedNet relaxed_net(const Net& input) {
    AugmentedNet aug = dummy_augment(input);
    const Net& net = aug.net;
    RelaxedNet r{Net(net.name()), aug.added, input.num_places()};
    for (const auto& p : net.places()) r.net.add_place(p);
    for (std::size_t t = 0; t < net.num_transitions(); ++t) {
        Presentation pr = presentation(net, t);  // throws NotBimo
        std::vector<Arc> post;
        for (std::size_t p = 0; p < pr.destinations.size(); ++p)
            if (pr.destinations[p] > 0) post.push_back({p, 1});
        r.net.add_transition(net.transition(t), {{pr.source, 1}}, std::move(post));
    }
    return r;
}

/// A strongly connected component of a relaxed net.
struct Component {
    std::vector<std::size_t> places;       // P_C
    std::vector<std::size_t> transitions;
    bool is_top = false;
    bool is_bottom = false;

    bool trivial() const { return places.size() + transitions.size() == 1; }
};

/// Strongly connected components of any net's place/transition graph, in a topological order
/// (every edge between components goes forward); ties are broken by the lowest vertex index,
/// with places numbered before transitions.
inline std::vector<Component> sccs(const Net& net) {
    const std::size_t np = net.num_places(), nv = np + net.num_transitions();
    std::vector<std::vector<std::size_t>> succ(nv);
    for (std::size_t t = 0; t < net.num_transitions(); ++t) {
        for (const auto& a : net.pre_arcs(t)) succ[a.place].push_back(np + t);
        for (const auto& a : net.post_arcs(t)) succ[np + t].push_back(a.place);
    }

    // Iterative Tarjan.
    constexpr std::size_t kUnset = SIZE_MAX;
    std::vector<std::size_t> index(nv, kUnset), low(nv, 0), comp(nv, kUnset);
    std::vector<bool> on_stack(nv, false);
    std::vector<std::size_t> stack;
    std::size_t counter = 0, ncomp = 0;
    struct Frame {
        std::size_t v, next;
    };
    for (std::size_t root = 0; root < nv; ++root) {
        if (index[root] != kUnset) continue;
        std::vector<Frame> frames{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            auto& f = frames.back();
            if (f.next < succ[f.v].size()) {
                std::size_t w = succ[f.v][f.next++];
                if (index[w] == kUnset) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
                continue;
            }
            std::size_t v = f.v;
            frames.pop_back();
            if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
            if (low[v] == index[v]) {
                std::size_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp[w] = ncomp;
                } while (w != v);
                ++ncomp;
            }
        }
    }

    // Condensation and a deterministic topological order.
    std::vector<std::size_t> min_vertex(ncomp, SIZE_MAX);
    for (std::size_t v = 0; v < nv; ++v) min_vertex[comp[v]] = std::min(min_vertex[comp[v]], v);
    std::vector<std::vector<std::size_t>> csucc(ncomp);
    std::vector<std::size_t> indeg(ncomp, 0);
    std::vector<bool> has_pred(ncomp, false), has_succ(ncomp, false);
    for (std::size_t v = 0; v < nv; ++v)
        for (auto w : succ[v])
            if (comp[v] != comp[w]) {
                csucc[comp[v]].push_back(comp[w]);
                has_succ[comp[v]] = true;
                has_pred[comp[w]] = true;
            }
    for (auto& s : csucc) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        for (auto c : s) ++indeg[c];
    }
    using Key = std::pair<std::size_t, std::size_t>;  // (min vertex, component)
    std::priority_queue<Key, std::vector<Key>, std::greater<Key>> ready;
    for (std::size_t c = 0; c < ncomp; ++c)
        if (!indeg[c]) ready.push({min_vertex[c], c});
    std::vector<std::size_t> order;
    while (!ready.empty()) {
        auto [mv, c] = ready.top();
        ready.pop();
        order.push_back(c);
        for (auto d : csucc[c])
            if (--indeg[d] == 0) ready.push({min_vertex[d], d});
    }

    std::vector<std::size_t> position(ncomp);
    for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = i;
    std::vector<Component> out(ncomp);
    for (std::size_t v = 0; v < nv; ++v) {
        auto& c = out[position[comp[v]]];
        if (v < np)
            c.places.push_back(v);
        else
            c.transitions.push_back(v - np);
    }
    for (std::size_t c = 0; c < ncomp; ++c) {
        out[position[c]].is_top = !has_pred[c];
        out[position[c]].is_bottom = !has_succ[c];
    }
    return out;
}

inline std::vector<Component> sccs(const RelaxedNet& r) { return sccs(r.net); }

enum class Richness { Rich, Poor };

/// Rich iff M(P_C) ≥ |P_C|. `m` is a marking of the original net; the dummy place, if any, holds 1.
inline std::vector<Richness> rich_poor(const RelaxedNet& r, const std::vector<Component>& comps, const Marking& m) {
    Marking full = m;
    if (r.has_dummy && full.size() == r.base_places) full.push_back(1);
    detail::require_marking(r.net, full);
    std::vector<Richness> out;
    for (const auto& c : comps) {
        Count tokens = 0;
        for (auto p : c.places) tokens += full[p];
        out.push_back(tokens >= Count(c.places.size()) ? Richness::Rich : Richness::Poor);
    }
    return out;
}

/// S is a siphon iff every transition that puts tokens into S also takes some from S.
inline bool is_siphon(const Net& net, const std::vector<std::size_t>& s) {
    auto in = mask_of(net.num_places(), s);
    for (std::size_t t = 0; t < net.num_transitions(); ++t) {
        bool feeds = false, takes = false;
        for (const auto& a : net.post_arcs(t)) feeds = feeds || in[a.place];
        for (const auto& a : net.pre_arcs(t)) takes = takes || in[a.place];
        if (feeds && !takes) return false;
    }
    return true;
}

/// The largest siphon inside `allowed`: repeatedly drop the places fed by a transition that takes
/// nothing from the remaining set.
inline std::vector<bool> largest_siphon_within(const Net& net, std::vector<bool> in) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t t = 0; t < net.num_transitions(); ++t) {
            bool takes = false;
            for (const auto& a : net.pre_arcs(t)) takes = takes || in[a.place];
            if (takes) continue;
            for (const auto& a : net.post_arcs(t))
                if (in[a.place]) {
                    in[a.place] = false;
                    changed = true;
                }
        }
    }
    return in;
}

/// Some nonempty siphon unmarked at M, or none. The result is the largest unmarked siphon;
/// with `minimize`, places are greedily removed while a nonempty siphon remains.
inline std::optional<std::vector<std::size_t>> minimal_unmarked_siphon(const Net& net, const Marking& m,
                                                                       bool minimize = false) {
    detail::require_marking(net, m);
    std::vector<bool> in(net.num_places());
    for (std::size_t p = 0; p < in.size(); ++p) in[p] = m[p] == 0;
    in = largest_siphon_within(net, in);
    if (std::none_of(in.begin(), in.end(), [](bool b) { return b; })) return std::nullopt;
    if (minimize) {
        for (std::size_t p = 0; p < in.size(); ++p) {
            if (!in[p]) continue;
            auto trial = in;
            trial[p] = false;
            trial = largest_siphon_within(net, trial);
            if (std::any_of(trial.begin(), trial.end(), [](bool b) { return b; })) in = trial;
        }
    }
    return items_of(in);
}

enum class Verdict { Yes, No, BudgetExceeded };

struct SelfCoverResult {
    Verdict verdict = Verdict::No;
    std::vector<std::size_t> sequence;  // a full covering sequence when Yes
    std::size_t explored = 0;
};

/// Is there M →σ M′ with M ≤ M′ and every transition occurring in σ?
/// Breadth-first over (marking, set of transitions used so far); exact when it completes.
inline SelfCoverResult is_self_coverable(const Net& net, const Marking& m, std::size_t node_budget = 200000) {
    detail::require_marking(net, m);
    const std::size_t np = net.num_places(), nt = net.num_transitions();
    const std::size_t mask_words = (nt + 31) / 32;
    StateStore store(np + mask_words);
    std::vector<StateStore::Id> parent;
    std::vector<std::uint32_t> via;
    std::vector<std::uint32_t> key;
    pack_marking(m, key);
    key.resize(np + mask_words, 0);
    store.insert(key);
    parent.push_back(StateStore::kNone);
    via.push_back(0);

    auto full = [&](std::span<const std::uint32_t> k) {
        for (std::size_t t = 0; t < nt; ++t)
            if (!((k[np + t / 32] >> (t % 32)) & 1)) return false;
        return true;
    };
    auto covers = [&](std::span<const std::uint32_t> k) {
        for (std::size_t p = 0; p < np; ++p)
            if (Count(k[p]) < m[p]) return false;
        return true;
    };
    SelfCoverResult res;
    for (StateStore::Id id = 0; id < store.size(); ++id) {
        res.explored = id + 1;
        std::vector<std::uint32_t> cur(store.get(id).begin(), store.get(id).end());
        if (full(cur) && covers(cur)) {
            res.verdict = Verdict::Yes;
            for (auto v = id; parent[v] != StateStore::kNone; v = parent[v]) res.sequence.push_back(via[v]);
            std::reverse(res.sequence.begin(), res.sequence.end());
            return res;
        }
        for (std::size_t t = 0; t < nt; ++t) {
            bool ok = true;
            for (const auto& a : net.pre_arcs(t)) ok = ok && Count(cur[a.place]) >= a.weight;
            if (!ok) continue;
            Marking next = unpack_marking(cur, np);
            for (const auto& a : net.pre_arcs(t)) next[a.place] -= a.weight;
            for (const auto& a : net.post_arcs(t)) next[a.place] += a.weight;
            pack_marking(next, key);
            key.resize(np + mask_words);
            for (std::size_t k = 0; k < mask_words; ++k) key[np + k] = cur[np + k];
            key[np + t / 32] |= 1u << (t % 32);
            if (store.insert(key).second) {
                parent.push_back(id);
                via.push_back(static_cast<std::uint32_t>(t));
                if (store.size() > node_budget) {
                    res.verdict = Verdict::BudgetExceeded;
                    res.explored = store.size();
                    return res;
                }
            }
        }
    }
    res.verdict = Verdict::No;
    return res;
}

struct CarrierMaximalResult {
    Verdict verdict = Verdict::Yes;
    std::optional<Marking> larger;  // a reachable marking with a strictly larger carrier when No
    std::size_t explored = 0;
};

/// Does no reachable marking have a larger carrier than M?
inline CarrierMaximalResult is_carrier_maximal(const Net& net, const Marking& m, std::size_t node_budget = 200000) {
    detail::require_marking(net, m);
    const std::size_t np = net.num_places();
    const std::size_t base = carrier(m).size();
    StateStore store(np);
    std::vector<std::uint32_t> key;
    pack_marking(m, key);
    store.insert(key);
    CarrierMaximalResult res;
    for (StateStore::Id id = 0; id < store.size(); ++id) {
        res.explored = id + 1;
        Marking cur = unpack_marking(store.get(id), np);
        if (carrier(cur).size() > base) {
            res.verdict = Verdict::No;
            res.larger = cur;
            return res;
        }
        for (std::size_t t = 0; t < net.num_transitions(); ++t) {
            if (!enabled(net, cur, t)) continue;
            pack_marking(fire(net, cur, t), key);
            if (store.insert(key).second && store.size() > node_budget) {
                res.verdict = Verdict::BudgetExceeded;
                res.explored = store.size();
                return res;
            }
        }
    }
    res.verdict = Verdict::Yes;
    return res;
}

}  // namespace ionet

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ionet/classify.hpp"
#include "ionet/error.hpp"
#include "ionet/net.hpp"
#include "ionet/state_store.hpp"

namespace ionet {

/// A result that may be cut short by a node budget. `value` is empty iff the budget ran out.
template <class T>
struct Bounded {
    std::optional<T> value;
    std::size_t explored = 0;

    bool exceeded() const { return !value.has_value(); }
    const T& operator*() const { return *value; }
};

// ---------------------------------------------------------------------------------------------
// Explicit reachability exploration

/// What an exploration should do with a newly discovered marking.
enum class Visit {
    Expand,  // explore its successors
    Prune,   // keep it as a leaf; its whole closure is already known to be live
    Stop,    // end the exploration here
};

/// Breadth-first reachability graph in compact form. Node ids follow discovery order (root = 0);
/// the outgoing edges of node v are `targets[begin[v] .. begin[v+1])`, labelled by `labels`.
struct StateGraph {
    std::size_t places = 0;
    StateStore store{0};
    std::vector<std::uint32_t> begin{0};
    std::vector<std::uint32_t> labels;
    std::vector<StateStore::Id> targets;
    std::vector<StateStore::Id> parent;
    std::vector<std::uint32_t> parent_label;
    std::vector<bool> pruned;
    bool complete = false;
    /// The node at which the visitor asked to stop, if it did.
    std::optional<StateStore::Id> stopped_at;

    std::size_t size() const { return store.size(); }
    Marking marking(StateStore::Id id) const { return unpack_marking(store.get(id), places); }
    std::vector<std::size_t> path_to(StateStore::Id id) const {
        std::vector<std::size_t> seq;
        for (auto v = id; parent[v] != StateStore::kNone; v = parent[v]) seq.push_back(parent_label[v]);
        std::reverse(seq.begin(), seq.end());
        return seq;
    }
};

/// Explores the reachability graph from `m0`, asking `visit(id, marking_words)` about every newly
/// discovered marking. Ends with `complete = false` once more than `node_budget` markings are known
/// or when the visitor answers Stop.
template <class Visitor>
StateGraph explore(const Net& net, const Marking& m0, std::size_t node_budget, Visitor&& visit) {
    detail::require_marking(net, m0);
    const std::size_t np = net.num_places(), nt = net.num_transitions();
    StateGraph g;
    g.places = np;
    g.store = StateStore(np);
    std::vector<std::uint32_t> key;
    pack_marking(m0, key);
    g.store.insert(key);
    g.parent.push_back(StateStore::kNone);
    g.parent_label.push_back(0);
    g.pruned.push_back(false);
    switch (visit(StateStore::Id{0}, std::span<const std::uint32_t>(key))) {
        case Visit::Stop: g.stopped_at = 0; return g;
        case Visit::Prune: g.pruned[0] = true; break;
        case Visit::Expand: break;
    }
    std::vector<std::uint32_t> cur(np);
    for (StateStore::Id id = 0; id < g.store.size(); ++id) {
        if (g.pruned[id]) {
            g.begin.push_back(static_cast<std::uint32_t>(g.targets.size()));
            continue;
        }
        auto s = g.store.get(id);
        std::copy(s.begin(), s.end(), cur.begin());
        for (std::size_t t = 0; t < nt; ++t) {
            bool ok = true;
            for (const auto& a : net.pre_arcs(t))
                if (Count(cur[a.place]) < a.weight) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            key = cur;
            for (const auto& a : net.pre_arcs(t)) key[a.place] -= static_cast<std::uint32_t>(a.weight);
            for (const auto& a : net.post_arcs(t)) {
                Count v = Count(key[a.place]) + a.weight;
                if (v > Count(UINT32_MAX - 1)) throw InvalidArgument("token count overflow during exploration");
                key[a.place] = static_cast<std::uint32_t>(v);
            }
            auto [nid, fresh] = g.store.insert(key);
            g.labels.push_back(static_cast<std::uint32_t>(t));
            g.targets.push_back(nid);
            if (!fresh) continue;
            g.parent.push_back(id);
            g.parent_label.push_back(static_cast<std::uint32_t>(t));
            g.pruned.push_back(false);
            switch (visit(nid, std::span<const std::uint32_t>(key))) {
                case Visit::Stop:
                    g.begin.push_back(static_cast<std::uint32_t>(g.targets.size()));
                    g.stopped_at = nid;
                    return g;
                case Visit::Prune: g.pruned[nid] = true; break;
                case Visit::Expand: break;
            }
        }
        g.begin.push_back(static_cast<std::uint32_t>(g.targets.size()));
        if (g.store.size() > node_budget) return g;
    }
    g.complete = true;
    return g;
}

inline StateGraph explore(const Net& net, const Marking& m0, std::size_t node_budget) {
    return explore(net, m0, node_budget, [](StateStore::Id, std::span<const std::uint32_t>) { return Visit::Expand; });
}

/// Per-node liveness facts of a complete state graph, from its SCC condensation:
/// reach(C) = transitions enabled somewhere in or below C; live(C) = reach(C) ∩ live(D) for every
/// successor component D. A transition is dead at v iff it is outside reach(scc(v)), and live at v
/// iff it is in live(scc(v)). Pruned nodes count as live for every transition.
struct LivenessFacts {
    std::vector<std::uint32_t> scc_of;
    std::vector<Bits> reach;
    std::vector<Bits> live;

    bool node_live(StateStore::Id v) const { return live[scc_of[v]].all(); }
    /// Every transition dead or live, at least one dead.
    bool node_dl(StateStore::Id v) const {
        const auto& r = reach[scc_of[v]];
        return r == live[scc_of[v]] && !r.all();
    }
};

inline LivenessFacts analyse(const Net& net, const StateGraph& g) {
    if (!g.complete) throw InvalidArgument("liveness analysis needs a complete state graph");
    const std::size_t n = g.size(), nt = net.num_transitions();
    LivenessFacts f;
    f.scc_of.assign(n, UINT32_MAX);

    // Iterative Tarjan; components are emitted sinks first, so successors are always finished.
    std::vector<std::uint32_t> index(n, UINT32_MAX), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<std::uint32_t> stack;
    struct Frame {
        std::uint32_t v, next;
    };
    std::vector<Frame> frames;
    std::uint32_t counter = 0;
    for (std::uint32_t root = 0; root < n; ++root) {
        if (index[root] != UINT32_MAX) continue;
        frames.push_back({root, g.begin[root]});
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            auto& fr = frames.back();
            if (fr.next < g.begin[fr.v + 1]) {
                std::uint32_t w = g.targets[fr.next++];
                if (index[w] == UINT32_MAX) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.push_back({w, g.begin[w]});
                } else if (on_stack[w]) {
                    low[fr.v] = std::min(low[fr.v], index[w]);
                }
                continue;
            }
            std::uint32_t v = fr.v;
            frames.pop_back();
            if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
            if (low[v] != index[v]) continue;

            const auto c = static_cast<std::uint32_t>(f.reach.size());
            std::vector<std::uint32_t> members;
            std::uint32_t w;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
                f.scc_of[w] = c;
                members.push_back(w);
            } while (w != v);
            Bits reach(nt), live(nt);
            live.fill();
            for (auto u : members) {
                if (g.pruned[u]) reach.fill();
                for (auto e = g.begin[u]; e < g.begin[u + 1]; ++e) {
                    reach.set(g.labels[e]);
                    auto d = f.scc_of[g.targets[e]];
                    if (d != c) {
                        reach |= f.reach[d];
                        live &= f.live[d];
                    }
                }
            }
            live &= reach;
            f.reach.push_back(std::move(reach));
            f.live.push_back(std::move(live));
        }
    }
    return f;
}

// ---------------------------------------------------------------------------------------------
// Public exact operations

struct ReachGraph {
    struct Edge {
        std::size_t from;
        std::size_t transition;
        std::size_t to;
    };
    std::vector<Marking> nodes;
    std::vector<Edge> edges;
    std::size_t root = 0;
};

inline Bounded<ReachGraph> reach_graph(const Net& net, const Marking& m0, std::size_t node_budget = 200000) {
    StateGraph g = explore(net, m0, node_budget);
    Bounded<ReachGraph> out;
    out.explored = g.size();
    if (!g.complete) return out;
    ReachGraph r;
    for (StateStore::Id v = 0; v < g.size(); ++v) {
        r.nodes.push_back(g.marking(v));
        for (auto e = g.begin[v]; e < g.begin[v + 1]; ++e) r.edges.push_back({v, g.labels[e], g.targets[e]});
    }
    out.value = std::move(r);
    return out;
}

/// True iff no marking reachable from M covers pre(t).
inline Bounded<bool> dead_at(const Net& net, const Marking& m, std::size_t t, std::size_t node_budget = 200000) {
    detail::require_transition(net, t);
    const auto& pre = net.pre_arcs(t);
    StateGraph g = explore(net, m, node_budget, [&](StateStore::Id, std::span<const std::uint32_t> k) {
        for (const auto& a : pre)
            if (Count(k[a.place]) < a.weight) return Visit::Expand;
        return Visit::Stop;
    });
    Bounded<bool> out;
    out.explored = g.size();
    if (g.stopped_at)
        out.value = false;
    else if (g.complete)
        out.value = true;
    return out;
}

inline Bounded<bool> is_live_exact(const Net& net, const Marking& m0, std::size_t node_budget = 200000) {
    StateGraph g = explore(net, m0, node_budget);
    Bounded<bool> out;
    out.explored = g.size();
    if (!g.complete) return out;
    out.value = analyse(net, g).node_live(0);
    return out;
}

struct DlMarking {
    Marking marking;
    std::vector<std::size_t> dead;
    std::vector<std::size_t> live;
    std::vector<std::size_t> path;  // from the queried marking
};

/// The DL-marking closest to M0 (breadth-first), or none when M0 is live.
inline Bounded<std::optional<DlMarking>> find_dl_marking(const Net& net, const Marking& m0,
                                                         std::size_t node_budget = 200000) {
    StateGraph g = explore(net, m0, node_budget);
    Bounded<std::optional<DlMarking>> out;
    out.explored = g.size();
    if (!g.complete) return out;
    LivenessFacts f = analyse(net, g);
    out.value = std::optional<DlMarking>{};
    if (f.node_live(0)) return out;
    for (StateStore::Id v = 0; v < g.size(); ++v) {
        if (!f.node_dl(v)) continue;
        DlMarking dl;
        dl.marking = g.marking(v);
        const auto& r = f.reach[f.scc_of[v]];
        for (std::size_t t = 0; t < net.num_transitions(); ++t) (r.test(t) ? dl.live : dl.dead).push_back(t);
        dl.path = g.path_to(v);
        *out.value = std::move(dl);
        return out;
    }
    throw InvalidArgument("internal: non-live marking without a reachable DL-marking");
}

// ---------------------------------------------------------------------------------------------
// Deadness by backward coverability

/// Minimal markings from which `target` can be covered: the finite basis of the upward-closed set
/// Pre*(↑target), computed by the usual backward saturation. `max_size` bounds the basis.
inline Bounded<std::vector<Marking>> coverability_basis(const Net& net, const Marking& target,
                                                        std::size_t max_size = 100000) {
    detail::require_marking(net, target);
    std::vector<Marking> basis{target};
    std::deque<Marking> work{target};  // FIFO: small elements first keeps the basis from drifting
    std::size_t steps = 0;
    while (!work.empty()) {
        Marking m = std::move(work.front());
        work.pop_front();
        // `m` may have been superseded while it waited.
        if (std::find(basis.begin(), basis.end(), m) == basis.end()) continue;
        for (std::size_t t = 0; t < net.num_transitions(); ++t) {
            // Smallest marking that enables t and covers m after firing it.
            Marking pre(m.size());
            for (std::size_t p = 0; p < m.size(); ++p) {
                Count after = m[p] - net.post_weight(t, p);
                pre[p] = std::max<Count>(after, 0) + net.pre_weight(p, t);
            }
            ++steps;
            bool dominated = false;
            for (const auto& b : basis)
                if (leq(b, pre)) {
                    dominated = true;
                    break;
                }
            if (dominated) continue;
            std::erase_if(basis, [&](const Marking& b) { return leq(pre, b); });
            basis.push_back(pre);
            work.push_back(std::move(pre));
            if (basis.size() > max_size) return {std::nullopt, steps};
        }
    }
    std::sort(basis.begin(), basis.end());
    return {std::move(basis), steps};
}

/// Answers "is some transition dead at M?" from the coverability bases of all pre-msets: t is dead
/// at M exactly when M lies above no basis element of t.
class DeadnessTester {
public:
    /// Throws BudgetExceeded when a basis outgrows `max_basis`.
    explicit DeadnessTester(const Net& net, std::size_t max_basis = 100000) {
        for (std::size_t t = 0; t < net.num_transitions(); ++t) {
            auto b = coverability_basis(net, pre_mset(net, t), max_basis);
            if (b.exceeded()) throw BudgetExceeded(b.explored, "coverability basis of " + net.transition(t));
            bases_.push_back(std::move(*b.value));
        }
    }

    bool dead(std::span<const std::uint32_t> m, std::size_t t) const {
        for (const auto& b : bases_[t]) {
            bool above = true;
            for (std::size_t p = 0; p < b.size() && above; ++p) above = Count(m[p]) >= b[p];
            if (above) return false;
        }
        return true;
    }

    /// The first transition dead at m, if any.
    std::optional<std::size_t> any_dead(std::span<const std::uint32_t> m) const {
        for (std::size_t t = 0; t < bases_.size(); ++t)
            if (dead(m, t)) return t;
        return std::nullopt;
    }

    const std::vector<Marking>& basis(std::size_t t) const { return bases_[t]; }

private:
    std::vector<std::vector<Marking>> bases_;
};

// ---------------------------------------------------------------------------------------------
// Witnesses

/// (M_wit, P_cruc, T_dead), optionally with the transition path that reaches M_wit.
struct Witness {
    Marking m_wit;
    std::vector<std::size_t> p_cruc;
    std::vector<std::size_t> t_dead;
    std::optional<std::vector<std::size_t>> path;
};

enum class WitnessVariant { Ordinary, Weighted };

struct WitnessReport {
    bool cond1 = false;  // diagnostic only
    bool cond2 = false;
    bool cond3 = false;
    /// Transitions outside T_dead whose restriction is not IMO.
    std::vector<std::size_t> non_imo;
    /// A dead-claimed transition whose restricted pre-mset gets covered.
    std::optional<std::size_t> revived;
    /// False when cond3's exploration hit its budget (cond3 is then reported false).
    bool cond3_complete = true;
    std::size_t explored = 0;

    bool sound() const { return cond2 && cond3; }
};

namespace detail {

/// A transition restricted to a place subset, over local place indices.
struct Restricted {
    std::vector<Arc> pre;
    std::vector<Arc> post;
    bool imo = false;
};

inline Restricted restrict_transition(const Net& net, std::size_t t, const std::vector<std::size_t>& local) {
    Restricted r;
    for (const auto& a : net.pre_arcs(t))
        if (local[a.place] != SIZE_MAX) r.pre.push_back({local[a.place], a.weight});
    for (const auto& a : net.post_arcs(t))
        if (local[a.place] != SIZE_MAX) r.post.push_back({local[a.place], a.weight});
    if (r.pre.empty())
        r.imo = r.post.empty();
    else
        r.imo = excess(r.pre, r.post) <= 1 && total(r.pre) == total(r.post);
    return r;
}

inline bool covers(std::span<const std::uint32_t> m, const std::vector<Arc>& pre) {
    for (const auto& a : pre)
        if (Count(m[a.place]) < a.weight) return false;
    return true;
}

inline void require_index_set(const std::vector<std::size_t>& s, std::size_t n, const char* what) {
    auto sorted = s;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw InvalidArgument(std::string(what) + " has a repeated element");
    for (auto i : s)
        if (i >= n) throw InvalidArgument(std::string(what) + " has an out-of-range element");
}

}  // namespace detail

/// Checks the three witness conditions. cond1 is the token bound on P_cruc ({0,1} and fewer tokens
/// than places for the ordinary variant, at most w per place for the weighted one); cond2 asks
/// that every transition outside T_dead restricts to an IMO transition on P_cruc; cond3 explores the
/// restricted net from M_wit|P_cruc with T∖T_dead and requires that no T_dead transition's restricted
/// pre-mset is ever covered.
inline WitnessReport check_witness(const Net& net, const Witness& w, WitnessVariant variant,
                                   std::size_t node_budget = 200000) {
    detail::require_marking(net, w.m_wit);
    detail::require_index_set(w.p_cruc, net.num_places(), "P_cruc");
    detail::require_index_set(w.t_dead, net.num_transitions(), "T_dead");
    if (w.t_dead.empty()) throw InvalidArgument("T_dead must be nonempty");

    std::vector<std::size_t> pc = w.p_cruc;
    std::sort(pc.begin(), pc.end());
    std::vector<std::size_t> local(net.num_places(), SIZE_MAX);
    for (std::size_t i = 0; i < pc.size(); ++i) local[pc[i]] = i;
    auto dead = mask_of(net.num_transitions(), w.t_dead);

    WitnessReport rep;
    if (variant == WitnessVariant::Ordinary) {
        Count sum = 0;
        bool binary = true;
        for (auto p : pc) {
            sum += w.m_wit[p];
            binary = binary && w.m_wit[p] <= 1;
        }
        rep.cond1 = binary && sum < Count(pc.size());
    } else {
        rep.cond1 = std::all_of(pc.begin(), pc.end(), [&](std::size_t p) { return w.m_wit[p] <= net.max_weight(); });
    }

    std::vector<detail::Restricted> rt;
    for (std::size_t t = 0; t < net.num_transitions(); ++t) {
        rt.push_back(detail::restrict_transition(net, t, local));
        if (!dead[t] && !rt.back().imo) rep.non_imo.push_back(t);
    }
    rep.cond2 = rep.non_imo.empty();

    StateStore store(pc.size());
    std::vector<std::uint32_t> key(pc.size());
    for (std::size_t i = 0; i < pc.size(); ++i) key[i] = static_cast<std::uint32_t>(w.m_wit[pc[i]]);
    store.insert(key);
    rep.cond3 = true;
    for (StateStore::Id id = 0; id < store.size() && rep.cond3; ++id) {
        std::vector<std::uint32_t> cur(store.get(id).begin(), store.get(id).end());
        for (std::size_t t = 0; t < rt.size(); ++t) {
            if (!detail::covers(cur, rt[t].pre)) continue;
            if (dead[t]) {
                rep.cond3 = false;
                rep.revived = t;
                break;
            }
            key = cur;
            for (const auto& a : rt[t].pre) key[a.place] -= static_cast<std::uint32_t>(a.weight);
            for (const auto& a : rt[t].post) key[a.place] += static_cast<std::uint32_t>(a.weight);
            if (store.insert(key).second && store.size() > node_budget) {
                rep.cond3 = false;
                rep.cond3_complete = false;
                break;
            }
        }
        if (!rep.cond3_complete) break;
    }
    rep.explored = store.size();
    return rep;
}

struct WitnessOptions {
    /// Largest number of candidate places the subset enumeration accepts.
    std::size_t subset_cap = 16;
    /// Require every transition (not only T∖T_dead) to restrict to IMO.
    bool strict = false;
    /// Only consider crucial sets satisfying the token bound: for ordinary nets {0,1}-valued with fewer
    /// tokens than places, for weighted nets at most w per place.
    bool bounded_crucial = false;
    /// Budget for each restricted exploration.
    std::size_t node_budget = 200000;
};

namespace detail {

/// Subset-enumerating witness search at a fixed marking, with per-net precomputation.
class WitnessFinder {
public:
    WitnessFinder(const Net& net, WitnessOptions opts) : net_(net), opts_(opts) {}

    const WitnessOptions& options() const { return opts_; }

    std::optional<Witness> find(const Marking& m) const {
        const std::size_t np = net_.num_places(), nt = net_.num_transitions();
        const Count w = net_.max_weight();
        const bool ordinary = w == 1;
        std::vector<std::size_t> pool;
        for (std::size_t p = 0; p < np; ++p)
            if (!opts_.bounded_crucial || m[p] <= w) pool.push_back(p);
        if (pool.size() > opts_.subset_cap) throw SubsetCapExceeded(pool.size(), opts_.subset_cap);
        if (nt == 0) return std::nullopt;

        std::vector<std::size_t> local(np, SIZE_MAX);
        std::vector<std::size_t> idx;
        std::vector<Restricted> rt(nt);
        for (std::size_t k = 1; k <= pool.size(); ++k) {
            idx.resize(k);
            for (std::size_t i = 0; i < k; ++i) idx[i] = i;
            while (true) {
                std::vector<std::size_t> s(k);
                for (std::size_t i = 0; i < k; ++i) s[i] = pool[idx[i]];
                if (!opts_.bounded_crucial || !ordinary || bounded_sum(m, s)) {
                    if (auto dead = dead_set(m, s, local, rt)) return Witness{m, s, *dead, std::nullopt};
                }
                // next combination in lexicographic order
                std::size_t i = k;
                while (i > 0 && idx[i - 1] == pool.size() - k + i - 1) --i;
                if (i == 0) break;
                ++idx[i - 1];
                for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
            }
        }
        return std::nullopt;
    }

private:
    static bool bounded_sum(const Marking& m, const std::vector<std::size_t>& s) {
        Count sum = 0;
        for (auto p : s) sum += m[p];
        return sum < Count(s.size());
    }

    /// D = T∖E for crucial set s, or none when (m, s) admits no witness.
    std::optional<std::vector<std::size_t>> dead_set(const Marking& m, const std::vector<std::size_t>& s,
                                                     std::vector<std::size_t>& local,
                                                     std::vector<Restricted>& rt) const {
        const std::size_t nt = net_.num_transitions();
        for (std::size_t i = 0; i < s.size(); ++i) local[s[i]] = i;
        std::vector<std::uint32_t> start(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) start[i] = static_cast<std::uint32_t>(m[s[i]]);
        bool ok = true;
        for (std::size_t t = 0; t < nt && ok; ++t) {
            rt[t] = restrict_transition(net_, t, local);
            if (!rt[t].imo && (opts_.strict || covers(start, rt[t].pre))) ok = false;
        }
        std::optional<std::vector<std::size_t>> result;
        if (ok) result = explore_restricted(start, rt);
        for (auto p : s) local[p] = SIZE_MAX;
        return result;
    }

    std::optional<std::vector<std::size_t>> explore_restricted(const std::vector<std::uint32_t>& start,
                                                               const std::vector<Restricted>& rt) const {
        const std::size_t nt = rt.size();
        std::vector<bool> seen_enabled(nt, false);
        std::size_t n_enabled = 0;
        StateStore store(start.size());
        store.insert(start);
        std::vector<std::uint32_t> cur(start.size()), key(start.size());
        for (StateStore::Id id = 0; id < store.size(); ++id) {
            auto sp = store.get(id);
            std::copy(sp.begin(), sp.end(), cur.begin());
            for (std::size_t t = 0; t < nt; ++t) {
                if (!covers(cur, rt[t].pre)) continue;
                if (!rt[t].imo) return std::nullopt;  // a non-IMO transition is not dead here
                if (!seen_enabled[t]) {
                    seen_enabled[t] = true;
                    if (++n_enabled == nt) return std::nullopt;
                }
                key = cur;
                for (const auto& a : rt[t].pre) key[a.place] -= static_cast<std::uint32_t>(a.weight);
                for (const auto& a : rt[t].post) key[a.place] += static_cast<std::uint32_t>(a.weight);
                if (store.insert(key).second && store.size() > opts_.node_budget)
                    throw BudgetExceeded(store.size(), "restricted witness exploration");
            }
        }
        std::vector<std::size_t> dead;
        for (std::size_t t = 0; t < nt; ++t)
            if (!seen_enabled[t]) dead.push_back(t);
        return dead;
    }

    const Net& net_;
    WitnessOptions opts_;
};

}  // namespace detail

/// Searches crucial sets by increasing size, then lexicographically; for each, T_I is the set of
/// transitions restricting to IMO, E the transitions ever enabled while firing T_I from M|P_cruc, and
/// (M, P_cruc, T∖E) is returned for the first set where T∖E is nonempty and contains T∖T_I.
inline std::optional<Witness> find_witness(const Net& net, const Marking& m, const WitnessOptions& opts = {}) {
    detail::require_marking(net, m);
    return detail::WitnessFinder(net, opts).find(m);
}

}  // namespace ionet

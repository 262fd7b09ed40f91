#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "ionet/classify.hpp"
#include "ionet/error.hpp"
#include "ionet/liveness.hpp"
#include "ionet/net.hpp"
#include "ionet/state_store.hpp"
#include "ionet/structure.hpp"

namespace ionet {

// ---------------------------------------------------------------------------------------------
// Bound table and truncation

struct Bounds {
    Count first = 0;   // some live marking (if any) fits below this per place
    Count second = 0;  // liveness is decided by counts truncated at this value
    TableRow row = TableRow::Bimo;
    bool operator==(const Bounds&) const = default;
};

inline Bounds bounds_for(const NetClass& c, std::size_t p_count, Count w) {
    const Count n = static_cast<Count>(p_count);
    NetClass cw = c;
    cw.max_weight = w;
    switch (table_row(cw)) {
        case TableRow::OrdImo: return {1, 2 * n, TableRow::OrdImo};
        case TableRow::Io: return {2, 4 * n, TableRow::Io};
        case TableRow::Imo: return {w, 2 * w * n, TableRow::Imo};
        case TableRow::OrdBimo: return {n, 2 * n, TableRow::OrdBimo};
        case TableRow::Bimo: return {w * n, 2 * w * n, TableRow::Bimo};
    }
    throw NotBimo("net is not BIMO");
}

inline Bounds bounds_for(const NetClass& c, std::size_t p_count) { return bounds_for(c, p_count, c.max_weight); }

/// The saturation cap 2·w·|P| of the capped search.
inline Count cap_for(const Net& net) { return 2 * net.max_weight() * static_cast<Count>(net.num_places()); }

/// M′(p) = min(M(p), 2·w·|P|).
inline Marking truncate(const Net& net, const Marking& m) {
    detail::require_marking(net, m);
    const Count cap = cap_for(net);
    Marking r = m;
    for (auto& c : r) c = std::min(c, cap);
    return r;
}

// ---------------------------------------------------------------------------------------------
// Capped configurations

/// A marking truncated at the cap plus one saturation flag per place.
struct CappedConfig {
    Marking counts;
    std::vector<bool> saturated;
    bool operator==(const CappedConfig&) const = default;
};

namespace detail {
inline void apply_cap(CappedConfig& c, Count cap) {
    for (std::size_t p = 0; p < c.counts.size(); ++p)
        if (c.counts[p] > cap) {
            c.counts[p] = cap;
            c.saturated[p] = true;
        }
}
}  // namespace detail

/// The search's starting point: M0 capped, flags set where capping happened.
inline CappedConfig initial_config(const Net& net, const Marking& m0) {
    detail::require_marking(net, m0);
    CappedConfig c{m0, std::vector<bool>(m0.size(), false)};
    detail::apply_cap(c, cap_for(net));
    return c;
}

/// One move of the capped search: fire a transition, or add a token back to a saturated place.
struct PathStep {
    enum class Kind { Fire, Increment };
    Kind kind;
    std::size_t index;  // transition or place
    bool operator==(const PathStep&) const = default;
};

/// All configurations one move away: first every enabled transition (fired, then re-capped), then
/// every saturated place below the cap incremented by one. Duplicates are removed.
inline std::vector<CappedConfig> capped_successors(const Net& net, const CappedConfig& cfg) {
    detail::require_marking(net, cfg.counts);
    if (cfg.saturated.size() != cfg.counts.size()) throw InvalidArgument("saturation flags have the wrong size");
    const Count cap = cap_for(net);
    std::vector<CappedConfig> out;
    auto add = [&](CappedConfig c) {
        if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(std::move(c));
    };
    for (std::size_t t = 0; t < net.num_transitions(); ++t) {
        if (!enabled(net, cfg.counts, t)) continue;
        CappedConfig c{fire(net, cfg.counts, t), cfg.saturated};
        detail::apply_cap(c, cap);
        add(std::move(c));
    }
    for (std::size_t p = 0; p < cfg.counts.size(); ++p)
        if (cfg.saturated[p] && cfg.counts[p] < cap) {
            CappedConfig c = cfg;
            ++c.counts[p];
            add(std::move(c));
        }
    return out;
}

// ---------------------------------------------------------------------------------------------
// The capped non-liveness search

struct NonliveOptions {
    /// Maximum number of capped configurations per call.
    std::size_t node_budget = 500000;
    std::size_t subset_cap = 16;
    /// Literal IMO check on all transitions of the restriction.
    bool strict = false;
    /// Restrict crucial sets to the token bound (see WitnessOptions::bounded_crucial).
    bool bounded_crucial = true;
    /// Budget of each restricted witness exploration.
    std::size_t witness_budget = 200000;
    /// Stop remembering configurations across calls beyond this many.
    std::size_t cache_limit = 4000000;
};

struct NonliveResult {
    bool nonlive = false;
    /// At a configuration whose counts are M_wit (a capped marking).
    std::optional<Witness> witness;
    /// Moves from the initial configuration to the witness configuration.
    std::vector<PathStep> path;
    std::size_t configs_explored = 0;
};

/// Breadth-first search over capped configurations with a witness check at each one.
/// An instance keeps its caches between calls on the same net: per-marking witness results,
/// configurations whose closure is witness-free, and configurations already known to lead to a witness.
class NonlivenessSearch {
public:
    NonlivenessSearch(const Net& net, NonliveOptions opts = {})
        : net_(net),
          opts_(opts),
          np_(net.num_places()),
          fw_((net.num_places() + 31) / 32),
          cap_(cap_for(net)),
          finder_(net, WitnessOptions{opts.subset_cap, opts.strict, opts.bounded_crucial, opts.witness_budget}),
          witness_keys_(net.num_places()),
          clean_(net.num_places() + fw_),
          doomed_(net.num_places() + fw_) {
        if (!classify(net).bimo) throw NotBimo("the capped search needs a BIMO net");
    }

    const Net& net() const { return net_; }

    NonliveResult run(const Marking& m0) {
        CappedConfig c0 = initial_config(net_, m0);
        const std::size_t width = np_ + fw_;
        std::vector<std::uint32_t> key(width);
        encode(c0.counts, c0.saturated, key);

        NonliveResult res;
        if (clean_.find(key) != StateStore::kNone) return res;
        if (auto d = doomed_.find(key); d != StateStore::kNone) return from_doomed(d, {});

        StateStore seen(width);
        std::vector<StateStore::Id> parent;
        std::vector<PathStep> via;
        seen.insert(key);
        parent.push_back(StateStore::kNone);
        via.push_back({PathStep::Kind::Fire, 0});

        auto path_to = [&](StateStore::Id id) {
            std::vector<PathStep> p;
            for (auto v = id; parent[v] != StateStore::kNone; v = parent[v]) p.push_back(via[v]);
            std::reverse(p.begin(), p.end());
            return p;
        };
        auto remember_path = [&](StateStore::Id id, const std::vector<PathStep>& full, std::size_t w_index) {
            // Every configuration on the path reaches the witness through the rest of the path.
            std::vector<StateStore::Id> chain;
            for (auto v = id; v != StateStore::kNone; v = parent[v]) chain.push_back(v);
            std::reverse(chain.begin(), chain.end());
            for (std::size_t i = 0; i < chain.size() && doomed_.size() < opts_.cache_limit; ++i) {
                auto [did, fresh] = doomed_.insert(seen.get(chain[i]));
                if (fresh)
                    doomed_info_.push_back({w_index, std::vector<PathStep>(full.begin() + long(i), full.end())});
                (void)did;
            }
        };

        std::vector<std::uint32_t> cur(width), next(width);
        for (StateStore::Id id = 0; id < seen.size(); ++id) {
            auto sp = seen.get(id);
            std::copy(sp.begin(), sp.end(), cur.begin());
            res.configs_explored = id + 1;

            if (auto wi = witness_at(cur); wi != kNoWitness) {
                auto path = path_to(id);
                remember_path(id, path, wi);
                res.nonlive = true;
                res.witness = witnesses_[wi];
                res.path = std::move(path);
                return res;
            }

            auto consider = [&](PathStep step) -> std::optional<NonliveResult> {
                if (clean_.find(next) != StateStore::kNone) return std::nullopt;
                if (auto d = doomed_.find(next); d != StateStore::kNone) {
                    auto prefix = path_to(id);
                    prefix.push_back(step);
                    auto r = from_doomed(d, prefix);
                    r.configs_explored = seen.size();
                    return r;
                }
                auto [nid, fresh] = seen.insert(next);
                if (!fresh) return std::nullopt;
                parent.push_back(id);
                via.push_back(step);
                if (seen.size() > opts_.node_budget)
                    throw BudgetExceeded(seen.size(), "capped non-liveness search");
                return std::nullopt;
            };

            for (std::size_t t = 0; t < net_.num_transitions(); ++t) {
                if (!covers_counts(cur, t)) continue;
                next = cur;
                for (const auto& a : net_.pre_arcs(t)) next[a.place] -= static_cast<std::uint32_t>(a.weight);
                for (const auto& a : net_.post_arcs(t)) {
                    Count v = Count(next[a.place]) + a.weight;
                    if (v > cap_) {
                        v = cap_;
                        next[np_ + a.place / 32] |= 1u << (a.place % 32);
                    }
                    next[a.place] = static_cast<std::uint32_t>(v);
                }
                if (auto r = consider({PathStep::Kind::Fire, t})) return *r;
            }
            for (std::size_t p = 0; p < np_; ++p) {
                if (!((cur[np_ + p / 32] >> (p % 32)) & 1) || Count(cur[p]) >= cap_) continue;
                next = cur;
                ++next[p];
                if (auto r = consider({PathStep::Kind::Increment, p})) return *r;
            }
        }
        // The whole closure is witness-free.
        for (StateStore::Id id = 0; id < seen.size() && clean_.size() < opts_.cache_limit; ++id)
            clean_.insert(seen.get(id));
        res.configs_explored = seen.size();
        return res;
    }

private:
    static constexpr std::size_t kNoWitness = SIZE_MAX;
    struct Doomed {
        std::size_t witness;
        std::vector<PathStep> suffix;
    };

    void encode(const Marking& counts, const std::vector<bool>& sat, std::vector<std::uint32_t>& key) const {
        std::fill(key.begin(), key.end(), 0u);
        for (std::size_t p = 0; p < np_; ++p) {
            key[p] = static_cast<std::uint32_t>(counts[p]);
            if (sat[p]) key[np_ + p / 32] |= 1u << (p % 32);
        }
    }

    bool covers_counts(const std::vector<std::uint32_t>& cur, std::size_t t) const {
        for (const auto& a : net_.pre_arcs(t))
            if (Count(cur[a.place]) < a.weight) return false;
        return true;
    }

    std::size_t witness_at(const std::vector<std::uint32_t>& cfg) {
        std::span<const std::uint32_t> counts(cfg.data(), np_);
        auto [id, fresh] = witness_keys_.insert(counts);
        if (!fresh) return witness_index_[id];
        Marking m = unpack_marking(counts, np_);
        std::size_t wi = kNoWitness;
        if (auto w = finder_.find(m)) {
            witnesses_.push_back(std::move(*w));
            wi = witnesses_.size() - 1;
        }
        witness_index_.push_back(wi);
        return wi;
    }

    NonliveResult from_doomed(StateStore::Id d, std::vector<PathStep> prefix) const {
        NonliveResult r;
        r.nonlive = true;
        r.witness = witnesses_[doomed_info_[d].witness];
        r.path = std::move(prefix);
        r.path.insert(r.path.end(), doomed_info_[d].suffix.begin(), doomed_info_[d].suffix.end());
        return r;
    }

    const Net& net_;
    NonliveOptions opts_;
    std::size_t np_, fw_;
    Count cap_;
    detail::WitnessFinder finder_;
    StateStore witness_keys_;
    std::vector<std::size_t> witness_index_;
    std::vector<Witness> witnesses_;
    StateStore clean_;
    StateStore doomed_;
    std::vector<Doomed> doomed_info_;
};

/// Decides whether M0 is non-live in a BIMO net by the capped search; throws BudgetExceeded.
inline NonliveResult is_nonlive(const Net& net, const Marking& m0, const NonliveOptions& opts = {}) {
    NonlivenessSearch search(net, opts);
    return search.run(m0);
}

// ---------------------------------------------------------------------------------------------
// Structural liveness

namespace detail {

/// Detects markings that carry an unmarked siphon feeding some transition (which is then dead forever).
class SiphonTester {
public:
    explicit SiphonTester(const Net& net) : net_(net), small_(net.num_places() <= 64) {
        if (!small_) return;
        for (std::size_t t = 0; t < net.num_transitions(); ++t) {
            std::uint64_t pre = 0, post = 0;
            for (const auto& a : net.pre_arcs(t)) pre |= 1ull << a.place;
            for (const auto& a : net.post_arcs(t)) post |= 1ull << a.place;
            pre_.push_back(pre);
            post_.push_back(post);
        }
        all_ = net.num_places() == 64 ? ~0ull : ((1ull << net.num_places()) - 1);
    }

    bool doomed(std::span<const std::uint32_t> m) const {
        if (!small_) {
            std::vector<bool> in(m.size());
            for (std::size_t p = 0; p < m.size(); ++p) in[p] = m[p] == 0;
            in = largest_siphon_within(net_, in);
            for (std::size_t t = 0; t < net_.num_transitions(); ++t)
                for (const auto& a : net_.pre_arcs(t))
                    if (in[a.place]) return true;
            return false;
        }
        std::uint64_t s = 0;
        for (std::size_t p = 0; p < m.size(); ++p)
            if (!m[p]) s |= 1ull << p;
        s &= all_;
        bool changed = true;
        while (changed && s) {
            changed = false;
            for (std::size_t t = 0; t < pre_.size(); ++t)
                if (!(pre_[t] & s) && (post_[t] & s)) {
                    s &= ~post_[t];
                    changed = true;
                }
        }
        if (!s) return false;
        for (auto pre : pre_)
            if (pre & s) return true;
        return false;
    }

private:
    const Net& net_;
    bool small_;
    std::vector<std::uint64_t> pre_, post_;
    std::uint64_t all_ = 0;
};

}  // namespace detail

struct SlpOptions {
    /// Markings per exact exploration, and truncated markings per truncated search.
    std::size_t node_budget = 500000;
    std::size_t candidate_budget = 200000;
    /// Enumerate the box [0, override]^P instead of the first bound of the bound table.
    std::optional<Count> first_bound_override;
    /// Exploration size tried before a non-conservative net falls back to the capped search.
    std::size_t quick_nodes = 20000;
    /// Stop remembering marking verdicts beyond this many.
    std::size_t cache_limit = 2000000;
    /// Seeded random runs tried per marking before exploring it (0 disables them).
    std::size_t probe_walks = 4;
};

/// Decides liveness of individual markings of one net, remembering what it learns.
///
/// Each query explores the reachability graph and stops early at any marking that
///  - is already known to be non-live,
///  - has an unmarked siphon that feeds a transition, or
///  - (ordinary BIMO nets) has a carrier C such that the {0,1}-marking of C is known to reach a
///    marking with such a siphon; tokens added on an already marked place can be pasted down along
///    the same run, so the larger marking reaches a marking with the same unmarked siphon.
/// Markings already known to be live are leaves (everything reachable from a live marking is live).
/// A finished exploration is decided exactly from its SCC condensation. When the exploration does
/// not finish, conservative nets report BudgetExceeded and other nets switch to truncated closures
/// (see closure()) with thresholds growing up to 2·w·|P|, where the closure decides liveness exactly.
/// Deadness of a transition is read off its backward-coverability basis.
class LivenessOracle {
public:
    LivenessOracle(const Net& net, SlpOptions opts = {})
        : net_(net), opts_(opts), cls_(classify(net)), siphons_(net), known_(net.num_places()) {
        if (!cls_.bimo) throw NotBimo("structural liveness is decided for BIMO nets only");
        transfer_ = cls_.ordinary;
    }

    std::size_t explored() const { return explored_; }

    bool live(const Marking& m) {
        detail::require_marking(net_, m);
        std::vector<std::uint32_t> key;
        pack_marking(m, key);
        if (auto v = lookup(key)) return *v == kLive;
        // Markings doomed by a siphon of their own are recognised again at no cost; not caching
        // them keeps the cache small during box enumeration.
        if (siphons_.doomed(key)) return false;
        if (probe_walks(m)) return false;

        const bool exact = cls_.conservative;
        const std::size_t budget = exact ? opts_.node_budget : std::min(opts_.quick_nodes, opts_.node_budget);
        std::uint8_t stop_kind = kUnknown;
        StateGraph g = explore(net_, m, budget, [&](StateStore::Id, std::span<const std::uint32_t> k) {
            std::uint8_t v = screen(k);
            if (v == kLive) return Visit::Prune;
            if (v == kUnknown) return Visit::Expand;
            stop_kind = v;
            return Visit::Stop;
        });
        explored_ += g.size();

        if (g.stopped_at) {
            // Every marking on the tree path reaches the doomed one.
            for (auto v = *g.stopped_at; v != StateStore::kNone; v = g.parent[v]) remember(g.store.get(v), stop_kind);
            return false;
        }
        if (g.complete) {
            LivenessFacts f = analyse(net_, g);
            for (StateStore::Id v = 0; v < g.size(); ++v)
                if (!g.pruned[v]) remember(g.store.get(v), f.node_live(v) ? kLive : kNonLive);
            return f.node_live(0);
        }
        if (exact) throw BudgetExceeded(g.size(), "reachability exploration of a conservative net");

        const bool r = truncated_live(m);
        remember(key, r ? kLive : kNonLive);
        return r;
    }

private:
    static constexpr std::uint8_t kUnknown = 0, kLive = 1, kNonLive = 2, kSiphon = 3;

    /// What is already known about a concrete marking: a cached verdict, kSiphon when it (or, by
    /// carrier transfer, its {0,1} carrier marking) reaches an unmarked consumer siphon, else kUnknown.
    std::uint8_t screen(std::span<const std::uint32_t> k) {
        if (auto v = lookup(k)) return *v;
        if (siphons_.doomed(k)) return kSiphon;
        if (transfer_) {
            probe_.assign(k.begin(), k.end());
            for (auto& c : probe_) c = c ? 1 : 0;
            if (auto v = lookup(probe_); v && *v == kSiphon) return kSiphon;
        }
        return kUnknown;
    }

    /// Tries thresholds w, 2w, 4w, ... up to the cap (see closure()).
    /// A few short seeded random runs from m; true when one of them reaches a marking known to be
    /// non-live (the markings on that run are then remembered as non-live). Cheap evidence that spares the breadth-first exploration for markings with large
    /// reachability sets.
    bool probe_walks(const Marking& m) {
        const std::size_t nt = net_.num_transitions();
        if (nt == 0 || opts_.probe_walks == 0) return false;
        std::uint64_t seed = 0x9E3779B97F4A7C15ull;
        for (auto c : m) seed = (seed ^ std::uint64_t(c)) * 0x100000001B3ull;
        auto rng = [&seed] {  // splitmix64
            std::uint64_t z = (seed += 0x9E3779B97F4A7C15ull);
            z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
            z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
            return z ^ (z >> 31);
        };
        std::vector<std::size_t> on;
        std::vector<std::vector<std::uint32_t>> trail;  // every marking on the run reaches the hit
        const std::size_t steps = 4 * net_.num_places() + 8;
        for (std::size_t walk = 0; walk < opts_.probe_walks; ++walk) {
            std::vector<std::uint32_t> cur;
            pack_marking(m, cur);
            trail.clear();
            for (std::size_t s = 0; s < steps; ++s) {
                on.clear();
                for (std::size_t t = 0; t < nt; ++t) {
                    bool ok = true;
                    for (const auto& a : net_.pre_arcs(t)) ok = ok && Count(cur[a.place]) >= a.weight;
                    if (ok) on.push_back(t);
                }
                if (on.empty()) break;  // a deadlock with transitions is caught by the exploration
                const std::size_t t = on[std::size_t(rng() % on.size())];
                for (const auto& a : net_.pre_arcs(t)) cur[a.place] -= static_cast<std::uint32_t>(a.weight);
                for (const auto& a : net_.post_arcs(t)) cur[a.place] += static_cast<std::uint32_t>(a.weight);
                std::uint8_t v = screen(cur);
                if (v == kLive) break;
                trail.push_back(cur);
                if (v == kNonLive || v == kSiphon) {
                    for (const auto& k : trail) remember(k, v == kSiphon ? kSiphon : kNonLive);
                    std::vector<std::uint32_t> key;
                    pack_marking(m, key);
                    remember(key, v == kSiphon ? kSiphon : kNonLive);
                    return true;
                }
            }
        }
        return false;
    }

    bool truncated_live(const Marking& m) {
        if (!dead_) dead_ = std::make_unique<DeadnessTester>(net_);
        const Count cap = cap_for(net_);
        for (Count k = std::max<Count>(1, cls_.max_weight);; k = std::min(cap, 2 * k)) {
            if (auto r = closure(m, k)) return *r;
            if (k >= cap) throw InvalidArgument("inconclusive truncated search at the cap");
        }
    }

    /// Breadth-first closure over markings truncated at threshold k, where a count of k stands for
    /// "at least k", so consuming from it may or may not lower it. The closure over-approximates
    /// everything reachable, and not being dead is inherited by larger markings: if no truncated
    /// marking in the closure has a dead transition, the start marking is live (for any k ≥ w).
    /// At k = 2·w·|P| truncation preserves liveness both ways, so a truncated marking with a dead
    /// transition proves the start marking non-live; below the cap such a hit is inconclusive (none).
    std::optional<bool> closure(const Marking& m, Count k) {
        const std::size_t np = net_.num_places();
        const bool at_cap = k >= cap_for(net_);
        const auto top = static_cast<std::uint32_t>(k);
        std::vector<std::uint32_t> cur(np);
        for (std::size_t p = 0; p < np; ++p) cur[p] = static_cast<std::uint32_t>(std::min(m[p], k));

        StateStore seen(np);
        std::vector<StateStore::Id> parent;
        std::vector<bool> pruned;
        seen.insert(cur);
        parent.push_back(StateStore::kNone);

        std::optional<StateStore::Id> bad;
        std::uint8_t bad_kind = kNonLive;
        std::vector<std::uint32_t> next(np);
        std::vector<std::size_t> open;  // places at the threshold whose new count is a choice
        std::vector<std::uint32_t> low(np);
        for (StateStore::Id id = 0; id < seen.size(); ++id) {
            auto sp = seen.get(id);
            cur.assign(sp.begin(), sp.end());
            // Cached verdicts are about concrete markings; every truncated marking is one.
            std::uint8_t v = screen(cur);
            // Below the cap a live verdict only covers the truncated marking itself, not the larger
            // markings its threshold counts stand for.
            if (v == kLive && !at_cap && std::find(cur.begin(), cur.end(), top) != cur.end()) v = kUnknown;
            if (v == kUnknown && dead_->any_dead(cur)) v = kNonLive;
            pruned.push_back(v == kLive);
            if (v == kLive) continue;
            if (v != kUnknown) {
                if (!at_cap) {
                    explored_ += seen.size();
                    return std::nullopt;
                }
                bad = id;
                bad_kind = v;
                break;
            }
            for (std::size_t t = 0; t < net_.num_transitions(); ++t) {
                bool on = true;
                for (const auto& a : net_.pre_arcs(t)) on = on && Count(cur[a.place]) >= a.weight;
                if (!on) continue;
                next = cur;
                open.clear();
                for (const auto& a : net_.pre_arcs(t)) next[a.place] -= static_cast<std::uint32_t>(a.weight);
                for (const auto& a : net_.post_arcs(t)) next[a.place] += static_cast<std::uint32_t>(a.weight);
                for (std::size_t p = 0; p < np; ++p) {
                    if (next[p] > top) next[p] = top;
                    if (cur[p] == top && next[p] < top) {
                        low[p] = next[p];
                        open.push_back(p);
                    }
                }
                for (;;) {
                    auto [nid, fresh] = seen.insert(next);
                    if (fresh) {
                        parent.push_back(id);
                        if (seen.size() > opts_.node_budget) {
                            explored_ += seen.size();
                            throw BudgetExceeded(seen.size(), "truncated liveness search");
                        }
                    }
                    // Odometer over the open places.
                    std::size_t i = 0;
                    for (; i < open.size(); ++i) {
                        auto p = open[i];
                        if (next[p] < top) {
                            ++next[p];
                            break;
                        }
                        next[p] = low[p];
                    }
                    if (i == open.size()) break;
                }
            }
        }
        explored_ += seen.size();
        if (bad) {
            // At the cap, liveness passes from each truncated marking to its successors, so every
            // ancestor is non-live. Abstract paths are not runs, so only the hit keeps a siphon verdict.
            remember(seen.get(*bad), bad_kind);
            for (auto v = parent[*bad]; v != StateStore::kNone; v = parent[v]) remember(seen.get(v), kNonLive);
            return false;
        }
        // The closure is an invariant of quasi-live markings; each of its members is live.
        for (StateStore::Id id = 0; id < seen.size(); ++id)
            if (!pruned[id]) remember(seen.get(id), kLive);
        return true;
    }

    std::optional<std::uint8_t> lookup(std::span<const std::uint32_t> k) const {
        auto id = known_.find(k);
        if (id == StateStore::kNone) return std::nullopt;
        return verdict_[id];
    }

    void remember(std::span<const std::uint32_t> k, std::uint8_t v) {
        if (known_.size() >= opts_.cache_limit) return;
        auto [id, fresh] = known_.insert(k);
        if (fresh)
            verdict_.push_back(v);
        else if (verdict_[id] == kNonLive && v == kSiphon)
            verdict_[id] = kSiphon;
    }

    const Net& net_;
    SlpOptions opts_;
    NetClass cls_;
    bool transfer_ = false;
    detail::SiphonTester siphons_;
    StateStore known_;
    std::vector<std::uint8_t> verdict_;
    std::unique_ptr<DeadnessTester> dead_;
    std::vector<std::uint32_t> probe_;
    std::size_t explored_ = 0;
};

struct SlpResult {
    std::optional<Marking> certificate;
    Bounds bounds;
    Count box = 0;  // per-place bound actually enumerated
    std::size_t candidates_tested = 0;
    std::size_t configs_explored = 0;
};

namespace detail {

/// Enumerates [0, bound]^n by total token count, then lexicographically (place 0 most significant).
class BoxEnumerator {
public:
    BoxEnumerator(std::size_t n, Count bound) : n_(n), bound_(bound), total_(0), max_total_(bound * Count(n)) {
        v_.assign(n, 0);
    }

    /// The current candidate, or nullptr when exhausted.
    const Marking* current() const { return done_ ? nullptr : &v_; }

    void advance() {
        if (done_) return;
        if (next_same_total()) return;
        if (++total_ > max_total_ || n_ == 0) {
            done_ = true;
            return;
        }
        fill_min(0, total_);
    }

private:
    /// Lexicographically smallest suffix from position i holding `sum` tokens: pack to the right.
    void fill_min(std::size_t i, Count sum) {
        for (std::size_t j = n_; j-- > i;) {
            Count put = std::min(bound_, sum);
            v_[j] = put;
            sum -= put;
        }
    }

    bool next_same_total() {
        if (n_ < 2) return false;
        Count suffix = v_[n_ - 1];
        for (std::size_t i = n_ - 1; i-- > 0;) {
            if (v_[i] < bound_ && suffix >= 1) {
                ++v_[i];
                fill_min(i + 1, suffix - 1);
                return true;
            }
            suffix += v_[i];
        }
        return false;
    }

    std::size_t n_;
    Count bound_;
    Count total_;
    Count max_total_;
    Marking v_;
    bool done_ = false;
};

inline SlpResult search_box(const Net& net, Count bound, const SlpOptions& opts, const Bounds& bounds) {
    LivenessOracle oracle(net, opts);
    SlpResult res;
    res.bounds = bounds;
    res.box = bound;
    for (BoxEnumerator e(net.num_places(), bound); e.current(); e.advance()) {
        if (res.candidates_tested >= opts.candidate_budget) throw CandidateBudgetExceeded(res.candidates_tested);
        ++res.candidates_tested;
        if (oracle.live(*e.current())) {
            res.certificate = *e.current();
            break;
        }
    }
    res.configs_explored = oracle.explored();
    return res;
}

}  // namespace detail

/// Looks for a live marking inside the first-bound box of the bound table, smallest total first.
/// Returns none when every candidate is non-live, i.e. the net is not structurally live.
inline SlpResult decide_slp(const Net& net, const SlpOptions& opts = {}) {
    NetClass c = classify(net);
    Bounds b = bounds_for(c, net.num_places());
    Count bound = opts.first_bound_override ? *opts.first_bound_override : b.first;
    if (bound < 0) throw InvalidArgument("negative first bound");
    return detail::search_box(net, bound, opts, b);
}

/// For ord-IMO nets only: looks for a live {0,1}-marking.
inline SlpResult slp_01_shortcut(const Net& net, const SlpOptions& opts = {}) {
    NetClass c = classify(net);
    if (!(c.ordinary && c.imo)) throw NotOrdImo("the {0,1} shortcut applies to ord-IMO nets only");
    return detail::search_box(net, 1, opts, bounds_for(c, net.num_places()));
}

}  // namespace ionet

#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "ionet/classify.hpp"
#include "ionet/error.hpp"
#include "ionet/net.hpp"
#include "ionet/slp.hpp"

namespace ionet {

/// Where each original place and transition went.
struct OrdinarizeMap {
    /// rings[i][j-1] = index of p⟨i,j⟩ in the ordinary net.
    std::vector<std::vector<std::size_t>> rings;
    /// rotations[i][j-1] = index of t⟨i,j⟩ (empty for isolated places, and for rings of size 1 when unit
    /// rotations are omitted).
    std::vector<std::vector<std::size_t>> rotations;
    /// image[t] = index of t′.
    std::vector<std::size_t> image;
};

struct Ordinarized {
    Net net;
    OrdinarizeMap map;
};

struct OrdinarizeOptions {
    /// Give rings of size 1 their self-loop rotation.
    bool unit_rotations = true;
};

/// wmax(p): the largest weight of an edge touching p (0 for an isolated place).
inline Count wmax(const Net& net, std::size_t p) {
    Count w = 0;
    for (std::size_t t = 0; t < net.num_transitions(); ++t)
        w = std::max({w, net.pre_weight(p, t), net.post_weight(t, p)});
    return w;
}

/// Replaces each place p_i by a ring p⟨i,1⟩ … p⟨i,wmax(p_i)⟩ with rotations t⟨i,j⟩: p⟨i,j⟩ → p⟨i,j+1⟩
/// (wrapping), and each edge of weight k on p_i by ordinary edges on p⟨i,1⟩ … p⟨i,k⟩.
/// Places are named `<p>_<j>`, rotations `rot_<p>_<j>`; t′ keeps the name of t.
inline Ordinarized ordinarize(const Net& net, const OrdinarizeOptions& opts = {}) {
    if (!classify(net).bimo) throw NotBimo("ordinarization needs a BIMO net");
    Ordinarized out{Net(net.name()), {}};
    auto& map = out.map;
    const std::size_t np = net.num_places();
    map.rings.resize(np);
    map.rotations.resize(np);
    for (std::size_t p = 0; p < np; ++p) {
        const Count size = std::max<Count>(1, wmax(net, p));
        for (Count j = 1; j <= size; ++j)
            map.rings[p].push_back(out.net.add_place(net.place(p) + "_" + std::to_string(j)));
    }
    auto spread = [&](const std::vector<Arc>& arcs) {
        std::vector<Arc> r;
        for (const auto& a : arcs)
            for (Count j = 0; j < a.weight; ++j) r.push_back({map.rings[a.place][std::size_t(j)], 1});
        return r;
    };
    for (std::size_t t = 0; t < net.num_transitions(); ++t)
        map.image.push_back(out.net.add_transition(net.transition(t), spread(net.pre_arcs(t)), spread(net.post_arcs(t))));
    for (std::size_t p = 0; p < np; ++p) {
        const auto& ring = map.rings[p];
        // An isolated place keeps its ring place but gets no rotation: nothing ever marks it, so a
        // rotation there would be a dead transition the original net does not have.
        if (wmax(net, p) == 0 || (ring.size() == 1 && !opts.unit_rotations)) continue;
        for (std::size_t j = 0; j < ring.size(); ++j) {
            const std::size_t to = ring[(j + 1) % ring.size()];
            map.rotations[p].push_back(out.net.add_transition("rot_" + net.place(p) + "_" + std::to_string(j + 1),
                                                              {{ring[j], 1}}, {{to, 1}}));
        }
    }
    return out;
}

namespace detail {
inline std::size_t ring_places(const OrdinarizeMap& map) {
    std::size_t n = 0;
    for (const auto& r : map.rings) n += r.size();
    return n;
}
}  // namespace detail

/// All tokens of p_i go to p⟨i,1⟩.
inline Marking embed_marking(const OrdinarizeMap& map, const Marking& m) {
    if (m.size() != map.rings.size()) throw InvalidArgument("marking does not match the original net");
    Marking r(detail::ring_places(map), 0);
    for (std::size_t p = 0; p < m.size(); ++p) r[map.rings[p][0]] = m[p];
    return r;
}

/// M(p_i) = Σ_j M′(p⟨i,j⟩).
inline Marking project_marking(const OrdinarizeMap& map, const Marking& m) {
    if (m.size() != detail::ring_places(map)) throw InvalidArgument("marking does not match the ordinary net");
    Marking r(map.rings.size(), 0);
    for (std::size_t p = 0; p < map.rings.size(); ++p)
        for (auto q : map.rings[p]) r[p] += m[q];
    return r;
}

/// Liveness of one marking, decided as in LivenessOracle (exact when the reachable set is explored,
/// capped search otherwise).
inline bool decide_live(const Net& net, const Marking& m, const SlpOptions& opts = {}) {
    LivenessOracle oracle(net, opts);
    return oracle.live(m);
}

struct TransferReport {
    bool original_live = false;
    bool ordinary_live = false;
    bool agree = false;
};

/// Compares liveness of (net, M) with liveness of (ordinarize(net), embed(M)).
inline TransferReport check_liveness_transfer(const Net& net, const Marking& m, const SlpOptions& opts = {}) {
    Ordinarized o = ordinarize(net);
    TransferReport r;
    r.original_live = decide_live(net, m, opts);
    r.ordinary_live = decide_live(o.net, embed_marking(o.map, m), opts);
    r.agree = r.original_live == r.ordinary_live;
    return r;
}

}  // namespace ionet

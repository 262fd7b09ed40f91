#pragma once

#include <cstddef>
#include <vector>

#include "ionet/classify.hpp"
#include "ionet/error.hpp"
#include "ionet/net.hpp"

namespace ionet {

/// Carries an execution M →σ M′ of an ordinary BIMO net over to any M̄ ≥ M with the same carrier.
/// Each step t of σ becomes t^d: d = 1 unless t removes its source token, in which case
/// d = M̄(p_s) − M(p_s) + 1 so that the extra tokens on p_s drain with it. The result runs from M̄ to
/// some M̄′ ≥ M′ with carrier(M̄′) = carrier(M′).
inline Execution paste_down(const Net& net, const Execution& ex, const Marking& mbar) {
    NetClass c = classify(net);
    if (!c.ordinary || !c.bimo) throw NotBimo("paste-down needs an ordinary BIMO net");
    detail::require_marking(net, mbar);
    if (!leq(ex.start, mbar) || carrier(ex.start) != carrier(mbar))
        throw InvalidArgument("the larger marking must dominate the start and share its carrier");

    std::vector<std::size_t> seq;
    Marking small = ex.start, big = mbar;
    for (const auto& step : ex.steps) {
        const std::size_t t = step.transition;
        Count d = 1;
        if (!net.pre_arcs(t).empty()) {
            Presentation pr = presentation(net, t);
            const std::size_t s = pr.source;
            if (net.pre_weight(s, t) > net.post_weight(t, s)) d = big[s] - small[s] + 1;
        }
        for (Count i = 0; i < d; ++i) {
            seq.push_back(t);
            big = fire(net, big, t);
        }
        small = step.marking;
    }
    return replay(net, mbar, seq);
}

}  // namespace ionet

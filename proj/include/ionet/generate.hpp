#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "ionet/classify.hpp"
#include "ionet/error.hpp"
#include "ionet/net.hpp"

namespace ionet {

/// Seeded random source. Bounded draws use rejection on the raw 64-bit engine output, so a seed gives
/// the same stream with every standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    /// Uniform in [0, n).
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) throw InvalidArgument("empty range");
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do x = eng_();
        while (x >= limit);
        return x % n;
    }
    /// Uniform in [lo, hi].
    Count range(Count lo, Count hi) { return lo + static_cast<Count>(below(static_cast<std::uint64_t>(hi - lo + 1))); }
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(below(n)); }
    bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

private:
    std::mt19937_64 eng_;
};

enum class GenClass { Io, Imo, Bio, Bimo };

inline GenClass parse_gen_class(std::string_view s) {
    if (s == "io") return GenClass::Io;
    if (s == "imo") return GenClass::Imo;
    if (s == "bio") return GenClass::Bio;
    if (s == "bimo") return GenClass::Bimo;
    throw InvalidArgument("unknown class '" + std::string(s) + "' (expected io, imo, bio or bimo)");
}

struct GenParams {
    GenClass cls = GenClass::Io;
    std::size_t places = 4;
    std::size_t transitions = 4;
    Count wmax = 1;
    /// Largest observation multiset for the IMO/BIMO shapes.
    std::size_t max_observations = 2;
    /// Largest destination multiset for the BIO/BIMO shapes.
    std::size_t max_destinations = 2;
};

/// Whether `c` lies in the requested class.
inline bool in_class(const NetClass& c, GenClass g) {
    switch (g) {
        case GenClass::Io: return c.io;
        case GenClass::Imo: return c.imo;
        case GenClass::Bio: return c.bio;
        case GenClass::Bimo: return c.bimo;
    }
    return false;
}

/// Draws one class-shaped transition: a source place, an observation multiset and a destination
/// multiset, redrawn until every resulting weight is at most wmax.
inline std::pair<std::vector<Arc>, std::vector<Arc>> random_transition(Rng& rng, const GenParams& g) {
    const bool single_obs = g.cls == GenClass::Io || g.cls == GenClass::Bio;
    const bool single_dest = g.cls == GenClass::Io || g.cls == GenClass::Imo;
    for (;;) {
        Marking pre(g.places, 0), post(g.places, 0);
        pre[rng.index(g.places)] += 1;
        const std::size_t nobs = rng.index((single_obs ? 1 : g.max_observations) + 1);
        for (std::size_t i = 0; i < nobs; ++i) {
            auto p = rng.index(g.places);
            pre[p] += 1;
            post[p] += 1;
        }
        const std::size_t ndest = single_dest ? 1 : rng.index(g.max_destinations + 1);
        for (std::size_t i = 0; i < ndest; ++i) post[rng.index(g.places)] += 1;
        bool ok = true;
        for (std::size_t p = 0; p < g.places; ++p) ok = ok && pre[p] <= g.wmax && post[p] <= g.wmax;
        if (!ok) continue;
        std::vector<Arc> a, b;
        for (std::size_t p = 0; p < g.places; ++p) {
            if (pre[p]) a.push_back({p, pre[p]});
            if (post[p]) b.push_back({p, post[p]});
        }
        return {std::move(a), std::move(b)};
    }
}

/// A random net of the requested class with places p1.. and transitions t1...
inline Net generate_net(Rng& rng, const GenParams& g, const std::string& name = "random") {
    if (g.places == 0 && g.transitions > 0) throw InvalidArgument("transitions need at least one place");
    if (g.wmax < 1) throw InvalidArgument("wmax must be at least 1");
    for (;;) {
        Net net(name);
        for (std::size_t p = 0; p < g.places; ++p) net.add_place("p" + std::to_string(p + 1));
        for (std::size_t t = 0; t < g.transitions; ++t) {
            auto [pre, post] = random_transition(rng, g);
            net.add_transition("t" + std::to_string(t + 1), std::move(pre), std::move(post));
        }
        if (in_class(classify(net), g.cls)) return net;
    }
}

inline Net generate_net(std::uint64_t seed, const GenParams& g, const std::string& name = "random") {
    Rng rng(seed);
    return generate_net(rng, g, name);
}

/// Uniform marking with every entry in [0, max_per_place].
inline Marking random_marking(Rng& rng, std::size_t places, Count max_per_place) {
    Marking m(places);
    for (auto& c : m) c = rng.range(0, max_per_place);
    return m;
}

/// A random marking with exactly `tokens` tokens.
inline Marking random_marking_with_total(Rng& rng, std::size_t places, Count tokens) {
    Marking m(places, 0);
    if (places == 0) return m;
    for (Count i = 0; i < tokens; ++i) ++m[rng.index(places)];
    return m;
}

}  // namespace ionet

#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <string>

#include "ionet/classify.hpp"
#include "ionet/format.hpp"
#include "ionet/generate.hpp"
#include "ionet/paste_down.hpp"
#include "ionet/structure.hpp"
#include "oracles.hpp"

using namespace ionet;

namespace {

std::string fixture(const std::string& name) { return std::string(IONET_FIXTURES) + "/" + name; }

Net load(const std::string& name) { return load_net(fixture(name)).net; }

std::set<std::string> names(const Net& net, const Component& c) {
    std::set<std::string> s;
    for (auto p : c.places) s.insert(net.place(p));
    for (auto t : c.transitions) s.insert(net.transition(t));
    return s;
}

// The depicted net with t1, t6 and t7 removed, together with the optimal marking reached in it.
Net fig5_core() {
    Net net = load("fig5.net");
    std::vector<bool> keep(net.num_transitions(), true);
    for (auto t : {"t1", "t6", "t7"}) keep[net.require_transition(t)] = false;
    return restrict_transitions(net, keep);
}
const Marking kFig5Wit{0, 1, 1, 0, 0, 4, 4};

Net random_ord_bimo(Rng& rng, std::size_t max_places) {
    GenParams g;
    g.cls = rng.chance(1, 2) ? GenClass::Bimo : GenClass::Bio;
    g.places = 2 + rng.index(max_places - 1);
    g.transitions = 1 + rng.index(4);
    g.wmax = 1;
    return generate_net(rng, g);
}

}  // namespace

TEST(Relaxed, KeepsOnlyMovingEdges) {
    Net net = load("fig1.net");
    auto r = relaxed_net(net);
    ASSERT_EQ(r.net.num_transitions(), net.num_transitions());
    EXPECT_FALSE(r.has_dummy);
    for (std::size_t t = 0; t < net.num_transitions(); ++t) {
        auto pr = presentation(net, t);
        ASSERT_EQ(r.net.pre_arcs(t).size(), 1u);
        EXPECT_EQ(r.net.pre_arcs(t)[0].place, pr.source);
        for (const auto& a : r.net.post_arcs(t)) {
            EXPECT_EQ(a.weight, 1);
            EXPECT_GT(pr.destinations[a.place], 0);
        }
    }
    // t1 observes p3 and p4 and moves its p1 token to p2.
    const auto t1 = net.require_transition("t1");
    ASSERT_EQ(r.net.post_arcs(t1).size(), 1u);
    EXPECT_EQ(r.net.place(r.net.post_arcs(t1)[0].place), "p2");
}

TEST(Relaxed, SinglePlaceWithoutTransitionsIsUnchanged) {
    Net net("one");
    net.add_place("p");
    EXPECT_EQ(relaxed_net(net).net, net);
}

TEST(Relaxed, OrdinaryImoNetsGiveStateMachines) {
    Rng rng(8);
    for (int i = 0; i < 300; ++i) {
        GenParams g;
        g.cls = rng.chance(1, 2) ? GenClass::Imo : GenClass::Io;
        g.places = 1 + rng.index(6);
        g.transitions = 1 + rng.index(6);
        Net net = generate_net(rng, g);
        auto r = relaxed_net(net);
        for (std::size_t t = 0; t < r.net.num_transitions(); ++t) {
            ASSERT_EQ(r.net.pre_arcs(t).size(), 1u);
            ASSERT_EQ(r.net.post_arcs(t).size(), 1u);
        }
    }
}

TEST(Relaxed, SourceTransitionsGoThroughTheDummy) {
    Net net("gen");
    net.add_place("p");
    net.add_transition("make", {}, {{0, 1}});
    auto r = relaxed_net(net);
    EXPECT_TRUE(r.has_dummy);
    EXPECT_EQ(r.base_places, 1u);
    ASSERT_EQ(r.net.num_places(), 2u);
    EXPECT_EQ(r.net.place(r.net.pre_arcs(0)[0].place), kDummyPlace);
}

TEST(Sccs, Fig5HasOneComponent) {
    auto r = relaxed_net(load("fig5.net"));
    auto cs = sccs(r);
    ASSERT_EQ(cs.size(), 1u);
    EXPECT_TRUE(cs[0].is_top && cs[0].is_bottom);
    EXPECT_EQ(cs[0].places.size(), 7u);
    EXPECT_EQ(cs[0].transitions.size(), 9u);
}

TEST(Sccs, Fig6HasFourComponentsThreeTrivial) {
    auto r = relaxed_net(load("fig6.net"));
    auto cs = sccs(r);
    ASSERT_EQ(cs.size(), 4u);
    std::set<std::set<std::string>> trivial;
    for (const auto& c : cs)
        if (c.trivial()) trivial.insert(names(r.net, c));
    EXPECT_EQ(trivial, (std::set<std::set<std::string>>{{"t4"}, {"p4"}, {"t5"}}));
    EXPECT_EQ(names(r.net, cs[0]), (std::set<std::string>{"p1", "p2", "p3", "p5", "t1", "t2", "t3", "t6", "t7"}));
    EXPECT_TRUE(cs[0].is_top);
    EXPECT_FALSE(cs[0].is_bottom);
}

TEST(Sccs, Fig7HasTwoNontrivialComponents) {
    auto cs = sccs(relaxed_net(load("fig7.net")));
    ASSERT_EQ(cs.size(), 2u);
    EXPECT_FALSE(cs[0].trivial());
    EXPECT_FALSE(cs[1].trivial());
}

TEST(Sccs, EdgelessNetGivesSingletons) {
    Net net("flat");
    net.add_place("a");
    net.add_place("b");
    auto cs = sccs(net);
    ASSERT_EQ(cs.size(), 2u);
    for (const auto& c : cs) EXPECT_TRUE(c.trivial() && c.is_top && c.is_bottom);
}

TEST(Sccs, DagOfRingsHasOneComponentPerRing) {
    Rng rng(41);
    for (int i = 0; i < 100; ++i) {
        // Rings of places joined by forward-only links: ring r may feed ring r' > r.
        Net net("rings");
        const std::size_t rings = 1 + rng.index(5);
        std::vector<std::vector<std::size_t>> ring(rings);
        for (std::size_t k = 0; k < rings; ++k) {
            const std::size_t len = 1 + rng.index(3);
            for (std::size_t j = 0; j < len; ++j)
                ring[k].push_back(net.add_place("r" + std::to_string(k) + "_" + std::to_string(j)));
        }
        std::size_t tc = 0;
        for (std::size_t k = 0; k < rings; ++k)
            for (std::size_t j = 0; j < ring[k].size(); ++j)
                net.add_transition("t" + std::to_string(tc++), {{ring[k][j], 1}},
                                   {{ring[k][(j + 1) % ring[k].size()], 1}});
        for (std::size_t k = 0; k + 1 < rings; ++k)
            if (rng.chance(1, 2)) {
                const std::size_t to = k + 1 + rng.index(rings - k - 1);
                net.add_transition("t" + std::to_string(tc++), {{ring[k][0], 1}}, {{ring[to][0], 1}});
            }
        auto cs = sccs(net);
        // Cross links are singleton transition components; every ring is one more.
        ASSERT_EQ(cs.size(), rings + (tc - [&] {
                                 std::size_t n = 0;
                                 for (auto& r : ring) n += r.size();
                                 return n;
                             }()));
        std::size_t ring_components = 0;
        for (const auto& c : cs)
            if (!c.places.empty()) ++ring_components;
        ASSERT_EQ(ring_components, rings);
    }
}

TEST(Sccs, PartitionAndTopologicalOrderOnRandomNets) {
    Rng rng(2);
    for (int i = 0; i < 300; ++i) {
        Net net = random_ord_bimo(rng, 6);
        auto r = relaxed_net(net);
        auto cs = sccs(r);
        const std::size_t np = r.net.num_places(), nv = np + r.net.num_transitions();
        std::vector<std::size_t> comp(nv, SIZE_MAX);
        for (std::size_t k = 0; k < cs.size(); ++k) {
            for (auto p : cs[k].places) comp[p] = k;
            for (auto t : cs[k].transitions) comp[np + t] = k;
        }
        ASSERT_TRUE(std::none_of(comp.begin(), comp.end(), [](std::size_t c) { return c == SIZE_MAX; }));
        std::vector<bool> has_pred(cs.size(), false), has_succ(cs.size(), false);
        for (std::size_t t = 0; t < r.net.num_transitions(); ++t) {
            auto edge = [&](std::size_t a, std::size_t b) {
                ASSERT_LE(comp[a], comp[b]);
                if (comp[a] != comp[b]) has_succ[comp[a]] = has_pred[comp[b]] = true;
            };
            for (const auto& a : r.net.pre_arcs(t)) edge(a.place, np + t);
            for (const auto& a : r.net.post_arcs(t)) edge(np + t, a.place);
        }
        for (std::size_t k = 0; k < cs.size(); ++k) {
            ASSERT_EQ(cs[k].is_top, !has_pred[k]);
            ASSERT_EQ(cs[k].is_bottom, !has_succ[k]);
        }
    }
}

TEST(RichPoor, Fig5AllOnesIsRich) {
    auto r = relaxed_net(load("fig5.net"));
    auto cs = sccs(r);
    auto rp = rich_poor(r, cs, Marking(7, 1));
    ASSERT_EQ(rp.size(), 1u);
    EXPECT_EQ(rp[0], Richness::Rich);
}

TEST(RichPoor, Fig5CoreHasOneRichAndTwoPoor) {
    auto r = relaxed_net(fig5_core());
    auto cs = sccs(r);
    auto rp = rich_poor(r, cs, kFig5Wit);
    ASSERT_EQ(rp.size(), 3u);
    EXPECT_EQ(std::count(rp.begin(), rp.end(), Richness::Rich), 1);
    EXPECT_EQ(std::count(rp.begin(), rp.end(), Richness::Poor), 2);
}

TEST(RichPoor, EverywhereMarkedIsRichAndPlacelessIsRich) {
    Rng rng(4);
    for (int i = 0; i < 100; ++i) {
        Net net = random_ord_bimo(rng, 6);
        auto r = relaxed_net(net);
        auto cs = sccs(r);
        Marking m = random_marking(rng, net.num_places(), 3);
        for (auto& c : m) c = std::max<Count>(c, 1);
        for (auto v : rich_poor(r, cs, m)) ASSERT_EQ(v, Richness::Rich);
        auto zero = rich_poor(r, cs, Marking(net.num_places(), 0));
        for (std::size_t k = 0; k < cs.size(); ++k) {
            if (cs[k].places.empty()) {
                ASSERT_EQ(zero[k], Richness::Rich);
            }
        }
    }
}

TEST(Siphon, Fig1) {
    Net net = load("fig1.net");
    EXPECT_TRUE(is_siphon(net, place_indices(net, {"p2", "p3", "p4"})));
    EXPECT_TRUE(is_siphon(net, {}));
    EXPECT_FALSE(is_siphon(net, place_indices(net, {"p2"})));
    auto s = minimal_unmarked_siphon(net, Marking{4, 0, 0, 0, 0, 1});
    ASSERT_TRUE(s.has_value());
    EXPECT_TRUE(is_siphon(net, *s));
    for (auto p : *s) EXPECT_EQ((Marking{4, 0, 0, 0, 0, 1})[p], 0);
    EXPECT_FALSE(minimal_unmarked_siphon(net, Marking(6, 1)).has_value());
}

TEST(Siphon, AgreesWithDefinitionLoopOnAllSubsets) {
    Rng rng(13);
    for (int i = 0; i < 200; ++i) {
        GenParams g;
        g.cls = static_cast<GenClass>(rng.index(4));
        g.places = 1 + rng.index(6);
        g.transitions = 1 + rng.index(6);
        g.wmax = rng.range(1, 2);
        Net net = generate_net(rng, g);
        const std::size_t np = net.num_places();
        for (std::size_t mask = 0; mask < (std::size_t{1} << np); ++mask) {
            std::vector<std::size_t> s;
            for (std::size_t p = 0; p < np; ++p)
                if (mask >> p & 1) s.push_back(p);
            ASSERT_EQ(is_siphon(net, s), oracle::siphon(net, s));
        }
    }
}

TEST(Siphon, UnmarkedSiphonSearchIsCompleteAndSound) {
    Rng rng(19);
    for (int i = 0; i < 300; ++i) {
        GenParams g;
        g.cls = static_cast<GenClass>(rng.index(4));
        g.places = 1 + rng.index(6);
        g.transitions = 1 + rng.index(6);
        Net net = generate_net(rng, g);
        Marking m = random_marking(rng, net.num_places(), 1);
        const std::size_t np = net.num_places();
        bool exists = false;
        for (std::size_t mask = 1; mask < (std::size_t{1} << np) && !exists; ++mask) {
            std::vector<std::size_t> s;
            bool unmarked = true;
            for (std::size_t p = 0; p < np; ++p)
                if (mask >> p & 1) {
                    s.push_back(p);
                    unmarked = unmarked && m[p] == 0;
                }
            exists = unmarked && oracle::siphon(net, s);
        }
        for (bool minimize : {false, true}) {
            auto found = minimal_unmarked_siphon(net, m, minimize);
            ASSERT_EQ(found.has_value(), exists);
            if (!found) continue;
            ASSERT_FALSE(found->empty());
            ASSERT_TRUE(oracle::siphon(net, *found));
            for (auto p : *found) ASSERT_EQ(m[p], 0);
        }
    }
}

TEST(Optimality, Fig5CoreMarkingIsOptimal) {
    Net core = fig5_core();
    auto sc = is_self_coverable(core, kFig5Wit);
    EXPECT_EQ(sc.verdict, Verdict::Yes);
    auto ex = replay(core, kFig5Wit, sc.sequence);
    EXPECT_TRUE(leq(kFig5Wit, ex.end()));
    std::set<std::size_t> used(sc.sequence.begin(), sc.sequence.end());
    EXPECT_EQ(used.size(), core.num_transitions());
    EXPECT_EQ(is_carrier_maximal(core, kFig5Wit).verdict, Verdict::Yes);
}

TEST(Optimality, ZeroMarkingWithGuardedTransitions) {
    Net net = load("fig7.net");
    const Marking zero(net.num_places(), 0);
    EXPECT_EQ(is_self_coverable(net, zero).verdict, Verdict::No);
    EXPECT_EQ(is_carrier_maximal(net, zero).verdict, Verdict::Yes);
}

TEST(Optimality, BudgetIsReported) {
    Net net("grow");
    net.add_place("p");
    net.add_place("q");
    net.add_transition("t", {{0, 1}}, {{0, 1}, {1, 1}});
    EXPECT_EQ(is_carrier_maximal(net, Marking{1, 1}, 50).verdict, Verdict::BudgetExceeded);
    EXPECT_EQ(is_carrier_maximal(net, Marking{1, 0}).verdict, Verdict::No);
}

TEST(Optimality, AgreesWithReachabilityOracleOnConservativeNets) {
    Rng rng(29);
    for (int i = 0; i < 300; ++i) {
        GenParams g;
        g.cls = rng.chance(1, 2) ? GenClass::Io : GenClass::Imo;
        g.places = 1 + rng.index(4);
        g.transitions = 1 + rng.index(4);
        Net net = generate_net(rng, g);
        Marking m = random_marking_with_total(rng, net.num_places(), rng.range(0, 4));
        auto reach = oracle::reach(net, m);
        bool larger = false;
        for (const auto& r : reach) larger = larger || carrier(r).size() > carrier(m).size();
        auto cm = is_carrier_maximal(net, m);
        ASSERT_EQ(cm.verdict, larger ? Verdict::No : Verdict::Yes);
        // Token count is invariant, so covering m means returning to m exactly: a closed walk from m
        // through every transition exists iff every transition labels an edge whose endpoints both
        // lie in m's strongly connected part of the reachability graph.
        std::set<std::size_t> cyclic;
        for (const auto& a : reach) {
            if (!oracle::reach(net, a).count(m)) continue;
            for (std::size_t t = 0; t < net.num_transitions(); ++t)
                if (oracle::enabled(net, a, t) && oracle::reach(net, oracle::fire(net, a, t)).count(m))
                    cyclic.insert(t);
        }
        const bool self_cover = cyclic.size() == net.num_transitions();
        auto sc = is_self_coverable(net, m);
        ASSERT_EQ(sc.verdict, self_cover ? Verdict::Yes : Verdict::No) << serialize_net(net, m);
    }
}

TEST(Optimality, SpreadPropertyOnOptimalMarkings) {
    Rng rng(31);
    int checked = 0;
    for (int i = 0; i < 12000 && checked < 150; ++i) {
        Net net = random_ord_bimo(rng, 5);
        Marking m = random_marking(rng, net.num_places(), 2);
        if (is_carrier_maximal(net, m, 20000).verdict != Verdict::Yes) continue;
        if (is_self_coverable(net, m, 20000).verdict != Verdict::Yes) continue;
        ++checked;
        auto r = relaxed_net(net);
        auto cs = sccs(r);
        auto rp = rich_poor(r, cs, m);
        for (std::size_t k = 0; k < cs.size(); ++k) {
            if (rp[k] == Richness::Rich) {
                for (auto p : cs[k].places) ASSERT_GE(m[p], 1) << serialize_net(net, m);
            } else {
                for (auto p : cs[k].places) ASSERT_LE(m[p], 1) << serialize_net(net, m);
                ASSERT_TRUE(cs[k].is_top) << serialize_net(net, m);
                for (auto t : cs[k].transitions) ASSERT_TRUE(classify_transition(net, t).imo) << serialize_net(net, m);
            }
        }
    }
    EXPECT_GE(checked, 100);
}

TEST(PasteDown, CarriesRandomRunsOverToLargerMarkings) {
    Rng rng(71);
    int nontrivial = 0;
    for (int i = 0; i < 600; ++i) {
        GenParams g;
        g.cls = static_cast<GenClass>(rng.index(4));
        g.places = 2 + rng.index(5);
        g.transitions = 1 + rng.index(6);
        Net net = generate_net(rng, g);
        Marking m = random_marking(rng, net.num_places(), 2);
        std::vector<std::size_t> seq;
        Marking cur = m;
        for (std::size_t k = rng.index(13); k > 0; --k) {
            std::vector<std::size_t> on;
            for (std::size_t t = 0; t < net.num_transitions(); ++t)
                if (oracle::enabled(net, cur, t)) on.push_back(t);
            if (on.empty()) break;
            seq.push_back(on[rng.index(on.size())]);
            cur = oracle::fire(net, cur, seq.back());
        }
        Marking mbar = m;
        for (std::size_t p = 0; p < m.size(); ++p)
            if (m[p] > 0) mbar[p] += rng.range(0, 3);
        Execution dup = paste_down(net, replay(net, m, seq), mbar);
        // Re-fire the produced sequence step by step with the per-place oracle.
        Marking big = mbar;
        for (const auto& step : dup.steps) {
            ASSERT_TRUE(oracle::enabled(net, big, step.transition)) << serialize_net(net, m);
            big = oracle::fire(net, big, step.transition);
        }
        for (std::size_t p = 0; p < m.size(); ++p) {
            ASSERT_GE(big[p], cur[p]) << serialize_net(net, m);
            ASSERT_EQ(big[p] > 0, cur[p] > 0) << serialize_net(net, m);
        }
        nontrivial += !seq.empty() && mbar != m;
    }
    EXPECT_GT(nontrivial, 300);
}

TEST(PasteDown, DrainsExtraTokensWithTheSource) {
    // q's tokens move to r one at a time; the pasted run moves all of them so q empties as before.
    Net net("drain");
    net.add_place("q");
    net.add_place("r");
    net.add_transition("move", {{0, 1}}, {{1, 1}});
    Execution ex = replay(net, Marking{1, 0}, {0});
    Execution dup = paste_down(net, ex, Marking{4, 0});
    EXPECT_EQ(dup.sequence().size(), 4u);
    EXPECT_EQ(dup.end(), (Marking{0, 4}));
}

TEST(PasteDown, RejectsBadArguments) {
    Net net("drain");
    net.add_place("q");
    net.add_place("r");
    net.add_transition("move", {{0, 1}}, {{1, 1}});
    Execution ex = replay(net, Marking{1, 0}, {0});
    EXPECT_THROW(paste_down(net, ex, Marking{1, 1}), InvalidArgument);  // carrier differs
    EXPECT_THROW(paste_down(net, ex, Marking{0, 0}), InvalidArgument);  // does not dominate
    EXPECT_THROW(paste_down(load("fig8_left.net"), replay(load("fig8_left.net"), Marking{2, 0}, {}), Marking{2, 0}),
                 NotBimo);
}

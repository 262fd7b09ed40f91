#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "ionet/format.hpp"
#include "ionet/generate.hpp"
#include "ionet/multiset.hpp"
#include "ionet/net.hpp"
#include "oracles.hpp"

using namespace ionet;

namespace {

std::string fixture(const std::string& name) { return std::string(IONET_FIXTURES) + "/" + name; }

Net load(const std::string& name) { return load_net(fixture(name)).net; }

}  // namespace

TEST(Multiset, ArithmeticMatchesComponentwiseDefinitions) {
    Marking a{3, 0, 2}, b{1, 4, 2};
    EXPECT_EQ(a + b, (Marking{4, 4, 4}));
    EXPECT_EQ(monus(a, b), (Marking{2, 0, 0}));
    EXPECT_EQ(meet(a, b), (Marking{1, 0, 2}));
    EXPECT_EQ(size(a), 5);
    EXPECT_TRUE(leq(Marking{1, 0, 2}, a));
    EXPECT_FALSE(leq(a, b));
    EXPECT_TRUE(is_zero(Marking{0, 0}));
    EXPECT_EQ(carrier(a), (std::vector<std::size_t>{0, 2}));
    EXPECT_EQ(indicator(4, {1, 3}), (Marking{0, 1, 0, 1}));
    EXPECT_THROW(a + Marking{1}, InvalidArgument);
}

TEST(Fig1, PreAndPostMultisets) {
    Net net = load("fig1.net");
    ASSERT_EQ(net.num_places(), 6u);
    ASSERT_EQ(net.num_transitions(), 6u);
    EXPECT_EQ(pre_mset(net, "t1"), (Marking{1, 0, 1, 1, 0, 0}));
    EXPECT_EQ(post_mset(net, "t2"), (Marking{0, 0, 1, 0, 1, 0}));
}

TEST(Fig1, DepictedMarkingIsParsed) {
    auto parsed = load_net(fixture("fig1.net"));
    EXPECT_TRUE(parsed.has_marking);
    EXPECT_EQ(parsed.marking, (Marking{4, 0, 0, 0, 0, 1}));
}

TEST(Fig1, ReplayReproducesEveryIntermediateMarking) {
    Net net = load("fig1.net");
    const std::vector<Marking> expected{{1, 1, 1, 1, 1, 1}, {1, 0, 2, 1, 2, 1}, {1, 0, 1, 2, 2, 1},
                                        {1, 0, 0, 3, 2, 1}, {2, 0, 0, 2, 2, 1}, {3, 0, 0, 1, 2, 1},
                                        {4, 0, 0, 0, 2, 1}, {4, 0, 0, 0, 1, 1}, {4, 0, 0, 0, 0, 1}};
    auto ex = replay_named(net, expected[0], {"t2", "t3", "t3", "t4", "t4", "t4", "t5", "t5"});
    ASSERT_EQ(ex.steps.size(), 8u);
    EXPECT_EQ(ex.start, expected[0]);
    for (std::size_t i = 0; i < ex.steps.size(); ++i) EXPECT_EQ(ex.steps[i].marking, expected[i + 1]) << "step " << i;
    EXPECT_EQ(ex.end(), expected.back());
}

TEST(Fig5, ReplayReachesDepictedMarking) {
    Net net = load("fig5.net");
    auto ex = replay_named(net, Marking(7, 1), {"t3", "t4", "t2", "t1", "t1", "t6", "t6", "t6"});
    EXPECT_EQ(ex.end(), (Marking{0, 1, 1, 0, 0, 4, 4}));
    EXPECT_EQ(ex.end(), load_net(fixture("fig5.net")).marking);
}

TEST(Replay, ReportsTheFirstDisabledStep) {
    Net net = load("fig1.net");
    try {
        replay_named(net, Marking{1, 1, 1, 1, 1, 1}, {"t2", "t2"});
        FAIL() << "second t2 should be disabled";
    } catch (const NotEnabled& e) {
        EXPECT_EQ(e.step(), 1u);
        EXPECT_EQ(e.transition(), net.require_transition("t2"));
        EXPECT_EQ(e.marking(), (Marking{1, 0, 2, 1, 2, 1}));
    }
    EXPECT_THROW(replay_named(net, Marking(6, 1), {"nope"}), UnknownIdentifier);
    EXPECT_THROW(replay_named(net, Marking(5, 1), {"t1"}), InvalidArgument);
}

TEST(Replay, EmptySequenceIsIdentity) {
    Net net = load("fig1.net");
    auto ex = replay(net, Marking{4, 0, 0, 0, 0, 1}, {});
    EXPECT_TRUE(ex.steps.empty());
    EXPECT_EQ(ex.end(), (Marking{4, 0, 0, 0, 0, 1}));
}

TEST(Net, RejectsMalformedConstruction) {
    Net net("n");
    net.add_place("p");
    EXPECT_THROW(net.add_place("p"), InvalidArgument);
    EXPECT_THROW(net.add_transition("p", {}, {}), InvalidArgument);
    EXPECT_THROW(net.add_transition("t", {{0, 0}}, {}), InvalidArgument);
    EXPECT_THROW(net.add_transition("t", {{5, 1}}, {}), InvalidArgument);
    EXPECT_THROW(net.add_transition("t", {{0, 1}, {0, 2}}, {}), InvalidArgument);
    EXPECT_THROW(net.add_place("a:b"), InvalidArgument);
    EXPECT_THROW(net.add_place("pre"), InvalidArgument);
}

TEST(Format, EmptyNetRoundTrips) {
    auto parsed = parse_net("net empty\n");
    EXPECT_EQ(parsed.net.num_places(), 0u);
    EXPECT_EQ(parsed.net.num_transitions(), 0u);
    EXPECT_EQ(parsed.net.max_weight(), 1);
    auto again = parse_net(serialize_net(parsed.net));
    EXPECT_EQ(again.net, parsed.net);
}

TEST(Format, FixturesRoundTrip) {
    for (auto name : {"fig1.net", "fig5.net", "fig6.net", "fig7.net", "fig8_left.net", "fig8_right.net", "fig9.net"}) {
        auto parsed = load_net(fixture(name));
        auto text = serialize_net(parsed.net, parsed.marking);
        auto again = parse_net(text);
        EXPECT_EQ(again.net, parsed.net) << name;
        EXPECT_EQ(again.marking, parsed.marking) << name;
        EXPECT_EQ(serialize_net(again.net, again.marking), text) << name;
    }
}

TEST(Format, RandomNetsRoundTripByteIdentically) {
    Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        GenParams g;
        g.cls = static_cast<GenClass>(rng.index(4));
        g.places = 1 + rng.index(6);
        g.transitions = rng.index(7);
        g.wmax = rng.range(1, 4);
        Net net = generate_net(rng, g, "r" + std::to_string(i));
        Marking m = random_marking(rng, net.num_places(), 5);
        auto text = serialize_net(net, m);
        auto parsed = parse_net(text);
        ASSERT_EQ(parsed.net, net);
        ASSERT_EQ(parsed.marking, m);
        ASSERT_EQ(serialize_net(parsed.net, parsed.marking), text);
    }
}

TEST(Format, ParseErrorsCarryLineNumbers) {
    auto line_of = [](const std::string& text) -> std::size_t {
        try {
            parse_net(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return 0;
    };
    EXPECT_EQ(line_of("net a\nplace p\nplace p\n"), 3u);
    EXPECT_EQ(line_of("net a\nplace p\ntrans t pre q\n"), 3u);
    EXPECT_EQ(line_of("net a\nplace p\ntrans t pre p:0\n"), 3u);
    EXPECT_EQ(line_of("net a\nplace p tokens=x\n"), 2u);
    EXPECT_EQ(line_of("net a\nplace p\ntrans t pre p:99999999999\n"), 3u);
    EXPECT_EQ(line_of("bogus\n"), 1u);
    EXPECT_EQ(line_of("# comment\n\nnet a\nplace p # trailing\ntrans t pre p post p\n"), 0u);
}

TEST(Format, ParseMarking) {
    EXPECT_EQ(parse_marking("1,0,2"), (Marking{1, 0, 2}));
    EXPECT_EQ(parse_marking("(3, 0, 0, 0, 1)"), (Marking{3, 0, 0, 0, 1}));
    EXPECT_TRUE(parse_marking("").empty());
    EXPECT_THROW(parse_marking("1,-1"), ParseError);
    EXPECT_THROW(parse_marking("1,,2"), ParseError);
}

TEST(Firing, AgreesWithPerPlaceOracleOnRandomNets) {
    Rng rng(5);
    for (int i = 0; i < 300; ++i) {
        GenParams g;
        g.cls = static_cast<GenClass>(rng.index(4));
        g.places = 1 + rng.index(6);
        g.transitions = 1 + rng.index(6);
        g.wmax = rng.range(1, 3);
        Net net = generate_net(rng, g);
        for (int k = 0; k < 10; ++k) {
            Marking m = random_marking(rng, net.num_places(), 4);
            for (std::size_t t = 0; t < net.num_transitions(); ++t) {
                ASSERT_EQ(enabled(net, m, t), oracle::enabled(net, m, t));
                if (oracle::enabled(net, m, t)) {
                    ASSERT_EQ(fire(net, m, t), oracle::fire(net, m, t));
                } else {
                    ASSERT_THROW(fire(net, m, t), NotEnabled);
                }
            }
        }
    }
}

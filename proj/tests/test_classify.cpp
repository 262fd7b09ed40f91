#include <gtest/gtest.h>

#include <algorithm>
#include <string>

#include "ionet/classify.hpp"
#include "ionet/format.hpp"
#include "ionet/generate.hpp"
#include "ionet/net.hpp"
#include "oracles.hpp"

using namespace ionet;

namespace {

std::string fixture(const std::string& name) { return std::string(IONET_FIXTURES) + "/" + name; }

Net load(const std::string& name) { return load_net(fixture(name)).net; }

// Dense re-derivation of the class flags straight from the F(p,t) / F(t,p) tables.
NetClass dense_classify(const Net& net) {
    NetClass c;
    Count w = 1;
    for (std::size_t t = 0; t < net.num_transitions(); ++t) {
        Count npre = 0, npost = 0, excess = 0;
        for (std::size_t p = 0; p < net.num_places(); ++p) {
            const Count a = net.pre_weight(p, t), b = net.post_weight(t, p);
            npre += a;
            npost += b;
            excess += std::max<Count>(a - b, 0);
            w = std::max({w, a, b});
        }
        // An empty pre-mset reads as a loop on a fresh place: one token in, the same token back out.
        const Count in = npre == 0 ? 1 : npre;
        const Count out = npre == 0 ? npost + 1 : npost;
        const bool bimo = npre == 0 || excess <= 1;
        c.conservative = c.conservative && npre == npost;
        c.bimo = c.bimo && bimo;
        c.bio = c.bio && bimo && in <= 2;
        c.imo = c.imo && bimo && out == in;
    }
    c.io = c.bio && c.imo;
    c.max_weight = w;
    c.ordinary = w == 1;
    return c;
}

Net chain(Count w) {
    Net net("chain");
    net.add_place("p");
    net.add_place("q");
    net.add_transition("t", {{0, 1}}, {{1, w}});
    return net;
}

}  // namespace

TEST(Classify, Fig1IsOrdinaryBimoButNeitherBioNorImo) {
    auto c = classify(load("fig1.net"));
    EXPECT_TRUE(c.ordinary);
    EXPECT_TRUE(c.bimo);
    EXPECT_FALSE(c.bio);  // t1 observes two places
    EXPECT_FALSE(c.imo);  // t5 only consumes
    EXPECT_FALSE(c.conservative);
    EXPECT_EQ(class_label(c), "ord-BIMO");
    EXPECT_EQ(table_row(c), TableRow::OrdBimo);
}

TEST(Classify, Fig7IsOrdinaryIo) {
    auto c = classify(load("fig7.net"));
    EXPECT_TRUE(c.io);
    EXPECT_TRUE(c.bio);
    EXPECT_TRUE(c.imo);
    EXPECT_TRUE(c.ordinary);
    EXPECT_TRUE(c.conservative);
    EXPECT_EQ(class_label(c), "ord-IO");
    EXPECT_EQ(table_row(c), TableRow::OrdImo);
}

TEST(Classify, OtherFixtures) {
    EXPECT_EQ(class_label(classify(load("fig5.net"))), "ord-BIMO");
    EXPECT_EQ(class_label(classify(load("fig6.net"))), "ord-BIMO");
    EXPECT_EQ(class_label(classify(load("fig9.net"))), "ord-BIO");
    auto left = classify(load("fig8_left.net"));
    EXPECT_EQ(left.max_weight, 3);
    EXPECT_FALSE(left.ordinary);
    EXPECT_EQ(class_label(left), "BIO");  // two tokens in, one of them observed
    EXPECT_EQ(table_row(left), TableRow::Bimo);
    EXPECT_EQ(class_label(classify(load("fig8_right.net"))), "ord-BIO");
}

TEST(Classify, EmptyNetIsVacuouslyInEveryClass) {
    auto c = classify(Net("empty"));
    EXPECT_TRUE(c.ordinary && c.conservative && c.bimo && c.bio && c.imo && c.io);
    EXPECT_EQ(c.max_weight, 1);
    EXPECT_EQ(table_row(c), TableRow::OrdImo);
}

TEST(Classify, WeightedChainIsBioButNotImo) {
    auto c = classify(chain(2));
    EXPECT_TRUE(c.bimo);
    EXPECT_TRUE(c.bio);
    EXPECT_FALSE(c.imo);
    EXPECT_FALSE(c.ordinary);
    EXPECT_EQ(c.max_weight, 2);
    EXPECT_EQ(class_label(c), "BIO");
    EXPECT_EQ(table_row(c), TableRow::Bimo);
}

TEST(Classify, ConsumingTwoTokensIsNotBimo) {
    Net net("two");
    net.add_place("p");
    net.add_place("q");
    net.add_transition("t", {{0, 2}}, {{1, 2}});
    auto c = classify(net);
    EXPECT_FALSE(c.bimo);
    EXPECT_FALSE(c.bio || c.imo || c.io);
    EXPECT_EQ(class_label(c), "none");
    EXPECT_THROW(table_row(c), NotBimo);
    EXPECT_THROW(presentation(net, "t"), NotBimo);
}

TEST(Classify, TableRowOrder) {
    NetClass c;
    EXPECT_EQ(table_row(c), TableRow::OrdImo);
    c.ordinary = false;
    EXPECT_EQ(table_row(c), TableRow::Io);
    c.io = c.bio = false;
    EXPECT_EQ(table_row(c), TableRow::Imo);
    c.imo = false;
    EXPECT_EQ(table_row(c), TableRow::Bimo);
    c.ordinary = true;
    EXPECT_EQ(table_row(c), TableRow::OrdBimo);
}

TEST(Classify, AgreesWithDenseRederivationOnRandomNets) {
    Rng rng(3);
    for (int i = 0; i < 2000; ++i) {
        // Arbitrary (not class-shaped) transitions, so that every flag combination shows up.
        Net net("r");
        const std::size_t np = 1 + rng.index(4);
        for (std::size_t p = 0; p < np; ++p) net.add_place("p" + std::to_string(p));
        const std::size_t nt = rng.index(4);
        for (std::size_t t = 0; t < nt; ++t) {
            std::vector<Arc> pre, post;
            for (std::size_t p = 0; p < np; ++p) {
                if (rng.chance(1, 3)) pre.push_back({p, rng.range(1, 2)});
                if (rng.chance(1, 3)) post.push_back({p, rng.range(1, 2)});
            }
            net.add_transition("t" + std::to_string(t), pre, post);
        }
        ASSERT_EQ(classify(net), dense_classify(net)) << serialize_net(net);
    }
}

TEST(Classify, GeneratorHonoursTheRequestedClass) {
    Rng rng(17);
    for (int i = 0; i < 400; ++i) {
        GenParams g;
        g.cls = static_cast<GenClass>(rng.index(4));
        g.places = 1 + rng.index(5);
        g.transitions = 1 + rng.index(5);
        g.wmax = rng.range(1, 3);
        Net net = generate_net(rng, g);
        auto c = classify(net);
        ASSERT_TRUE(in_class(c, g.cls)) << serialize_net(net);
        ASSERT_LE(c.max_weight, g.wmax);
    }
}

TEST(Presentation, WeightedLoopOfFig8Left) {
    Net net = load("fig8_left.net");
    auto pr = presentation(net, "t");
    EXPECT_EQ(pr.source, net.require_place("p1"));
    EXPECT_EQ(pr.observations, (Marking{1, 0}));
    EXPECT_EQ(pr.destinations, (Marking{2, 1}));
    EXPECT_FALSE(pr.dummy_source());
}

TEST(Presentation, OrdinaryImageOfFig8) {
    Net net = load("fig8_right.net");
    auto pr = presentation(net, "t");
    EXPECT_EQ(net.place(pr.source), "p1_1");
    EXPECT_EQ(pr.observations, (Marking{0, 1, 0, 0}));
    EXPECT_EQ(pr.destinations, (Marking{1, 0, 1, 1}));
}

TEST(Presentation, ReassemblesPreAndPost) {
    Rng rng(23);
    for (int i = 0; i < 500; ++i) {
        GenParams g;
        g.cls = static_cast<GenClass>(rng.index(4));
        g.places = 1 + rng.index(5);
        g.transitions = 1 + rng.index(5);
        g.wmax = rng.range(1, 3);
        Net net = generate_net(rng, g);
        for (std::size_t t = 0; t < net.num_transitions(); ++t) {
            auto pr = presentation(net, t);
            if (pr.dummy_source()) {
                ASSERT_TRUE(is_zero(pre_mset(net, t)));
                ASSERT_EQ(pr.destinations, post_mset(net, t));
                continue;
            }
            Marking src(net.num_places(), 0);
            src[pr.source] = 1;
            ASSERT_EQ(src + pr.observations, pre_mset(net, t));
            ASSERT_EQ(pr.observations + pr.destinations, post_mset(net, t));
        }
    }
}

TEST(Presentation, EmptyPreUsesTheDummyPlace) {
    Net net("gen");
    net.add_place("p");
    net.add_transition("make", {}, {{0, 1}});
    net.add_transition("noop", {}, {});
    auto pr = presentation(net, "make");
    EXPECT_TRUE(pr.dummy_source());
    EXPECT_TRUE(pr.dummy_destination);
    EXPECT_EQ(pr.observation_count(), 0);
    EXPECT_EQ(pr.destination_count(), 2);
    EXPECT_EQ(presentation(net, "noop").destination_count(), 1);
    auto c = classify(net);
    EXPECT_TRUE(c.bio);
    EXPECT_FALSE(c.imo);  // "make" sends the dummy token back and adds one
    Net only_noop("noop");
    only_noop.add_transition("noop", {}, {});
    EXPECT_TRUE(classify(only_noop).io);
}

TEST(DummyAugment, LeavesNetsWithoutSourceTransitionsAlone) {
    Net net = load("fig7.net");
    auto aug = dummy_augment(net);
    EXPECT_FALSE(aug.added);
    EXPECT_EQ(aug.net, net);
}

TEST(DummyAugment, RejectsTheReservedName) {
    Net net("n");
    net.add_place(std::string(kDummyPlace));
    net.add_transition("t", {}, {});
    EXPECT_THROW(dummy_augment(net), InvalidArgument);
}

TEST(DummyAugment, AugmentedNetStepsInLockstep) {
    Net net("gen");
    net.add_place("p");
    net.add_place("q");
    net.add_transition("make", {}, {{0, 1}});
    net.add_transition("move", {{0, 1}}, {{1, 1}});
    net.add_transition("drop", {{1, 2}}, {});
    auto aug = dummy_augment(net);
    ASSERT_TRUE(aug.added);
    EXPECT_EQ(aug.net.num_places(), 3u);
    EXPECT_EQ(aug.net.place(aug.dummy), kDummyPlace);
    EXPECT_EQ(classify(aug.net).bimo, classify(net).bimo);
    EXPECT_EQ(classify(aug.net).bio, classify(net).bio);
    EXPECT_EQ(classify(aug.net).imo, classify(net).imo);
    // Every reachable marking of the original (bounded here by a token cap) matches one of the
    // augmented net with the dummy token in place, transition by transition.
    for (const auto& m : oracle::box(2, 4)) {
        const Marking lifted = aug.lift(m);
        for (std::size_t t = 0; t < net.num_transitions(); ++t) {
            ASSERT_EQ(oracle::enabled(net, m, t), oracle::enabled(aug.net, lifted, t));
            if (!oracle::enabled(net, m, t)) continue;
            const Marking next = oracle::fire(aug.net, lifted, t);
            ASSERT_EQ(next.back(), 1);
            ASSERT_EQ(aug.project(next), oracle::fire(net, m, t));
        }
    }
}

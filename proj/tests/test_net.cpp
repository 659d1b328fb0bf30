#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "corpus.hpp"
#include "fixtures.hpp"
#include "stratnet/net.hpp"

using namespace stratnet;

namespace {

// Same net with edges, links, boxes and unordered premises stored in another order
// and every name changed.
Net scramble(const Net& n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    auto perm = [&](std::size_t k) {
        std::vector<std::size_t> p(k);
        for (std::size_t i = 0; i < k; ++i)
            p[i] = i;
        std::shuffle(p.begin(), p.end(), rng);
        return p;
    };
    auto pe = perm(n.edges.size()), pl = perm(n.links.size()), pb = perm(n.boxes.size());
    std::vector<std::size_t> ie(pe.size()), il(pl.size()), ib(pb.size());
    for (std::size_t i = 0; i < pe.size(); ++i)
        ie[pe[i]] = i;
    for (std::size_t i = 0; i < pl.size(); ++i)
        il[pl[i]] = i;
    for (std::size_t i = 0; i < pb.size(); ++i)
        ib[pb[i]] = i;
    Net out;
    for (std::size_t i = 0; i < pe.size(); ++i)
        out.add_edge("w" + std::to_string(seed) + "_" + std::to_string(i), n.edges[pe[i]].label);
    for (std::size_t i = 0; i < pl.size(); ++i) {
        const Link& l = n.links[pl[i]];
        std::vector<EdgeId> prem, concl;
        for (EdgeId e : l.premises)
            prem.push_back(ie[e]);
        for (EdgeId e : l.conclusions)
            concl.push_back(ie[e]);
        if (has_unordered_premises(l.kind))
            std::shuffle(prem.begin(), prem.end(), rng);
        out.add_link("n" + std::to_string(i), l.kind, prem, concl);
    }
    for (std::size_t i = 0; i < pb.size(); ++i) {
        const Box& b = n.boxes[pb[i]];
        Box nb;
        nb.principal = il[b.principal];
        for (LinkId a : b.auxiliaries)
            nb.auxiliaries.push_back(il[a]);
        for (LinkId c : b.contents)
            nb.contents.push_back(il[c]);
        std::shuffle(nb.contents.begin(), nb.contents.end(), rng);
        if (b.parent)
            nb.parent = ib[*b.parent];
        out.boxes.push_back(nb);
    }
    for (EdgeId e : n.conclusions)
        out.conclusions.push_back(ie[e]);
    return out;
}

}

TEST(Net, BuilderOutputsValidate)
{
    for (auto& n : corpus::cut_free(200))
        EXPECT_TRUE(validate(n).ok()) << validate(n).summary();
    for (auto& n : corpus::with_cuts(100))
        EXPECT_TRUE(validate(n).ok()) << validate(n).summary();
}

TEST(Net, FlatConclusionIsReportedByName)
{
    Net n = flat_rule(ax(Formula::atom("X")), 0);
    auto r = validate(n);
    ASSERT_FALSE(r.ok());
    EXPECT_NE(r.summary().find(n.edges[n.conclusions[0]].name), std::string::npos);
    EXPECT_NE(r.summary().find("flat"), std::string::npos);
}

TEST(Net, RejectsBrokenStructure)
{
    Net n = ax(Formula::atom("a"));
    Net dangling = n;
    dangling.conclusions.pop_back();
    EXPECT_FALSE(validate(dangling).ok());

    Net wrong_arity = n;
    wrong_arity.links[0].kind = LinkKind::cut;
    EXPECT_FALSE(validate(wrong_arity).ok());

    Net boxed = fixtures::not_l3_until_normalized();
    ASSERT_FALSE(boxed.boxes.empty());
    boxed.boxes[0].auxiliaries.clear();
    EXPECT_FALSE(validate(boxed).ok());
}

TEST(Net, DocumentRoundTrip)
{
    for (auto& n : corpus::with_cuts(60)) {
        std::string text = save_net(n);
        Net back = load_net(text);
        EXPECT_EQ(save_net(back), text);
        EXPECT_TRUE(nets_equal(back, n));
        EXPECT_EQ(save_net(load_net(save_net(n, true))), text);
    }
}

TEST(Net, DocumentErrorsAreReported)
{
    EXPECT_ANY_THROW(load_net("{"));
    EXPECT_ANY_THROW(load_net(R"({"edges":[],"links":[{"id":"l","kind":"frob","premises":[],"conclusions":[]}],"boxes":[],"conclusions":[]})"));
    EXPECT_ANY_THROW(load_net(R"({"edges":[{"id":"e","label":"(a *"}],"links":[],"boxes":[],"conclusions":["e"]})"));
}

TEST(Net, DotExportMentionsEveryLink)
{
    Net n = fixtures::not_l3_until_normalized();
    std::string dot = to_dot(n);
    EXPECT_EQ(dot.rfind("graph", 0), 0u);
    for (auto& l : n.links)
        EXPECT_NE(dot.find(l.name), std::string::npos);
}

TEST(Net, DepthCountsEnclosingBoxes)
{
    Net n = fixtures::not_l3_until_normalized();
    EXPECT_EQ(max_depth(n), 2);
    for (auto& l : n.links)
        if (l.kind == LinkKind::axiom && n.label(l.conclusions[1]).formula == Formula::atom("C"))
            EXPECT_EQ(depth(n, l.name), 2);
}

TEST(Net, ParClosureJoinsConclusionsInOrder)
{
    Net n = fixtures::shift_left();
    Net c = parr_closure(n);
    ASSERT_EQ(c.conclusions.size(), 1u);
    EXPECT_EQ(print_formula(c.label(c.conclusions[0]).formula), "(?A^ @ #A)");
    EXPECT_TRUE(validate(c).ok());
    EXPECT_TRUE(nets_equal(parr_closure(c), c));
}

TEST(Canonical, InvariantUnderStorageOrderAndNames)
{
    std::size_t i = 0;
    for (auto& n : corpus::with_cuts(150)) {
        Net m = scramble(n, ++i);
        ASSERT_TRUE(validate(m).ok()) << validate(m).summary();
        EXPECT_EQ(canonical_form(m), canonical_form(n));
        EXPECT_TRUE(match_nets(n, m).has_value());
    }
}

TEST(Canonical, AgreesWithTheMatcherAcrossDistinctNets)
{
    auto nets = corpus::cut_free(120, 14);
    std::size_t equal_pairs = 0;
    for (std::size_t a = 0; a < nets.size(); ++a)
        for (std::size_t b = a + 1; b < nets.size(); ++b) {
            bool same = canonical_form(nets[a]) == canonical_form(nets[b]);
            bool iso = match_nets(nets[a], nets[b]).has_value();
            EXPECT_EQ(same, iso) << a << " " << b;
            equal_pairs += same;
        }
    (void)equal_pairs;
}

TEST(Canonical, DistinguishesDifferentNets)
{
    Net id = ax(Formula::tensor(Formula::atom("X"), Formula::atom("X")));
    EXPECT_FALSE(nets_equal(fixtures::dereliction(), fixtures::paragraph_in()));
    EXPECT_TRUE(nets_equal(renumber(fixtures::dereliction()), fixtures::dereliction()));
    EXPECT_FALSE(nets_equal(id, ax(Formula::atom("X"))));
}

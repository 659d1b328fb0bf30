#include <gtest/gtest.h>

#include <set>

#include "corpus.hpp"
#include "fixtures.hpp"
#include "stratnet/correctness.hpp"
#include "stratnet/interactive.hpp"

using namespace stratnet;

namespace {

Formula xx() { return Formula::tensor(Formula::atom("X"), Formula::atom("X")); }

// Follows the lifts of a trace back from a name of its last net.
std::optional<std::string> origin(const RewriteTrace& t, std::string name)
{
    for (auto it = t.steps.rbegin(); it != t.steps.rend(); ++it) {
        auto f = it->lift.find(name);
        if (f == it->lift.end())
            return std::nullopt;
        name = f->second;
    }
    return name;
}

}

TEST(Expansion, OnlyAtomicAxiomsRemain)
{
    for (auto& n : corpus::cut_free(150)) {
        Net e = eta_expand(n);
        ASSERT_TRUE(validate(e).ok()) << validate(e).summary();
        EXPECT_TRUE(is_dr_correct(e).correct);
        for (auto& l : e.links)
            if (l.kind == LinkKind::axiom)
                EXPECT_TRUE(e.label(l.conclusions[0]).formula.is_atom());
        ASSERT_EQ(e.conclusions.size(), n.conclusions.size());
        for (std::size_t i = 0; i < n.conclusions.size(); ++i)
            EXPECT_EQ(e.label(e.conclusions[i]), n.label(n.conclusions[i]));
        EXPECT_EQ(is_l3_indexing_route(e), is_l3_indexing_route(n));
    }
}

TEST(Expansion, ExponentialAxiomBecomesABox)
{
    Net n = eta_expand(ax(parse_formula("!a")));
    EXPECT_EQ(n.boxes.size(), 1u);
    EXPECT_EQ(n.count(LinkKind::axiom), 1u);
    EXPECT_EQ(n.count(LinkKind::whynot), 1u);
    EXPECT_EQ(n.count(LinkKind::pax), 1u);
    EXPECT_TRUE(is_proof_net(n));
}

TEST(Bullet, PreservesCorrectnessAndConclusions)
{
    for (auto& n : corpus::cut_free(150)) {
        Net e = eta_expand(n);
        Net b = bullet_net(e);
        ASSERT_TRUE(validate(b).ok());
        EXPECT_EQ(is_dr_correct(b).correct, is_dr_correct(e).correct);
        ASSERT_EQ(b.conclusions.size(), e.conclusions.size());
        for (std::size_t i = 0; i < e.conclusions.size(); ++i)
            EXPECT_EQ(b.label(b.conclusions[i]).formula, bullet_formula(e.label(e.conclusions[i]).formula));
        EXPECT_EQ(find_sites(b).size(), e.count(LinkKind::axiom));
    }
}

TEST(Sites, IdentityAndSwap)
{
    Net id = identity_net(xx());
    Net sw = swap_net();
    EXPECT_FALSE(nets_equal(id, sw));
    ASSERT_EQ(find_sites(id).size(), 1u);
    EXPECT_FALSE(find_sites(id)[0].swapped);
    ASSERT_EQ(find_sites(sw).size(), 1u);
    EXPECT_TRUE(find_sites(sw)[0].swapped);
    EXPECT_TRUE(swapping_compare(sw, id));
    EXPECT_FALSE(swapping_compare(id, id));
    EXPECT_EQ(swapped_relative(sw, id), std::optional<std::size_t>(1));
    EXPECT_EQ(swapped_relative(id, sw), std::nullopt);
}

TEST(Tests, SwapExactlyTheSitesOfTheirLevel)
{
    Formula a = parse_formula("(!a @ #b^)");
    long top = max_test_level(a);
    EXPECT_GE(top, 1);
    std::size_t total = 0;
    for (long k = 0; k <= top; ++k) {
        stratnet::Test t = make_test(a, k);
        EXPECT_EQ(t.type, a);
        for (auto& s : t.swapped_sites)
            EXPECT_EQ(s.tensor_level, k);
        total += t.swapped_sites.size();
    }
    EXPECT_EQ(total, 2u);
    EXPECT_TRUE(nets_equal(make_test(a, top + 1).net, identity_net(bullet_formula(a))));
}

TEST(Tests, AreInvolutions)
{
    for (std::uint64_t s = 0; s < 25; ++s) {
        Formula a = random_formula(s, 1 + s % 6, corpus::params_for(s, 0, 0.0));
        for (long k = 0; k <= max_test_level(a); ++k) {
            Net t = make_test(a, k).net;
            EXPECT_TRUE(nets_equal(normalize(compose(t, t)).net, identity_net(bullet_formula(a))))
                << print_formula(a) << " k=" << k;
        }
    }
}

TEST(Compose, KeepsOuterConclusionsInOrder)
{
    Formula a = parse_formula("(a * b)");
    Net id = identity_net(a);
    Net twice = compose(id, id);
    ASSERT_EQ(twice.conclusions.size(), 2u);
    EXPECT_TRUE(nets_equal(normalize(twice).net, id));
}

TEST(Interactive, IdentityPassesEveryLevel)
{
    auto rep = interactive_l3_check(parr_closure(identity_net(Formula::atom("Z"))));
    EXPECT_TRUE(rep.member);
    std::string expected = R"j({"formula":"(Z^ @ Z)","levels":[{"k":0,"pass":true,"swapped_sites":0}]})j";
    EXPECT_EQ(report_json(rep), expected);
}

TEST(Interactive, DerelictionFailsWithASwappedResidue)
{
    Net n = fixtures::dereliction();
    auto rep = interactive_l3_check(n);
    EXPECT_FALSE(rep.member);
    Net expanded = bullet_net(eta_expand(n));
    Formula a = n.label(n.conclusions[0]).formula;
    bool residue = false;
    for (auto& l : rep.levels)
        if (!l.pass) {
            EXPECT_GE(l.swapped_sites, 1u);
            Net r = normalize(cut_compose(expanded, {make_test(a, l.k).net})).net;
            residue = residue || swapping_compare(r, expanded);
        }
    EXPECT_TRUE(residue);
}

TEST(Interactive, AgreesWithTheGeometricCriterion)
{
    std::size_t members = 0, total = 0;
    for (auto& n : corpus::cut_free(150, 24)) {
        Net closed = parr_closure(n);
        bool geometric = is_l3_geometric(closed).member;
        auto rep = interactive_l3_check(closed, 2);
        EXPECT_EQ(rep.member, geometric) << save_net(n);
        if (!rep.member) {
            Net expanded = bullet_net(eta_expand(closed));
            bool residue = false;
            for (auto& l : rep.levels)
                if (!l.pass) {
                    Net r = normalize(cut_compose(expanded, {make_test(rep.formula, l.k).net})).net;
                    residue = residue || swapping_compare(r, expanded);
                }
            EXPECT_TRUE(residue);
        }
        members += geometric;
        ++total;
    }
    EXPECT_GT(members, 0u);
    EXPECT_LT(members, total);
}

TEST(Interactive, ParallelLevelsGiveTheSameReport)
{
    for (auto& n : corpus::cut_free(30, 24)) {
        Net closed = parr_closure(n);
        EXPECT_EQ(report_json(interactive_l3_check(closed, 1)), report_json(interactive_l3_check(closed, 4)));
    }
}

TEST(Interactive, BlindToMismatchesOnAtomFreeAxioms)
{
    Net n = par_rule(paragraph_rule(ax(Formula::one()), 1), 0, 1);
    EXPECT_FALSE(is_l3_indexing_route(n));
    EXPECT_FALSE(is_l3_geometric(n).member);
    EXPECT_TRUE(is_l3_geometric(eta_expand(n)).member);
    auto rep = interactive_l3_check(n);
    EXPECT_TRUE(rep.member);
    for (auto& l : rep.levels)
        EXPECT_EQ(l.swapped_sites, 0u);
}

TEST(Interactive, Preconditions)
{
    EXPECT_THROW(interactive_l3_check(fixtures::not_l3_until_normalized()), NetError);
    EXPECT_THROW(interactive_l3_check(fixtures::shift_left()), NetError);
}

TEST(Feet, OnePerAtomicAxiom)
{
    for (auto& n : corpus::cut_free(60, 24)) {
        Net pe = bullet_net(eta_expand(n));
        std::vector<Net> ids;
        for (EdgeId e : pe.conclusions)
            ids.push_back(identity_net(pe.label(e).formula));
        auto r = normalize_no_axiom(cut_compose(pe, ids));
        auto feet = detect_feet(r.net);
        EXPECT_EQ(feet.size(), eta_expand(n).count(LinkKind::axiom));

        std::set<std::string> site_axioms;
        for (auto& s : find_sites(pe)) {
            site_axioms.insert(pe.links[s.left_axiom].name);
            site_axioms.insert(pe.links[s.right_axiom].name);
        }
        for (auto& f : feet)
            for (LinkId l : f.inner_toe) {
                if (r.net.links[l].kind != LinkKind::axiom)
                    continue;
                auto o = origin(r.trace, r.net.links[l].name);
                ASSERT_TRUE(o.has_value());
                EXPECT_TRUE(site_axioms.count(*o)) << *o;
            }
    }
}

TEST(Feet, CutFreeNetHasNone)
{
    EXPECT_TRUE(detect_feet(bullet_net(identity_net(parse_formula("(a * b)")))).empty());
}

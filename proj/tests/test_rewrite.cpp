#include <gtest/gtest.h>

#include "corpus.hpp"
#include "fixtures.hpp"
#include "stratnet/interactive.hpp"
#include "stratnet/rewrite.hpp"

using namespace stratnet;

namespace {

std::vector<Net> identities_for(const Net& n)
{
    std::vector<Net> ids;
    for (EdgeId e : n.conclusions)
        ids.push_back(identity_net(n.label(e).formula));
    return ids;
}

bool same_conclusions(const Net& a, const Net& b)
{
    if (a.conclusions.size() != b.conclusions.size())
        return false;
    for (std::size_t i = 0; i < a.conclusions.size(); ++i)
        if (!(a.label(a.conclusions[i]) == b.label(b.conclusions[i])))
            return false;
    return true;
}

}

TEST(Rewrite, EveryStepPreservesCorrectness)
{
    std::map<StepKind, std::size_t> fired;
    for (auto& n : corpus::with_cuts(150)) {
        Net cur = n;
        bool proof_net = is_proof_net(n);
        for (int guard = 0; guard < 10000; ++guard) {
            auto rs = find_redexes(cur);
            if (rs.empty())
                break;
            auto r = apply_step(cur, rs[guard % rs.size()]);
            ++fired[rs[guard % rs.size()].kind];
            ASSERT_TRUE(validate(r.net).ok()) << validate(r.net).summary();
            ASSERT_TRUE(is_dr_correct(r.net).correct);
            if (proof_net)
                ASSERT_TRUE(is_proof_net(r.net));
            ASSERT_TRUE(same_conclusions(r.net, n));
            for (auto& e : r.net.edges) {
                auto it = r.lift.find(e.name);
                ASSERT_NE(it, r.lift.end()) << e.name;
                EXPECT_TRUE(cur.find_edge(it->second).has_value());
            }
            cur = std::move(r.net);
        }
        EXPECT_EQ(cur.count(LinkKind::cut), 0u);
    }
    for (StepKind k : {StepKind::axiom, StepKind::unit, StepKind::multiplicative, StepKind::exponential, StepKind::paragraph})
        EXPECT_GT(fired[k], 0u) << step_kind_name(k);
}

TEST(Rewrite, StrategiesReachTheSameNormalForm)
{
    for (auto& n : corpus::with_cuts(120)) {
        auto lo = normalize(n, Strategy::leftmost_outermost);
        auto in = normalize(n, Strategy::innermost);
        auto lv = normalize(n, Strategy::by_level);
        EXPECT_TRUE(nets_equal(lo.net, in.net));
        EXPECT_TRUE(nets_equal(lo.net, lv.net));
        EXPECT_TRUE(nets_equal(replay(n, lo.trace), lo.net));
    }
}

// Expanded identities give back the expansion of a net, so the law is checked on
// expanded nets; bare axioms are neutral on any net.
TEST(Rewrite, IdentitiesAreNeutral)
{
    for (auto& n : corpus::cut_free(120)) {
        Net e = eta_expand(n);
        EXPECT_TRUE(nets_equal(normalize(cut_compose(e, identities_for(e))).net, e)) << save_net(n);
        std::vector<Net> axioms;
        for (EdgeId c : n.conclusions)
            axioms.push_back(ax(n.label(c).formula));
        EXPECT_TRUE(nets_equal(normalize(cut_compose(n, axioms)).net, n)) << save_net(n);
    }
}

TEST(Rewrite, CutFreeInputIsLeftAlone)
{
    for (auto& n : corpus::cut_free(50)) {
        auto r = normalize(n);
        EXPECT_TRUE(r.trace.steps.empty());
        EXPECT_EQ(save_net(r.net), save_net(n));
    }
}

TEST(Rewrite, NoAxiomNormalizationStopsAtAxiomRedexes)
{
    for (auto& n : corpus::with_cuts(80)) {
        auto r = normalize_no_axiom(n);
        for (auto& rd : find_redexes(r.net))
            EXPECT_EQ(rd.kind, StepKind::axiom);
        for (auto& s : r.trace.steps)
            EXPECT_NE(s.kind, StepKind::axiom);
        EXPECT_TRUE(nets_equal(normalize(r.net).net, normalize(n).net));
    }
}

TEST(Rewrite, ExponentialStepAgainstAWeakeningErasesTheBox)
{
    Net n = fixtures::not_l3_until_normalized();
    auto r = normalize(n);
    EXPECT_EQ(r.net.boxes.size(), 1u);
    EXPECT_EQ(r.net.count(LinkKind::axiom), 1u);
    bool saw_exponential = false;
    for (auto& s : r.trace.steps)
        saw_exponential = saw_exponential || s.kind == StepKind::exponential;
    EXPECT_TRUE(saw_exponential);
}

TEST(Rewrite, ParagraphStepJoinsTheBodies)
{
    Formula a = Formula::atom("a");
    Net left = paragraph_rule(ax(a), 1);   // a^, #a
    Net right = paragraph_rule(ax(a), 0);  // #a^, a
    Net n = cut_rule(left, 1, right, 0);
    auto rs = find_redexes(n);
    ASSERT_EQ(rs.size(), 1u);
    EXPECT_EQ(rs[0].kind, StepKind::paragraph);
    Net nf = normalize(n).net;
    EXPECT_TRUE(nets_equal(nf, ax(a)));
}

TEST(Rewrite, BudgetIsEnforced)
{
    Net n;
    for (auto& m : corpus::with_cuts(40))
        if (m.count(LinkKind::cut) >= 2) {
            n = m;
            break;
        }
    ASSERT_FALSE(n.empty());
    EXPECT_THROW(normalize(n, Strategy::leftmost_outermost, 1), BudgetExceeded);
}

TEST(Rewrite, RefusesIncorrectNets)
{
    Net loop = corpus::tensor_across(cut_rule(ax(Formula::atom("X")), 1, ax(Formula::atom("X")), 0), 0, 1);
    ASSERT_FALSE(is_dr_correct(loop).correct);
    EXPECT_THROW(normalize(loop), NetError);
}

TEST(Rewrite, ShiftAddsParagraphsAboveOfcourseAndFlat)
{
    Net left = fixtures::shift_left();
    Net plus = shift_net(left);
    EXPECT_EQ(plus.count(LinkKind::paragraph), left.count(LinkKind::paragraph) + 1);
    Net boxed = fixtures::not_l3_until_normalized();
    Net shifted = shift_net(boxed);
    EXPECT_EQ(shifted.count(LinkKind::paragraph),
              boxed.count(LinkKind::ofcourse) + boxed.count(LinkKind::flat));
    EXPECT_TRUE(validate(shifted).ok());
    EXPECT_TRUE(is_dr_correct(shifted).correct);
}

TEST(Rewrite, QuasiIndexingTransportsAlongNoAxiomTraces)
{
    std::size_t checked = 0;
    for (auto& n : corpus::cut_free(40, 16)) {
        Net closed = parr_closure(n);
        Formula a = closed.label(closed.conclusions[0]).formula;
        Net expanded = bullet_net(eta_expand(closed));
        for (long k = 0; k <= max_test_level(a); ++k) {
            Net composed = cut_compose(expanded, {make_test(a, k).net});
            Indexing q = cut_anchored_quasi_indexing(composed);
            ASSERT_TRUE(check_indexing(composed, q).empty());
            auto r = normalize_no_axiom(composed);
            Indexing moved = transport_indexing(q, composed, r.trace, r.net);
            EXPECT_TRUE(check_indexing(r.net, moved).empty());
            ++checked;
        }
    }
    EXPECT_GT(checked, 40u);
}

TEST(Rewrite, TraceSerializes)
{
    auto r = normalize(fixtures::not_l3_until_normalized());
    std::string j = trace_json(r.trace);
    EXPECT_NE(j.find("\"kind\":\"exponential\""), std::string::npos);
    EXPECT_NE(j.find("\"kind\":\"multiplicative\""), std::string::npos);
}

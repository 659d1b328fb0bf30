#include <gtest/gtest.h>

#include <random>

#include "corpus.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "stratnet/correctness.hpp"
#include "stratnet/rewrite.hpp"

using namespace stratnet;

TEST(Dr, FastPathAgreesWithEnumeration)
{
    std::size_t decided = 0;
    for (std::uint64_t s = 1; s < 2500; ++s) {
        Net n = random_net(s, corpus::params_for(s, 2 + s % 18, s % 3 == 0 ? 0.4 : 0.0));
        if (s % 2 == 0 && n.conclusions.size() >= 2)
            n = corpus::tensor_across(n, s % n.conclusions.size(), (s / 2) % n.conclusions.size());
        if (!validate(n).ok())
            continue;
        DrResult brute;
        try {
            brute = is_dr_correct_brute(n);
        } catch (const BudgetExceeded&) {
            continue;
        }
        ++decided;
        DrResult fast = is_dr_correct(n);
        ASSERT_EQ(fast.correct, brute.correct) << "seed " << s << "\n" << save_net(n);
        if (!fast.correct) {
            ASSERT_TRUE(fast.witness.has_value());
            EXPECT_FALSE(fast.witness->cycle.empty());
        }
    }
    EXPECT_GT(decided, 2000u);
}

TEST(Dr, TensorOnTwoConclusionsOfOneComponentBreaksCorrectness)
{
    Net loop = corpus::tensor_across(ax(Formula::atom("X")), 0, 1);
    EXPECT_FALSE(is_dr_correct(loop).correct);
    EXPECT_FALSE(is_dr_correct_brute(loop).correct);

    std::size_t flipped = 0;
    for (std::uint64_t s = 1; s < 400 && flipped < 40; ++s) {
        Net n = random_net(s, corpus::params_for(s, 3 + s % 12, 0.0));
        if (n.conclusions.size() < 2)
            continue;
        Net m = corpus::tensor_across(n, 0, 1);
        DrResult brute;
        try {
            brute = is_dr_correct_brute(m);
        } catch (const BudgetExceeded&) {
            continue;
        }
        EXPECT_EQ(is_dr_correct(m).correct, brute.correct);
        flipped += !brute.correct;
    }
    EXPECT_GE(flipped, 20u);
}

TEST(Dr, CycleInsideABoxIsFound)
{
    Net inner = corpus::tensor_across(ax(Formula::atom("X")), 0, 1);
    Net boxed = promotion(inner, 0);
    EXPECT_FALSE(is_dr_correct(boxed).correct);
    auto w = is_dr_correct(boxed).witness;
    ASSERT_TRUE(w.has_value());
    EXPECT_TRUE(w->switching.box.has_value());
}

TEST(Indexing, SolverAgreesWithExhaustiveSearch)
{
    auto nets = oracles::small_nets(12, 320);
    std::size_t with_solution = 0, without = 0;
    for (auto& n : nets)
        for (bool exponential : {false, true}) {
            auto r = solve_indexing(n, exponential ? Flavor::exponential : Flavor::plain);
            bool found = std::holds_alternative<Indexing>(r);
            ASSERT_EQ(found, oracles::exists_by_search(n, exponential)) << save_net(n);
            (found ? with_solution : without)++;
            if (found)
                EXPECT_TRUE(check_indexing(n, std::get<Indexing>(r)).empty());
        }
    EXPECT_GT(with_solution, 0u);
    EXPECT_GT(without, 0u);
}

TEST(Indexing, WitnessIsAnUnbalancedCycle)
{
    std::size_t checked = 0;
    for (auto& n : oracles::small_nets(40, 1500))
        for (Flavor f : {Flavor::plain, Flavor::exponential}) {
            auto r = solve_indexing(n, f);
            if (auto w = std::get_if<BalanceWitness>(&r)) {
                EXPECT_NO_THROW(check_path(n, w->cycle));
                EXPECT_EQ(w->cycle.front().from, w->cycle.back().to);
                EXPECT_NE(signed_balance(n, w->cycle, f == Flavor::exponential), 0);
                EXPECT_EQ(w->balance, balance(n, w->cycle, f == Flavor::exponential));
                ++checked;
            }
        }
    EXPECT_GT(checked, 30u);
}

TEST(Indexing, ComponentShiftsPreserveValidity)
{
    std::mt19937_64 rng(7);
    for (auto& n : corpus::with_cuts(200, 60)) {
        for (Flavor f : {Flavor::plain, Flavor::exponential}) {
            auto r = solve_indexing(n, f);
            if (!std::holds_alternative<Indexing>(r))
                continue;
            auto comps = indexing_components(n, f);
            std::map<std::size_t, long> shifts;
            for (auto c : comps)
                shifts[c] = static_cast<long>(rng() % 11) - 5;
            auto moved = shift_indexing(std::get<Indexing>(r), n, shifts);
            EXPECT_TRUE(check_indexing(n, moved).empty());
        }
    }
}

TEST(Indexing, AxiomNetIsFlat)
{
    Net n = ax(Formula::atom("a"));
    auto r = solve_indexing(n, Flavor::plain);
    ASSERT_TRUE(std::holds_alternative<Indexing>(r));
    for (long v : std::get<Indexing>(r).assignment)
        EXPECT_EQ(v, 0);
}

TEST(Figures, ShiftExample)
{
    Net left = fixtures::shift_left();
    EXPECT_TRUE(std::holds_alternative<Indexing>(solve_indexing(left, Flavor::exponential)));
    EXPECT_FALSE(is_strongly_indexable(left));
    EXPECT_TRUE(is_l3_indexing_route(left));
    EXPECT_TRUE(is_l3_geometric(left).member);
    Net plus = shift_net(left);
    EXPECT_TRUE(validate(plus).ok()) << validate(plus).summary();
    EXPECT_TRUE(is_proof_net(plus));
    EXPECT_EQ(print_label(plus.label(plus.conclusions[0])), "?#A^");
    EXPECT_EQ(print_label(plus.label(plus.conclusions[1])), "#A");
}

TEST(Figures, DerelictionIsNotStratified)
{
    Net n = fixtures::dereliction();
    EXPECT_TRUE(is_dr_correct(n).correct);
    EXPECT_FALSE(is_l3_indexing_route(n));
    auto g = is_l3_geometric(n);
    EXPECT_FALSE(g.member);
    ASSERT_TRUE(g.witness.has_value());
    EXPECT_NE(g.witness->balance, 0);
}

TEST(Figures, ParagraphImplicationsAreNotStronglyIndexable)
{
    EXPECT_FALSE(is_strongly_indexable(fixtures::paragraph_in()));
    EXPECT_FALSE(is_strongly_indexable(fixtures::paragraph_out()));
    EXPECT_FALSE(is_proof_net(fixtures::paragraph_in()));
    Net both = par_rule(paragraph_rule(paragraph_rule(ax(Formula::atom("X")), 0), 1), 0, 1);
    EXPECT_TRUE(is_proof_net(both));
}

TEST(Figures, StratificationLostUnderACutComesBackAfterNormalizing)
{
    Net n = fixtures::not_l3_until_normalized();
    EXPECT_TRUE(is_dr_correct(n).correct);
    EXPECT_FALSE(is_l3_indexing_route(n));
    EXPECT_FALSE(is_l3_geometric(n).member);
    Net nf = normalize(n).net;
    EXPECT_EQ(nf.count(LinkKind::cut), 0u);
    EXPECT_TRUE(is_l3_indexing_route(nf));
    EXPECT_TRUE(is_l3_geometric(nf).member);
}

TEST(L3, RoutesAgreeOnTheCorpus)
{
    std::size_t members = 0, total = 0;
    auto nets = corpus::cut_free(400);
    for (auto& n : corpus::with_cuts(200))
        nets.push_back(n);
    for (auto& n : nets) {
        bool a = is_l3_indexing_route(n);
        EXPECT_EQ(a, is_l3_geometric(n).member) << save_net(n);
        members += a;
        ++total;
    }
    EXPECT_GT(members, 0u);
    EXPECT_LT(members, total);
}

TEST(L3, ShiftedNetIsAProofNetExactlyForMembers)
{
    for (auto& n : corpus::cut_free(300))
        if (std::none_of(n.conclusions.begin(), n.conclusions.end(), [&](EdgeId e) { return n.label(e).flat; }))
        {
            Net plus = shift_net(n);
            ASSERT_TRUE(validate(plus).ok()) << validate(plus).summary();
            EXPECT_EQ(is_dr_correct(plus).correct, is_dr_correct(n).correct);
            EXPECT_EQ(is_l3_indexing_route(n), is_strongly_indexable(plus)) << save_net(n);
            for (std::size_t i = 0; i < n.conclusions.size(); ++i)
                EXPECT_EQ(plus.label(plus.conclusions[i]).formula, shift_formula(n.label(n.conclusions[i]).formula));
        }
}

TEST(L3, DefaultQuasiIndexingIsValidAndNonNegative)
{
    for (auto& n : corpus::cut_free(300)) {
        Indexing q = default_exponential_quasi_indexing(n);
        EXPECT_TRUE(check_indexing(n, q).empty());
        if (is_l3_indexing_route(n))
            for (long v : q.assignment)
                EXPECT_GE(v, 0);
    }
}

TEST(L3, RejectsFlatConclusions)
{
    EXPECT_THROW(is_l3_indexing_route(flat_rule(ax(Formula::atom("a")), 0)), NetError);
}

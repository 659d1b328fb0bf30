#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stratnet/net.hpp"
#include "stratnet/rewrite.hpp"

namespace stratnet {

// Replaces every axiom on a compound formula by its expansion down to atomic axioms.
Net eta_expand(const Net& n);
// Expanded axiom on a, conclusions a^ then a.
Net identity_net(const Formula& a);
// The identity on X*X with the two axioms crossed on the par side.
Net swap_net();
// Every atomic axiom becomes the identity on X*X; labels follow the same substitution.
Net bullet_net(const Net& n);

// Two axioms feeding both a tensor and a par, with tensor premises (left, right).
struct AtomSite {
    LinkId tensor;
    LinkId par;
    LinkId left_axiom;
    LinkId right_axiom;
    bool swapped = false;    // par premises come in the crossed order
    long tensor_level = 0;   // default quasi-indexing of the tensor conclusion
    long par_level = 0;
};

std::vector<AtomSite> find_sites(const Net& n);
// Sites with their levels; the net must be cut-free.
std::vector<AtomSite> atom_sites(const Net& n);

struct Test {
    Net net;
    Formula type;
    long level = 0;
    std::vector<AtomSite> swapped_sites;
};

Test make_test(const Formula& a, long k);
// Highest site level of the identity on the substituted formula.
long max_test_level(const Formula& a);

// Juxtaposes n with the partners and cuts n's i-th conclusion against the dual
// conclusion of partner i (chosen by which[i] when given).
Net cut_compose(const Net& n, const std::vector<Net>& partners, const std::vector<std::optional<std::size_t>>& which = {});

// Morphism composition: f's last conclusion is cut against g's first; the result keeps
// f's other conclusions followed by g's.
Net compose(const Net& f, const Net& g);

Net syntactic_interpretation(const Net& n, std::uint64_t budget = default_step_budget());

struct LevelReport {
    long k = 0;
    bool pass = true;
    std::size_t swapped_sites = 0;
};

struct InteractiveReport {
    Formula formula;
    bool member = true;
    std::vector<LevelReport> levels;
};

// One test: expanded is the substituted expansion of a net of conclusion a.
LevelReport run_test_level(const Net& expanded, const Formula& a, long k, std::uint64_t budget = default_step_budget());
InteractiveReport interactive_l3_check(const Net& n, unsigned jobs = 1, std::uint64_t budget = default_step_budget());
std::string report_json(const InteractiveReport& r, bool pretty = false);

// True when a is b with a non-empty set of identity sites swapped.
bool swapping_compare(const Net& a, const Net& b);
// Number of sites swapped in a relative to b, when a is below or equal to b.
std::optional<std::size_t> swapped_relative(const Net& a, const Net& b);

struct Foot {
    std::vector<LinkId> inner_toe;
    std::vector<LinkId> outer_toes;
    std::vector<LinkId> cuts;
};

// Recognises both the three-site chain and its form after the multiplicative steps,
// where the inner toe is reduced to two axioms cut between the outer ones.
std::vector<Foot> detect_feet(const Net& n);

}

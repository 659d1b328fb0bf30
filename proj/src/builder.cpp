#include "stratnet/builder.hpp"

#include <algorithm>
#include <set>

namespace stratnet {

namespace {

void check_index(const Net& a, std::size_t i, const char* rule)
{
    if (i >= a.conclusions.size())
        throw NetError(std::string(rule) + ": conclusion index " + std::to_string(i) + " out of range");
}

const EdgeLabel& concl_label(const Net& a, std::size_t i) { return a.edges[a.conclusions[i]].label; }

std::string next_edge(const Net& n) { return "e" + std::to_string(n.edges.size()); }
std::string next_link(const Net& n) { return "l" + std::to_string(n.links.size()); }

}

Net daimon() { return Net{}; }

Net ax(const Formula& a)
{
    Net n;
    EdgeId neg = n.add_edge("e0", EdgeLabel::plain(dual(a)));
    EdgeId pos = n.add_edge("e1", EdgeLabel::plain(a));
    n.add_link("l0", LinkKind::axiom, {}, {neg, pos});
    n.conclusions = {neg, pos};
    return n;
}

Net one_rule()
{
    Net n;
    EdgeId e = n.add_edge("e0", EdgeLabel::plain(Formula::one()));
    n.add_link("l0", LinkKind::one, {}, {e});
    n.conclusions = {e};
    return n;
}

Net mix(const Net& a, const Net& b) { return renumber(juxtapose(renumber(a), b)); }

Net cut_rule(const Net& a, std::size_t i, const Net& b, std::size_t j)
{
    check_index(a, i, "cut");
    check_index(b, j, "cut");
    auto& la = concl_label(a, i);
    auto& lb = concl_label(b, j);
    if (la.flat || lb.flat || dual(la.formula) != lb.formula)
        throw NetError("cut: conclusions " + print_label(la) + " and " + print_label(lb) + " are not dual");
    Net n = renumber(juxtapose(renumber(a), b));
    EdgeId ea = n.conclusions[i], eb = n.conclusions[a.conclusions.size() + j];
    n.add_link(next_link(n), LinkKind::cut, {ea, eb}, {});
    std::vector<EdgeId> concl;
    for (EdgeId e : n.conclusions)
        if (e != ea && e != eb)
            concl.push_back(e);
    n.conclusions = concl;
    return n;
}

Net tensor_rule(const Net& a, std::size_t i, const Net& b, std::size_t j)
{
    check_index(a, i, "tensor");
    check_index(b, j, "tensor");
    if (concl_label(a, i).flat || concl_label(b, j).flat)
        throw NetError("tensor: flat conclusions cannot be combined");
    Net n = renumber(juxtapose(renumber(a), b));
    EdgeId ea = n.conclusions[i], eb = n.conclusions[a.conclusions.size() + j];
    auto f = Formula::tensor(n.label(ea).formula, n.label(eb).formula);
    EdgeId c = n.add_edge(next_edge(n), EdgeLabel::plain(f));
    n.add_link(next_link(n), LinkKind::tensor, {ea, eb}, {c});
    std::vector<EdgeId> concl;
    for (EdgeId e : n.conclusions) {
        if (e == ea)
            concl.push_back(c);
        else if (e != eb)
            concl.push_back(e);
    }
    n.conclusions = concl;
    return n;
}

Net par_rule(const Net& a, std::size_t i, std::size_t j)
{
    check_index(a, i, "par");
    check_index(a, j, "par");
    if (i == j)
        throw NetError("par: the two conclusions must be distinct");
    if (concl_label(a, i).flat || concl_label(a, j).flat)
        throw NetError("par: flat conclusions cannot be combined");
    Net n = renumber(a);
    EdgeId ea = n.conclusions[i], eb = n.conclusions[j];
    auto f = Formula::par(n.label(ea).formula, n.label(eb).formula);
    EdgeId c = n.add_edge(next_edge(n), EdgeLabel::plain(f));
    n.add_link(next_link(n), LinkKind::par, {ea, eb}, {c});
    std::vector<EdgeId> concl;
    for (EdgeId e : n.conclusions) {
        if (e == ea)
            concl.push_back(c);
        else if (e != eb)
            concl.push_back(e);
    }
    n.conclusions = concl;
    return n;
}

Net bottom_rule(const Net& a)
{
    Net n = renumber(a);
    EdgeId c = n.add_edge(next_edge(n), EdgeLabel::plain(Formula::bottom()));
    n.add_link(next_link(n), LinkKind::bottom, {}, {c});
    n.conclusions.push_back(c);
    return n;
}

namespace {

Net unary_rule(const Net& a, std::size_t i, LinkKind kind, const char* rule)
{
    check_index(a, i, rule);
    if (concl_label(a, i).flat)
        throw NetError(std::string(rule) + ": conclusion is already flat");
    Net n = renumber(a);
    EdgeId p = n.conclusions[i];
    Formula body = n.label(p).formula;
    EdgeLabel lab = kind == LinkKind::flat ? EdgeLabel::flat_of(body) : EdgeLabel::plain(Formula::paragraph(body));
    EdgeId c = n.add_edge(next_edge(n), lab);
    n.add_link(next_link(n), kind, {p}, {c});
    n.conclusions[i] = c;
    return n;
}

}

Net flat_rule(const Net& a, std::size_t i) { return unary_rule(a, i, LinkKind::flat, "flat"); }
Net paragraph_rule(const Net& a, std::size_t i) { return unary_rule(a, i, LinkKind::paragraph, "paragraph"); }

Net whynot_rule(const Net& a, const std::vector<std::size_t>& indices, std::optional<Formula> weakened)
{
    std::set<std::size_t> distinct(indices.begin(), indices.end());
    if (distinct.size() != indices.size())
        throw NetError("whynot: repeated conclusion index");
    for (auto i : indices)
        check_index(a, i, "whynot");
    Formula body = Formula::one();
    if (indices.empty()) {
        if (!weakened)
            throw NetError("whynot: a weakening needs the weakened formula");
        body = *weakened;
    } else {
        for (auto i : indices) {
            auto& lab = concl_label(a, i);
            if (!lab.flat)
                throw NetError("whynot: premise " + print_label(lab) + " is not flat");
            if (lab.formula != concl_label(a, indices[0]).formula)
                throw NetError("whynot: premises carry different formulas");
        }
        body = concl_label(a, indices[0]).formula;
    }
    Net n = renumber(a);
    std::vector<EdgeId> prem;
    for (auto i : indices)
        prem.push_back(n.conclusions[i]);
    EdgeId c = n.add_edge(next_edge(n), EdgeLabel::plain(Formula::whynot(body)));
    n.add_link(next_link(n), LinkKind::whynot, prem, {c});
    if (indices.empty()) {
        n.conclusions.push_back(c);
        return n;
    }
    std::vector<EdgeId> concl;
    for (EdgeId e : n.conclusions) {
        if (e == prem[0])
            concl.push_back(c);
        else if (std::find(prem.begin(), prem.end(), e) == prem.end())
            concl.push_back(e);
    }
    n.conclusions = concl;
    return n;
}

Net promotion(const Net& a, std::size_t principal)
{
    check_index(a, principal, "promotion");
    for (std::size_t i = 0; i < a.conclusions.size(); ++i) {
        bool flat = concl_label(a, i).flat;
        if (i == principal && flat)
            throw NetError("promotion: the principal conclusion cannot be flat");
        if (i != principal && !flat)
            throw NetError("promotion: more than one non-flat conclusion");
    }
    Net n = renumber(a);
    Box box;
    for (LinkId l = 0; l < n.links.size(); ++l)
        box.contents.push_back(l);
    BoxId id = n.boxes.size();
    for (auto& b : n.boxes)
        if (!b.parent)
            b.parent = id;
    for (std::size_t i = 0; i < n.conclusions.size(); ++i) {
        EdgeId p = n.conclusions[i];
        if (i == principal) {
            EdgeId c = n.add_edge(next_edge(n), EdgeLabel::plain(Formula::ofcourse(n.label(p).formula)));
            box.principal = n.add_link(next_link(n), LinkKind::ofcourse, {p}, {c});
            n.conclusions[i] = c;
        } else {
            EdgeId c = n.add_edge(next_edge(n), n.label(p));
            box.auxiliaries.push_back(n.add_link(next_link(n), LinkKind::pax, {p}, {c}));
            n.conclusions[i] = c;
        }
    }
    n.boxes.push_back(std::move(box));
    return n;
}

std::uint64_t Rng::next()
{
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {

constexpr const char* atom_names[] = {"a", "b", "c"};

class Generator {
public:
    Generator(std::uint64_t seed, const RandomParams& p) : rng_(seed), p_(p) {}

    Formula formula(int size)
    {
        if (size <= 1) {
            if (rng_.chance(0.08))
                return rng_.chance(0.5) ? Formula::one() : Formula::bottom();
            return Formula::atom(atom_names[rng_.below(3)], rng_.chance(0.4));
        }
        std::vector<double> w = {0.5, 0.5, p_.box_bias, p_.exponential_bias, p_.paragraph_bias, 0.15};
        switch (pick(w)) {
        case 0:
        case 1: {
            int left = 1 + static_cast<int>(rng_.below(static_cast<std::size_t>(std::max(1, size - 2))));
            Formula l = formula(left), r = formula(size - 1 - left);
            return pick_two() ? Formula::tensor(l, r) : Formula::par(l, r);
        }
        case 2: return Formula::ofcourse(formula(size - 1));
        case 3: return Formula::whynot(formula(size - 1));
        case 4: return Formula::paragraph(formula(size - 1));
        default: return formula(1);
        }
    }

    // A net having c among its conclusions; the returned index points at it.
    std::pair<Net, std::size_t> prove(const Formula& c, int budget)
    {
        if (budget > 3 && rng_.chance(p_.cut_bias * 0.5))
            return prove_with_cut(c, budget);
        if (!c.is_atom() && budget > 0 && rng_.chance(0.06)) {
            Net n = ax(c);
            return {n, 1};
        }
        switch (c.kind()) {
        case Connective::atom: {
            Net n = ax(c.is_dual() ? dual(c) : c);
            return {n, c.is_dual() ? 0u : 1u};
        }
        case Connective::one: return {one_rule(), 0};
        case Connective::bottom: {
            Net base = budget > 2 && rng_.chance(0.3) ? prove(formula(2), budget / 2).first : daimon();
            Net n = bottom_rule(base);
            return {n, n.conclusions.size() - 1};
        }
        case Connective::tensor: {
            auto [l, i] = prove(c.left(), budget / 2);
            auto [r, j] = prove(c.right(), budget / 2);
            Net n = tensor_rule(l, i, r, j);
            return {n, i};
        }
        case Connective::par: {
            auto [n, i, j] = prove_pair(c.left(), c.right(), budget);
            Net m = par_rule(n, i, j);
            return {m, i < j ? i : i - 1};
        }
        case Connective::paragraph: {
            auto [n, i] = prove(c.body(), budget - 1);
            return {paragraph_rule(n, i), i};
        }
        case Connective::ofcourse: return prove_box(c.body(), budget);
        case Connective::whynot: return prove_whynot(c.body(), budget);
        }
        return {ax(c), 1};
    }

private:
    std::size_t pick(const std::vector<double>& w)
    {
        double total = 0;
        for (double x : w)
            total += std::max(0.0, x);
        if (total <= 0)
            return w.size() - 1;
        double r = rng_.unit() * total;
        for (std::size_t i = 0; i < w.size(); ++i) {
            r -= std::max(0.0, w[i]);
            if (r < 0)
                return i;
        }
        return w.size() - 1;
    }

    bool pick_two() { return rng_.chance(0.5); }

    std::optional<std::size_t> find_other(const Net& n, const Formula& f, std::size_t skip)
    {
        std::vector<std::size_t> found;
        for (std::size_t k = 0; k < n.conclusions.size(); ++k)
            if (k != skip && !n.label(n.conclusions[k]).flat && n.label(n.conclusions[k]).formula == f)
                found.push_back(k);
        if (found.empty())
            return std::nullopt;
        return found[rng_.below(found.size())];
    }

    std::tuple<Net, std::size_t, std::size_t> prove_pair(const Formula& l, const Formula& r, int budget)
    {
        if (l == dual(r) && rng_.chance(0.35)) {
            Net n = ax(r);
            return {n, 0, 1};
        }
        auto [n, i] = prove(l, budget / 2);
        if (rng_.chance(0.7))
            if (auto j = find_other(n, r, i))
                return {n, i, *j};
        auto [m, j] = prove(r, budget / 2);
        std::size_t off = n.conclusions.size();
        return {mix(n, m), i, off + j};
    }

    std::pair<Net, std::size_t> prove_with_cut(const Formula& c, int budget)
    {
        Formula d = formula(1 + static_cast<int>(rng_.below(static_cast<std::size_t>(std::max(1, budget / 4)))));
        auto [left, i] = prove(d, budget / 3);
        auto [right, j, k] = prove_pair(dual(d), c, budget / 2);
        Net n = cut_rule(left, i, right, j);
        std::size_t pos = left.conclusions.size() - 1 + (k < j ? k : k - 1);
        return {n, pos};
    }

    std::pair<Net, std::size_t> prove_box(const Formula& body, int budget)
    {
        auto [n, i] = prove(body, budget - 1);
        if (budget > 4 && rng_.chance(p_.cut_bias)) {
            Formula d = formula(2);
            auto [l, a] = prove(d, budget / 4);
            auto [r, b] = prove(dual(d), budget / 4);
            n = mix(n, cut_rule(l, a, r, b));
        }
        for (std::size_t k = 0; k < n.conclusions.size(); ++k)
            if (k != i)
                n = flat_rule(n, k);
        n = promotion(n, i);
        // close every auxiliary wire outside the box, sometimes contracting equal ones
        while (true) {
            std::optional<std::size_t> first;
            for (std::size_t k = 0; k < n.conclusions.size(); ++k)
                if (n.label(n.conclusions[k]).flat) {
                    first = k;
                    break;
                }
            if (!first)
                break;
            std::vector<std::size_t> group = {*first};
            for (std::size_t k = *first + 1; k < n.conclusions.size(); ++k)
                if (n.label(n.conclusions[k]) == n.label(n.conclusions[*first]) && rng_.chance(0.5))
                    group.push_back(k);
            n = whynot_rule(n, group);
            std::size_t shift = 0;
            for (auto g : group)
                if (g < i && g != group[0])
                    ++shift;
            i -= shift;
        }
        return {n, i};
    }

    std::pair<Net, std::size_t> prove_whynot(const Formula& body, int budget)
    {
        std::vector<double> w = {0.25, 0.5, 0.25 * std::max(0.2, p_.exponential_bias * 2)};
        switch (pick(w)) {
        case 0: {
            Net base = budget > 3 && rng_.chance(0.3) ? prove(formula(2), budget / 2).first : daimon();
            Net n = whynot_rule(base, {}, body);
            return {n, n.conclusions.size() - 1};
        }
        case 1: {
            auto [n, i] = prove(body, budget - 2);
            if (rng_.chance(0.5))
                if (auto j = find_other(n, body, i)) {
                    n = flat_rule(flat_rule(n, i), *j);
                    n = whynot_rule(n, {i, *j});
                    return {n, *j < i ? i - 1 : i};
                }
            n = flat_rule(n, i);
            return {whynot_rule(n, {i}), i};
        }
        default: {
            auto [a, i] = prove(body, budget / 2);
            auto [b, j] = prove(body, budget / 2);
            Net n = mix(a, b);
            std::size_t j2 = a.conclusions.size() + j;
            n = flat_rule(flat_rule(n, i), j2);
            return {whynot_rule(n, {i, j2}), i};
        }
        }
    }

    Rng rng_;
    RandomParams p_;
};

}

Formula random_formula(std::uint64_t seed, int size, const RandomParams& params)
{
    Generator g(seed, params);
    return g.formula(std::max(1, size));
}

Net random_net(std::uint64_t seed, const RandomParams& params)
{
    Generator g(seed, params);
    if (params.target_size <= 0)
        return daimon();
    Rng side(seed ^ 0x5bd1e995ULL);
    int low = std::max(1, params.target_size / 3);
    int spread = std::max(1, params.target_size / 3);
    Formula c = g.formula(low + static_cast<int>(side.below(static_cast<std::size_t>(spread))));
    return g.prove(c, params.target_size).first;
}

}

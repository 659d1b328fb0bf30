#include "stratnet/interactive.hpp"

#include <algorithm>
#include <atomic>
#include <json.hpp>
#include <map>
#include <mutex>
#include <thread>

#include "stratnet/builder.hpp"
#include "stratnet/correctness.hpp"

namespace stratnet {

namespace {

// Appends links to a net, keeping the contents of enclosing boxes up to date.
struct Growing {
    Net& n;
    std::size_t counter = 0;

    std::string name() { return "_g" + std::to_string(counter++); }

    EdgeId edge(EdgeLabel label) { return n.add_edge(name(), std::move(label)); }

    LinkId link(LinkKind kind, std::vector<EdgeId> ps, std::vector<EdgeId> cs, std::optional<BoxId> where)
    {
        LinkId l = n.add_link(name(), kind, std::move(ps), std::move(cs));
        for (auto b = where; b; b = n.boxes[*b].parent)
            n.boxes[*b].contents.push_back(l);
        return l;
    }
};

// Links producing pos (labelled a) and neg (labelled a^) out of atomic axioms.
void expand(Growing& g, const Formula& a, EdgeId pos, EdgeId neg, std::optional<BoxId> where)
{
    switch (a.kind()) {
    case Connective::atom:
        g.link(LinkKind::axiom, {}, {neg, pos}, where);
        return;
    case Connective::bottom:
    case Connective::par:
    case Connective::whynot:
        expand(g, dual(a), neg, pos, where);
        return;
    case Connective::one:
        g.link(LinkKind::one, {}, {pos}, where);
        g.link(LinkKind::bottom, {}, {neg}, where);
        return;
    case Connective::tensor: {
        Formula l = a.left(), r = a.right();
        EdgeId lp = g.edge(EdgeLabel::plain(l)), ln = g.edge(EdgeLabel::plain(dual(l)));
        EdgeId rp = g.edge(EdgeLabel::plain(r)), rn = g.edge(EdgeLabel::plain(dual(r)));
        expand(g, l, lp, ln, where);
        expand(g, r, rp, rn, where);
        g.link(LinkKind::tensor, {lp, rp}, {pos}, where);
        g.link(LinkKind::par, {ln, rn}, {neg}, where);
        return;
    }
    case Connective::paragraph: {
        Formula b = a.body();
        EdgeId bp = g.edge(EdgeLabel::plain(b)), bn = g.edge(EdgeLabel::plain(dual(b)));
        expand(g, b, bp, bn, where);
        g.link(LinkKind::paragraph, {bp}, {pos}, where);
        g.link(LinkKind::paragraph, {bn}, {neg}, where);
        return;
    }
    case Connective::ofcourse: {
        Formula b = a.body();
        BoxId box = g.n.boxes.size();
        g.n.boxes.push_back(Box{0, {}, {}, where});
        EdgeId bp = g.edge(EdgeLabel::plain(b)), bn = g.edge(EdgeLabel::plain(dual(b)));
        expand(g, b, bp, bn, box);
        g.n.boxes[box].principal = g.link(LinkKind::ofcourse, {bp}, {pos}, where);
        EdgeId fl = g.edge(EdgeLabel::flat_of(dual(b)));
        g.link(LinkKind::flat, {bn}, {fl}, box);
        EdgeId out = g.edge(EdgeLabel::flat_of(dual(b)));
        g.n.boxes[box].auxiliaries.push_back(g.link(LinkKind::pax, {fl}, {out}, where));
        g.link(LinkKind::whynot, {out}, {neg}, where);
        return;
    }
    }
}

Net drop_links(const Net& n, const std::vector<bool>& dead)
{
    Net out;
    out.edges = n.edges;
    out.conclusions = n.conclusions;
    std::vector<std::optional<LinkId>> map(n.links.size());
    for (LinkId l = 0; l < n.links.size(); ++l)
        if (!dead[l]) {
            map[l] = out.links.size();
            out.links.push_back(n.links[l]);
        }
    for (auto& b : n.boxes) {
        Box nb{*map[b.principal], {}, {}, b.parent};
        for (LinkId a : b.auxiliaries)
            nb.auxiliaries.push_back(*map[a]);
        for (LinkId c : b.contents)
            if (map[c])
                nb.contents.push_back(*map[c]);
        out.boxes.push_back(std::move(nb));
    }
    return out;
}

void require_cut_free(const Net& n)
{
    if (n.count(LinkKind::cut) > 0)
        throw NetError("net has cuts");
}

}

Net eta_expand(const Net& n)
{
    require_cut_free(n);
    Topology topo(n);
    Net m = n;
    Growing g{m};
    std::vector<bool> dead(n.links.size(), false);
    for (LinkId l = 0; l < n.links.size(); ++l) {
        if (n.links[l].kind != LinkKind::axiom)
            continue;
        EdgeId c0 = n.links[l].conclusions[0], c1 = n.links[l].conclusions[1];
        Formula a = n.edges[c0].label.formula;
        if (a.is_atom())
            continue;
        dead[l] = true;
        expand(g, a, c0, c1, topo.container[l]);
    }
    dead.resize(m.links.size(), false);
    return renumber(drop_links(m, dead));
}

Net identity_net(const Formula& a)
{
    return eta_expand(ax(a));
}

Net swap_net()
{
    Formula x = Formula::atom(std::string(bullet_atom), false);
    Net n = identity_net(Formula::tensor(x, x));
    for (auto& l : n.links)
        if (l.kind == LinkKind::par)
            std::swap(l.premises[0], l.premises[1]);
    return n;
}

Net bullet_net(const Net& n)
{
    require_cut_free(n);
    Topology topo(n);
    Net m = n;
    for (auto& e : m.edges)
        e.label.formula = bullet_formula(e.label.formula);
    Growing g{m};
    std::vector<bool> dead(n.links.size(), false);
    for (LinkId l = 0; l < n.links.size(); ++l) {
        if (n.links[l].kind != LinkKind::axiom)
            continue;
        EdgeId c0 = n.links[l].conclusions[0], c1 = n.links[l].conclusions[1];
        if (!n.edges[c0].label.formula.is_atom())
            throw NetError("non-atomic axiom " + n.links[l].name + "; expand the net first");
        if (m.edges[c0].label.formula.kind() != Connective::tensor)
            std::swap(c0, c1);
        dead[l] = true;
        expand(g, m.edges[c0].label.formula, c0, c1, topo.container[l]);
    }
    dead.resize(m.links.size(), false);
    return renumber(drop_links(m, dead));
}

std::vector<AtomSite> find_sites(const Net& n)
{
    Topology topo(n);
    Formula x = Formula::atom(std::string(bullet_atom), false);
    std::vector<AtomSite> out;
    for (LinkId t = 0; t < n.links.size(); ++t) {
        const Link& tl = n.links[t];
        if (tl.kind != LinkKind::tensor)
            continue;
        auto a0 = topo.producer[tl.premises[0]], a1 = topo.producer[tl.premises[1]];
        if (!a0 || !a1 || *a0 == *a1 || n.links[*a0].kind != LinkKind::axiom || n.links[*a1].kind != LinkKind::axiom)
            continue;
        if (!(n.edges[tl.premises[0]].label.formula == x) || !(n.edges[tl.premises[1]].label.formula == x))
            continue;
        auto other = [&](LinkId a, EdgeId e) {
            auto& cs = n.links[a].conclusions;
            return cs[0] == e ? cs[1] : cs[0];
        };
        EdgeId o0 = other(*a0, tl.premises[0]), o1 = other(*a1, tl.premises[1]);
        auto p = topo.consumer[o0];
        if (!p || topo.consumer[o1] != p || n.links[*p].kind != LinkKind::par)
            continue;
        AtomSite s{t, *p, *a0, *a1};
        s.swapped = n.links[*p].premises[0] == o1;
        out.push_back(s);
    }
    return out;
}

std::vector<AtomSite> atom_sites(const Net& n)
{
    auto sites = find_sites(n);
    Indexing q = default_exponential_quasi_indexing(n);
    for (auto& s : sites) {
        s.tensor_level = q.assignment[n.links[s.tensor].conclusions[0]];
        s.par_level = q.assignment[n.links[s.par].conclusions[0]];
    }
    return sites;
}

Test make_test(const Formula& a, long k)
{
    Test t{identity_net(bullet_formula(a)), a, k, {}};
    for (auto s : atom_sites(t.net)) {
        if (s.tensor_level != k || s.par_level != k)
            continue;
        auto& ps = t.net.links[s.par].premises;
        std::swap(ps[0], ps[1]);
        s.swapped = true;
        t.swapped_sites.push_back(s);
    }
    return t;
}

long max_test_level(const Formula& a)
{
    long best = 0;
    for (auto& s : atom_sites(identity_net(bullet_formula(a))))
        best = std::max({best, s.tensor_level, s.par_level});
    return best;
}

Net cut_compose(const Net& n, const std::vector<Net>& partners, const std::vector<std::optional<std::size_t>>& which)
{
    if (partners.size() > n.conclusions.size())
        throw NetError("more partners than conclusions");
    Net cur = n;
    std::vector<std::pair<EdgeId, EdgeId>> pairs;
    for (std::size_t i = 0; i < partners.size(); ++i) {
        const Net& p = partners[i];
        const EdgeLabel& mine = n.label(n.conclusions[i]);
        if (mine.flat)
            throw NetError("flat-labelled conclusion cannot be cut");
        EdgeLabel want = EdgeLabel::plain(dual(mine.formula));
        std::optional<std::size_t> j = i < which.size() ? which[i] : std::nullopt;
        if (j) {
            if (*j >= p.conclusions.size() || !(p.label(p.conclusions[*j]) == want))
                throw NetError("label mismatch for partner " + std::to_string(i));
        } else {
            for (std::size_t c = 0; c < p.conclusions.size(); ++c)
                if (p.label(p.conclusions[c]) == want) {
                    if (j)
                        throw NetError("partner " + std::to_string(i) + " has several conclusions " + print_label(want));
                    j = c;
                }
            if (!j)
                throw NetError("label mismatch: partner " + std::to_string(i) + " has no conclusion " + print_label(want));
        }
        EdgeId off = cur.edges.size();
        cur = juxtapose(cur, p);
        pairs.push_back({n.conclusions[i], off + p.conclusions[*j]});
    }
    for (auto [a, b] : pairs) {
        cur.add_link(fresh_name(cur, "cut"), LinkKind::cut, {a, b}, {});
        std::erase(cur.conclusions, a);
        std::erase(cur.conclusions, b);
    }
    return cur;
}

Net compose(const Net& f, const Net& g)
{
    if (f.conclusions.empty() || g.conclusions.empty())
        throw NetError("composition needs a conclusion on both sides");
    Net front = f;
    std::rotate(front.conclusions.rbegin(), front.conclusions.rbegin() + 1, front.conclusions.rend());
    return cut_compose(front, {g}, {0});
}

Net syntactic_interpretation(const Net& n, std::uint64_t budget)
{
    Net b = bullet_net(eta_expand(normalize(n, Strategy::leftmost_outermost, budget).net));
    Net unit;
    EdgeId e = unit.add_edge("e0", EdgeLabel::plain(Formula::bottom()));
    unit.add_link("l0", LinkKind::bottom, {}, {e});
    unit.conclusions = {e};
    return juxtapose(b, unit);
}

LevelReport run_test_level(const Net& expanded, const Formula& a, long k, std::uint64_t budget)
{
    Test t = make_test(a, k);
    Net result = normalize(cut_compose(expanded, {t.net}), Strategy::leftmost_outermost, budget).net;
    LevelReport lr{k, nets_equal(result, expanded), 0};
    if (!lr.pass)
        lr.swapped_sites = swapped_relative(result, expanded).value_or(0);
    return lr;
}

InteractiveReport interactive_l3_check(const Net& n, unsigned jobs, std::uint64_t budget)
{
    require_cut_free(n);
    if (n.conclusions.size() != 1)
        throw NetError("the interactive check needs a single conclusion; close the net with pars first");
    if (!is_dr_correct(n).correct)
        throw NetError("precondition violation: the net is not DR-correct");
    InteractiveReport report{n.label(n.conclusions[0]).formula, true, {}};
    Net expanded = bullet_net(eta_expand(n));
    long top = max_test_level(report.formula);
    report.levels.resize(top + 1);
    std::atomic<long> next{0};
    std::exception_ptr failure;
    std::mutex failure_lock;
    auto work = [&] {
        for (long k = next++; k <= top; k = next++) {
            try {
                report.levels[k] = run_test_level(expanded, report.formula, k, budget);
            } catch (...) {
                std::lock_guard<std::mutex> hold(failure_lock);
                if (!failure)
                    failure = std::current_exception();
            }
        }
    };
    unsigned count = std::max(1u, std::min<unsigned>(jobs, top + 1));
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < count; ++i)
        pool.emplace_back(work);
    work();
    for (auto& th : pool)
        th.join();
    if (failure)
        std::rethrow_exception(failure);
    for (auto& l : report.levels)
        report.member = report.member && l.pass;
    return report;
}

std::string report_json(const InteractiveReport& r, bool pretty)
{
    nlohmann::ordered_json j;
    j["formula"] = print_formula(r.formula);
    j["levels"] = nlohmann::ordered_json::array();
    for (auto& l : r.levels)
        j["levels"].push_back({{"k", l.k}, {"pass", l.pass}, {"swapped_sites", l.swapped_sites}});
    return pretty ? j.dump(2) : j.dump();
}

std::optional<std::size_t> swapped_relative(const Net& a, const Net& b)
{
    auto unswap = [](const Net& n, std::map<LinkId, bool>& flags) {
        Net out = n;
        for (auto& s : find_sites(n)) {
            flags[s.tensor] = s.swapped;
            if (s.swapped)
                std::swap(out.links[s.par].premises[0], out.links[s.par].premises[1]);
        }
        return out;
    };
    std::map<LinkId, bool> fa, fb;
    Net sa = unswap(a, fa), sb = unswap(b, fb);
    auto compat = [&](LinkId x, LinkId y) {
        auto ia = fa.find(x), ib = fb.find(y);
        if ((ia == fa.end()) != (ib == fb.end()))
            return false;
        return ia == fa.end() || ia->second || !ib->second;
    };
    if (!match_nets(sa, sb, compat))
        return std::nullopt;
    auto count = [](const std::map<LinkId, bool>& f) {
        return std::count_if(f.begin(), f.end(), [](auto& p) { return p.second; });
    };
    return count(fa) - count(fb);
}

bool swapping_compare(const Net& a, const Net& b)
{
    auto r = swapped_relative(a, b);
    return r && *r > 0;
}

std::vector<Foot> detect_feet(const Net& n)
{
    Topology topo(n);
    std::vector<Foot> out;
    auto other = [&](LinkId ax, EdgeId e) {
        auto& cs = n.links[ax].conclusions;
        return cs[0] == e ? cs[1] : cs[0];
    };
    // the link on the other side of the cut consuming e
    auto across = [&](EdgeId e) -> std::optional<std::pair<LinkId, EdgeId>> {
        auto c = topo.consumer[e];
        if (!c || n.links[*c].kind != LinkKind::cut)
            return std::nullopt;
        auto& ps = n.links[*c].premises;
        EdgeId f = ps[0] == e ? ps[1] : ps[0];
        if (!topo.producer[f])
            return std::nullopt;
        return std::make_pair(*c, f);
    };
    auto is_axiom = [&](LinkId l) { return n.links[l].kind == LinkKind::axiom; };

    auto sites = find_sites(n);
    std::map<LinkId, std::size_t> by_tensor, by_par;
    for (std::size_t i = 0; i < sites.size(); ++i) {
        by_tensor[sites[i].tensor] = i;
        by_par[sites[i].par] = i;
    }
    auto members = [](const AtomSite& s) { return std::vector<LinkId>{s.tensor, s.par, s.left_axiom, s.right_axiom}; };
    for (auto& s : sites) {
        auto up = across(n.links[s.tensor].conclusions[0]);
        auto down = across(n.links[s.par].conclusions[0]);
        if (!up || !down)
            continue;
        auto s1 = by_par.find(*topo.producer[up->second]);
        auto s3 = by_tensor.find(*topo.producer[down->second]);
        if (s1 == by_par.end() || s3 == by_tensor.end())
            continue;
        Foot f{members(s), members(sites[s1->second]), {up->first, down->first}};
        auto more = members(sites[s3->second]);
        f.outer_toes.insert(f.outer_toes.end(), more.begin(), more.end());
        out.push_back(std::move(f));
    }

    for (LinkId t = 0; t < n.links.size(); ++t) {
        if (n.links[t].kind != LinkKind::tensor)
            continue;
        Foot f;
        std::optional<LinkId> par;
        std::vector<LinkId> lower;
        bool ok = true;
        for (EdgeId p : n.links[t].premises) {
            auto o = topo.producer[p];
            if (!o || !is_axiom(*o)) {
                ok = false;
                break;
            }
            auto c1 = across(other(*o, p));
            if (!c1 || !is_axiom(*topo.producer[c1->second])) {
                ok = false;
                break;
            }
            LinkId s = *topo.producer[c1->second];
            auto c2 = across(other(s, c1->second));
            if (!c2 || !is_axiom(*topo.producer[c2->second])) {
                ok = false;
                break;
            }
            LinkId o2 = *topo.producer[c2->second];
            auto q = topo.consumer[other(o2, c2->second)];
            if (!q || n.links[*q].kind != LinkKind::par || (par && *par != *q) || o2 == *o || s == *o || s == o2) {
                ok = false;
                break;
            }
            par = *q;
            f.inner_toe.push_back(s);
            f.outer_toes.push_back(*o);
            lower.push_back(o2);
            f.cuts.push_back(c1->first);
            f.cuts.push_back(c2->first);
        }
        if (!ok || f.inner_toe.size() != 2 || f.inner_toe[0] == f.inner_toe[1] || lower[0] == lower[1] ||
            f.outer_toes[0] == f.outer_toes[1])
            continue;
        f.outer_toes.insert(f.outer_toes.begin(), t);
        f.outer_toes.push_back(*par);
        f.outer_toes.insert(f.outer_toes.end(), lower.begin(), lower.end());
        out.push_back(std::move(f));
    }
    return out;
}

}

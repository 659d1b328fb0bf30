#include "stratnet/rewrite.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <json.hpp>
#include <set>
#include <tuple>

namespace stratnet {

std::string_view step_kind_name(StepKind k)
{
    switch (k) {
    case StepKind::axiom: return "axiom";
    case StepKind::unit: return "unit";
    case StepKind::multiplicative: return "multiplicative";
    case StepKind::exponential: return "exponential";
    case StepKind::paragraph: return "paragraph";
    }
    return "axiom";
}

std::string_view strategy_name(Strategy s)
{
    switch (s) {
    case Strategy::leftmost_outermost: return "lo";
    case Strategy::innermost: return "in";
    case Strategy::by_level: return "level";
    }
    return "lo";
}

std::optional<Strategy> strategy_from_name(std::string_view s)
{
    if (s == "lo")
        return Strategy::leftmost_outermost;
    if (s == "in")
        return Strategy::innermost;
    if (s == "level")
        return Strategy::by_level;
    return std::nullopt;
}

namespace {

constexpr std::size_t size_cap = 2'000'000;

// Mutable working copy of a net. Elements are only marked dead while editing;
// finish() compacts the survivors and reports each one's source name.
class Editor {
public:
    explicit Editor(const Net& n)
        : m_(n), link_alive_(n.links.size(), true), edge_alive_(n.edges.size(), true), box_alive_(n.boxes.size(), true)
    {
        for (auto& e : n.edges) {
            used_.insert(e.name);
            origin_[e.name] = e.name;
        }
        for (auto& l : n.links) {
            used_.insert(l.name);
            origin_[l.name] = l.name;
        }
    }

    Net& net() { return m_; }

    std::string fresh(const std::string& base)
    {
        if (used_.insert(base).second)
            return base;
        for (int k = 2;; ++k) {
            std::string s = base + "_" + std::to_string(k);
            if (used_.insert(s).second)
                return s;
        }
    }

    EdgeId add_edge(const std::string& base, EdgeLabel label, std::optional<std::string> origin)
    {
        std::string name = fresh(base);
        if (origin)
            origin_[name] = *origin;
        edge_alive_.push_back(true);
        return m_.add_edge(name, std::move(label));
    }

    LinkId add_link(const std::string& base, LinkKind kind, std::vector<EdgeId> premises, std::vector<EdgeId> conclusions,
                    std::optional<BoxId> container, std::optional<std::string> origin)
    {
        std::string name = fresh(base);
        if (origin)
            origin_[name] = *origin;
        link_alive_.push_back(true);
        LinkId l = m_.add_link(name, kind, std::move(premises), std::move(conclusions));
        for (auto b = container; b; b = m_.boxes[*b].parent)
            m_.boxes[*b].contents.push_back(l);
        return l;
    }

    BoxId add_box(std::optional<BoxId> parent)
    {
        m_.boxes.push_back(Box{0, {}, {}, parent});
        box_alive_.push_back(true);
        return m_.boxes.size() - 1;
    }

    void kill_link(LinkId l) { link_alive_[l] = false; }
    void kill_edge(EdgeId e) { edge_alive_[e] = false; }
    void kill_box(BoxId b) { box_alive_[b] = false; }

    StepResult finish() const
    {
        StepResult out;
        Net& r = out.net;
        std::vector<std::optional<std::size_t>> em(m_.edges.size()), lm(m_.links.size()), bm(m_.boxes.size());
        auto edge = [&](EdgeId e) {
            if (!em[e])
                throw std::logic_error("rewrite left a reference to erased edge " + m_.edges[e].name);
            return *em[e];
        };
        for (EdgeId e = 0; e < m_.edges.size(); ++e)
            if (edge_alive_[e])
                em[e] = r.add_edge(m_.edges[e].name, m_.edges[e].label);
        for (LinkId l = 0; l < m_.links.size(); ++l) {
            if (!link_alive_[l])
                continue;
            const Link& k = m_.links[l];
            std::vector<EdgeId> ps, cs;
            for (EdgeId e : k.premises)
                ps.push_back(edge(e));
            for (EdgeId e : k.conclusions)
                cs.push_back(edge(e));
            lm[l] = r.add_link(k.name, k.kind, std::move(ps), std::move(cs));
        }
        for (BoxId b = 0; b < m_.boxes.size(); ++b)
            if (box_alive_[b])
                bm[b] = r.boxes.size(), r.boxes.push_back({});
        for (BoxId b = 0; b < m_.boxes.size(); ++b) {
            if (!bm[b])
                continue;
            const Box& src = m_.boxes[b];
            Box& dst = r.boxes[*bm[b]];
            if (!lm[src.principal])
                throw std::logic_error("rewrite erased the principal of a surviving box");
            dst.principal = *lm[src.principal];
            for (LinkId a : src.auxiliaries)
                if (lm[a])
                    dst.auxiliaries.push_back(*lm[a]);
            std::set<LinkId> seen;
            for (LinkId c : src.contents)
                if (lm[c] && seen.insert(*lm[c]).second)
                    dst.contents.push_back(*lm[c]);
            if (src.parent) {
                if (!bm[*src.parent])
                    throw std::logic_error("rewrite erased the parent of a surviving box");
                dst.parent = *bm[*src.parent];
            }
        }
        for (EdgeId e : m_.conclusions)
            r.conclusions.push_back(edge(e));
        for (auto& e : r.edges)
            if (auto it = origin_.find(e.name); it != origin_.end())
                out.lift[e.name] = it->second;
        for (auto& l : r.links)
            if (auto it = origin_.find(l.name); it != origin_.end())
                out.lift[l.name] = it->second;
        return out;
    }

private:
    Net m_;
    std::vector<bool> link_alive_, edge_alive_, box_alive_;
    std::set<std::string> used_;
    std::map<std::string, std::string> origin_;
};

void replace_edge(std::vector<EdgeId>& v, EdgeId from, EdgeId to)
{
    std::replace(v.begin(), v.end(), from, to);
}

void precondition(bool ok, const std::string& what)
{
    if (!ok)
        throw NetError("precondition violation: " + what);
}

StepResult axiom_step(const Net& n, const Topology& topo, LinkId cut)
{
    Editor ed(n);
    const Link& c = n.links[cut];
    EdgeId p = c.premises[0], q = c.premises[1];
    if (n.links[*topo.producer[p]].kind != LinkKind::axiom)
        std::swap(p, q);
    LinkId a = *topo.producer[p];
    LinkId other = *topo.producer[q];
    precondition(a != other, "cut between the two conclusions of one axiom");
    const Link& ax = n.links[a];
    EdgeId kept = ax.conclusions[0] == p ? ax.conclusions[1] : ax.conclusions[0];
    replace_edge(ed.net().links[other].conclusions, q, kept);
    ed.kill_link(a);
    ed.kill_link(cut);
    ed.kill_edge(p);
    ed.kill_edge(q);
    return ed.finish();
}

StepResult unit_step(const Net& n, const Topology& topo, LinkId cut)
{
    Editor ed(n);
    for (EdgeId e : n.links[cut].premises) {
        ed.kill_link(*topo.producer[e]);
        ed.kill_edge(e);
    }
    ed.kill_link(cut);
    return ed.finish();
}

StepResult multiplicative_step(const Net& n, const Topology& topo, LinkId cut)
{
    Editor ed(n);
    const Link& c = n.links[cut];
    LinkId t = *topo.producer[c.premises[0]], p = *topo.producer[c.premises[1]];
    if (n.links[t].kind != LinkKind::tensor)
        std::swap(t, p);
    for (int side = 0; side < 2; ++side)
        ed.add_link(c.name + "." + std::to_string(side + 1), LinkKind::cut, {n.links[t].premises[side], n.links[p].premises[side]}, {},
                    topo.container[cut], std::nullopt);
    for (EdgeId e : c.premises)
        ed.kill_edge(e);
    ed.kill_link(t);
    ed.kill_link(p);
    ed.kill_link(cut);
    return ed.finish();
}

StepResult paragraph_step(const Net& n, const Topology& topo, LinkId cut)
{
    Editor ed(n);
    const Link& c = n.links[cut];
    LinkId a = *topo.producer[c.premises[0]], b = *topo.producer[c.premises[1]];
    ed.add_link(c.name + ".1", LinkKind::cut, {n.links[a].premises[0], n.links[b].premises[0]}, {}, topo.container[cut], std::nullopt);
    for (EdgeId e : c.premises)
        ed.kill_edge(e);
    ed.kill_link(a);
    ed.kill_link(b);
    ed.kill_link(cut);
    return ed.finish();
}

StepResult exponential_step(const Net& n, const Topology& topo, LinkId cut)
{
    const Link& c = n.links[cut];
    EdgeId to_box = c.premises[0], to_whynot = c.premises[1];
    if (n.links[*topo.producer[to_box]].kind != LinkKind::ofcourse)
        std::swap(to_box, to_whynot);
    LinkId principal = *topo.producer[to_box];
    LinkId whynot = *topo.producer[to_whynot];
    BoxId box = *topo.box_of_principal[principal];
    const Box& B = n.boxes[box];

    // each whynot premise climbs through pax links up to the flat link that produced it
    struct Entry {
        std::vector<LinkId> paxes;
        LinkId flat;
    };
    std::vector<Entry> entries;
    for (EdgeId e : n.links[whynot].premises) {
        Entry en;
        while (true) {
            auto p = topo.producer[e];
            precondition(p.has_value(), "whynot premise without producer");
            if (n.links[*p].kind == LinkKind::pax) {
                en.paxes.push_back(*p);
                e = n.links[*p].premises[0];
                continue;
            }
            precondition(n.links[*p].kind == LinkKind::flat, "whynot premise not produced by a flat link");
            en.flat = *p;
            break;
        }
        entries.push_back(std::move(en));
    }
    // each auxiliary conclusion of the box descends through pax links to a whynot
    struct Exit {
        LinkId aux;
        std::vector<LinkId> paxes;
        EdgeId last;
        LinkId whynot;
    };
    std::vector<Exit> exits;
    for (LinkId g : B.auxiliaries) {
        Exit ex{g, {}, n.links[g].conclusions[0], 0};
        while (true) {
            auto k = topo.consumer[ex.last];
            precondition(k.has_value(), "flat-labelled conclusion reached from a box");
            if (n.links[*k].kind == LinkKind::pax) {
                ex.paxes.push_back(*k);
                ex.last = n.links[*k].conclusions[0];
                continue;
            }
            precondition(n.links[*k].kind == LinkKind::whynot, "auxiliary conclusion not gathered by a whynot link");
            precondition(*k != whynot, "box auxiliary feeds the whynot it is cut against");
            ex.whynot = *k;
            break;
        }
        exits.push_back(std::move(ex));
    }

    std::set<LinkId> in_box(B.contents.begin(), B.contents.end());
    std::vector<EdgeId> inner_edges;
    for (EdgeId e = 0; e < n.edges.size(); ++e)
        if (topo.producer[e] && in_box.count(*topo.producer[e]))
            inner_edges.push_back(e);
    std::vector<BoxId> inner_boxes;
    for (BoxId d = 0; d < n.boxes.size(); ++d)
        if (in_box.count(n.boxes[d].principal))
            inner_boxes.push_back(d);
    std::stable_sort(inner_boxes.begin(), inner_boxes.end(), [&](BoxId x, BoxId y) { return topo.box_depth[x] < topo.box_depth[y]; });

    Editor ed(n);
    std::vector<std::vector<EdgeId>> wires(exits.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const Entry& en = entries[i];
        std::string tag = "." + std::to_string(i + 1);
        std::optional<BoxId> place = topo.container[en.flat];
        std::map<BoxId, BoxId> bm;
        std::map<EdgeId, EdgeId> em;
        auto where = [&](std::optional<BoxId> b) -> std::optional<BoxId> {
            if (!b || *b == box)
                return place;
            return bm.at(*b);
        };
        for (BoxId d : inner_boxes)
            bm[d] = ed.add_box(where(n.boxes[d].parent));
        for (EdgeId e : inner_edges)
            em[e] = ed.add_edge(n.edges[e].name + tag, n.edges[e].label, n.edges[e].name);
        for (LinkId l : B.contents) {
            const Link& k = n.links[l];
            std::vector<EdgeId> ps, cs;
            for (EdgeId e : k.premises)
                ps.push_back(em.at(e));
            for (EdgeId e : k.conclusions)
                cs.push_back(em.at(e));
            auto border = topo.border_of[l];
            std::optional<BoxId> container = border ? where(n.boxes[*border].parent) : where(topo.container[l]);
            LinkId copy = ed.add_link(k.name + tag, k.kind, std::move(ps), std::move(cs), container, k.name);
            if (border) {
                Box& nb = ed.net().boxes[bm.at(*border)];
                if (k.kind == LinkKind::ofcourse)
                    nb.principal = copy;
                else
                    nb.auxiliaries.push_back(copy);
            }
        }
        ed.add_link(c.name + tag, LinkKind::cut, {em.at(n.links[principal].premises[0]), n.links[en.flat].premises[0]}, {}, place,
                    std::nullopt);
        for (std::size_t j = 0; j < exits.size(); ++j) {
            const Exit& ex = exits[j];
            EdgeId wire = em.at(n.links[ex.aux].premises[0]);
            EdgeId aux_out = n.links[ex.aux].conclusions[0];
            // out of the boxes holding the flat link but not the cut, then out as the box's wire did
            for (LinkId x : en.paxes) {
                BoxId d = *topo.border_of[x];
                EdgeId out = ed.add_edge(n.edges[aux_out].name + tag, n.edges[aux_out].label, n.edges[aux_out].name);
                LinkId pax = ed.add_link(n.links[ex.aux].name + tag, LinkKind::pax, {wire}, {out}, n.boxes[d].parent, n.links[ex.aux].name);
                ed.net().boxes[d].auxiliaries.push_back(pax);
                wire = out;
            }
            for (LinkId y : ex.paxes) {
                BoxId d = *topo.border_of[y];
                EdgeId yc = n.links[y].conclusions[0];
                EdgeId out = ed.add_edge(n.edges[yc].name + tag, n.edges[yc].label, n.edges[yc].name);
                LinkId pax = ed.add_link(n.links[y].name + tag, LinkKind::pax, {wire}, {out}, n.boxes[d].parent, n.links[y].name);
                ed.net().boxes[d].auxiliaries.push_back(pax);
                wire = out;
            }
            wires[j].push_back(wire);
        }
    }

    std::map<LinkId, std::vector<std::size_t>> by_whynot;
    for (std::size_t j = 0; j < exits.size(); ++j)
        by_whynot[exits[j].whynot].push_back(j);
    for (auto& [w, js] : by_whynot) {
        std::vector<EdgeId> merged;
        for (EdgeId e : n.links[w].premises) {
            auto it = std::find_if(js.begin(), js.end(), [&](std::size_t j) { return exits[j].last == e; });
            if (it == js.end())
                merged.push_back(e);
            else
                merged.insert(merged.end(), wires[*it].begin(), wires[*it].end());
        }
        ed.net().links[w].premises = std::move(merged);
    }

    for (LinkId l : B.contents)
        ed.kill_link(l);
    for (EdgeId e : inner_edges)
        ed.kill_edge(e);
    for (BoxId d : inner_boxes)
        ed.kill_box(d);
    ed.kill_box(box);
    ed.kill_link(principal);
    for (const Exit& ex : exits) {
        ed.kill_link(ex.aux);
        ed.kill_edge(n.links[ex.aux].conclusions[0]);
        for (LinkId y : ex.paxes) {
            ed.kill_link(y);
            ed.kill_edge(n.links[y].conclusions[0]);
        }
    }
    for (const Entry& en : entries) {
        ed.kill_link(en.flat);
        ed.kill_edge(n.links[en.flat].conclusions[0]);
        for (LinkId x : en.paxes) {
            ed.kill_link(x);
            ed.kill_edge(n.links[x].conclusions[0]);
        }
    }
    ed.kill_link(whynot);
    ed.kill_link(cut);
    ed.kill_edge(to_box);
    ed.kill_edge(to_whynot);
    return ed.finish();
}

std::optional<StepKind> classify(const Net& n, const Topology& topo, LinkId cut)
{
    const Link& c = n.links[cut];
    if (c.premises.size() != 2)
        return std::nullopt;
    auto pa = topo.producer[c.premises[0]], pb = topo.producer[c.premises[1]];
    if (!pa || !pb)
        return std::nullopt;
    LinkKind a = n.links[*pa].kind, b = n.links[*pb].kind;
    auto is = [&](LinkKind x, LinkKind y) { return (a == x && b == y) || (a == y && b == x); };
    if (a == LinkKind::axiom || b == LinkKind::axiom) {
        if (*pa == *pb)
            return std::nullopt;
        return StepKind::axiom;
    }
    if (is(LinkKind::one, LinkKind::bottom))
        return StepKind::unit;
    if (is(LinkKind::tensor, LinkKind::par))
        return StepKind::multiplicative;
    if (is(LinkKind::ofcourse, LinkKind::whynot))
        return StepKind::exponential;
    if (is(LinkKind::paragraph, LinkKind::paragraph))
        return StepKind::paragraph;
    return std::nullopt;
}

}

std::vector<Redex> find_redexes(const Net& n)
{
    Topology topo(n);
    std::vector<Redex> out;
    for (LinkId l = 0; l < n.links.size(); ++l)
        if (n.links[l].kind == LinkKind::cut)
            if (auto k = classify(n, topo, l))
                out.push_back({l, *k});
    return out;
}

StepResult apply_step(const Net& n, const Redex& r)
{
    precondition(r.cut < n.links.size() && n.links[r.cut].kind == LinkKind::cut, "redex does not name a cut link");
    Topology topo(n);
    auto k = classify(n, topo, r.cut);
    precondition(k == r.kind, "cut " + n.links[r.cut].name + " is not a " + std::string(step_kind_name(r.kind)) + " redex");
    switch (r.kind) {
    case StepKind::axiom: return axiom_step(n, topo, r.cut);
    case StepKind::unit: return unit_step(n, topo, r.cut);
    case StepKind::multiplicative: return multiplicative_step(n, topo, r.cut);
    case StepKind::exponential: return exponential_step(n, topo, r.cut);
    case StepKind::paragraph: return paragraph_step(n, topo, r.cut);
    }
    throw NetError("unknown step kind");
}

std::uint64_t default_step_budget()
{
    if (const char* env = std::getenv("STRATNET_BUDGET")) {
        std::uint64_t v = 0;
        std::string_view s(env);
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec == std::errc() && ptr == s.data() + s.size() && v > 0)
            return v;
    }
    return 1'000'000;
}

namespace {

Redex pick(const Net& n, const std::vector<Redex>& rs, Strategy s)
{
    Topology topo(n);
    std::vector<long> level(n.links.size(), 0);
    if (s == Strategy::by_level) {
        auto r = solve_indexing(n, Flavor::exponential);
        if (!std::holds_alternative<Indexing>(r))
            r = solve_indexing(n, Flavor::quasi);
        if (auto ix = std::get_if<Indexing>(&r))
            for (auto& x : rs)
                level[x.cut] = ix->assignment[n.links[x.cut].premises[0]];
        else
            for (auto& x : rs)
                level[x.cut] = topo.link_depth[x.cut];
    }
    auto key = [&](const Redex& x) {
        int d = topo.link_depth[x.cut];
        switch (s) {
        case Strategy::leftmost_outermost: return std::make_tuple(0L, d, x.cut);
        case Strategy::innermost: return std::make_tuple(0L, -d, x.cut);
        case Strategy::by_level: return std::make_tuple(level[x.cut], d, x.cut);
        }
        return std::make_tuple(0L, d, x.cut);
    };
    return *std::min_element(rs.begin(), rs.end(), [&](const Redex& a, const Redex& b) { return key(a) < key(b); });
}

Normalized run(const Net& n, Strategy s, std::uint64_t budget, bool axioms)
{
    precondition(is_dr_correct(n).correct, "normalization needs a DR-net");
    Normalized out{n, {}};
    while (true) {
        auto rs = find_redexes(out.net);
        if (!axioms)
            std::erase_if(rs, [](const Redex& r) { return r.kind == StepKind::axiom; });
        if (rs.empty())
            return out;
        if (out.trace.steps.size() >= budget)
            throw BudgetExceeded("step budget of " + std::to_string(budget) + " exceeded");
        Redex r = pick(out.net, rs, s);
        std::string name = out.net.links[r.cut].name;
        auto res = apply_step(out.net, r);
        if (res.net.links.size() > size_cap)
            throw BudgetExceeded("net grew beyond " + std::to_string(size_cap) + " links");
        out.trace.steps.push_back({std::move(name), r.kind, std::move(res.lift)});
        out.net = std::move(res.net);
    }
}

}

Normalized normalize(const Net& n, Strategy s, std::uint64_t budget)
{
    return run(n, s, budget, true);
}

Normalized normalize_no_axiom(const Net& n, std::uint64_t budget)
{
    return run(n, Strategy::leftmost_outermost, budget, false);
}

Net replay(const Net& n, const RewriteTrace& t)
{
    Net cur = n;
    for (auto& step : t.steps) {
        auto l = cur.find_link(step.cut);
        if (!l)
            throw NetError("trace names missing cut " + step.cut);
        cur = apply_step(cur, {*l, step.kind}).net;
    }
    return cur;
}

Net shift_net(const Net& n)
{
    Topology topo(n);
    Editor ed(n);
    // a flat edge carries the body of a whynot, which gains a paragraph
    for (auto& e : ed.net().edges) {
        e.label.formula = shift_formula(e.label.formula);
        if (e.label.flat)
            e.label.formula = Formula::paragraph(e.label.formula);
    }
    for (LinkId l = 0; l < n.links.size(); ++l) {
        LinkKind k = n.links[l].kind;
        if (k != LinkKind::ofcourse && k != LinkKind::flat)
            continue;
        EdgeId e = n.links[l].premises[0];
        std::optional<BoxId> where = k == LinkKind::ofcourse ? topo.box_of_principal[l] : topo.container[l];
        EdgeId out = ed.add_edge(n.edges[e].name + "s", EdgeLabel::plain(Formula::paragraph(ed.net().edges[e].label.formula)), std::nullopt);
        ed.add_link(n.links[l].name + "s", LinkKind::paragraph, {e}, {out}, where, std::nullopt);
        ed.net().links[l].premises[0] = out;
    }
    return ed.finish().net;
}

Indexing transport_indexing(const Indexing& q, const Net& source, const RewriteTrace& t, const Net& target)
{
    if (q.assignment.size() != source.edges.size())
        throw NetError("indexing does not match the source net");
    std::map<std::string, long> val;
    for (EdgeId e = 0; e < source.edges.size(); ++e)
        val[source.edges[e].name] = q.assignment[e];
    for (auto& step : t.steps) {
        if (step.kind == StepKind::axiom)
            throw NetError("axiom step present in trace");
        std::map<std::string, long> next;
        for (auto& [res, src] : step.lift)
            if (auto it = val.find(src); it != val.end())
                next[res] = it->second;
        val = std::move(next);
    }
    Indexing out;
    out.flavor = q.flavor;
    for (auto& e : target.edges) {
        auto it = val.find(e.name);
        if (it == val.end())
            throw NetError("edge " + e.name + " has no lift in the trace");
        out.assignment.push_back(it->second);
    }
    return out;
}

std::string trace_json(const RewriteTrace& t, bool pretty)
{
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (auto& s : t.steps) {
        nlohmann::ordered_json lift = nlohmann::ordered_json::object();
        for (auto& [a, b] : s.lift)
            lift[a] = b;
        j.push_back({{"cut", s.cut}, {"kind", std::string(step_kind_name(s.kind))}, {"lift", std::move(lift)}});
    }
    return pretty ? j.dump(2) : j.dump();
}

}

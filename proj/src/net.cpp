#include "stratnet/net.hpp"

#include <algorithm>
#include <array>
#include <unordered_set>

namespace stratnet {

namespace {

constexpr std::array<std::pair<LinkKind, std::string_view>, 11> kind_names{{
    {LinkKind::axiom, "axiom"},
    {LinkKind::cut, "cut"},
    {LinkKind::one, "one"},
    {LinkKind::bottom, "bottom"},
    {LinkKind::tensor, "tensor"},
    {LinkKind::par, "par"},
    {LinkKind::flat, "flat"},
    {LinkKind::pax, "pax"},
    {LinkKind::whynot, "whynot"},
    {LinkKind::ofcourse, "ofcourse"},
    {LinkKind::paragraph, "paragraph"},
}};

}

std::string_view kind_name(LinkKind k)
{
    for (auto& [kind, name] : kind_names)
        if (kind == k)
            return name;
    return "?";
}

std::optional<LinkKind> kind_from_name(std::string_view s)
{
    for (auto& [kind, name] : kind_names)
        if (name == s)
            return kind;
    return std::nullopt;
}

EdgeId Net::add_edge(std::string name, EdgeLabel label)
{
    edges.push_back({std::move(name), std::move(label)});
    return edges.size() - 1;
}

LinkId Net::add_link(std::string name, LinkKind kind, std::vector<EdgeId> premises, std::vector<EdgeId> concl)
{
    links.push_back({std::move(name), kind, std::move(premises), std::move(concl)});
    return links.size() - 1;
}

std::optional<EdgeId> Net::find_edge(std::string_view name) const
{
    for (EdgeId e = 0; e < edges.size(); ++e)
        if (edges[e].name == name)
            return e;
    return std::nullopt;
}

std::optional<LinkId> Net::find_link(std::string_view name) const
{
    for (LinkId l = 0; l < links.size(); ++l)
        if (links[l].name == name)
            return l;
    return std::nullopt;
}

std::size_t Net::count(LinkKind k) const
{
    return std::count_if(links.begin(), links.end(), [k](const Link& l) { return l.kind == k; });
}

Topology::Topology(const Net& n)
    : producer(n.edges.size()), consumer(n.edges.size()), consumer_port(n.edges.size(), 0),
      container(n.links.size()), border_of(n.links.size()), box_of_principal(n.links.size()),
      link_depth(n.links.size(), 0), box_depth(n.boxes.size(), 0)
{
    for (LinkId l = 0; l < n.links.size(); ++l) {
        for (EdgeId e : n.links[l].conclusions)
            if (e < producer.size() && !producer[e])
                producer[e] = l;
        for (std::size_t i = 0; i < n.links[l].premises.size(); ++i) {
            EdgeId e = n.links[l].premises[i];
            if (e < consumer.size() && !consumer[e]) {
                consumer[e] = l;
                consumer_port[e] = i;
            }
        }
    }
    for (BoxId b = 0; b < n.boxes.size(); ++b) {
        const Box& box = n.boxes[b];
        if (box.principal < n.links.size()) {
            border_of[box.principal] = b;
            box_of_principal[box.principal] = b;
        }
        for (LinkId a : box.auxiliaries)
            if (a < n.links.size())
                border_of[a] = b;
    }
    for (BoxId b = 0; b < n.boxes.size(); ++b) {
        int d = 0;
        std::optional<BoxId> p = n.boxes[b].parent;
        while (p && *p < n.boxes.size() && d <= static_cast<int>(n.boxes.size())) {
            ++d;
            p = n.boxes[*p].parent;
        }
        box_depth[b] = d;
    }
    for (BoxId b = 0; b < n.boxes.size(); ++b) {
        for (LinkId l : n.boxes[b].contents) {
            if (l >= n.links.size())
                continue;
            ++link_depth[l];
            if (!container[l] || box_depth[*container[l]] < box_depth[b])
                container[l] = b;
        }
    }
}

bool Topology::inside(LinkId l, BoxId b, const Net& n) const
{
    std::optional<BoxId> c = container[l];
    std::size_t guard = 0;
    while (c && guard++ <= n.boxes.size()) {
        if (*c == b)
            return true;
        c = n.boxes[*c].parent;
    }
    return false;
}

std::string ValidationReport::summary() const
{
    std::string out;
    for (auto& v : violations) {
        if (!out.empty())
            out += '\n';
        out += v.subject + ": " + v.message;
    }
    return out;
}

namespace {

struct Validator {
    const Net& n;
    ValidationReport report;

    void fail(const std::string& subject, std::string message) { report.violations.push_back({subject, std::move(message)}); }

    std::string lname(LinkId l) const { return "link " + n.links[l].name; }
    std::string ename(EdgeId e) const { return "edge " + n.edges[e].name; }

    bool check_ranges()
    {
        bool good = true;
        for (LinkId l = 0; l < n.links.size(); ++l) {
            for (EdgeId e : n.links[l].premises)
                if (e >= n.edges.size()) {
                    fail(lname(l), "premise refers to a missing edge");
                    good = false;
                }
            for (EdgeId e : n.links[l].conclusions)
                if (e >= n.edges.size()) {
                    fail(lname(l), "conclusion refers to a missing edge");
                    good = false;
                }
        }
        for (EdgeId e : n.conclusions)
            if (e >= n.edges.size()) {
                fail("conclusions", "refers to a missing edge");
                good = false;
            }
        for (BoxId b = 0; b < n.boxes.size(); ++b) {
            const Box& box = n.boxes[b];
            auto bad = [&](LinkId l) { return l >= n.links.size(); };
            if (bad(box.principal) || std::any_of(box.auxiliaries.begin(), box.auxiliaries.end(), bad) ||
                std::any_of(box.contents.begin(), box.contents.end(), bad)) {
                fail("box " + std::to_string(b), "refers to a missing link");
                good = false;
            }
            if (box.parent && *box.parent >= n.boxes.size()) {
                fail("box " + std::to_string(b), "refers to a missing parent box");
                good = false;
            }
        }
        return good;
    }

    void check_names()
    {
        std::unordered_set<std::string> seen;
        for (auto& e : n.edges)
            if (!seen.insert(e.name).second)
                fail("edge " + e.name, "duplicate id");
        for (auto& l : n.links)
            if (!seen.insert(l.name).second)
                fail("link " + l.name, "duplicate id");
    }

    void check_arity()
    {
        for (LinkId l = 0; l < n.links.size(); ++l) {
            const Link& k = n.links[l];
            std::size_t p = k.premises.size(), c = k.conclusions.size();
            bool good = true;
            switch (k.kind) {
            case LinkKind::axiom: good = p == 0 && c == 2; break;
            case LinkKind::cut: good = p == 2 && c == 0; break;
            case LinkKind::one:
            case LinkKind::bottom: good = p == 0 && c == 1; break;
            case LinkKind::tensor:
            case LinkKind::par: good = p == 2 && c == 1; break;
            case LinkKind::flat:
            case LinkKind::pax:
            case LinkKind::ofcourse:
            case LinkKind::paragraph: good = p == 1 && c == 1; break;
            case LinkKind::whynot: good = c == 1; break;
            }
            if (!good)
                fail(lname(l), "wrong number of premises or conclusions for a " + std::string(kind_name(k.kind)) + " link");
        }
    }

    void check_incidence()
    {
        std::vector<int> produced(n.edges.size(), 0), consumed(n.edges.size(), 0);
        for (auto& l : n.links) {
            for (EdgeId e : l.conclusions)
                ++produced[e];
            for (EdgeId e : l.premises)
                ++consumed[e];
        }
        for (EdgeId e = 0; e < n.edges.size(); ++e) {
            if (produced[e] == 0)
                fail(ename(e), "is the conclusion of no link");
            if (produced[e] > 1)
                fail(ename(e), "is the conclusion of more than one link");
            if (consumed[e] > 1)
                fail(ename(e), "edge premise of >1 link");
        }
        std::vector<int> listed(n.edges.size(), 0);
        for (EdgeId e : n.conclusions)
            ++listed[e];
        for (EdgeId e = 0; e < n.edges.size(); ++e) {
            if (listed[e] > 1)
                fail(ename(e), "listed more than once among the conclusions");
            if (consumed[e] == 0 && listed[e] == 0)
                fail(ename(e), "is the premise of no link but is not declared as a conclusion");
            if (consumed[e] > 0 && listed[e] > 0)
                fail(ename(e), "is declared as a conclusion but is the premise of a link");
            if (listed[e] > 0 && n.edges[e].label.flat)
                fail(ename(e), "flat-labelled conclusion");
        }
    }

    void check_typing()
    {
        for (LinkId l = 0; l < n.links.size(); ++l) {
            const Link& k = n.links[l];
            auto lab = [&](EdgeId e) -> const EdgeLabel& { return n.edges[e].label; };
            auto plain = [&](EdgeId e) { return !lab(e).flat; };
            auto bad = [&](const std::string& what) { fail(lname(l), what); };
            switch (k.kind) {
            case LinkKind::axiom:
                if (k.conclusions.size() == 2) {
                    auto& a = lab(k.conclusions[0]);
                    auto& b = lab(k.conclusions[1]);
                    if (a.flat || b.flat || dual(a.formula) != b.formula)
                        bad("axiom conclusions are not dual formulas");
                }
                break;
            case LinkKind::cut:
                if (k.premises.size() == 2) {
                    auto& a = lab(k.premises[0]);
                    auto& b = lab(k.premises[1]);
                    if (a.flat || b.flat || dual(a.formula) != b.formula)
                        bad("cut premises are not dual formulas");
                }
                break;
            case LinkKind::one:
                if (k.conclusions.size() == 1 && lab(k.conclusions[0]) != EdgeLabel::plain(Formula::one()))
                    bad("one link conclusion must be 1");
                break;
            case LinkKind::bottom:
                if (k.conclusions.size() == 1 && lab(k.conclusions[0]) != EdgeLabel::plain(Formula::bottom()))
                    bad("bottom link conclusion must be bot");
                break;
            case LinkKind::tensor:
            case LinkKind::par:
                if (k.premises.size() == 2 && k.conclusions.size() == 1) {
                    if (!plain(k.premises[0]) || !plain(k.premises[1]))
                        bad("multiplicative premises cannot be flat");
                    else {
                        auto a = lab(k.premises[0]).formula, b = lab(k.premises[1]).formula;
                        auto want = k.kind == LinkKind::tensor ? Formula::tensor(a, b) : Formula::par(a, b);
                        if (lab(k.conclusions[0]) != EdgeLabel::plain(want))
                            bad("conclusion label does not match premises");
                    }
                }
                break;
            case LinkKind::flat:
                if (k.premises.size() == 1 && k.conclusions.size() == 1) {
                    if (!plain(k.premises[0]) || lab(k.conclusions[0]) != EdgeLabel::flat_of(lab(k.premises[0]).formula))
                        bad("flat link must map A to %A");
                }
                break;
            case LinkKind::pax:
                if (k.premises.size() == 1 && k.conclusions.size() == 1) {
                    if (!lab(k.premises[0]).flat || lab(k.premises[0]) != lab(k.conclusions[0]))
                        bad("pax link must map %A to %A");
                }
                break;
            case LinkKind::whynot:
                if (k.conclusions.size() == 1) {
                    auto& c = lab(k.conclusions[0]);
                    if (c.flat || c.formula.kind() != Connective::whynot) {
                        bad("whynot conclusion must be ?A");
                        break;
                    }
                    for (EdgeId e : k.premises)
                        if (lab(e) != EdgeLabel::flat_of(c.formula.body()))
                            bad("whynot premise " + n.edges[e].name + " must be %A for conclusion ?A");
                }
                break;
            case LinkKind::ofcourse:
            case LinkKind::paragraph:
                if (k.premises.size() == 1 && k.conclusions.size() == 1) {
                    if (!plain(k.premises[0])) {
                        bad("premise cannot be flat");
                        break;
                    }
                    auto body = lab(k.premises[0]).formula;
                    auto want = k.kind == LinkKind::ofcourse ? Formula::ofcourse(body) : Formula::paragraph(body);
                    if (lab(k.conclusions[0]) != EdgeLabel::plain(want))
                        bad("conclusion label does not match premise");
                }
                break;
            }
            if (k.kind != LinkKind::flat && k.kind != LinkKind::pax)
                for (EdgeId e : k.conclusions)
                    if (lab(e).flat)
                        bad("only flat and pax links produce flat edges");
            if (k.kind != LinkKind::pax && k.kind != LinkKind::whynot)
                for (EdgeId e : k.premises)
                    if (lab(e).flat)
                        bad("flat edge " + n.edges[e].name + " can only feed a pax or whynot link");
        }
    }

    void check_boxes()
    {
        std::vector<int> principal_count(n.links.size(), 0), aux_count(n.links.size(), 0);
        for (BoxId b = 0; b < n.boxes.size(); ++b) {
            const Box& box = n.boxes[b];
            std::string subject = "box " + n.links[box.principal].name;
            if (n.links[box.principal].kind != LinkKind::ofcourse)
                fail(subject, "principal is not an ofcourse link");
            ++principal_count[box.principal];
            for (LinkId a : box.auxiliaries) {
                if (n.links[a].kind != LinkKind::pax)
                    fail(subject, "auxiliary " + n.links[a].name + " is not a pax link");
                ++aux_count[a];
            }
            std::optional<BoxId> p = box.parent;
            for (std::size_t guard = 0; p; ++guard) {
                if (*p == b || guard > n.boxes.size()) {
                    fail(subject, "box nesting is cyclic");
                    return;
                }
                p = n.boxes[*p].parent;
            }
        }
        for (LinkId l = 0; l < n.links.size(); ++l) {
            if (n.links[l].kind == LinkKind::ofcourse && principal_count[l] != 1)
                fail(lname(l), "ofcourse link must be the principal of exactly one box");
            if (n.links[l].kind == LinkKind::pax && aux_count[l] != 1)
                fail(lname(l), "pax link must be in the border of exactly one box");
            if (principal_count[l] + aux_count[l] > 1)
                fail(lname(l), "link sits on more than one box border");
        }
        if (!report.ok())
            return;

        // boxes containing each link must form a chain matching the declared nesting
        std::vector<std::vector<BoxId>> in(n.links.size());
        for (BoxId b = 0; b < n.boxes.size(); ++b)
            for (LinkId l : n.boxes[b].contents)
                in[l].push_back(b);
        auto ancestors = [&](std::optional<BoxId> b) {
            std::vector<BoxId> out;
            while (b) {
                out.push_back(*b);
                b = n.boxes[*b].parent;
            }
            std::sort(out.begin(), out.end());
            return out;
        };
        std::vector<std::optional<BoxId>> deepest(n.links.size());
        Topology topo(n);
        for (LinkId l = 0; l < n.links.size(); ++l) {
            auto mine = in[l];
            std::sort(mine.begin(), mine.end());
            if (std::adjacent_find(mine.begin(), mine.end()) != mine.end()) {
                fail(lname(l), "listed twice in the contents of one box");
                continue;
            }
            std::vector<BoxId> expected;
            if (topo.border_of[l]) {
                BoxId b = *topo.border_of[l];
                if (std::binary_search(mine.begin(), mine.end(), b)) {
                    fail(lname(l), "border link listed among the contents of its own box");
                    continue;
                }
                expected = ancestors(n.boxes[b].parent);
            } else {
                expected = ancestors(topo.container[l]);
            }
            if (mine != expected)
                fail(lname(l), "boxes are neither disjoint nor nested");
        }
        if (!report.ok())
            return;

        // each box with its border must be a sub-net: edges only leave a box through its border
        for (EdgeId e = 0; e < n.edges.size(); ++e) {
            auto prod = topo.producer[e];
            auto cons = topo.consumer[e];
            if (!prod)
                continue;
            std::optional<BoxId> inner = topo.border_of[*prod] ? n.boxes[*topo.border_of[*prod]].parent : topo.container[*prod];
            if (!cons) {
                if (inner)
                    fail(ename(e), "net conclusion produced inside a box");
                continue;
            }
            std::optional<BoxId> outer = topo.border_of[*cons] ? n.boxes[*topo.border_of[*cons]].parent : topo.container[*cons];
            if (topo.border_of[*cons]) {
                if (inner != topo.border_of[*cons])
                    fail(ename(e), "premise of a box border must come from directly inside the box");
            } else if (inner != outer) {
                fail(ename(e), "edge crosses a box boundary without a border link");
            }
        }
    }
};

}

ValidationReport validate(const Net& n)
{
    Validator v{n, {}};
    if (!v.check_ranges())
        return v.report;
    v.check_names();
    v.check_arity();
    if (!v.report.ok())
        return v.report;
    v.check_incidence();
    v.check_typing();
    if (!v.report.ok())
        return v.report;
    v.check_boxes();
    return v.report;
}

void require_valid(const Net& n)
{
    auto r = validate(n);
    if (!r.ok())
        throw NetError("invalid net: " + r.summary());
}

int depth(const Net& n, std::string_view id)
{
    Topology topo(n);
    if (auto l = n.find_link(id))
        return topo.link_depth[*l];
    if (auto e = n.find_edge(id))
        return topo.edge_depth(*e);
    throw NetError("unknown id " + std::string(id));
}

int max_depth(const Net& n)
{
    Topology topo(n);
    int d = 0;
    for (int x : topo.link_depth)
        d = std::max(d, x);
    return d;
}

std::string fresh_name(const Net& n, std::string_view base)
{
    std::unordered_set<std::string_view> used;
    for (auto& e : n.edges)
        used.insert(e.name);
    for (auto& l : n.links)
        used.insert(l.name);
    if (!used.count(base))
        return std::string(base);
    for (std::size_t i = 1;; ++i) {
        std::string cand = std::string(base) + "_" + std::to_string(i);
        if (!used.count(cand))
            return cand;
    }
}

Net parr_closure(const Net& n)
{
    for (EdgeId e : n.conclusions)
        if (n.edges[e].label.flat)
            throw NetError("cannot close a net with a flat conclusion " + n.edges[e].name);
    if (n.conclusions.size() <= 1)
        return n;
    Net out = n;
    std::unordered_set<std::string> used;
    for (auto& e : out.edges)
        used.insert(e.name);
    for (auto& l : out.links)
        used.insert(l.name);
    auto fresh = [&](const std::string& base) {
        std::string cand = base;
        for (std::size_t i = 1; used.count(cand); ++i)
            cand = base + "_" + std::to_string(i);
        used.insert(cand);
        return cand;
    };
    EdgeId acc = out.conclusions.back();
    for (std::size_t i = out.conclusions.size() - 1; i-- > 0;) {
        EdgeId left = out.conclusions[i];
        auto f = Formula::par(out.edges[left].label.formula, out.edges[acc].label.formula);
        EdgeId c = out.add_edge(fresh("closure_e"), EdgeLabel::plain(f));
        out.add_link(fresh("closure_l"), LinkKind::par, {left, acc}, {c});
        acc = c;
    }
    out.conclusions = {acc};
    return out;
}

bool UGraph::has_cycle() const
{
    std::vector<std::size_t> parent(nodes.size());
    for (std::size_t i = 0; i < parent.size(); ++i)
        parent[i] = i;
    auto find = [&](std::size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (auto& a : arcs) {
        auto ru = find(a.u), rv = find(a.v);
        if (ru == rv)
            return true;
        parent[ru] = rv;
    }
    return false;
}

UGraph underlying_graph(const Net& n, bool at_depth_zero)
{
    Topology topo(n);
    UGraph g;
    std::vector<std::optional<std::size_t>> node_of(n.links.size());
    if (!at_depth_zero) {
        for (LinkId l = 0; l < n.links.size(); ++l) {
            node_of[l] = g.nodes.size();
            g.nodes.push_back({l, std::nullopt});
        }
    } else {
        std::vector<std::optional<std::size_t>> box_node(n.boxes.size());
        for (LinkId l = 0; l < n.links.size(); ++l) {
            if (topo.link_depth[l] != 0)
                continue;
            if (topo.border_of[l]) {
                BoxId b = *topo.border_of[l];
                if (!box_node[b]) {
                    box_node[b] = g.nodes.size();
                    g.nodes.push_back({std::nullopt, b});
                }
                node_of[l] = box_node[b];
            } else {
                node_of[l] = g.nodes.size();
                g.nodes.push_back({l, std::nullopt});
            }
        }
    }
    for (EdgeId e = 0; e < n.edges.size(); ++e) {
        auto p = topo.producer[e], c = topo.consumer[e];
        if (!p || !c || !node_of[*p] || !node_of[*c])
            continue;
        if (at_depth_zero && *node_of[*p] == *node_of[*c] && !g.nodes[*node_of[*p]].link)
            continue;
        g.arcs.push_back({*node_of[*p], *node_of[*c], e});
    }
    return g;
}

Net juxtapose(const Net& a, const Net& b)
{
    Net out = a;
    std::unordered_set<std::string> used;
    for (auto& e : a.edges)
        used.insert(e.name);
    for (auto& l : a.links)
        used.insert(l.name);
    auto fresh = [&](const std::string& base) {
        std::string cand = base;
        for (std::size_t i = 1; used.count(cand); ++i)
            cand = base + "_" + std::to_string(i);
        used.insert(cand);
        return cand;
    };
    std::size_t eoff = a.edges.size(), loff = a.links.size(), boff = a.boxes.size();
    for (auto& e : b.edges)
        out.edges.push_back({fresh(e.name), e.label});
    for (auto& l : b.links) {
        Link copy{fresh(l.name), l.kind, l.premises, l.conclusions};
        for (auto& e : copy.premises)
            e += eoff;
        for (auto& e : copy.conclusions)
            e += eoff;
        out.links.push_back(std::move(copy));
    }
    for (auto& box : b.boxes) {
        Box copy = box;
        copy.principal += loff;
        for (auto& x : copy.auxiliaries)
            x += loff;
        for (auto& x : copy.contents)
            x += loff;
        if (copy.parent)
            *copy.parent += boff;
        out.boxes.push_back(std::move(copy));
    }
    for (EdgeId e : b.conclusions)
        out.conclusions.push_back(e + eoff);
    return out;
}

Net renumber(const Net& n)
{
    Net out = n;
    for (EdgeId e = 0; e < out.edges.size(); ++e)
        out.edges[e].name = "e" + std::to_string(e);
    for (LinkId l = 0; l < out.links.size(); ++l)
        out.links[l].name = "l" + std::to_string(l);
    return out;
}

}

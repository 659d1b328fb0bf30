#include "stratnet/correctness.hpp"

#include <algorithm>
#include <deque>
#include <json.hpp>
#include <numeric>

namespace stratnet {

std::size_t SwitchingLevel::switching_count() const
{
    std::size_t total = 1;
    for (auto& arcs : premise_arcs) {
        if (arcs.empty())
            continue;
        if (total > (std::size_t{1} << 62) / arcs.size())
            return std::size_t{1} << 62;
        total *= arcs.size();
    }
    return total;
}

std::vector<SwitchingLevel> switching_levels(const Net& n)
{
    Topology topo(n);
    std::vector<std::optional<BoxId>> levels = {std::nullopt};
    for (BoxId b = 0; b < n.boxes.size(); ++b)
        levels.push_back(b);
    std::vector<SwitchingLevel> out;
    for (auto level : levels) {
        SwitchingLevel sl;
        sl.box = level;
        std::vector<std::optional<std::size_t>> node_of(n.links.size());
        std::vector<std::optional<std::size_t>> box_node(n.boxes.size());
        for (LinkId l = 0; l < n.links.size(); ++l) {
            if (topo.container[l] != level)
                continue;
            if (auto c = topo.border_of[l]) {
                if (!box_node[*c]) {
                    box_node[*c] = sl.graph.nodes.size();
                    sl.graph.nodes.push_back({std::nullopt, *c});
                }
                node_of[l] = box_node[*c];
            } else {
                node_of[l] = sl.graph.nodes.size();
                sl.graph.nodes.push_back({l, std::nullopt});
            }
        }
        std::vector<std::optional<std::size_t>> arc_of(n.edges.size());
        for (EdgeId e = 0; e < n.edges.size(); ++e) {
            auto p = topo.producer[e], c = topo.consumer[e];
            if (!p || !c || !node_of[*p] || !node_of[*c])
                continue;
            if (*node_of[*p] == *node_of[*c] && !sl.graph.nodes[*node_of[*p]].link)
                continue;
            arc_of[e] = sl.graph.arcs.size();
            sl.graph.arcs.push_back({*node_of[*p], *node_of[*c], e});
        }
        for (LinkId l = 0; l < n.links.size(); ++l) {
            if (topo.container[l] != level || topo.border_of[l])
                continue;
            auto k = n.links[l].kind;
            if ((k != LinkKind::par && k != LinkKind::whynot) || n.links[l].premises.empty())
                continue;
            std::vector<std::size_t> arcs;
            for (EdgeId e : n.links[l].premises)
                if (arc_of[e])
                    arcs.push_back(*arc_of[e]);
            sl.switched.push_back(l);
            sl.premise_arcs.push_back(std::move(arcs));
        }
        out.push_back(std::move(sl));
    }
    return out;
}

namespace {

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x)
    {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(std::size_t a, std::size_t b)
    {
        a = find(a);
        b = find(b);
        if (a == b)
            return false;
        parent[a] = b;
        return true;
    }
};

// arcs kept by a switching: all non-premise arcs plus the chosen premise arcs
std::vector<std::size_t> kept_arcs(const SwitchingLevel& sl, const std::vector<std::size_t>& choice)
{
    std::vector<bool> premise(sl.graph.arcs.size(), false);
    for (auto& arcs : sl.premise_arcs)
        for (auto a : arcs)
            premise[a] = true;
    std::vector<std::size_t> kept;
    for (std::size_t a = 0; a < sl.graph.arcs.size(); ++a)
        if (!premise[a])
            kept.push_back(a);
    for (std::size_t i = 0; i < sl.premise_arcs.size(); ++i)
        if (!sl.premise_arcs[i].empty())
            kept.push_back(sl.premise_arcs[i][choice[i]]);
    return kept;
}

std::optional<std::vector<EdgeId>> find_cycle(const SwitchingLevel& sl, const std::vector<std::size_t>& arcs)
{
    UnionFind uf(sl.graph.nodes.size());
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(sl.graph.nodes.size());
    for (auto a : arcs) {
        auto& arc = sl.graph.arcs[a];
        if (!uf.unite(arc.u, arc.v)) {
            // path from v back to u in the forest built so far, closed by this arc
            std::vector<std::optional<std::pair<std::size_t, std::size_t>>> prev(sl.graph.nodes.size());
            std::vector<bool> seen(sl.graph.nodes.size(), false);
            std::deque<std::size_t> q = {arc.u};
            seen[arc.u] = true;
            while (!q.empty()) {
                auto x = q.front();
                q.pop_front();
                for (auto [y, via] : adj[x])
                    if (!seen[y]) {
                        seen[y] = true;
                        prev[y] = std::make_pair(x, via);
                        q.push_back(y);
                    }
            }
            std::vector<EdgeId> cycle = {arc.edge};
            for (std::size_t x = arc.v; x != arc.u && prev[x]; x = prev[x]->first)
                cycle.push_back(sl.graph.arcs[prev[x]->second].edge);
            return cycle;
        }
        adj[arc.u].push_back({arc.v, a});
        adj[arc.v].push_back({arc.u, a});
    }
    return std::nullopt;
}

template <class F>
bool for_each_choice(const SwitchingLevel& sl, F&& f)
{
    std::vector<std::size_t> choice(sl.premise_arcs.size(), 0);
    while (true) {
        if (!f(choice))
            return false;
        std::size_t i = 0;
        for (; i < choice.size(); ++i) {
            if (sl.premise_arcs[i].empty())
                continue;
            if (++choice[i] < sl.premise_arcs[i].size())
                break;
            choice[i] = 0;
        }
        if (i == choice.size())
            return true;
    }
}

Switching to_switching(const SwitchingLevel& sl, const std::vector<std::size_t>& choice)
{
    Switching s;
    s.box = sl.box;
    for (std::size_t i = 0; i < sl.switched.size(); ++i)
        s.choice[sl.switched[i]] = choice[i];
    return s;
}

std::optional<DrWitness> brute_level(const SwitchingLevel& sl)
{
    std::optional<DrWitness> found;
    for_each_choice(sl, [&](const std::vector<std::size_t>& choice) {
        if (auto cyc = find_cycle(sl, kept_arcs(sl, choice))) {
            found = DrWitness{to_switching(sl, choice), *cyc};
            return false;
        }
        return true;
    });
    return found;
}

// True when some switching of the level has a cycle. Arcs are coloured by the switched
// link whose premise they are (or uniquely); a vertex all of whose neighbouring
// components attach through a single colour lies on no switching cycle and is removed.
bool level_has_switching_cycle(const SwitchingLevel& sl)
{
    std::size_t nv = sl.graph.nodes.size();
    std::size_t na = sl.graph.arcs.size();
    std::vector<std::size_t> color(na);
    std::iota(color.begin(), color.end(), 0);
    for (std::size_t i = 0; i < sl.premise_arcs.size(); ++i)
        for (auto a : sl.premise_arcs[i])
            color[a] = na + i;
    std::vector<bool> alive_v(nv, true), alive_a(na, true);
    std::vector<std::vector<std::size_t>> inc(nv);
    for (std::size_t a = 0; a < na; ++a) {
        auto& arc = sl.graph.arcs[a];
        if (arc.u == arc.v)
            return true;
        inc[arc.u].push_back(a);
        inc[arc.v].push_back(a);
    }
    auto other = [&](std::size_t a, std::size_t x) { return sl.graph.arcs[a].u == x ? sl.graph.arcs[a].v : sl.graph.arcs[a].u; };
    auto live_arcs = [&](std::size_t x) {
        std::vector<std::size_t> out;
        for (auto a : inc[x])
            if (alive_a[a])
                out.push_back(a);
        return out;
    };
    auto remove = [&](std::size_t x) {
        alive_v[x] = false;
        for (auto a : inc[x])
            alive_a[a] = false;
    };
    std::vector<std::size_t> comp(nv);
    while (true) {
        // cheap removals: vertices whose live arcs all share one colour
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t x = 0; x < nv; ++x) {
                if (!alive_v[x])
                    continue;
                auto arcs = live_arcs(x);
                bool mono = std::all_of(arcs.begin(), arcs.end(), [&](std::size_t a) { return color[a] == color[arcs[0]]; });
                if (arcs.empty() || mono) {
                    remove(x);
                    changed = true;
                }
            }
        }
        bool any = false;
        for (std::size_t x = 0; x < nv; ++x)
            any = any || alive_v[x];
        if (!any)
            return false;
        std::optional<std::size_t> good;
        for (std::size_t z = 0; z < nv && !good; ++z) {
            if (!alive_v[z])
                continue;
            std::fill(comp.begin(), comp.end(), nv);
            std::size_t ncomp = 0;
            for (std::size_t s = 0; s < nv; ++s) {
                if (!alive_v[s] || s == z || comp[s] != nv)
                    continue;
                std::deque<std::size_t> q = {s};
                comp[s] = ncomp;
                while (!q.empty()) {
                    auto x = q.front();
                    q.pop_front();
                    for (auto a : inc[x]) {
                        if (!alive_a[a])
                            continue;
                        auto y = other(a, x);
                        if (y == z || comp[y] != nv)
                            continue;
                        comp[y] = ncomp;
                        q.push_back(y);
                    }
                }
                ++ncomp;
            }
            std::vector<std::optional<std::size_t>> seen_color(ncomp);
            bool ok = true;
            for (auto a : live_arcs(z)) {
                auto c = comp[other(a, z)];
                if (!seen_color[c])
                    seen_color[c] = color[a];
                else if (*seen_color[c] != color[a]) {
                    ok = false;
                    break;
                }
            }
            if (ok)
                good = z;
        }
        if (!good)
            return true;
        remove(*good);
    }
}

}

void enumerate_switchings(const Net& n, const std::function<bool(const Switching&)>& visit, std::uint64_t budget)
{
    for (auto& sl : switching_levels(n)) {
        if (sl.switching_count() > budget)
            throw BudgetExceeded("switching count " + std::to_string(sl.switching_count()) + " exceeds the budget");
        bool go = for_each_choice(sl, [&](const std::vector<std::size_t>& choice) { return visit(to_switching(sl, choice)); });
        if (!go)
            return;
    }
}

DrResult is_dr_correct_brute(const Net& n, std::uint64_t budget)
{
    auto levels = switching_levels(n);
    for (auto& sl : levels)
        if (sl.switching_count() > budget)
            throw BudgetExceeded("switching count " + std::to_string(sl.switching_count()) + " exceeds the budget");
    for (auto& sl : levels)
        if (auto w = brute_level(sl))
            return {false, w};
    return {true, std::nullopt};
}

DrResult is_dr_correct(const Net& n, std::uint64_t witness_budget)
{
    for (auto& sl : switching_levels(n)) {
        if (!level_has_switching_cycle(sl))
            continue;
        DrResult r{false, std::nullopt};
        if (sl.switching_count() <= witness_budget)
            r.witness = brute_level(sl);
        return r;
    }
    return {true, std::nullopt};
}

std::string_view flavor_name(Flavor f)
{
    switch (f) {
    case Flavor::plain: return "plain";
    case Flavor::exponential: return "exponential";
    case Flavor::quasi: return "quasi";
    }
    return "plain";
}

std::optional<Flavor> flavor_from_name(std::string_view s)
{
    if (s == "plain")
        return Flavor::plain;
    if (s == "exponential")
        return Flavor::exponential;
    if (s == "quasi")
        return Flavor::quasi;
    return std::nullopt;
}

int shift_weight(LinkKind k, Flavor f)
{
    if (k == LinkKind::paragraph)
        return 1;
    if ((k == LinkKind::ofcourse || k == LinkKind::whynot) && f != Flavor::plain)
        return 1;
    return 0;
}

namespace {

// I(upper) = I(lower) + weight, attached to the link imposing it
struct Constraint {
    EdgeId upper, lower;
    int weight;
    LinkId link;
};

std::vector<Constraint> constraints(const Net& n, Flavor f)
{
    std::vector<Constraint> out;
    for (LinkId l = 0; l < n.links.size(); ++l) {
        const Link& k = n.links[l];
        switch (k.kind) {
        case LinkKind::axiom:
            if (f != Flavor::quasi)
                out.push_back({k.conclusions[0], k.conclusions[1], 0, l});
            break;
        case LinkKind::cut:
            out.push_back({k.premises[0], k.premises[1], 0, l});
            break;
        case LinkKind::one:
        case LinkKind::bottom:
            break;
        default:
            for (EdgeId p : k.premises)
                out.push_back({p, k.conclusions[0], shift_weight(k.kind, f), l});
        }
    }
    return out;
}

}

std::vector<std::size_t> indexing_components(const Net& n, Flavor f)
{
    UnionFind uf(n.edges.size());
    for (auto& c : constraints(n, f))
        uf.unite(c.upper, c.lower);
    std::vector<std::size_t> out(n.edges.size());
    std::vector<std::optional<std::size_t>> id(n.edges.size());
    std::size_t next = 0;
    for (EdgeId e = 0; e < n.edges.size(); ++e) {
        auto r = uf.find(e);
        if (!id[r])
            id[r] = next++;
        out[e] = *id[r];
    }
    return out;
}

std::variant<Indexing, BalanceWitness> solve_indexing(const Net& n, Flavor f)
{
    struct Adj {
        EdgeId to;
        long delta;
        LinkId link;
    };
    std::vector<std::vector<Adj>> adj(n.edges.size());
    for (auto& c : constraints(n, f)) {
        adj[c.lower].push_back({c.upper, c.weight, c.link});
        adj[c.upper].push_back({c.lower, -c.weight, c.link});
    }
    Indexing ix;
    ix.flavor = f;
    ix.assignment.assign(n.edges.size(), 0);
    std::vector<bool> done(n.edges.size(), false);
    std::vector<std::optional<std::pair<EdgeId, LinkId>>> parent(n.edges.size());
    std::vector<std::size_t> level(n.edges.size(), 0);
    for (EdgeId root = 0; root < n.edges.size(); ++root) {
        if (done[root])
            continue;
        done[root] = true;
        std::deque<EdgeId> q = {root};
        while (!q.empty()) {
            EdgeId x = q.front();
            q.pop_front();
            for (auto& a : adj[x]) {
                long want = ix.assignment[x] + a.delta;
                if (!done[a.to]) {
                    done[a.to] = true;
                    ix.assignment[a.to] = want;
                    parent[a.to] = std::make_pair(x, a.link);
                    level[a.to] = level[x] + 1;
                    q.push_back(a.to);
                } else if (ix.assignment[a.to] != want) {
                    // tree paths from both ends to their common ancestor, closed by this constraint
                    std::vector<PathStep> up_y, up_x;
                    EdgeId y = a.to, z = x;
                    while (y != z) {
                        if (level[y] >= level[z]) {
                            up_y.push_back({parent[y]->second, y, parent[y]->first});
                            y = parent[y]->first;
                        } else {
                            up_x.push_back({parent[z]->second, z, parent[z]->first});
                            z = parent[z]->first;
                        }
                    }
                    BalanceWitness w;
                    for (auto& s : up_y)
                        w.cycle.push_back(s);
                    for (auto it = up_x.rbegin(); it != up_x.rend(); ++it)
                        w.cycle.push_back({it->link, it->to, it->from});
                    w.cycle.push_back({a.link, x, a.to});
                    w.balance = balance(n, w.cycle, f != Flavor::plain);
                    return w;
                }
            }
        }
    }
    return ix;
}

std::vector<std::string> check_indexing(const Net& n, const Indexing& ix)
{
    std::vector<std::string> out;
    if (ix.assignment.size() != n.edges.size()) {
        out.push_back("indexing does not cover every edge");
        return out;
    }
    for (auto& c : constraints(n, ix.flavor))
        if (ix.assignment[c.upper] != ix.assignment[c.lower] + c.weight)
            out.push_back("link " + n.links[c.link].name + ": edges " + n.edges[c.upper].name + " and " + n.edges[c.lower].name +
                          " violate the constraint");
    return out;
}

Indexing shift_indexing(const Indexing& ix, const Net& n, const std::map<std::size_t, long>& shifts)
{
    auto comp = indexing_components(n, ix.flavor);
    std::size_t count = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
    for (auto& [c, s] : shifts)
        if (c >= count)
            throw NetError("unknown component " + std::to_string(c));
    Indexing out = ix;
    for (EdgeId e = 0; e < n.edges.size(); ++e)
        if (auto it = shifts.find(comp[e]); it != shifts.end())
            out.assignment[e] += it->second;
    return out;
}

void check_path(const Net& n, const Path& path)
{
    for (std::size_t i = 0; i < path.size(); ++i) {
        auto& s = path[i];
        if (s.link >= n.links.size() || s.from >= n.edges.size() || s.to >= n.edges.size())
            throw NetError("invalid path: step refers to a missing element");
        const Link& l = n.links[s.link];
        auto incident = [&](EdgeId e) {
            return std::count(l.premises.begin(), l.premises.end(), e) + std::count(l.conclusions.begin(), l.conclusions.end(), e) > 0;
        };
        if (!incident(s.from) || !incident(s.to) || s.from == s.to)
            throw NetError("invalid path: step through link " + l.name + " uses edges not incident to it");
        if (i + 1 < path.size() && path[i + 1].from != s.to)
            throw NetError("invalid path: consecutive steps do not share an edge");
    }
}

long signed_balance(const Net& n, const Path& path, bool count_exponentials)
{
    check_path(n, path);
    long total = 0;
    Flavor f = count_exponentials ? Flavor::exponential : Flavor::plain;
    for (auto& s : path) {
        const Link& l = n.links[s.link];
        int w = shift_weight(l.kind, f);
        if (w == 0)
            continue;
        bool from_premise = std::count(l.premises.begin(), l.premises.end(), s.from) > 0;
        bool to_premise = std::count(l.premises.begin(), l.premises.end(), s.to) > 0;
        if (from_premise && !to_premise)
            total += w;
        else if (!from_premise && to_premise)
            total -= w;
    }
    return total;
}

long balance(const Net& n, const Path& path, bool count_exponentials)
{
    long s = signed_balance(n, path, count_exponentials);
    return s < 0 ? -s : s;
}

namespace {

void require_plain_conclusions(const Net& n)
{
    for (EdgeId e : n.conclusions)
        if (n.edges[e].label.flat)
            throw NetError("flat-labelled conclusion " + n.edges[e].name);
}

bool conclusions_aligned(const Net& n, const Indexing& ix)
{
    auto comp = indexing_components(n, ix.flavor);
    std::map<std::size_t, long> seen;
    for (EdgeId e : n.conclusions) {
        auto [it, fresh] = seen.emplace(comp[e], ix.assignment[e]);
        if (!fresh && it->second != ix.assignment[e])
            return false;
    }
    return true;
}

void require_l3_preconditions(const Net& n)
{
    require_plain_conclusions(n);
    if (!is_dr_correct(n).correct)
        throw NetError("precondition violation: the net is not DR-correct");
}

}

bool is_strongly_indexable(const Net& n)
{
    require_plain_conclusions(n);
    auto r = solve_indexing(n, Flavor::plain);
    if (auto ix = std::get_if<Indexing>(&r))
        return conclusions_aligned(n, *ix);
    return false;
}

bool is_proof_net(const Net& n)
{
    for (EdgeId e : n.conclusions)
        if (n.edges[e].label.flat)
            return false;
    return is_dr_correct(n).correct && is_strongly_indexable(n);
}

bool is_l3_indexing_route(const Net& n)
{
    require_l3_preconditions(n);
    auto r = solve_indexing(n, Flavor::exponential);
    if (auto ix = std::get_if<Indexing>(&r))
        return conclusions_aligned(n, *ix);
    return false;
}

GeometricResult is_l3_geometric(const Net& n)
{
    require_l3_preconditions(n);
    Net closed = parr_closure(n);
    UGraph g = underlying_graph(closed, false);
    std::size_t nv = g.nodes.size();
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(nv);
    for (std::size_t a = 0; a < g.arcs.size(); ++a) {
        adj[g.arcs[a].u].push_back({g.arcs[a].v, a});
        adj[g.arcs[a].v].push_back({g.arcs[a].u, a});
    }
    std::vector<std::optional<std::size_t>> parent_arc(nv);
    std::vector<std::size_t> parent(nv), depth_of(nv, 0);
    std::vector<bool> seen(nv, false), tree(g.arcs.size(), false);
    for (std::size_t r = 0; r < nv; ++r) {
        if (seen[r])
            continue;
        seen[r] = true;
        parent[r] = r;
        std::deque<std::size_t> q = {r};
        while (!q.empty()) {
            auto x = q.front();
            q.pop_front();
            for (auto [y, a] : adj[x])
                if (!seen[y]) {
                    seen[y] = true;
                    parent[y] = x;
                    parent_arc[y] = a;
                    depth_of[y] = depth_of[x] + 1;
                    tree[a] = true;
                    q.push_back(y);
                }
        }
    }
    for (std::size_t a = 0; a < g.arcs.size(); ++a) {
        if (tree[a])
            continue;
        // fundamental cycle: u -> ... -> lca -> ... -> v, closed by arc a from v to u
        std::size_t u = g.arcs[a].u, v = g.arcs[a].v;
        std::vector<std::size_t> from_u, from_v;
        std::size_t x = u, y = v;
        while (x != y) {
            if (depth_of[x] >= depth_of[y]) {
                from_u.push_back(*parent_arc[x]);
                x = parent[x];
            } else {
                from_v.push_back(*parent_arc[y]);
                y = parent[y];
            }
        }
        std::vector<std::size_t> arcs = from_u;
        for (auto it = from_v.rbegin(); it != from_v.rend(); ++it)
            arcs.push_back(*it);
        arcs.push_back(a);
        // walking the arcs in order visits u first; the node between two arcs is shared by both
        Path cycle;
        std::size_t at = u;
        std::vector<std::size_t> nodes_seq;
        for (auto b : arcs) {
            auto nxt = g.arcs[b].u == at ? g.arcs[b].v : g.arcs[b].u;
            nodes_seq.push_back(nxt);
            at = nxt;
        }
        for (std::size_t i = 0; i < arcs.size(); ++i) {
            std::size_t node = nodes_seq[i];
            std::size_t next_arc = arcs[(i + 1) % arcs.size()];
            cycle.push_back({*g.nodes[node].link, g.arcs[arcs[i]].edge, g.arcs[next_arc].edge});
        }
        long s = signed_balance(closed, cycle, true);
        if (s != 0) {
            GeometricResult r;
            r.member = false;
            // the cycle lives in the closure; closure links only appear when conclusions are joined
            r.witness = BalanceWitness{cycle, s < 0 ? -s : s};
            return r;
        }
    }
    return {};
}

namespace {

Indexing go_up(const Net& n, std::vector<EdgeId> seeds)
{
    Topology topo(n);
    Indexing ix;
    ix.flavor = Flavor::quasi;
    ix.assignment.assign(n.edges.size(), 0);
    std::vector<bool> done(n.edges.size(), false);
    for (EdgeId e : seeds)
        done[e] = true;
    while (!seeds.empty()) {
        EdgeId e = seeds.back();
        seeds.pop_back();
        auto p = topo.producer[e];
        if (!p)
            continue;
        const Link& l = n.links[*p];
        for (EdgeId q : l.premises) {
            if (done[q])
                continue;
            done[q] = true;
            ix.assignment[q] = ix.assignment[e] + shift_weight(l.kind, Flavor::quasi);
            seeds.push_back(q);
        }
    }
    for (EdgeId e = 0; e < n.edges.size(); ++e)
        if (!done[e])
            throw NetError("edge " + n.edges[e].name + " is not above any conclusion");
    return ix;
}

}

Indexing default_exponential_quasi_indexing(const Net& n)
{
    if (n.count(LinkKind::cut) > 0)
        throw NetError("the default quasi-indexing needs a cut-free net");
    return go_up(n, n.conclusions);
}

Indexing cut_anchored_quasi_indexing(const Net& n)
{
    std::vector<EdgeId> seeds = n.conclusions;
    for (auto& l : n.links)
        if (l.kind == LinkKind::cut)
            seeds.insert(seeds.end(), l.premises.begin(), l.premises.end());
    return go_up(n, seeds);
}

std::string indexing_json(const Net& n, const Indexing& ix, bool pretty)
{
    nlohmann::ordered_json j;
    j["flavor"] = std::string(flavor_name(ix.flavor));
    j["assignment"] = nlohmann::ordered_json::object();
    for (EdgeId e = 0; e < n.edges.size(); ++e)
        j["assignment"][n.edges[e].name] = ix.assignment[e];
    return pretty ? j.dump(2) : j.dump();
}

std::string witness_json(const Net& n, const BalanceWitness& w, bool pretty)
{
    nlohmann::ordered_json j;
    j["balance"] = w.balance;
    j["cycle"] = nlohmann::ordered_json::array();
    for (auto& s : w.cycle)
        j["cycle"].push_back({{"link", n.links[s.link].name}, {"from", n.edges[s.from].name}, {"to", n.edges[s.to].name}});
    return pretty ? j.dump(2) : j.dump();
}

}

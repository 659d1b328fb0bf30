#include "stratnet/net.hpp"

#include <algorithm>
#include <deque>

namespace stratnet {

namespace {

struct Side {
    explicit Side(const Net& net) : n(net), topo(net), inner(net.links.size()), concl_pos(net.edges.size())
    {
        for (LinkId l = 0; l < n.links.size(); ++l)
            inner[l] = topo.border_of[l] ? n.boxes[*topo.border_of[l]].parent : topo.container[l];
        for (std::size_t i = 0; i < n.conclusions.size(); ++i)
            concl_pos[n.conclusions[i]] = i;
    }
    const Net& n;
    Topology topo;
    std::vector<std::optional<BoxId>> inner;
    std::vector<std::optional<std::size_t>> concl_pos;

    std::size_t slot(EdgeId e) const
    {
        auto& cs = n.links[*topo.producer[e]].conclusions;
        return std::find(cs.begin(), cs.end(), e) - cs.begin();
    }
};

struct State {
    std::vector<std::optional<LinkId>> lf, lb;
    std::vector<std::optional<EdgeId>> ef, eb;
};

class Matcher {
public:
    Matcher(const Net& a, const Net& b, const std::function<bool(LinkId, LinkId)>& compat) : a_(a), b_(b), compat_(compat) {}

    std::optional<std::vector<LinkId>> run()
    {
        const Net &na = a_.n, &nb = b_.n;
        if (na.links.size() != nb.links.size() || na.edges.size() != nb.edges.size() || na.boxes.size() != nb.boxes.size() ||
            na.conclusions.size() != nb.conclusions.size())
            return std::nullopt;
        State st{std::vector<std::optional<LinkId>>(na.links.size()), std::vector<std::optional<LinkId>>(nb.links.size()),
                 std::vector<std::optional<EdgeId>>(na.edges.size()), std::vector<std::optional<EdgeId>>(nb.edges.size())};
        std::deque<LinkId> q;
        for (std::size_t i = 0; i < na.conclusions.size(); ++i)
            if (!edge(st, na.conclusions[i], nb.conclusions[i], q))
                return std::nullopt;
        if (!propagate(st, q))
            return std::nullopt;
        return solve(std::move(st));
    }

private:
    bool link(State& st, LinkId x, LinkId y, std::deque<LinkId>& q)
    {
        if (st.lf[x])
            return *st.lf[x] == y;
        if (st.lb[y])
            return false;
        const Link &lx = a_.n.links[x], &ly = b_.n.links[y];
        if (lx.kind != ly.kind || lx.premises.size() != ly.premises.size() || lx.conclusions.size() != ly.conclusions.size())
            return false;
        if (compat_ && !compat_(x, y))
            return false;
        st.lf[x] = y;
        st.lb[y] = x;
        q.push_back(x);
        return true;
    }

    bool edge(State& st, EdgeId e, EdgeId f, std::deque<LinkId>& q)
    {
        if (st.ef[e])
            return *st.ef[e] == f;
        if (st.eb[f])
            return false;
        if (!(a_.n.edges[e].label == b_.n.edges[f].label) || a_.concl_pos[e] != b_.concl_pos[f])
            return false;
        st.ef[e] = f;
        st.eb[f] = e;
        auto pa = a_.topo.producer[e], pb = b_.topo.producer[f];
        if (pa.has_value() != pb.has_value())
            return false;
        if (pa) {
            if (a_.n.links[*pa].kind != LinkKind::axiom && a_.slot(e) != b_.slot(f))
                return false;
            if (!link(st, *pa, *pb, q))
                return false;
        }
        auto ca = a_.topo.consumer[e], cb = b_.topo.consumer[f];
        if (ca.has_value() != cb.has_value())
            return false;
        if (ca) {
            if (!has_unordered_premises(a_.n.links[*ca].kind) && a_.topo.consumer_port[e] != b_.topo.consumer_port[f])
                return false;
            if (!link(st, *ca, *cb, q))
                return false;
        }
        return true;
    }

    bool propagate(State& st, std::deque<LinkId>& q)
    {
        while (!q.empty()) {
            LinkId x = q.front();
            q.pop_front();
            LinkId y = *st.lf[x];
            const Link &lx = a_.n.links[x], &ly = b_.n.links[y];
            if (!has_unordered_premises(lx.kind))
                for (std::size_t i = 0; i < lx.premises.size(); ++i)
                    if (!edge(st, lx.premises[i], ly.premises[i], q))
                        return false;
            if (lx.kind == LinkKind::axiom) {
                bool straight = a_.n.edges[lx.conclusions[0]].label == b_.n.edges[ly.conclusions[0]].label;
                if (!edge(st, lx.conclusions[0], ly.conclusions[straight ? 0 : 1], q) ||
                    !edge(st, lx.conclusions[1], ly.conclusions[straight ? 1 : 0], q))
                    return false;
            } else {
                for (std::size_t i = 0; i < lx.conclusions.size(); ++i)
                    if (!edge(st, lx.conclusions[i], ly.conclusions[i], q))
                        return false;
            }
            auto ia = a_.inner[x], ib = b_.inner[y];
            if (ia.has_value() != ib.has_value())
                return false;
            if (ia && !link(st, a_.n.boxes[*ia].principal, b_.n.boxes[*ib].principal, q))
                return false;
            auto ba = a_.topo.border_of[x], bb = b_.topo.border_of[y];
            if (ba.has_value() != bb.has_value())
                return false;
            if (ba && !link(st, a_.n.boxes[*ba].principal, b_.n.boxes[*bb].principal, q))
                return false;
        }
        return true;
    }

    std::optional<std::vector<LinkId>> solve(State st)
    {
        // an unordered premise still open on a matched link
        for (LinkId x = 0; x < a_.n.links.size(); ++x) {
            if (!st.lf[x] || !has_unordered_premises(a_.n.links[x].kind))
                continue;
            for (EdgeId e : a_.n.links[x].premises) {
                if (st.ef[e])
                    continue;
                for (EdgeId f : b_.n.links[*st.lf[x]].premises) {
                    if (st.eb[f])
                        continue;
                    State next = st;
                    std::deque<LinkId> q;
                    if (edge(next, e, f, q) && propagate(next, q))
                        if (auto r = solve(std::move(next)))
                            return r;
                }
                return std::nullopt;
            }
        }
        for (LinkId x = 0; x < a_.n.links.size(); ++x) {
            if (st.lf[x])
                continue;
            for (LinkId y = 0; y < b_.n.links.size(); ++y) {
                if (st.lb[y])
                    continue;
                State next = st;
                std::deque<LinkId> q;
                if (link(next, x, y, q) && propagate(next, q))
                    if (auto r = solve(std::move(next)))
                        return r;
            }
            return std::nullopt;
        }
        std::vector<LinkId> out;
        for (auto& m : st.lf)
            out.push_back(*m);
        return out;
    }

    Side a_, b_;
    const std::function<bool(LinkId, LinkId)>& compat_;
};

}

std::optional<std::vector<LinkId>> match_nets(const Net& a, const Net& b, const std::function<bool(LinkId, LinkId)>& compat)
{
    return Matcher(a, b, compat).run();
}

}

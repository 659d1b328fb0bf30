#include "stratnet/net.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

namespace stratnet {

namespace {

struct Relation {
    int type;
    std::size_t a, b;
    std::size_t other;
};

constexpr std::size_t search_leaf_limit = 200000;

class Canonizer {
public:
    explicit Canonizer(const Net& n) : n_(n), topo_(n), size_(n.links.size()), rel_(n.links.size())
    {
        slot_.assign(n.edges.size(), 0);
        for (LinkId l = 0; l < size_; ++l) {
            const Link& k = n.links[l];
            for (std::size_t i = 0; i < k.conclusions.size(); ++i)
                slot_[k.conclusions[i]] = i;
            if (k.kind == LinkKind::axiom && k.conclusions.size() == 2) {
                auto a = print_label(n.edges[k.conclusions[0]].label);
                auto b = print_label(n.edges[k.conclusions[1]].label);
                if (b < a) {
                    slot_[k.conclusions[0]] = 1;
                    slot_[k.conclusions[1]] = 0;
                }
            }
        }
        for (LinkId l = 0; l < size_; ++l) {
            const Link& k = n.links[l];
            bool unordered = has_unordered_premises(k.kind);
            for (std::size_t i = 0; i < k.premises.size(); ++i) {
                EdgeId e = k.premises[i];
                if (auto p = topo_.producer[e]) {
                    std::size_t port = unordered ? 0 : i;
                    rel_[l].push_back({0, port, slot_[e], *p});
                    rel_[*p].push_back({1, slot_[e], port, l});
                }
            }
            if (auto b = inner_box(l)) {
                LinkId pr = n.boxes[*b].principal;
                rel_[l].push_back({2, 0, 0, pr});
                rel_[pr].push_back({3, 0, 0, l});
            }
            if (auto b = topo_.border_of[l]; b && k.kind == LinkKind::pax) {
                LinkId pr = n.boxes[*b].principal;
                rel_[l].push_back({4, 0, 0, pr});
                rel_[pr].push_back({5, 0, 0, l});
            }
        }
    }

    std::string run()
    {
        if (size_ == 0) {
            std::string out = "empty;";
            return out;
        }
        std::vector<std::string> keys(size_);
        std::vector<std::vector<std::size_t>> anchors(size_);
        for (std::size_t i = 0; i < n_.conclusions.size(); ++i) {
            EdgeId e = n_.conclusions[i];
            if (auto p = topo_.producer[e])
                anchors[*p].push_back(i * 4 + slot_[e]);
        }
        for (LinkId l = 0; l < size_; ++l) {
            const Link& k = n_.links[l];
            std::string key = std::string(kind_name(k.kind)) + "/" + std::to_string(k.premises.size()) + "/";
            std::vector<std::string> labs(k.conclusions.size());
            for (EdgeId e : k.conclusions)
                labs[slot_[e]] = print_label(n_.edges[e].label);
            for (auto& s : labs)
                key += s + ",";
            key += "/";
            std::sort(anchors[l].begin(), anchors[l].end());
            for (auto a : anchors[l])
                key += std::to_string(a) + ",";
            keys[l] = std::move(key);
        }
        std::vector<std::string> sorted = keys;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        std::vector<std::size_t> colors(size_);
        for (LinkId l = 0; l < size_; ++l)
            colors[l] = std::lower_bound(sorted.begin(), sorted.end(), keys[l]) - sorted.begin();
        std::vector<std::size_t> prefix;
        search(colors, prefix);
        return best_;
    }

private:
    std::optional<BoxId> inner_box(LinkId l) const
    {
        if (auto b = topo_.border_of[l])
            return n_.boxes[*b].parent;
        return topo_.container[l];
    }

    static std::size_t count_colors(const std::vector<std::size_t>& c)
    {
        std::vector<std::size_t> s = c;
        std::sort(s.begin(), s.end());
        return std::unique(s.begin(), s.end()) - s.begin();
    }

    std::vector<std::size_t> refine(std::vector<std::size_t> colors) const
    {
        std::size_t classes = count_colors(colors);
        using Sig = std::pair<std::size_t, std::vector<std::tuple<int, std::size_t, std::size_t, std::size_t>>>;
        while (true) {
            std::vector<Sig> sigs(size_);
            for (LinkId l = 0; l < size_; ++l) {
                sigs[l].first = colors[l];
                auto& v = sigs[l].second;
                v.reserve(rel_[l].size());
                for (auto& r : rel_[l])
                    v.emplace_back(r.type, r.a, r.b, colors[r.other]);
                std::sort(v.begin(), v.end());
            }
            std::vector<std::size_t> idx(size_);
            std::iota(idx.begin(), idx.end(), 0);
            std::sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return sigs[x] < sigs[y]; });
            std::vector<std::size_t> next(size_);
            std::size_t rank = 0;
            for (std::size_t i = 0; i < size_; ++i) {
                if (i > 0 && sigs[idx[i]] != sigs[idx[i - 1]])
                    ++rank;
                next[idx[i]] = rank;
            }
            std::size_t now = rank + 1;
            colors = std::move(next);
            if (now == classes)
                return colors;
            classes = now;
        }
    }

    std::string certificate(const std::vector<std::size_t>& pos) const
    {
        std::string out;
        for (std::size_t i = 0; i < size_; ++i)
            order_tmp_[pos[i]] = i;
        for (std::size_t i = 0; i < size_; ++i) {
            LinkId l = order_tmp_[i];
            const Link& k = n_.links[l];
            out += kind_name(k.kind);
            out += '[';
            std::vector<std::string> labs(k.conclusions.size());
            for (EdgeId e : k.conclusions)
                labs[slot_[e]] = print_label(n_.edges[e].label);
            for (auto& s : labs)
                out += s + ' ';
            out += "](";
            std::vector<std::pair<std::size_t, std::size_t>> prem;
            for (EdgeId e : k.premises)
                prem.emplace_back(topo_.producer[e] ? pos[*topo_.producer[e]] : size_, slot_[e]);
            if (has_unordered_premises(k.kind))
                std::sort(prem.begin(), prem.end());
            for (auto [p, s] : prem)
                out += std::to_string(p) + '.' + std::to_string(s) + ' ';
            out += ')';
            if (auto b = inner_box(l))
                out += "in" + std::to_string(pos[n_.boxes[*b].principal]);
            if (auto b = topo_.border_of[l]; b && k.kind == LinkKind::pax)
                out += "aux" + std::to_string(pos[n_.boxes[*b].principal]);
            out += ';';
        }
        out += "|";
        for (EdgeId e : n_.conclusions)
            out += std::to_string(topo_.producer[e] ? pos[*topo_.producer[e]] : size_) + '.' + std::to_string(slot_[e]) + ' ';
        return out;
    }

    bool same_orbit(std::size_t v, const std::vector<std::size_t>& explored, const std::vector<std::size_t>& prefix) const
    {
        if (explored.empty() || autos_.empty())
            return false;
        std::vector<std::size_t> parent(size_);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](std::size_t x) {
            while (parent[x] != x)
                x = parent[x] = parent[parent[x]];
            return x;
        };
        bool any = false;
        for (auto& g : autos_) {
            bool fixes = std::all_of(prefix.begin(), prefix.end(), [&](std::size_t p) { return g[p] == p; });
            if (!fixes)
                continue;
            any = true;
            for (std::size_t x = 0; x < size_; ++x)
                parent[find(x)] = find(g[x]);
        }
        if (!any)
            return false;
        for (std::size_t u : explored)
            if (find(u) == find(v))
                return true;
        return false;
    }

    void search(std::vector<std::size_t> colors, std::vector<std::size_t>& prefix)
    {
        colors = refine(std::move(colors));
        std::vector<std::size_t> cell_size(size_, 0);
        for (auto c : colors)
            ++cell_size[c];
        std::size_t target = size_;
        for (std::size_t c = 0; c < size_; ++c)
            if (cell_size[c] > 1) {
                target = c;
                break;
            }
        if (target == size_) {
            if (++leaves_ > search_leaf_limit)
                throw NetError("canonical form search exceeded its leaf budget");
            std::string cert = certificate(colors);
            std::vector<std::size_t> order(size_);
            for (std::size_t i = 0; i < size_; ++i)
                order[colors[i]] = i;
            auto record = [&](const std::vector<std::size_t>& other) {
                std::vector<std::size_t> g(size_);
                for (std::size_t i = 0; i < size_; ++i)
                    g[other[i]] = order[i];
                autos_.push_back(std::move(g));
            };
            if (first_order_.empty()) {
                first_order_ = order;
                first_cert_ = cert;
            } else if (cert == first_cert_) {
                record(first_order_);
            } else if (cert == best_) {
                record(best_order_);
            }
            if (best_.empty() || cert < best_) {
                best_ = cert;
                best_order_ = order;
            }
            return;
        }
        std::vector<std::size_t> explored;
        for (std::size_t v = 0; v < size_; ++v) {
            if (colors[v] != target)
                continue;
            if (same_orbit(v, explored, prefix))
                continue;
            std::vector<std::size_t> next(size_);
            for (std::size_t x = 0; x < size_; ++x)
                next[x] = 2 * colors[x] + (x == v ? 0 : 1);
            prefix.push_back(v);
            search(std::move(next), prefix);
            prefix.pop_back();
            explored.push_back(v);
        }
    }

    const Net& n_;
    Topology topo_;
    std::size_t size_;
    std::vector<std::size_t> slot_;
    std::vector<std::vector<Relation>> rel_;
    mutable std::vector<std::size_t> order_tmp_ = std::vector<std::size_t>(size_);
    std::vector<std::vector<std::size_t>> autos_;
    std::vector<std::size_t> first_order_, best_order_;
    std::string first_cert_, best_;
    std::size_t leaves_ = 0;
};

}

std::string canonical_form(const Net& n)
{
    require_valid(n);
    return Canonizer(n).run();
}

bool nets_equal(const Net& a, const Net& b)
{
    if (a.links.size() != b.links.size() || a.edges.size() != b.edges.size() || a.conclusions.size() != b.conclusions.size())
        return false;
    return canonical_form(a) == canonical_form(b);
}

}

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "stratnet/formula.hpp"

namespace stratnet {

enum class LinkKind { axiom, cut, one, bottom, tensor, par, flat, pax, whynot, ofcourse, paragraph };

std::string_view kind_name(LinkKind k);
std::optional<LinkKind> kind_from_name(std::string_view s);

// cut and whynot premises carry no left/right order
inline bool has_unordered_premises(LinkKind k) { return k == LinkKind::cut || k == LinkKind::whynot; }
inline bool is_border_kind(LinkKind k) { return k == LinkKind::ofcourse || k == LinkKind::pax; }

using EdgeId = std::size_t;
using LinkId = std::size_t;
using BoxId = std::size_t;

struct Edge {
    std::string name;
    EdgeLabel label;
};

struct Link {
    std::string name;
    LinkKind kind;
    std::vector<EdgeId> premises;
    std::vector<EdgeId> conclusions;
};

// contents holds every link strictly inside the box, nested boxes included;
// the border (principal and auxiliaries) is not part of the contents.
struct Box {
    LinkId principal;
    std::vector<LinkId> auxiliaries;
    std::vector<LinkId> contents;
    std::optional<BoxId> parent;
};

struct Net {
    std::vector<Edge> edges;
    std::vector<Link> links;
    std::vector<Box> boxes;
    std::vector<EdgeId> conclusions;

    EdgeId add_edge(std::string name, EdgeLabel label);
    LinkId add_link(std::string name, LinkKind kind, std::vector<EdgeId> premises, std::vector<EdgeId> conclusions);

    std::optional<EdgeId> find_edge(std::string_view name) const;
    std::optional<LinkId> find_link(std::string_view name) const;

    const EdgeLabel& label(EdgeId e) const { return edges[e].label; }
    bool empty() const { return links.empty(); }
    std::size_t count(LinkKind k) const;
};

struct NetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Derived incidence and nesting data. Built from a net whose indices are in range.
struct Topology {
    explicit Topology(const Net& n);

    std::vector<std::optional<LinkId>> producer;
    std::vector<std::optional<LinkId>> consumer;
    std::vector<std::size_t> consumer_port;
    std::vector<std::optional<BoxId>> container;
    std::vector<std::optional<BoxId>> border_of;
    std::vector<std::optional<BoxId>> box_of_principal;
    std::vector<int> link_depth;
    std::vector<int> box_depth;

    int edge_depth(EdgeId e) const { return producer[e] ? link_depth[*producer[e]] : 0; }
    bool inside(LinkId l, BoxId b, const Net& n) const;
};

struct Violation {
    std::string subject;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    std::string summary() const;
};

ValidationReport validate(const Net& n);
void require_valid(const Net& n);

int depth(const Net& n, std::string_view id);
int max_depth(const Net& n);

Net parr_closure(const Net& n);

// Undirected multigraph. Nodes are links, or collapsed depth-zero boxes when requested.
struct UGraph {
    struct Node {
        std::optional<LinkId> link;
        std::optional<BoxId> box;
    };
    struct Arc {
        std::size_t u, v;
        EdgeId edge;
    };
    std::vector<Node> nodes;
    std::vector<Arc> arcs;

    bool has_cycle() const;
};

UGraph underlying_graph(const Net& n, bool at_depth_zero);

std::string canonical_form(const Net& n);
bool nets_equal(const Net& a, const Net& b);

// Backtracking search for a structure-preserving bijection between the links of a and b
// (conclusions kept in order); compat can forbid individual link pairs.
std::optional<std::vector<LinkId>> match_nets(const Net& a, const Net& b,
                                              const std::function<bool(LinkId, LinkId)>& compat = {});

// Disjoint union; names of b that collide with names of a are made fresh.
Net juxtapose(const Net& a, const Net& b);
// Renames edges e0, e1, ... and links l0, l1, ... in storage order.
Net renumber(const Net& n);
std::string fresh_name(const Net& n, std::string_view base);

// parse_net_document only checks the document shape; load_net also validates.
Net parse_net_document(std::string_view json_text);
Net load_net(std::string_view json_text);
std::string save_net(const Net& n, bool pretty = false);
std::string to_dot(const Net& n);

}

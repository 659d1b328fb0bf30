#include "stratnet/net.hpp"

#include <json.hpp>
#include <unordered_map>

namespace stratnet {

using nlohmann::json;

namespace {

const json& field(const json& obj, const char* key, const std::string& where)
{
    if (!obj.is_object() || !obj.contains(key))
        throw NetError(where + ": missing field \"" + key + "\"");
    return obj.at(key);
}

std::string string_field(const json& obj, const char* key, const std::string& where)
{
    const json& v = field(obj, key, where);
    if (!v.is_string())
        throw NetError(where + ": field \"" + key + "\" must be a string");
    return v.get<std::string>();
}

struct Loader {
    Net net;
    std::unordered_map<std::string, EdgeId> edge_ids;
    std::unordered_map<std::string, LinkId> link_ids;

    EdgeId edge(const json& v, const std::string& where)
    {
        if (!v.is_string())
            throw NetError(where + ": edge ids must be strings");
        auto it = edge_ids.find(v.get<std::string>());
        if (it == edge_ids.end())
            throw NetError(where + ": unknown edge " + v.get<std::string>());
        return it->second;
    }

    LinkId link(const json& v, const std::string& where)
    {
        if (!v.is_string())
            throw NetError(where + ": link ids must be strings");
        auto it = link_ids.find(v.get<std::string>());
        if (it == link_ids.end())
            throw NetError(where + ": unknown link " + v.get<std::string>());
        return it->second;
    }

    void load_boxes(const json& arr, std::optional<BoxId> parent)
    {
        if (!arr.is_array())
            throw NetError("\"boxes\" must be an array");
        for (const json& jb : arr) {
            std::string where = "box";
            Box box;
            box.principal = link(field(jb, "principal", where), where);
            where = "box " + net.links[box.principal].name;
            if (jb.contains("auxiliaries"))
                for (const json& a : jb.at("auxiliaries"))
                    box.auxiliaries.push_back(link(a, where));
            if (jb.contains("contents"))
                for (const json& c : jb.at("contents"))
                    box.contents.push_back(link(c, where));
            box.parent = parent;
            net.boxes.push_back(std::move(box));
            BoxId id = net.boxes.size() - 1;
            if (jb.contains("boxes"))
                load_boxes(jb.at("boxes"), id);
        }
    }
};

}

Net parse_net_document(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw NetError(std::string("JSON parse error at byte ") + std::to_string(e.byte) + ": " + e.what());
    }
    if (!doc.is_object())
        throw NetError("net document must be a JSON object");
    Loader ld;
    for (const json& je : field(doc, "edges", "document")) {
        std::string id = string_field(je, "id", "edge");
        std::string lab = string_field(je, "label", "edge " + id);
        EdgeLabel label = EdgeLabel::plain(Formula::one());
        try {
            label = parse_label(lab);
        } catch (const ParseError& e) {
            throw NetError("edge " + id + ": " + e.what());
        }
        if (!ld.edge_ids.emplace(id, ld.net.edges.size()).second)
            throw NetError("edge " + id + ": duplicate id");
        ld.net.add_edge(id, label);
    }
    for (const json& jl : field(doc, "links", "document")) {
        std::string id = string_field(jl, "id", "link");
        std::string where = "link " + id;
        auto kind = kind_from_name(string_field(jl, "kind", where));
        if (!kind)
            throw NetError(where + ": unknown kind " + jl.at("kind").get<std::string>());
        std::vector<EdgeId> prem, concl;
        if (jl.contains("premises"))
            for (const json& e : jl.at("premises"))
                prem.push_back(ld.edge(e, where));
        if (jl.contains("conclusions"))
            for (const json& e : jl.at("conclusions"))
                concl.push_back(ld.edge(e, where));
        if (!ld.link_ids.emplace(id, ld.net.links.size()).second)
            throw NetError(where + ": duplicate id");
        ld.net.add_link(id, *kind, std::move(prem), std::move(concl));
    }
    if (doc.contains("boxes"))
        ld.load_boxes(doc.at("boxes"), std::nullopt);
    for (const json& e : field(doc, "conclusions", "document"))
        ld.net.conclusions.push_back(ld.edge(e, "conclusions"));
    return ld.net;
}

Net load_net(std::string_view text)
{
    Net n = parse_net_document(text);
    require_valid(n);
    return n;
}

namespace {

json box_json(const Net& n, BoxId b)
{
    const Box& box = n.boxes[b];
    json jb;
    jb["principal"] = n.links[box.principal].name;
    jb["auxiliaries"] = json::array();
    for (LinkId a : box.auxiliaries)
        jb["auxiliaries"].push_back(n.links[a].name);
    jb["contents"] = json::array();
    for (LinkId c : box.contents)
        jb["contents"].push_back(n.links[c].name);
    jb["boxes"] = json::array();
    for (BoxId c = 0; c < n.boxes.size(); ++c)
        if (n.boxes[c].parent == b)
            jb["boxes"].push_back(box_json(n, c));
    return jb;
}

}

std::string save_net(const Net& n, bool pretty)
{
    json doc;
    doc["edges"] = json::array();
    for (auto& e : n.edges)
        doc["edges"].push_back({{"id", e.name}, {"label", print_label(e.label)}});
    doc["links"] = json::array();
    for (auto& l : n.links) {
        json jl;
        jl["id"] = l.name;
        jl["kind"] = std::string(kind_name(l.kind));
        jl["premises"] = json::array();
        for (EdgeId e : l.premises)
            jl["premises"].push_back(n.edges[e].name);
        jl["conclusions"] = json::array();
        for (EdgeId e : l.conclusions)
            jl["conclusions"].push_back(n.edges[e].name);
        doc["links"].push_back(std::move(jl));
    }
    doc["boxes"] = json::array();
    for (BoxId b = 0; b < n.boxes.size(); ++b)
        if (!n.boxes[b].parent)
            doc["boxes"].push_back(box_json(n, b));
    doc["conclusions"] = json::array();
    for (EdgeId e : n.conclusions)
        doc["conclusions"].push_back(n.edges[e].name);
    return pretty ? doc.dump(2) : doc.dump();
}

std::string to_dot(const Net& n)
{
    Topology topo(n);
    std::string out = "graph net {\n";
    for (LinkId l = 0; l < n.links.size(); ++l)
        out += "  \"" + n.links[l].name + "\" [label=\"" + std::string(kind_name(n.links[l].kind)) + "\\n" + n.links[l].name +
               "\\nd" + std::to_string(topo.link_depth[l]) + "\"];\n";
    for (EdgeId e = 0; e < n.edges.size(); ++e) {
        if (!topo.producer[e] || !topo.consumer[e])
            continue;
        out += "  \"" + n.links[*topo.producer[e]].name + "\" -- \"" + n.links[*topo.consumer[e]].name + "\" [label=\"" +
               print_label(n.edges[e].label) + "\"];\n";
    }
    out += "}\n";
    return out;
}

}

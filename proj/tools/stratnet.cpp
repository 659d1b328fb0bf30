#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "stratnet/builder.hpp"
#include "stratnet/correctness.hpp"
#include "stratnet/interactive.hpp"
#include "stratnet/rewrite.hpp"

using namespace stratnet;
using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

enum Exit { yes = 0, fails = 1, invalid = 2, undecided = 3, disagreement = 4 };

struct Outcome {
    int code = yes;
    std::string out;
    std::string err;
};

struct Globals {
    bool pretty = false;
    bool dot = false;
    unsigned jobs = 1;
};

Globals globals;

std::string dump(const json& j)
{
    return globals.pretty ? j.dump(2) : j.dump();
}

std::string read_file(const std::string& path)
{
    std::ostringstream ss;
    if (path == "-") {
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot read " + path);
    ss << in.rdbuf();
    return ss.str();
}

std::uint64_t switching_budget()
{
    if (const char* env = std::getenv("STRATNET_BUDGET")) {
        try {
            auto v = std::stoull(env);
            if (v > 0)
                return v;
        } catch (...) {
        }
    }
    return default_switching_budget;
}

json dr_witness(const Net& n, const DrWitness& w)
{
    json sw = json::object();
    for (auto [l, i] : w.switching.choice)
        sw[n.links[l].name] = n.edges[n.links[l].premises[i]].name;
    json cycle = json::array();
    for (EdgeId e : w.cycle)
        cycle.push_back(n.edges[e].name);
    json box = w.switching.box ? json(n.links[n.boxes[*w.switching.box].principal].name) : json(nullptr);
    return {{"box", box}, {"switching", sw}, {"cycle", cycle}};
}

std::string net_output(const Net& n)
{
    return globals.dot ? to_dot(n) : save_net(n, globals.pretty);
}

using Handler = std::function<Outcome(const std::string& text)>;

Outcome guarded(const Handler& h, const std::string& text)
{
    try {
        return h(text);
    } catch (const BudgetExceeded& e) {
        return {undecided, dump(json{{"undecided", e.what()}}), ""};
    } catch (const std::exception& e) {
        return {invalid, "", e.what()};
    }
}

// A directory argument runs the handler on every .json file inside, --jobs at a time.
int run_on(const std::string& path, const Handler& h)
{
    if (path != "-" && fs::is_directory(path)) {
        std::vector<fs::path> files;
        for (auto& entry : fs::directory_iterator(path))
            if (entry.is_regular_file() && entry.path().extension() == ".json")
                files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        std::vector<Outcome> results(files.size());
        std::atomic<std::size_t> next{0};
        auto work = [&] {
            for (std::size_t i = next++; i < files.size(); i = next++) {
                try {
                    results[i] = guarded(h, read_file(files[i].string()));
                } catch (const std::exception& e) {
                    results[i] = {invalid, "", e.what()};
                }
            }
        };
        std::vector<std::thread> pool;
        for (unsigned i = 1; i < std::max(1u, globals.jobs); ++i)
            pool.emplace_back(work);
        work();
        for (auto& t : pool)
            t.join();
        int worst = yes;
        for (std::size_t i = 0; i < files.size(); ++i) {
            json line = {{"file", files[i].filename().string()}, {"exit", results[i].code}};
            if (!results[i].out.empty()) {
                auto parsed = json::parse(results[i].out, nullptr, false);
                line["output"] = parsed.is_discarded() ? json(results[i].out) : parsed;
            }
            if (!results[i].err.empty())
                line["error"] = results[i].err;
            std::cout << line.dump() << "\n";
            worst = std::max(worst, results[i].code);
        }
        return worst;
    }
    Outcome o;
    try {
        o = guarded(h, read_file(path));
    } catch (const std::exception& e) {
        o = {invalid, "", e.what()};
    }
    if (!o.out.empty())
        std::cout << o.out << "\n";
    if (!o.err.empty())
        std::cerr << "stratnet: " << o.err << "\n";
    return o.code;
}

Outcome cmd_validate(const std::string& text)
{
    Net n = parse_net_document(text);
    auto report = validate(n);
    if (report.ok())
        return {yes, globals.dot ? to_dot(n) : dump(json{{"valid", true}}), ""};
    json v = json::array();
    for (auto& x : report.violations)
        v.push_back({{"subject", x.subject}, {"message", x.message}});
    return {invalid, dump(json{{"valid", false}, {"violations", v}}), report.summary()};
}

Outcome cmd_check(const std::string& text, const std::string& criterion, bool brute)
{
    Net n = load_net(text);
    std::uint64_t budget = switching_budget();
    DrResult dr = brute ? is_dr_correct_brute(n, budget) : is_dr_correct(n, budget);
    json j = {{"criterion", criterion}};
    if (!dr.correct) {
        j["holds"] = false;
        j["reason"] = "a switching has a cycle";
        if (dr.witness)
            j["witness"] = dr_witness(n, *dr.witness);
        return {fails, dump(j), ""};
    }
    if (criterion == "dr") {
        j["holds"] = true;
        return {yes, dump(j), ""};
    }
    auto r = solve_indexing(parr_closure(n), Flavor::plain);
    if (auto w = std::get_if<BalanceWitness>(&r)) {
        j["holds"] = false;
        j["reason"] = "the closure has an unbalanced cycle";
        j["witness"] = json::parse(witness_json(parr_closure(n), *w));
        return {fails, dump(j), ""};
    }
    j["holds"] = true;
    return {yes, dump(j), ""};
}

Outcome cmd_index(const std::string& text, const std::string& flavor_text, bool strong)
{
    Net n = load_net(text);
    Flavor f = *flavor_from_name(flavor_text);
    Net target = strong ? parr_closure(n) : n;
    auto r = solve_indexing(target, f);
    if (auto w = std::get_if<BalanceWitness>(&r))
        return {fails, dump(json::parse(witness_json(target, *w))), ""};
    Indexing ix = std::get<Indexing>(r);
    ix.assignment.resize(n.edges.size());
    return {yes, dump(json::parse(indexing_json(n, ix))), ""};
}

Outcome cmd_l3(const std::string& text, const std::string& method)
{
    Net n = load_net(text);
    json j = json::object();
    std::vector<bool> verdicts;
    if (method == "indexing" || method == "all") {
        bool v = is_l3_indexing_route(n);
        j["indexing"] = v;
        verdicts.push_back(v);
    }
    if (method == "geometric" || method == "all") {
        auto g = is_l3_geometric(n);
        j["geometric"] = g.member;
        if (g.witness)
            j["witness"] = json::parse(witness_json(parr_closure(n), *g.witness));
        verdicts.push_back(g.member);
    }
    std::string note;
    if (method == "interactive" || method == "all") {
        if (n.count(LinkKind::cut) > 0) {
            if (method == "interactive")
                return {invalid, "", "the interactive method needs a cut-free net; run `stratnet normalize` first"};
            j["interactive"] = nullptr;
            note = "interactive method skipped: the net has cuts";
        } else {
            Net closed = n.conclusions.size() == 1 ? n : parr_closure(n);
            auto rep = interactive_l3_check(closed, globals.jobs);
            j["interactive"] = rep.member;
            verdicts.push_back(rep.member);
        }
    }
    bool member = verdicts.empty() || verdicts.front();
    bool unanimous = std::all_of(verdicts.begin(), verdicts.end(), [&](bool v) { return v == member; });
    j["member"] = member;
    if (!unanimous) {
        j["member"] = nullptr;
        return {disagreement, dump(j), "methods disagree"};
    }
    return {member ? yes : fails, dump(j), note};
}

Outcome cmd_normalize(const std::string& text, const std::string& strategy, bool no_axiom, const std::string& trace_path)
{
    Net n = load_net(text);
    Normalized r = no_axiom ? normalize_no_axiom(n) : normalize(n, *strategy_from_name(strategy));
    if (!trace_path.empty()) {
        std::ofstream out(trace_path, std::ios::binary);
        if (!out)
            throw std::runtime_error("cannot write " + trace_path);
        out << trace_json(r.trace, globals.pretty) << "\n";
    }
    return {yes, net_output(r.net), ""};
}

Outcome cmd_test(const std::string& text, std::optional<long> level)
{
    Net n = load_net(text);
    if (n.count(LinkKind::cut) > 0)
        return {invalid, "", "tests need a cut-free net; run `stratnet normalize` first"};
    std::string note;
    if (n.conclusions.size() != 1) {
        n = parr_closure(n);
        note = "conclusions joined by pars before testing";
    }
    std::optional<InteractiveReport> rep;
    if (level) {
        if (!is_dr_correct(n).correct)
            throw NetError("precondition violation: the net is not DR-correct");
        Formula a = n.label(n.conclusions[0]).formula;
        LevelReport lr = run_test_level(bullet_net(eta_expand(n)), a, *level);
        rep = InteractiveReport{a, lr.pass, {lr}};
    } else {
        rep = interactive_l3_check(n, globals.jobs);
    }
    std::string out = report_json(*rep, globals.pretty);
    return {rep->member ? yes : fails, out, note};
}

}

int main(int argc, char** argv)
{
    CLI::App app{"stratnet: proof nets with a paragraph modality"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("--pretty", globals.pretty, "indent JSON output");
    app.add_flag("--dot", globals.dot, "emit nets as Graphviz DOT");
    app.add_option("--jobs", globals.jobs, "worker threads for directories and test levels")->check(CLI::PositiveNumber);

    std::string file = "-";
    auto add_file = [&](CLI::App* sub) { sub->add_option("file", file, "net document, directory of documents, or - for stdin"); };

    auto* validate_cmd = app.add_subcommand("validate", "check that a net document is well formed");
    add_file(validate_cmd);

    std::string criterion = "dr";
    bool brute = false;
    auto* check_cmd = app.add_subcommand("check", "decide a correctness criterion");
    check_cmd->add_option("--criterion", criterion)->check(CLI::IsMember({"dr", "proofnet"}));
    check_cmd->add_flag("--brute", brute, "enumerate all switchings");
    add_file(check_cmd);

    std::string flavor = "plain";
    bool strong = false;
    auto* index_cmd = app.add_subcommand("index", "solve for an indexing");
    index_cmd->add_option("--flavor", flavor)->check(CLI::IsMember({"plain", "exponential"}));
    index_cmd->add_flag("--strong", strong, "require equal indexes on the conclusions");
    add_file(index_cmd);

    std::string method = "all";
    auto* l3_cmd = app.add_subcommand("l3", "decide membership in linear logic by levels");
    l3_cmd->add_option("--method", method)->check(CLI::IsMember({"indexing", "geometric", "interactive", "all"}));
    add_file(l3_cmd);

    std::string strategy = "lo", trace_path;
    bool no_axiom = false;
    auto* normalize_cmd = app.add_subcommand("normalize", "eliminate cuts");
    normalize_cmd->add_option("--strategy", strategy)->check(CLI::IsMember({"lo", "in", "level"}));
    normalize_cmd->add_flag("--no-axiom", no_axiom, "never fire axiom steps");
    normalize_cmd->add_option("--trace", trace_path, "write the rewrite trace here");
    add_file(normalize_cmd);

    std::uint64_t seed = 0;
    int size = 12;
    RandomParams params;
    auto* gen_cmd = app.add_subcommand("gen", "generate a random sequentializable net");
    gen_cmd->add_option("--seed", seed);
    gen_cmd->add_option("--size", size);
    gen_cmd->add_option("--cut-bias", params.cut_bias)->check(CLI::Range(0.0, 1.0));
    gen_cmd->add_option("--paragraph-bias", params.paragraph_bias)->check(CLI::Range(0.0, 1.0));
    gen_cmd->add_option("--exponential-bias", params.exponential_bias)->check(CLI::Range(0.0, 1.0));
    gen_cmd->add_option("--box-bias", params.box_bias)->check(CLI::Range(0.0, 1.0));

    std::optional<long> level;
    auto* test_cmd = app.add_subcommand("test", "run the interactive tests");
    test_cmd->add_option("--level", level);
    add_file(test_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? yes : invalid;
    }

    if (gen_cmd->parsed()) {
        params.target_size = size;
        std::cout << net_output(random_net(seed, params)) << "\n";
        return yes;
    }
    if (validate_cmd->parsed())
        return run_on(file, cmd_validate);
    if (check_cmd->parsed())
        return run_on(file, [&](const std::string& t) { return cmd_check(t, criterion, brute); });
    if (index_cmd->parsed())
        return run_on(file, [&](const std::string& t) { return cmd_index(t, flavor, strong); });
    if (l3_cmd->parsed())
        return run_on(file, [&](const std::string& t) { return cmd_l3(t, method); });
    if (normalize_cmd->parsed())
        return run_on(file, [&](const std::string& t) { return cmd_normalize(t, strategy, no_axiom, trace_path); });
    if (test_cmd->parsed())
        return run_on(file, [&](const std::string& t) { return cmd_test(t, level); });
    return invalid;
}

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "stratnet/net.hpp"

namespace stratnet {

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---- switchings ----

// One level of a net: the links directly inside a box (or at depth 0), with
// the boxes one level down collapsed to single nodes.
struct SwitchingLevel {
    std::optional<BoxId> box;
    UGraph graph;
    // links whose premises are switched, and for each the arcs of its premises
    std::vector<LinkId> switched;
    std::vector<std::vector<std::size_t>> premise_arcs;
    std::size_t switching_count() const;
};

std::vector<SwitchingLevel> switching_levels(const Net& n);

struct Switching {
    std::optional<BoxId> box;
    std::map<LinkId, std::size_t> choice;
};

inline constexpr std::uint64_t default_switching_budget = std::uint64_t{1} << 20;

// Calls visit for every switching of every level; stops early when visit returns false.
void enumerate_switchings(const Net& n, const std::function<bool(const Switching&)>& visit,
                          std::uint64_t budget = default_switching_budget);

struct DrWitness {
    Switching switching;
    std::vector<EdgeId> cycle;
};

struct DrResult {
    bool correct = true;
    std::optional<DrWitness> witness;
};

// Exhaustive check over all switchings; throws BudgetExceeded past the per-level budget.
DrResult is_dr_correct_brute(const Net& n, std::uint64_t budget = default_switching_budget);
// Polynomial check: a switching cycle is a cycle whose consecutive edges never are two
// premises of the same par/whynot; such cycles are detected by repeatedly deleting
// vertices that cannot lie on one. A witness is searched within the budget when incorrect.
DrResult is_dr_correct(const Net& n, std::uint64_t witness_budget = default_switching_budget);

// ---- indexings ----

enum class Flavor { plain, exponential, quasi };
std::string_view flavor_name(Flavor f);
std::optional<Flavor> flavor_from_name(std::string_view s);

struct Indexing {
    Flavor flavor = Flavor::plain;
    std::vector<long> assignment;  // per edge
};

// A step through a link from one incident edge to another.
struct PathStep {
    LinkId link;
    EdgeId from;
    EdgeId to;
};
using Path = std::vector<PathStep>;

struct BalanceWitness {
    Path cycle;
    long balance = 0;
};

// Weight of crossing a link from premise to conclusion (0 when the link does not shift).
int shift_weight(LinkKind k, Flavor f);

std::variant<Indexing, BalanceWitness> solve_indexing(const Net& n, Flavor f);
// Empty when every link constraint of the flavor holds.
std::vector<std::string> check_indexing(const Net& n, const Indexing& ix);

// Connected components of the constraint graph of a flavor, one id per edge.
std::vector<std::size_t> indexing_components(const Net& n, Flavor f);
Indexing shift_indexing(const Indexing& ix, const Net& n, const std::map<std::size_t, long>& shifts);

long balance(const Net& n, const Path& path, bool count_exponentials = false);
long signed_balance(const Net& n, const Path& path, bool count_exponentials = false);
void check_path(const Net& n, const Path& path);

bool is_strongly_indexable(const Net& n);
bool is_proof_net(const Net& n);

bool is_l3_indexing_route(const Net& n);
struct GeometricResult {
    bool member = true;
    std::optional<BalanceWitness> witness;
};
GeometricResult is_l3_geometric(const Net& n);

// Conclusions at 0, increasing by one going up through paragraph, ofcourse and whynot.
Indexing default_exponential_quasi_indexing(const Net& n);
// Same procedure on a net with cuts, anchoring both premises of every cut at 0.
Indexing cut_anchored_quasi_indexing(const Net& n);

std::string indexing_json(const Net& n, const Indexing& ix, bool pretty = false);
std::string witness_json(const Net& n, const BalanceWitness& w, bool pretty = false);

}

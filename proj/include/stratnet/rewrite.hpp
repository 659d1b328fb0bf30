#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stratnet/correctness.hpp"
#include "stratnet/net.hpp"

namespace stratnet {

enum class StepKind { axiom, unit, multiplicative, exponential, paragraph };
std::string_view step_kind_name(StepKind k);

struct Redex {
    LinkId cut;
    StepKind kind;
};

// result element name -> source element name; edges and links share one namespace
using LiftMap = std::map<std::string, std::string>;

struct StepResult {
    Net net;
    LiftMap lift;
};

struct TraceStep {
    std::string cut;
    StepKind kind;
    LiftMap lift;
};

struct RewriteTrace {
    std::vector<TraceStep> steps;
};

enum class Strategy { leftmost_outermost, innermost, by_level };
std::string_view strategy_name(Strategy s);
std::optional<Strategy> strategy_from_name(std::string_view s);

std::vector<Redex> find_redexes(const Net& n);
StepResult apply_step(const Net& n, const Redex& r);

struct Normalized {
    Net net;
    RewriteTrace trace;
};

// 10^6 unless STRATNET_BUDGET holds a positive integer.
std::uint64_t default_step_budget();

Normalized normalize(const Net& n, Strategy s = Strategy::leftmost_outermost, std::uint64_t budget = default_step_budget());
// Fires every redex except axiom steps.
Normalized normalize_no_axiom(const Net& n, std::uint64_t budget = default_step_budget());
// Re-applies a trace, locating each cut by name.
Net replay(const Net& n, const RewriteTrace& t);

// Adds a paragraph link above every ofcourse and flat link, shifting all labels.
Net shift_net(const Net& n);

// Composes the quasi-indexing of source with the lifts of the trace, giving one on target.
Indexing transport_indexing(const Indexing& q, const Net& source, const RewriteTrace& t, const Net& target);

std::string trace_json(const RewriteTrace& t, bool pretty = false);

}

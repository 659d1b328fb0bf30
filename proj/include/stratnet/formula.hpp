#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

namespace stratnet {

enum class Connective { atom, one, bottom, tensor, par, ofcourse, whynot, paragraph };

// Immutable formula tree. Negation lives only on atoms; compound duals are computed.
class Formula {
public:
    static Formula atom(std::string name, bool dual = false);
    static Formula one();
    static Formula bottom();
    static Formula tensor(Formula left, Formula right);
    static Formula par(Formula left, Formula right);
    static Formula ofcourse(Formula body);
    static Formula whynot(Formula body);
    static Formula paragraph(Formula body);

    Connective kind() const;
    const std::string& name() const;
    bool is_dual() const;
    const Formula& left() const;
    const Formula& right() const;
    const Formula& body() const { return left(); }

    bool is_atom() const { return kind() == Connective::atom; }
    bool is_binary() const { return kind() == Connective::tensor || kind() == Connective::par; }
    bool is_unary() const;
    std::size_t size() const;

    friend bool operator==(const Formula& a, const Formula& b);
    friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

private:
    friend struct FormulaFactory;
    struct Node;
    explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

Formula dual(const Formula& a);
Formula shift_formula(const Formula& a);
Formula bullet_formula(const Formula& a);

// the atom every atom is replaced by under bullet substitution
inline constexpr std::string_view bullet_atom = "X";

struct ParseError : std::runtime_error {
    ParseError(const std::string& message, std::size_t position);
    std::size_t position;
};

Formula parse_formula(std::string_view text);
std::string print_formula(const Formula& a);

// Edge labels: a plain formula or a flat-wrapped one (printed with a leading '%').
struct EdgeLabel {
    Formula formula;
    bool flat = false;

    static EdgeLabel plain(Formula f) { return {std::move(f), false}; }
    static EdgeLabel flat_of(Formula f) { return {std::move(f), true}; }

    friend bool operator==(const EdgeLabel&, const EdgeLabel&) = default;
};

EdgeLabel parse_label(std::string_view text);
std::string print_label(const EdgeLabel& label);

}

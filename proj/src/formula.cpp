#include "stratnet/formula.hpp"

#include <cctype>

namespace stratnet {

struct Formula::Node {
    Connective kind;
    std::string name;
    bool dual = false;
    Formula left{nullptr};
    Formula right{nullptr};
    std::size_t size = 1;
};

namespace {

std::size_t size_of(const Formula& f) { return f.size(); }

}

Formula Formula::atom(std::string name, bool dual)
{
    auto n = std::make_shared<Node>();
    n->kind = Connective::atom;
    n->name = std::move(name);
    n->dual = dual;
    return Formula(std::move(n));
}

Formula Formula::one()
{
    static const Formula f = [] {
        auto n = std::make_shared<Node>();
        n->kind = Connective::one;
        return Formula(std::move(n));
    }();
    return f;
}

Formula Formula::bottom()
{
    static const Formula f = [] {
        auto n = std::make_shared<Node>();
        n->kind = Connective::bottom;
        return Formula(std::move(n));
    }();
    return f;
}

static Formula make_binary(Connective k, Formula l, Formula r);
static Formula make_unary(Connective k, Formula b);

Formula Formula::tensor(Formula left, Formula right) { return make_binary(Connective::tensor, std::move(left), std::move(right)); }
Formula Formula::par(Formula left, Formula right) { return make_binary(Connective::par, std::move(left), std::move(right)); }
Formula Formula::ofcourse(Formula body) { return make_unary(Connective::ofcourse, std::move(body)); }
Formula Formula::whynot(Formula body) { return make_unary(Connective::whynot, std::move(body)); }
Formula Formula::paragraph(Formula body) { return make_unary(Connective::paragraph, std::move(body)); }

struct FormulaFactory {
    static Formula binary(Connective k, Formula l, Formula r)
    {
        auto n = std::make_shared<Formula::Node>();
        n->kind = k;
        n->size = 1 + size_of(l) + size_of(r);
        n->left = std::move(l);
        n->right = std::move(r);
        return Formula(std::move(n));
    }
    static Formula unary(Connective k, Formula b)
    {
        auto n = std::make_shared<Formula::Node>();
        n->kind = k;
        n->size = 1 + size_of(b);
        n->left = std::move(b);
        return Formula(std::move(n));
    }
};

static Formula make_binary(Connective k, Formula l, Formula r) { return FormulaFactory::binary(k, std::move(l), std::move(r)); }
static Formula make_unary(Connective k, Formula b) { return FormulaFactory::unary(k, std::move(b)); }

Connective Formula::kind() const { return node_->kind; }
const std::string& Formula::name() const { return node_->name; }
bool Formula::is_dual() const { return node_->dual; }
const Formula& Formula::left() const { return node_->left; }
const Formula& Formula::right() const { return node_->right; }
std::size_t Formula::size() const { return node_->size; }

bool Formula::is_unary() const
{
    auto k = kind();
    return k == Connective::ofcourse || k == Connective::whynot || k == Connective::paragraph;
}

bool operator==(const Formula& a, const Formula& b)
{
    if (a.node_ == b.node_)
        return true;
    if (a.kind() != b.kind() || a.size() != b.size())
        return false;
    switch (a.kind()) {
    case Connective::atom:
        return a.is_dual() == b.is_dual() && a.name() == b.name();
    case Connective::one:
    case Connective::bottom:
        return true;
    case Connective::tensor:
    case Connective::par:
        return a.left() == b.left() && a.right() == b.right();
    default:
        return a.body() == b.body();
    }
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b)
{
    if (a.node_ == b.node_)
        return std::strong_ordering::equal;
    if (auto c = a.kind() <=> b.kind(); c != 0)
        return c;
    switch (a.kind()) {
    case Connective::atom:
        if (auto c = a.name() <=> b.name(); c != 0)
            return c;
        return a.is_dual() <=> b.is_dual();
    case Connective::one:
    case Connective::bottom:
        return std::strong_ordering::equal;
    case Connective::tensor:
    case Connective::par:
        if (auto c = a.left() <=> b.left(); c != 0)
            return c;
        return a.right() <=> b.right();
    default:
        return a.body() <=> b.body();
    }
}

Formula dual(const Formula& a)
{
    switch (a.kind()) {
    case Connective::atom: return Formula::atom(a.name(), !a.is_dual());
    case Connective::one: return Formula::bottom();
    case Connective::bottom: return Formula::one();
    case Connective::tensor: return Formula::par(dual(a.left()), dual(a.right()));
    case Connective::par: return Formula::tensor(dual(a.left()), dual(a.right()));
    case Connective::ofcourse: return Formula::whynot(dual(a.body()));
    case Connective::whynot: return Formula::ofcourse(dual(a.body()));
    case Connective::paragraph: return Formula::paragraph(dual(a.body()));
    }
    return a;
}

Formula shift_formula(const Formula& a)
{
    switch (a.kind()) {
    case Connective::atom:
    case Connective::one:
    case Connective::bottom:
        return a;
    case Connective::tensor: return Formula::tensor(shift_formula(a.left()), shift_formula(a.right()));
    case Connective::par: return Formula::par(shift_formula(a.left()), shift_formula(a.right()));
    case Connective::ofcourse: return Formula::ofcourse(Formula::paragraph(shift_formula(a.body())));
    case Connective::whynot: return Formula::whynot(Formula::paragraph(shift_formula(a.body())));
    case Connective::paragraph: return Formula::paragraph(shift_formula(a.body()));
    }
    return a;
}

Formula bullet_formula(const Formula& a)
{
    switch (a.kind()) {
    case Connective::atom: {
        auto x = Formula::atom(std::string(bullet_atom), a.is_dual());
        return a.is_dual() ? Formula::par(x, x) : Formula::tensor(x, x);
    }
    case Connective::one:
    case Connective::bottom:
        return a;
    case Connective::tensor: return Formula::tensor(bullet_formula(a.left()), bullet_formula(a.right()));
    case Connective::par: return Formula::par(bullet_formula(a.left()), bullet_formula(a.right()));
    case Connective::ofcourse: return Formula::ofcourse(bullet_formula(a.body()));
    case Connective::whynot: return Formula::whynot(bullet_formula(a.body()));
    case Connective::paragraph: return Formula::paragraph(bullet_formula(a.body()));
    }
    return a;
}

ParseError::ParseError(const std::string& message, std::size_t pos)
    : std::runtime_error(message + " at position " + std::to_string(pos)), position(pos)
{
}

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Formula parse_all()
    {
        Formula f = parse();
        skip();
        if (pos_ != text_.size())
            throw ParseError("unexpected trailing input", pos_);
        return f;
    }

    Formula parse()
    {
        skip();
        if (pos_ >= text_.size())
            throw ParseError("unexpected end of formula", pos_);
        char c = text_[pos_];
        switch (c) {
        case '!': ++pos_; return Formula::ofcourse(parse());
        case '?': ++pos_; return Formula::whynot(parse());
        case '#': ++pos_; return Formula::paragraph(parse());
        case '(': return parse_binary();
        case '%': throw ParseError("flat marker is only allowed at the head of an edge label", pos_);
        default: break;
        }
        if (c == '1') {
            ++pos_;
            return Formula::one();
        }
        if (is_ident_start(c)) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && is_ident_char(text_[pos_]))
                ++pos_;
            std::string name(text_.substr(start, pos_ - start));
            if (name == "bot")
                return Formula::bottom();
            skip();
            if (pos_ < text_.size() && text_[pos_] == '^') {
                ++pos_;
                return Formula::atom(std::move(name), true);
            }
            return Formula::atom(std::move(name), false);
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

private:
    Formula parse_binary()
    {
        ++pos_;
        Formula l = parse();
        skip();
        if (pos_ >= text_.size())
            throw ParseError("expected '*' or '@'", pos_);
        char op = text_[pos_];
        if (op != '*' && op != '@')
            throw ParseError("expected '*' or '@'", pos_);
        ++pos_;
        Formula r = parse();
        skip();
        if (pos_ >= text_.size() || text_[pos_] != ')')
            throw ParseError("expected ')'", pos_);
        ++pos_;
        return op == '*' ? Formula::tensor(l, r) : Formula::par(l, r);
    }

    static bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
    static bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

    void skip()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

void print_into(const Formula& a, std::string& out)
{
    switch (a.kind()) {
    case Connective::atom:
        out += a.name();
        if (a.is_dual())
            out += '^';
        return;
    case Connective::one: out += '1'; return;
    case Connective::bottom: out += "bot"; return;
    case Connective::tensor:
    case Connective::par:
        out += '(';
        print_into(a.left(), out);
        out += a.kind() == Connective::tensor ? " * " : " @ ";
        print_into(a.right(), out);
        out += ')';
        return;
    case Connective::ofcourse: out += '!'; break;
    case Connective::whynot: out += '?'; break;
    case Connective::paragraph: out += '#'; break;
    }
    print_into(a.body(), out);
}

}

Formula parse_formula(std::string_view text) { return Parser(text).parse_all(); }

std::string print_formula(const Formula& a)
{
    std::string out;
    print_into(a, out);
    return out;
}

EdgeLabel parse_label(std::string_view text)
{
    std::size_t i = 0;
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
        ++i;
    if (i < text.size() && text[i] == '%') {
        try {
            return EdgeLabel::flat_of(parse_formula(text.substr(i + 1)));
        } catch (const ParseError& e) {
            throw ParseError(std::string("malformed flat label: ") + e.what(), e.position + i + 1);
        }
    }
    return EdgeLabel::plain(parse_formula(text));
}

std::string print_label(const EdgeLabel& label)
{
    return label.flat ? "%" + print_formula(label.formula) : print_formula(label.formula);
}

}

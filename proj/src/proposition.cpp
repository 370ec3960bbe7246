#include "belief/proposition.hpp"

#include "belief/error.hpp"

#include <cctype>
#include <utility>

namespace belief {

struct Proposition::Node {
    Kind kind = Kind::constant;
    bool value = true;
    std::string name;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
};

namespace {

int precedence(Proposition::Kind k) noexcept
{
    switch (k) {
    case Proposition::Kind::disjunction: return 1;
    case Proposition::Kind::conjunction: return 2;
    case Proposition::Kind::negation: return 3;
    default: return 4;
    }
}

bool is_ident_start(char c) noexcept
{
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_ident_char(char c) noexcept
{
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

} // namespace

Proposition::Proposition() : Proposition(truth()) {}

Proposition::Proposition(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Proposition Proposition::truth()
{
    static const auto node = std::make_shared<const Node>(Node{Kind::constant, true, {}, {}, {}});
    return Proposition(node);
}

Proposition Proposition::falsity()
{
    static const auto node = std::make_shared<const Node>(Node{Kind::constant, false, {}, {}, {}});
    return Proposition(node);
}

Proposition Proposition::atom(std::string name)
{
    return Proposition(std::make_shared<const Node>(Node{Kind::atom, false, std::move(name), {}, {}}));
}

Proposition operator!(const Proposition& p)
{
    using Node = Proposition::Node;
    return Proposition(std::make_shared<const Node>(
        Node{Proposition::Kind::negation, false, {}, p.node_, {}}));
}

Proposition operator&(const Proposition& a, const Proposition& b)
{
    using Node = Proposition::Node;
    return Proposition(std::make_shared<const Node>(
        Node{Proposition::Kind::conjunction, false, {}, a.node_, b.node_}));
}

Proposition operator|(const Proposition& a, const Proposition& b)
{
    using Node = Proposition::Node;
    return Proposition(std::make_shared<const Node>(
        Node{Proposition::Kind::disjunction, false, {}, a.node_, b.node_}));
}

Proposition::Kind Proposition::kind() const noexcept { return node_->kind; }
bool Proposition::constant_value() const noexcept { return node_->value; }
const std::string& Proposition::atom_name() const noexcept { return node_->name; }
Proposition Proposition::operand() const { return Proposition(node_->lhs); }
Proposition Proposition::left() const { return Proposition(node_->lhs); }
Proposition Proposition::right() const { return Proposition(node_->rhs); }

bool Proposition::evaluate(const std::function<bool(const std::string&)>& value_of) const
{
    switch (node_->kind) {
    case Kind::constant: return node_->value;
    case Kind::atom: return value_of(node_->name);
    case Kind::negation: return !operand().evaluate(value_of);
    case Kind::conjunction: return left().evaluate(value_of) && right().evaluate(value_of);
    case Kind::disjunction: return left().evaluate(value_of) || right().evaluate(value_of);
    }
    return false;
}

std::vector<std::string> Proposition::atoms() const
{
    std::vector<std::string> out;
    std::function<void(const Node&)> walk = [&](const Node& n) {
        if (n.kind == Kind::atom) {
            for (const auto& seen : out)
                if (seen == n.name)
                    return;
            out.push_back(n.name);
        }
        if (n.lhs)
            walk(*n.lhs);
        if (n.rhs)
            walk(*n.rhs);
    };
    walk(*node_);
    return out;
}

std::string Proposition::to_string() const
{
    std::string out;
    std::function<void(const Node&)> emit = [&](const Node& n) {
        auto child = [&](const Node& c, bool parens) {
            if (parens)
                out += '(';
            emit(c);
            if (parens)
                out += ')';
        };
        const int p = precedence(n.kind);
        switch (n.kind) {
        case Kind::constant: out += n.value ? "true" : "false"; break;
        case Kind::atom: out += n.name; break;
        case Kind::negation:
            out += '!';
            child(*n.lhs, precedence(n.lhs->kind) < p);
            break;
        case Kind::conjunction:
        case Kind::disjunction:
            child(*n.lhs, precedence(n.lhs->kind) < p);
            out += n.kind == Kind::conjunction ? " & " : " | ";
            child(*n.rhs, precedence(n.rhs->kind) <= p);
            break;
        }
    };
    emit(*node_);
    return out;
}

bool Proposition::structurally_equal(const Proposition& other) const noexcept
{
    std::function<bool(const Node*, const Node*)> same = [&](const Node* a, const Node* b) {
        if (a == b)
            return true;
        if (!a || !b || a->kind != b->kind)
            return false;
        if (a->kind == Kind::constant)
            return a->value == b->value;
        if (a->kind == Kind::atom)
            return a->name == b->name;
        return same(a->lhs.get(), b->lhs.get()) && same(a->rhs.get(), b->rhs.get());
    };
    return same(node_.get(), other.node_.get());
}

// Recursive descent over:  or := and ('|' and)* ; and := unary ('&' unary)* ;
// unary := '!' unary | primary ; primary := ident | 'true' | 'false' | '(' or ')'
namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Proposition parse_all()
    {
        Proposition p = parse_or();
        skip_space();
        if (pos_ != text_.size())
            fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& why) const
    {
        throw Error(ErrorCode::parse_error, "proposition \"" + std::string(text_) +
                                                "\": " + why + " at offset " +
                                                std::to_string(pos_));
    }

    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool accept(char c)
    {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Proposition parse_or()
    {
        Proposition p = parse_and();
        while (accept('|'))
            p = p | parse_and();
        return p;
    }

    Proposition parse_and()
    {
        Proposition p = parse_unary();
        while (accept('&'))
            p = p & parse_unary();
        return p;
    }

    Proposition parse_unary()
    {
        if (accept('!'))
            return !parse_unary();
        return parse_primary();
    }

    Proposition parse_primary()
    {
        if (accept('(')) {
            Proposition p = parse_or();
            if (!accept(')'))
                fail("expected ')'");
            return p;
        }
        skip_space();
        if (pos_ >= text_.size())
            fail("unexpected end of input");
        if (!is_ident_start(text_[pos_]))
            fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
        const std::size_t start = pos_;
        while (pos_ < text_.size() && is_ident_char(text_[pos_]))
            ++pos_;
        const std::string word(text_.substr(start, pos_ - start));
        if (word == "true")
            return Proposition::truth();
        if (word == "false")
            return Proposition::falsity();
        return Proposition::atom(word);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

Proposition Proposition::parse(std::string_view text) { return Parser(text).parse_all(); }

} // namespace belief

#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace belief {

// Immutable boolean formula over named atoms.  Copies share structure.
//
// Text form: identifiers are atoms, `true`/`false` are constants, and the
// operators are `!`, `&`, `|` with precedence ! > & > |, binary operators
// left-associative, parentheses for grouping.
class Proposition {
public:
    enum class Kind { constant, atom, negation, conjunction, disjunction };

    // Default-constructed proposition is TRUE.
    Proposition();

    static Proposition truth();
    static Proposition falsity();
    static Proposition atom(std::string name);
    // Throws belief::Error (parse_error) on malformed text.
    static Proposition parse(std::string_view text);

    friend Proposition operator!(const Proposition& p);
    friend Proposition operator&(const Proposition& a, const Proposition& b);
    friend Proposition operator|(const Proposition& a, const Proposition& b);

    Kind kind() const noexcept;
    bool constant_value() const noexcept;       // kind() == constant
    const std::string& atom_name() const noexcept; // kind() == atom
    Proposition operand() const;                // negation
    Proposition left() const;                   // conjunction / disjunction
    Proposition right() const;

    // Truth value given a valuation for each atom name.  Direct recursive
    // evaluation; used where an implementation-independent reading is wanted.
    bool evaluate(const std::function<bool(const std::string&)>& value_of) const;

    // Distinct atom names in first-occurrence order.
    std::vector<std::string> atoms() const;

    // Canonical text; parse(to_string()) reproduces the same tree.
    std::string to_string() const;

    // Same tree shape and labels (not logical equivalence).
    bool structurally_equal(const Proposition& other) const noexcept;

private:
    struct Node;
    explicit Proposition(std::shared_ptr<const Node> node);

    std::shared_ptr<const Node> node_;
};

} // namespace belief

#pragma once

#include <memory>
#include <string>

namespace qsx {

// Parsed arithmetic expression in one variable x. Supports + - * / ^,
// parentheses, numeric literals, constants pi and e, and the unary
// functions exp, cos, sin, sqrt.
class Expression {
public:
    // Throws ParseError (offset + expected-token set) on malformed input.
    static Expression parse(const std::string& src);

    double evaluate(double x) const;
    const std::string& source() const { return src_; }

    struct Node;  // exposed for the parser implementation

private:
    Expression(std::shared_ptr<const Node> root, std::string src);

    std::shared_ptr<const Node> root_;
    std::string src_;
};

}  // namespace qsx

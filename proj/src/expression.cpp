#include "qsx/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <utility>
#include <vector>

#include "qsx/common.hpp"

namespace qsx {

struct Expression::Node {
    enum class Kind { Number, Variable, Add, Sub, Mul, Div, Pow, Neg, Exp, Cos, Sin, Sqrt };

    Kind kind;
    double value = 0.0;
    std::shared_ptr<const Node> lhs, rhs;

    double eval(double x) const {
        switch (kind) {
            case Kind::Number:   return value;
            case Kind::Variable: return x;
            case Kind::Add:      return lhs->eval(x) + rhs->eval(x);
            case Kind::Sub:      return lhs->eval(x) - rhs->eval(x);
            case Kind::Mul:      return lhs->eval(x) * rhs->eval(x);
            case Kind::Div:      return lhs->eval(x) / rhs->eval(x);
            case Kind::Pow:      return std::pow(lhs->eval(x), rhs->eval(x));
            case Kind::Neg:      return -lhs->eval(x);
            case Kind::Exp:      return std::exp(lhs->eval(x));
            case Kind::Cos:      return std::cos(lhs->eval(x));
            case Kind::Sin:      return std::sin(lhs->eval(x));
            case Kind::Sqrt:     return std::sqrt(lhs->eval(x));
        }
        return 0.0;
    }
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Kind = Expression::Node::Kind;

NodePtr make_node(Kind k, NodePtr lhs = nullptr, NodePtr rhs = nullptr, double v = 0.0) {
    auto n = std::make_shared<Expression::Node>();
    n->kind = k;
    n->value = v;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

// Precedence-climbing parser. Binding strengths: + - (1), * / (2), ^ (3,
// right-associative). Unary minus binds between * and ^ so that -x^2
// parses as -(x^2).
class Parser {
public:
    explicit Parser(const std::string& src) : src_(src) {}

    NodePtr run() {
        NodePtr root = parse_expr(1);
        skip_space();
        if (pos_ != src_.size()) throw ParseError(pos_, "operator or end of input");
        return root;
    }

private:
    static constexpr int kPowPrec = 3;

    const std::string& src_;
    std::size_t pos_ = 0;

    void skip_space() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    char peek() {
        skip_space();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    NodePtr parse_expr(int min_prec) {
        NodePtr lhs = parse_unary();
        for (;;) {
            char op = peek();
            int prec = op == '+' || op == '-' ? 1
                     : op == '*' || op == '/' ? 2
                     : op == '^'              ? kPowPrec
                                              : 0;
            if (prec == 0 || prec < min_prec) break;
            ++pos_;
            NodePtr rhs = parse_expr(op == '^' ? prec : prec + 1);
            Kind k = op == '+' ? Kind::Add
                   : op == '-' ? Kind::Sub
                   : op == '*' ? Kind::Mul
                   : op == '/' ? Kind::Div
                               : Kind::Pow;
            lhs = make_node(k, std::move(lhs), std::move(rhs));
        }
        return lhs;
    }

    NodePtr parse_unary() {
        char c = peek();
        if (c == '-') {
            ++pos_;
            return make_node(Kind::Neg, parse_expr(kPowPrec));
        }
        if (c == '+') {
            ++pos_;
            return parse_expr(kPowPrec);
        }
        return parse_primary();
    }

    NodePtr parse_primary() {
        char c = peek();
        if (c == '\0') throw ParseError(pos_, "operand");
        if (c == '(') {
            ++pos_;
            NodePtr inner = parse_expr(1);
            expect(')');
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
        throw ParseError(pos_, "operand");
    }

    void expect(char c) {
        if (peek() != c) throw ParseError(pos_, std::string("'") + c + "'");
        ++pos_;
    }

    NodePtr parse_number() {
        const char* begin = src_.c_str() + pos_;
        char* end = nullptr;
        double v = std::strtod(begin, &end);
        if (end == begin || !std::isfinite(v)) throw ParseError(pos_, "number");
        pos_ += static_cast<std::size_t>(end - begin);
        return make_node(Kind::Number, nullptr, nullptr, v);
    }

    NodePtr parse_identifier() {
        std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
            ++pos_;
        std::string name = src_.substr(start, pos_ - start);

        if (name == "x") return make_node(Kind::Variable);
        if (name == "pi") return make_node(Kind::Number, nullptr, nullptr, M_PI);
        if (name == "e") return make_node(Kind::Number, nullptr, nullptr, M_E);

        Kind fk;
        if (name == "exp") fk = Kind::Exp;
        else if (name == "cos") fk = Kind::Cos;
        else if (name == "sin") fk = Kind::Sin;
        else if (name == "sqrt") fk = Kind::Sqrt;
        else throw ParseError(start, "one of x, pi, e, exp, cos, sin, sqrt");

        expect('(');
        NodePtr arg = parse_expr(1);
        expect(')');
        return make_node(fk, std::move(arg));
    }
};

}  // namespace

Expression::Expression(std::shared_ptr<const Node> root, std::string src)
    : root_(std::move(root)), src_(std::move(src)) {}

Expression Expression::parse(const std::string& src) {
    Parser parser(src);
    return Expression(parser.run(), src);
}

double Expression::evaluate(double x) const { return root_->eval(x); }

}  // namespace qsx

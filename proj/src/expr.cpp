#include "apv/expr.hpp"

#include <cctype>
#include <cmath>
#include <sstream>
#include <utility>

namespace apv::expr {

enum class Kind { Constant, Variable, Parameter, Add, Sub, Mul, Div, Pow, Exp, Ln, Sin, Cos };

class Node {
  public:
    Kind kind;
    double value = 0.0;      // Constant
    std::string name;        // Parameter
    long exponent = 0;       // Pow
    NodePtr lhs;             // binary ops, function argument, Pow base
    NodePtr rhs;             // binary ops
};

namespace {

NodePtr constant(double v) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Constant;
    node->value = v;
    return node;
}

NodePtr variable() {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Variable;
    return node;
}

NodePtr parameter(std::string name) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Parameter;
    node->name = std::move(name);
    return node;
}

bool is_constant(const NodePtr& node, double v) {
    return node->kind == Kind::Constant && node->value == v;
}

NodePtr binary(Kind kind, NodePtr lhs, NodePtr rhs) {
    // Constant folding only; no structural simplification beyond the obvious
    // identities with 0 and 1 that keep derivative trees readable.
    if (lhs->kind == Kind::Constant && rhs->kind == Kind::Constant) {
        double folded = 0.0;
        bool have = true;
        switch (kind) {
            case Kind::Add: folded = lhs->value + rhs->value; break;
            case Kind::Sub: folded = lhs->value - rhs->value; break;
            case Kind::Mul: folded = lhs->value * rhs->value; break;
            case Kind::Div:
                have = rhs->value != 0.0;
                if (have) folded = lhs->value / rhs->value;
                break;
            default: have = false; break;
        }
        if (have && std::isfinite(folded)) return constant(folded);
    }
    if (kind == Kind::Add) {
        if (is_constant(lhs, 0.0)) return rhs;
        if (is_constant(rhs, 0.0)) return lhs;
    }
    if (kind == Kind::Sub && is_constant(rhs, 0.0)) return lhs;
    if (kind == Kind::Mul) {
        if (is_constant(lhs, 0.0) || is_constant(rhs, 0.0)) return constant(0.0);
        if (is_constant(lhs, 1.0)) return rhs;
        if (is_constant(rhs, 1.0)) return lhs;
    }
    if (kind == Kind::Div && is_constant(lhs, 0.0)) return constant(0.0);
    if (kind == Kind::Div && is_constant(rhs, 1.0)) return lhs;

    auto node = std::make_shared<Node>();
    node->kind = kind;
    node->lhs = std::move(lhs);
    node->rhs = std::move(rhs);
    return node;
}

NodePtr power(NodePtr base, long exponent) {
    if (exponent == 0) return constant(1.0);
    if (exponent == 1) return base;
    if (base->kind == Kind::Constant && !(base->value == 0.0 && exponent < 0)) {
        const double folded = std::pow(base->value, static_cast<double>(exponent));
        if (std::isfinite(folded)) return constant(folded);
    }
    auto node = std::make_shared<Node>();
    node->kind = Kind::Pow;
    node->exponent = exponent;
    node->lhs = std::move(base);
    return node;
}

NodePtr function(Kind kind, NodePtr arg) {
    if (arg->kind == Kind::Constant) {
        double folded = 0.0;
        bool have = true;
        switch (kind) {
            case Kind::Exp: folded = std::exp(arg->value); break;
            case Kind::Sin: folded = std::sin(arg->value); break;
            case Kind::Cos: folded = std::cos(arg->value); break;
            case Kind::Ln:
                have = arg->value > 0.0;
                if (have) folded = std::log(arg->value);
                break;
            default: have = false; break;
        }
        if (have && std::isfinite(folded)) return constant(folded);
    }
    auto node = std::make_shared<Node>();
    node->kind = kind;
    node->lhs = std::move(arg);
    return node;
}

double eval_node(const Node& node, double x, const std::map<std::string, double>& params) {
    switch (node.kind) {
        case Kind::Constant: return node.value;
        case Kind::Variable: return x;
        case Kind::Parameter: {
            auto it = params.find(node.name);
            if (it == params.end()) {
                throw InvalidArgumentError("unbound parameter '" + node.name + "'");
            }
            return it->second;
        }
        case Kind::Add: return eval_node(*node.lhs, x, params) + eval_node(*node.rhs, x, params);
        case Kind::Sub: return eval_node(*node.lhs, x, params) - eval_node(*node.rhs, x, params);
        case Kind::Mul: return eval_node(*node.lhs, x, params) * eval_node(*node.rhs, x, params);
        case Kind::Div: {
            const double num = eval_node(*node.lhs, x, params);
            const double den = eval_node(*node.rhs, x, params);
            if (den == 0.0) throw EvaluationError("division by zero", x);
            return num / den;
        }
        case Kind::Pow: {
            const double base = eval_node(*node.lhs, x, params);
            if (base == 0.0 && node.exponent < 0) {
                throw EvaluationError("zero raised to a negative power", x);
            }
            return std::pow(base, static_cast<double>(node.exponent));
        }
        case Kind::Exp: return std::exp(eval_node(*node.lhs, x, params));
        case Kind::Ln: {
            const double arg = eval_node(*node.lhs, x, params);
            if (!(arg > 0.0)) throw EvaluationError("ln of a non-positive value", x);
            return std::log(arg);
        }
        case Kind::Sin: return std::sin(eval_node(*node.lhs, x, params));
        case Kind::Cos: return std::cos(eval_node(*node.lhs, x, params));
    }
    throw Error("unreachable expression node");
}

NodePtr derivative_node(const NodePtr& node) {
    switch (node->kind) {
        case Kind::Constant:
        case Kind::Parameter: return constant(0.0);
        case Kind::Variable: return constant(1.0);
        case Kind::Add: return binary(Kind::Add, derivative_node(node->lhs), derivative_node(node->rhs));
        case Kind::Sub: return binary(Kind::Sub, derivative_node(node->lhs), derivative_node(node->rhs));
        case Kind::Mul:
            return binary(Kind::Add,
                          binary(Kind::Mul, derivative_node(node->lhs), node->rhs),
                          binary(Kind::Mul, node->lhs, derivative_node(node->rhs)));
        case Kind::Div:
            // (u/v)' = (u'v - uv') / v^2
            return binary(Kind::Div,
                          binary(Kind::Sub,
                                 binary(Kind::Mul, derivative_node(node->lhs), node->rhs),
                                 binary(Kind::Mul, node->lhs, derivative_node(node->rhs))),
                          power(node->rhs, 2));
        case Kind::Pow:
            // (u^k)' = k u^(k-1) u'
            return binary(Kind::Mul,
                          binary(Kind::Mul, constant(static_cast<double>(node->exponent)),
                                 power(node->lhs, node->exponent - 1)),
                          derivative_node(node->lhs));
        case Kind::Exp:
            return binary(Kind::Mul, function(Kind::Exp, node->lhs), derivative_node(node->lhs));
        case Kind::Ln:
            return binary(Kind::Div, derivative_node(node->lhs), node->lhs);
        case Kind::Sin:
            return binary(Kind::Mul, function(Kind::Cos, node->lhs), derivative_node(node->lhs));
        case Kind::Cos:
            return binary(Kind::Mul,
                          binary(Kind::Sub, constant(0.0), function(Kind::Sin, node->lhs)),
                          derivative_node(node->lhs));
    }
    throw Error("unreachable expression node");
}

void print_node(const Node& node, std::ostream& os) {
    switch (node.kind) {
        case Kind::Constant: {
            if (node.value == 0.0) {
                os << '0';
                return;
            }
            std::ostringstream tmp;
            tmp.precision(17);
            if (node.value < 0.0) {
                tmp << -node.value;
                os << "(0 - " << tmp.str() << ')';
            } else {
                tmp << node.value;
                os << tmp.str();
            }
            return;
        }
        case Kind::Variable: os << 'x'; return;
        case Kind::Parameter: os << node.name; return;
        case Kind::Add:
        case Kind::Sub:
        case Kind::Mul:
        case Kind::Div: {
            const char op = node.kind == Kind::Add   ? '+'
                            : node.kind == Kind::Sub ? '-'
                            : node.kind == Kind::Mul ? '*'
                                                     : '/';
            os << '(';
            print_node(*node.lhs, os);
            os << ' ' << op << ' ';
            print_node(*node.rhs, os);
            os << ')';
            return;
        }
        case Kind::Pow:
            os << '(';
            print_node(*node.lhs, os);
            os << ')' << '^' << node.exponent;
            return;
        case Kind::Exp:
        case Kind::Ln:
        case Kind::Sin:
        case Kind::Cos: {
            os << (node.kind == Kind::Exp  ? "exp"
                   : node.kind == Kind::Ln ? "ln"
                   : node.kind == Kind::Sin ? "sin"
                                            : "cos")
               << '(';
            print_node(*node.lhs, os);
            os << ')';
            return;
        }
    }
}

void collect_parameters(const Node& node, std::set<std::string>& out) {
    if (node.kind == Kind::Parameter) out.insert(node.name);
    if (node.lhs) collect_parameters(*node.lhs, out);
    if (node.rhs) collect_parameters(*node.rhs, out);
}

class Parser {
  public:
    Parser(std::string_view text, const std::set<std::string>& parameter_names)
        : text_(text), params_(parameter_names) {}

    NodePtr run() {
        if (text_.empty()) throw SyntaxError("empty expression", 0);
        NodePtr root = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) throw SyntaxError("unexpected trailing input", pos_);
        return root;
    }

  private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool consume(char ch) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == ch) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    NodePtr parse_expr() {
        NodePtr acc = parse_term();
        for (;;) {
            if (consume('+')) {
                acc = binary(Kind::Add, acc, parse_term());
            } else if (consume('-')) {
                acc = binary(Kind::Sub, acc, parse_term());
            } else {
                return acc;
            }
        }
    }

    NodePtr parse_term() {
        NodePtr acc = parse_factor();
        for (;;) {
            if (consume('*')) {
                acc = binary(Kind::Mul, acc, parse_factor());
            } else if (consume('/')) {
                acc = binary(Kind::Div, acc, parse_factor());
            } else {
                return acc;
            }
        }
    }

    NodePtr parse_factor() {
        NodePtr base = parse_base();
        if (consume('^')) return power(std::move(base), parse_integer());
        return base;
    }

    long parse_integer() {
        skip_ws();
        std::size_t start = pos_;
        bool negative = false;
        if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
            negative = text_[pos_] == '-';
            ++pos_;
        }
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            throw SyntaxError("expected integer exponent", pos_);
        }
        long value = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            value = value * 10 + (text_[pos_] - '0');
            if (value > 1000000) throw SyntaxError("exponent too large", start);
            ++pos_;
        }
        return negative ? -value : value;
    }

    NodePtr parse_base() {
        skip_ws();
        if (pos_ >= text_.size()) throw SyntaxError("unexpected end of input", pos_);
        const char ch = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') return parse_number();
        if (ch == '(') {
            ++pos_;
            NodePtr inner = parse_expr();
            if (!consume(')')) throw SyntaxError("expected ')'", pos_);
            return inner;
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') return parse_identifier();
        throw SyntaxError(std::string("unexpected character '") + ch + "'", pos_);
    }

    NodePtr parse_number() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t mark = pos_;
            ++pos_;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
            if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            } else {
                pos_ = mark;  // the e belongs to something else
            }
        }
        const std::string token(text_.substr(start, pos_ - start));
        if (token == ".") throw SyntaxError("malformed number", start);
        try {
            return constant(std::stod(token));
        } catch (const std::exception&) {
            throw SyntaxError("malformed number '" + token + "'", start);
        }
    }

    NodePtr parse_identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
        }
        const std::string name(text_.substr(start, pos_ - start));
        const bool is_function = name == "exp" || name == "ln" || name == "sin" || name == "cos";
        if (is_function) {
            if (!consume('(')) throw SyntaxError("expected '(' after function '" + name + "'", pos_);
            NodePtr arg = parse_expr();
            if (!consume(')')) throw SyntaxError("expected ')'", pos_);
            const Kind kind = name == "exp"  ? Kind::Exp
                              : name == "ln" ? Kind::Ln
                              : name == "sin" ? Kind::Sin
                                              : Kind::Cos;
            return function(kind, std::move(arg));
        }
        if (name == "x") return variable();
        if (params_.count(name) != 0) return parameter(name);
        throw SyntaxError("unknown identifier '" + name + "'", start);
    }

    std::string_view text_;
    const std::set<std::string>& params_;
    std::size_t pos_ = 0;
};

class ExprIntegrandImpl final : public Integrand::Impl {
  public:
    explicit ExprIntegrandImpl(NodePtr root) : root_(std::move(root)) {}

    double eval(double x) const override {
        static const std::map<std::string, double> kNoParams;
        return eval_node(*root_, x, kNoParams);
    }

    std::shared_ptr<const Impl> differentiate() const override {
        return std::make_shared<ExprIntegrandImpl>(derivative_node(root_));
    }

    int max_order() const override { return kUnboundedOrder; }

  private:
    NodePtr root_;
};

NodePtr bind_parameters(const NodePtr& node, const std::map<std::string, double>& params) {
    switch (node->kind) {
        case Kind::Constant:
        case Kind::Variable: return node;
        case Kind::Parameter: {
            auto it = params.find(node->name);
            if (it == params.end()) {
                throw InvalidArgumentError("unbound parameter '" + node->name + "'");
            }
            return constant(it->second);
        }
        case Kind::Add:
        case Kind::Sub:
        case Kind::Mul:
        case Kind::Div:
            return binary(node->kind, bind_parameters(node->lhs, params),
                          bind_parameters(node->rhs, params));
        case Kind::Pow: return power(bind_parameters(node->lhs, params), node->exponent);
        case Kind::Exp:
        case Kind::Ln:
        case Kind::Sin:
        case Kind::Cos: return function(node->kind, bind_parameters(node->lhs, params));
    }
    throw Error("unreachable expression node");
}

}  // namespace

ExprAst::ExprAst(NodePtr root) : root_(std::move(root)) {
    if (!root_) throw InvalidArgumentError("expression tree must not be null");
    collect_parameters(*root_, params_);
}

double ExprAst::evaluate(double x, const std::map<std::string, double>& params) const {
    return eval_node(*root_, x, params);
}

ExprAst ExprAst::differentiate() const {
    return ExprAst(derivative_node(root_));
}

std::string ExprAst::to_string() const {
    std::ostringstream os;
    print_node(*root_, os);
    return os.str();
}

ExprAst parse(std::string_view text, const std::set<std::string>& parameter_names) {
    return ExprAst(Parser(text, parameter_names).run());
}

Integrand to_integrand(const ExprAst& ast, const std::map<std::string, double>& params) {
    return Integrand(std::make_shared<ExprIntegrandImpl>(bind_parameters(ast.root(), params)));
}

}  // namespace apv::expr

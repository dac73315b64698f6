#include "oulevy/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "oulevy/errors.hpp"

namespace oulevy {

struct Expr::Node {
    enum class Kind { constant, variable, add, sub, mul, div, pow, neg, exp_fn };
    Kind kind;
    double value = 0.0;
    std::shared_ptr<const Node> lhs, rhs;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

NodePtr make(Expr::Node::Kind k, NodePtr l = nullptr, NodePtr r = nullptr) {
    auto n = std::make_shared<Expr::Node>();
    n->kind = k;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
}

class Parser {
  public:
    explicit Parser(const std::string& s) : s_(s) {}

    NodePtr run() {
        NodePtr e = expr();
        skip_ws();
        if (pos_ != s_.size())
            fail("trailing characters");
        return e;
    }

  private:
    const std::string& s_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw ConfigError("expression \"" + s_ + "\": " + what + " at offset " +
                          std::to_string(pos_));
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    NodePtr expr() {
        NodePtr e = term();
        for (;;) {
            if (eat('+')) e = make(Expr::Node::Kind::add, e, term());
            else if (eat('-')) e = make(Expr::Node::Kind::sub, e, term());
            else return e;
        }
    }

    NodePtr term() {
        NodePtr e = unary();
        for (;;) {
            if (eat('*')) e = make(Expr::Node::Kind::mul, e, unary());
            else if (eat('/')) e = make(Expr::Node::Kind::div, e, unary());
            else return e;
        }
    }

    NodePtr unary() {
        if (eat('-')) return make(Expr::Node::Kind::neg, unary());
        eat('+');
        return power();
    }

    NodePtr power() {
        NodePtr base = atom();
        if (eat('^'))
            return make(Expr::Node::Kind::pow, base, unary());  // right-assoc, n^-8 allowed
        return base;
    }

    NodePtr atom() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end");
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr e = expr();
            if (!eat(')')) fail("missing ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            char* end = nullptr;
            const double v = std::strtod(s_.c_str() + pos_, &end);
            if (end == s_.c_str() + pos_) fail("bad number");
            pos_ = static_cast<size_t>(end - s_.c_str());
            auto n = std::make_shared<Expr::Node>();
            n->kind = Expr::Node::Kind::constant;
            n->value = v;
            return n;
        }
        if (s_.compare(pos_, 3, "exp") == 0) {
            pos_ += 3;
            if (!eat('(')) fail("exp expects '('");
            NodePtr e = expr();
            if (!eat(')')) fail("missing ')'");
            return make(Expr::Node::Kind::exp_fn, e);
        }
        if (c == 'n') {
            ++pos_;
            return make(Expr::Node::Kind::variable);
        }
        fail("unexpected character");
    }
};

double eval_node(const Expr::Node& node, double n) {
    using K = Expr::Node::Kind;
    switch (node.kind) {
        case K::constant: return node.value;
        case K::variable: return n;
        case K::add: return eval_node(*node.lhs, n) + eval_node(*node.rhs, n);
        case K::sub: return eval_node(*node.lhs, n) - eval_node(*node.rhs, n);
        case K::mul: return eval_node(*node.lhs, n) * eval_node(*node.rhs, n);
        case K::div: return eval_node(*node.lhs, n) / eval_node(*node.rhs, n);
        case K::pow: return std::pow(eval_node(*node.lhs, n), eval_node(*node.rhs, n));
        case K::neg: return -eval_node(*node.lhs, n);
        case K::exp_fn: return std::exp(eval_node(*node.lhs, n));
    }
    return 0.0;
}

}  // namespace

Expr Expr::parse(const std::string& text) {
    Expr e;
    e.node_ = Parser(text).run();
    e.text_ = text;
    return e;
}

double Expr::eval(double n) const {
    if (!node_) throw InputError("eval on empty expression");
    return eval_node(*node_, n);
}

}  // namespace oulevy

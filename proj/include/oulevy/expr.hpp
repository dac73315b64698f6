#pragma once

#include <memory>
#include <string>

namespace oulevy {

// Closed-form sequences in the mode index n, e.g. "1+n^2", "exp(-n^2/4)/n".
// Grammar: + - * / ^ (right-assoc), unary minus, exp(...), parentheses,
// decimal literals, and the single variable n.
class Expr {
  public:
    Expr() = default;
    static Expr parse(const std::string& text);

    double eval(double n) const;
    const std::string& text() const { return text_; }
    bool empty() const { return node_ == nullptr; }

    struct Node;

  private:
    std::shared_ptr<const Node> node_;
    std::string text_;
};

}  // namespace oulevy

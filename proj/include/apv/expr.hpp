#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>

#include "apv/integrand.hpp"

namespace apv::expr {

/// Immutable expression tree over one free variable `x`, named parameters and
/// the operators + - * / ^(integer) with exp, ln, sin, cos.
class Node;
using NodePtr = std::shared_ptr<const Node>;

class ExprAst {
  public:
    explicit ExprAst(NodePtr root);

    double evaluate(double x, const std::map<std::string, double>& params = {}) const;

    /// Exact symbolic d/dx. Total on the grammar; folds constants but does not
    /// otherwise simplify.
    ExprAst differentiate() const;

    /// Parseable text form of the tree.
    std::string to_string() const;

    /// Parameter names that occur in the tree.
    const std::set<std::string>& parameters() const { return params_; }

    const NodePtr& root() const { return root_; }

  private:
    NodePtr root_;
    std::set<std::string> params_;
};

/// Recursive-descent parse. Identifiers other than `x` and the function names
/// must appear in parameter_names; anything else is a syntax error carrying a
/// 0-based character position.
ExprAst parse(std::string_view text, const std::set<std::string>& parameter_names = {});

/// Bind all parameters and wrap the tree as an Integrand whose derivatives are
/// produced symbolically.
Integrand to_integrand(const ExprAst& ast, const std::map<std::string, double>& params = {});

}  // namespace apv::expr

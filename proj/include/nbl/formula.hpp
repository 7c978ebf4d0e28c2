#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "nbl/errors.hpp"

namespace nbl {

// Immutable modal formula over atoms, the Boolean connectives, and the
// modalities nabla (ignorant-whether), bullet (ignorant-of / unknown truth)
// and box (knows). The surface operators delta, circ and diamond are
// desugared by the parser and never appear as nodes. Meta nodes are schema
// metavariables (`?phi` in scripts); they occur only in axiom patterns and
// schema-level derivations.
class Formula {
 public:
  enum class Kind : std::uint8_t {
    Atom,
    Top,
    Bot,
    Not,
    And,
    Or,
    Imp,
    Iff,
    Nabla,
    Bullet,
    Box,
    Meta,
  };

  Formula() : Formula(top()) {}

  static Formula atom(std::string name);
  static Formula meta(std::string name);
  static Formula top();
  static Formula bot();
  static Formula negation(Formula f);
  static Formula conj(Formula l, Formula r);
  static Formula disj(Formula l, Formula r);
  static Formula imp(Formula l, Formula r);
  static Formula iff(Formula l, Formula r);
  static Formula nabla(Formula f);
  static Formula bullet(Formula f);
  static Formula box(Formula f);

  // Defined operators, unfolded on construction.
  static Formula delta(Formula f) { return negation(nabla(std::move(f))); }
  static Formula circ(Formula f) { return negation(bullet(std::move(f))); }
  static Formula diamond(Formula f) {
    return negation(box(negation(std::move(f))));
  }

  Kind kind() const { return node_->kind; }
  // Atom or metavariable name; empty otherwise.
  const std::string& name() const { return node_->name; }
  // Left child (or only child for unary nodes).
  Formula lhs() const { return Formula(node_->lhs); }
  Formula rhs() const { return Formula(node_->rhs); }

  bool is_modal() const {
    return kind() == Kind::Nabla || kind() == Kind::Bullet ||
           kind() == Kind::Box;
  }

  bool operator==(const Formula& other) const;
  bool operator!=(const Formula& other) const { return !(*this == other); }

  // Concrete syntax with minimal parentheses; parse(render(f)) == f.
  std::string render() const;

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::shared_ptr<const Node> lhs, rhs;
  };

  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  std::shared_ptr<const Node> node_;
};

// Parses the grammar
//   form  := iff
//   iff   := imp ("<->" imp)*            (right associative)
//   imp   := or ("->" imp)?
//   or    := and ("|" and)*
//   and   := unary ("&" unary)*
//   unary := ("~"|"nabla"|"bullet"|"box"|"diamond"|"delta"|"circ") unary
//          | atom | "?" atom | "true" | "false" | "(" form ")"
// Unicode aliases for the modal keywords are accepted. Throws SyntaxError.
Formula parse(const std::string& text);

// Unfolds delta/circ/diamond into the primitive connectives. The parser
// already does this, so on parser output the function is the identity; it
// exists to normalize hand-built trees and is idempotent by construction.
Formula expand_defined(const Formula& f);

// Atom names occurring in f, sorted. Metavariables are not atoms.
std::vector<std::string> atoms(const Formula& f);

// Metavariable names occurring in f, sorted.
std::vector<std::string> metavars(const Formula& f);

// Maximum nesting depth of nabla/bullet/box.
int modal_depth(const Formula& f);

// Replaces metavariables by formulas; unmapped metavariables are left alone.
Formula substitute(const Formula& f,
                   const std::unordered_map<std::string, Formula>& subst);

inline std::string render(const Formula& f) { return f.render(); }

}  // namespace nbl

#include "nbl/formula.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace nbl {

namespace {

bool valid_atom_name(const std::string& s) {
  if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s) {
    if (!std::islower(static_cast<unsigned char>(c)) &&
        !std::isdigit(static_cast<unsigned char>(c)) && c != '_')
      return false;
  }
  return true;
}

}  // namespace

Formula Formula::atom(std::string name) {
  if (!valid_atom_name(name))
    throw SyntaxError("invalid atom name '" + name + "'", 1, 1);
  return Formula(std::make_shared<Node>(Node{Kind::Atom, std::move(name), nullptr, nullptr}));
}

Formula Formula::meta(std::string name) {
  if (!valid_atom_name(name))
    throw SyntaxError("invalid metavariable name '" + name + "'", 1, 1);
  return Formula(std::make_shared<Node>(Node{Kind::Meta, std::move(name), nullptr, nullptr}));
}

Formula Formula::top() {
  static const Formula t(std::make_shared<Node>(Node{Kind::Top, "", nullptr, nullptr}));
  return t;
}

Formula Formula::bot() {
  static const Formula b(std::make_shared<Node>(Node{Kind::Bot, "", nullptr, nullptr}));
  return b;
}

Formula Formula::negation(Formula f) {
  return Formula(std::make_shared<Node>(Node{Kind::Not, "", f.node_, nullptr}));
}

Formula Formula::conj(Formula l, Formula r) {
  return Formula(std::make_shared<Node>(Node{Kind::And, "", l.node_, r.node_}));
}

Formula Formula::disj(Formula l, Formula r) {
  return Formula(std::make_shared<Node>(Node{Kind::Or, "", l.node_, r.node_}));
}

Formula Formula::imp(Formula l, Formula r) {
  return Formula(std::make_shared<Node>(Node{Kind::Imp, "", l.node_, r.node_}));
}

Formula Formula::iff(Formula l, Formula r) {
  return Formula(std::make_shared<Node>(Node{Kind::Iff, "", l.node_, r.node_}));
}

Formula Formula::nabla(Formula f) {
  return Formula(std::make_shared<Node>(Node{Kind::Nabla, "", f.node_, nullptr}));
}

Formula Formula::bullet(Formula f) {
  return Formula(std::make_shared<Node>(Node{Kind::Bullet, "", f.node_, nullptr}));
}

Formula Formula::box(Formula f) {
  return Formula(std::make_shared<Node>(Node{Kind::Box, "", f.node_, nullptr}));
}

bool Formula::operator==(const Formula& other) const {
  const Node* a = node_.get();
  const Node* b = other.node_.get();
  if (a == b) return true;
  if (a->kind != b->kind || a->name != b->name) return false;
  if ((a->lhs == nullptr) != (b->lhs == nullptr)) return false;
  if (a->lhs && !(Formula(a->lhs) == Formula(b->lhs))) return false;
  if ((a->rhs == nullptr) != (b->rhs == nullptr)) return false;
  if (a->rhs && !(Formula(a->rhs) == Formula(b->rhs))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

// Precedence levels, loosest first. Unary binds tightest.
enum Prec { kIff = 1, kImp, kOr, kAnd, kUnary, kLeaf };

int precedence(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::Iff: return kIff;
    case Formula::Kind::Imp: return kImp;
    case Formula::Kind::Or: return kOr;
    case Formula::Kind::And: return kAnd;
    case Formula::Kind::Not:
    case Formula::Kind::Nabla:
    case Formula::Kind::Bullet:
    case Formula::Kind::Box: return kUnary;
    default: return kLeaf;
  }
}

void render_into(const Formula& f, int min_prec, std::string& out) {
  int prec = precedence(f.kind());
  bool parens = prec < min_prec;
  if (parens) out += '(';
  switch (f.kind()) {
    case Formula::Kind::Atom: out += f.name(); break;
    case Formula::Kind::Meta: out += '?'; out += f.name(); break;
    case Formula::Kind::Top: out += "true"; break;
    case Formula::Kind::Bot: out += "false"; break;
    case Formula::Kind::Not:
      out += '~';
      render_into(f.lhs(), kUnary, out);
      break;
    case Formula::Kind::Nabla:
      out += "nabla ";
      render_into(f.lhs(), kUnary, out);
      break;
    case Formula::Kind::Bullet:
      out += "bullet ";
      render_into(f.lhs(), kUnary, out);
      break;
    case Formula::Kind::Box:
      out += "box ";
      render_into(f.lhs(), kUnary, out);
      break;
    case Formula::Kind::And:
      render_into(f.lhs(), kAnd, out);
      out += " & ";
      render_into(f.rhs(), kAnd + 1, out);
      break;
    case Formula::Kind::Or:
      render_into(f.lhs(), kOr, out);
      out += " | ";
      render_into(f.rhs(), kOr + 1, out);
      break;
    case Formula::Kind::Imp:
      render_into(f.lhs(), kImp + 1, out);
      out += " -> ";
      render_into(f.rhs(), kImp, out);
      break;
    case Formula::Kind::Iff:
      render_into(f.lhs(), kIff + 1, out);
      out += " <-> ";
      render_into(f.rhs(), kIff, out);
      break;
  }
  if (parens) out += ')';
}

}  // namespace

std::string Formula::render() const {
  std::string out;
  render_into(*this, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Lexer / parser

namespace {

enum class Tok {
  Atom, Meta, True, False,
  Not, Nabla, Bullet, Box, Diamond, Delta, Circ,
  And, Or, Imp, Iff, LParen, RParen, End,
};

const char* tok_name(Tok t) {
  switch (t) {
    case Tok::Atom: return "atom";
    case Tok::Meta: return "metavariable";
    case Tok::True: return "'true'";
    case Tok::False: return "'false'";
    case Tok::Not: return "'~'";
    case Tok::Nabla: return "'nabla'";
    case Tok::Bullet: return "'bullet'";
    case Tok::Box: return "'box'";
    case Tok::Diamond: return "'diamond'";
    case Tok::Delta: return "'delta'";
    case Tok::Circ: return "'circ'";
    case Tok::And: return "'&'";
    case Tok::Or: return "'|'";
    case Tok::Imp: return "'->'";
    case Tok::Iff: return "'<->'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::End: return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) {}

  Token next() {
    skip_ws();
    int line = line_, col = col_;
    if (pos_ >= src_.size()) return {Tok::End, "", line, col};

    // Unicode aliases for the modal operators.
    static const std::pair<const char*, Tok> kAliases[] = {
        {"∇", Tok::Nabla},   // nabla
        {"•", Tok::Bullet},  // bullet
        {"□", Tok::Box},     // white square
        {"◇", Tok::Diamond}, // white diamond
        {"Δ", Tok::Delta},   // capital delta
        {"∘", Tok::Circ},    // ring operator
        {"¬", Tok::Not},     // negation sign
    };
    for (const auto& [txt, tok] : kAliases) {
      size_t len = std::char_traits<char>::length(txt);
      if (src_.compare(pos_, len, txt) == 0) {
        advance(len);
        return {tok, txt, line, col};
      }
    }

    char c = src_[pos_];
    switch (c) {
      case '~': advance(1); return {Tok::Not, "~", line, col};
      case '&': advance(1); return {Tok::And, "&", line, col};
      case '|': advance(1); return {Tok::Or, "|", line, col};
      case '(': advance(1); return {Tok::LParen, "(", line, col};
      case ')': advance(1); return {Tok::RParen, ")", line, col};
      case '-':
        if (src_.compare(pos_, 2, "->") == 0) {
          advance(2);
          return {Tok::Imp, "->", line, col};
        }
        break;
      case '<':
        if (src_.compare(pos_, 3, "<->") == 0) {
          advance(3);
          return {Tok::Iff, "<->", line, col};
        }
        break;
      case '?': {
        advance(1);
        std::string name = read_word();
        if (name.empty())
          throw SyntaxError("'?' must be followed by a metavariable name", line, col);
        return {Tok::Meta, name, line, col};
      }
      default: break;
    }

    if (std::islower(static_cast<unsigned char>(c))) {
      std::string word = read_word();
      if (word == "true") return {Tok::True, word, line, col};
      if (word == "false") return {Tok::False, word, line, col};
      if (word == "nabla") return {Tok::Nabla, word, line, col};
      if (word == "bullet") return {Tok::Bullet, word, line, col};
      if (word == "box") return {Tok::Box, word, line, col};
      if (word == "diamond") return {Tok::Diamond, word, line, col};
      if (word == "delta") return {Tok::Delta, word, line, col};
      if (word == "circ") return {Tok::Circ, word, line, col};
      return {Tok::Atom, word, line, col};
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", line, col);
  }

 private:
  void skip_ws() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == ' ' || c == '\t' || c == '\r') {
        advance(1);
      } else if (c == '\n') {
        pos_++;
        line_++;
        col_ = 1;
      } else {
        break;
      }
    }
  }

  std::string read_word() {
    size_t start = pos_;
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (std::islower(static_cast<unsigned char>(c)) ||
          std::isdigit(static_cast<unsigned char>(c)) || c == '_') {
        advance(1);
      } else {
        break;
      }
    }
    return src_.substr(start, pos_ - start);
  }

  void advance(size_t n) {
    pos_ += n;
    col_ += static_cast<int>(n);
  }

  const std::string& src_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  explicit Parser(const std::string& src) : lexer_(src) { shift(); }

  Formula parse_form() {
    Formula f = parse_iff();
    expect(Tok::End);
    return f;
  }

 private:
  Formula parse_iff() {
    std::vector<Formula> parts{parse_imp()};
    while (cur_.kind == Tok::Iff) {
      shift();
      parts.push_back(parse_imp());
    }
    Formula f = parts.back();
    for (size_t i = parts.size() - 1; i-- > 0;) f = Formula::iff(parts[i], f);
    return f;
  }

  Formula parse_imp() {
    Formula l = parse_or();
    if (cur_.kind == Tok::Imp) {
      shift();
      return Formula::imp(l, parse_imp());
    }
    return l;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (cur_.kind == Tok::Or) {
      shift();
      f = Formula::disj(f, parse_and());
    }
    return f;
  }

  Formula parse_and() {
    Formula f = parse_unary();
    while (cur_.kind == Tok::And) {
      shift();
      f = Formula::conj(f, parse_unary());
    }
    return f;
  }

  Formula parse_unary() {
    Token t = cur_;
    switch (t.kind) {
      case Tok::Not: shift(); return Formula::negation(parse_unary());
      case Tok::Nabla: shift(); return Formula::nabla(parse_unary());
      case Tok::Bullet: shift(); return Formula::bullet(parse_unary());
      case Tok::Box: shift(); return Formula::box(parse_unary());
      case Tok::Diamond: shift(); return Formula::diamond(parse_unary());
      case Tok::Delta: shift(); return Formula::delta(parse_unary());
      case Tok::Circ: shift(); return Formula::circ(parse_unary());
      case Tok::True: shift(); return Formula::top();
      case Tok::False: shift(); return Formula::bot();
      case Tok::Atom: shift(); return Formula::atom(t.text);
      case Tok::Meta: shift(); return Formula::meta(t.text);
      case Tok::LParen: {
        shift();
        Formula f = parse_iff();
        expect(Tok::RParen);
        return f;
      }
      default:
        throw SyntaxError(std::string("unexpected ") + tok_name(t.kind),
                          t.line, t.column,
                          "atom, 'true', 'false', unary operator or '('");
    }
  }

  void expect(Tok k) {
    if (cur_.kind != k)
      throw SyntaxError(std::string("unexpected ") + tok_name(cur_.kind),
                        cur_.line, cur_.column, tok_name(k));
    if (k != Tok::End) shift();
  }

  void shift() { cur_ = lexer_.next(); }

  Lexer lexer_;
  Token cur_{Tok::End, "", 1, 1};
};

}  // namespace

Formula parse(const std::string& text) { return Parser(text).parse_form(); }

Formula expand_defined(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
    case Formula::Kind::Meta:
    case Formula::Kind::Top:
    case Formula::Kind::Bot:
      return f;
    case Formula::Kind::Not: return Formula::negation(expand_defined(f.lhs()));
    case Formula::Kind::Nabla: return Formula::nabla(expand_defined(f.lhs()));
    case Formula::Kind::Bullet: return Formula::bullet(expand_defined(f.lhs()));
    case Formula::Kind::Box: return Formula::box(expand_defined(f.lhs()));
    case Formula::Kind::And:
      return Formula::conj(expand_defined(f.lhs()), expand_defined(f.rhs()));
    case Formula::Kind::Or:
      return Formula::disj(expand_defined(f.lhs()), expand_defined(f.rhs()));
    case Formula::Kind::Imp:
      return Formula::imp(expand_defined(f.lhs()), expand_defined(f.rhs()));
    case Formula::Kind::Iff:
      return Formula::iff(expand_defined(f.lhs()), expand_defined(f.rhs()));
  }
  return f;
}

namespace {

void collect_names(const Formula& f, Formula::Kind kind, std::set<std::string>& out) {
  if (f.kind() == kind) out.insert(f.name());
  switch (f.kind()) {
    case Formula::Kind::Atom:
    case Formula::Kind::Meta:
    case Formula::Kind::Top:
    case Formula::Kind::Bot:
      return;
    case Formula::Kind::Not:
    case Formula::Kind::Nabla:
    case Formula::Kind::Bullet:
    case Formula::Kind::Box:
      collect_names(f.lhs(), kind, out);
      return;
    default:
      collect_names(f.lhs(), kind, out);
      collect_names(f.rhs(), kind, out);
      return;
  }
}

}  // namespace

std::vector<std::string> atoms(const Formula& f) {
  std::set<std::string> s;
  collect_names(f, Formula::Kind::Atom, s);
  return {s.begin(), s.end()};
}

std::vector<std::string> metavars(const Formula& f) {
  std::set<std::string> s;
  collect_names(f, Formula::Kind::Meta, s);
  return {s.begin(), s.end()};
}

int modal_depth(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
    case Formula::Kind::Meta:
    case Formula::Kind::Top:
    case Formula::Kind::Bot:
      return 0;
    case Formula::Kind::Not:
      return modal_depth(f.lhs());
    case Formula::Kind::Nabla:
    case Formula::Kind::Bullet:
    case Formula::Kind::Box:
      return 1 + modal_depth(f.lhs());
    default:
      return std::max(modal_depth(f.lhs()), modal_depth(f.rhs()));
  }
}

Formula substitute(const Formula& f,
                   const std::unordered_map<std::string, Formula>& subst) {
  switch (f.kind()) {
    case Formula::Kind::Meta: {
      auto it = subst.find(f.name());
      return it == subst.end() ? f : it->second;
    }
    case Formula::Kind::Atom:
    case Formula::Kind::Top:
    case Formula::Kind::Bot:
      return f;
    case Formula::Kind::Not: return Formula::negation(substitute(f.lhs(), subst));
    case Formula::Kind::Nabla: return Formula::nabla(substitute(f.lhs(), subst));
    case Formula::Kind::Bullet: return Formula::bullet(substitute(f.lhs(), subst));
    case Formula::Kind::Box: return Formula::box(substitute(f.lhs(), subst));
    case Formula::Kind::And:
      return Formula::conj(substitute(f.lhs(), subst), substitute(f.rhs(), subst));
    case Formula::Kind::Or:
      return Formula::disj(substitute(f.lhs(), subst), substitute(f.rhs(), subst));
    case Formula::Kind::Imp:
      return Formula::imp(substitute(f.lhs(), subst), substitute(f.rhs(), subst));
    case Formula::Kind::Iff:
      return Formula::iff(substitute(f.lhs(), subst), substitute(f.rhs(), subst));
  }
  return f;
}

}  // namespace nbl

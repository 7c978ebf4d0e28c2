#include "nbl/proofs.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace nbl {

SystemId system_from_name(const std::string& name) {
  if (name == "E") return SystemId::E;
  if (name == "Ec") return SystemId::Ec;
  if (name == "EN") return SystemId::EN;
  if (name == "M") return SystemId::M;
  if (name == "R") return SystemId::R;
  if (name == "K") return SystemId::K;
  throw ModelError("unknown axiom system '" + name + "'");
}

const char* system_name(SystemId id) {
  switch (id) {
    case SystemId::E: return "E";
    case SystemId::Ec: return "Ec";
    case SystemId::EN: return "EN";
    case SystemId::M: return "M";
    case SystemId::R: return "R";
    case SystemId::K: return "K";
  }
  return "?";
}

const AxiomSchema* AxiomSystem::find_axiom(const std::string& axiom_name) const {
  for (const auto& a : axioms)
    if (a.name == axiom_name) return &a;
  return nullptr;
}

namespace {

AxiomSchema schema(const char* name, const char* pattern) {
  return AxiomSchema{name, parse(pattern)};
}

std::vector<AxiomSchema> base_axioms() {
  return {
      schema("E1", "nabla ?phi <-> nabla ~?phi"),
      schema("E2", "bullet ?phi -> ?phi"),
      schema("E3", "nabla ?phi -> bullet ?phi | bullet ~?phi"),
  };
}

std::vector<AxiomSchema> monotone_axioms() {
  auto axs = base_axioms();
  axs.push_back(schema("M1", "nabla(?phi | ?psi) & nabla(~?phi | ?chi) -> nabla ?phi"));
  axs.push_back(schema("M2", "bullet(?phi | ?psi) & bullet(~?phi | ?chi) -> nabla ?phi"));
  axs.push_back(schema("M3", "bullet(?phi | ?psi) & nabla(~?phi | ?chi) -> nabla ?phi"));
  axs.push_back(schema("M4", "circ ?phi & ?phi -> delta(?phi | ?psi) & circ(?phi | ?psi)"));
  return axs;
}

std::vector<AxiomSchema> regular_axioms() {
  auto axs = monotone_axioms();
  axs.push_back(schema("R1", "delta ?phi & delta ?psi -> delta(?phi & ?psi)"));
  axs.push_back(schema("R2", "circ ?phi & circ ?psi -> circ(?phi & ?psi)"));
  return axs;
}

AxiomSystem build_system(SystemId id) {
  AxiomSystem sys{id, system_name(id), {}};
  switch (id) {
    case SystemId::E:
      sys.axioms = base_axioms();
      break;
    case SystemId::Ec:
      sys.axioms = base_axioms();
      sys.axioms.push_back(schema("E4", "bullet ?phi -> nabla ?phi"));
      break;
    case SystemId::EN:
      sys.axioms = base_axioms();
      sys.axioms.push_back(schema("CIRCTOP", "circ true"));
      break;
    case SystemId::M:
      sys.axioms = monotone_axioms();
      break;
    case SystemId::R:
      sys.axioms = regular_axioms();
      break;
    case SystemId::K:
      sys.axioms = regular_axioms();
      sys.axioms.push_back(schema("CIRCTOP", "circ true"));
      break;
  }
  return sys;
}

}  // namespace

const AxiomSystem& axiom_system(SystemId id) {
  static const AxiomSystem e = build_system(SystemId::E);
  static const AxiomSystem ec = build_system(SystemId::Ec);
  static const AxiomSystem en = build_system(SystemId::EN);
  static const AxiomSystem m = build_system(SystemId::M);
  static const AxiomSystem r = build_system(SystemId::R);
  static const AxiomSystem k = build_system(SystemId::K);
  switch (id) {
    case SystemId::E: return e;
    case SystemId::Ec: return ec;
    case SystemId::EN: return en;
    case SystemId::M: return m;
    case SystemId::R: return r;
    case SystemId::K: return k;
  }
  return e;
}

PropertySet system_frame_class(SystemId id) {
  switch (id) {
    case SystemId::E: return {};
    case SystemId::Ec: return {Property::C};
    case SystemId::EN: return {Property::N};
    case SystemId::M: return {Property::S};
    case SystemId::R: return {Property::I, Property::S};
    case SystemId::K: return {Property::I, Property::S, Property::N};
  }
  return {};
}

namespace {

bool match_into(const Formula& pattern, const Formula& f,
                std::unordered_map<std::string, Formula>& subst) {
  if (pattern.kind() == Formula::Kind::Meta) {
    auto [it, fresh] = subst.emplace(pattern.name(), f);
    return fresh || it->second == f;
  }
  if (pattern.kind() != f.kind() || pattern.name() != f.name()) return false;
  switch (pattern.kind()) {
    case Formula::Kind::Atom:
    case Formula::Kind::Top:
    case Formula::Kind::Bot:
      return true;
    case Formula::Kind::Not:
    case Formula::Kind::Nabla:
    case Formula::Kind::Bullet:
    case Formula::Kind::Box:
      return match_into(pattern.lhs(), f.lhs(), subst);
    default:
      return match_into(pattern.lhs(), f.lhs(), subst) &&
             match_into(pattern.rhs(), f.rhs(), subst);
  }
}

}  // namespace

std::optional<std::unordered_map<std::string, Formula>> match_schema(
    const AxiomSchema& schema, const Formula& f) {
  std::unordered_map<std::string, Formula> subst;
  if (match_into(expand_defined(schema.pattern), expand_defined(f), subst))
    return subst;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Propositional skeletons

namespace {

// Shared abstraction registry: maximal modal subformulas, atoms and
// metavariables each get one propositional variable, identified structurally.
struct Skeleton {
  std::vector<Formula> vars;

  int var_of(const Formula& f) {
    for (size_t i = 0; i < vars.size(); ++i)
      if (vars[i] == f) return static_cast<int>(i);
    if (vars.size() >= 16)
      throw BudgetError("propositional skeleton exceeds 16 variables");
    vars.push_back(f);
    return static_cast<int>(vars.size() - 1);
  }

  // Skeleton term: leaves are variable indices.
  struct Term {
    Formula::Kind kind;
    int var = -1;
    std::vector<Term> children;
  };

  Term abstract(const Formula& f) {
    switch (f.kind()) {
      case Formula::Kind::Atom:
      case Formula::Kind::Meta:
      case Formula::Kind::Nabla:
      case Formula::Kind::Bullet:
      case Formula::Kind::Box:
        return Term{Formula::Kind::Atom, var_of(f), {}};
      case Formula::Kind::Top:
      case Formula::Kind::Bot:
        return Term{f.kind(), -1, {}};
      case Formula::Kind::Not:
        return Term{f.kind(), -1, {abstract(f.lhs())}};
      default:
        return Term{f.kind(), -1, {abstract(f.lhs()), abstract(f.rhs())}};
    }
  }

  static bool eval(const Term& t, std::uint32_t assignment) {
    switch (t.kind) {
      case Formula::Kind::Atom: return (assignment >> t.var) & 1u;
      case Formula::Kind::Top: return true;
      case Formula::Kind::Bot: return false;
      case Formula::Kind::Not: return !eval(t.children[0], assignment);
      case Formula::Kind::And:
        return eval(t.children[0], assignment) && eval(t.children[1], assignment);
      case Formula::Kind::Or:
        return eval(t.children[0], assignment) || eval(t.children[1], assignment);
      case Formula::Kind::Imp:
        return !eval(t.children[0], assignment) || eval(t.children[1], assignment);
      case Formula::Kind::Iff:
        return eval(t.children[0], assignment) == eval(t.children[1], assignment);
      default: return false;
    }
  }
};

}  // namespace

bool is_tautology_instance(const Formula& f) {
  Skeleton sk;
  Skeleton::Term t = sk.abstract(expand_defined(f));
  const std::uint32_t count = 1u << sk.vars.size();
  for (std::uint32_t a = 0; a < count; ++a)
    if (!Skeleton::eval(t, a)) return false;
  return true;
}

bool is_tautological_consequence(const std::vector<Formula>& premises,
                                 const Formula& conclusion) {
  Skeleton sk;
  std::vector<Skeleton::Term> prem;
  prem.reserve(premises.size());
  for (const auto& p : premises) prem.push_back(sk.abstract(expand_defined(p)));
  Skeleton::Term concl = sk.abstract(expand_defined(conclusion));
  const std::uint32_t count = 1u << sk.vars.size();
  for (std::uint32_t a = 0; a < count; ++a) {
    bool all = true;
    for (const auto& p : prem)
      if (!Skeleton::eval(p, a)) { all = false; break; }
    if (all && !Skeleton::eval(concl, a)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Proof scripts

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

Justification parse_justification(const std::string& text, int line_no) {
  std::istringstream in(text);
  std::string head;
  in >> head;
  auto read_refs = [&](size_t want, const char* what) {
    std::vector<int> refs;
    std::string rest;
    std::getline(in, rest);
    std::stringstream ss(rest);
    std::string part;
    while (std::getline(ss, part, ',')) {
      part = trim(part);
      if (part.empty()) continue;
      std::stringstream inner(part);
      int k;
      while (inner >> k) refs.push_back(k);
      if (!inner.eof())
        throw SyntaxError(std::string("bad line reference in ") + what, line_no, 1);
    }
    if (want != 0 && refs.size() != want)
      throw SyntaxError(std::string(what) + " needs " + std::to_string(want) +
                            " line reference(s)",
                        line_no, 1);
    return refs;
  };

  if (head == "AX") {
    std::string name;
    in >> name;
    if (name.empty()) throw SyntaxError("AX needs an axiom name", line_no, 1);
    return {Justification::Kind::Axiom, name, {}};
  }
  if (head == "TAUT") return {Justification::Kind::Taut, "", {}};
  if (head == "MP") return {Justification::Kind::MP, "", read_refs(2, "MP")};
  if (head == "RE-NABLA")
    return {Justification::Kind::ReNabla, "", read_refs(1, "RE-NABLA")};
  if (head == "RE-BULLET")
    return {Justification::Kind::ReBullet, "", read_refs(1, "RE-BULLET")};
  if (head == "DEF") return {Justification::Kind::Def, "", read_refs(1, "DEF")};
  if (head == "CONSEQ") {
    auto refs = read_refs(0, "CONSEQ");
    if (refs.empty()) throw SyntaxError("CONSEQ needs line references", line_no, 1);
    return {Justification::Kind::Conseq, "", refs};
  }
  throw SyntaxError("unknown justification '" + head + "'", line_no, 1);
}

}  // namespace

Derivation parse_derivation(const std::string& script) {
  Derivation d;
  std::istringstream in(script);
  std::string raw;
  int line_no = 0;
  int last_number = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(raw);
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = trim(line.substr(0, hash));
    if (line.empty()) continue;

    size_t dot = line.find('.');
    if (dot == std::string::npos)
      throw SyntaxError("proof line needs 'k. <formula> ; <justification>'", line_no, 1);
    int number;
    try {
      number = std::stoi(line.substr(0, dot));
    } catch (...) {
      throw SyntaxError("bad proof line number", line_no, 1);
    }
    if (number <= last_number)
      throw SyntaxError("proof line numbers must be strictly increasing", line_no, 1);
    last_number = number;

    size_t semi = line.find(';', dot);
    if (semi == std::string::npos)
      throw SyntaxError("proof line is missing '; <justification>'", line_no, 1);
    Formula f = parse(line.substr(dot + 1, semi - dot - 1));
    Justification j = parse_justification(trim(line.substr(semi + 1)), line_no);
    d.lines.push_back(ProofLine{number, std::move(f), std::move(j)});
  }
  if (d.lines.empty()) throw SyntaxError("empty derivation", line_no, 1);
  return d;
}

CheckResult check_derivation(const AxiomSystem& system, const Derivation& d) {
  std::unordered_map<int, const ProofLine*> earlier;
  for (const auto& line : d.lines) {
    auto resolve = [&](std::vector<const ProofLine*>& out) -> std::optional<CheckResult> {
      for (int r : line.just.refs) {
        auto it = earlier.find(r);
        if (it == earlier.end())
          return CheckResult::fail(line.number,
                                   "reference to line " + std::to_string(r) +
                                       ", which is not an earlier line");
        out.push_back(it->second);
      }
      return std::nullopt;
    };

    std::vector<const ProofLine*> refs;
    if (auto bad = resolve(refs)) return *bad;

    switch (line.just.kind) {
      case Justification::Kind::Axiom: {
        const AxiomSchema* ax = system.find_axiom(line.just.axiom);
        if (!ax)
          return CheckResult::fail(line.number, "system " + system.name +
                                                    " has no axiom '" +
                                                    line.just.axiom + "'");
        if (!match_schema(*ax, line.formula))
          return CheckResult::fail(line.number,
                                   "not an instance of " + line.just.axiom);
        break;
      }
      case Justification::Kind::Taut:
        if (!is_tautology_instance(line.formula))
          return CheckResult::fail(line.number, "not a tautology instance");
        break;
      case Justification::Kind::MP: {
        const Formula& minor = refs[0]->formula;
        const Formula& major = refs[1]->formula;
        if (major.kind() != Formula::Kind::Imp)
          return CheckResult::fail(line.number, "MP major premise is not an implication");
        if (!(major.lhs() == minor) || !(major.rhs() == line.formula))
          return CheckResult::fail(line.number, "MP premises do not yield this line");
        break;
      }
      case Justification::Kind::ReNabla:
      case Justification::Kind::ReBullet: {
        bool use_nabla = line.just.kind == Justification::Kind::ReNabla;
        const Formula& premise = refs[0]->formula;
        if (premise.kind() != Formula::Kind::Iff)
          return CheckResult::fail(line.number, "RE premise is not a biconditional");
        Formula expected =
            use_nabla ? Formula::iff(Formula::nabla(premise.lhs()),
                                     Formula::nabla(premise.rhs()))
                      : Formula::iff(Formula::bullet(premise.lhs()),
                                     Formula::bullet(premise.rhs()));
        if (!(line.formula == expected))
          return CheckResult::fail(line.number,
                                   use_nabla ? "not the RE-NABLA image of the premise"
                                             : "not the RE-BULLET image of the premise");
        break;
      }
      case Justification::Kind::Def:
        if (!(expand_defined(line.formula) == expand_defined(refs[0]->formula)))
          return CheckResult::fail(line.number,
                                   "not definitionally equal to the cited line");
        break;
      case Justification::Kind::Conseq: {
        std::vector<Formula> premises;
        for (const auto* r : refs) premises.push_back(r->formula);
        if (!is_tautological_consequence(premises, line.formula))
          return CheckResult::fail(line.number,
                                   "not a tautological consequence of the cited lines");
        break;
      }
    }
    earlier[line.number] = &line;
  }
  return CheckResult::ok();
}

bool SoundnessReport::all_valid() const {
  return std::all_of(rows.begin(), rows.end(),
                     [](const SoundnessRow& r) { return r.verdict.valid(); });
}

SoundnessReport axiom_soundness_suite(SystemId id, int max_states,
                                      const SearchOptions& opts) {
  const AxiomSystem& sys = axiom_system(id);
  SoundnessReport report{id, system_frame_class(id), {}};
  const std::unordered_map<std::string, Formula> at_pqr = {
      {"phi", Formula::atom("p")},
      {"psi", Formula::atom("q")},
      {"chi", Formula::atom("r")},
  };
  for (const auto& ax : sys.axioms) {
    Formula instance = substitute(ax.pattern, at_pqr);
    Verdict v = class_valid(instance, report.frame_class, max_states, opts);
    report.rows.push_back(SoundnessRow{ax.name, std::move(instance), std::move(v)});
  }
  return report;
}

}  // namespace nbl

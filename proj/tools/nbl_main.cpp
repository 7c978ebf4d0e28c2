// nbl: model checking, countermodel search, expressivity and proof checking
// for the neighborhood logics of ignorance.
//
// Exit codes: 0 claim holds / success, 1 claim fails or countermodel found,
// 2 usage or budget error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "nbl/formula.hpp"
#include "nbl/model.hpp"
#include "nbl/proofs.hpp"
#include "nbl/replication.hpp"
#include "nbl/search.hpp"
#include "nbl/semantics.hpp"

namespace {

constexpr int kExitHolds = 0;
constexpr int kExitFails = 1;
constexpr int kExitError = 2;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw nbl::Error("cannot open file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct FormulaArgs {
  std::string text;
  std::string file;

  nbl::Formula get() const {
    if (!text.empty() && !file.empty())
      throw nbl::Error("give either --formula or --formula-file, not both");
    if (!text.empty()) return nbl::parse(text);
    if (!file.empty()) return nbl::parse(slurp(file));
    throw nbl::Error("a formula is required (--formula or --formula-file)");
  }

  void attach(CLI::App* cmd) {
    cmd->add_option("--formula", text, "formula text");
    cmd->add_option("--formula-file", file, "file containing one formula");
  }
};

nlohmann::ordered_json model_doc(const nbl::NeighborhoodModel& m, bool frame_only) {
  return nlohmann::ordered_json::parse(
      frame_only ? nbl::frame_to_json(m.frame()) : nbl::model_to_json(m));
}

nlohmann::ordered_json verdict_doc(const nbl::Verdict& v) {
  nlohmann::ordered_json doc;
  doc["status"] = v.valid() ? "valid-up-to-bound" : "countermodel";
  doc["bound"] = v.bound;
  doc["sampled"] = v.sampled;
  if (v.sampled) doc["seed"] = v.seed;
  if (v.witness) {
    doc["witness"] = {{"model", model_doc(v.witness->first, false)},
                      {"state", v.witness->second}};
  }
  return doc;
}

void print_verdict(const nbl::Verdict& v, bool json) {
  if (json) {
    std::cout << verdict_doc(v).dump(2) << "\n";
    return;
  }
  if (v.valid()) {
    std::cout << "valid up to " << v.bound << " states";
    if (v.sampled) std::cout << " (size " << v.bound << " sampled, seed " << v.seed << ")";
    std::cout << "\n";
  } else {
    std::cout << "countermodel at state " << v.witness->second << ":\n"
              << nbl::model_to_json(v.witness->first);
  }
}

int run(int argc, char** argv) {
  CLI::App app{"neighborhood-semantics toolkit for the logics of ignorance"};
  app.require_subcommand(1);

  // check: truth at a designated state
  auto* check = app.add_subcommand("check", "evaluate a formula at a state of a model");
  std::string check_model, check_state;
  FormulaArgs check_formula;
  bool check_json = false;
  check->add_option("--model", check_model, "model file (JSON)")->required();
  check->add_option("--state", check_state, "state label")->required();
  check_formula.attach(check);
  check->add_flag("--json", check_json, "JSON output");

  // props: property profile of a frame
  auto* props = app.add_subcommand("props", "report the neighborhood properties of a frame");
  std::string props_model, props_class;
  bool props_json = false;
  props->add_option("--model", props_model, "model or frame file (JSON)")->required();
  props->add_option("--class", props_class,
                    "comma-joined properties; exit 1 unless the frame has them all");
  props->add_flag("--json", props_json, "JSON output");

  // valid: bounded class validity
  auto* valid = app.add_subcommand("valid", "bounded validity over a frame class");
  FormulaArgs valid_formula;
  std::string valid_class = "all";
  int valid_max = 2;
  int valid_jobs = 1;
  std::uint64_t valid_seed = nbl::SearchOptions{}.seed;
  bool valid_json = false;
  valid_formula.attach(valid);
  valid->add_option("--class", valid_class, "frame class (names, 'all', 'quasi-filter', ...)");
  valid->add_option("--max-states", valid_max, "search bound (1..4; 4 is sampled)");
  valid->add_option("--jobs", valid_jobs, "worker threads");
  valid->add_option("--seed", valid_seed, "seed for sampled sizes");
  valid->add_flag("--json", valid_json, "JSON output");

  // distinguish: fragment separability of two pointed models
  auto* dist = app.add_subcommand("distinguish",
                                  "search for a fragment formula separating two pointed models");
  std::string dist_model, dist_state, dist_model2, dist_state2, dist_frag = "nabla-bullet";
  std::string dist_vocab;
  bool dist_json = false;
  dist->add_option("--model", dist_model, "left model file")->required();
  dist->add_option("--state", dist_state, "left state")->required();
  dist->add_option("--model2", dist_model2, "right model file")->required();
  dist->add_option("--state2", dist_state2, "right state")->required();
  dist->add_option("--fragment", dist_frag, "nabla|bullet|nabla-bullet|box");
  dist->add_option("--vocab", dist_vocab, "comma-joined atoms (default: atoms in use)");
  dist->add_flag("--json", dist_json, "JSON output");

  // morphism: bullet-morphism check
  auto* mor = app.add_subcommand("morphism", "check a map for the bullet-morphism conditions");
  std::string mor_model, mor_model2, mor_map;
  mor->add_option("--model", mor_model, "source model file")->required();
  mor->add_option("--model2", mor_model2, "target model file")->required();
  mor->add_option("--map", mor_map, "total map, e.g. s=sp,t=tp")->required();

  // prove: derivation checking / axiom soundness
  auto* prove = app.add_subcommand("prove", "check a Hilbert derivation or axiom soundness");
  std::string prove_system = "E", prove_script;
  bool prove_soundness = false, prove_json = false;
  int prove_jobs = 1;
  prove->add_option("--system", prove_system, "E|Ec|EN|M|R|K");
  prove->add_option("--script", prove_script, "proof script file");
  prove->add_flag("--soundness", prove_soundness,
                  "run the axiom soundness suite for the system instead");
  prove->add_option("--jobs", prove_jobs, "worker threads (soundness suite)");
  prove->add_flag("--json", prove_json, "JSON output");

  // supplement: superset closure
  auto* supp = app.add_subcommand("supplement", "superset-close every neighborhood");
  std::string supp_model, supp_out;
  supp->add_option("--model", supp_model, "model or frame file (JSON)")->required();
  supp->add_option("-o,--output", supp_out, "output path (default stdout)");

  // replicate: the full fixture suite
  auto* repl = app.add_subcommand("replicate", "run the built-in fixture suite");
  bool repl_json = false, repl_timings = false;
  int repl_jobs = 1;
  std::string repl_filter;
  repl->add_flag("--json", repl_json, "JSON report");
  repl->add_flag("--timings", repl_timings, "include per-claim timings in JSON");
  repl->add_option("--jobs", repl_jobs, "worker threads");
  repl->add_option("--filter", repl_filter, "only claims whose id starts with this prefix");

  // export-fixture
  auto* expf = app.add_subcommand("export-fixture", "write a built-in fixture as JSON");
  std::string expf_id, expf_out;
  bool expf_list = false;
  expf->add_option("--id", expf_id, "fixture id (e.g. P1.M, P12.Mp)");
  expf->add_flag("--list", expf_list, "list the available fixture ids");
  expf->add_option("-o,--output", expf_out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the usage message
    return kExitError;
  }

  if (check->parsed()) {
    nbl::NeighborhoodModel m = nbl::model_from_file(check_model);
    bool holds = nbl::satisfies(m, check_state, check_formula.get());
    if (check_json)
      std::cout << nlohmann::ordered_json{{"holds", holds}}.dump(2) << "\n";
    else
      std::cout << (holds ? "true" : "false") << "\n";
    return holds ? kExitHolds : kExitFails;
  }

  if (props->parsed()) {
    nbl::NeighborhoodModel m = nbl::model_from_file(props_model);
    static const nbl::Property all[] = {
        nbl::Property::N, nbl::Property::R, nbl::Property::I, nbl::Property::S,
        nbl::Property::C, nbl::Property::D, nbl::Property::T, nbl::Property::B,
        nbl::Property::Four, nbl::Property::Five, nbl::Property::Monotone,
        nbl::Property::QuasiFilter, nbl::Property::Filter};
    nlohmann::ordered_json doc;
    for (nbl::Property p : all) {
      bool h = nbl::has_property(m.frame(), p);
      if (props_json)
        doc[nbl::property_name(p)] = h;
      else
        std::cout << nbl::property_name(p) << ": " << (h ? "yes" : "no") << "\n";
    }
    if (props_json) std::cout << doc.dump(2) << "\n";
    if (!props_class.empty() &&
        !nbl::has_properties(m.frame(), nbl::parse_property_set(props_class)))
      return kExitFails;
    return kExitHolds;
  }

  if (valid->parsed()) {
    nbl::SearchOptions opts;
    opts.jobs = valid_jobs;
    opts.seed = valid_seed;
    nbl::Verdict v = nbl::class_valid(valid_formula.get(),
                                      nbl::parse_property_set(valid_class),
                                      valid_max, opts);
    print_verdict(v, valid_json);
    return v.valid() ? kExitHolds : kExitFails;
  }

  if (dist->parsed()) {
    nbl::NeighborhoodModel a = nbl::model_from_file(dist_model);
    nbl::NeighborhoodModel b = nbl::model_from_file(dist_model2);
    nbl::Fragment frag = nbl::Fragment::from_name(dist_frag);
    std::optional<nbl::Witness> w;
    if (dist_vocab.empty()) {
      w = nbl::distinguishable(a, dist_state, b, dist_state2, frag);
    } else {
      std::vector<std::string> vocab;
      std::stringstream ss(dist_vocab);
      std::string atom;
      while (std::getline(ss, atom, ','))
        if (!atom.empty()) vocab.push_back(atom);
      w = nbl::distinguishable(a, dist_state, b, dist_state2, frag, vocab);
    }
    if (dist_json) {
      nlohmann::ordered_json doc;
      doc["distinguishable"] = w.has_value();
      if (w) doc["witness"] = w->formula.render();
      std::cout << doc.dump(2) << "\n";
    } else if (w) {
      std::cout << w->formula.render() << "\n";
    } else {
      std::cout << "indistinguishable\n";
    }
    return w ? kExitHolds : kExitFails;
  }

  if (mor->parsed()) {
    nbl::NeighborhoodModel a = nbl::model_from_file(mor_model);
    nbl::NeighborhoodModel b = nbl::model_from_file(mor_model2);
    std::map<std::string, std::string> map;
    std::stringstream ss(mor_map);
    std::string part;
    while (std::getline(ss, part, ',')) {
      size_t eq = part.find('=');
      if (eq == std::string::npos) throw nbl::Error("--map entries look like from=to");
      map[part.substr(0, eq)] = part.substr(eq + 1);
    }
    bool ok = nbl::check_bullet_morphism(a, b, map);
    std::cout << (ok ? "bullet-morphism" : "not a bullet-morphism") << "\n";
    return ok ? kExitHolds : kExitFails;
  }

  if (prove->parsed()) {
    nbl::SystemId sys = nbl::system_from_name(prove_system);
    if (prove_soundness) {
      nbl::SearchOptions opts;
      opts.jobs = prove_jobs;
      nbl::SoundnessReport rep = nbl::axiom_soundness_suite(sys, 2, opts);
      if (prove_json) {
        nlohmann::ordered_json doc;
        doc["system"] = nbl::system_name(sys);
        doc["axioms"] = nlohmann::ordered_json::array();
        for (const auto& row : rep.rows)
          doc["axioms"].push_back({{"axiom", row.axiom},
                                   {"instance", row.instance.render()},
                                   {"verdict", row.verdict.valid() ? "valid-up-to-bound"
                                                                   : "countermodel"}});
        std::cout << doc.dump(2) << "\n";
      } else {
        for (const auto& row : rep.rows)
          std::cout << row.axiom << ": "
                    << (row.verdict.valid() ? "valid up to bound 2" : "countermodel")
                    << "\n";
      }
      return rep.all_valid() ? kExitHolds : kExitFails;
    }
    if (prove_script.empty()) throw nbl::Error("--script is required unless --soundness");
    nbl::Derivation d = nbl::parse_derivation(slurp(prove_script));
    nbl::CheckResult res = nbl::check_derivation(nbl::axiom_system(sys), d);
    if (prove_json) {
      nlohmann::ordered_json doc;
      doc["accepted"] = res.accepted;
      if (!res.accepted) {
        doc["failed_line"] = res.failed_line;
        doc["reason"] = res.reason;
      }
      std::cout << doc.dump(2) << "\n";
    } else if (res.accepted) {
      std::cout << "accepted\n";
    } else {
      std::cout << "rejected at line " << res.failed_line << ": " << res.reason << "\n";
    }
    return res.accepted ? kExitHolds : kExitFails;
  }

  if (supp->parsed()) {
    std::string text = slurp(supp_model);
    bool frame_only = nlohmann::ordered_json::parse(text).contains("valuation") == false;
    nbl::NeighborhoodModel m = nbl::supplementation(nbl::model_from_json(text));
    std::string out = frame_only ? nbl::frame_to_json(m.frame()) : nbl::model_to_json(m);
    if (supp_out.empty()) {
      std::cout << out;
    } else {
      std::ofstream f(supp_out);
      f << out;
    }
    return kExitHolds;
  }

  if (repl->parsed()) {
    nbl::SuiteOptions opts;
    opts.jobs = repl_jobs;
    nbl::SuiteReport rep = nbl::run_fixture_suite(opts, repl_filter);
    std::cout << (repl_json ? nbl::report_to_json(rep, repl_timings)
                            : nbl::report_to_text(rep));
    return rep.all_pass() ? kExitHolds : kExitFails;
  }

  if (expf->parsed()) {
    if (expf_list) {
      for (const auto& f : nbl::fixture_catalog()) std::cout << f.id << "\n";
      return kExitHolds;
    }
    if (expf_id.empty()) throw nbl::Error("--id is required (or --list)");
    std::string out = nbl::export_fixture(expf_id);
    if (expf_out.empty()) {
      std::cout << out;
    } else {
      std::ofstream f(expf_out);
      if (!f) throw nbl::Error("cannot write '" + expf_out + "'");
      f << out;
    }
    return kExitHolds;
  }

  return kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CLI::ParseError&) {
    return kExitError;  // CLI11_PARSE already printed the message
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}

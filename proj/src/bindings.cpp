#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "groupcast/demos.hpp"

namespace py = pybind11;

namespace groupcast {
namespace {

// The boundary speaks JSON text; the python package turns dicts into text
// and back so every schema lives in one place (json_io).
Json parse(const std::string& text) { return Json::parse(text); }

SuperpositionOrder order_from_text(const std::string& order,
                                   const std::vector<SubsetLabel>& labels) {
  if (order == "inclusion" || order == "discrete") {
    int K = 0;
    for (SubsetLabel s : labels) K = std::max(K, s.max_member());
    MessageIndexFamily fam = MessageIndexFamily::make(K, labels);
    return order == "inclusion" ? SuperpositionOrder::inclusion(fam)
                                : SuperpositionOrder::discrete(fam);
  }
  return order_from_json(parse(order));
}

std::vector<SubsetLabel> aux_labels(const JointDistribution& dist) {
  std::vector<SubsetLabel> labels;
  for (const Symbol& s : dist.universe.symbols)
    if (s.kind == Symbol::Kind::U) labels.push_back(s.label);
  if (labels.empty())
    throw std::invalid_argument("distribution carries no auxiliary symbols");
  return labels;
}

std::string build_system(const std::string& request, std::size_t cap) {
  BuildRequest req = build_request_from_json(parse(request));
  FmOptions fmo;
  if (cap) fmo.row_cap = cap;
  return json_text(system_to_json(req.build(fmo)));
}

std::string eliminate_vars(const std::string& system,
                           const std::vector<std::string>& targets,
                           const std::string& assign, bool exact_prune,
                           std::size_t cap) {
  InequalitySystem sys = system_from_json(parse(system));
  if (!assign.empty())
    sys = bind_assignment(sys, assignment_from_json(parse(assign)));
  std::vector<Var> vars;
  for (const std::string& t : targets) {
    if (t == "splits" || t == "hats" || t == "tildes") {
      Var::Kind kind = t == "splits"  ? Var::Kind::Split
                       : t == "hats" ? Var::Kind::RateHat
                                     : Var::Kind::RateTilde;
      for (const Var& v : sys.vars)
        if (v.kind == kind) vars.push_back(v);
    } else {
      vars.push_back(Var::parse(t));
    }
  }
  FmOptions fmo;
  if (cap) fmo.row_cap = cap;
  fmo.exact_prune_each_step = exact_prune;
  InequalitySystem out = fm_eliminate(sys, vars, fmo);
  if (exact_prune) out = remove_redundant_exact(out);
  return json_text(system_to_json(out));
}

std::string compare_regions(const std::string& a, const std::string& b,
                            const std::string& assign, double tol) {
  RegionCompare cmp =
      region_equal(system_from_json(parse(a)), system_from_json(parse(b)),
                   assignment_from_json(parse(assign)), tol);
  Json out{{"equal", cmp.equal}, {"detail", cmp.detail}};
  if (cmp.witness) {
    Json w = Json::array();
    for (const Rat& v : *cmp.witness) w.push_back(rat_str(v));
    out["witness"] = w;
    out["witness_in_first"] = cmp.witness_in_first;
    out["violated_row"] = cmp.violated_row;
  }
  return json_text(out);
}

std::string gamma_table_text(const std::string& dist_text,
                             const std::string& order) {
  JointDistribution dist = distribution_from_json(parse(dist_text));
  GammaTable table =
      gamma_table(dist, order_from_text(order, aux_labels(dist)));
  return json_text(gamma_table_to_json(table));
}

std::string check_admissible_text(const std::string& input,
                                  const std::string& order, double tol) {
  Json j = parse(input);
  JointDistribution dist = j.contains("q_pmf")
                               ? assemble_joint(admissible_from_json(j))
                               : distribution_from_json(j);
  SuperpositionOrder ord = j.contains("q_pmf")
                               ? order_from_json(j.at("order"))
                               : order_from_text(order, aux_labels(dist));
  AdmissibleReport rep = check_admissible(dist, ord, tol);
  return json_text(Json{{"ok", rep.ok},
                        {"x_deterministic", rep.x_deterministic},
                        {"factorizes", rep.factorizes},
                        {"h_x_given_rest", rep.h_x_given_rest},
                        {"kl_factorization", rep.kl_factorization},
                        {"detail", rep.detail}});
}

std::string run_covering_text(const std::string& experiment) {
  CoveringExperiment exp = covering_experiment_from_json(parse(experiment));
  CoveringResult res = run_covering(exp);
  return json_text(covering_result_to_json(exp, res));
}

std::string assemble_distribution(const std::string& input) {
  return json_text(
      distribution_to_json(assemble_joint(admissible_from_json(parse(input)))));
}

std::string known_region_text(const std::string& name) {
  return json_text(system_to_json(known_region(name)));
}

std::string run_demo_text(const std::string& name) {
  Json out;
  bool ok = false;
  if (name == "combination3") {
    demos::Combination3Report rep = demos::run_combination3();
    ok = rep.inequality_count == 15;
    out = Json{{"name", name},
               {"inequalities", rep.inequality_count},
               {"system", system_to_json(rep.system)}};
  } else if (name == "two_user" || name == "cover" ||
             name == "korner_marton" || name == "marton") {
    demos::EquivalenceReport rep =
        name == "two_user"      ? demos::run_two_user()
        : name == "cover"       ? demos::run_cover()
        : name == "korner_marton" ? demos::run_korner_marton()
                                  : demos::run_marton();
    ok = rep.equal;
    out = Json{{"name", name},
               {"equal", rep.equal},
               {"detail", rep.detail},
               {"built", system_to_json(rep.built)},
               {"reference", system_to_json(rep.reference)},
               {"assignment", assignment_to_json(rep.assignment)}};
  } else if (name == "nair_elgamal") {
    demos::NairElGamalReport rep = demos::run_nair_elgamal();
    ok = rep.rows_match && rep.vertices_ok;
    out = Json{{"name", name},
               {"rows_match", rep.rows_match},
               {"vertices_ok", rep.vertices_ok},
               {"detail", rep.detail}};
  } else if (name == "covering_pair") {
    CoveringExperiment exp = demos::covering_pair_experiment(200, 11);
    CoveringResult res = run_covering(exp);
    ok = res.estimate >= 0.9;
    out = covering_result_to_json(exp, res);
  } else {
    throw std::invalid_argument("unknown demo: " + name);
  }
  out["ok"] = ok;
  return json_text(out);
}

}  // namespace
}  // namespace groupcast

PYBIND11_MODULE(_core, m) {
  using namespace groupcast;
  m.doc() = "groupcast rate-region toolkit (JSON-text boundary)";
  m.attr("__version__") = "0.1.0";
  py::register_exception<ResourceLimitError>(m, "ResourceLimitError");

  m.def("build_system", &build_system, py::arg("request"), py::arg("cap") = 0,
        "Construct an inequality system from a problem JSON string.");
  m.def("eliminate_vars", &eliminate_vars, py::arg("system"),
        py::arg("targets"), py::arg("assign") = "",
        py::arg("exact_prune") = false, py::arg("cap") = 0,
        "Project variables out of a system. Targets are variable names or "
        "the shorthands splits/hats/tildes.");
  m.def("compare_regions", &compare_regions, py::arg("a"), py::arg("b"),
        py::arg("assign"), py::arg("tol") = 1e-9,
        "Decide whether two systems cut the same region under an entropy "
        "assignment.");
  m.def("gamma_table", &gamma_table_text, py::arg("dist"),
        py::arg("order") = "inclusion",
        "Covering deficiency of every up-set of the order.");
  m.def("check_admissible", &check_admissible_text, py::arg("input"),
        py::arg("order") = "inclusion", py::arg("tol") = 1e-9,
        "Check a joint distribution against an order's generation law.");
  m.def("run_covering", &run_covering_text, py::arg("experiment"),
        "Monte-Carlo joint-typicality coverage of an experiment JSON.");
  m.def("assemble_distribution", &assemble_distribution, py::arg("input"),
        "Assemble the full joint distribution of an admissible input.");
  m.def("known_region", &known_region_text, py::arg("name"),
        "Reference systems: korner_marton, cover, two_user_fm, nair_elgamal.");
  m.def("run_demo", &run_demo_text, py::arg("name"),
        "Run a packaged example; the report carries an 'ok' verdict.");
}

#include <CLI11.hpp>

#include <filesystem>
#include <functional>
#include <iostream>
#include <set>

#include "groupcast/demos.hpp"

namespace groupcast {
namespace {

// Primary artifacts go to stdout or, with -o, to a file; everything else
// (renderings, verdict lines, progress) goes to stderr.
void write_artifact(const std::string& out_path, const Json& j) {
  if (out_path.empty()) {
    std::cout << json_text(j);
  } else {
    save_json(out_path, j);
    std::cerr << "wrote " << out_path << "\n";
  }
}

InequalitySystem apply_redundancy(InequalitySystem sys,
                                  const std::string& mode) {
  if (mode == "syntactic") {
    sys.prune_syntactic();
  } else if (mode == "exact") {
    sys = remove_redundant_exact(sys);
  }
  return sys;
}

bool all_rhs_constant(const InequalitySystem& sys) {
  for (const Inequality& row : sys.rows)
    if (!row.rhs.is_constant()) return false;
  return true;
}

// Elimination targets: variable names, or the shorthands "splits", "hats",
// "tildes" for every variable of that kind.
std::vector<Var> resolve_eliminate(const InequalitySystem& sys,
                                   const std::vector<std::string>& tokens) {
  std::vector<Var> out;
  auto add_kind = [&](Var::Kind kind) {
    for (const Var& v : sys.vars)
      if (v.kind == kind) out.push_back(v);
  };
  for (const std::string& token : tokens) {
    std::size_t start = 0;
    while (start <= token.size()) {
      std::size_t comma = token.find(',', start);
      std::string item = token.substr(
          start, comma == std::string::npos ? comma : comma - start);
      if (!item.empty()) {
        if (item == "splits")
          add_kind(Var::Kind::Split);
        else if (item == "hats")
          add_kind(Var::Kind::RateHat);
        else if (item == "tildes")
          add_kind(Var::Kind::RateTilde);
        else
          out.push_back(Var::parse(item));
      }
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  if (out.empty()) throw std::invalid_argument("nothing to eliminate");
  return out;
}

std::vector<SubsetLabel> aux_labels(const JointDistribution& dist) {
  std::vector<SubsetLabel> labels;
  for (const Symbol& s : dist.universe.symbols)
    if (s.kind == Symbol::Kind::U) labels.push_back(s.label);
  if (labels.empty())
    throw std::invalid_argument("distribution carries no auxiliary symbols");
  return labels;
}

// --order accepts "inclusion", "discrete", or a path to an order JSON.
SuperpositionOrder resolve_order(const std::string& flag,
                                 const std::vector<SubsetLabel>& labels) {
  if (flag == "inclusion" || flag == "discrete") {
    int K = 0;
    for (SubsetLabel s : labels) K = std::max(K, s.max_member());
    MessageIndexFamily fam = MessageIndexFamily::make(K, labels);
    return flag == "inclusion" ? SuperpositionOrder::inclusion(fam)
                               : SuperpositionOrder::discrete(fam);
  }
  SuperpositionOrder order = order_from_json(load_json(flag));
  if (!(order.family.labels == sorted_labels(labels)))
    throw std::invalid_argument(
        "order labels do not match the distribution's auxiliaries");
  return order;
}

struct Options {
  std::string in_a, in_b, out, assign;
  std::string order = "inclusion";
  std::string redundancy = "none";
  std::vector<std::string> eliminate;
  double tol = 1e-9;
  std::uint64_t seed = 0;
  std::size_t cap = 0;
  bool seed_given = false, cap_given = false;
  std::string demo_name;
};

int run_build(const Options& opt) {
  BuildRequest req = build_request_from_json(load_json(opt.in_a));
  FmOptions fmo;
  if (opt.cap_given) fmo.row_cap = opt.cap;
  InequalitySystem sys = req.build(fmo);
  if (!opt.assign.empty())
    sys = bind_assignment(sys, assignment_from_json(load_json(opt.assign)));
  sys = apply_redundancy(std::move(sys), opt.redundancy);
  write_artifact(opt.out, system_to_json(sys));
  std::cerr << sys.str();
  return 0;
}

int run_eliminate(const Options& opt) {
  InequalitySystem sys = system_from_json(load_json(opt.in_a));
  if (!opt.assign.empty())
    sys = bind_assignment(sys, assignment_from_json(load_json(opt.assign)));
  std::vector<Var> targets = resolve_eliminate(sys, opt.eliminate);
  FmOptions fmo;
  if (opt.cap_given) fmo.row_cap = opt.cap;
  fmo.exact_prune_each_step =
      opt.redundancy == "exact" && all_rhs_constant(sys);
  InequalitySystem projected = fm_eliminate(sys, targets, fmo);
  projected = apply_redundancy(std::move(projected), opt.redundancy);
  write_artifact(opt.out, system_to_json(projected));
  std::cerr << projected.str();
  return 0;
}

int run_compare(const Options& opt) {
  InequalitySystem a = system_from_json(load_json(opt.in_a));
  InequalitySystem b = system_from_json(load_json(opt.in_b));
  EntropyAssignment assign = assignment_from_json(load_json(opt.assign));
  RegionCompare cmp = region_equal(a, b, assign, opt.tol);
  Json out{{"equal", cmp.equal}, {"detail", cmp.detail}};
  if (cmp.witness) {
    Json w = Json::array();
    for (const Rat& v : *cmp.witness) w.push_back(rat_str(v));
    out["witness"] = w;
    out["witness_in_first"] = cmp.witness_in_first;
    out["violated_row"] = cmp.violated_row;
  }
  write_artifact(opt.out, out);
  std::cerr << (cmp.equal ? "regions equal" : "regions differ") << ": "
            << cmp.detail << "\n";
  return cmp.equal ? 0 : 1;
}

int run_gamma(const Options& opt) {
  JointDistribution dist = distribution_from_json(load_json(opt.in_a));
  SuperpositionOrder order = resolve_order(opt.order, aux_labels(dist));
  GammaTable table = gamma_table(dist, order);
  write_artifact(opt.out, gamma_table_to_json(table));
  std::cerr << table.values.size() << " up-sets\n";
  return 0;
}

int run_admissible(const Options& opt) {
  Json j = load_json(opt.in_a);
  JointDistribution dist = [&] {
    if (j.contains("q_pmf")) return assemble_joint(admissible_from_json(j));
    return distribution_from_json(j);
  }();
  SuperpositionOrder order =
      j.contains("q_pmf") ? order_from_json(j.at("order"))
                          : resolve_order(opt.order, aux_labels(dist));
  AdmissibleReport rep = check_admissible(dist, order, opt.tol);
  write_artifact(opt.out,
                 Json{{"ok", rep.ok},
                      {"x_deterministic", rep.x_deterministic},
                      {"factorizes", rep.factorizes},
                      {"h_x_given_rest", rep.h_x_given_rest},
                      {"kl_factorization", rep.kl_factorization},
                      {"detail", rep.detail}});
  std::cerr << (rep.ok ? "admissible" : "not admissible") << ": " << rep.detail
            << "\n";
  return rep.ok ? 0 : 1;
}

int run_entropies(const Options& opt) {
  Json j = load_json(opt.in_a);
  JointDistribution dist = j.contains("q_pmf")
                               ? assemble_joint(admissible_from_json(j))
                               : distribution_from_json(j);
  std::set<SymbolSet, SymbolSetLess> sets;
  for (const std::string& path : opt.eliminate)
    for (const SymbolSet& s :
         system_from_json(load_json(path)).referenced_symbol_sets())
      sets.insert(s);
  if (sets.empty())
    throw std::invalid_argument("no symbol sets referenced (pass --for)");
  EntropyAssignment assign = assignment_from_distribution(
      dist, std::vector<SymbolSet>(sets.begin(), sets.end()));
  write_artifact(opt.out, assignment_to_json(assign));
  std::cerr << assign.values.size() << " entropies\n";
  return 0;
}

int run_covering(const Options& opt) {
  CoveringExperiment exp = covering_experiment_from_json(load_json(opt.in_a));
  if (opt.seed_given) exp.seed = opt.seed;
  if (opt.cap_given) exp.tuple_cap = opt.cap;
  CoveringResult res = run_covering(exp);
  write_artifact(opt.out, covering_result_to_json(exp, res));
  std::cerr << "success " << res.successes << "/" << res.trials << " ("
            << res.estimate << " +- " << res.half_width << ")\n";
  return 0;
}

Json equivalence_json(const std::string& name,
                      const demos::EquivalenceReport& rep) {
  return Json{{"name", name},
              {"equal", rep.equal},
              {"detail", rep.detail},
              {"built", system_to_json(rep.built)},
              {"reference", system_to_json(rep.reference)},
              {"assignment", assignment_to_json(rep.assignment)}};
}

int run_demo(const Options& opt) {
  const std::string& name = opt.demo_name;
  if (name == "combination3") {
    demos::Combination3Report rep = demos::run_combination3();
    write_artifact(opt.out, Json{{"name", name},
                                 {"inequalities", rep.inequality_count},
                                 {"system", system_to_json(rep.system)}});
    std::cerr << "combination3: " << rep.inequality_count
              << " inequalities beyond nonnegativity\n";
    return rep.inequality_count == 15 ? 0 : 1;
  }
  if (name == "two_user" || name == "cover" || name == "korner_marton" ||
      name == "marton") {
    demos::EquivalenceReport rep =
        name == "two_user"      ? demos::run_two_user()
        : name == "cover"       ? demos::run_cover()
        : name == "korner_marton" ? demos::run_korner_marton()
                                  : demos::run_marton();
    write_artifact(opt.out, equivalence_json(name, rep));
    std::cerr << name << ": " << (rep.equal ? "equal" : "DIFFER") << " ("
              << rep.detail << ")\n";
    return rep.equal ? 0 : 1;
  }
  if (name == "nair_elgamal") {
    demos::NairElGamalReport rep = demos::run_nair_elgamal();
    write_artifact(opt.out,
                   Json{{"name", name},
                        {"rows_match", rep.rows_match},
                        {"vertices_ok", rep.vertices_ok},
                        {"detail", rep.detail},
                        {"receiver_rows", system_to_json(rep.receiver_rows)},
                        {"projected", system_to_json(rep.projected)}});
    std::cerr << name << ": " << rep.detail << "\n";
    return rep.rows_match && rep.vertices_ok ? 0 : 1;
  }
  if (name == "covering_pair") {
    CoveringExperiment exp = demos::covering_pair_experiment(200, 11);
    if (opt.seed_given) exp.seed = opt.seed;
    CoveringResult res = run_covering(exp);
    write_artifact(opt.out, covering_result_to_json(exp, res));
    std::cerr << "covering_pair: estimate " << res.estimate << " +- "
              << res.half_width << "\n";
    return res.estimate >= 0.9 ? 0 : 1;
  }
  throw std::invalid_argument(
      "unknown demo (try combination3, two_user, cover, korner_marton, "
      "nair_elgamal, marton, covering_pair)");
}

int run_fixtures(const Options& opt) {
  namespace fs = std::filesystem;
  const fs::path dir = opt.in_a;
  fs::create_directories(dir);
  auto put = [&](const std::string& name, const Json& j) {
    save_json((dir / name).string(), j);
    std::cerr << "wrote " << (dir / name).string() << "\n";
  };

  BuildRequest comb = demos::combination3_request();
  Json comb_json = build_request_to_json(comb);
  comb_json["channel"] = channel_to_json(demos::combination3_network());
  put("combination3.json", comb_json);
  InequalitySystem comb_sys = split_rate_system(comb.spec);
  put("combination3_entropies.json",
      assignment_to_json(combination_assignment(
          demos::combination3_network(), comb.spec.labels(),
          comb_sys.referenced_symbol_sets())));

  put("two_user.json", admissible_to_json(demos::two_user_instance()));
  {
    BuildRequest req;
    AdmissibleSpec inst = demos::two_user_instance();
    req.spec = ProblemSpec::make(inst.order.family, inst.order, true);
    req.construction = "split";
    put("two_user_request.json", build_request_to_json(req));
  }
  put("cover.json", admissible_to_json(demos::cover_instance()));
  put("korner_marton.json",
      admissible_to_json(demos::korner_marton_instance()));
  put("nair_elgamal.json", admissible_to_json(demos::nair_elgamal_instance()));
  {
    AdmissibleSpec inst = demos::nair_elgamal_instance();
    BuildRequest req;
    MessageIndexFamily messages = MessageIndexFamily::make(
        3, {SubsetLabel::from_members({1}), SubsetLabel::from_members({1, 2, 3})});
    req.spec = ProblemSpec::make(messages, inst.order, false);
    req.construction = "split";
    req.split_pairs = {{SubsetLabel::from_members({1}),
                        SubsetLabel::from_members({1})},
                       {SubsetLabel::from_members({1}),
                        SubsetLabel::from_members({1, 3})},
                       {SubsetLabel::from_members({1, 2, 3}),
                        SubsetLabel::from_members({1, 2, 3})}};
    put("nair_elgamal_request.json", build_request_to_json(req));
  }
  put("marton_dist.json", distribution_to_json(demos::marton_instance()));
  {
    BuildRequest req;
    MessageIndexFamily fam = MessageIndexFamily::make(
        2, {SubsetLabel::from_members({1}), SubsetLabel::from_members({2})});
    req.spec =
        ProblemSpec::make(fam, SuperpositionOrder::discrete(fam), false);
    req.construction = "binning";
    put("marton_request.json", build_request_to_json(req));
  }
  put("marton_reference.json", system_to_json(demos::marton_reference()));
  for (const char* known :
       {"korner_marton", "cover", "two_user_fm", "nair_elgamal"})
    put(std::string("known_") + known + ".json",
        system_to_json(known_region(known)));
  put("covering_pair.json", covering_experiment_to_json(
                                demos::covering_pair_experiment(200, 11)));
  return 0;
}

}  // namespace
}  // namespace groupcast

int main(int argc, char** argv) {
  using namespace groupcast;
  CLI::App app{"groupcast rate-region toolkit"};
  app.require_subcommand(1);

  Options opt;
  std::function<int()> runner;

  auto add_common = [&](CLI::App* sub, bool with_assign) {
    sub->add_option("-o,--output", opt.out,
                    "write the artifact here instead of stdout");
    if (with_assign)
      sub->add_option("--assign", opt.assign,
                      "entropy assignment JSON to bind against")
          ->check(CLI::ExistingFile);
  };

  CLI::App* build = app.add_subcommand(
      "build", "construct an inequality system from a problem JSON");
  build->add_option("spec", opt.in_a, "problem JSON")->required();
  add_common(build, true);
  build->add_option("--redundancy", opt.redundancy, "post-pass on rows")
      ->check(CLI::IsMember({"none", "syntactic", "exact"}));
  build->add_option("--cap", opt.cap, "row cap")->each([&](std::string) {
    opt.cap_given = true;
  });
  build->callback([&] { runner = [&] { return run_build(opt); }; });

  CLI::App* elim = app.add_subcommand(
      "eliminate", "project variables out of a system with exact arithmetic");
  elim->add_option("system", opt.in_a, "system JSON")->required();
  elim->add_option("--eliminate", opt.eliminate,
                   "comma-separated variable names, or splits/hats/tildes")
      ->required();
  add_common(elim, true);
  elim->add_option("--redundancy", opt.redundancy, "post-pass on rows")
      ->check(CLI::IsMember({"none", "syntactic", "exact"}));
  elim->add_option("--cap", opt.cap, "row cap")->each([&](std::string) {
    opt.cap_given = true;
  });
  elim->callback([&] { runner = [&] { return run_eliminate(opt); }; });

  CLI::App* compare = app.add_subcommand(
      "compare", "test two systems for region equality under an assignment");
  compare->add_option("first", opt.in_a, "system JSON")->required();
  compare->add_option("second", opt.in_b, "system JSON")->required();
  compare->add_option("--assign", opt.assign, "entropy assignment JSON")
      ->required()
      ->check(CLI::ExistingFile);
  compare->add_option("-o,--output", opt.out, "write the verdict here");
  compare->add_option("--tol", opt.tol, "comparison tolerance");
  compare->callback([&] { runner = [&] { return run_compare(opt); }; });

  CLI::App* gamma = app.add_subcommand(
      "gamma", "covering deficiencies of every up-set of an order");
  gamma->add_option("dist", opt.in_a, "distribution JSON")->required();
  gamma->add_option("--order", opt.order,
                    "inclusion | discrete | path to an order JSON");
  add_common(gamma, false);
  gamma->callback([&] { runner = [&] { return run_gamma(opt); }; });

  CLI::App* adm = app.add_subcommand(
      "admissible", "check a distribution against an order's generation law");
  adm->add_option("dist", opt.in_a,
                  "distribution JSON or admissible-input JSON")
      ->required();
  adm->add_option("--order", opt.order,
                  "inclusion | discrete | path to an order JSON");
  adm->add_option("--tol", opt.tol, "check tolerance");
  add_common(adm, false);
  adm->callback([&] { runner = [&] { return run_admissible(opt); }; });

  CLI::App* ent = app.add_subcommand(
      "entropies", "evaluate the entropies a system references on an input");
  ent->add_option("input", opt.in_a,
                  "distribution JSON or admissible-input JSON")
      ->required();
  ent->add_option("--for", opt.eliminate, "system JSONs to cover")
      ->required()
      ->check(CLI::ExistingFile);
  add_common(ent, false);
  ent->callback([&] { runner = [&] { return run_entropies(opt); }; });

  CLI::App* cov = app.add_subcommand(
      "covering", "Monte-Carlo joint-typicality coverage of an experiment");
  cov->add_option("experiment", opt.in_a, "experiment JSON")->required();
  cov->add_option("--seed", opt.seed, "override the experiment seed")
      ->each([&](std::string) { opt.seed_given = true; });
  cov->add_option("--cap", opt.cap, "index tuple cap")
      ->each([&](std::string) { opt.cap_given = true; });
  add_common(cov, false);
  cov->callback([&] { runner = [&] { return run_covering(opt); }; });

  CLI::App* demo =
      app.add_subcommand("demo", "run a packaged example end-to-end");
  demo->add_option("name", opt.demo_name, "demo name")->required();
  demo->add_option("--seed", opt.seed, "override seed where applicable")
      ->each([&](std::string) { opt.seed_given = true; });
  add_common(demo, false);
  demo->callback([&] { runner = [&] { return run_demo(opt); }; });

  CLI::App* fix = app.add_subcommand(
      "fixtures", "regenerate the packaged fixture JSONs into a directory");
  fix->add_option("dir", opt.in_a, "target directory")->required();
  fix->callback([&] { runner = [&] { return run_fixtures(opt); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    return runner ? runner() : 2;
  } catch (const ResourceLimitError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

#include "groupcast/json_io.hpp"

#include <filesystem>
#include <fstream>

namespace groupcast {

namespace {

// Pulls the symbol set out of an "H(Q,U_1)" style key.
SymbolSet entropy_key_parse(const std::string& key) {
  if (key.size() < 4 || key.substr(0, 2) != "H(" || key.back() != ')')
    throw std::invalid_argument("bad entropy term key: " + key);
  return sym_set_parse(key.substr(2, key.size() - 3));
}

std::string entropy_key(const SymbolSet& t) {
  return "H(" + sym_set_name(t) + ")";
}

std::vector<std::pair<SubsetLabel, SubsetLabel>> label_pairs_from_json(
    const Json& j) {
  std::vector<std::pair<SubsetLabel, SubsetLabel>> pairs;
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2)
      throw std::invalid_argument("label pair must be a 2-element array");
    pairs.emplace_back(label_from_json(p[0]), label_from_json(p[1]));
  }
  return pairs;
}

Json label_pairs_to_json(
    const std::vector<std::pair<SubsetLabel, SubsetLabel>>& pairs) {
  Json out = Json::array();
  for (const auto& [a, b] : pairs)
    out.push_back(Json::array({label_to_json(a), label_to_json(b)}));
  return out;
}

}  // namespace

Json label_to_json(SubsetLabel s) {
  Json out = Json::array();
  for (int m : s.members()) out.push_back(m);
  return out;
}

SubsetLabel label_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("label must be an int array");
  std::vector<int> members;
  for (const auto& v : j) {
    if (!v.is_number_integer())
      throw std::invalid_argument("label members must be integers");
    members.push_back(v.get<int>());
  }
  return SubsetLabel::from_members(members);
}

Json labels_to_json(const std::vector<SubsetLabel>& v) {
  Json out = Json::array();
  for (SubsetLabel s : v) out.push_back(label_to_json(s));
  return out;
}

std::vector<SubsetLabel> labels_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected an array of labels");
  std::vector<SubsetLabel> out;
  for (const auto& l : j) out.push_back(label_from_json(l));
  return out;
}

Json rat_to_json(const Rat& r) { return rat_str(r); }

Rat rat_from_json(const Json& j) {
  if (j.is_string()) return rat_parse(j.get<std::string>());
  if (j.is_number_integer()) return Rat(j.get<long long>());
  if (j.is_number_float()) return rat_from_double(j.get<double>());
  throw std::invalid_argument("rational must be a \"p/q\" string or a number");
}

Json order_to_json(const SuperpositionOrder& o) {
  Json out;
  switch (o.kind) {
    case OrderKind::Inclusion: out["kind"] = "inclusion"; break;
    case OrderKind::Discrete: out["kind"] = "discrete"; break;
    case OrderKind::Explicit:
      out["kind"] = "explicit";
      out["pairs"] = label_pairs_to_json(o.strict_pairs());
      break;
  }
  out["K"] = o.family.K;
  out["labels"] = labels_to_json(o.family.labels);
  return out;
}

SuperpositionOrder order_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("order must be an object");
  const std::string kind = j.at("kind").get<std::string>();
  MessageIndexFamily fam = MessageIndexFamily::make(
      j.at("K").get<int>(), labels_from_json(j.at("labels")));
  if (kind == "inclusion") return SuperpositionOrder::inclusion(fam);
  if (kind == "discrete") return SuperpositionOrder::discrete(fam);
  if (kind == "explicit")
    return SuperpositionOrder::explicit_pairs(
        fam, label_pairs_from_json(j.value("pairs", Json::array())));
  throw std::invalid_argument("unknown order kind: " + kind);
}

Json expr_to_json(const EntropyExpr& e) {
  Json terms = Json::object();
  for (const auto& [t, c] : e.terms) terms[entropy_key(t)] = rat_to_json(c);
  return Json{{"terms", terms}, {"const", rat_to_json(e.constant)}};
}

EntropyExpr expr_from_json(const Json& j) {
  EntropyExpr e;
  if (j.contains("terms"))
    for (const auto& [key, val] : j.at("terms").items())
      e.add_term(entropy_key_parse(key), rat_from_json(val));
  if (j.contains("const")) e.constant = rat_from_json(j.at("const"));
  return e;
}

Json system_to_json(const InequalitySystem& sys) {
  Json vars = Json::array();
  for (const Var& v : sys.vars) vars.push_back(v.name());
  Json rows = Json::array();
  for (const Inequality& row : sys.rows) {
    Json coeffs = Json::object();
    for (std::size_t i = 0; i < row.coeffs.size(); ++i)
      if (row.coeffs[i] != 0)
        coeffs[sys.vars[i].name()] = rat_to_json(row.coeffs[i]);
    Json r{{"coeffs", coeffs}, {"rhs", expr_to_json(row.rhs)}};
    if (!row.note.empty()) r["note"] = row.note;
    if (row.rhs_nonneg) r["rhs_nonneg"] = true;
    rows.push_back(std::move(r));
  }
  return Json{{"variables", vars}, {"rows", rows}};
}

InequalitySystem system_from_json(const Json& j) {
  InequalitySystem sys;
  for (const auto& name : j.at("variables"))
    sys.vars.push_back(Var::parse(name.get<std::string>()));
  for (std::size_t i = 0; i < sys.vars.size(); ++i)
    for (std::size_t k = i + 1; k < sys.vars.size(); ++k)
      if (sys.vars[i] == sys.vars[k])
        throw std::invalid_argument("duplicate variable " + sys.vars[i].name());
  for (const auto& r : j.value("rows", Json::array())) {
    std::vector<std::pair<Var, Rat>> lhs;
    for (const auto& [key, val] : r.at("coeffs").items())
      lhs.emplace_back(Var::parse(key), rat_from_json(val));
    sys.add_row(lhs, expr_from_json(r.at("rhs")), r.value("note", ""),
                r.value("rhs_nonneg", false));
  }
  return sys;
}

Json assignment_to_json(const EntropyAssignment& a) {
  Json values = Json::object();
  for (const auto& [t, v] : a.values) values[entropy_key(t)] = rat_to_json(v);
  return Json{{"values", values}};
}

EntropyAssignment assignment_from_json(const Json& j) {
  EntropyAssignment a;
  const Json& values = j.contains("values") ? j.at("values") : j;
  if (!values.is_object())
    throw std::invalid_argument("assignment must map H(...) keys to values");
  for (const auto& [key, val] : values.items())
    a.values[entropy_key_parse(key)] = rat_from_json(val);
  return a;
}

Json distribution_to_json(const JointDistribution& d) {
  Json syms = Json::array();
  for (const Symbol& s : d.universe.symbols) syms.push_back(s.name());
  return Json{{"symbols", syms},
              {"cardinalities", d.universe.cardinalities},
              {"pmf", d.p}};
}

JointDistribution distribution_from_json(const Json& j) {
  std::vector<Symbol> syms;
  for (const auto& name : j.at("symbols"))
    syms.push_back(Symbol::parse(name.get<std::string>()));
  VariableUniverse u = VariableUniverse::make(
      std::move(syms), j.at("cardinalities").get<std::vector<int>>());
  return JointDistribution::make(std::move(u),
                                 j.at("pmf").get<std::vector<double>>());
}

Json channel_to_json(const CombinationNetwork& net) {
  Json comps = Json::object();
  for (std::size_t i = 0; i < net.components.size(); ++i) {
    Json key = label_to_json(net.components[i]);
    comps[key.dump()] = net.bits[i];
  }
  return Json{{"combination", Json{{"K", net.K}, {"components", comps}}}};
}

Json channel_to_json(const TabularBC& bc) {
  return Json{{"table", Json{{"x_size", bc.x_size},
                             {"y_sizes", bc.y_sizes},
                             {"w", bc.w}}}};
}

TabularBC ChannelSpec::to_table() const {
  if (table) return *table;
  if (combination) return combination->to_table();
  throw std::invalid_argument("empty channel spec");
}

ChannelSpec channel_from_json(const Json& j) {
  ChannelSpec spec;
  if (j.contains("combination")) {
    const Json& c = j.at("combination");
    std::vector<std::pair<SubsetLabel, int>> comps;
    for (const auto& [key, bits] : c.at("components").items()) {
      if (!bits.is_number_integer())
        throw std::invalid_argument("component bits must be integers");
      comps.emplace_back(label_from_json(Json::parse(key)), bits.get<int>());
    }
    spec.combination = CombinationNetwork::make(c.at("K").get<int>(), comps);
  } else if (j.contains("table")) {
    const Json& t = j.at("table");
    spec.table = TabularBC::make(t.at("x_size").get<int>(),
                                 t.at("y_sizes").get<std::vector<int>>(),
                                 t.at("w").get<std::vector<double>>());
  } else {
    throw std::invalid_argument("channel needs \"combination\" or \"table\"");
  }
  return spec;
}

Json admissible_to_json(const AdmissibleSpec& spec) {
  Json conds = Json::array();
  for (std::size_t i = 0; i < spec.conditionals.size(); ++i) {
    const int cols = spec.u_sizes[i];
    Json rows = Json::array();
    Json row = Json::array();
    for (std::size_t k = 0; k < spec.conditionals[i].size(); ++k) {
      row.push_back(spec.conditionals[i][k]);
      if (static_cast<int>(row.size()) == cols) {
        rows.push_back(std::move(row));
        row = Json::array();
      }
    }
    conds.push_back(std::move(rows));
  }
  Json out{{"order", order_to_json(spec.order)},
           {"q_pmf", spec.q_pmf},
           {"u_sizes", spec.u_sizes},
           {"conditionals", conds},
           {"x_size", spec.x_size},
           {"input_map", spec.input_map}};
  if (spec.channel) out["channel"] = channel_to_json(*spec.channel);
  return out;
}

AdmissibleSpec admissible_from_json(const Json& j) {
  AdmissibleSpec spec;
  spec.order = order_from_json(j.at("order"));
  spec.q_pmf = j.at("q_pmf").get<std::vector<double>>();
  spec.u_sizes = j.at("u_sizes").get<std::vector<int>>();
  for (const auto& table : j.at("conditionals")) {
    std::vector<double> flat;
    for (const auto& entry : table) {
      if (entry.is_array())  // row-major rows over the u_S alphabet
        for (const auto& v : entry) flat.push_back(v.get<double>());
      else
        flat.push_back(entry.get<double>());
    }
    spec.conditionals.push_back(std::move(flat));
  }
  spec.x_size = j.at("x_size").get<int>();
  spec.input_map = j.at("input_map").get<std::vector<int>>();
  if (j.contains("channel"))
    spec.channel = channel_from_json(j.at("channel")).to_table();
  spec.validate();
  return spec;
}

InequalitySystem BuildRequest::build(const FmOptions& opts) const {
  const std::vector<std::pair<SubsetLabel, SubsetLabel>>* pairs =
      split_pairs ? &*split_pairs : nullptr;
  if (construction == "split") return split_rate_system(spec, pairs);
  if (construction == "minkowski") return minkowski_form_system(spec, opts);
  if (construction == "receivers")
    return receivers_intersection(spec, Var::Kind::Rate);
  if (construction == "receivers_all_subsets")
    return receivers_intersection(spec, Var::Kind::Rate, true);
  if (construction == "binning")
    return binning_system(spec, pairs, tilde_dominates_hat);
  throw std::invalid_argument("unknown construction: " + construction);
}

Json build_request_to_json(const BuildRequest& r) {
  Json out{{"K", r.spec.order.family.K},
           {"messages", labels_to_json(r.spec.messages.labels)},
           {"family", labels_to_json(r.spec.order.family.labels)},
           {"order", order_to_json(r.spec.order)},
           {"time_sharing", r.spec.with_time_sharing},
           {"construction", r.construction}};
  if (r.split_pairs) out["split_pairs"] = label_pairs_to_json(*r.split_pairs);
  if (r.tilde_dominates_hat) out["tilde_dominates_hat"] = true;
  return out;
}

BuildRequest build_request_from_json(const Json& j) {
  BuildRequest r;
  const int K = j.at("K").get<int>();
  std::vector<SubsetLabel> messages = labels_from_json(j.at("messages"));
  std::vector<SubsetLabel> family =
      j.contains("family") ? labels_from_json(j.at("family")) : messages;
  MessageIndexFamily fam = MessageIndexFamily::make(K, family);

  Json oj = j.value("order", Json{{"kind", "inclusion"}});
  if (!oj.contains("K")) oj["K"] = K;
  if (!oj.contains("labels")) oj["labels"] = labels_to_json(fam.labels);
  SuperpositionOrder order = order_from_json(oj);
  if (!(order.family.labels == fam.labels))
    throw std::invalid_argument("order labels disagree with the family");

  r.spec = ProblemSpec::make(MessageIndexFamily::make(K, messages), order,
                             j.value("time_sharing", true));
  r.construction = j.value("construction", "split");
  if (j.contains("split_pairs"))
    r.split_pairs = label_pairs_from_json(j.at("split_pairs"));
  r.tilde_dominates_hat = j.value("tilde_dominates_hat", false);
  return r;
}

Json gamma_table_to_json(const GammaTable& t) {
  Json up_sets = Json::array();
  for (const auto& member : t.up_sets.members)
    up_sets.push_back(labels_to_json(member));
  return Json{{"up_sets", up_sets}, {"values", t.values}};
}

Json covering_experiment_to_json(const CoveringExperiment& exp) {
  return Json{{"order", order_to_json(exp.order)},
              {"cardinalities", exp.target.universe.cardinalities},
              {"target", exp.target.p},
              {"rates", exp.rates},
              {"n", exp.n},
              {"eps", exp.eps},
              {"trials", exp.trials},
              {"seed", exp.seed},
              {"cap", exp.tuple_cap}};
}

CoveringExperiment covering_experiment_from_json(const Json& j) {
  CoveringExperiment exp;
  exp.order = order_from_json(j.at("order"));
  std::vector<Symbol> syms;
  for (SubsetLabel s : exp.order.family.labels) syms.push_back(Symbol::u(s));
  VariableUniverse u = VariableUniverse::make(
      std::move(syms), j.at("cardinalities").get<std::vector<int>>());
  exp.target = JointDistribution::make(
      std::move(u), j.at("target").get<std::vector<double>>());
  exp.rates = j.at("rates").get<std::vector<double>>();
  exp.n = j.at("n").get<int>();
  exp.eps = j.value("eps", 0.1);
  exp.trials = j.value("trials", 100);
  exp.seed = j.value("seed", std::uint64_t{0});
  exp.tuple_cap = j.value("cap", std::size_t{1} << 20);
  exp.validate();
  return exp;
}

Json covering_result_to_json(const CoveringExperiment& exp,
                             const CoveringResult& res) {
  return Json{{"estimate", res.estimate}, {"half_width", res.half_width},
              {"trials", res.trials},     {"successes", res.successes},
              {"n", exp.n},               {"seed", exp.seed}};
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return Json::parse(in);
}

void save_json(const std::string& path, const Json& j) {
  namespace fs = std::filesystem;
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << json_text(j);
    if (!out) throw std::runtime_error("short write to " + tmp);
  }
  fs::rename(tmp, path);
}

std::string json_text(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace groupcast

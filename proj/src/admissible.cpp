#include "groupcast/admissible.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace groupcast {

namespace {
constexpr double kPmfTol = 1e-12;
}

std::vector<SubsetLabel> AdmissibleSpec::parents_of(int i) const {
  return order.strict_up_set_of(order.family.labels[i]);
}

std::size_t AdmissibleSpec::joint_input_cells() const {
  std::size_t n = q_pmf.size();
  for (int s : u_sizes) {
    if (n > kMaxJointCells / static_cast<std::size_t>(s))
      throw ResourceLimitError("admissible spec exceeds the cell cap");
    n *= static_cast<std::size_t>(s);
  }
  return n;
}

void AdmissibleSpec::validate() const {
  const auto& labels = order.family.labels;
  if (labels.empty()) throw std::invalid_argument("admissible: empty family");
  if (u_sizes.size() != labels.size() || conditionals.size() != labels.size())
    throw std::invalid_argument("admissible: per-label table count mismatch");
  if (q_pmf.empty()) throw std::invalid_argument("admissible: empty q pmf");
  double qsum = 0.0;
  for (double v : q_pmf) {
    if (!(v >= 0.0)) throw std::invalid_argument("admissible: bad q pmf");
    qsum += v;
  }
  if (std::abs(qsum - 1.0) > kPmfTol)
    throw std::invalid_argument("admissible: q pmf sums to " +
                                std::to_string(qsum));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (u_sizes[i] < 1)
      throw std::invalid_argument("admissible: alphabet of U_" +
                                  labels[i].str() + " must be >= 1");
    std::size_t rows = q_pmf.size();
    for (const SubsetLabel& p : parents_of(static_cast<int>(i)))
      rows *= static_cast<std::size_t>(u_sizes[order.family.index_of(p)]);
    if (conditionals[i].size() !=
        rows * static_cast<std::size_t>(u_sizes[i]))
      throw std::invalid_argument("admissible: conditional table for U_" +
                                  labels[i].str() + " has the wrong size");
    for (std::size_t r = 0; r < rows; ++r) {
      double sum = 0.0;
      for (int v = 0; v < u_sizes[i]; ++v) {
        double e = conditionals[i][r * u_sizes[i] + v];
        if (!(e >= 0.0))
          throw std::invalid_argument("admissible: negative conditional");
        sum += e;
      }
      if (std::abs(sum - 1.0) > kPmfTol)
        throw std::invalid_argument("admissible: conditional row for U_" +
                                    labels[i].str() + " sums to " +
                                    std::to_string(sum));
    }
  }
  if (x_size < 1) throw std::invalid_argument("admissible: x_size must be >= 1");
  if (input_map.size() != joint_input_cells())
    throw std::invalid_argument("admissible: input map size mismatch");
  for (int x : input_map)
    if (x < 0 || x >= x_size)
      throw std::invalid_argument("admissible: input map value out of range");
  if (channel && channel->x_size != x_size)
    throw std::invalid_argument("admissible: channel input alphabet mismatch");
}

JointDistribution assemble_joint(const AdmissibleSpec& spec) {
  spec.validate();
  const auto& labels = spec.order.family.labels;
  int L = static_cast<int>(labels.size());

  std::vector<Symbol> syms = {Symbol::q()};
  std::vector<int> cards = {spec.q_size()};
  for (int i = 0; i < L; ++i) {
    syms.push_back(Symbol::u(labels[i]));
    cards.push_back(spec.u_sizes[i]);
  }
  syms.push_back(Symbol::x());
  cards.push_back(spec.x_size);
  int K = spec.channel ? spec.channel->receivers() : 0;
  for (int j = 1; j <= K; ++j) {
    syms.push_back(Symbol::y(j));
    cards.push_back(spec.channel->y_sizes[j - 1]);
  }
  JointDistribution joint =
      JointDistribution::zeros(VariableUniverse::make(syms, cards));

  // parent positions per label, in canonical parent order
  std::vector<std::vector<int>> parent_pos(L);
  for (int i = 0; i < L; ++i)
    for (const SubsetLabel& p : spec.parents_of(i))
      parent_pos[i].push_back(spec.order.family.index_of(p));

  std::size_t in_cells = spec.joint_input_cells();
  std::vector<int> u(L, 0);
  std::vector<int> tuple(syms.size(), 0);
  std::size_t out_cells = spec.channel ? spec.channel->output_cells() : 1;
  std::vector<int> y(K, 0);
  for (std::size_t cell = 0; cell < in_cells; ++cell) {
    std::size_t rest = cell;
    for (int i = L - 1; i >= 0; --i) {
      u[i] = static_cast<int>(rest % spec.u_sizes[i]);
      rest /= spec.u_sizes[i];
    }
    int q = static_cast<int>(rest);
    double p = spec.q_pmf[q];
    for (int i = 0; i < L && p > 0.0; ++i) {
      std::size_t row = static_cast<std::size_t>(q);
      for (int pp : parent_pos[i])
        row = row * spec.u_sizes[pp] + static_cast<std::size_t>(u[pp]);
      p *= spec.conditionals[i][row * spec.u_sizes[i] +
                                static_cast<std::size_t>(u[i])];
    }
    if (p <= 0.0) continue;
    int x = spec.input_map[cell];
    tuple[0] = q;
    for (int i = 0; i < L; ++i) tuple[1 + i] = u[i];
    tuple[1 + L] = x;
    if (!spec.channel) {
      joint.at(tuple) += p;
      continue;
    }
    std::fill(y.begin(), y.end(), 0);
    const std::vector<double>& w = spec.channel->w;
    for (std::size_t k = 0; k < out_cells; ++k) {
      double wp = w[static_cast<std::size_t>(x) * out_cells + k];
      if (wp > 0.0) {
        for (int j = 0; j < K; ++j) tuple[2 + L + j] = y[j];
        joint.at(tuple) += p * wp;
      }
      for (int i = K - 1; i >= 0; --i) {
        if (++y[i] < spec.channel->y_sizes[i]) break;
        y[i] = 0;
      }
    }
  }
  joint.finish();
  return joint;
}

namespace {

// Probability of a value tuple under a marginal, looked up by symbol.
double prob_of(const JointDistribution& m,
               const std::map<std::string, int>& value) {
  std::vector<int> tuple;
  tuple.reserve(m.universe.symbols.size());
  for (const Symbol& s : m.universe.symbols) tuple.push_back(value.at(s.name()));
  return m.at(tuple);
}

}  // namespace

AdmissibleReport check_admissible(const JointDistribution& dist,
                                  const SuperpositionOrder& order,
                                  double tol) {
  AdmissibleReport rep;
  const auto& labels = order.family.labels;

  SymbolSet uf;
  for (const SubsetLabel& s : labels) uf.push_back(Symbol::u(s));
  uf = sym_set(uf);
  for (const Symbol& s : uf)
    if (dist.universe.index_of(s) < 0) {
      rep.detail = "universe lacks " + s.name();
      return rep;
    }
  if (dist.universe.index_of(Symbol::x()) < 0) {
    rep.detail = "universe lacks X";
    return rep;
  }
  bool has_q = dist.universe.index_of(Symbol::q()) >= 0;
  SymbolSet q = has_q ? SymbolSet{Symbol::q()} : SymbolSet{};
  SymbolSet ufq = sym_union(uf, q);

  rep.h_x_given_rest = dist.entropy(sym_union(ufq, {Symbol::x()})) -
                       dist.entropy(ufq);
  rep.x_deterministic = rep.h_x_given_rest < tol;
  if (!rep.x_deterministic)
    rep.detail = "H(X | U_F, Q) = " + std::to_string(rep.h_x_given_rest);

  // Divergence between the (U_F, Q)-marginal and the product of its own
  // per-label conditionals down the order.
  JointDistribution marg = dist.marginal(ufq);
  std::map<std::string, JointDistribution> sub;  // keyed by symbol-set name
  auto sub_marginal = [&](const SymbolSet& s) -> const JointDistribution& {
    std::string key = sym_set_name(s);
    auto it = sub.find(key);
    if (it == sub.end()) it = sub.emplace(key, marg.marginal(s)).first;
    return it->second;
  };

  double kl = 0.0;
  std::vector<int> tuple(marg.universe.symbols.size(), 0);
  for (std::size_t cell = 0; cell < marg.p.size(); ++cell) {
    double p = marg.p[cell];
    if (p > 0.0) {
      std::map<std::string, int> value;
      for (std::size_t i = 0; i < tuple.size(); ++i)
        value[marg.universe.symbols[i].name()] = tuple[i];
      double f = has_q ? prob_of(sub_marginal({Symbol::q()}), value) : 1.0;
      for (const SubsetLabel& s : labels) {
        SymbolSet parents = q;
        for (const SubsetLabel& p2 : order.strict_up_set_of(s))
          parents.push_back(Symbol::u(p2));
        parents = sym_set(parents);
        SymbolSet with = sym_union(parents, {Symbol::u(s)});
        double num = prob_of(sub_marginal(with), value);
        double den =
            parents.empty() ? 1.0 : prob_of(sub_marginal(parents), value);
        f *= num / den;
      }
      kl += p * std::log2(p / f);
    }
    for (int i = static_cast<int>(tuple.size()) - 1; i >= 0; --i) {
      if (++tuple[i] < marg.universe.cardinalities[i]) break;
      tuple[i] = 0;
    }
  }
  rep.kl_factorization = kl;
  rep.factorizes = kl < tol;
  if (!rep.factorizes && rep.detail.empty())
    rep.detail = "factorization divergence = " + std::to_string(kl);
  rep.ok = rep.x_deterministic && rep.factorizes;
  return rep;
}

}  // namespace groupcast

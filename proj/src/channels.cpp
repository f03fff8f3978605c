#include "groupcast/channels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "groupcast/admissible.hpp"
#include "groupcast/simplex.hpp"

namespace groupcast {

namespace {

constexpr double kRowSumTol = 1e-12;

void check_rows_stochastic(const std::vector<std::vector<double>>& rows,
                           const char* what) {
  if (rows.empty()) throw std::invalid_argument(std::string(what) + ": empty");
  std::size_t cols = rows[0].size();
  if (cols == 0) throw std::invalid_argument(std::string(what) + ": no columns");
  for (const auto& r : rows) {
    if (r.size() != cols)
      throw std::invalid_argument(std::string(what) + ": ragged rows");
    double sum = 0.0;
    for (double v : r) {
      if (!(v >= 0.0))
        throw std::invalid_argument(std::string(what) + ": negative entry");
      sum += v;
    }
    if (std::abs(sum - 1.0) > kRowSumTol)
      throw std::invalid_argument(std::string(what) + ": row sums to " +
                                  std::to_string(sum));
  }
}

}  // namespace

StochMat stochastic_matrix(std::vector<std::vector<double>> rows) {
  check_rows_stochastic(rows, "stochastic matrix");
  return rows;
}

StochMat chain_compose(const StochMat& a, const StochMat& b) {
  if (a.empty() || b.empty() || a[0].size() != b.size())
    throw std::invalid_argument("chain_compose: inner dimension mismatch");
  StochMat c(a.size(), std::vector<double>(b[0].size(), 0.0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      for (std::size_t k = 0; k < b[0].size(); ++k)
        c[i][k] += a[i][j] * b[j][k];
  return c;
}

TabularBC TabularBC::make(int x_size, std::vector<int> y_sizes,
                          std::vector<double> w) {
  if (x_size < 1) throw std::invalid_argument("channel: x_size must be >= 1");
  if (y_sizes.empty()) throw std::invalid_argument("channel: no receivers");
  TabularBC bc;
  bc.x_size = x_size;
  bc.y_sizes = std::move(y_sizes);
  for (int s : bc.y_sizes)
    if (s < 1) throw std::invalid_argument("channel: output size must be >= 1");
  std::size_t cells = bc.output_cells();
  if (w.size() != static_cast<std::size_t>(x_size) * cells)
    throw std::invalid_argument("channel: table size mismatch");
  for (int x = 0; x < x_size; ++x) {
    double sum = 0.0;
    for (std::size_t k = 0; k < cells; ++k) {
      double v = w[static_cast<std::size_t>(x) * cells + k];
      if (!(v >= 0.0)) throw std::invalid_argument("channel: negative entry");
      sum += v;
    }
    if (std::abs(sum - 1.0) > kRowSumTol)
      throw std::invalid_argument("channel: x-slice sums to " +
                                  std::to_string(sum));
  }
  bc.w = std::move(w);
  return bc;
}

std::size_t TabularBC::output_cells() const {
  std::size_t n = 1;
  for (int s : y_sizes) {
    if (n > kMaxJointCells / static_cast<std::size_t>(s))
      throw ResourceLimitError("channel output alphabet exceeds the cell cap");
    n *= static_cast<std::size_t>(s);
  }
  return n;
}

double TabularBC::prob(int x, const std::vector<int>& y) const {
  if (x < 0 || x >= x_size) throw std::out_of_range("channel: x out of range");
  if (y.size() != y_sizes.size())
    throw std::invalid_argument("channel: output arity mismatch");
  std::size_t idx = 0;
  for (std::size_t j = 0; j < y.size(); ++j) {
    if (y[j] < 0 || y[j] >= y_sizes[j])
      throw std::out_of_range("channel: y out of range");
    idx = idx * static_cast<std::size_t>(y_sizes[j]) +
          static_cast<std::size_t>(y[j]);
  }
  return w[static_cast<std::size_t>(x) * output_cells() + idx];
}

StochMat TabularBC::receiver_table(int j) const {
  if (j < 1 || j > receivers())
    throw std::invalid_argument("channel: receiver out of range");
  StochMat t(static_cast<std::size_t>(x_size),
             std::vector<double>(y_sizes[j - 1], 0.0));
  std::size_t cells = output_cells();
  std::vector<int> y(y_sizes.size(), 0);
  for (int x = 0; x < x_size; ++x) {
    std::fill(y.begin(), y.end(), 0);
    for (std::size_t k = 0; k < cells; ++k) {
      t[x][y[j - 1]] += w[static_cast<std::size_t>(x) * cells + k];
      for (int i = static_cast<int>(y.size()) - 1; i >= 0; --i) {
        if (++y[i] < y_sizes[i]) break;
        y[i] = 0;
      }
    }
  }
  return t;
}

TabularBC cascade_bc(int x_size, const std::vector<StochMat>& stages) {
  if (stages.empty()) throw std::invalid_argument("cascade: no stages");
  std::vector<int> y_sizes;
  std::size_t in = static_cast<std::size_t>(x_size);
  for (const auto& st : stages) {
    check_rows_stochastic(st, "cascade stage");
    if (st.size() != in)
      throw std::invalid_argument("cascade: stage input size mismatch");
    in = st[0].size();
    y_sizes.push_back(static_cast<int>(in));
  }
  std::size_t cells = 1;
  for (int s : y_sizes) cells *= static_cast<std::size_t>(s);
  std::vector<double> w(static_cast<std::size_t>(x_size) * cells, 0.0);
  std::vector<int> y(y_sizes.size(), 0);
  for (int x = 0; x < x_size; ++x) {
    std::fill(y.begin(), y.end(), 0);
    for (std::size_t k = 0; k < cells; ++k) {
      double p = 1.0;
      int prev = x;
      for (std::size_t j = 0; j < stages.size(); ++j) {
        p *= stages[j][prev][y[j]];
        prev = y[j];
      }
      w[static_cast<std::size_t>(x) * cells + k] = p;
      for (int i = static_cast<int>(y.size()) - 1; i >= 0; --i) {
        if (++y[i] < y_sizes[i]) break;
        y[i] = 0;
      }
    }
  }
  return TabularBC::make(x_size, std::move(y_sizes), std::move(w));
}

TabularBC degraded_pair_bc(const StochMat& x_to_y1, const StochMat& y1_to_y2,
                           const StochMat& x_to_y3) {
  check_rows_stochastic(x_to_y1, "degraded pair stage 1");
  check_rows_stochastic(y1_to_y2, "degraded pair stage 2");
  check_rows_stochastic(x_to_y3, "third receiver table");
  if (y1_to_y2.size() != x_to_y1[0].size())
    throw std::invalid_argument("degraded pair: stage size mismatch");
  if (x_to_y3.size() != x_to_y1.size())
    throw std::invalid_argument("degraded pair: input size mismatch");
  int x_size = static_cast<int>(x_to_y1.size());
  std::vector<int> y_sizes = {static_cast<int>(x_to_y1[0].size()),
                              static_cast<int>(y1_to_y2[0].size()),
                              static_cast<int>(x_to_y3[0].size())};
  std::size_t cells = static_cast<std::size_t>(y_sizes[0]) *
                      static_cast<std::size_t>(y_sizes[1]) *
                      static_cast<std::size_t>(y_sizes[2]);
  std::vector<double> w(static_cast<std::size_t>(x_size) * cells);
  std::size_t k = 0;
  for (int x = 0; x < x_size; ++x)
    for (int y1 = 0; y1 < y_sizes[0]; ++y1)
      for (int y2 = 0; y2 < y_sizes[1]; ++y2)
        for (int y3 = 0; y3 < y_sizes[2]; ++y3)
          w[k++] = x_to_y1[x][y1] * y1_to_y2[y1][y2] * x_to_y3[x][y3];
  return TabularBC::make(x_size, std::move(y_sizes), std::move(w));
}

bool degradedness_certificate(const TabularBC& bc, int better, int worse) {
  StochMat wb = bc.receiver_table(better);
  StochMat ww = bc.receiver_table(worse);
  int nb = static_cast<int>(wb[0].size());
  int nw = static_cast<int>(ww[0].size());
  std::size_t nvars = static_cast<std::size_t>(nb) * nw;

  std::vector<std::vector<Rat>> A;
  std::vector<Rat> b;
  auto push = [&](std::vector<Rat> row, Rat rhs) {
    A.push_back(std::move(row));
    b.push_back(std::move(rhs));
  };
  // T >= 0
  for (std::size_t v = 0; v < nvars; ++v) {
    std::vector<Rat> row(nvars, Rat(0));
    row[v] = -1;
    push(std::move(row), Rat(0));
  }
  // each T row sums to 1
  for (int a = 0; a < nb; ++a) {
    std::vector<Rat> row(nvars, Rat(0));
    for (int y = 0; y < nw; ++y) row[static_cast<std::size_t>(a) * nw + y] = 1;
    std::vector<Rat> neg = row;
    for (auto& r : neg) r = -r;
    push(std::move(row), Rat(1));
    push(std::move(neg), Rat(-1));
  }
  // W_worse(y|x) reproduced exactly
  for (int x = 0; x < bc.x_size; ++x) {
    for (int y = 0; y < nw; ++y) {
      std::vector<Rat> row(nvars, Rat(0));
      for (int a = 0; a < nb; ++a)
        row[static_cast<std::size_t>(a) * nw + y] = rat_from_double(wb[x][a]);
      Rat rhs = rat_from_double(ww[x][y]);
      std::vector<Rat> neg = row;
      for (auto& r : neg) r = -r;
      push(std::move(row), rhs);
      push(std::move(neg), -rhs);
    }
  }
  return lp::feasible_point(A, b, nvars).status == lp::Status::Optimal;
}

CombinationNetwork CombinationNetwork::make(
    int K, const std::vector<std::pair<SubsetLabel, int>>& component_bits) {
  if (K < 1 || K > kMaxReceivers)
    throw std::invalid_argument("combination network: bad receiver count");
  CombinationNetwork net;
  net.K = K;
  std::vector<std::pair<SubsetLabel, int>> sorted = component_bits;
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) {
              return canonical_less(a.first, b.first);
            });
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const auto& [label, c] = sorted[i];
    if (label.max_member() > K)
      throw std::invalid_argument("combination network: component " +
                                  label.str() + " outside [1:K]");
    if (c < 0)
      throw std::invalid_argument("combination network: negative bit count");
    if (i > 0 && sorted[i - 1].first == label)
      throw std::invalid_argument("combination network: duplicate component " +
                                  label.str());
    net.components.push_back(label);
    net.bits.push_back(c);
  }
  return net;
}

int CombinationNetwork::bits_of(SubsetLabel s) const {
  for (std::size_t i = 0; i < components.size(); ++i)
    if (components[i] == s) return bits[i];
  return 0;
}

TabularBC CombinationNetwork::to_table() const {
  std::vector<SubsetLabel> active;
  std::vector<int> sizes;
  for (std::size_t i = 0; i < components.size(); ++i)
    if (bits[i] > 0) {
      if (bits[i] >= 24)
        throw ResourceLimitError("combination network component too large");
      active.push_back(components[i]);
      sizes.push_back(1 << bits[i]);
    }
  std::size_t x_cells = 1;
  for (int s : sizes) {
    if (x_cells > kMaxJointCells / static_cast<std::size_t>(s))
      throw ResourceLimitError("combination network input exceeds cell cap");
    x_cells *= static_cast<std::size_t>(s);
  }
  std::vector<int> y_sizes(K, 1);
  for (int j = 1; j <= K; ++j)
    for (std::size_t i = 0; i < active.size(); ++i)
      if (active[i].contains(j)) {
        if (y_sizes[j - 1] >
            static_cast<int>(kMaxJointCells) / sizes[i])
          throw ResourceLimitError("combination network output exceeds cap");
        y_sizes[j - 1] *= sizes[i];
      }
  std::size_t out_cells = 1;
  for (int s : y_sizes) {
    if (out_cells > kMaxJointCells / static_cast<std::size_t>(s))
      throw ResourceLimitError("combination network output exceeds cell cap");
    out_cells *= static_cast<std::size_t>(s);
  }
  if (x_cells > kMaxJointCells / out_cells)
    throw ResourceLimitError("combination network table exceeds cell cap");

  std::vector<double> w(x_cells * out_cells, 0.0);
  std::vector<int> comp_val(active.size(), 0);
  for (std::size_t x = 0; x < x_cells; ++x) {
    // decode x into component values, canonical component order, last fastest
    std::size_t rest = x;
    for (int i = static_cast<int>(active.size()) - 1; i >= 0; --i) {
      comp_val[i] = static_cast<int>(rest % sizes[i]);
      rest /= sizes[i];
    }
    std::size_t y_idx = 0;
    for (int j = 1; j <= K; ++j) {
      std::size_t yj = 0;
      for (std::size_t i = 0; i < active.size(); ++i)
        if (active[i].contains(j))
          yj = yj * static_cast<std::size_t>(sizes[i]) +
               static_cast<std::size_t>(comp_val[i]);
      y_idx = y_idx * static_cast<std::size_t>(y_sizes[j - 1]) + yj;
    }
    w[x * out_cells + y_idx] = 1.0;
  }
  return TabularBC::make(static_cast<int>(x_cells), std::move(y_sizes),
                         std::move(w));
}

AdmissibleSpec bind_channel(AdmissibleSpec spec, TabularBC channel) {
  if (channel.x_size != spec.x_size)
    throw std::invalid_argument("bind_channel: input alphabet mismatch");
  spec.channel = std::move(channel);
  return spec;
}

AdmissibleSpec bind_channel(AdmissibleSpec spec,
                            const CombinationNetwork& net) {
  return bind_channel(std::move(spec), net.to_table());
}

AdmissibleSpec combination_uniform_aux(const CombinationNetwork& net,
                                       const SuperpositionOrder& order) {
  const auto& labels = order.family.labels;
  AdmissibleSpec spec;
  spec.order = order;
  spec.q_pmf = {1.0};
  std::vector<std::pair<SubsetLabel, int>> restricted;
  for (const SubsetLabel& s : labels) {
    if (std::find(net.components.begin(), net.components.end(), s) ==
        net.components.end())
      throw std::invalid_argument("combination network: no component for " +
                                  s.str());
    restricted.emplace_back(s, net.bits_of(s));
  }
  std::size_t x_cells = 1;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    int size = 1 << net.bits_of(labels[i]);
    spec.u_sizes.push_back(size);
    std::size_t parent_rows = 1;
    for (const SubsetLabel& p : order.strict_up_set_of(labels[i]))
      parent_rows *= static_cast<std::size_t>(1 << net.bits_of(p));
    spec.conditionals.emplace_back(parent_rows * size, 1.0 / size);
    if (x_cells > kMaxJointCells / static_cast<std::size_t>(size))
      throw ResourceLimitError("uniform auxiliary input exceeds cell cap");
    x_cells *= static_cast<std::size_t>(size);
  }
  spec.x_size = static_cast<int>(x_cells);
  // X is the concatenation of the auxiliaries, so the input map is the
  // identity on the mixed-radix cell index (Q is a singleton).
  spec.input_map.resize(x_cells);
  for (std::size_t i = 0; i < x_cells; ++i)
    spec.input_map[i] = static_cast<int>(i);
  spec.channel = CombinationNetwork::make(net.K, restricted).to_table();
  spec.validate();
  return spec;
}

EntropyAssignment combination_assignment(const CombinationNetwork& net,
                                         const MessageIndexFamily& family,
                                         const std::vector<SymbolSet>& sets) {
  if (family.labels.size() > 64)
    throw ResourceLimitError("assignment: too many labels");
  for (const SubsetLabel& s : family.labels)
    if (std::find(net.components.begin(), net.components.end(), s) ==
        net.components.end())
      throw std::invalid_argument("combination network: no component for " +
                                  s.str());
  EntropyAssignment assign;
  for (const SymbolSet& t : sets) {
    std::uint64_t owned = 0;  // bit i = component for family label i
    for (const Symbol& sym : t) {
      switch (sym.kind) {
        case Symbol::Kind::Q:
          break;  // constant
        case Symbol::Kind::U: {
          int i = family.index_of(sym.label);
          if (i < 0)
            throw std::invalid_argument("assignment: label " +
                                        sym.label.str() + " outside family");
          owned |= std::uint64_t{1} << i;
          break;
        }
        case Symbol::Kind::X:
          for (std::size_t i = 0; i < family.labels.size(); ++i)
            owned |= std::uint64_t{1} << i;
          break;
        case Symbol::Kind::Y:
          for (std::size_t i = 0; i < family.labels.size(); ++i)
            if (family.labels[i].contains(sym.receiver))
              owned |= std::uint64_t{1} << i;
          break;
      }
    }
    long long total = 0;
    for (std::size_t i = 0; i < family.labels.size(); ++i)
      if (owned & (std::uint64_t{1} << i)) total += net.bits_of(family.labels[i]);
    assign.values[t] = Rat(total);
  }
  return assign;
}

}  // namespace groupcast

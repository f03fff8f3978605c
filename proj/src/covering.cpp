#include "groupcast/covering.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>

namespace groupcast {

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-based stream so each (seed, trial, label, index) pair gets an
// independent, order-insensitive sequence.
struct SplitMix {
  std::uint64_t state;

  explicit SplitMix(std::uint64_t s) : state(s) {}

  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  double next_double() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }
};

std::uint64_t stream_key(std::uint64_t seed, int trial, std::size_t label,
                         std::uint64_t index_key) {
  std::uint64_t s = mix64(seed);
  s = mix64(s ^ static_cast<std::uint64_t>(trial));
  s = mix64(s ^ (static_cast<std::uint64_t>(label) + 0x517cc1b727220a95ULL));
  s = mix64(s ^ index_key);
  return s;
}

bool counts_typical(const std::vector<long>& counts, const double* pmf,
                    std::size_t cells, int n, double eps) {
  for (std::size_t c = 0; c < cells; ++c) {
    const double expect = pmf[c] * n;
    const double slack = eps * expect + 1e-9;
    const double got = static_cast<double>(counts[c]);
    if (got < expect - slack || got > expect + slack) return false;
  }
  return true;
}

// Shared per-run tables: ancestor lists, codebook sizes, and the letterwise
// generating conditionals p(u_S | u at strict ancestors).
struct GenContext {
  const CoveringExperiment* exp = nullptr;
  std::size_t nlabels = 0;
  std::vector<int> cards;
  std::vector<std::size_t> sizes;
  std::vector<std::vector<std::size_t>> ups;      // includes the label itself
  std::vector<std::vector<std::size_t>> parents;  // strict ancestors
  std::vector<std::vector<std::vector<double>>> cond;  // [label][row][own]
  std::vector<std::vector<double>> marginal;           // [label][own]
  std::size_t tuple_count = 0;
};

GenContext build_context(const CoveringExperiment& exp) {
  GenContext ctx;
  ctx.exp = &exp;
  ctx.nlabels = exp.order.family.labels.size();
  ctx.cards.resize(ctx.nlabels);
  for (std::size_t i = 0; i < ctx.nlabels; ++i)
    ctx.cards[i] = exp.target.universe.cardinalities[i];
  ctx.sizes = exp.codebook_sizes();

  ctx.tuple_count = 1;
  for (std::size_t m : ctx.sizes) {
    if (m > exp.tuple_cap / ctx.tuple_count)
      throw ResourceLimitError("covering: index tuple space exceeds cap");
    ctx.tuple_count *= m;
  }

  ctx.ups.resize(ctx.nlabels);
  ctx.parents.resize(ctx.nlabels);
  ctx.cond.resize(ctx.nlabels);
  ctx.marginal.resize(ctx.nlabels);
  const auto& fam = exp.order.family;
  for (std::size_t i = 0; i < ctx.nlabels; ++i) {
    for (SubsetLabel s : exp.order.up_set_of(fam.labels[i]))
      ctx.ups[i].push_back(static_cast<std::size_t>(fam.index_of(s)));
    for (SubsetLabel s : exp.order.strict_up_set_of(fam.labels[i]))
      ctx.parents[i].push_back(static_cast<std::size_t>(fam.index_of(s)));

    SymbolSet own = sym_set({Symbol::u(fam.labels[i])});
    JointDistribution mi = exp.target.marginal(own);
    ctx.marginal[i].resize(ctx.cards[i]);
    for (int v = 0; v < ctx.cards[i]; ++v) ctx.marginal[i][v] = mi.p[v];

    // Conditional rows are indexed by the ancestors' letters in canonical
    // label order, last ancestor fastest.
    std::vector<Symbol> syms;
    for (std::size_t a : ctx.parents[i])
      syms.push_back(Symbol::u(fam.labels[a]));
    syms.push_back(Symbol::u(fam.labels[i]));
    JointDistribution marg = exp.target.marginal(sym_set(syms));

    std::size_t rows = 1;
    for (std::size_t a : ctx.parents[i])
      rows *= static_cast<std::size_t>(ctx.cards[a]);
    ctx.cond[i].assign(rows, std::vector<double>(ctx.cards[i], 0.0));
    std::vector<double> row_mass(rows, 0.0);

    const auto& msyms = marg.universe.symbols;
    std::vector<int> value(msyms.size());
    std::size_t own_pos = 0;
    for (std::size_t k = 0; k < msyms.size(); ++k)
      if (msyms[k] == Symbol::u(fam.labels[i])) own_pos = k;
    for (std::size_t cell = 0; cell < marg.p.size(); ++cell) {
      std::size_t rem = cell;
      for (std::size_t k = msyms.size(); k-- > 0;) {
        int card = marg.universe.cardinalities[k];
        value[k] = static_cast<int>(rem % card);
        rem /= card;
      }
      std::size_t row = 0;
      for (std::size_t a : ctx.parents[i]) {
        Symbol s = Symbol::u(fam.labels[a]);
        std::size_t k = marg.universe.index_of(s);
        row = row * static_cast<std::size_t>(ctx.cards[a]) +
              static_cast<std::size_t>(value[k]);
      }
      ctx.cond[i][row][value[own_pos]] += marg.p[cell];
      row_mass[row] += marg.p[cell];
    }
    for (std::size_t r = 0; r < rows; ++r) {
      if (row_mass[r] > 0.0) {
        for (double& v : ctx.cond[i][r]) v /= row_mass[r];
      } else {
        // Unreachable given consistently generated ancestors; keep a valid
        // pmf anyway.
        for (double& v : ctx.cond[i][r]) v = 1.0 / ctx.cards[i];
      }
    }
  }
  return ctx;
}

// Per-trial cache of generated codewords, keyed by the flattened indices of
// the label's up-set.
struct TrialState {
  std::vector<std::unordered_map<std::uint64_t, std::vector<int>>> words;
  std::vector<std::unordered_map<std::uint64_t, bool>> marg_ok;
};

std::uint64_t flatten_key(const GenContext& ctx, std::size_t label,
                          const std::vector<std::size_t>& tuple) {
  std::uint64_t key = 0;
  for (std::size_t a : ctx.ups[label])
    key = key * ctx.sizes[a] + tuple[a];
  return key;
}

const std::vector<int>& get_word(const GenContext& ctx, TrialState& st,
                                 int trial, std::size_t label,
                                 const std::vector<std::size_t>& tuple) {
  const std::uint64_t key = flatten_key(ctx, label, tuple);
  auto it = st.words[label].find(key);
  if (it != st.words[label].end()) return it->second;

  std::vector<const std::vector<int>*> pwords(ctx.parents[label].size());
  for (std::size_t k = 0; k < ctx.parents[label].size(); ++k)
    pwords[k] = &get_word(ctx, st, trial, ctx.parents[label][k], tuple);

  const int n = ctx.exp->n;
  std::vector<int> word(n);
  SplitMix rng(stream_key(ctx.exp->seed, trial, label, key));
  const auto& table = ctx.cond[label];
  for (int t = 0; t < n; ++t) {
    std::size_t row = 0;
    for (std::size_t k = 0; k < ctx.parents[label].size(); ++k) {
      std::size_t a = ctx.parents[label][k];
      row = row * static_cast<std::size_t>(ctx.cards[a]) +
            static_cast<std::size_t>((*pwords[k])[t]);
    }
    const double u = rng.next_double();
    double acc = 0.0;
    int v = 0;
    for (; v + 1 < ctx.cards[label]; ++v) {
      acc += table[row][v];
      if (u < acc) break;
    }
    word[t] = v;
  }
  auto [pos, inserted] = st.words[label].emplace(key, std::move(word));
  (void)inserted;
  return pos->second;
}

bool word_marginally_typical(const GenContext& ctx, TrialState& st,
                             std::size_t label, std::uint64_t key,
                             const std::vector<int>& word) {
  auto it = st.marg_ok[label].find(key);
  if (it != st.marg_ok[label].end()) return it->second;
  std::vector<long> counts(ctx.cards[label], 0);
  for (int v : word) counts[v]++;
  bool ok = counts_typical(counts, ctx.marginal[label].data(),
                           ctx.marginal[label].size(), ctx.exp->n,
                           ctx.exp->eps);
  st.marg_ok[label][key] = ok;
  return ok;
}

bool run_trial(const GenContext& ctx, int trial) {
  TrialState st;
  st.words.resize(ctx.nlabels);
  st.marg_ok.resize(ctx.nlabels);

  const std::size_t cells = ctx.exp->target.p.size();
  std::vector<long> counts(cells);
  std::vector<std::size_t> tuple(ctx.nlabels, 0);
  std::vector<const std::vector<int>*> words(ctx.nlabels);

  for (std::size_t it = 0; it < ctx.tuple_count; ++it) {
    bool filtered = false;
    for (std::size_t i = 0; i < ctx.nlabels && !filtered; ++i) {
      words[i] = &get_word(ctx, st, trial, i, tuple);
      // Joint typicality implies each letterwise marginal is typical, so a
      // failed marginal rules out every tuple containing this word.
      if (!word_marginally_typical(ctx, st, i, flatten_key(ctx, i, tuple),
                                   *words[i]))
        filtered = true;
    }
    if (!filtered) {
      std::fill(counts.begin(), counts.end(), 0L);
      std::vector<int> value(ctx.nlabels);
      for (int t = 0; t < ctx.exp->n; ++t) {
        std::size_t cell = 0;
        for (std::size_t i = 0; i < ctx.nlabels; ++i)
          cell = cell * static_cast<std::size_t>(ctx.cards[i]) +
                 static_cast<std::size_t>((*words[i])[t]);
        counts[cell]++;
      }
      if (counts_typical(counts, ctx.exp->target.p.data(), cells, ctx.exp->n,
                         ctx.exp->eps))
        return true;
    }
    for (std::size_t i = ctx.nlabels; i-- > 0;) {
      if (++tuple[i] < ctx.sizes[i]) break;
      tuple[i] = 0;
    }
  }
  return false;
}

}  // namespace

void CoveringExperiment::validate() const {
  const auto& labels = order.family.labels;
  if (labels.empty()) throw std::invalid_argument("covering: empty family");
  if (target.universe.symbols.size() != labels.size())
    throw std::invalid_argument(
        "covering: target must range over exactly the family's symbols");
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (!(target.universe.symbols[i] == Symbol::u(labels[i])))
      throw std::invalid_argument("covering: target symbol mismatch at " +
                                  Symbol::u(labels[i]).name());
  if (rates.size() != labels.size())
    throw std::invalid_argument("covering: need one rate per label");
  for (double r : rates)
    if (!(r >= 0.0) || !std::isfinite(r))
      throw std::invalid_argument("covering: rates must be finite and >= 0");
  if (n < 1) throw std::invalid_argument("covering: n must be >= 1");
  if (trials < 1) throw std::invalid_argument("covering: trials must be >= 1");
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("covering: eps must lie in (0,1)");
  if (tuple_cap < 1) throw std::invalid_argument("covering: cap must be >= 1");
}

std::vector<std::size_t> CoveringExperiment::codebook_sizes() const {
  std::vector<std::size_t> sizes(rates.size());
  for (std::size_t i = 0; i < rates.size(); ++i) {
    const double raw = std::ceil(static_cast<double>(n) * rates[i] - 1e-9);
    sizes[i] = std::max<std::size_t>(1, static_cast<std::size_t>(raw));
  }
  return sizes;
}

std::vector<std::map<std::uint64_t, std::vector<int>>> draw_trial_codebooks(
    const CoveringExperiment& exp, int trial) {
  exp.validate();
  GenContext ctx = build_context(exp);
  TrialState st;
  st.words.resize(ctx.nlabels);
  st.marg_ok.resize(ctx.nlabels);

  std::vector<std::size_t> tuple(ctx.nlabels, 0);
  for (std::size_t it = 0; it < ctx.tuple_count; ++it) {
    for (std::size_t i = 0; i < ctx.nlabels; ++i)
      get_word(ctx, st, trial, i, tuple);
    for (std::size_t i = ctx.nlabels; i-- > 0;) {
      if (++tuple[i] < ctx.sizes[i]) break;
      tuple[i] = 0;
    }
  }

  std::vector<std::map<std::uint64_t, std::vector<int>>> out(ctx.nlabels);
  for (std::size_t i = 0; i < ctx.nlabels; ++i)
    out[i] = std::map<std::uint64_t, std::vector<int>>(st.words[i].begin(),
                                                       st.words[i].end());
  return out;
}

CoveringResult run_covering(const CoveringExperiment& exp) {
  exp.validate();
  GenContext ctx = build_context(exp);

  CoveringResult res;
  res.trials = exp.trials;
  for (int trial = 0; trial < exp.trials; ++trial)
    if (run_trial(ctx, trial)) res.successes++;

  const double z = 1.96;
  const double t = static_cast<double>(exp.trials);
  const double phat = static_cast<double>(res.successes) / t;
  const double denom = 1.0 + z * z / t;
  res.estimate = phat;
  res.half_width =
      z * std::sqrt(phat * (1.0 - phat) / t + z * z / (4.0 * t * t)) / denom;
  return res;
}

bool jointly_typical(const std::vector<const std::vector<int>*>& words,
                     const JointDistribution& target, double eps) {
  const auto& uni = target.universe;
  if (words.size() != uni.symbols.size())
    throw std::invalid_argument("typicality: need one word per symbol");
  if (words.empty()) throw std::invalid_argument("typicality: empty tuple");
  const std::size_t n = words[0]->size();
  if (n == 0) throw std::invalid_argument("typicality: empty words");
  for (const auto* w : words)
    if (w->size() != n)
      throw std::invalid_argument("typicality: word lengths differ");

  std::vector<long> counts(target.p.size(), 0);
  std::vector<int> value(words.size());
  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t i = 0; i < words.size(); ++i) {
      int v = (*words[i])[t];
      if (v < 0 || v >= uni.cardinalities[i])
        throw std::invalid_argument("typicality: letter out of range");
      value[i] = v;
    }
    counts[uni.cell_of(value)]++;
  }
  return counts_typical(counts, target.p.data(), target.p.size(),
                        static_cast<int>(n), eps);
}

bool exhaustive_joint_typicality(
    const std::vector<std::vector<std::vector<int>>>& codebooks,
    const JointDistribution& target, double eps, std::size_t cap) {
  if (codebooks.size() != target.universe.symbols.size())
    throw std::invalid_argument("typicality: need one codebook per symbol");
  std::size_t total = 1;
  for (const auto& book : codebooks) {
    if (book.empty()) return false;
    if (book.size() > cap / total)
      throw ResourceLimitError("typicality: index tuple space exceeds cap");
    total *= book.size();
  }

  const std::size_t nlabels = codebooks.size();
  std::vector<std::size_t> tuple(nlabels, 0);
  std::vector<const std::vector<int>*> words(nlabels);
  for (std::size_t it = 0; it < total; ++it) {
    for (std::size_t i = 0; i < nlabels; ++i)
      words[i] = &codebooks[i][tuple[i]];
    if (jointly_typical(words, target, eps)) return true;
    for (std::size_t i = nlabels; i-- > 0;) {
      if (++tuple[i] < codebooks[i].size()) break;
      tuple[i] = 0;
    }
  }
  return false;
}

}  // namespace groupcast

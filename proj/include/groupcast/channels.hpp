#pragma once

#include "groupcast/measures.hpp"

namespace groupcast {

// Row-stochastic matrix: rows index the input letter.
using StochMat = std::vector<std::vector<double>>;

StochMat stochastic_matrix(std::vector<std::vector<double>> rows);
// (a then b) as a single stage: c[i][k] = sum_j a[i][j] b[j][k].
StochMat chain_compose(const StochMat& a, const StochMat& b);

// A broadcast channel as one dense transition table W(y_1..y_K | x).
struct TabularBC {
  int x_size = 0;
  std::vector<int> y_sizes;
  // x slowest, then y_1..y_K with y_K fastest; each x-slice sums to 1.
  std::vector<double> w;

  static TabularBC make(int x_size, std::vector<int> y_sizes,
                        std::vector<double> w);

  int receivers() const { return static_cast<int>(y_sizes.size()); }
  std::size_t output_cells() const;
  double prob(int x, const std::vector<int>& y) const;
  // Single-receiver marginal W_j(y_j | x).
  StochMat receiver_table(int j) const;
};

// Physically degraded cascade: stage 0 maps X to Y_1, stage k maps Y_k to
// Y_{k+1}.  One receiver per stage.
TabularBC cascade_bc(int x_size, const std::vector<StochMat>& stages);

// Three receivers where the first pair is physically degraded
// (X, Y_1, Y_2 a Markov chain) and Y_3 depends on X alone.
TabularBC degraded_pair_bc(const StochMat& x_to_y1, const StochMat& y1_to_y2,
                           const StochMat& x_to_y3);

// True iff a stochastic map T with W_worse = T applied after W_better exists.
// Decided by exact rational feasibility on the receiver tables, so it is
// only meaningful when those tables are exactly representable in doubles.
bool degradedness_certificate(const TabularBC& bc, int better, int worse);

// A deterministic broadcast channel whose input is a tuple of components,
// component S reaching exactly the receivers in S noiselessly.  Component
// alphabets are powers of two so each contributes an integer number of bits.
struct CombinationNetwork {
  int K = 0;
  std::vector<SubsetLabel> components;  // canonical order
  std::vector<int> bits;                // parallel; alphabet size 2^bits

  static CombinationNetwork make(
      int K, const std::vector<std::pair<SubsetLabel, int>>& component_bits);

  int bits_of(SubsetLabel s) const;  // 0 when the component is absent

  // Dense transition table over every component with bits > 0; input is the
  // mixed-radix concatenation in canonical component order.  Throws
  // ResourceLimitError when the table would exceed the cell cap.
  TabularBC to_table() const;
};

}  // namespace groupcast

#pragma once

#include <optional>

#include "groupcast/channels.hpp"
#include "groupcast/orders.hpp"
#include "groupcast/region_ops.hpp"

namespace groupcast {

// A concrete superposition-admitting input: a time-sharing pmf, one
// conditional table per auxiliary following the order's dependency
// structure, a deterministic input map, and optionally a channel.
struct AdmissibleSpec {
  SuperpositionOrder order;  // on the label family F
  std::vector<double> q_pmf;
  // Parallel to order.family.labels.
  std::vector<int> u_sizes;
  // conditionals[i]: p(u_S | u_parents, q) for S = labels[i], where the
  // parents are S's strict up-set.  Flattened row-major: q slowest, then the
  // parent values in canonical label order, then u_S fastest.
  std::vector<std::vector<double>> conditionals;
  int x_size = 1;
  // x = input_map[cell] with cells over (q, u_F): q slowest, then the label
  // values in canonical order.
  std::vector<int> input_map;
  std::optional<TabularBC> channel;

  void validate() const;

  int q_size() const { return static_cast<int>(q_pmf.size()); }
  std::size_t joint_input_cells() const;  // over (q, u_F)
  // Parents (strict up-set) of labels[i], canonically sorted.
  std::vector<SubsetLabel> parents_of(int i) const;
};

// The full joint over (Q, U_F, X) and, when a channel is attached,
// (Y_1..Y_K).  Factored per the generation law: p(q) times the conditional
// chain down the order, times the deterministic input map and the channel.
JointDistribution assemble_joint(const AdmissibleSpec& spec);

struct AdmissibleReport {
  bool ok = false;
  bool x_deterministic = false;
  bool factorizes = false;
  double h_x_given_rest = 0.0;  // H(X | U_F, Q), bits
  double kl_factorization = 0.0;
  std::string detail;
};

// Checks that a joint distribution is superposition-admitting for the order:
// X must be a deterministic function of (U_F, Q), and the (U_F, Q)-marginal
// must factor as p(q) times the per-label conditionals given each label's
// strict up-set.  A universe without Q is read as a constant Q.
AdmissibleReport check_admissible(const JointDistribution& dist,
                                  const SuperpositionOrder& order, double tol);

// Attaches a channel, checking the input alphabet.
AdmissibleSpec bind_channel(AdmissibleSpec spec, TabularBC channel);
AdmissibleSpec bind_channel(AdmissibleSpec spec, const CombinationNetwork& net);

// The uniform auxiliary assignment for a combination network: each label's
// auxiliary is an independent uniform variable identified with the component
// of the same label, X their concatenation, Q a singleton.  Every label of
// the order's family must be a component of the network.
AdmissibleSpec combination_uniform_aux(const CombinationNetwork& net,
                                       const SuperpositionOrder& order);

// Exact integer-bit entropies for the uniform auxiliary assignment, computed
// combinatorially (each symbol set owns a set of independent uniform
// components).  Covers the requested sets only; family = the label set F.
EntropyAssignment combination_assignment(const CombinationNetwork& net,
                                         const MessageIndexFamily& family,
                                         const std::vector<SymbolSet>& sets);

}  // namespace groupcast

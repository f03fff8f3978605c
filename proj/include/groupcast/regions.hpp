#pragma once

#include "groupcast/admissible.hpp"
#include "groupcast/fm.hpp"

namespace groupcast {

// The symbolic side of a groupcast problem: the actual message labels E, a
// label superset F carrying the superposition order (rate splitting relabels
// messages from E onto F), and whether coded time sharing conditions the
// mutual-information bounds.
struct ProblemSpec {
  MessageIndexFamily messages;  // E
  SuperpositionOrder order;     // on the label family F
  bool with_time_sharing = true;

  const MessageIndexFamily& labels() const { return order.family; }

  static ProblemSpec make(MessageIndexFamily messages, SuperpositionOrder order,
                          bool with_time_sharing = true);
};

// One receiver's decodability polyhedron: for every nonempty down-set B of
// the order induced on the receiver's window, the rates in B are bounded by
// the information the receiver gets about them given the rest of its window;
// plus nonnegativity on every label rate.  `kind` selects the rate-variable
// flavor the rows are written over.
//
// With all_subsets, a row is emitted for every nonempty subset B of the
// window instead, with the bound taken at B's down-closure; this adds only
// redundant rows.
InequalitySystem receiver_polyhedron(const ProblemSpec& spec, int receiver,
                                     Var::Kind kind = Var::Kind::RateHat,
                                     bool all_subsets = false);

// Intersection over all K receivers (rows concatenated, nonnegativity once).
InequalitySystem receivers_intersection(const ProblemSpec& spec,
                                        Var::Kind kind = Var::Kind::RateHat,
                                        bool all_subsets = false);

struct LabelPairLess {
  bool operator()(const std::pair<SubsetLabel, SubsetLabel>& a,
                  const std::pair<SubsetLabel, SubsetLabel>& b) const {
    if (a.first != b.first) return canonical_less(a.first, b.first);
    return canonical_less(a.second, b.second);
  }
};

// All pairs (S, S') with S in E, S' in F, S a subset of S'.
std::vector<std::pair<SubsetLabel, SubsetLabel>> legal_split_pairs(
    const MessageIndexFamily& messages, const MessageIndexFamily& labels);

// The achievability system over desired rates R_S (S in E) and split rates
// r_{S->S'}: each desired rate equals the sum of its splits, each
// reconstructed label rate (the sum of splits arriving at the label) lies in
// every receiver's polyhedron, and splits are nonnegative.  Passing
// split_pairs restricts which splits exist (default: all legal pairs).
// Eliminating the split variables projects onto the desired rates.
InequalitySystem split_rate_system(
    const ProblemSpec& spec,
    const std::vector<std::pair<SubsetLabel, SubsetLabel>>* split_pairs =
        nullptr);

// The system's split-kind variables, for elimination.
std::vector<Var> split_vars(const InequalitySystem& sys);

// Rate-exchange cone generators over the F-rate coordinates: one vector per
// strict pair S in E, S' in F, S a strict subset of S', carrying +1 at S and
// -1 at S'.
struct ConeGenerators {
  std::vector<Var> vars;  // Rate vars over F, canonical order
  std::vector<std::pair<SubsetLabel, SubsetLabel>> pairs;
  std::vector<std::vector<Rat>> vectors;
};

ConeGenerators exchange_cone_generators(const ProblemSpec& spec);

// The same region as split_rate_system after split elimination, built
// geometrically: Minkowski sum of the receivers' intersection with the
// exchange cone, intersected with nonnegativity and with R_S = 0 for labels
// in F that carry no actual message.  Output is over the E-rates.
InequalitySystem minkowski_form_system(const ProblemSpec& spec,
                                       const FmOptions& opts = {});

using SplitRateMap =
    std::map<std::pair<SubsetLabel, SubsetLabel>, double, LabelPairLess>;

// The net rate transfer a split map induces on the F-rate coordinates,
// together with the certificate expressing it over the cone generators (the
// multiplier of e_{S->S'} is just r_{S->S'}).
struct ExchangeVector {
  std::vector<Var> vars;       // Rate vars over F, canonical order
  std::vector<Rat> delta;
  ConeGenerators generators;
  std::vector<Rat> multipliers;  // parallel to generators.pairs
};

ExchangeVector split_to_exchange(const SplitRateMap& splits,
                                 const MessageIndexFamily& messages,
                                 const MessageIndexFamily& labels);

// Covering deficiency of an up-set G: the coding cost of forcing the labels
// in G jointly typical with the target law, sum over G of H(U_S | parents)
// minus H(U_G).  Symbolic form; evaluate against a distribution for numbers.
EntropyExpr gamma_expr(const SuperpositionOrder& order,
                       const std::vector<SubsetLabel>& up_set);
double gamma_value(const JointDistribution& target,
                   const SuperpositionOrder& order,
                   const std::vector<SubsetLabel>& up_set);

struct GammaTable {
  LatticeFamily up_sets;
  std::vector<double> values;
};

GammaTable gamma_table(const JointDistribution& target,
                       const SuperpositionOrder& order);

// The covering-rate region over excess rates r_S: r(G) >= gamma(G) for every
// nonempty up-set G with positive deficiency (the rest follow from r >= 0),
// plus nonnegativity.
InequalitySystem covering_region(const JointDistribution& target,
                                 const SuperpositionOrder& order);

// The binning achievability system for an arbitrary auxiliary law (no
// factorization assumed, time sharing constant): desired rates split as in
// split_rate_system, codebook rates Rtil exceed reconstructed rates by the
// covering deficiency on every nonempty up-set of (F, <=), and Rtil lies in
// every receiver's polyhedron.  Gamma enters symbolically.  When
// tilde_dominates_hat is set, explicit Rtil_S >= Rhat_S rows are added for
// every label (the bin construction presumes them; the up-set rows already
// imply the ones that matter).
InequalitySystem binning_system(
    const ProblemSpec& spec,
    const std::vector<std::pair<SubsetLabel, SubsetLabel>>* split_pairs =
        nullptr,
    bool tilde_dominates_hat = false);

// Hand-transcribed literature systems used as verification targets:
//   korner_marton   two receivers, E = {1,12}, no time sharing
//   cover           two receivers, E = {1,2,12}, independent auxiliaries
//   two_user_fm     two receivers, E = {1,2,12}, split-eliminated projection
//   nair_elgamal    three receivers, E = {1,123}, degraded pair, no Q
InequalitySystem known_region(const std::string& name);

}  // namespace groupcast

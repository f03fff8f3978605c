#pragma once

#include <array>

#include "groupcast/json_io.hpp"

namespace groupcast {

// Entropy values of the named sets, read off a concrete distribution.
EntropyAssignment assignment_from_distribution(
    const JointDistribution& dist, const std::vector<SymbolSet>& sets);

// Every symbol set either system references.
std::vector<SymbolSet> referenced_sets(const InequalitySystem& a,
                                       const InequalitySystem& b);

// Vertices of a two-variable system with constant right-hand sides:
// intersections of row pairs that satisfy every row.  Deduplicated, exact.
std::vector<std::array<Rat, 2>> polygon_vertices(const InequalitySystem& sys);

// Packaged end-to-end examples with fixed constants.  Each demo builds its
// systems from scratch so runs are reproducible bit for bit; the fixtures
// directory carries the same inputs in JSON form for the CLI path.
namespace demos {

// Three receivers, every message multicast, distinct component capacities.
CombinationNetwork combination3_network();
BuildRequest combination3_request();
struct Combination3Report {
  InequalitySystem system;  // bound, split-eliminated, irredundant
  int inequality_count = 0;  // rows beyond nonnegativity
};
Combination3Report run_combination3();

struct EquivalenceReport {
  bool equal = false;
  std::string detail;
  InequalitySystem built;      // pipeline output
  InequalitySystem reference;  // hand-transcribed target
  EntropyAssignment assignment;
};

// Two-receiver private/common split against the eliminated projection.
AdmissibleSpec two_user_instance();
EquivalenceReport run_two_user();

// Independent auxiliaries against the superposition region.
AdmissibleSpec cover_instance();
EquivalenceReport run_cover();

// Degraded side receiver against the two-bound region (same-marginal form).
AdmissibleSpec korner_marton_instance();
EquivalenceReport run_korner_marton();

// Chain order over three receivers, degraded pair, restricted splits.
AdmissibleSpec nair_elgamal_instance();
struct NairElGamalReport {
  bool rows_match = false;   // receiver rows equal the six expected bounds
  bool vertices_ok = false;  // projected vertices satisfy the reference
  std::string detail;
  InequalitySystem receiver_rows;
  InequalitySystem projected;  // over (R_1, R_123), bound
};
NairElGamalReport run_nair_elgamal();

// Correlated pair through binning against the pairwise-coding region.
JointDistribution marton_instance();
InequalitySystem marton_reference();
EquivalenceReport run_marton();

// The packaged covering experiment: a correlated binary pair at rates just
// inside the deficiency threshold.
CoveringExperiment covering_pair_experiment(int n, std::uint64_t seed);

}  // namespace demos
}  // namespace groupcast

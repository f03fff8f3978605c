#pragma once

#include <cstdint>
#include <map>

#include "groupcast/measures.hpp"
#include "groupcast/orders.hpp"

namespace groupcast {

// Monte-Carlo check that recursively generated codebooks contain a jointly
// typical tuple.  Codeword counts are quantized as ceil(n * rate) per label;
// the asymptotic exponential-size statement is out of reach at desk scale,
// so runs probe the qualitative behavior (interior rates succeed, deficient
// rates degrade, success improves with blocklength).
struct CoveringExperiment {
  JointDistribution target;  // over the U_S symbols of the order's family
  SuperpositionOrder order;
  std::vector<double> rates;  // bits per symbol, canonical label order
  int n = 100;
  double eps = 0.1;  // robust-typicality band, relative
  int trials = 100;
  std::uint64_t seed = 0;
  std::size_t tuple_cap = std::size_t{1} << 20;

  void validate() const;
  // ceil(n * rates[i]), at least 1.
  std::vector<std::size_t> codebook_sizes() const;
};

struct CoveringResult {
  int trials = 0;
  int successes = 0;
  double estimate = 0.0;    // successes / trials
  double half_width = 0.0;  // Wilson interval, z = 1.96
};

// Runs the experiment.  Each trial draws fresh codebooks: the codeword of a
// label is indexed by its own and all its ancestors' message indices and is
// drawn letterwise from the target's conditional given the ancestor
// codewords (so changing an ancestor index regenerates the descendants).
// A trial succeeds when some index tuple is jointly eps-typical for the
// target law.  Streams are keyed by (seed, trial, label, index), so results
// are reproducible bit for bit and independent of scan order.
CoveringResult run_covering(const CoveringExperiment& exp);

// Materializes every codeword of one trial, for inspection in tests.
// Entry [i] maps the flattened indices of label i's up-set to the word that
// run_covering would use for that index combination.
std::vector<std::map<std::uint64_t, std::vector<int>>> draw_trial_codebooks(
    const CoveringExperiment& exp, int trial);

// Flat variant: one independent codeword list per label (the shape the
// discrete order induces), scanned over all index combinations.
// codebooks[i][m] is a length-n word over the i-th label's alphabet.
bool exhaustive_joint_typicality(
    const std::vector<std::vector<std::vector<int>>>& codebooks,
    const JointDistribution& target, double eps,
    std::size_t cap = std::size_t{1} << 20);

// Robust joint typicality of one tuple of length-n words (canonical label
// order): every cell's empirical frequency within (1 +- eps) of its mass.
bool jointly_typical(const std::vector<const std::vector<int>*>& words,
                     const JointDistribution& target, double eps);

}  // namespace groupcast

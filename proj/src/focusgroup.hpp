#ifndef SMALLROOTS_FOCUSGROUP_HPP
#define SMALLROOTS_FOCUSGROUP_HPP

#include <cstdint>
#include <vector>

#include "attack.hpp"

namespace smallroots {

struct TrialMeta {
  unsigned modulus_bits = 0;
  double delta = 0.0;
  AttackParams params;
  std::uint64_t seed = 0;
  AttackStatus status = AttackStatus::NoVanishingPolynomial;
  double reduction_seconds = 0.0;
};

// Which input basis rows contribute to the s smallest-norm output rows,
// read off as nonzero columns of the transform matrix.
struct UsageMask {
  std::vector<bool> used;  // indexed by input basis row
  int shortlist_size = 0;
  TrialMeta meta;
};

UsageMask usage_mask(const ReductionResult& red, int shortlist_size);

// Per-shift-index view of a mask, split into the x-shift grid (i vs ell)
// and the y-shift grid (j vs ell).
struct PatternCell {
  ShiftIndex index;
  bool used = false;
};

struct PatternGrid {
  std::vector<PatternCell> x_cells;
  std::vector<PatternCell> y_cells;
  int m = 0;
  int t = 0;
};

PatternGrid pattern_grid(const UsageMask& mask, const LatticeBasis& basis);

struct CampaignOptions {
  unsigned modulus_bits = 512;
  double delta = 0.251;
  AttackParams params;  // X and Y are rederived per trial instance
  int n_trials = 20;
  std::uint64_t base_seed = 1;
  int shortlist = 3;
  Rat lll_delta = Rat(99, 100);
};

struct CampaignResult {
  std::vector<UsageMask> masks;     // one per successful trial
  std::vector<TrialMeta> trials;    // every trial, in seed order
};

// Runs keygen + attack for seeds base_seed .. base_seed + n_trials - 1.
// Masks are collected only from trials whose attack factored; failed
// trials stay visible in `trials`.
CampaignResult trial_campaign(const CampaignOptions& options);

struct ParamProposal {
  int sigma = -1;
  int tau = 0;
  double evidence = 0.0;  // fraction of masks with every removed row unused
  int removed_count = 0;
};

// Votes across masks: a row counts as unused when it is unused in at
// least `threshold` of the masks. Returns the largest sigma, then the
// largest tau, whose exclusion set contains only unused rows.
ParamProposal propose_params(const std::vector<UsageMask>& masks, double threshold = 0.8);

}  // namespace smallroots

#endif

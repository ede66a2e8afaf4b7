#include "focusgroup.hpp"

#include <algorithm>
#include <numeric>

#include "errors.hpp"

namespace smallroots {

UsageMask usage_mask(const ReductionResult& red, int shortlist_size) {
  int rows = red.reduced.rows();
  if (shortlist_size < 1 || shortlist_size > rows) {
    throw UsageError("usage_mask: shortlist size out of range");
  }
  // Rank output rows by norm (ties by row index).
  std::vector<int> order(rows);
  std::iota(order.begin(), order.end(), 0);
  std::vector<Int> norms(rows);
  for (int r = 0; r < rows; ++r) norms[r] = row_norm2(red.reduced, r);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return cmp(norms[a], norms[b]) < 0; });

  UsageMask mask;
  mask.shortlist_size = shortlist_size;
  mask.used.assign(rows, false);
  for (int s = 0; s < shortlist_size; ++s) {
    int r = order[s];
    for (int c = 0; c < rows; ++c) {
      if (sgn(red.transform.at(r, c)) != 0) mask.used[c] = true;
    }
  }
  return mask;
}

PatternGrid pattern_grid(const UsageMask& mask, const LatticeBasis& basis) {
  if (mask.used.size() != basis.row_index.size()) {
    throw UsageError("pattern_grid: mask length does not match basis rows");
  }
  PatternGrid grid;
  grid.m = basis.params.m;
  grid.t = basis.params.t;
  for (size_t r = 0; r < basis.row_index.size(); ++r) {
    PatternCell cell{basis.row_index[r], mask.used[r]};
    if (cell.index.kind == ShiftKind::X) {
      grid.x_cells.push_back(cell);
    } else {
      grid.y_cells.push_back(cell);
    }
  }
  return grid;
}

CampaignResult trial_campaign(const CampaignOptions& options) {
  if (options.n_trials < 1) throw UsageError("trial_campaign: need at least one trial");
  CampaignResult result;
  for (int i = 0; i < options.n_trials; ++i) {
    std::uint64_t seed = options.base_seed + static_cast<std::uint64_t>(i);
    RsaInstance inst = keygen(options.modulus_bits, options.delta, seed);
    AttackParams params = make_params(options.params.m, options.params.t,
                                      options.params.sigma, options.params.tau,
                                      options.delta, inst.e);
    AttackOptions aopts;
    aopts.lll_delta = options.lll_delta;
    aopts.secrets_hint = std::make_pair(inst.k, inst.p + inst.q - 1);
    AttackOutcome outcome = run_attack(inst.public_key(), params, aopts);

    TrialMeta meta;
    meta.modulus_bits = options.modulus_bits;
    meta.delta = options.delta;
    meta.params = params;
    meta.seed = seed;
    meta.status = outcome.status;
    meta.reduction_seconds = outcome.diagnostics.reduction_seconds;
    result.trials.push_back(meta);

    if (outcome.status == AttackStatus::Factored) {
      UsageMask mask = usage_mask(outcome.diagnostics.reduction, options.shortlist);
      mask.meta = meta;
      result.masks.push_back(std::move(mask));
    }
  }
  return result;
}

ParamProposal propose_params(const std::vector<UsageMask>& masks, double threshold) {
  if (masks.empty()) throw UsageError("propose_params: no masks");
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw UsageError("propose_params: threshold must lie in (0, 1]");
  }
  const AttackParams& params = masks.front().meta.params;
  auto indices = shift_indices(params);
  size_t rows = indices.size();
  for (const auto& mask : masks) {
    if (mask.used.size() != rows) {
      throw UsageError("propose_params: masks disagree on basis shape");
    }
  }

  // Vote: row r is droppable when unused in >= threshold of the masks.
  std::vector<int> unused_votes(rows, 0);
  for (const auto& mask : masks) {
    for (size_t r = 0; r < rows; ++r) {
      if (!mask.used[r]) ++unused_votes[r];
    }
  }
  auto droppable = [&](size_t r) {
    return unused_votes[r] >= threshold * static_cast<double>(masks.size());
  };

  int sigma = AttackParams::unpruned_sigma;
  for (int cand = sigma + 1; cand <= params.m; ++cand) {
    bool ok = true;
    for (size_t r = 0; r < rows; ++r) {
      const auto& si = indices[r];
      if (si.kind == ShiftKind::X && si.idx + si.ell <= cand && !droppable(r)) {
        ok = false;
        break;
      }
    }
    if (!ok) break;
    sigma = cand;
  }
  int tau_floor = AttackParams::unpruned_tau(params.t);
  int tau = tau_floor;
  for (int cand = tau + 1; cand <= params.m - 2; ++cand) {
    bool ok = true;
    for (size_t r = 0; r < rows; ++r) {
      const auto& si = indices[r];
      if (si.kind == ShiftKind::Y && si.ell - 2 * si.idx <= cand && !droppable(r)) {
        ok = false;
        break;
      }
    }
    if (!ok) break;
    tau = cand;
  }

  ParamProposal prop;
  prop.sigma = std::max(sigma, AttackParams::unpruned_sigma);
  prop.tau = std::max(tau, tau_floor);

  std::vector<size_t> removed;
  for (size_t r = 0; r < rows; ++r) {
    const auto& si = indices[r];
    bool excluded = si.kind == ShiftKind::X ? si.idx + si.ell <= prop.sigma
                                            : si.ell - 2 * si.idx <= prop.tau;
    if (excluded) removed.push_back(r);
  }
  prop.removed_count = static_cast<int>(removed.size());

  int consistent = 0;
  for (const auto& mask : masks) {
    bool all_unused = true;
    for (size_t r : removed) all_unused &= !mask.used[r];
    if (all_unused) ++consistent;
  }
  prop.evidence = masks.empty() ? 0.0
                                : static_cast<double>(consistent) /
                                      static_cast<double>(masks.size());
  return prop;
}

}  // namespace smallroots

#ifndef SMALLROOTS_ATTACK_HPP
#define SMALLROOTS_ATTACK_HPP

#include <optional>
#include <utility>
#include <vector>

#include "builder.hpp"
#include "rsa.hpp"

namespace smallroots {

struct CandidatePoly {
  int rank = 0;  // position by ascending norm in the reduced basis
  BiPoly poly;   // unscaled polynomial
  bool passes_howgrave = false;
  Int norm2;             // squared norm of the (scaled) reduced row
  int source_row = 0;    // row index in the reduction output
  std::optional<bool> vanishes;  // only set when secrets were hinted
};

enum class AttackStatus {
  Factored,
  PolynomialsFoundNoFactor,
  NoVanishingPolynomial,
};

struct AttackDiagnostics {
  EnablingReport enabling;
  std::vector<double> profile_before;
  std::vector<double> profile_after;
  ReductionResult reduction;
  LatticeBasis basis;
  double reduction_seconds = 0.0;
};

struct AttackOutcome {
  AttackStatus status = AttackStatus::NoVanishingPolynomial;
  Int p, q, d, x0, y0;                // populated iff Factored
  std::pair<int, int> pair_used{-1, -1};  // candidate ranks
  std::vector<CandidatePoly> candidates;
  AttackDiagnostics diagnostics;
};

struct AttackOptions {
  int max_pairs = 0;  // 0: no cap beyond the default pair policy
  int top_k = 12;     // pairs are drawn from the first top_k candidates
  Rat lll_delta = Rat(99, 100);
  bool with_enabling = true;
  std::optional<std::pair<Int, Int>> secrets_hint;  // (x0, y0) for test mode
};

// Divides the X^a Y^b scaling back out of a coefficient row. Inexact
// division signals corrupted bookkeeping and throws InternalError.
BiPoly unscale_row(const std::vector<Int>& row,
                   const std::vector<Monomial>& col_monomials, const Int& X,
                   const Int& Y);

// Every reduced row as an unscaled polynomial, ordered by ascending norm.
// No row is discarded.
std::vector<CandidatePoly> scan_candidates(
    const ReductionResult& red, const LatticeBasis& basis,
    const std::optional<std::pair<Int, Int>>& secrets_hint = std::nullopt);

// Resultant-based common-root extraction: eliminates x, finds integer
// roots of the resultant in (0, y_bound], then back-substitutes to find x
// in (0, x_bound]. Returns the first pair (ascending y, then x) on which
// both polynomials vanish. A zero resultant (algebraic dependence) or an
// empty root set yields nullopt.
std::optional<std::pair<Int, Int>> extract_root(const CandidatePoly& c1,
                                                const CandidatePoly& c2,
                                                const Int& x_bound,
                                                const Int& y_bound);

// Checks a root candidate against the key equation: phi = n - y0 must
// split n into two factors and e must be invertible with e*d - 1 = x0*phi.
// Returns (p, q, d).
std::optional<std::tuple<Int, Int, Int>> validate_root(const Int& n, const Int& e,
                                                       const Int& x0, const Int& y0);

// Full pipeline: build basis, reduce, scan all reduced vectors, walk
// candidate pairs in ascending combined-norm order, extract and validate
// roots. Diagnostics are always attached.
AttackOutcome run_attack(const PublicKey& pk, const AttackParams& params,
                         const AttackOptions& options = {});

}  // namespace smallroots

#endif

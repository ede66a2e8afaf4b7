#ifndef SMALLROOTS_SERIALIZE_HPP
#define SMALLROOTS_SERIALIZE_HPP

#include <string>
#include <string_view>
#include <vector>

#include "focusgroup.hpp"

namespace smallroots {

// All big integers serialize as decimal strings.

std::string instance_to_json(const RsaInstance& inst, bool include_secrets);
RsaInstance instance_from_json(std::string_view json);  // secrets optional

std::string outcome_to_json(const AttackOutcome& outcome, bool include_secrets);

std::string status_name(AttackStatus status);

// Basis matrix as decimal CSV plus a JSON sidecar carrying row_index,
// col_monomials, params and the modulus power.
std::string basis_to_csv(const LatticeBasis& basis);
std::string basis_sidecar_json(const LatticeBasis& basis);
LatticeBasis basis_from_csv(std::string_view csv, std::string_view sidecar_json);

// Transform entries collapsed to sign in {-1, 0, 1}.
std::string transform_sign_csv(const IntMatrix& transform);

// Two columns (before, after), one line per basis row.
std::string profiles_csv(const std::vector<double>& before,
                         const std::vector<double>& after);

// One line per successful trial: seed then one 0/1 column per basis row.
std::string masks_csv(const CampaignResult& campaign);

std::string proposal_to_json(const ParamProposal& proposal, const CampaignResult& campaign,
                             double threshold);

struct ExperimentRow {
  unsigned modulus_bits = 0;
  size_t d_bits = 0;
  double delta = 0.0;
  int m = 0, t = 0, sigma = 0, tau = 0;
  int matrix_rows = 0, matrix_cols = 0;
  double reduction_seconds = 0.0;
  AttackStatus status = AttackStatus::NoVanishingPolynomial;
};

std::string experiment_table_csv(const std::vector<ExperimentRow>& rows);

// Grid file for experiment runs: lines of "bits,delta,m,t,sigma,tau";
// blank lines, '#' comments and a header line are skipped.
struct GridEntry {
  unsigned bits = 0;
  double delta = 0.0;
  int m = 0, t = 0, sigma = 0, tau = 0;
};
std::vector<GridEntry> parse_grid_csv(std::string_view csv);

}  // namespace smallroots

#endif

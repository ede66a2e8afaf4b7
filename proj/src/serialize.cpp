#include "serialize.hpp"

#include <cctype>
#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

#include "errors.hpp"

namespace smallroots {

using json = nlohmann::json;

namespace {

std::string fmt_log2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10f", v);
  return buf;
}

Int json_int(const json& j, const char* key) {
  if (!j.contains(key)) throw UsageError(std::string("missing field: ") + key);
  return from_dec(j.at(key).get<std::string>());
}

json params_to_json(const AttackParams& p) {
  json j;
  j["m"] = p.m;
  j["t"] = p.t;
  j["sigma"] = p.sigma;
  j["tau"] = p.tau;
  j["delta"] = p.delta;
  j["X"] = to_dec(p.X);
  j["Y"] = to_dec(p.Y);
  return j;
}

AttackParams params_from_json(const json& j) {
  AttackParams p;
  p.m = j.at("m").get<int>();
  p.t = j.at("t").get<int>();
  p.sigma = j.at("sigma").get<int>();
  p.tau = j.at("tau").get<int>();
  p.delta = j.at("delta").get<double>();
  p.X = json_int(j, "X");
  p.Y = json_int(j, "Y");
  return p;
}

}  // namespace

std::string status_name(AttackStatus status) {
  switch (status) {
    case AttackStatus::Factored:
      return "factored";
    case AttackStatus::PolynomialsFoundNoFactor:
      return "polynomials-found-no-factor";
    case AttackStatus::NoVanishingPolynomial:
      return "no-vanishing-polynomial";
  }
  throw InternalError("unknown attack status");
}

std::string instance_to_json(const RsaInstance& inst, bool include_secrets) {
  json j;
  j["n"] = to_dec(inst.n);
  j["e"] = to_dec(inst.e);
  j["delta"] = inst.delta;
  j["seed"] = inst.seed;
  j["modulus_bits"] = inst.modulus_bits;
  if (include_secrets && inst.has_secrets) {
    j["p"] = to_dec(inst.p);
    j["q"] = to_dec(inst.q);
    j["d"] = to_dec(inst.d);
    j["k"] = to_dec(inst.k);
    j["phi"] = to_dec(inst.phi);
  }
  return j.dump(2) + "\n";
}

RsaInstance instance_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw UsageError(std::string("bad instance JSON: ") + e.what());
  }
  RsaInstance inst;
  inst.n = json_int(j, "n");
  inst.e = json_int(j, "e");
  if (j.contains("delta")) inst.delta = j.at("delta").get<double>();
  if (j.contains("seed")) inst.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("modulus_bits")) inst.modulus_bits = j.at("modulus_bits").get<unsigned>();
  inst.has_secrets = j.contains("p") && j.contains("q") && j.contains("d");
  if (inst.has_secrets) {
    inst.p = json_int(j, "p");
    inst.q = json_int(j, "q");
    inst.d = json_int(j, "d");
    inst.k = j.contains("k") ? json_int(j, "k") : Int((inst.e * inst.d - 1) / (inst.n - inst.p - inst.q + 1));
    inst.phi = j.contains("phi") ? json_int(j, "phi") : Int(inst.n - inst.p - inst.q + 1);
  }
  if (inst.n < 2 || inst.e < 2 || inst.e >= inst.n * inst.n) {
    throw UsageError("instance JSON fails basic sanity checks");
  }
  return inst;
}

std::string outcome_to_json(const AttackOutcome& outcome, bool include_secrets) {
  json j;
  j["status"] = status_name(outcome.status);
  if (outcome.status == AttackStatus::Factored) {
    j["pair_used"] = {outcome.pair_used.first, outcome.pair_used.second};
    if (include_secrets) {
      j["p"] = to_dec(outcome.p);
      j["q"] = to_dec(outcome.q);
      j["d"] = to_dec(outcome.d);
      j["x0"] = to_dec(outcome.x0);
      j["y0"] = to_dec(outcome.y0);
    }
  }
  int howgrave = 0;
  for (const auto& c : outcome.candidates) howgrave += c.passes_howgrave ? 1 : 0;
  j["candidates"] = outcome.candidates.size();
  j["howgrave_passers"] = howgrave;

  const auto& diag = outcome.diagnostics;
  json dj;
  dj["matrix_rows"] = diag.basis.matrix.rows();
  dj["matrix_cols"] = diag.basis.matrix.cols();
  dj["params"] = params_to_json(diag.basis.params);
  dj["reduction_seconds"] = diag.reduction_seconds;
  dj["swaps"] = diag.reduction.swaps;
  dj["enabling"] = {
      {"w", diag.enabling.w},
      {"gram_det", to_dec(diag.enabling.gram_det)},
      {"bound_satisfied", diag.enabling.bound_satisfied},
      {"log2_covolume", fmt_log2(diag.enabling.log2_covolume)},
      {"log2_bound", fmt_log2(diag.enabling.log2_bound)},
  };
  j["diagnostics"] = dj;
  return j.dump(2) + "\n";
}

std::string basis_to_csv(const LatticeBasis& basis) {
  std::ostringstream out;
  for (int r = 0; r < basis.matrix.rows(); ++r) {
    for (int c = 0; c < basis.matrix.cols(); ++c) {
      if (c) out << ',';
      out << to_dec(basis.matrix.at(r, c));
    }
    out << '\n';
  }
  return out.str();
}

std::string basis_sidecar_json(const LatticeBasis& basis) {
  json j;
  j["rows"] = basis.matrix.rows();
  j["cols"] = basis.matrix.cols();
  j["params"] = params_to_json(basis.params);
  j["modulus_power"] = to_dec(basis.modulus_power);
  json rows = json::array();
  for (const auto& si : basis.row_index) {
    rows.push_back({{"kind", si.kind == ShiftKind::X ? "x" : "y"},
                    {"idx", si.idx},
                    {"ell", si.ell}});
  }
  j["row_index"] = rows;
  json cols = json::array();
  for (const auto& mono : basis.col_monomials) cols.push_back({mono.dx, mono.dy});
  j["col_monomials"] = cols;
  return j.dump(2) + "\n";
}

namespace {

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(line.substr(start));
      break;
    }
    out.emplace_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

std::vector<std::string> lines_of(std::string_view text) {
  std::vector<std::string> out;
  size_t start = 0;
  while (start < text.size()) {
    size_t pos = text.find('\n', start);
    if (pos == std::string_view::npos) pos = text.size();
    std::string line(text.substr(start, pos - start));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    out.push_back(std::move(line));
    start = pos + 1;
  }
  return out;
}

}  // namespace

LatticeBasis basis_from_csv(std::string_view csv, std::string_view sidecar_json) {
  json j;
  try {
    j = json::parse(sidecar_json);
  } catch (const json::exception& e) {
    throw UsageError(std::string("bad basis sidecar: ") + e.what());
  }
  LatticeBasis basis;
  int rows = j.at("rows").get<int>();
  int cols = j.at("cols").get<int>();
  basis.params = params_from_json(j.at("params"));
  basis.modulus_power = json_int(j, "modulus_power");
  for (const auto& rj : j.at("row_index")) {
    ShiftIndex si;
    si.kind = rj.at("kind").get<std::string>() == "x" ? ShiftKind::X : ShiftKind::Y;
    si.idx = rj.at("idx").get<int>();
    si.ell = rj.at("ell").get<int>();
    basis.row_index.push_back(si);
  }
  for (const auto& cj : j.at("col_monomials")) {
    basis.col_monomials.push_back({cj.at(0).get<unsigned>(), cj.at(1).get<unsigned>()});
  }
  if (static_cast<int>(basis.row_index.size()) != rows ||
      static_cast<int>(basis.col_monomials.size()) != cols) {
    throw UsageError("basis sidecar is inconsistent");
  }
  basis.matrix = IntMatrix(rows, cols);
  auto ls = lines_of(csv);
  while (!ls.empty() && ls.back().empty()) ls.pop_back();
  if (static_cast<int>(ls.size()) != rows) throw UsageError("basis CSV row count mismatch");
  for (int r = 0; r < rows; ++r) {
    auto fields = split(ls[r], ',');
    if (static_cast<int>(fields.size()) != cols) {
      throw UsageError("basis CSV column count mismatch");
    }
    for (int c = 0; c < cols; ++c) basis.matrix.at(r, c) = from_dec(fields[c]);
  }
  return basis;
}

std::string transform_sign_csv(const IntMatrix& transform) {
  std::ostringstream out;
  for (int r = 0; r < transform.rows(); ++r) {
    for (int c = 0; c < transform.cols(); ++c) {
      if (c) out << ',';
      out << sgn(transform.at(r, c));
    }
    out << '\n';
  }
  return out.str();
}

std::string profiles_csv(const std::vector<double>& before,
                         const std::vector<double>& after) {
  if (before.size() != after.size()) throw UsageError("profiles length mismatch");
  std::ostringstream out;
  out << "log2_before,log2_after\n";
  for (size_t i = 0; i < before.size(); ++i) {
    out << fmt_log2(before[i]) << ',' << fmt_log2(after[i]) << '\n';
  }
  return out.str();
}

std::string masks_csv(const CampaignResult& campaign) {
  std::ostringstream out;
  out << "seed";
  if (!campaign.masks.empty()) {
    auto indices = shift_indices(campaign.masks.front().meta.params);
    for (const auto& si : indices) {
      out << ',' << (si.kind == ShiftKind::X ? 'x' : 'y') << '_' << si.idx << '_'
          << si.ell;
    }
  }
  out << '\n';
  for (const auto& mask : campaign.masks) {
    out << mask.meta.seed;
    for (bool u : mask.used) out << ',' << (u ? 1 : 0);
    out << '\n';
  }
  return out.str();
}

std::string proposal_to_json(const ParamProposal& proposal, const CampaignResult& campaign,
                             double threshold) {
  json j;
  j["sigma"] = proposal.sigma;
  j["tau"] = proposal.tau;
  j["evidence"] = proposal.evidence;
  j["removed_count"] = proposal.removed_count;
  j["threshold"] = threshold;
  j["trials"] = campaign.trials.size();
  j["successes"] = campaign.masks.size();
  if (!campaign.trials.empty()) {
    const auto& p = campaign.trials.front().params;
    j["base"] = {{"m", p.m}, {"t", p.t}, {"sigma", p.sigma}, {"tau", p.tau}};
  }
  return j.dump(2) + "\n";
}

std::string experiment_table_csv(const std::vector<ExperimentRow>& rows) {
  std::ostringstream out;
  out << "bits,d_bits,delta,m,t,sigma,tau,rows,cols,reduction_seconds,status\n";
  char buf[64];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), "%.4f", r.delta);
    out << r.modulus_bits << ',' << r.d_bits << ',' << buf << ',' << r.m << ','
        << r.t << ',' << r.sigma << ',' << r.tau << ',' << r.matrix_rows << ','
        << r.matrix_cols << ',';
    std::snprintf(buf, sizeof(buf), "%.3f", r.reduction_seconds);
    out << buf << ',' << status_name(r.status) << '\n';
  }
  return out.str();
}

std::vector<GridEntry> parse_grid_csv(std::string_view csv) {
  std::vector<GridEntry> out;
  for (const auto& raw : lines_of(csv)) {
    std::string line = raw;
    if (line.empty() || line[0] == '#') continue;
    auto fields = split(line, ',');
    if (fields.size() != 6) throw UsageError("grid line needs 6 fields: " + line);
    if (!fields[0].empty() && !std::isdigit(static_cast<unsigned char>(fields[0][0]))) {
      continue;  // header
    }
    GridEntry g;
    try {
      g.bits = static_cast<unsigned>(std::stoul(fields[0]));
      g.delta = std::stod(fields[1]);
      g.m = std::stoi(fields[2]);
      g.t = std::stoi(fields[3]);
      g.sigma = std::stoi(fields[4]);
      g.tau = std::stoi(fields[5]);
    } catch (const std::exception&) {
      throw UsageError("bad grid line: " + line);
    }
    out.push_back(g);
  }
  return out;
}

}  // namespace smallroots

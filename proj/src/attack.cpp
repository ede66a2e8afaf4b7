#include "attack.hpp"

#include <algorithm>
#include <chrono>

#include "errors.hpp"

namespace smallroots {

BiPoly unscale_row(const std::vector<Int>& row,
                   const std::vector<Monomial>& col_monomials, const Int& X,
                   const Int& Y) {
  if (row.size() != col_monomials.size()) {
    throw UsageError("unscale_row: row/column mismatch");
  }
  BiPoly p;
  Int scale, q, r;
  for (size_t c = 0; c < row.size(); ++c) {
    if (sgn(row[c]) == 0) continue;
    const Monomial& mono = col_monomials[c];
    scale = pow_ui(X, mono.dx) * pow_ui(Y, mono.dy);
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), row[c].get_mpz_t(), scale.get_mpz_t());
    if (sgn(r) != 0) throw InternalError("unscale_row: inexact division");
    p.add_term(mono, q);
  }
  return p;
}

std::vector<CandidatePoly> scan_candidates(
    const ReductionResult& red, const LatticeBasis& basis,
    const std::optional<std::pair<Int, Int>>& secrets_hint) {
  int rows = red.reduced.rows();
  Int hg_rhs = basis.modulus_power * basis.modulus_power;
  std::vector<CandidatePoly> out;
  out.reserve(rows);
  for (int r = 0; r < rows; ++r) {
    std::vector<Int> row(red.reduced.cols());
    size_t nonzero = 0;
    for (int c = 0; c < red.reduced.cols(); ++c) {
      row[c] = red.reduced.at(r, c);
      if (sgn(row[c]) != 0) ++nonzero;
    }
    CandidatePoly cand;
    cand.source_row = r;
    cand.norm2 = row_norm2(red.reduced, r);
    cand.poly = unscale_row(row, basis.col_monomials, basis.params.X, basis.params.Y);
    cand.passes_howgrave =
        cand.norm2 * Int(static_cast<unsigned long>(nonzero)) < hg_rhs;
    if (secrets_hint) {
      cand.vanishes = cand.poly.eval(secrets_hint->first, secrets_hint->second) == 0;
    }
    out.push_back(std::move(cand));
  }
  std::sort(out.begin(), out.end(), [](const CandidatePoly& a, const CandidatePoly& b) {
    int c = cmp(a.norm2, b.norm2);
    if (c != 0) return c < 0;
    return a.source_row < b.source_row;
  });
  for (size_t i = 0; i < out.size(); ++i) out[i].rank = static_cast<int>(i);
  return out;
}

namespace {

// A bivariate polynomial with no x dependence, as a polynomial in y.
UniPoly as_unipoly_in_y(const BiPoly& p) {
  std::vector<Int> c;
  for (const auto& [mono, co] : p.terms()) {
    if (c.size() <= mono.dy) c.resize(mono.dy + 1, Int(0));
    c[mono.dy] = co;
  }
  return UniPoly(std::move(c));
}

}  // namespace

std::optional<std::pair<Int, Int>> extract_root(const CandidatePoly& c1,
                                                const CandidatePoly& c2,
                                                const Int& x_bound,
                                                const Int& y_bound) {
  const BiPoly& p1 = c1.poly;
  const BiPoly& p2 = c2.poly;
  if (p1.is_zero() || p2.is_zero()) throw UsageError("extract_root: zero polynomial");
  int dx1 = p1.deg_x(), dx2 = p2.deg_x();

  UniPoly r;
  if (dx1 >= 1 && dx2 >= 1) {
    r = resultant_wrt_x(p1, p2);
  } else if (dx1 == 0 && dx2 == 0) {
    return std::nullopt;  // nothing pins x
  } else {
    r = as_unipoly_in_y(dx1 == 0 ? p1 : p2);  // same y-root set
  }
  if (r.is_zero()) return std::nullopt;  // algebraic dependence
  if (r.degree() == 0) return std::nullopt;

  for (const Int& y0 : integer_roots_in_range(r, Int(1), y_bound)) {
    for (const BiPoly* src : {&p1, &p2}) {
      if (src->deg_x() < 1) continue;
      UniPoly in_x = substitute_y(*src, y0);
      if (in_x.is_zero() || in_x.degree() < 1) continue;
      for (const Int& x0 : integer_roots_in_range(in_x, Int(1), x_bound)) {
        if (p1.eval(x0, y0) == 0 && p2.eval(x0, y0) == 0) {
          return std::make_pair(x0, y0);
        }
      }
      break;  // x candidates come from the first usable polynomial
    }
  }
  return std::nullopt;
}

std::optional<std::tuple<Int, Int, Int>> validate_root(const Int& n, const Int& e,
                                                       const Int& x0, const Int& y0) {
  if (sgn(x0) <= 0 || sgn(y0) <= 0) throw UsageError("validate_root: root must be positive");
  Int phi_hat = n - y0;
  if (phi_hat <= 0) return std::nullopt;
  auto fac = recover_factors_from_phi(n, phi_hat);
  if (!fac) return std::nullopt;
  Int d;
  if (mpz_invert(d.get_mpz_t(), e.get_mpz_t(), phi_hat.get_mpz_t()) == 0) {
    return std::nullopt;
  }
  if (e * d - 1 != x0 * phi_hat) return std::nullopt;
  return std::make_tuple(fac->first, fac->second, d);
}

AttackOutcome run_attack(const PublicKey& pk, const AttackParams& params,
                         const AttackOptions& options) {
  AttackOutcome out;
  LatticeBasis basis = build_basis(pk.n, pk.e, params);
  out.diagnostics.profile_before = length_profile(basis.matrix);

  auto t0 = std::chrono::steady_clock::now();
  ReductionResult red = lll_reduce(basis.matrix, options.lll_delta);
  auto t1 = std::chrono::steady_clock::now();
  out.diagnostics.reduction_seconds = std::chrono::duration<double>(t1 - t0).count();
  out.diagnostics.profile_after = length_profile(red.reduced);
  if (options.with_enabling) {
    out.diagnostics.enabling = enabling_report(basis, pk.e);
  }

  out.candidates = scan_candidates(red, basis, options.secrets_hint);

  // The y search range must cover p+q-1, which always exceeds 2*sqrt(e);
  // 4*sqrt(n) is a true upper bound for comparably sized factors.
  Int y_search = basis.params.Y;
  Int wide = isqrt(pk.n << 4) + 1;
  if (wide > y_search) y_search = wide;

  // Pair policy: every pair among the top_k shortest candidates, plus
  // every pair of Howgrave passers, scanned in ascending combined norm.
  int count = static_cast<int>(out.candidates.size());
  int top = std::min(options.top_k, count);
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < top; ++i)
    for (int j = i + 1; j < top; ++j) pairs.emplace_back(i, j);
  for (int i = 0; i < count; ++i) {
    if (!out.candidates[i].passes_howgrave) continue;
    for (int j = i + 1; j < count; ++j) {
      if (!out.candidates[j].passes_howgrave) continue;
      if (i < top && j < top) continue;  // already listed
      pairs.emplace_back(i, j);
    }
  }
  std::sort(pairs.begin(), pairs.end(),
            [&](const std::pair<int, int>& a, const std::pair<int, int>& b) {
              Int na = out.candidates[a.first].norm2 + out.candidates[a.second].norm2;
              Int nb = out.candidates[b.first].norm2 + out.candidates[b.second].norm2;
              int c = cmp(na, nb);
              if (c != 0) return c < 0;
              return a < b;
            });
  if (options.max_pairs > 0 && static_cast<int>(pairs.size()) > options.max_pairs) {
    pairs.resize(options.max_pairs);
  }

  for (const auto& [i, j] : pairs) {
    auto root = extract_root(out.candidates[i], out.candidates[j], basis.params.X, y_search);
    if (!root) continue;
    auto val = validate_root(pk.n, pk.e, root->first, root->second);
    if (!val) continue;
    auto& [p, q, d] = *val;
    if (p * q != pk.n) throw InternalError("run_attack: factor check failed");
    Int phi = pk.n - p - q + 1;
    if ((pk.e * d) % phi != 1) throw InternalError("run_attack: exponent check failed");
    out.status = AttackStatus::Factored;
    out.p = p;
    out.q = q;
    out.d = d;
    out.x0 = root->first;
    out.y0 = root->second;
    out.pair_used = {i, j};
    break;
  }

  if (out.status != AttackStatus::Factored) {
    bool any_howgrave = false, any_vanisher = false;
    for (const auto& c : out.candidates) {
      any_howgrave |= c.passes_howgrave;
      any_vanisher |= c.vanishes.value_or(false);
    }
    out.status = (any_howgrave || any_vanisher)
                     ? AttackStatus::PolynomialsFoundNoFactor
                     : AttackStatus::NoVanishingPolynomial;
  }

  out.diagnostics.reduction = std::move(red);
  out.diagnostics.basis = std::move(basis);
  return out;
}

}  // namespace smallroots

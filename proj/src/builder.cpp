#include "builder.hpp"

#include <algorithm>
#include <map>

#include "errors.hpp"

namespace smallroots {

Int bound_x(const Int& e, double delta) {
  if (e < 2) throw UsageError("bound_x: modulus must exceed 1");
  if (!(delta > 0.0 && delta < 1.0)) throw UsageError("bound_x: delta out of range");
  long double t = static_cast<long double>(delta) * static_cast<long double>(log2_int(e));
  return ceil_exp2(t + 1.0L);
}

Int bound_y(const Int& e) {
  if (e < 2) throw UsageError("bound_y: modulus must exceed 1");
  Int four_e = e << 2;
  Int r = isqrt(four_e);
  if (r * r != four_e) r += 1;
  return r;
}

AttackParams make_params(int m, int t, int sigma, int tau, double delta, const Int& e) {
  if (m < 0 || t < 0) throw UsageError("make_params: m and t must be nonnegative");
  if (t > m) throw UsageError("make_params: t must not exceed m");
  AttackParams p;
  p.m = m;
  p.t = t;
  p.sigma = sigma;
  p.tau = tau;
  p.delta = delta;
  p.X = bound_x(e, delta);
  p.Y = bound_y(e);
  return p;
}

std::vector<ShiftIndex> shift_indices(const AttackParams& params) {
  if (params.t > params.m) throw UsageError("shift_indices: t must not exceed m");
  std::vector<ShiftIndex> out;
  for (int ell = 0; ell <= params.m; ++ell) {
    for (int i = 0; i <= params.m - ell; ++i) {
      if (i + ell > params.sigma) out.push_back({ShiftKind::X, i, ell});
    }
    for (int j = 1; j <= params.t; ++j) {
      if (ell - 2 * j > params.tau) out.push_back({ShiftKind::Y, j, ell});
    }
  }
  return out;
}

BiPoly build_f(const Int& n) {
  if (n < 2) throw UsageError("build_f: n must exceed 1");
  BiPoly f;
  f.add_term({1, 0}, n);
  f.add_term({1, 1}, Int(-1));
  f.add_term({0, 0}, Int(1));
  return f;
}

LatticeBasis build_basis(const Int& n, const Int& e, const AttackParams& params) {
  if (e < 2) throw UsageError("build_basis: e must exceed 1");
  if (sgn(params.X) <= 0 || sgn(params.Y) <= 0) {
    throw UsageError("build_basis: X and Y must be positive");
  }
  BiPoly f = build_f(n);
  auto indices = shift_indices(params);

  std::vector<BiPoly> rows;
  rows.reserve(indices.size());
  std::map<Monomial, int> support;
  for (const auto& si : indices) {
    BiPoly g = shift_poly(si.kind, static_cast<unsigned>(si.idx),
                          static_cast<unsigned>(si.ell),
                          static_cast<unsigned>(params.m), f, e);
    for (const auto& [mono, c] : g.terms()) support[mono] = 0;
    rows.push_back(std::move(g));
  }

  std::vector<Monomial> cols;
  cols.reserve(support.size());
  for (const auto& [mono, unused] : support) cols.push_back(mono);
  std::sort(cols.begin(), cols.end(), [](const Monomial& a, const Monomial& b) {
    unsigned ta = a.dx + a.dy, tb = b.dx + b.dy;
    if (ta != tb) return ta < tb;
    return a.dx > b.dx;
  });
  std::map<Monomial, int> col_of;
  for (size_t c = 0; c < cols.size(); ++c) col_of[cols[c]] = static_cast<int>(c);

  // Powers of the scaling bounds.
  int max_dx = 0, max_dy = 0;
  for (const auto& mono : cols) {
    max_dx = std::max(max_dx, static_cast<int>(mono.dx));
    max_dy = std::max(max_dy, static_cast<int>(mono.dy));
  }
  std::vector<Int> xp(static_cast<size_t>(max_dx) + 1, Int(1));
  std::vector<Int> yp(static_cast<size_t>(max_dy) + 1, Int(1));
  for (int i = 1; i <= max_dx; ++i) xp[i] = xp[i - 1] * params.X;
  for (int i = 1; i <= max_dy; ++i) yp[i] = yp[i - 1] * params.Y;

  LatticeBasis basis;
  basis.matrix = IntMatrix(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  for (size_t r = 0; r < rows.size(); ++r) {
    for (const auto& [mono, c] : rows[r].terms()) {
      basis.matrix.at(static_cast<int>(r), col_of[mono]) = c * xp[mono.dx] * yp[mono.dy];
    }
  }
  basis.row_index = std::move(indices);
  basis.col_monomials = std::move(cols);
  basis.params = params;
  basis.modulus_power = pow_ui(e, static_cast<unsigned long>(params.m));
  return basis;
}

bool howgrave_check(const std::vector<Int>& row, size_t nonzero_terms,
                    const Int& e, int m) {
  Int norm2 = 0;
  bool any = false;
  for (const auto& c : row) {
    if (sgn(c) != 0) any = true;
    mpz_addmul(norm2.get_mpz_t(), c.get_mpz_t(), c.get_mpz_t());
  }
  if (!any) throw UsageError("howgrave_check: zero row");
  Int rhs = pow_ui(e, 2ul * static_cast<unsigned long>(m));
  return norm2 * Int(static_cast<unsigned long>(nonzero_terms)) < rhs;
}

EnablingReport enabling_report(const LatticeBasis& basis, const Int& e) {
  EnablingReport rep;
  rep.w = basis.matrix.rows();
  rep.gram_det = gram_determinant(basis.matrix);  // throws on dependent rows

  int w = rep.w;
  // lhs = covolume^2 * (w * 2^w)^(w-1); rhs = e^(2m(w-1))
  Int factor = Int(static_cast<unsigned long>(w)) << w;
  Int lhs = rep.gram_det * pow_ui(factor, static_cast<unsigned long>(w - 1));
  Int rhs = pow_ui(e, 2ul * static_cast<unsigned long>(basis.params.m) *
                          static_cast<unsigned long>(w - 1));
  rep.bound_satisfied = lhs <= rhs;
  rep.log2_covolume = quantize_log2(0.5 * log2_int(rep.gram_det));
  double log2_factor = log2_int(factor);
  double log2_e = log2_int(e);
  rep.log2_bound = quantize_log2(basis.params.m * (w - 1) * log2_e -
                                 0.5 * (w - 1) * log2_factor);
  return rep;
}

}  // namespace smallroots

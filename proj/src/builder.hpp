#ifndef SMALLROOTS_BUILDER_HPP
#define SMALLROOTS_BUILDER_HPP

#include <vector>

#include "lattice.hpp"
#include "poly.hpp"

namespace smallroots {

// Lattice construction parameters. sigma prunes x shifts (i + ell <=
// sigma excluded), tau prunes y shifts (ell - 2j <= tau excluded); the
// unpruned values keep every index of the base construction.
struct AttackParams {
  int m = 3;
  int t = 1;
  int sigma = -1;
  int tau = -3;
  double delta = 0.25;  // attacker's guess for log_n d
  Int X, Y;             // root bounds used for row scaling

  static constexpr int unpruned_sigma = -1;
  static constexpr int unpruned_tau(int t) { return -2 * t - 1; }
};

// ceil(2 * e^delta), the x-root bound.
Int bound_x(const Int& e, double delta);
// ceil(2 * sqrt(e)), the y-root bound (exact).
Int bound_y(const Int& e);

// Params with X and Y derived from (e, delta).
AttackParams make_params(int m, int t, int sigma, int tau, double delta, const Int& e);

struct ShiftIndex {
  ShiftKind kind = ShiftKind::X;
  int idx = 0;  // i for x shifts, j for y shifts
  int ell = 0;
  bool operator==(const ShiftIndex&) const = default;
};

// The pruned index set, ordered by ascending ell, x shifts before y
// shifts within equal ell, then ascending idx. Requires t <= m.
std::vector<ShiftIndex> shift_indices(const AttackParams& params);

// x(n - y) + 1, whose root (k, p+q-1) is the target modulo e.
BiPoly build_f(const Int& n);

struct LatticeBasis {
  IntMatrix matrix;                     // rows = scaled shift polynomials
  std::vector<ShiftIndex> row_index;    // one entry per row
  std::vector<Monomial> col_monomials;  // support union, graded order
  AttackParams params;
  Int modulus_power;  // e^m
};

// Builds the coefficient matrix of all shift polynomials with x -> xX,
// y -> yY scaling applied. Columns are exactly the union of supports,
// ordered by total degree then x-degree descending.
LatticeBasis build_basis(const Int& n, const Int& e, const AttackParams& params);

// ||row||^2 * nonzero_terms < modulus^(2m), compared exactly. A row
// passing this bound turns its modular root into an integer root.
bool howgrave_check(const std::vector<Int>& row, size_t nonzero_terms,
                    const Int& e, int m);

struct EnablingReport {
  int w = 0;            // row count
  Int gram_det;         // covolume squared
  bool bound_satisfied = false;
  double log2_covolume = 0.0;  // 10 fractional bits
  double log2_bound = 0.0;
};

// Exact evaluation of the determinant condition
//   covolume^2 * (w 2^w)^(w-1) <= e^(2m(w-1)).
EnablingReport enabling_report(const LatticeBasis& basis, const Int& e);

}  // namespace smallroots

#endif

#ifndef SMALLROOTS_POLY_HPP
#define SMALLROOTS_POLY_HPP

#include <compare>
#include <map>
#include <vector>

#include "intutil.hpp"

namespace smallroots {

struct Monomial {
  unsigned dx = 0;
  unsigned dy = 0;
  auto operator<=>(const Monomial&) const = default;
};

// Bivariate integer polynomial in canonical form: the term map never
// stores a zero coefficient, so equality of values is map equality.
class BiPoly {
 public:
  using TermMap = std::map<Monomial, Int>;

  BiPoly() = default;
  static BiPoly constant(Int c);
  static BiPoly term(Monomial m, Int c);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int deg_x() const;
  int deg_y() const;
  Int coeff(Monomial m) const;
  void add_term(Monomial m, const Int& c);

  BiPoly& operator+=(const BiPoly& o);
  BiPoly& operator-=(const BiPoly& o);
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
  BiPoly pow(unsigned e) const;

  Int eval(const Int& x, const Int& y) const;

  bool operator==(const BiPoly&) const = default;

 private:
  TermMap terms_;
};

// Dense univariate integer polynomial; index = degree, leading
// coefficient nonzero unless the polynomial is identically zero.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Int> coeffs);

  const std::vector<Int>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const Int& leading() const;

  Int eval(const Int& x) const;
  UniPoly derivative() const;

  UniPoly operator+(const UniPoly& o) const;
  UniPoly operator-(const UniPoly& o) const;
  UniPoly operator*(const UniPoly& o) const;
  UniPoly operator-() const;
  UniPoly scaled(const Int& k) const;

  // gcd of all coefficients (nonnegative, 0 only for the zero polynomial).
  Int content() const;
  // content removed, leading coefficient made positive.
  UniPoly primitive_part() const;

  bool operator==(const UniPoly&) const = default;

 private:
  std::vector<Int> c_;
  void normalize();
};

Int eval_bipoly(const BiPoly& p, const Int& x, const Int& y);

enum class ShiftKind { X, Y };

// x^idx * f^ell * e^(m-ell) for X shifts, y^idx * f^ell * e^(m-ell) for
// Y shifts. Requires ell <= m.
BiPoly shift_poly(ShiftKind kind, unsigned idx, unsigned ell, unsigned m,
                  const BiPoly& f, const Int& e);

// Coefficients of p seen as a polynomial in x over Z[y]; index = x degree.
std::vector<UniPoly> coeffs_in_x(const BiPoly& p);

// p with y fixed, as a polynomial in x.
UniPoly substitute_y(const BiPoly& p, const Int& y);

// Resultant of a and b with respect to x, as a polynomial in y. Computed
// as the Sylvester matrix determinant by fraction-free (Bareiss)
// elimination over Z[y]. Both inputs must have positive degree in x; an
// identically zero result signals algebraic dependence.
UniPoly resultant_wrt_x(const BiPoly& a, const BiPoly& b);

// u / gcd(u, u'): primitive, positive leading coefficient, same root set,
// all roots simple. u must not be identically zero.
UniPoly squarefree_part(const UniPoly& u);

// Exact division; throws InternalError if the division is not exact.
UniPoly exact_div(const UniPoly& num, const UniPoly& den);

// Polynomial gcd over Z (primitive, positive leading coefficient).
UniPoly unipoly_gcd(const UniPoly& a, const UniPoly& b);

// All integers r in [lo, hi] with u(r) == 0, in increasing order.
// Sign-change bisection with exact evaluation on the squarefree part;
// interval splitting is pruned by Fourier sign-variation counts, so the
// subdivision work is bounded by the degree.
std::vector<Int> integer_roots_in_range(const UniPoly& u, const Int& lo,
                                        const Int& hi);

}  // namespace smallroots

#endif

#include "poly.hpp"

#include <algorithm>
#include <array>
#include <optional>

#include "errors.hpp"

namespace smallroots {

// ---------------------------------------------------------------------------
// BiPoly

BiPoly BiPoly::constant(Int c) {
  BiPoly p;
  if (sgn(c) != 0) p.terms_.emplace(Monomial{0, 0}, std::move(c));
  return p;
}

BiPoly BiPoly::term(Monomial m, Int c) {
  BiPoly p;
  if (sgn(c) != 0) p.terms_.emplace(m, std::move(c));
  return p;
}

int BiPoly::deg_x() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.dx));
  return d;
}

int BiPoly::deg_y() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.dy));
  return d;
}

Int BiPoly::coeff(Monomial m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Int(0) : it->second;
}

void BiPoly::add_term(Monomial m, const Int& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

BiPoly& BiPoly::operator+=(const BiPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

BiPoly& BiPoly::operator-=(const BiPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
  BiPoly r;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      r.add_term(Monomial{ma.dx + mb.dx, ma.dy + mb.dy}, ca * cb);
    }
  }
  return r;
}

BiPoly BiPoly::pow(unsigned e) const {
  BiPoly r = BiPoly::constant(1);
  for (unsigned i = 0; i < e; ++i) r = r * *this;
  return r;
}

Int BiPoly::eval(const Int& x, const Int& y) const {
  int dx = deg_x(), dy = deg_y();
  std::vector<Int> xp(static_cast<size_t>(dx) + 2, Int(1));
  std::vector<Int> yp(static_cast<size_t>(dy) + 2, Int(1));
  for (int i = 1; i <= dx; ++i) xp[i] = xp[i - 1] * x;
  for (int i = 1; i <= dy; ++i) yp[i] = yp[i - 1] * y;
  Int acc = 0;
  for (const auto& [m, c] : terms_) acc += c * xp[m.dx] * yp[m.dy];
  return acc;
}

Int eval_bipoly(const BiPoly& p, const Int& x, const Int& y) {
  return p.eval(x, y);
}

BiPoly shift_poly(ShiftKind kind, unsigned idx, unsigned ell, unsigned m,
                  const BiPoly& f, const Int& e) {
  if (ell > m) throw UsageError("shift_poly: ell exceeds m");
  BiPoly g = f.pow(ell);
  Int scale = pow_ui(e, m - ell);
  Monomial shift = kind == ShiftKind::X ? Monomial{idx, 0} : Monomial{0, idx};
  return g * BiPoly::term(shift, scale);
}

std::vector<UniPoly> coeffs_in_x(const BiPoly& p) {
  int dx = p.deg_x();
  if (dx < 0) return {};
  std::vector<std::vector<Int>> rows(static_cast<size_t>(dx) + 1);
  for (const auto& [m, c] : p.terms()) {
    auto& r = rows[m.dx];
    if (r.size() <= m.dy) r.resize(m.dy + 1, Int(0));
    r[m.dy] = c;
  }
  std::vector<UniPoly> out;
  out.reserve(rows.size());
  for (auto& r : rows) out.emplace_back(std::move(r));
  return out;
}

UniPoly substitute_y(const BiPoly& p, const Int& y) {
  int dx = p.deg_x(), dy = p.deg_y();
  if (dx < 0) return UniPoly();
  std::vector<Int> yp(static_cast<size_t>(std::max(dy, 0)) + 1, Int(1));
  for (int i = 1; i <= dy; ++i) yp[i] = yp[i - 1] * y;
  std::vector<Int> c(static_cast<size_t>(dx) + 1, Int(0));
  for (const auto& [m, co] : p.terms()) c[m.dx] += co * yp[m.dy];
  return UniPoly(std::move(c));
}

// ---------------------------------------------------------------------------
// UniPoly

UniPoly::UniPoly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { normalize(); }

void UniPoly::normalize() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

const Int& UniPoly::leading() const {
  if (c_.empty()) throw UsageError("leading coefficient of zero polynomial");
  return c_.back();
}

Int UniPoly::eval(const Int& x) const {
  Int acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

UniPoly UniPoly::derivative() const {
  if (c_.size() <= 1) return UniPoly();
  std::vector<Int> d(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<unsigned long>(i);
  return UniPoly(std::move(d));
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
  std::vector<Int> r(std::max(c_.size(), o.c_.size()), Int(0));
  for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return UniPoly(std::move(r));
}

UniPoly UniPoly::operator-(const UniPoly& o) const {
  std::vector<Int> r(std::max(c_.size(), o.c_.size()), Int(0));
  for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
  return UniPoly(std::move(r));
}

UniPoly UniPoly::operator*(const UniPoly& o) const {
  if (is_zero() || o.is_zero()) return UniPoly();
  std::vector<Int> r(c_.size() + o.c_.size() - 1, Int(0));
  for (size_t i = 0; i < c_.size(); ++i) {
    if (sgn(c_[i]) == 0) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  return UniPoly(std::move(r));
}

UniPoly UniPoly::operator-() const {
  std::vector<Int> r(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) r[i] = -c_[i];
  return UniPoly(std::move(r));
}

UniPoly UniPoly::scaled(const Int& k) const {
  if (sgn(k) == 0) return UniPoly();
  std::vector<Int> r(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] * k;
  return UniPoly(std::move(r));
}

Int UniPoly::content() const {
  Int g = 0;
  for (const auto& c : c_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

UniPoly UniPoly::primitive_part() const {
  if (is_zero()) return *this;
  Int g = content();
  if (sgn(leading()) < 0) g = -g;
  std::vector<Int> r(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] / g;
  return UniPoly(std::move(r));
}

UniPoly exact_div(const UniPoly& num, const UniPoly& den) {
  if (den.is_zero()) throw UsageError("division by zero polynomial");
  if (num.is_zero()) return num;
  if (num.degree() < den.degree()) throw InternalError("inexact polynomial division");
  std::vector<Int> rem = num.coeffs();
  std::vector<Int> quot(num.degree() - den.degree() + 1, Int(0));
  const auto& d = den.coeffs();
  int rdeg = num.degree();
  auto top = [&rem, &rdeg] {
    while (rdeg >= 0 && sgn(rem[rdeg]) == 0) --rdeg;
  };
  top();
  while (rdeg >= den.degree()) {
    Int q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), rem[rdeg].get_mpz_t(),
                den.leading().get_mpz_t());
    if (sgn(r) != 0) throw InternalError("inexact polynomial division");
    int k = rdeg - den.degree();
    quot[k] = q;
    for (size_t i = 0; i < d.size(); ++i) rem[k + i] -= q * d[i];
    top();
  }
  if (rdeg >= 0) throw InternalError("inexact polynomial division");
  return UniPoly(std::move(quot));
}

namespace {

// Remainder-like sequence step: multiplies the dividend by powers of the
// divisor's leading coefficient as needed, so the result differs from the
// true pseudo-remainder only by such factors (harmless under primitive
// part normalization).
UniPoly prs_rem(const UniPoly& a, const UniPoly& b) {
  UniPoly r = a;
  const Int& lcb = b.leading();
  while (!r.is_zero() && r.degree() >= b.degree()) {
    int k = r.degree() - b.degree();
    Int c = r.leading();
    std::vector<Int> shifted(static_cast<size_t>(k), Int(0));
    shifted.insert(shifted.end(), b.coeffs().begin(), b.coeffs().end());
    r = r.scaled(lcb) - UniPoly(std::move(shifted)).scaled(c);
  }
  return r;
}

constexpr std::array<unsigned long, 3> kProbePrimes = {
    2305843009213693951ull,  // 2^61 - 1
    999999999999999989ull,
    2147483647ull,  // 2^31 - 1
};

unsigned long mod_prime(const Int& c, unsigned long p) {
  unsigned long r = mpz_fdiv_ui(c.get_mpz_t(), p);
  return r;
}

unsigned long mulmod(unsigned long a, unsigned long b, unsigned long p) {
  return static_cast<unsigned long>((static_cast<unsigned __int128>(a) * b) % p);
}

unsigned long powmod(unsigned long a, unsigned long e, unsigned long p) {
  unsigned long r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

std::vector<unsigned long> poly_mod(const UniPoly& u, unsigned long p) {
  std::vector<unsigned long> r(u.coeffs().size());
  for (size_t i = 0; i < r.size(); ++i) r[i] = mod_prime(u.coeffs()[i], p);
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

// Degree of gcd(a, b) in F_p[y]; -1 when both are zero mod p.
int gcd_degree_mod(std::vector<unsigned long> a, std::vector<unsigned long> b,
                   unsigned long p) {
  auto trim = [](std::vector<unsigned long>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
  };
  trim(a);
  trim(b);
  while (!b.empty()) {
    // a mod b
    unsigned long inv = powmod(b.back(), p - 2, p);
    while (a.size() >= b.size()) {
      unsigned long c = mulmod(a.back(), inv, p);
      size_t off = a.size() - b.size();
      for (size_t i = 0; i < b.size(); ++i) {
        unsigned long sub = mulmod(c, b[i], p);
        a[off + i] = (a[off + i] + p - sub) % p;
      }
      trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return static_cast<int>(a.size()) - 1;
}

// True when u is certainly squarefree over Q (checked modulo a prime not
// dividing the leading coefficient). False means "unknown".
bool squarefree_probe(const UniPoly& u) {
  for (unsigned long p : kProbePrimes) {
    if (mod_prime(u.leading(), p) == 0) continue;
    auto a = poly_mod(u, p);
    auto b = poly_mod(u.derivative(), p);
    if (b.empty()) continue;  // derivative collapsed mod p
    if (gcd_degree_mod(a, b, p) == 0) return true;
  }
  return false;
}

}  // namespace

UniPoly unipoly_gcd(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero()) return b.primitive_part();
  if (b.is_zero()) return a.primitive_part();
  UniPoly x = a.primitive_part();
  UniPoly y = b.primitive_part();
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    UniPoly r = prs_rem(x, y);
    x = std::move(y);
    y = r.is_zero() ? r : r.primitive_part();
  }
  return x.primitive_part();
}

UniPoly squarefree_part(const UniPoly& u) {
  if (u.is_zero()) throw UsageError("squarefree part of zero polynomial");
  if (u.degree() == 0) return UniPoly({Int(1)});
  UniPoly prim = u.primitive_part();
  if (squarefree_probe(prim)) return prim;
  UniPoly g = unipoly_gcd(prim, prim.derivative());
  if (g.degree() == 0) return prim;
  return exact_div(prim, g).primitive_part();
}

// ---------------------------------------------------------------------------
// Resultant (Sylvester + Bareiss over Z[y])

UniPoly resultant_wrt_x(const BiPoly& a, const BiPoly& b) {
  int m = a.deg_x(), n = b.deg_x();
  if (m < 1 || n < 1) throw UsageError("resultant_wrt_x: input constant in x");
  auto ac = coeffs_in_x(a);
  auto bc = coeffs_in_x(b);
  int N = m + n;
  std::vector<std::vector<UniPoly>> M(N, std::vector<UniPoly>(N));
  for (int r = 0; r < n; ++r)
    for (int j = 0; j <= m; ++j) M[r][r + j] = ac[m - j];
  for (int r = 0; r < m; ++r)
    for (int j = 0; j <= n; ++j) M[n + r][r + j] = bc[n - j];

  UniPoly prev({Int(1)});
  int sign = 1;
  for (int k = 0; k + 1 < N; ++k) {
    if (M[k][k].is_zero()) {
      int piv = -1;
      for (int r = k + 1; r < N; ++r) {
        if (!M[r][k].is_zero()) {
          piv = r;
          break;
        }
      }
      if (piv < 0) return UniPoly();  // singular: dependent inputs
      std::swap(M[k], M[piv]);
      sign = -sign;
    }
    for (int i = k + 1; i < N; ++i) {
      for (int j = k + 1; j < N; ++j) {
        M[i][j] = exact_div(M[k][k] * M[i][j] - M[i][k] * M[k][j], prev);
      }
      M[i][k] = UniPoly();
    }
    prev = M[k][k];
  }
  UniPoly det = M[N - 1][N - 1];
  return sign < 0 ? -det : det;
}

// ---------------------------------------------------------------------------
// Integer root isolation

namespace {

int sign_of(const Int& v) { return sgn(v); }

struct FourierChain {
  std::vector<UniPoly> derivs;  // derivs[0] = v, then successive derivatives

  explicit FourierChain(const UniPoly& v) {
    derivs.push_back(v);
    while (derivs.back().degree() > 0) derivs.push_back(derivs.back().derivative());
  }

  // Sign variation count of the derivative sequence at x (zeros skipped).
  int variations(const Int& x) const {
    int count = 0, last = 0;
    for (const auto& f : derivs) {
      int s = sign_of(f.eval(x));
      if (s == 0) continue;
      if (last != 0 && s != last) ++count;
      last = s;
    }
    return count;
  }
};

// One integer root of the squarefree v in [lo, hi], or nullopt when there
// is provably none. All arithmetic exact.
std::optional<Int> find_one_root(const UniPoly& v, const Int& lo, const Int& hi) {
  if (sgn(v.eval(lo)) == 0) return lo;
  if (lo == hi) return std::nullopt;
  if (sgn(v.eval(hi)) == 0) return hi;

  FourierChain chain(v);
  struct Node {
    Int a, b;
    int va, vb;
  };
  std::vector<Node> stack;
  stack.push_back({lo, hi, chain.variations(lo), chain.variations(hi)});

  while (!stack.empty()) {
    Node nd = std::move(stack.back());
    stack.pop_back();
    if (nd.va == nd.vb) continue;  // no roots in (a, b]
    if (nd.b - nd.a == 1) continue;  // endpoints nonzero, no interior integer
    int sa = sign_of(v.eval(nd.a));
    int sb = sign_of(v.eval(nd.b));
    if (nd.va - nd.vb == 1 && sa * sb < 0) {
      // exactly one simple root: plain sign-change bisection
      Int a = nd.a, b = nd.b;
      while (b - a > 1) {
        Int mid = (a + b) >> 1;
        int sm = sign_of(v.eval(mid));
        if (sm == 0) return mid;
        if (sm == sa) {
          a = mid;
        } else {
          b = mid;
        }
      }
      continue;  // root is strictly between consecutive integers
    }
    Int mid = (nd.a + nd.b) >> 1;
    if (sgn(v.eval(mid)) == 0) return mid;
    int vm = chain.variations(mid);
    stack.push_back({nd.a, mid, nd.va, vm});
    stack.push_back({mid, nd.b, vm, nd.vb});
  }
  return std::nullopt;
}

}  // namespace

std::vector<Int> integer_roots_in_range(const UniPoly& u, const Int& lo,
                                        const Int& hi) {
  if (u.is_zero()) throw UsageError("root search on zero polynomial");
  if (lo > hi) throw UsageError("root search with lo > hi");
  UniPoly v = squarefree_part(u);
  std::vector<Int> roots;
  while (v.degree() >= 1) {
    auto r = find_one_root(v, lo, hi);
    if (!r) break;
    roots.push_back(*r);
    v = exact_div(v, UniPoly({-*r, Int(1)}));
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace smallroots

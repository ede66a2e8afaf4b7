#include "intutil.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

#include "errors.hpp"

namespace smallroots {

Int Rng::bits(unsigned nbits) {
  Int out = 0;
  unsigned produced = 0;
  while (produced < nbits) {
    std::uint64_t w = next_u64();
    unsigned take = std::min(64u, nbits - produced);
    if (take < 64) w &= (std::uint64_t(1) << take) - 1;
    Int chunk(static_cast<unsigned long>(w >> 32));
    chunk <<= 32;
    chunk += static_cast<unsigned long>(w & 0xffffffffu);
    out |= chunk << produced;
    produced += take;
  }
  return out;
}

Int Rng::exact_bits(unsigned nbits) {
  Int v = bits(nbits);
  mpz_setbit(v.get_mpz_t(), nbits - 1);
  return v;
}

Int pow_ui(const Int& base, unsigned long exp) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

Int isqrt(const Int& x) {
  Int r;
  mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
  return r;
}

bool perfect_square(const Int& x, Int* root) {
  if (sgn(x) < 0) return false;
  if (mpz_perfect_square_p(x.get_mpz_t()) == 0) return false;
  if (root != nullptr) *root = isqrt(x);
  return true;
}

size_t bit_length(const Int& x) {
  if (sgn(x) == 0) return 0;
  return mpz_sizeinbase(x.get_mpz_t(), 2);
}

double log2_int(const Int& x) {
  if (sgn(x) == 0) throw UsageError("log2 of zero");
  long exp2 = 0;
  double mant = mpz_get_d_2exp(&exp2, x.get_mpz_t());
  return static_cast<double>(exp2) + std::log2(std::fabs(mant));
}

double quantize_log2(double v, int frac_bits) {
  double scale = std::ldexp(1.0, frac_bits);
  return std::round(v * scale) / scale;
}

Int ceil_exp2(long double t) {
  if (t < 0) throw UsageError("ceil_exp2 expects a nonnegative exponent");
  long double ip = 0;
  long double fp = std::modf(t, &ip);
  auto shift = static_cast<long>(ip);
  // 2^fp in [1,2), scaled to 62 fractional bits, rounded up one ulp so the
  // result stays an upper bound for 2^t.
  auto scaled = static_cast<unsigned long long>(std::ceil(std::exp2(fp) * std::ldexp(1.0L, 62)));
  Int mant(static_cast<unsigned long>(scaled >> 32));
  mant <<= 32;
  mant += static_cast<unsigned long>(scaled & 0xffffffffull);
  mant += 1;
  if (shift >= 62) return mant << (shift - 62);
  Int q;
  mpz_cdiv_q_2exp(q.get_mpz_t(), mant.get_mpz_t(), static_cast<mp_bitcnt_t>(62 - shift));
  return q;
}

std::string to_dec(const Int& x) { return x.get_str(10); }

Int from_dec(std::string_view s) {
  if (s.empty()) throw UsageError("empty integer literal");
  size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) throw UsageError("malformed integer literal");
  for (size_t j = i; j < s.size(); ++j) {
    if (!std::isdigit(static_cast<unsigned char>(s[j]))) {
      throw UsageError("malformed integer literal: " + std::string(s));
    }
  }
  return Int(std::string(s), 10);
}

Rat rat_from_decimal(std::string_view s) {
  auto dot = s.find('.');
  if (dot == std::string_view::npos) {
    Int n = from_dec(s);
    return Rat(n);
  }
  std::string digits(s.substr(0, dot));
  std::string frac(s.substr(dot + 1));
  if (frac.empty()) throw UsageError("malformed decimal: " + std::string(s));
  bool neg = !digits.empty() && digits[0] == '-';
  Int num = from_dec((digits == "-" || digits.empty() || digits == "+") ? "0" : digits);
  Int den = 1;
  for (char c : frac) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw UsageError("malformed decimal: " + std::string(s));
    }
    num = num * 10 + ((neg || sgn(num) < 0) ? -(c - '0') : (c - '0'));
    den *= 10;
  }
  Rat r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace smallroots

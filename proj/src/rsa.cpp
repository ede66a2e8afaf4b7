#include "rsa.hpp"

#include <cmath>

#include "errors.hpp"

namespace smallroots {

namespace {

constexpr int kMillerRabinRounds = 40;

bool small_factor(const Int& x) {
  static const unsigned long primes[] = {
      3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67,
      71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137, 139,
      149, 151, 157, 163, 167, 173, 179, 181, 191, 193, 197, 199, 211, 223,
      227, 229, 233, 239, 241, 251};
  for (unsigned long p : primes) {
    if (mpz_divisible_ui_p(x.get_mpz_t(), p) && x != p) return true;
  }
  return false;
}

}  // namespace

bool is_probable_prime(const Int& x) {
  if (x < 2) return false;
  if (x == 2) return true;
  if (mpz_even_p(x.get_mpz_t())) return false;
  if (small_factor(x)) return false;
  return mpz_probab_prime_p(x.get_mpz_t(), kMillerRabinRounds) != 0;
}

namespace {

Int random_prime(Rng& rng, unsigned bits) {
  for (int attempt = 0; attempt < 4096; ++attempt) {
    Int c = rng.bits(bits);
    mpz_setbit(c.get_mpz_t(), bits - 1);
    mpz_setbit(c.get_mpz_t(), bits - 2);
    mpz_setbit(c.get_mpz_t(), 0);
    while (bit_length(c) == bits) {
      if (is_probable_prime(c)) return c;
      c += 2;
    }
  }
  throw Error("prime generation failed");
}

}  // namespace

RsaInstance keygen(unsigned modulus_bits, double delta, std::uint64_t seed,
                   const KeygenConfig& config) {
  if (modulus_bits < 128) throw UsageError("keygen: modulus_bits must be >= 128");
  if (!(delta > 0.0 && delta < 0.5)) throw UsageError("keygen: delta must lie in (0, 0.5)");
  auto d_bits = static_cast<unsigned>(delta * modulus_bits);
  if (d_bits < 16) throw UsageError("keygen: delta * modulus_bits must be >= 16");

  Rng rng(seed);
  Int p = random_prime(rng, modulus_bits / 2);
  Int q = random_prime(rng, modulus_bits / 2);
  while (q == p) q = random_prime(rng, modulus_bits / 2);
  Int n = p * q;
  Int phi = n - p - q + 1;

  // e > n^threshold compared exactly as e^den > n^num.
  Rat thr = rat_from_decimal(std::to_string(config.e_min_exponent));
  auto thr_num = static_cast<unsigned long>(thr.get_num().get_ui());
  auto thr_den = static_cast<unsigned long>(thr.get_den().get_ui());
  Int n_pow = pow_ui(n, thr_num);

  for (int attempt = 0; attempt < 65536; ++attempt) {
    Int d = rng.bits(d_bits);
    mpz_setbit(d.get_mpz_t(), d_bits - 1);
    mpz_setbit(d.get_mpz_t(), 0);
    Int g;
    mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), phi.get_mpz_t());
    if (g != 1) continue;
    Int e;
    mpz_invert(e.get_mpz_t(), d.get_mpz_t(), phi.get_mpz_t());
    if (pow_ui(e, thr_den) <= n_pow) continue;
    Int k = (e * d - 1) / phi;
    RsaInstance inst;
    inst.n = n;
    inst.p = p;
    inst.q = q;
    inst.e = e;
    inst.d = d;
    inst.k = k;
    inst.phi = phi;
    inst.delta = delta;
    inst.modulus_bits = modulus_bits;
    inst.seed = seed;
    return inst;
  }
  throw Error("keygen: could not satisfy the public-exponent size filter");
}

std::optional<std::pair<Int, Int>> recover_factors_from_phi(const Int& n, const Int& phi) {
  if (n < 6) throw UsageError("recover_factors_from_phi: n too small");
  Int s = n - phi + 1;
  Int disc = s * s - 4 * n;
  if (sgn(disc) < 0) return std::nullopt;
  Int t;
  if (!perfect_square(disc, &t)) return std::nullopt;
  if (mpz_odd_p(Int(s - t).get_mpz_t())) return std::nullopt;
  Int p = (s - t) / 2;
  Int q = (s + t) / 2;
  if (p <= 1 || q <= 1 || p * q != n) return std::nullopt;
  return std::make_pair(p, q);
}

std::optional<WienerResult> wiener(const PublicKey& pk) {
  // Convergents of e/n via the Euclidean quotient sequence.
  Int a = pk.e, b = pk.n;
  Int k_prev = 0, k_cur = 1;  // numerators
  Int d_prev = 1, d_cur = 0;  // denominators
  while (sgn(b) != 0) {
    Int quot, rem;
    mpz_fdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    Int k_next = quot * k_cur + k_prev;
    Int d_next = quot * d_cur + d_prev;
    k_prev = k_cur;
    k_cur = k_next;
    d_prev = d_cur;
    d_cur = d_next;
    a = b;
    b = rem;

    if (sgn(k_cur) <= 0) continue;
    Int ed1 = pk.e * d_cur - 1;
    if (!mpz_divisible_p(ed1.get_mpz_t(), k_cur.get_mpz_t())) continue;
    Int phi_hat = ed1 / k_cur;
    if (phi_hat >= pk.n) continue;
    auto fac = recover_factors_from_phi(pk.n, phi_hat);
    if (fac) return WienerResult{d_cur, fac->first, fac->second};
  }
  return std::nullopt;
}

}  // namespace smallroots

#ifndef SMALLROOTS_RSA_HPP
#define SMALLROOTS_RSA_HPP

#include <cstdint>
#include <optional>
#include <utility>

#include "intutil.hpp"

namespace smallroots {

struct PublicKey {
  Int n, e;
};

// Full key material of a generated small-exponent instance. e*d = 1 +
// k*phi holds exactly; delta is the requested size exponent (d has
// exactly floor(delta * modulus_bits) bits).
struct RsaInstance {
  Int n, p, q, e, d, k, phi;
  double delta = 0.0;
  unsigned modulus_bits = 0;
  std::uint64_t seed = 0;
  bool has_secrets = true;  // false for public-only imports

  PublicKey public_key() const { return {n, e}; }
};

struct KeygenConfig {
  // d is resampled until e > n^e_min_exponent.
  double e_min_exponent = 0.9;
};

// Deterministic in (modulus_bits, delta, seed). Primes get modulus_bits/2
// bits each (top two bits set); d is odd with exactly
// floor(delta*modulus_bits) bits and gcd(d, phi) = 1.
RsaInstance keygen(unsigned modulus_bits, double delta, std::uint64_t seed,
                   const KeygenConfig& config = {});

// Trial division by small primes, then 40 strong probable-prime rounds.
bool is_probable_prime(const Int& x);

struct WienerResult {
  Int d, p, q;
};

// Continued-fraction attack: walks the convergents k/d of e/n and accepts
// the first one that yields a consistent factorization of n. Absence of a
// result is a normal outcome.
std::optional<WienerResult> wiener(const PublicKey& pk);

// Given phi(n), solves for the factors via the quadratic
// x^2 - (n - phi + 1) x + n; returns (min, max) when it splits over Z.
std::optional<std::pair<Int, Int>> recover_factors_from_phi(const Int& n, const Int& phi);

}  // namespace smallroots

#endif

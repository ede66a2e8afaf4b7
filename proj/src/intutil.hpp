#ifndef SMALLROOTS_INTUTIL_HPP
#define SMALLROOTS_INTUTIL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace smallroots {

using Int = mpz_class;
using Rat = mpq_class;

// Deterministic random source. All randomized operations in the library
// derive their entropy from this so that a (seed, parameters) pair fully
// determines the result on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform integer in [0, 2^nbits).
  Int bits(unsigned nbits);

  // Uniform nbits-bit integer (top bit always set). nbits >= 1.
  Int exact_bits(unsigned nbits);

 private:
  std::mt19937_64 gen_;
};

Int pow_ui(const Int& base, unsigned long exp);

// Floor of the square root.
Int isqrt(const Int& x);

// True iff x is a perfect square; when it is and root != nullptr, *root
// receives the nonnegative square root.
bool perfect_square(const Int& x, Int* root = nullptr);

// Number of bits in |x|; 0 for x == 0.
size_t bit_length(const Int& x);

// log2|x| for x != 0, accurate to well below 2^-10.
double log2_int(const Int& x);

// Round to a fixed number of fractional bits (default grid: 1/1024).
double quantize_log2(double v, int frac_bits = 10);

// ceil(2^t) for a real exponent t >= 0 given as a long double.
Int ceil_exp2(long double t);

std::string to_dec(const Int& x);
Int from_dec(std::string_view s);  // throws UsageError on malformed input

// Parses a plain decimal like "0.99" into an exact rational.
Rat rat_from_decimal(std::string_view s);

}  // namespace smallroots

#endif

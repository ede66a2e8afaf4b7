#ifndef SMALLROOTS_LATTICE_HPP
#define SMALLROOTS_LATTICE_HPP

#include <string>
#include <vector>

#include "intutil.hpp"

namespace smallroots {

// Dense integer matrix, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Int& at(int r, int c) { return a_[size_t(r) * cols_ + c]; }
  const Int& at(int r, int c) const { return a_[size_t(r) * cols_ + c]; }

  static IntMatrix identity(int n);
  bool operator==(const IntMatrix&) const = default;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Int> a_;
};

IntMatrix matmul(const IntMatrix& a, const IntMatrix& b);

// Determinant of a square matrix (fraction-free Bareiss elimination).
Int determinant(const IntMatrix& m);

// det(B * B^T), an exact integer; the lattice covolume is its square
// root. Throws DependentRowsError when the rows are dependent (det 0).
Int gram_determinant(const IntMatrix& b);

// Squared Euclidean norm of row r.
Int row_norm2(const IntMatrix& b, int r);

// Per-row log2 Euclidean norms, rounded to 10 fractional bits.
// Throws UsageError on a zero row.
std::vector<double> length_profile(const IntMatrix& b);

struct ReductionResult {
  IntMatrix reduced;    // same shape as the input
  IntMatrix transform;  // unimodular, reduced = transform * input
  long swaps = 0;
  Rat lovasz_delta;
};

// LLL reduction over the row lattice of `basis` with exact integer
// Gram-Schmidt bookkeeping (works on the Gram matrix, so non-square
// bases need no column elimination). Row order of the input is the
// column indexing of the transform.
//
// A floating-point pre-reduction pass may run first for speed; the
// final basis always comes out of the exact pass and is verified
// against the size-reduction and Lovasz conditions in exact arithmetic.
ReductionResult lll_reduce(const IntMatrix& basis, const Rat& lovasz_delta = Rat(99, 100));

// Exact check of the full reduction contract: transform * input ==
// reduced, |det(transform)| == 1, size-reduction |mu| <= 1/2 and the
// Lovasz condition at the recorded delta. Returns false and fills
// `why` (if given) on the first violated condition.
bool verify_reduction(const IntMatrix& input, const ReductionResult& red,
                      std::string* why = nullptr);

}  // namespace smallroots

#endif

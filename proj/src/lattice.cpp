#include "lattice.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace smallroots {

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix matmul(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw UsageError("matmul: shape mismatch");
  IntMatrix r(a.rows(), b.cols());
  Int t;
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < a.cols(); ++k) {
      const Int& aik = a.at(i, k);
      if (sgn(aik) == 0) continue;
      for (int j = 0; j < b.cols(); ++j) {
        mpz_addmul(r.at(i, j).get_mpz_t(), aik.get_mpz_t(), b.at(k, j).get_mpz_t());
      }
    }
  }
  return r;
}

Int determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw UsageError("determinant of non-square matrix");
  int n = m.rows();
  if (n == 0) return 1;
  IntMatrix w = m;
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k + 1 < n; ++k) {
    if (sgn(w.at(k, k)) == 0) {
      int piv = -1;
      for (int r = k + 1; r < n; ++r) {
        if (sgn(w.at(r, k)) != 0) {
          piv = r;
          break;
        }
      }
      if (piv < 0) return 0;
      for (int c = 0; c < n; ++c) std::swap(w.at(k, c), w.at(piv, c));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        Int t = w.at(k, k) * w.at(i, j) - w.at(i, k) * w.at(k, j);
        mpz_divexact(w.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      w.at(i, k) = 0;
    }
    prev = w.at(k, k);
  }
  return sign < 0 ? Int(-w.at(n - 1, n - 1)) : w.at(n - 1, n - 1);
}

Int gram_determinant(const IntMatrix& b) {
  int r = b.rows(), c = b.cols();
  IntMatrix g(r, r);
  for (int i = 0; i < r; ++i) {
    for (int j = i; j < r; ++j) {
      Int s = 0;
      for (int k = 0; k < c; ++k) {
        mpz_addmul(s.get_mpz_t(), b.at(i, k).get_mpz_t(), b.at(j, k).get_mpz_t());
      }
      g.at(i, j) = s;
      if (j != i) g.at(j, i) = s;
    }
  }
  Int det = determinant(g);
  if (sgn(det) == 0) throw DependentRowsError("gram determinant is zero");
  return det;
}

Int row_norm2(const IntMatrix& b, int r) {
  Int s = 0;
  for (int c = 0; c < b.cols(); ++c) {
    mpz_addmul(s.get_mpz_t(), b.at(r, c).get_mpz_t(), b.at(r, c).get_mpz_t());
  }
  return s;
}

std::vector<double> length_profile(const IntMatrix& b) {
  std::vector<double> out(b.rows());
  for (int r = 0; r < b.rows(); ++r) {
    Int n2 = row_norm2(b, r);
    if (sgn(n2) == 0) throw UsageError("length_profile: zero row");
    out[r] = quantize_log2(0.5 * log2_int(n2));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Integral LLL with transform tracking.
//
// State follows the classical integer-only formulation: d[i] is the Gram
// determinant of the leading i rows (d[0] = 1), and lam[i][j] = mu_{i,j} *
// d[j+1] for j < i. All updates are exact integer operations.

namespace {

class LllState {
 public:
  LllState(const IntMatrix& basis, const Rat& delta)
      : b_(basis),
        h_(IntMatrix::identity(basis.rows())),
        n_(basis.rows()),
        cols_(basis.cols()),
        d_(size_t(basis.rows()) + 1),
        lam_(basis.rows()),
        delta_num_(delta.get_num()),
        delta_den_(delta.get_den()) {
    for (int i = 0; i < n_; ++i) lam_[i].assign(size_t(i), Int(0));
    d_[0] = 1;
  }

  ReductionResult run(const Rat& delta) {
    gram_row(0);
    int k = 1;
    int kmax = 0;
    while (k < n_) {
      if (k > kmax) {
        kmax = k;
        gram_row(k);
      }
      size_reduce(k, k - 1);
      // Lovasz at (k-1, k): swap when num*d[k]^2 > den*(d[k+1]*d[k-1] + lam^2)
      t0_ = d_[k] * d_[k];
      t0_ *= delta_num_;
      t1_ = d_[size_t(k) + 1] * d_[k - 1];
      mpz_addmul(t1_.get_mpz_t(), lam_[k][k - 1].get_mpz_t(), lam_[k][k - 1].get_mpz_t());
      t1_ *= delta_den_;
      if (t0_ > t1_) {
        swap_step(k, kmax);
        k = std::max(1, k - 1);
      } else {
        for (int l = k - 2; l >= 0; --l) size_reduce(k, l);
        ++k;
      }
    }
    ReductionResult res;
    res.reduced = std::move(b_);
    res.transform = std::move(h_);
    res.swaps = swaps_;
    res.lovasz_delta = delta;
    return res;
  }

 private:
  void gram_row(int k) {
    for (int j = 0; j <= k; ++j) {
      u_ = 0;
      for (int c = 0; c < cols_; ++c) {
        mpz_addmul(u_.get_mpz_t(), b_.at(k, c).get_mpz_t(), b_.at(j, c).get_mpz_t());
      }
      for (int i = 0; i < j; ++i) {
        u_ *= d_[size_t(i) + 1];
        mpz_submul(u_.get_mpz_t(), lam_[k][i].get_mpz_t(), lam_[j][i].get_mpz_t());
        mpz_divexact(u_.get_mpz_t(), u_.get_mpz_t(), d_[i].get_mpz_t());
      }
      if (j < k) {
        lam_[k][j] = u_;
      } else {
        if (sgn(u_) <= 0) throw DependentRowsError("lll_reduce: rows are linearly dependent");
        d_[size_t(k) + 1] = u_;
      }
    }
  }

  void size_reduce(int k, int l) {
    const Int& dl = d_[size_t(l) + 1];
    t0_ = lam_[k][l] << 1;
    if (mpz_cmpabs(t0_.get_mpz_t(), dl.get_mpz_t()) <= 0) return;
    // q = nearest integer to lam/d
    t0_ += dl;
    t1_ = dl << 1;
    mpz_fdiv_q(q_.get_mpz_t(), t0_.get_mpz_t(), t1_.get_mpz_t());
    for (int c = 0; c < cols_; ++c) {
      mpz_submul(b_.at(k, c).get_mpz_t(), q_.get_mpz_t(), b_.at(l, c).get_mpz_t());
    }
    for (int c = 0; c < n_; ++c) {
      mpz_submul(h_.at(k, c).get_mpz_t(), q_.get_mpz_t(), h_.at(l, c).get_mpz_t());
    }
    mpz_submul(lam_[k][l].get_mpz_t(), q_.get_mpz_t(), dl.get_mpz_t());
    for (int i = 0; i < l; ++i) {
      mpz_submul(lam_[k][i].get_mpz_t(), q_.get_mpz_t(), lam_[l][i].get_mpz_t());
    }
  }

  void swap_step(int k, int kmax) {
    ++swaps_;
    for (int c = 0; c < cols_; ++c) std::swap(b_.at(k, c), b_.at(k - 1, c));
    for (int c = 0; c < n_; ++c) std::swap(h_.at(k, c), h_.at(k - 1, c));
    for (int j = 0; j <= k - 2; ++j) std::swap(lam_[k][j], lam_[k - 1][j]);
    const Int lam = lam_[k][k - 1];
    // new d[k] = (d[k-1]*d[k+1] + lam^2) / d[k]
    bnew_ = d_[k - 1] * d_[size_t(k) + 1];
    mpz_addmul(bnew_.get_mpz_t(), lam.get_mpz_t(), lam.get_mpz_t());
    mpz_divexact(bnew_.get_mpz_t(), bnew_.get_mpz_t(), d_[k].get_mpz_t());
    for (int i = k + 1; i <= kmax; ++i) {
      t0_ = lam_[i][k];
      t1_ = d_[size_t(k) + 1] * lam_[i][k - 1];
      mpz_submul(t1_.get_mpz_t(), lam.get_mpz_t(), t0_.get_mpz_t());
      mpz_divexact(lam_[i][k].get_mpz_t(), t1_.get_mpz_t(), d_[k].get_mpz_t());
      t1_ = bnew_ * t0_;
      mpz_addmul(t1_.get_mpz_t(), lam.get_mpz_t(), lam_[i][k].get_mpz_t());
      mpz_divexact(lam_[i][k - 1].get_mpz_t(), t1_.get_mpz_t(), d_[size_t(k) + 1].get_mpz_t());
    }
    d_[k] = bnew_;
  }

  IntMatrix b_;
  IntMatrix h_;
  int n_;
  int cols_;
  std::vector<Int> d_;
  std::vector<std::vector<Int>> lam_;
  Int delta_num_, delta_den_;
  long swaps_ = 0;
  Int u_, q_, t0_, t1_, bnew_;  // scratch
};

}  // namespace

ReductionResult lll_reduce(const IntMatrix& basis, const Rat& lovasz_delta) {
  if (basis.rows() < 1 || basis.cols() < 1) throw UsageError("lll_reduce: empty basis");
  if (lovasz_delta <= Rat(1, 4) || lovasz_delta >= 1) {
    throw UsageError("lll_reduce: delta must lie in (1/4, 1)");
  }
  LllState state(basis, lovasz_delta);
  ReductionResult res = state.run(lovasz_delta);
  std::string why;
  if (!verify_reduction(basis, res, &why)) {
    throw InternalError("lll_reduce: contract verification failed: " + why);
  }
  return res;
}

bool verify_reduction(const IntMatrix& input, const ReductionResult& red,
                      std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why != nullptr) *why = msg;
    return false;
  };
  if (red.reduced.rows() != input.rows() || red.reduced.cols() != input.cols() ||
      red.transform.rows() != input.rows() || red.transform.cols() != input.rows()) {
    return fail("shape mismatch");
  }
  if (matmul(red.transform, input) != red.reduced) {
    return fail("transform * input != reduced");
  }
  Int det = determinant(red.transform);
  if (det != 1 && det != -1) return fail("transform is not unimodular");

  // Fresh integer Gram-Schmidt data of the reduced basis.
  int n = red.reduced.rows();
  std::vector<Int> d(size_t(n) + 1);
  std::vector<std::vector<Int>> lam(n);
  d[0] = 1;
  for (int k = 0; k < n; ++k) {
    lam[k].assign(size_t(k), Int(0));
    for (int j = 0; j <= k; ++j) {
      Int u = 0;
      for (int c = 0; c < red.reduced.cols(); ++c) {
        mpz_addmul(u.get_mpz_t(), red.reduced.at(k, c).get_mpz_t(),
                   red.reduced.at(j, c).get_mpz_t());
      }
      for (int i = 0; i < j; ++i) {
        u = (d[size_t(i) + 1] * u - lam[k][i] * lam[j][i]);
        mpz_divexact(u.get_mpz_t(), u.get_mpz_t(), d[i].get_mpz_t());
      }
      if (j < k) {
        lam[k][j] = u;
      } else {
        if (sgn(u) <= 0) return fail("reduced rows are dependent");
        d[size_t(k) + 1] = u;
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      Int two = lam[i][j] << 1;
      if (mpz_cmpabs(two.get_mpz_t(), d[size_t(j) + 1].get_mpz_t()) > 0) {
        return fail("size reduction violated");
      }
    }
  }
  const Int num(red.lovasz_delta.get_num()), den(red.lovasz_delta.get_den());
  for (int k = 1; k < n; ++k) {
    Int lhs = den * (d[size_t(k) + 1] * d[k - 1] + lam[k][k - 1] * lam[k][k - 1]);
    Int rhs = num * d[k] * d[k];
    if (lhs < rhs) return fail("Lovasz condition violated");
  }
  return true;
}

}  // namespace smallroots

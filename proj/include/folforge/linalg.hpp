#ifndef FOLFORGE_LINALG_HPP
#define FOLFORGE_LINALG_HPP

#include <optional>
#include <vector>

#include "folforge/scalar.hpp"

namespace folforge {

using Vec = std::vector<Scalar>;

class Matrix {
  public:
    Matrix() : r_(0), c_(0) {}
    Matrix(int rows, int cols) : r_(rows), c_(cols), a_((size_t)rows * cols) {}
    static Matrix identity(int n);
    static Matrix from_rows(const std::vector<Vec>& rows);

    int rows() const { return r_; }
    int cols() const { return c_; }
    Scalar& at(int i, int j) { return a_[(size_t)i * c_ + j]; }
    const Scalar& at(int i, int j) const { return a_[(size_t)i * c_ + j]; }

    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix operator*(const Matrix& o) const;
    Matrix scaled(const Scalar& c) const;
    Matrix transpose() const;
    bool operator==(const Matrix& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
    bool is_zero() const;

    Vec row(int i) const;
    Vec apply(const Vec& x) const; // M x

  private:
    int r_, c_;
    std::vector<Scalar> a_;
};

struct RankKernel {
    int rank = 0;
    std::vector<int> pivot_cols;
    // canonical reduced basis: kernel[k] has 1 at its free column and 0
    // at every other free column
    std::vector<Vec> kernel;
};

// Exact rank and kernel via fraction-free (Bareiss) elimination on the
// denominator-cleared matrix.  Pivot rule: first nonzero column, then the
// entry of smallest numerator bit length, then lowest row index; output
// is deterministic for equal inputs.
RankKernel rank_kernel(const Matrix& m);

int rank_of(const Matrix& m);
int rank_of_rows(const std::vector<Vec>& rows);

struct AffineSolution {
    Vec particular;
    std::vector<Vec> kernel;
};

// solve M x = b exactly; nullopt when inconsistent
std::optional<AffineSolution> solve_affine(const Matrix& m, const Vec& b);

} // namespace folforge

#endif

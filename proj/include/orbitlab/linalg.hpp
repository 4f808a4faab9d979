#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "orbitlab/common.hpp"

namespace orbitlab {

/// Dense matrix over T with value semantics. T is Integer or Rational.
template <typename T>
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(long rows, long cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    long rows() const { return rows_; }
    long cols() const { return cols_; }
    T& operator()(long i, long j) { return a_[i * cols_ + j]; }
    const T& operator()(long i, long j) const { return a_[i * cols_ + j]; }
    bool operator==(const Mat&) const = default;

    static Mat identity(long n) {
        Mat m(n, n);
        for (long i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    Mat transposed() const {
        Mat m(cols_, rows_);
        for (long i = 0; i < rows_; ++i)
            for (long j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
        return m;
    }

    Mat operator*(const Mat& o) const {
        Mat m(rows_, o.cols_);
        for (long i = 0; i < rows_; ++i)
            for (long k = 0; k < cols_; ++k) {
                const T& v = (*this)(i, k);
                if (v == 0) continue;
                for (long j = 0; j < o.cols_; ++j) m(i, j) += v * o(k, j);
            }
        return m;
    }

    std::vector<T> apply(const std::vector<T>& x) const {
        std::vector<T> y(rows_);
        for (long i = 0; i < rows_; ++i)
            for (long j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
        return y;
    }

private:
    long rows_, cols_;
    std::vector<T> a_;
};

using IntMat = Mat<Integer>;
using RatMat = Mat<Rational>;
using IntVec = std::vector<Integer>;
using RatVec = std::vector<Rational>;

// ---- integer lattice algorithms ----

/// Row Hermite normal form. Returns H with U*M = H for some unimodular U:
/// pivot columns strictly increasing, pivots positive, entries above a pivot
/// reduced into [0, pivot). Zero rows are dropped.
IntMat row_hnf(IntMat m);

/// Column HNF with transform: M*U = H, U unimodular. H keeps all columns;
/// the first `rank` columns are the echelon basis, the rest are zero.
struct ColHnf {
    IntMat h;
    IntMat u;
    long rank;
    std::vector<long> pivot_rows;  // pivot row of each echelon column
};
ColHnf col_hnf(const IntMat& m);

/// Basis of {x : M x = 0} over the integers, returned as rows in row-HNF.
IntMat int_kernel(const IntMat& m);

/// One integer solution of M x = b, if any.
std::optional<IntVec> solve_int(const IntMat& m, const IntVec& b);

/// Canonical representative of x modulo the lattice spanned by the rows of
/// `relations` (rows must be in row-HNF). Deterministic.
IntVec reduce_mod_lattice(IntVec x, const IntMat& relations);

/// Smith normal form: returns (D, U, W) with U*M*W = D, D diagonal with
/// d1 | d2 | ... (nonnegative).
struct Snf {
    IntMat d;
    IntMat u;
    IntMat w;
    long rank;
};
Snf smith_normal_form(IntMat m);

Integer content(const IntVec& v);

// ---- exact rational elimination ----

struct Rref {
    RatMat r;
    long rank;
    std::vector<long> pivot_cols;
};
Rref rref(RatMat m);

/// Basis of the rational null space of M, canonicalized: basis vectors are
/// the rows of the RREF of the standard free-column basis.
RatMat rat_kernel(const RatMat& m);

/// Particular solution of M x = b with free variables set to zero.
std::optional<RatVec> solve_rat(const RatMat& m, const RatVec& b);

/// Left inverse W with W*M = I for M of full column rank. Deterministic.
std::optional<RatMat> left_inverse(const RatMat& m);

/// Characteristic polynomial of a square rational matrix by the
/// Faddeev-LeVerrier recursion; coefficients ascending, monic of degree n.
RatVec charpoly(const RatMat& a);

/// Kronecker (tensor) product.
RatMat kronecker(const RatMat& a, const RatMat& b);

}  // namespace orbitlab

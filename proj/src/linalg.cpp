#include "orbitlab/linalg.hpp"

namespace orbitlab {

namespace {

void swap_cols(IntMat& m, long a, long b) {
    for (long i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

void negate_col(IntMat& m, long c) {
    for (long i = 0; i < m.rows(); ++i) m(i, c) = -m(i, c);
}

// col[dst] -= q * col[src]
void axpy_col(IntMat& m, long dst, long src, const Integer& q) {
    if (q == 0) return;
    for (long i = 0; i < m.rows(); ++i) m(i, dst) -= q * m(i, src);
}

}  // namespace

ColHnf col_hnf(const IntMat& m) {
    ColHnf res;
    res.h = m;
    res.u = IntMat::identity(m.cols());
    IntMat& h = res.h;
    IntMat& u = res.u;
    long rows = m.rows(), cols = m.cols();
    long col = 0;
    for (long row = 0; row < rows && col < cols; ++row) {
        // eliminate along this row via the Euclidean algorithm on columns
        long piv = -1;
        for (long j = col; j < cols; ++j)
            if (h(row, j) != 0) { piv = j; break; }
        if (piv < 0) continue;
        if (piv != col) { swap_cols(h, col, piv); swap_cols(u, col, piv); }
        for (long j = col + 1; j < cols; ++j) {
            while (h(row, j) != 0) {
                Integer q = h(row, col) / h(row, j);  // truncated division
                axpy_col(h, col, j, q);
                axpy_col(u, col, j, q);
                swap_cols(h, col, j);
                swap_cols(u, col, j);
            }
        }
        if (h(row, col) < 0) { negate_col(h, col); negate_col(u, col); }
        // reduce earlier columns at this pivot row into [0, pivot)
        for (long j = 0; j < col; ++j) {
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), h(row, j).get_mpz_t(), h(row, col).get_mpz_t());
            axpy_col(h, j, col, q);
            axpy_col(u, j, col, q);
        }
        res.pivot_rows.push_back(row);
        ++col;
    }
    res.rank = col;
    return res;
}

IntMat row_hnf(IntMat m) {
    ColHnf ch = col_hnf(m.transposed());
    IntMat out(ch.rank, m.cols());
    for (long j = 0; j < ch.rank; ++j)
        for (long i = 0; i < m.cols(); ++i) out(j, i) = ch.h(i, j);
    return out;
}

IntMat int_kernel(const IntMat& m) {
    ColHnf ch = col_hnf(m);
    long n = m.cols();
    IntMat basis(n - ch.rank, n);
    for (long k = ch.rank; k < n; ++k)
        for (long i = 0; i < n; ++i) basis(k - ch.rank, i) = ch.u(i, k);
    return row_hnf(basis);
}

std::optional<IntVec> solve_int(const IntMat& m, const IntVec& b) {
    ColHnf ch = col_hnf(m);
    IntVec residue = b;
    IntVec y(m.cols());
    for (long k = 0; k < ch.rank; ++k) {
        long r = ch.pivot_rows[k];
        if (residue[r] % ch.h(r, k) != 0) return std::nullopt;
        y[k] = residue[r] / ch.h(r, k);
        for (long i = 0; i < m.rows(); ++i) residue[i] -= y[k] * ch.h(i, k);
    }
    for (long i = 0; i < m.rows(); ++i)
        if (residue[i] != 0) return std::nullopt;
    IntVec x(m.cols());
    for (long i = 0; i < m.cols(); ++i)
        for (long k = 0; k < ch.rank; ++k) x[i] += ch.u(i, k) * y[k];
    return x;
}

IntVec reduce_mod_lattice(IntVec x, const IntMat& relations) {
    for (long r = 0; r < relations.rows(); ++r) {
        long piv = -1;
        for (long j = 0; j < relations.cols(); ++j)
            if (relations(r, j) != 0) { piv = j; break; }
        if (piv < 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), x[piv].get_mpz_t(), relations(r, piv).get_mpz_t());
        if (q == 0) continue;
        for (long j = 0; j < relations.cols(); ++j) x[j] -= q * relations(r, j);
    }
    return x;
}

namespace {

void swap_rows_tracked(IntMat& d, IntMat& u, long a, long b) {
    for (long j = 0; j < d.cols(); ++j) std::swap(d(a, j), d(b, j));
    for (long j = 0; j < u.cols(); ++j) std::swap(u(a, j), u(b, j));
}

void swap_cols_tracked(IntMat& d, IntMat& w, long a, long b) {
    for (long i = 0; i < d.rows(); ++i) std::swap(d(i, a), d(i, b));
    for (long i = 0; i < w.rows(); ++i) std::swap(w(i, a), w(i, b));
}

void row_axpy_tracked(IntMat& d, IntMat& u, long dst, long src, const Integer& q) {
    if (q == 0) return;
    for (long j = 0; j < d.cols(); ++j) d(dst, j) -= q * d(src, j);
    for (long j = 0; j < u.cols(); ++j) u(dst, j) -= q * u(src, j);
}

void col_axpy_tracked(IntMat& d, IntMat& w, long dst, long src, const Integer& q) {
    if (q == 0) return;
    for (long i = 0; i < d.rows(); ++i) d(i, dst) -= q * d(i, src);
    for (long i = 0; i < w.rows(); ++i) w(i, dst) -= q * w(i, src);
}

}  // namespace

Snf smith_normal_form(IntMat m) {
    Snf res;
    long rows = m.rows(), cols = m.cols();
    res.u = IntMat::identity(rows);
    res.w = IntMat::identity(cols);
    IntMat& d = m;
    IntMat& u = res.u;
    IntMat& w = res.w;
    long t = 0;
    long nmin = std::min(rows, cols);
    while (t < nmin) {
        // locate smallest nonzero |entry| in the trailing block
        long pi = -1, pj = -1;
        Integer best;
        for (long i = t; i < rows; ++i)
            for (long j = t; j < cols; ++j) {
                if (d(i, j) == 0) continue;
                Integer a = abs(d(i, j));
                if (pi < 0 || a < best) { best = a; pi = i; pj = j; }
            }
        if (pi < 0) break;
        if (pi != t) swap_rows_tracked(d, u, t, pi);
        if (pj != t) swap_cols_tracked(d, w, t, pj);
        bool dirty = false;
        for (long i = t + 1; i < rows; ++i) {
            Integer q = d(i, t) / d(t, t);
            row_axpy_tracked(d, u, i, t, q);
            if (d(i, t) != 0) dirty = true;
        }
        for (long j = t + 1; j < cols; ++j) {
            Integer q = d(t, j) / d(t, t);
            col_axpy_tracked(d, w, j, t, q);
            if (d(t, j) != 0) dirty = true;
        }
        if (dirty) continue;  // remainders left; repeat with the smaller pivot
        // divisibility condition d(t,t) | d(i,j) for the trailing block
        bool fixed = true;
        for (long i = t + 1; i < rows && fixed; ++i)
            for (long j = t + 1; j < cols && fixed; ++j)
                if (d(i, j) % d(t, t) != 0) {
                    row_axpy_tracked(d, u, t, i, Integer(-1));
                    fixed = false;
                }
        if (!fixed) continue;
        if (d(t, t) < 0) {
            for (long j = 0; j < cols; ++j) d(t, j) = -d(t, j);
            for (long j = 0; j < u.cols(); ++j) u(t, j) = -u(t, j);
        }
        ++t;
    }
    res.d = d;
    res.rank = t;
    return res;
}

Integer content(const IntVec& v) {
    Integer g = 0;
    for (const Integer& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    return g;
}

Rref rref(RatMat m) {
    Rref res;
    long rows = m.rows(), cols = m.cols();
    long r = 0;
    for (long c = 0; c < cols && r < rows; ++c) {
        long piv = -1;
        for (long i = r; i < rows; ++i)
            if (m(i, c) != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            for (long j = 0; j < cols; ++j) std::swap(m(r, j), m(piv, j));
        Rational inv = m(r, c);
        for (long j = c; j < cols; ++j) m(r, j) /= inv;
        for (long i = 0; i < rows; ++i) {
            if (i == r || m(i, c) == 0) continue;
            Rational f = m(i, c);
            for (long j = c; j < cols; ++j) m(i, j) -= f * m(r, j);
        }
        res.pivot_cols.push_back(c);
        ++r;
    }
    res.r = std::move(m);
    res.rank = r;
    return res;
}

RatMat rat_kernel(const RatMat& m) {
    Rref rr = rref(m);
    long cols = m.cols();
    std::vector<long> free_cols;
    {
        std::vector<bool> is_pivot(cols, false);
        for (long c : rr.pivot_cols) is_pivot[c] = true;
        for (long c = 0; c < cols; ++c)
            if (!is_pivot[c]) free_cols.push_back(c);
    }
    RatMat basis(static_cast<long>(free_cols.size()), cols);
    for (size_t k = 0; k < free_cols.size(); ++k) {
        basis(k, free_cols[k]) = 1;
        for (size_t p = 0; p < rr.pivot_cols.size(); ++p)
            basis(k, rr.pivot_cols[p]) = -rr.r(p, free_cols[k]);
    }
    return rref(std::move(basis)).r;
}

std::optional<RatVec> solve_rat(const RatMat& m, const RatVec& b) {
    long rows = m.rows(), cols = m.cols();
    RatMat aug(rows, cols + 1);
    for (long i = 0; i < rows; ++i) {
        for (long j = 0; j < cols; ++j) aug(i, j) = m(i, j);
        aug(i, cols) = b[i];
    }
    Rref rr = rref(std::move(aug));
    for (long p = 0; p < rr.rank; ++p)
        if (rr.pivot_cols[p] == cols) return std::nullopt;  // inconsistent
    RatVec x(cols);
    for (long p = 0; p < rr.rank; ++p) x[rr.pivot_cols[p]] = rr.r(p, cols);
    return x;
}

std::optional<RatMat> left_inverse(const RatMat& m) {
    // rows of W solve M^T w = e_i
    RatMat mt = m.transposed();
    RatMat w(m.cols(), m.rows());
    for (long i = 0; i < m.cols(); ++i) {
        RatVec e(m.cols());
        e[i] = 1;
        auto sol = solve_rat(mt, e);
        if (!sol) return std::nullopt;
        for (long j = 0; j < m.rows(); ++j) w(i, j) = (*sol)[j];
    }
    return w;
}

RatVec charpoly(const RatMat& a) {
    long n = a.rows();
    if (n != a.cols()) throw Error(ErrorCode::DimensionMismatch, "charpoly needs a square matrix");
    // x^n + c[n-1] x^{n-1} + ... + c[0]
    std::vector<Rational> c(n);
    RatMat m = a;
    for (long k = 1; k <= n; ++k) {
        Rational tr;
        for (long i = 0; i < n; ++i) tr += m(i, i);
        Rational ck = -tr / k;
        c[n - k] = ck;
        if (k == n) break;
        for (long i = 0; i < n; ++i) m(i, i) += ck;
        m = a * m;
    }
    RatVec out(n + 1);
    for (long i = 0; i < n; ++i) out[i] = c[i];
    out[n] = 1;
    return out;
}

RatMat kronecker(const RatMat& a, const RatMat& b) {
    RatMat m(a.rows() * b.rows(), a.cols() * b.cols());
    for (long i = 0; i < a.rows(); ++i)
        for (long j = 0; j < a.cols(); ++j) {
            if (a(i, j) == 0) continue;
            for (long k = 0; k < b.rows(); ++k)
                for (long l = 0; l < b.cols(); ++l)
                    m(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
        }
    return m;
}

}  // namespace orbitlab

#include "flagspec/intlin.hpp"

#include <algorithm>
#include <sstream>

namespace flagspec {

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
    IntegerMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntegerMatrix IntegerMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
    std::size_t r = rows.size();
    std::size_t c = r ? rows[0].size() : 0;
    IntegerMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) throw validation_error("from_rows: ragged row lengths");
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

IntegerMatrix IntegerMatrix::diagonal(const std::vector<Int>& d) {
    IntegerMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m.at(i, i) = d[i];
    return m;
}

IntegerMatrix IntegerMatrix::column(const std::vector<Int>& v) {
    IntegerMatrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m.at(i, 0) = v[i];
    return m;
}

bool IntegerMatrix::is_zero() const {
    for (const Int& x : a_)
        if (x != 0) return false;
    return true;
}

bool IntegerMatrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (at(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

IntegerMatrix IntegerMatrix::transpose() const {
    IntegerMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
    return m;
}

IntegerMatrix IntegerMatrix::operator*(const IntegerMatrix& o) const {
    if (cols_ != o.rows_) throw invariant_error("matrix product: inner dimensions disagree");
    IntegerMatrix m(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& x = at(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) m.at(i, j) += x * o.at(k, j);
        }
    return m;
}

IntegerMatrix IntegerMatrix::operator+(const IntegerMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw invariant_error("matrix sum: shape mismatch");
    IntegerMatrix m(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] + o.a_[i];
    return m;
}

IntegerMatrix IntegerMatrix::operator-(const IntegerMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw invariant_error("matrix difference: shape mismatch");
    IntegerMatrix m(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] - o.a_[i];
    return m;
}

IntegerMatrix IntegerMatrix::operator-() const {
    IntegerMatrix m(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = -a_[i];
    return m;
}

IntegerMatrix IntegerMatrix::scaled(const Int& c) const {
    IntegerMatrix m(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = c * a_[i];
    return m;
}

std::vector<Int> IntegerMatrix::apply(const std::vector<Int>& v) const {
    if (v.size() != cols_) throw invariant_error("apply: vector length mismatch");
    std::vector<Int> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out[i] += at(i, j) * v[j];
    return out;
}

IntegerMatrix IntegerMatrix::submatrix(std::size_t row0, std::size_t nrows, std::size_t col0,
                                       std::size_t ncols) const {
    IntegerMatrix m(nrows, ncols);
    for (std::size_t i = 0; i < nrows; ++i)
        for (std::size_t j = 0; j < ncols; ++j) m.at(i, j) = at(row0 + i, col0 + j);
    return m;
}

IntegerMatrix IntegerMatrix::column_at(std::size_t j) const {
    IntegerMatrix m(rows_, 1);
    for (std::size_t i = 0; i < rows_; ++i) m.at(i, 0) = at(i, j);
    return m;
}

void IntegerMatrix::set_column(std::size_t j, const IntegerMatrix& col) {
    for (std::size_t i = 0; i < rows_; ++i) at(i, j) = col.at(i, 0);
}

std::string IntegerMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? "; " : "");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << at(i, j).get_str();
    }
    os << "] (" << rows_ << "x" << cols_ << ")";
    return os.str();
}

IntegerMatrix hstack(const IntegerMatrix& a, const IntegerMatrix& b) {
    if (a.cols() == 0 && a.rows() == 0) return b;
    if (b.cols() == 0 && b.rows() == 0) return a;
    if (a.rows() != b.rows()) throw invariant_error("hstack: row counts differ");
    IntegerMatrix m(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) m.at(i, a.cols() + j) = b.at(i, j);
    }
    return m;
}

IntegerMatrix vstack(const IntegerMatrix& a, const IntegerMatrix& b) {
    if (a.cols() == 0 && a.rows() == 0) return b;
    if (b.cols() == 0 && b.rows() == 0) return a;
    if (a.cols() != b.cols()) throw invariant_error("vstack: column counts differ");
    IntegerMatrix m(a.rows() + b.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) m.at(a.rows() + i, j) = b.at(i, j);
    return m;
}

IntegerMatrix hstack(const std::vector<IntegerMatrix>& blocks) {
    if (blocks.empty()) return IntegerMatrix();
    IntegerMatrix m = blocks[0];
    for (std::size_t k = 1; k < blocks.size(); ++k) m = hstack(m, blocks[k]);
    return m;
}

IntegerMatrix block_diagonal(const std::vector<IntegerMatrix>& blocks) {
    std::size_t r = 0, c = 0;
    for (const auto& b : blocks) r += b.rows(), c += b.cols();
    IntegerMatrix m(r, c);
    std::size_t i0 = 0, j0 = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) m.at(i0 + i, j0 + j) = b.at(i, j);
        i0 += b.rows();
        j0 += b.cols();
    }
    return m;
}

namespace {

// Elementary operations applied simultaneously to the working matrix and a
// transform accumulator.

void row_swap(IntegerMatrix& m, std::size_t i, std::size_t k) {
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(i, j), m.at(k, j));
}

void col_swap(IntegerMatrix& m, std::size_t j, std::size_t l) {
    for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m.at(i, j), m.at(i, l));
}

void row_addmul(IntegerMatrix& m, std::size_t dst, std::size_t src, const Int& c) {
    if (c == 0) return;
    for (std::size_t j = 0; j < m.cols(); ++j) m.at(dst, j) += c * m.at(src, j);
}

void col_addmul(IntegerMatrix& m, std::size_t dst, std::size_t src, const Int& c) {
    if (c == 0) return;
    for (std::size_t i = 0; i < m.rows(); ++i) m.at(i, dst) += c * m.at(i, src);
}

void row_negate(IntegerMatrix& m, std::size_t i) {
    for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) = -m.at(i, j);
}

// Replace rows (t, i) by the unimodular combination that puts gcd(a, b) at
// position (t, pivot_col).
void gcd_row_op(IntegerMatrix& d, IntegerMatrix& u, std::size_t t, std::size_t i,
                std::size_t pivot_col) {
    Int a = d.at(t, pivot_col), b = d.at(i, pivot_col);
    Int g, x, y;
    mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    Int ag = a / g, bg = b / g;
    for (std::size_t j = 0; j < d.cols(); ++j) {
        Int dt = d.at(t, j), di = d.at(i, j);
        d.at(t, j) = x * dt + y * di;
        d.at(i, j) = -bg * dt + ag * di;
    }
    for (std::size_t j = 0; j < u.cols(); ++j) {
        Int ut = u.at(t, j), ui = u.at(i, j);
        u.at(t, j) = x * ut + y * ui;
        u.at(i, j) = -bg * ut + ag * ui;
    }
}

void gcd_col_op(IntegerMatrix& d, IntegerMatrix& v, std::size_t t, std::size_t j,
                std::size_t pivot_row) {
    Int a = d.at(pivot_row, t), b = d.at(pivot_row, j);
    Int g, x, y;
    mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    Int ag = a / g, bg = b / g;
    for (std::size_t i = 0; i < d.rows(); ++i) {
        Int dt = d.at(i, t), dj = d.at(i, j);
        d.at(i, t) = x * dt + y * dj;
        d.at(i, j) = -bg * dt + ag * dj;
    }
    for (std::size_t i = 0; i < v.rows(); ++i) {
        Int vt = v.at(i, t), vj = v.at(i, j);
        v.at(i, t) = x * vt + y * vj;
        v.at(i, j) = -bg * vt + ag * vj;
    }
}

}  // namespace

SmithDecomposition smith_normal_form(const IntegerMatrix& a) {
    std::size_t r = a.rows(), c = a.cols();
    IntegerMatrix d = a;
    IntegerMatrix u = IntegerMatrix::identity(r);
    IntegerMatrix v = IntegerMatrix::identity(c);

    std::size_t n = std::min(r, c);
    for (std::size_t t = 0; t < n; ++t) {
        // Smallest nonzero entry of the trailing submatrix as pivot.
        std::size_t pi = t, pj = t;
        bool found = false;
        Int best;
        for (std::size_t i = t; i < r; ++i)
            for (std::size_t j = t; j < c; ++j) {
                const Int& x = d.at(i, j);
                if (x == 0) continue;
                Int ax = abs(x);
                if (!found || ax < best) {
                    found = true;
                    best = ax;
                    pi = i;
                    pj = j;
                }
            }
        if (!found) break;
        if (pi != t) {
            row_swap(d, t, pi);
            row_swap(u, t, pi);
        }
        if (pj != t) {
            col_swap(d, t, pj);
            col_swap(v, t, pj);
        }

        for (;;) {
            for (std::size_t i = t + 1; i < r; ++i) {
                if (d.at(i, t) == 0) continue;
                if (d.at(i, t) % d.at(t, t) == 0) {
                    Int q = d.at(i, t) / d.at(t, t);
                    row_addmul(d, i, t, -q);
                    row_addmul(u, i, t, -q);
                } else {
                    gcd_row_op(d, u, t, i, t);
                }
            }
            bool row_clear = true;
            for (std::size_t j = t + 1; j < c; ++j) {
                if (d.at(t, j) == 0) continue;
                row_clear = false;
                if (d.at(t, j) % d.at(t, t) == 0) {
                    Int q = d.at(t, j) / d.at(t, t);
                    col_addmul(d, j, t, -q);
                    col_addmul(v, j, t, -q);
                } else {
                    gcd_col_op(d, v, t, j, t);
                }
            }
            if (!row_clear) continue;  // column ops may reintroduce entries in column t
            bool col_clear = true;
            for (std::size_t i = t + 1; i < r; ++i)
                if (d.at(i, t) != 0) col_clear = false;
            if (!col_clear) continue;

            // Enforce d_t | d_ij on the trailing submatrix.
            bool fixed = true;
            for (std::size_t i = t + 1; i < r && fixed; ++i)
                for (std::size_t j = t + 1; j < c && fixed; ++j)
                    if (d.at(i, j) % d.at(t, t) != 0) {
                        row_addmul(d, t, i, 1);
                        row_addmul(u, t, i, 1);
                        fixed = false;
                    }
            if (fixed) break;
        }
    }

    for (std::size_t t = 0; t < n; ++t)
        if (d.at(t, t) < 0) {
            row_negate(d, t);
            row_negate(u, t);
        }
    return {u, d, v};
}

std::vector<Int> smith_diagonal(const IntegerMatrix& a) {
    SmithDecomposition s = smith_normal_form(a);
    std::size_t n = std::min(a.rows(), a.cols());
    std::vector<Int> out(n);
    for (std::size_t t = 0; t < n; ++t) out[t] = s.d.at(t, t);
    return out;
}

IntegerMatrix row_hermite_form(const IntegerMatrix& a) {
    IntegerMatrix h = a;
    IntegerMatrix dummy(h.rows(), 0);
    std::size_t pr = 0;
    for (std::size_t col = 0; col < h.cols() && pr < h.rows(); ++col) {
        std::size_t piv = pr;
        while (piv < h.rows() && h.at(piv, col) == 0) ++piv;
        if (piv == h.rows()) continue;
        if (piv != pr) row_swap(h, pr, piv);
        for (std::size_t i = pr + 1; i < h.rows(); ++i) {
            while (h.at(i, col) != 0) {
                if (h.at(i, col) % h.at(pr, col) == 0) {
                    Int q = h.at(i, col) / h.at(pr, col);
                    row_addmul(h, i, pr, -q);
                } else {
                    gcd_row_op(h, dummy, pr, i, col);
                }
            }
        }
        if (h.at(pr, col) < 0) row_negate(h, pr);
        for (std::size_t i = 0; i < pr; ++i) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), h.at(i, col).get_mpz_t(), h.at(pr, col).get_mpz_t());
            row_addmul(h, i, pr, -q);
        }
        ++pr;
    }
    // pr rows are nonzero; drop the rest
    return h.submatrix(0, pr, 0, h.cols());
}

IntegerMatrix lattice_basis(const IntegerMatrix& gens) {
    return row_hermite_form(gens.transpose()).transpose();
}

IntegerMatrix kernel_basis(const IntegerMatrix& a) {
    SmithDecomposition s = smith_normal_form(a);
    std::size_t n = a.cols();
    std::size_t rank = 0;
    std::size_t lim = std::min(a.rows(), a.cols());
    for (std::size_t t = 0; t < lim; ++t)
        if (s.d.at(t, t) != 0) ++rank;
    IntegerMatrix k(n, n - rank);
    for (std::size_t j = rank; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) k.at(i, j - rank) = s.v.at(i, j);
    return k;
}

IntegerMatrix solve_exact(const IntegerMatrix& b, const IntegerMatrix& c) {
    if (b.rows() != c.rows()) throw invariant_error("solve_exact: row counts differ");
    SmithDecomposition s = smith_normal_form(b);
    std::size_t k = b.cols();
    std::size_t lim = std::min(b.rows(), b.cols());
    for (std::size_t t = 0; t < lim; ++t)
        if (s.d.at(t, t) == 0) throw invariant_error("solve_exact: basis matrix not of full column rank");
    if (k > b.rows()) throw invariant_error("solve_exact: basis matrix not of full column rank");
    IntegerMatrix uc = s.u * c;
    IntegerMatrix y(k, c.cols());
    for (std::size_t t = 0; t < k; ++t)
        for (std::size_t j = 0; j < c.cols(); ++j) {
            if (uc.at(t, j) % s.d.at(t, t) != 0)
                throw invariant_error("solve_exact: column not in the lattice");
            y.at(t, j) = uc.at(t, j) / s.d.at(t, t);
        }
    for (std::size_t t = k; t < b.rows(); ++t)
        for (std::size_t j = 0; j < c.cols(); ++j)
            if (uc.at(t, j) != 0) throw invariant_error("solve_exact: column not in the lattice");
    return s.v * y;
}

bool lattice_contains(const IntegerMatrix& gens, const IntegerMatrix& vecs) {
    if (gens.rows() != vecs.rows()) throw invariant_error("lattice_contains: ambient ranks differ");
    SmithDecomposition s = smith_normal_form(gens);
    IntegerMatrix uc = s.u * vecs;
    std::size_t lim = std::min(gens.rows(), gens.cols());
    for (std::size_t j = 0; j < vecs.cols(); ++j) {
        for (std::size_t t = 0; t < lim; ++t) {
            if (s.d.at(t, t) == 0) {
                if (uc.at(t, j) != 0) return false;
            } else if (uc.at(t, j) % s.d.at(t, t) != 0) {
                return false;
            }
        }
        for (std::size_t t = lim; t < gens.rows(); ++t)
            if (uc.at(t, j) != 0) return false;
    }
    return true;
}

bool lattice_equal(const IntegerMatrix& gens_a, const IntegerMatrix& gens_b) {
    return lattice_basis(gens_a) == lattice_basis(gens_b);
}

IntegerMatrix preimage_lattice(const IntegerMatrix& f, const IntegerMatrix& target_gens) {
    if (target_gens.rows() != f.rows())
        throw invariant_error("preimage_lattice: ambient ranks differ");
    IntegerMatrix k = kernel_basis(hstack(f, target_gens));
    IntegerMatrix top = k.submatrix(0, f.cols(), 0, k.cols());
    return lattice_basis(top);
}

IntegerMatrix sublattice_with_zero_prefix(const IntegerMatrix& inside, std::size_t ncoords) {
    IntegerMatrix prefix = inside.submatrix(0, std::min(ncoords, inside.rows()), 0, inside.cols());
    IntegerMatrix combos = kernel_basis(prefix);
    return inside * combos;
}

IntegerMatrix reduce_columns_mod_lattice(const IntegerMatrix& v, const IntegerMatrix& gens) {
    if (gens.cols() == 0) return v;
    IntegerMatrix h = lattice_basis(gens);  // column echelon, pivot rows increasing
    IntegerMatrix out = v;
    for (std::size_t j = 0; j < h.cols(); ++j) {
        std::size_t pivot = 0;
        while (pivot < h.rows() && h.at(pivot, j) == 0) ++pivot;
        if (pivot == h.rows()) continue;
        for (std::size_t c = 0; c < out.cols(); ++c) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), out.at(pivot, c).get_mpz_t(), h.at(pivot, j).get_mpz_t());
            if (q == 0) continue;
            for (std::size_t i = 0; i < out.rows(); ++i) out.at(i, c) -= q * h.at(i, j);
        }
    }
    return out;
}

AbelianPresentation::AbelianPresentation(long r, std::vector<Int> t) : rank(r), torsion(std::move(t)) {
    if (rank < 0) throw invariant_error("AbelianPresentation: negative rank");
    for (std::size_t i = 0; i < torsion.size(); ++i) {
        if (torsion[i] < 2) throw invariant_error("AbelianPresentation: torsion coefficient < 2");
        if (i + 1 < torsion.size() && torsion[i + 1] % torsion[i] != 0)
            throw invariant_error("AbelianPresentation: divisibility chain violated");
    }
}

Int AbelianPresentation::torsion_order() const {
    Int o = 1;
    for (const Int& t : torsion) o *= t;
    return o;
}

std::string AbelianPresentation::to_string() const {
    if (is_trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    if (rank > 0) {
        os << "Z";
        if (rank > 1) os << "^" << rank;
        first = false;
    }
    for (const Int& t : torsion) {
        if (!first) os << " + ";
        os << "Z/" << t.get_str();
        first = false;
    }
    return os.str();
}

AbelianPresentation cokernel(const IntegerMatrix& a) {
    std::vector<Int> diag = smith_diagonal(a);
    long nonzero = 0;
    std::vector<Int> torsion;
    for (const Int& d : diag) {
        if (d == 0) continue;
        ++nonzero;
        if (d >= 2) torsion.push_back(d);
    }
    return AbelianPresentation(static_cast<long>(a.rows()) - nonzero, std::move(torsion));
}

AbelianPresentation homology_of_pair(const IntegerMatrix& d_in, const IntegerMatrix& d_out) {
    if (d_out.cols() != d_in.rows())
        throw invariant_error("homology_of_pair: inner dimensions incompatible");
    if (!(d_out * d_in).is_zero())
        throw invariant_error("homology_of_pair: composite d_out * d_in is nonzero");
    IntegerMatrix cycles = kernel_basis(d_out);
    IntegerMatrix x = solve_exact(cycles, d_in);
    return cokernel(x);
}

std::string SublatticeDivisors::to_string() const {
    std::ostringstream os;
    os << "divisors (";
    for (std::size_t i = 0; i < divisors.size(); ++i) os << (i ? "," : "") << divisors[i].get_str();
    os << "), index ";
    if (finite_index)
        os << index.get_str();
    else
        os << "infinite";
    return os.str();
}

SublatticeDivisors sublattice_divisors(const IntegerMatrix& b, std::size_t ambient_rank) {
    if (b.rows() != ambient_rank)
        throw invariant_error("sublattice_divisors: matrix row count differs from ambient rank");
    std::vector<Int> diag = smith_diagonal(b);
    SublatticeDivisors out;
    for (const Int& d : diag)
        if (d != 0) out.divisors.push_back(d);
    out.finite_index = out.divisors.size() == ambient_rank;
    if (out.finite_index) {
        out.index = 1;
        for (const Int& d : out.divisors) out.index *= d;
    }
    return out;
}

}  // namespace flagspec

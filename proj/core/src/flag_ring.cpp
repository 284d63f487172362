#include "flagspec/flag_ring.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace flagspec {

namespace {

std::string matrix_key(const IntegerMatrix& m) {
    std::string key;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            key += m.at(i, j).get_str();
            key += ',';
        }
    return key;
}

IntegerMatrix columns_matrix(std::size_t rows, const std::vector<std::vector<Int>>& cols) {
    IntegerMatrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows) throw invariant_error("columns_matrix: length mismatch");
        for (std::size_t i = 0; i < rows; ++i) m.at(i, j) = cols[j][i];
    }
    return m;
}

}  // namespace

std::string word_string(const WeylElement& w) {
    std::string s;
    for (int i : w.word) s += std::to_string(i);
    return s;
}

std::vector<Int> ChowFlagRing::degree_slice(const std::vector<Int>& full, int d) const {
    const auto& idx = basis_by_degree[static_cast<std::size_t>(d)];
    std::vector<Int> out(idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k) out[k] = full[idx[k]];
    return out;
}

std::vector<Int> ChowFlagRing::embed_degree(const std::vector<Int>& slice, int d) const {
    const auto& idx = basis_by_degree[static_cast<std::size_t>(d)];
    if (slice.size() != idx.size()) throw invariant_error("embed_degree: slice length mismatch");
    std::vector<Int> out(weyl.size());
    for (std::size_t k = 0; k < idx.size(); ++k) out[idx[k]] = slice[k];
    return out;
}

ChowFlagRing chow_flag_ring(const RootDatum& rd, std::size_t bound) {
    ChowFlagRing r;
    r.rd = rd;
    r.weyl = weyl_enumerate(rd, bound);
    r.roots = positive_roots(rd, r.weyl);

    std::size_t top = r.weyl.back().word.size();
    r.rank_by_degree.assign(top + 1, 0);
    r.basis_by_degree.assign(top + 1, {});
    r.position_in_degree.assign(r.weyl.size(), 0);
    for (std::size_t w = 0; w < r.weyl.size(); ++w) {
        std::size_t d = r.weyl[w].word.size();
        r.position_in_degree[w] = r.rank_by_degree[d]++;
        r.basis_by_degree[d].push_back(w);
    }

    std::map<std::string, std::size_t> index;
    for (std::size_t w = 0; w < r.weyl.size(); ++w) index[matrix_key(r.weyl[w].matrix)] = w;

    r.chevalley.assign(r.weyl.size(), {});
    for (std::size_t w = 0; w < r.weyl.size(); ++w)
        for (std::size_t a = 0; a < r.roots.size(); ++a) {
            IntegerMatrix tm = r.weyl[w].matrix * r.weyl[r.roots[a].reflection].matrix;
            auto it = index.find(matrix_key(tm));
            if (it == index.end()) throw invariant_error("chow_flag_ring: w s_alpha not found");
            if (r.weyl[it->second].word.size() == r.weyl[w].word.size() + 1)
                r.chevalley[w].push_back({a, it->second});
        }
    return r;
}

std::vector<Int> chow_mult_c1(const ChowFlagRing& r, const std::vector<Int>& chi_weight,
                              const std::vector<Int>& cls) {
    if (chi_weight.size() != static_cast<std::size_t>(r.rd.rank))
        throw invariant_error("chow_mult_c1: character length mismatch");
    if (cls.size() != r.weyl.size()) throw invariant_error("chow_mult_c1: class length mismatch");
    std::vector<Int> out(r.weyl.size());
    for (std::size_t w = 0; w < r.weyl.size(); ++w) {
        if (cls[w] == 0) continue;
        for (const auto& [a, target] : r.chevalley[w]) {
            Int pairing = 0;
            for (std::size_t i = 0; i < chi_weight.size(); ++i)
                pairing += r.roots[a].coroot_pairing[i] * chi_weight[i];
            out[target] += cls[w] * pairing;
        }
    }
    return out;
}

std::vector<Int> char_map_chow(const ChowFlagRing& r, const std::vector<Int>& chi) {
    if (!r.rd.in_char_lattice(chi))
        throw validation_error("char_map_chow: character is not in T*");
    std::vector<Int> unit(r.weyl.size());
    unit[0] = 1;
    return chow_mult_c1(r, chi, unit);
}

std::vector<IntegerMatrix> char_image_lattices(const ChowFlagRing& r) {
    int top = r.top_degree();
    std::vector<IntegerMatrix> out(static_cast<std::size_t>(top) + 1);
    out[0] = IntegerMatrix::identity(1);
    for (int d = 1; d <= top; ++d) {
        std::vector<std::vector<Int>> cols;
        const IntegerMatrix& prev = out[static_cast<std::size_t>(d - 1)];
        for (int k = 0; k < r.rd.rank; ++k) {
            std::vector<Int> chi(static_cast<std::size_t>(r.rd.rank));
            for (int i = 0; i < r.rd.rank; ++i)
                chi[static_cast<std::size_t>(i)] =
                    r.rd.char_lattice.at(static_cast<std::size_t>(i), static_cast<std::size_t>(k));
            for (std::size_t c = 0; c < prev.cols(); ++c) {
                std::vector<Int> slice(prev.rows());
                for (std::size_t i = 0; i < prev.rows(); ++i) slice[i] = prev.at(i, c);
                std::vector<Int> prod = chow_mult_c1(r, chi, r.embed_degree(slice, d - 1));
                cols.push_back(r.degree_slice(prod, d));
            }
        }
        out[static_cast<std::size_t>(d)] = lattice_basis(
            columns_matrix(static_cast<std::size_t>(r.rank_by_degree[static_cast<std::size_t>(d)]), cols));
    }
    return out;
}

long GradedQuotient::total_rank() const {
    long t = 0;
    for (const auto& p : degrees) t += p.rank;
    return t;
}

std::string GradedQuotient::to_string() const {
    std::ostringstream os;
    for (std::size_t d = 0; d < degrees.size(); ++d)
        os << (d ? ", " : "") << "deg " << d << ": " << degrees[d].to_string();
    return os.str();
}

GradedQuotient group_ring_quotient(const ChowFlagRing& r) {
    GradedQuotient q;
    int top = r.top_degree();
    q.degrees.resize(static_cast<std::size_t>(top) + 1);
    q.generator_words.resize(static_cast<std::size_t>(top) + 1);
    q.degrees[0] = AbelianPresentation(1, {});
    for (int d = 0; d <= top; ++d)
        for (std::size_t w : r.basis_by_degree[static_cast<std::size_t>(d)])
            q.generator_words[static_cast<std::size_t>(d)].push_back(word_string(r.weyl[w]));

    for (int d = 1; d <= top; ++d) {
        std::vector<std::vector<Int>> cols;
        for (int k = 0; k < r.rd.rank; ++k) {
            std::vector<Int> chi(static_cast<std::size_t>(r.rd.rank));
            for (int i = 0; i < r.rd.rank; ++i)
                chi[static_cast<std::size_t>(i)] =
                    r.rd.char_lattice.at(static_cast<std::size_t>(i), static_cast<std::size_t>(k));
            for (std::size_t w : r.basis_by_degree[static_cast<std::size_t>(d - 1)]) {
                std::vector<Int> unit(r.weyl.size());
                unit[w] = 1;
                cols.push_back(r.degree_slice(chow_mult_c1(r, chi, unit), d));
            }
        }
        q.degrees[static_cast<std::size_t>(d)] = cokernel(
            columns_matrix(static_cast<std::size_t>(r.rank_by_degree[static_cast<std::size_t>(d)]), cols));
    }
    return q;
}

TorsionIndexResult torsion_index(const ChowFlagRing& r) {
    std::vector<IntegerMatrix> lattices = char_image_lattices(r);
    TorsionIndexResult out;
    for (std::size_t d = 0; d < lattices.size(); ++d) {
        SublatticeDivisors sd = sublattice_divisors(
            lattices[d], static_cast<std::size_t>(r.rank_by_degree[d]));
        out.finite.push_back(sd.finite_index);
        out.per_degree.push_back(sd.finite_index ? sd.index : Int(0));
    }
    out.tau = out.per_degree.back();
    return out;
}

ImageSublattice chow_char_image(const ChowFlagRing& r) {
    ImageSublattice img;
    img.carrier = ImageSublattice::Carrier::chow;
    std::vector<IntegerMatrix> lattices = char_image_lattices(r);
    for (std::size_t d = 1; d < lattices.size(); ++d)
        img.graded_generators[static_cast<int>(d)] = lattices[d];
    return img;
}

ImageSublattice chow_full_image(const ChowFlagRing& r) {
    ImageSublattice img;
    img.carrier = ImageSublattice::Carrier::chow;
    for (int d = 1; d <= r.top_degree(); ++d)
        img.graded_generators[d] =
            IntegerMatrix::identity(static_cast<std::size_t>(r.rank_by_degree[static_cast<std::size_t>(d)]));
    return img;
}

namespace {

// Per-degree generator lattices of the ideal generated by the positive part
// of the image.  Degree-1 generators multiply everything through the
// Chevalley formula; higher generators enter as lattice elements and are
// propagated by further degree-1 multiplications.
std::vector<IntegerMatrix> chow_ideal_pieces(const ChowFlagRing& r, const ImageSublattice& image) {
    if (image.carrier != ImageSublattice::Carrier::chow)
        throw validation_error("expected a Chow image sublattice");
    int top = r.top_degree();
    std::vector<std::vector<std::vector<Int>>> cols(static_cast<std::size_t>(top) + 1);

    for (const auto& [d, mat] : image.graded_generators) {
        if (d < 1 || d > top) continue;
        if (mat.rows() != static_cast<std::size_t>(r.rank_by_degree[static_cast<std::size_t>(d)]))
            throw validation_error("image generators at degree " + std::to_string(d) +
                                   " have the wrong length");
        for (std::size_t c = 0; c < mat.cols(); ++c) {
            std::vector<Int> v(mat.rows());
            for (std::size_t i = 0; i < mat.rows(); ++i) v[i] = mat.at(i, c);
            cols[static_cast<std::size_t>(d)].push_back(std::move(v));
        }
    }

    // degree-1 generators, as characters of the full weight lattice, multiply
    // every Schubert class
    std::vector<std::vector<Int>> deg1_chars;
    auto it1 = image.graded_generators.find(1);
    if (it1 != image.graded_generators.end()) {
        const IntegerMatrix& g1 = it1->second;
        for (std::size_t c = 0; c < g1.cols(); ++c) {
            std::vector<Int> chi(static_cast<std::size_t>(r.rd.rank));
            for (std::size_t i = 0; i < g1.rows(); ++i) chi[i] = g1.at(i, c);
            deg1_chars.push_back(std::move(chi));
        }
    }

    std::vector<IntegerMatrix> pieces(static_cast<std::size_t>(top) + 1);
    pieces[0] = IntegerMatrix::zero(1, 0);
    for (int d = 1; d <= top; ++d) {
        std::vector<std::vector<Int>> gens = cols[static_cast<std::size_t>(d)];
        for (const auto& chi : deg1_chars)
            for (std::size_t w : r.basis_by_degree[static_cast<std::size_t>(d - 1)]) {
                std::vector<Int> unit(r.weyl.size());
                unit[w] = 1;
                gens.push_back(r.degree_slice(chow_mult_c1(r, chi, unit), d));
            }
        // omega_i times the previous ideal piece
        const IntegerMatrix& prev = pieces[static_cast<std::size_t>(d - 1)];
        for (int i = 0; i < r.rd.rank && d >= 2; ++i) {
            std::vector<Int> omega(static_cast<std::size_t>(r.rd.rank));
            omega[static_cast<std::size_t>(i)] = 1;
            for (std::size_t c = 0; c < prev.cols(); ++c) {
                std::vector<Int> slice(prev.rows());
                for (std::size_t x = 0; x < prev.rows(); ++x) slice[x] = prev.at(x, c);
                gens.push_back(
                    r.degree_slice(chow_mult_c1(r, omega, r.embed_degree(slice, d - 1)), d));
            }
        }
        pieces[static_cast<std::size_t>(d)] = lattice_basis(columns_matrix(
            static_cast<std::size_t>(r.rank_by_degree[static_cast<std::size_t>(d)]), gens));
    }
    return pieces;
}

// Reduced row echelon subspace of (Z/p)^n.
struct FpSpace {
    Int p;
    std::size_t n;
    std::vector<std::vector<Int>> rows;
    std::vector<std::size_t> pivots;

    FpSpace(Int prime, std::size_t dim) : p(std::move(prime)), n(dim) {}

    Int norm(const Int& x) const {
        Int r = x % p;
        if (r < 0) r += p;
        return r;
    }

    std::vector<Int> reduce(std::vector<Int> v) const {
        for (Int& x : v) x = norm(x);
        for (std::size_t k = 0; k < rows.size(); ++k) {
            Int c = v[pivots[k]];
            if (c == 0) continue;
            for (std::size_t j = 0; j < n; ++j) v[j] = norm(v[j] - c * rows[k][j]);
        }
        return v;
    }

    // returns true when the vector enlarged the space
    bool insert(std::vector<Int> v) {
        v = reduce(std::move(v));
        std::size_t piv = n;
        for (std::size_t j = 0; j < n; ++j)
            if (v[j] != 0) {
                piv = j;
                break;
            }
        if (piv == n) return false;
        Int inv;
        if (!mpz_invert(inv.get_mpz_t(), v[piv].get_mpz_t(), p.get_mpz_t()))
            throw invariant_error("FpSpace: modulus is not prime");
        for (std::size_t j = 0; j < n; ++j) v[j] = norm(v[j] * inv);
        for (std::size_t k = 0; k < rows.size(); ++k) {
            Int c = rows[k][piv];
            if (c == 0) continue;
            for (std::size_t j = 0; j < n; ++j) rows[k][j] = norm(rows[k][j] - c * v[j]);
        }
        std::size_t pos = 0;
        while (pos < pivots.size() && pivots[pos] < piv) ++pos;
        rows.insert(rows.begin() + static_cast<long>(pos), std::move(v));
        pivots.insert(pivots.begin() + static_cast<long>(pos), piv);
        return true;
    }

    std::size_t dim() const { return rows.size(); }
    bool is_zero(const std::vector<Int>& v) const {
        for (const Int& x : reduce(v))
            if (x != 0) return false;
        return true;
    }
};

}  // namespace

std::string JInvariantResult::to_string() const {
    std::ostringstream os;
    if (!success) {
        os << "shape failure: " << failure_reason << "; dims (";
        for (std::size_t d = 0; d < dim_table.size(); ++d) os << (d ? "," : "") << dim_table[d];
        os << ")";
        return os.str();
    }
    os << "r=" << r << ", degrees (";
    for (std::size_t i = 0; i < degrees.size(); ++i) os << (i ? "," : "") << degrees[i];
    os << "), j (";
    for (std::size_t i = 0; i < exponents.size(); ++i) os << (i ? "," : "") << exponents[i];
    os << ")";
    return os.str();
}

JInvariantResult j_invariant(const ChowFlagRing& r, const Int& p, const ImageSublattice* image) {
    if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 30) == 0)
        throw validation_error("j_invariant: modulus must be prime");
    ImageSublattice generic;
    if (!image) {
        generic = chow_char_image(r);
        image = &generic;
    }
    std::vector<IntegerMatrix> pieces = chow_ideal_pieces(r, *image);
    int top = r.top_degree();

    JInvariantResult out;
    std::vector<FpSpace> ideal;
    for (int d = 0; d <= top; ++d) {
        FpSpace sp(p, static_cast<std::size_t>(r.rank_by_degree[static_cast<std::size_t>(d)]));
        const IntegerMatrix& mat = pieces[static_cast<std::size_t>(d)];
        for (std::size_t c = 0; d >= 1 && c < mat.cols(); ++c) {
            std::vector<Int> v(mat.rows());
            for (std::size_t i = 0; i < mat.rows(); ++i) v[i] = mat.at(i, c);
            sp.insert(std::move(v));
        }
        out.dim_table.push_back(r.rank_by_degree[static_cast<std::size_t>(d)] -
                                static_cast<long>(sp.dim()));
        ideal.push_back(std::move(sp));
    }

    // multiply a reduced degree-d representative by c_1(L(omega_i .. lift))
    auto mult_into = [&](const std::vector<Int>& chi, const std::vector<Int>& rep, int d) {
        std::vector<Int> full = r.embed_degree(rep, d);
        std::vector<Int> prod = chow_mult_c1(r, chi, full);
        return ideal[static_cast<std::size_t>(d + 1)].reduce(r.degree_slice(prod, d + 1));
    };

    // generators: the coordinates of degree 1 not pivotal for the ideal
    std::vector<std::size_t> gen_coords;
    if (top >= 1) {
        std::size_t n1 = static_cast<std::size_t>(r.rank_by_degree[1]);
        for (std::size_t j = 0; j < n1; ++j) {
            bool pivot = false;
            for (std::size_t piv : ideal[1].pivots)
                if (piv == j) pivot = true;
            if (!pivot) gen_coords.push_back(j);
        }
    }
    out.r = static_cast<int>(gen_coords.size());

    // the algebra must be generated by its degree-1 part; products of higher
    // indecomposables are outside the Chevalley multiplication model
    {
        FpSpace prev(p, static_cast<std::size_t>(r.rank_by_degree[std::min(1, top)]));
        if (top >= 1)
            for (std::size_t j : gen_coords) {
                std::vector<Int> e(static_cast<std::size_t>(r.rank_by_degree[1]));
                e[j] = 1;
                prev.insert(ideal[1].reduce(e));
            }
        for (int d = 2; d <= top; ++d) {
            FpSpace cur(p, static_cast<std::size_t>(r.rank_by_degree[static_cast<std::size_t>(d)]));
            for (std::size_t j : gen_coords) {
                std::vector<Int> chi(static_cast<std::size_t>(r.rd.rank));
                chi[j] = 1;  // degree-1 basis classes correspond to the fundamental weights
                for (const auto& row : prev.rows) cur.insert(mult_into(chi, row, d - 1));
            }
            if (static_cast<long>(cur.dim()) != out.dim_table[static_cast<std::size_t>(d)]) {
                out.success = false;
                out.failure_reason = "algebra is not generated in degree 1 (degree " +
                                     std::to_string(d) + " has indecomposables)";
                return out;
            }
            prev = std::move(cur);
        }
    }

    // nilpotency orders
    std::vector<int> exps;
    Int total_monomials = 1;
    for (std::size_t j : gen_coords) {
        std::vector<Int> chi(static_cast<std::size_t>(r.rd.rank));
        chi[j] = 1;
        std::vector<Int> cur(static_cast<std::size_t>(r.rank_by_degree[1]));
        cur[j] = 1;
        cur = ideal[1].reduce(cur);
        // least N with x^N = 0; powers above the top degree vanish identically
        int nil = top + 1;
        for (int power = 1; power <= top; ++power) {
            if (ideal[static_cast<std::size_t>(power)].is_zero(cur)) {
                nil = power;
                break;
            }
            if (power == top) break;
            cur = mult_into(chi, cur, power);
        }
        Int n(nil);
        int j_exp = 0;
        while (n % p == 0) {
            n /= p;
            ++j_exp;
        }
        if (n != 1) {
            out.success = false;
            out.failure_reason = "nilpotency order " + std::to_string(nil) + " is not a power of " +
                                 p.get_str();
            return out;
        }
        exps.push_back(j_exp);
        Int t = 1;
        for (int q = 0; q < j_exp; ++q) t *= p;
        total_monomials *= t;
    }

    Int total_dim = 0;
    for (long d : out.dim_table) total_dim += d;
    if (total_monomials != total_dim) {
        out.success = false;
        out.failure_reason = "monomial count " + total_monomials.get_str() +
                             " does not match dim " + total_dim.get_str();
        return out;
    }

    // the monomials below the truncation orders must be linearly independent
    {
        std::vector<Int> bounds;
        for (int e : exps) {
            Int b = 1;
            for (int q = 0; q < e; ++q) b *= p;
            bounds.push_back(b);
        }
        std::vector<FpSpace> spans;
        for (int d = 0; d <= top; ++d)
            spans.emplace_back(p, static_cast<std::size_t>(r.rank_by_degree[static_cast<std::size_t>(d)]));
        std::vector<Int> tuple(gen_coords.size(), 0);
        bool done = gen_coords.empty();
        bool first = true;
        for (;;) {
            if (!first && done) break;
            // monomial for the current tuple
            int deg = 0;
            for (const Int& a : tuple) deg += static_cast<int>(a.get_si());
            if (deg <= top) {
                std::vector<Int> cur(1, Int(1));  // degree-0 slice
                int cd = 0;
                for (std::size_t t = 0; t < gen_coords.size(); ++t) {
                    std::vector<Int> chi(static_cast<std::size_t>(r.rd.rank));
                    chi[gen_coords[t]] = 1;
                    for (Int a = 0; a < tuple[t]; ++a) {
                        cur = mult_into(chi, cur, cd);
                        ++cd;
                    }
                }
                if (!spans[static_cast<std::size_t>(deg)].insert(cur)) {
                    out.success = false;
                    out.failure_reason = "monomials are linearly dependent in degree " +
                                         std::to_string(deg);
                    return out;
                }
            }
            first = false;
            if (gen_coords.empty()) break;
            // next tuple
            std::size_t t = 0;
            for (;;) {
                tuple[t] += 1;
                if (tuple[t] < bounds[t]) break;
                tuple[t] = 0;
                ++t;
                if (t == tuple.size()) {
                    done = true;
                    break;
                }
            }
            if (done) break;
        }
    }

    out.success = true;
    out.degrees.assign(gen_coords.size(), 1);
    out.exponents = exps;
    std::sort(out.exponents.begin(), out.exponents.end());
    return out;
}

GradedQuotient hat_ring(const ChowFlagRing& r, const ImageSublattice& image) {
    std::vector<IntegerMatrix> pieces = chow_ideal_pieces(r, image);
    GradedQuotient q;
    int top = r.top_degree();
    q.degrees.resize(static_cast<std::size_t>(top) + 1);
    q.generator_words.resize(static_cast<std::size_t>(top) + 1);
    q.degrees[0] = AbelianPresentation(1, {});
    for (int d = 0; d <= top; ++d)
        for (std::size_t w : r.basis_by_degree[static_cast<std::size_t>(d)])
            q.generator_words[static_cast<std::size_t>(d)].push_back(word_string(r.weyl[w]));
    for (int d = 1; d <= top; ++d)
        q.degrees[static_cast<std::size_t>(d)] = cokernel(pieces[static_cast<std::size_t>(d)]);
    return q;
}

// ---------------------------------------------------------------------------
// K_0(G/B): Steinberg basis over a bounded Laurent-monomial window model of
// Z[weights] / (augmented W-invariant orbit sums).

namespace {

struct K0Window {
    int n = 0;
    long radius = 0;
    std::vector<std::vector<long>> coords;           // monomial index -> lattice point
    std::map<std::vector<long>, std::size_t> index;  // lattice point -> index
    SmithDecomposition snf;                          // of [G | relations]
    std::size_t wsize = 0;                           // |W|
    std::size_t acols = 0;

    bool in_window(const std::vector<Int>& lambda) const {
        for (const Int& x : lambda)
            if (abs(x) > radius) return false;
        return true;
    }

    std::size_t monomial_index(const std::vector<Int>& lambda) const {
        std::vector<long> pt;
        for (const Int& x : lambda) pt.push_back(x.get_si());
        return index.at(pt);
    }

    // coefficients of the class of e^lambda in the Steinberg classes
    std::vector<Int> expand(const std::vector<Int>& lambda) const {
        std::size_t s = coords.size();
        IntegerMatrix v(s, 1);
        v.at(monomial_index(lambda), 0) = 1;
        IntegerMatrix uv = snf.u * v;
        IntegerMatrix y(acols, 1);
        std::size_t lim = std::min(s, acols);
        for (std::size_t t = 0; t < lim; ++t) {
            const Int& dt = snf.d.at(t, t);
            if (dt == 0) {
                if (uv.at(t, 0) != 0)
                    throw invariant_error("k0 window: monomial class not in the span");
                continue;
            }
            if (uv.at(t, 0) % dt != 0)
                throw invariant_error("k0 window: monomial class not in the span");
            y.at(t, 0) = uv.at(t, 0) / dt;
        }
        for (std::size_t t = lim; t < s; ++t)
            if (uv.at(t, 0) != 0) throw invariant_error("k0 window: monomial class not in the span");
        IntegerMatrix x = snf.v * y;
        std::vector<Int> out(wsize);
        for (std::size_t w = 0; w < wsize; ++w) out[w] = x.at(w, 0);
        return out;
    }
};

std::vector<std::vector<Int>> weight_orbit(const RootDatum& rd, int i,
                                           const std::vector<WeylElement>& weyl) {
    std::vector<Int> omega(static_cast<std::size_t>(rd.rank));
    omega[static_cast<std::size_t>(i)] = 1;
    std::map<std::vector<std::string>, bool> seen;
    std::vector<std::vector<Int>> orbit;
    for (const auto& w : weyl) {
        std::vector<Int> v = w.matrix.apply(omega);
        std::vector<std::string> key;
        for (const Int& x : v) key.push_back(x.get_str());
        if (seen.count(key)) continue;
        seen[key] = true;
        orbit.push_back(std::move(v));
    }
    return orbit;
}

// Builds the window model.  The certificate consists of two parts: no
// nonzero combination of the Steinberg monomials lies in the span of the
// window relations (so expansions are unique), and every class e^{lambda_w
// +- omega_i} is expressible in the Steinberg classes within the window (so
// the multiplication-by-line-bundle walk closes up).  Together with the
// classical rank of K0(G/B) this certifies the basis property.
bool try_build_window(const RootDatum& rd, const std::vector<WeylElement>& weyl,
                      const std::vector<std::vector<Int>>& lambdas, long radius, K0Window& out) {
    int n = rd.rank;
    out.n = n;
    out.radius = radius;
    out.coords.clear();
    out.index.clear();
    out.wsize = weyl.size();

    std::vector<long> pt(static_cast<std::size_t>(n), -radius);
    for (;;) {
        out.index[pt] = out.coords.size();
        out.coords.push_back(pt);
        int i = 0;
        while (i < n && pt[static_cast<std::size_t>(i)] == radius) {
            pt[static_cast<std::size_t>(i)] = -radius;
            ++i;
        }
        if (i == n) break;
        ++pt[static_cast<std::size_t>(i)];
    }
    std::size_t s = out.coords.size();

    std::vector<std::vector<std::vector<Int>>> orbits;
    std::vector<long> orbit_radius;
    for (int i = 0; i < n; ++i) {
        orbits.push_back(weight_orbit(rd, i, weyl));
        long c = 0;
        for (const auto& v : orbits.back())
            for (const Int& x : v) c = std::max(c, static_cast<long>(Int(abs(x)).get_si()));
        orbit_radius.push_back(c);
    }

    std::vector<std::vector<Int>> relcols;
    for (int i = 0; i < n; ++i) {
        long mu_radius = radius - orbit_radius[static_cast<std::size_t>(i)];
        if (mu_radius < 0) return false;
        std::vector<long> mu(static_cast<std::size_t>(n), -mu_radius);
        for (;;) {
            std::vector<Int> col(s);
            for (const auto& nu : orbits[static_cast<std::size_t>(i)]) {
                std::vector<long> q(static_cast<std::size_t>(n));
                for (int j = 0; j < n; ++j)
                    q[static_cast<std::size_t>(j)] =
                        mu[static_cast<std::size_t>(j)] + static_cast<long>(nu[static_cast<std::size_t>(j)].get_si());
                col[out.index.at(q)] += 1;
            }
            col[out.index.at(mu)] -= static_cast<long>(orbits[static_cast<std::size_t>(i)].size());
            relcols.push_back(std::move(col));

            int j = 0;
            while (j < n && mu[static_cast<std::size_t>(j)] == mu_radius) {
                mu[static_cast<std::size_t>(j)] = -mu_radius;
                ++j;
            }
            if (j == n) break;
            ++mu[static_cast<std::size_t>(j)];
        }
    }
    IntegerMatrix rel = columns_matrix(s, relcols);

    IntegerMatrix g(s, weyl.size());
    for (std::size_t w = 0; w < weyl.size(); ++w) {
        if (!out.in_window(lambdas[w])) return false;
        g.at(out.monomial_index(lambdas[w]), w) = 1;
    }
    out.acols = g.cols() + rel.cols();
    out.snf = smith_normal_form(hstack(g, rel));

    // purity: the kernel of [G | relations] must have no Steinberg part,
    // i.e. no nonzero combination of the g-monomials lies in the relation span
    IntegerMatrix ker = kernel_basis(hstack(g, rel));
    if (!ker.submatrix(0, weyl.size(), 0, ker.cols()).is_zero()) return false;

    // every walk target must be expressible inside the window
    try {
        for (std::size_t w = 0; w < weyl.size(); ++w)
            for (int i = 0; i < n; ++i)
                for (int sign : {1, -1}) {
                    std::vector<Int> lambda = lambdas[w];
                    lambda[static_cast<std::size_t>(i)] += sign;
                    if (!out.in_window(lambda)) return false;
                    out.expand(lambda);
                }
        std::vector<Int> zero(static_cast<std::size_t>(n));
        out.expand(zero);
    } catch (const invariant_error&) {
        return false;
    }
    return true;
}

std::vector<Int> mult_by_basis(const K0FlagRing& r, std::size_t w, const std::vector<Int>& cls);

IntegerMatrix char_image_lattice_k0(const K0FlagRing& r) {
    int n = r.rd.rank;
    std::vector<IntegerMatrix> steps;
    for (int k = 0; k < n; ++k) {
        std::vector<Int> chi(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            chi[static_cast<std::size_t>(i)] =
                r.rd.char_lattice.at(static_cast<std::size_t>(i), static_cast<std::size_t>(k));
        for (int sign : {1, -1}) {
            IntegerMatrix m = IntegerMatrix::identity(static_cast<std::size_t>(r.rank()));
            for (int i = 0; i < n; ++i) {
                Int c = chi[static_cast<std::size_t>(i)] * sign;
                const IntegerMatrix& step = c > 0 ? r.mult_up[static_cast<std::size_t>(i)]
                                                  : r.mult_down[static_cast<std::size_t>(i)];
                for (Int a = 0; a < abs(c); ++a) m = step * m;
            }
            steps.push_back(std::move(m));
        }
    }
    IntegerMatrix basis(static_cast<std::size_t>(r.rank()), 1);
    basis.at(0, 0) = 1;
    basis = lattice_basis(basis);
    for (;;) {
        std::vector<IntegerMatrix> blocks{basis};
        for (const auto& st : steps) blocks.push_back(st * basis);
        IntegerMatrix next = lattice_basis(hstack(blocks));
        if (next == basis) return basis;
        basis = next;
    }
}

}  // namespace

K0FlagRing k0_flag_ring(const RootDatum& rd, std::size_t bound) {
    if (rd.rank > 2)
        throw bound_error("k0_flag_ring: the window model is configured for rank <= 2");
    K0FlagRing r;
    r.rd = rd;
    r.weyl = weyl_enumerate(rd, bound);

    std::map<std::string, std::size_t> index;
    for (std::size_t w = 0; w < r.weyl.size(); ++w) index[matrix_key(r.weyl[w].matrix)] = w;

    // lambda_w = w^{-1} (sum of omega_alpha over the simple alpha with
    // w^{-1} alpha < 0); the weights are pairwise distinct and the window
    // model below certifies that they are a basis
    for (const auto& w : r.weyl) {
        std::vector<Int> sum(static_cast<std::size_t>(rd.rank));
        for (int i = 1; i <= rd.rank; ++i) {
            IntegerMatrix sw = rd.simple_reflection(i) * w.matrix;
            std::size_t t = index.at(matrix_key(sw));
            if (r.weyl[t].word.size() < w.word.size()) sum[static_cast<std::size_t>(i - 1)] = 1;
        }
        IntegerMatrix winv = solve_exact(w.matrix, IntegerMatrix::identity(static_cast<std::size_t>(rd.rank)));
        r.steinberg_weights.push_back(winv.apply(sum));
    }
    for (std::size_t a = 0; a < r.steinberg_weights.size(); ++a)
        for (std::size_t b = a + 1; b < r.steinberg_weights.size(); ++b)
            if (r.steinberg_weights[a] == r.steinberg_weights[b])
                throw invariant_error("k0_flag_ring: Steinberg weights collide");

    long r0 = 1;
    for (const auto& lw : r.steinberg_weights)
        for (const Int& x : lw) r0 = std::max(r0, static_cast<long>(Int(abs(x)).get_si()) + 1);

    K0Window window;
    bool ok = false;
    for (long radius = r0 + 2; radius <= r0 + 6 && !ok; ++radius)
        ok = try_build_window(rd, r.weyl, r.steinberg_weights, radius, window);
    if (!ok)
        throw invariant_error("k0_flag_ring: Steinberg basis verification failed in the window model");

    // multiplication by e^{+-omega_i} in the Steinberg basis
    for (int i = 0; i < rd.rank; ++i) {
        IntegerMatrix up(static_cast<std::size_t>(r.rank()), static_cast<std::size_t>(r.rank()));
        IntegerMatrix down(static_cast<std::size_t>(r.rank()), static_cast<std::size_t>(r.rank()));
        for (std::size_t w = 0; w < r.weyl.size(); ++w) {
            std::vector<Int> plus = r.steinberg_weights[w];
            std::vector<Int> minus = r.steinberg_weights[w];
            plus[static_cast<std::size_t>(i)] += 1;
            minus[static_cast<std::size_t>(i)] -= 1;
            std::vector<Int> pe = window.expand(plus);
            std::vector<Int> me = window.expand(minus);
            for (std::size_t x = 0; x < r.weyl.size(); ++x) {
                up.at(x, w) = pe[x];
                down.at(x, w) = me[x];
            }
        }
        if (!(up * down).is_identity())
            throw invariant_error("k0_flag_ring: line bundle multiplication is not invertible");
        r.mult_up.push_back(std::move(up));
        r.mult_down.push_back(std::move(down));
    }
    for (std::size_t a = 0; a < r.mult_up.size(); ++a)
        for (std::size_t b = 0; b < r.mult_up.size(); ++b) {
            if (r.mult_up[a] * r.mult_up[b] != r.mult_up[b] * r.mult_up[a] ||
                r.mult_up[a] * r.mult_down[b] != r.mult_down[b] * r.mult_up[a])
                throw invariant_error("k0_flag_ring: multiplication operators do not commute");
        }

    {
        std::vector<Int> zero(static_cast<std::size_t>(rd.rank));
        std::vector<Int> unit = window.expand(zero);
        for (std::size_t w = 0; w < r.weyl.size(); ++w)
            if (unit[w] != (w == 0 ? 1 : 0))
                throw invariant_error("k0_flag_ring: [L(0)] is not the unit class");
    }

    r.has_table = r.weyl.size() <= k0_table_bound;
    if (r.has_table) {
        r.table.assign(r.weyl.size(), {});
        for (std::size_t u = 0; u < r.weyl.size(); ++u) {
            r.table[u].resize(r.weyl.size());
            for (std::size_t v = 0; v < r.weyl.size(); ++v) {
                std::vector<Int> sum(static_cast<std::size_t>(rd.rank));
                for (int i = 0; i < rd.rank; ++i)
                    sum[static_cast<std::size_t>(i)] = r.steinberg_weights[u][static_cast<std::size_t>(i)] +
                                                       r.steinberg_weights[v][static_cast<std::size_t>(i)];
                r.table[u][v] = k0_line_class(r, sum);
            }
        }
        // unital, commutative by construction; associativity checked on the table
        for (std::size_t u = 0; u < r.weyl.size(); ++u)
            for (std::size_t v = 0; v < r.weyl.size(); ++v) {
                if (r.table[u][v] != r.table[v][u])
                    throw invariant_error("k0_flag_ring: multiplication table not symmetric");
                for (std::size_t x = 0; x < r.weyl.size(); ++x) {
                    std::vector<Int> lhs(r.weyl.size()), rhs(r.weyl.size());
                    for (std::size_t w = 0; w < r.weyl.size(); ++w) {
                        if (r.table[u][v][w] != 0)
                            for (std::size_t y = 0; y < r.weyl.size(); ++y)
                                lhs[y] += r.table[u][v][w] * r.table[w][x][y];
                        if (r.table[v][x][w] != 0)
                            for (std::size_t y = 0; y < r.weyl.size(); ++y)
                                rhs[y] += r.table[v][x][w] * r.table[u][w][y];
                    }
                    if (lhs != rhs) throw invariant_error("k0_flag_ring: multiplication not associative");
                }
            }
    }
    return r;
}

std::vector<Int> k0_line_class(const K0FlagRing& r, const std::vector<Int>& chi_weight) {
    if (chi_weight.size() != static_cast<std::size_t>(r.rd.rank))
        throw invariant_error("k0_line_class: character length mismatch");
    std::vector<Int> v(static_cast<std::size_t>(r.rank()));
    v[0] = 1;
    for (int i = 0; i < r.rd.rank; ++i) {
        const Int& c = chi_weight[static_cast<std::size_t>(i)];
        const IntegerMatrix& step =
            c > 0 ? r.mult_up[static_cast<std::size_t>(i)] : r.mult_down[static_cast<std::size_t>(i)];
        for (Int a = 0; a < abs(c); ++a) v = step.apply(v);
    }
    return v;
}

std::vector<Int> char_map_k0(const K0FlagRing& r, const LaurentElement& laurent) {
    std::vector<Int> out(static_cast<std::size_t>(r.rank()));
    for (const auto& term : laurent) {
        if (!r.rd.in_char_lattice(term.character))
            throw validation_error("char_map_k0: character support outside T*");
        std::vector<Int> cls = k0_line_class(r, term.character);
        for (std::size_t w = 0; w < cls.size(); ++w) out[w] += term.coeff * cls[w];
    }
    return out;
}

std::vector<Int> k0_c1(const K0FlagRing& r, const std::vector<Int>& chi) {
    if (!r.rd.in_char_lattice(chi)) throw validation_error("k0_c1: character is not in T*");
    std::vector<Int> minus(chi.size());
    for (std::size_t i = 0; i < chi.size(); ++i) minus[i] = -chi[i];
    std::vector<Int> cls = k0_line_class(r, minus);
    std::vector<Int> out(static_cast<std::size_t>(r.rank()));
    out[0] = 1;
    for (std::size_t w = 0; w < cls.size(); ++w) out[w] -= cls[w];
    return out;
}

std::vector<Int> k0_mult(const K0FlagRing& r, const std::vector<Int>& a, const std::vector<Int>& b) {
    if (!r.has_table) throw bound_error("k0_mult: multiplication table not built for this rank");
    std::vector<Int> out(static_cast<std::size_t>(r.rank()));
    for (std::size_t u = 0; u < a.size(); ++u) {
        if (a[u] == 0) continue;
        for (std::size_t v = 0; v < b.size(); ++v) {
            if (b[v] == 0) continue;
            Int c = a[u] * b[v];
            for (std::size_t w = 0; w < out.size(); ++w) out[w] += c * r.table[u][v][w];
        }
    }
    return out;
}

namespace {

std::vector<Int> mult_by_basis(const K0FlagRing& r, std::size_t w, const std::vector<Int>& cls) {
    std::vector<Int> unit(static_cast<std::size_t>(r.rank()));
    unit[w] = 1;
    return k0_mult(r, unit, cls);
}

IntegerMatrix saturate_ideal(const K0FlagRing& r, const IntegerMatrix& gens) {
    IntegerMatrix basis = lattice_basis(gens);
    for (;;) {
        std::vector<IntegerMatrix> blocks{basis};
        for (std::size_t w = 0; w < r.weyl.size(); ++w) {
            IntegerMatrix prod(basis.rows(), basis.cols());
            for (std::size_t c = 0; c < basis.cols(); ++c) {
                std::vector<Int> col(basis.rows());
                for (std::size_t i = 0; i < basis.rows(); ++i) col[i] = basis.at(i, c);
                std::vector<Int> p = mult_by_basis(r, w, col);
                for (std::size_t i = 0; i < basis.rows(); ++i) prod.at(i, c) = p[i];
            }
            blocks.push_back(std::move(prod));
        }
        IntegerMatrix next = lattice_basis(hstack(blocks));
        if (next == basis) return basis;
        basis = next;
    }
}

K0Quotient quotient_by_ideal(const K0FlagRing& r, const IntegerMatrix& ideal_basis) {
    K0Quotient out;
    out.total = cokernel(ideal_basis);

    std::size_t n = static_cast<std::size_t>(r.rank());
    IntegerMatrix ones(1, n);
    for (std::size_t j = 0; j < n; ++j) ones.at(0, j) = 1;
    IntegerMatrix augker = kernel_basis(ones);

    std::vector<IntegerMatrix> gammas;
    gammas.push_back(IntegerMatrix::identity(n));
    gammas.push_back(lattice_basis(hstack(augker, ideal_basis)));
    const IntegerMatrix& gamma1 = gammas[1];

    int cap = static_cast<int>(n) + 3;
    for (int k = 1; k <= cap; ++k) {
        const IntegerMatrix& prev = gammas.back();
        std::vector<IntegerMatrix> blocks;
        blocks.push_back(ideal_basis);
        for (std::size_t a = 0; a < gamma1.cols(); ++a)
            for (std::size_t b = 0; b < prev.cols(); ++b) {
                std::vector<Int> x(n), y(n);
                for (std::size_t i = 0; i < n; ++i) {
                    x[i] = gamma1.at(i, a);
                    y[i] = prev.at(i, b);
                }
                blocks.push_back(IntegerMatrix::column(k0_mult(r, x, y)));
            }
        IntegerMatrix next = lattice_basis(hstack(blocks));
        if (lattice_equal(next, prev)) break;
        gammas.push_back(next);
        if (k == cap)
            throw invariant_error("k0 quotient: augmentation filtration did not stabilize");
    }
    for (std::size_t k = 0; k + 1 < gammas.size(); ++k)
        out.gamma_graded.push_back(cokernel(solve_exact(gammas[k], gammas[k + 1])));
    // quotient by the stable sublattice at the end of the chain
    out.gamma_graded.push_back(cokernel(solve_exact(gammas.back(), ideal_basis)));
    while (!out.gamma_graded.empty() && out.gamma_graded.back().is_trivial())
        out.gamma_graded.pop_back();
    return out;
}

}  // namespace

std::string K0Quotient::to_string() const {
    std::ostringstream os;
    os << "total " << total.to_string() << "; graded:";
    for (const auto& g : gamma_graded) os << " " << g.to_string();
    return os.str();
}

TitsIndexes maximal_tits_indexes(const K0FlagRing& r) {
    IntegerMatrix image = char_image_lattice_k0(r);
    TitsIndexes out;
    out.hermite = image;
    std::size_t n = static_cast<std::size_t>(r.rank());
    if (image.cols() != n) {
        out.diagonal = false;
        return out;
    }
    bool diag = true;
    for (std::size_t i = 0; i < n && diag; ++i)
        for (std::size_t j = 0; j < n && diag; ++j)
            if (i != j && image.at(i, j) != 0) diag = false;
    out.diagonal = diag;
    if (diag)
        for (std::size_t i = 0; i < n; ++i) out.m.push_back(image.at(i, i));
    return out;
}

ImageSublattice k0_char_image(const K0FlagRing& r) {
    ImageSublattice img;
    img.carrier = ImageSublattice::Carrier::k0;
    img.k0_generators = char_image_lattice_k0(r);
    return img;
}

ImageSublattice k0_image_from_tits(const K0FlagRing& r, const std::vector<Int>& m) {
    if (m.size() != static_cast<std::size_t>(r.rank()))
        throw validation_error("k0_image_from_tits: need one index per Weyl element");
    ImageSublattice img;
    img.carrier = ImageSublattice::Carrier::k0;
    img.k0_generators = IntegerMatrix(m.size(), m.size());
    for (std::size_t i = 0; i < m.size(); ++i) img.k0_generators.at(i, i) = m[i];
    return img;
}

K0Quotient group_ring_quotient(const K0FlagRing& r) {
    std::vector<std::vector<Int>> gens;
    for (int k = 0; k < r.rd.rank; ++k) {
        std::vector<Int> chi(static_cast<std::size_t>(r.rd.rank));
        for (int i = 0; i < r.rd.rank; ++i)
            chi[static_cast<std::size_t>(i)] =
                r.rd.char_lattice.at(static_cast<std::size_t>(i), static_cast<std::size_t>(k));
        gens.push_back(k0_c1(r, chi));
    }
    IntegerMatrix ideal = saturate_ideal(r, columns_matrix(static_cast<std::size_t>(r.rank()), gens));
    return quotient_by_ideal(r, ideal);
}

K0Quotient hat_ring(const K0FlagRing& r, const ImageSublattice& image) {
    if (image.carrier != ImageSublattice::Carrier::k0)
        throw validation_error("expected a K0 image sublattice");
    IntegerMatrix basis = lattice_basis(image.k0_generators);
    std::size_t n = static_cast<std::size_t>(r.rank());
    IntegerMatrix ones(1, n);
    for (std::size_t j = 0; j < n; ++j) ones.at(0, j) = 1;
    IntegerMatrix combos = kernel_basis(ones * basis);
    IntegerMatrix augker_part = basis * combos;
    if (augker_part.cols() == 0) {
        K0Quotient out;
        return quotient_by_ideal(r, IntegerMatrix::zero(n, 0));
    }
    IntegerMatrix ideal = saturate_ideal(r, augker_part);
    return quotient_by_ideal(r, ideal);
}

}  // namespace flagspec

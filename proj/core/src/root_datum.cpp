#include "flagspec/root_datum.hpp"

#include <algorithm>
#include <map>

namespace flagspec {

namespace {

// Edges of the Dynkin diagram with multiplicities, Bourbaki numbering.
// Entry {i, j, a_ij, a_ji} contributes cartan(i,j) = a_ij = <alpha_j, alpha_i^vee>.
struct Edge {
    int i, j, aij, aji;
};

std::vector<Edge> dynkin_edges(DynkinType type, int n) {
    std::vector<Edge> edges;
    auto path = [&](int from, int to) {
        for (int i = from; i < to; ++i) edges.push_back({i, i + 1, -1, -1});
    };
    switch (type) {
        case DynkinType::A:
            if (n < 1) throw validation_error("type A needs rank >= 1");
            path(1, n);
            break;
        case DynkinType::B:
            // alpha_n short: <alpha_n, alpha_{n-1}^vee> = -1, <alpha_{n-1}, alpha_n^vee> = -2
            if (n < 2) throw validation_error("type B needs rank >= 2");
            path(1, n - 1);
            edges.push_back({n - 1, n, -1, -2});
            break;
        case DynkinType::C:
            if (n < 3) throw validation_error("type C needs rank >= 3");
            path(1, n - 1);
            edges.push_back({n - 1, n, -2, -1});
            break;
        case DynkinType::D:
            if (n < 4) throw validation_error("type D needs rank >= 4");
            path(1, n - 2);
            edges.push_back({n - 2, n - 1, -1, -1});
            edges.push_back({n - 2, n, -1, -1});
            break;
        case DynkinType::E:
            if (n < 6 || n > 8) throw validation_error("type E needs rank 6, 7 or 8");
            // 1-3-4-5-...-n path with 2 attached to 4
            edges.push_back({1, 3, -1, -1});
            edges.push_back({3, 4, -1, -1});
            edges.push_back({2, 4, -1, -1});
            path(4, n);
            break;
        case DynkinType::F:
            if (n != 4) throw validation_error("type F needs rank 4");
            edges.push_back({1, 2, -1, -1});
            edges.push_back({2, 3, -1, -2});  // alpha_3, alpha_4 short
            edges.push_back({3, 4, -1, -1});
            break;
        case DynkinType::G:
            if (n != 2) throw validation_error("type G needs rank 2");
            edges.push_back({1, 2, -3, -1});  // alpha_1 short
            break;
    }
    return edges;
}

IntegerMatrix cartan_matrix(DynkinType type, int n) {
    IntegerMatrix c(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) c.at(static_cast<std::size_t>(i), static_cast<std::size_t>(i)) = 2;
    for (const Edge& e : dynkin_edges(type, n)) {
        c.at(static_cast<std::size_t>(e.i - 1), static_cast<std::size_t>(e.j - 1)) = e.aij;
        c.at(static_cast<std::size_t>(e.j - 1), static_cast<std::size_t>(e.i - 1)) = e.aji;
    }
    return c;
}

std::string matrix_key(const IntegerMatrix& m) {
    std::string key;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            key += m.at(i, j).get_str();
            key += ',';
        }
    return key;
}

}  // namespace

DynkinType dynkin_type_from_char(char c) {
    switch (c) {
        case 'A': return DynkinType::A;
        case 'B': return DynkinType::B;
        case 'C': return DynkinType::C;
        case 'D': return DynkinType::D;
        case 'E': return DynkinType::E;
        case 'F': return DynkinType::F;
        case 'G': return DynkinType::G;
        default: throw validation_error(std::string("unknown Dynkin type '") + c + "'");
    }
}

IntegerMatrix RootDatum::simple_reflection(int i) const {
    // s_i(omega_j) = omega_j - delta_ij alpha_i
    IntegerMatrix s = IntegerMatrix::identity(static_cast<std::size_t>(rank));
    for (int r = 0; r < rank; ++r)
        s.at(static_cast<std::size_t>(r), static_cast<std::size_t>(i - 1)) -=
            cartan.at(static_cast<std::size_t>(r), static_cast<std::size_t>(i - 1));
    return s;
}

bool RootDatum::in_char_lattice(const std::vector<Int>& chi) const {
    if (chi.size() != static_cast<std::size_t>(rank)) return false;
    try {
        solve_exact(char_lattice, IntegerMatrix::column(chi));
        return true;
    } catch (const invariant_error&) {
        return false;
    }
}

std::string RootDatum::name() const {
    return std::string(1, static_cast<char>(type)) + std::to_string(rank);
}

RootDatum build_root_datum(DynkinType type, int rank, LatticeKind kind) {
    if (rank < 1 || rank > 8) throw validation_error("rank must be between 1 and 8");
    RootDatum rd;
    rd.type = type;
    rd.rank = rank;
    rd.cartan = cartan_matrix(type, rank);
    rd.simple_roots = rd.cartan;
    rd.fundamental_weights = IntegerMatrix::identity(static_cast<std::size_t>(rank));
    rd.lattice_kind = kind;
    if (kind == LatticeKind::simply_connected)
        rd.char_lattice = IntegerMatrix::identity(static_cast<std::size_t>(rank));
    else if (kind == LatticeKind::adjoint)
        rd.char_lattice = rd.cartan;
    else
        throw validation_error("custom lattice requires an explicit basis matrix");
    return rd;
}

RootDatum build_root_datum(DynkinType type, int rank, const IntegerMatrix& lattice_basis_matrix) {
    RootDatum rd = build_root_datum(type, rank, LatticeKind::simply_connected);
    if (lattice_basis_matrix.rows() != static_cast<std::size_t>(rank) ||
        lattice_basis_matrix.cols() != static_cast<std::size_t>(rank))
        throw validation_error("lattice basis must be a square matrix of the rank");
    // Q <= T*: every simple root must have an integer expression
    try {
        solve_exact(lattice_basis_matrix, rd.cartan);
    } catch (const invariant_error&) {
        throw validation_error("lattice basis does not contain the root lattice");
    }
    rd.char_lattice = lattice_basis_matrix;
    rd.lattice_kind = LatticeKind::custom;
    if (lattice_basis_matrix.is_identity()) rd.lattice_kind = LatticeKind::simply_connected;
    return rd;
}

std::vector<WeylElement> weyl_enumerate(const RootDatum& rd, std::size_t bound) {
    std::vector<IntegerMatrix> gens;
    for (int i = 1; i <= rd.rank; ++i) gens.push_back(rd.simple_reflection(i));

    std::vector<WeylElement> out;
    std::map<std::string, std::size_t> seen;
    WeylElement id{{}, IntegerMatrix::identity(static_cast<std::size_t>(rd.rank))};
    out.push_back(id);
    seen[matrix_key(id.matrix)] = 0;

    std::size_t frontier_begin = 0;
    while (frontier_begin < out.size()) {
        std::size_t frontier_end = out.size();
        for (std::size_t x = frontier_begin; x < frontier_end; ++x)
            for (int i = 1; i <= rd.rank; ++i) {
                IntegerMatrix m = out[x].matrix * gens[static_cast<std::size_t>(i - 1)];
                std::string key = matrix_key(m);
                if (seen.count(key)) continue;
                if (out.size() >= bound)
                    throw bound_error("weyl_enumerate: Weyl group larger than the bound " +
                                      std::to_string(bound));
                WeylElement w;
                w.word = out[x].word;
                w.word.push_back(i);
                w.matrix = std::move(m);
                seen[key] = out.size();
                out.push_back(std::move(w));
            }
        frontier_begin = frontier_end;
    }
    std::sort(out.begin(), out.end(), [](const WeylElement& a, const WeylElement& b) {
        if (a.word.size() != b.word.size()) return a.word.size() < b.word.size();
        return a.word < b.word;
    });
    return out;
}

std::vector<long> poincare_polynomial(const RootDatum& rd, std::size_t bound) {
    std::vector<WeylElement> w = weyl_enumerate(rd, bound);
    std::size_t top = w.back().word.size();
    std::vector<long> coeff(top + 1, 0);
    for (const auto& e : w) ++coeff[e.word.size()];
    return coeff;
}

std::vector<Int> weyl_action(const RootDatum& rd, const WeylElement& w, const std::vector<Int>& chi) {
    if (!rd.in_char_lattice(chi))
        throw validation_error("weyl_action: character is not in the chosen lattice T*");
    return w.matrix.apply(chi);
}

std::vector<PositiveRoot> positive_roots(const RootDatum& rd, const std::vector<WeylElement>& weyl) {
    std::map<std::string, std::size_t> weyl_index;
    for (std::size_t i = 0; i < weyl.size(); ++i) weyl_index[matrix_key(weyl[i].matrix)] = i;

    struct Item {
        std::vector<Int> coords;
        IntegerMatrix pairing;     // 1 x rank
        IntegerMatrix reflection;  // rank x rank
    };
    std::vector<Item> found;
    std::map<std::string, bool> seen;
    auto coords_key = [&](const std::vector<Int>& v) {
        std::string s;
        for (const Int& x : v) s += x.get_str() + ",";
        return s;
    };

    std::vector<Item> queue;
    for (int j = 1; j <= rd.rank; ++j) {
        Item it;
        it.coords.resize(static_cast<std::size_t>(rd.rank));
        for (int r = 0; r < rd.rank; ++r)
            it.coords[static_cast<std::size_t>(r)] =
                rd.cartan.at(static_cast<std::size_t>(r), static_cast<std::size_t>(j - 1));
        it.pairing = IntegerMatrix(1, static_cast<std::size_t>(rd.rank));
        it.pairing.at(0, static_cast<std::size_t>(j - 1)) = 1;
        it.reflection = rd.simple_reflection(j);
        queue.push_back(std::move(it));
    }
    // orbit closure under the simple reflections; keep the positive members
    while (!queue.empty()) {
        Item it = queue.back();
        queue.pop_back();
        std::string key = coords_key(it.coords);
        if (seen.count(key)) continue;
        seen[key] = true;

        // positivity: nonnegative coordinates in the simple-root basis
        IntegerMatrix in_roots = solve_exact(rd.cartan, IntegerMatrix::column(it.coords));
        bool pos = true, neg = true;
        for (std::size_t r = 0; r < in_roots.rows(); ++r) {
            if (in_roots.at(r, 0) > 0) neg = false;
            if (in_roots.at(r, 0) < 0) pos = false;
        }
        if (!pos && !neg) throw invariant_error("positive_roots: root with mixed signs");
        if (pos) found.push_back(it);

        for (int i = 1; i <= rd.rank; ++i) {
            IntegerMatrix s = rd.simple_reflection(i);
            Item next;
            next.coords = s.apply(it.coords);
            if (seen.count(coords_key(next.coords))) continue;
            // <chi, (s alpha)^vee> = <s chi, alpha^vee>
            next.pairing = it.pairing * s;
            next.reflection = s * it.reflection * s;
            queue.push_back(std::move(next));
        }
    }

    std::vector<PositiveRoot> out;
    for (const Item& it : found) {
        PositiveRoot pr;
        pr.weight_coords = it.coords;
        pr.coroot_pairing.resize(static_cast<std::size_t>(rd.rank));
        for (int r = 0; r < rd.rank; ++r)
            pr.coroot_pairing[static_cast<std::size_t>(r)] = it.pairing.at(0, static_cast<std::size_t>(r));
        auto idx = weyl_index.find(matrix_key(it.reflection));
        if (idx == weyl_index.end())
            throw invariant_error("positive_roots: reflection not found in the Weyl enumeration");
        pr.reflection = idx->second;
        out.push_back(std::move(pr));
    }
    std::sort(out.begin(), out.end(), [](const PositiveRoot& a, const PositiveRoot& b) {
        return a.weight_coords < b.weight_coords;
    });
    return out;
}

}  // namespace flagspec

#include "flagspec/complexes.hpp"

#include <algorithm>
#include <string>

namespace flagspec {

BoundedComplex make_complex(int lo, std::vector<long> dims, std::vector<IntegerMatrix> diffs) {
    for (long d : dims)
        if (d < 0) throw validation_error("make_complex: negative rank");
    std::size_t expect = dims.size() >= 1 ? dims.size() - 1 : 0;
    if (diffs.size() != expect)
        throw validation_error("make_complex: expected " + std::to_string(expect) +
                               " differentials, got " + std::to_string(diffs.size()));
    for (std::size_t k = 0; k < diffs.size(); ++k) {
        if (diffs[k].rows() != static_cast<std::size_t>(dims[k]) ||
            diffs[k].cols() != static_cast<std::size_t>(dims[k + 1]))
            throw validation_error("make_complex: differential at degree " +
                                   std::to_string(lo + static_cast<int>(k) + 1) +
                                   " has wrong shape");
    }
    for (std::size_t k = 0; k + 1 < diffs.size(); ++k) {
        if (!(diffs[k] * diffs[k + 1]).is_zero())
            throw invariant_error("make_complex: d*d != 0 at degree " +
                                  std::to_string(lo + static_cast<int>(k) + 2));
    }
    return BoundedComplex{lo, std::move(dims), std::move(diffs)};
}

BoundedComplex zero_complex() { return BoundedComplex{0, {0}, {}}; }

BoundedComplex shift(const BoundedComplex& c, int n) {
    BoundedComplex out;
    out.lo = c.lo + n;
    out.dims = c.dims;
    out.diffs.reserve(c.diffs.size());
    for (const IntegerMatrix& d : c.diffs) out.diffs.push_back(n % 2 == 0 ? d : -d);
    return out;
}

ChainMap make_chain_map(BoundedComplex source, BoundedComplex target,
                        std::vector<IntegerMatrix> parts) {
    if (parts.size() != source.dims.size())
        throw validation_error("make_chain_map: need one component per source degree");
    ChainMap f{std::move(source), std::move(target), std::move(parts)};
    for (int i = f.source.lo; i <= f.source.hi(); ++i) {
        const IntegerMatrix& fi = f.parts[static_cast<std::size_t>(i - f.source.lo)];
        if (fi.rows() != static_cast<std::size_t>(f.target.dim(i)) ||
            fi.cols() != static_cast<std::size_t>(f.source.dim(i)))
            throw validation_error("make_chain_map: component at degree " + std::to_string(i) +
                                   " has wrong shape");
    }
    for (int i = f.source.lo; i <= f.source.hi() + 1; ++i) {
        IntegerMatrix lhs = f.part(i - 1) * f.source.diff(i);
        IntegerMatrix rhs = f.target.diff(i) * f.part(i);
        if (lhs != rhs)
            throw invariant_error("make_chain_map: does not commute with differentials at degree " +
                                  std::to_string(i));
    }
    return f;
}

ChainMap identity_chain_map(const BoundedComplex& c) {
    std::vector<IntegerMatrix> parts;
    parts.reserve(c.dims.size());
    for (long d : c.dims) parts.push_back(IntegerMatrix::identity(static_cast<std::size_t>(d)));
    return ChainMap{c, c, std::move(parts)};
}

ChainMap zero_chain_map(const BoundedComplex& source, const BoundedComplex& target) {
    std::vector<IntegerMatrix> parts;
    parts.reserve(source.dims.size());
    for (int i = source.lo; i <= source.hi(); ++i)
        parts.push_back(IntegerMatrix::zero(static_cast<std::size_t>(target.dim(i)),
                                            static_cast<std::size_t>(source.dim(i))));
    return ChainMap{source, target, std::move(parts)};
}

ChainMap compose(const ChainMap& g, const ChainMap& f) {
    std::vector<IntegerMatrix> parts;
    parts.reserve(f.source.dims.size());
    for (int i = f.source.lo; i <= f.source.hi(); ++i) parts.push_back(g.part(i) * f.part(i));
    return ChainMap{f.source, g.target, std::move(parts)};
}

bool chain_maps_equal(const ChainMap& a, const ChainMap& b) {
    int lo = std::min(a.source.lo, b.source.lo);
    int hi = std::max(a.source.hi(), b.source.hi());
    for (int i = lo; i <= hi; ++i)
        if (a.part(i) != b.part(i)) return false;
    return true;
}

BoundedComplex cone(const ChainMap& f) {
    const BoundedComplex& k = f.source;
    const BoundedComplex& l = f.target;
    int lo = std::min(k.lo + 1, l.lo);
    int hi = std::max(k.hi() + 1, l.hi());
    if (hi < lo) return zero_complex();
    std::vector<long> dims;
    for (int j = lo; j <= hi; ++j) dims.push_back(k.dim(j - 1) + l.dim(j));
    std::vector<IntegerMatrix> diffs;
    for (int j = lo + 1; j <= hi; ++j) {
        std::size_t kr = static_cast<std::size_t>(k.dim(j - 2)), kc = static_cast<std::size_t>(k.dim(j - 1));
        std::size_t lr = static_cast<std::size_t>(l.dim(j - 1)), lc = static_cast<std::size_t>(l.dim(j));
        IntegerMatrix d(kr + lr, kc + lc);
        IntegerMatrix dk = k.diff(j - 1), fl = f.part(j - 1), dl = l.diff(j);
        for (std::size_t i = 0; i < kr; ++i)
            for (std::size_t jj = 0; jj < kc; ++jj) d.at(i, jj) = dk.at(i, jj);
        for (std::size_t i = 0; i < lr; ++i)
            for (std::size_t jj = 0; jj < kc; ++jj) d.at(kr + i, jj) = fl.at(i, jj);
        for (std::size_t i = 0; i < lr; ++i)
            for (std::size_t jj = 0; jj < lc; ++jj) d.at(kr + i, kc + jj) = -dl.at(i, jj);
        diffs.push_back(std::move(d));
    }
    return BoundedComplex{lo, std::move(dims), std::move(diffs)};
}

BoundedComplex direct_sum(const std::vector<BoundedComplex>& summands) {
    if (summands.empty()) return zero_complex();
    int lo = summands[0].lo, hi = summands[0].hi();
    for (const auto& c : summands) {
        lo = std::min(lo, c.lo);
        hi = std::max(hi, c.hi());
    }
    std::vector<long> dims;
    for (int j = lo; j <= hi; ++j) {
        long d = 0;
        for (const auto& c : summands) d += c.dim(j);
        dims.push_back(d);
    }
    std::vector<IntegerMatrix> diffs;
    for (int j = lo + 1; j <= hi; ++j) {
        std::vector<IntegerMatrix> blocks;
        blocks.reserve(summands.size());
        for (const auto& c : summands) blocks.push_back(c.diff(j));
        diffs.push_back(block_diagonal(blocks));
    }
    return BoundedComplex{lo, std::move(dims), std::move(diffs)};
}

AbelianPresentation homology(const BoundedComplex& c, int i) {
    return homology_of_pair(c.diff(i + 1), c.diff(i));
}

HomologyData homology_data(const BoundedComplex& c, int i) {
    HomologyData h;
    h.cycles = kernel_basis(c.diff(i));
    h.boundaries_in_cycles = solve_exact(h.cycles, c.diff(i + 1));
    h.pres = cokernel(h.boundaries_in_cycles);
    return h;
}

IntegerMatrix homology_induced(const ChainMap& f, int i, const HomologyData& src,
                               const HomologyData& dst) {
    return solve_exact(dst.cycles, f.part(i) * src.cycles);
}

}  // namespace flagspec

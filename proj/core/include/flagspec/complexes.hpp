#pragma once

#include <vector>

#include "flagspec/intlin.hpp"

// Bounded homological chain complexes of finitely generated free abelian
// groups.  A complex is identically zero outside its degree window.  The
// differential d_i maps degree i to degree i-1.

namespace flagspec {

struct BoundedComplex {
    int lo = 0;
    std::vector<long> dims;            // dims[k] = rank in degree lo + k
    std::vector<IntegerMatrix> diffs;  // diffs[k] = d_{lo+k+1} : C_{lo+k+1} -> C_{lo+k}

    int hi() const { return lo + static_cast<int>(dims.size()) - 1; }

    long dim(int i) const {
        if (i < lo || i > hi()) return 0;
        return dims[static_cast<std::size_t>(i - lo)];
    }

    // d_i : C_i -> C_{i-1}, a zero matrix of the right shape outside the window.
    IntegerMatrix diff(int i) const {
        if (i <= lo || i > hi()) return IntegerMatrix::zero(static_cast<std::size_t>(dim(i - 1)),
                                                            static_cast<std::size_t>(dim(i)));
        return diffs[static_cast<std::size_t>(i - lo - 1)];
    }

    bool is_zero() const {
        for (long d : dims)
            if (d != 0) return false;
        return true;
    }

    bool operator==(const BoundedComplex& o) const = default;
};

// Validates shapes and d*d = 0; throws invariant_error naming the offending
// degree otherwise.
BoundedComplex make_complex(int lo, std::vector<long> dims, std::vector<IntegerMatrix> diffs);

BoundedComplex zero_complex();

// (C[n])_i = C_{i-n}; the differential picks up the sign (-1)^n, which makes
// the shift compatible with the cone triangle.  H_i(C[n]) = H_{i-n}(C).
BoundedComplex shift(const BoundedComplex& c, int n);

struct ChainMap {
    BoundedComplex source;
    BoundedComplex target;
    std::vector<IntegerMatrix> parts;  // parts[k] = f_{source.lo + k}

    // f_i : source_i -> target_i, zero outside the source window.
    IntegerMatrix part(int i) const {
        if (i < source.lo || i > source.hi())
            return IntegerMatrix::zero(static_cast<std::size_t>(target.dim(i)),
                                       static_cast<std::size_t>(source.dim(i)));
        return parts[static_cast<std::size_t>(i - source.lo)];
    }
};

// Validates shapes and the commutation f_{i-1} d_i = d_i f_i.
ChainMap make_chain_map(BoundedComplex source, BoundedComplex target,
                        std::vector<IntegerMatrix> parts);

ChainMap identity_chain_map(const BoundedComplex& c);
ChainMap zero_chain_map(const BoundedComplex& source, const BoundedComplex& target);
ChainMap compose(const ChainMap& g, const ChainMap& f);  // g after f

bool chain_maps_equal(const ChainMap& a, const ChainMap& b);

// Mapping cone: (cone f)_{i+1} = K_i (+) L_{i+1} for f : K -> L, with
// differential (k, l) |-> (d^K k, f k - d^L l).
BoundedComplex cone(const ChainMap& f);

// Degreewise block sum; summand order is the order of the argument list.
BoundedComplex direct_sum(const std::vector<BoundedComplex>& summands);

AbelianPresentation homology(const BoundedComplex& c, int i);

// Homology with a chosen cycle basis, for computing induced maps.
// pres = coker(boundaries_in_cycles), generators = columns of cycles.
struct HomologyData {
    IntegerMatrix cycles;               // n x k basis of ker d_i
    IntegerMatrix boundaries_in_cycles; // k x m, image of d_{i+1} in the cycle basis
    AbelianPresentation pres;
};

HomologyData homology_data(const BoundedComplex& c, int i);

// Matrix of H_i(f) on the chosen cycle bases; descends to the presentations.
IntegerMatrix homology_induced(const ChainMap& f, int i, const HomologyData& src,
                               const HomologyData& dst);

}  // namespace flagspec

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "oapoly/arrays.hpp"
#include "oapoly/groups.hpp"
#include "oapoly/matrix.hpp"

namespace oapoly {

// Orthogonal projection matrix onto an invariant subspace. Exact rational
// entries; the optional antisymmetric companion carries the imaginary part
// (Gaussian-rational scalars). P^2 = P, P = P*, rank = trace.
struct Projector {
    RatMatrix re;
    std::optional<RatMatrix> im;
    int rank = 0;

    std::size_t dim_ambient() const { return re.rows(); }
    bool is_real() const { return !im.has_value() || im->is_zero(); }

    static Projector real(RatMatrix m);
    static Projector complex(RatMatrix re, RatMatrix im);

    // P^2 = P and P = P* hold exactly (checked over the Gaussian rationals).
    bool is_valid() const;
};

// The k+1 interaction-order projectors U_0,...,U_k with
// dim(U_r) = C(k,r)(n-1)^r: U_r = sum over |u| = r of the tensor products
// of M_0 = (1/n) * ones and M_1 = I - M_0.
struct DecompositionU {
    int n = 2;
    int k = 1;
    std::vector<Projector> projectors;  // index r = interaction order
};

// n = 2 pairing W_0 = U_0, interior W_j = U_{2j-1} + U_{2j}, and a top block
// of U_{k-1} + U_k (k even) or U_k (k odd).
struct DecompositionW {
    int k = 1;
    std::vector<Projector> projectors;
};

DecompositionU build_U_projectors(int n, int k, long long ambient_cap = 4096);
DecompositionW build_W_projectors(int k, long long ambient_cap = 4096);

// Projector onto the fixed subspace of the permutation action with the given
// orbits: E_ij = 1/|O| when i and j share orbit O, else 0. rank = #orbits.
Projector fixed_subspace_projector(const OrbitPartition& orbits);

// Builds all irreducible real subrepresentations from a multiplicity-free
// complex family: real inputs pass through, conjugate pairs of equal
// dimension with a real sum merge. Every input must be consumed exactly once,
// otherwise the multiplicity-free premise is violated.
std::vector<Projector> method1_real_from_complex(const std::vector<Projector>& projectors);

// Translates each point by -(lambda n^s / n^k) * 1 and reports the indices of
// decomposition components with a nonzero projection of some translated
// point. When the point set is closed under the group, the ranks of the
// returned components sum to the dimension of the affine hull.
std::vector<int> invariant_span_components(const std::vector<FrequencyVector>& points,
                                           const std::vector<Projector>& decomposition);

std::string projector_to_json(const Projector& p);
Projector projector_from_json(const std::string& text);

}  // namespace oapoly

#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "oapoly/arrays.hpp"
#include "oapoly/matrix.hpp"
#include "oapoly/repr.hpp"

namespace oapoly {

// General mode: members are the l in [1, k-s] with
//   lambda * C(s+l-1, l-1) == 0 (mod n).
// n2-even-s mode (n = 2, s even): members are the even d in [0, k-s-1] with
//   lambda * C(s+d, d) == 0 (mod 2).
enum class OmegaMode { General, N2EvenS };

struct OmegaSet {
    OAParams params;
    OmegaMode mode = OmegaMode::General;
    std::vector<int> members;  // sorted
};

struct DimCandidate {
    std::vector<int> T;             // subset of Omega
    Int dimension;
    std::vector<int> forced_sizes;  // |u| classes whose J-blocks the candidate forces to zero
};

struct DimReport {
    OAParams params;
    OmegaSet omega;
    Int base_dim;                        // the T = empty value
    std::vector<DimCandidate> candidates;  // deduplicated by dimension, minimal T first
};

// Mode is selected automatically (n = 2 and even s uses the stronger paired
// lattice) unless force_general is set.
OmegaSet compute_omega(const OAParams& params, bool force_general = false);

// dim of the linear-relaxation affine space: n^k - sum_{j<=s} C(k,j)(n-1)^j.
Int base_dimension(const OAParams& params);

// J-block sizes forced to zero by T: {s+l : l in T} in general mode,
// the pairs {s+d+1, s+d+2} clipped to [1, k] in n2-even-s mode.
std::vector<int> forced_block_sizes(const OAParams& params, OmegaMode mode,
                                    const std::vector<int>& T);

Int candidate_dimension(const OAParams& params, OmegaMode mode, const std::vector<int>& T);

// Enumerates all T subsets of Omega. Throws ResourceError when |Omega| > 20.
DimReport candidate_dims(const OAParams& params, bool force_general = false);

// The corollary: when the general-mode Omega is empty (k > s), the dimension
// is pinned to the base dimension.
std::optional<Int> full_dim_if_nondivisible(const OAParams& params);

// Zero-right-hand-side equality family for T: one integer-coefficient row per
// (u, tuple over the u-support) with |u| in the forced sizes. Coefficients
// are the n^k-scaled J_u(tuple) linear forms.
struct ConstraintRow {
    std::uint32_t u_mask = 0;
    std::vector<int> tuple;          // representative, off-u coordinates 0
    std::vector<Int> coefficients;   // dense, length n^k
};
std::vector<ConstraintRow> constraint_family(const OAParams& params, const std::vector<int>& T,
                                             OmegaMode mode, long long ambient_cap = 4096);

// The general pipeline: keep the projectors whose range is orthogonal to
// every row of the equality matrix, realify them, and return all subset sums
// of the resulting real ranks. A family that is not multiplicity-free
// produces the empty set (the method's stop rule).
std::set<long long> method2_candidates(const std::vector<std::vector<Rat>>& eq_rows,
                                       const std::vector<Projector>& projectors,
                                       bool multiplicity_free);

std::string dim_report_to_json(const DimReport& report);
std::string constraint_family_to_json(const OAParams& params, const std::vector<ConstraintRow>& rows);

}  // namespace oapoly

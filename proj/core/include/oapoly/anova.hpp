#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "oapoly/arrays.hpp"
#include "oapoly/numeric.hpp"

namespace oapoly {

// J-characteristics of a frequency vector, one block per subset u of the
// columns. Block u is stored as a full length-n^k table (constant in the
// coordinates outside u); blocks[mask][rank] = J_u(tuple). J_empty == N.
struct JVector {
    OAParams params;
    std::vector<std::vector<Rat>> blocks;  // indexed by subset mask

    const Rat& at(std::uint32_t u_mask, long long tuple_rank) const {
        return blocks[u_mask][static_cast<std::size_t>(tuple_rank)];
    }
    bool block_is_zero(std::uint32_t u_mask) const;
};

// n = 2 only: the 2^k signed-product J values J_u(1,...,1) in H-row order
// (empty set, singletons, pairs, ...).
struct SignedJVector {
    OAParams params;
    std::vector<Rat> entries;  // H-row order
};

struct CongruenceRecord {
    std::uint32_t u_mask = 0;
    long long tuple_rank = 0;     // representative tuple (coordinates off u are 0)
    Rat mu;                       // J_u(tuple) / n^s
    long long expected_residue = 0;  // ((-1)^l * lambda * C(s+l-1, l-1)) mod n, in [0, n)
    bool pass = false;
};

struct CongruenceReport {
    OAParams params;
    bool pass = true;
    std::vector<CongruenceRecord> records;  // one per (u, tuple over u-support), |u| > s
};

// ANOVA transform: grand mean N/n^k, interactions by the marginal-mean
// recursion, J_u = n^k * x_u. The reconstruction identity
// sum_u J_u(i) = n^k x(i) holds exactly.
JVector anova_transform(const FrequencyVector& fv);

// Closed-form linear coefficients of the functional x -> J_u(tuple):
// coeff(t) = prod_{j in u} (n * [t_j == tuple_j] - 1). Integer-valued; this is
// the n^k-scaled row of the orthogonal projector onto the u-interaction
// subspace, and for n = 2 exactly the signed-product row.
std::vector<Int> j_row_coefficients(const OAParams& params, std::uint32_t u_mask,
                                    std::span<const int> tuple);

// n = 2 fast path: J = H x via a Walsh-Hadamard butterfly, reordered to
// H-row order. Inverse satisfies x = H^T J / 2^k exactly.
SignedJVector signed_j_transform(const FrequencyVector& fv);
std::vector<Rat> signed_j_inverse(const SignedJVector& sj);

// n = 2: anova J_u(1,...,1) equals the signed-product entry for every u.
bool consistency_check(const FrequencyVector& fv);

// n = 2 sign-pattern prediction: J_u(i) = (-1)^(|u| - d) * J_u(1,...,1) where
// d is the Hamming distance of i restricted to u from the all-(-1) word.
Rat sign_pattern(const JVector& jv, std::uint32_t u_mask, std::span<const int> tuple);

// Strength criterion: strength s iff J_u == 0 for all 1 <= |u| <= s.
bool check_strength_J(const JVector& jv, int s);

// For each u with |u| > s: mu_u = J_u / n^s must be an integer congruent to
// (-1)^l * lambda * C(s+l-1, l-1) mod n, where l = |u| - s. Precondition:
// the vector has strength s (params.s).
CongruenceReport congruence_report(const JVector& jv);

// Exact verification of the two alternating binomial identities
//   sum_{i=0}^{r-1} (-1)^(i+1) C(s+i,i) C(s+r-1,s+i) = 0      (r >= 2)
//   sum_{i=0}^{r-1} (-1)^(i+1) C(s+i,i) C(s+r,  s+i+1) = -1   (r >= 1)
bool binomial_identity_check(int s, int r);

// --- serialization ---

// Blocks in H order, each {"u": [columns], "values_on_u": [...]} with the
// table in lexicographic order over the u-coordinates.
std::string jvector_to_json(const JVector& jv);
std::string signed_j_to_json(const SignedJVector& sj);

}  // namespace oapoly

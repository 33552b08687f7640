#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "oapoly/arrays.hpp"
#include "oapoly/numeric.hpp"

namespace oapoly {

// A paratopism ((h_1,...,h_k), g): per-column symbol permutations plus a
// column shuffle. Acts on tuples by i'_j = h_j(i_{g^{-1}(j)}); the group is
// the wreath product S_n wr S_k of order (n!)^k * k!.
struct Paratopism {
    std::vector<std::vector<int>> col_perms;  // col_perms[j][symbol], k of them
    std::vector<int> col_shuffle;             // g: column j moves to col_shuffle[j]

    static Paratopism identity(int n, int k);
};

// The n = 2 column operation R_j: in +-1 coordinates every column i != j is
// multiplied entrywise by column j; column j is unchanged. An involution.
struct ColumnRemix {
    int column = 0;  // 0-based
};

using GroupElement = std::variant<Paratopism, ColumnRemix>;

// A word in G(k)^OD: remix operations applied after a paratopism tail.
// n = 2 only; evaluation is a permutation of the 2^k tuples.
struct ODWord {
    std::vector<int> remix_columns;  // applied left to right, outermost last
    Paratopism tail;

    static ODWord identity(int k) { return {{}, Paratopism::identity(2, k)}; }
};

std::vector<int> apply_paratopism(const Paratopism& p, std::span<const int> tuple);

// +-1 tuples, entries in {-1, +1}.
std::vector<int> apply_remix(int column, std::span<const int> pm_tuple);

// apply(compose(a, b), t) == apply(a, apply(b, t))
Paratopism compose(const Paratopism& a, const Paratopism& b);

// The induced permutation of tuple ranks: perm[rank(t)] = rank(g(t)).
// ColumnRemix elements require n = 2 (tuples pass through the +-1 encoding).
std::vector<std::int32_t> tuple_permutation(const GroupElement& g, int n, int k);
std::vector<std::int32_t> tuple_permutation(const ODWord& word, int k);

struct GeneratorSet {
    int n = 2;
    int k = 1;
    std::vector<GroupElement> elements;
};

// Standard small generating sets: k-1 adjacent column transpositions plus,
// per column, one symbol transposition and (n > 2) one symbol n-cycle.
GeneratorSet giso_generators(int n, int k);
// G(k)^OD = < R_1,...,R_k, G^iso(k,2) >, order (k+1)! * 2^k.
GeneratorSet god_generators(int k);

// Orbit of a frequency vector under the generated group (breadth-first
// closure, deduplicated, canonically sorted). Throws ResourceError past cap.
std::vector<FrequencyVector> orbit_of_point(const GeneratorSet& gens, const FrequencyVector& fv,
                                            std::size_t orbit_cap = 1u << 20);

// Applies the induced count permutation: out[perm[r]] = counts[r].
FrequencyVector apply_to_frequency(const std::vector<std::int32_t>& perm, const FrequencyVector& fv);

// Disjoint classes covering {0,...,domain_size-1}.
struct OrbitPartition {
    long long domain_size = 0;
    std::vector<std::vector<long long>> classes;
};

// Orbits of G^iso(k,n) on pairs of tuples are the Hamming distance classes
// O_0,...,O_k; pairs are encoded as rank1 * n^k + rank2.
OrbitPartition hamming_orbits_X2(int k, int n, long long pair_cap = 1LL << 26);

// n = 2: the G(k)^OD classes pair distances i and k+1-i; ceil(k/2)+1 classes.
OrbitPartition od_orbits_X2(int k, long long pair_cap = 1LL << 26);

// Full enumeration of the generated permutation group (closure over tuple
// permutations). Throws ResourceError when the order exceeds the cap.
std::vector<std::vector<std::int32_t>> enumerate_group(const GeneratorSet& gens,
                                                       std::size_t order_cap = 10'000'000);

// Exact Burnside count of orbits on X^m: (1/|G|) sum_h F(h)^m.
Int burnside_orbit_count(const GeneratorSet& gens, int exponent,
                         std::size_t order_cap = 10'000'000);

// Generator file: JSON list of {"col_perms": [[...],...], "col_shuffle": [...]}
// or {"R": j} entries (0-based columns and symbols).
std::string generators_to_json(const GeneratorSet& gens);
GeneratorSet generators_from_json(const std::string& text, int n, int k);

}  // namespace oapoly

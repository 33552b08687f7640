#pragma once

#include <cstdint>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "oapoly/arrays.hpp"
#include "oapoly/numeric.hpp"

namespace oapoly {

struct SearchBudget {
    long long max_cells = 256;       // refuse to start past this n^k
    long long max_runs = 24;         // refuse to start past this N
    long long node_cap = 100'000'000;
    double time_cap_seconds = 600.0;
    int workers = 1;                 // results are schedule-independent
    int split_depth = 0;             // subtree split depth for workers > 1; 0 = auto
};

struct EnumerationResult {
    OAParams params;
    std::vector<FrequencyVector> solutions;  // canonically (lexicographically) sorted
    bool complete = false;
    long long node_count = 0;
};

// Depth-first assignment of the count vector in rank order with incremental
// marginal pruning: no s-margin may exceed lambda, and the remaining cells of
// a margin must be able to reach it. Exhausting the node or time budget
// yields a partial result with complete = false.
EnumerationResult enumerate_all(const OAParams& params, const SearchBudget& budget = {});

struct AffineDimResult {
    int dimension = 0;
    std::vector<std::vector<long long>> witness_basis;  // independent difference vectors
};

// Exact rank of the differences from the first solution; equals the dimension
// of the convex hull of the solution set.
AffineDimResult affine_dimension(const std::vector<FrequencyVector>& solutions);

struct VanishingBlocks {
    std::vector<std::uint32_t> vanishing_masks;  // u with J_u == 0 on every solution (u != 0)
    std::set<int> vanishing_sizes;               // sizes whose full class vanishes
    // Vanishing u-sets form unions of full size classes; in the paired mode
    // (n = 2, even s) sizes above s vanish in {2j-1, 2j} pairs.
    bool class_structure_ok = false;
};

// Requires all solutions to have strength params.s.
VanishingBlocks vanishing_blocks(const std::vector<FrequencyVector>& solutions);

// JSON-lines: one {"counts": [...]} per solution, then a summary record.
void write_solutions_jsonl(std::ostream& out, const EnumerationResult& result);

}  // namespace oapoly

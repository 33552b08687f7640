#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "oapoly/numeric.hpp"

namespace oapoly {

// Parameter set of an OA(lambda * n^s, k, n, s) problem. Symbols are
// normalized to {0,...,n-1}; an abstract alphabet {l_1,...,l_n} maps via
// l_i <-> i-1 and the {-1,+1} alphabet via -1 <-> 0, +1 <-> 1.
struct OAParams {
    int n = 2;               // symbol count, >= 2
    int k = 1;               // column count, >= 1
    int s = 0;               // strength, 0 <= s <= k
    long long lambda = 1;    // index, >= 1
    long long p_max = 1;     // per-cell cap, 1 <= p_max <= lambda
    long long run_count = 1; // N = lambda * n^s, exactly

    static OAParams make(int n, int k, int s, long long lambda,
                         std::optional<long long> p_max = std::nullopt);

    Int cell_count() const { return pow_int(Int(n), k); }
    // n^k as a machine integer; refuses when a table of that size cannot be indexed.
    long long cell_count_ll() const;

    bool operator==(const OAParams&) const = default;
    auto operator<=>(const OAParams&) const = default;
};

// Big-endian radix-n positional encoding, column 1 (index 0) most significant.
// This is the lexicographic row order of the full-factorial array, so the
// signed-transform matrix rows align with subset order.
long long tuple_rank(std::span<const int> digits, int n);
std::vector<int> tuple_unrank(long long rank, int n, int k);

// Convenience indexer with precomputed powers for a fixed (n, k).
class TupleIndexer {
public:
    TupleIndexer(int n, int k);
    int n() const { return n_; }
    int k() const { return k_; }
    long long size() const { return size_; }
    long long rank(std::span<const int> digits) const;
    std::vector<int> unrank(long long r) const;
    int digit(long long rank, int column) const { return static_cast<int>(rank / pw_[column] % n_); }

private:
    int n_, k_;
    long long size_;
    std::vector<long long> pw_;  // pw_[j] = n^(k-1-j)
};

struct SymbolArray {
    int n = 2;
    int k = 1;
    std::vector<std::vector<int>> rows;
};

struct FrequencyVector {
    OAParams params;
    std::vector<long long> counts;  // length n^k, rank order

    long long total() const;
    bool operator==(const FrequencyVector&) const = default;
    auto operator<=>(const FrequencyVector&) const = default;
};

FrequencyVector array_to_frequency(const SymbolArray& arr, const OAParams& params);

// Definition-level strength check: every s-subset of columns and every
// s-tuple of symbols has marginal count N / n^s. Recomputes lambda from the
// total; false when n^s does not divide N.
bool check_strength_direct(const FrequencyVector& fv, int s);

// As above, but names the first violated margin (columns, symbol tuple,
// observed sum) for diagnostics.
struct MarginViolation {
    std::vector<int> columns;
    std::vector<int> symbols;
    long long observed = 0;
    long long expected = 0;
};
std::optional<MarginViolation> first_margin_violation(const FrequencyVector& fv, int s);

// --- file formats ---

// Plain text: first line "n k N", then N lines of k space-separated symbols.
SymbolArray read_array_text(std::istream& in);
void write_array_text(std::ostream& out, const SymbolArray& arr);

// {"n":..,"k":..,"s":..,"lambda":..,"counts":[...]}
std::string frequency_to_json(const FrequencyVector& fv);
FrequencyVector frequency_from_json(const std::string& text);

}  // namespace oapoly

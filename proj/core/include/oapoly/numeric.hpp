#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace oapoly {

// All arithmetic in this library is exact. No floating point anywhere.
using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

// Binomial coefficient via the exact integer Pascal recursion (memoized).
// C(n, r) = 0 for r < 0 or r > n.
const Int& binomial(int n, int r);

Int pow_int(const Int& base, int exp);

// True mathematical mod: result in [0, m), also for negative a. Requires m >= 1.
long long mod_euclid(const Int& a, long long m);

bool is_integer(const Rat& r);
Int to_integer(const Rat& r);  // requires denominator 1

// Canonical text form: "p" when the denominator is 1, else "p/q".
std::string rational_str(const Rat& r);
Rat parse_rational(const std::string& s);

int popcount32(std::uint32_t m);

// Columns of a subset mask, ascending (bit j <-> column j, 0-based).
std::vector<int> mask_columns(std::uint32_t mask, int k);
std::uint32_t columns_mask(std::span<const int> columns);

// All r-subsets of {0,...,k-1} in lexicographic order on the sorted column lists.
std::vector<std::vector<int>> combinations_lex(int k, int r);

// All 2^k subset masks in H-row order: by size, then lexicographic on columns
// (the row order of the signed-product transform matrix).
std::vector<std::uint32_t> masks_h_order(int k);

}  // namespace oapoly

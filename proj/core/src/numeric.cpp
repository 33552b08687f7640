#include "oapoly/numeric.hpp"

#include <algorithm>
#include <bit>
#include <mutex>

#include "oapoly/errors.hpp"

namespace oapoly {

const Int& binomial(int n, int r) {
    static const Int zero = 0;
    static std::vector<std::vector<Int>> pascal;  // pascal[n] = row n
    static std::mutex mu;
    if (n < 0 || r < 0 || r > n) return zero;
    std::lock_guard<std::mutex> lock(mu);
    while (static_cast<int>(pascal.size()) <= n) {
        int m = static_cast<int>(pascal.size());
        std::vector<Int> row(static_cast<std::size_t>(m) + 1, 1);
        for (int j = 1; j < m; ++j) row[j] = pascal[m - 1][j - 1] + pascal[m - 1][j];
        pascal.push_back(std::move(row));
    }
    return pascal[n][r];
}

Int pow_int(const Int& base, int exp) {
    if (exp < 0) throw InputError("pow_int: negative exponent");
    Int out = 1;
    for (int i = 0; i < exp; ++i) out *= base;
    return out;
}

long long mod_euclid(const Int& a, long long m) {
    if (m < 1) throw InputError("mod_euclid: modulus must be >= 1");
    Int r = a % m;
    if (r < 0) r += m;
    return static_cast<long long>(r);
}

bool is_integer(const Rat& r) { return denominator(r) == 1; }

Int to_integer(const Rat& r) {
    if (!is_integer(r)) throw InputError("to_integer: " + rational_str(r) + " is not an integer");
    return numerator(r);
}

std::string rational_str(const Rat& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

Rat parse_rational(const std::string& s) {
    try {
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rat(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw InputError("parse_rational: zero denominator in '" + s + "'");
        return Rat(num, den);
    } catch (const std::exception&) {
        throw InputError("parse_rational: cannot parse '" + s + "'");
    }
}

int popcount32(std::uint32_t m) { return std::popcount(m); }

std::vector<int> mask_columns(std::uint32_t mask, int k) {
    std::vector<int> cols;
    for (int j = 0; j < k; ++j)
        if (mask >> j & 1u) cols.push_back(j);
    return cols;
}

std::uint32_t columns_mask(std::span<const int> columns) {
    std::uint32_t m = 0;
    for (int c : columns) m |= 1u << c;
    return m;
}

std::vector<std::vector<int>> combinations_lex(int k, int r) {
    std::vector<std::vector<int>> out;
    if (r < 0 || r > k) return out;
    if (r == 0) return {{}};
    std::vector<int> cur(r);
    for (int i = 0; i < r; ++i) cur[i] = i;
    while (true) {
        out.push_back(cur);
        int i = r - 1;
        while (i >= 0 && cur[i] == k - r + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < r; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

std::vector<std::uint32_t> masks_h_order(int k) {
    std::vector<std::uint32_t> out;
    out.reserve(1u << k);
    for (int r = 0; r <= k; ++r)
        for (const auto& cols : combinations_lex(k, r)) out.push_back(columns_mask(cols));
    return out;
}

}  // namespace oapoly

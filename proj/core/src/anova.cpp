#include "oapoly/anova.hpp"

#include <nlohmann/json.hpp>

#include "oapoly/errors.hpp"

namespace oapoly {

bool JVector::block_is_zero(std::uint32_t u_mask) const {
    for (const auto& v : blocks[u_mask])
        if (v != 0) return false;
    return true;
}

namespace {

void require_binary(const OAParams& p, const char* op) {
    if (p.n != 2) throw UnsupportedAlphabetError(std::string(op) + ": defined for n = 2 only");
}

}  // namespace

JVector anova_transform(const FrequencyVector& fv) {
    const int n = fv.params.n, k = fv.params.k;
    TupleIndexer idx(n, k);
    const long long cells = idx.size();
    if (static_cast<long long>(fv.counts.size()) != cells)
        throw InputError("anova_transform: counts length != n^k");

    JVector jv{fv.params, std::vector<std::vector<Rat>>(1u << k)};

    std::vector<long long> pw(k);  // pw[j] = n^(k-1-j), big-endian digit weights
    {
        long long p = 1;
        for (int j = k - 1; j >= 0; --j) {
            pw[j] = p;
            p *= n;
        }
    }

    // Zeroing the digits outside u maps a tuple onto the representative cell
    // its marginal sum lives in.
    const auto masked_rank = [&](long long r, std::uint32_t u) {
        long long key = 0;
        for (int j = 0; j < k; ++j)
            if (u >> j & 1u) key += (r / pw[j] % n) * pw[j];
        return key;
    };

    const Rat nk = Rat(pow_int(Int(n), k));
    // Increasing mask order: every proper submask of u precedes u.
    for (std::uint32_t u = 0; u < (1u << k); ++u) {
        std::vector<long long> marg(static_cast<std::size_t>(cells), 0);
        for (long long r = 0; r < cells; ++r)
            marg[static_cast<std::size_t>(masked_rank(r, u))] += fv.counts[static_cast<std::size_t>(r)];
        const Int denom = pow_int(Int(n), k - popcount32(u));
        auto& block = jv.blocks[u];
        block.resize(static_cast<std::size_t>(cells));
        for (long long r = 0; r < cells; ++r) {
            // x_u(i) = n^{-(k-|u|)} * marginal sum - proper-subset interactions
            Rat x_u = Rat(Int(marg[static_cast<std::size_t>(masked_rank(r, u))]), denom);
            if (u != 0) {
                for (std::uint32_t v = (u - 1) & u;; v = (v - 1) & u) {
                    x_u -= jv.blocks[v][static_cast<std::size_t>(r)] / nk;
                    if (v == 0) break;
                }
            }
            block[static_cast<std::size_t>(r)] = x_u * nk;
        }
    }
    return jv;
}

std::vector<Int> j_row_coefficients(const OAParams& params, std::uint32_t u_mask,
                                    std::span<const int> tuple) {
    const int n = params.n, k = params.k;
    if (static_cast<int>(tuple.size()) != k) throw InputError("j_row_coefficients: tuple length != k");
    TupleIndexer idx(n, k);
    const long long cells = idx.size();
    std::vector<Int> row(static_cast<std::size_t>(cells));
    for (long long t = 0; t < cells; ++t) {
        Int c = 1;
        for (int j = 0; j < k; ++j) {
            if (!(u_mask >> j & 1u)) continue;
            c *= (idx.digit(t, j) == tuple[j]) ? (n - 1) : -1;
        }
        row[static_cast<std::size_t>(t)] = c;
    }
    return row;
}

SignedJVector signed_j_transform(const FrequencyVector& fv) {
    require_binary(fv.params, "signed_j_transform");
    const int k = fv.params.k;
    const std::size_t cells = std::size_t(1) << k;
    if (fv.counts.size() != cells) throw InputError("signed_j_transform: counts length != 2^k");

    // Walsh-Hadamard butterfly: w[m] = sum_p (-1)^{popcount(m & p)} x[p].
    std::vector<long long> w(fv.counts.begin(), fv.counts.end());
    for (std::size_t len = 1; len < cells; len <<= 1) {
        for (std::size_t i = 0; i < cells; i += len << 1) {
            for (std::size_t j = i; j < i + len; ++j) {
                long long a = w[j], b = w[j + len];
                w[j] = a + b;
                w[j + len] = a - b;
            }
        }
    }

    // Row for subset u is the product of +-1 column encodings:
    // J[u] = (-1)^{|u|} w[bits(u)] with bit j of the rank being column j,
    // big-endian (column 0 most significant).
    SignedJVector sj{fv.params, {}};
    sj.entries.reserve(cells);
    for (std::uint32_t u : masks_h_order(k)) {
        std::uint32_t m = 0;
        for (int j = 0; j < k; ++j)
            if (u >> j & 1u) m |= 1u << (k - 1 - j);
        long long v = w[m];
        if (popcount32(u) & 1) v = -v;
        sj.entries.emplace_back(Int(v));
    }
    return sj;
}

std::vector<Rat> signed_j_inverse(const SignedJVector& sj) {
    require_binary(sj.params, "signed_j_inverse");
    const int k = sj.params.k;
    const std::size_t cells = std::size_t(1) << k;
    if (sj.entries.size() != cells) throw InputError("signed_j_inverse: entry count != 2^k");

    // Undo the H-order/sign mapping, then apply the self-inverse butterfly / 2^k.
    std::vector<Rat> w(cells, Rat(0));
    std::size_t pos = 0;
    for (std::uint32_t u : masks_h_order(k)) {
        std::uint32_t m = 0;
        for (int j = 0; j < k; ++j)
            if (u >> j & 1u) m |= 1u << (k - 1 - j);
        w[m] = (popcount32(u) & 1) ? -sj.entries[pos] : sj.entries[pos];
        ++pos;
    }
    for (std::size_t len = 1; len < cells; len <<= 1) {
        for (std::size_t i = 0; i < cells; i += len << 1) {
            for (std::size_t j = i; j < i + len; ++j) {
                Rat a = w[j], b = w[j + len];
                w[j] = a + b;
                w[j + len] = a - b;
            }
        }
    }
    const Rat scale = Rat(1, Int(1) << k);
    for (auto& e : w) e *= scale;
    return w;
}

bool consistency_check(const FrequencyVector& fv) {
    require_binary(fv.params, "consistency_check");
    const JVector jv = anova_transform(fv);
    const SignedJVector sj = signed_j_transform(fv);
    const int k = fv.params.k;
    const long long ones = (std::size_t(1) << k) - 1;  // tuple (1,...,1) has rank 2^k - 1
    std::size_t pos = 0;
    for (std::uint32_t u : masks_h_order(k)) {
        if (jv.at(u, ones) != sj.entries[pos]) return false;
        ++pos;
    }
    return true;
}

Rat sign_pattern(const JVector& jv, std::uint32_t u_mask, std::span<const int> tuple) {
    require_binary(jv.params, "sign_pattern");
    const int k = jv.params.k;
    if (static_cast<int>(tuple.size()) != k) throw InputError("sign_pattern: tuple length != k");
    int d = 0;  // Hamming distance of the u-restriction from the all-(-1) word
    for (int j = 0; j < k; ++j)
        if ((u_mask >> j & 1u) && tuple[j] != 0) ++d;
    const long long ones = (std::size_t(1) << k) - 1;
    Rat base = jv.at(u_mask, ones);
    return ((popcount32(u_mask) - d) & 1) ? -base : base;
}

bool check_strength_J(const JVector& jv, int s) {
    const int k = jv.params.k;
    if (s < 0 || s > k) throw InputError("check_strength_J: need 0 <= s <= k");
    for (std::uint32_t u = 1; u < (1u << k); ++u) {
        if (popcount32(u) > s) continue;
        if (!jv.block_is_zero(u)) return false;
    }
    return true;
}

CongruenceReport congruence_report(const JVector& jv) {
    const OAParams& p = jv.params;
    if (!check_strength_J(jv, p.s))
        throw PreconditionError("congruence_report: vector does not have strength s");
    CongruenceReport rep{p, true, {}};
    const Int ns = pow_int(Int(p.n), p.s);
    TupleIndexer idx(p.n, p.k);
    for (std::uint32_t u : masks_h_order(p.k)) {
        const int l = popcount32(u) - p.s;
        if (l < 1) continue;
        Int expectation = Int(p.lambda) * binomial(p.s + l - 1, l - 1);
        if (l & 1) expectation = -expectation;
        const long long expected = mod_euclid(expectation, p.n);
        // J_u depends only on the u-coordinates; scan the representative
        // tuples with the off-u coordinates at 0.
        const auto cols = mask_columns(u, p.k);
        std::vector<int> tuple(p.k, 0);
        const long long support = [&] {
            long long v = 1;
            for (std::size_t i = 0; i < cols.size(); ++i) v *= p.n;
            return v;
        }();
        for (long long c = 0; c < support; ++c) {
            long long rest = c;
            for (auto it = cols.rbegin(); it != cols.rend(); ++it) {
                tuple[*it] = static_cast<int>(rest % p.n);
                rest /= p.n;
            }
            const long long r = idx.rank(tuple);
            Rat mu = jv.at(u, r) / Rat(ns);
            bool pass = is_integer(mu) && mod_euclid(to_integer(mu), p.n) == expected;
            if (!pass) rep.pass = false;
            rep.records.push_back({u, r, mu, expected, pass});
        }
    }
    return rep;
}

bool binomial_identity_check(int s, int r) {
    if (s < 1 || r < 1) throw InputError("binomial_identity_check: need s >= 1, r >= 1");
    Int first = 0, second = 0;
    for (int i = 0; i <= r - 1; ++i) {
        const Int term = binomial(s + i, i);
        const int sign = (i & 1) ? 1 : -1;  // (-1)^(i+1)
        first += sign * term * binomial(s + r - 1, s + i);
        second += sign * term * binomial(s + r, s + i + 1);
    }
    const bool first_ok = (r < 2) || first == 0;
    return first_ok && second == -1;
}

std::string jvector_to_json(const JVector& jv) {
    nlohmann::json out;
    out["n"] = jv.params.n;
    out["k"] = jv.params.k;
    out["N"] = jv.params.run_count;
    nlohmann::json blocks = nlohmann::json::array();
    TupleIndexer idx(jv.params.n, jv.params.k);
    for (std::uint32_t u : masks_h_order(jv.params.k)) {
        nlohmann::json b;
        const auto cols = mask_columns(u, jv.params.k);
        b["u"] = cols;
        nlohmann::json values = nlohmann::json::array();
        std::vector<int> tuple(jv.params.k, 0);
        long long support = 1;
        for (std::size_t i = 0; i < cols.size(); ++i) support *= jv.params.n;
        for (long long c = 0; c < support; ++c) {
            long long rest = c;
            for (auto it = cols.rbegin(); it != cols.rend(); ++it) {
                tuple[*it] = static_cast<int>(rest % jv.params.n);
                rest /= jv.params.n;
            }
            values.push_back(rational_str(jv.at(u, idx.rank(tuple))));
        }
        b["values_on_u"] = std::move(values);
        blocks.push_back(std::move(b));
    }
    out["blocks"] = std::move(blocks);
    return out.dump();
}

std::string signed_j_to_json(const SignedJVector& sj) {
    nlohmann::json out;
    out["k"] = sj.params.k;
    out["order"] = "h";
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : sj.entries) entries.push_back(rational_str(e));
    out["entries"] = std::move(entries);
    return out.dump();
}

}  // namespace oapoly

#include "oapoly/dims.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "oapoly/anova.hpp"
#include "oapoly/errors.hpp"

namespace oapoly {

OmegaSet compute_omega(const OAParams& params, bool force_general) {
    const bool paired = !force_general && params.n == 2 && params.s % 2 == 0;
    OmegaSet omega{params, paired ? OmegaMode::N2EvenS : OmegaMode::General, {}};
    if (params.k <= params.s) return omega;  // the (k,k) row: empty Omega, base dim 0
    if (paired) {
        for (int d = 0; d <= params.k - params.s - 1; d += 2)
            if (mod_euclid(Int(params.lambda) * binomial(params.s + d, d), 2) == 0)
                omega.members.push_back(d);
    } else {
        for (int l = 1; l <= params.k - params.s; ++l)
            if (mod_euclid(Int(params.lambda) * binomial(params.s + l - 1, l - 1), params.n) == 0)
                omega.members.push_back(l);
    }
    return omega;
}

Int base_dimension(const OAParams& params) {
    Int dim = pow_int(Int(params.n), params.k);
    for (int j = 0; j <= params.s; ++j)
        dim -= binomial(params.k, j) * pow_int(Int(params.n - 1), j);
    return dim;
}

std::vector<int> forced_block_sizes(const OAParams& params, OmegaMode mode,
                                    const std::vector<int>& T) {
    std::vector<int> sizes;
    for (int t : T) {
        if (mode == OmegaMode::General) {
            sizes.push_back(params.s + t);
        } else {
            if (params.s + t + 1 <= params.k) sizes.push_back(params.s + t + 1);
            if (params.s + t + 2 <= params.k) sizes.push_back(params.s + t + 2);
        }
    }
    std::sort(sizes.begin(), sizes.end());
    sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
    return sizes;
}

Int candidate_dimension(const OAParams& params, OmegaMode mode, const std::vector<int>& T) {
    Int dim = base_dimension(params);
    for (int t : T) {
        if (mode == OmegaMode::General) {
            dim -= binomial(params.k, params.s + t) * pow_int(Int(params.n - 1), params.s + t);
        } else {
            // C(k, m) = 0 for m > k handles the top pair
            dim -= binomial(params.k, params.s + t + 1) + binomial(params.k, params.s + t + 2);
        }
    }
    return dim;
}

DimReport candidate_dims(const OAParams& params, bool force_general) {
    OmegaSet omega = compute_omega(params, force_general);
    if (omega.members.size() > 20)
        throw ResourceError("candidate_dims: |Omega| > 20, subset lattice too large");
    DimReport report{params, omega, base_dimension(params), {}};

    // Subsets in (size, lex) order so the first candidate at a given
    // dimension carries the inclusion-minimal T.
    const int m = static_cast<int>(omega.members.size());
    std::set<Int> seen;
    for (int size = 0; size <= m; ++size) {
        for (const auto& picks : combinations_lex(m, size)) {
            std::vector<int> T;
            T.reserve(picks.size());
            for (int i : picks) T.push_back(omega.members[i]);
            Int dim = candidate_dimension(params, omega.mode, T);
            if (!seen.insert(dim).second) continue;
            report.candidates.push_back({T, std::move(dim), forced_block_sizes(params, omega.mode, T)});
        }
    }
    return report;
}

std::optional<Int> full_dim_if_nondivisible(const OAParams& params) {
    if (params.k <= params.s) return std::nullopt;
    OmegaSet omega = compute_omega(params, /*force_general=*/true);
    if (!omega.members.empty()) return std::nullopt;
    return base_dimension(params);
}

std::vector<ConstraintRow> constraint_family(const OAParams& params, const std::vector<int>& T,
                                             OmegaMode mode, long long ambient_cap) {
    if (mode == OmegaMode::N2EvenS && !(params.n == 2 && params.s % 2 == 0))
        throw InputError("constraint_family: paired mode needs n = 2 and even s");
    OmegaSet omega = compute_omega(params, mode == OmegaMode::General);
    for (int t : T)
        if (!std::binary_search(omega.members.begin(), omega.members.end(), t))
            throw InputError("constraint_family: T is not a subset of Omega");
    std::vector<ConstraintRow> rows;
    const auto sizes = forced_block_sizes(params, mode, T);
    if (sizes.empty()) return rows;
    if (params.cell_count() > ambient_cap)
        throw ResourceError("constraint_family: n^k exceeds the materialization cap");

    for (std::uint32_t u : masks_h_order(params.k)) {
        const int r = popcount32(u);
        if (!std::binary_search(sizes.begin(), sizes.end(), r)) continue;
        const auto cols = mask_columns(u, params.k);
        long long support = 1;
        for (int i = 0; i < r; ++i) support *= params.n;
        std::vector<int> tuple(params.k, 0);
        for (long long c = 0; c < support; ++c) {
            long long rest = c;
            for (auto it = cols.rbegin(); it != cols.rend(); ++it) {
                tuple[*it] = static_cast<int>(rest % params.n);
                rest /= params.n;
            }
            rows.push_back({u, tuple, j_row_coefficients(params, u, tuple)});
        }
    }
    return rows;
}

std::set<long long> method2_candidates(const std::vector<std::vector<Rat>>& eq_rows,
                                       const std::vector<Projector>& projectors,
                                       bool multiplicity_free) {
    if (!multiplicity_free) return {};  // the stop rule: output empty

    std::vector<Projector> surviving;
    for (const auto& p : projectors) {
        bool orthogonal = true;
        for (const auto& row : eq_rows) {
            if (row.size() != p.dim_ambient())
                throw InputError("method2: equality row width != projector dimension");
            std::vector<Rat> v(row.begin(), row.end());
            auto py = p.re.apply(v);
            if (std::any_of(py.begin(), py.end(), [](const Rat& x) { return x != 0; })) {
                orthogonal = false;
                break;
            }
            if (p.im) {
                auto iy = p.im->apply(v);
                if (std::any_of(iy.begin(), iy.end(), [](const Rat& x) { return x != 0; })) {
                    orthogonal = false;
                    break;
                }
            }
        }
        if (orthogonal) surviving.push_back(p);
    }

    const auto reals = method1_real_from_complex(surviving);
    long long total = 0;
    for (const auto& p : reals) total += p.rank;
    std::vector<char> reachable(static_cast<std::size_t>(total) + 1, 0);
    reachable[0] = 1;
    for (const auto& p : reals)
        for (long long v = total; v >= p.rank; --v)
            if (reachable[static_cast<std::size_t>(v - p.rank)]) reachable[static_cast<std::size_t>(v)] = 1;
    std::set<long long> out;
    for (long long v = 0; v <= total; ++v)
        if (reachable[static_cast<std::size_t>(v)]) out.insert(v);
    return out;
}

namespace {

nlohmann::json int_to_json(const Int& v) {
    static const Int js_max = (Int(1) << 53);
    if (abs(v) < js_max) return static_cast<long long>(v);
    return v.str();
}

}  // namespace

std::string dim_report_to_json(const DimReport& report) {
    nlohmann::json out;
    out["n"] = report.params.n;
    out["k"] = report.params.k;
    out["s"] = report.params.s;
    out["lambda"] = report.params.lambda;
    out["mode"] = report.omega.mode == OmegaMode::General ? "general" : "n2-even-s";
    out["omega"] = report.omega.members;
    out["base_dim"] = int_to_json(report.base_dim);
    nlohmann::json cands = nlohmann::json::array();
    for (const auto& c : report.candidates) {
        nlohmann::json jc;
        jc["T"] = c.T;
        jc["dimension"] = int_to_json(c.dimension);
        jc["forced_block_sizes"] = c.forced_sizes;
        cands.push_back(std::move(jc));
    }
    out["candidates"] = std::move(cands);
    return out.dump();
}

std::string constraint_family_to_json(const OAParams& params,
                                      const std::vector<ConstraintRow>& rows) {
    nlohmann::json out;
    out["n"] = params.n;
    out["k"] = params.k;
    out["s"] = params.s;
    out["lambda"] = params.lambda;
    nlohmann::json jrows = nlohmann::json::array();
    for (const auto& row : rows) {
        nlohmann::json jr;
        jr["u"] = mask_columns(row.u_mask, params.k);
        jr["tuple"] = row.tuple;
        nlohmann::json coeffs = nlohmann::json::array();
        for (std::size_t i = 0; i < row.coefficients.size(); ++i) {
            if (row.coefficients[i] == 0) continue;
            coeffs.push_back({static_cast<long long>(i), static_cast<long long>(row.coefficients[i])});
        }
        jr["coeffs"] = std::move(coeffs);
        jrows.push_back(std::move(jr));
    }
    out["rows"] = std::move(jrows);
    return out.dump();
}

}  // namespace oapoly

#include "oapoly/ild.hpp"

#include <ostream>

#include <nlohmann/json.hpp>

#include "oapoly/anova.hpp"
#include "oapoly/errors.hpp"
#include "oapoly/matrix.hpp"

namespace oapoly {

LinearSystem build_ild_marginal(const OAParams& params) {
    TupleIndexer idx(params.n, params.k);
    LinearSystem sys{params, idx.size(), {}};
    long long stuples = 1;
    for (int i = 0; i < params.s; ++i) stuples *= params.n;

    for (const auto& cols : combinations_lex(params.k, params.s)) {
        for (long long code = 0; code < stuples; ++code) {
            const auto symbols = tuple_unrank(code, params.n, params.s);
            SystemRow row;
            row.rhs = Rat(Int(params.lambda));
            for (long long r = 0; r < idx.size(); ++r) {
                bool match = true;
                for (std::size_t i = 0; i < cols.size(); ++i)
                    if (idx.digit(r, cols[i]) != symbols[i]) {
                        match = false;
                        break;
                    }
                if (match) row.coeffs.emplace_back(r, Int(1));
            }
            sys.rows.push_back(std::move(row));
        }
    }
    return sys;
}

LinearSystem build_ild_J(const OAParams& params) {
    TupleIndexer idx(params.n, params.k);
    LinearSystem sys{params, idx.size(), {}};

    SystemRow grand;
    grand.rhs = Rat(Int(params.run_count));  // J_empty = lambda * n^s
    grand.u_mask = 0;
    grand.tuple_rank = 0;
    for (long long r = 0; r < idx.size(); ++r) grand.coeffs.emplace_back(r, Int(1));
    sys.rows.push_back(std::move(grand));

    for (std::uint32_t u : masks_h_order(params.k)) {
        const int size = popcount32(u);
        if (size < 1 || size > params.s) continue;
        const auto cols = mask_columns(u, params.k);
        long long support = 1;
        for (int i = 0; i < size; ++i) support *= params.n;
        std::vector<int> tuple(params.k, 0);
        for (long long c = 0; c < support; ++c) {
            long long rest = c;
            for (auto it = cols.rbegin(); it != cols.rend(); ++it) {
                tuple[*it] = static_cast<int>(rest % params.n);
                rest /= params.n;
            }
            SystemRow row;
            row.rhs = 0;
            row.u_mask = u;
            row.tuple_rank = idx.rank(tuple);
            const auto coeffs = j_row_coefficients(params, u, tuple);
            for (long long r = 0; r < idx.size(); ++r)
                row.coeffs.emplace_back(r, coeffs[static_cast<std::size_t>(r)]);
            sys.rows.push_back(std::move(row));
        }
    }
    return sys;
}

namespace {

std::vector<std::vector<Int>> dense_rows_with_rhs(const LinearSystem& sys) {
    std::vector<std::vector<Int>> rows;
    rows.reserve(sys.rows.size());
    for (const auto& r : sys.rows) {
        std::vector<Int> dense(static_cast<std::size_t>(sys.nvars) + 1, Int(0));
        for (const auto& [var, c] : r.coeffs) dense[static_cast<std::size_t>(var)] = c;
        if (!is_integer(r.rhs)) throw InputError("system rank: non-integer rhs");
        dense.back() = to_integer(r.rhs);
        rows.push_back(std::move(dense));
    }
    return rows;
}

}  // namespace

int system_rank(const LinearSystem& sys) { return fraction_free_rank(dense_rows_with_rhs(sys)); }

bool check_equivalence(const LinearSystem& a, const LinearSystem& b) {
    if (a.nvars != b.nvars) throw InputError("check_equivalence: variable counts differ");
    auto rows_a = dense_rows_with_rhs(a);
    auto rows_b = dense_rows_with_rhs(b);
    const int rank_a = fraction_free_rank(rows_a);
    const int rank_b = fraction_free_rank(rows_b);
    if (rank_a != rank_b) return false;
    std::vector<std::vector<Int>> stacked = std::move(rows_a);
    stacked.insert(stacked.end(), std::make_move_iterator(rows_b.begin()),
                   std::make_move_iterator(rows_b.end()));
    return fraction_free_rank(std::move(stacked)) == rank_a;
}

namespace {

void emit_lp_text(const LinearSystem& sys, const std::vector<ConstraintRow>& extra,
                  std::ostream& out) {
    out << "# ild lp-text v1\n";
    out << "# n " << sys.params.n << " k " << sys.params.k << " s " << sys.params.s << " lambda "
        << sys.params.lambda << "\n";
    out << "# vars x_0 .. x_" << (sys.nvars - 1) << "\n";
    out << "subject_to\n";
    const auto write_term = [&out](const Int& c, long long var, bool first) {
        if (c >= 0)
            out << (first ? "+" : " +") << c.str();
        else
            out << (first ? "-" : " -") << Int(-c).str();
        out << " x_" << var;
    };
    for (const auto& row : sys.rows) {
        bool first = true;
        for (const auto& [var, c] : row.coeffs) {
            if (c == 0) continue;
            write_term(c, var, first);
            first = false;
        }
        if (first) out << "+0 x_0";
        out << " = " << rational_str(row.rhs) << "\n";
    }
    for (const auto& row : extra) {
        bool first = true;
        for (std::size_t var = 0; var < row.coefficients.size(); ++var) {
            if (row.coefficients[var] == 0) continue;
            write_term(row.coefficients[var], static_cast<long long>(var), first);
            first = false;
        }
        if (first) out << "+0 x_0";
        out << " = 0\n";
    }
    out << "bounds\n";
    out << "0 <= x_j <= " << sys.params.p_max << " for all j in [0," << sys.nvars << ")\n";
    out << "integers\nall\n";
}

void emit_json(const LinearSystem& sys, const std::vector<ConstraintRow>& extra, std::ostream& out) {
    nlohmann::json j;
    j["n"] = sys.params.n;
    j["k"] = sys.params.k;
    j["s"] = sys.params.s;
    j["lambda"] = sys.params.lambda;
    j["p_max"] = sys.params.p_max;
    j["nvars"] = sys.nvars;
    nlohmann::json rows = nlohmann::json::array();
    const auto push_row = [&rows](const nlohmann::json& coeffs, const std::string& rhs,
                                  const std::optional<std::vector<int>>& u,
                                  const std::optional<std::vector<int>>& tuple) {
        nlohmann::json r;
        r["coeffs"] = coeffs;
        r["rhs"] = rhs;
        if (u) r["u"] = *u;
        if (tuple) r["tuple"] = *tuple;
        rows.push_back(std::move(r));
    };
    TupleIndexer idx(sys.params.n, sys.params.k);
    for (const auto& row : sys.rows) {
        nlohmann::json coeffs = nlohmann::json::array();
        for (const auto& [var, c] : row.coeffs) {
            if (c == 0) continue;
            coeffs.push_back({var, c.str()});
        }
        std::optional<std::vector<int>> u, tuple;
        if (row.u_mask) u = mask_columns(*row.u_mask, sys.params.k);
        if (row.tuple_rank) tuple = idx.unrank(*row.tuple_rank);
        push_row(coeffs, rational_str(row.rhs), u, tuple);
    }
    for (const auto& row : extra) {
        nlohmann::json coeffs = nlohmann::json::array();
        for (std::size_t var = 0; var < row.coefficients.size(); ++var) {
            if (row.coefficients[var] == 0) continue;
            coeffs.push_back({static_cast<long long>(var), row.coefficients[var].str()});
        }
        push_row(coeffs, "0", mask_columns(row.u_mask, sys.params.k), row.tuple);
    }
    j["rows"] = std::move(rows);
    j["bounds"] = {{"lower", "0"}, {"upper", std::to_string(sys.params.p_max)}};
    j["integer"] = true;
    out << j.dump(2) << "\n";
}

}  // namespace

void emit(const LinearSystem& sys, const std::vector<ConstraintRow>& extra, EmitFormat format,
          std::ostream& out) {
    for (const auto& row : extra)
        if (static_cast<std::int64_t>(row.coefficients.size()) != sys.nvars)
            throw InputError("emit: extra row width != variable count");
    if (format == EmitFormat::LpText)
        emit_lp_text(sys, extra, out);
    else
        emit_json(sys, extra, out);
}

EmitFormat parse_emit_format(const std::string& name) {
    if (name == "lp-text") return EmitFormat::LpText;
    if (name == "json") return EmitFormat::Json;
    throw InputError("unsupported format '" + name + "' (expected lp-text or json)");
}

}  // namespace oapoly

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "oapoly/arrays.hpp"
#include "oapoly/dims.hpp"
#include "oapoly/numeric.hpp"

namespace oapoly {

enum class EmitFormat { LpText, Json };

struct SystemRow {
    std::vector<std::pair<std::int64_t, Int>> coeffs;  // (variable rank, coefficient), ascending
    Rat rhs;
    std::optional<std::uint32_t> u_mask;  // J-form rows carry their subset
    std::optional<std::int64_t> tuple_rank;
};

// Equality system over the n^k count variables with bounds [0, p_max] and
// integrality. Coefficients are exact integers (J rows carry the n^k-scaled
// forms), so emission is bit-stable and ranks are exact.
struct LinearSystem {
    OAParams params;
    std::int64_t nvars = 0;
    std::vector<SystemRow> rows;
};

// Marginal form: one 0/1 row per (s-subset of columns, s-tuple of symbols),
// each summing the counts over the free k-s coordinates; rhs lambda.
LinearSystem build_ild_marginal(const OAParams& params);

// J form: the all-ones row with rhs lambda * n^s, then J_u(tuple) = 0 for
// every u with 1 <= |u| <= s and every tuple over the u-support.
LinearSystem build_ild_J(const OAParams& params);

// True iff the affine row spaces coincide:
// rank(A|b) = rank(B|b) = rank of the stack, all exact.
bool check_equivalence(const LinearSystem& a, const LinearSystem& b);

int system_rank(const LinearSystem& sys);  // with rhs column appended

// Deterministic, byte-stable emission. Extra constraint-family rows are
// appended as zero-rhs equalities.
void emit(const LinearSystem& sys, const std::vector<ConstraintRow>& extra, EmitFormat format,
          std::ostream& out);

EmitFormat parse_emit_format(const std::string& name);  // "lp-text" | "json"

}  // namespace oapoly

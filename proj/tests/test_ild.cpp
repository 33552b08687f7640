#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "oapoly/dims.hpp"
#include "oapoly/errors.hpp"
#include "oapoly/ild.hpp"
#include "oapoly/oracle.hpp"

using namespace oapoly;

TEST_CASE("marginal system shapes") {
    const LinearSystem sys = build_ild_marginal(OAParams::make(2, 2, 1, 1));
    REQUIRE(sys.rows.size() == 4);  // 2 column choices x 2 symbols
    for (const auto& row : sys.rows) {
        CHECK(row.coeffs.size() == 2);
        CHECK(row.rhs == 1);
        for (const auto& [var, c] : row.coeffs) CHECK(c == 1);
    }

    const LinearSystem sys232 = build_ild_marginal(OAParams::make(2, 3, 2, 1));
    CHECK(sys232.rows.size() == 12);  // C(3,2) * 4
    for (const auto& row : sys232.rows) CHECK(row.coeffs.size() == 2);

    const LinearSystem total_only = build_ild_marginal(OAParams::make(3, 2, 0, 4));
    REQUIRE(total_only.rows.size() == 1);  // s = 0: the grand total
    CHECK(total_only.rows[0].coeffs.size() == 9);
    CHECK(total_only.rows[0].rhs == 4);
}

TEST_CASE("J system shapes") {
    const LinearSystem sys = build_ild_J(OAParams::make(2, 2, 1, 1));
    REQUIRE(sys.rows.size() == 5);  // J_empty + 2 subsets x 2 support tuples
    CHECK(sys.rows[0].rhs == 2);    // lambda * n^s
    for (const auto& [var, c] : sys.rows[0].coeffs) CHECK(c == 1);
    // the singleton rows are +-1 sign rows with zero rhs
    for (std::size_t i = 1; i < sys.rows.size(); ++i) {
        CHECK(sys.rows[i].rhs == 0);
        for (const auto& [var, c] : sys.rows[i].coeffs) CHECK((c == 1 || c == -1));
    }
}

TEST_CASE("row space ranks match the non-redundant count") {
    // rank(marginal) = rank(J) = sum_{j<=s} C(k,j)(n-1)^j
    for (const auto& [n, k, s] :
         std::vector<std::tuple<int, int, int>>{{2, 3, 2}, {3, 2, 1}, {2, 4, 2}, {3, 3, 2}}) {
        const OAParams p = OAParams::make(n, k, s, 2);
        Int expected = 0;
        for (int j = 0; j <= s; ++j) expected += binomial(k, j) * pow_int(Int(n - 1), j);
        CHECK(Int(system_rank(build_ild_marginal(p))) == expected);
        CHECK(Int(system_rank(build_ild_J(p))) == expected);
    }
    // (3,2,1): rank 1 + 2*2 = 5
    CHECK(system_rank(build_ild_J(OAParams::make(3, 2, 1, 1))) == 5);
}

TEST_CASE("marginal and J systems are affinely equivalent") {
    for (const auto& [n, k, s] :
         std::vector<std::tuple<int, int, int>>{{2, 3, 2}, {3, 2, 1}, {2, 4, 3}}) {
        const OAParams p = OAParams::make(n, k, s, 1);
        CHECK(check_equivalence(build_ild_marginal(p), build_ild_J(p)));
    }
    const LinearSystem marg = build_ild_marginal(OAParams::make(2, 3, 2, 1));
    CHECK(check_equivalence(marg, marg));
    CHECK_FALSE(check_equivalence(build_ild_marginal(OAParams::make(2, 3, 2, 1)),
                                  build_ild_marginal(OAParams::make(2, 3, 1, 2))));
}

TEST_CASE("enumerated solutions satisfy both systems; non-solutions violate one") {
    const OAParams p = OAParams::make(2, 3, 2, 1);
    const auto result = enumerate_all(p);
    REQUIRE(result.complete);
    const LinearSystem marg = build_ild_marginal(p);
    const LinearSystem jsys = build_ild_J(p);
    const auto satisfies = [](const LinearSystem& sys, const std::vector<long long>& x) {
        for (const auto& row : sys.rows) {
            Rat acc = 0;
            for (const auto& [var, c] : row.coeffs) acc += Rat(c) * Rat(Int(x[static_cast<std::size_t>(var)]));
            if (acc != row.rhs) return false;
        }
        return true;
    };
    for (const auto& sol : result.solutions) {
        CHECK(satisfies(marg, sol.counts));
        CHECK(satisfies(jsys, sol.counts));
    }
    // right total, wrong margins
    std::vector<long long> bad(8, 0);
    bad[0] = 4;
    CHECK_FALSE(satisfies(marg, bad));
    CHECK_FALSE(satisfies(jsys, bad));
    // random right-total vectors that are not solutions violate both systems
    std::mt19937 rng(64u);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<long long> x(8, 0);
        for (int i = 0; i < 4; ++i) ++x[rng() % 8];
        const bool is_solution =
            std::any_of(result.solutions.begin(), result.solutions.end(),
                        [&](const FrequencyVector& s) { return s.counts == x; });
        if (is_solution) continue;
        CHECK_FALSE(satisfies(marg, x));
        CHECK_FALSE(satisfies(jsys, x));
    }
}

TEST_CASE("emission is deterministic and appends families") {
    const OAParams p = OAParams::make(2, 4, 3, 2);
    const LinearSystem sys = build_ild_J(p);
    const auto family = constraint_family(p, {1}, OmegaMode::General);

    std::stringstream a, b;
    emit(sys, family, EmitFormat::LpText, a);
    emit(sys, family, EmitFormat::LpText, b);
    CHECK(a.str() == b.str());
    CHECK(a.str().find("= 0") != std::string::npos);
    CHECK(a.str().find("bounds") != std::string::npos);
    CHECK(a.str().find("integers") != std::string::npos);

    std::stringstream no_extra, with_extra;
    emit(sys, {}, EmitFormat::LpText, no_extra);
    emit(sys, family, EmitFormat::LpText, with_extra);
    const auto count_lines = [](const std::string& s) {
        return std::count(s.begin(), s.end(), '\n');
    };
    CHECK(count_lines(with_extra.str()) == count_lines(no_extra.str()) + 16);

    std::stringstream js;
    emit(sys, family, EmitFormat::Json, js);
    CHECK(js.str().find("\"integer\": true") != std::string::npos);
}

TEST_CASE("format parsing") {
    CHECK(parse_emit_format("lp-text") == EmitFormat::LpText);
    CHECK(parse_emit_format("json") == EmitFormat::Json);
    CHECK_THROWS_AS(parse_emit_format("mps"), InputError);
}

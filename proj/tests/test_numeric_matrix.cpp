#include <doctest.h>

#include <random>

#include "oapoly/errors.hpp"
#include "oapoly/matrix.hpp"
#include "oapoly/numeric.hpp"

using namespace oapoly;

namespace {

// Independent rank oracle: plain rational row-echelon reduction. Kept apart
// from the library's fraction-free elimination on purpose.
int rref_rank_oracle(std::vector<std::vector<Rat>> rows) {
    int rank = 0;
    if (rows.empty()) return 0;
    const std::size_t ncols = rows[0].size();
    std::size_t lead = 0;
    for (std::size_t r = 0; r < rows.size() && lead < ncols; ++lead) {
        std::size_t i = r;
        while (i < rows.size() && rows[i][lead] == 0) ++i;
        if (i == rows.size()) continue;
        std::swap(rows[r], rows[i]);
        const Rat piv = rows[r][lead];
        for (auto& v : rows[r]) v /= piv;
        for (std::size_t j = 0; j < rows.size(); ++j) {
            if (j == r || rows[j][lead] == 0) continue;
            const Rat f = rows[j][lead];
            for (std::size_t c = 0; c < ncols; ++c) rows[j][c] -= f * rows[r][c];
        }
        ++r;
        ++rank;
    }
    return rank;
}

}  // namespace

TEST_CASE("binomial values and edge cases") {
    CHECK(binomial(0, 0) == 1);
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(6, 6) == 1);
    CHECK(binomial(6, 7) == 0);
    CHECK(binomial(4, -1) == 0);
    CHECK(binomial(52, 26) == Int("495918532948104"));
}

TEST_CASE("mod_euclid is the true mathematical mod") {
    CHECK(mod_euclid(Int(7), 3) == 1);
    CHECK(mod_euclid(Int(-7), 3) == 2);
    CHECK(mod_euclid(Int(-1), 2) == 1);
    CHECK(mod_euclid(Int(0), 5) == 0);
}

TEST_CASE("rational parse/format round trip") {
    CHECK(rational_str(Rat(3, 4)) == "3/4");
    CHECK(rational_str(Rat(-8, 2)) == "-4");
    CHECK(parse_rational("3/4") == Rat(3, 4));
    CHECK(parse_rational("-12") == Rat(-12));
    CHECK(parse_rational("6/8") == Rat(3, 4));
    CHECK_THROWS_AS(parse_rational("1/0"), InputError);
    CHECK_THROWS_AS(parse_rational("x"), InputError);
}

TEST_CASE("masks_h_order lists subsets by size then lexicographically") {
    const auto masks = masks_h_order(3);
    REQUIRE(masks.size() == 8);
    CHECK(masks[0] == 0u);                       // {}
    CHECK(masks[1] == 0b001u);                   // {0}
    CHECK(masks[2] == 0b010u);                   // {1}
    CHECK(masks[3] == 0b100u);                   // {2}
    CHECK(masks[4] == 0b011u);                   // {0,1}
    CHECK(masks[5] == 0b101u);                   // {0,2}
    CHECK(masks[6] == 0b110u);                   // {1,2}
    CHECK(masks[7] == 0b111u);                   // {0,1,2}
    CHECK(combinations_lex(4, 2).size() == 6);
    CHECK(combinations_lex(4, 0) == std::vector<std::vector<int>>{{}});
    // {0,3} precedes {1,2} in lex order even though its mask integer is larger
    const auto m4 = masks_h_order(4);
    CHECK(m4[5 + 2] == columns_mask(std::vector<int>{0, 3}));
    CHECK(m4[5 + 3] == columns_mask(std::vector<int>{1, 2}));
}

TEST_CASE("matrix algebra basics") {
    RatMatrix a(2, 2);
    a(0, 0) = Rat(1, 2);
    a(0, 1) = Rat(1, 2);
    a(1, 0) = Rat(1, 2);
    a(1, 1) = Rat(1, 2);
    CHECK((a * a) == a);  // averaging projector
    CHECK(a.trace() == 1);
    CHECK(a.is_symmetric());
    const RatMatrix id = RatMatrix::identity(2);
    CHECK((id - a) * a == RatMatrix(2, 2));
    const RatMatrix kron = RatMatrix::kronecker(a, id);
    CHECK(kron.rows() == 4);
    CHECK(kron.trace() == 2);
    CHECK((kron * kron) == kron);
}

TEST_CASE("fraction-free rank agrees with the independent RREF oracle") {
    std::mt19937 rng(20240817u);
    std::uniform_int_distribution<int> entry(-4, 4);
    std::uniform_int_distribution<int> dim(1, 8);
    for (int trial = 0; trial < 200; ++trial) {
        const int m = dim(rng), n = dim(rng);
        std::vector<std::vector<Int>> mi(m, std::vector<Int>(n));
        std::vector<std::vector<Rat>> mr(m, std::vector<Rat>(n));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) {
                const int v = entry(rng);
                mi[i][j] = v;
                mr[i][j] = v;
            }
        CHECK(fraction_free_rank(mi) == rref_rank_oracle(mr));
    }
}

TEST_CASE("rank pivot rows form a row basis") {
    // duplicate and dependent rows must be skipped
    std::vector<std::vector<Int>> m = {
        {1, 2, 3}, {2, 4, 6}, {0, 1, 1}, {1, 3, 4}, {0, 0, 5}};
    std::vector<int> pivots;
    const int rank = fraction_free_rank(m, &pivots);
    CHECK(rank == 3);
    REQUIRE(pivots.size() == 3);
    CHECK(pivots[0] == 0);  // first pivot from column 0
}

TEST_CASE("rank of rational rows clears denominators first") {
    std::vector<std::vector<Rat>> rows = {{Rat(1, 2), Rat(1, 3)}, {Rat(3, 2), Rat(2, 1)}};
    CHECK(exact_rank(rows) == 2);
    rows[1] = {Rat(1, 4), Rat(1, 6)};  // scalar multiple of row 0
    CHECK(exact_rank(rows) == 1);
}

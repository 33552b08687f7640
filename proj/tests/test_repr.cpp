#include <doctest.h>

#include "oapoly/anova.hpp"
#include "oapoly/errors.hpp"
#include "oapoly/oracle.hpp"
#include "oapoly/repr.hpp"

using namespace oapoly;

namespace {

// Eigenprojectors of the cyclic shift on C^4: entries are Gaussian rationals.
// P_w = (1/4) sum_m w^{-m} S^m for eigenvalue w in {1, i, -1, -i}.
std::vector<Projector> cyclic4_eigenprojectors() {
    const int d = 4;
    // S^m as permutation powers; w^{-m} cycles through (re, im) pairs
    auto build = [&](int re0, int im0, int re1, int im1, int re2, int im2, int re3, int im3) {
        RatMatrix re(d, d), im(d, d);
        const int res[4] = {re0, re1, re2, re3};
        const int ims[4] = {im0, im1, im2, im3};
        for (int m = 0; m < 4; ++m) {
            for (int i = 0; i < d; ++i) {
                const int j = (i + m) % d;  // S^m maps e_i -> e_{i+m}
                re(j, i) += Rat(res[m], 4);
                im(j, i) += Rat(ims[m], 4);
            }
        }
        return im.is_zero() ? Projector::real(re) : Projector::complex(re, im);
    };
    // w = 1: coefficients 1,1,1,1
    // w = -1: 1,-1,1,-1
    // w = i: w^{-m} = (1, -i, -1, i)
    // w = -i: conjugate
    std::vector<Projector> out;
    out.push_back(build(1, 0, 1, 0, 1, 0, 1, 0));
    out.push_back(build(1, 0, -1, 0, 1, 0, -1, 0));
    out.push_back(build(1, 0, 0, -1, -1, 0, 0, 1));
    out.push_back(build(1, 0, 0, 1, -1, 0, 0, -1));
    return out;
}

}  // namespace

TEST_CASE("U projector ranks and completeness") {
    for (const auto& [n, k] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {2, 4}, {3, 3}}) {
        const DecompositionU dec = build_U_projectors(n, k);
        REQUIRE(static_cast<int>(dec.projectors.size()) == k + 1);
        RatMatrix sum(dec.projectors[0].dim_ambient(), dec.projectors[0].dim_ambient());
        for (int r = 0; r <= k; ++r) {
            const auto& p = dec.projectors[r];
            CHECK(Int(p.rank) == binomial(k, r) * pow_int(Int(n - 1), r));
            CHECK(p.is_valid());
            sum = sum + p.re;
        }
        CHECK(sum == RatMatrix::identity(sum.rows()));
        // pairwise orthogonal
        for (int r = 0; r <= k; ++r)
            for (int q = r + 1; q <= k; ++q)
                CHECK((dec.projectors[r].re * dec.projectors[q].re).is_zero());
    }
    CHECK(build_U_projectors(2, 2).projectors[1].rank == 2);
    CHECK(build_U_projectors(3, 2).projectors[1].rank == 4);
    CHECK(build_U_projectors(3, 2).projectors[2].rank == 4);
}

TEST_CASE("U_0 is the grand-mean projector") {
    const DecompositionU dec = build_U_projectors(2, 3);
    CHECK(dec.projectors[0].re == RatMatrix::constant(8, 8, Rat(1, 8)));
}

TEST_CASE("U projectors commute with the group generators") {
    for (const auto& [n, k] : std::vector<std::pair<int, int>>{{2, 3}, {3, 2}}) {
        const DecompositionU dec = build_U_projectors(n, k);
        for (const auto& g : giso_generators(n, k).elements) {
            const auto perm = tuple_permutation(g, n, k);
            for (const auto& p : dec.projectors) {
                // commutation <=> entries invariant under simultaneous permutation
                bool ok = true;
                for (std::size_t i = 0; i < perm.size() && ok; ++i)
                    for (std::size_t j = 0; j < perm.size(); ++j)
                        if (p.re(static_cast<std::size_t>(perm[i]), static_cast<std::size_t>(perm[j])) !=
                            p.re(i, j)) {
                            ok = false;
                            break;
                        }
                CHECK(ok);
            }
        }
    }
}

TEST_CASE("W projector dimensions") {
    {
        const DecompositionW w = build_W_projectors(3);
        REQUIRE(w.projectors.size() == 3);
        CHECK(w.projectors[0].rank == 1);
        CHECK(w.projectors[1].rank == 6);  // C(3,1)+C(3,2)
        CHECK(w.projectors[2].rank == 1);  // U_3 alone, k odd
    }
    {
        const DecompositionW w = build_W_projectors(4);
        REQUIRE(w.projectors.size() == 3);
        CHECK(w.projectors[0].rank == 1);
        CHECK(w.projectors[1].rank == 10);  // C(4,1)+C(4,2)
        CHECK(w.projectors[2].rank == 5);   // C(4,3)+C(4,4), k even
    }
    {
        const DecompositionW w = build_W_projectors(2);
        REQUIRE(w.projectors.size() == 2);
        CHECK(w.projectors[0].rank == 1);
        CHECK(w.projectors[1].rank == 3);  // U_1 + U_2 top block
    }
    // completeness and OD-generator commutation for k = 3
    const DecompositionW w = build_W_projectors(3);
    RatMatrix sum(8, 8);
    for (const auto& p : w.projectors) {
        CHECK(p.is_valid());
        sum = sum + p.re;
    }
    CHECK(sum == RatMatrix::identity(8));
    for (const auto& g : god_generators(3).elements) {
        const auto perm = tuple_permutation(g, 2, 3);
        for (const auto& p : w.projectors) {
            bool ok = true;
            for (std::size_t i = 0; i < perm.size() && ok; ++i)
                for (std::size_t j = 0; j < perm.size(); ++j)
                    if (p.re(static_cast<std::size_t>(perm[i]), static_cast<std::size_t>(perm[j])) !=
                        p.re(i, j)) {
                        ok = false;
                        break;
                    }
            CHECK(ok);
        }
    }
}

TEST_CASE("U projectors reconstruct the size-r J block sums") {
    FrequencyVector latin{OAParams::make(2, 3, 2, 1), {1, 0, 0, 1, 0, 1, 1, 0}};
    const JVector jv = anova_transform(latin);
    const DecompositionU dec = build_U_projectors(2, 3);
    const Rat nk(8);
    std::vector<Rat> x(8);
    for (int i = 0; i < 8; ++i) x[static_cast<std::size_t>(i)] = Rat(Int(latin.counts[static_cast<std::size_t>(i)]));
    for (int r = 0; r <= 3; ++r) {
        const auto proj = dec.projectors[static_cast<std::size_t>(r)].re.apply(x);
        for (int i = 0; i < 8; ++i) {
            Rat block_sum = 0;
            for (std::uint32_t u = 0; u < 8; ++u)
                if (popcount32(u) == r) block_sum += jv.at(u, i);
            CHECK(proj[static_cast<std::size_t>(i)] == block_sum / nk);
        }
    }
}

TEST_CASE("fixed_subspace_projector") {
    OrbitPartition singletons{3, {{0}, {1}, {2}}};
    CHECK(fixed_subspace_projector(singletons).re == RatMatrix::identity(3));

    OrbitPartition full{4, {{0, 1, 2, 3}}};
    CHECK(fixed_subspace_projector(full).re == RatMatrix::constant(4, 4, Rat(1, 4)));

    OrbitPartition two{5, {{0, 1}, {2, 3, 4}}};
    const Projector p = fixed_subspace_projector(two);
    CHECK(p.rank == 2);
    CHECK(p.is_valid());
    CHECK(p.re(0, 1) == Rat(1, 2));
    CHECK(p.re(2, 4) == Rat(1, 3));
    CHECK(p.re(0, 2) == 0);

    OrbitPartition broken{3, {{0, 1}}};
    CHECK_THROWS_AS(fixed_subspace_projector(broken), InputError);
    OrbitPartition overlapping{3, {{0, 1}, {1, 2}}};
    CHECK_THROWS_AS(fixed_subspace_projector(overlapping), InputError);
}

TEST_CASE("fixed projector of the pair partition has one dimension per class") {
    for (const auto& [k, n] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}}) {
        const Projector e = fixed_subspace_projector(hamming_orbits_X2(k, n));
        CHECK(e.rank == k + 1);
        CHECK(e.is_valid());
    }
    CHECK(fixed_subspace_projector(od_orbits_X2(3)).rank == 3);
}

TEST_CASE("method1 passes real families through") {
    const DecompositionU dec = build_U_projectors(2, 3);
    const auto out = method1_real_from_complex(dec.projectors);
    REQUIRE(out.size() == 4);
    for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i].re == dec.projectors[i].re);
}

TEST_CASE("method1 merges conjugate pairs") {
    const auto eigen = cyclic4_eigenprojectors();
    REQUIRE(eigen.size() == 4);
    CHECK(eigen[0].is_real());
    CHECK(eigen[1].is_real());
    CHECK_FALSE(eigen[2].is_real());
    CHECK(eigen[2].is_valid());
    CHECK(eigen[3].is_valid());
    const auto out = method1_real_from_complex(eigen);
    REQUIRE(out.size() == 3);
    CHECK(out[0].rank == 1);
    CHECK(out[1].rank == 1);
    CHECK(out[2].rank == 2);  // merged conjugate pair
    RatMatrix sum(4, 4);
    for (const auto& p : out) {
        CHECK(p.is_valid());
        sum = sum + p.re;
    }
    CHECK(sum == RatMatrix::identity(4));
    for (std::size_t i = 0; i < out.size(); ++i)
        for (std::size_t j = i + 1; j < out.size(); ++j)
            CHECK((out[i].re * out[j].re).is_zero());
}

TEST_CASE("method1 rejects an unpairable complex projector") {
    auto eigen = cyclic4_eigenprojectors();
    eigen.pop_back();  // drop the conjugate of the i-eigenprojector
    CHECK_THROWS_AS(method1_real_from_complex(eigen), InconsistencyError);
}

TEST_CASE("invariant_span_components") {
    const DecompositionU dec23 = build_U_projectors(2, 3);
    // single uniform point translates to zero
    FrequencyVector uniform{OAParams::make(2, 3, 3, 1), {1, 1, 1, 1, 1, 1, 1, 1}};
    CHECK(invariant_span_components({uniform}, dec23.projectors).empty());

    // the two OA(4,3,2,2) points: only U_3 present, dim 1
    FrequencyVector latin{OAParams::make(2, 3, 2, 1), {1, 0, 0, 1, 0, 1, 1, 0}};
    FrequencyVector other{OAParams::make(2, 3, 2, 1), {0, 1, 1, 0, 1, 0, 0, 1}};
    const auto present = invariant_span_components({latin, other}, dec23.projectors);
    CHECK(present == std::vector<int>{3});
    CHECK(dec23.projectors[3].rank == 1);

    // all 6 permutation matrices: only U_2, rank 4 = (n-1)^2
    const DecompositionU dec32 = build_U_projectors(3, 2);
    FrequencyVector identity3{OAParams::make(3, 2, 1, 1), {1, 0, 0, 0, 1, 0, 0, 0, 1}};
    const auto orbit = orbit_of_point(giso_generators(3, 2), identity3);
    REQUIRE(orbit.size() == 6);
    const auto present32 = invariant_span_components(orbit, dec32.projectors);
    CHECK(present32 == std::vector<int>{2});
    CHECK(dec32.projectors[2].rank == 4);

    CHECK_THROWS_AS(invariant_span_components({}, dec23.projectors), InputError);
}

TEST_CASE("span components of a full solution set sum to the affine dimension") {
    // order-3 Latin squares: strength 2 kills U_1 and U_2, U_0 dies in the
    // translation, so only U_3 remains and dim = rank(U_3) = 8
    const auto result = enumerate_all(OAParams::make(3, 3, 2, 1));
    REQUIRE(result.solutions.size() == 12);
    const DecompositionU dec = build_U_projectors(3, 3);
    const auto present = invariant_span_components(result.solutions, dec.projectors);
    CHECK(present == std::vector<int>{3});
    int total = 0;
    for (int r : present) total += dec.projectors[static_cast<std::size_t>(r)].rank;
    CHECK(total == affine_dimension(result.solutions).dimension);
}

TEST_CASE("projector JSON round trip") {
    const auto eigen = cyclic4_eigenprojectors();
    for (const auto& p : eigen) {
        const Projector back = projector_from_json(projector_to_json(p));
        CHECK(back.re == p.re);
        CHECK(back.rank == p.rank);
        CHECK(back.is_real() == p.is_real());
        if (p.im) CHECK(*back.im == *p.im);
    }
}

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "oapoly/anova.hpp"
#include "oapoly/errors.hpp"
#include "oapoly/groups.hpp"

using namespace oapoly;

namespace {

Paratopism random_paratopism(int n, int k, std::mt19937& rng) {
    Paratopism p = Paratopism::identity(n, k);
    for (auto& h : p.col_perms) std::shuffle(h.begin(), h.end(), rng);
    std::shuffle(p.col_shuffle.begin(), p.col_shuffle.end(), rng);
    return p;
}

FrequencyVector latin2() {
    return FrequencyVector{OAParams::make(2, 3, 2, 1), {1, 0, 0, 1, 0, 1, 1, 0}};
}

}  // namespace

TEST_CASE("apply_paratopism basics") {
    const Paratopism id = Paratopism::identity(2, 2);
    CHECK(apply_paratopism(id, std::vector<int>{0, 1}) == std::vector<int>{0, 1});

    Paratopism swap_col1 = Paratopism::identity(2, 2);
    std::swap(swap_col1.col_perms[0][0], swap_col1.col_perms[0][1]);
    CHECK(apply_paratopism(swap_col1, std::vector<int>{0, 1}) == std::vector<int>{1, 1});

    Paratopism colswap = Paratopism::identity(2, 2);
    std::swap(colswap.col_shuffle[0], colswap.col_shuffle[1]);
    CHECK(apply_paratopism(colswap, std::vector<int>{0, 1}) == std::vector<int>{1, 0});

    CHECK_THROWS_AS(apply_paratopism(id, std::vector<int>{0, 1, 0}), InputError);
}

TEST_CASE("paratopism composition follows the wreath-product law") {
    std::mt19937 rng(31u);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 3);
        const int k = 1 + static_cast<int>(rng() % 4);
        const Paratopism a = random_paratopism(n, k, rng);
        const Paratopism b = random_paratopism(n, k, rng);
        const Paratopism ab = compose(a, b);
        std::vector<int> t(k);
        for (auto& v : t) v = static_cast<int>(rng() % n);
        CHECK(apply_paratopism(ab, t) == apply_paratopism(a, apply_paratopism(b, t)));
    }
}

TEST_CASE("apply_remix") {
    CHECK(apply_remix(0, std::vector<int>{1, 1, 1}) == std::vector<int>{1, 1, 1});
    // k=3, j=2 (0-based 1), t=(-1,-1,1) -> (1,-1,-1)
    CHECK(apply_remix(1, std::vector<int>{-1, -1, 1}) == std::vector<int>{1, -1, -1});
    std::mt19937 rng(5u);
    for (int trial = 0; trial < 50; ++trial) {
        const int k = 1 + static_cast<int>(rng() % 5);
        const int j = static_cast<int>(rng() % k);
        std::vector<int> t(k);
        for (auto& v : t) v = (rng() % 2) ? 1 : -1;
        CHECK(apply_remix(j, apply_remix(j, t)) == t);  // involution
    }
    CHECK_THROWS_AS(apply_remix(0, std::vector<int>{0, 1}), UnsupportedAlphabetError);
}

TEST_CASE("orbit of the uniform vector is a fixed point") {
    const OAParams p = OAParams::make(2, 2, 2, 1);
    FrequencyVector uniform{p, {1, 1, 1, 1}};
    const auto orbit = orbit_of_point(giso_generators(2, 2), uniform);
    CHECK(orbit.size() == 1);
}

TEST_CASE("orbit of the order-2 Latin square has the two Latin squares") {
    const auto orbit = orbit_of_point(giso_generators(2, 3), latin2());
    REQUIRE(orbit.size() == 2);
    CHECK(orbit[0].counts == std::vector<long long>{0, 1, 1, 0, 1, 0, 0, 1});
    CHECK(orbit[1].counts == std::vector<long long>{1, 0, 0, 1, 0, 1, 1, 0});
}

TEST_CASE("orbit of a permutation matrix is all 6 of them") {
    FrequencyVector identity3{OAParams::make(3, 2, 1, 1), {1, 0, 0, 0, 1, 0, 0, 0, 1}};
    const auto orbit = orbit_of_point(giso_generators(3, 2), identity3);
    CHECK(orbit.size() == 6);
    for (const auto& fv : orbit) CHECK(check_strength_direct(fv, 1));
}

TEST_CASE("orbit cap raises a resource error") {
    FrequencyVector identity3{OAParams::make(3, 2, 1, 1), {1, 0, 0, 0, 1, 0, 0, 0, 1}};
    CHECK_THROWS_AS(orbit_of_point(giso_generators(3, 2), identity3, 3), ResourceError);
}

TEST_CASE("hamming_orbits_X2 class sizes") {
    const auto part = hamming_orbits_X2(2, 2);
    REQUIRE(part.classes.size() == 3);
    CHECK(part.classes[0].size() == 4);
    CHECK(part.classes[1].size() == 8);
    CHECK(part.classes[2].size() == 4);

    CHECK(hamming_orbits_X2(3, 2).classes.size() == 4);  // k+1 classes
    for (int n = 2; n <= 3; ++n)
        for (int k = 1; k <= 3; ++k) {
            const auto classes = hamming_orbits_X2(k, n).classes;
            TupleIndexer idx(n, k);
            CHECK(classes[0].size() == static_cast<std::size_t>(idx.size()));  // diagonal
        }
}

TEST_CASE("od_orbits_X2 pairs distances i and k+1-i") {
    CHECK(od_orbits_X2(3).classes.size() == 3);
    CHECK(od_orbits_X2(4).classes.size() == 3);
    CHECK(od_orbits_X2(2).classes.size() == 2);
    // k=4: classes {0}, {1,4}, {2,3}
    const auto part = od_orbits_X2(4);
    const auto ham = hamming_orbits_X2(4, 2);
    CHECK(part.classes[1].size() == ham.classes[1].size() + ham.classes[4].size());
    CHECK(part.classes[2].size() == ham.classes[2].size() + ham.classes[3].size());
    long long covered = 0;
    for (const auto& c : part.classes) covered += static_cast<long long>(c.size());
    CHECK(covered == part.domain_size);
}

TEST_CASE("hamming classes are unions of generator-closure orbits on pairs") {
    const int n = 3, k = 2;
    const auto part = hamming_orbits_X2(k, n);
    std::vector<std::vector<std::int32_t>> perms;
    for (const auto& g : giso_generators(n, k).elements)
        perms.push_back(tuple_permutation(g, n, k));
    TupleIndexer idx(n, k);
    const long long cells = idx.size();
    std::mt19937 rng(8u);
    for (int trial = 0; trial < 10; ++trial) {
        const long long r1 = rng() % cells, r2 = rng() % cells;
        // closure of the pair under the diagonal action stays in its class
        std::set<long long> seen{r1 * cells + r2};
        std::vector<std::pair<long long, long long>> frontier{{r1, r2}};
        while (!frontier.empty()) {
            auto [a, b] = frontier.back();
            frontier.pop_back();
            for (const auto& perm : perms) {
                const long long na = perm[static_cast<std::size_t>(a)];
                const long long nb = perm[static_cast<std::size_t>(b)];
                if (seen.insert(na * cells + nb).second) frontier.emplace_back(na, nb);
            }
        }
        int containing = -1;
        for (std::size_t c = 0; c < part.classes.size(); ++c)
            if (std::binary_search(part.classes[c].begin(), part.classes[c].end(), r1 * cells + r2))
                containing = static_cast<int>(c);
        REQUIRE(containing >= 0);
        for (long long pair : seen)
            CHECK(std::binary_search(part.classes[static_cast<std::size_t>(containing)].begin(),
                                     part.classes[static_cast<std::size_t>(containing)].end(), pair));
    }
}

TEST_CASE("burnside counts") {
    CHECK(burnside_orbit_count(giso_generators(2, 3), 2) == 4);  // k+1
    CHECK(burnside_orbit_count(god_generators(3), 2) == 3);      // ceil(k/2)+1
    // trivial group: the identity-only generator set
    GeneratorSet trivial{2, 3, {Paratopism::identity(2, 3)}};
    CHECK(burnside_orbit_count(trivial, 1) == 8);  // n^k singleton orbits
    CHECK(burnside_orbit_count(giso_generators(2, 3), 1) == 1);  // transitive on tuples
}

TEST_CASE("burnside orbit count is k+1 up to (k,n) = (4,3)") {
    for (int n = 2; n <= 3; ++n)
        for (int k = 2; k <= 4; ++k)
            CHECK(burnside_orbit_count(giso_generators(n, k), 2) == k + 1);
}

TEST_CASE("group orders") {
    CHECK(enumerate_group(giso_generators(2, 2)).size() == 8);    // (2!)^2 * 2!
    CHECK(enumerate_group(giso_generators(3, 2)).size() == 72);   // (3!)^2 * 2!
    for (int k = 2; k <= 4; ++k) {
        Int expected = pow_int(Int(2), k);
        for (int i = 2; i <= k + 1; ++i) expected *= i;
        CHECK(Int(enumerate_group(god_generators(k)).size()) == expected);  // (k+1)! 2^k
    }
    CHECK_THROWS_AS(enumerate_group(giso_generators(3, 2), 10), ResourceError);
}

TEST_CASE("generators preserve OA strength") {
    const auto gens = giso_generators(2, 3);
    std::vector<std::vector<std::int32_t>> perms;
    for (const auto& g : gens.elements) perms.push_back(tuple_permutation(g, 2, 3));
    for (const auto& perm : perms) {
        const FrequencyVector image = apply_to_frequency(perm, latin2());
        CHECK(check_strength_direct(image, 2));
    }
    // OD generators preserve strength when s is even (s = 2 here)
    for (const auto& g : god_generators(3).elements) {
        const FrequencyVector image = apply_to_frequency(tuple_permutation(g, 2, 3), latin2());
        CHECK(check_strength_direct(image, 2));
    }
}

TEST_CASE("OD words evaluate to tuple permutations") {
    std::mt19937 rng(17u);
    const int k = 3;
    for (int trial = 0; trial < 30; ++trial) {
        ODWord word = ODWord::identity(k);
        word.tail = random_paratopism(2, k, rng);
        const int len = static_cast<int>(rng() % 4);
        for (int i = 0; i < len; ++i) word.remix_columns.push_back(static_cast<int>(rng() % k));
        const auto perm = tuple_permutation(word, k);
        // independent evaluation through the element-wise apply functions
        TupleIndexer idx(2, k);
        for (long long r = 0; r < idx.size(); ++r) {
            std::vector<int> t = apply_paratopism(word.tail, idx.unrank(r));
            std::vector<int> pm(k);
            for (int j = 0; j < k; ++j) pm[j] = 2 * t[j] - 1;
            for (int col : word.remix_columns) pm = apply_remix(col, pm);
            for (int j = 0; j < k; ++j) t[j] = (pm[j] + 1) / 2;
            CHECK(perm[static_cast<std::size_t>(r)] == idx.rank(t));
        }
        // a permutation: every image hit once
        std::vector<char> seen(perm.size(), 0);
        for (auto v : perm) seen[static_cast<std::size_t>(v)] = 1;
        CHECK(std::all_of(seen.begin(), seen.end(), [](char c) { return c == 1; }));
    }
}

TEST_CASE("generator JSON round trip") {
    const auto gens = god_generators(2);
    const auto text = generators_to_json(gens);
    const GeneratorSet back = generators_from_json(text, 2, 2);
    REQUIRE(back.elements.size() == gens.elements.size());
    CHECK(generators_to_json(back) == text);
    CHECK_THROWS_AS(generators_from_json("{", 2, 2), InputError);
    CHECK_THROWS_AS(generators_from_json("[{\"R\":5}]", 2, 2), InputError);
    CHECK_THROWS_AS(generators_from_json("[{\"R\":0}]", 3, 2), UnsupportedAlphabetError);
}

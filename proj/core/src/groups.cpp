#include "oapoly/groups.hpp"

#include <algorithm>
#include <set>

#include <nlohmann/json.hpp>

#include "oapoly/errors.hpp"

namespace oapoly {

Paratopism Paratopism::identity(int n, int k) {
    Paratopism p;
    p.col_perms.assign(k, std::vector<int>(n));
    for (auto& perm : p.col_perms)
        for (int i = 0; i < n; ++i) perm[i] = i;
    p.col_shuffle.resize(k);
    for (int j = 0; j < k; ++j) p.col_shuffle[j] = j;
    return p;
}

namespace {

bool is_permutation(const std::vector<int>& p) {
    std::vector<char> seen(p.size(), 0);
    for (int v : p) {
        if (v < 0 || v >= static_cast<int>(p.size()) || seen[v]) return false;
        seen[v] = 1;
    }
    return true;
}

void validate(const Paratopism& p, int k) {
    if (static_cast<int>(p.col_perms.size()) != k || static_cast<int>(p.col_shuffle.size()) != k)
        throw InputError("paratopism: expected k column permutations and a k-column shuffle");
    if (!is_permutation(p.col_shuffle)) throw InputError("paratopism: col_shuffle is not a bijection");
    for (const auto& h : p.col_perms)
        if (!is_permutation(h)) throw InputError("paratopism: a symbol map is not a bijection");
}

std::vector<int> invert(const std::vector<int>& p) {
    std::vector<int> inv(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) inv[p[i]] = static_cast<int>(i);
    return inv;
}

}  // namespace

std::vector<int> apply_paratopism(const Paratopism& p, std::span<const int> tuple) {
    const int k = static_cast<int>(p.col_shuffle.size());
    if (static_cast<int>(tuple.size()) != k) throw InputError("apply_paratopism: tuple length mismatch");
    validate(p, k);
    const auto g_inv = invert(p.col_shuffle);
    std::vector<int> out(k);
    for (int j = 0; j < k; ++j) {
        const int sym = tuple[g_inv[j]];
        if (sym < 0 || sym >= static_cast<int>(p.col_perms[j].size()))
            throw InputError("apply_paratopism: symbol out of range");
        out[j] = p.col_perms[j][sym];
    }
    return out;
}

std::vector<int> apply_remix(int column, std::span<const int> pm_tuple) {
    const int k = static_cast<int>(pm_tuple.size());
    if (column < 0 || column >= k) throw InputError("apply_remix: column out of range");
    for (int v : pm_tuple)
        if (v != 1 && v != -1) throw UnsupportedAlphabetError("apply_remix: tuple must be +-1 encoded");
    std::vector<int> out(pm_tuple.begin(), pm_tuple.end());
    for (int i = 0; i < k; ++i)
        if (i != column) out[i] = pm_tuple[i] * pm_tuple[column];
    return out;
}

Paratopism compose(const Paratopism& a, const Paratopism& b) {
    const int k = static_cast<int>(a.col_shuffle.size());
    if (static_cast<int>(b.col_shuffle.size()) != k) throw InputError("compose: k mismatch");
    validate(a, k);
    validate(b, k);
    // (a o b)(t)_j = h^a_j( (b t)_{g_a^{-1}(j)} ) = h^a_j( h^b_{g_a^{-1}(j)}( t_{g_b^{-1}(g_a^{-1}(j))} ) )
    Paratopism out;
    out.col_shuffle.resize(k);
    out.col_perms.resize(k);
    const auto ga_inv = invert(a.col_shuffle);
    for (int j = 0; j < k; ++j) {
        out.col_shuffle[j] = a.col_shuffle[b.col_shuffle[j]];
        const auto& hb = b.col_perms[ga_inv[j]];
        const auto& ha = a.col_perms[j];
        std::vector<int> h(hb.size());
        for (std::size_t s = 0; s < hb.size(); ++s) h[s] = ha[hb[s]];
        out.col_perms[j] = std::move(h);
    }
    return out;
}

std::vector<std::int32_t> tuple_permutation(const GroupElement& g, int n, int k) {
    TupleIndexer idx(n, k);
    const long long cells = idx.size();
    std::vector<std::int32_t> perm(static_cast<std::size_t>(cells));
    if (std::holds_alternative<ColumnRemix>(g) && n != 2)
        throw UnsupportedAlphabetError("tuple_permutation: column remix requires n = 2");
    for (long long r = 0; r < cells; ++r) {
        const auto t = idx.unrank(r);
        std::vector<int> image;
        if (const auto* p = std::get_if<Paratopism>(&g)) {
            image = apply_paratopism(*p, t);
        } else {
            const int col = std::get<ColumnRemix>(g).column;
            std::vector<int> pm(k);
            for (int j = 0; j < k; ++j) pm[j] = 2 * t[j] - 1;
            const auto pm_out = apply_remix(col, pm);
            image.resize(k);
            for (int j = 0; j < k; ++j) image[j] = (pm_out[j] + 1) / 2;
        }
        perm[static_cast<std::size_t>(r)] = static_cast<std::int32_t>(idx.rank(image));
    }
    return perm;
}

std::vector<std::int32_t> tuple_permutation(const ODWord& word, int k) {
    auto perm = tuple_permutation(GroupElement{word.tail}, 2, k);
    for (int col : word.remix_columns) {
        const auto rperm = tuple_permutation(GroupElement{ColumnRemix{col}}, 2, k);
        for (auto& image : perm) image = rperm[static_cast<std::size_t>(image)];
    }
    return perm;
}

GeneratorSet giso_generators(int n, int k) {
    GeneratorSet gens{n, k, {}};
    for (int j = 0; j + 1 < k; ++j) {
        Paratopism p = Paratopism::identity(n, k);
        std::swap(p.col_shuffle[j], p.col_shuffle[j + 1]);
        gens.elements.emplace_back(std::move(p));
    }
    for (int j = 0; j < k; ++j) {
        Paratopism swap01 = Paratopism::identity(n, k);
        std::swap(swap01.col_perms[j][0], swap01.col_perms[j][1]);
        gens.elements.emplace_back(std::move(swap01));
        if (n > 2) {
            Paratopism cyc = Paratopism::identity(n, k);
            for (int s = 0; s < n; ++s) cyc.col_perms[j][s] = (s + 1) % n;
            gens.elements.emplace_back(std::move(cyc));
        }
    }
    return gens;
}

GeneratorSet god_generators(int k) {
    GeneratorSet gens = giso_generators(2, k);
    for (int j = 0; j < k; ++j) gens.elements.emplace_back(ColumnRemix{j});
    return gens;
}

FrequencyVector apply_to_frequency(const std::vector<std::int32_t>& perm, const FrequencyVector& fv) {
    if (perm.size() != fv.counts.size()) throw InputError("apply_to_frequency: size mismatch");
    FrequencyVector out{fv.params, std::vector<long long>(fv.counts.size(), 0)};
    for (std::size_t r = 0; r < perm.size(); ++r)
        out.counts[static_cast<std::size_t>(perm[r])] = fv.counts[r];
    return out;
}

std::vector<FrequencyVector> orbit_of_point(const GeneratorSet& gens, const FrequencyVector& fv,
                                            std::size_t orbit_cap) {
    std::vector<std::vector<std::int32_t>> perms;
    perms.reserve(gens.elements.size());
    for (const auto& g : gens.elements) perms.push_back(tuple_permutation(g, gens.n, gens.k));

    std::set<std::vector<long long>> seen;
    seen.insert(fv.counts);
    std::vector<std::vector<long long>> frontier{fv.counts};
    while (!frontier.empty()) {
        std::vector<std::vector<long long>> next;
        for (const auto& counts : frontier) {
            for (const auto& perm : perms) {
                std::vector<long long> image(counts.size());
                for (std::size_t r = 0; r < perm.size(); ++r)
                    image[static_cast<std::size_t>(perm[r])] = counts[r];
                if (seen.insert(image).second) {
                    if (seen.size() > orbit_cap) throw ResourceError("orbit_of_point: orbit cap exceeded");
                    next.push_back(std::move(image));
                }
            }
        }
        frontier = std::move(next);
    }
    std::vector<FrequencyVector> orbit;
    orbit.reserve(seen.size());
    for (auto& counts : seen) orbit.push_back(FrequencyVector{fv.params, counts});
    return orbit;  // std::set iteration is already the canonical (lex) order
}

namespace {

int hamming(long long r1, long long r2, const TupleIndexer& idx) {
    int d = 0;
    for (int j = 0; j < idx.k(); ++j)
        if (idx.digit(r1, j) != idx.digit(r2, j)) ++d;
    return d;
}

}  // namespace

OrbitPartition hamming_orbits_X2(int k, int n, long long pair_cap) {
    TupleIndexer idx(n, k);
    const long long cells = idx.size();
    if (cells > pair_cap / cells) throw ResourceError("hamming_orbits_X2: pair table over budget");
    OrbitPartition part{cells * cells, std::vector<std::vector<long long>>(k + 1)};
    for (long long r1 = 0; r1 < cells; ++r1)
        for (long long r2 = 0; r2 < cells; ++r2)
            part.classes[hamming(r1, r2, idx)].push_back(r1 * cells + r2);
    return part;
}

OrbitPartition od_orbits_X2(int k, long long pair_cap) {
    const OrbitPartition ham = hamming_orbits_X2(k, 2, pair_cap);
    OrbitPartition part{ham.domain_size, {}};
    part.classes.push_back(ham.classes[0]);  // diagonal
    for (int i = 1; i <= (k + 1) / 2; ++i) {
        std::vector<long long> cls = ham.classes[i];
        const int partner = k + 1 - i;
        if (partner != i && partner <= k) {
            cls.insert(cls.end(), ham.classes[partner].begin(), ham.classes[partner].end());
            std::sort(cls.begin(), cls.end());
        }
        part.classes.push_back(std::move(cls));
    }
    return part;
}

std::vector<std::vector<std::int32_t>> enumerate_group(const GeneratorSet& gens,
                                                       std::size_t order_cap) {
    const long long cells = TupleIndexer(gens.n, gens.k).size();
    std::vector<std::int32_t> id(static_cast<std::size_t>(cells));
    for (long long r = 0; r < cells; ++r) id[static_cast<std::size_t>(r)] = static_cast<std::int32_t>(r);

    std::vector<std::vector<std::int32_t>> gen_perms;
    for (const auto& g : gens.elements) gen_perms.push_back(tuple_permutation(g, gens.n, gens.k));

    std::set<std::vector<std::int32_t>> seen{id};
    std::vector<std::vector<std::int32_t>> frontier{id};
    while (!frontier.empty()) {
        std::vector<std::vector<std::int32_t>> next;
        for (const auto& p : frontier) {
            for (const auto& g : gen_perms) {
                std::vector<std::int32_t> q(p.size());
                for (std::size_t r = 0; r < p.size(); ++r) q[r] = g[p[r]];
                if (seen.insert(q).second) {
                    if (seen.size() > order_cap) throw ResourceError("enumerate_group: order cap exceeded");
                    next.push_back(std::move(q));
                }
            }
        }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

Int burnside_orbit_count(const GeneratorSet& gens, int exponent, std::size_t order_cap) {
    if (exponent < 1) throw InputError("burnside_orbit_count: exponent must be >= 1");
    const auto group = enumerate_group(gens, order_cap);
    Int total = 0;
    for (const auto& p : group) {
        long long fixed = 0;
        for (std::size_t r = 0; r < p.size(); ++r)
            if (p[r] == static_cast<std::int32_t>(r)) ++fixed;
        total += pow_int(Int(fixed), exponent);
    }
    const Int order = Int(group.size());
    if (total % order != 0) throw Error("burnside_orbit_count: sum not divisible by group order");
    return total / order;
}

std::string generators_to_json(const GeneratorSet& gens) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& g : gens.elements) {
        if (const auto* p = std::get_if<Paratopism>(&g)) {
            nlohmann::json e;
            e["col_perms"] = p->col_perms;
            e["col_shuffle"] = p->col_shuffle;
            arr.push_back(std::move(e));
        } else {
            arr.push_back(nlohmann::json{{"R", std::get<ColumnRemix>(g).column}});
        }
    }
    return arr.dump();
}

GeneratorSet generators_from_json(const std::string& text, int n, int k) {
    nlohmann::json arr;
    try {
        arr = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("generator JSON: ") + e.what());
    }
    if (!arr.is_array()) throw InputError("generator JSON: expected a list");
    GeneratorSet gens{n, k, {}};
    for (const auto& e : arr) {
        if (e.contains("R")) {
            const int col = e.at("R").get<int>();
            if (n != 2) throw UnsupportedAlphabetError("generator JSON: R operations need n = 2");
            if (col < 0 || col >= k) throw InputError("generator JSON: R column out of range");
            gens.elements.emplace_back(ColumnRemix{col});
            continue;
        }
        Paratopism p;
        p.col_perms = e.at("col_perms").get<std::vector<std::vector<int>>>();
        p.col_shuffle = e.at("col_shuffle").get<std::vector<int>>();
        validate(p, k);
        for (const auto& h : p.col_perms)
            if (static_cast<int>(h.size()) != n) throw InputError("generator JSON: symbol map size != n");
        gens.elements.emplace_back(std::move(p));
    }
    return gens;
}

}  // namespace oapoly

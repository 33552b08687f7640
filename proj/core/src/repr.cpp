#include "oapoly/repr.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "oapoly/errors.hpp"

namespace oapoly {

Projector Projector::real(RatMatrix m) {
    Projector p;
    Rat t = m.trace();
    if (!is_integer(t)) throw InputError("projector: trace is not an integer");
    p.rank = static_cast<int>(to_integer(t));
    p.re = std::move(m);
    return p;
}

Projector Projector::complex(RatMatrix re, RatMatrix im) {
    if (im.is_zero()) return real(std::move(re));
    Projector p;
    Rat t = re.trace();  // trace of the imaginary part must vanish for P = P*
    if (!is_integer(t)) throw InputError("projector: trace is not an integer");
    p.rank = static_cast<int>(to_integer(t));
    p.re = std::move(re);
    p.im = std::move(im);
    return p;
}

bool Projector::is_valid() const {
    if (!re.is_symmetric()) return false;
    if (!im) {
        return re * re == re;
    }
    if (!im->is_antisymmetric()) return false;
    // (re + i im)^2 = re^2 - im^2 + i (re im + im re)
    if (re * re - *im * *im != re) return false;
    return re * *im + *im * re == *im;
}

DecompositionU build_U_projectors(int n, int k, long long ambient_cap) {
    TupleIndexer idx(n, k);
    if (idx.size() > ambient_cap) throw ResourceError("build_U_projectors: n^k exceeds ambient cap");
    const std::size_t cells = static_cast<std::size_t>(idx.size());

    const RatMatrix mean = RatMatrix::constant(n, n, Rat(1, n));  // M_0, rank 1
    const RatMatrix centered = RatMatrix::identity(n) - mean;     // M_1, rank n-1

    std::vector<RatMatrix> sums(static_cast<std::size_t>(k) + 1, RatMatrix(cells, cells));
    for (std::uint32_t u = 0; u < (1u << k); ++u) {
        RatMatrix acc = (u & 1u) ? centered : mean;
        for (int j = 1; j < k; ++j) acc = RatMatrix::kronecker(acc, (u >> j & 1u) ? centered : mean);
        sums[popcount32(u)] = sums[popcount32(u)] + acc;
    }

    DecompositionU dec{n, k, {}};
    dec.projectors.reserve(k + 1);
    for (int r = 0; r <= k; ++r) dec.projectors.push_back(Projector::real(std::move(sums[r])));
    return dec;
}

DecompositionW build_W_projectors(int k, long long ambient_cap) {
    DecompositionU u = build_U_projectors(2, k, ambient_cap);
    DecompositionW w{k, {}};
    w.projectors.push_back(u.projectors[0]);
    const int top = (k + 1) / 2;
    for (int j = 1; j < top; ++j)
        w.projectors.push_back(Projector::real(u.projectors[2 * j - 1].re + u.projectors[2 * j].re));
    if (top >= 1) {
        if (k % 2 == 0)
            w.projectors.push_back(Projector::real(u.projectors[k - 1].re + u.projectors[k].re));
        else
            w.projectors.push_back(u.projectors[k]);
    }
    return w;
}

Projector fixed_subspace_projector(const OrbitPartition& orbits) {
    const std::size_t d = static_cast<std::size_t>(orbits.domain_size);
    std::vector<char> covered(d, 0);
    RatMatrix e(d, d);
    for (const auto& cls : orbits.classes) {
        if (cls.empty()) continue;
        const Rat v(1, Int(cls.size()));
        for (long long i : cls) {
            if (i < 0 || i >= orbits.domain_size || covered[static_cast<std::size_t>(i)])
                throw InputError("fixed_subspace_projector: classes do not partition the index set");
            covered[static_cast<std::size_t>(i)] = 1;
        }
        for (long long i : cls)
            for (long long j : cls) e(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = v;
    }
    for (char c : covered)
        if (!c) throw InputError("fixed_subspace_projector: classes do not cover the index set");
    return Projector::real(std::move(e));
}

std::vector<Projector> method1_real_from_complex(const std::vector<Projector>& projectors) {
    std::vector<Projector> out;
    std::vector<char> consumed(projectors.size(), 0);
    for (std::size_t i = 0; i < projectors.size(); ++i) {
        if (projectors[i].is_real()) {
            out.push_back(Projector::real(projectors[i].re));
            consumed[i] = 1;
        }
    }
    for (std::size_t i = 0; i < projectors.size(); ++i) {
        if (consumed[i]) continue;
        for (std::size_t j = i + 1; j < projectors.size(); ++j) {
            if (consumed[j] || projectors[j].is_real()) continue;
            if (projectors[i].rank != projectors[j].rank) continue;
            if (!(*projectors[i].im + *projectors[j].im).is_zero()) continue;
            out.push_back(Projector::real(projectors[i].re + projectors[j].re));
            consumed[i] = consumed[j] = 1;
            break;
        }
        if (!consumed[i])
            throw InconsistencyError(
                "method1: a complex projector has no conjugate partner; "
                "the family is not a multiplicity-free decomposition");
    }
    return out;
}

std::vector<int> invariant_span_components(const std::vector<FrequencyVector>& points,
                                           const std::vector<Projector>& decomposition) {
    if (points.empty()) throw InputError("invariant_span_components: empty point list");
    const OAParams& p = points.front().params;
    const std::size_t cells = static_cast<std::size_t>(p.cell_count_ll());
    for (const auto& proj : decomposition)
        if (proj.dim_ambient() != cells)
            throw InputError("invariant_span_components: projector dimension != n^k");

    const Rat shift(Int(p.run_count), pow_int(Int(p.n), p.k));  // lambda n^s / n^k
    std::vector<int> present;
    std::vector<char> found(decomposition.size(), 0);
    for (const auto& point : points) {
        if (point.counts.size() != cells)
            throw InputError("invariant_span_components: point length mismatch");
        std::vector<Rat> y(cells);
        for (std::size_t i = 0; i < cells; ++i) y[i] = Rat(Int(point.counts[i])) - shift;
        for (std::size_t r = 0; r < decomposition.size(); ++r) {
            if (found[r]) continue;
            auto proj_y = decomposition[r].re.apply(y);
            bool nonzero = std::any_of(proj_y.begin(), proj_y.end(), [](const Rat& v) { return v != 0; });
            if (!nonzero && decomposition[r].im) {
                auto im_y = decomposition[r].im->apply(y);
                nonzero = std::any_of(im_y.begin(), im_y.end(), [](const Rat& v) { return v != 0; });
            }
            if (nonzero) found[r] = 1;
        }
    }
    for (std::size_t r = 0; r < decomposition.size(); ++r)
        if (found[r]) present.push_back(static_cast<int>(r));
    return present;
}

namespace {

nlohmann::json matrix_to_json(const RatMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rational_str(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

RatMatrix matrix_from_json(const nlohmann::json& rows) {
    if (!rows.is_array() || rows.empty()) throw InputError("projector JSON: bad matrix");
    RatMatrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols()) throw InputError("projector JSON: ragged matrix");
        for (std::size_t j = 0; j < m.cols(); ++j)
            m(i, j) = parse_rational(rows[i][j].get<std::string>());
    }
    return m;
}

}  // namespace

std::string projector_to_json(const Projector& p) {
    nlohmann::json out;
    out["dim"] = p.dim_ambient();
    out["rank"] = p.rank;
    out["re"] = matrix_to_json(p.re);
    if (p.im) out["im"] = matrix_to_json(*p.im);
    return out.dump();
}

Projector projector_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("projector JSON: ") + e.what());
    }
    RatMatrix re = matrix_from_json(j.at("re"));
    if (j.contains("im")) return Projector::complex(std::move(re), matrix_from_json(j.at("im")));
    return Projector::real(std::move(re));
}

}  // namespace oapoly

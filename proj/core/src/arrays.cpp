#include "oapoly/arrays.hpp"

#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "oapoly/errors.hpp"

namespace oapoly {

OAParams OAParams::make(int n, int k, int s, long long lambda, std::optional<long long> p_max) {
    if (n < 2) throw InputError("OAParams: n must be >= 2");
    if (k < 1) throw InputError("OAParams: k must be >= 1");
    if (s < 0 || s > k) throw InputError("OAParams: strength must satisfy 0 <= s <= k");
    if (lambda < 1) throw InputError("OAParams: lambda must be >= 1");
    Int runs = Int(lambda) * pow_int(Int(n), s);
    if (runs > std::numeric_limits<long long>::max())
        throw InputError("OAParams: run count lambda*n^s overflows");
    OAParams p;
    p.n = n;
    p.k = k;
    p.s = s;
    p.lambda = lambda;
    p.p_max = p_max.value_or(lambda);  // lambda is always a valid per-cell cap
    p.run_count = static_cast<long long>(runs);
    if (p.p_max < 1 || p.p_max > lambda) throw InputError("OAParams: p_max must satisfy 1 <= p_max <= lambda");
    return p;
}

long long OAParams::cell_count_ll() const {
    Int c = cell_count();
    if (c > (Int(1) << 40)) throw ResourceError("cell count n^k too large to materialize");
    return static_cast<long long>(c);
}

long long tuple_rank(std::span<const int> digits, int n) {
    long long r = 0;
    for (int d : digits) {
        if (d < 0 || d >= n) throw InputError("tuple_rank: digit out of range");
        r = r * n + d;
    }
    return r;
}

std::vector<int> tuple_unrank(long long rank, int n, int k) {
    if (rank < 0) throw InputError("tuple_unrank: negative rank");
    std::vector<int> digits(k);
    for (int j = k - 1; j >= 0; --j) {
        digits[j] = static_cast<int>(rank % n);
        rank /= n;
    }
    if (rank != 0) throw InputError("tuple_unrank: rank out of range");
    return digits;
}

TupleIndexer::TupleIndexer(int n, int k) : n_(n), k_(k), pw_(k) {
    if (n < 2 || k < 1) throw InputError("TupleIndexer: need n >= 2, k >= 1");
    long long p = 1;
    for (int j = k - 1; j >= 0; --j) {
        pw_[j] = p;
        if (p > std::numeric_limits<long long>::max() / n)
            throw ResourceError("TupleIndexer: n^k overflows");
        p *= n;
    }
    size_ = p;
}

long long TupleIndexer::rank(std::span<const int> digits) const {
    if (static_cast<int>(digits.size()) != k_) throw InputError("TupleIndexer: wrong word length");
    return tuple_rank(digits, n_);
}

std::vector<int> TupleIndexer::unrank(long long r) const {
    if (r < 0 || r >= size_) throw InputError("TupleIndexer: rank out of range");
    return tuple_unrank(r, n_, k_);
}

long long FrequencyVector::total() const {
    return std::accumulate(counts.begin(), counts.end(), 0LL);
}

FrequencyVector array_to_frequency(const SymbolArray& arr, const OAParams& params) {
    if (arr.k != params.k || arr.n != params.n)
        throw InputError("array_to_frequency: array alphabet/shape does not match parameters");
    if (static_cast<long long>(arr.rows.size()) != params.run_count)
        throw InputError("array_to_frequency: row count " + std::to_string(arr.rows.size()) +
                         " != N = " + std::to_string(params.run_count));
    FrequencyVector fv{params, std::vector<long long>(static_cast<std::size_t>(params.cell_count_ll()), 0)};
    for (const auto& row : arr.rows) {
        if (static_cast<int>(row.size()) != params.k)
            throw InputError("array_to_frequency: ragged row");
        ++fv.counts[static_cast<std::size_t>(tuple_rank(row, params.n))];
    }
    return fv;
}

namespace {

// Iterates margins; returns the first violation or nullopt.
std::optional<MarginViolation> scan_margins(const FrequencyVector& fv, int s) {
    const int n = fv.params.n, k = fv.params.k;
    if (s > k || s < 0) throw InputError("strength check: need 0 <= s <= k");
    const long long total = fv.total();
    const Int ns = pow_int(Int(n), s);
    if (Int(total) % ns != 0) {
        return MarginViolation{{}, {}, total, -1};  // N not divisible by n^s
    }
    const long long lambda = static_cast<long long>(Int(total) / ns);
    TupleIndexer idx(n, k);
    const long long cells = idx.size();
    long long stuples = 1;
    for (int i = 0; i < s; ++i) stuples *= n;

    for (const auto& cols : combinations_lex(k, s)) {
        std::vector<long long> sums(static_cast<std::size_t>(stuples), 0);
        for (long long r = 0; r < cells; ++r) {
            if (fv.counts[static_cast<std::size_t>(r)] == 0) continue;
            long long code = 0;
            for (int c : cols) code = code * n + idx.digit(r, c);
            sums[static_cast<std::size_t>(code)] += fv.counts[static_cast<std::size_t>(r)];
        }
        for (long long t = 0; t < stuples; ++t) {
            if (sums[static_cast<std::size_t>(t)] != lambda) {
                return MarginViolation{cols, tuple_unrank(t, n, s), sums[static_cast<std::size_t>(t)],
                                       lambda};
            }
        }
    }
    return std::nullopt;
}

}  // namespace

bool check_strength_direct(const FrequencyVector& fv, int s) {
    return !scan_margins(fv, s).has_value();
}

std::optional<MarginViolation> first_margin_violation(const FrequencyVector& fv, int s) {
    return scan_margins(fv, s);
}

SymbolArray read_array_text(std::istream& in) {
    SymbolArray arr;
    long long N = 0;
    if (!(in >> arr.n >> arr.k >> N)) throw InputError("array file: expected header 'n k N'");
    if (arr.n < 2 || arr.k < 1 || N < 1) throw InputError("array file: bad header values");
    arr.rows.reserve(static_cast<std::size_t>(N));
    for (long long i = 0; i < N; ++i) {
        std::vector<int> row(arr.k);
        for (int j = 0; j < arr.k; ++j) {
            if (!(in >> row[j])) throw InputError("array file: truncated rows");
            if (row[j] < 0 || row[j] >= arr.n) throw InputError("array file: symbol out of range");
        }
        arr.rows.push_back(std::move(row));
    }
    return arr;
}

void write_array_text(std::ostream& out, const SymbolArray& arr) {
    out << arr.n << ' ' << arr.k << ' ' << arr.rows.size() << '\n';
    for (const auto& row : arr.rows) {
        for (int j = 0; j < arr.k; ++j) out << (j ? " " : "") << row[j];
        out << '\n';
    }
}

std::string frequency_to_json(const FrequencyVector& fv) {
    nlohmann::json j;
    j["n"] = fv.params.n;
    j["k"] = fv.params.k;
    j["s"] = fv.params.s;
    j["lambda"] = fv.params.lambda;
    j["counts"] = fv.counts;
    return j.dump();
}

FrequencyVector frequency_from_json(const std::string& text) {
    nlohmann::json j;
    OAParams p;
    FrequencyVector fv;
    try {
        j = nlohmann::json::parse(text);
        p = OAParams::make(j.at("n").get<int>(), j.at("k").get<int>(), j.at("s").get<int>(),
                           j.at("lambda").get<long long>());
        fv = FrequencyVector{p, j.at("counts").get<std::vector<long long>>()};
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("frequency JSON: ") + e.what());
    }
    if (static_cast<long long>(fv.counts.size()) != p.cell_count_ll())
        throw InputError("frequency JSON: counts length != n^k");
    for (long long c : fv.counts)
        if (c < 0) throw InputError("frequency JSON: negative count");
    return fv;
}

}  // namespace oapoly

#include "oapoly/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <thread>

#include <nlohmann/json.hpp>

#include "oapoly/anova.hpp"
#include "oapoly/errors.hpp"
#include "oapoly/matrix.hpp"

namespace oapoly {

namespace {

using Clock = std::chrono::steady_clock;

// Margins are the (s-subset of columns, s-tuple) classes of ILD rows; each
// cell belongs to C(k,s) of them.
struct MarginTable {
    long long lambda = 0;
    long long p_max = 0;
    int margins_per_cell = 0;
    std::vector<std::int32_t> cell_margins;  // cells x margins_per_cell, flattened
    int margin_count = 0;

    static MarginTable build(const OAParams& params) {
        MarginTable t;
        t.lambda = params.lambda;
        t.p_max = params.p_max;
        TupleIndexer idx(params.n, params.k);
        const auto subsets = combinations_lex(params.k, params.s);
        long long stuples = 1;
        for (int i = 0; i < params.s; ++i) stuples *= params.n;
        t.margins_per_cell = static_cast<int>(subsets.size());
        t.margin_count = static_cast<int>(subsets.size() * stuples);
        t.cell_margins.resize(static_cast<std::size_t>(idx.size()) * subsets.size());
        for (long long r = 0; r < idx.size(); ++r) {
            for (std::size_t si = 0; si < subsets.size(); ++si) {
                long long code = 0;
                for (int c : subsets[si]) code = code * params.n + idx.digit(r, c);
                t.cell_margins[static_cast<std::size_t>(r) * subsets.size() + si] =
                    static_cast<std::int32_t>(static_cast<long long>(si) * stuples + code);
            }
        }
        return t;
    }
};

struct SearchState {
    std::vector<long long> sum;        // per margin
    std::vector<long long> remaining;  // unassigned cells per margin
    std::vector<long long> counts;
};

class Searcher {
public:
    Searcher(const MarginTable& table, long long cells, long long node_cap, Clock::time_point deadline)
        : table_(table), cells_(cells), node_cap_(node_cap), deadline_(deadline) {}

    SearchState initial_state() const {
        SearchState st;
        st.sum.assign(static_cast<std::size_t>(table_.margin_count), 0);
        const long long cells_per_margin = cells_ * table_.margins_per_cell / table_.margin_count;
        st.remaining.assign(static_cast<std::size_t>(table_.margin_count), cells_per_margin);
        st.counts.assign(static_cast<std::size_t>(cells_), 0);
        return st;
    }

    // DFS from cell `depth`. Returns false when a budget stopped the search.
    bool run(SearchState& st, long long depth, std::vector<std::vector<long long>>& out) {
        if (depth == cells_) {
            out.push_back(st.counts);
            return true;
        }
        const auto* margins =
            &table_.cell_margins[static_cast<std::size_t>(depth) * table_.margins_per_cell];
        long long ub = table_.p_max;
        for (int i = 0; i < table_.margins_per_cell; ++i)
            ub = std::min(ub, table_.lambda - st.sum[static_cast<std::size_t>(margins[i])]);

        for (long long v = 0; v <= ub; ++v) {
            if (++nodes_ > node_cap_) return false;
            if ((nodes_ & 0x3FF) == 0 && Clock::now() > deadline_) return false;
            bool feasible = true;
            for (int i = 0; i < table_.margins_per_cell; ++i) {
                auto m = static_cast<std::size_t>(margins[i]);
                st.sum[m] += v;
                st.remaining[m] -= 1;
                // the cells left in this margin must still be able to reach lambda
                if (st.sum[m] + st.remaining[m] * table_.p_max < table_.lambda) feasible = false;
            }
            if (feasible) {
                st.counts[static_cast<std::size_t>(depth)] = v;
                if (!run(st, depth + 1, out)) return false;
                st.counts[static_cast<std::size_t>(depth)] = 0;
            }
            for (int i = 0; i < table_.margins_per_cell; ++i) {
                auto m = static_cast<std::size_t>(margins[i]);
                st.sum[m] -= v;
                st.remaining[m] += 1;
            }
        }
        return true;
    }

    // Enumerates the feasible prefixes of length `depth` (value vectors),
    // with their margin states, for the parallel split.
    bool prefixes(SearchState& st, long long depth, long long target,
                  std::vector<SearchState>& out) {
        if (depth == target) {
            out.push_back(st);
            return true;
        }
        const auto* margins =
            &table_.cell_margins[static_cast<std::size_t>(depth) * table_.margins_per_cell];
        long long ub = table_.p_max;
        for (int i = 0; i < table_.margins_per_cell; ++i)
            ub = std::min(ub, table_.lambda - st.sum[static_cast<std::size_t>(margins[i])]);
        for (long long v = 0; v <= ub; ++v) {
            if (++nodes_ > node_cap_) return false;
            bool feasible = true;
            for (int i = 0; i < table_.margins_per_cell; ++i) {
                auto m = static_cast<std::size_t>(margins[i]);
                st.sum[m] += v;
                st.remaining[m] -= 1;
                if (st.sum[m] + st.remaining[m] * table_.p_max < table_.lambda) feasible = false;
            }
            if (feasible) {
                st.counts[static_cast<std::size_t>(depth)] = v;
                if (!prefixes(st, depth + 1, target, out)) return false;
                st.counts[static_cast<std::size_t>(depth)] = 0;
            }
            for (int i = 0; i < table_.margins_per_cell; ++i) {
                auto m = static_cast<std::size_t>(margins[i]);
                st.sum[m] -= v;
                st.remaining[m] += 1;
            }
        }
        return true;
    }

    long long nodes() const { return nodes_; }

private:
    const MarginTable& table_;
    long long cells_;
    long long node_cap_;
    Clock::time_point deadline_;
    long long nodes_ = 0;
};

}  // namespace

EnumerationResult enumerate_all(const OAParams& params, const SearchBudget& budget) {
    TupleIndexer idx(params.n, params.k);
    if (idx.size() > budget.max_cells)
        throw ResourceError("enumerate_all: n^k exceeds the cell budget (raise --budget caps)");
    if (params.run_count > budget.max_runs)
        throw ResourceError("enumerate_all: N exceeds the run budget (raise --budget caps)");

    const MarginTable table = MarginTable::build(params);
    const auto deadline =
        Clock::now() + std::chrono::duration_cast<Clock::duration>(
                           std::chrono::duration<double>(budget.time_cap_seconds));
    EnumerationResult result{params, {}, true, 0};

    const int workers = std::max(1, budget.workers);
    std::vector<std::vector<long long>> raw_solutions;

    if (workers == 1) {
        Searcher searcher(table, idx.size(), budget.node_cap, deadline);
        SearchState st = searcher.initial_state();
        result.complete = searcher.run(st, 0, raw_solutions);
        result.node_count = searcher.nodes();
    } else {
        // Static split at a shallow depth; each subtree gets an equal slice of
        // the node budget so the outcome is schedule-independent.
        const long long split_depth = std::min<long long>(
            idx.size(), budget.split_depth > 0 ? budget.split_depth : 1 + workers / 2);
        Searcher splitter(table, idx.size(), budget.node_cap, deadline);
        std::vector<SearchState> starts;
        SearchState st = splitter.initial_state();
        if (!splitter.prefixes(st, 0, split_depth, starts)) {
            result.complete = false;
            result.node_count = splitter.nodes();
        } else {
            const long long per_subtree =
                std::max<long long>(1, (budget.node_cap - splitter.nodes()) /
                                           std::max<std::size_t>(1, starts.size()));
            std::vector<std::vector<std::vector<long long>>> sols(starts.size());
            std::vector<char> complete(starts.size(), 1);
            std::vector<long long> nodes(starts.size(), 0);
            std::atomic<std::size_t> next{0};
            auto work = [&] {
                while (true) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= starts.size()) break;
                    Searcher s(table, idx.size(), per_subtree, deadline);
                    complete[i] = s.run(starts[i], split_depth, sols[i]) ? 1 : 0;
                    nodes[i] = s.nodes();
                }
            };
            std::vector<std::thread> pool;
            for (int w = 0; w < workers; ++w) pool.emplace_back(work);
            for (auto& t : pool) t.join();
            result.node_count = splitter.nodes();
            for (std::size_t i = 0; i < starts.size(); ++i) {
                result.node_count += nodes[i];
                if (!complete[i]) result.complete = false;
                for (auto& s : sols[i]) raw_solutions.push_back(std::move(s));
            }
        }
    }

    std::sort(raw_solutions.begin(), raw_solutions.end());
    result.solutions.reserve(raw_solutions.size());
    for (auto& counts : raw_solutions)
        result.solutions.push_back(FrequencyVector{params, std::move(counts)});
    return result;
}

AffineDimResult affine_dimension(const std::vector<FrequencyVector>& solutions) {
    if (solutions.empty()) throw InputError("affine_dimension: empty solution list");
    AffineDimResult out;
    if (solutions.size() == 1) return out;
    const auto& base = solutions.front().counts;
    std::vector<std::vector<long long>> diffs;
    std::vector<std::vector<Int>> rows;
    diffs.reserve(solutions.size() - 1);
    rows.reserve(solutions.size() - 1);
    for (std::size_t i = 1; i < solutions.size(); ++i) {
        std::vector<long long> d(base.size());
        std::vector<Int> row(base.size());
        for (std::size_t j = 0; j < base.size(); ++j) {
            d[j] = solutions[i].counts[j] - base[j];
            row[j] = d[j];
        }
        diffs.push_back(std::move(d));
        rows.push_back(std::move(row));
    }
    std::vector<int> pivot_rows;
    out.dimension = fraction_free_rank(std::move(rows), &pivot_rows);
    out.witness_basis.reserve(pivot_rows.size());
    for (int r : pivot_rows) out.witness_basis.push_back(diffs[static_cast<std::size_t>(r)]);
    return out;
}

VanishingBlocks vanishing_blocks(const std::vector<FrequencyVector>& solutions) {
    VanishingBlocks out;
    if (solutions.empty()) {
        out.class_structure_ok = true;
        return out;
    }
    const OAParams& p = solutions.front().params;
    const int k = p.k;
    std::vector<char> vanishes(std::size_t(1) << k, 1);
    for (const auto& sol : solutions) {
        const JVector jv = anova_transform(sol);
        if (!check_strength_J(jv, p.s))
            throw PreconditionError("vanishing_blocks: a solution lacks strength s");
        for (std::uint32_t u = 1; u < (1u << k); ++u)
            if (vanishes[u] && !jv.block_is_zero(u)) vanishes[u] = 0;
    }
    for (std::uint32_t u = 1; u < (1u << k); ++u)
        if (vanishes[u]) out.vanishing_masks.push_back(u);

    std::vector<int> class_total(k + 1, 0), class_vanished(k + 1, 0);
    for (std::uint32_t u = 1; u < (1u << k); ++u) {
        ++class_total[popcount32(u)];
        if (vanishes[u]) ++class_vanished[popcount32(u)];
    }
    bool full_classes = true;
    for (int size = 1; size <= k; ++size) {
        if (class_vanished[size] == class_total[size]) out.vanishing_sizes.insert(size);
        else if (class_vanished[size] != 0) full_classes = false;
    }

    out.class_structure_ok = full_classes;
    if (full_classes && p.n == 2 && p.s % 2 == 0) {
        // sizes above s must vanish in the {2j-1, 2j} pairs
        for (int size = p.s + 1; size <= k; ++size) {
            if (!out.vanishing_sizes.count(size)) continue;
            const int partner = (size % 2 == 1) ? size + 1 : size - 1;
            if (partner >= 1 && partner <= k && partner > p.s &&
                !out.vanishing_sizes.count(partner))
                out.class_structure_ok = false;
        }
    }
    return out;
}

void write_solutions_jsonl(std::ostream& out, const EnumerationResult& result) {
    for (const auto& fv : result.solutions) {
        nlohmann::json j;
        j["counts"] = fv.counts;
        out << j.dump() << "\n";
    }
    nlohmann::json summary;
    summary["summary"] = {{"n", result.params.n},
                          {"k", result.params.k},
                          {"s", result.params.s},
                          {"lambda", result.params.lambda},
                          {"p_max", result.params.p_max},
                          {"count", result.solutions.size()},
                          {"complete", result.complete},
                          {"nodes", result.node_count}};
    out << summary.dump() << "\n";
}

}  // namespace oapoly

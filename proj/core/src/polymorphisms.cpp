#include "pcsp/polymorphisms.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "pcsp/capacity.hpp"
#include "pcsp/errors.hpp"

namespace pcsp {

namespace {

constexpr int kMaxBoolFnArity = 22;
constexpr int kMaxSearchHalfArity = 7;  // searches accept arity <= 2*7+1

void require_boolean_pair(const RelStructure& A, const RelStructure& B) {
    if (A.domain_size != 2 || B.domain_size != 2)
        throw DimError("polymorphism checks need Boolean structures");
    if (!signature_compatible(A, B)) throw DimError("structures do not share a signature");
}

std::uint32_t tuple_mask(const Tuple& t) {
    std::uint32_t m = 0;
    for (std::size_t j = 0; j < t.size(); ++j) m |= static_cast<std::uint32_t>(t[j] & 1) << j;
    return m;
}

// Target relation as a sorted mask list for O(log) membership.
std::vector<std::uint32_t> mask_set(const Relation& r) {
    std::vector<std::uint32_t> out;
    out.reserve(r.size());
    for (const Tuple& t : r.tuples) out.push_back(tuple_mask(t));
    std::sort(out.begin(), out.end());
    return out;
}

bool mask_member(const std::vector<std::uint32_t>& set, std::uint32_t m) {
    return std::binary_search(set.begin(), set.end(), m);
}

// Enumerates all multisets of `size` columns drawn from `cols` (each a mask
// over `rows` rows) and reports the per-row weight vector of each multiset.
// Weight vectors are deduplicated: distinct multisets realizing the same
// per-row weights are equivalent for block-symmetric evaluation.
std::vector<std::vector<int>> multiset_row_weights(const std::vector<std::uint32_t>& cols,
                                                   int rows, int size) {
    std::vector<std::vector<int>> out;
    std::vector<int> acc(rows, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t start, int remaining) {
        if (remaining == 0) {
            out.push_back(acc);
            return;
        }
        for (std::size_t i = start; i < cols.size(); ++i) {
            for (int r = 0; r < rows; ++r) acc[r] += (cols[i] >> r) & 1;
            rec(i, remaining - 1);
            for (int r = 0; r < rows; ++r) acc[r] -= (cols[i] >> r) & 1;
        }
    };
    if (size == 0) {
        out.push_back(acc);
    } else if (!cols.empty()) {
        rec(0, size);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::int64_t multiset_count(std::int64_t n, std::int64_t k) {
    // C(n+k-1, k), saturating well above any capacity we allow
    if (n == 0) return k == 0 ? 1 : 0;
    long double v = 1;
    for (std::int64_t j = 1; j <= k; ++j) v = v * (n - 1 + j) / j;
    return v > 4e18 ? std::int64_t(4e18) : static_cast<std::int64_t>(v + 0.5);
}

}  // namespace

BoolFn BoolFn::make(int arity, std::vector<std::uint8_t> table) {
    if (arity < 0 || arity > kMaxBoolFnArity)
        throw ParamError("function arity out of range: " + std::to_string(arity));
    if (table.size() != (std::size_t(1) << arity))
        throw ParamError("truth table must have 2^arity entries");
    for (auto v : table)
        if (v > 1) throw ParamError("truth table entries must be bits");
    return BoolFn{arity, std::move(table)};
}

int BoolFn::eval(const Tuple& args) const {
    if (static_cast<int>(args.size()) != arity) throw DimError("argument count != arity");
    unsigned mask = 0;
    for (std::size_t j = 0; j < args.size(); ++j) mask |= (args[j] & 1u) << j;
    return table[mask];
}

BoolFn BlockSymFn::expand() const {
    const int n = arity();
    std::vector<std::uint8_t> tab(std::size_t(1) << n);
    // odd positions 1,3,... are bits 0,2,...
    std::uint32_t odd_mask = 0;
    for (int j = 0; j < n; j += 2) odd_mask |= 1u << j;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        int w1 = __builtin_popcount(mask & odd_mask);
        int w2 = __builtin_popcount(mask & ~odd_mask);
        tab[mask] = static_cast<std::uint8_t>(eval_weights(w1, w2));
    }
    return BoolFn::make(n, std::move(tab));
}

BlockSymFn AlternatingFn::as_block_symmetric() const {
    BlockSymFn b;
    b.m = m;
    b.table.resize((m + 2) * (m + 1));
    for (int w1 = 0; w1 <= m + 1; ++w1)
        for (int w2 = 0; w2 <= m; ++w2) b.table[w1 * (m + 1) + w2] = static_cast<std::uint8_t>(eval_s(w1 - w2));
    return b;
}

BoolFn AlternatingFn::expand() const { return as_block_symmetric().expand(); }

Tuple apply_rows(const BoolFn& f, const std::vector<Tuple>& columns) {
    if (static_cast<int>(columns.size()) != f.arity)
        throw DimError("matrix has " + std::to_string(columns.size()) + " columns, function arity is " +
                       std::to_string(f.arity));
    if (columns.empty()) return {};
    const std::size_t k = columns[0].size();
    for (const Tuple& c : columns)
        if (c.size() != k) throw DimError("matrix columns have unequal length");
    Tuple out(k);
    for (std::size_t r = 0; r < k; ++r) {
        unsigned mask = 0;
        for (std::size_t j = 0; j < columns.size(); ++j) mask |= (columns[j][r] & 1u) << j;
        out[r] = f.table[mask];
    }
    return out;
}

bool is_polymorphism(const BoolFn& f, const RelStructure& A, const RelStructure& B) {
    require_boolean_pair(A, B);
    const int m = f.arity;
    for (std::size_t i = 0; i < A.relations.size(); ++i) {
        const Relation& R = A.relations[i];
        const int k = R.arity;
        const auto target = mask_set(B.relations[i]);
        if (R.tuples.empty()) continue;
        std::vector<std::uint32_t> cols;
        cols.reserve(R.size());
        for (const Tuple& t : R.tuples) cols.push_back(tuple_mask(t));

        // odometer over all column sequences with repetition
        std::vector<std::size_t> idx(m, 0);
        while (true) {
            std::uint32_t out = 0;
            for (int r = 0; r < k; ++r) {
                unsigned in = 0;
                for (int j = 0; j < m; ++j) in |= ((cols[idx[j]] >> r) & 1u) << j;
                out |= static_cast<std::uint32_t>(f.table[in]) << r;
            }
            if (!mask_member(target, out)) return false;
            int j = m - 1;
            while (j >= 0 && ++idx[j] == cols.size()) idx[j--] = 0;
            if (j < 0) break;
        }
    }
    return true;
}

std::vector<BoolFn> enumerate_polymorphisms(const RelStructure& A, const RelStructure& B, int m) {
    require_boolean_pair(A, B);
    if (m < 1 || m > kMaxBoolFnArity) throw CapacityError("enumeration arity out of range");
    const std::size_t cells = std::size_t(1) << m;

    // One constraint per relation pair and column sequence: the table cells
    // selected per row must produce a tuple of the target relation.
    struct Constraint {
        std::vector<std::uint32_t> cell_of_row;
        const std::vector<std::uint32_t>* target;
        std::uint32_t max_cell;
    };
    std::vector<std::vector<std::uint32_t>> targets;
    std::vector<Constraint> constraints;
    std::int64_t total = 0;
    for (std::size_t i = 0; i < A.relations.size(); ++i) {
        const Relation& R = A.relations[i];
        std::int64_t seq = 1;
        for (int j = 0; j < m; ++j) {
            seq *= static_cast<std::int64_t>(R.size());
            check_capacity(seq, "polymorphism enumeration constraints");
        }
        total += seq;
        check_capacity(total, "polymorphism enumeration constraints");
    }
    targets.reserve(A.relations.size());
    for (std::size_t i = 0; i < A.relations.size(); ++i) {
        targets.push_back(mask_set(B.relations[i]));
        const Relation& R = A.relations[i];
        if (R.tuples.empty()) continue;
        const int k = R.arity;
        std::vector<std::uint32_t> cols;
        for (const Tuple& t : R.tuples) cols.push_back(tuple_mask(t));
        std::vector<std::size_t> idx(m, 0);
        while (true) {
            Constraint c;
            c.cell_of_row.resize(k);
            c.max_cell = 0;
            for (int r = 0; r < k; ++r) {
                unsigned in = 0;
                for (int j = 0; j < m; ++j) in |= ((cols[idx[j]] >> r) & 1u) << j;
                c.cell_of_row[r] = in;
                c.max_cell = std::max(c.max_cell, static_cast<std::uint32_t>(in));
            }
            c.target = &targets[i];
            constraints.push_back(std::move(c));
            int j = m - 1;
            while (j >= 0 && ++idx[j] == cols.size()) idx[j--] = 0;
            if (j < 0) break;
        }
    }

    // Check each constraint exactly once, when its last cell gets a value.
    std::vector<std::vector<const Constraint*>> bucket(cells);
    for (const Constraint& c : constraints) bucket[c.max_cell].push_back(&c);

    std::vector<std::uint8_t> table(cells, 0);
    std::vector<BoolFn> found;
    std::function<bool(std::size_t)> ok_at = [&](std::size_t cell) {
        for (const Constraint* c : bucket[cell]) {
            std::uint32_t out = 0;
            for (std::size_t r = 0; r < c->cell_of_row.size(); ++r)
                out |= static_cast<std::uint32_t>(table[c->cell_of_row[r]]) << r;
            if (!mask_member(*c->target, out)) return false;
        }
        return true;
    };
    std::function<void(std::size_t)> dfs = [&](std::size_t cell) {
        if (cell == cells) {
            found.push_back(BoolFn{m, table});
            return;
        }
        for (std::uint8_t v : {0, 1}) {
            table[cell] = v;
            if (ok_at(cell)) dfs(cell + 1);
        }
        table[cell] = 0;
    };
    dfs(0);
    return found;
}

// ---- named families ----

BoolFn or_fn(int m) {
    if (m < 2) throw ParamError("OR needs arity >= 2");
    std::vector<std::uint8_t> t(std::size_t(1) << m);
    for (std::size_t x = 0; x < t.size(); ++x) t[x] = x != 0;
    return BoolFn::make(m, std::move(t));
}

BoolFn and_fn(int m) {
    if (m < 2) throw ParamError("AND needs arity >= 2");
    std::vector<std::uint8_t> t(std::size_t(1) << m);
    for (std::size_t x = 0; x < t.size(); ++x) t[x] = (x + 1 == t.size());
    return BoolFn::make(m, std::move(t));
}

BoolFn xor_fn(int m) {
    if (m < 1 || m % 2 == 0) throw ParamError("XOR family members have odd arity");
    std::vector<std::uint8_t> t(std::size_t(1) << m);
    for (std::size_t x = 0; x < t.size(); ++x) t[x] = __builtin_popcountll(x) & 1;
    return BoolFn::make(m, std::move(t));
}

BoolFn at_fn(int m) {
    if (m < 1 || m % 2 == 0) throw ParamError("AT family members have odd arity");
    std::vector<std::uint8_t> t(std::size_t(1) << m);
    for (std::size_t x = 0; x < t.size(); ++x) {
        int s = 0;
        for (int j = 0; j < m; ++j)
            if ((x >> j) & 1) s += (j % 2 == 0) ? 1 : -1;  // x_1 - x_2 + x_3 - ...
        t[x] = s > 0;
    }
    return BoolFn::make(m, std::move(t));
}

BoolFn thr_fn(int p, int n, int m) {
    if (n <= 0 || p <= 0 || p >= n) throw ParamError("threshold q = p/n must lie in (0,1)");
    if ((static_cast<long long>(m) * p) % n == 0)
        throw ParamError("threshold needs m*q non-integral");
    std::vector<std::uint8_t> t(std::size_t(1) << m);
    for (std::size_t x = 0; x < t.size(); ++x)
        t[x] = static_cast<long long>(__builtin_popcountll(x)) * n >= static_cast<long long>(m) * p;
    return BoolFn::make(m, std::move(t));
}

BoolFn maj_fn(int m) {
    if (m < 1 || m % 2 == 0) throw ParamError("MAJ family members have odd arity");
    return thr_fn(1, 2, m);
}

BoolFn const_fn(int value, int m) {
    if (value != 0 && value != 1) throw ParamError("constant must be 0 or 1");
    if (m < 1) throw ParamError("constant arity must be >= 1");
    return BoolFn::make(m, std::vector<std::uint8_t>(std::size_t(1) << m,
                                                     static_cast<std::uint8_t>(value)));
}

BoolFn negate_fn(const BoolFn& f) {
    std::vector<std::uint8_t> t(f.table);
    for (auto& v : t) v ^= 1;
    return BoolFn::make(f.arity, std::move(t));
}

std::string FamilyDesc::display() const {
    std::string base = name;
    if (name == "THR") base += "(" + std::to_string(thr_p) + "/" + std::to_string(thr_n) + ")";
    return negated ? "NEG-" + base : base;
}

BoolFn family_member(const FamilyDesc& fam, int m) {
    BoolFn f = [&] {
        if (fam.name == "OR") return or_fn(m);
        if (fam.name == "AND") return and_fn(m);
        if (fam.name == "XOR") return xor_fn(m);
        if (fam.name == "AT") return at_fn(m);
        if (fam.name == "MAJ") return maj_fn(m);
        if (fam.name == "THR") return thr_fn(fam.thr_p, fam.thr_n, m);
        if (fam.name == "CONST0") return const_fn(0, m);
        if (fam.name == "CONST1") return const_fn(1, m);
        throw ParamError("unknown family: " + fam.name);
    }();
    return fam.negated ? negate_fn(f) : f;
}

namespace {

// Fast check paths. All named families are either symmetric (value depends on
// the total weight) or alternating (value depends on the signed block weight
// difference), so matrix constraints collapse to column multisets.

bool check_symmetric_member(const std::vector<std::uint8_t>& by_weight, int m,
                            const RelStructure& A, const RelStructure& B) {
    for (std::size_t i = 0; i < A.relations.size(); ++i) {
        const Relation& R = A.relations[i];
        if (R.tuples.empty()) continue;
        const int k = R.arity;
        const auto target = mask_set(B.relations[i]);
        std::vector<std::uint32_t> cols;
        for (const Tuple& t : R.tuples) cols.push_back(tuple_mask(t));
        for (const auto& w : multiset_row_weights(cols, k, m)) {
            std::uint32_t out = 0;
            for (int r = 0; r < k; ++r) out |= static_cast<std::uint32_t>(by_weight[w[r]]) << r;
            if (!mask_member(target, out)) return false;
        }
    }
    return true;
}

bool check_alternating_member(const std::vector<std::uint8_t>& by_s, int mm,  // arity 2*mm+1
                              const RelStructure& A, const RelStructure& B) {
    for (std::size_t i = 0; i < A.relations.size(); ++i) {
        const Relation& R = A.relations[i];
        if (R.tuples.empty()) continue;
        const int k = R.arity;
        const auto target = mask_set(B.relations[i]);
        std::vector<std::uint32_t> cols;
        for (const Tuple& t : R.tuples) cols.push_back(tuple_mask(t));
        const auto odd_ws = multiset_row_weights(cols, k, mm + 1);
        const auto even_ws = multiset_row_weights(cols, k, mm);
        for (const auto& w1 : odd_ws)
            for (const auto& w2 : even_ws) {
                std::uint32_t out = 0;
                for (int r = 0; r < k; ++r)
                    out |= static_cast<std::uint32_t>(by_s[w1[r] - w2[r] + mm]) << r;
                if (!mask_member(target, out)) return false;
            }
    }
    return true;
}

}  // namespace

FamilyEvidence check_family_in_pol(const FamilyDesc& fam, const RelStructure& A,
                                   const RelStructure& B, int max_arity) {
    require_boolean_pair(A, B);
    if (max_arity < 1) throw ParamError("max_arity must be >= 1");

    FamilyEvidence ev{fam, max_arity, true, -1};
    auto arities = [&]() {
        std::vector<int> out;
        if (fam.name == "OR" || fam.name == "AND") {
            for (int m = 2; m <= max_arity; ++m) out.push_back(m);
        } else if (fam.name == "XOR" || fam.name == "AT" || fam.name == "MAJ") {
            for (int m = 1; m <= max_arity; m += 2) out.push_back(m);
        } else if (fam.name == "THR") {
            for (int m = 1; m <= max_arity; ++m)
                if ((static_cast<long long>(m) * fam.thr_p) % fam.thr_n != 0) out.push_back(m);
        } else if (fam.name == "CONST0" || fam.name == "CONST1") {
            for (int m = 1; m <= max_arity; ++m) out.push_back(m);
        } else {
            throw ParamError("unknown family: " + fam.name);
        }
        return out;
    }();

    for (int m : arities) {
        bool good;
        if (fam.name == "AT") {
            const int mm = (m - 1) / 2;
            std::vector<std::uint8_t> by_s(2 * mm + 2);
            for (int s = -mm; s <= mm + 1; ++s)
                by_s[s + mm] = static_cast<std::uint8_t>((s > 0) ^ fam.negated);
            good = check_alternating_member(by_s, mm, A, B);
        } else {
            std::vector<std::uint8_t> by_weight(m + 1);
            for (int w = 0; w <= m; ++w) {
                int v;
                if (fam.name == "OR") v = w > 0;
                else if (fam.name == "AND") v = w == m;
                else if (fam.name == "XOR") v = w & 1;
                else if (fam.name == "MAJ") v = 2 * w >= m;
                else if (fam.name == "THR")
                    v = static_cast<long long>(w) * fam.thr_n >= static_cast<long long>(m) * fam.thr_p;
                else if (fam.name == "CONST0") v = 0;
                else v = 1;
                by_weight[w] = static_cast<std::uint8_t>(v ^ (fam.negated ? 1 : 0));
            }
            good = check_symmetric_member(by_weight, m, A, B);
        }
        if (!good) {
            ev.holds = false;
            ev.refuted_arity = m;
            break;
        }
    }
    return ev;
}

// ---- existence searches ----

namespace {

struct SearchConstraint {
    std::vector<std::uint16_t> cell_of_row;
    int target_id;
    std::uint16_t max_cell;
};

// Shared backtracking core: cells are table entries, constraints map rows to
// cells and must evaluate into their target relation.
std::optional<std::vector<std::uint8_t>> search_table(
    std::size_t cells, const std::vector<SearchConstraint>& constraints,
    const std::vector<std::vector<std::uint32_t>>& targets) {
    std::vector<std::vector<const SearchConstraint*>> bucket(cells);
    for (const auto& c : constraints) bucket[c.max_cell].push_back(&c);

    std::vector<std::uint8_t> table(cells, 0);
    std::function<bool(std::size_t)> ok_at = [&](std::size_t cell) {
        for (const SearchConstraint* c : bucket[cell]) {
            std::uint32_t out = 0;
            for (std::size_t r = 0; r < c->cell_of_row.size(); ++r)
                out |= static_cast<std::uint32_t>(table[c->cell_of_row[r]]) << r;
            if (!mask_member(targets[c->target_id], out)) return false;
        }
        return true;
    };
    std::function<bool(std::size_t)> dfs = [&](std::size_t cell) {
        if (cell == cells) return true;
        for (std::uint8_t v : {0, 1}) {
            table[cell] = v;
            if (ok_at(cell) && dfs(cell + 1)) return true;
        }
        table[cell] = 0;
        return false;
    };
    if (dfs(0)) return table;
    return std::nullopt;
}

// Builds the constraint set for a search where the table cell of a row is
// cell_index(w1, w2).
template <typename CellIndex>
std::pair<std::vector<SearchConstraint>, std::vector<std::vector<std::uint32_t>>> build_constraints(
    const RelStructure& A, const RelStructure& B, int mm, CellIndex cell_index) {
    std::vector<SearchConstraint> constraints;
    std::vector<std::vector<std::uint32_t>> targets;
    for (std::size_t i = 0; i < A.relations.size(); ++i) {
        const Relation& R = A.relations[i];
        targets.push_back(mask_set(B.relations[i]));
        if (R.tuples.empty()) continue;
        const int k = R.arity;

        check_capacity(multiset_count(static_cast<std::int64_t>(R.size()), mm + 1),
                       "search column multisets");
        std::vector<std::uint32_t> cols;
        for (const Tuple& t : R.tuples) cols.push_back(tuple_mask(t));
        const auto odd_ws = multiset_row_weights(cols, k, mm + 1);
        const auto even_ws = multiset_row_weights(cols, k, mm);
        check_capacity(static_cast<std::int64_t>(odd_ws.size()) *
                           static_cast<std::int64_t>(even_ws.size()),
                       "search constraints");
        for (const auto& w1 : odd_ws)
            for (const auto& w2 : even_ws) {
                SearchConstraint c;
                c.cell_of_row.resize(k);
                c.max_cell = 0;
                for (int r = 0; r < k; ++r) {
                    c.cell_of_row[r] = static_cast<std::uint16_t>(cell_index(w1[r], w2[r]));
                    c.max_cell = std::max(c.max_cell, c.cell_of_row[r]);
                }
                c.target_id = static_cast<int>(i);
                constraints.push_back(std::move(c));
            }
    }
    // Distinct multiset pairs can induce the same cell pattern; dedupe.
    std::sort(constraints.begin(), constraints.end(), [](const auto& a, const auto& b) {
        return std::tie(a.target_id, a.cell_of_row) < std::tie(b.target_id, b.cell_of_row);
    });
    constraints.erase(std::unique(constraints.begin(), constraints.end(),
                                  [](const auto& a, const auto& b) {
                                      return a.target_id == b.target_id &&
                                             a.cell_of_row == b.cell_of_row;
                                  }),
                      constraints.end());
    return {std::move(constraints), std::move(targets)};
}

int half_arity_checked(int arity) {
    if (arity < 1 || arity % 2 == 0) throw ParamError("search arity must be odd and >= 1");
    const int mm = (arity - 1) / 2;
    if (mm > kMaxSearchHalfArity)
        throw CapacityError("search arity " + std::to_string(arity) + " beyond bound " +
                            std::to_string(2 * kMaxSearchHalfArity + 1));
    return mm;
}

}  // namespace

std::optional<BlockSymFn> exists_block_symmetric(const RelStructure& A, const RelStructure& B,
                                                 int arity) {
    require_boolean_pair(A, B);
    const int mm = half_arity_checked(arity);
    auto [constraints, targets] =
        build_constraints(A, B, mm, [&](int w1, int w2) { return w1 * (mm + 1) + w2; });
    auto table = search_table(static_cast<std::size_t>(mm + 2) * (mm + 1), constraints, targets);
    if (!table) return std::nullopt;
    return BlockSymFn{mm, std::move(*table)};
}

std::optional<AlternatingFn> exists_alternating(const RelStructure& A, const RelStructure& B,
                                                int arity) {
    require_boolean_pair(A, B);
    const int mm = half_arity_checked(arity);
    auto [constraints, targets] =
        build_constraints(A, B, mm, [&](int w1, int w2) { return w1 - w2 + mm; });
    auto table = search_table(static_cast<std::size_t>(2 * mm + 2), constraints, targets);
    if (!table) return std::nullopt;
    return AlternatingFn{mm, std::move(*table)};
}

}  // namespace pcsp

#include "pcsp/relax.hpp"

#include <algorithm>
#include <sstream>

#include "hnf.hpp"
#include "pcsp/errors.hpp"
#include "simplex.hpp"

namespace pcsp {

namespace {

Relation full_unary(int domain_size) {
    Relation r;
    r.arity = 1;
    for (int v = 0; v < domain_size; ++v) r.tuples.push_back({v});
    return r;
}

// Index of the relation that is the full unary relation on both sides.
int locate_full_unary(const RelStructure& X, const RelStructure& A) {
    for (std::size_t i = 0; i < A.relations.size(); ++i) {
        if (A.relations[i].arity != 1) continue;
        if (A.relations[i].size() == static_cast<std::size_t>(A.domain_size) &&
            X.relations[i].size() == static_cast<std::size_t>(X.domain_size))
            return static_cast<int>(i);
    }
    return -1;
}

std::string element_name(const RelStructure& S, int v) {
    if (!S.element_names.empty()) return S.element_names[v];
    return std::to_string(v);
}

std::string tuple_name(const RelStructure& S, const Tuple& t, bool named) {
    std::string out;
    for (std::size_t j = 0; j < t.size(); ++j) {
        if (j) out += ",";
        out += named ? element_name(S, t[j]) : std::to_string(t[j]);
    }
    return out;
}

// Shared structure walk for both relaxations: calls row_cb with coefficient
// lists over the (i, x, a) variable space.
struct Builder {
    const RelStructure& X;
    const RelStructure& A;
    int u;  // unary relation index
    std::vector<int> var_base;  // first variable of each (i, x) group
    int num_vars = 0;
    std::vector<std::string> names;
    std::vector<VarKey> keys;

    Builder(const RelStructure& X_, const RelStructure& A_, const char* stem)
        : X(X_), A(A_) {
        if (!signature_compatible(X, A))
            throw SignatureError("instance and template do not share a signature");
        u = locate_full_unary(X, A);
        if (u < 0)
            throw PreconditionError("structures must be augmented with the full unary relation");
        for (std::size_t i = 0; i < X.relations.size(); ++i) {
            for (std::size_t xi = 0; xi < X.relations[i].tuples.size(); ++xi) {
                var_base.push_back(num_vars);
                for (std::size_t ai = 0; ai < A.relations[i].tuples.size(); ++ai) {
                    names.push_back(std::string(stem) + "[" + std::to_string(i) + "][" +
                                    tuple_name(X, X.relations[i].tuples[xi], true) + "][" +
                                    tuple_name(A, A.relations[i].tuples[ai], false) + "]");
                    keys.push_back({static_cast<int>(i), static_cast<int>(xi),
                                    static_cast<int>(ai)});
                    ++num_vars;
                }
            }
        }
    }

    int group_of(int i, int xi) const {
        int g = 0;
        for (int ii = 0; ii < i; ++ii) g += static_cast<int>(X.relations[ii].size());
        return g + xi;
    }

    int var(int i, int xi, int ai) const {
        return var_base[group_of(i, xi)] + ai;
    }

    int unary_var(int element, int value) const {
        // T_u lists {(v)} sorted, so tuple index equals the element; same for A.
        return var(u, element, value);
    }

    // Emits mass rows ("the weights of one scope sum to 1") and marginal rows
    // (scope marginals agree with the unary weights) as +-1 coefficient maps.
    // Rows that cancel to nothing (the unary relation against itself) are
    // skipped.
    template <typename Emit>
    void walk_rows(Emit emit) const {
        for (std::size_t i = 0; i < X.relations.size(); ++i) {
            const Relation& T = X.relations[i];
            const Relation& R = A.relations[i];
            for (std::size_t xi = 0; xi < T.tuples.size(); ++xi) {
                std::vector<std::pair<int, int>> coeffs;
                for (std::size_t ai = 0; ai < R.tuples.size(); ++ai)
                    coeffs.emplace_back(var(static_cast<int>(i), static_cast<int>(xi),
                                            static_cast<int>(ai)),
                                        1);
                emit(coeffs, 1);

                for (int j = 0; j < R.arity; ++j) {
                    for (int a = 0; a < A.domain_size; ++a) {
                        coeffs.clear();
                        for (std::size_t ai = 0; ai < R.tuples.size(); ++ai)
                            if (R.tuples[ai][j] == a)
                                coeffs.emplace_back(var(static_cast<int>(i),
                                                        static_cast<int>(xi),
                                                        static_cast<int>(ai)),
                                                    1);
                        int uv = unary_var(T.tuples[xi][j], a);
                        bool cancelled = false;
                        for (auto& [v, c] : coeffs)
                            if (v == uv) {
                                c -= 1;
                                cancelled = true;
                            }
                        if (!cancelled) coeffs.emplace_back(uv, -1);
                        bool all_zero = true;
                        for (auto& [v, c] : coeffs)
                            if (c != 0) all_zero = false;
                        if (all_zero) continue;
                        emit(coeffs, 0);
                    }
                }
            }
        }
    }
};

}  // namespace

std::tuple<RelStructure, RelStructure, int> augment_unary(const RelStructure& X,
                                                          const RelStructure& A) {
    if (!signature_compatible(X, A))
        throw SignatureError("instance and template do not share a signature");
    int u = locate_full_unary(X, A);
    if (u >= 0) return {X, A, u};
    RelStructure Xa = X, Aa = A;
    Xa.relations.push_back(full_unary(X.domain_size));
    Aa.relations.push_back(full_unary(A.domain_size));
    return {Xa, Aa, static_cast<int>(Aa.relations.size()) - 1};
}

LPProblem blp_build(const RelStructure& X, const RelStructure& A) {
    Builder b(X, A, "lam");
    LPProblem P;
    P.num_vars = b.num_vars;
    P.names = std::move(b.names);
    P.keys = std::move(b.keys);
    P.unit_upper_bound.assign(P.num_vars, 1);
    b.walk_rows([&](const std::vector<std::pair<int, int>>& coeffs, int rhs) {
        std::vector<Rational> row(P.num_vars, Rational(0));
        for (auto& [v, c] : coeffs) row[v] += c;
        P.rows.push_back(std::move(row));
        P.rhs.push_back(rhs);
    });
    return P;
}

IntSystem aip_build(const RelStructure& X, const RelStructure& A) {
    Builder b(X, A, "tau");
    IntSystem S;
    S.num_vars = b.num_vars;
    S.names = std::move(b.names);
    S.keys = std::move(b.keys);
    S.fixed_zero.assign(S.num_vars, 0);
    b.walk_rows([&](const std::vector<std::pair<int, int>>& coeffs, int rhs) {
        std::vector<Int> row(S.num_vars, Int(0));
        for (auto& [v, c] : coeffs) row[v] += c;
        S.rows.push_back(std::move(row));
        S.rhs.push_back(rhs);
    });
    return S;
}

namespace {

// Expands v <= 1 flags into explicit `v + slack = 1` rows.
struct ExpandedLP {
    int total_vars;
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> rhs;
};

ExpandedLP expand_upper_bounds(const LPProblem& P) {
    ExpandedLP E;
    int slacks = 0;
    for (int v = 0; v < P.num_vars; ++v)
        if (v < static_cast<int>(P.unit_upper_bound.size()) && P.unit_upper_bound[v]) ++slacks;
    E.total_vars = P.num_vars + slacks;
    for (std::size_t r = 0; r < P.rows.size(); ++r) {
        std::vector<Rational> row(E.total_vars, Rational(0));
        for (int v = 0; v < P.num_vars; ++v) row[v] = P.rows[r][v];
        E.rows.push_back(std::move(row));
        E.rhs.push_back(P.rhs[r]);
    }
    int next = P.num_vars;
    for (int v = 0; v < P.num_vars; ++v) {
        if (!(v < static_cast<int>(P.unit_upper_bound.size()) && P.unit_upper_bound[v])) continue;
        std::vector<Rational> row(E.total_vars, Rational(0));
        row[v] = 1;
        row[next++] = 1;
        E.rows.push_back(std::move(row));
        E.rhs.push_back(1);
    }
    return E;
}

}  // namespace

RelaxOutcome lp_feasible(const LPProblem& P) {
    ExpandedLP E = expand_upper_bounds(P);
    detail::Simplex s(E.total_vars, E.rows, E.rhs);
    if (!s.feasible()) return {Verdict::Reject, std::nullopt, std::nullopt};
    auto full = s.solution();
    full.resize(P.num_vars);
    return {Verdict::Accept, std::move(full), std::nullopt};
}

std::optional<std::vector<Rational>> relative_interior_point(const LPProblem& P) {
    ExpandedLP E = expand_upper_bounds(P);
    detail::Simplex s(E.total_vars, E.rows, E.rhs);
    if (!s.feasible()) return std::nullopt;

    std::vector<std::vector<Rational>> sols;
    {
        auto x = s.solution();
        x.resize(P.num_vars);
        sols.push_back(std::move(x));
    }
    for (int v = 0; v < P.num_vars; ++v) {
        bool known_positive = false;
        for (const auto& sol : sols)
            if (sol[v] > 0) {
                known_positive = true;
                break;
            }
        if (known_positive) continue;
        Rational opt = s.maximize(v);
        if (opt > 0) {
            auto x = s.solution();
            x.resize(P.num_vars);
            sols.push_back(std::move(x));
        }
        // opt == 0 certifies that v vanishes on the whole polytope.
    }

    std::vector<Rational> avg(P.num_vars, Rational(0));
    for (const auto& sol : sols)
        for (int v = 0; v < P.num_vars; ++v) avg[v] += sol[v];
    const Rational count(static_cast<int>(sols.size()));
    for (int v = 0; v < P.num_vars; ++v) avg[v] /= count;
    return avg;
}

RelaxOutcome int_feasible(const IntSystem& S) {
    // Delete fixed-zero columns, solve, then re-inflate the witness.
    std::vector<int> live;
    for (int v = 0; v < S.num_vars; ++v)
        if (!(v < static_cast<int>(S.fixed_zero.size()) && S.fixed_zero[v])) live.push_back(v);

    std::vector<std::vector<Int>> rows(S.rows.size(), std::vector<Int>(live.size()));
    for (std::size_t r = 0; r < S.rows.size(); ++r)
        for (std::size_t j = 0; j < live.size(); ++j) rows[r][j] = S.rows[r][live[j]];

    auto y = detail::solve_diophantine(rows, S.rhs);
    if (!y) return {Verdict::Reject, std::nullopt, std::nullopt};

    std::vector<Int> x(S.num_vars, Int(0));
    for (std::size_t j = 0; j < live.size(); ++j) x[live[j]] = (*y)[j];
    // Exact witness re-check against every row.
    for (std::size_t r = 0; r < S.rows.size(); ++r) {
        Int acc = 0;
        for (int v = 0; v < S.num_vars; ++v)
            if (S.rows[r][v] != 0 && x[v] != 0) acc += S.rows[r][v] * x[v];
        if (acc != S.rhs[r]) throw InternalError("integer witness failed re-validation");
    }
    return {Verdict::Accept, std::nullopt, std::move(x)};
}

RelaxOutcome aip_decide(const RelStructure& X, const RelStructure& A) {
    auto [Xa, Aa, u] = augment_unary(X, A);
    (void)u;
    return int_feasible(aip_build(Xa, Aa));
}

RelaxOutcome blp_aip(const RelStructure& X, const RelStructure& A) {
    auto [Xa, Aa, u] = augment_unary(X, A);
    (void)u;
    LPProblem P = blp_build(Xa, Aa);
    auto interior = relative_interior_point(P);
    if (!interior) return {Verdict::Reject, std::nullopt, std::nullopt};

    IntSystem S = aip_build(Xa, Aa);
    if (S.num_vars != P.num_vars) throw InternalError("relaxation variable spaces differ");
    for (int v = 0; v < S.num_vars; ++v)
        if ((*interior)[v] == 0) S.fixed_zero[v] = 1;
    RelaxOutcome out = int_feasible(S);
    out.lp_witness = std::move(interior);
    if (!out.accepted()) out.lp_witness.reset();
    return out;
}

namespace {

template <typename Num>
std::string render_rows(const std::vector<std::vector<Num>>& rows, const std::vector<Num>& rhs,
                        const std::vector<std::string>& names) {
    std::ostringstream os;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        bool first = true;
        for (std::size_t v = 0; v < rows[r].size(); ++v) {
            if (rows[r][v] == 0) continue;
            if (!first) os << " + ";
            os << rows[r][v] << "*" << names[v];
            first = false;
        }
        if (first) os << "0";
        os << " = " << rhs[r] << "\n";
    }
    return os.str();
}

}  // namespace

std::string emit_lp(const LPProblem& P) {
    std::string out = render_rows(P.rows, P.rhs, P.names);
    for (int v = 0; v < P.num_vars; ++v)
        if (v < static_cast<int>(P.unit_upper_bound.size()) && P.unit_upper_bound[v])
            out += "1*" + P.names[v] + " + 1*slack[" + P.names[v] + "] = 1\n";
    return out;
}

std::string emit_ip(const IntSystem& S) {
    std::string out = render_rows(S.rows, S.rhs, S.names);
    for (int v = 0; v < S.num_vars; ++v)
        if (v < static_cast<int>(S.fixed_zero.size()) && S.fixed_zero[v])
            out += "1*" + S.names[v] + " = 0\n";
    return out;
}

}  // namespace pcsp

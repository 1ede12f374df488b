#include "pcsp/templates.hpp"

#include <algorithm>

#include "pcsp/capacity.hpp"
#include "pcsp/errors.hpp"

namespace pcsp {

namespace {
void check_enumerable(int k) {
    if (k > 30) throw ParamError("arity too large to enumerate tuples, k=" + std::to_string(k));
    check_capacity(std::int64_t(1) << k, "Boolean relation enumeration");
}
}  // namespace

Relation t_in_k(int t, int k) {
    if (k < 2 || t < 1 || t >= k)
        throw ParamError("t_in_k needs 1 <= t < k, got t=" + std::to_string(t) +
                         " k=" + std::to_string(k));
    check_enumerable(k);
    Relation r;
    r.arity = k;
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
        if (__builtin_popcount(mask) != t) continue;
        Tuple tup(k);
        for (int j = 0; j < k; ++j) tup[j] = (mask >> j) & 1;
        r.tuples.push_back(std::move(tup));
    }
    r.normalize();
    return r;
}

Relation nae(int k) {
    if (k < 2) throw ParamError("nae needs k >= 2");
    check_enumerable(k);
    Relation r;
    r.arity = k;
    for (unsigned mask = 1; mask + 1 < (1u << k); ++mask) {
        Tuple tup(k);
        for (int j = 0; j < k; ++j) tup[j] = (mask >> j) & 1;
        r.tuples.push_back(std::move(tup));
    }
    r.normalize();
    return r;
}

Relation odd_k(int k) {
    if (k < 2) throw ParamError("odd_k needs k >= 2");
    check_enumerable(k);
    Relation r;
    r.arity = k;
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
        if (__builtin_popcount(mask) % 2 == 0) continue;
        Tuple tup(k);
        for (int j = 0; j < k; ++j) tup[j] = (mask >> j) & 1;
        r.tuples.push_back(std::move(tup));
    }
    r.normalize();
    return r;
}

Relation negate_relation(const Relation& R) {
    Relation out;
    out.arity = R.arity;
    out.tuples.reserve(R.size());
    for (const Tuple& t : R.tuples) {
        Tuple n(t.size());
        for (std::size_t j = 0; j < t.size(); ++j) {
            if (t[j] != 0 && t[j] != 1) throw DomainError("negate_relation needs a Boolean relation");
            n[j] = 1 - t[j];
        }
        out.tuples.push_back(std::move(n));
    }
    out.normalize();
    return out;
}

void TemplateSpec::validate() {
    if (k < 3) throw SpecError("k must be >= 3");
    if (t < 1 || t >= k) throw SpecError("t must satisfy 1 <= t < k");
    for (const Tuple& tup : S) {
        if (static_cast<int>(tup.size()) != k)
            throw SpecError("every tuple of S must have length k");
        for (int v : tup)
            if (v != 0 && v != 1) throw SpecError("S tuples must be Boolean");
        int d = weight(tup);
        if (d < 1 || d >= k)
            throw SpecError("tuple " + to_bitstring(tup) + " is all-equal, not in NAE");
        if (d == t)
            throw SpecError("tuple " + to_bitstring(tup) + " has weight t, not outside t-in-k");
    }
    std::sort(S.begin(), S.end());
    S.erase(std::unique(S.begin(), S.end()), S.end());
}

PCSPTemplate build_template(TemplateSpec spec) {
    spec.validate();
    Relation a = t_in_k(spec.t, spec.k);
    Relation b = nae(spec.k);
    if (spec.mode == Mode::Add) {
        for (const Tuple& tup : spec.S) a.tuples.push_back(tup);
        a.normalize();
    } else {
        std::vector<Tuple> kept;
        kept.reserve(b.size());
        for (const Tuple& tup : b.tuples)
            if (!std::binary_search(spec.S.begin(), spec.S.end(), tup)) kept.push_back(tup);
        b.tuples = std::move(kept);
    }
    PCSPTemplate tpl{single_relation_structure(std::move(a)), single_relation_structure(std::move(b))};
    if (!find_homomorphism(tpl.A, tpl.B))
        throw TemplateError("template invalid: no homomorphism from A to B");
    return tpl;
}

}  // namespace pcsp

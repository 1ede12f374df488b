#include "pcsp/structures.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>

#include "pcsp/capacity.hpp"
#include "pcsp/errors.hpp"

namespace pcsp {

int weight(const Tuple& t) {
    int w = 0;
    for (int v : t) w += (v != 0);
    return w;
}

std::string to_bitstring(const Tuple& t) {
    std::string s;
    s.reserve(t.size());
    for (int v : t) s.push_back(v ? '1' : '0');
    return s;
}

Tuple tuple_from_bitstring(const std::string& bits) {
    Tuple t;
    t.reserve(bits.size());
    for (char c : bits) {
        if (c == '0')
            t.push_back(0);
        else if (c == '1')
            t.push_back(1);
        else
            throw DomainError("bitstring must contain only 0/1, got '" + bits + "'");
    }
    return t;
}

Relation Relation::make(int arity, std::vector<Tuple> tuples) {
    Relation r;
    r.arity = arity;
    r.tuples = std::move(tuples);
    for (const Tuple& t : r.tuples) {
        if (static_cast<int>(t.size()) != arity)
            throw DomainError("tuple length " + std::to_string(t.size()) +
                              " differs from relation arity " + std::to_string(arity));
    }
    r.normalize();
    return r;
}

void Relation::normalize() {
    std::sort(tuples.begin(), tuples.end());
    tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
}

bool Relation::contains(const Tuple& t) const {
    return std::binary_search(tuples.begin(), tuples.end(), t);
}

namespace {

// Orbit size of a sorted tuple under all coordinate permutations (the
// multinomial coefficient), saturated at `cap` to stay overflow-free.
std::size_t orbit_size_capped(const Tuple& sorted, std::size_t cap) {
    unsigned __int128 perms = 1;
    std::size_t placed = 0, run = 1;
    for (std::size_t i = 1; i <= sorted.size(); ++i) {
        if (i < sorted.size() && sorted[i] == sorted[i - 1]) {
            ++run;
            continue;
        }
        for (std::size_t j = 1; j <= run; ++j) {
            perms = perms * (placed + j) / j;
            if (perms > cap) return cap + 1;
        }
        placed += run;
        run = 1;
    }
    return static_cast<std::size_t>(perms);
}

}  // namespace

bool is_symmetric(const Relation& r) {
    // A relation is symmetric iff every sorted-multiset orbit it touches is
    // complete. Group tuples by sorted form and compare counts against the
    // orbit size k! / prod(mult_i!).
    std::map<Tuple, std::size_t> orbit_count;
    for (const Tuple& t : r.tuples) {
        Tuple s = t;
        std::sort(s.begin(), s.end());
        orbit_count[s]++;
    }
    for (const auto& [sorted, count] : orbit_count) {
        if (count != orbit_size_capped(sorted, r.size())) return false;
    }
    return true;
}

void RelStructure::validate() const {
    if (domain_size <= 0) throw DomainError("domain_size must be positive");
    for (const Relation& r : relations) {
        if (r.arity <= 0) throw DomainError("relation arity must be positive");
        for (const Tuple& t : r.tuples)
            for (int v : t)
                if (v < 0 || v >= domain_size)
                    throw DomainError("tuple entry " + std::to_string(v) +
                                      " outside domain of size " + std::to_string(domain_size));
    }
    if (!element_names.empty() && static_cast<int>(element_names.size()) != domain_size)
        throw DomainError("element_names length must equal domain_size");
}

bool signature_compatible(const RelStructure& a, const RelStructure& b) {
    if (a.relations.size() != b.relations.size()) return false;
    for (std::size_t i = 0; i < a.relations.size(); ++i)
        if (a.relations[i].arity != b.relations[i].arity) return false;
    return true;
}

bool is_homomorphism(const Homomorphism& phi, const RelStructure& X, const RelStructure& A) {
    if (!signature_compatible(X, A))
        throw SignatureError("structures do not share a signature");
    if (static_cast<int>(phi.map.size()) != X.domain_size)
        throw DomainError("map length differs from source domain size");
    for (int v : phi.map)
        if (v < 0 || v >= A.domain_size) throw DomainError("map value outside target domain");

    Tuple image;
    for (std::size_t i = 0; i < X.relations.size(); ++i) {
        for (const Tuple& t : X.relations[i].tuples) {
            image.resize(t.size());
            for (std::size_t j = 0; j < t.size(); ++j) image[j] = phi.map[t[j]];
            if (!A.relations[i].contains(image)) return false;
        }
    }
    return true;
}

namespace {

struct Scope {
    int relation;
    const Tuple* tuple;
};

}  // namespace

std::optional<Homomorphism> find_homomorphism(const RelStructure& X, const RelStructure& A) {
    if (!signature_compatible(X, A))
        throw SignatureError("structures do not share a signature");

    const int n = X.domain_size;
    std::vector<Scope> scopes;
    std::vector<int> degree(n, 0);
    for (std::size_t i = 0; i < X.relations.size(); ++i) {
        for (const Tuple& t : X.relations[i].tuples) {
            scopes.push_back({static_cast<int>(i), &t});
            for (int v : t) degree[v]++;
        }
    }

    // Assign high-degree variables first.
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return degree[a] > degree[b]; });
    std::vector<int> rank(n);
    for (int i = 0; i < n; ++i) rank[order[i]] = i;

    // For each scope, the decision depth at which it becomes fully assigned.
    std::vector<std::vector<int>> ready(n);
    for (std::size_t s = 0; s < scopes.size(); ++s) {
        int last = -1;
        for (int v : *scopes[s].tuple) last = std::max(last, rank[v]);
        if (last >= 0) ready[last].push_back(static_cast<int>(s));
    }

    std::vector<int> assign(n, -1);
    Tuple image;
    auto consistent = [&](int depth) {
        for (int s : ready[depth]) {
            const Tuple& t = *scopes[s].tuple;
            image.resize(t.size());
            for (std::size_t j = 0; j < t.size(); ++j) image[j] = assign[t[j]];
            if (!A.relations[scopes[s].relation].contains(image)) return false;
        }
        return true;
    };

    // Iterative backtracking over the fixed variable order.
    int depth = 0;
    std::vector<int> choice(n, -1);
    if (n == 0) return Homomorphism{{}};
    while (true) {
        int var = order[depth];
        int next = choice[depth] + 1;
        if (next >= A.domain_size) {
            choice[depth] = -1;
            assign[var] = -1;
            if (--depth < 0) return std::nullopt;
            continue;
        }
        choice[depth] = next;
        assign[var] = next;
        if (!consistent(depth)) continue;
        if (depth + 1 == n) return Homomorphism{assign};
        ++depth;
    }
}

RelStructure power(const RelStructure& A, int m) {
    if (m < 1) throw ParamError("power exponent must be >= 1");
    std::int64_t dom = 1;
    for (int i = 0; i < m; ++i) {
        dom *= A.domain_size;
        check_capacity(dom, "power domain");
    }

    RelStructure P;
    P.domain_size = static_cast<int>(dom);
    for (const Relation& R : A.relations) {
        std::int64_t count = 1;
        for (int i = 0; i < m; ++i) {
            count *= static_cast<std::int64_t>(R.size());
            check_capacity(count, "power relation");
        }
        Relation PR;
        PR.arity = R.arity;
        PR.tuples.reserve(static_cast<std::size_t>(count));
        if (!R.tuples.empty()) {
            std::vector<std::size_t> idx(m, 0);
            Tuple out(R.arity);
            while (true) {
                for (int pos = 0; pos < R.arity; ++pos) {
                    std::int64_t code = 0;
                    for (int j = 0; j < m; ++j) code = code * A.domain_size + R.tuples[idx[j]][pos];
                    out[pos] = static_cast<int>(code);
                }
                PR.tuples.push_back(out);
                int j = m - 1;
                while (j >= 0 && ++idx[j] == R.size()) idx[j--] = 0;
                if (j < 0) break;
            }
        }
        PR.normalize();
        P.relations.push_back(std::move(PR));
    }
    return P;
}

Relation image_of_relation(const Relation& R, const std::vector<int>& f) {
    Relation out;
    out.arity = R.arity;
    out.tuples.reserve(R.size());
    for (const Tuple& t : R.tuples) {
        Tuple img(t.size());
        for (std::size_t j = 0; j < t.size(); ++j) {
            if (t[j] < 0 || t[j] >= static_cast<int>(f.size()))
                throw DomainError("image map is not total on the relation's domain");
            img[j] = f[t[j]];
        }
        out.tuples.push_back(std::move(img));
    }
    out.normalize();
    return out;
}

Relation largest_symmetric_subrelation(const Relation& R) {
    // Keep exactly the complete orbits: group by sorted form, count, and
    // compare to the orbit size.
    std::map<Tuple, std::vector<const Tuple*>> groups;
    for (const Tuple& t : R.tuples) {
        Tuple s = t;
        std::sort(s.begin(), s.end());
        groups[s].push_back(&t);
    }
    Relation out;
    out.arity = R.arity;
    for (auto& [sorted, members] : groups) {
        if (members.size() == orbit_size_capped(sorted, R.size()))
            for (const Tuple* t : members) out.tuples.push_back(*t);
    }
    out.normalize();
    return out;
}

bool is_homomorphic_relaxation(const RelStructure& Ap, const RelStructure& Bp,
                               const RelStructure& A, const RelStructure& B) {
    if (!signature_compatible(Ap, A) || !signature_compatible(B, Bp) ||
        !signature_compatible(Ap, Bp))
        throw SignatureError("relaxation check needs pairwise compatible signatures");
    return find_homomorphism(Ap, A).has_value() && find_homomorphism(B, Bp).has_value();
}

RelStructure single_relation_structure(Relation r, int domain_size) {
    RelStructure s;
    s.domain_size = domain_size;
    s.relations.push_back(std::move(r));
    return s;
}

}  // namespace pcsp

#pragma once

#include <optional>
#include <string>
#include <vector>

namespace pcsp {

// A tuple over a finite domain {0, ..., n-1}. Boolean templates use {0, 1}
// but power structures need larger domains, so entries are plain ints.
using Tuple = std::vector<int>;

// Number of 1 entries of a Boolean tuple.
int weight(const Tuple& t);

// Renders a Boolean tuple as a bitstring, e.g. (1,0,0) -> "100".
std::string to_bitstring(const Tuple& t);
Tuple tuple_from_bitstring(const std::string& bits);

// A relation: a set of same-length tuples, kept sorted and deduplicated.
// Instances may carry empty relations; template relations must be non-empty
// (enforced where templates are validated, not here).
struct Relation {
    int arity = 0;
    std::vector<Tuple> tuples;

    static Relation make(int arity, std::vector<Tuple> tuples);

    bool contains(const Tuple& t) const;
    std::size_t size() const { return tuples.size(); }
    void normalize();  // sort + unique
};

bool is_symmetric(const Relation& r);

// A finite relational structure: a domain size plus an ordered relation list.
// The list order is the signature.
struct RelStructure {
    int domain_size = 0;
    std::vector<Relation> relations;

    // Optional names for domain elements (used by instances to name their
    // variables); empty means unnamed.
    std::vector<std::string> element_names;

    void validate() const;  // arity/range checks; throws DomainError
};

struct Homomorphism {
    std::vector<int> map;  // index = source element, value = target element
};

bool signature_compatible(const RelStructure& a, const RelStructure& b);

// True iff phi maps every tuple of every relation of X into the matching
// relation of A (applied component-wise).
bool is_homomorphism(const Homomorphism& phi, const RelStructure& X, const RelStructure& A);

// Backtracking search with variables ordered by descending constraint degree;
// partial assignments are pruned as soon as a fully assigned scope violates
// its relation.
std::optional<Homomorphism> find_homomorphism(const RelStructure& X, const RelStructure& A);

// m-th Cartesian power. Domain element indices use the mixed-radix encoding
// with the most significant coordinate first: (a_1,...,a_m) -> sum a_j * n^(m-j).
RelStructure power(const RelStructure& A, int m);

// Component-wise image of R under a total unary map on the domain.
Relation image_of_relation(const Relation& R, const std::vector<int>& f);

// The set of tuples of R all of whose coordinate permutations are also in R.
Relation largest_symmetric_subrelation(const Relation& R);

// True iff Ap -> A and B -> Bp both hold.
bool is_homomorphic_relaxation(const RelStructure& Ap, const RelStructure& Bp,
                               const RelStructure& A, const RelStructure& B);

// Convenience: a Boolean structure holding a single relation.
RelStructure single_relation_structure(Relation r, int domain_size = 2);

}  // namespace pcsp

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pcsp/structures.hpp"

namespace pcsp {

// A Boolean function given by its full truth table. Input (x_1,...,x_m) is
// indexed by the mask with bit j-1 = x_j.
struct BoolFn {
    int arity = 0;
    std::vector<std::uint8_t> table;  // size 2^arity

    static BoolFn make(int arity, std::vector<std::uint8_t> table);
    int eval(unsigned mask) const { return table[mask]; }
    int eval(const Tuple& args) const;

    bool operator==(const BoolFn&) const = default;
};

// Odd-arity function invariant under permutations within its odd-position and
// even-position coordinate blocks; stored as a table over the block weight
// pair. Arity 2m+1, odd block size m+1, even block size m.
struct BlockSymFn {
    int m = 0;
    std::vector<std::uint8_t> table;  // (m+2)*(m+1) entries, index w1*(m+1)+w2

    int arity() const { return 2 * m + 1; }
    int eval_weights(int w1, int w2) const { return table[w1 * (m + 1) + w2]; }
    BoolFn expand() const;
};

// Block-symmetric function where adjacent coordinates cancel: the value
// depends only on s = (odd-block weight) - (even-block weight), s in [-m, m+1].
struct AlternatingFn {
    int m = 0;
    std::vector<std::uint8_t> table;  // 2m+2 entries, index s+m

    int arity() const { return 2 * m + 1; }
    int eval_s(int s) const { return table[s + m]; }
    BlockSymFn as_block_symmetric() const;
    BoolFn expand() const;
};

// Applies f to the rows of the matrix whose columns are given; returns the
// tuple of row values.
Tuple apply_rows(const BoolFn& f, const std::vector<Tuple>& columns);

// True iff for every relation pair (R_i, S_i) and every choice of arity(f)
// columns from R_i (with repetition), apply_rows lands in S_i.
bool is_polymorphism(const BoolFn& f, const RelStructure& A, const RelStructure& B);

// Exactly the arity-m members of Pol(A, B), found by backtracking over truth
// table entries with constraint checks as soon as a scope is fully decided.
std::vector<BoolFn> enumerate_polymorphisms(const RelStructure& A, const RelStructure& B, int m);

// ---- named function families ----

BoolFn or_fn(int m);                     // m >= 2
BoolFn and_fn(int m);                    // m >= 2
BoolFn xor_fn(int m);                    // odd m >= 1
BoolFn at_fn(int m);                     // odd m >= 1; alternating threshold
BoolFn maj_fn(int m);                    // odd m >= 1
BoolFn thr_fn(int p, int n, int m);      // q = p/n in (0,1), m*q not integral
BoolFn const_fn(int value, int m);       // constant 0 or 1
BoolFn negate_fn(const BoolFn& f);       // x -> 1 - f(x)

// Family descriptor for bounded evidence scans.
struct FamilyDesc {
    std::string name;     // "CONST0","CONST1","OR","AND","XOR","AT","MAJ","THR"
    bool negated = false;
    int thr_p = 0, thr_n = 1;  // only for THR

    std::string display() const;
};

// Named family member; the THR parameters are taken from `fam`.
BoolFn family_member(const FamilyDesc& fam, int m);

// Bounded check that every family member of arity <= max_arity (respecting
// the family's parity constraints) is a polymorphism. This is evidence about
// finitely many members, never a proof for the infinite family.
struct FamilyEvidence {
    FamilyDesc family;
    int max_arity = 0;
    bool holds = false;
    int refuted_arity = -1;  // first failing arity when holds is false
};

FamilyEvidence check_family_in_pol(const FamilyDesc& fam, const RelStructure& A,
                                   const RelStructure& B, int max_arity);

// Searches for a polymorphism at the given odd arity by backtracking over the
// weight-pair (resp. difference) table, pruning on each violated matrix
// constraint. Column choices range over multisets since the value depends
// only on row weights. Entries are tried 0 before 1.
std::optional<BlockSymFn> exists_block_symmetric(const RelStructure& A, const RelStructure& B,
                                                 int arity);
std::optional<AlternatingFn> exists_alternating(const RelStructure& A, const RelStructure& B,
                                                int arity);

}  // namespace pcsp

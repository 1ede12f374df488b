#pragma once

#include "pcsp/structures.hpp"

namespace pcsp {

// All k-tuples of Hamming weight exactly t, 1 <= t < k.
Relation t_in_k(int t, int k);

// All k-tuples except 0^k and 1^k, k >= 2.
Relation nae(int k);

// All k-tuples of odd Hamming weight, k >= 2.
Relation odd_k(int k);

// Component-wise negation of a Boolean relation.
Relation negate_relation(const Relation& R);

enum class Mode { Add, Remove };

// A template in the (t-in-k, NAE) family, perturbed by a tuple set S that is
// either added to the strict side or removed from the weak side.
struct TemplateSpec {
    Mode mode = Mode::Add;
    int t = 1;
    int k = 3;
    std::vector<Tuple> S;  // canonicalized to sorted order by validate()

    // Throws SpecError unless k >= 3, 1 <= t < k, and every tuple of S is a
    // k-tuple over {0,1} of weight d with 1 <= d < k and d != t.
    void validate();
};

struct PCSPTemplate {
    RelStructure A;
    RelStructure B;
};

// Add mode: (t-in-k u S, NAE); Remove mode: (t-in-k, NAE \ S). Validates the
// spec and that A -> B holds.
PCSPTemplate build_template(TemplateSpec spec);

}  // namespace pcsp

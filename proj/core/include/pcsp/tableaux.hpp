#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "pcsp/rational.hpp"
#include "pcsp/structures.hpp"

namespace pcsp {

// Dense 0/1 matrix, row-major.
struct Matrix01 {
    int rows = 0;
    int cols = 0;
    std::vector<std::uint8_t> data;

    static Matrix01 zeros(int rows, int cols) {
        return {rows, cols, std::vector<std::uint8_t>(std::size_t(rows) * cols, 0)};
    }
    std::uint8_t& at(int r, int c) { return data[std::size_t(r) * cols + c]; }
    std::uint8_t at(int r, int c) const { return data[std::size_t(r) * cols + c]; }
    Tuple column(int c) const;
    int row_weight(int r) const;
    void append_columns(const Matrix01& other);
    bool operator==(const Matrix01&) const = default;
};

// The k x k matrix of the k cyclic shifts of the column 1^t 0^(k-t); every
// row has weight t.
Matrix01 cyclic_matrix(int k, int t);

// cyclic_matrix with the last column removed (row weights t-1 or t).
Matrix01 c_minus(int k, int t);

// cyclic_matrix with one extra column 1^t 0^(k-t) appended (row weights t or
// t+1). The extra column sits at the end so that the swap schedules, which
// index columns by their cyclic shift, stay aligned.
Matrix01 c_plus(int k, int t);

// One certificate tableau: a fixed block of L copies of cyclic_matrix(k, t)
// on one parity class of coordinates and a constructed block on the other,
// each of whose rows has weight w1 or w2. Columns of the constructed block
// come from t-in-k or equal the added tuple x = 1^d 0^(k-d).
struct Tableau {
    int k = 0, t = 0, d = 0, L = 1;
    bool fixed_on_odd = true;  // which parity class holds the fixed block
    Matrix01 fixed;
    Matrix01 constructed;
    std::pair<int, int> weights;  // target row-weight pair of the constructed block

    int arity() const { return fixed.cols + constructed.cols; }
    Tuple added_tuple() const;  // x = 1^d 0^(k-d)
    // Full matrix with fixed/constructed columns interleaved on their parity
    // classes, in argument order.
    Matrix01 interleaved() const;
};

// Construction parameters. a/b/s are present for the averaged-fill case only;
// the interval fields record the two inequality pairs that a must satisfy.
struct CaseParams {
    int k = 0, t = 0, d = 0;
    std::string case_id;
    int r = 0;  // number of x-columns in this tableau
    int L = 1;
    std::optional<Rational> a;
    std::optional<int> b;
    std::optional<int> s;
    std::optional<Rational> lo1, hi1, lo2, hi2;
};

// Builds the tableau of the given construction family ("prop" 10..13) and
// case ("1", "2", "2a", "2b", "3"). Family 10 handles a heavier added tuple
// (t < d) at arity 2k-1 and family 11 a lighter one (d < t) at arity 2k+1;
// families 12/13 are their variants for the parities where all of k, t, d
// force the scaled arity 2Lk+-1. Throws CaseError when the hypotheses fail.
// a_override replaces the default choice of a (the smallest admissible value)
// in case 3 and must be admissible with denominator dividing the column
// budget.
std::pair<Tableau, CaseParams> build_case(int prop, const std::string& case_id, int k, int t,
                                          int d, std::optional<Rational> a_override = {});

// Checks (a) every constructed column is a weight-t tuple or x, (b) every
// constructed row weight is w1 or w2, (c) the fixed block is exactly L copies
// of cyclic_matrix(k, t).
bool verify_tableau(const Tableau& tab);

// Which family and arity refutes (k, t, d), after normalization to d+t <= k
// by component-wise negation.
struct CertificateShape {
    int prop = 0;
    int arity = 0;
    int L = 1;
    int norm_t = 0, norm_d = 0;
    bool negated = false;
};
CertificateShape certificate_shape(int k, int t, int d);

// Three tableaux covering all weight pairs from a three-element weight set;
// any function constant on one pair returns an all-equal tuple on that
// tableau, so no 2-block-symmetric polymorphism of this arity exists.
struct RefutationCertificate {
    int k = 0, t = 0, d = 0;
    CertificateShape shape;
    std::array<int, 3> weight_set{};
    std::vector<Tableau> tableaux;   // pair order: {w1,w2}, {w1,w3}, {w2,w3}
    std::vector<CaseParams> params;  // aligned with tableaux
};

// Builds and verifies the certificate; CaseError when (k, t, d) falls in the
// parity class that admits block-symmetric candidates (t odd, k even, d odd).
RefutationCertificate refute(int k, int t, int d);

// Figure-style rendering: fixed block, a bar, then the constructed block
// (x-columns separated by another bar when present).
std::string render_ascii(const Tableau& tab);

}  // namespace pcsp

#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "pcsp/rational.hpp"
#include "pcsp/structures.hpp"

namespace pcsp {

// Identifies an LP/IP variable: relation index i, tuple x in T_i (by index),
// tuple a in R_i (by index).
struct VarKey {
    int relation;
    int x_index;
    int a_index;
};

// Equality system over exact rationals with nonnegative variables. Variables
// flagged in unit_upper_bound additionally satisfy v <= 1; the solvers expand
// those bounds into explicit rows with slack columns.
struct LPProblem {
    int num_vars = 0;
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> rhs;
    std::vector<std::uint8_t> unit_upper_bound;
    std::vector<std::string> names;
    std::vector<VarKey> keys;
};

// Integer equality system; variables range over all of Z unless fixed to
// zero by the mask.
struct IntSystem {
    int num_vars = 0;
    std::vector<std::vector<Int>> rows;
    std::vector<Int> rhs;
    std::vector<std::uint8_t> fixed_zero;
    std::vector<std::string> names;
    std::vector<VarKey> keys;
};

enum class Verdict { Accept, Reject };

struct RelaxOutcome {
    Verdict verdict = Verdict::Reject;
    std::optional<std::vector<Rational>> lp_witness;
    std::optional<std::vector<Int>> ip_witness;

    bool accepted() const { return verdict == Verdict::Accept; }
};

// Ensures both structures carry the full unary relation (equal to the whole
// domain on each side), appending it when absent; returns the relation index.
std::tuple<RelStructure, RelStructure, int> augment_unary(const RelStructure& X,
                                                          const RelStructure& A);

// Emits the linear relaxation of the instance: one variable per
// (i, x in T_i, a in R_i), per-scope mass rows, and marginal-consistency rows
// against the unary relation. Requires augmented structures.
LPProblem blp_build(const RelStructure& X, const RelStructure& A);

// Same rows over integer variables.
IntSystem aip_build(const RelStructure& X, const RelStructure& A);

// Exact feasibility via two-phase simplex; Accept carries a feasible point.
RelaxOutcome lp_feasible(const LPProblem& P);

// A feasible point whose zero coordinates are exactly the variables that are
// zero in every feasible point; nullopt when infeasible. Found by maximizing
// each coordinate not yet known positive and averaging the solutions.
std::optional<std::vector<Rational>> relative_interior_point(const LPProblem& P);

// Integer feasibility via Hermite normal form, after deleting fixed-zero
// columns; Accept carries an integer witness.
RelaxOutcome int_feasible(const IntSystem& S);

// Decision by the affine relaxation alone: augment, build, test.
RelaxOutcome aip_decide(const RelStructure& X, const RelStructure& A);

// The combined algorithm: relative interior point of the linear relaxation,
// zero-fix the integer variables whose coordinate vanishes there, then test
// the refined integer system.
RelaxOutcome blp_aip(const RelStructure& X, const RelStructure& A);

// Plain-text dump, one `c*v + ... = rhs` line per constraint. Upper-bounded
// LP variables appear as explicit rows with slack names.
std::string emit_lp(const LPProblem& P);
std::string emit_ip(const IntSystem& S);

}  // namespace pcsp

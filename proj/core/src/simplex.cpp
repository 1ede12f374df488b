#include "simplex.hpp"

#include "pcsp/errors.hpp"

namespace pcsp::detail {

Simplex::Simplex(int nvars, const std::vector<std::vector<Rational>>& A,
                 const std::vector<Rational>& b) {
    n_ = nvars;

    // Copy rows, dropping all-zero ones and normalizing rhs >= 0.
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> rhs;
    for (std::size_t r = 0; r < A.size(); ++r) {
        bool all_zero = true;
        for (const Rational& v : A[r])
            if (v != 0) {
                all_zero = false;
                break;
            }
        if (all_zero) {
            if (b[r] != 0) {
                // 0 = nonzero: trivially infeasible
                phase1_done_ = true;
                feasible_ = false;
            }
            continue;
        }
        rows.push_back(A[r]);
        rhs.push_back(b[r]);
        if (rhs.back() < 0) {
            for (Rational& v : rows.back()) v = -v;
            rhs.back() = -rhs.back();
        }
    }
    const int m = static_cast<int>(rows.size());

    // Columns appearing in exactly one row with a positive coefficient can
    // start basic; everything else gets an artificial.
    std::vector<int> count(n_, 0), rowof(n_, -1);
    for (int r = 0; r < m; ++r)
        for (int j = 0; j < n_; ++j)
            if (rows[r][j] != 0) {
                count[j]++;
                rowof[j] = r;
            }
    basis_.assign(m, -1);
    for (int j = 0; j < n_; ++j)
        if (count[j] == 1 && rows[rowof[j]][j] > 0 && basis_[rowof[j]] == -1) basis_[rowof[j]] = j;

    int artificials = 0;
    for (int r = 0; r < m; ++r)
        if (basis_[r] == -1) ++artificials;
    first_artificial_ = n_;
    total_ = n_ + artificials;

    T_.assign(m, std::vector<Rational>(total_ + 1));
    int next_art = first_artificial_;
    for (int r = 0; r < m; ++r) {
        for (int j = 0; j < n_; ++j) T_[r][j] = rows[r][j];
        T_[r][total_] = rhs[r];
        if (basis_[r] == -1) {
            basis_[r] = next_art;
            T_[r][next_art] = 1;
            ++next_art;
        } else {
            // scale so the basic column has a unit pivot
            Rational p = T_[r][basis_[r]];
            if (p != 1)
                for (int j = 0; j <= total_; ++j) T_[r][j] /= p;
        }
    }
}

void Simplex::pivot(int row, int col) {
    Rational p = T_[row][col];
    for (int j = 0; j <= total_; ++j) T_[row][j] /= p;
    for (std::size_t r = 0; r < T_.size(); ++r) {
        if (static_cast<int>(r) == row || T_[r][col] == 0) continue;
        Rational f = T_[r][col];
        for (int j = 0; j <= total_; ++j)
            if (T_[row][j] != 0) T_[r][j] -= f * T_[row][j];
    }
    basis_[row] = col;
}

Rational Simplex::run(const std::vector<Rational>& obj, bool forbid_artificials) {
    const int m = static_cast<int>(T_.size());
    const int limit = forbid_artificials ? first_artificial_ : total_;

    // reduced costs z_j = c_j - c_B B^-1 A_j, maintained from scratch per call
    std::vector<Rational> z(limit);
    Rational value = 0;
    auto recompute = [&] {
        for (int j = 0; j < limit; ++j) z[j] = j < static_cast<int>(obj.size()) ? obj[j] : Rational(0);
        value = 0;
        for (int r = 0; r < m; ++r) {
            const Rational cb = basis_[r] < static_cast<int>(obj.size()) ? obj[basis_[r]] : Rational(0);
            if (cb == 0) continue;
            value += cb * T_[r][total_];
            for (int j = 0; j < limit; ++j)
                if (T_[r][j] != 0) z[j] -= cb * T_[r][j];
        }
    };
    recompute();

    while (true) {
        // Bland: entering column = lowest index with negative reduced cost
        int enter = -1;
        for (int j = 0; j < limit; ++j)
            if (z[j] < 0) {
                enter = j;
                break;
            }
        if (enter == -1) return value;

        int leave = -1;
        Rational best;
        for (int r = 0; r < m; ++r) {
            if (T_[r][enter] <= 0) continue;
            Rational ratio = T_[r][total_] / T_[r][enter];
            if (leave == -1 || ratio < best ||
                (ratio == best && basis_[r] < basis_[leave])) {
                leave = r;
                best = ratio;
            }
        }
        if (leave == -1) throw InternalError("unbounded objective in simplex");

        // update reduced costs with the pivot row before the pivot mutates it
        Rational scale = z[enter] / T_[leave][enter];
        for (int j = 0; j < limit; ++j)
            if (T_[leave][j] != 0) z[j] -= scale * T_[leave][j];
        value += scale * T_[leave][total_];
        pivot(leave, enter);
    }
}

bool Simplex::feasible() {
    if (phase1_done_) return feasible_;
    phase1_done_ = true;

    std::vector<Rational> obj(total_);
    for (int j = first_artificial_; j < total_; ++j) obj[j] = 1;
    Rational opt = run(obj, false);
    if (opt != 0) {
        feasible_ = false;
        return false;
    }

    // Drive leftover artificials out of the basis where possible; rows that
    // cannot pivot are redundant and become harmless zero rows.
    for (std::size_t r = 0; r < T_.size(); ++r) {
        if (basis_[r] < first_artificial_) continue;
        int col = -1;
        for (int j = 0; j < first_artificial_; ++j)
            if (T_[r][j] != 0) {
                col = j;
                break;
            }
        if (col != -1) pivot(static_cast<int>(r), col);
    }
    feasible_ = true;
    return true;
}

Rational Simplex::maximize(int var) {
    if (!feasible()) throw InternalError("maximize called on infeasible system");
    std::vector<Rational> obj(total_);
    obj[var] = -1;  // minimize -x[var]
    return -run(obj, true);
}

std::vector<Rational> Simplex::solution() const {
    std::vector<Rational> x(n_, 0);
    for (std::size_t r = 0; r < T_.size(); ++r)
        if (basis_[r] < n_) x[basis_[r]] = T_[r][total_];
    return x;
}

}  // namespace pcsp::detail

#include "pcsp/tableaux.hpp"

#include <algorithm>
#include <sstream>

#include "pcsp/errors.hpp"

namespace pcsp {

Tuple Matrix01::column(int c) const {
    Tuple t(rows);
    for (int r = 0; r < rows; ++r) t[r] = at(r, c);
    return t;
}

int Matrix01::row_weight(int r) const {
    int w = 0;
    for (int c = 0; c < cols; ++c) w += at(r, c);
    return w;
}

void Matrix01::append_columns(const Matrix01& other) {
    if (rows != other.rows) throw DimError("appending columns with mismatched row count");
    Matrix01 merged = zeros(rows, cols + other.cols);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) merged.at(r, c) = at(r, c);
        for (int c = 0; c < other.cols; ++c) merged.at(r, cols + c) = other.at(r, c);
    }
    *this = std::move(merged);
}

Matrix01 cyclic_matrix(int k, int t) {
    if (k < 2 || t < 1 || t >= k) throw ParamError("cyclic matrix needs 1 <= t < k");
    Matrix01 m = Matrix01::zeros(k, k);
    for (int c = 0; c < k; ++c)
        for (int i = 0; i < t; ++i) m.at((c + i) % k, c) = 1;
    return m;
}

Matrix01 c_minus(int k, int t) {
    Matrix01 full = cyclic_matrix(k, t);
    Matrix01 m = Matrix01::zeros(k, k - 1);
    for (int r = 0; r < k; ++r)
        for (int c = 0; c < k - 1; ++c) m.at(r, c) = full.at(r, c);
    return m;
}

Matrix01 c_plus(int k, int t) {
    Matrix01 m = cyclic_matrix(k, t);
    Matrix01 extra = Matrix01::zeros(k, 1);
    for (int r = 0; r < t; ++r) extra.at(r, 0) = 1;
    m.append_columns(extra);
    return m;
}

Tuple Tableau::added_tuple() const {
    Tuple x(k, 0);
    for (int r = 0; r < d; ++r) x[r] = 1;
    return x;
}

Matrix01 Tableau::interleaved() const {
    const int n = arity();
    const int on_odd = (n + 1) / 2;  // positions 1,3,... hold ceil(n/2) columns
    const int fixed_count = fixed_on_odd ? on_odd : n - on_odd;
    if (fixed.cols != fixed_count)
        throw InternalError("fixed block size inconsistent with arity parity");
    Matrix01 m = Matrix01::zeros(k, n);
    int fi = 0, ci = 0;
    for (int pos = 0; pos < n; ++pos) {
        const bool odd_pos = pos % 2 == 0;  // 1-indexed odd coordinates
        const bool from_fixed = odd_pos == fixed_on_odd;
        for (int r = 0; r < k; ++r)
            m.at(r, pos) = from_fixed ? fixed.at(r, fi) : constructed.at(r, ci);
        (from_fixed ? fi : ci)++;
    }
    return m;
}

namespace {

struct Hypotheses {
    int k, t, d;
    bool heavier;     // t < d
    bool even_class;  // (k,t,d) == (1,0,0) mod 2
};

Hypotheses check_common(int prop, int k, int t, int d) {
    if (prop < 10 || prop > 13) throw CaseError("unknown construction family " + std::to_string(prop));
    if (k < 3) throw CaseError("k must be >= 3");
    if (t < 1 || t >= k) throw CaseError("t must satisfy 1 <= t < k");
    if (d < 1 || d >= k) throw CaseError("d must satisfy 1 <= d < k");
    if (d == t) throw CaseError("d must differ from t");
    if (d + t > k) throw CaseError("construction needs d + t <= k; negate the template first");
    Hypotheses h{k, t, d, t < d, (k % 2 == 1) && (t % 2 == 0) && (d % 2 == 0)};
    const bool parity_plain = (t % 2 == k % 2) || (d % 2 != t % 2);
    if (prop == 10 && !(h.heavier && !h.even_class && parity_plain))
        throw CaseError("family 10 needs t < d and t = k or d != t (mod 2)");
    if (prop == 11 && !(!h.heavier && !h.even_class && parity_plain))
        throw CaseError("family 11 needs d < t and t = k or d != t (mod 2)");
    if (prop == 12 && !(h.heavier && h.even_class))
        throw CaseError("family 12 needs t < d and (k,t,d) = (1,0,0) mod 2");
    if (prop == 13 && !(!h.heavier && h.even_class))
        throw CaseError("family 13 needs d < t and (k,t,d) = (1,0,0) mod 2");
    return h;
}

int scaled_copies(int prop, int k, int t, int d) {
    if (prop == 12) {
        const int r3 = static_cast<int>(ceil_div(Int(k - t), Int(d - t)));
        return std::max(Int(1), ceil_div(Int(r3 - 1), Int(t))).convert_to<int>();
    }
    if (prop == 13) {
        const int r3 = static_cast<int>(ceil_div(Int(k - t), Int(t - d)));
        return std::max(Int(1), ceil_div(Int(r3 + 2), Int(t))).convert_to<int>();
    }
    return 1;
}

Matrix01 repeated_cyclic(int k, int t, int copies) {
    Matrix01 m = Matrix01::zeros(k, 0);
    Matrix01 one = cyclic_matrix(k, t);
    for (int i = 0; i < copies; ++i) m.append_columns(one);
    return m;
}

void swap_cells(Matrix01& m, int r1, int r2, int c) {
    if (m.at(r1, c) == m.at(r2, c))
        throw InternalError("swap schedule hit equal cells at rows " + std::to_string(r1) + "," +
                            std::to_string(r2) + " column " + std::to_string(c));
    std::swap(m.at(r1, c), m.at(r2, c));
}

void place_x_column(Matrix01& m, int c, int d) {
    for (int r = 0; r < m.rows; ++r) m.at(r, c) = r < d;
}

// Averaged fill for the weight-pair case: r copies of x, then `budget`
// weight-t columns whose upper parts carry b or b+1 ones, placed top to
// bottom with wrap-around, continuing below the previous column's last 1.
struct FillSpec {
    int r, budget;
    Rational lo1, hi1, lo2, hi2;
    int cap;  // a must also satisfy 0 <= a <= cap
};

std::pair<Matrix01, CaseParams> averaged_fill(const FillSpec& f, int k, int t, int d,
                                              std::optional<Rational> a_override) {
    CaseParams p;
    p.k = k;
    p.t = t;
    p.d = d;
    p.r = f.r;
    p.lo1 = f.lo1;
    p.hi1 = f.hi1;
    p.lo2 = f.lo2;
    p.hi2 = f.hi2;
    if (f.budget <= 0) throw InternalError("no columns left for the averaged fill");

    const Rational lo = std::max({Rational(0), f.lo1, f.lo2});
    const Rational hi = std::min({Rational(f.cap), f.hi1, f.hi2});
    Rational a;
    if (a_override) {
        a = *a_override;
        if (a < lo || a > hi)
            throw CaseError("a = " + a.str() + " outside the admissible interval [" + lo.str() +
                            ", " + hi.str() + "]");
        if (rational_den(Rational(a * f.budget)) != 1)
            throw CaseError("a must be a multiple of 1/" + std::to_string(f.budget));
    } else {
        // smallest admissible value; the bounds already have denominator
        // equal to the budget, so no rounding is needed
        a = lo;
        if (a > hi) throw InternalError("empty admissible interval for a");
        if (rational_den(Rational(a * f.budget)) != 1)
            throw InternalError("interval endpoint not a multiple of 1/budget");
    }
    const int b = rational_floor(a).convert_to<int>();
    const Rational s_rat = Rational(f.budget) * (Rational(b + 1) - a);
    if (rational_den(s_rat) != 1) throw InternalError("s is not integral");
    const int s = rational_num(s_rat).convert_to<int>();
    if (s < 0 || s > f.budget) throw InternalError("s outside [0, budget]");
    p.a = a;
    p.b = b;
    p.s = s;

    Matrix01 m = Matrix01::zeros(k, f.r + f.budget);
    for (int c = 0; c < f.r; ++c) place_x_column(m, c, d);

    const int upper_rows = d, lower_rows = k - d;
    int cur_u = 0, cur_l = 0;
    for (int j = 0; j < f.budget; ++j) {
        const int qu = j < s ? b : b + 1;
        const int ql = t - qu;
        if (qu > upper_rows || ql > lower_rows || qu < 0 || ql < 0)
            throw InternalError("column quota does not fit its row block");
        const int c = f.r + j;
        for (int i = 0; i < qu; ++i) m.at((cur_u + i) % upper_rows, c) = 1;
        cur_u = upper_rows ? (cur_u + qu) % upper_rows : 0;
        for (int i = 0; i < ql; ++i) m.at(d + (cur_l + i) % lower_rows, c) = 1;
        cur_l = lower_rows ? (cur_l + ql) % lower_rows : 0;
    }
    return {std::move(m), std::move(p)};
}

int int_ceil_div(int a, int b) { return (a + b - 1) / b; }

}  // namespace

std::pair<Tableau, CaseParams> build_case(int prop, const std::string& case_id, int k, int t,
                                          int d, std::optional<Rational> a_override) {
    const Hypotheses h = check_common(prop, k, t, d);
    const int L = scaled_copies(prop, k, t, d);

    std::string cid = case_id;
    if (cid == "2" && prop == 10) cid = (t % 2 == k % 2) ? "2a" : "2b";
    if ((cid == "2a" || cid == "2b") && prop == 10) {
        const bool is_2a = t % 2 == k % 2;
        if ((cid == "2a") != is_2a)
            throw CaseError("case " + cid + " does not apply to these parities");
    }
    if ((cid == "2a" || cid == "2b") && prop != 10) cid = "2";
    if (a_override && cid != "3") throw CaseError("a applies to case 3 only");

    Tableau tab;
    tab.k = k;
    tab.t = t;
    tab.d = d;
    tab.L = L;
    tab.fixed_on_odd = (prop == 10 || prop == 13);
    tab.fixed = repeated_cyclic(k, t, L);

    CaseParams params;
    params.k = k;
    params.t = t;
    params.d = d;
    params.L = L;

    const Rational B10(k - 1 - int_ceil_div(t, d - t));  // budget, family 10 case 3

    switch (prop) {
        case 10: {
            if (cid == "1") {
                tab.constructed = c_minus(k, t);
                tab.weights = {t - 1, t};
            } else if (cid == "2a") {
                tab.constructed = c_minus(k, t);
                for (int i = 0; 2 * i < k - t; ++i)
                    swap_cells(tab.constructed, t - 1 + 2 * i, t + 2 * i, t + 2 * i);
                tab.weights = {t - 1, t + 1};
            } else if (cid == "2b") {
                tab.constructed = c_minus(k, t);
                place_x_column(tab.constructed, 0, d);
                params.r = 1;
                if (t >= 2)
                    swap_cells(tab.constructed, t - 1, d, 1);
                else
                    swap_cells(tab.constructed, 0, d, d);
                for (int i = 0; d + 2 + 2 * i <= k - 2; ++i)
                    swap_cells(tab.constructed, d + 1 + 2 * i, d + 2 + 2 * i, d + 2 + 2 * i);
                tab.weights = {t - 1, t + 1};
            } else if (cid == "3") {
                const int r = int_ceil_div(t, d - t);
                const int budget = k - 1 - r;
                FillSpec f{r, budget,
                           Rational(d * (t - r), budget), Rational(t * (d - r - 1), budget),
                           Rational(t * (d - r - 1) - (k - d), budget),
                           Rational(d * (t - r + 1), budget), t};
                auto [m, p] = averaged_fill(f, k, t, d, a_override);
                tab.constructed = std::move(m);
                p.L = L;
                params = std::move(p);
                tab.weights = {t, t + 1};
            } else {
                throw CaseError("family 10 has cases 1, 2a, 2b, 3");
            }
            break;
        }
        case 11: {
            if (cid == "1") {
                tab.constructed = c_plus(k, t);
                tab.weights = {t, t + 1};
            } else if (cid == "2") {
                tab.constructed = c_plus(k, t);
                if (t % 2 == k % 2) {
                    for (int i = 0; 2 * i < k - t; ++i)
                        swap_cells(tab.constructed, t + 2 * i, t + 1 + 2 * i, t + 1 + 2 * i);
                } else {
                    place_x_column(tab.constructed, 0, d);
                    params.r = 1;
                    for (int i = 0; 2 * i < k - d; ++i)
                        swap_cells(tab.constructed, d + 2 * i, d + 1 + 2 * i, d + 1 + 2 * i);
                }
                tab.weights = {t - 1, t + 1};
            } else if (cid == "3") {
                const int r = int_ceil_div(t, t - d);
                const int budget = k + 1 - r;
                FillSpec f{r, budget,
                           Rational(t * (d - r + 1), budget), Rational(d * (t - r), budget),
                           Rational(d * (t - 1 - r), budget),
                           Rational(t * (d - r + 1) + (k - d), budget), d};
                auto [m, p] = averaged_fill(f, k, t, d, a_override);
                tab.constructed = std::move(m);
                p.L = L;
                params = std::move(p);
                tab.weights = {t - 1, t};
            } else {
                throw CaseError("family 11 has cases 1, 2, 3");
            }
            break;
        }
        case 12: {
            const int off = (L - 1) * k;  // swaps act on the modified copy
            if (cid == "1" || cid == "2") {
                tab.constructed = repeated_cyclic(k, t, L - 1);
                tab.constructed.append_columns(c_plus(k, t));
                if (cid == "2") {
                    for (int i = 0; 2 * i < t; ++i)
                        swap_cells(tab.constructed, 2 * i, 1 + 2 * i, off + 1 + 2 * i);
                    tab.weights = {L * t, L * t + 2};
                } else {
                    tab.weights = {L * t, L * t + 1};
                }
            } else if (cid == "3") {
                const int r = int_ceil_div(k - t, d - t);
                const int budget = L * k + 1 - r;
                FillSpec f{r, budget,
                           Rational(d * (L * t + 1 - r), budget),
                           Rational(t * (L * d + 1 - r) - (k - d), budget),
                           Rational(t * (L * d + 1 - r) - 2 * (k - d), budget),
                           Rational(d * (L * t + 2 - r), budget), t};
                auto [m, p] = averaged_fill(f, k, t, d, a_override);
                tab.constructed = std::move(m);
                p.L = L;
                params = std::move(p);
                tab.weights = {L * t + 1, L * t + 2};
            } else {
                throw CaseError("family 12 has cases 1, 2, 3");
            }
            break;
        }
        case 13: {
            const int off = (L - 1) * k;
            if (cid == "1" || cid == "2") {
                tab.constructed = repeated_cyclic(k, t, L - 1);
                tab.constructed.append_columns(c_minus(k, t));
                if (cid == "2") {
                    for (int i = 0; 2 * i < t - 2; ++i)
                        swap_cells(tab.constructed, 2 * i, 1 + 2 * i, off + 1 + 2 * i);
                    swap_cells(tab.constructed, t - 2, k - 1, off + k - 2);
                    tab.weights = {L * t - 2, L * t};
                } else {
                    tab.weights = {L * t - 1, L * t};
                }
            } else if (cid == "3") {
                const int r = int_ceil_div(k - t, t - d);
                const int budget = L * k - 1 - r;
                FillSpec f{r, budget,
                           Rational(t * (L * d - 1 - r) + (k - d), budget),
                           Rational(d * (L * t - 1 - r), budget),
                           Rational(d * (L * t - 2 - r), budget),
                           Rational(t * (L * d - 1 - r) + 2 * (k - d), budget), d};
                auto [m, p] = averaged_fill(f, k, t, d, a_override);
                tab.constructed = std::move(m);
                p.L = L;
                params = std::move(p);
                tab.weights = {L * t - 2, L * t - 1};
            } else {
                throw CaseError("family 13 has cases 1, 2, 3");
            }
            break;
        }
    }
    (void)B10;
    params.k = k;
    params.t = t;
    params.d = d;
    params.L = L;
    return {std::move(tab), std::move(params)};
}

bool verify_tableau(const Tableau& tab) {
    // (c) fixed block is exactly L copies of the cyclic matrix
    const Matrix01 expect = repeated_cyclic(tab.k, tab.t, tab.L);
    if (!(tab.fixed == expect)) return false;

    // (a) every constructed column is a weight-t tuple or the added tuple
    const Tuple x = tab.added_tuple();
    for (int c = 0; c < tab.constructed.cols; ++c) {
        const Tuple col = tab.constructed.column(c);
        if (col != x && weight(col) != tab.t) return false;
    }
    // (b) constructed-block row weights land in the pair
    for (int r = 0; r < tab.k; ++r) {
        const int w = tab.constructed.row_weight(r);
        if (w != tab.weights.first && w != tab.weights.second) return false;
    }
    return true;
}

CertificateShape certificate_shape(int k, int t, int d) {
    if (k < 3) throw CaseError("k must be >= 3");
    if (t < 1 || t >= k) throw CaseError("t must satisfy 1 <= t < k");
    if (d < 1 || d >= k || d == t) throw CaseError("d must satisfy 1 <= d < k, d != t");
    if (t % 2 == 1 && k % 2 == 0 && d % 2 == 1)
        throw CaseError("no refutation: t odd, k even, d odd admits block-symmetric candidates");

    CertificateShape s;
    s.negated = t + d > k;
    s.norm_t = s.negated ? k - t : t;
    s.norm_d = s.negated ? k - d : d;
    const bool even_class = (k % 2 == 1) && (s.norm_t % 2 == 0) && (s.norm_d % 2 == 0);
    if (s.norm_t < s.norm_d)
        s.prop = even_class ? 12 : 10;
    else
        s.prop = even_class ? 13 : 11;
    s.L = scaled_copies(s.prop, k, s.norm_t, s.norm_d);
    switch (s.prop) {
        case 10: s.arity = 2 * k - 1; break;
        case 11: s.arity = 2 * k + 1; break;
        case 12: s.arity = 2 * s.L * k + 1; break;
        case 13: s.arity = 2 * s.L * k - 1; break;
    }
    return s;
}

RefutationCertificate refute(int k, int t, int d) {
    RefutationCertificate cert;
    cert.k = k;
    cert.t = t;
    cert.d = d;
    cert.shape = certificate_shape(k, t, d);
    const int tn = cert.shape.norm_t, dn = cert.shape.norm_d, L = cert.shape.L;

    std::vector<std::string> order;
    switch (cert.shape.prop) {
        case 10:
            cert.weight_set = {tn - 1, tn, tn + 1};
            order = {"1", "2", "3"};  // pairs {w1,w2}, {w1,w3}, {w2,w3}
            break;
        case 11:
            cert.weight_set = {tn - 1, tn, tn + 1};
            order = {"3", "2", "1"};
            break;
        case 12:
            cert.weight_set = {L * tn, L * tn + 1, L * tn + 2};
            order = {"1", "2", "3"};
            break;
        case 13:
            cert.weight_set = {L * tn - 2, L * tn - 1, L * tn};
            order = {"3", "2", "1"};
            break;
    }
    for (const std::string& cid : order) {
        auto [tab, params] = build_case(cert.shape.prop, cid, k, tn, dn);
        if (!verify_tableau(tab))
            throw InternalError("constructed tableau failed verification");
        if (tab.arity() != cert.shape.arity)
            throw InternalError("tableau arity disagrees with certificate shape");
        cert.tableaux.push_back(std::move(tab));
        cert.params.push_back(std::move(params));
    }
    return cert;
}

std::string render_ascii(const Tableau& tab) {
    std::ostringstream os;
    const Tuple x = tab.added_tuple();
    int leading_x = 0;
    while (leading_x < tab.constructed.cols && tab.constructed.column(leading_x) == x)
        ++leading_x;

    auto emit_row = [&](int r) {
        for (int c = 0; c < tab.fixed.cols; ++c) os << int(tab.fixed.at(r, c));
        os << '|';
        for (int c = 0; c < tab.constructed.cols; ++c) {
            if (c == leading_x && leading_x > 0) os << '|';
            os << int(tab.constructed.at(r, c));
        }
        os << '\n';
    };
    for (int r = 0; r < tab.k; ++r) {
        if (r == tab.d) os << std::string(tab.arity() + 1 + (leading_x > 0 ? 1 : 0), '-') << '\n';
        emit_row(r);
    }
    return os.str();
}

}  // namespace pcsp

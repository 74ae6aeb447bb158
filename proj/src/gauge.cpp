#include "homobraid/gauge.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace hb {

void QLaurent::add_to(int e, const Rat& v) {
    auto it = c.find(e);
    if (it == c.end()) {
        if (v != 0) c.emplace(e, v);
        return;
    }
    it->second += v;
    if (it->second == 0) c.erase(it);
}

std::string qlaurent_str(const QLaurent& a) {
    if (a.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [e, v] : a.c) {
        std::string vs = v.get_str();
        if (!first && vs[0] != '-') os << "+";
        first = false;
        if (e == 0) {
            os << vs;
        } else {
            if (v == 1)
                ;
            else if (v == -1)
                os << "-";
            else
                os << vs << "*";
            os << "t";
            if (e != 1) os << "^" << e;
        }
    }
    return os.str();
}

void TruncatedLoopMatrix::truncate() {
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            auto& cc = at(i, j).c;
            for (auto it = cc.begin(); it != cc.end();) {
                int g = grade_of(i, j, it->first);
                if (g < grade_lo || g > grade_hi)
                    it = cc.erase(it);
                else
                    ++it;
            }
        }
}

bool TruncatedLoopMatrix::is_zero() const {
    for (const auto& e : a)
        if (!e.is_zero()) return false;
    return true;
}

bool TruncatedLoopMatrix::equals(const TruncatedLoopMatrix& o) const {
    if (n != o.n) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i].c != o.a[i].c) return false;
    return true;
}

TruncatedLoopMatrix tlm_zero_like(const TruncatedLoopMatrix& m) {
    return TruncatedLoopMatrix(m.n, m.d, m.grade_lo, m.grade_hi);
}

TruncatedLoopMatrix tlm_identity(int n, int d, int lo, int hi) {
    TruncatedLoopMatrix m(n, d, lo, hi);
    for (int i = 0; i < n; ++i) m.at(i, i).add_to(0, 1);
    return m;
}

TruncatedLoopMatrix tlm_add(const TruncatedLoopMatrix& a, const TruncatedLoopMatrix& b) {
    TruncatedLoopMatrix r = a;
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < a.n; ++j)
            for (auto& [e, v] : b.at(i, j).c) r.at(i, j).add_to(e, v);
    r.truncate();
    return r;
}

TruncatedLoopMatrix tlm_sub(const TruncatedLoopMatrix& a, const TruncatedLoopMatrix& b) {
    TruncatedLoopMatrix r = a;
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < a.n; ++j)
            for (auto& [e, v] : b.at(i, j).c) r.at(i, j).add_to(e, -v);
    r.truncate();
    return r;
}

TruncatedLoopMatrix tlm_mul(const TruncatedLoopMatrix& a, const TruncatedLoopMatrix& b) {
    TruncatedLoopMatrix r = tlm_zero_like(a);
    for (int i = 0; i < a.n; ++i)
        for (int k = 0; k < a.n; ++k) {
            if (a.at(i, k).is_zero()) continue;
            for (int j = 0; j < a.n; ++j) {
                if (b.at(k, j).is_zero()) continue;
                for (auto& [ea, va] : a.at(i, k).c)
                    for (auto& [eb, vb] : b.at(k, j).c) r.at(i, j).add_to(ea + eb, va * vb);
            }
        }
    r.truncate();
    return r;
}

TruncatedLoopMatrix tlm_scale(const TruncatedLoopMatrix& a, const Rat& s) {
    TruncatedLoopMatrix r = tlm_zero_like(a);
    if (s == 0) return r;
    for (size_t i = 0; i < a.a.size(); ++i)
        for (auto& [e, v] : a.a[i].c) r.a[i].c[e] = v * s;
    return r;
}

TruncatedLoopMatrix tlm_bracket(const TruncatedLoopMatrix& a, const TruncatedLoopMatrix& b) {
    return tlm_sub(tlm_mul(a, b), tlm_mul(b, a));
}

QLaurent tlm_trace(const TruncatedLoopMatrix& a) {
    QLaurent t;
    for (int i = 0; i < a.n; ++i)
        for (auto& [e, v] : a.at(i, i).c) t.add_to(e, v);
    return t;
}

TruncatedLoopMatrix companion_psi(int n, int d, int grade_lo, int grade_hi) {
    TruncatedLoopMatrix c(n, d, grade_lo, grade_hi);
    for (int i = 0; i + 1 < n; ++i) c.at(i, i + 1).add_to(0, 1);
    c.at(n - 1, 0).add_to(1, 1);
    if (n == 1) c.at(0, 0).add_to(1, 1);
    TruncatedLoopMatrix p = tlm_identity(n, d, grade_lo, grade_hi);
    for (int k = 0; k < d; ++k) p = tlm_mul(p, c);
    p.d = d;
    return p;
}

TruncatedLoopMatrix graded_component(const TruncatedLoopMatrix& m, int grade_num) {
    TruncatedLoopMatrix r = tlm_zero_like(m);
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j)
            for (auto& [e, v] : m.at(i, j).c)
                if (m.grade_of(i, j, e) == grade_num) r.at(i, j).c[e] = v;
    return r;
}

std::vector<int> support_grades(const TruncatedLoopMatrix& m) {
    std::vector<int> gs;
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j)
            for (auto& [e, v] : m.at(i, j).c) gs.push_back(m.grade_of(i, j, e));
    std::sort(gs.begin(), gs.end());
    gs.erase(std::unique(gs.begin(), gs.end()), gs.end());
    return gs;
}

TruncatedLoopMatrix tlm_exp(const TruncatedLoopMatrix& y) {
    TruncatedLoopMatrix acc = tlm_identity(y.n, y.d, y.grade_lo, y.grade_hi);
    TruncatedLoopMatrix term = tlm_identity(y.n, y.d, y.grade_lo, y.grade_hi);
    Rat fact = 1;
    for (int k = 1; k <= 2048; ++k) {
        term = tlm_mul(term, y);
        if (term.is_zero()) return acc;
        fact *= k;
        acc = tlm_add(acc, tlm_scale(term, Rat(1) / fact));
    }
    throw internal_invariant_error("exp series did not terminate; Y must have negative grade");
}

std::vector<QLaurent> char_poly_coeffs(const TruncatedLoopMatrix& m) {
    // Newton's identities: e_k = (1/k) sum_{i=1..k} (-1)^{i-1} e_{k-i} p_i
    int n = m.n;
    std::vector<QLaurent> p(n + 1), e(n + 1);
    TruncatedLoopMatrix pow = m;
    for (int k = 1; k <= n; ++k) {
        p[k] = tlm_trace(pow);
        if (k < n) pow = tlm_mul(pow, m);
    }
    e[0].add_to(0, 1);
    for (int k = 1; k <= n; ++k) {
        QLaurent acc;
        for (int i = 1; i <= k; ++i) {
            // (-1)^{i-1} e_{k-i} * p_i
            for (auto& [e1, v1] : e[k - i].c)
                for (auto& [e2, v2] : p[i].c)
                    acc.add_to(e1 + e2, (i % 2 == 1 ? v1 * v2 : -v1 * v2));
        }
        for (auto& [ee, vv] : acc.c) e[k].add_to(ee, vv / k);
    }
    return std::vector<QLaurent>(e.begin() + 1, e.end());
}

namespace {

struct Unknown {
    int i, j, k;  // entry and t-exponent
};

// unknown slots for a homogeneous matrix of given grade inside the window
std::vector<Unknown> grade_slots(int n, int grade_num, int grade_lo, int grade_hi) {
    std::vector<Unknown> slots;
    if (grade_num < grade_lo || grade_num > grade_hi) return slots;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int num = grade_num - (j - i);
            if (num % n != 0) continue;
            slots.push_back({i, j, num / n});
        }
    return slots;
}

}  // namespace

TruncatedLoopMatrix solve_bracket(const TruncatedLoopMatrix& psi,
                                  const TruncatedLoopMatrix& x, int x_grade) {
    const int n = psi.n;
    const int d = psi.d;
    // orthogonality precheck: tr(psi^l X) = 0 for l = 0..n-1 (the differentials
    // of the invariants span the centralizer)
    TruncatedLoopMatrix pow = tlm_identity(n, d, psi.grade_lo, psi.grade_hi);
    for (int l = 0; l < n; ++l) {
        QLaurent tr = tlm_trace(tlm_mul(pow, x));
        if (!tr.is_zero()) {
            std::ostringstream os;
            os << "X is not in [g, psi]: <df_" << (l + 1) << "(psi), X> = " << qlaurent_str(tr)
               << " != 0 (grade " << x_grade << "/" << n << ")";
            throw invalid_input(os.str());
        }
        pow = tlm_mul(pow, psi);
    }

    int y_grade = x_grade - d;
    auto slots = grade_slots(n, y_grade, psi.grade_lo, psi.grade_hi);
    auto x_slots = grade_slots(n, x_grade, psi.grade_lo, psi.grade_hi);
    const int u = static_cast<int>(slots.size());
    const int rows = static_cast<int>(x_slots.size());

    // build [Y, psi] coordinates as linear forms in the unknowns
    std::vector<std::vector<Rat>> A(rows, std::vector<Rat>(u + 1, Rat(0)));
    for (int s = 0; s < u; ++s) {
        TruncatedLoopMatrix y(n, d, psi.grade_lo, psi.grade_hi);
        y.at(slots[s].i, slots[s].j).add_to(slots[s].k, 1);
        TruncatedLoopMatrix br = tlm_bracket(y, psi);
        for (int r = 0; r < rows; ++r)
            A[r][s] = br.at(x_slots[r].i, x_slots[r].j).coeff(x_slots[r].k);
    }
    for (int r = 0; r < rows; ++r)
        A[r][u] = x.at(x_slots[r].i, x_slots[r].j).coeff(x_slots[r].k);

    // Gaussian elimination
    std::vector<int> pivot_of_row;
    int rank = 0;
    for (int col = 0; col < u && rank < rows; ++col) {
        int pr = -1;
        for (int r = rank; r < rows; ++r)
            if (A[r][col] != 0) { pr = r; break; }
        if (pr < 0) continue;
        std::swap(A[rank], A[pr]);
        Rat s = A[rank][col];
        for (auto& v : A[rank]) v /= s;
        for (int r = 0; r < rows; ++r) {
            if (r == rank || A[r][col] == 0) continue;
            Rat c = A[r][col];
            for (int cc = 0; cc <= u; ++cc) A[r][cc] -= c * A[rank][cc];
        }
        pivot_of_row.push_back(col);
        ++rank;
    }
    for (int r = rank; r < rows; ++r)
        if (A[r][u] != 0)
            throw internal_invariant_error(
                "bracket system inconsistent despite orthogonality precheck");

    std::vector<bool> is_pivot(u, false);
    for (int c : pivot_of_row) is_pivot[c] = true;
    // particular solution: free vars = 0
    std::vector<Rat> part(u, Rat(0));
    for (int r = 0; r < rank; ++r) part[pivot_of_row[r]] = A[r][u];
    // kernel basis
    std::vector<std::vector<Rat>> kernel;
    for (int free = 0; free < u; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rat> k(u, Rat(0));
        k[free] = 1;
        for (int r = 0; r < rank; ++r) k[pivot_of_row[r]] = -A[r][free];
        kernel.push_back(std::move(k));
    }
    // minimal-norm: subtract the projection of `part` onto the kernel
    if (!kernel.empty()) {
        const int kd = static_cast<int>(kernel.size());
        std::vector<std::vector<Rat>> gram(kd, std::vector<Rat>(kd + 1, Rat(0)));
        for (int i = 0; i < kd; ++i) {
            for (int j = 0; j < kd; ++j)
                for (int s = 0; s < u; ++s) gram[i][j] += kernel[i][s] * kernel[j][s];
            for (int s = 0; s < u; ++s) gram[i][kd] += kernel[i][s] * part[s];
        }
        // solve gram * lambda = rhs
        for (int col = 0; col < kd; ++col) {
            int pr = -1;
            for (int r = col; r < kd; ++r)
                if (gram[r][col] != 0) { pr = r; break; }
            if (pr < 0) throw internal_invariant_error("degenerate Gram matrix");
            std::swap(gram[col], gram[pr]);
            Rat s = gram[col][col];
            for (auto& v : gram[col]) v /= s;
            for (int r = 0; r < kd; ++r) {
                if (r == col || gram[r][col] == 0) continue;
                Rat c = gram[r][col];
                for (int cc = 0; cc <= kd; ++cc) gram[r][cc] -= c * gram[col][cc];
            }
        }
        for (int i = 0; i < kd; ++i)
            for (int s = 0; s < u; ++s) part[s] -= gram[i][kd] * kernel[i][s];
    }

    TruncatedLoopMatrix y(n, d, psi.grade_lo, psi.grade_hi);
    for (int s = 0; s < u; ++s)
        if (part[s] != 0) y.at(slots[s].i, slots[s].j).add_to(slots[s].k, part[s]);
    // exact residual check
    TruncatedLoopMatrix resid = tlm_sub(tlm_bracket(y, psi), x);
    if (!resid.is_zero())
        throw internal_invariant_error("solve_bracket produced nonzero residual");
    return y;
}

TruncatedLoopMatrix ad_action(const TruncatedLoopMatrix& g, const TruncatedLoopMatrix& x) {
    // Ad(g) x = g x g^{-1}; g is a finite product of exponentials, but here we
    // only need conjugation by an explicitly given unit, so invert by series:
    // g = 1 + N with N of negative grade; g^{-1} = sum (-N)^k
    TruncatedLoopMatrix one = tlm_identity(g.n, g.d, g.grade_lo, g.grade_hi);
    TruncatedLoopMatrix nmat = tlm_sub(g, one);
    TruncatedLoopMatrix ginv = one;
    TruncatedLoopMatrix term = one;
    for (int k = 1; k <= 4096; ++k) {
        term = tlm_mul(term, nmat);
        if (term.is_zero()) break;
        if (k == 4096) throw internal_invariant_error("inverse series did not terminate");
        ginv = (k % 2 == 1) ? tlm_sub(ginv, term) : tlm_add(ginv, term);
    }
    return tlm_mul(tlm_mul(g, x), ginv);
}

ProUnipotentElement gauge_to(const TruncatedLoopMatrix& psi,
                             const TruncatedLoopMatrix& psi_prime, int depth) {
    const int n = psi.n;
    const int d = psi.d;
    // precondition: psi' - psi supported in grades <= 0
    TruncatedLoopMatrix defect = tlm_sub(psi_prime, psi);
    for (int g : support_grades(defect))
        if (g > 0) throw invalid_input("psi' must lie in psi + (grades <= 0)");

    ProUnipotentElement out;
    out.product = tlm_identity(n, d, psi.grade_lo, psi.grade_hi);
    // walk psi toward psi': maintain cur = Ad(g) psi
    TruncatedLoopMatrix cur = psi;
    for (int j = 0; j >= -depth; --j) {
        TruncatedLoopMatrix x = graded_component(tlm_sub(psi_prime, cur), j);
        if (x.is_zero()) continue;
        TruncatedLoopMatrix y;
        try {
            y = solve_bracket(psi, x, j);
        } catch (const invalid_input& err) {
            std::ostringstream os;
            os << "characteristic polynomial mismatch detected at grade " << j << "/" << n
               << ": " << err.what();
            throw internal_invariant_error(os.str());
        }
        TruncatedLoopMatrix expy = tlm_exp(y);
        cur = ad_action(expy, cur);
        out.factors.push_back({j - d, y});
        out.product = tlm_mul(expy, out.product);
        // the grade-j component must now agree exactly
        if (!graded_component(tlm_sub(psi_prime, cur), j).is_zero())
            throw internal_invariant_error("gauge step failed to clear its grade");
    }
    // residual must vanish on every grade >= -depth
    TruncatedLoopMatrix resid = tlm_sub(psi_prime, cur);
    for (int g : support_grades(resid))
        if (g >= -depth)
            throw internal_invariant_error("gauge_to residual nonzero at grade " +
                                           std::to_string(g));
    return out;
}

std::optional<TruncatedLoopMatrix> centralizer_element(int n, int d, int grade_num,
                                                       int grade_lo, int grade_hi) {
    // psi^k t^l has grade k d + l n
    for (int k = 0; k < n; ++k) {
        int rem = grade_num - k * d;
        if (rem % n != 0) continue;
        int l = rem / n;
        TruncatedLoopMatrix psi = companion_psi(n, d, grade_lo, grade_hi);
        TruncatedLoopMatrix pow = tlm_identity(n, d, grade_lo, grade_hi);
        for (int i = 0; i < k; ++i) pow = tlm_mul(pow, psi);
        TruncatedLoopMatrix shifted(n, d, grade_lo, grade_hi);
        for (int i = 0; i < n; ++i)
            for (int jj = 0; jj < n; ++jj)
                for (auto& [e, v] : pow.at(i, jj).c) shifted.at(i, jj).add_to(e + l, v);
        shifted.truncate();
        if (!shifted.is_zero()) return shifted;
    }
    return std::nullopt;
}

TruncatedLoopMatrix random_pro_unipotent(int n, int d, int grade_lo, int grade_hi,
                                         int levels, std::uint64_t seed) {
    std::mt19937_64 rng(seed ^ 0xc2b2ae3d27d4eb4fULL);
    std::uniform_int_distribution<int> num(-4, 4);
    std::uniform_int_distribution<int> den(1, 3);
    TruncatedLoopMatrix g = tlm_identity(n, d, grade_lo, grade_hi);
    for (int lvl = 1; lvl <= levels; ++lvl) {
        TruncatedLoopMatrix z(n, d, grade_lo, grade_hi);
        for (auto& slot : grade_slots(n, -lvl, grade_lo, grade_hi)) {
            Rat v(num(rng), den(rng));
            v.canonicalize();
            if (v != 0) z.at(slot.i, slot.j).add_to(slot.k, v);
        }
        if (z.is_zero()) continue;
        g = tlm_mul(g, tlm_exp(z));
    }
    return g;
}

}  // namespace hb

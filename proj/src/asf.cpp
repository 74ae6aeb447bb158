#include "homobraid/asf.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace hb {

HomogeneousElement make_homogeneous(int n, int d, int q) {
    if (n < 1 || d < 1) throw invalid_input("need n >= 1, d >= 1");
    if (std::gcd(n, d) != 1)
        throw invalid_input("gcd(n, d) must be 1 (elliptic case only; otherwise Fl is infinite)");
    HomogeneousElement h;
    h.n = n;
    h.d = d;
    h.field = make_gf(q);
    LMatGF c(h.field, n);
    for (int i = 0; i + 1 < n; ++i) c.at(i, i + 1) = laurent_monomial(0, 1);
    c.at(n - 1, 0) = laurent_monomial(1, 1);
    if (n == 1) c.at(0, 0) = laurent_monomial(1, 1);
    LMatGF p = LMatGF::identity(h.field, n);
    for (int k = 0; k < d; ++k) p = p.mul(c);
    h.psi = p;
    return h;
}

namespace {

// ---- spectral-window enumeration -------------------------------------------
//
// Positions are s-exponents e in [-nA, nA), stored at index e + nA. A module
// is a reduced F_q-basis: one vector per pivot, pivot coefficient 1, zeros at
// the other pivots. Everything at exponent >= nA is implicitly contained.

struct SpectralEnum {
    int n, d, A, nA;
    GFPtr f;
    std::vector<Lattice> out;

    SpectralEnum(const HomogeneousElement& h, int window)
        : n(h.n), d(h.d), A(window), nA(h.n * window), f(h.field) {}

    int q() const { return f->q(); }

    void run() {
        std::vector<int> membership(2 * nA, -1);  // -1 undecided, 0 out, 1 in
        choose(2 * nA - 1, 0, membership);
    }

    // decide positions from high (index 2nA-1, exponent nA-1) to low
    void choose(int idx, int chosen, std::vector<int>& memb) {
        int min_size = nA - (n - 1), max_size = nA + (n - 1);
        if (chosen > max_size) return;
        if (chosen + idx + 1 < min_size) return;
        if (idx < 0) {
            if (chosen >= min_size && chosen <= max_size) build_modules(memb);
            return;
        }
        int e = idx - nA;
        // include e: closure requires e+n and e+d present (or beyond window)
        bool can_include = true;
        if (e + n < nA && memb[e + n + nA] == 0) can_include = false;
        if (e + d < nA && memb[e + d + nA] == 0) can_include = false;
        if (can_include) {
            memb[idx] = 1;
            choose(idx - 1, chosen + 1, memb);
        }
        memb[idx] = 0;
        choose(idx - 1, chosen, memb);
        memb[idx] = -1;
    }

    // affine form over the current pivot's unknowns: value = c[unknowns...] + const
    struct Affine {
        std::vector<int> lin;
        int cst = 0;
        bool is_zero() const {
            if (cst != 0) return false;
            for (int v : lin)
                if (v != 0) return false;
            return true;
        }
    };

    void build_modules(const std::vector<int>& memb) {
        std::vector<int> pivots;  // exponents, ascending
        for (int idx = 0; idx < 2 * nA; ++idx)
            if (memb[idx] == 1) pivots.push_back(idx - nA);
        // basis[e + nA] = reduced vector for pivot e (window length 2nA)
        std::map<int, std::vector<int>> basis;
        dfs_pivot(static_cast<int>(pivots.size()) - 1, pivots, memb, basis);
    }

    void dfs_pivot(int pi, const std::vector<int>& pivots, const std::vector<int>& memb,
                   std::map<int, std::vector<int>>& basis) {
        if (pi < 0) {
            emit(pivots, basis);
            return;
        }
        int e = pivots[pi];
        std::vector<int> gaps;  // unknown positions: j in (e, nA), j not in V
        for (int j = e + 1; j < nA; ++j)
            if (memb[j + nA] == 0) gaps.push_back(j);
        const int u = static_cast<int>(gaps.size());

        // equations from s^n f_e in L and s^d f_e in L
        std::vector<std::vector<int>> eqs;  // rows: u coefficients + rhs-const
        for (int op : {n, d}) {
            std::vector<Affine> y(2 * nA);
            for (auto& a : y) a.lin.assign(u, 0);
            if (e + op < nA) y[e + op + nA].cst = 1;
            for (int gi = 0; gi < u; ++gi)
                if (gaps[gi] + op < nA) y[gaps[gi] + op + nA].lin[gi] = 1;
            for (int pos = e + op; pos < nA; ++pos) {
                if (pos < -nA) continue;
                Affine& a = y[pos + nA];
                if (a.is_zero()) continue;
                if (memb[pos + nA] == 1) {
                    // subtract a * f_pos (already built since pos > e)
                    const std::vector<int>& fp = basis.at(pos);
                    for (int k = pos + 1; k < nA; ++k) {
                        int c = fp[k + nA];
                        if (c == 0) continue;
                        Affine& t = y[k + nA];
                        t.cst = f->sub(t.cst, f->mul(a.cst, c));
                        for (int gi = 0; gi < u; ++gi)
                            t.lin[gi] = f->sub(t.lin[gi], f->mul(a.lin[gi], c));
                    }
                    a.cst = 0;
                    a.lin.assign(u, 0);
                } else {
                    // must vanish
                    std::vector<int> row = a.lin;
                    row.push_back(a.cst);
                    eqs.push_back(std::move(row));
                    a.cst = 0;
                    a.lin.assign(u, 0);
                }
            }
        }

        // solve eqs over GF: row reduce [L | c], solutions x with L x + c = 0
        int rank = 0;
        std::vector<int> pivot_col;
        for (int col = 0; col < u && rank < static_cast<int>(eqs.size()); ++col) {
            int pr = -1;
            for (int i = rank; i < static_cast<int>(eqs.size()); ++i)
                if (eqs[i][col] != 0) { pr = i; break; }
            if (pr < 0) continue;
            std::swap(eqs[rank], eqs[pr]);
            int s = f->inv(eqs[rank][col]);
            for (auto& v : eqs[rank]) v = f->mul(v, s);
            for (int i = 0; i < static_cast<int>(eqs.size()); ++i) {
                if (i == rank || eqs[i][col] == 0) continue;
                int c = eqs[i][col];
                for (int j2 = 0; j2 <= u; ++j2)
                    eqs[i][j2] = f->sub(eqs[i][j2], f->mul(c, eqs[rank][j2]));
            }
            pivot_col.push_back(col);
            ++rank;
        }
        for (int i = rank; i < static_cast<int>(eqs.size()); ++i)
            if (eqs[i][u] != 0) return;  // inconsistent: no module on this branch

        std::vector<bool> is_pivot(u, false);
        for (int c : pivot_col) is_pivot[c] = true;
        std::vector<int> free_cols;
        for (int c = 0; c < u; ++c)
            if (!is_pivot[c]) free_cols.push_back(c);

        long long combos = 1;
        for (size_t i = 0; i < free_cols.size(); ++i) combos *= q();
        for (long long v = 0; v < combos; ++v) {
            std::vector<int> x(u, 0);
            long long t = v;
            for (int fc : free_cols) {
                x[fc] = static_cast<int>(t % q());
                t /= q();
            }
            for (int r = 0; r < rank; ++r) {
                int col = pivot_col[r];
                int acc = eqs[r][u];  // L x + c = 0 -> x_col = -(c + sum freeterms)
                for (int fc : free_cols) acc = f->add(acc, f->mul(eqs[r][fc], x[fc]));
                x[col] = f->neg(acc);
            }
            std::vector<int> vec(2 * nA, 0);
            vec[e + nA] = 1;
            for (int gi = 0; gi < u; ++gi) vec[gaps[gi] + nA] = x[gi];
            basis[e] = std::move(vec);
            dfs_pivot(pi - 1, pivots, memb, basis);
            basis.erase(e);
        }
    }

    void emit(const std::vector<int>& pivots, const std::map<int, std::vector<int>>& basis) {
        Lattice L;
        L.n = n;
        L.window = A;
        L.volume = nA - static_cast<long long>(pivots.size());
        L.pivots = pivots;
        for (int e : pivots) L.svectors.push_back(basis.at(e));
        L.touches_boundary = !pivots.empty() && pivots.front() == -nA;
        out.push_back(std::move(L));
    }
};

// membership of a window vector (may extend beyond nA: pass only [-nA, nA) part,
// everything >= nA is free) in the module
bool reduces_to_zero(const GF& f, const Lattice& L, std::vector<int> vec) {
    int nA = static_cast<int>(vec.size()) / 2;
    for (int idx = 0; idx < 2 * nA; ++idx) {
        if (vec[idx] == 0) continue;
        int e = idx - nA;
        auto it = std::lower_bound(L.pivots.begin(), L.pivots.end(), e);
        if (it == L.pivots.end() || *it != e) return false;
        int c = vec[idx];
        const std::vector<int>& fv = L.svectors[it - L.pivots.begin()];
        for (int k = idx; k < 2 * nA; ++k)
            if (fv[k] != 0) vec[k] = f.sub(vec[k], f.mul(c, fv[k]));
    }
    return true;
}

bool contains(const GF& f, const Lattice& big, const Lattice& small) {
    for (const auto& v : small.svectors)
        if (!reduces_to_zero(f, big, v)) return false;
    return true;
}

// shift a window vector by +n (multiply by s^n), dropping >= nA
std::vector<int> shift_vec(const std::vector<int>& v, int by) {
    int sz = static_cast<int>(v.size());
    std::vector<int> r(sz, 0);
    for (int i = 0; i < sz; ++i)
        if (v[i] != 0 && i + by < sz) r[i + by] = v[i];
    return r;
}

// ---- HNF conversion ---------------------------------------------------------

LaurentGF truncate_below(const LaurentGF& a, int prec) {
    LaurentGF r;
    for (auto& [e, v] : a.c)
        if (e < prec) r.c[e] = v;
    return r;
}

// a / b to absolute precision prec (b != 0)
LaurentGF series_div(const GF& f, LaurentGF a, const LaurentGF& b, int prec) {
    LaurentGF quot;
    int bv = b.val();
    int blead = b.c.at(bv);
    int blead_inv = f.inv(blead);
    while (!a.is_zero()) {
        int av = a.val();
        int e = av - bv;
        if (e >= prec) break;
        int c = f.mul(a.c.at(av), blead_inv);
        quot.c[e] = c;
        // a -= c t^e b
        for (auto& [be, bc] : b.c) {
            int s = f.sub(a.coeff(be + e), f.mul(c, bc));
            a.set(f, be + e, s);
        }
        a = truncate_below(a, prec + bv + 1);
    }
    return quot;
}

struct HnfResult {
    LMatGF m;
    std::vector<int> diag_exp;
};

// column HNF of the lattice spanned by `cols` over F_q[[t]]; prec caps series
// arithmetic, output is verified by the caller
HnfResult column_hnf(const GFPtr& fp, std::vector<std::vector<LaurentGF>> cols, int prec) {
    const GF& f = *fp;
    int n = static_cast<int>(cols.size());
    // triangularize bottom-up
    for (int row = n - 1; row >= 0; --row) {
        // pick among columns [0, row] the one with minimal valuation at `row`
        int best = -1, bestval = 1 << 30;
        for (int j = 0; j <= row; ++j) {
            if (cols[j][row].is_zero()) continue;
            if (cols[j][row].val() < bestval) {
                bestval = cols[j][row].val();
                best = j;
            }
        }
        if (best < 0) throw internal_invariant_error("HNF: singular lattice basis");
        std::swap(cols[best], cols[row]);
        for (int j = 0; j <= row; ++j) {
            if (j == row || cols[j][row].is_zero()) continue;
            LaurentGF qq = series_div(f, cols[j][row], cols[row][row], prec);
            for (int i = 0; i <= row; ++i) {
                LaurentGF delta = laurent_mul(f, qq, cols[row][i]);
                cols[j][i] = truncate_below(laurent_sub(f, cols[j][i], delta), prec);
            }
            // the pivot entry cancels exactly to working precision
            cols[j][row] = LaurentGF{};
        }
        // normalize pivot to monic t^a
        LaurentGF unit;  // cols[row][row] = t^a * unit, unit(0) != 0
        int a = cols[row][row].val();
        for (auto& [e, v] : cols[row][row].c) unit.c[e - a] = v;
        LaurentGF one = laurent_monomial(0, 1);
        LaurentGF unit_inv = series_div(f, one, unit, prec);
        for (int i = 0; i <= row; ++i)
            cols[row][i] = truncate_below(laurent_mul(f, cols[row][i], unit_inv), prec);
        cols[row][row] = laurent_monomial(a, 1);
    }
    // reduce above-diagonal entries mod t^{a_i}
    for (int i = 0; i < n; ++i) {
        int ai = cols[i][i].val();
        for (int j = i + 1; j < n; ++j) {
            LaurentGF& e = cols[j][i];
            for (;;) {
                int top = -1;
                for (auto& [ee, vv] : e.c)
                    if (ee >= ai) top = std::max(top, ee);
                if (top < 0) break;
                int c = e.coeff(top);
                for (int k = 0; k <= i; ++k) {
                    LaurentGF delta = laurent_shift(laurent_scale(f, cols[i][k], c), top - ai);
                    cols[j][k] = laurent_sub(f, cols[j][k], delta);
                }
            }
        }
    }
    HnfResult r;
    r.m = LMatGF(fp, n);
    r.diag_exp.resize(n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) r.m.at(i, j) = cols[j][i];
        r.diag_exp[j] = r.m.at(j, j).val();
    }
    return r;
}

// map a t-world column (v_1..v_n) to a spectral window vector; returns false
// if it falls below the window
bool to_spectral(const std::vector<LaurentGF>& col, int n, int nA, std::vector<int>& out) {
    out.assign(2 * nA, 0);
    for (int j = 0; j < n; ++j)
        for (auto& [k, v] : col[j].c) {
            int e = n * k + (n - 1 - j);  // e_j (0-based) at t^k  <->  s^{nk + n-1-j}
            if (e < -nA) return false;
            if (e >= nA) continue;  // inside the implicit bottom
            out[e + nA] = v;
        }
    return true;
}

void attach_hnf(const HomogeneousElement& h, Lattice& L) {
    const GF& f = *h.field;
    const int n = h.n;
    const int nA = n * L.window;
    // O-generators: minimal element of each residue class mod n in
    // V union [nA, nA + n)
    std::vector<std::vector<LaurentGF>> cols;
    for (int res = 0; res < n; ++res) {
        int e_min = -1;
        bool found = false;
        for (int e : L.pivots)
            if (((e % n) + n) % n == res) { e_min = e; found = true; break; }
        if (!found)
            for (int e = nA; e < nA + n; ++e)
                if (((e % n) + n) % n == res) { e_min = e; found = true; break; }
        std::vector<LaurentGF> col(n);
        if (e_min >= nA) {
            int j = n - 1 - (((e_min % n) + n) % n);
            col[j] = laurent_monomial((e_min - (n - 1 - j)) / n, 1);
        } else {
            auto it = std::lower_bound(L.pivots.begin(), L.pivots.end(), e_min);
            const std::vector<int>& fv = L.svectors[it - L.pivots.begin()];
            for (int idx = 0; idx < 2 * nA; ++idx) {
                if (fv[idx] == 0) continue;
                int e = idx - nA;
                int rr = ((e % n) + n) % n;
                int j = n - 1 - rr;
                int k = (e - rr) / n;
                col[j] = laurent_add(f, col[j], laurent_monomial(k, fv[idx]));
            }
        }
        cols.push_back(std::move(col));
    }
    int prec = 4 * L.window + 8;
    HnfResult hnf = column_hnf(h.field, std::move(cols), prec);
    // verify: columns in L, diag valuations sum to volume, psi-stability in
    // the t-world; containment + equal covolume forces equality
    long long dsum = 0;
    for (int j = 0; j < n; ++j) {
        dsum += hnf.diag_exp[j];
        std::vector<LaurentGF> col(n), psicol(n);
        for (int i = 0; i < n; ++i) col[i] = hnf.m.at(i, j);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k)
                psicol[i] = laurent_add(f, psicol[i], laurent_mul(f, h.psi.at(i, k), col[k]));
        std::vector<int> sv;
        if (!to_spectral(col, n, nA, sv) || !reduces_to_zero(f, L, sv))
            throw internal_invariant_error("HNF column is not in the lattice");
        if (!to_spectral(psicol, n, nA, sv) || !reduces_to_zero(f, L, sv))
            throw internal_invariant_error("psi * HNF column leaves the lattice");
    }
    if (dsum != L.volume)
        throw internal_invariant_error("HNF determinant valuation != lattice volume");
    L.hnf = hnf.m;
}

}  // namespace

std::vector<Lattice> enumerate_fixed_lattices(const HomogeneousElement& psi, int window) {
    if (window < 1) throw invalid_input("window must be >= 1");
    SpectralEnum en(psi, window);
    en.run();
    for (auto& L : en.out) {
        if (L.touches_boundary) {
            std::ostringstream os;
            os << "lattice touches the window boundary t^-" << window
               << "; enlarge the window (A >= d + 1 recommended)";
            throw invalid_input(os.str());
        }
        attach_hnf(psi, L);
    }
    // deterministic order: volume, then pivot vector, then basis content
    std::sort(en.out.begin(), en.out.end(), [](const Lattice& a, const Lattice& b) {
        if (a.volume != b.volume) return a.volume < b.volume;
        if (a.pivots != b.pivots) return a.pivots < b.pivots;
        return a.svectors < b.svectors;
    });
    return en.out;
}

long long count_asf_chains(const HomogeneousElement& psi, int window) {
    const GF& f = *psi.field;
    auto all = enumerate_fixed_lattices(psi, window);
    const int n = psi.n;
    std::vector<std::vector<const Lattice*>> by_vol(n);
    for (const auto& L : all)
        if (L.volume >= 0 && L.volume < n) by_vol[L.volume].push_back(&L);
    if (n == 1) return static_cast<long long>(by_vol[0].size());

    long long count = 0;
    std::vector<const Lattice*> chain(n);
    std::function<void(int)> rec = [&](int depth) {
        if (depth == n) {
            // final step: t L_0 = s^n L_0 inside L_{n-1}
            const Lattice& l0 = *chain[0];
            const Lattice& last = *chain[n - 1];
            for (const auto& v : l0.svectors)
                if (!reduces_to_zero(f, last, shift_vec(v, n))) return;
            ++count;
            return;
        }
        for (const Lattice* cand : by_vol[depth]) {
            if (!contains(f, *chain[depth - 1], *cand)) continue;
            chain[depth] = cand;
            rec(depth + 1);
        }
    };
    for (const Lattice* l0 : by_vol[0]) {
        chain[0] = l0;
        rec(1);
    }
    return count;
}

AsfCount count_asf(int n, int d, int q, std::optional<int> window) {
    int A = window.value_or(d + 1);
    HomogeneousElement h = make_homogeneous(n, d, q);
    AsfCount out;
    out.window = A;
    out.count = count_asf_chains(h, A);
    long long next = count_asf_chains(h, A + 1);
    out.stable = (next == out.count);
    return out;
}

// ---- affine Weyl group ------------------------------------------------------

AffineWeyl affine_identity(int n) { return AffineWeyl{perm_identity(n), std::vector<int>(n, 0)}; }

AffineWeyl affine_mul(const AffineWeyl& a, const AffineWeyl& b) {
    int n = static_cast<int>(a.sigma.size());
    AffineWeyl r;
    r.sigma = perm_compose(a.sigma, b.sigma);
    r.lambda.resize(n);
    Perm ainv = perm_inverse(a.sigma);
    for (int i = 0; i < n; ++i) r.lambda[i] = a.lambda[i] + b.lambda[ainv[i]];
    return r;
}

AffineWeyl affine_inverse(const AffineWeyl& a) {
    int n = static_cast<int>(a.sigma.size());
    AffineWeyl r;
    r.sigma = perm_inverse(a.sigma);
    r.lambda.resize(n);
    for (int i = 0; i < n; ++i) r.lambda[i] = -a.lambda[a.sigma[i]];
    return r;
}

AffineWeyl affine_simple(int n, int j) {
    AffineWeyl s = affine_identity(n);
    if (j == 0) {
        if (n == 1) throw invalid_input("no affine reflection for n = 1");
        std::swap(s.sigma[0], s.sigma[n - 1]);
        s.lambda[0] = 1;
        s.lambda[n - 1] = -1;
    } else {
        if (j < 1 || j >= n) throw invalid_input("simple reflection index out of range");
        std::swap(s.sigma[j - 1], s.sigma[j]);
    }
    return s;
}

int affine_length(const AffineWeyl& w) {
    int n = static_cast<int>(w.sigma.size());
    AffineWeyl winv = affine_inverse(w);
    int maxshift = 1;
    for (int v : winv.lambda) maxshift = std::max(maxshift, std::abs(v) + 1);
    int len = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            int kmin = i < j ? 0 : 1;
            for (int k = kmin; k <= kmin + 2 * maxshift + 2; ++k) {
                // image of (i, j, k) under w^{-1}
                int ii = winv.sigma[i], jj = winv.sigma[j];
                int kk = k + winv.lambda[ii] - winv.lambda[jj];
                bool neg = kk < 0 || (kk == 0 && ii > jj);
                if (neg) ++len;
            }
        }
    return len;
}

std::vector<AffineWeyl> affine_elements_up_to(int n, int cutoff) {
    std::vector<AffineWeyl> queue{affine_identity(n)};
    std::set<AffineWeyl> seen{queue[0]};
    std::vector<int> depth{0};
    for (size_t h = 0; h < queue.size(); ++h) {
        if (depth[h] >= cutoff) continue;
        for (int j = 0; j < n; ++j) {
            if (n == 1) break;
            AffineWeyl c = affine_mul(queue[h], affine_simple(n, j));
            if (seen.insert(c).second) {
                queue.push_back(c);
                depth.push_back(depth[h] + 1);
            }
        }
    }
    return queue;
}

LMatGF affine_lift(const AffineWeyl& w, const GFPtr& f) {
    int n = static_cast<int>(w.sigma.size());
    LMatGF m(f, n);
    int sign_parity = perm_length(w.sigma) % 2;
    for (int i = 0; i < n; ++i) {
        int v = 1;
        if (sign_parity == 1 && i == n - 1) v = f->neg(1);
        m.at(w.sigma[i], i) = laurent_monomial(w.lambda[w.sigma[i]], v);
    }
    return m;
}

namespace {

LMatGF invert_monomial(const LMatGF& m) {
    const GF& f = *m.f;
    int n = m.n;
    LMatGF r(m.f, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (m.at(i, j).is_zero()) continue;
            auto& [e, v] = *m.at(i, j).c.begin();
            r.at(j, i) = laurent_monomial(-e, f.inv(v));
        }
    return r;
}

std::vector<std::array<int, 3>> inversion_roots(const AffineWeyl& w) {
    int n = static_cast<int>(w.sigma.size());
    AffineWeyl winv = affine_inverse(w);
    int maxshift = 1;
    for (int v : winv.lambda) maxshift = std::max(maxshift, std::abs(v) + 1);
    std::vector<std::array<int, 3>> inv;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            int kmin = i < j ? 0 : 1;
            for (int k = kmin; k <= kmin + 2 * maxshift + 2; ++k) {
                int ii = winv.sigma[i], jj = winv.sigma[j];
                int kk = k + winv.lambda[ii] - winv.lambda[jj];
                if (kk < 0 || (kk == 0 && ii > jj)) inv.push_back({i, j, k});
            }
        }
    return inv;
}

}  // namespace

int hessenberg_points(const HomogeneousElement& psi, const AffineWeyl& w) {
    LMatGF wl = affine_lift(w, psi.field);
    LMatGF wl_inv = invert_monomial(wl);
    LMatGF conj = wl_inv.mul(psi.psi).mul(wl);
    return conj.in_iwahori_plus_lie() ? 1 : 0;
}

long long schubert_cell_fixed_count(const HomogeneousElement& psi, const AffineWeyl& w) {
    const GF& f = *psi.field;
    const int q = f.q();
    auto inv = inversion_roots(w);
    LMatGF wl = affine_lift(w, psi.field);
    long long total = 0;
    long long combos = 1;
    for (size_t i = 0; i < inv.size(); ++i) {
        combos *= q;
        if (combos > 50000000LL)
            throw budget_exceeded("Schubert cell too large to enumerate", combos);
    }
    for (long long v = 0; v < combos; ++v) {
        LMatGF g = LMatGF::identity(psi.field, psi.n);
        long long t = v;
        for (auto& [i, j, k] : inv) {
            int c = static_cast<int>(t % q);
            t /= q;
            if (c == 0) continue;
            LMatGF u = LMatGF::identity(psi.field, psi.n);
            u.at(i, j) = laurent_add(f, u.at(i, j), laurent_monomial(k, c));
            g = g.mul(u);
        }
        g = g.mul(wl);
        // Ad(g^{-1}) psi in Lie I_0 ?
        // g = u * wl with u unipotent product; invert via monomial + unipotent parts:
        // compute g^{-1} = wl^{-1} * u^{-1}; build u^{-1} by negating coordinates in
        // reverse order; cheaper: recompute with negated coefficients reversed
        LMatGF uinv = LMatGF::identity(psi.field, psi.n);
        {
            long long tt = v;
            std::vector<std::pair<std::array<int, 3>, int>> applied;
            for (auto& [i, j, k] : inv) {
                int c = static_cast<int>(tt % q);
                tt /= q;
                if (c != 0) applied.push_back({{i, j, k}, c});
            }
            for (auto it = applied.rbegin(); it != applied.rend(); ++it) {
                LMatGF u = LMatGF::identity(psi.field, psi.n);
                u.at((*it).first[0], (*it).first[1]) =
                    laurent_add(f, u.at((*it).first[0], (*it).first[1]),
                                laurent_monomial((*it).first[2], f.neg((*it).second)));
                uinv = uinv.mul(u);
            }
        }
        LMatGF ginv = invert_monomial(wl).mul(uinv);
        LMatGF conj = ginv.mul(psi.psi).mul(g);
        if (conj.in_iwahori_lie()) ++total;
    }
    return total;
}

HessenbergReconstruction hessenberg_reconstruction(const HomogeneousElement& psi, int cutoff) {
    HessenbergReconstruction rec;
    auto elems = affine_elements_up_to(psi.n, cutoff);
    for (const auto& w : elems) {
        long long c = schubert_cell_fixed_count(psi, w);
        if (c == 0) continue;
        rec.total += c;
        rec.cells.push_back({w, c});
        if (affine_length(w) >= cutoff) rec.partial = true;
    }
    return rec;
}

// ---- polynomiality ----------------------------------------------------------

namespace {

struct Rll {
    long long n = 0, d = 1;
};

Rll rll_norm(Rll r) {
    if (r.d < 0) { r.n = -r.n; r.d = -r.d; }
    long long g = std::gcd(r.n < 0 ? -r.n : r.n, r.d);
    if (g > 1) { r.n /= g; r.d /= g; }
    return r;
}
Rll rll_add(Rll a, Rll b) { return rll_norm({a.n * b.d + b.n * a.d, a.d * b.d}); }
Rll rll_sub(Rll a, Rll b) { return rll_norm({a.n * b.d - b.n * a.d, a.d * b.d}); }
Rll rll_mul(Rll a, Rll b) { return rll_norm({a.n * b.n, a.d * b.d}); }

}  // namespace

std::optional<std::vector<long long>> fit_integer_polynomial(
    const std::vector<std::pair<long long, long long>>& points, int max_deg) {
    const int m = static_cast<int>(points.size());
    // Newton divided differences
    std::vector<Rll> coef(m);
    for (int i = 0; i < m; ++i) coef[i] = {points[i].second, 1};
    for (int lvl = 1; lvl < m; ++lvl)
        for (int i = m - 1; i >= lvl; --i) {
            Rll diff = rll_sub(coef[i], coef[i - 1]);
            coef[i] = rll_norm({diff.n, diff.d * (points[i].first - points[i - lvl].first)});
        }
    // expand: poly += coef[i] * prod_{j<i} (x - x_j)
    std::vector<Rll> poly(m, Rll{0, 1});
    std::vector<Rll> basis(m, Rll{0, 1});
    basis[0] = {1, 1};
    int basis_deg = 0;
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j <= basis_deg; ++j)
            poly[j] = rll_add(poly[j], rll_mul(coef[i], basis[j]));
        if (i + 1 < m) {
            // basis *= (x - x_i)
            for (int j = basis_deg + 1; j >= 1; --j)
                basis[j] = rll_sub(j - 1 >= 0 ? basis[j - 1] : Rll{0, 1},
                                   rll_mul({points[i].first, 1}, basis[j]));
            basis[0] = rll_mul({-points[i].first, 1}, basis[0]);
            ++basis_deg;
        }
    }
    std::vector<long long> out;
    int deg = -1;
    for (int j = 0; j < m; ++j) {
        if (poly[j].d != 1) return std::nullopt;
        out.push_back(poly[j].n);
        if (poly[j].n != 0) deg = j;
    }
    if (deg > max_deg) return std::nullopt;
    out.resize(static_cast<size_t>(std::max(deg, 0)) + 1);
    return out;
}

long long eval_polynomial(const std::vector<long long>& coeffs, long long x) {
    long long v = 0;
    for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i) v = v * x + coeffs[i];
    return v;
}

}  // namespace hb

#include "homobraid/betti.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <sstream>
#include <thread>

namespace hb {

Perm perm_identity(int n) {
    Perm p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

Perm perm_compose(const Perm& a, const Perm& b) {
    Perm r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[b[i]];
    return r;
}

Perm perm_inverse(const Perm& a) {
    Perm r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[a[i]] = static_cast<int>(i);
    return r;
}

int perm_length(const Perm& a) {
    int l = 0;
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = i + 1; j < a.size(); ++j)
            if (a[i] > a[j]) ++l;
    return l;
}

FlagGroupRealization::FlagGroupRealization(int n, int q) : n_(n), f_(make_gf(q)) {
    if (n < 2 || n > 3) throw invalid_input("matrix realization implemented for n in {2,3}");

    // enumerate canonical flag representatives: pivot permutation p, column j
    // has pivot 1 at row p[j], zeros below, zeros at earlier pivot rows, free
    // entries elsewhere above the pivot
    Perm p(n);
    std::iota(p.begin(), p.end(), 0);
    std::sort(p.begin(), p.end());
    do {
        std::vector<std::pair<int, int>> free_pos;  // (row, col)
        for (int j = 0; j < n; ++j) {
            std::vector<bool> earlier(n, false);
            for (int k = 0; k < j; ++k) earlier[p[k]] = true;
            for (int i = 0; i < p[j]; ++i)
                if (!earlier[i]) free_pos.emplace_back(i, j);
        }
        long long count = 1;
        for (size_t k = 0; k < free_pos.size(); ++k) count *= q;
        for (long long v = 0; v < count; ++v) {
            GFMat m(f_, n);
            for (int j = 0; j < n; ++j) m.at(p[j], j) = 1;
            long long t = v;
            for (auto& [i, j] : free_pos) {
                m.at(i, j) = static_cast<int>(t % q);
                t /= q;
            }
            flag_idx_[m.key()] = static_cast<int>(flags_.size());
            flags_.push_back(m);
        }
    } while (std::next_permutation(p.begin(), p.end()));

    for (const auto& m : flags_) {
        flag_inv_.push_back(m.inverse());
        flag_det_.push_back(m.det());
    }

    nbr_.assign(n - 1, std::vector<std::vector<int>>(flags_.size()));
    for (int letter = 0; letter + 1 < n; ++letter)
        for (size_t idx = 0; idx < flags_.size(); ++idx) {
            const GFMat& m = flags_[idx];
            for (int c = 0; c < q; ++c) {
                GFMat nm = m;
                // swap columns letter, letter+1 and add c * f_letter to the new front
                for (int i = 0; i < n; ++i) {
                    int fj = m.at(i, letter), fj1 = m.at(i, letter + 1);
                    nm.at(i, letter) = f_->add(fj1, f_->mul(c, fj));
                    nm.at(i, letter + 1) = fj;
                }
                GFMat cn = canonicalize(nm);
                nbr_[letter][idx].push_back(flag_index(cn));
            }
        }

    // upper-triangular GL matrices grouped by determinant
    borel_by_det_.assign(q, {});
    int upper_free = n * (n - 1) / 2;
    std::vector<std::pair<int, int>> upos;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) upos.emplace_back(i, j);
    long long diag_count = 1;
    for (int i = 0; i < n; ++i) diag_count *= (q - 1);
    long long up_count = 1;
    for (int i = 0; i < upper_free; ++i) up_count *= q;
    for (long long dv = 0; dv < diag_count; ++dv) {
        std::vector<int> diag(n);
        long long t = dv;
        int det = 1;
        for (int i = 0; i < n; ++i) {
            diag[i] = 1 + static_cast<int>(t % (q - 1));
            t /= (q - 1);
            det = f_->mul(det, diag[i]);
        }
        for (long long uv = 0; uv < up_count; ++uv) {
            GFMat b(f_, n);
            for (int i = 0; i < n; ++i) b.at(i, i) = diag[i];
            long long u = uv;
            for (auto& [i, j] : upos) {
                b.at(i, j) = static_cast<int>(u % q);
                u /= q;
            }
            borel_by_det_[det].push_back(b);
        }
    }
}

long long FlagGroupRealization::group_order() const {
    long long q = f_->q(), order = 1;
    long long qpow = 1;
    for (int i = 0; i < n_ * (n_ - 1) / 2; ++i) qpow *= q;
    order = qpow;
    long long qi = q;
    for (int i = 2; i <= n_; ++i) {
        qi *= q;
        order *= (qi - 1);
    }
    // qi walks q^2 .. q^n; product of (q^i - 1) for i = 2..n
    return order;
}

long long FlagGroupRealization::borel_order() const {
    long long q = f_->q(), order = 1;
    for (int i = 0; i < n_ - 1; ++i) order *= (q - 1);
    for (int i = 0; i < n_ * (n_ - 1) / 2; ++i) order *= q;
    return order;
}

int FlagGroupRealization::flag_index(const GFMat& canonical) const {
    auto it = flag_idx_.find(canonical.key());
    if (it == flag_idx_.end()) throw internal_invariant_error("flag not in canonical table");
    return it->second;
}

GFMat FlagGroupRealization::canonicalize(const GFMat& m) const {
    GFMat r = m;
    const GF& f = *f_;
    std::vector<int> pivot_row(n_, -1);
    for (int j = 0; j < n_; ++j) {
        // clear entries at earlier pivot rows using earlier columns
        for (int k = 0; k < j; ++k) {
            int pr = pivot_row[k];
            int c = r.at(pr, j);
            if (c == 0) continue;
            for (int i = 0; i < n_; ++i) r.at(i, j) = f.sub(r.at(i, j), f.mul(c, r.at(i, k)));
        }
        int p = -1;
        for (int i = n_ - 1; i >= 0; --i)
            if (r.at(i, j) != 0) { p = i; break; }
        if (p < 0) throw internal_invariant_error("singular matrix passed to canonicalize");
        pivot_row[j] = p;
        int s = f.inv(r.at(p, j));
        for (int i = 0; i < n_; ++i) r.at(i, j) = f.mul(r.at(i, j), s);
    }
    return r;
}

const std::vector<int>& FlagGroupRealization::neighbors(int idx, int letter) const {
    return nbr_[letter][idx];
}

Perm FlagGroupRealization::relative_position(const GFMat& flag1, const GFMat& flag2) const {
    // d[i][j] = dim(span first i cols of flag1 ^ span first j cols of flag2)
    //         = i + j - rank[cols_i | cols_j]
    const GF& f = *f_;
    std::vector<std::vector<int>> d(n_ + 1, std::vector<int>(n_ + 1, 0));
    for (int i = 0; i <= n_; ++i)
        for (int j = 0; j <= n_; ++j) {
            if (i == 0 || j == 0) { d[i][j] = 0; continue; }
            std::vector<std::vector<int>> rows(n_, std::vector<int>(i + j));
            for (int r = 0; r < n_; ++r) {
                for (int c = 0; c < i; ++c) rows[r][c] = flag1.at(r, c);
                for (int c = 0; c < j; ++c) rows[r][i + c] = flag2.at(r, c);
            }
            // rank of column space = rank of the n x (i+j) matrix
            d[i][j] = i + j - gf_rank(f, std::move(rows));
        }
    Perm w(n_);
    for (int j = 1; j <= n_; ++j)
        for (int i = 1; i <= n_; ++i)
            if (d[i][j] - d[i - 1][j] - d[i][j - 1] + d[i - 1][j - 1] == 1) w[j - 1] = i - 1;
    return w;
}

Perm FlagGroupRealization::pivot_pattern(const GFMat& canonical) const {
    Perm p(n_);
    for (int j = 0; j < n_; ++j) {
        int pr = -1;
        for (int i = n_ - 1; i >= 0; --i)
            if (canonical.at(i, j) != 0) { pr = i; break; }
        p[j] = pr;
    }
    return p;
}

bool FlagGroupRealization::is_unipotent(const GFMat& g) const {
    GFMat m = g;
    for (int i = 0; i < n_; ++i) m.at(i, i) = f_->sub(m.at(i, i), 1);
    GFMat acc = m;
    for (int k = 1; k < n_; ++k) acc = acc.mul(m);
    for (int v : acc.a)
        if (v != 0) return false;
    return true;
}

int FlagGroupRealization::borels_containing(const GFMat& g) const {
    auto it = borel_count_cache_.find(g.key());
    if (it != borel_count_cache_.end()) return it->second;
    int count = 0;
    for (size_t idx = 0; idx < flags_.size(); ++idx) {
        GFMat conj = flag_inv_[idx].mul(g).mul(flags_[idx]);
        if (conj.is_upper_triangular()) ++count;
    }
    borel_count_cache_[g.key()] = count;
    return count;
}

const std::vector<GFMat>& FlagGroupRealization::borel_with_det(int det) const {
    return borel_by_det_[det];
}

GFMat FlagGroupRealization::sl_rep(int idx) const {
    GFMat m = flags_[idx];
    int d = flag_det_[idx];
    if (d != 1) {
        int s = f_->inv(d);
        for (int i = 0; i < n_; ++i) m.at(i, 0) = f_->mul(m.at(i, 0), s);
    }
    return m;
}

GFMat FlagGroupRealization::simple_lift(int letter) const {
    GFMat s = GFMat::identity(f_, n_);
    int j = letter;
    s.at(j, j) = 0;
    s.at(j + 1, j + 1) = 0;
    s.at(j + 1, j) = 1;
    s.at(j, j + 1) = f_->neg(1);
    return s;
}

namespace {

int thread_count() {
    if (const char* env = std::getenv("HOMOBRAID_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

struct ChainWalker {
    const FlagGroupRealization& R;
    const std::vector<int>& letters;

    // visit(flag_index_sequence) for every chain starting at start
    template <typename F>
    void walk(int start, F&& visit) const {
        std::vector<int> chain{start};
        rec(chain, 0, visit);
    }

    template <typename F>
    void rec(std::vector<int>& chain, size_t step, F&& visit) const {
        if (step == letters.size()) {
            visit(chain);
            return;
        }
        for (int nxt : R.neighbors(chain.back(), letters[step])) {
            chain.push_back(nxt);
            rec(chain, step + 1, visit);
            chain.pop_back();
        }
    }
};

long long ipow(long long b, int e) {
    long long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

void check_budget(const FlagGroupRealization& R, const std::vector<int>& letters,
                  long long budget) {
    long long est = static_cast<long long>(R.num_flags()) *
                    ipow(R.q(), static_cast<int>(letters.size())) * R.borel_order();
    if (est > budget) {
        std::ostringstream os;
        os << "enumeration budget exceeded: ~" << est << " tuples vs budget " << budget;
        throw budget_exceeded(os.str(), est);
    }
}

void validate_letters(int n, const std::vector<int>& letters) {
    for (int l : letters)
        if (l < 0 || l + 1 >= n) throw invalid_input("braid letter out of range for SL_n");
}

// shared enumeration: for every chain and every g in the transporter coset,
// call visit(chain, g). Partitioned over start flags.
template <typename V>
void enumerate_points(const FlagGroupRealization& R, const std::vector<int>& letters,
                      V&& visit_factory) {
    int threads = thread_count();
    int nf = R.num_flags();
    std::vector<std::thread> pool;
    std::atomic<int> next_start{0};
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t]() {
            auto visit = visit_factory(t);
            ChainWalker walker{R, letters};
            for (;;) {
                int start = next_start.fetch_add(1);
                if (start >= nf) break;
                walker.walk(start, [&](const std::vector<int>& chain) {
                    int b0 = chain.front(), bn = chain.back();
                    const GFMat& m0 = R.flag(b0);
                    const GFMat& m0_inv = R.flag_inverse(b0);
                    const GFMat& mn = R.flag(bn);
                    // g = mn * beta * m0^{-1} with det(beta) = det(m0)/det(mn)
                    int want = R.field()->mul(R.flag_det(b0), R.field()->inv(R.flag_det(bn)));
                    for (const GFMat& beta : R.borel_with_det(want)) {
                        GFMat g = mn.mul(beta).mul(m0_inv);
                        visit(chain, g);
                    }
                });
            }
        });
    }
    for (auto& th : pool) th.join();
}

void finish_report(const FlagGroupRealization& R, CountReport& rep) {
    rep.group_order = R.group_order();
    rep.divisible = rep.group_order != 0 && rep.raw_count % rep.group_order == 0;
    long long g = std::gcd(rep.raw_count, rep.group_order);
    rep.stacky_num = rep.raw_count / g;
    rep.stacky_den = rep.group_order / g;
}

}  // namespace

std::string monodromy_class(const FlagGroupRealization& R, const GFMat& g) {
    auto inv = invariant_factors(g);
    std::ostringstream os;
    for (size_t i = 0; i < inv.size(); ++i) {
        if (i) os << " | ";
        os << poly_str(inv[i]);
    }
    return os.str();
}

std::vector<int> formal_monodromy(const FlagGroupRealization& R,
                                  const std::vector<GFMat>& flag_reps, const GFMat& g,
                                  const std::vector<int>& letters) {
    const GF& f = *R.field();
    const int n = R.n();
    std::vector<int> kappa(n, 1);
    Perm prefix = perm_identity(n);
    for (size_t i = 0; i < letters.size(); ++i) {
        GFMat trans = flag_reps[i].inverse().mul(flag_reps[i + 1]);
        int j = letters[i];
        GFMat slift = R.simple_lift(j);
        GFMat slift_inv = slift.inverse();
        // factor trans = u1 h s u2, u2 = I + lambda E_{j,j+1}; try all lambda
        bool found = false;
        std::vector<int> h(n);
        for (int lambda = 0; lambda < f.q() && !found; ++lambda) {
            GFMat u2inv = GFMat::identity(R.field(), n);
            u2inv.at(j, j + 1) = f.neg(lambda);
            GFMat y = trans.mul(u2inv).mul(slift_inv);
            if (!y.is_upper_triangular()) continue;
            bool unit_diag = true;
            for (int k = 0; k < n; ++k)
                if (y.at(k, k) == 0) unit_diag = false;
            if (!unit_diag) continue;
            for (int k = 0; k < n; ++k) h[k] = y.at(k, k);
            found = true;
        }
        if (!found)
            throw internal_invariant_error(
                "Bruhat factorization failed: transition not in the expected cell");
        // kappa *= prefix(h)
        Perm pinv = perm_inverse(prefix);
        for (int k = 0; k < n; ++k) kappa[k] = f.mul(kappa[k], h[pinv[k]]);
        Perm tau = perm_identity(n);
        std::swap(tau[j], tau[j + 1]);
        prefix = perm_compose(prefix, tau);
    }
    // closing factor c = m_n^{-1} g m_0 must be upper triangular
    GFMat c = flag_reps.back().inverse().mul(g).mul(flag_reps.front());
    if (!c.is_upper_triangular())
        throw internal_invariant_error("closing factor not in the Borel: relative-position mismatch");
    Perm pinv = perm_inverse(prefix);
    for (int k = 0; k < n; ++k) kappa[k] = f.mul(kappa[k], c.at(pinv[k], pinv[k]));
    return kappa;
}

std::vector<int> formal_monodromy_direct(const FlagGroupRealization& R,
                                         const std::vector<GFMat>& flag_reps, const GFMat& g,
                                         const std::vector<int>& letters) {
    const GF& f = *R.field();
    const int n = R.n();
    GFMat acc = GFMat::identity(R.field(), n);
    GFMat wlift = GFMat::identity(R.field(), n);
    for (size_t i = 0; i < letters.size(); ++i) {
        GFMat trans = flag_reps[i].inverse().mul(flag_reps[i + 1]);
        int j = letters[i];
        GFMat slift = R.simple_lift(j);
        GFMat slift_inv = slift.inverse();
        bool found = false;
        for (int lambda = 0; lambda < f.q() && !found; ++lambda) {
            GFMat u2inv = GFMat::identity(R.field(), n);
            u2inv.at(j, j + 1) = f.neg(lambda);
            GFMat y = trans.mul(u2inv).mul(slift_inv);
            if (!y.is_upper_triangular()) continue;
            bool unit_diag = true;
            for (int k = 0; k < n; ++k)
                if (y.at(k, k) == 0) unit_diag = false;
            if (!unit_diag) continue;
            GFMat hmat(R.field(), n);
            for (int k = 0; k < n; ++k) hmat.at(k, k) = y.at(k, k);
            acc = acc.mul(hmat).mul(slift);
            found = true;
        }
        if (!found) throw internal_invariant_error("Bruhat factorization failed (direct route)");
        wlift = wlift.mul(slift);
    }
    GFMat c = flag_reps.back().inverse().mul(g).mul(flag_reps.front());
    if (!c.is_upper_triangular())
        throw internal_invariant_error("closing factor not in the Borel (direct route)");
    GFMat hc(R.field(), n);
    for (int k = 0; k < n; ++k) hc.at(k, k) = c.at(k, k);
    acc = acc.mul(hc).mul(wlift.inverse());
    std::vector<int> kappa(n);
    for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l)
            if (k != l && acc.at(k, l) != 0)
                throw internal_invariant_error("direct formal monodromy is not diagonal");
        kappa[k] = acc.at(k, k);
    }
    return kappa;
}

std::vector<int> kappa_canonical(const FlagGroupRealization& R, std::vector<int> kappa,
                                 const Perm& w) {
    const GF& f = *R.field();
    const int n = R.n();
    const int q = f.q();
    // enumerate t in H(F_q) with det 1: free entries t_0..t_{n-2}
    std::vector<int> best = kappa;
    long long count = 1;
    for (int i = 0; i < n - 1; ++i) count *= (q - 1);
    Perm winv = perm_inverse(w);
    for (long long v = 0; v < count; ++v) {
        std::vector<int> t(n, 1);
        long long x = v;
        int prod = 1;
        for (int i = 0; i < n - 1; ++i) {
            t[i] = 1 + static_cast<int>(x % (q - 1));
            x /= (q - 1);
            prod = f.mul(prod, t[i]);
        }
        t[n - 1] = f.inv(prod);
        std::vector<int> cand(n);
        for (int i = 0; i < n; ++i) cand[i] = f.mul(f.mul(t[i], kappa[i]), f.inv(t[winv[i]]));
        if (cand < best) best = cand;
    }
    return best;
}

std::string kappa_key(const std::vector<int>& kappa) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < kappa.size(); ++i) {
        if (i) os << ",";
        os << kappa[i];
    }
    os << ")";
    return os.str();
}

CountReport count_msh(int n, const std::vector<int>& letters, int q, long long budget) {
    validate_letters(n, letters);
    FlagGroupRealization R(n, q);
    check_budget(R, letters, budget);
    std::vector<long long> partial(thread_count(), 0);
    enumerate_points(R, letters, [&](int t) {
        return [&, t](const std::vector<int>& chain, const GFMat& g) {
            // verify g conjugates B_0 to B_n
            GFMat moved = R.canonicalize(g.mul(R.flag(chain.front())));
            if (!(moved == R.flag(chain.back())))
                throw internal_invariant_error("transporter element fails to conjugate B_0 to B_n");
            ++partial[t];
        };
    });
    CountReport rep;
    rep.constraint = CountConstraint::none;
    for (long long v : partial) rep.raw_count += v;
    finish_report(R, rep);
    return rep;
}

CountReport count_m0bet(int n, const std::vector<int>& letters, int q, long long budget) {
    validate_letters(n, letters);
    FlagGroupRealization R(n, q);
    check_budget(R, letters, budget);
    int threads = thread_count();
    std::vector<long long> partial(threads, 0);
    // borels_containing caches per thread to avoid locking
    std::vector<std::map<std::string, int>> caches(threads);
    enumerate_points(R, letters, [&](int t) {
        return [&, t](const std::vector<int>& chain, const GFMat& g) {
            (void)chain;
            if (!R.is_unipotent(g)) return;
            auto& cache = caches[t];
            auto it = cache.find(g.key());
            int nb;
            if (it != cache.end()) {
                nb = it->second;
            } else {
                nb = 0;
                for (int idx = 0; idx < R.num_flags(); ++idx) {
                    GFMat conj = R.flag_inverse(idx).mul(g).mul(R.flag(idx));
                    if (conj.is_upper_triangular()) ++nb;
                }
                cache[g.key()] = nb;
            }
            partial[t] += nb;
        };
    });
    CountReport rep;
    rep.constraint = CountConstraint::unipotent_with_borel;
    for (long long v : partial) rep.raw_count += v;
    finish_report(R, rep);
    return rep;
}

CountReport fiber_count_by_kappa(int n, const std::vector<int>& letters, int q,
                                 CountConstraint base, long long budget) {
    validate_letters(n, letters);
    FlagGroupRealization R(n, q);
    check_budget(R, letters, budget);
    Perm w = perm_identity(n);
    for (int l : letters) {
        Perm tau = perm_identity(n);
        std::swap(tau[l], tau[l + 1]);
        w = perm_compose(w, tau);
    }
    int threads = thread_count();
    std::vector<std::map<std::string, long long>> partial(threads);
    std::vector<long long> raw(threads, 0);
    enumerate_points(R, letters, [&](int t) {
        return [&, t](const std::vector<int>& chain, const GFMat& g) {
            int mult = 1;
            if (base == CountConstraint::unipotent_with_borel) {
                if (!R.is_unipotent(g)) return;
                mult = 0;
                for (int idx = 0; idx < R.num_flags(); ++idx) {
                    GFMat conj = R.flag_inverse(idx).mul(g).mul(R.flag(idx));
                    if (conj.is_upper_triangular()) ++mult;
                }
                if (mult == 0) return;
            }
            std::vector<GFMat> reps;
            reps.reserve(chain.size());
            for (int idx : chain) reps.push_back(R.sl_rep(idx));
            auto kappa = formal_monodromy(R, reps, g, letters);
            auto canon = kappa_canonical(R, kappa, w);
            partial[t][kappa_key(canon)] += mult;
            raw[t] += mult;
        };
    });
    CountReport rep;
    rep.constraint = CountConstraint::formal_monodromy_class;
    for (int t = 0; t < threads; ++t) {
        rep.raw_count += raw[t];
        for (auto& [k, v] : partial[t]) rep.per_kappa[k] += v;
    }
    finish_report(R, rep);
    return rep;
}

}  // namespace hb

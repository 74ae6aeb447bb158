#include "homobraid/rootsys.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

namespace hb {

namespace {

constexpr double kWallTol = 1e-9;
constexpr double kRegularTol = 1e-8;

long long det_ll(IMat m) {
    // Bareiss fraction-free determinant; exact for our tiny integer matrices.
    long long denom = 1, sign = 1;
    int n = m.n;
    for (int k = 0; k < n - 1; ++k) {
        if (m.at(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (m.at(i, k) != 0) { p = i; break; }
            if (p < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(p, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / denom;
        denom = m.at(k, k);
    }
    return sign * m.at(n - 1, n - 1);
}

int rank_ll(IMat m) {
    int n = m.n, rank = 0;
    long long denom = 1;
    for (int col = 0; col < n && rank < n; ++col) {
        int p = -1;
        for (int i = rank; i < n; ++i)
            if (m.at(i, col) != 0) { p = i; break; }
        if (p < 0) continue;
        for (int j = 0; j < n; ++j) std::swap(m.at(rank, j), m.at(p, j));
        for (int i = rank + 1; i < n; ++i)
            for (int j = col + 1; j < n; ++j)
                m.at(i, j) = (m.at(i, j) * m.at(rank, col) - m.at(i, col) * m.at(rank, j)) / denom;
        denom = m.at(rank, col);
        for (int i = rank + 1; i < n; ++i) m.at(i, col) = 0;
        ++rank;
    }
    return rank;
}

}  // namespace

Family family_from_char(char c) {
    switch (c) {
        case 'A': case 'a': return Family::A;
        case 'B': case 'b': return Family::B;
        case 'C': case 'c': return Family::C;
        case 'D': case 'd': return Family::D;
        case 'E': case 'e': return Family::E;
        case 'F': case 'f': return Family::F;
        case 'G': case 'g': return Family::G;
        default: throw invalid_input(std::string("unknown Cartan family '") + c + "'");
    }
}

CartanType::CartanType(Family f, int r) : family(f), rank(r) {
    bool ok = false;
    switch (f) {
        case Family::A: ok = r >= 1; break;
        case Family::B: ok = r >= 2; break;
        case Family::C: ok = r >= 2; break;
        case Family::D: ok = r >= 3; break;
        case Family::E: ok = r >= 6 && r <= 8; break;
        case Family::F: ok = r == 4; break;
        case Family::G: ok = r == 2; break;
    }
    if (!ok) {
        std::ostringstream os;
        os << "invalid rank " << r << " for family " << static_cast<char>(f);
        throw invalid_input(os.str());
    }
}

std::string CartanType::name() const {
    return std::string(1, static_cast<char>(family)) + std::to_string(rank);
}

IMat IMat::identity(int n) {
    IMat m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IMat IMat::mul(const IMat& o) const {
    IMat r(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            long long v = at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < n; ++j) r.at(i, j) += v * o.at(k, j);
        }
    return r;
}

IVec IMat::apply(const IVec& v) const {
    IVec r(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r[i] += at(i, j) * v[j];
    return r;
}

IMat IMat::transpose() const {
    IMat r(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r.at(j, i) = at(i, j);
    return r;
}

bool WeylElement::is_identity() const {
    for (int i = 0; i < root_action.n; ++i)
        for (int j = 0; j < root_action.n; ++j)
            if (root_action.at(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

RootSystem::RootSystem(CartanType ct) : ct_(ct), rank_(ct.rank) {
    build_cartan_matrix();
    build_positive_roots();
    build_degrees();
}

void RootSystem::build_cartan_matrix() {
    const int r = rank_;
    cartan_ = IMat(r);
    auto& C = cartan_;
    for (int i = 0; i < r; ++i) C.at(i, i) = 2;
    auto link = [&](int i, int j, long long cij, long long cji) {
        // C.at(i,j) = <alpha_j, alpha_i^vee>
        C.at(i, j) = cij;
        C.at(j, i) = cji;
    };
    switch (ct_.family) {
        case Family::A:
            for (int i = 0; i + 1 < r; ++i) link(i, i + 1, -1, -1);
            break;
        case Family::B:
            // alpha_{r-1} short: <alpha_{r-2}, alpha_{r-1}^vee> = -2
            for (int i = 0; i + 1 < r; ++i) link(i, i + 1, -1, -1);
            C.at(r - 1, r - 2) = -2;
            break;
        case Family::C:
            // alpha_{r-1} long: <alpha_{r-1}, alpha_{r-2}^vee> = -2
            for (int i = 0; i + 1 < r; ++i) link(i, i + 1, -1, -1);
            C.at(r - 2, r - 1) = -2;
            break;
        case Family::D:
            for (int i = 0; i + 2 < r; ++i) link(i, i + 1, -1, -1);
            link(r - 3, r - 1, -1, -1);
            break;
        case Family::E:
            // Bourbaki: chain 1-3-4-5-...-r, node 2 attached to node 4.
            link(0, 2, -1, -1);
            for (int i = 2; i + 1 < r; ++i) link(i, i + 1, -1, -1);
            link(1, 3, -1, -1);
            break;
        case Family::F:
            // alpha_1, alpha_2 long; alpha_3, alpha_4 short.
            link(0, 1, -1, -1);
            link(1, 2, -1, -2);
            link(2, 3, -1, -1);
            C.at(2, 1) = -2;
            C.at(1, 2) = -1;
            break;
        case Family::G:
            // alpha_1 short, alpha_2 long: <alpha_2, alpha_1^vee> = -3.
            C.at(0, 1) = -3;
            C.at(1, 0) = -1;
            break;
    }
}

void RootSystem::build_positive_roots() {
    std::set<IVec> seen;
    std::vector<IVec> queue;
    for (int i = 0; i < rank_; ++i) {
        IVec e(rank_, 0);
        e[i] = 1;
        seen.insert(e);
        queue.push_back(e);
    }
    // close the simple roots under all simple reflections, keep positives
    for (size_t h = 0; h < queue.size(); ++h) {
        IVec a = queue[h];
        for (int i = 0; i < rank_; ++i) {
            // s_i(a) = a - <a, alpha_i^vee> alpha_i,  <a, alpha_i^vee> = sum_j a_j C[i][j]
            long long pair = 0;
            for (int j = 0; j < rank_; ++j) pair += a[j] * cartan_.at(i, j);
            IVec b = a;
            b[i] -= pair;
            bool pos = true, nonzero = false;
            for (long long c : b) {
                if (c < 0) pos = false;
                if (c != 0) nonzero = true;
            }
            if (pos && nonzero && !seen.count(b)) {
                seen.insert(b);
                queue.push_back(b);
            }
        }
    }
    pos_roots_.assign(seen.begin(), seen.end());
    // sort by height then lex for a stable canonical order
    std::sort(pos_roots_.begin(), pos_roots_.end(), [](const IVec& x, const IVec& y) {
        long long hx = std::accumulate(x.begin(), x.end(), 0LL);
        long long hy = std::accumulate(y.begin(), y.end(), 0LL);
        if (hx != hy) return hx < hy;
        return x < y;
    });
    for (int i = 0; i < static_cast<int>(pos_roots_.size()); ++i) pos_index_[pos_roots_[i]] = i;
}

void RootSystem::build_degrees() {
    // The exponents are the conjugate partition of the height distribution of
    // the positive roots (Kostant); degrees d_i = e_i + 1.
    std::map<long long, int> by_height;
    long long max_h = 0;
    for (const auto& a : pos_roots_) {
        long long h = std::accumulate(a.begin(), a.end(), 0LL);
        by_height[h]++;
        max_h = std::max(max_h, h);
    }
    exponents_.clear();
    // conjugate partition: exponent multiset = column lengths of the height histogram
    std::vector<int> hist;
    for (long long h = 1; h <= max_h; ++h) hist.push_back(by_height.count(h) ? by_height[h] : 0);
    for (long long h = max_h; h >= 1; --h) {
        int cols = hist[static_cast<size_t>(h - 1)];
        int prev = (h == max_h) ? 0 : hist[static_cast<size_t>(h)];
        for (int c = prev; c < cols; ++c) exponents_.push_back(static_cast<int>(h));
    }
    std::sort(exponents_.begin(), exponents_.end());
    degrees_.clear();
    for (int e : exponents_) degrees_.push_back(e + 1);
    coxeter_number_ = degrees_.empty() ? 1 : degrees_.back();
    weyl_order_ = 1;
    for (int d : degrees_) weyl_order_ *= d;
    if (static_cast<long long>(pos_roots_.size()) !=
        std::accumulate(degrees_.begin(), degrees_.end(), 0LL) - rank_)
        throw internal_invariant_error("degree/positive-root count mismatch for " + ct_.name());
}

WeylElement RootSystem::identity() const { return WeylElement{IMat::identity(rank_)}; }

WeylElement RootSystem::simple_reflection(int j) const {
    if (j < 0 || j >= rank_) throw invalid_input("simple reflection index out of range");
    IMat m = IMat::identity(rank_);
    for (int k = 0; k < rank_; ++k) m.at(j, k) -= cartan_.at(j, k);
    return WeylElement{m};
}

WeylElement RootSystem::mul(const WeylElement& x, const WeylElement& y) const {
    // act_on_root(xy, a) = x(y(a)): matrix is M_x * M_y
    return WeylElement{x.root_action.mul(y.root_action)};
}

WeylElement RootSystem::inverse(const WeylElement& w) const {
    // small order: w^{-1} = w^{order-1}; cheaper and exact
    WeylElement acc = w, prev = identity();
    int guard = 0;
    while (!acc.is_identity()) {
        prev = acc;
        acc = mul(acc, w);
        if (++guard > 1000) throw internal_invariant_error("element order overflow in inverse()");
    }
    return prev.is_identity() && w.is_identity() ? identity() : prev;
}

int RootSystem::order(const WeylElement& w) const {
    WeylElement acc = w;
    int k = 1;
    while (!acc.is_identity()) {
        acc = mul(acc, w);
        if (++k > 1000) throw internal_invariant_error("element order overflow");
    }
    return k;
}

IVec RootSystem::act_on_root(const WeylElement& w, const IVec& root) const {
    return w.root_action.apply(root);
}

bool RootSystem::is_positive_root(const IVec& v) const {
    for (long long c : v)
        if (c < 0) return false;
    return true;
}

int RootSystem::positive_index(const IVec& v) const {
    auto it = pos_index_.find(v);
    if (it != pos_index_.end()) return it->second;
    IVec n(v.size());
    for (size_t i = 0; i < v.size(); ++i) n[i] = -v[i];
    it = pos_index_.find(n);
    if (it != pos_index_.end()) return it->second;
    throw internal_invariant_error("vector is not a root");
}

int RootSystem::length(const WeylElement& w) const {
    int l = 0;
    for (const auto& a : pos_roots_)
        if (!is_positive_root(act_on_root(w, a))) ++l;
    return l;
}

bool RootSystem::has_left_descent(const WeylElement& w, int j) const {
    // l(s_j w) < l(w)  iff  w^{-1} alpha_j < 0  iff  alpha_j in w(Phi^-),
    // equivalently some positive root is sent to -alpha_j... cheaper test:
    // alpha_j's preimage sign. Compute w^{-1} lazily is costly; use the dual:
    // l(s_j w) < l(w) iff w^{-1}(alpha_j) < 0.
    // We avoid inverse(): w^{-1}(alpha_j) < 0 iff alpha_j = w(beta) for beta < 0,
    // i.e. -alpha_j in w(Phi^+). Scan once.
    IVec e(rank_, 0);
    e[j] = 1;
    for (const auto& a : pos_roots_) {
        IVec im = act_on_root(w, a);
        bool match = true;
        for (int k = 0; k < rank_; ++k)
            if (im[k] != -e[k]) { match = false; break; }
        if (match) return true;
    }
    return false;
}

bool RootSystem::has_right_descent(const WeylElement& w, int j) const {
    // l(w s_j) < l(w) iff w(alpha_j) < 0
    IVec e(rank_, 0);
    e[j] = 1;
    return !is_positive_root(act_on_root(w, e));
}

std::vector<int> RootSystem::reduced_word(WeylElement w) const {
    std::vector<int> word;
    int guard = 0;
    while (!w.is_identity()) {
        int j = -1;
        for (int k = 0; k < rank_; ++k)
            if (has_left_descent(w, k)) { j = k; break; }
        if (j < 0) throw internal_invariant_error("no descent on non-identity element");
        word.push_back(j);
        w = mul(simple_reflection(j), w);
        if (++guard > 4096) throw internal_invariant_error("reduced word overflow");
    }
    return word;
}

WeylElement RootSystem::from_word(const std::vector<int>& word) const {
    WeylElement w = identity();
    for (int j : word) w = mul(w, simple_reflection(j));
    return w;
}

WeylElement RootSystem::longest_element() const {
    // greedily ascend: multiply by any s_j that increases length
    WeylElement w = identity();
    int l = 0;
    bool moved = true;
    while (moved) {
        moved = false;
        for (int j = 0; j < rank_; ++j) {
            WeylElement c = mul(w, simple_reflection(j));
            int lc = length(c);
            if (lc > l) {
                w = c;
                l = lc;
                moved = true;
                break;
            }
        }
    }
    return w;
}

DVec RootSystem::act_on_point(const WeylElement& w, const DVec& x) const {
    // alpha_j(w x) = (w^{-1} alpha_j)(x); column j of M_{w^{-1}} pairs with x
    IMat inv = inverse(w).root_action;
    DVec r(rank_, 0.0);
    for (int j = 0; j < rank_; ++j)
        for (int k = 0; k < rank_; ++k) r[j] += static_cast<double>(inv.at(k, j)) * x[k];
    return r;
}

CVec RootSystem::act_on_point(const WeylElement& w, const CVec& x) const {
    IMat inv = inverse(w).root_action;
    CVec r(rank_, std::complex<double>(0, 0));
    for (int j = 0; j < rank_; ++j)
        for (int k = 0; k < rank_; ++k) r[j] += static_cast<double>(inv.at(k, j)) * x[k];
    return r;
}

IVec RootSystem::act_on_point(const WeylElement& w, const IVec& x) const {
    IMat inv = inverse(w).root_action;
    IVec r(rank_, 0);
    for (int j = 0; j < rank_; ++j)
        for (int k = 0; k < rank_; ++k) r[j] += inv.at(k, j) * x[k];
    return r;
}

double RootSystem::root_value(const IVec& root, const DVec& x) {
    double v = 0;
    for (size_t i = 0; i < root.size(); ++i) v += static_cast<double>(root[i]) * x[i];
    return v;
}

std::complex<double> RootSystem::root_value(const IVec& root, const CVec& x) {
    std::complex<double> v(0, 0);
    for (size_t i = 0; i < root.size(); ++i) v += static_cast<double>(root[i]) * x[i];
    return v;
}

long long RootSystem::root_value(const IVec& root, const IVec& x) {
    long long v = 0;
    for (size_t i = 0; i < root.size(); ++i) v += root[i] * x[i];
    return v;
}

IMat RootSystem::coweight_matrix(const WeylElement& w) const {
    return inverse(w).root_action.transpose();
}

int RootSystem::fixed_space_dimension(const WeylElement& w) const {
    IMat m = w.root_action;
    for (int i = 0; i < rank_; ++i) m.at(i, i) -= 1;
    return rank_ - rank_ll(m);
}

const std::vector<WeylElement>& RootSystem::elements() const {
    if (!elements_.empty()) return elements_;
    std::set<IMat> seen;
    std::vector<WeylElement> queue{identity()};
    seen.insert(queue[0].root_action);
    for (size_t h = 0; h < queue.size(); ++h) {
        WeylElement w = queue[h];
        for (int j = 0; j < rank_; ++j) {
            WeylElement c = mul(w, simple_reflection(j));
            if (seen.insert(c.root_action).second) queue.push_back(c);
        }
    }
    if (static_cast<long long>(queue.size()) != weyl_order_)
        throw internal_invariant_error("Weyl group enumeration size != product of degrees");
    elements_ = std::move(queue);
    return elements_;
}

WeylElement RootSystem::chamber_of(const DVec& point) const {
    for (const auto& a : pos_roots_)
        if (std::abs(root_value(a, point)) < kWallTol)
            throw invalid_input("point lies on a wall; chamber undefined");
    DVec y = point;
    WeylElement u = identity();
    int guard = 0;
    for (;;) {
        int j = -1;
        for (int k = 0; k < rank_; ++k)
            if (y[k] < -kWallTol) { j = k; break; }
        if (j < 0) break;
        y = act_on_point(simple_reflection(j), y);
        u = mul(u, simple_reflection(j));
        if (++guard > 10000) throw internal_invariant_error("chamber walk did not terminate");
    }
    return u;
}

RootSystemPtr build_root_system(CartanType ct) { return std::make_shared<RootSystem>(ct); }

RootSystemPtr build_root_system(char family, int rank) {
    return build_root_system(CartanType(family_from_char(family), rank));
}

bool is_regular_number(const RootSystem& rs, int m) {
    if (m < 1) return false;
    int deg_count = 0, codeg_count = 0;
    for (int d : rs.degrees()) {
        if (d % m == 0) ++deg_count;
        int cod = d - 2;  // codegrees; 0 divisible by every m
        if (cod % m == 0) ++codeg_count;
    }
    return deg_count == codeg_count;
}

std::set<int> regular_numbers(const RootSystem& rs) {
    std::set<int> out;
    for (int m = 1; m <= rs.coxeter_number(); ++m)
        if (is_regular_number(rs, m)) out.insert(m);
    return out;
}

namespace {

// Nullspace basis of (A - zeta I) over C, Gaussian elimination with partial pivoting.
std::vector<CVec> complex_nullspace(const IMat& a, std::complex<double> zeta) {
    int n = a.n;
    std::vector<CVec> m(n, CVec(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m[i][j] = std::complex<double>(static_cast<double>(a.at(i, j)), 0) -
                      (i == j ? zeta : std::complex<double>(0, 0));
    std::vector<int> pivot_col;
    int row = 0;
    for (int col = 0; col < n && row < n; ++col) {
        int p = -1;
        double best = 1e-10;
        for (int i = row; i < n; ++i)
            if (std::abs(m[i][col]) > best) { best = std::abs(m[i][col]); p = i; }
        if (p < 0) continue;
        std::swap(m[row], m[p]);
        for (int i = 0; i < n; ++i) {
            if (i == row) continue;
            std::complex<double> f = m[i][col] / m[row][col];
            for (int j = col; j < n; ++j) m[i][j] -= f * m[row][j];
        }
        pivot_col.push_back(col);
        ++row;
    }
    std::vector<bool> is_pivot(n, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<CVec> basis;
    for (int free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        CVec v(n, std::complex<double>(0, 0));
        v[free] = 1;
        for (int r = static_cast<int>(pivot_col.size()) - 1; r >= 0; --r) {
            int pc = pivot_col[r];
            std::complex<double> s(0, 0);
            for (int j = pc + 1; j < n; ++j) s += m[r][j] * v[j];
            v[pc] = -s / m[r][pc];
        }
        basis.push_back(v);
    }
    return basis;
}

// Draws a random eigenspace combination until every root value clears the
// regularity tolerance. Returns nullopt when some root vanishes identically
// on the eigenspace (then no regular eigenvector exists at all).
std::optional<std::pair<CVec, double>> draw_regular_vector(const RootSystem& rs,
                                                           const std::vector<CVec>& basis,
                                                           std::mt19937_64& rng) {
    if (basis.empty()) return std::nullopt;
    const int r = rs.rank();
    for (const auto& root : rs.positive_roots()) {
        bool all_zero = true;
        for (const auto& b : basis)
            if (std::abs(RootSystem::root_value(root, b)) > kRegularTol) { all_zero = false; break; }
        if (all_zero) return std::nullopt;
    }
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int attempt = 0; attempt < 64; ++attempt) {
        CVec x(r, std::complex<double>(0, 0));
        for (const auto& b : basis) {
            std::complex<double> c(unif(rng), unif(rng));
            for (int i = 0; i < r; ++i) x[i] += c * b[i];
        }
        double norm = 0;
        for (auto& v : x) norm += std::norm(v);
        norm = std::sqrt(norm);
        if (norm < 1e-6) continue;
        for (auto& v : x) v /= norm;
        double margin = 1e18;
        for (const auto& root : rs.positive_roots())
            margin = std::min(margin, std::abs(RootSystem::root_value(root, x)));
        if (margin > kRegularTol) return std::make_pair(x, margin);
    }
    return std::nullopt;
}

}  // namespace

SlopeData find_regular_element(RootSystemPtr rs, int m, std::uint64_t seed) {
    if (m < 1) throw invalid_input("m must be >= 1");
    if (!is_regular_number(*rs, m)) {
        std::ostringstream os;
        os << "m = " << m << " is not a regular number for " << rs->cartan().name()
           << ": #{i : m | d_i} != #{i : m | d_i - 2}";
        throw invalid_input(os.str());
    }
    const double two_pi = 2.0 * std::acos(-1.0);
    std::complex<double> zeta = std::polar(1.0, two_pi / m);
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    for (const auto& w : rs->elements()) {
        if (rs->order(w) != m) continue;
        // eigenvector lives in coweight coordinates; the action there is the
        // transposed column pairing used in act_on_point
        IMat action = rs->inverse(w).root_action.transpose();
        auto basis = complex_nullspace(action, zeta);
        auto drawn = draw_regular_vector(*rs, basis, rng);
        if (!drawn) continue;
        SlopeData sd;
        sd.root_system = rs;
        sd.d = 1;
        sd.m = m;
        sd.w = w;
        sd.eigvec = drawn->first;
        sd.seed = seed;
        sd.regularity_margin = drawn->second;
        // sanity: w x = zeta x within numeric tolerance
        CVec wx = rs->act_on_point(w, sd.eigvec);
        for (int i = 0; i < rs->rank(); ++i)
            if (std::abs(wx[i] - zeta * sd.eigvec[i]) > 1e-6)
                throw internal_invariant_error("eigenvector check failed in find_regular_element");
        return sd;
    }
    throw internal_invariant_error(
        "regular-number criterion passed but no regular element found (order " +
        std::to_string(m) + ")");
}

SlopeData make_slope_data(RootSystemPtr rs, int d, int m, std::uint64_t seed) {
    if (d < 1 || m < 1) throw invalid_input("slope d/m needs d >= 1, m >= 1");
    if (std::gcd(d, m) != 1) throw invalid_input("slope d/m must be in lowest terms");
    SlopeData sd = find_regular_element(rs, m, seed);
    sd.d = d;
    return sd;
}

SlopeData redraw_eigenvector(const SlopeData& sd, std::uint64_t seed) {
    const RootSystem& rs = *sd.root_system;
    const double two_pi = 2.0 * std::acos(-1.0);
    std::complex<double> zeta = std::polar(1.0, two_pi / sd.m);
    std::mt19937_64 rng(seed ^ 0x6a09e667f3bcc909ULL);
    IMat action = rs.inverse(sd.w).root_action.transpose();
    auto basis = complex_nullspace(action, zeta);
    auto drawn = draw_regular_vector(rs, basis, rng);
    if (!drawn)
        throw internal_invariant_error("eigenspace lost regularity on redraw");
    SlopeData out = sd;
    out.eigvec = drawn->first;
    out.seed = seed;
    out.regularity_margin = drawn->second;
    return out;
}

int fixed_space_dim(const SlopeData& sd) {
    int c = 0;
    for (int d : sd.root_system->degrees())
        if ((d - 1) % sd.m == 0) ++c;
    return c;
}

}  // namespace hb

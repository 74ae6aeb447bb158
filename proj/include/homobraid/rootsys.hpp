#pragma once

// Exact root-system and Weyl-group engine for the irreducible crystallographic
// types A-G. Roots are stored as integer coefficient vectors in the basis of
// simple roots; Weyl elements as integer matrices acting on that basis.
// Cartan-space points are stored by their simple-root values (fundamental
// coweight coordinates), on which a Weyl element acts through the transposed
// inverse of its root matrix.

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "homobraid/errors.hpp"

namespace hb {

using IVec = std::vector<long long>;
using CVec = std::vector<std::complex<double>>;
using DVec = std::vector<double>;

enum class Family : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F', G = 'G' };

Family family_from_char(char c);

struct CartanType {
    Family family;
    int rank;

    CartanType(Family f, int r);
    std::string name() const;
};

// Square integer matrix, row-major.
struct IMat {
    int n = 0;
    std::vector<long long> a;

    IMat() = default;
    explicit IMat(int n_) : n(n_), a(static_cast<size_t>(n_) * n_, 0) {}
    static IMat identity(int n);

    long long& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
    long long at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }

    IMat mul(const IMat& o) const;
    IVec apply(const IVec& v) const;
    IMat transpose() const;
    bool operator==(const IMat& o) const { return n == o.n && a == o.a; }
    bool operator<(const IMat& o) const { return a < o.a; }
};

class RootSystem;

// Weyl element, stored by its action on root-lattice coefficient vectors.
struct WeylElement {
    IMat root_action;

    bool operator==(const WeylElement& o) const { return root_action == o.root_action; }
    bool operator<(const WeylElement& o) const { return root_action.a < o.root_action.a; }
    bool is_identity() const;
};

class RootSystem {
  public:
    explicit RootSystem(CartanType ct);

    const CartanType& cartan() const { return ct_; }
    int rank() const { return rank_; }
    // cartan_[i][j] = <alpha_j, alpha_i^vee>
    long long cartan_entry(int i, int j) const { return cartan_.at(i, j); }

    const std::vector<IVec>& positive_roots() const { return pos_roots_; }
    int num_positive_roots() const { return static_cast<int>(pos_roots_.size()); }
    const std::vector<int>& degrees() const { return degrees_; }
    const std::vector<int>& exponents() const { return exponents_; }
    int coxeter_number() const { return coxeter_number_; }
    long long weyl_order() const { return weyl_order_; }

    WeylElement identity() const;
    WeylElement simple_reflection(int j) const;  // j in [0, rank)
    WeylElement mul(const WeylElement& x, const WeylElement& y) const;
    WeylElement inverse(const WeylElement& w) const;
    int order(const WeylElement& w) const;

    // Root alpha (coefficient vector) mapped by w; result is again a root.
    IVec act_on_root(const WeylElement& w, const IVec& root) const;
    bool is_positive_root(const IVec& v) const;
    // index into positive_roots() of v or -v
    int positive_index(const IVec& v) const;

    // Length = number of positive roots sent negative.
    int length(const WeylElement& w) const;
    bool has_left_descent(const WeylElement& w, int j) const;   // l(s_j w) < l(w)
    bool has_right_descent(const WeylElement& w, int j) const;  // l(w s_j) < l(w)
    std::vector<int> reduced_word(WeylElement w) const;         // descent algorithm
    WeylElement from_word(const std::vector<int>& word) const;
    WeylElement longest_element() const;

    // Action on Cartan points given by simple-root values x_j = alpha_j(x).
    DVec act_on_point(const WeylElement& w, const DVec& x) const;
    CVec act_on_point(const WeylElement& w, const CVec& x) const;
    IVec act_on_point(const WeylElement& w, const IVec& x) const;
    // alpha(x) for a root alpha in coefficient form.
    static double root_value(const IVec& root, const DVec& x);
    static std::complex<double> root_value(const IVec& root, const CVec& x);
    static long long root_value(const IVec& root, const IVec& x);

    // Integer matrix of the action on coweight coordinates (transpose-inverse
    // of the root action); this is the matrix the spec's WeylElement carries.
    IMat coweight_matrix(const WeylElement& w) const;

    // dim ker(w - id) on the Cartan, by exact fraction-free elimination.
    int fixed_space_dimension(const WeylElement& w) const;

    // Full enumeration of W (BFS over simple reflections, deterministic order).
    const std::vector<WeylElement>& elements() const;

    // u with u^{-1} * point dominant; point must be off every wall.
    WeylElement chamber_of(const DVec& point) const;

  private:
    CartanType ct_;
    int rank_;
    IMat cartan_;
    std::vector<IVec> pos_roots_;
    std::map<IVec, int> pos_index_;
    std::vector<int> degrees_;
    std::vector<int> exponents_;
    int coxeter_number_ = 0;
    long long weyl_order_ = 1;
    mutable std::vector<WeylElement> elements_;  // filled on demand

    void build_cartan_matrix();
    void build_positive_roots();
    void build_degrees();
};

using RootSystemPtr = std::shared_ptr<const RootSystem>;

RootSystemPtr build_root_system(CartanType ct);
RootSystemPtr build_root_system(char family, int rank);

// Lehrer-Springer count: m regular iff #{i : m | d_i} = #{i : m | d_i - 2},
// where 0 counts as divisible by every m.
std::set<int> regular_numbers(const RootSystem& rs);
bool is_regular_number(const RootSystem& rs, int m);

// Validated slope nu = d/m with a regular element w of order m and a regular
// zeta_m-eigenvector.
struct SlopeData {
    RootSystemPtr root_system;
    int d = 1;
    int m = 1;
    WeylElement w;
    CVec eigvec;       // x with w.x = zeta_m x, alpha(x) != 0 for all roots
    std::uint64_t seed = 0;
    double regularity_margin = 0.0;  // min |alpha(x)| over roots

    double slope() const { return static_cast<double>(d) / m; }
};

// Regular element of order m plus eigenvector; deterministic given seed.
// Throws invalid_input when m fails the regular-number criterion.
SlopeData find_regular_element(RootSystemPtr rs, int m, std::uint64_t seed = 0);

// Full SlopeData for nu = d/m (validates gcd(d, m) = 1, d >= 1).
SlopeData make_slope_data(RootSystemPtr rs, int d, int m, std::uint64_t seed = 0);

// Re-draws only the eigenvector inside the zeta_m-eigenspace of sd.w.
SlopeData redraw_eigenvector(const SlopeData& sd, std::uint64_t seed);

// #{i : m | d_i - 1}; cross-checked against ker(w - id) by the caller/tests.
int fixed_space_dim(const SlopeData& sd);

}  // namespace hb

#pragma once

// Finite-field realizations of the braid varieties for SL_n (n <= 3 at desk
// scale): canonical flag representatives of G/B, Bruhat relative position,
// chain enumeration by walking Schubert cells, monodromy and formal-monodromy
// class maps, and point counts with constraints.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "homobraid/gf.hpp"

namespace hb {

using Perm = std::vector<int>;  // p[i] = image of i, 0-based

Perm perm_identity(int n);
Perm perm_compose(const Perm& a, const Perm& b);  // (a o b)(i) = a[b[i]]
Perm perm_inverse(const Perm& a);
int perm_length(const Perm& a);  // inversion count

class FlagGroupRealization {
  public:
    FlagGroupRealization(int n, int q);

    int n() const { return n_; }
    int q() const { return f_->q(); }
    const GFPtr& field() const { return f_; }

    long long group_order() const;  // |SL_n(F_q)|
    long long borel_order() const;  // |B(F_q) cap SL_n|

    int num_flags() const { return static_cast<int>(flags_.size()); }
    const GFMat& flag(int idx) const { return flags_[idx]; }
    const GFMat& flag_inverse(int idx) const { return flag_inv_[idx]; }
    int flag_det(int idx) const { return flag_det_[idx]; }
    int flag_index(const GFMat& canonical) const;

    // canonical coset representative of the flag spanned by m's columns
    GFMat canonicalize(const GFMat& m) const;

    // flags in relative position s_j (0-based) to flags_[idx]; exactly q of them
    const std::vector<int>& neighbors(int idx, int letter) const;

    // Bruhat relative position by intersection dimensions
    Perm relative_position(const GFMat& flag1, const GFMat& flag2) const;
    // pivot permutation of the canonical representative (oracle route)
    Perm pivot_pattern(const GFMat& canonical) const;

    bool is_unipotent(const GFMat& g) const;
    // number of Borel subgroups containing g
    int borels_containing(const GFMat& g) const;

    // upper-triangular GL matrices grouped by determinant
    const std::vector<GFMat>& borel_with_det(int det) const;

    // SL representative of the flag (column-scaled canonical matrix)
    GFMat sl_rep(int idx) const;

    // fixed simple-reflection lift: permutation matrix with one -1 entry
    GFMat simple_lift(int letter) const;

  private:
    int n_;
    GFPtr f_;
    std::vector<GFMat> flags_;
    std::vector<GFMat> flag_inv_;
    std::vector<int> flag_det_;
    std::map<std::string, int> flag_idx_;
    std::vector<std::vector<std::vector<int>>> nbr_;  // [letter][idx] -> flags
    std::vector<std::vector<GFMat>> borel_by_det_;
    mutable std::map<std::string, int> borel_count_cache_;
};

struct BettiPoint {
    std::vector<int> flag_indices;  // B_0 .. B_n as indices
    GFMat g;
    std::optional<GFMat> aux_borel_flag;  // flag matrix of B' when constrained
};

enum class CountConstraint { none, unipotent_with_borel, formal_monodromy_class };

struct CountReport {
    long long raw_count = 0;
    long long group_order = 0;
    long long stacky_num = 0;
    long long stacky_den = 1;
    CountConstraint constraint = CountConstraint::none;
    bool divisible = false;  // raw divisible by |G|
    std::map<std::string, long long> per_kappa;  // only for kappa constraint
};

// conjugacy class label of g: invariant factors of tI - g
std::string monodromy_class(const FlagGroupRealization& R, const GFMat& g);

// twisted-torus class of a Betti point; `letters` are the braid word of the
// chain (0-based). Throws internal_invariant_error when a transition fails to
// factor through its Bruhat cell.
std::vector<int> formal_monodromy(const FlagGroupRealization& R,
                                  const std::vector<GFMat>& flag_reps, const GFMat& g,
                                  const std::vector<int>& letters);
// same value computed by the accumulated matrix product (oracle route)
std::vector<int> formal_monodromy_direct(const FlagGroupRealization& R,
                                         const std::vector<GFMat>& flag_reps, const GFMat& g,
                                         const std::vector<int>& letters);
// canonical orbit representative under t . x = t x w(t)^{-1}, t in H(F_q)
std::vector<int> kappa_canonical(const FlagGroupRealization& R, std::vector<int> kappa,
                                 const Perm& w);
std::string kappa_key(const std::vector<int>& kappa);

// raw = #{(B_0..B_n, g)} with prescribed relative positions and B_n = g B_0 g^{-1}
CountReport count_msh(int n, const std::vector<int>& letters, int q,
                      long long budget = 500000000);

// additionally g unipotent and an auxiliary Borel containing g is counted
CountReport count_m0bet(int n, const std::vector<int>& letters, int q,
                        long long budget = 500000000);

// partition of the counted locus by formal-monodromy class
CountReport fiber_count_by_kappa(int n, const std::vector<int>& letters, int q,
                                 CountConstraint base = CountConstraint::none,
                                 long long budget = 500000000);

}  // namespace hb

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hyperroot/cartan.hpp"

namespace hyperroot {

// Coefficients over the simple roots: alpha = sum coords[i] * alpha_i.
using RootVector = std::vector<long long>;

long long height(const RootVector& v);

// All coordinates >= 0 and at least one nonzero.
bool in_positive_cone(const RootVector& v);

struct RootVectorHash {
    std::size_t operator()(const RootVector& v) const {
        Fnv1a h;
        for (long long x : v) h.feed(x);
        return static_cast<std::size_t>(h.state);
    }
};

// The invariant symmetric form on the root lattice, B = diag(d) * A with the
// minimal positive integer symmetrizer, so (alpha_i | alpha_i) = 2 d_i and
// every pairing of lattice vectors is an integer.  For symmetric A this is
// the normalization (alpha_i | alpha_i) = 2.
class BilinearForm {
  public:
    explicit BilinearForm(const GCM& g);  // throws NotSymmetrizableError

    int rank() const { return static_cast<int>(b_.size()); }
    long long pair(const RootVector& x, const RootVector& y) const;
    long long norm(const RootVector& x) const { return pair(x, x); }
    // (rho | x) = sum d_i x_i, from <rho, alpha_i^vee> = 1.
    long long rho_pair(const RootVector& x) const;
    long long d(int i) const { return d_[i]; }

  private:
    std::vector<std::vector<long long>> b_;  // d_i * a_ij
    std::vector<long long> d_;
};

// Contract-level wrappers around BilinearForm (rational-valued view).
Rat bilinear(const GCM& g, const RootVector& x, const RootVector& y);
Rat rho_pairing(const GCM& g, const RootVector& x);

// Simple reflection r_i: coords[i] -= sum_j a[i][j] * coords[j].
RootVector reflect(const GCM& g, int i, const RootVector& v);

// Is the support {i : v_i != 0} connected in the Dynkin diagram?
bool support_connected(const GCM& g, const RootVector& v);

enum class RootKind { NonRoot, Real, Imaginary };

// Decides roothood by height-reducing reflection descent: a real root
// descends to a simple root; a positive imaginary root descends into the
// fundamental cone (all <v, alpha_i^vee> <= 0, connected support); anything
// that leaves the positive cone on the way down is not a root.  Negative
// input is classified via -v; mixed-sign input is never a root.
RootKind classify_vector(const GCM& g, const RootVector& v);

bool is_real_root(const GCM& g, const RootVector& v);
bool is_positive_imaginary_root(const GCM& g, const RootVector& v);

// One Weyl group element w != 1, carried by the invariant s(w) = rho - w(rho)
// (a sum of positive roots, here in root coordinates).  rho is regular, so
// s(w) determines w and deduplication by sw is exact.
struct WeylElement {
    RootVector sw;
    int length = 0;
    int eps = 0;  // (-1)^(length+1), the sign the closed-form engine consumes

    bool operator==(const WeylElement&) const = default;
};

// All w != 1 with height(s(w)) <= H, sorted by (height, lexicographic
// coords).  Breadth-first closure over right multiplication by simple
// reflections: s(w r_i) = s(w) + w(alpha_i) whenever the length goes up, and
// w(alpha_i) is read off the accumulated matrix of w.  Heights only grow
// along reduced words, so pruning at H is lossless.
std::vector<WeylElement> enumerate_weyl_sums(const GCM& g, long long H);

// Text helpers: "(7,7,2)" or "7,7,2"; coordinates limited to |c| <= 10^6.
RootVector parse_root(const std::string& text, int rank);
std::string root_to_text(const RootVector& v);

}  // namespace hyperroot

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hyperroot/errors.hpp"
#include "hyperroot/numeric.hpp"

namespace hyperroot {

using IntMatrix = std::vector<std::vector<long long>>;

// A validated generalized Cartan matrix together with its symmetrizing
// diagonal d (present iff the matrix is symmetrizable).  d is normalized to
// the smallest positive integer vector, so B = diag(d) * A has integer
// entries and (a_i | a_i) = 2 d_i.
struct GCM {
    IntMatrix a;
    std::optional<std::vector<Rat>> d;

    int rank() const { return static_cast<int>(a.size()); }
    bool symmetrizable() const { return d.has_value(); }
    bool symmetric() const;
    bool indecomposable() const;

    // Vertices reachable from `start` in the Dynkin diagram, restricted to
    // the sub-diagram on `alive` vertices.
    std::vector<int> component_of(int start, const std::vector<bool>& alive) const;

    std::string content_hash() const;  // 16 hex chars, FNV-1a of the entries
    std::string to_text() const;       // "2,-2;-2,2"
};

enum class Kind { Finite, Affine, Indefinite };

struct AlgebraType {
    Kind kind = Kind::Indefinite;
    bool hyperbolic = false;
    bool compact_hyperbolic = false;
    bool lorentzian = false;
    Int det;  // exact determinant of A
};

std::string kind_name(Kind k);

// Validation and symmetrization.  Throws NotGCMError.
GCM validate_gcm(const IntMatrix& a);

// Exact determinant (Bareiss, integer arithmetic throughout).
Int det(const IntMatrix& a);

// Classification of an indecomposable GCM.  Kind comes from the signs of the
// leading principal minors of A (valid because diag(d)*A shares their signs
// and Sylvester's criterion applies to it); non-symmetrizable matrices are
// Indefinite outright since finite and affine type force a symmetrizer.
// The hyperbolic flags check every one-vertex deletion componentwise, the
// Lorentzian flag counts negative eigenvalues of diag(d)*A exactly via the
// characteristic polynomial.  Throws DomainError on decomposable input.
AlgebraType classify_indecomposable(const GCM& g);

struct ComponentType {
    std::vector<int> vertices;
    AlgebraType type;
};

// Componentwise classification; a single component for indecomposable input.
std::vector<ComponentType> classify(const GCM& g);

// Affinization of a finite indecomposable GCM: appends the node a_0 paired
// against -theta (theta = highest root, found by upward closure from the
// simple roots).  Throws WrongTypeError unless the input is finite type.
GCM extend(const GCM& g);

// Over-extension of an untwisted affine GCM: appends one node joined to the
// affine 0-node by a single edge.  The 0-node is detected as a vertex whose
// deletion leaves a finite diagram whose affinization reproduces the input.
// Throws WrongTypeError for twisted affine or non-affine input.
GCM overextend(const GCM& g);

// Appends a node joined to vertex `attach` by a single edge (the "+++"-style
// construction, e.g. E10 -> E11).
GCM attach_by_single_edge(const GCM& g, int attach);

// Named presets: "F", "E8", "E9", "E10", "E11", "A1", "A1(a,b)".
GCM preset(const std::string& name);

// Accepts preset names, row text ("2,-2;-2,2") and JSON {"matrix": [[...]]}.
GCM parse_gcm(const std::string& text);

}  // namespace hyperroot

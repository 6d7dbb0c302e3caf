#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rdk/zlattice.hpp"

namespace rdk {

/// A root datum (X, Φ, X̌, Φ̌) in fixed coordinates: X = Z^rank with the
/// standard basis, X̌ its dual via the dot product. The root/coroot lists
/// are aligned: roots[i] corresponds to coroots[i].
struct RootDatum {
    int rank = 0;
    std::vector<IntVec> roots;
    std::vector<IntVec> coroots;
    std::string name; // optional label, ignored by equality

    int num_roots() const { return int(roots.size()); }
    bool operator==(const RootDatum& o) const {
        return rank == o.rank && roots == o.roots && coroots == o.coroots;
    }

    /// Matrix whose columns are the roots (rank x num_roots).
    IntMatrix root_matrix() const;
    IntMatrix coroot_matrix() const;

    /// Index of a root vector, -1 when absent.
    int root_index(const IntVec& v) const;
    int coroot_index(const IntVec& v) const;
};

struct ValidationReport {
    bool ok = true;
    std::string message; // first violated axiom with witnesses
};

ValidationReport validate(const RootDatum& R);

/// (X̌, Φ̌, X, Φ): swap roots and coroots.
RootDatum dual(const RootDatum& R);

/// Block sum: lattices concatenate, each root system sits in its block.
RootDatum direct_sum(const RootDatum& R1, const RootDatum& R2);

/// Torus of rank n: (Z^n, ∅, Z^n, ∅).
RootDatum torus(int n);

/// Same lattices, roots forgotten.
RootDatum torus_part(const RootDatum& R);

bool is_semisimple(const RootDatum& R);
bool is_torus(const RootDatum& R);

/// A root datum together with a map into (or out of) an ambient datum.
struct DatumWithMap {
    RootDatum datum;
    IntMatrix map;
};

/// Root datum induced by a sublattice A with ZΦ ⊆ A ⊆ X, written in the
/// Hermite basis of A. Returns the datum together with the inclusion
/// A -> X (columns = the chosen basis). Throws when A misses a root.
DatumWithMap induced_datum(const RootDatum& R, const IntMatrix& A);

/// Dual construction: ZΦ̌ ⊆ B ⊆ X̌, computed as dual(induced(dual(R), B)).
DatumWithMap coinduced_datum(const RootDatum& R, const IntMatrix& B);

/// Derived datum (X/Φ̌^⊥, Φ, Φ̌^⊤, Φ̌), semisimple, with the projection
/// X -> X/Φ̌^⊥ as the map.
DatumWithMap derived_datum(const RootDatum& R);

/// Radical (X/Φ^⊤, ∅, Φ̌^⊥, ∅): a torus of rank = rank X − rank ZΦ,
/// with the projection X -> X/Φ^⊤ as the map.
DatumWithMap radical(const RootDatum& R);

/// Structure of X/ZΦ split at a prime.
struct CentreInvariants {
    IntVec torsion;       // invariant factors of Tor(X/ZΦ), descending
    IntVec p_part;        // p-primary invariant factors (empty when p = 0)
    IntVec p_prime_part;  // prime-to-p invariant factors (= torsion when p = 0)
    int free_rank = 0;

    bool connected_centre() const { return p_prime_part.empty(); }
    bool connected_smooth_centre() const { return torsion.empty(); }
};

CentreInvariants centre_invariants(const RootDatum& R, const Int& p);

/// Saturation Φ^⊤ of the root span inside X (columns).
IntMatrix root_saturation(const RootDatum& R);

/// Annihilator Φ̌^⊥ of the coroots inside X (columns).
IntMatrix coroot_annihilator(const RootDatum& R);

} // namespace rdk

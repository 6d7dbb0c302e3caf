#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rdk/morphism.hpp"
#include "rdk/root_datum.hpp"

namespace rdk {

/// Nested kinds of derived embeddings f : R' → R (f surjective on character
/// lattices, bijective on roots): the centre quotient X'/ZΦ' is unrestricted
/// (Derived), has only p-torsion (PRegular), or is torsion-free (Smooth).
enum class EmbeddingKind { NotEmbedding, Derived, PRegular, Smooth };

struct EmbeddingReport {
    EmbeddingKind kind = EmbeddingKind::NotEmbedding;
    IntVec torsion;       // invariant factors of Tor(X'/ZΦ'), descending
    IntVec p_part;        // their p-parts (trivial entries dropped)
    IntVec p_prime_part;  // their prime-to-p parts (trivial entries dropped)
    /// When an endomorphism φ of the target is supplied: a verified lift φ'
    /// on the source with f∘φ' = φ∘f and φ' p-Steinberg.
    std::optional<IntMatrix> steinberg_lift;
    std::string detail;
};

/// Classifies f : source → target as a derived / p-regular / smooth regular
/// embedding of root data. `steinberg`, if given, is a p-Steinberg
/// endomorphism matrix on the target lattice; a compatible lift on the
/// source is searched for and attached when found.
EmbeddingReport classify_embedding(const PMorphism& f, const RootDatum& source,
                                   const RootDatum& target, const Int& p,
                                   const IntMatrix* steinberg = nullptr);

/// A smooth regular embedding R' → R built from R, together with the data
/// identifying X' inside X ⊕ X.
struct SmoothEmbedding {
    RootDatum datum;       // R', with Tor(X'/ZΦ') = 0
    IntMatrix basis;       // columns of X' inside X ⊕ X (identity when unchanged)
    PMorphism projection;  // R' → R, surjective with bijective roots
    std::optional<IntMatrix> steinberg; // ψ with projection∘ψ = F∘projection
    bool doubled = false;  // false when R was already smooth and returned as-is
};

/// Doubling construction: X' = {(x,y) ∈ X ⊕ X : x − y ∈ ZΦ} with the roots
/// placed in the first factor. When Tor(X/ZΦ) = 0 the input is returned
/// unchanged unless force_construction is set. A supplied endomorphism
/// matrix F acts diagonally on X' and is returned restricted to X'.
SmoothEmbedding smooth_regular_embedding(const RootDatum& R,
                                         const IntMatrix* frobenius = nullptr,
                                         bool force_construction = false);

/// Smooth regular embedding with central torus rank equal to s, the number
/// of invariant factors of X/ZΦ; only available for simple R carrying a
/// genuine p-Frobenius endomorphism.
struct OptimalEmbedding {
    RootDatum datum;       // R' = central product of R with a rank-s torus
    IntMatrix basis;       // X' inside X ⊕ Z^s
    PMorphism projection;  // R' → R
    IntMatrix steinberg;   // ψ = q·(τ ⊕ τ̃) restricted to X', verified
    IntMatrix torus_lift;  // τ̃, a finite-order unimodular lift on Z^s
    int torus_rank = 0;    // = s
};

OptimalEmbedding optimal_embedding(const RootDatum& R, const IntMatrix& frobenius,
                                   const Int& p);

/// The rank-two obstruction at p = 2: for the simply connected C2 datum with
/// F(ω1) = 2^r ω2, F(ω2) = 2^{r+1} ω1, every candidate extension
/// ψ_s(x,y) = (F(x), 2^s y) to the rank-3 lattice X ⊕_{Z/2} Z fails to be a
/// 2-Steinberg endomorphism: ψ_s² scales e2 by an odd power of 2 and e3 by
/// an even one, so no power of ψ_s is a 2-power scalar.
struct SuzukiObstruction {
    long r = 0;
    IntMatrix frobenius;              // F on the weight basis
    SteinbergResult base_witness;     // is_p_steinberg(F, 2): witness (2, 2r+1)
    IntMatrix lattice;                // basis of X' inside X ⊕ Z (columns)
    std::vector<long> shifts;         // the s values examined
    std::vector<bool> lattice_stable; // ψ_s maps X' into X'
    std::vector<SteinbergResult> verdicts;      // for lattice-stable shifts
    std::vector<std::string> certificates;      // parity of the two exponents
    bool all_obstructed = false;
};

SuzukiObstruction steinberg_obstruction_check(long r, long max_shift);

} // namespace rdk

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rdk/embed.hpp"
#include "rdk/morphism.hpp"
#include "rdk/root_datum.hpp"

namespace rdk {

/// Completion of two derived embeddings s1 : R1 → R, s2 : R2 → R to a
/// commuting square of smooth regular embeddings out of a common datum R'.
/// All stated properties are verified during construction and carried in
/// the result.
struct CompletedEmbeddings {
    RootDatum datum;    // R', with Tor(X'/ZΦ') = 0
    IntMatrix basis;    // X' inside X ⊕ S (S the equalizer torus lattice)
    IntMatrix equalizer; // basis of S = {(x1,x2) : s1(x1) = s2(x2)} in X1 ⊕ X2
    PMorphism pi1, pi2; // smooth regular embeddings R' → R1, R' → R2
    PMorphism lambda;   // R' → R, equal to s1∘π1 and to s2∘π2
    std::optional<IntMatrix> steinberg; // ψ on X', commuting with everything
    IntVec centre_torsion;        // torsion of X'/ZΦ' (certified empty)
    bool square_commutes = false; // s1∘π1 = s2∘π2 as lattice maps
};

CompletedEmbeddings complete_embeddings(const PMorphism& s1, const RootDatum& R1,
                                        const PMorphism& s2, const RootDatum& R2,
                                        const RootDatum& R,
                                        const IntMatrix* F = nullptr,
                                        const IntMatrix* F1 = nullptr,
                                        const IntMatrix* F2 = nullptr);

/// Dual construction: a covering datum R̃ with an injective character map
/// X → X̃ whose cokernel is torsion-free (the covering kernel is a torus),
/// simply connected derived part, and the same central torsion as R.
struct SmoothCovering {
    RootDatum datum;  // R̃ = dual of a smooth regular embedding of dual(R)
    PMorphism chart;  // R → R̃ on character lattices, injective
    std::optional<IntMatrix> steinberg; // F̃ with F̃∘chart = chart∘F
    bool kernel_is_torus = false;          // cokernel of chart.f torsion-free
    bool derived_simply_connected = false; // coroot lattice saturated in X̌̃
    bool centre_transfer = false;          // Tor(X̃/ZΦ̃) ≅ Tor(X/ZΦ)
    IntVec covering_torsion, base_torsion;
};

SmoothCovering smooth_covering(const RootDatum& R, const IntMatrix* F = nullptr,
                               bool force_construction = false);

/// Blockwise smooth embedding compatible with an endomorphism permuting the
/// blocks cyclically: each block is doubled, and the extension rotates the
/// doubles the same way. ψⁿ stabilises the first double and restricts there
/// compatibly with Fⁿ.
struct CyclicBlockEmbedding {
    std::vector<SmoothEmbedding> blocks; // per-block doubles
    RootDatum datum;                     // direct sum of the doubles
    IntMatrix h;    // block-diagonal projection X' → X
    IntMatrix psi;  // rotated extension on X'
    PMorphism sigma;               // R' → R as a morphism of root data
    bool rotation_certified = false; // h∘ψ = F∘h
    bool block1_certified = false;   // h1∘(ψⁿ|₁) = (Fⁿ|₁)∘h1
    IntMatrix psi_power_block1;      // ψⁿ restricted to the first double
};

CyclicBlockEmbedding cyclic_block_embedding(const std::vector<RootDatum>& blocks,
                                            const IntMatrix& F);

} // namespace rdk

#pragma once

#include "rdk/morphism.hpp"
#include "rdk/root_datum.hpp"

namespace rdk {

/// Gluing data for a central product: two data with surjections of their
/// character lattices onto a common finite abelian group A that kill the
/// roots.
struct CentralProductSpec {
    RootDatum R1, R2;
    zlattice::FinAbPresentation A;
    IntMatrix h1, h2; // |A-gens| x rank_i, in A's adapted coordinates
};

ValidationReport validate_central_spec(const CentralProductSpec& spec);

/// The central product R1 ⊕_{(A,h1,h2)} R2: the induced datum on the fiber
/// lattice B = {(x1,x2) : h1(x1) = h2(x2)} ⊆ X1 ⊕ X2.
struct CentralProductResult {
    RootDatum datum;   // in the Hermite basis of B
    IntMatrix embed;   // basis of B inside X1 ⊕ X2 (columns)
    IntMatrix proj1;   // lattice map B → X1 (composite of embed and projection)
    IntMatrix proj2;   // B → X2
    PMorphism p1, p2;  // the projections as morphisms of root data (p = 0)
};

CentralProductResult central_product(const CentralProductSpec& spec);

/// Canonical central-product data of an arbitrary datum:
/// (derived part, radical torus, A = X/(Φ^⊤ ⊕ Φ̌^⊥)) with the two induced
/// surjections.
struct RecoveredComponents {
    DatumWithMap derived;  // with projection X → X_der
    DatumWithMap rad;      // with projection X → X_rad
    zlattice::FinAbPresentation A;
    IntMatrix h1; // X_der ↠ A
    IntMatrix h2; // X_rad ↠ A
};

RecoveredComponents recover_components(const RootDatum& R);

/// R ≅ R_der ⊕_A R_rad, with the isomorphism x ↦ (x+Φ̌^⊥, x+Φ^⊤) made
/// explicit in coordinates and verified exactly.
struct CentralDecomposition {
    CentralProductSpec spec;
    CentralProductResult product;
    IntMatrix iso; // X → B-coordinates, unimodular, verified datum isomorphism
};

CentralDecomposition decompose_as_central_product(const RootDatum& R);

/// Canonical structure of a derived embedding f : R2 → R1 (f surjective on
/// lattices, bijective on roots, R1 semisimple): an isomorphism
/// R2 ≅ R1 ⊕_{(A,h1,h2)} (R2)_rad with A = X1/f(Φ2^⊤) and f = proj1 ∘ iso.
CentralDecomposition derived_embedding_structure(const PMorphism& f,
                                                 const RootDatum& R2,
                                                 const RootDatum& R1);

/// Splitting of an endomorphism ζ of a central product (R1 semisimple, R2 a
/// torus) into factor endomorphisms and the induced map on A:
/// ζ = (ζ1 ⊕ ζ2)|_B, ζ3∘h1 = h1∘ζ1, ζ3∘h2 = h2∘ζ2.
struct CentralEndomorphismParts {
    IntMatrix zeta1, zeta2, zeta3;
    bool kernel_condition = false; // ζ1(Ker h1) ⊆ Ker h1 (makes ζ3 well defined)
};

CentralEndomorphismParts decompose_over_central_product(
    const IntMatrix& zeta, const CentralProductSpec& spec,
    const CentralProductResult& product);

} // namespace rdk

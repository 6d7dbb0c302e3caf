#pragma once

#include <optional>
#include <vector>

#include "rdk/central.hpp"
#include "rdk/morphism.hpp"
#include "rdk/root_datum.hpp"

namespace rdk {

/// Default cap on enumeration work (orbit states, group elements).
inline constexpr unsigned long kDefaultBudget = 1u << 20;

/// Indices into R.roots of a base Δ: every root is a one-signed integer
/// combination of Δ. Deterministic choice.
std::vector<int> find_base(const RootDatum& R);

/// Entrywise reduction of a map on adapted generators: row i taken mod d_i.
IntMatrix reduce_aut(const IntMatrix& M, const IntVec& d);

/// Preimages in Z^n of the adapted generators of A under a surjection h.
IntMatrix generator_preimages(const IntMatrix& h,
                              const zlattice::FinAbPresentation& A);

/// The endomorphism of A induced by a lattice map g with g(Ker h) ⊆ Ker h:
/// result∘h = h∘g on classes.
IntMatrix induced_on_quotient(const IntMatrix& g, const IntMatrix& h,
                              const zlattice::FinAbPresentation& A);

/// All lattice maps g with g(Δ1-system) = Δ2-system preserving the Cartan
/// pairings, integral and unimodular, verified as datum isomorphisms.
/// Complete up to Weyl: every isomorphism R1 → R2 equals one of these
/// composed with a Weyl automorphism acting trivially on X/ZΦ.
std::vector<IntMatrix> semisimple_isomorphisms(const RootDatum& R1, const RootDatum& R2);

struct IsoResult {
    enum class Kind { Iso, NotIso, Unknown } kind;
    IntMatrix iso;           // verified when kind == Iso
    std::string detail;      // obstruction / budget note otherwise
};

/// Full isomorphism test for arbitrary valid root data. Sound (witness is
/// verified exactly) and complete up to the enumeration budget.
IsoResult isomorphic(const RootDatum& R1, const RootDatum& R2,
                     unsigned long budget = kDefaultBudget);

/// The classification key (semisimple part, torus rank, lattice K between
/// ZΦ and the derived character lattice).
struct ClassTriple {
    RootDatum semisimple; // the derived datum, in its own coordinates
    int torus_rank = 0;
    IntMatrix K;          // column lattice in the derived coordinates
};

ClassTriple triple_of(const RootDatum& R);

/// Two triples are equivalent when an isomorphism of the semisimple parts
/// carries one K to the other and the torus ranks agree.
bool triples_equivalent(const ClassTriple& t1, const ClassTriple& t2);

/// Elements of Aut(A) as matrices on the adapted generators, entries
/// reduced mod the invariant factors.
struct AutGroupGens {
    std::vector<IntMatrix> elements;
    bool complete = false; // full element list vs. budget-truncated
};

AutGroupGens aut_finite_abelian(const zlattice::FinAbPresentation& A,
                                unsigned long budget = kDefaultBudget);

struct TameVerdict {
    enum class Kind { Tame, NotTame, Unknown } kind;
    IntMatrix lift;     // unimodular M with f∘M ≡ ψ∘f, when Tame
    std::string detail;
};

/// Is ψ ∈ Aut(A) induced by a lattice automorphism of the torus Z^r through
/// the surjection f : Z^r ↠ A (an s×r matrix in adapted coordinates)?
/// Decided by exhausting the GL_r(Z)-orbit of f's generator tuple, which
/// also produces the witness matrix.
TameVerdict tame_torus_verdict(const zlattice::FinAbPresentation& A, int r,
                               const IntMatrix& f, const IntMatrix& psi,
                               unsigned long budget = kDefaultBudget);

/// The full tame-torus subgroup: one verdict per element of Aut(A),
/// elements aligned with aut_finite_abelian(A).
struct TameSubgroup {
    AutGroupGens aut;              // the ambient Aut(A)
    std::vector<TameVerdict> verdicts;
};

TameSubgroup tame_torus(const zlattice::FinAbPresentation& A, int r,
                        const IntMatrix& f, unsigned long budget = kDefaultBudget);

/// Image in Aut(A), A = X/K, of the automorphism group of a semisimple
/// datum stabilizing K. Diagram automorphisms suffice: the Weyl group acts
/// trivially on X/ZΦ and hence on A.
AutGroupGens tame_semisimple(const RootDatum& R, const IntMatrix& K);

/// One representative per isomorphism class of data with the given triple:
/// the double cosets of Aut(A) under the two tame subgroups.
struct ClassRepresentative {
    IntMatrix psi;    // coset representative in Aut(A)
    RootDatum datum;  // R ⊕_{(A, h, ψ∘f)} torus
    size_t coset_size = 0;
};

struct ClassificationResult {
    std::vector<ClassRepresentative> classes;
    zlattice::FinAbPresentation A;
};

ClassificationResult classify_products(const ClassTriple& t,
                                       unsigned long budget = kDefaultBudget);

/// The standard surjection Z^r ↠ A: project onto the first s coordinates.
IntMatrix standard_surjection(const zlattice::FinAbPresentation& A, int r);

/// The central product R ⊕_{(A, canonical, ψ∘f₀)} torus_r for a triple.
RootDatum product_for_psi(const ClassTriple& t, const IntMatrix& psi);

} // namespace rdk

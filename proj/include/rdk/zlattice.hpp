#pragma once

#include <optional>

#include "rdk/int_matrix.hpp"

// Exact arithmetic on finitely generated Z-modules: normal forms, adapted
// bases, kernels, saturations, annihilators, duals and fiber products.
// Sublattices of Z^n are represented throughout by generator matrices whose
// COLUMNS generate the lattice; the canonical form is the column-style
// Hermite normal form, so lattice equality is matrix equality.
namespace rdk::zlattice {

/// U*M*V = S with U, V unimodular and S diagonal, nonzero diagonal entries
/// in ascending divisibility order s1 | s2 | ... (internal convention; the
/// descending "invariant factor" convention is applied at the boundary).
struct SmithDecomposition {
    IntMatrix U, S, V;
    IntMatrix Uinv, Vinv; // tracked during reduction, det(U) = det(Uinv) = ±1

    IntVec diagonal() const;
    int rank() const;
};

SmithDecomposition smith_normal_form(const IntMatrix& M);

int rank(const IntMatrix& M);

/// Basis of {x : M x = 0}, as columns. cols == nullity of M.
IntMatrix kernel(const IntMatrix& M);

/// Exact solve M x = b over Z; nullopt when no integral solution exists.
std::optional<IntVec> solve(const IntMatrix& M, const IntVec& b);

/// Columnwise solve M X = B.
std::optional<IntMatrix> solve_matrix(const IntMatrix& M, const IntMatrix& B);

/// Inverse of a matrix with det ±1; throws otherwise.
IntMatrix inverse_unimodular(const IntMatrix& M);

/// Canonical column-style Hermite normal form of the column lattice of M.
/// Zero columns are dropped; pivots positive, entries left of a pivot
/// reduced into [0, pivot).
IntMatrix column_hnf(const IntMatrix& M);

/// Column lattices of A and B coincide inside Z^n.
bool same_lattice(const IntMatrix& A, const IntMatrix& B);

/// Column lattice of A contains the column lattice of B.
bool lattice_contains(const IntMatrix& A, const IntMatrix& B);

bool lattice_contains_vector(const IntMatrix& A, const IntVec& v);

/// Index [Z^n : L] for a full-rank column lattice, 0 when rank(L) < n.
Int lattice_index(const IntMatrix& L, int ambient_rank);

/// Basis of A^T = {x in Z^n : k x in ZA for some k > 0}.
IntMatrix saturation(const IntMatrix& A, int ambient_rank);

/// Basis of A^perp = {y in Z^n : <x,y> = 0 for all columns x of A},
/// pairing = the standard dot product.
IntMatrix annihilator(const IntMatrix& A, int ambient_rank);

/// Basis (x1..xn) of Z^n with divisors d1, d2, ... (descending divisibility
/// d_{i+1} | d_i, free directions carrying divisor 0 first) such that the
/// nonzero d_i x_i form a basis of the column lattice of kernel_gens.
/// The invariant factors of the quotient are the d_i > 1.
struct AdaptedBasis {
    IntMatrix basis;  // columns x1..xn
    IntVec divisors;  // aligned with columns
};

AdaptedBasis adapted_basis(const IntMatrix& kernel_gens, int ambient_rank);

/// Invariant-factor data of Z^n / L.
struct QuotientStructure {
    IntVec invariant_factors; // descending, all > 1; empty = trivial torsion
    int free_rank = 0;

    Int torsion_order() const;
};

QuotientStructure quotient_structure(const IntMatrix& L, int ambient_rank);

/// A finite abelian group A presented as a quotient of Z^ambient_rank:
/// A = Z/d1 + ... + Z/ds (d1 >= ... >= ds, descending divisibility, ds > 1)
/// together with the surjection Z^ambient_rank -> A written in adapted
/// coordinates (row i of `projection` taken mod d_i).
struct FinAbPresentation {
    IntVec invariant_factors;
    int ambient_rank = 0;
    IntMatrix projection; // s x ambient_rank

    static FinAbPresentation trivial(int ambient_rank);
    static FinAbPresentation cyclic(const Int& n);           // Z/n with ambient Z
    static FinAbPresentation of_factors(const IntVec& d);    // standard projection

    int num_generators() const { return int(invariant_factors.size()); }
    Int order() const;
    IntVec reduce(const IntVec& classvec) const;  // entrywise mod d_i into [0, d_i)
    IntVec apply_to(const IntVec& x) const;       // image of x in A, reduced
    bool is_trivial_class(const IntVec& classvec) const;
};

/// Quotient presentation of Z^n by the column lattice of L; requires the
/// quotient to be finite.
FinAbPresentation quotient_presentation(const IntMatrix& L, int ambient_rank);

/// Basis of {x in Z^m : M x in column lattice of L} (L inside Z^rows(M)).
IntMatrix preimage_lattice(const IntMatrix& M, const IntMatrix& L);

/// h (s x n, adapted coordinates of A) surjective onto A?
bool is_surjective_onto(const IntMatrix& h, const FinAbPresentation& A);

/// Kernel sublattice of h : Z^n -> A, as columns in Z^n.
IntMatrix map_kernel_lattice(const IntMatrix& h, const FinAbPresentation& A);

/// Fiber product {(x1,x2) : h1(x1) = h2(x2)} of two verified surjections
/// onto A, inside Z^{n1+n2}. Throws std::invalid_argument when an h_i is
/// not surjective.
struct FiberProduct {
    IntMatrix basis;  // (n1+n2) x (n1+n2) column basis, column HNF
    IntMatrix proj1;  // first-factor coordinate projection, n1 x (n1+n2)
    IntMatrix proj2;  // second-factor coordinate projection
};

FiberProduct fiber_product(const IntMatrix& h1, const IntMatrix& h2, const FinAbPresentation& A);

} // namespace rdk::zlattice

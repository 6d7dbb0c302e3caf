#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rdk/root_datum.hpp"

namespace rdk {

/// A p-morphism (f, q, τ) from a source datum R′ to a target datum R.
/// f runs ALONG the datum arrow on character lattices, f : X′ → X.
/// τ runs BACKWARDS on roots: tau[i] is the source-root index attached to
/// target root i, and q[i] is the p-power with f(τ(α_i)) = q_i·α_i.
struct PMorphism {
    IntMatrix f;
    Int p = 0;            // prime, or 0 for ordinary homomorphisms (q ≡ 1)
    std::vector<Int> q;   // aligned with target roots
    std::vector<int> tau; // target root index -> source root index
};

PMorphism identity_morphism(const RootDatum& R);

ValidationReport validate_p_morphism(const PMorphism& m, const RootDatum& source,
                                     const RootDatum& target);

/// Recover q and τ from f alone: for each target root α there must be a
/// unique source root β and p-power q with f(β) = q·α and f^T(α̌) = q·β̌.
std::optional<PMorphism> infer_p_morphism(const IntMatrix& f, const Int& p,
                                          const RootDatum& source,
                                          const RootDatum& target);

/// f and f^T both injective.
bool is_p_isogeny(const PMorphism& m);

/// m1 : R1 → R2, m2 : R2 → R3; result is m2∘m1 : R1 → R3.
PMorphism compose(const PMorphism& m2, const PMorphism& m1);

/// The dual p-morphism dual(target) → dual(source): f transposed, τ and q
/// transported through the root/coroot alignment.
PMorphism dualize(const PMorphism& m, const RootDatum& source, const RootDatum& target);

/// M is a root-datum isomorphism source → target: unimodular on lattices
/// and an ordinary (q ≡ 1) morphism matching roots to roots bijectively.
bool is_datum_isomorphism(const IntMatrix& M, const RootDatum& source,
                          const RootDatum& target);

/// lcm{k : φ(k) ≤ dim²}; any eigenvalue-ratio root of unity of a dim×dim
/// integer matrix has order dividing this, so a scalar-power witness
/// exponent, when one exists, divides twice it.
Int scalar_power_order_bound(int dim);

struct SteinbergWitness {
    unsigned long n = 0; // f^n = p^m · I
    unsigned long m = 0;
};

struct SteinbergResult {
    enum class Kind { Witness, NotSteinberg, Unknown } kind;
    SteinbergWitness witness;   // least n, when kind == Witness
    std::string certificate;    // reason, for the other kinds
};

/// Decide whether some power of f is a positive p-power times the identity.
/// max_order = 0 means "search the full provable bound"; a nonzero value
/// caps the search and may yield Unknown.
SteinbergResult is_p_steinberg(const IntMatrix& f, const Int& p,
                               unsigned long max_order = 0);

struct FrobeniusResult {
    enum class Kind { Frobenius, NotFrobenius, Unknown } kind;
    unsigned long a = 0;         // f = p^a · φ₀
    IntMatrix finite_order_part; // φ₀, integral of finite order
    unsigned long order = 0;     // order of φ₀
    std::string certificate;
};

/// Decide whether f = p^a·φ₀ with φ₀ integral of finite order.
FrobeniusResult is_p_frobenius(const IntMatrix& f, const Int& p,
                               unsigned long max_order = 0);

} // namespace rdk

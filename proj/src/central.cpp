#include "rdk/central.hpp"

#include <stdexcept>

namespace rdk {

namespace zl = zlattice;

namespace {

// Right inverse of a surjective saturated projection: P W = I over Z.
IntMatrix right_inverse(const IntMatrix& P) {
    auto W = zl::solve_matrix(P, IntMatrix::identity(P.rows()));
    if (!W) throw std::logic_error("right_inverse: projection not surjective over Z");
    return *W;
}

// Preimage in Z^n of the standard generator e_i of A under a surjection h.
IntMatrix generator_preimages(const IntMatrix& h, const zl::FinAbPresentation& A) {
    IntMatrix D = IntMatrix::diagonal(A.invariant_factors);
    IntMatrix out(h.cols(), A.num_generators());
    for (int i = 0; i < A.num_generators(); ++i) {
        IntVec e(size_t(A.num_generators()), Int(0));
        e[size_t(i)] = 1;
        auto sol = zl::solve(h.hstack(D), e);
        if (!sol) throw std::logic_error("generator_preimages: h not surjective");
        for (int r = 0; r < h.cols(); ++r) out(r, i) = (*sol)[size_t(r)];
    }
    return out;
}

} // namespace

ValidationReport validate_central_spec(const CentralProductSpec& spec) {
    auto fail = [](std::string s) { return ValidationReport{false, std::move(s)}; };
    auto v1 = validate(spec.R1);
    if (!v1.ok) return fail("R1: " + v1.message);
    auto v2 = validate(spec.R2);
    if (!v2.ok) return fail("R2: " + v2.message);
    int s = spec.A.num_generators();
    if (spec.h1.rows() != s || spec.h1.cols() != spec.R1.rank)
        return fail("h1 has the wrong shape");
    if (spec.h2.rows() != s || spec.h2.cols() != spec.R2.rank)
        return fail("h2 has the wrong shape");
    if (!zl::is_surjective_onto(spec.h1, spec.A)) return fail("h1 is not surjective onto A");
    if (!zl::is_surjective_onto(spec.h2, spec.A)) return fail("h2 is not surjective onto A");
    for (size_t i = 0; i < spec.R1.roots.size(); ++i)
        if (!spec.A.is_trivial_class(spec.h1.apply(spec.R1.roots[i])))
            return fail("h1 does not kill root " + std::to_string(i) + " of R1");
    for (size_t i = 0; i < spec.R2.roots.size(); ++i)
        if (!spec.A.is_trivial_class(spec.h2.apply(spec.R2.roots[i])))
            return fail("h2 does not kill root " + std::to_string(i) + " of R2");
    return {};
}

CentralProductResult central_product(const CentralProductSpec& spec) {
    auto rep = validate_central_spec(spec);
    if (!rep.ok) throw std::invalid_argument("central_product: " + rep.message);

    auto fp = zl::fiber_product(spec.h1, spec.h2, spec.A);
    RootDatum sum = direct_sum(spec.R1, spec.R2);
    auto ind = induced_datum(sum, fp.basis); // roots lie in B since h_i kill them

    CentralProductResult out;
    out.datum = ind.datum;
    out.embed = ind.map;
    out.proj1 = fp.proj1 * ind.map;
    out.proj2 = fp.proj2 * ind.map;

    int n12 = spec.R1.rank + spec.R2.rank;
    if (zl::lattice_index(out.embed, n12) != spec.A.order())
        throw std::logic_error("central_product: index of B does not match |A|");
    auto check = validate(out.datum);
    if (!check.ok)
        throw std::logic_error("central_product: result fails validation: " + check.message);

    // projections as morphisms of root data; the root alignment is
    // positional (direct_sum lists R1's roots first)
    auto make_proj = [&](const IntMatrix& f, const RootDatum& target, size_t offset) {
        PMorphism p;
        p.f = f;
        p.p = 0;
        p.q.assign(target.roots.size(), Int(1));
        p.tau.resize(target.roots.size());
        for (size_t i = 0; i < target.roots.size(); ++i) p.tau[i] = int(offset + i);
        return p;
    };
    out.p1 = make_proj(out.proj1, spec.R1, 0);
    out.p2 = make_proj(out.proj2, spec.R2, spec.R1.roots.size());
    return out;
}

RecoveredComponents recover_components(const RootDatum& R) {
    RecoveredComponents out;
    out.derived = derived_datum(R);
    out.rad = radical(R);
    IntMatrix phi_top = root_saturation(R);
    IntMatrix cophi_perp = coroot_annihilator(R);
    IntMatrix L = phi_top.hstack(cophi_perp); // full rank: X/(Φ^⊤ ⊕ Φ̌^⊥) finite
    out.A = zl::quotient_presentation(L, R.rank);

    // h1 on X_der = X/Φ̌^⊥: choose any section W of the derived projection;
    // h1 = A∘W is independent of the choice because A kills Φ̌^⊥ = Ker(P_der)
    IntMatrix W1 = right_inverse(out.derived.map);
    out.h1 = out.A.projection * W1;
    IntMatrix W2 = right_inverse(out.rad.map);
    out.h2 = out.A.projection * W2;
    return out;
}

namespace {

CentralDecomposition assemble_decomposition(const CentralProductSpec& spec,
                                            const IntMatrix& to_sum_coords,
                                            const RootDatum& R) {
    CentralDecomposition out;
    out.spec = spec;
    out.product = central_product(spec);
    // φ(x) lands in B; rewrite in the Hermite basis of B
    auto iso = zl::solve_matrix(out.product.embed, to_sum_coords);
    if (!iso) throw std::logic_error("central decomposition: image not inside B");
    out.iso = *iso;
    if (!is_datum_isomorphism(out.iso, R, out.product.datum))
        throw std::logic_error("central decomposition: candidate map is not an isomorphism");
    return out;
}

} // namespace

CentralDecomposition decompose_as_central_product(const RootDatum& R) {
    auto rec = recover_components(R);
    CentralProductSpec spec{rec.derived.datum, rec.rad.datum, rec.A, rec.h1, rec.h2};
    // φ(x) = (x+Φ̌^⊥, x+Φ^⊤) in X_der ⊕ X_rad coordinates
    IntMatrix phi = rec.derived.map.vstack(rec.rad.map);
    return assemble_decomposition(spec, phi, R);
}

CentralDecomposition derived_embedding_structure(const PMorphism& f,
                                                 const RootDatum& R2,
                                                 const RootDatum& R1) {
    auto rep = validate_p_morphism(f, R2, R1);
    if (!rep.ok)
        throw std::invalid_argument("derived_embedding_structure: " + rep.message);
    for (const Int& qv : f.q)
        if (qv != 1)
            throw std::invalid_argument("derived_embedding_structure: q must be ≡ 1");
    if (zl::lattice_index(f.f, R1.rank) != 1)
        throw std::invalid_argument("derived_embedding_structure: f not surjective on lattices");
    if (!is_semisimple(R1))
        throw std::invalid_argument("derived_embedding_structure: R1 must be semisimple");

    // A = X1 / f(Φ2^⊤)
    IntMatrix image = f.f * root_saturation(R2);
    auto A = zl::quotient_presentation(image, R1.rank);
    auto rad2 = radical(R2);
    // h2 ∘ P_rad = A ∘ f, well defined as f maps Φ2^⊤ into f(Φ2^⊤)
    IntMatrix W = right_inverse(rad2.map);
    IntMatrix h2 = A.projection * (f.f * W);
    CentralProductSpec spec{R1, rad2.datum, A, A.projection, h2};
    IntMatrix phi = f.f.vstack(rad2.map); // x ↦ (f(x), x+Φ2^⊤)
    auto out = assemble_decomposition(spec, phi, R2);
    // f factors through the first projection
    if (out.product.proj1 * out.iso != f.f)
        throw std::logic_error("derived_embedding_structure: f ≠ p1 ∘ φ");
    return out;
}

CentralEndomorphismParts decompose_over_central_product(
    const IntMatrix& zeta, const CentralProductSpec& spec,
    const CentralProductResult& product) {
    int n1 = spec.R1.rank, n2 = spec.R2.rank;
    const IntMatrix& E = product.embed;
    // D E = E ζ with D the matrix of ζ on X1 ⊕ X2; unique since E is
    // invertible over Q, integral because ζ preserves B ⊆ X1 ⊕ X2 and the
    // factor lattices are recovered from B by saturation
    auto Dt = zl::solve_matrix(E.transpose(), (E * zeta).transpose());
    if (!Dt) throw std::logic_error("decompose_over_central_product: no integral extension");
    IntMatrix D = Dt->transpose();
    IntMatrix z12 = D.submatrix(0, n1, n1, n2);
    IntMatrix z21 = D.submatrix(n1, 0, n2, n1);
    if (!z12.is_zero() || !z21.is_zero())
        throw std::logic_error("decompose_over_central_product: extension not block diagonal");

    CentralEndomorphismParts out;
    out.zeta1 = D.submatrix(0, 0, n1, n1);
    out.zeta2 = D.submatrix(n1, n1, n2, n2);

    // ζ3 on A from ζ1 through preimages of the generators
    IntMatrix pre = generator_preimages(spec.h1, spec.A);
    out.zeta3 = IntMatrix(spec.A.num_generators(), spec.A.num_generators());
    for (int i = 0; i < spec.A.num_generators(); ++i) {
        IntVec img = spec.A.reduce(spec.h1.apply((out.zeta1 * pre).column(i)));
        for (int r = 0; r < spec.A.num_generators(); ++r) out.zeta3(r, i) = img[size_t(r)];
    }
    // well-definedness and both compatibility squares, checked on the
    // standard basis of each Xi
    out.kernel_condition = true;
    IntMatrix K1 = zl::map_kernel_lattice(spec.h1, spec.A);
    for (int j = 0; j < K1.cols(); ++j)
        if (!spec.A.is_trivial_class(spec.h1.apply(out.zeta1.apply(K1.column(j)))))
            out.kernel_condition = false;
    auto square_commutes = [&](const IntMatrix& h, const IntMatrix& z) {
        for (int j = 0; j < z.cols(); ++j) {
            IntVec via_z = spec.A.reduce(h.apply(z.column(j)));
            IntVec via_3 = spec.A.reduce(out.zeta3.apply(spec.A.reduce(h.column(j))));
            if (via_z != via_3) return false;
        }
        return true;
    };
    if (!square_commutes(spec.h1, out.zeta1) || !square_commutes(spec.h2, out.zeta2))
        throw std::logic_error("decompose_over_central_product: ζ3 squares do not commute");
    return out;
}

} // namespace rdk

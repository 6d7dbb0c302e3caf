#include "rdk/embed.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "rdk/classify.hpp"
#include "rdk/zlattice.hpp"

namespace rdk {

namespace zl = zlattice;

namespace {

IntMatrix block_diag(const IntMatrix& A, const IntMatrix& B) {
    IntMatrix out(A.rows() + B.rows(), A.cols() + B.cols());
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j) out(i, j) = A(i, j);
    for (int i = 0; i < B.rows(); ++i)
        for (int j = 0; j < B.cols(); ++j) out(A.rows() + i, A.cols() + j) = B(i, j);
    return out;
}

IntVec concat(const IntVec& a, const IntVec& b) {
    IntVec out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

bool lattice_surjective(const IntMatrix& f, int target_rank) {
    return zl::lattice_index(zl::column_hnf(f), target_rank) == 1;
}

// p-part of a positive integer.
Int p_power_part(Int d, const Int& p) {
    Int out = 1;
    if (p < 2) return out;
    while (d % p == 0) {
        d /= p;
        out *= p;
    }
    return out;
}

// Order of M when finite and at most max_order; 0 otherwise.
long matrix_order(const IntMatrix& M, long max_order) {
    IntMatrix pw = IntMatrix::identity(M.rows());
    for (long k = 1; k <= max_order; ++k) {
        pw = pw * M;
        if (pw.is_identity()) return k;
    }
    return 0;
}

// A unimodular, finite-order M on Z^r with h∘M ≡ zeta∘h modulo the
// invariant factors of A. Exhaustive over small entries for r ≤ 2; for
// larger r only signed permutation matrices are tried.
std::optional<IntMatrix> finite_order_congruent_lift(const IntMatrix& zeta,
                                                     const IntMatrix& h,
                                                     const zl::FinAbPresentation& A,
                                                     int r) {
    const long order_cap = 24;
    auto matches = [&](const IntMatrix& M) {
        if (M.det() != 1 && M.det() != -1) return false;
        if (matrix_order(M, order_cap) == 0) return false;
        return reduce_aut(h * M, A.invariant_factors) ==
               reduce_aut(zeta * h, A.invariant_factors);
    };
    if (r == 0) return IntMatrix(0, 0);
    if (r <= 2) {
        // Entry values ordered to prefer small non-negative lifts, so the
        // identity is found before −identity in the untwisted case.
        const long values[] = {0, 1, -1, 2, -2};
        const long span = 5;
        long total = 1;
        for (int i = 0; i < r * r; ++i) total *= span;
        for (long code = 0; code < total; ++code) {
            IntMatrix M(r, r);
            long c = code;
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < r; ++j) {
                    M(i, j) = values[c % span];
                    c /= span;
                }
            if (matches(M)) return M;
        }
        return std::nullopt;
    }
    std::vector<int> perm(size_t(r), 0);
    for (int i = 0; i < r; ++i) perm[size_t(i)] = i;
    do {
        for (long signs = 0; signs < (1L << r); ++signs) {
            IntMatrix M(r, r);
            for (int j = 0; j < r; ++j)
                M(perm[size_t(j)], j) = (signs >> j) & 1 ? -1 : 1;
            if (matches(M)) return M;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::nullopt;
}

IntVec torsion_invariants(const RootDatum& R) {
    return zl::quotient_structure(zl::column_hnf(R.root_matrix()), R.rank)
        .invariant_factors;
}

} // namespace

EmbeddingReport classify_embedding(const PMorphism& f, const RootDatum& source,
                                   const RootDatum& target, const Int& p,
                                   const IntMatrix* steinberg) {
    EmbeddingReport rep;
    auto val = validate_p_morphism(f, source, target);
    if (!val.ok) {
        rep.detail = "not a morphism of root data: " + val.message;
        return rep;
    }
    for (const auto& qi : f.q)
        if (qi != 1) {
            rep.detail = "not an ordinary homomorphism: some q differs from 1";
            return rep;
        }
    if (!lattice_surjective(f.f, target.rank)) {
        rep.detail = "character-lattice map is not surjective";
        return rep;
    }
    if (source.roots.size() != target.roots.size()) {
        rep.detail = "roots do not biject";
        return rep;
    }

    rep.torsion = torsion_invariants(source);
    bool pure_p = true;
    for (const auto& d : rep.torsion) {
        Int pp = p_power_part(d, p);
        Int pprime = d / pp;
        if (pp > 1) rep.p_part.push_back(pp);
        if (pprime > 1) rep.p_prime_part.push_back(pprime);
        if (pprime > 1) pure_p = false;
    }
    if (rep.torsion.empty())
        rep.kind = EmbeddingKind::Smooth;
    else if (pure_p)
        rep.kind = EmbeddingKind::PRegular;
    else
        rep.kind = EmbeddingKind::Derived;

    if (steinberg == nullptr) return rep;

    // Search for a lift φ' on the source with f∘φ' = steinberg∘f.
    const IntMatrix& phi = *steinberg;
    auto base = is_p_steinberg(phi, p);
    if (base.kind != SteinbergResult::Kind::Witness) {
        rep.detail = "supplied endomorphism is not p-Steinberg: " + base.certificate;
        return rep;
    }
    if (!is_semisimple(target)) {
        rep.detail = "lift search implemented for semisimple targets only";
        return rep;
    }
    try {
        CentralDecomposition dec = derived_embedding_structure(f, source, target);
        const auto& A = dec.spec.A;
        int r = dec.spec.R2.rank; // radical rank of the source
        // φ acts on A through h1 whenever it stabilises Ker h1.
        IntMatrix K = zl::map_kernel_lattice(dec.spec.h1, A);
        if (!zl::lattice_contains(zl::column_hnf(K), zl::column_hnf(phi * K))) {
            rep.detail = "endomorphism does not stabilise the kernel of the centre map";
            return rep;
        }
        IntMatrix zeta = induced_on_quotient(phi, dec.spec.h1, A);
        std::vector<IntMatrix> candidates;
        // Frobenius shape q·τ: lift τ through the torus factor and rescale.
        auto fr = is_p_frobenius(phi, p);
        if (fr.kind == FrobeniusResult::Kind::Frobenius) {
            Int q = 1;
            for (unsigned long i = 0; i < fr.a; ++i) q *= p;
            IntMatrix tau_bar = induced_on_quotient(fr.finite_order_part,
                                                    dec.spec.h1, A);
            auto lift = finite_order_congruent_lift(tau_bar, dec.spec.h2, A, r);
            if (lift) candidates.push_back(*lift * q);
        }
        // Scalar fallbacks: p-power multiples of the identity on the torus.
        Int scal = 1;
        for (int k = 0; k <= 2 * A.num_generators() + 4; ++k) {
            candidates.push_back(IntMatrix::identity(r) * scal);
            scal *= p;
        }
        for (const auto& M : candidates) {
            if (reduce_aut(dec.spec.h2 * M, A.invariant_factors) !=
                reduce_aut(zeta * dec.spec.h2, A.invariant_factors))
                continue;
            IntMatrix big = block_diag(phi, M);
            auto psiB = zl::solve_matrix(dec.product.embed, big * dec.product.embed);
            if (!psiB) continue;
            IntMatrix iso_inv = zl::inverse_unimodular(dec.iso);
            IntMatrix lift = iso_inv * (*psiB * dec.iso);
            if (f.f * lift != phi * f.f) continue;
            if (is_p_steinberg(lift, p).kind != SteinbergResult::Kind::Witness)
                continue;
            rep.steinberg_lift = lift;
            break;
        }
        if (!rep.steinberg_lift)
            rep.detail = "no compatible lift found within the search bounds";
    } catch (const std::exception& e) {
        rep.detail = std::string("lift search failed: ") + e.what();
    }
    return rep;
}

SmoothEmbedding smooth_regular_embedding(const RootDatum& R,
                                         const IntMatrix* frobenius,
                                         bool force_construction) {
    auto check = validate(R);
    if (!check.ok) throw std::invalid_argument("invalid datum: " + check.message);
    SmoothEmbedding out;
    if (torsion_invariants(R).empty() && !force_construction) {
        out.datum = R;
        out.basis = IntMatrix::identity(R.rank);
        out.projection = identity_morphism(R);
        if (frobenius) out.steinberg = *frobenius;
        out.doubled = false;
        return out;
    }
    int n = R.rank;
    IntMatrix Phi = R.root_matrix();
    // Columns spanning {(x,y) : x − y ∈ ZΦ}: the diagonal plus ZΦ ⊕ 0.
    IntMatrix I = IntMatrix::identity(n);
    IntMatrix top = I.hstack(Phi);
    IntMatrix bottom = I.hstack(IntMatrix::zero(n, Phi.cols()));
    // Full rank 2n only for semisimple R; in general the rank is
    // n + rank(ZΦ), the free part of X/ZΦ being identified diagonally.
    IntMatrix E = zl::column_hnf(top.vstack(bottom));
    int nb = E.cols();

    RootDatum Rp;
    Rp.rank = nb;
    IntVec zero_n(size_t(n), Int(0));
    for (size_t i = 0; i < R.roots.size(); ++i) {
        auto c = zl::solve(E, concat(R.roots[i], zero_n));
        if (!c) throw std::logic_error("root does not lie in the doubled lattice");
        Rp.roots.push_back(*c);
        Rp.coroots.push_back(E.transpose().apply(concat(R.coroots[i], zero_n)));
    }
    auto vp = validate(Rp);
    if (!vp.ok) throw std::logic_error("doubled datum invalid: " + vp.message);
    if (!torsion_invariants(Rp).empty())
        throw std::logic_error("doubled datum has central torsion");

    out.datum = Rp;
    out.basis = E;
    IntMatrix proj = E.submatrix(0, 0, n, nb);
    auto m = infer_p_morphism(proj, 0, Rp, R);
    if (!m) throw std::logic_error("projection is not a homomorphism of root data");
    out.projection = *m;
    out.doubled = true;

    if (frobenius) {
        const IntMatrix& F = *frobenius;
        auto psi = zl::solve_matrix(E, block_diag(F, F) * E);
        if (!psi)
            throw std::invalid_argument(
                "endomorphism does not preserve the root lattice");
        if (proj * *psi != F * proj)
            throw std::logic_error("diagonal extension does not commute");
        out.steinberg = *psi;
    }
    return out;
}

OptimalEmbedding optimal_embedding(const RootDatum& R, const IntMatrix& frobenius,
                                   const Int& p) {
    auto check = validate(R);
    if (!check.ok) throw std::invalid_argument("invalid datum: " + check.message);
    if (!is_semisimple(R))
        throw std::invalid_argument("datum is not semisimple");
    // Simplicity: the base must be connected in the Cartan pairing.
    auto base = find_base(R);
    {
        std::vector<bool> seen(base.size(), false);
        std::vector<int> stack{0};
        seen[0] = true;
        while (!stack.empty()) {
            int i = stack.back();
            stack.pop_back();
            for (size_t j = 0; j < base.size(); ++j) {
                if (seen[j]) continue;
                Int c = 0;
                const auto& cor = R.coroots[size_t(base[size_t(i)])];
                const auto& rt = R.roots[size_t(base[j])];
                for (size_t k = 0; k < cor.size(); ++k) c += cor[k] * rt[k];
                if (c != 0) {
                    seen[j] = true;
                    stack.push_back(int(j));
                }
            }
        }
        for (bool s : seen)
            if (!s) throw std::invalid_argument("datum is not simple");
    }
    auto fr = is_p_frobenius(frobenius, p);
    if (fr.kind != FrobeniusResult::Kind::Frobenius)
        throw std::invalid_argument(
            "endomorphism is not a p-Frobenius endomorphism; for genuine "
            "Steinberg endomorphisms no torus of minimal rank need exist "
            "(see the rank-two obstruction check)");
    Int q = 1;
    for (unsigned long i = 0; i < fr.a; ++i) q *= p;

    zl::FinAbPresentation A =
        zl::quotient_presentation(zl::column_hnf(R.root_matrix()), R.rank);
    int s = A.num_generators();
    OptimalEmbedding out;
    out.torus_rank = s;
    if (s == 0) {
        out.datum = R;
        out.basis = IntMatrix::identity(R.rank);
        out.projection = identity_morphism(R);
        out.steinberg = frobenius;
        out.torus_lift = IntMatrix(0, 0);
        return out;
    }
    IntMatrix h = A.projection;       // X ↠ A
    IntMatrix f = IntMatrix::identity(s); // Z^s ↠ A, standard surjection
    IntMatrix tau_bar = induced_on_quotient(fr.finite_order_part, h, A);
    auto lift = finite_order_congruent_lift(tau_bar, f, A, s);
    if (!lift)
        throw std::logic_error("no finite-order lift of the induced action");
    out.torus_lift = *lift;

    CentralProductSpec spec;
    spec.R1 = R;
    spec.R2 = torus(s);
    spec.A = A;
    spec.h1 = h;
    spec.h2 = f;
    auto prod = central_product(spec);
    out.datum = prod.datum;
    out.basis = prod.embed;
    out.projection = prod.p1;

    IntMatrix big = block_diag(frobenius, *lift * q);
    auto psi = zl::solve_matrix(prod.embed, big * prod.embed);
    if (!psi) throw std::logic_error("lift does not stabilise the product lattice");
    out.steinberg = *psi;
    if (prod.proj1 * *psi != frobenius * prod.proj1)
        throw std::logic_error("projection does not intertwine the endomorphisms");
    if (is_p_frobenius(*psi, p).kind != FrobeniusResult::Kind::Frobenius)
        throw std::logic_error("extension is not a p-Frobenius endomorphism");
    return out;
}

SuzukiObstruction steinberg_obstruction_check(long r, long max_shift) {
    if (r < 1) throw std::invalid_argument("the twist parameter r must be positive");
    SuzukiObstruction out;
    out.r = r;
    Int two_r = 1;
    for (long i = 0; i < r; ++i) two_r *= 2;
    // F(ω1) = 2^r ω2, F(ω2) = 2^{r+1} ω1 on the weight basis.
    IntMatrix F(2, 2);
    F(0, 1) = 2 * two_r;
    F(1, 0) = two_r;
    out.frobenius = F;
    out.base_witness = is_p_steinberg(F, 2);

    // X' = Z e1 ⊕ Z e2 ⊕ Z e3 inside X ⊕ Z with e1 = (ω1, ξ), e2 = (ω2, 0),
    // e3 = (0, 2ξ).
    IntMatrix P = IntMatrix::from_rows({{1, 0, 0}, {0, 1, 0}, {1, 0, 2}});
    out.lattice = P;

    bool all_ok = true;
    for (long s = 0; s <= max_shift; ++s) {
        out.shifts.push_back(s);
        Int two_s = 1;
        for (long i = 0; i < s; ++i) two_s *= 2;
        IntMatrix big = block_diag(F, IntMatrix::identity(1) * two_s);
        auto psi = zl::solve_matrix(P, big * P);
        if (!psi) {
            out.lattice_stable.push_back(false);
            out.verdicts.push_back({});
            out.certificates.push_back(
                "shift " + std::to_string(s) +
                ": candidate does not stabilise the lattice");
            continue;
        }
        out.lattice_stable.push_back(true);
        auto verdict = is_p_steinberg(*psi, 2);
        out.verdicts.push_back(verdict);
        if (verdict.kind != SteinbergResult::Kind::NotSteinberg) all_ok = false;

        // Parity certificate: ψ² scales e2 by 2^{2r+1} and e3 by 2^{2s}.
        IntMatrix sq = *psi * *psi;
        std::ostringstream cert;
        bool diag_ok = true;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (i != j && i != 0 && j != 0 && sq(i, j) != 0) diag_ok = false;
        Int e2_scale = sq(1, 1), e3_scale = sq(2, 2);
        Int expect2 = 2 * two_r * two_r, expect3 = two_s * two_s;
        if (!diag_ok || e2_scale != expect2 || e3_scale != expect3) {
            all_ok = false;
            cert << "shift " << s << ": unexpected square action";
        } else {
            cert << "shift " << s << ": ψ² scales e2 by 2^" << (2 * r + 1)
                 << " (odd exponent) and e3 by 2^" << (2 * s)
                 << " (even exponent), so no power of ψ is a 2-power scalar";
        }
        out.certificates.push_back(cert.str());
    }
    out.all_obstructed = all_ok;
    return out;
}

} // namespace rdk

#include "rdk/asai.hpp"

#include <stdexcept>

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

void require_derived(const PMorphism& s, const RootDatum& source,
                     const RootDatum& target, const char* name) {
    auto val = validate_p_morphism(s, source, target);
    if (!val.ok)
        throw std::invalid_argument(std::string(name) +
                                    ": not a morphism of root data: " + val.message);
    for (const auto& qi : s.q)
        if (qi != 1)
            throw std::invalid_argument(std::string(name) +
                                        ": not an ordinary homomorphism");
    if (source.roots.size() != target.roots.size())
        throw std::invalid_argument(std::string(name) + ": roots do not biject");
    if (zl::lattice_index(zl::column_hnf(s.f), target.rank) != 1)
        throw std::invalid_argument(std::string(name) +
                                    ": character-lattice map is not surjective");
}

IntVec torsion_invariants(const RootDatum& R) {
    return zl::quotient_structure(zl::column_hnf(R.root_matrix()), R.rank)
        .invariant_factors;
}

} // namespace

CompletedEmbeddings complete_embeddings(const PMorphism& s1, const RootDatum& R1,
                                        const PMorphism& s2, const RootDatum& R2,
                                        const RootDatum& R,
                                        const IntMatrix* F, const IntMatrix* F1,
                                        const IntMatrix* F2) {
    require_derived(s1, R1, R, "s1");
    require_derived(s2, R2, R, "s2");
    int n = R.rank, n1 = R1.rank, n2 = R2.rank;

    // Equalizer lattice S = {(x1,x2) : s1(x1) = s2(x2)} inside X1 ⊕ X2.
    IntMatrix K = zl::kernel(s1.f.hstack(-s2.f));
    int rS = K.cols();
    if (rS != n1 + n2 - n)
        throw std::logic_error("equalizer lattice has unexpected rank");
    IntMatrix K1 = K.submatrix(0, 0, n1, rS);
    IntMatrix K2 = K.submatrix(n1, 0, n2, rS);
    IntMatrix sigma = s1.f * K1; // S → X, the common composite

    // X' = {(x, v) ∈ X ⊕ S : x ≡ sigma(v) mod ZΦ}.
    IntMatrix Phi = R.root_matrix();
    IntMatrix top = sigma.hstack(Phi);
    IntMatrix bottom =
        IntMatrix::identity(rS).hstack(IntMatrix::zero(rS, Phi.cols()));
    IntMatrix E = zl::column_hnf(top.vstack(bottom));
    int nb = E.cols();

    CompletedEmbeddings out;
    out.equalizer = K;
    out.basis = E;
    RootDatum Rp;
    Rp.rank = nb;
    IntVec zero_s(size_t(rS), Int(0));
    for (size_t i = 0; i < R.roots.size(); ++i) {
        auto c = zl::solve(E, concat(R.roots[i], zero_s));
        if (!c) throw std::logic_error("root does not lie in the product lattice");
        Rp.roots.push_back(*c);
        Rp.coroots.push_back(E.transpose().apply(concat(R.coroots[i], zero_s)));
    }
    auto vp = validate(Rp);
    if (!vp.ok) throw std::logic_error("completed datum invalid: " + vp.message);
    out.datum = Rp;
    out.centre_torsion = torsion_invariants(Rp);
    if (!out.centre_torsion.empty())
        throw std::logic_error("completed datum has central torsion");

    IntMatrix Lambda = E.submatrix(0, 0, n, nb);
    auto lm = infer_p_morphism(Lambda, 0, Rp, R);
    if (!lm) throw std::logic_error("projection to the base is not a morphism");
    out.lambda = *lm;

    // π_i columns: for basis vector (x_j, v_j) of X', the unique y ∈ X_i with
    // s_i(y) = x_j and y ≡ (block i of K v_j) modulo the root saturation.
    auto build_pi = [&](const PMorphism& s, const RootDatum& Ri,
                        const IntMatrix& Ki) {
        IntMatrix T = root_saturation(Ri); // n_i × k columns
        IntMatrix sT = s.f * T;
        IntMatrix Pi(Ri.rank, nb);
        for (int j = 0; j < nb; ++j) {
            IntVec xj(size_t(n), 0), vj(size_t(rS), 0);
            for (int i = 0; i < n; ++i) xj[size_t(i)] = E(i, j);
            for (int i = 0; i < rS; ++i) vj[size_t(i)] = E(n + i, j);
            IntVec w = Ki.apply(vj);
            IntVec rhs = xj;
            {
                IntVec sw = s.f.apply(w);
                for (size_t i = 0; i < rhs.size(); ++i) rhs[i] -= sw[i];
            }
            auto c = zl::solve(sT, rhs);
            if (!c) throw std::logic_error("projection onto a factor fails");
            IntVec y = T.apply(*c);
            for (size_t i = 0; i < y.size(); ++i) y[i] += w[i];
            for (int i = 0; i < Ri.rank; ++i) Pi(i, j) = y[size_t(i)];
        }
        return Pi;
    };
    IntMatrix P1 = build_pi(s1, R1, K1);
    IntMatrix P2 = build_pi(s2, R2, K2);
    auto m1 = infer_p_morphism(P1, 0, Rp, R1);
    auto m2 = infer_p_morphism(P2, 0, Rp, R2);
    if (!m1 || !m2)
        throw std::logic_error("factor projection is not a morphism of root data");
    if (zl::lattice_index(zl::column_hnf(P1), n1) != 1 ||
        zl::lattice_index(zl::column_hnf(P2), n2) != 1)
        throw std::logic_error("factor projection is not surjective");
    out.pi1 = *m1;
    out.pi2 = *m2;
    out.square_commutes = (s1.f * P1 == Lambda) && (s2.f * P2 == Lambda);
    if (!out.square_commutes)
        throw std::logic_error("completion square does not commute");

    if (F && F1 && F2) {
        if (s1.f * *F1 != *F * s1.f || s2.f * *F2 != *F * s2.f)
            throw std::invalid_argument("endomorphisms are not compatible with "
                                        "the given embeddings");
        auto psiS = zl::solve_matrix(K, block_diag(*F1, *F2) * K);
        if (!psiS)
            throw std::logic_error("endomorphisms do not stabilise the equalizer");
        auto psi = zl::solve_matrix(E, block_diag(*F, *psiS) * E);
        if (!psi)
            throw std::logic_error("endomorphisms do not stabilise the product");
        if (P1 * *psi != *F1 * P1 || P2 * *psi != *F2 * P2 ||
            Lambda * *psi != *F * Lambda)
            throw std::logic_error("extension does not commute with the square");
        out.steinberg = *psi;
    } else if (F || F1 || F2) {
        throw std::invalid_argument("either all three endomorphisms must be "
                                    "given or none");
    }
    return out;
}

SmoothCovering smooth_covering(const RootDatum& R, const IntMatrix* F,
                               bool force_construction) {
    auto check = validate(R);
    if (!check.ok) throw std::invalid_argument("invalid datum: " + check.message);
    RootDatum D = dual(R);
    std::optional<IntMatrix> Fd;
    if (F) Fd = F->transpose();
    auto se = smooth_regular_embedding(D, Fd ? &*Fd : nullptr, force_construction);

    SmoothCovering out;
    out.datum = dual(se.datum);
    // dual(se.projection) : dual(D) = R → dual(se.datum).
    out.chart = dualize(se.projection, se.datum, D);
    if (F) {
        IntMatrix Ft = se.steinberg->transpose();
        if (Ft * out.chart.f != out.chart.f * *F)
            throw std::logic_error("transported endomorphism does not commute "
                                   "with the covering chart");
        out.steinberg = Ft;
    }

    out.base_torsion = torsion_invariants(R);
    out.covering_torsion = torsion_invariants(out.datum);
    out.centre_transfer = out.base_torsion == out.covering_torsion;
    out.kernel_is_torus =
        zl::rank(out.chart.f) == R.rank &&
        zl::quotient_structure(zl::column_hnf(out.chart.f), out.datum.rank)
            .invariant_factors.empty();
    // Simply connected derived part: the coroot lattice of the covering is
    // saturated, equivalently the root lattice of se.datum is.
    out.derived_simply_connected =
        zl::same_lattice(root_saturation(se.datum),
                         zl::column_hnf(se.datum.root_matrix()));
    if (!out.kernel_is_torus || !out.derived_simply_connected ||
        !out.centre_transfer)
        throw std::logic_error("covering certificates failed");
    return out;
}

CyclicBlockEmbedding cyclic_block_embedding(const std::vector<RootDatum>& blocks,
                                            const IntMatrix& F) {
    size_t nblocks = blocks.size();
    if (nblocks == 0) throw std::invalid_argument("no blocks given");
    std::vector<int> offsets{0};
    for (const auto& B : blocks) {
        auto v = validate(B);
        if (!v.ok) throw std::invalid_argument("invalid block: " + v.message);
        offsets.push_back(offsets.back() + B.rank);
    }
    int total = offsets.back();
    if (F.rows() != total || F.cols() != total)
        throw std::invalid_argument("endomorphism has the wrong size");
    // F must carry block i+1 onto block i (cyclically) and vanish elsewhere.
    std::vector<IntMatrix> Fblocks;
    for (size_t i = 0; i < nblocks; ++i) {
        size_t j = (i + 1) % nblocks;
        Fblocks.push_back(F.submatrix(offsets[i], offsets[j], blocks[i].rank,
                                      blocks[j].rank));
    }
    for (size_t bi = 0; bi < nblocks; ++bi)
        for (size_t bj = 0; bj < nblocks; ++bj) {
            if (nblocks > 1 && bj == (bi + 1) % nblocks) continue;
            if (nblocks == 1) continue;
            IntMatrix blk = F.submatrix(offsets[bi], offsets[bj], blocks[bi].rank,
                                        blocks[bj].rank);
            if (!blk.is_zero())
                throw std::invalid_argument(
                    "endomorphism is not a cyclic block rotation");
        }

    CyclicBlockEmbedding out;
    std::vector<int> doffsets{0};
    for (const auto& B : blocks) {
        out.blocks.push_back(smooth_regular_embedding(B, nullptr, true));
        doffsets.push_back(doffsets.back() + out.blocks.back().datum.rank);
    }
    int dtotal = doffsets.back();

    RootDatum Rp = out.blocks[0].datum;
    for (size_t i = 1; i < nblocks; ++i) Rp = direct_sum(Rp, out.blocks[i].datum);
    out.datum = Rp;

    out.h = IntMatrix::zero(total, dtotal);
    for (size_t i = 0; i < nblocks; ++i) {
        const IntMatrix& hi = out.blocks[i].projection.f;
        for (int r = 0; r < hi.rows(); ++r)
            for (int c = 0; c < hi.cols(); ++c)
                out.h(offsets[i] + r, doffsets[i] + c) = hi(r, c);
    }

    out.psi = IntMatrix::zero(dtotal, dtotal);
    for (size_t i = 0; i < nblocks; ++i) {
        size_t j = (i + 1) % nblocks;
        const IntMatrix& Ei = out.blocks[i].basis;
        const IntMatrix& Ej = out.blocks[j].basis;
        auto Sij = zl::solve_matrix(Ei, block_diag(Fblocks[i], Fblocks[i]) * Ej);
        if (!Sij)
            throw std::invalid_argument(
                "rotation does not stabilise the doubled lattices");
        for (int r = 0; r < Sij->rows(); ++r)
            for (int c = 0; c < Sij->cols(); ++c)
                out.psi(doffsets[i] + r, doffsets[j] + c) = (*Sij)(r, c);
    }

    RootDatum Rsum = blocks[0];
    for (size_t i = 1; i < nblocks; ++i) Rsum = direct_sum(Rsum, blocks[i]);
    auto sm = infer_p_morphism(out.h, 0, Rp, Rsum);
    if (!sm) throw std::logic_error("blockwise projection is not a morphism");
    out.sigma = *sm;

    out.rotation_certified = out.h * out.psi == F * out.h;
    if (!out.rotation_certified)
        throw std::logic_error("rotation does not commute with the projection");

    IntMatrix psin = out.psi.pow((unsigned long)nblocks);
    IntMatrix Fn = F.pow((unsigned long)nblocks);
    int d1 = out.blocks[0].datum.rank;
    out.psi_power_block1 = psin.submatrix(0, 0, d1, d1);
    bool off_clean = true;
    for (int r = 0; r < d1; ++r)
        for (int c = d1; c < dtotal; ++c)
            if (psin(r, c) != 0) off_clean = false;
    for (int r = d1; r < dtotal; ++r)
        for (int c = 0; c < d1; ++c)
            if (psin(r, c) != 0) off_clean = false;
    IntMatrix Fn1 = Fn.submatrix(0, 0, blocks[0].rank, blocks[0].rank);
    out.block1_certified =
        off_clean && out.blocks[0].projection.f * out.psi_power_block1 ==
                         Fn1 * out.blocks[0].projection.f;
    if (!out.block1_certified)
        throw std::logic_error("ψ^n does not restrict compatibly to block 1");
    return out;
}

} // namespace rdk

#include "rdk/zlattice.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace rdk::zlattice {

namespace {

Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

// Floor division; remainder has the sign of the divisor's orientation
// chosen so that x - q*d lies in [0, |d|).
Int floor_div(const Int& x, const Int& d) {
    Int q = x / d, r = x - q * d;
    if (r < 0) q += (d > 0 ? -1 : 1);
    return q;
}

} // namespace

IntVec SmithDecomposition::diagonal() const {
    IntVec d;
    int n = std::min(S.rows(), S.cols());
    for (int i = 0; i < n; ++i)
        if (S(i, i) != 0) d.push_back(S(i, i));
    return d;
}

int SmithDecomposition::rank() const { return int(diagonal().size()); }

SmithDecomposition smith_normal_form(const IntMatrix& M) {
    int m = M.rows(), n = M.cols();
    SmithDecomposition d{IntMatrix::identity(m), M, IntMatrix::identity(n),
                         IntMatrix::identity(m), IntMatrix::identity(n)};
    IntMatrix& S = d.S;

    // Row ops act on U on the left; the inverse op is applied to Uinv so
    // that U * Uinv = I stays exact. Same for columns with V / Vinv.
    auto row_swap = [&](int i, int j) {
        for (int c = 0; c < n; ++c) std::swap(S(i, c), S(j, c));
        for (int c = 0; c < m; ++c) std::swap(d.U(i, c), d.U(j, c));
        for (int r = 0; r < m; ++r) std::swap(d.Uinv(r, i), d.Uinv(r, j));
    };
    auto col_swap = [&](int i, int j) {
        for (int r = 0; r < m; ++r) std::swap(S(r, i), S(r, j));
        for (int r = 0; r < n; ++r) std::swap(d.V(r, i), d.V(r, j));
        for (int c = 0; c < n; ++c) std::swap(d.Vinv(i, c), d.Vinv(j, c));
    };
    auto row_add = [&](int i, int j, const Int& c) { // row_i += c * row_j
        for (int k = 0; k < n; ++k) S(i, k) += c * S(j, k);
        for (int k = 0; k < m; ++k) d.U(i, k) += c * d.U(j, k);
        for (int k = 0; k < m; ++k) d.Uinv(k, j) -= c * d.Uinv(k, i);
    };
    auto col_add = [&](int i, int j, const Int& c) { // col_i += c * col_j
        for (int k = 0; k < m; ++k) S(k, i) += c * S(k, j);
        for (int k = 0; k < n; ++k) d.V(k, i) += c * d.V(k, j);
        for (int k = 0; k < n; ++k) d.Vinv(j, k) -= c * d.Vinv(i, k);
    };
    auto row_negate = [&](int i) {
        for (int k = 0; k < n; ++k) S(i, k) = -S(i, k);
        for (int k = 0; k < m; ++k) d.U(i, k) = -d.U(i, k);
        for (int k = 0; k < m; ++k) d.Uinv(k, i) = -d.Uinv(k, i);
    };

    int t = 0;
    int bound = std::min(m, n);
    while (t < bound) {
        // Smallest nonzero entry of the trailing block as pivot.
        int pi = -1, pj = -1;
        for (int i = t; i < m; ++i)
            for (int j = t; j < n; ++j)
                if (S(i, j) != 0 &&
                    (pi < 0 || abs_int(S(i, j)) < abs_int(S(pi, pj)))) {
                    pi = i; pj = j;
                }
        if (pi < 0) break;
        if (pi != t) row_swap(t, pi);
        if (pj != t) col_swap(t, pj);

        bool clean = true;
        for (int i = t + 1; i < m; ++i) {
            if (S(i, t) == 0) continue;
            row_add(i, t, -floor_div(S(i, t), S(t, t)));
            if (S(i, t) != 0) clean = false;
        }
        for (int j = t + 1; j < n; ++j) {
            if (S(t, j) == 0) continue;
            col_add(j, t, -floor_div(S(t, j), S(t, t)));
            if (S(t, j) != 0) clean = false;
        }
        if (!clean) continue; // a smaller pivot appeared; redo this step

        // Divisibility: fold any non-multiple from the trailing block into
        // the pivot column and redo.
        bool divides_all = true;
        for (int i = t + 1; i < m && divides_all; ++i)
            for (int j = t + 1; j < n; ++j)
                if (S(i, j) % S(t, t) != 0) {
                    row_add(t, i, 1);
                    divides_all = false;
                    break;
                }
        if (!divides_all) continue;

        if (S(t, t) < 0) row_negate(t);
        ++t;
    }
    return d;
}

int rank(const IntMatrix& M) { return smith_normal_form(M).rank(); }

IntMatrix kernel(const IntMatrix& M) {
    // With U M V = S, M (V e_j) = U^{-1} S e_j = 0 exactly for j >= rank.
    SmithDecomposition d = smith_normal_form(M);
    int r = d.rank(), n = M.cols();
    return d.V.submatrix(0, r, n, n - r);
}

std::optional<IntVec> solve(const IntMatrix& M, const IntVec& b) {
    SmithDecomposition d = smith_normal_form(M);
    int r = d.rank(), m = M.rows(), n = M.cols();
    IntVec ub = d.U.apply(b);
    IntVec z(n, Int(0));
    for (int i = 0; i < r; ++i) {
        if (ub[i] % d.S(i, i) != 0) return std::nullopt;
        z[i] = ub[i] / d.S(i, i);
    }
    for (int i = r; i < m; ++i)
        if (ub[i] != 0) return std::nullopt;
    return d.V.apply(z);
}

std::optional<IntMatrix> solve_matrix(const IntMatrix& M, const IntMatrix& B) {
    if (B.rows() != M.rows()) throw std::invalid_argument("solve_matrix: shape");
    IntMatrix X(M.cols(), B.cols());
    for (int j = 0; j < B.cols(); ++j) {
        auto x = solve(M, B.column(j));
        if (!x) return std::nullopt;
        X.set_column(j, *x);
    }
    return X;
}

IntMatrix inverse_unimodular(const IntMatrix& M) {
    if (!M.is_square()) throw std::invalid_argument("inverse_unimodular: not square");
    SmithDecomposition d = smith_normal_form(M);
    if (!d.S.is_identity()) throw std::invalid_argument("inverse_unimodular: det != ±1");
    return d.V * d.U; // U M V = I  =>  M^{-1} = V U
}

IntMatrix column_hnf(const IntMatrix& M) {
    int m = M.rows(), n = M.cols();
    IntMatrix H = M;

    auto col_swap = [&](int i, int j) {
        for (int r = 0; r < m; ++r) std::swap(H(r, i), H(r, j));
    };
    auto col_add = [&](int i, int j, const Int& c) {
        for (int r = 0; r < m; ++r) H(r, i) += c * H(r, j);
    };

    int pivot_col = n - 1;
    for (int row = m - 1; row >= 0 && pivot_col >= 0; --row) {
        // gcd out the row across columns 0..pivot_col into pivot_col
        while (true) {
            int best = -1;
            for (int j = 0; j <= pivot_col; ++j)
                if (H(row, j) != 0 &&
                    (best < 0 || abs_int(H(row, j)) < abs_int(H(row, best))))
                    best = j;
            if (best < 0) break;
            if (best != pivot_col) col_swap(best, pivot_col);
            bool cleared = true;
            for (int j = 0; j < pivot_col; ++j) {
                if (H(row, j) == 0) continue;
                col_add(j, pivot_col, -floor_div(H(row, j), H(row, pivot_col)));
                if (H(row, j) != 0) cleared = false;
            }
            if (cleared) break;
        }
        if (H(row, pivot_col) == 0) continue;
        if (H(row, pivot_col) < 0)
            for (int r = 0; r < m; ++r) H(r, pivot_col) = -H(r, pivot_col);
        // reduce entries to the right of the pivot into [0, pivot)
        for (int j = pivot_col + 1; j < n; ++j)
            col_add(j, pivot_col, -floor_div(H(row, j), H(row, pivot_col)));
        --pivot_col;
    }

    // columns (pivot_col+1 .. n-1) carry the pivots; drop the zero block
    int r = n - 1 - pivot_col;
    IntMatrix out(m, r);
    for (int j = 0; j < r; ++j)
        for (int i = 0; i < m; ++i) out(i, j) = H(i, pivot_col + 1 + j);
    return out;
}

bool same_lattice(const IntMatrix& A, const IntMatrix& B) {
    if (A.rows() != B.rows()) return false;
    return column_hnf(A) == column_hnf(B);
}

bool lattice_contains(const IntMatrix& A, const IntMatrix& B) {
    if (A.rows() != B.rows()) return false;
    return solve_matrix(A, B).has_value();
}

bool lattice_contains_vector(const IntMatrix& A, const IntVec& v) {
    return solve(A, v).has_value();
}

Int lattice_index(const IntMatrix& L, int ambient_rank) {
    SmithDecomposition d = smith_normal_form(L);
    if (d.rank() < ambient_rank) return 0;
    Int idx = 1;
    for (const Int& s : d.diagonal()) idx *= s;
    return idx;
}

IntMatrix saturation(const IntMatrix& A, int ambient_rank) {
    // U A V = S; the first r columns of U^{-1} span Q A ∩ Z^n.
    if (A.cols() == 0) return IntMatrix(ambient_rank, 0);
    SmithDecomposition d = smith_normal_form(A);
    return column_hnf(d.Uinv.submatrix(0, 0, ambient_rank, d.rank()));
}

IntMatrix annihilator(const IntMatrix& A, int ambient_rank) {
    if (A.cols() == 0) return IntMatrix::identity(ambient_rank);
    return column_hnf(kernel(A.transpose()));
}

AdaptedBasis adapted_basis(const IntMatrix& kernel_gens, int ambient_rank) {
    int n = ambient_rank;
    if (kernel_gens.rows() != n)
        throw std::invalid_argument("adapted_basis: ambient rank mismatch");
    SmithDecomposition d = smith_normal_form(kernel_gens);
    int r = d.rank();
    // U L V = S  =>  L's lattice is spanned by s_i * (column i of Uinv).
    // Reorder: free directions (columns r..n-1, divisor 0) first, then the
    // torsion directions in DESCENDING divisor order (reverse of SNF's
    // ascending convention).
    AdaptedBasis out{IntMatrix(n, n), IntVec(size_t(n), Int(0))};
    int k = 0;
    for (int j = r; j < n; ++j, ++k) {
        out.basis.set_column(k, d.Uinv.column(j));
        out.divisors[size_t(k)] = 0;
    }
    for (int j = r - 1; j >= 0; --j, ++k) {
        out.basis.set_column(k, d.Uinv.column(j));
        out.divisors[size_t(k)] = d.S(j, j);
    }
    return out;
}

Int QuotientStructure::torsion_order() const {
    Int o = 1;
    for (const Int& f : invariant_factors) o *= f;
    return o;
}

QuotientStructure quotient_structure(const IntMatrix& L, int ambient_rank) {
    SmithDecomposition d = smith_normal_form(L);
    QuotientStructure q;
    q.free_rank = ambient_rank - d.rank();
    IntVec diag = d.diagonal();
    for (auto it = diag.rbegin(); it != diag.rend(); ++it)
        if (*it > 1) q.invariant_factors.push_back(*it);
    return q;
}

FinAbPresentation FinAbPresentation::trivial(int ambient_rank) {
    return FinAbPresentation{IntVec{}, ambient_rank, IntMatrix(0, ambient_rank)};
}

FinAbPresentation FinAbPresentation::cyclic(const Int& n) {
    if (n <= 1) return trivial(1);
    return FinAbPresentation{IntVec{n}, 1, IntMatrix::identity(1)};
}

FinAbPresentation FinAbPresentation::of_factors(const IntVec& dd) {
    for (size_t i = 0; i + 1 < dd.size(); ++i)
        if (dd[i] % dd[i + 1] != 0)
            throw std::invalid_argument("of_factors: not descending divisibility");
    int s = int(dd.size());
    FinAbPresentation A{dd, s, IntMatrix::identity(s)};
    return A;
}

Int FinAbPresentation::order() const {
    Int o = 1;
    for (const Int& f : invariant_factors) o *= f;
    return o;
}

IntVec FinAbPresentation::reduce(const IntVec& classvec) const {
    if (int(classvec.size()) != num_generators())
        throw std::invalid_argument("FinAbPresentation::reduce: size");
    IntVec out = classvec;
    for (size_t i = 0; i < out.size(); ++i) {
        out[i] %= invariant_factors[i];
        if (out[i] < 0) out[i] += invariant_factors[i];
    }
    return out;
}

IntVec FinAbPresentation::apply_to(const IntVec& x) const {
    return reduce(projection.apply(x));
}

bool FinAbPresentation::is_trivial_class(const IntVec& classvec) const {
    for (size_t i = 0; i < classvec.size(); ++i)
        if (classvec[i] % invariant_factors[i] != 0) return false;
    return true;
}

FinAbPresentation quotient_presentation(const IntMatrix& L, int ambient_rank) {
    SmithDecomposition d = smith_normal_form(L);
    if (d.rank() < ambient_rank)
        throw std::invalid_argument("quotient_presentation: quotient not finite");
    // Z^n / L = ⊕ Z/s_i via x ↦ (rows of U applied to x); keep only s_i > 1,
    // reversed into descending order.
    FinAbPresentation A;
    A.ambient_rank = ambient_rank;
    std::vector<int> keep;
    for (int i = ambient_rank - 1; i >= 0; --i)
        if (d.S(i, i) > 1) keep.push_back(i);
    A.projection = IntMatrix(int(keep.size()), ambient_rank);
    for (size_t k = 0; k < keep.size(); ++k) {
        A.invariant_factors.push_back(d.S(keep[k], keep[k]));
        for (int j = 0; j < ambient_rank; ++j)
            A.projection(int(k), j) = d.U(keep[k], j);
    }
    return A;
}

IntMatrix preimage_lattice(const IntMatrix& M, const IntMatrix& L) {
    if (L.rows() != M.rows())
        throw std::invalid_argument("preimage_lattice: ambient mismatch");
    // {x : Mx ∈ ZL} = projection to the first block of ker [M | -L].
    IntMatrix K = kernel(M.hstack(-L));
    return column_hnf(K.submatrix(0, 0, M.cols(), K.cols()));
}

bool is_surjective_onto(const IntMatrix& h, const FinAbPresentation& A) {
    if (h.rows() != A.num_generators()) return false;
    // h surjective  iff  [h | diag(d)] has full column lattice Z^s.
    IntMatrix D = IntMatrix::diagonal(A.invariant_factors);
    IntMatrix rel = h.hstack(D);
    return lattice_index(rel, A.num_generators()) == 1;
}

IntMatrix map_kernel_lattice(const IntMatrix& h, const FinAbPresentation& A) {
    IntMatrix D = IntMatrix::diagonal(A.invariant_factors);
    return preimage_lattice(h, D);
}

FiberProduct fiber_product(const IntMatrix& h1, const IntMatrix& h2,
                           const FinAbPresentation& A) {
    if (!is_surjective_onto(h1, A) || !is_surjective_onto(h2, A))
        throw std::invalid_argument("fiber_product: map not surjective");
    int n1 = h1.cols(), n2 = h2.cols();
    IntMatrix D = IntMatrix::diagonal(A.invariant_factors);
    // {(x1,x2) : h1 x1 - h2 x2 ≡ 0 mod d}  =  preimage of ZD under [h1 | -h2].
    IntMatrix B = preimage_lattice(h1.hstack(-h2), D);

    FiberProduct fp;
    fp.basis = B;
    fp.proj1 = IntMatrix(n1, n1 + n2);
    fp.proj2 = IntMatrix(n2, n1 + n2);
    for (int i = 0; i < n1; ++i) fp.proj1(i, i) = 1;
    for (int i = 0; i < n2; ++i) fp.proj2(i, n1 + i) = 1;
    return fp;
}

} // namespace rdk::zlattice

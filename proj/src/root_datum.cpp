#include "rdk/root_datum.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace rdk {

namespace zl = zlattice;

namespace {

Int dot(const IntVec& a, const IntVec& b) {
    Int s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

IntVec sub_scaled(const IntVec& a, const Int& c, const IntVec& b) {
    IntVec r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] -= c * b[i];
    return r;
}

std::string vec_str(const IntVec& v) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ")";
    return os.str();
}

} // namespace

IntMatrix RootDatum::root_matrix() const {
    return IntMatrix::from_columns(roots, rank);
}

IntMatrix RootDatum::coroot_matrix() const {
    return IntMatrix::from_columns(coroots, rank);
}

int RootDatum::root_index(const IntVec& v) const {
    for (size_t i = 0; i < roots.size(); ++i)
        if (roots[i] == v) return int(i);
    return -1;
}

int RootDatum::coroot_index(const IntVec& v) const {
    for (size_t i = 0; i < coroots.size(); ++i)
        if (coroots[i] == v) return int(i);
    return -1;
}

ValidationReport validate(const RootDatum& R) {
    auto fail = [](std::string m) { return ValidationReport{false, std::move(m)}; };
    if (R.rank < 0) return fail("negative rank");
    if (R.roots.size() != R.coroots.size())
        return fail("root and coroot lists differ in length");
    for (size_t i = 0; i < R.roots.size(); ++i)
        if (int(R.roots[i].size()) != R.rank || int(R.coroots[i].size()) != R.rank)
            return fail("root/coroot " + std::to_string(i) + " has wrong dimension");

    int N = R.num_roots();
    for (int i = 0; i < N; ++i) {
        if (dot(R.roots[size_t(i)], R.coroots[size_t(i)]) != 2)
            return fail("<α,α̌> = " + dot(R.roots[size_t(i)], R.coroots[size_t(i)]).str() +
                        " ≠ 2 at index " + std::to_string(i) + ", α = " +
                        vec_str(R.roots[size_t(i)]));
    }
    // reduced + symmetric: for each α, the only multiples present are ±α
    for (int i = 0; i < N; ++i) {
        const IntVec& a = R.roots[size_t(i)];
        IntVec neg = a;
        for (auto& e : neg) e = -e;
        if (R.root_index(neg) < 0)
            return fail("Φ ≠ −Φ: missing −α for α = " + vec_str(a));
        for (int j = 0; j < N; ++j) {
            if (j == i) continue;
            const IntVec& b = R.roots[size_t(j)];
            if (b == neg) continue;
            // b = c a for an integer or half-integer c violates reducedness;
            // detect proportionality over Q
            bool prop = true;
            Int num = 0, den = 0; // b = (num/den) a
            for (int k = 0; k < R.rank && prop; ++k) {
                if (a[size_t(k)] == 0) { if (b[size_t(k)] != 0) prop = false; continue; }
                if (den == 0) { num = b[size_t(k)]; den = a[size_t(k)]; continue; }
                if (b[size_t(k)] * den != num * a[size_t(k)]) prop = false;
            }
            if (prop && den != 0)
                return fail("not reduced: " + vec_str(b) + " is proportional to " + vec_str(a));
        }
    }
    // reflection stability on both sides
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            IntVec sr = sub_scaled(R.roots[size_t(j)],
                                   dot(R.roots[size_t(j)], R.coroots[size_t(i)]),
                                   R.roots[size_t(i)]);
            int k = R.root_index(sr);
            if (k < 0)
                return fail("s_α(β) ∉ Φ for α = " + vec_str(R.roots[size_t(i)]) +
                            ", β = " + vec_str(R.roots[size_t(j)]));
            // the reflection must also match on the coroot side with the
            // SAME index (the bijection is equivariant)
            IntVec sc = sub_scaled(R.coroots[size_t(j)],
                                   dot(R.roots[size_t(i)], R.coroots[size_t(j)]),
                                   R.coroots[size_t(i)]);
            if (R.coroots[size_t(k)] != sc)
                return fail("coroot reflection mismatch at α = " + vec_str(R.roots[size_t(i)]) +
                            ", β = " + vec_str(R.roots[size_t(j)]));
        }
    return {};
}

RootDatum dual(const RootDatum& R) {
    RootDatum D = R;
    std::swap(D.roots, D.coroots);
    return D;
}

RootDatum direct_sum(const RootDatum& R1, const RootDatum& R2) {
    RootDatum S;
    S.rank = R1.rank + R2.rank;
    auto embed = [&](const IntVec& v, bool second) {
        IntVec w(size_t(S.rank), Int(0));
        int off = second ? R1.rank : 0;
        for (size_t i = 0; i < v.size(); ++i) w[size_t(off) + i] = v[i];
        return w;
    };
    for (size_t i = 0; i < R1.roots.size(); ++i) {
        S.roots.push_back(embed(R1.roots[i], false));
        S.coroots.push_back(embed(R1.coroots[i], false));
    }
    for (size_t i = 0; i < R2.roots.size(); ++i) {
        S.roots.push_back(embed(R2.roots[i], true));
        S.coroots.push_back(embed(R2.coroots[i], true));
    }
    return S;
}

RootDatum torus(int n) {
    RootDatum T;
    T.rank = n;
    return T;
}

RootDatum torus_part(const RootDatum& R) {
    RootDatum T = torus(R.rank);
    T.name = R.name;
    return T;
}

bool is_torus(const RootDatum& R) { return R.roots.empty(); }

bool is_semisimple(const RootDatum& R) {
    if (R.rank == 0) return true;
    if (R.roots.empty()) return false;
    return zl::rank(R.root_matrix()) == R.rank;
}

DatumWithMap induced_datum(const RootDatum& R, const IntMatrix& A) {
    IntMatrix B = zl::column_hnf(A);
    RootDatum S;
    S.rank = B.cols();
    for (size_t i = 0; i < R.roots.size(); ++i) {
        auto c = zl::solve(B, R.roots[i]);
        if (!c) throw std::invalid_argument("induced_datum: sublattice misses a root");
        S.roots.push_back(*c);
        // restriction of α̌ ∈ X̌ along A ↪ X is B^T α̌ in the dual basis
        S.coroots.push_back(B.apply_transpose(R.coroots[i]));
    }
    return {S, B};
}

DatumWithMap coinduced_datum(const RootDatum& R, const IntMatrix& B) {
    DatumWithMap d = induced_datum(dual(R), B);
    d.datum = dual(d.datum);
    return d;
}

IntMatrix root_saturation(const RootDatum& R) {
    return zl::saturation(R.root_matrix(), R.rank);
}

IntMatrix coroot_annihilator(const RootDatum& R) {
    return zl::annihilator(R.coroot_matrix(), R.rank);
}

namespace {

// Quotient of X by the (saturated) column lattice of C: projection given by
// the trailing rows of the Smith transform, plus the dual inclusion given by
// the same rows of Uinv^T for carrying dual vectors.
struct SaturatedQuotient {
    IntMatrix projection;     // r x n, X -> X/C
    IntMatrix dual_rows;      // r x n, x̌ -> coordinates in the quotient's dual
};

SaturatedQuotient saturated_quotient(const IntMatrix& C, int n) {
    auto d = zl::smith_normal_form(C);
    int k = d.rank(), r = n - k;
    for (int i = 0; i < k; ++i)
        if (d.S(i, i) != 1)
            throw std::logic_error("saturated_quotient: lattice not saturated");
    SaturatedQuotient q{IntMatrix(r, n), IntMatrix(r, n)};
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < n; ++j) {
            q.projection(i, j) = d.U(k + i, j);
            q.dual_rows(i, j) = d.Uinv(j, k + i); // column k+i of Uinv, transposed
        }
    return q;
}

} // namespace

DatumWithMap derived_datum(const RootDatum& R) {
    auto q = saturated_quotient(coroot_annihilator(R), R.rank);
    RootDatum S;
    S.rank = q.projection.rows();
    for (size_t i = 0; i < R.roots.size(); ++i) {
        S.roots.push_back(q.projection.apply(R.roots[i]));
        S.coroots.push_back(q.dual_rows.apply(R.coroots[i]));
    }
    return {S, q.projection};
}

DatumWithMap radical(const RootDatum& R) {
    auto q = saturated_quotient(root_saturation(R), R.rank);
    return {torus(q.projection.rows()), q.projection};
}

CentreInvariants centre_invariants(const RootDatum& R, const Int& p) {
    auto q = zl::quotient_structure(R.root_matrix(), R.rank);
    CentreInvariants c;
    c.torsion = q.invariant_factors;
    c.free_rank = q.free_rank;
    for (const Int& d : c.torsion) {
        if (p == 0) { c.p_prime_part.push_back(d); continue; }
        Int pp = 1, rest = d;
        while (rest % p == 0) { pp *= p; rest /= p; }
        if (pp > 1) c.p_part.push_back(pp);
        if (rest > 1) c.p_prime_part.push_back(rest);
    }
    return c;
}

} // namespace rdk

#include "rdk/classify.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace rdk {

namespace zl = zlattice;

namespace {

Int dot(const IntVec& a, const IntVec& b) {
    Int s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

} // namespace

// Entrywise reduction of an Aut(A)-style matrix: row i taken mod d_i.
IntMatrix reduce_aut(const IntMatrix& M, const IntVec& d) {
    IntMatrix out = M;
    for (int i = 0; i < out.rows(); ++i)
        for (int j = 0; j < out.cols(); ++j) {
            out(i, j) %= d[size_t(i)];
            if (out(i, j) < 0) out(i, j) += d[size_t(i)];
        }
    return out;
}

// Preimages in Z^n of the adapted generators of A under a surjection h.
IntMatrix generator_preimages(const IntMatrix& h, const zl::FinAbPresentation& A) {
    IntMatrix D = IntMatrix::diagonal(A.invariant_factors);
    IntMatrix out(h.cols(), A.num_generators());
    for (int i = 0; i < A.num_generators(); ++i) {
        IntVec e(size_t(A.num_generators()), Int(0));
        e[size_t(i)] = 1;
        auto sol = zl::solve(h.hstack(D), e);
        if (!sol) throw std::logic_error("generator_preimages: not surjective");
        for (int r = 0; r < h.cols(); ++r) out(r, i) = (*sol)[size_t(r)];
    }
    return out;
}

// The automorphism of A induced by a lattice map g with g(Ker h) ⊆ Ker h:
// ψ∘h = h∘g.
IntMatrix induced_on_quotient(const IntMatrix& g, const IntMatrix& h,
                              const zl::FinAbPresentation& A) {
    IntMatrix pre = generator_preimages(h, A);
    IntMatrix img = h * (g * pre);
    return reduce_aut(img, A.invariant_factors);
}

namespace {

std::string state_key(const IntMatrix& M) { return M.to_string(); }

} // namespace

std::vector<int> find_base(const RootDatum& R) {
    if (R.roots.empty()) return {};
    // separating functional: try v = (1, M, M², ...) for growing M
    IntVec v;
    for (Int M = 1;; ++M) {
        v.assign(size_t(R.rank), Int(0));
        Int pw = 1;
        for (int i = 0; i < R.rank; ++i) { v[size_t(i)] = pw; pw *= M; }
        bool ok = true;
        for (const auto& a : R.roots)
            if (dot(a, v) == 0) { ok = false; break; }
        if (ok) break;
    }
    std::vector<int> pos;
    for (size_t i = 0; i < R.roots.size(); ++i)
        if (dot(R.roots[i], v) > 0) pos.push_back(int(i));
    std::vector<int> base;
    for (int i : pos) {
        bool decomposable = false;
        for (int j : pos) {
            if (decomposable) break;
            for (int k : pos) {
                IntVec sum = R.roots[size_t(j)];
                for (int c = 0; c < R.rank; ++c) sum[size_t(c)] += R.roots[size_t(k)][size_t(c)];
                if (sum == R.roots[size_t(i)]) { decomposable = true; break; }
            }
        }
        if (!decomposable) base.push_back(i);
    }
    return base;
}

std::vector<IntMatrix> semisimple_isomorphisms(const RootDatum& R1, const RootDatum& R2) {
    std::vector<IntMatrix> out;
    if (R1.rank != R2.rank || R1.roots.size() != R2.roots.size()) return out;
    auto b1 = find_base(R1), b2 = find_base(R2);
    if (b1.size() != b2.size()) return out;
    size_t n = b1.size();
    if (int(n) != R1.rank) return out; // not semisimple
    if (n == 0) { out.push_back(IntMatrix::identity(0)); return out; }

    auto pairing = [](const RootDatum& R, int i, int j) {
        return dot(R.roots[size_t(j)], R.coroots[size_t(i)]);
    };
    // backtracking over pairing-preserving bijections b1 -> b2
    std::vector<int> assign(n, -1);
    std::vector<bool> used(n, false);
    std::set<std::string> seen;
    auto try_candidate = [&]() {
        IntMatrix S1(R1.rank, int(n)), S2p(R1.rank, int(n));
        for (size_t k = 0; k < n; ++k) {
            for (int r = 0; r < R1.rank; ++r) {
                S1(r, int(k)) = R1.roots[size_t(b1[k])][size_t(r)];
                S2p(r, int(k)) = R2.roots[size_t(b2[size_t(assign[k])])][size_t(r)];
            }
        }
        // g·S1 = S2p over Z, i.e. S1^T·g^T = S2p^T
        auto gt = zl::solve_matrix(S1.transpose(), S2p.transpose());
        if (!gt) return;
        IntMatrix g = gt->transpose();
        Int d = g.det();
        if (d != 1 && d != -1) return;
        if (!is_datum_isomorphism(g, R1, R2)) return;
        if (seen.insert(state_key(g)).second) out.push_back(g);
    };
    auto rec = [&](auto&& self, size_t k) -> void {
        if (k == n) { try_candidate(); return; }
        for (size_t c = 0; c < n; ++c) {
            if (used[c]) continue;
            bool ok = true;
            for (size_t j = 0; j < k && ok; ++j) {
                if (pairing(R1, b1[k], b1[j]) != pairing(R2, b2[c], b2[size_t(assign[j])])) ok = false;
                if (pairing(R1, b1[j], b1[k]) != pairing(R2, b2[size_t(assign[j])], b2[c])) ok = false;
            }
            if (pairing(R1, b1[k], b1[k]) != pairing(R2, b2[c], b2[c])) ok = false;
            if (!ok) continue;
            assign[k] = int(c);
            used[c] = true;
            self(self, k + 1);
            used[c] = false;
        }
    };
    rec(rec, 0);
    return out;
}

AutGroupGens aut_finite_abelian(const zl::FinAbPresentation& A, unsigned long budget) {
    AutGroupGens out;
    int s = A.num_generators();
    const IntVec& d = A.invariant_factors;
    if (s == 0) {
        out.elements.push_back(IntMatrix::identity(0));
        out.complete = true;
        return out;
    }
    // entry (i,j): a hom Z/d_j → Z/d_i needs d_j·M_ij ≡ 0 mod d_i, i.e.
    // a multiple of d_i/d_j when i < j (descending divisibility)
    std::vector<std::vector<Int>> choices(size_t(s) * s);
    Int candidates = 1;
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) {
            Int step = i < j ? d[size_t(i)] / d[size_t(j)] : Int(1);
            for (Int v = 0; v < d[size_t(i)]; v += step)
                choices[size_t(i) * s + j].push_back(v);
            candidates *= Int(choices[size_t(i) * s + j].size());
        }
    if (candidates > budget) {
        out.complete = false;
        return out;
    }
    // elements of A, for the bijectivity test
    std::vector<IntVec> elems{IntVec(size_t(s), Int(0))};
    for (int i = 0; i < s; ++i) {
        std::vector<IntVec> next;
        for (auto& e : elems)
            for (Int v = 0; v < d[size_t(i)]; ++v) {
                IntVec f = e;
                f[size_t(i)] = v;
                next.push_back(f);
            }
        elems = std::move(next);
    }
    std::vector<size_t> idx(size_t(s) * s, 0);
    while (true) {
        IntMatrix M(s, s);
        for (int i = 0; i < s; ++i)
            for (int j = 0; j < s; ++j)
                M(i, j) = choices[size_t(i) * s + j][idx[size_t(i) * s + j]];
        std::set<std::string> images;
        bool bijective = true;
        for (const auto& e : elems) {
            IntVec im = A.reduce(M.apply(e));
            std::string key;
            for (const Int& x : im) key += x.str() + ",";
            if (!images.insert(key).second) { bijective = false; break; }
        }
        if (bijective) out.elements.push_back(M);
        // advance the odometer
        size_t k = 0;
        while (k < idx.size()) {
            if (++idx[k] < choices[k].size()) break;
            idx[k] = 0;
            ++k;
        }
        if (k == idx.size()) break;
    }
    out.complete = true;
    return out;
}

namespace {

// All states (columns of f·M mod d, M ∈ GL_r(Z)) reachable from f, with a
// witness matrix per state. Explores by elementary column operations, which
// generate GL_r(Z). Returns false when the budget cut the search short.
bool glr_orbit(const IntMatrix& f, const IntVec& d, unsigned long budget,
               std::map<std::string, IntMatrix>& orbit) {
    int r = f.cols();
    IntMatrix start = reduce_aut(f, d);
    orbit.clear();
    orbit[state_key(start)] = IntMatrix::identity(r);
    std::vector<std::pair<IntMatrix, IntMatrix>> queue{{start, IntMatrix::identity(r)}};
    for (size_t head = 0; head < queue.size(); ++head) {
        if (orbit.size() > budget) return false;
        IntMatrix S = queue[head].first, M = queue[head].second;
        auto push = [&](IntMatrix ns, IntMatrix nm) {
            ns = reduce_aut(ns, d);
            auto key = state_key(ns);
            if (orbit.emplace(key, nm).second) queue.push_back({ns, std::move(nm)});
        };
        for (int i = 0; i < r; ++i) {
            // negate column i
            IntMatrix S2 = S, M2 = M;
            for (int x = 0; x < S.rows(); ++x) S2(x, i) = -S2(x, i);
            for (int x = 0; x < r; ++x) M2(x, i) = -M2(x, i);
            push(S2, M2);
            for (int j = 0; j < r; ++j) {
                if (i == j) continue;
                IntMatrix S3 = S, M3 = M;
                for (int x = 0; x < S.rows(); ++x) S3(x, i) += S(x, j);
                for (int x = 0; x < r; ++x) M3(x, i) += M(x, j);
                push(S3, M3);
            }
        }
    }
    return true;
}

} // namespace

TameVerdict tame_torus_verdict(const zl::FinAbPresentation& A, int r,
                               const IntMatrix& f, const IntMatrix& psi,
                               unsigned long budget) {
    const IntVec& d = A.invariant_factors;
    std::map<std::string, IntMatrix> orbit;
    bool full = glr_orbit(f, d, budget, orbit);
    IntMatrix target = reduce_aut(psi * f, d);
    auto it = orbit.find(state_key(target));
    if (it != orbit.end()) {
        const IntMatrix& M = it->second;
        Int det = M.det();
        if (det != 1 && det != -1)
            throw std::logic_error("tame_torus_verdict: witness not unimodular");
        if (reduce_aut(f * M, d) != target)
            throw std::logic_error("tame_torus_verdict: witness fails f∘M = ψ∘f");
        return {TameVerdict::Kind::Tame, M, ""};
    }
    if (!full)
        return {TameVerdict::Kind::Unknown, IntMatrix(),
                "orbit search exceeded budget " + std::to_string(budget)};
    return {TameVerdict::Kind::NotTame, IntMatrix(),
            "ψ∘f is outside the GL_r(Z)-orbit of f (orbit size " +
                std::to_string(orbit.size()) + ")"};
}

TameSubgroup tame_torus(const zl::FinAbPresentation& A, int r, const IntMatrix& f,
                        unsigned long budget) {
    TameSubgroup out;
    out.aut = aut_finite_abelian(A, budget);
    if (!out.aut.complete) return out;
    std::map<std::string, IntMatrix> orbit;
    bool full = glr_orbit(f, A.invariant_factors, budget, orbit);
    for (const auto& psi : out.aut.elements) {
        IntMatrix target = reduce_aut(psi * f, A.invariant_factors);
        auto it = orbit.find(state_key(target));
        if (it != orbit.end())
            out.verdicts.push_back({TameVerdict::Kind::Tame, it->second, ""});
        else if (!full)
            out.verdicts.push_back({TameVerdict::Kind::Unknown, IntMatrix(),
                                    "orbit search exceeded budget"});
        else
            out.verdicts.push_back({TameVerdict::Kind::NotTame, IntMatrix(),
                                    "outside the GL_r(Z)-orbit of f"});
    }
    return out;
}

AutGroupGens tame_semisimple(const RootDatum& R, const IntMatrix& K) {
    if (!is_semisimple(R))
        throw std::invalid_argument("tame_semisimple: datum not semisimple");
    if (!zl::lattice_contains(K, R.root_matrix()))
        throw std::invalid_argument("tame_semisimple: K does not contain the roots");
    auto A = zl::quotient_presentation(zl::column_hnf(K), R.rank);
    AutGroupGens out;
    out.complete = true;
    std::set<std::string> seen;
    for (const auto& g : semisimple_isomorphisms(R, R)) {
        if (!zl::same_lattice(g * K, K)) continue;
        IntMatrix psi = induced_on_quotient(g, A.projection, A);
        if (seen.insert(state_key(psi)).second) out.elements.push_back(psi);
    }
    return out;
}

ClassTriple triple_of(const RootDatum& R) {
    auto der = derived_datum(R);
    ClassTriple t;
    t.semisimple = der.datum;
    t.torus_rank = R.rank - der.datum.rank;
    t.K = zl::column_hnf(der.map * root_saturation(R));
    return t;
}

bool triples_equivalent(const ClassTriple& t1, const ClassTriple& t2) {
    if (t1.torus_rank != t2.torus_rank) return false;
    for (const auto& g : semisimple_isomorphisms(t1.semisimple, t2.semisimple))
        if (zl::same_lattice(g * t1.K, t2.K)) return true;
    return false;
}

IntMatrix standard_surjection(const zl::FinAbPresentation& A, int r) {
    int s = A.num_generators();
    if (r < s)
        throw std::invalid_argument("standard_surjection: torus rank below the number of "
                                    "invariant factors — no surjection exists");
    IntMatrix f(s, r);
    for (int i = 0; i < s; ++i) f(i, i) = 1;
    return f;
}

RootDatum product_for_psi(const ClassTriple& t, const IntMatrix& psi) {
    auto A = zl::quotient_presentation(zl::column_hnf(t.K), t.semisimple.rank);
    CentralProductSpec spec;
    spec.R1 = t.semisimple;
    spec.R2 = torus(t.torus_rank);
    spec.A = A;
    spec.h1 = A.projection;
    spec.h2 = psi * standard_surjection(A, t.torus_rank);
    return central_product(spec).datum;
}

ClassificationResult classify_products(const ClassTriple& t, unsigned long budget) {
    ClassificationResult out;
    out.A = zl::quotient_presentation(zl::column_hnf(t.K), t.semisimple.rank);
    const IntVec& d = out.A.invariant_factors;
    int s = out.A.num_generators();
    if (t.torus_rank < s)
        throw std::invalid_argument("classify_products: invalid triple (torus rank too small "
                                    "for a surjection onto X/K)");
    auto aut = aut_finite_abelian(out.A, budget);
    if (!aut.complete)
        throw std::runtime_error("classify_products: Aut(A) enumeration exceeded budget");
    auto S = tame_semisimple(t.semisimple, t.K);
    IntMatrix f0 = standard_surjection(out.A, t.torus_rank);
    auto T = tame_torus(out.A, t.torus_rank, f0, budget);
    if (!T.aut.complete)
        throw std::runtime_error("classify_products: tame torus enumeration exceeded budget");
    std::vector<IntMatrix> torus_tame;
    for (size_t i = 0; i < T.verdicts.size(); ++i) {
        if (T.verdicts[i].kind == TameVerdict::Kind::Unknown)
            throw std::runtime_error("classify_products: tameness Unknown — " +
                                     T.verdicts[i].detail);
        if (T.verdicts[i].kind == TameVerdict::Kind::Tame)
            torus_tame.push_back(T.aut.elements[i]);
    }

    std::set<std::string> assigned;
    for (const auto& psi : aut.elements) {
        if (assigned.count(state_key(reduce_aut(psi, d)))) continue;
        std::set<std::string> coset;
        for (const auto& zs : S.elements)
            for (const auto& zt : torus_tame) {
                IntMatrix el = reduce_aut(zs * psi * zt, d);
                coset.insert(state_key(el));
            }
        for (const auto& k : coset) assigned.insert(k);
        ClassRepresentative rep;
        rep.psi = reduce_aut(psi, d);
        rep.coset_size = coset.size();
        rep.datum = product_for_psi(t, psi);
        out.classes.push_back(std::move(rep));
    }
    return out;
}

IsoResult isomorphic(const RootDatum& R1, const RootDatum& R2, unsigned long budget) {
    if (R1.rank != R2.rank)
        return {IsoResult::Kind::NotIso, IntMatrix(), "ranks differ"};
    if (R1.roots.size() != R2.roots.size())
        return {IsoResult::Kind::NotIso, IntMatrix(), "root counts differ"};
    {
        auto q1 = zl::quotient_structure(R1.root_matrix(), R1.rank);
        auto q2 = zl::quotient_structure(R2.root_matrix(), R2.rank);
        if (q1.invariant_factors != q2.invariant_factors || q1.free_rank != q2.free_rank)
            return {IsoResult::Kind::NotIso, IntMatrix(),
                    "invariant factors of X/ZΦ differ"};
    }

    auto dec1 = decompose_as_central_product(R1);
    auto dec2 = decompose_as_central_product(R2);
    const auto& A1 = dec1.spec.A;
    const auto& A2 = dec2.spec.A;
    int r = dec1.spec.R2.rank;
    if (r != dec2.spec.R2.rank)
        return {IsoResult::Kind::NotIso, IntMatrix(), "torus ranks differ"};
    if (A1.invariant_factors != A2.invariant_factors)
        return {IsoResult::Kind::NotIso, IntMatrix(), "gluing groups differ"};

    const RootDatum &D1 = dec1.spec.R1, &D2 = dec2.spec.R1;
    IntMatrix K1 = zl::map_kernel_lattice(dec1.spec.h1, A1);
    IntMatrix K2 = zl::map_kernel_lattice(dec2.spec.h1, A2);
    IntMatrix g(0, 0);
    bool found_g = false;
    for (const auto& cand : semisimple_isomorphisms(D1, D2))
        if (zl::same_lattice(cand * K1, K2)) { g = cand; found_g = true; break; }
    if (!found_g && D1.rank > 0)
        return {IsoResult::Kind::NotIso, IntMatrix(),
                "no isomorphism of semisimple parts carries K1 to K2"};
    if (D1.rank == 0) g = IntMatrix::identity(0);

    // transport R1's presentation onto D2 and normalize the gluing group
    int s = A2.num_generators();
    IntMatrix h1p = s > 0 ? dec1.spec.h1 * zl::inverse_unimodular(g)
                          : IntMatrix(0, D2.rank);
    IntMatrix theta(s, s);
    if (s > 0) {
        IntMatrix pre = generator_preimages(h1p, A1);
        theta = reduce_aut(dec2.spec.h1 * pre, A2.invariant_factors);
    }
    IntMatrix F1 = reduce_aut(theta * dec1.spec.h2, A2.invariant_factors);
    const IntMatrix& F2 = dec2.spec.h2;

    std::map<std::string, IntMatrix> orbit;
    bool full = glr_orbit(F2, A2.invariant_factors, budget, orbit);

    for (const auto& gamma : semisimple_isomorphisms(D2, D2)) {
        if (!zl::same_lattice(gamma * K2, K2)) continue;
        IntMatrix zeta = s > 0 ? induced_on_quotient(gamma, dec2.spec.h1, A2)
                               : IntMatrix(0, 0);
        IntMatrix target = reduce_aut(zeta * F1, A2.invariant_factors);
        auto it = orbit.find(state_key(target));
        if (it == orbit.end()) continue;
        const IntMatrix& M = it->second;
        // assemble γ⊕M ∘ g⊕I on X_{D}⊕Z^r and conjugate back
        int n = D2.rank;
        IntMatrix big(n + r, n + r);
        IntMatrix gm = gamma * g;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) big(i, j) = gm(i, j);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) big(n + i, n + j) = M(i, j);
        auto Z = zl::solve_matrix(dec2.product.embed, big * dec1.product.embed);
        if (!Z) throw std::logic_error("isomorphic: transported lattice not inside B2");
        IntMatrix iso = zl::inverse_unimodular(dec2.iso) * (*Z * dec1.iso);
        if (!is_datum_isomorphism(iso, R1, R2))
            throw std::logic_error("isomorphic: assembled map failed verification");
        return {IsoResult::Kind::Iso, iso, ""};
    }
    if (!full)
        return {IsoResult::Kind::Unknown, IntMatrix(),
                "torus orbit search exceeded budget " + std::to_string(budget)};
    return {IsoResult::Kind::NotIso, IntMatrix(),
            "gluing maps lie in different double cosets"};
}

} // namespace rdk

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "rdk/catalog.hpp"
#include "rdk/classify.hpp"

using namespace rdk;
namespace zl = rdk::zlattice;
namespace cat = rdk::catalog;

TEST_CASE("find_base recovers rank-many simple roots") {
    for (const auto& label : {"A2", "A3", "B3", "C2", "D4", "G2", "F4"}) {
        CAPTURE(label);
        RootDatum R = cat::lookup(label, "sc");
        auto base = find_base(R);
        CHECK(int(base.size()) == R.rank);
        // base spans the root lattice
        std::vector<IntVec> cols;
        for (int i : base) cols.push_back(R.roots[size_t(i)]);
        auto B = IntMatrix::from_columns(cols, R.rank);
        CHECK(zl::same_lattice(B, R.root_matrix()));
    }
}

TEST_CASE("semisimple isomorphisms") {
    SUBCASE("self-isomorphisms contain the identity") {
        for (const auto& label : {"A2", "C2", "D4"}) {
            RootDatum R = cat::lookup(label, "sc");
            auto autos = semisimple_isomorphisms(R, R);
            bool has_id = false;
            for (const auto& g : autos)
                if (g.is_identity()) has_id = true;
            CHECK(has_id);
        }
    }
    SUBCASE("B2 and C2 are isomorphic, B3 and C3 are not") {
        auto i1 = semisimple_isomorphisms(cat::lookup("B2", "sc"), cat::lookup("C2", "sc"));
        CHECK_FALSE(i1.empty());
        auto i2 = semisimple_isomorphisms(cat::lookup("B3", "sc"), cat::lookup("C3", "sc"));
        CHECK(i2.empty());
    }
    SUBCASE("automorphism counts modulo Weyl") {
        // A2: diagram flip → 2; D4: triality S3 → 6
        CHECK(semisimple_isomorphisms(cat::lookup("A2", "sc"),
                                      cat::lookup("A2", "sc")).size() == 2);
        CHECK(semisimple_isomorphisms(cat::lookup("D4", "sc"),
                                      cat::lookup("D4", "sc")).size() == 6);
    }
}

TEST_CASE("isomorphic: basic verdicts") {
    SUBCASE("reflexive") {
        for (const auto& label : {"A1", "C2", "G2"}) {
            RootDatum R = cat::lookup(label, "sc");
            auto res = isomorphic(R, R);
            REQUIRE(res.kind == IsoResult::Kind::Iso);
            CHECK(is_datum_isomorphism(res.iso, R, R));
        }
        auto g = isomorphic(cat::gl(3), cat::gl(3));
        CHECK(g.kind == IsoResult::Kind::Iso);
    }
    SUBCASE("sc vs ad rejected on invariants") {
        auto res = isomorphic(cat::lookup("A1", "sc"), cat::lookup("A1", "ad"));
        CHECK(res.kind == IsoResult::Kind::NotIso);
        CHECK(res.detail.find("invariant factors") != std::string::npos);
    }
    SUBCASE("dual of A1-sc is A1-ad") {
        auto res = isomorphic(dual(cat::lookup("A1", "sc")), cat::lookup("A1", "ad"));
        CHECK(res.kind == IsoResult::Kind::Iso);
    }
    SUBCASE("GLn is self-dual") {
        for (int n = 2; n <= 4; ++n) {
            auto res = isomorphic(dual(cat::gl(n)), cat::gl(n));
            REQUIRE(res.kind == IsoResult::Kind::Iso);
            CHECK(is_datum_isomorphism(res.iso, dual(cat::gl(n)), cat::gl(n)));
        }
    }
    SUBCASE("tori classified by rank") {
        CHECK(isomorphic(torus(3), torus(3)).kind == IsoResult::Kind::Iso);
        CHECK(isomorphic(torus(2), torus(3)).kind == IsoResult::Kind::NotIso);
    }
    SUBCASE("B3 vs C3") {
        auto res = isomorphic(cat::lookup("B3", "sc"), cat::lookup("C3", "sc"));
        CHECK(res.kind == IsoResult::Kind::NotIso);
    }
}

TEST_CASE("isomorphic: mixed data through central products") {
    SUBCASE("A1-sc glued to a torus over Z/2 is GL2") {
        CentralProductSpec s;
        s.R1 = cat::lookup("A1", "sc");
        s.R2 = torus(1);
        s.A = zl::FinAbPresentation::cyclic(2);
        s.h1 = IntMatrix::from_rows({{1}});
        s.h2 = IntMatrix::from_rows({{1}});
        auto prod = central_product(s);
        auto res = isomorphic(prod.datum, cat::gl(2));
        REQUIRE(res.kind == IsoResult::Kind::Iso);
        CHECK(is_datum_isomorphism(res.iso, prod.datum, cat::gl(2)));
    }
    SUBCASE("different coordinates of the same product are isomorphic") {
        RootDatum R = cat::csp4();
        // conjugate by a random-looking unimodular matrix
        auto U = IntMatrix::from_rows({{1, 2, 0}, {0, 1, 3}, {0, 0, 1}});
        RootDatum R2;
        R2.rank = 3;
        auto Uinv_t = zl::inverse_unimodular(U).transpose();
        for (size_t i = 0; i < R.roots.size(); ++i) {
            R2.roots.push_back(U.apply(R.roots[i]));
            R2.coroots.push_back(Uinv_t.apply(R.coroots[i]));
        }
        REQUIRE(validate(R2).ok);
        auto res = isomorphic(R, R2);
        REQUIRE(res.kind == IsoResult::Kind::Iso);
        CHECK(is_datum_isomorphism(res.iso, R, R2));
    }
    SUBCASE("GL2 vs SL2 x torus") {
        RootDatum other = direct_sum(cat::lookup("A1", "sc"), torus(1));
        auto res = isomorphic(cat::gl(2), other);
        CHECK(res.kind == IsoResult::Kind::NotIso);
    }
}

TEST_CASE("triple invariant") {
    SUBCASE("GLn") {
        for (int n = 2; n <= 4; ++n) {
            auto t = triple_of(cat::gl(n));
            CHECK(t.semisimple.rank == n - 1);
            CHECK(t.torus_rank == 1);
            auto A = zl::quotient_presentation(t.K, n - 1);
            CHECK(A.invariant_factors == IntVec{n});
        }
    }
    SUBCASE("semisimple: K is everything") {
        auto t = triple_of(cat::lookup("C2", "sc"));
        CHECK(t.torus_rank == 0);
        CHECK(zl::lattice_index(t.K, 2) == 1);
    }
    SUBCASE("torus") {
        auto t = triple_of(torus(2));
        CHECK(t.semisimple.rank == 0);
        CHECK(t.torus_rank == 2);
    }
    SUBCASE("isomorphic data have equivalent triples") {
        RootDatum a = cat::gl(2);
        RootDatum b;
        {
            CentralProductSpec s;
            s.R1 = cat::lookup("A1", "sc");
            s.R2 = torus(1);
            s.A = zl::FinAbPresentation::cyclic(2);
            s.h1 = IntMatrix::from_rows({{1}});
            s.h2 = IntMatrix::from_rows({{1}});
            b = central_product(s).datum;
        }
        CHECK(triples_equivalent(triple_of(a), triple_of(b)));
        CHECK_FALSE(triples_equivalent(triple_of(a), triple_of(direct_sum(cat::lookup("A1", "sc"), torus(1)))));
    }
}

TEST_CASE("automorphisms of finite abelian groups") {
    CHECK(aut_finite_abelian(zl::FinAbPresentation::cyclic(2)).elements.size() == 1);
    CHECK(aut_finite_abelian(zl::FinAbPresentation::cyclic(5)).elements.size() == 4);
    CHECK(aut_finite_abelian(zl::FinAbPresentation::cyclic(15)).elements.size() == 8);
    CHECK(aut_finite_abelian(zl::FinAbPresentation::of_factors(IntVec{4, 2}))
              .elements.size() == 8);
    CHECK(aut_finite_abelian(zl::FinAbPresentation::of_factors(IntVec{2, 2}))
              .elements.size() == 6);
    CHECK(aut_finite_abelian(zl::FinAbPresentation::trivial(0)).elements.size() == 1);
    SUBCASE("budget failure is explicit") {
        auto res = aut_finite_abelian(zl::FinAbPresentation::of_factors(IntVec{12, 12}), 10);
        CHECK_FALSE(res.complete);
        CHECK(res.elements.empty());
    }
}

TEST_CASE("tame torus subgroup") {
    SUBCASE("Z/n at rank 1: only inversion and identity") {
        for (long n : {5, 7, 15}) {
            auto A = zl::FinAbPresentation::cyclic(n);
            auto f = standard_surjection(A, 1);
            auto sub = tame_torus(A, 1, f);
            REQUIRE(sub.aut.complete);
            for (size_t i = 0; i < sub.aut.elements.size(); ++i) {
                Int k = sub.aut.elements[i](0, 0);
                bool expect = (k == 1 || k == n - 1);
                CHECK((sub.verdicts[i].kind == TameVerdict::Kind::Tame) == expect);
            }
        }
    }
    SUBCASE("psi_4 on Z/15 at rank 1 is not tame") {
        auto A = zl::FinAbPresentation::cyclic(15);
        IntMatrix psi4 = IntMatrix::from_rows({{4}});
        auto v = tame_torus_verdict(A, 1, standard_surjection(A, 1), psi4);
        CHECK(v.kind == TameVerdict::Kind::NotTame);
    }
    SUBCASE("Z/n at rank 2: everything tame via Bezout lifts") {
        for (long n : {5, 12}) {
            auto A = zl::FinAbPresentation::cyclic(n);
            auto f = standard_surjection(A, 2);
            auto sub = tame_torus(A, 2, f);
            for (size_t i = 0; i < sub.verdicts.size(); ++i) {
                REQUIRE(sub.verdicts[i].kind == TameVerdict::Kind::Tame);
                // the lift is unimodular and satisfies f∘M = ψ∘f mod n
                const auto& M = sub.verdicts[i].lift;
                Int d = M.det();
                CHECK((d == 1 || d == -1));
                IntMatrix lhs = f * M, rhs = sub.aut.elements[i] * f;
                for (int j = 0; j < 2; ++j)
                    CHECK((lhs(0, j) - rhs(0, j)) % n == 0);
            }
        }
    }
    SUBCASE("rank one above the invariant count: full group") {
        for (auto factors : {IntVec{4, 2}, IntVec{6, 2}}) {
            auto A = zl::FinAbPresentation::of_factors(factors);
            auto f = standard_surjection(A, 3);
            auto sub = tame_torus(A, 3, f);
            for (const auto& v : sub.verdicts) {
                REQUIRE(v.kind == TameVerdict::Kind::Tame);
                Int d = v.lift.det();
                CHECK((d == 1 || d == -1));
            }
        }
    }
    SUBCASE("square case with small last divisor: full group") {
        auto A = zl::FinAbPresentation::of_factors(IntVec{4, 2});
        auto sub = tame_torus(A, 2, standard_surjection(A, 2));
        for (const auto& v : sub.verdicts)
            CHECK(v.kind == TameVerdict::Kind::Tame);
    }
    SUBCASE("budget produces Unknown, never a guess") {
        auto A = zl::FinAbPresentation::cyclic(15);
        IntMatrix psi2 = IntMatrix::from_rows({{2}});
        auto v = tame_torus_verdict(A, 1, standard_surjection(A, 1), psi2, 1);
        CHECK(v.kind == TameVerdict::Kind::Unknown);
    }
}

TEST_CASE("tame semisimple subgroup") {
    SUBCASE("A4-sc over its root lattice: the diagram flip inverts Z/5") {
        RootDatum R = cat::lookup("A4", "sc");
        auto g = tame_semisimple(R, R.root_matrix());
        REQUIRE(g.elements.size() == 2);
        std::set<Int> vals;
        for (const auto& e : g.elements) vals.insert(e(0, 0));
        CHECK(vals == std::set<Int>{1, 4});
    }
    SUBCASE("trivial fundamental group") {
        RootDatum R = cat::lookup("G2", "sc");
        auto g = tame_semisimple(R, R.root_matrix());
        CHECK(g.elements.size() == 1); // only the empty matrix
    }
    SUBCASE("D4 triality surjects onto Aut(Z/2 + Z/2)") {
        RootDatum R = cat::lookup("D4", "sc");
        auto g = tame_semisimple(R, R.root_matrix());
        CHECK(g.elements.size() == 6);
    }
}

TEST_CASE("classification by double cosets") {
    SUBCASE("(A1-sc, 1, root lattice): one class, isomorphic to GL2") {
        RootDatum R = cat::lookup("A1", "sc");
        ClassTriple t{R, 1, zl::column_hnf(R.root_matrix())};
        auto res = classify_products(t);
        REQUIRE(res.classes.size() == 1);
        auto iso = isomorphic(res.classes[0].datum, cat::gl(2));
        CHECK(iso.kind == IsoResult::Kind::Iso);
    }
    SUBCASE("(A4-sc, 1, root lattice): exactly two classes") {
        RootDatum R = cat::lookup("A4", "sc");
        ClassTriple t{R, 1, zl::column_hnf(R.root_matrix())};
        auto res = classify_products(t);
        REQUIRE(res.classes.size() == 2);
        CHECK(res.classes[0].coset_size + res.classes[1].coset_size == 4);
        // brute-force oracle: the four products ψ1..ψ4 fall into the same partition
        std::vector<RootDatum> all;
        for (long k = 1; k <= 4; ++k)
            all.push_back(product_for_psi(t, IntMatrix::from_rows({{k}})));
        // ψ1 ≅ ψ4 and ψ2 ≅ ψ3, but ψ1 ≇ ψ2
        CHECK(isomorphic(all[0], all[3]).kind == IsoResult::Kind::Iso);
        CHECK(isomorphic(all[1], all[2]).kind == IsoResult::Kind::Iso);
        CHECK(isomorphic(all[0], all[1]).kind == IsoResult::Kind::NotIso);
        CHECK(isomorphic(all[0], all[2]).kind == IsoResult::Kind::NotIso);
        // each representative is isomorphic to exactly one oracle group
        int hits = 0;
        for (const auto& c : res.classes)
            if (isomorphic(c.datum, all[0]).kind == IsoResult::Kind::Iso) ++hits;
        CHECK(hits == 1);
    }
    SUBCASE("(A1-sc, 2, root lattice): one class") {
        RootDatum R = cat::lookup("A1", "sc");
        ClassTriple t{R, 2, zl::column_hnf(R.root_matrix())};
        CHECK(classify_products(t).classes.size() == 1);
    }
    SUBCASE("invalid triple rejected") {
        RootDatum R = cat::lookup("D4", "sc"); // needs two generators
        ClassTriple t{R, 1, zl::column_hnf(R.root_matrix())};
        CHECK_THROWS(classify_products(t));
    }
}

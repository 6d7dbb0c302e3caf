#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rdk/catalog.hpp"
#include "rdk/root_datum.hpp"

using namespace rdk;
namespace zl = rdk::zlattice;
namespace cat = rdk::catalog;

namespace {

const std::vector<std::string> kSimpleLabels = {
    "A1", "A2", "A3", "A4", "A5", "B2", "B3", "B4", "C2",
    "C3", "C4", "D4", "D5", "E6", "F4", "G2"};

size_t expected_root_count(const std::string& label) {
    char s = label[0];
    int n = label[1] - '0';
    switch (s) {
        case 'A': return size_t(n) * (n + 1);
        case 'B':
        case 'C': return 2 * size_t(n) * n;
        case 'D': return 2 * size_t(n) * (n - 1);
        case 'E': return n == 6 ? 72 : n == 7 ? 126 : 240;
        case 'F': return 48;
        case 'G': return 12;
    }
    return 0;
}

Int fundamental_group_order(const std::string& label) {
    char s = label[0];
    int n = label[1] - '0';
    switch (s) {
        case 'A': return n + 1;
        case 'B':
        case 'C': return 2;
        case 'D': return 4;
        case 'E': return n == 6 ? 3 : n == 7 ? 2 : 1;
        default: return 1; // F4, G2
    }
}

} // namespace

TEST_CASE("validate: basic accept and reject") {
    CHECK(validate(torus(2)).ok);
    CHECK(validate(torus(0)).ok);

    RootDatum a1; // X = Zω, α = 2ω, α̌ = ě
    a1.rank = 1;
    a1.roots = {IntVec{2}, IntVec{-2}};
    a1.coroots = {IntVec{1}, IntVec{-1}};
    CHECK(validate(a1).ok);

    RootDatum bad = a1;
    bad.coroots = {IntVec{2}, IntVec{-2}}; // <α,α̌> = 4
    auto rep = validate(bad);
    CHECK_FALSE(rep.ok);
    CHECK(rep.message.find("≠ 2") != std::string::npos);

    RootDatum asym = a1;
    asym.roots = {IntVec{2}, IntVec{4}}; // 4ω is a bad multiple, also Φ ≠ −Φ
    CHECK_FALSE(validate(asym).ok);
}

TEST_CASE("catalog entries validate, with expected root counts") {
    for (const auto& label : kSimpleLabels) {
        RootDatum sc = cat::lookup(label, "sc");
        CAPTURE(label);
        CHECK(sc.roots.size() == expected_root_count(label));
        CHECK(validate(sc).ok);
        CHECK(is_semisimple(sc));
        RootDatum ad = cat::lookup(label, "ad");
        CHECK(ad.roots.size() == sc.roots.size());
        CHECK(validate(ad).ok);
    }
}

TEST_CASE("fundamental group orders match Cartan determinants") {
    for (const auto& label : kSimpleLabels) {
        CAPTURE(label);
        RootDatum sc = cat::lookup(label, "sc");
        auto C = cat::cartan_matrix(cat::parse_type_label(label));
        Int det = C.det();
        CHECK(det == fundamental_group_order(label));
        auto q = zl::quotient_structure(sc.root_matrix(), sc.rank);
        CHECK(q.free_rank == 0);
        CHECK(q.torsion_order() == det);
    }
    // D4 fundamental group is Z/2 + Z/2, not Z/4
    auto q4 = zl::quotient_structure(cat::lookup("D4", "sc").root_matrix(), 4);
    CHECK(q4.invariant_factors == IntVec{2, 2});
    auto q5 = zl::quotient_structure(cat::lookup("D5", "sc").root_matrix(), 5);
    CHECK(q5.invariant_factors == IntVec{4});
}

TEST_CASE("C2 simply connected in weight coordinates") {
    RootDatum R = cat::lookup("C2", "sc");
    // α1 = 2ω1 − ω2, α2 = −2ω1 + 2ω2; equivalently 2ω1 = 2α1 + α2, ω2 = α1 + α2
    CHECK(R.root_index(IntVec{2, -1}) >= 0);
    CHECK(R.root_index(IntVec{-2, 2}) >= 0);
    int i1 = R.root_index(IntVec{2, -1});
    int i2 = R.root_index(IntVec{-2, 2});
    CHECK(R.coroots[size_t(i1)] == IntVec{1, 0});
    CHECK(R.coroots[size_t(i2)] == IntVec{0, 1});
    IntVec two_w1{2, 0}, w2{0, 1};
    IntVec comb1(2), comb2(2);
    for (int k = 0; k < 2; ++k) {
        comb1[size_t(k)] = 2 * R.roots[size_t(i1)][size_t(k)] + R.roots[size_t(i2)][size_t(k)];
        comb2[size_t(k)] = R.roots[size_t(i1)][size_t(k)] + R.roots[size_t(i2)][size_t(k)];
    }
    CHECK(comb1 == two_w1);
    CHECK(comb2 == w2);
}

TEST_CASE("dual is an involution; A1 sc/ad are dual") {
    for (const auto& label : {"A1", "A3", "C2", "G2", "D4"}) {
        RootDatum R = cat::lookup(label, "sc");
        CHECK(dual(dual(R)) == R);
    }
    CHECK(dual(cat::lookup("A1", "sc")) == cat::lookup("A1", "ad"));
    // GL_n is self-dual on the nose (roots = coroots)
    CHECK(dual(cat::gl(3)) == cat::gl(3));
    // B_n and C_n Cartan data are dual: coroots of B2-sc form the C2 root
    // system written in the coroot lattice basis
    RootDatum b2 = cat::lookup("B2", "sc");
    CHECK(validate(dual(b2)).ok);
}

TEST_CASE("direct sum") {
    RootDatum a1 = cat::lookup("A1", "sc");
    RootDatum s = direct_sum(a1, a1);
    CHECK(s.rank == 2);
    CHECK(s.roots.size() == 4);
    CHECK(validate(s).ok);
    auto q = zl::quotient_structure(s.root_matrix(), 2);
    CHECK(q.invariant_factors == IntVec{2, 2});

    CHECK(direct_sum(a1, torus(0)) == a1);
    CHECK(direct_sum(torus(2), torus(3)) == torus(5));
    // product labels give the same datum up to root ordering
    RootDatum prod = cat::lookup("A1xA1", "sc");
    CHECK(prod.rank == s.rank);
    REQUIRE(prod.roots.size() == s.roots.size());
    for (size_t i = 0; i < s.roots.size(); ++i) {
        int j = prod.root_index(s.roots[i]);
        REQUIRE(j >= 0);
        CHECK(prod.coroots[size_t(j)] == s.coroots[i]);
    }
}

TEST_CASE("torus part and predicates") {
    CHECK(torus_part(cat::lookup("A1", "sc")).rank == 1);
    CHECK(is_torus(torus(3)));
    CHECK_FALSE(is_torus(cat::gl(2)));
    CHECK(is_semisimple(cat::lookup("F4", "sc")));
    CHECK_FALSE(is_semisimple(cat::gl(3)));
    CHECK_FALSE(is_semisimple(torus(1)));
    CHECK(is_semisimple(torus(0)));
}

TEST_CASE("induced datum") {
    RootDatum g = cat::gl(2);
    SUBCASE("A = X is the identity") {
        auto d = induced_datum(g, IntMatrix::identity(2));
        CHECK(d.datum == g);
    }
    SUBCASE("index-2 sublattice of GL2") {
        auto A = IntMatrix::from_rows({{1, 1}, {-1, 1}});
        auto d = induced_datum(g, A);
        CHECK(validate(d.datum).ok);
        CHECK(d.datum.rank == 2);
        CHECK(zl::lattice_index(d.map, 2) == 2);
        // inclusion carries the new roots back to the old ones
        for (size_t i = 0; i < g.roots.size(); ++i)
            CHECK(d.map.apply(d.datum.roots[i]) == g.roots[i]);
    }
    SUBCASE("missing root rejected") {
        auto A = IntMatrix::from_rows({{2, 0}, {0, 2}});
        CHECK_THROWS(induced_datum(g, A));
    }
    SUBCASE("coroots pair correctly after induction") {
        RootDatum sc = cat::lookup("A2", "sc");
        auto d = induced_datum(sc, sc.root_matrix()); // adjoint
        auto rep = validate(d.datum);
        CHECK(rep.ok);
    }
}

TEST_CASE("coinduced datum") {
    RootDatum a1sc = cat::lookup("A1", "sc");
    // B = X̌ gives R back
    CHECK(coinduced_datum(a1sc, IntMatrix::identity(1)).datum == a1sc);
    // coinduced over the coroot saturation = derived datum (semisimple: identity)
    RootDatum g = cat::gl(2);
    auto B = zl::saturation(g.coroot_matrix(), 2);
    auto co = coinduced_datum(g, B);
    auto der = derived_datum(g);
    CHECK(validate(co.datum).ok);
    CHECK(co.datum.rank == der.datum.rank);
    CHECK(is_semisimple(co.datum));
}

TEST_CASE("derived datum and radical") {
    for (const auto& label : {"A2", "C2", "G2"}) {
        RootDatum R = cat::lookup(label, "sc");
        auto d = derived_datum(R);
        CHECK(d.datum == R); // already semisimple, projection is a bijection
        CHECK(radical(R).datum == torus(0));
    }
    for (int n = 2; n <= 4; ++n) {
        RootDatum g = cat::gl(n);
        auto d = derived_datum(g);
        CHECK(validate(d.datum).ok);
        CHECK(is_semisimple(d.datum));
        CHECK(d.datum.rank == n - 1);
        CHECK(d.datum.roots.size() == g.roots.size());
        // derived of GL_n has fundamental group Z/n (it is SL_n)
        auto q = zl::quotient_structure(d.datum.root_matrix(), n - 1);
        CHECK(q.torsion_order() == n);
        // projection really maps the roots onto the derived roots
        for (size_t i = 0; i < g.roots.size(); ++i)
            CHECK(d.map.apply(g.roots[i]) == d.datum.roots[i]);
        auto r = radical(g);
        CHECK(r.datum == torus(1));
        CHECK(d.datum.rank + r.datum.rank == g.rank);
    }
    // torus: derived empty, radical everything
    CHECK(derived_datum(torus(3)).datum == torus(0));
    CHECK(radical(torus(3)).datum == torus(3));
}

TEST_CASE("centre invariants") {
    // C2-sc at p = 2: Tor = Z/2, all of it p-primary
    auto c = centre_invariants(cat::lookup("C2", "sc"), 2);
    CHECK(c.torsion == IntVec{2});
    CHECK(c.p_part == IntVec{2});
    CHECK(c.p_prime_part.empty());
    CHECK(c.free_rank == 0);
    CHECK(c.connected_centre());
    CHECK_FALSE(c.connected_smooth_centre());

    // SL_3 at p = 3: connected but not smooth
    auto sl3 = centre_invariants(cat::lookup("A2", "sc"), 3);
    CHECK(sl3.torsion == IntVec{3});
    CHECK(sl3.connected_centre());
    CHECK_FALSE(sl3.connected_smooth_centre());
    // same datum away from 3: centre not connected
    auto sl3b = centre_invariants(cat::lookup("A2", "sc"), 2);
    CHECK_FALSE(sl3b.connected_centre());

    // GL_n: smooth
    auto g = centre_invariants(cat::gl(4), 2);
    CHECK(g.torsion.empty());
    CHECK(g.free_rank == 1);
    CHECK(g.connected_smooth_centre());

    // mixed factor: A3-sc at p = 2 has Tor = Z/4 entirely 2-primary
    auto a3 = centre_invariants(cat::lookup("A3", "sc"), 2);
    CHECK(a3.p_part == IntVec{4});
    // A5-sc at p = 2: Z/6 splits as 2-part (2) and 2'-part (3)
    auto a5 = centre_invariants(cat::lookup("A5", "sc"), 2);
    CHECK(a5.torsion == IntVec{6});
    CHECK(a5.p_part == IntVec{2});
    CHECK(a5.p_prime_part == IntVec{3});
}

TEST_CASE("CSp4 preset") {
    RootDatum R = cat::csp4();
    CHECK(validate(R).ok);
    CHECK(R.rank == 3);
    CHECK(R.roots.size() == 8);
    CHECK_FALSE(is_semisimple(R));
    auto c = centre_invariants(R, 2);
    CHECK(c.free_rank == 1);
    CHECK(c.torsion.empty()); // connected smooth centre, like GL_n
    auto d = derived_datum(R);
    CHECK(d.datum.rank == 2);
    CHECK(d.datum.roots.size() == 8);
    CHECK(validate(d.datum).ok);
}

TEST_CASE("intermediate lattices") {
    // A1: ZΦ and Ω only
    CHECK(cat::intermediate_lattices(cat::lookup("A1", "sc")).size() == 2);
    // A3: cyclic Z/4 has 3 subgroups
    CHECK(cat::intermediate_lattices(cat::lookup("A3", "sc")).size() == 3);
    // D4: Z/2 + Z/2 has 5 subgroups
    auto d4 = cat::intermediate_lattices(cat::lookup("D4", "sc"));
    CHECK(d4.size() == 5);
    // every reported lattice sits between ZΦ and X and yields a valid datum
    RootDatum sc = cat::lookup("D4", "sc");
    for (const auto& L : d4) {
        CHECK(zl::lattice_contains(L, sc.root_matrix()));
        CHECK(validate(induced_datum(sc, L).datum).ok);
    }
    // A5: Z/6 has 4 subgroups
    CHECK(cat::intermediate_lattices(cat::lookup("A5", "sc")).size() == 4);
}

TEST_CASE("explicit lattice selector") {
    // index-2 subgroup of the Z/4 fundamental group of A3:
    // generated by 2ω-ish class = twice a generator of Ω/ZΦ
    RootDatum sc = cat::lookup("A3", "sc");
    auto all = cat::intermediate_lattices(sc);
    // find the middle lattice (index 2 in X)
    int mid = 0;
    for (size_t i = 0; i < all.size(); ++i)
        if (zl::lattice_index(all[i], 3) == 2) mid = int(i);
    RootDatum half = cat::with_lattice(cat::parse_type_label("A3"),
                                       {all[size_t(mid)].column(0),
                                        all[size_t(mid)].column(1),
                                        all[size_t(mid)].column(2)});
    CHECK(validate(half).ok);
    auto q = zl::quotient_structure(half.root_matrix(), 3);
    CHECK(q.torsion_order() == 2);
}

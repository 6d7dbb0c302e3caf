#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rdk/catalog.hpp"
#include "rdk/morphism.hpp"

using namespace rdk;
namespace zl = rdk::zlattice;
namespace cat = rdk::catalog;

namespace {

// F*(ω1) = 2^r ω2, F*(ω2) = 2^{r+1} ω1 on C2-sc in weight coordinates.
IntMatrix suzuki_fstar(unsigned r) {
    Int two_r = Int(1) << r;
    IntMatrix F(2, 2);
    F(0, 1) = 2 * two_r;
    F(1, 0) = two_r;
    return F;
}

} // namespace

TEST_CASE("identity morphism validates") {
    for (const auto& label : {"A2", "C2", "G2"}) {
        RootDatum R = cat::lookup(label, "sc");
        auto id = identity_morphism(R);
        CHECK(validate_p_morphism(id, R, R).ok);
        CHECK(is_p_isogeny(id));
    }
}

TEST_CASE("scalar map p·I") {
    RootDatum R = cat::lookup("A1", "sc");
    auto m = infer_p_morphism(IntMatrix::from_rows({{3}}), 3, R, R);
    REQUIRE(m.has_value());
    CHECK(m->q == std::vector<Int>{3, 3});
    CHECK(m->tau == std::vector<int>{0, 1});
    CHECK(validate_p_morphism(*m, R, R).ok);
}

TEST_CASE("validation rejects broken data") {
    RootDatum R = cat::lookup("A1", "sc");
    auto id = identity_morphism(R);
    SUBCASE("wrong q with p = 0") {
        auto m = id;
        m.q[0] = 2;
        CHECK_FALSE(validate_p_morphism(m, R, R).ok);
    }
    SUBCASE("non p-power q") {
        auto m = id;
        m.p = 2;
        m.q = {6, 6};
        m.f = IntMatrix::from_rows({{6}});
        CHECK_FALSE(validate_p_morphism(m, R, R).ok);
    }
    SUBCASE("tau not injective") {
        RootDatum S = cat::lookup("A2", "sc");
        auto m = identity_morphism(S);
        m.tau[1] = m.tau[0];
        CHECK_FALSE(validate_p_morphism(m, S, S).ok);
    }
    SUBCASE("equation failure") {
        auto m = id;
        m.f = IntMatrix::from_rows({{2}}); // f(α) = 2α but q = 1
        CHECK_FALSE(validate_p_morphism(m, R, R).ok);
    }
}

TEST_CASE("Suzuki F* is a 2-morphism and 2-isogeny") {
    RootDatum R = cat::lookup("C2", "sc");
    for (unsigned r = 1; r <= 3; ++r) {
        CAPTURE(r);
        auto m = infer_p_morphism(suzuki_fstar(r), 2, R, R);
        REQUIRE(m.has_value());
        CHECK(validate_p_morphism(*m, R, R).ok);
        CHECK(is_p_isogeny(*m));
        // q takes the two values 2^r and 2^{r+1}, swapping long and short
        Int lo = Int(1) << r, hi = lo * 2;
        int c_lo = 0, c_hi = 0;
        for (const Int& v : m->q) {
            if (v == lo) ++c_lo;
            else if (v == hi) ++c_hi;
            else FAIL("unexpected q value ", v.str());
        }
        CHECK(c_lo == 4);
        CHECK(c_hi == 4);
        // τ is a genuine swap: no root maps to itself
        for (size_t i = 0; i < m->tau.size(); ++i) CHECK(m->tau[i] != int(i));
        // index of f(ZΦ) in ZΦ equals |det f| = 2^{2r+1}
        IntMatrix Phi = R.root_matrix();
        Int det = m->f.det();
        if (det < 0) det = -det;
        CHECK(det == Int(1) << (2 * r + 1));
    }
}

TEST_CASE("composition and duality") {
    RootDatum R = cat::lookup("C2", "sc");
    auto m = *infer_p_morphism(suzuki_fstar(1), 2, R, R);
    auto id = identity_morphism(R);
    SUBCASE("identity is neutral") {
        auto c = compose(m, id);
        CHECK(c.f == m.f);
        CHECK(c.q == m.q);
        CHECK(c.tau == m.tau);
    }
    SUBCASE("m∘m doubles the exponents") {
        auto c = compose(m, m);
        CHECK(c.f == m.f * m.f);
        CHECK(validate_p_morphism(c, R, R).ok);
        for (const Int& v : c.q) CHECK(v == 8); // 2^1 · 2^2 both ways
        for (size_t i = 0; i < c.tau.size(); ++i) CHECK(c.tau[i] == int(i));
    }
    SUBCASE("dualize is an involution preserving validity") {
        auto d = dualize(m, R, R);
        CHECK(validate_p_morphism(d, dual(R), dual(R)).ok);
        CHECK(is_p_isogeny(d));
        auto dd = dualize(d, dual(R), dual(R));
        CHECK(dd.f == m.f);
        CHECK(dd.q == m.q);
        CHECK(dd.tau == m.tau);
    }
    SUBCASE("dualize identity is identity") {
        auto d = dualize(id, R, R);
        CHECK(d.f == id.f);
        CHECK(d.q == id.q);
        CHECK(d.tau == id.tau);
    }
}

TEST_CASE("steinberg decision") {
    SUBCASE("p·I has witness (1,1)") {
        auto res = is_p_steinberg(IntMatrix::from_rows({{3, 0}, {0, 3}}), 3);
        REQUIRE(res.kind == SteinbergResult::Kind::Witness);
        CHECK(res.witness.n == 1);
        CHECK(res.witness.m == 1);
    }
    SUBCASE("Suzuki F* has witness (2, 2r+1)") {
        for (unsigned r = 1; r <= 3; ++r) {
            auto res = is_p_steinberg(suzuki_fstar(r), 2);
            REQUIRE(res.kind == SteinbergResult::Kind::Witness);
            CHECK(res.witness.n == 2);
            CHECK(res.witness.m == 2 * r + 1);
            // re-verify the witness by exact exponentiation
            IntMatrix pw = suzuki_fstar(r).pow(res.witness.n);
            Int pm = 1;
            for (unsigned long i = 0; i < res.witness.m; ++i) pm *= 2;
            CHECK(pw == IntMatrix::identity(2) * pm);
        }
    }
    SUBCASE("non-p-power determinant rejected immediately") {
        auto res = is_p_steinberg(IntMatrix::from_rows({{6, 0}, {0, 2}}), 2);
        CHECK(res.kind == SteinbergResult::Kind::NotSteinberg);
        CHECK(res.certificate.find("not a power") != std::string::npos);
    }
    SUBCASE("mixed parity scales never reach a scalar") {
        // diag(2, 4): any power is diag(2^k, 4^k), never scalar
        auto res = is_p_steinberg(IntMatrix::from_rows({{2, 0}, {0, 4}}), 2);
        CHECK(res.kind == SteinbergResult::Kind::NotSteinberg);
    }
    SUBCASE("order-capped search reports Unknown") {
        auto far = IntMatrix::from_rows({{0, -1}, {1, 0}}) * Int(2); // witness (4,4)
        auto res = is_p_steinberg(far, 2, 2);
        CHECK(res.kind == SteinbergResult::Kind::Unknown);
        auto full = is_p_steinberg(far, 2);
        REQUIRE(full.kind == SteinbergResult::Kind::Witness);
        CHECK(full.witness.n == 4);
        CHECK(full.witness.m == 4);
    }
    SUBCASE("powers of a steinberg map stay steinberg") {
        auto F = suzuki_fstar(2);
        for (unsigned k = 2; k <= 4; ++k) {
            auto res = is_p_steinberg(F.pow(k), 2);
            CHECK(res.kind == SteinbergResult::Kind::Witness);
        }
    }
}

TEST_CASE("frobenius decision") {
    SUBCASE("p·I") {
        auto res = is_p_frobenius(IntMatrix::from_rows({{5, 0}, {0, 5}}), 5);
        REQUIRE(res.kind == FrobeniusResult::Kind::Frobenius);
        CHECK(res.a == 1);
        CHECK(res.finite_order_part.is_identity());
        CHECK(res.order == 1);
    }
    SUBCASE("p times a diagram automorphism") {
        // the A2 weight-coordinate flip composed with multiplication by 2
        auto f = IntMatrix::from_rows({{0, 2}, {2, 0}});
        auto res = is_p_frobenius(f, 2);
        REQUIRE(res.kind == FrobeniusResult::Kind::Frobenius);
        CHECK(res.a == 1);
        CHECK(res.order == 2);
        CHECK(res.finite_order_part == IntMatrix::from_rows({{0, 1}, {1, 0}}));
    }
    SUBCASE("Suzuki F* is Steinberg but not Frobenius") {
        for (unsigned r = 1; r <= 3; ++r) {
            auto res = is_p_frobenius(suzuki_fstar(r), 2);
            CHECK(res.kind == FrobeniusResult::Kind::NotFrobenius);
            CHECK(res.certificate.find("not divisible by the rank") != std::string::npos);
        }
    }
    SUBCASE("infinite order unimodular part rejected") {
        auto f = IntMatrix::from_rows({{1, 1}, {0, 1}}) * Int(3);
        auto res = is_p_frobenius(f, 3);
        CHECK(res.kind == FrobeniusResult::Kind::NotFrobenius);
        CHECK(res.certificate.find("infinite order") != std::string::npos);
    }
}

TEST_CASE("order bound is the exact lcm of admissible orders") {
    // dim 1: ratios are ±1, bound lcm{1,2} = 2
    CHECK(scalar_power_order_bound(1) == 2);
    // dim 2: φ(k) ≤ 4 admits k ∈ {1,...,6,8,10,12}, lcm = 120
    CHECK(scalar_power_order_bound(2) == 120);
}

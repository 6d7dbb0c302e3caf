#include "rdk/morphism.hpp"

#include <numeric>
#include <stdexcept>

namespace rdk {

namespace zl = zlattice;

namespace {

bool is_p_power(const Int& v, const Int& p) {
    if (v == 1) return true;
    if (p <= 1 || v <= 0) return false;
    Int r = v;
    while (r % p == 0) r /= p;
    return r == 1;
}

// v = c * w for a scalar c? Returns c when w ≠ 0 and proportional.
std::optional<Int> scalar_multiple_of(const IntVec& v, const IntVec& w) {
    std::optional<Int> c;
    for (size_t i = 0; i < v.size(); ++i) {
        if (w[i] == 0) {
            if (v[i] != 0) return std::nullopt;
            continue;
        }
        if (v[i] % w[i] != 0) return std::nullopt;
        Int ci = v[i] / w[i];
        if (c && *c != ci) return std::nullopt;
        c = ci;
    }
    return c;
}

} // namespace

PMorphism identity_morphism(const RootDatum& R) {
    PMorphism m;
    m.f = IntMatrix::identity(R.rank);
    m.p = 0;
    m.q.assign(R.roots.size(), Int(1));
    m.tau.resize(R.roots.size());
    for (size_t i = 0; i < m.tau.size(); ++i) m.tau[i] = int(i);
    return m;
}

ValidationReport validate_p_morphism(const PMorphism& m, const RootDatum& source,
                                     const RootDatum& target) {
    auto fail = [](std::string s) { return ValidationReport{false, std::move(s)}; };
    if (m.f.rows() != target.rank || m.f.cols() != source.rank)
        return fail("f has shape " + std::to_string(m.f.rows()) + "x" +
                    std::to_string(m.f.cols()) + ", expected " +
                    std::to_string(target.rank) + "x" + std::to_string(source.rank));
    size_t N = target.roots.size();
    if (m.q.size() != N || m.tau.size() != N)
        return fail("q/tau not aligned with the target root list");
    if (N != source.roots.size())
        return fail("τ cannot be a bijection: root counts differ");
    std::vector<bool> hit(N, false);
    for (size_t i = 0; i < N; ++i) {
        int t = m.tau[i];
        if (t < 0 || size_t(t) >= N) return fail("tau[" + std::to_string(i) + "] out of range");
        if (hit[size_t(t)]) return fail("tau is not injective at target root " + std::to_string(i));
        hit[size_t(t)] = true;
        if (m.p == 0 && m.q[i] != 1)
            return fail("p = 0 requires q ≡ 1, violated at target root " + std::to_string(i));
        if (!is_p_power(m.q[i], m.p))
            return fail("q[" + std::to_string(i) + "] = " + m.q[i].str() + " is not a power of p");
        // f(τ(α)) = q·α
        IntVec lhs = m.f.apply(source.roots[size_t(t)]);
        IntVec rhs = target.roots[i];
        for (auto& e : rhs) e *= m.q[i];
        if (lhs != rhs)
            return fail("f(τα) ≠ q·α at target root " + std::to_string(i));
        // f^T(α̌) = q·(τα)̌
        IntVec lhs2 = m.f.apply_transpose(target.coroots[i]);
        IntVec rhs2 = source.coroots[size_t(t)];
        for (auto& e : rhs2) e *= m.q[i];
        if (lhs2 != rhs2)
            return fail("f^T(α̌) ≠ q·(τα)̌ at target root " + std::to_string(i));
    }
    return {};
}

std::optional<PMorphism> infer_p_morphism(const IntMatrix& f, const Int& p,
                                          const RootDatum& source,
                                          const RootDatum& target) {
    if (source.roots.size() != target.roots.size()) return std::nullopt;
    PMorphism m;
    m.f = f;
    m.p = p;
    size_t N = target.roots.size();
    m.q.assign(N, Int(1));
    m.tau.assign(N, -1);
    std::vector<bool> used(N, false);
    for (size_t i = 0; i < N; ++i) {
        for (size_t j = 0; j < N; ++j) {
            if (used[j]) continue;
            auto c = scalar_multiple_of(f.apply(source.roots[j]), target.roots[i]);
            if (!c || *c <= 0 || !is_p_power(*c, p)) continue;
            IntVec ft = f.apply_transpose(target.coroots[i]);
            IntVec want = source.coroots[j];
            for (auto& e : want) e *= *c;
            if (ft != want) continue;
            m.tau[i] = int(j);
            m.q[i] = *c;
            used[j] = true;
            break;
        }
        if (m.tau[i] < 0) return std::nullopt;
    }
    if (!validate_p_morphism(m, source, target).ok) return std::nullopt;
    return m;
}

bool is_p_isogeny(const PMorphism& m) {
    int r = zl::rank(m.f);
    return r == m.f.rows() && r == m.f.cols();
}

PMorphism compose(const PMorphism& m2, const PMorphism& m1) {
    if (m2.f.cols() != m1.f.rows())
        throw std::invalid_argument("compose: shape mismatch");
    PMorphism m;
    m.f = m2.f * m1.f;
    m.p = m2.p != 0 ? m2.p : m1.p;
    size_t N = m2.q.size();
    if (m1.q.size() != N) throw std::invalid_argument("compose: root count mismatch");
    m.q.resize(N);
    m.tau.resize(N);
    for (size_t i = 0; i < N; ++i) {
        int mid = m2.tau[i];
        m.tau[i] = m1.tau[size_t(mid)];
        m.q[i] = m2.q[i] * m1.q[size_t(mid)];
    }
    return m;
}

PMorphism dualize(const PMorphism& m, const RootDatum& source, const RootDatum& target) {
    // m : source → target with f : X_src → X_tgt. The dual morphism runs
    // dual(target) → dual(source) with f^T. Roots of dual(source) are the
    // source coroots in their original positions, so τ̌(index j in
    // dual-source roots) = the target index i with τ(i) = j.
    (void)target;
    PMorphism d;
    d.f = m.f.transpose();
    d.p = m.p;
    size_t N = m.q.size();
    if (source.roots.size() != N)
        throw std::invalid_argument("dualize: root count mismatch");
    d.q.assign(N, Int(1));
    d.tau.assign(N, -1);
    for (size_t i = 0; i < N; ++i) {
        size_t j = size_t(m.tau[i]);
        d.tau[j] = int(i);
        d.q[j] = m.q[i];
    }
    return d;
}

bool is_datum_isomorphism(const IntMatrix& M, const RootDatum& source,
                          const RootDatum& target) {
    if (M.rows() != target.rank || M.cols() != source.rank) return false;
    if (!M.is_square()) return false;
    Int d = M.det();
    if (d != 1 && d != -1) return false;
    return infer_p_morphism(M, 0, source, target).has_value();
}

Int scalar_power_order_bound(int dim) {
    auto phi = [](long k) {
        long r = k, result = k;
        for (long d = 2; d * d <= r; ++d)
            if (r % d == 0) {
                result -= result / d;
                while (r % d == 0) r /= d;
            }
        if (r > 1) result -= result / r;
        return result;
    };
    long B = long(dim) * dim;
    Int N = 1;
    for (long k = 1; k <= 2 * B * B + 2; ++k)
        if (phi(k) <= B) N = boost::multiprecision::lcm(N, Int(k));
    return N;
}

SteinbergResult is_p_steinberg(const IntMatrix& f, const Int& p, unsigned long max_order) {
    if (!f.is_square()) throw std::invalid_argument("is_p_steinberg: not square");
    if (p <= 1) throw std::invalid_argument("is_p_steinberg: p must be a prime");
    int n = f.rows();
    if (n == 0) return {SteinbergResult::Kind::Witness, {1, 0}, ""};

    Int det = f.det();
    if (det < 0) det = -det;
    if (det == 0)
        return {SteinbergResult::Kind::NotSteinberg, {}, "det f = 0"};
    if (!is_p_power(det, p))
        return {SteinbergResult::Kind::NotSteinberg, {},
                "|det f| = " + det.str() + " is not a power of p"};

    // If f^k = p^m I then the exponent k divides 2·lcm{j : φ(j) ≤ n²}:
    // eigenvalues are p^{m/k} times roots of unity of bounded degree.
    Int bound = 2 * scalar_power_order_bound(n);
    bool capped = max_order != 0 && Int(max_order) < bound;
    Int limit = capped ? Int(max_order) : bound;

    IntMatrix g = IntMatrix::identity(n);
    for (Int k = 1; k <= limit; ++k) {
        g = g * f;
        // scalar p-power test
        const Int& c = g(0, 0);
        bool scalar = c > 0;
        for (int i = 0; i < n && scalar; ++i)
            for (int j = 0; j < n && scalar; ++j)
                if (g(i, j) != (i == j ? c : Int(0))) scalar = false;
        if (!scalar || !is_p_power(c, p)) continue;
        unsigned long m = 0;
        for (Int v = c; v > 1; v /= p) ++m;
        return {SteinbergResult::Kind::Witness,
                {k.convert_to<unsigned long>(), m},
                ""};
    }
    if (capped)
        return {SteinbergResult::Kind::Unknown, {},
                "no witness up to the requested cap " + limit.str() +
                    " (provable bound " + bound.str() + ")"};
    return {SteinbergResult::Kind::NotSteinberg, {},
            "no exponent up to the provable bound " + bound.str() +
                " makes f^n a p-power scalar"};
}

FrobeniusResult is_p_frobenius(const IntMatrix& f, const Int& p, unsigned long max_order) {
    if (!f.is_square()) throw std::invalid_argument("is_p_frobenius: not square");
    if (p <= 1) throw std::invalid_argument("is_p_frobenius: p must be a prime");
    int n = f.rows();
    FrobeniusResult bad{FrobeniusResult::Kind::NotFrobenius, 0, IntMatrix(), 0, ""};
    if (n == 0)
        return {FrobeniusResult::Kind::Frobenius, 0, IntMatrix(0, 0), 1, ""};

    Int det = f.det();
    if (det < 0) det = -det;
    if (det == 0) { bad.certificate = "det f = 0"; return bad; }
    unsigned long vp = 0;
    Int rest = det;
    while (rest % p == 0) { rest /= p; ++vp; }
    if (rest != 1) {
        bad.certificate = "|det f| = " + det.str() + " is not a power of p";
        return bad;
    }
    if (vp % (unsigned long)(n) != 0) {
        bad.certificate = "|det f| = p^" + std::to_string(vp) +
                          " has exponent not divisible by the rank " + std::to_string(n);
        return bad;
    }
    unsigned long a = vp / (unsigned long)(n);
    Int pa = 1;
    for (unsigned long i = 0; i < a; ++i) pa *= p;
    IntMatrix phi0(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (f(i, j) % pa != 0) {
                bad.certificate = "f / p^" + std::to_string(a) + " is not integral";
                return bad;
            }
            phi0(i, j) = f(i, j) / pa;
        }
    // φ₀ has |det| = 1; finite order iff some power is the identity
    Int bound = scalar_power_order_bound(n);
    bool capped = max_order != 0 && Int(max_order) < bound;
    Int limit = capped ? Int(max_order) : bound;
    IntMatrix g = IntMatrix::identity(n);
    for (Int k = 1; k <= limit; ++k) {
        g = g * phi0;
        if (g.is_identity())
            return {FrobeniusResult::Kind::Frobenius, a, phi0,
                    k.convert_to<unsigned long>(), ""};
    }
    if (capped)
        return {FrobeniusResult::Kind::Unknown, a, phi0, 0,
                "finite-order check stopped at the requested cap " + limit.str()};
    bad.certificate = "f / p^" + std::to_string(a) +
                      " has infinite order (no power up to " + bound.str() + " is the identity)";
    return bad;
}

} // namespace rdk

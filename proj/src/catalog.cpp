#include "rdk/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <stdexcept>

namespace rdk::catalog {

namespace zl = zlattice;

namespace {

Int dot(const IntVec& a, const IntVec& b) {
    Int s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void check_type(const SimpleType& t) {
    auto bad = [&] {
        throw std::invalid_argument("unknown Cartan type " + std::string(1, t.series) +
                                    std::to_string(t.rank));
    };
    switch (t.series) {
        case 'A': if (t.rank < 1) bad(); break;
        case 'B': if (t.rank < 2) bad(); break;
        case 'C': if (t.rank < 2) bad(); break;
        case 'D': if (t.rank < 3) bad(); break;
        case 'E': if (t.rank < 6 || t.rank > 8) bad(); break;
        case 'F': if (t.rank != 4) bad(); break;
        case 'G': if (t.rank != 2) bad(); break;
        default: bad();
    }
}

// C(i,j) = <α_j, α̌_i> = 2(α_i|α_j)/(α_i|α_i), Bourbaki numbering.
IntMatrix simple_cartan(const SimpleType& t) {
    int n = t.rank;
    IntMatrix C(n, n);
    auto chain = [&](int i, int j) { C(i, j) = -1; C(j, i) = -1; };
    for (int i = 0; i < n; ++i) C(i, i) = 2;
    switch (t.series) {
        case 'A':
            for (int i = 0; i + 1 < n; ++i) chain(i, i + 1);
            break;
        case 'B': // α_n short: <α_n, α̌_{n-1}> = -1, <α_{n-1}, α̌_n> = -2
            for (int i = 0; i + 2 < n; ++i) chain(i, i + 1);
            C(n - 2, n - 1) = -1;
            C(n - 1, n - 2) = -2;
            break;
        case 'C': // α_n long: transpose of B
            for (int i = 0; i + 2 < n; ++i) chain(i, i + 1);
            C(n - 2, n - 1) = -2;
            C(n - 1, n - 2) = -1;
            break;
        case 'D':
            for (int i = 0; i + 2 < n; ++i) chain(i, i + 1);
            chain(n - 3, n - 1);
            break;
        case 'E': // node 2 hangs off node 4; chain 1-3-4-5-...-n
            chain(0, 2);
            chain(1, 3);
            for (int i = 2; i + 1 < n; ++i) chain(i, i + 1);
            break;
        case 'F':
            chain(0, 1); chain(2, 3);
            C(1, 2) = -1; C(2, 1) = -2; // α1,α2 long, α3,α4 short
            break;
        case 'G':
            C(0, 1) = -1; C(1, 0) = -3;
            break;
    }
    return C;
}

} // namespace

std::vector<SimpleType> parse_type_label(const std::string& label) {
    std::vector<SimpleType> out;
    size_t i = 0;
    while (i < label.size()) {
        char c = char(std::toupper(label[i]));
        if (c < 'A' || c > 'G')
            throw std::invalid_argument("bad type label: " + label);
        ++i;
        if (label[i] == '_') ++i; // allow A_3
        size_t j = i;
        while (j < label.size() && std::isdigit(label[j])) ++j;
        if (j == i) throw std::invalid_argument("bad type label: " + label);
        SimpleType t{c, std::stoi(label.substr(i, j - i))};
        check_type(t);
        out.push_back(t);
        i = j;
        if (i < label.size()) {
            if (std::tolower(label[i]) != 'x')
                throw std::invalid_argument("bad type label: " + label);
            ++i;
        }
    }
    if (out.empty()) throw std::invalid_argument("empty type label");
    return out;
}

IntMatrix cartan_matrix(const std::vector<SimpleType>& types) {
    int n = 0;
    for (auto& t : types) { check_type(t); n += t.rank; }
    IntMatrix C(n, n);
    int off = 0;
    for (auto& t : types) {
        IntMatrix B = simple_cartan(t);
        for (int i = 0; i < t.rank; ++i)
            for (int j = 0; j < t.rank; ++j) C(off + i, off + j) = B(i, j);
        off += t.rank;
    }
    return C;
}

namespace {

// Reflection-closure of a set of (root, coroot) seed pairs under the
// reflections of the seeds themselves; terminates for any finite system.
void close_under_reflections(RootDatum& R) {
    std::set<IntVec> seen(R.roots.begin(), R.roots.end());
    for (size_t head = 0; head < R.roots.size(); ++head) {
        size_t n_simple = R.roots.size();
        for (size_t i = 0; i < R.roots.size(); ++i) {
            // reflect pair `head` in pair i
            Int c1 = dot(R.roots[head], R.coroots[i]);
            Int c2 = dot(R.roots[i], R.coroots[head]);
            IntVec nr = R.roots[head], nc = R.coroots[head];
            for (int k = 0; k < R.rank; ++k) {
                nr[size_t(k)] -= c1 * R.roots[i][size_t(k)];
                nc[size_t(k)] -= c2 * R.coroots[i][size_t(k)];
            }
            if (seen.insert(nr).second) {
                R.roots.push_back(nr);
                R.coroots.push_back(nc);
            }
            (void)n_simple;
        }
    }
}

} // namespace

RootDatum simply_connected(const std::vector<SimpleType>& types) {
    IntMatrix C = cartan_matrix(types);
    int n = C.rows();
    RootDatum R;
    R.rank = n;
    for (int j = 0; j < n; ++j) {
        R.roots.push_back(C.column(j));
        IntVec e(size_t(n), Int(0));
        e[size_t(j)] = 1;
        R.coroots.push_back(e);
    }
    close_under_reflections(R);
    return R;
}

RootDatum with_lattice(const std::vector<SimpleType>& types,
                       const std::vector<IntVec>& generators) {
    RootDatum sc = simply_connected(types);
    IntMatrix A = sc.root_matrix();
    if (!generators.empty())
        A = A.hstack(IntMatrix::from_columns(generators, sc.rank));
    return induced_datum(sc, A).datum;
}

RootDatum gl(int n) {
    RootDatum R;
    R.rank = n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            IntVec v(size_t(n), Int(0));
            v[size_t(i)] = 1;
            v[size_t(j)] = -1;
            R.roots.push_back(v);
            R.coroots.push_back(v);
        }
    R.name = "GL" + std::to_string(n);
    return R;
}

RootDatum csp4() {
    // X = Z^3; simple pairs α1 = e1−e2, α̌1 = ě1−ě2; α2 = 2e2−e3, α̌2 = ě2.
    RootDatum R;
    R.rank = 3;
    R.roots = {IntVec{1, -1, 0}, IntVec{0, 2, -1}};
    R.coroots = {IntVec{1, -1, 0}, IntVec{0, 1, 0}};
    close_under_reflections(R);
    R.name = "CSp4";
    return R;
}

RootDatum lookup(const std::string& type_label, const std::string& selector) {
    if (type_label.rfind("GL", 0) == 0 || type_label.rfind("gl", 0) == 0) {
        int n = std::stoi(type_label.substr(2));
        if (n < 1) throw std::invalid_argument("GL rank must be >= 1");
        return gl(n);
    }
    if (type_label == "CSp4") return csp4();
    if (type_label == "Sp4") {
        RootDatum R = simply_connected({{'C', 2}});
        R.name = "Sp4";
        return R;
    }
    auto types = parse_type_label(type_label);
    RootDatum R;
    if (selector == "sc" || selector.empty())
        R = simply_connected(types);
    else if (selector == "ad")
        R = with_lattice(types, {});
    else
        throw std::invalid_argument("unknown selector: " + selector);
    R.name = type_label + "-" + (selector.empty() ? "sc" : selector);
    return R;
}

std::vector<IntMatrix> intermediate_lattices(const RootDatum& R) {
    IntMatrix Phi = R.root_matrix();
    if (zl::rank(Phi) != R.rank)
        throw std::invalid_argument("intermediate_lattices: X/ZΦ not finite");
    auto A = zl::quotient_presentation(Phi, R.rank);
    int s = A.num_generators();
    if (s == 0) return {zl::column_hnf(Phi)};

    // Elements of the finite quotient; every subgroup is generated by at
    // most s of them, so enumerate closures of all s-tuples and dedupe by
    // the lattice they pull back to.
    std::vector<IntVec> elements{IntVec(size_t(s), Int(0))};
    for (int i = 0; i < s; ++i) {
        std::vector<IntVec> next;
        for (auto& e : elements)
            for (Int v = 0; v < A.invariant_factors[size_t(i)]; ++v) {
                IntVec f = e;
                f[size_t(i)] = v;
                next.push_back(f);
            }
        elements = std::move(next);
    }

    // lift a quotient class back to X: solve projection * x ≡ class
    IntMatrix D = IntMatrix::diagonal(A.invariant_factors);
    auto lift = [&](const IntVec& cls) {
        auto sol = zl::solve(A.projection.hstack(D),
                             cls); // x padded with multiples of d
        IntVec x(sol->begin(), sol->begin() + R.rank);
        return x;
    };

    std::set<std::string> seen;
    std::vector<IntMatrix> out;
    std::vector<size_t> idx(size_t(s), 0);
    size_t total = 1;
    for (int i = 0; i < s; ++i) total *= elements.size();
    for (size_t code = 0; code < total; ++code) {
        size_t c = code;
        IntMatrix gens = Phi;
        for (int i = 0; i < s; ++i) {
            const IntVec& cls = elements[c % elements.size()];
            c /= elements.size();
            gens = gens.hstack(IntMatrix::column_vector(lift(cls)));
        }
        IntMatrix H = zl::column_hnf(gens);
        if (seen.insert(H.to_string()).second) out.push_back(H);
    }
    return out;
}

} // namespace rdk::catalog

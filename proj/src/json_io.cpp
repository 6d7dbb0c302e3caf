#include "rdk/json_io.hpp"

#include <sstream>

namespace rdk::io {

namespace {

const Int kSafeBound = Int(1) << 53;

json require(const json& j, const char* key, const std::string& path) {
    if (!j.is_object()) throw SchemaError(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw SchemaError(path + "." + key, "missing field");
    return *it;
}

int int_field(const json& j, const char* key, const std::string& path) {
    json v = require(j, key, path);
    if (!v.is_number_integer())
        throw SchemaError(path + "." + key, "expected an integer");
    return v.get<int>();
}

IntVec vec_from_json(const json& j, const std::string& path) {
    if (!j.is_array()) throw SchemaError(path, "expected an array");
    IntVec out;
    out.reserve(j.size());
    for (size_t i = 0; i < j.size(); ++i)
        out.push_back(int_from_json(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

json vec_to_json(const IntVec& v) {
    json out = json::array();
    for (const Int& x : v) out.push_back(int_to_json(x));
    return out;
}

std::vector<IntVec> vec_list_from_json(const json& j, const std::string& path) {
    if (!j.is_array()) throw SchemaError(path, "expected an array of vectors");
    std::vector<IntVec> out;
    out.reserve(j.size());
    for (size_t i = 0; i < j.size(); ++i)
        out.push_back(vec_from_json(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

} // namespace

json int_to_json(const Int& v) {
    if (v < kSafeBound && v > -kSafeBound) return json(v.convert_to<long long>());
    return json(v.str());
}

Int int_from_json(const json& j, const std::string& path) {
    if (j.is_number_integer()) return Int(j.get<long long>());
    if (j.is_string()) {
        try {
            return Int(j.get<std::string>());
        } catch (const std::exception&) {
            throw SchemaError(path, "not a decimal integer string");
        }
    }
    throw SchemaError(path, "expected an integer or decimal string");
}

json to_json(const IntMatrix& M) {
    json rows = json::array();
    for (int i = 0; i < M.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < M.cols(); ++j) row.push_back(int_to_json(M(i, j)));
        rows.push_back(std::move(row));
    }
    return json{{"rows", M.rows()}, {"cols", M.cols()}, {"data", std::move(rows)}};
}

IntMatrix matrix_from_json(const json& j, const std::string& path) {
    int rows = int_field(j, "rows", path);
    int cols = int_field(j, "cols", path);
    if (rows < 0 || cols < 0) throw SchemaError(path, "negative dimensions");
    json data = require(j, "data", path);
    if (!data.is_array() || int(data.size()) != rows)
        throw SchemaError(path + ".data", "expected " + std::to_string(rows) + " rows");
    IntMatrix M(rows, cols);
    for (int i = 0; i < rows; ++i) {
        IntVec row = vec_from_json(data[size_t(i)],
                                   path + ".data[" + std::to_string(i) + "]");
        if (int(row.size()) != cols)
            throw SchemaError(path + ".data[" + std::to_string(i) + "]",
                              "expected " + std::to_string(cols) + " entries");
        for (int c = 0; c < cols; ++c) M(i, c) = row[size_t(c)];
    }
    return M;
}

json to_json(const RootDatum& R) {
    json out{{"rank", R.rank}, {"roots", json::array()}, {"coroots", json::array()}};
    for (const IntVec& a : R.roots) out["roots"].push_back(vec_to_json(a));
    for (const IntVec& a : R.coroots) out["coroots"].push_back(vec_to_json(a));
    if (!R.name.empty()) out["name"] = R.name;
    return out;
}

RootDatum datum_from_json(const json& j, const std::string& path) {
    RootDatum R;
    R.rank = int_field(j, "rank", path);
    if (R.rank < 0) throw SchemaError(path + ".rank", "negative rank");
    R.roots = vec_list_from_json(require(j, "roots", path), path + ".roots");
    R.coroots = vec_list_from_json(require(j, "coroots", path), path + ".coroots");
    if (R.roots.size() != R.coroots.size())
        throw SchemaError(path, "roots and coroots differ in length");
    for (size_t i = 0; i < R.roots.size(); ++i)
        if (int(R.roots[i].size()) != R.rank || int(R.coroots[i].size()) != R.rank)
            throw SchemaError(path, "root/coroot " + std::to_string(i) +
                                        " does not have length rank");
    if (j.contains("name")) {
        if (!j["name"].is_string()) throw SchemaError(path + ".name", "expected a string");
        R.name = j["name"].get<std::string>();
    }
    return R;
}

json to_json(const PMorphism& m) {
    json out{{"f", to_json(m.f)}, {"p", int_to_json(m.p)}};
    out["q"] = vec_to_json(m.q);
    out["tau"] = json::array();
    for (int t : m.tau) out["tau"].push_back(t);
    return out;
}

PMorphism morphism_from_json(const json& j, const std::string& path) {
    PMorphism m;
    m.f = matrix_from_json(require(j, "f", path), path + ".f");
    m.p = int_from_json(require(j, "p", path), path + ".p");
    m.q = vec_from_json(require(j, "q", path), path + ".q");
    json tau = require(j, "tau", path);
    if (!tau.is_array()) throw SchemaError(path + ".tau", "expected an array");
    for (size_t i = 0; i < tau.size(); ++i) {
        if (!tau[i].is_number_integer())
            throw SchemaError(path + ".tau[" + std::to_string(i) + "]",
                              "expected an integer index");
        m.tau.push_back(tau[i].get<int>());
    }
    if (m.q.size() != m.tau.size())
        throw SchemaError(path, "q and tau differ in length");
    return m;
}

json to_json(const CentralProductSpec& spec) {
    return json{{"r1", to_json(spec.R1)},
                {"r2", to_json(spec.R2)},
                {"invariant_factors", vec_to_json(spec.A.invariant_factors)},
                {"h1", to_json(spec.h1)},
                {"h2", to_json(spec.h2)}};
}

CentralProductSpec central_spec_from_json(const json& j, const std::string& path) {
    CentralProductSpec spec;
    spec.R1 = datum_from_json(require(j, "r1", path), path + ".r1");
    spec.R2 = datum_from_json(require(j, "r2", path), path + ".r2");
    IntVec d = vec_from_json(require(j, "invariant_factors", path),
                             path + ".invariant_factors");
    spec.A = zlattice::FinAbPresentation::of_factors(d);
    spec.h1 = matrix_from_json(require(j, "h1", path), path + ".h1");
    spec.h2 = matrix_from_json(require(j, "h2", path), path + ".h2");
    return spec;
}

} // namespace rdk::io

// rdk: command-line front end for the root-datum toolkit.
//
// Exit codes: 0 success, 1 mathematical negative (not isomorphic, not
// Steinberg, invalid datum, ...), 2 input error, 3 enumeration budget
// exceeded / undecided.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "rdk/asai.hpp"
#include "rdk/catalog.hpp"
#include "rdk/central.hpp"
#include "rdk/classify.hpp"
#include "rdk/embed.hpp"
#include "rdk/json_io.hpp"
#include "rdk/morphism.hpp"
#include "rdk/root_datum.hpp"

namespace {

using rdk::Int;
using rdk::IntMatrix;
using rdk::PMorphism;
using rdk::RootDatum;
using json = rdk::io::json;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitInput = 2;
constexpr int kExitBudget = 3;

struct ExitWith {
    int code;
    std::string message;
};

json read_json_input(const std::string& path) {
    std::string text;
    if (path.empty() || path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        text = buf.str();
    } else {
        std::ifstream in(path);
        if (!in) throw ExitWith{kExitInput, "cannot open " + path};
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ExitWith{kExitInput, std::string("JSON parse error: ") + e.what()};
    }
}

RootDatum read_datum(const std::string& path) {
    return rdk::io::datum_from_json(read_json_input(path));
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

unsigned long budget_default() {
    if (const char* env = std::getenv("RDK_BUDGET")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return rdk::kDefaultBudget;
}

/// "split:q=N" means the scalar matrix N·I; anything else is a file (or "-")
/// holding an IntMatrix in JSON form.
IntMatrix parse_frobenius(const std::string& spec, int rank) {
    const std::string prefix = "split:q=";
    if (spec.rfind(prefix, 0) == 0) {
        Int q;
        try {
            q = Int(spec.substr(prefix.size()));
        } catch (const std::exception&) {
            throw ExitWith{kExitInput, "bad --frobenius value: " + spec};
        }
        if (q <= 0) throw ExitWith{kExitInput, "--frobenius split:q must be positive"};
        return IntMatrix::identity(rank) * q;
    }
    return rdk::io::matrix_from_json(read_json_input(spec));
}

json morphism_with_context_to_json(const PMorphism& m) { return rdk::io::to_json(m); }

struct MorphismInput {
    PMorphism m;
    std::optional<RootDatum> source, target;
};

MorphismInput read_morphism_input(const std::string& path) {
    json j = read_json_input(path);
    MorphismInput in;
    if (j.contains("morphism"))
        in.m = rdk::io::morphism_from_json(j["morphism"], "$.morphism");
    else
        in.m = rdk::io::morphism_from_json(j);
    if (j.contains("source"))
        in.source = rdk::io::datum_from_json(j["source"], "$.source");
    if (j.contains("target"))
        in.target = rdk::io::datum_from_json(j["target"], "$.target");
    return in;
}

json smooth_embedding_to_json(const rdk::SmoothEmbedding& se) {
    json out{{"datum", rdk::io::to_json(se.datum)},
             {"basis", rdk::io::to_json(se.basis)},
             {"projection", rdk::io::to_json(se.projection)},
             {"doubled", se.doubled}};
    if (se.steinberg) out["steinberg"] = rdk::io::to_json(*se.steinberg);
    return out;
}

int run(CLI::App& app, bool json_out, unsigned long budget, unsigned long max_order,
        bool force, const std::string& frobenius_spec, long long prime,
        const std::vector<std::string>& files) {
    auto file_at = [&](size_t i) -> std::string {
        return i < files.size() ? files[i] : std::string("-");
    };

    if (app.got_subcommand("validate")) {
        RootDatum R = read_datum(file_at(0));
        auto rep = rdk::validate(R);
        if (json_out)
            emit(json{{"ok", rep.ok}, {"message", rep.message}});
        else
            std::cout << (rep.ok ? "valid root datum" : "invalid: " + rep.message)
                      << "\n";
        return rep.ok ? kExitOk : kExitNegative;
    }

    if (app.got_subcommand("catalog")) {
        if (files.size() < 1) throw ExitWith{kExitInput, "catalog: need <type> [selector]"};
        std::string type = files[0];
        std::string selector = files.size() > 1 ? files[1] : "sc";
        RootDatum R;
        if (type == "GL" || type == "gl")
            R = rdk::catalog::gl(std::stoi(selector));
        else if (type == "torus")
            R = rdk::torus(std::stoi(selector));
        else
            R = rdk::catalog::lookup(type, selector);
        emit(rdk::io::to_json(R));
        return kExitOk;
    }

    if (app.got_subcommand("dual")) {
        emit(rdk::io::to_json(rdk::dual(read_datum(file_at(0)))));
        return kExitOk;
    }

    if (app.got_subcommand("cproduct")) {
        auto spec = rdk::io::central_spec_from_json(read_json_input(file_at(0)));
        auto rep = rdk::validate_central_spec(spec);
        if (!rep.ok) throw ExitWith{kExitInput, "invalid spec: " + rep.message};
        auto res = rdk::central_product(spec);
        if (json_out)
            emit(json{{"datum", rdk::io::to_json(res.datum)},
                      {"embed", rdk::io::to_json(res.embed)},
                      {"proj1", rdk::io::to_json(res.proj1)},
                      {"proj2", rdk::io::to_json(res.proj2)}});
        else
            emit(rdk::io::to_json(res.datum));
        return kExitOk;
    }

    if (app.got_subcommand("recover")) {
        auto rec = rdk::recover_components(read_datum(file_at(0)));
        json out{{"derived", rdk::io::to_json(rec.derived.datum)},
                 {"derived_map", rdk::io::to_json(rec.derived.map)},
                 {"radical", rdk::io::to_json(rec.rad.datum)},
                 {"radical_map", rdk::io::to_json(rec.rad.map)},
                 {"invariant_factors", json::array()},
                 {"h1", rdk::io::to_json(rec.h1)},
                 {"h2", rdk::io::to_json(rec.h2)}};
        for (const Int& d : rec.A.invariant_factors)
            out["invariant_factors"].push_back(rdk::io::int_to_json(d));
        emit(out);
        return kExitOk;
    }

    if (app.got_subcommand("classify")) {
        json j = read_json_input(file_at(0));
        rdk::ClassTriple t;
        if (j.contains("datum")) {
            t = rdk::triple_of(rdk::io::datum_from_json(j["datum"], "$.datum"));
        } else {
            t.semisimple = rdk::io::datum_from_json(j.at("semisimple"), "$.semisimple");
            if (!j.contains("torus_rank") || !j["torus_rank"].is_number_integer())
                throw ExitWith{kExitInput, "$.torus_rank: expected an integer"};
            t.torus_rank = j["torus_rank"].get<int>();
            if (j.contains("k"))
                t.K = rdk::io::matrix_from_json(j["k"], "$.k");
            else
                t.K = rdk::zlattice::column_hnf(t.semisimple.root_matrix());
        }
        auto res = rdk::classify_products(t, budget);
        json classes = json::array();
        for (const auto& c : res.classes)
            classes.push_back(json{{"psi", rdk::io::to_json(c.psi)},
                                   {"datum", rdk::io::to_json(c.datum)},
                                   {"coset_size", c.coset_size}});
        if (json_out)
            emit(json{{"num_classes", res.classes.size()}, {"classes", classes}});
        else
            std::cout << res.classes.size() << " classes\n";
        return kExitOk;
    }

    if (app.got_subcommand("isomorphic")) {
        if (files.size() < 2) throw ExitWith{kExitInput, "isomorphic: need two datum files"};
        RootDatum R1 = read_datum(files[0]);
        RootDatum R2 = read_datum(files[1]);
        auto res = rdk::isomorphic(R1, R2, budget);
        using K = rdk::IsoResult::Kind;
        if (json_out) {
            json out{{"isomorphic", res.kind == K::Iso}, {"detail", res.detail}};
            if (res.kind == K::Iso) out["iso"] = rdk::io::to_json(res.iso);
            if (res.kind == K::Unknown) out["isomorphic"] = nullptr;
            emit(out);
        } else if (res.kind == K::Iso) {
            std::cout << "isomorphic\n";
        } else {
            std::cout << (res.kind == K::NotIso ? "not isomorphic: " : "undecided: ")
                      << res.detail << "\n";
        }
        if (res.kind == K::Unknown) return kExitBudget;
        return res.kind == K::Iso ? kExitOk : kExitNegative;
    }

    if (app.got_subcommand("morphism")) {
        auto* sub = app.get_subcommand("morphism");
        auto in = read_morphism_input(file_at(0));
        if (sub->got_subcommand("validate")) {
            if (!in.source || !in.target)
                throw ExitWith{kExitInput, "morphism validate: need source and target data"};
            auto rep = rdk::validate_p_morphism(in.m, *in.source, *in.target);
            if (json_out)
                emit(json{{"ok", rep.ok}, {"message", rep.message}});
            else
                std::cout << (rep.ok ? "valid p-morphism" : "invalid: " + rep.message)
                          << "\n";
            return rep.ok ? kExitOk : kExitNegative;
        }
        if (sub->got_subcommand("steinberg")) {
            Int p = prime > 0 ? Int(prime) : in.m.p;
            if (p <= 0) throw ExitWith{kExitInput, "steinberg: need a prime (--p or m.p)"};
            auto res = rdk::is_p_steinberg(in.m.f, p, max_order);
            using K = rdk::SteinbergResult::Kind;
            if (json_out) {
                json out{{"kind", res.kind == K::Witness      ? "witness"
                                  : res.kind == K::NotSteinberg ? "not_steinberg"
                                                                : "unknown"},
                         {"certificate", res.certificate}};
                if (res.kind == K::Witness)
                    out["witness"] = json{{"n", res.witness.n}, {"m", res.witness.m}};
                emit(out);
            } else if (res.kind == K::Witness) {
                std::cout << "p-Steinberg: f^" << res.witness.n << " = p^"
                          << res.witness.m << " * I\n";
            } else {
                std::cout << (res.kind == K::NotSteinberg ? "not p-Steinberg: "
                                                          : "undecided: ")
                          << res.certificate << "\n";
            }
            if (res.kind == K::Unknown) return kExitBudget;
            return res.kind == K::Witness ? kExitOk : kExitNegative;
        }
        if (sub->got_subcommand("frobenius")) {
            Int p = prime > 0 ? Int(prime) : in.m.p;
            if (p <= 0) throw ExitWith{kExitInput, "frobenius: need a prime (--p or m.p)"};
            auto res = rdk::is_p_frobenius(in.m.f, p, max_order);
            using K = rdk::FrobeniusResult::Kind;
            if (json_out) {
                json out{{"kind", res.kind == K::Frobenius     ? "frobenius"
                                  : res.kind == K::NotFrobenius ? "not_frobenius"
                                                                : "unknown"},
                         {"certificate", res.certificate}};
                if (res.kind == K::Frobenius) {
                    out["a"] = res.a;
                    out["order"] = res.order;
                    out["finite_order_part"] = rdk::io::to_json(res.finite_order_part);
                }
                emit(out);
            } else if (res.kind == K::Frobenius) {
                std::cout << "p-Frobenius: f = p^" << res.a
                          << " * phi0, ord(phi0) = " << res.order << "\n";
            } else {
                std::cout << (res.kind == K::NotFrobenius ? "not p-Frobenius: "
                                                          : "undecided: ")
                          << res.certificate << "\n";
            }
            if (res.kind == K::Unknown) return kExitBudget;
            return res.kind == K::Frobenius ? kExitOk : kExitNegative;
        }
        if (sub->got_subcommand("dualize")) {
            if (!in.source || !in.target)
                throw ExitWith{kExitInput, "morphism dualize: need source and target data"};
            emit(morphism_with_context_to_json(
                rdk::dualize(in.m, *in.source, *in.target)));
            return kExitOk;
        }
        throw ExitWith{kExitInput,
                       "morphism: need a subcommand (validate|steinberg|frobenius|dualize)"};
    }

    if (app.got_subcommand("embed")) {
        auto* sub = app.get_subcommand("embed");
        if (sub->got_subcommand("smooth")) {
            RootDatum R = read_datum(file_at(0));
            std::optional<IntMatrix> F;
            if (!frobenius_spec.empty()) F = parse_frobenius(frobenius_spec, R.rank);
            auto se = rdk::smooth_regular_embedding(R, F ? &*F : nullptr, force);
            if (json_out)
                emit(smooth_embedding_to_json(se));
            else
                emit(rdk::io::to_json(se.datum));
            return kExitOk;
        }
        if (sub->got_subcommand("optimal")) {
            RootDatum R = read_datum(file_at(0));
            if (frobenius_spec.empty())
                throw ExitWith{kExitInput, "embed optimal: --frobenius is required"};
            if (prime <= 0) throw ExitWith{kExitInput, "embed optimal: --p is required"};
            IntMatrix F = parse_frobenius(frobenius_spec, R.rank);
            auto oe = rdk::optimal_embedding(R, F, Int(prime));
            if (json_out)
                emit(json{{"datum", rdk::io::to_json(oe.datum)},
                          {"basis", rdk::io::to_json(oe.basis)},
                          {"projection", rdk::io::to_json(oe.projection)},
                          {"steinberg", rdk::io::to_json(oe.steinberg)},
                          {"torus_lift", rdk::io::to_json(oe.torus_lift)},
                          {"torus_rank", oe.torus_rank}});
            else
                emit(rdk::io::to_json(oe.datum));
            return kExitOk;
        }
        if (sub->got_subcommand("check")) {
            json j = read_json_input(file_at(0));
            auto in = read_morphism_input(file_at(0));
            (void)j;
            if (!in.source || !in.target)
                throw ExitWith{kExitInput, "embed check: need source and target data"};
            Int p = prime > 0 ? Int(prime) : in.m.p;
            if (p <= 0) throw ExitWith{kExitInput, "embed check: need a prime (--p or m.p)"};
            std::optional<IntMatrix> F;
            if (!frobenius_spec.empty())
                F = parse_frobenius(frobenius_spec, in.target->rank);
            auto rep = rdk::classify_embedding(in.m, *in.source, *in.target, p,
                                               F ? &*F : nullptr);
            const char* kind = rep.kind == rdk::EmbeddingKind::Smooth     ? "smooth"
                               : rep.kind == rdk::EmbeddingKind::PRegular ? "p_regular"
                               : rep.kind == rdk::EmbeddingKind::Derived  ? "derived"
                                                                          : "not_embedding";
            if (json_out) {
                json out{{"kind", kind}, {"detail", rep.detail}};
                json tor = json::array();
                for (const Int& d : rep.torsion) tor.push_back(rdk::io::int_to_json(d));
                out["torsion"] = tor;
                if (rep.steinberg_lift)
                    out["steinberg_lift"] = rdk::io::to_json(*rep.steinberg_lift);
                emit(out);
            } else {
                std::cout << kind;
                if (!rep.detail.empty()) std::cout << ": " << rep.detail;
                std::cout << "\n";
            }
            return rep.kind == rdk::EmbeddingKind::NotEmbedding ? kExitNegative : kExitOk;
        }
        throw ExitWith{kExitInput, "embed: need a subcommand (smooth|optimal|check)"};
    }

    if (app.got_subcommand("asai")) {
        auto* sub = app.get_subcommand("asai");
        if (sub->got_subcommand("complete")) {
            json j = read_json_input(file_at(0));
            RootDatum R1 = rdk::io::datum_from_json(j.at("r1"), "$.r1");
            RootDatum R2 = rdk::io::datum_from_json(j.at("r2"), "$.r2");
            RootDatum R = rdk::io::datum_from_json(j.at("r"), "$.r");
            PMorphism s1 = rdk::io::morphism_from_json(j.at("s1"), "$.s1");
            PMorphism s2 = rdk::io::morphism_from_json(j.at("s2"), "$.s2");
            std::optional<IntMatrix> F, F1, F2;
            if (j.contains("f")) F = rdk::io::matrix_from_json(j["f"], "$.f");
            if (j.contains("f1")) F1 = rdk::io::matrix_from_json(j["f1"], "$.f1");
            if (j.contains("f2")) F2 = rdk::io::matrix_from_json(j["f2"], "$.f2");
            auto res = rdk::complete_embeddings(s1, R1, s2, R2, R, F ? &*F : nullptr,
                                                F1 ? &*F1 : nullptr,
                                                F2 ? &*F2 : nullptr);
            if (json_out) {
                json out{{"datum", rdk::io::to_json(res.datum)},
                         {"basis", rdk::io::to_json(res.basis)},
                         {"pi1", rdk::io::to_json(res.pi1)},
                         {"pi2", rdk::io::to_json(res.pi2)},
                         {"lambda", rdk::io::to_json(res.lambda)},
                         {"square_commutes", res.square_commutes}};
                if (res.steinberg) out["steinberg"] = rdk::io::to_json(*res.steinberg);
                emit(out);
            } else {
                emit(rdk::io::to_json(res.datum));
            }
            return kExitOk;
        }
        if (sub->got_subcommand("cover")) {
            RootDatum R = read_datum(file_at(0));
            std::optional<IntMatrix> F;
            if (!frobenius_spec.empty()) F = parse_frobenius(frobenius_spec, R.rank);
            auto res = rdk::smooth_covering(R, F ? &*F : nullptr, force);
            if (json_out) {
                json out{{"datum", rdk::io::to_json(res.datum)},
                         {"chart", rdk::io::to_json(res.chart)},
                         {"kernel_is_torus", res.kernel_is_torus},
                         {"derived_simply_connected", res.derived_simply_connected},
                         {"centre_transfer", res.centre_transfer}};
                if (res.steinberg) out["steinberg"] = rdk::io::to_json(*res.steinberg);
                emit(out);
            } else {
                emit(rdk::io::to_json(res.datum));
            }
            return kExitOk;
        }
        if (sub->got_subcommand("cyclic")) {
            json j = read_json_input(file_at(0));
            if (!j.contains("blocks") || !j["blocks"].is_array())
                throw ExitWith{kExitInput, "$.blocks: expected an array of root data"};
            std::vector<RootDatum> blocks;
            for (size_t i = 0; i < j["blocks"].size(); ++i)
                blocks.push_back(rdk::io::datum_from_json(
                    j["blocks"][i], "$.blocks[" + std::to_string(i) + "]"));
            IntMatrix F = rdk::io::matrix_from_json(j.at("f"), "$.f");
            auto res = rdk::cyclic_block_embedding(blocks, F);
            if (json_out) {
                emit(json{{"datum", rdk::io::to_json(res.datum)},
                          {"h", rdk::io::to_json(res.h)},
                          {"psi", rdk::io::to_json(res.psi)},
                          {"sigma", rdk::io::to_json(res.sigma)},
                          {"rotation_certified", res.rotation_certified},
                          {"block1_certified", res.block1_certified}});
            } else {
                emit(rdk::io::to_json(res.datum));
            }
            return kExitOk;
        }
        throw ExitWith{kExitInput, "asai: need a subcommand (complete|cover|cyclic)"};
    }

    throw ExitWith{kExitInput, "no subcommand given (see --help)"};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"rdk: exact-arithmetic root-datum toolkit"};
    app.require_subcommand(0, 1);
    app.allow_extras();

    bool json_out = false;
    unsigned long budget = budget_default();
    unsigned long max_order = 0;
    bool force = false;
    std::string frobenius_spec;
    long long prime = 0;
    std::vector<std::string> files;

    app.add_flag("--json", json_out, "emit structured JSON results");
    app.add_option("--budget", budget, "enumeration budget (default RDK_BUDGET or built-in)");
    app.add_option("--max-order", max_order, "cap the Steinberg/Frobenius power search");
    app.add_flag("--force-construction", force, "apply constructions even when the input already qualifies");
    app.add_option("--frobenius", frobenius_spec, "Frobenius matrix: file, '-', or split:q=N");
    app.add_option("--p", prime, "the prime p");

    app.add_subcommand("validate", "check root-datum axioms")->allow_extras()->fallthrough();
    app.add_subcommand("catalog", "emit a catalog datum: <type> [sc|ad|GLn selector]")->allow_extras()->fallthrough();
    app.add_subcommand("dual", "dual root datum")->allow_extras()->fallthrough();
    app.add_subcommand("cproduct", "central product from a gluing spec")->allow_extras()->fallthrough();
    app.add_subcommand("recover", "canonical central-product components")->allow_extras()->fallthrough();
    app.add_subcommand("classify", "isomorphism classes for a classification triple")->allow_extras()->fallthrough();
    app.add_subcommand("isomorphic", "decide isomorphism of two root data")->allow_extras()->fallthrough();
    auto* morph = app.add_subcommand("morphism", "p-morphism operations")->fallthrough();
    morph->add_subcommand("validate")->allow_extras()->fallthrough();
    morph->add_subcommand("steinberg")->allow_extras()->fallthrough();
    morph->add_subcommand("frobenius")->allow_extras()->fallthrough();
    morph->add_subcommand("dualize")->allow_extras()->fallthrough();
    auto* embed = app.add_subcommand("embed", "smooth regular embeddings")->fallthrough();
    embed->add_subcommand("smooth")->allow_extras()->fallthrough();
    embed->add_subcommand("optimal")->allow_extras()->fallthrough();
    embed->add_subcommand("check")->allow_extras()->fallthrough();
    auto* asai = app.add_subcommand("asai", "reduction constructions")->fallthrough();
    asai->add_subcommand("complete")->allow_extras()->fallthrough();
    asai->add_subcommand("cover")->allow_extras()->fallthrough();
    asai->add_subcommand("cyclic")->allow_extras()->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? kExitInput : kExitOk;
    }

    // Positional file arguments are collected as extras, wherever they landed.
    files = app.remaining(true);

    try {
        return run(app, json_out, budget, max_order, force, frobenius_spec, prime,
                   files);
    } catch (const ExitWith& e) {
        std::cerr << "rdk: " << e.message << "\n";
        return e.code;
    } catch (const rdk::io::SchemaError& e) {
        std::cerr << "rdk: schema error at " << e.what() << "\n";
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "rdk: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::runtime_error& e) {
        std::string msg = e.what();
        std::cerr << "rdk: " << msg << "\n";
        return msg.find("budget") != std::string::npos ? kExitBudget : kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "rdk: " << e.what() << "\n";
        return kExitInput;
    }
}

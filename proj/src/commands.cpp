#include "rota/commands.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include "rota/birkhoff.hpp"
#include "rota/errors.hpp"
#include "rota/urb.hpp"

namespace rota {

namespace {

constexpr const char* kSchema = "rota-core/1";

json report_header(const RunConfig& config) {
    json j = json::object();
    j["schema"] = kSchema;
    j["command"] = config.command;
    j["seed"] = config.seed;
    j["precision"] = config.precision;
    return j;
}

std::size_t pick(std::mt19937_64& rng, std::size_t n) {
    return static_cast<std::size_t>(rng() % n);
}

URBElement sample_urb(std::mt19937_64& rng, const std::vector<std::string>& gens) {
    URBElement u;
    if (rng() % 2)
        u.scalar.add(gens[pick(rng, gens.size())], rat(static_cast<long>(rng() % 7) - 3));
    u.tensor.add({gens[pick(rng, gens.size())], gens[pick(rng, gens.size())]},
                 rat(static_cast<long>(rng() % 7) - 3));
    return u;
}

struct LawOutcome {
    long samples = 0;
    long skipped = 0;
    bool pass = true;
    json counterexample;
};

json law_entry(const std::string& name, const LawOutcome& o) {
    json j = json::object();
    j["name"] = name;
    j["samples"] = o.samples;
    j["skipped"] = o.skipped;
    j["pass"] = o.pass;
    j["counterexample"] = o.counterexample.is_null() ? json() : o.counterexample;
    return j;
}

}  // namespace

namespace {

/// Fills the configured degree budget into laurent descriptors that do not
/// pin one themselves, recursing through composite instances.
json with_default_precision(json desc, int precision) {
    if (!desc.is_object()) return desc;
    if (desc.value("kind", std::string()) == "laurent" && !desc.contains("precision"))
        desc["precision"] = precision;
    for (const char* slot : {"inner", "left", "right"})
        if (desc.contains(slot))
            desc[slot] = with_default_precision(desc[slot], precision);
    return desc;
}

}  // namespace

json cmd_check(const json& input, const RunConfig& config) {
    const auto algebra =
        algebra_from_json(with_default_precision(input, config.precision), Audit::defer);
    const auto gens = algebra->generator_keys();

    json report = report_header(config);
    report["instance"] = algebra_to_json(*algebra);
    report["generators"] = gens;

    json laws = json::array();
    bool all_pass = true;

    // pairwise Rota-Baxter law over the documented generator enumeration
    {
        LawOutcome o;
        for (const auto& x : gens) {
            for (const auto& y : gens) {
                try {
                    ++o.samples;
                    if (!rb_check(*algebra, FreeVec::unit(x), FreeVec::unit(y))) {
                        o.pass = false;
                        o.counterexample = json{{"x", x}, {"y", y}};
                        break;
                    }
                } catch (const PrecisionExhausted&) {
                    ++o.skipped;
                }
            }
            if (!o.pass) break;
        }
        all_pass = all_pass && o.pass;
        laws.push_back(law_entry("rb_check", o));
    }

    // operator ring relation on every generator
    {
        LawOutcome o;
        for (const auto& x : gens) {
            try {
                ++o.samples;
                if (!urb_relation_check(*algebra, FreeVec::unit(x))) {
                    o.pass = false;
                    o.counterexample = json{{"r", x}};
                    break;
                }
            } catch (const PrecisionExhausted&) {
                ++o.skipped;
            }
        }
        all_pass = all_pass && o.pass;
        laws.push_back(law_entry("urb_relation_check", o));
    }

    // seeded associativity of the operator ring product
    {
        LawOutcome o;
        std::mt19937_64 rng(config.seed);
        for (int i = 0; i < 100; ++i) {
            const URBElement u = sample_urb(rng, gens), v = sample_urb(rng, gens),
                             w = sample_urb(rng, gens);
            try {
                ++o.samples;
                if (!urb_associativity_check(*algebra, u, v, w)) {
                    o.pass = false;
                    o.counterexample =
                        json{{"u", urb_to_json(u)}, {"v", urb_to_json(v)},
                             {"w", urb_to_json(w)}};
                    break;
                }
            } catch (const PrecisionExhausted&) {
                ++o.skipped;
            }
        }
        all_pass = all_pass && o.pass;
        laws.push_back(law_entry("urb_associativity_check", o));
    }

    // seeded associativity of the double product
    {
        LawOutcome o;
        std::mt19937_64 rng(config.seed + 1);
        for (int i = 0; i < 100; ++i) {
            FreeVec x = FreeVec::unit(gens[pick(rng, gens.size())],
                                      rat(static_cast<long>(rng() % 7) - 3));
            FreeVec y = FreeVec::unit(gens[pick(rng, gens.size())]);
            FreeVec z = FreeVec::unit(gens[pick(rng, gens.size())]);
            try {
                ++o.samples;
                if (!(star_product(*algebra, star_product(*algebra, x, y), z) ==
                      star_product(*algebra, x, star_product(*algebra, y, z)))) {
                    o.pass = false;
                    o.counterexample = json{{"x", to_string(x)}, {"y", to_string(y)},
                                            {"z", to_string(z)}};
                    break;
                }
            } catch (const PrecisionExhausted&) {
                ++o.skipped;
            }
        }
        all_pass = all_pass && o.pass;
        laws.push_back(law_entry("star_associativity", o));
    }

    // quasi-idempotency, reported when P(1) is scalar (it then follows)
    if (const auto p1 = algebra->p_of_unit_scalar()) {
        (void)p1;
        LawOutcome o;
        for (const auto& x : gens) {
            try {
                ++o.samples;
                if (!quasi_idempotent_check(*algebra, {FreeVec::unit(x)})) {
                    o.pass = false;
                    o.counterexample = json{{"x", x}};
                    break;
                }
            } catch (const PrecisionExhausted&) {
                ++o.skipped;
            }
        }
        all_pass = all_pass && o.pass;
        laws.push_back(law_entry("quasi_idempotent", o));
    }

    report["laws"] = std::move(laws);
    report["all_pass"] = all_pass;
    return report;
}

json cmd_urb_mul(const json& input, const RunConfig& config) {
    const auto algebra =
        algebra_from_json(with_default_precision(input.at("instance"), config.precision));
    const URBElement left = urb_from_json(input.at("left"));
    const URBElement right = urb_from_json(input.at("right"));
    json report = report_header(config);
    report["instance"] = algebra_to_json(*algebra);
    report["left"] = urb_to_json(left);
    report["right"] = urb_to_json(right);
    report["product"] = urb_to_json(urb_mul(*algebra, left, right));
    return report;
}

json cmd_urb_dim(const json& input, const RunConfig& config) {
    const auto algebra = algebra_from_json(input.at("instance"));
    json report = report_header(config);
    report["instance"] = algebra_to_json(*algebra);
    report["algebra_dimension"] = static_cast<long>(algebra->basis().size());
    report["dimension"] = urb_dimension(*algebra);
    return report;
}

json cmd_split(const json& input, const RunConfig& config) {
    const MatrixQ p = matrix_from_json(input.at("matrix"));
    const Rational lambda = rat_parse(input.at("weight").get<std::string>());
    const auto split = regular_singular_split(p, lambda);
    json report = report_header(config);
    report["weight"] = rat_str(lambda);
    report["minus_lambda"] = matrix_to_json(split.minus_lambda);
    report["zero"] = matrix_to_json(split.zero);
    report["reconstructed"] =
        matrix_to_json(split_reconstruct(split, lambda));
    report["dimensions"] =
        json{{"minus_lambda", split.minus_lambda.rows()}, {"zero", split.zero.rows()}};
    return report;
}

json cmd_birkhoff(const json& input, const RunConfig& config) {
    const int degree = input.value("degree", 3);
    const auto forests = Coalgebra::rooted_trees(degree);

    json codomain_desc = input.contains("codomain")
                             ? input.at("codomain")
                             : json{{"kind", "laurent"},
                                    {"weight", "-1/1"},
                                    {"precision", config.precision},
                                    {"symbol", "eps"}};
    const auto codomain = algebra_from_json(codomain_desc);
    const std::string symbol = codomain->laurent_symbol();

    std::map<std::string, FreeVec> tree_values;
    for (const auto& [key, value] : input.at("character").items())
        tree_values[key] =
            laurent_from_json(value).to_vec(symbol);
    const ConvMap phi = ConvMap::character_on_trees(forests, codomain, tree_values);
    const auto factors = birkhoff_factorize(phi);

    json table = json::object();
    const auto render = [&](const FreeVec& v) {
        return laurent_to_json(
            LaurentSeries::from_vec(v, codomain->laurent_precision(), symbol));
    };
    for (const auto& key : forests->basis())
        table[key] = json{{"phi", render(phi.value(key))},
                          {"phi_minus", render(factors.minus.value(key))},
                          {"phi_plus", render(factors.plus.value(key))}};

    // verification flags: exact factorization, counterterm polar off the
    // unit, renormalized part pole-free
    bool exact = true, polar = true, pole_free = true;
    const ConvMap recomposed = convolution_mul(factors.minus, phi);
    for (const auto& key : forests->basis()) {
        if (!(recomposed.value(key) == factors.plus.value(key))) exact = false;
        if (key != forests->unit_key()) {
            if (!(codomain->apply_P(factors.minus.value(key)) == factors.minus.value(key)))
                polar = false;
            if (!codomain->apply_P(factors.plus.value(key)).zero()) pole_free = false;
        }
    }

    json report = report_header(config);
    report["degree"] = degree;
    report["codomain"] = algebra_to_json(*codomain);
    report["table"] = std::move(table);
    report["verification"] = json{{"factorization_exact", exact},
                                  {"counterterm_polar", polar},
                                  {"renormalized_pole_free", pole_free}};
    report["all_pass"] = exact && polar && pole_free;
    return report;
}

json cmd_demo(const RunConfig& config) {
    json report = report_header(config);
    report["demo"] = config.demo_name;

    if (config.demo_name == "hecke") {
        json entries = json::array();
        for (long l : {1L, -1L, 2L}) {
            const auto k = RBAlgebra::scalar("k", rat(l), rat(-l));
            const URBElement q = urb_Q(*k);
            URBElement rel = urb_mul(*k, q, q);
            URBElement weighted = q;
            weighted *= rat(l);
            rel += weighted;  // Q^2 + lambda Q
            entries.push_back(json{{"weight", rat_str(rat(l))},
                                   {"dimension", urb_dimension(*k)},
                                   {"relation_q2_plus_lambda_q_is_zero", rel.zero()}});
        }
        report["entries"] = std::move(entries);
        report["all_pass"] = true;
        return report;
    }

    if (config.demo_name == "kernel") {
        const auto k_zero = RBAlgebra::scalar("k-zero", rat(-1), rat(0));
        const auto k_id = RBAlgebra::scalar("k-id", rat(-1), rat(1));
        const auto prod = product_rba(k_zero, k_id);
        long kernel_dim = 0;
        std::vector<URBElement> source;
        for (const auto& b : prod->basis()) source.push_back(urb_scalar(FreeVec::unit(b)));
        for (const auto& a : prod->basis())
            for (const auto& b : prod->basis()) source.push_back(urb_pure(a, b));
        for (const auto& u : source) {
            const auto [x, y] = urb_product_projection(*k_zero, *k_id, u);
            if (x.zero() && y.zero()) ++kernel_dim;
        }
        report["source_dimension"] = urb_dimension(*prod);
        report["target_dimension"] = urb_dimension(*k_zero) + urb_dimension(*k_id);
        report["kernel_dimension"] = kernel_dim;
        report["all_pass"] = kernel_dim == 2;
        return report;
    }

    if (config.demo_name == "zerodiv") {
        const auto id_op = RBAlgebra::identity_operator(RBAlgebra::laurent(config.precision));
        URBElement witness = urb_pure("t^0", "t^1");
        witness -= urb_pure("t^1", "t^0");
        const URBElement other = urb_pure("t^2", "t^3");
        const URBElement product = urb_mul(*id_op, witness, other);
        report["left"] = urb_to_json(witness);
        report["right"] = urb_to_json(other);
        report["product"] = urb_to_json(product);
        report["all_pass"] = product.zero();
        return report;
    }

    if (config.demo_name == "laurent") {
        const auto lau = RBAlgebra::laurent(config.precision);
        json table = json::array();
        for (int i = -2; i <= 2; ++i)
            for (int j = -2; j <= 2; ++j)
                for (int k = -2; k <= 2; ++k)
                    for (int l = -2; l <= 2; ++l) {
                        const auto prod = urb_mul(*lau, urb_pure(laurent_key(i), laurent_key(j)),
                                                  urb_pure(laurent_key(k), laurent_key(l)));
                        table.push_back(json{
                            {"left", tensor_key_str({laurent_key(i), laurent_key(j)})},
                            {"right", tensor_key_str({laurent_key(k), laurent_key(l)})},
                            {"branch", j + k < 0 ? "pole" : "regular"},
                            {"product", urb_to_json(prod)}});
                    }
        report["table"] = std::move(table);
        report["all_pass"] = true;
        return report;
    }

    if (config.demo_name == "divided") {
        const auto div = RBAlgebra::divided();
        const auto div_id = RBAlgebra::identity_operator(RBAlgebra::divided());
        json shift_table = json::array();
        json identity_table = json::array();
        for (unsigned long m1 = 0; m1 <= 2; ++m1)
            for (unsigned long n1 = 0; n1 <= 2; ++n1)
                for (unsigned long m2 = 0; m2 <= 2; ++m2)
                    for (unsigned long n2 = 0; n2 <= 2; ++n2) {
                        const auto left = urb_pure(divided_key(m1), divided_key(n1));
                        const auto right = urb_pure(divided_key(m2), divided_key(n2));
                        shift_table.push_back(
                            json{{"left", tensor_key_str({divided_key(m1), divided_key(n1)})},
                                 {"right", tensor_key_str({divided_key(m2), divided_key(n2)})},
                                 {"product", urb_to_json(urb_mul(*div, left, right))}});
                        identity_table.push_back(
                            json{{"left", tensor_key_str({divided_key(m1), divided_key(n1)})},
                                 {"right", tensor_key_str({divided_key(m2), divided_key(n2)})},
                                 {"product", urb_to_json(urb_mul(*div_id, left, right))}});
                    }
        report["shift_operator_table"] = std::move(shift_table);
        report["identity_operator_table"] = std::move(identity_table);
        report["all_pass"] = true;
        return report;
    }

    throw UnknownInstance("demo '" + config.demo_name + "'");
}

std::string render_report(const json& report) { return report.dump(2) + "\n"; }

CommandResult run_command(const RunConfig& config) {
    try {
        if (config.precision < 1) throw ParseError("precision must be >= 1");

        json input;
        if (config.command != "demo") {
            if (config.input_path.empty()) throw ParseError("missing --input");
            std::ifstream in(config.input_path);
            if (!in) throw ParseError("cannot open " + config.input_path);
            std::stringstream buffer;
            buffer << in.rdbuf();
            input = parse_json(buffer.str());
        }

        json report;
        if (config.command == "check")
            report = cmd_check(input, config);
        else if (config.command == "urb-mul")
            report = cmd_urb_mul(input, config);
        else if (config.command == "urb-dim")
            report = cmd_urb_dim(input, config);
        else if (config.command == "split")
            report = cmd_split(input, config);
        else if (config.command == "birkhoff")
            report = cmd_birkhoff(input, config);
        else if (config.command == "demo")
            report = cmd_demo(config);
        else
            throw ParseError("unknown command '" + config.command + "'");

        const bool all_pass = !report.contains("all_pass") || report["all_pass"].get<bool>();
        return {std::move(report), all_pass ? 0 : 1};
    } catch (const AxiomViolation& e) {
        return {json{{"schema", kSchema}, {"error", e.what()}}, 1};
    } catch (const NotQuasiIdempotent& e) {
        return {json{{"schema", kSchema}, {"error", e.what()}}, 1};
    } catch (const NotIdempotent& e) {
        return {json{{"schema", kSchema}, {"error", e.what()}}, 1};
    } catch (const Error& e) {
        return {json{{"schema", kSchema}, {"error", e.what()}}, 2};
    } catch (const nlohmann::json::exception& e) {
        return {json{{"schema", kSchema}, {"error", e.what()}}, 2};
    }
}

}  // namespace rota

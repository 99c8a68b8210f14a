// Acceptance suite: one line per criterion, exact equalities throughout.
// Run with the CLI binary path as the last argument; pass --write-golden to
// regenerate the closed-form golden tables under tests/golden/.

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "rota/birkhoff.hpp"
#include "rota/commands.hpp"
#include "rota/errors.hpp"
#include "rota/urb.hpp"

using namespace rota;

namespace {

int failures = 0;
std::string cli_binary;
bool write_golden = false;
std::string golden_dir = "tests/golden";

void report(const std::string& name, bool pass, const std::string& note = "") {
    std::cout << name << ": " << (pass ? "PASS" : "FAIL");
    if (!note.empty()) std::cout << "  [" << note << "]";
    std::cout << "\n";
    if (!pass) ++failures;
}

FreeVec tmono(int d) { return FreeVec::unit(laurent_key(d)); }

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

// ---------------------------------------------------------------- AC-1

void ac1() {
    bool pass = true;
    std::string note;

    const auto check_all_pairs = [&](const RBAlgebra::Ptr& r,
                                     const std::vector<std::string>& gens) {
        for (const auto& x : gens)
            for (const auto& y : gens)
                if (!rb_check(*r, FreeVec::unit(x), FreeVec::unit(y))) {
                    pass = false;
                    note = r->name() + " fails at (" + x + ", " + y + ")";
                    return;
                }
    };

    const auto lau = RBAlgebra::laurent(24);
    check_all_pairs(lau, lau->generator_keys());  // t^i, |i| <= 6

    const auto div = RBAlgebra::divided();
    check_all_pairs(div, div->generator_keys());  // u_k, k <= 6

    for (long l : {1L, -1L, 2L})
        check_all_pairs(RBAlgebra::scalar("k", rat(l), rat(-l)), {"1"});

    // 2x2 matrix instance over the Laurent algebra, generator pairs sampled
    // over matrix units with monomial entries
    const auto m2 = RBAlgebra::matrix_over(RBAlgebra::laurent(24, rat(-1), "t", 2), 2);
    check_all_pairs(m2, m2->generator_keys());

    // 2x2 by 2x3 rectangular identity over seeded monomial fills
    std::mt19937_64 rng(101);
    const std::vector<FreeVec> entries{tmono(-1), tmono(0), tmono(1)};
    for (int trial = 0; trial < 50 && pass; ++trial) {
        MatrixOverA x(2, 2), y(2, 3);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) x.at(i, j) = entries[pick(rng, 3)];
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 3; ++j) y.at(i, j) = entries[pick(rng, 3)];
        if (!matrix_rb_product_check(*lau, x, y)) {
            pass = false;
            note = "rectangular identity fails";
        }
    }

    const auto prod = product_rba(RBAlgebra::scalar("a", rat(-1), rat(0)),
                                  RBAlgebra::scalar("b", rat(-1), rat(1)));
    check_all_pairs(prod, prod->generator_keys());

    report("AC-1 Rota-Baxter law suites", pass, note);
}

// ---------------------------------------------------------------- AC-2

void ac2() {
    bool pass = true;
    std::string note;

    const std::vector<RBAlgebra::Ptr> instances{
        RBAlgebra::laurent(64),
        RBAlgebra::divided(),
        RBAlgebra::scalar("k(1)", rat(1), rat(-1)),
        RBAlgebra::scalar("k(-1)", rat(-1), rat(1)),
        RBAlgebra::scalar("k(2)", rat(2), rat(-2)),
        RBAlgebra::matrix_over(RBAlgebra::laurent(64, rat(-1), "t", 2), 2),
        product_rba(RBAlgebra::scalar("a", rat(-1), rat(0)),
                    RBAlgebra::scalar("b", rat(-1), rat(1)))};

    for (const auto& r : instances) {
        const auto gens = r->generator_keys();
        for (const auto& g : gens)
            if (!urb_relation_check(*r, FreeVec::unit(g))) {
                pass = false;
                note = "relation fails for " + g + " in " + r->name();
            }
        std::mt19937_64 rng(202);
        for (int i = 0; i < 500; ++i) {
            const URBElement u = sample_urb(rng, gens), v = sample_urb(rng, gens),
                             w = sample_urb(rng, gens);
            if (!urb_associativity_check(*r, u, v, w)) {
                pass = false;
                note = "associativity fails in " + r->name();
                break;
            }
        }
    }

    if (urb_dimension(*RBAlgebra::scalar("k", rat(1), rat(-1))) != 2) pass = false;
    if (urb_dimension(*product_rba(RBAlgebra::scalar("a", rat(-1), rat(0)),
                                   RBAlgebra::scalar("b", rat(-1), rat(1)))) != 6)
        pass = false;
    if (urb_dimension(*RBAlgebra::scalar_product("k3", rat(-1), {rat(0), rat(1), rat(1)})) !=
        12)
        pass = false;

    report("AC-2 operator ring structure", pass, note);
}

// ---------------------------------------------------------------- AC-3

json closed_form_laurent() {
    json pairs = json::array();
    for (int i = -3; i <= 3; ++i)
        for (int j = -3; j <= 3; ++j)
            for (int k = -3; k <= 3; ++k)
                for (int l = -3; l <= 3; ++l) {
                    URBElement expected =
                        j + k < 0 ? urb_pure(laurent_key(i + j + k), laurent_key(l))
                                  : urb_pure(laurent_key(i), laurent_key(j + k + l));
                    pairs.push_back(
                        json{{"left", tensor_key_str({laurent_key(i), laurent_key(j)})},
                             {"right", tensor_key_str({laurent_key(k), laurent_key(l)})},
                             {"product", urb_to_json(expected)}});
                }
    return json{{"table", "laurent pole/regular branches"}, {"pairs", std::move(pairs)}};
}

json closed_form_p_zero(long lambda) {
    json pairs = json::array();
    for (int i = -2; i <= 2; ++i)
        for (int j = -2; j <= 2; ++j)
            for (int k = -2; k <= 2; ++k)
                for (int l = -2; l <= 2; ++l) {
                    URBElement expected =
                        urb_pure(laurent_key(i), laurent_key(j + k + l), rat(-lambda));
                    pairs.push_back(
                        json{{"left", tensor_key_str({laurent_key(i), laurent_key(j)})},
                             {"right", tensor_key_str({laurent_key(k), laurent_key(l)})},
                             {"product", urb_to_json(expected)}});
                }
    return json{{"table", "P = 0 at weight " + std::to_string(lambda)},
                {"pairs", std::move(pairs)}};
}

json closed_form_p_identity() {
    json pairs = json::array();
    for (int i = -2; i <= 2; ++i)
        for (int j = -2; j <= 2; ++j)
            for (int k = -2; k <= 2; ++k)
                for (int l = -2; l <= 2; ++l) {
                    URBElement expected = urb_pure(laurent_key(i + j + k), laurent_key(l));
                    pairs.push_back(
                        json{{"left", tensor_key_str({laurent_key(i), laurent_key(j)})},
                             {"right", tensor_key_str({laurent_key(k), laurent_key(l)})},
                             {"product", urb_to_json(expected)}});
                }
    return json{{"table", "P = Id at weight -1"}, {"pairs", std::move(pairs)}};
}

json closed_form_divided_identity() {
    json pairs = json::array();
    for (unsigned long m1 = 0; m1 <= 3; ++m1)
        for (unsigned long n1 = 0; n1 <= 3; ++n1)
            for (unsigned long m2 = 0; m2 <= 3; ++m2)
                for (unsigned long n2 = 0; n2 <= 3; ++n2) {
                    const URBElement expected =
                        urb_pure(divided_key(m1 + n1 + m2), divided_key(n2),
                                 Rational(multinomial3(m1, n1, m2)));
                    pairs.push_back(json{
                        {"left", tensor_key_str({divided_key(m1), divided_key(n1)})},
                        {"right", tensor_key_str({divided_key(m2), divided_key(n2)})},
                        {"product", urb_to_json(expected)}});
                }
    return json{{"table", "divided powers, identity operator: multinomial form"},
                {"pairs", std::move(pairs)}};
}

json closed_form_divided_shift() {
    json pairs = json::array();
    for (unsigned long m1 = 0; m1 <= 3; ++m1)
        for (unsigned long n1 = 0; n1 <= 3; ++n1)
            for (unsigned long m2 = 0; m2 <= 3; ++m2)
                for (unsigned long n2 = 0; n2 <= 3; ++n2) {
                    const Rational c0 = Rational(binomial(n1 + m2, n1));
                    URBElement expected =
                        urb_pure(divided_key(m1 + n1 + m2 + 1), divided_key(n2),
                                 c0 * Rational(binomial(m1 + n1 + m2 + 1, m1)));
                    expected += urb_pure(divided_key(m1), divided_key(n1 + m2 + n2 + 1),
                                         -c0 * Rational(binomial(n1 + m2 + n2 + 1, n2)));
                    pairs.push_back(json{
                        {"left", tensor_key_str({divided_key(m1), divided_key(n1)})},
                        {"right", tensor_key_str({divided_key(m2), divided_key(n2)})},
                        {"product", urb_to_json(expected)}});
                }
    return json{{"table", "divided powers, shift operator: two-branch form"},
                {"pairs", std::move(pairs)}};
}

json compute_table_via_urb(const RBAlgebra& r, const json& closed) {
    json pairs = json::array();
    for (const auto& entry : closed.at("pairs")) {
        const TensorKey left = tensor_key_parse(entry.at("left").get<std::string>());
        const TensorKey right = tensor_key_parse(entry.at("right").get<std::string>());
        const URBElement prod =
            urb_mul(r, urb_pure(left.left, left.right), urb_pure(right.left, right.right));
        pairs.push_back(json{{"left", entry.at("left")}, {"right", entry.at("right")},
                             {"product", urb_to_json(prod)}});
    }
    return json{{"table", closed.at("table")}, {"pairs", std::move(pairs)}};
}

void ac3() {
    bool pass = true;
    std::string note;

    struct Case {
        std::string file;
        json closed;
        RBAlgebra::Ptr algebra;
    };
    const std::vector<Case> cases{
        {"laurent_branches.json", closed_form_laurent(), RBAlgebra::laurent(24)},
        {"p_zero_weight2.json", closed_form_p_zero(2),
         RBAlgebra::zero_operator(RBAlgebra::laurent(24), rat(2))},
        {"p_identity.json", closed_form_p_identity(),
         RBAlgebra::identity_operator(RBAlgebra::laurent(24))},
        {"divided_identity.json", closed_form_divided_identity(),
         RBAlgebra::identity_operator(RBAlgebra::divided())},
        {"divided_shift.json", closed_form_divided_shift(), RBAlgebra::divided()}};

    for (const auto& c : cases) {
        const json actual = compute_table_via_urb(*c.algebra, c.closed);
        if (actual != c.closed) {
            pass = false;
            note = "product table deviates from the closed form: " + c.file;
            continue;
        }
        const std::string path = golden_dir + "/" + c.file;
        if (write_golden) {
            std::ofstream out(path);
            out << c.closed.dump(1) << "\n";
        } else {
            std::ifstream in(path);
            if (!in) {
                pass = false;
                note = "missing golden file " + path;
                continue;
            }
            std::stringstream buffer;
            buffer << in.rdbuf();
            if (buffer.str() != c.closed.dump(1) + "\n") {
                pass = false;
                note = "golden file mismatch: " + c.file;
            }
        }
    }

    // R[t]/<t^2> at P = 0, weight 0: the generator squares to zero
    const auto flat = RBAlgebra::zero_operator(RBAlgebra::laurent(24), rat(0));
    if (!urb_mul(*flat, urb_Q(*flat), urb_Q(*flat)).zero()) {
        pass = false;
        note = "Q^2 != 0 at P = 0, weight 0";
    }

    // zero-divisor identity at P = Id over monomials
    const auto id_op = RBAlgebra::identity_operator(RBAlgebra::laurent(24));
    for (int r = -2; r <= 2 && pass; ++r) {
        if (r == 0) continue;  // 1 (x) 1 - 1 (x) 1 = 0 trivially
        URBElement zdiv = urb_pure(laurent_key(0), laurent_key(r));
        zdiv -= urb_pure(laurent_key(r), laurent_key(0));
        for (int s1 = -2; s1 <= 2 && pass; ++s1)
            for (int s2 = -2; s2 <= 2; ++s2)
                if (!urb_mul(*id_op, zdiv, urb_pure(laurent_key(s1), laurent_key(s2)))
                         .zero()) {
                    pass = false;
                    note = "zero-divisor identity fails";
                    break;
                }
    }

    report("AC-3 closed-form specializations (golden tables)", pass, note);
}

// ---------------------------------------------------------------- AC-4/5

struct Seeded {
    RBAlgebra::Ptr algebra;
    RBModule module;
};

Seeded make_seeded_module(unsigned long long seed) {
    std::mt19937_64 rng(seed);
    const long lambdas[] = {1, -1, 2};
    const long lambda = lambdas[rng() % 3];
    const int d = 1 + static_cast<int>(rng() % 3);
    std::vector<Rational> ps;
    for (int i = 0; i < d; ++i) ps.push_back(rng() % 2 ? rat(0) : rat(-lambda));
    const auto algebra = RBAlgebra::scalar_product("R" + std::to_string(seed), rat(lambda),
                                                   std::move(ps));

    const int n = 1 + static_cast<int>(rng() % 4);
    std::vector<std::string> carrier;
    for (int i = 0; i < n; ++i) carrier.push_back("m" + std::to_string(i + 1));

    // block assignment for the idempotent actions and a diagonal operator
    std::vector<int> block(static_cast<std::size_t>(n));
    for (auto& b : block) b = static_cast<int>(rng() % d);
    MatrixQ diag_p = MatrixQ::Constant(n, n, rat(0));
    for (int i = 0; i < n; ++i)
        if (rng() % 2) diag_p(i, i) = rat(-lambda);

    MatrixQ g(n, n);
    std::optional<MatrixQ> ginv;
    do {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) g(i, j) = rat(static_cast<long>(rng() % 5) - 2);
        ginv = inverse(g);
    } while (!ginv);

    std::map<std::string, MatrixQ> action;
    const auto basis = algebra->basis();
    for (int k = 0; k < d; ++k) {
        MatrixQ proj = MatrixQ::Constant(n, n, rat(0));
        for (int i = 0; i < n; ++i)
            if (block[static_cast<std::size_t>(i)] == k) proj(i, i) = rat(1);
        action[basis[static_cast<std::size_t>(k)]] = g * proj * *ginv;
    }
    MatrixQ p = g * diag_p * *ginv;
    return {algebra, RBModule::matrix_module(algebra, carrier, std::move(action), p)};
}

void ac4() {
    bool pass = true;
    std::string note;
    for (unsigned long long seed = 1; seed <= 10 && pass; ++seed) {
        const Seeded s = make_seeded_module(seed);
        const auto gens = s.algebra->generator_keys();
        std::mt19937_64 rng(404 + seed);

        // Q acts exactly as p on every carrier basis vector
        for (const auto& x : s.module.carrier())
            if (!(urb_act(*s.algebra, s.module, urb_Q(*s.algebra), FreeVec::unit(x)) ==
                  s.module.apply_p(FreeVec::unit(x)))) {
                pass = false;
                note = "Q does not act as p (seed " + std::to_string(seed) + ")";
            }

        for (int i = 0; i < 200 && pass; ++i) {
            const URBElement u = sample_urb(rng, gens), v = sample_urb(rng, gens);
            FreeVec x;
            x.add(s.module.carrier()[pick(rng, s.module.carrier().size())],
                  rat(static_cast<long>(rng() % 7) - 3));
            if (!(urb_act(*s.algebra, s.module, urb_mul(*s.algebra, u, v), x) ==
                  urb_act(*s.algebra, s.module, u,
                          urb_act(*s.algebra, s.module, v, x)))) {
                pass = false;
                note = "action not associative (seed " + std::to_string(seed) + ")";
            }
        }
    }
    report("AC-4 module category equivalence", pass, note);
}

void ac5() {
    bool pass = true;
    std::string note;
    for (unsigned long long seed = 1; seed <= 10 && pass; ++seed) {
        const Seeded s = make_seeded_module(seed);
        const Rational lambda = s.algebra->weight();
        const auto split = module_split(s.module);
        if (split.minus_lambda.rows() + split.zero.rows() != s.module.dim()) {
            pass = false;
            note = "eigenspace dimensions do not sum (seed " + std::to_string(seed) + ")";
        }
        if (!split.stable) {
            pass = false;
            note = split.report;
        }
        if (!exact_eq(split_reconstruct({split.minus_lambda, split.zero}, lambda),
                      s.module.p_matrix())) {
            pass = false;
            note = "reconstruction deviates (seed " + std::to_string(seed) + ")";
        }

        // dual swap as subspace equality in echelon form
        const auto dual_split = module_split(dual_module(s.module));
        if (!exact_eq(dual_split.minus_lambda, split.zero) ||
            !exact_eq(dual_split.zero, split.minus_lambda)) {
            pass = false;
            note = "dual eigenspace swap fails (seed " + std::to_string(seed) + ")";
        }
    }

    // the Jordan block is rejected
    try {
        const auto k = RBAlgebra::scalar("k", rat(1), rat(-1));
        MatrixQ jordan = MatrixQ::Constant(2, 2, rat(0));
        jordan(0, 1) = rat(1);
        const auto m = RBModule::matrix_module(k, {"m1", "m2"},
                                               {{"1", MatrixQ::Identity(2, 2)}}, jordan,
                                               Audit::defer);
        module_split(m);
        pass = false;
        note = "Jordan block was not rejected";
    } catch (const NotQuasiIdempotent&) {
    }

    report("AC-5 regular-singular decomposition", pass, note);
}

// ---------------------------------------------------------------- AC-6

void ac6() {
    bool pass = true;
    std::string note;
    const auto k_zero = RBAlgebra::scalar("k-zero", rat(-1), rat(0));
    const auto k_id = RBAlgebra::scalar("k-id", rat(-1), rat(1));

    const long vals[] = {-1, 0, 1};
    int accepted = 0;
    for (long p1 : vals)
        for (long p2 : vals)
            for (long p12 : vals)
                for (long p21 : vals) {
                    // the full pipeline: both factors must be modules, then
                    // the cross conditions (a)/(b)
                    bool accept = true;
                    try {
                        const auto m1 = RBModule::matrix_module(
                            k_zero, {"a1"}, {{"1", MatrixQ::Identity(1, 1)}},
                            MatrixQ::Constant(1, 1, rat(p1)));
                        const auto m2 = RBModule::matrix_module(
                            k_id, {"b1"}, {{"1", MatrixQ::Identity(1, 1)}},
                            MatrixQ::Constant(1, 1, rat(p2)));
                        accept = product_module_conditions(
                                     m1, m2, MatrixQ::Constant(1, 1, rat(p12)),
                                     MatrixQ::Constant(1, 1, rat(p21)))
                                     .conditions_ok;
                    } catch (const AxiomViolation&) {
                        accept = false;
                    }

                    const bool valid_factors =
                        (p1 == 0 || p1 == 1) && (p2 == 0 || p2 == 1);
                    // p12(M2) in M1(0), p21(M1) in M2(1), p12 p21 = p21 p12 = 0
                    const bool expected = valid_factors && (p1 * p12 == 0) &&
                                          ((p2 - 1) * p21 == 0) && (p12 * p21 == 0);
                    if (accept != expected) {
                        pass = false;
                        note = "quadruple (" + std::to_string(p1) + "," + std::to_string(p2) +
                               "," + std::to_string(p12) + "," + std::to_string(p21) +
                               ") accept=" + std::to_string(accept);
                    }
                    if (accept) ++accepted;
                }
    if (accepted == 0) pass = false;

    // kernel of the projection onto the factor rings
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
    if (kernel_dim != 2) {
        pass = false;
        note = "kernel dimension " + std::to_string(kernel_dim);
    }

    report("AC-6 product-algebra structure", pass, note);
}

// ---------------------------------------------------------------- AC-7

void ac7() {
    bool pass = true;
    std::string note;
    const auto h = Coalgebra::rooted_trees(3);
    const auto a = RBAlgebra::laurent(12, rat(-1), "eps");

    std::map<std::string, FreeVec> tree_values;
    for (const auto& key : h->basis())
        for (const auto& t : forest_trees(key))
            tree_values[t] = FreeVec::unit(laurent_key(-forest_degree(t), "eps"));
    const ConvMap phi = ConvMap::character_on_trees(h, a, tree_values);
    const auto factors = birkhoff_factorize(phi);

    const ConvMap recomposed = convolution_mul(factors.minus, phi);
    for (const auto& key : h->basis()) {
        if (!(recomposed.value(key) == factors.plus.value(key))) {
            pass = false;
            note = "factorization not exact at " + key;
        }
        if (key != "1") {
            if (!(a->apply_P(factors.minus.value(key)) == factors.minus.value(key))) {
                pass = false;
                note = "counterterm not polar at " + key;
            }
            if (!a->apply_P(factors.plus.value(key)).zero()) {
                pass = false;
                note = "renormalized part has a pole at " + key;
            }
        }
    }
    // multiplicativity on all in-degree products
    for (const auto& x : h->basis())
        for (const auto& y : h->basis()) {
            if (forest_degree(x) + forest_degree(y) > 3) continue;
            const FreeVec xy = h->mul(FreeVec::unit(x), FreeVec::unit(y));
            if (!(factors.minus.apply(xy) ==
                  a->mul(factors.minus.value(x), factors.minus.value(y))) ||
                !(factors.plus.apply(xy) ==
                  a->mul(factors.plus.value(x), factors.plus.value(y)))) {
                pass = false;
                note = "factor not multiplicative at (" + x + ", " + y + ")";
            }
        }

    // module-level factorization with psi(1) = eps^-1 in the regular module
    const auto v = RBModule::regular(a);
    const ModuleMap psi = phi_linear_map(phi, v, FreeVec::unit(laurent_key(-1, "eps")));
    const auto mod_factors = module_birkhoff(phi, v, psi);
    const ModuleMap recomposed_mod = conv_module_action(factors.minus, v, psi);
    for (const auto& key : h->basis())
        if (!(recomposed_mod.value(key) == mod_factors.plus.value(key))) {
            pass = false;
            note = "module factorization not exact at " + key;
        }

    // functoriality along a precision truncation
    try {
        const auto narrow = RBAlgebra::laurent(6, rat(-1), "eps");
        if (!birkhoff_functorial_check(RBHom::laurent_truncation(a, narrow), phi)) {
            pass = false;
            note = "truncation functoriality fails";
        }
    } catch (const Error& e) {
        pass = false;
        note = e.what();
    }

    report("AC-7 algebraic Birkhoff factorization", pass, note);
}

// ---------------------------------------------------------------- AC-8

void ac8() {
    const auto m = Comodule::standard(2);
    const auto a = RBAlgebra::laurent(32);
    std::mt19937_64 rng(808);

    const auto rand_values = [&] {
        std::map<std::string, FreeVec> values;
        for (const auto& key : m.coalgebra()->basis()) {
            FreeVec v;
            for (int i = 0; i < 2; ++i)
                v.add(laurent_key(static_cast<int>(rng() % 9) - 4),
                      rat(static_cast<long>(rng() % 7) - 3));
            if (!v.zero()) values[key] = std::move(v);
        }
        return values;
    };

    bool intertwine = true, reversal_right = true, reversal_left = true, module_law = true;
    for (int trial = 0; trial < 100; ++trial) {
        const ConvMap f(m.coalgebra(), a, rand_values(), false, Audit::defer);
        const ConvMap g(m.coalgebra(), a, rand_values(), false, Audit::defer);
        if (!(phi_map(m, conv_P(f)) == end_Q(phi_map(m, f)))) intertwine = false;
        const EndAM composed_product = phi_map(m, convolution_mul(f, g));
        // the reversal phi(f*g) = phi(g) o phi(f) in right-module
        // composition, x (g o h) = (x g) h, i.e. phi(g) applied first:
        if (!(composed_product == compose(phi_map(m, f), phi_map(m, g))))
            reversal_right = false;
        // the same equation read with classical left composition instead
        // contradicts the homomorphism property whenever the convolution
        // does not commute:
        if (!(composed_product == compose(phi_map(m, g), phi_map(m, f))))
            reversal_left = false;

        const EndAM e = phi_map(m, f);
        TensorColumn x;
        x["E" + std::to_string(1 + rng() % 2)] =
            FreeVec::unit(laurent_key(static_cast<int>(rng() % 9) - 4));
        if (!end_module_check(e, x)) module_law = false;
    }

    std::cout << "  AC-8a operator intertwining phi(P(f)) = Q(phi(f)): "
              << (intertwine ? "PASS" : "FAIL") << "\n";
    std::cout << "  AC-8b reversal phi(f*g) = phi(g) o phi(f), right-module composition: "
              << (reversal_right ? "PASS" : "FAIL")
              << "\n        (read with classical left composition the same equation "
              << (reversal_left ? "also holds" : "fails") << " on generic pairs)\n";
    std::cout << "  AC-8c module identity on M (x) A: " << (module_law ? "PASS" : "FAIL")
              << "\n";
    report("AC-8 endomorphism Rota-Baxter algebra",
           intertwine && reversal_right && module_law);
}

// ---------------------------------------------------------------- AC-9

void ac9() {
    bool pass = true;
    std::string note;
    for (unsigned long long seed = 21; seed <= 25 && pass; ++seed) {
        const Seeded s = make_seeded_module(seed);
        const auto res = coinduce(RBHom::identity(s.algebra), s.module);
        if (res.module.dim() != s.module.dim()) {
            pass = false;
            note = "dimension changes (seed " + std::to_string(seed) + ")";
            break;
        }
        const auto inv = inverse(res.natural_map);
        if (!inv) {
            pass = false;
            note = "natural map singular (seed " + std::to_string(seed) + ")";
            break;
        }
        for (const auto& g : s.algebra->basis())
            if (!exact_eq(res.natural_map * s.module.action_matrix(g),
                          res.module.action_matrix(g) * res.natural_map))
                pass = false;
        if (!exact_eq(res.natural_map * s.module.p_matrix(),
                      res.module.p_matrix() * res.natural_map))
            pass = false;
        if (!pass) note = "natural map does not intertwine (seed " + std::to_string(seed) + ")";
    }
    report("AC-9 coinduction along the identity", pass, note);
}

// ---------------------------------------------------------------- AC-10

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void ac10() {
    if (cli_binary.empty()) {
        report("AC-10 CLI determinism", false, "no CLI binary path supplied");
        return;
    }
    bool pass = true;
    std::string note;

    const auto run = [&](const std::string& args) {
        return WEXITSTATUS(std::system((cli_binary + " " + args + " >/dev/null 2>&1").c_str()));
    };

    {
        std::ofstream out("/tmp/rota_ac10_ok.json");
        out << R"({"kind":"laurent","weight":"-1/1","precision":24})";
    }
    if (run("check --input /tmp/rota_ac10_ok.json --seed 5 --output /tmp/rota_ac10_a.json") !=
        0)
        pass = false, note = "passing check did not exit 0";
    if (run("check --input /tmp/rota_ac10_ok.json --seed 5 --output /tmp/rota_ac10_b.json") !=
        0)
        pass = false;
    if (slurp("/tmp/rota_ac10_a.json") != slurp("/tmp/rota_ac10_b.json") ||
        slurp("/tmp/rota_ac10_a.json").empty())
        pass = false, note = "check reports differ across runs";

    for (const char* name : {"hecke", "kernel", "zerodiv", "laurent", "divided"}) {
        const std::string n(name);
        if (run("demo " + n + " --output /tmp/rota_ac10_d1.json") != 0) pass = false;
        if (run("demo " + n + " --output /tmp/rota_ac10_d2.json") != 0) pass = false;
        if (slurp("/tmp/rota_ac10_d1.json") != slurp("/tmp/rota_ac10_d2.json") ||
            slurp("/tmp/rota_ac10_d1.json").empty())
            pass = false, note = "demo " + n + " not byte-identical";
    }

    {
        std::ofstream out("/tmp/rota_ac10_flip.json");
        out << R"({"kind":"laurent","weight":"1/1"})";
    }
    if (run("check --input /tmp/rota_ac10_flip.json") != 1)
        pass = false, note = "law violation did not exit 1";
    {
        std::ofstream out("/tmp/rota_ac10_bad.json");
        out << "{broken";
    }
    if (run("check --input /tmp/rota_ac10_bad.json") != 2)
        pass = false, note = "parse error did not exit 2";

    report("AC-10 CLI determinism and exit contract", pass, note);
}

}  // namespace

int main(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--write-golden")
            write_golden = true;
        else if (arg.rfind("--golden-dir=", 0) == 0)
            golden_dir = arg.substr(13);
        else
            cli_binary = arg;
    }

    ac1();
    ac2();
    ac3();
    ac4();
    ac5();
    ac6();
    ac7();
    ac8();
    ac9();
    ac10();

    if (failures == 0) {
        std::cout << "all acceptance criteria pass\n";
        return 0;
    }
    std::cout << failures << " criterion(s) failed\n";
    return 1;
}

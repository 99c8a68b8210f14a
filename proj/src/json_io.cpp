#include "rota/json_io.hpp"

#include "rota/errors.hpp"

namespace rota {

json freevec_to_json(const FreeVec& v) {
    json j = json::object();
    for (const auto& [k, c] : v.terms()) j[k] = rat_str(c);
    return j;
}

FreeVec freevec_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("vector must be an object");
    FreeVec v;
    for (const auto& [k, c] : j.items()) v.add(k, rat_parse(c.get<std::string>()));
    return v;
}

json tensorvec_to_json(const TensorVec& v) {
    json j = json::object();
    for (const auto& [k, c] : v.terms()) j[tensor_key_str(k)] = rat_str(c);
    return j;
}

TensorVec tensorvec_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("tensor vector must be an object");
    TensorVec v;
    for (const auto& [k, c] : j.items())
        v.add(tensor_key_parse(k), rat_parse(c.get<std::string>()));
    return v;
}

json matrix_to_json(const MatrixQ& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(rat_str(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

MatrixQ matrix_from_json(const json& j) {
    if (!j.is_array()) throw ParseError("matrix must be an array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = rows > 0 ? static_cast<Eigen::Index>(j[0].size()) : 0;
    MatrixQ m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        if (static_cast<Eigen::Index>(j[i].size()) != cols)
            throw ParseError("ragged matrix rows");
        for (Eigen::Index k = 0; k < cols; ++k)
            m(i, k) = rat_parse(j[i][k].get<std::string>());
    }
    return m;
}

json linmap_to_json(const LinearMap& f) {
    return json{{"domain", f.domain()}, {"codomain", f.codomain()},
                {"matrix", matrix_to_json(f.matrix())}};
}

LinearMap linmap_from_json(const json& j) {
    return LinearMap(j.at("domain").get<std::vector<std::string>>(),
                     j.at("codomain").get<std::vector<std::string>>(),
                     matrix_from_json(j.at("matrix")));
}

json laurent_to_json(const LaurentSeries& s) {
    json coeffs = json::array();
    for (const auto& c : s.coeffs()) coeffs.push_back(rat_str(c));
    return json{{"min_degree", s.min_degree()}, {"coeffs", std::move(coeffs)},
                {"precision", s.precision_order()}};
}

LaurentSeries laurent_from_json(const json& j) {
    std::vector<Rational> coeffs;
    for (const auto& c : j.at("coeffs")) coeffs.push_back(rat_parse(c.get<std::string>()));
    return LaurentSeries(j.at("min_degree").get<int>(), std::move(coeffs),
                         j.at("precision").get<int>());
}

json algebra_to_json(const RBAlgebra& r) {
    json j = json::object();
    j["weight"] = rat_str(r.weight());
    switch (r.kind()) {
        case RBAlgebra::Kind::laurent:
            j["kind"] = "laurent";
            j["precision"] = r.laurent_precision();
            j["symbol"] = r.laurent_symbol();
            break;
        case RBAlgebra::Kind::divided:
            j["kind"] = "divided";
            break;
        case RBAlgebra::Kind::finite: {
            const auto basis = r.basis();
            if (basis.size() == 1) {
                j["kind"] = "scalar";
                j["p"] = rat_str(r.apply_P(r.unit()).coeff(basis[0]));
            } else {
                j["kind"] = "scalar-product";
                json ps = json::array();
                for (const auto& k : basis)
                    ps.push_back(rat_str(r.apply_P(FreeVec::unit(k)).coeff(k)));
                j["p"] = std::move(ps);
            }
            break;
        }
        case RBAlgebra::Kind::matrix:
            j["kind"] = "matrix";
            j["size"] = r.matrix_size();
            j["inner"] = algebra_to_json(*r.inner());
            break;
        case RBAlgebra::Kind::product:
            j["kind"] = "product";
            j["left"] = algebra_to_json(*r.left());
            j["right"] = algebra_to_json(*r.right());
            break;
        default:
            j["kind"] = "view";
            j["base"] = algebra_to_json(*r.base());
            break;
    }
    return j;
}

RBAlgebra::Ptr algebra_from_json(const json& j, Audit audit) {
    const std::string kind = j.at("kind").get<std::string>();
    const Rational weight =
        j.contains("weight") ? rat_parse(j.at("weight").get<std::string>()) : Rational(-1);
    if (kind == "laurent") {
        const int precision = j.value("precision", LaurentSeries::kDefaultPrecision);
        const std::string symbol = j.value("symbol", std::string("t"));
        const int bound = j.value("generator_bound", 6);
        return RBAlgebra::laurent(precision, weight, symbol, bound, audit);
    }
    if (kind == "divided") {
        const unsigned long index_bound = j.value("index_bound", 64ul);
        const unsigned long bound = j.value("generator_bound", 6ul);
        return RBAlgebra::divided(index_bound, bound, audit);
    }
    if (kind == "scalar")
        return RBAlgebra::scalar("scalar", weight, rat_parse(j.at("p").get<std::string>()),
                                 audit);
    if (kind == "scalar-product") {
        std::vector<Rational> ps;
        for (const auto& c : j.at("p")) ps.push_back(rat_parse(c.get<std::string>()));
        return RBAlgebra::scalar_product("scalar-product", weight, std::move(ps), audit);
    }
    if (kind == "matrix")
        return RBAlgebra::matrix_over(algebra_from_json(j.at("inner"), audit),
                                      j.at("size").get<int>(), audit);
    if (kind == "product")
        return RBAlgebra::product(algebra_from_json(j.at("left"), audit),
                                  algebra_from_json(j.at("right"), audit), audit);
    throw UnknownInstance(kind);
}

json module_to_json(const RBModule& m) {
    json actions = json::object();
    for (const auto& k : m.algebra()->basis()) actions[k] = matrix_to_json(m.action_matrix(k));
    return json{{"algebra", m.algebra()->name()},
                {"carrier", m.carrier()},
                {"action", std::move(actions)},
                {"operator", matrix_to_json(m.p_matrix())}};
}

json urb_to_json(const URBElement& u) {
    return json{{"scalar", freevec_to_json(u.scalar)}, {"tensor", tensorvec_to_json(u.tensor)}};
}

URBElement urb_from_json(const json& j) {
    return {freevec_from_json(j.at("scalar")), tensorvec_from_json(j.at("tensor"))};
}

json coalgebra_to_json(const Coalgebra& h) {
    json j = json::object();
    j["name"] = h.name();
    j["basis"] = h.basis();
    json cop = json::object();
    for (const auto& k : h.basis()) cop[k] = tensorvec_to_json(h.coproduct(k));
    j["coproduct"] = std::move(cop);
    json eps = json::object();
    for (const auto& k : h.basis()) eps[k] = rat_str(h.counit(k));
    j["counit"] = std::move(eps);
    if (h.graded()) {
        json grading = json::object();
        for (const auto& k : h.basis()) grading[k] = h.degree(k);
        j["grading"] = std::move(grading);
    }
    if (h.has_product()) {
        j["unit"] = h.unit_key();
        json mult = json::object();
        for (const auto& a : h.basis())
            for (const auto& b : h.basis()) {
                try {
                    mult[tensor_key_str({a, b})] =
                        freevec_to_json(h.mul(FreeVec::unit(a), FreeVec::unit(b)));
                } catch (const DegreeTooLarge&) {
                    // products leaving the degree window stay unlisted
                }
            }
        j["product"] = std::move(mult);
    }
    return j;
}

Coalgebra::Ptr coalgebra_from_json(const json& j, Audit audit) {
    std::vector<std::string> basis = j.at("basis").get<std::vector<std::string>>();
    std::map<std::string, TensorVec> cop;
    for (const auto& [k, v] : j.at("coproduct").items()) cop[k] = tensorvec_from_json(v);
    std::map<std::string, Rational> eps;
    for (const auto& [k, v] : j.at("counit").items())
        eps[k] = rat_parse(v.get<std::string>());

    std::optional<std::map<std::string, int>> grading;
    if (j.contains("grading")) {
        std::map<std::string, int> g;
        for (const auto& [k, v] : j.at("grading").items()) g[k] = v.get<int>();
        grading = std::move(g);
    }
    std::optional<Coalgebra::MultTable> product;
    std::string unit_key;
    if (j.contains("product")) {
        Coalgebra::MultTable mult;
        for (const auto& [k, v] : j.at("product").items()) {
            const TensorKey key = tensor_key_parse(k);
            mult[{key.left, key.right}] = freevec_from_json(v);
        }
        product = std::move(mult);
        unit_key = j.at("unit").get<std::string>();
    }
    return Coalgebra::make(j.value("name", std::string("coalgebra")), std::move(basis),
                           std::move(cop), std::move(eps), std::move(grading),
                           std::move(product), std::move(unit_key), audit);
}

json convmap_to_json(const ConvMap& f) {
    json values = json::object();
    for (const auto& k : f.domain()->basis()) {
        const FreeVec v = f.value(k);
        if (!v.zero()) values[k] = freevec_to_json(v);
    }
    return json{{"domain", f.domain()->name()},
                {"codomain", algebra_to_json(*f.codomain())},
                {"character", f.is_character()},
                {"values", std::move(values)}};
}

ConvMap convmap_from_json(const json& j, Coalgebra::Ptr domain, RBAlgebra::Ptr codomain,
                          Audit audit) {
    std::map<std::string, FreeVec> values;
    for (const auto& [k, v] : j.at("values").items()) values[k] = freevec_from_json(v);
    return ConvMap(std::move(domain), std::move(codomain), std::move(values),
                   j.value("character", false), audit);
}

json parse_json(const std::string& text) try {
    return json::parse(text);
} catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what());
}

}  // namespace rota

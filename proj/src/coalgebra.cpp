#include "rota/coalgebra.hpp"

#include <algorithm>
#include <functional>
#include <tuple>

#include "rota/errors.hpp"

namespace rota {

namespace {

using Triple = std::tuple<std::string, std::string, std::string>;
using TripleVec = std::map<Triple, Rational>;

void triple_add(TripleVec& v, const Triple& k, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = v.emplace(k, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) v.erase(it);
    }
}

std::string matrix_entry_key(int i, int j) {
    return "E" + std::to_string(i) + "," + std::to_string(j);
}

}  // namespace

Coalgebra::Ptr Coalgebra::make(std::string name, std::vector<std::string> basis,
                               std::map<std::string, TensorVec> coproduct,
                               std::map<std::string, Rational> counit,
                               std::optional<std::map<std::string, int>> grading,
                               std::optional<MultTable> product, std::string unit_key,
                               Audit audit) {
    auto c = std::shared_ptr<Coalgebra>(new Coalgebra());
    c->name_ = std::move(name);
    c->basis_ = std::move(basis);
    c->coproduct_ = std::move(coproduct);
    c->counit_ = std::move(counit);
    c->grading_ = std::move(grading);
    c->product_ = std::move(product);
    c->unit_key_ = std::move(unit_key);

    if (c->grading_ && c->product_) {
        bool connected = true;
        for (const auto& k : c->basis_)
            if (c->degree(k) == 0 && k != c->unit_key_) connected = false;
        c->connected_graded_ = connected;
    }
    if (audit == Audit::check) c->verify();
    return c;
}

void Coalgebra::verify() const {
    for (const auto& h : basis_) {
        if (!coproduct_.count(h)) throw AxiomViolation("missing coproduct for " + h);
        const TensorVec& d = coproduct_.at(h);

        TripleVec left, right;
        for (const auto& [k, c] : d.terms()) {
            for (const auto& [k2, c2] : coproduct(k.left).terms())
                triple_add(left, {k2.left, k2.right, k.right}, c * c2);
            for (const auto& [k2, c2] : coproduct(k.right).terms())
                triple_add(right, {k.left, k2.left, k2.right}, c * c2);
        }
        if (!(left == right))
            throw AxiomViolation("coproduct not coassociative at " + h + " in " + name_);

        FreeVec from_left, from_right;
        for (const auto& [k, c] : d.terms()) {
            from_left.add(k.right, c * counit(k.left));
            from_right.add(k.left, c * counit(k.right));
        }
        if (!(from_left == FreeVec::unit(h)) || !(from_right == FreeVec::unit(h)))
            throw AxiomViolation("counit law fails at " + h + " in " + name_);

        if (grading_) {
            const int deg = degree(h);
            for (const auto& [k, c] : d.terms()) {
                (void)c;
                if (degree(k.left) + degree(k.right) != deg)
                    throw AxiomViolation("coproduct does not respect the grading at " + h);
            }
        }
    }
    if (product_) {
        if (!counit_.count(unit_key_))
            throw AxiomViolation("bialgebra unit key missing from the basis");
        for (const auto& a : basis_)
            for (const auto& b : basis_) {
                if (!product_->count({a, b})) continue;  // outside the degree window
                const FreeVec ab = mul(FreeVec::unit(a), FreeVec::unit(b));
                TensorVec expected;
                bool in_window = true;
                for (const auto& [ka, ca] : coproduct(a).terms())
                    for (const auto& [kb, cb] : coproduct(b).terms()) {
                        if (!product_->count({ka.left, kb.left}) ||
                            !product_->count({ka.right, kb.right})) {
                            in_window = false;
                            continue;
                        }
                        const FreeVec u = mul(FreeVec::unit(ka.left), FreeVec::unit(kb.left));
                        const FreeVec v =
                            mul(FreeVec::unit(ka.right), FreeVec::unit(kb.right));
                        TensorVec t = tensor_expand(u, v);
                        t *= ca * cb;
                        expected += t;
                    }
                if (in_window && !(coproduct_of(ab) == expected))
                    throw AxiomViolation("coproduct is not multiplicative at (" + a + ", " +
                                         b + ")");
                if (counit_of(ab) != counit(a) * counit(b))
                    throw AxiomViolation("counit is not multiplicative at (" + a + ", " + b +
                                         ")");
            }
    }
}

const TensorVec& Coalgebra::coproduct(const std::string& key) const {
    const auto it = coproduct_.find(key);
    if (it == coproduct_.end()) throw UnknownBasisKey(key);
    return it->second;
}

Rational Coalgebra::counit(const std::string& key) const {
    const auto it = counit_.find(key);
    if (it == counit_.end()) throw UnknownBasisKey(key);
    return it->second;
}

TensorVec Coalgebra::coproduct_of(const FreeVec& v) const {
    TensorVec out;
    for (const auto& [k, c] : v.terms()) {
        TensorVec t = coproduct(k);
        t *= c;
        out += t;
    }
    return out;
}

Rational Coalgebra::counit_of(const FreeVec& v) const {
    Rational out(0);
    for (const auto& [k, c] : v.terms()) out += c * counit(k);
    return out;
}

int Coalgebra::degree(const std::string& key) const {
    if (!grading_) throw Error("coalgebra " + name_ + " carries no grading");
    const auto it = grading_->find(key);
    if (it == grading_->end()) throw UnknownBasisKey(key);
    return it->second;
}

FreeVec Coalgebra::mul(const FreeVec& a, const FreeVec& b) const {
    if (!product_) throw Error("coalgebra " + name_ + " carries no product");
    FreeVec out;
    for (const auto& [ka, ca] : a.terms())
        for (const auto& [kb, cb] : b.terms()) {
            const auto it = product_->find({ka, kb});
            if (it == product_->end())
                throw DegreeTooLarge("product " + ka + " * " + kb +
                                     " leaves the degree window");
            FreeVec term = it->second;
            term *= ca * cb;
            out += term;
        }
    return out;
}

TensorVec Coalgebra::reduced_coproduct(const std::string& key) const {
    TensorVec d = coproduct(key);
    d.add({key, unit_key_}, rat(-1));
    d.add({unit_key_, key}, rat(-1));
    return d;
}

Coalgebra::Ptr Coalgebra::matrix(int n) {
    std::vector<std::string> basis;
    std::map<std::string, TensorVec> cop;
    std::map<std::string, Rational> eps;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            const std::string key = matrix_entry_key(i, j);
            basis.push_back(key);
            TensorVec d;
            for (int l = 1; l <= n; ++l)
                d.add({matrix_entry_key(i, l), matrix_entry_key(l, j)}, rat(1));
            cop[key] = std::move(d);
            eps[key] = i == j ? rat(1) : rat(0);
        }
    return make("M" + std::to_string(n), std::move(basis), std::move(cop), std::move(eps));
}

Coalgebra::Ptr Coalgebra::upper_triangular(int n) {
    std::vector<std::string> basis;
    std::map<std::string, TensorVec> cop;
    std::map<std::string, Rational> eps;
    for (int i = 1; i <= n; ++i)
        for (int j = i; j <= n; ++j) {
            const std::string key = matrix_entry_key(i, j);
            basis.push_back(key);
            TensorVec d;
            for (int l = i; l <= j; ++l)
                d.add({matrix_entry_key(i, l), matrix_entry_key(l, j)}, rat(1));
            cop[key] = std::move(d);
            eps[key] = i == j ? rat(1) : rat(0);
        }
    return make("M" + std::to_string(n) + "-upper", std::move(basis), std::move(cop),
                std::move(eps));
}

Coalgebra::Ptr Coalgebra::group_like() {
    return make("k[g]", {"g"}, {{"g", TensorVec{{{"g", "g"}, rat(1)}}}}, {{"g", rat(1)}});
}

std::vector<std::string> forest_trees(const std::string& key) {
    if (key == "1") return {};
    std::vector<std::string> trees;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < key.size(); ++i) {
        if (key[i] == '[') {
            if (depth == 0) start = i;
            ++depth;
        } else if (key[i] == ']') {
            --depth;
            if (depth < 0) throw UnknownBasisKey(key);
            if (depth == 0) trees.push_back(key.substr(start, i - start + 1));
        } else {
            throw UnknownBasisKey(key);
        }
    }
    if (depth != 0) throw UnknownBasisKey(key);
    return trees;
}

std::string forest_key(std::vector<std::string> trees) {
    if (trees.empty()) return "1";
    std::sort(trees.begin(), trees.end());
    std::string key;
    for (const auto& t : trees) key += t;
    return key;
}

int forest_degree(const std::string& key) {
    if (key == "1") return 0;
    return static_cast<int>(std::count(key.begin(), key.end(), '['));
}

namespace {

std::vector<std::string> trees_of_size(int n);

std::vector<std::string> forests_of_size(int n) {
    if (n == 0) return {"1"};
    std::vector<std::string> all_trees;
    for (int s = 1; s <= n; ++s)
        for (const auto& t : trees_of_size(s)) all_trees.push_back(t);
    std::sort(all_trees.begin(), all_trees.end());

    std::vector<std::string> current, result;
    const std::function<void(int, std::size_t)> rec = [&](int remaining,
                                                          std::size_t min_idx) {
        if (remaining == 0) {
            result.push_back(forest_key(current));
            return;
        }
        for (std::size_t i = min_idx; i < all_trees.size(); ++i) {
            const int size = forest_degree(all_trees[i]);
            if (size > remaining) continue;
            current.push_back(all_trees[i]);
            rec(remaining - size, i);
            current.pop_back();
        }
    };
    rec(n, 0);
    std::sort(result.begin(), result.end());
    result.erase(std::unique(result.begin(), result.end()), result.end());
    return result;
}

std::vector<std::string> trees_of_size(int n) {
    if (n <= 0) return {};
    if (n == 1) return {"[]"};
    std::vector<std::string> out;
    for (const auto& f : forests_of_size(n - 1)) {
        if (f == "1") continue;
        out.push_back("[" + f + "]");
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string merge_forests(const std::string& a, const std::string& b) {
    auto ts = forest_trees(a);
    for (const auto& t : forest_trees(b)) ts.push_back(t);
    return forest_key(std::move(ts));
}

}  // namespace

Coalgebra::Ptr Coalgebra::rooted_trees(int max_degree) {
    if (max_degree < 1 || max_degree > 5)
        throw DegreeTooLarge("rooted forests are supported up to 5 vertices, got " +
                             std::to_string(max_degree));

    std::vector<std::string> basis;
    std::map<std::string, int> grading;
    for (int n = 0; n <= max_degree; ++n)
        for (const auto& f : forests_of_size(n)) {
            basis.push_back(f);
            grading[f] = n;
        }

    std::map<std::string, TensorVec> tree_cop;
    std::map<std::string, TensorVec> forest_cop;

    const std::function<const TensorVec&(const std::string&)> forest_coproduct =
        [&](const std::string& f) -> const TensorVec& {
        const auto found = forest_cop.find(f);
        if (found != forest_cop.end()) return found->second;
        TensorVec d = TensorVec::unit({"1", "1"});
        for (const auto& t : forest_trees(f)) {
            const TensorVec& dt = tree_cop.at(t);
            TensorVec next;
            for (const auto& [ka, ca] : d.terms())
                for (const auto& [kb, cb] : dt.terms())
                    next.add({merge_forests(ka.left, kb.left),
                              merge_forests(ka.right, kb.right)},
                             ca * cb);
            d = std::move(next);
        }
        return forest_cop.emplace(f, std::move(d)).first->second;
    };

    // tree coproducts in increasing size: the branch recursion only touches
    // strictly smaller forests
    for (int n = 1; n <= max_degree; ++n)
        for (const auto& t : trees_of_size(n)) {
            const std::string branches = t.substr(1, t.size() - 2);
            const std::string inner = branches.empty() ? "1" : branches;
            const TensorVec& di = forest_coproduct(inner);
            TensorVec d;
            d.add({t, "1"}, rat(1));
            for (const auto& [k, c] : di.terms()) d.add({k.left, "[" + (k.right == "1" ? "" : k.right) + "]"}, c);
            tree_cop[t] = std::move(d);
        }

    std::map<std::string, TensorVec> cop;
    std::map<std::string, Rational> eps;
    MultTable mult;
    for (const auto& f : basis) {
        cop[f] = forest_coproduct(f);
        eps[f] = f == "1" ? rat(1) : rat(0);
    }
    for (const auto& a : basis)
        for (const auto& b : basis) {
            if (forest_degree(a) + forest_degree(b) > max_degree) continue;
            mult[{a, b}] = FreeVec::unit(merge_forests(a, b));
        }

    return make("forests<=" + std::to_string(max_degree), std::move(basis), std::move(cop),
                std::move(eps), std::move(grading), std::move(mult), "1");
}

Comodule Comodule::make(Coalgebra::Ptr coalgebra, std::vector<std::string> carrier,
                        std::map<std::string, TensorVec> coaction, Audit audit) {
    Comodule m;
    m.coalgebra_ = std::move(coalgebra);
    m.carrier_ = std::move(carrier);
    m.coaction_ = std::move(coaction);

    if (audit == Audit::check) {
        for (const auto& x : m.carrier_) {
            const TensorVec& d = m.coaction(x);
            TripleVec left, right;
            for (const auto& [k, c] : d.terms()) {
                for (const auto& [k2, c2] : m.coaction(k.left).terms())
                    triple_add(left, {k2.left, k2.right, k.right}, c * c2);
                for (const auto& [k2, c2] : m.coalgebra_->coproduct(k.right).terms())
                    triple_add(right, {k.left, k2.left, k2.right}, c * c2);
            }
            if (!(left == right))
                throw AxiomViolation("coaction not coassociative at " + x);
            FreeVec back;
            for (const auto& [k, c] : d.terms())
                back.add(k.left, c * m.coalgebra_->counit(k.right));
            if (!(back == FreeVec::unit(x)))
                throw AxiomViolation("coaction counit law fails at " + x);
        }
    }
    return m;
}

const TensorVec& Comodule::coaction(const std::string& key) const {
    const auto it = coaction_.find(key);
    if (it == coaction_.end()) throw UnknownBasisKey(key);
    return it->second;
}

Comodule Comodule::standard(int n) {
    auto h = Coalgebra::matrix(n);
    std::vector<std::string> carrier;
    std::map<std::string, TensorVec> coaction;
    for (int i = 1; i <= n; ++i) {
        const std::string key = "E" + std::to_string(i);
        carrier.push_back(key);
        TensorVec d;
        for (int l = 1; l <= n; ++l)
            d.add({"E" + std::to_string(l), matrix_entry_key(l, i)}, rat(1));
        coaction[key] = std::move(d);
    }
    return make(std::move(h), std::move(carrier), std::move(coaction));
}

Comodule Comodule::standard_triangular(int n) {
    auto h = Coalgebra::upper_triangular(n);
    std::vector<std::string> carrier;
    std::map<std::string, TensorVec> coaction;
    for (int i = 1; i <= n; ++i) {
        const std::string key = "E" + std::to_string(i);
        carrier.push_back(key);
        TensorVec d;
        for (int l = 1; l <= i; ++l)
            d.add({"E" + std::to_string(l), matrix_entry_key(l, i)}, rat(1));
        coaction[key] = std::move(d);
    }
    return make(std::move(h), std::move(carrier), std::move(coaction));
}

}  // namespace rota

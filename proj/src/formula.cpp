#include "homlab/formula.hpp"

#include <bit>
#include <deque>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include "homlab/fp_matrix.hpp"

namespace homlab {

namespace {

using NodeKey = std::tuple<FormulaKind, std::uint32_t, std::uint32_t, std::uint64_t, std::uint64_t>;

struct Interner {
    std::mutex mutex;
    std::deque<FormulaNode> nodes;
    std::map<NodeKey, const FormulaNode*> index;
};

Interner& interner() {
    static Interner in;
    return in;
}

std::uint64_t var_bit(std::uint32_t v) {
    if (v == 0 || v > 64) throw std::invalid_argument("variable index out of range: " + std::to_string(v));
    return std::uint64_t{1} << (v - 1);
}

Formula make(FormulaKind kind, std::uint32_t i, std::uint32_t j, Formula l, Formula r) {
    NodeKey key{kind, i, j, l ? l->id : 0, r ? r->id : 0};
    auto& in = interner();
    std::lock_guard<std::mutex> lock(in.mutex);
    auto it = in.index.find(key);
    if (it != in.index.end()) return it->second;
    FormulaNode node{kind, i, j, l, r, in.nodes.size() + 1, 0, 0};
    switch (kind) {
    case FormulaKind::truth: break;
    case FormulaKind::eq:
    case FormulaKind::edge:
        node.free_vars = var_bit(i) | var_bit(j);
        node.max_var = std::max(i, j);
        break;
    case FormulaKind::negation:
        node.free_vars = l->free_vars;
        node.max_var = l->max_var;
        break;
    case FormulaKind::conjunction:
    case FormulaKind::disjunction:
        node.free_vars = l->free_vars | r->free_vars;
        node.max_var = std::max(l->max_var, r->max_var);
        break;
    case FormulaKind::mod_exists:
        node.free_vars = l->free_vars & ~var_bit(i);
        node.max_var = std::max(i, l->max_var);
        break;
    }
    in.nodes.push_back(node);
    const FormulaNode* p = &in.nodes.back();
    in.index.emplace(key, p);
    return p;
}

} // namespace

Formula f_true() { return make(FormulaKind::truth, 0, 0, nullptr, nullptr); }
Formula f_false() { return f_not(f_true()); }
Formula f_eq(std::uint32_t i, std::uint32_t j) { return make(FormulaKind::eq, i, j, nullptr, nullptr); }
Formula f_edge(std::uint32_t i, std::uint32_t j) { return make(FormulaKind::edge, i, j, nullptr, nullptr); }
Formula f_not(Formula a) { return make(FormulaKind::negation, 0, 0, a, nullptr); }
Formula f_and(Formula a, Formula b) { return make(FormulaKind::conjunction, 0, 0, a, b); }
Formula f_or(Formula a, Formula b) { return make(FormulaKind::disjunction, 0, 0, a, b); }
Formula f_mod_exists(std::uint32_t count, std::uint32_t var, Formula body) {
    var_bit(var);
    return make(FormulaKind::mod_exists, var, count, body, nullptr);
}

Formula f_and_all(const std::vector<Formula>& parts) {
    if (parts.empty()) return f_true();
    Formula acc = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) acc = f_and(acc, parts[i]);
    return acc;
}

Formula f_or_all(const std::vector<Formula>& parts) {
    if (parts.empty()) return f_false();
    Formula acc = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) acc = f_or(acc, parts[i]);
    return acc;
}

void validate_formula(Formula phi, std::uint32_t max_var, std::uint32_t p) {
    require_prime(p);
    std::unordered_set<std::uint64_t> seen;
    std::vector<Formula> stack{phi};
    while (!stack.empty()) {
        Formula f = stack.back();
        stack.pop_back();
        if (!seen.insert(f->id).second) continue;
        if (f->max_var > max_var)
            throw std::invalid_argument("variable x" + std::to_string(f->max_var) + " exceeds the bound x" +
                                        std::to_string(max_var));
        if (f->kind == FormulaKind::mod_exists && f->j >= p)
            throw std::invalid_argument("counting quantifier E[" + std::to_string(f->j) + "] is not reduced mod " +
                                        std::to_string(p));
        if (f->left) stack.push_back(f->left);
        if (f->right) stack.push_back(f->right);
    }
}

namespace {

void print(Formula f, std::string& out) {
    switch (f->kind) {
    case FormulaKind::truth: out += "true"; return;
    case FormulaKind::eq: out += "x" + std::to_string(f->i) + "=x" + std::to_string(f->j); return;
    case FormulaKind::edge: out += "E(x" + std::to_string(f->i) + ",x" + std::to_string(f->j) + ")"; return;
    case FormulaKind::negation:
        out += "!";
        print(f->left, out);
        return;
    case FormulaKind::conjunction:
    case FormulaKind::disjunction:
        out += "(";
        print(f->left, out);
        out += f->kind == FormulaKind::conjunction ? "&" : "|";
        print(f->right, out);
        out += ")";
        return;
    case FormulaKind::mod_exists:
        out += "E[" + std::to_string(f->j) + "]x" + std::to_string(f->i) + ".";
        print(f->left, out);
        return;
    }
}

class Parser {
public:
    explicit Parser(std::string_view text) {
        for (char c : text)
            if (!std::isspace(static_cast<unsigned char>(c))) s_.push_back(c);
    }

    Formula parse() {
        Formula f = formula();
        if (pos_ != s_.size()) fail("trailing input");
        return f;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("formula parse error at offset " + std::to_string(pos_) + ": " + what);
    }
    bool eat(std::string_view tok) {
        if (s_.compare(pos_, tok.size(), tok) == 0) {
            pos_ += tok.size();
            return true;
        }
        return false;
    }
    void expect(std::string_view tok) {
        if (!eat(tok)) fail("expected '" + std::string(tok) + "'");
    }
    std::uint32_t number() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected a number");
        if (pos_ - start > 9) fail("number too large");
        return static_cast<std::uint32_t>(std::stoul(s_.substr(start, pos_ - start)));
    }
    std::uint32_t variable() {
        expect("x");
        std::uint32_t v = number();
        if (v == 0 || v > 64) fail("variable index must be in 1..64");
        return v;
    }
    Formula formula() {
        if (eat("true")) return f_true();
        if (eat("false")) return f_false();
        if (eat("!")) return f_not(formula());
        if (eat("E[")) {
            std::uint32_t c = number();
            expect("]");
            std::uint32_t v = variable();
            expect(".");
            return f_mod_exists(c, v, formula());
        }
        if (eat("E(")) {
            std::uint32_t a = variable();
            expect(",");
            std::uint32_t b = variable();
            expect(")");
            return f_edge(a, b);
        }
        if (eat("(")) {
            Formula l = formula();
            bool conj;
            if (eat("&")) conj = true;
            else if (eat("|")) conj = false;
            else fail("expected '&' or '|'");
            Formula r = formula();
            expect(")");
            return conj ? f_and(l, r) : f_or(l, r);
        }
        if (pos_ < s_.size() && s_[pos_] == 'x') {
            std::uint32_t a = variable();
            expect("=");
            std::uint32_t b = variable();
            return f_eq(a, b);
        }
        fail("unexpected input");
    }

    std::string s_;
    std::size_t pos_ = 0;
};

} // namespace

std::string to_string(Formula phi) {
    std::string out;
    print(phi, out);
    return out;
}

Formula parse_formula(std::string_view text) { return Parser(text).parse(); }

std::size_t dag_size(Formula phi) {
    std::unordered_set<std::uint64_t> seen;
    std::vector<Formula> stack{phi};
    while (!stack.empty()) {
        Formula f = stack.back();
        stack.pop_back();
        if (!seen.insert(f->id).second) continue;
        if (f->left) stack.push_back(f->left);
        if (f->right) stack.push_back(f->right);
    }
    return seen.size();
}

std::size_t quantifier_depth(Formula phi) {
    std::unordered_map<std::uint64_t, std::size_t> memo;
    auto rec = [&](auto&& self, Formula f) -> std::size_t {
        auto it = memo.find(f->id);
        if (it != memo.end()) return it->second;
        std::size_t d = 0;
        if (f->left) d = self(self, f->left);
        if (f->right) d = std::max(d, self(self, f->right));
        if (f->kind == FormulaKind::mod_exists) ++d;
        memo[f->id] = d;
        return d;
    };
    return rec(rec, phi);
}

namespace {

class Checker {
public:
    Checker(const Graph& g, std::uint32_t p, std::size_t vars) : g_(g), p_(p), vars_(vars) {}

    bool eval(Formula f, std::vector<Vertex>& a) {
        switch (f->kind) {
        case FormulaKind::truth: return true;
        case FormulaKind::eq: return a[f->i - 1] == a[f->j - 1];
        case FormulaKind::edge: return g_.has_edge(a[f->i - 1], a[f->j - 1]);
        case FormulaKind::negation: return !eval(f->left, a);
        default: break;
        }
        // Memoise composite nodes on the values of their free variables.
        std::uint64_t code = 0;
        const std::uint64_t base = g_.num_vertices() + 1;
        for (std::size_t v = 0; v < vars_; ++v)
            code = code * base + ((f->free_vars >> v & 1) ? a[v] + 1 : 0);
        const std::pair<std::uint64_t, std::uint64_t> key{f->id, code};
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        bool r = false;
        switch (f->kind) {
        case FormulaKind::conjunction: r = eval(f->left, a) && eval(f->right, a); break;
        case FormulaKind::disjunction: r = eval(f->left, a) || eval(f->right, a); break;
        case FormulaKind::mod_exists: {
            const Vertex saved = a[f->i - 1];
            std::uint64_t count = 0;
            for (Vertex v = 0; v < g_.num_vertices(); ++v) {
                a[f->i - 1] = v;
                count += eval(f->left, a);
            }
            a[f->i - 1] = saved;
            r = count % p_ == f->j % p_;
            break;
        }
        default: break;
        }
        memo_.emplace(key, r);
        return r;
    }

private:
    const Graph& g_;
    std::uint32_t p_;
    std::size_t vars_;
    struct KeyHash {
        std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& k) const {
            return std::hash<std::uint64_t>{}(k.first * 0x9e3779b97f4a7c15ULL ^ k.second);
        }
    };
    std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, bool, KeyHash> memo_;
};

} // namespace

bool model_check(Formula phi, const Graph& g, const Assignment& assignment, std::uint32_t p) {
    require_prime(p);
    std::size_t vars = std::max<std::size_t>(phi->max_var, assignment.size());
    std::vector<Vertex> a(vars, 0);
    for (std::size_t v = 0; v < vars; ++v) {
        bool bound = v < assignment.size() && assignment[v].has_value();
        if ((phi->free_vars >> v & 1) && !bound)
            throw std::invalid_argument("free variable x" + std::to_string(v + 1) + " is unbound");
        if (bound) {
            if (*assignment[v] >= g.num_vertices())
                throw std::invalid_argument("x" + std::to_string(v + 1) + " is assigned a non-vertex");
            a[v] = *assignment[v];
        }
    }
    long double states = 1;
    for (std::size_t v = 0; v < vars; ++v) states *= static_cast<long double>(g.num_vertices() + 1);
    if (states >= 1.8e19L) throw std::invalid_argument("model_check: too many variables for this graph size");
    Checker checker(g, p, vars);
    return checker.eval(phi, a);
}

bool model_check(Formula phi, const LabelledGraph& g, std::uint32_t p) {
    Assignment a(g.labels.begin(), g.labels.end());
    return model_check(phi, g.graph, a, p);
}

} // namespace homlab

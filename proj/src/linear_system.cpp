#include "homlab/linear_system.hpp"

#include <stdexcept>

namespace homlab {

namespace {

mpz_class mod(const mpz_class& x, const mpz_class& n) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), n.get_mpz_t());
    return r;
}

// Solutions of a x = b over Z_n (one cyclic factor); fills witness column.
mpz_class count_cyclic(const IntMatrix& a, const SmithForm& s, const std::vector<mpz_class>& b, std::uint64_t n_u64,
                       std::vector<mpz_class>& x) {
    const mpz_class n(static_cast<unsigned long>(n_u64));
    const std::size_t rows = a.rows(), cols = a.cols();
    // c = U b mod n
    std::vector<mpz_class> c(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        mpz_class acc = 0;
        for (std::size_t k = 0; k < rows; ++k) acc += s.u(i, k) * b[k];
        c[i] = mod(acc, n);
    }
    mpz_class count = 1;
    std::vector<mpz_class> y(cols, 0);
    for (std::size_t t = 0; t < rows; ++t) {
        mpz_class d = (t < cols) ? s.d(t, t) : mpz_class(0);
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());  // gcd(0, n) = n
        if (!mpz_divisible_p(c[t].get_mpz_t(), g.get_mpz_t())) {
            x.clear();
            return 0;
        }
        if (t >= cols) continue;
        count *= g;
        mpz_class ng = n / g;
        if (ng == 1) continue;
        mpz_class dg = mod(d / g, ng), inv;
        mpz_invert(inv.get_mpz_t(), dg.get_mpz_t(), ng.get_mpz_t());
        y[t] = mod((c[t] / g) * inv, ng);
    }
    for (std::size_t t = rows; t < cols; ++t) count *= n;
    x.assign(cols, 0);
    for (std::size_t i = 0; i < cols; ++i) {
        mpz_class acc = 0;
        for (std::size_t t = 0; t < cols; ++t) acc += s.v(i, t) * y[t];
        x[i] = mod(acc, n);
    }
    return count;
}

} // namespace

SolutionCount count_solutions(const IntMatrix& a, const GroupVector& b, const FiniteAbelianGroup& gamma) {
    if (b.size() != a.rows()) throw std::invalid_argument("count_solutions: right-hand side length mismatch");
    return count_solutions(a, smith_normal_form(a), b, gamma);
}

SolutionCount count_solutions(const IntMatrix& a, const SmithForm& snf, const GroupVector& b,
                              const FiniteAbelianGroup& gamma) {
    if (b.size() != a.rows()) throw std::invalid_argument("count_solutions: right-hand side length mismatch");
    for (const auto& e : b)
        if (!gamma.contains(e)) throw std::invalid_argument("count_solutions: entry is not a group element");
    SolutionCount out{1, std::nullopt};
    GroupVector witness(a.cols(), gamma.zero());
    for (std::size_t comp = 0; comp < gamma.rank(); ++comp) {
        std::vector<mpz_class> col(a.rows());
        for (std::size_t i = 0; i < a.rows(); ++i) col[i] = static_cast<unsigned long>(b[i][comp]);
        std::vector<mpz_class> x;
        mpz_class c = count_cyclic(a, snf, col, gamma.orders()[comp], x);
        if (c == 0) return {0, std::nullopt};
        out.count *= c;
        for (std::size_t j = 0; j < a.cols(); ++j) witness[j][comp] = x[j].get_ui();
    }
    if (!satisfies(a, witness, b, gamma)) throw std::logic_error("count_solutions: witness fails the system");
    out.witness = std::move(witness);
    return out;
}

bool satisfies(const IntMatrix& a, const GroupVector& x, const GroupVector& b, const FiniteAbelianGroup& gamma) {
    if (x.size() != a.cols() || b.size() != a.rows()) return false;
    for (std::size_t comp = 0; comp < gamma.rank(); ++comp) {
        const mpz_class n(static_cast<unsigned long>(gamma.orders()[comp]));
        for (std::size_t i = 0; i < a.rows(); ++i) {
            mpz_class acc = 0;
            for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * static_cast<unsigned long>(x[j][comp]);
            acc -= static_cast<unsigned long>(b[i][comp]);
            if (mod(acc, n) != 0) return false;
        }
    }
    return true;
}

} // namespace homlab

#pragma once

// The reflection automorphism r_a: solve for the level-n matrix from sampled
// J functions, and the periodicity / cluster / self-dual checks around it.

#include <random>
#include <vector>

#include "core.hpp"
#include "element.hpp"
#include "jfunctions.hpp"
#include "linalg.hpp"
#include "partition.hpp"

namespace descff {

struct ReflectionSolution {
    int level = 0;
    std::vector<Partition> basis;  // monomial basis of A_n
    Matrix<Cplx> matrix;           // M with J^{h_i}_a = sum_j M_ij J^{h_j}_{-a}
    double residual = 0;           // least-squares residual / rhs norm
    double condition = 0;          // sigma_max/sigma_min of the design matrix
    int samples = 0;
    std::vector<int> sampled_n;
};

// Least-squares solve of J^{h_i}_{N,a}(X) = sum_j M_ij J^{h_j}_{N,-a}(X) over
// sampled (N, X); the matrix is N-independent, so all N contribute rows.
inline ReflectionSolution solve_reflection(int level, Cplx a, const ModelParams& params,
                                           int n_max = -1, int samples_per_n = 4,
                                           uint64_t seed = 12345) {
    require_generic(a, params);
    ReflectionSolution sol;
    sol.level = level;
    sol.basis = enumerate_partitions(level);
    const int dim = (int)sol.basis.size();
    if (n_max < 0) n_max = level + 4;
    std::mt19937_64 rng(seed);

    std::vector<Element> monomials;
    for (const auto& lam : sol.basis)
        monomials.push_back(Element::monomial(lam, Partition{}, Cplx(1)));

    // N parity-matched to the level, N >= 1
    std::vector<int> ns;
    for (int n = (level % 2 == 0) ? 2 : 1; n <= n_max; n += 2) ns.push_back(n);
    sol.sampled_n = ns;

    std::vector<std::vector<Cplx>> lhs_rows(dim);
    std::vector<std::vector<Cplx>> design;
    for (int n : ns) {
        for (int s = 0; s < samples_per_n; ++s) {
            auto xs = sample_annulus(rng, n, params);
            std::vector<Cplx> row(dim);
            for (int j = 0; j < dim; ++j) row[j] = j_direct(monomials[j], -a, xs, params).value;
            design.push_back(row);
            for (int i = 0; i < dim; ++i)
                lhs_rows[i].push_back(j_direct(monomials[i], a, xs, params).value);
        }
    }
    const int rows = (int)design.size();
    if (rows < dim) throw domain_error("solve_reflection: not enough samples for the level");
    // column scaling keeps mixed-magnitude bases well conditioned
    std::vector<double> colscale(dim, 0.0);
    for (int r = 0; r < rows; ++r)
        for (int j = 0; j < dim; ++j) colscale[j] += std::norm(design[r][j]);
    for (int j = 0; j < dim; ++j) colscale[j] = colscale[j] > 0 ? std::sqrt(colscale[j]) : 1.0;
    Matrix<Cplx> A(rows, dim);
    for (int r = 0; r < rows; ++r)
        for (int j = 0; j < dim; ++j) A(r, j) = design[r][j] / colscale[j];
    auto sv = singular_values(A);
    sol.condition = sv.back() > 0 ? sv.front() / sv.back() : 1e300;
    sol.matrix = Matrix<Cplx>(dim, dim);
    double worst = 0;
    for (int i = 0; i < dim; ++i) {
        double res = 0, bn = 0;
        for (auto& v : lhs_rows[i]) bn += std::norm(v);
        double rhs_norm = std::sqrt(bn);
        auto x = least_squares(A, lhs_rows[i], &res);
        for (int j = 0; j < dim; ++j) sol.matrix(i, j) = x[j] / colscale[j];
        worst = std::max(worst, rhs_norm > 0 ? res / rhs_norm : res);
    }
    sol.residual = worst;
    sol.samples = rows;
    if (sol.condition > 1e12)
        throw numeric_error("solve_reflection: sampling is rank deficient; add samples or move a",
                            sol.condition);
    return sol;
}

// coefficients of an element in the monomial basis of its level (chiral, homogeneous)
inline std::vector<Cplx> coefficients_in_basis(const Element& e,
                                               const std::vector<Partition>& basis) {
    std::vector<Cplx> v(basis.size(), Cplx(0));
    for (auto& [key, coeff] : e.terms()) {
        bool found = false;
        for (size_t j = 0; j < basis.size(); ++j)
            if (key.first == basis[j] && key.second.empty()) {
                v[j] = coeff.coeff(0);
                found = true;
            }
        if (!found) throw domain_error("element does not live in the given level basis");
    }
    return v;
}

// apply the solved reflection to an element: coefficient vector v |-> M^T v
inline Element apply_reflection(const ReflectionSolution& sol, const Element& e) {
    auto v = coefficients_in_basis(e, sol.basis);
    Element out;
    for (size_t j = 0; j < sol.basis.size(); ++j) {
        Cplx c(0);
        for (size_t i = 0; i < sol.basis.size(); ++i) c += sol.matrix(i, j) * v[i];
        out.add_term(sol.basis[j], Partition{}, BasicRhoLaurent<double>(c));
    }
    return out;
}

// J^g_{N,a+1} = (-1)^N J^g_{N,a}
inline bool verify_periodicity(const Element& g, Cplx a, const std::vector<Cplx>& xs,
                               const ModelParams& params, double tol = 1e-10) {
    Cplx lhs = j_direct(g, a + 1.0, xs, params).value;
    Cplx rhs = j_direct(g, a, xs, params).value * ((xs.size() % 2 == 0) ? 1.0 : -1.0);
    double scale = std::max({std::abs(lhs), std::abs(rhs), 1.0});
    return std::abs(lhs - rhs) <= tol * scale;
}

// relative deviation of the cluster factorization at boost Lambda:
// J^{h hbar'}(X e^L, X') vs J^h(X e^L) J^{hbar'}(X')
inline double verify_cluster(const Element& h, const Element& hp, Cplx a,
                             const std::vector<Cplx>& xs, const std::vector<Cplx>& xsp,
                             double lambda, const ModelParams& params) {
    Element hbar = hp.bar();
    Element prod = h * hbar;
    std::vector<Cplx> boosted;
    for (const Cplx& x : xs) boosted.push_back(x * std::exp(lambda));
    std::vector<Cplx> joint = boosted;
    joint.insert(joint.end(), xsp.begin(), xsp.end());
    Cplx lhs = j_direct(prod, a, joint, params).value;
    Cplx f1 = j_direct(h, a, boosted, params).value;
    Cplx f2 = j_direct(hbar, a, xsp, params).value;
    return std::abs(lhs - f1 * f2) / (std::abs(f1 * f2) + 1e-300);
}

// the self-dual level-2 pair (h^(1,1)_a, h^(2)_a)
inline std::pair<Element, Element> self_dual_level2(Cplx a, const ModelParams& params) {
    return {h11_element(), h2_element(a, params.p)};
}

}  // namespace descff

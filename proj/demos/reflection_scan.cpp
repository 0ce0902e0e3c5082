// Solve the reflection matrix at levels 0..3 and print residuals and the
// involution defect across a range of a.

#include <cstdio>

#include <descff/descff.hpp>

using namespace descff;

int main() {
    ModelParams params;
    params.p = Cplx(0.31, 0);
    for (int lvl = 0; lvl <= 3; ++lvl) {
        for (double av : {0.08, 0.13, 0.21}) {
            Cplx a(av, 0);
            auto sol = solve_reflection(lvl, a, params);
            auto solm = solve_reflection(lvl, -a, params);
            Matrix<Cplx> prod = sol.matrix * solm.matrix;
            double inv = 0;
            for (size_t i = 0; i < sol.basis.size(); ++i)
                for (size_t j = 0; j < sol.basis.size(); ++j)
                    inv = std::max(inv, std::abs(prod(i, j) - (i == j ? 1.0 : 0.0)));
            std::printf("level %d  a=%.2f  residual %.2e  involution defect %.2e  cond %.1e\n",
                        lvl, av, sol.residual, inv, sol.condition);
        }
    }
    return 0;
}

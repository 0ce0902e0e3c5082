// Evaluate the level-2 self-dual descendants and print their two-particle
// J functions next to the closed forms.

#include <cstdio>

#include <descff/descff.hpp>

using namespace descff;

int main() {
    ModelParams params;
    params.p = Cplx(0.3, 0);
    Cplx a(0.2, 0);
    Cplx x1(0.9, 0.3), x2(1.4, -0.5);

    auto [h11, h2] = self_dual_level2(a, params);
    Cplx j11 = j_direct(h11, a, {x1, x2}, params).value;
    Cplx jh2 = j_direct(h2, a, {x1, x2}, params).value;
    Cplx ca = std::cos(kPi * a);

    std::printf("p = %.2f, a = %.2f, x = (%.2f%+.2fi, %.2f%+.2fi)\n", 0.3, 0.2, x1.real(),
                x1.imag(), x2.real(), x2.imag());
    std::printf("J^(1,1) = %.10f%+.10fi   4cos^2(pi a)(x1+x2)^2 = %.10f%+.10fi\n", j11.real(),
                j11.imag(), (4.0 * ca * ca * (x1 + x2) * (x1 + x2)).real(),
                (4.0 * ca * ca * (x1 + x2) * (x1 + x2)).imag());
    std::printf("J^(2)   = %.10f%+.10fi   4i x1 x2              = %.10f%+.10fi\n", jh2.real(),
                jh2.imag(), (Cplx(0, 4) * x1 * x2).real(), (Cplx(0, 4) * x1 * x2).imag());

    // the family is self-dual: J at (a) equals J at (-a) with the partner element
    Cplx dual = j_direct(h2_element(-a, params.p), -a, {x1, x2}, params).value;
    std::printf("reflection check |J^(h2_a)_a - J^(h2_-a)_-a| = %.2e\n", std::abs(jh2 - dual));
    return 0;
}

#pragma once

// Extended-precision instantiation of the core algebra (50 significant digits)
// for N >= 8 or near-degenerate parameters. Loaded on demand; the rest of the
// library stays double.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include "core.hpp"
#include "element.hpp"
#include "jfunctions.hpp"

namespace descff {

using ExtReal = boost::multiprecision::cpp_bin_float_50;
using ExtCplx = boost::multiprecision::cpp_complex_50;

template <> struct complex_of<ExtReal> {
    using type = ExtCplx;
};

using ExtModelParams = BasicModelParams<ExtReal>;
using ExtElement = BasicElement<ExtReal>;

inline ExtCplx to_ext(Cplx z) { return ExtCplx(z.real(), z.imag()); }
inline Cplx from_ext(const ExtCplx& z) {
    return Cplx(static_cast<double>(z.real()), static_cast<double>(z.imag()));
}

inline ExtElement to_ext(const Element& e) {
    ExtElement out;
    for (auto& [key, coeff] : e.terms()) {
        if (e.mode() == CoeffMode::Numeric) {
            out += ExtElement::monomial(key.first, key.second, to_ext(coeff.coeff(0)));
        } else {
            BasicRhoLaurent<ExtReal> c;
            for (auto& [d, v] : coeff.coeffs()) c.add(d, to_ext(v));
            out += ExtElement::monomial(key.first, key.second, c);
        }
    }
    return out;
}

// convenience wrapper: run the direct evaluator at 50 digits, return a double
inline Cplx j_direct_extended(const Element& g, Cplx a, const std::vector<Cplx>& xs,
                              const ModelParams& params) {
    ExtModelParams ep;
    ep.p = to_ext(params.p);
    ep.m = ExtReal(params.m);
    ep.tolerance = ExtReal(1e-40);
    std::vector<ExtCplx> exs;
    for (auto& x : xs) exs.push_back(to_ext(x));
    auto res = j_direct(to_ext(g), to_ext(a), exs, ep);
    return from_ext(res.value);
}

}  // namespace descff

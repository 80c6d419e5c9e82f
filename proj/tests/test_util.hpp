#pragma once

// Shared fixtures: the small algebras and complexes most tests live on.

#include <string>
#include <vector>

#include "homforge/algebra.hpp"
#include "homforge/complex.hpp"

namespace homforge::testutil {

inline Monomial mono(std::vector<int> e) { return Monomial{std::move(e)}; }

/// k[x]/(x^n) over Q.
inline AlgebraPtr kx_mod_xn(int n) {
    return LocalAlgebra::make(Field::rationals(), {"x"}, {mono({n})}, Backend::artinian);
}

/// k[x,y]/(x^2, y^2) over Q.
inline AlgebraPtr kxy_22() {
    return LocalAlgebra::make(Field::rationals(), {"x", "y"}, {mono({2, 0}), mono({0, 2})},
                              Backend::artinian);
}

/// k[x,y]/(x^2, xy, y^2) over Q (non-Gorenstein).
inline AlgebraPtr kxy_m2() {
    return LocalAlgebra::make(Field::rationals(), {"x", "y"},
                              {mono({2, 0}), mono({1, 1}), mono({0, 2})}, Backend::artinian);
}

/// graded k[x] over Q with the given window.
inline AlgebraPtr kx_graded(int window = 16) {
    return LocalAlgebra::make(Field::rationals(), {"x"}, {}, Backend::graded, window);
}

/// The two-term complex [A --p--> A] with the source at `lo`.
inline Complex two_term(const AlgebraPtr& A, const std::string& p, int lo = -1,
                        std::vector<int> degs = {}) {
    std::map<int, FreeModule> terms;
    RingElem e = A->parse(p);
    if (A->backend() == Backend::graded) {
        int d = e.is_zero() ? 0 : *e.homogeneous_degree();
        terms[lo] = FreeModule{1, std::vector<int>{degs.empty() ? -d : degs[0]}};
        terms[lo + 1] = FreeModule{1, std::vector<int>{degs.size() > 1 ? degs[1] : 0}};
    } else {
        terms[lo] = FreeModule{1, std::nullopt};
        terms[lo + 1] = FreeModule{1, std::nullopt};
    }
    MatrixOverA d(A, 1, 1);
    d.at(0, 0) = e;
    std::map<int, MatrixOverA> diffs;
    diffs.emplace(lo, std::move(d));
    return Complex::make(A, std::move(terms), std::move(diffs));
}

}  // namespace homforge::testutil

#ifndef BICX_FORMS_HPP
#define BICX_FORMS_HPP

#include <array>
#include <map>
#include <string>
#include <vector>

#include "bicx/complex.hpp"

namespace bicx {

/// Structure equations for a nilpotent complex Lie group with n holomorphic
/// generator forms f1..fn and their conjugates fb1..fbn:
///
///     d f^k = sum hol[k,i,j] f^i f^j  +  sum mix[k,i,j] f^i fb^j
///
/// with 1 <= i < j <= n in the hol sum and arbitrary i, j in the mix sum.
/// Differentials of the conjugated generators follow by conjugation.
struct StructureEquations {
    int n = 0;

    // Keys are (k, i, j); zero coefficients are never stored.
    std::map<std::array<int, 3>, Scalar> hol;
    std::map<std::array<int, 3>, Scalar> mix;

    explicit StructureEquations(int n = 0) : n(n) {}

    void set_hol(int k, int i, int j, const Scalar& c);
    void set_mix(int k, int i, int j, const Scalar& c);
};

/// Serializes to the "equations v1" document; deterministic.
std::string write_equations(const StructureEquations& eq);

/// Parses an "equations v1" document; throws parse_error with line numbers.
StructureEquations parse_equations(const std::string& text);

/// Extends the structure equations to the full (n+1) x (n+1) grid of
/// wedge monomials by the graded Leibniz rule, producing the double
/// complex of invariant forms.  Throws inconsistent_equations, naming the
/// first generator whose differential fails d d = 0.
DoubleComplex build_forms_complex(const StructureEquations& eq);

/// Checks that the complex built from structure equations is compatible
/// with conjugation: the bar-swap pairing of bidegrees (p,q) <-> (q,p)
/// intertwines conj(d1) with d2.  On failure, writes a description of the
/// first mismatch to *why when why is non-null.
bool conjugation_compatible(const DoubleComplex& dc, int n, std::string* why = nullptr);

/// Wedge monomial label in the generator alphabet, e.g. "f12b3" for
/// f^1 f^2 fb^3; the empty monomial is "1".
std::string monomial_label(const std::vector<int>& unbarred, const std::vector<int>& barred);

/// All size-k subsets of {1..n} in lexicographic order.
std::vector<std::vector<int>> combinations(int n, int k);

} // namespace bicx

#endif

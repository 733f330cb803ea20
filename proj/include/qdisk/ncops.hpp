#pragma once

#include <vector>

#include "qdisk/element.hpp"
#include "qdisk/report.hpp"
#include "qdisk/weights.hpp"

namespace qdisk {

enum class Which { D, Dbar };

/// D(a) = A(K)[U B(K), a]; mode m maps to mode m + 1.
///
///   f-part: A(K)(B(K-1) f_n(K-1) - B(K+n-1) f_n(K)) (U*)^{n-1}
///   g-part: U^{n+1} A(K+n+1)(B(K+n) g_n(K) - B(K) g_n(K+1))
///
/// with B(-1) = f_n(-1) = 0. The g-part reads g_n(k+1), so unless every mode
/// has a declared tail the output is trusted one index less than the input.
ToeplitzElement apply_D(const ToeplitzElement& a, const WeightPair& w);

/// Dbar(a) = A(K)[B(K) U*, a]; mode m maps to mode m - 1. Mode 0 is treated
/// as f_0 = g_0.
ToeplitzElement apply_Dbar(const ToeplitzElement& a, const WeightPair& w);

ToeplitzElement apply(Which which, const ToeplitzElement& a, const WeightPair& w);

/// Per-coefficient magnitude |A| (|first term| + |second term|) of the two
/// products whose difference the operator forms. Used to express cancellation
/// errors in relative terms.
ToeplitzElement cancellation_scale(Which which, const ToeplitzElement& a, const WeightPair& w);

/// A(K)^{s} a A(K)^{-s} for s = +1 (or s = -1 when `inverse`): entry (r, c)
/// is multiplied by (A(r)/A(c))^s. With it, Dbar(a) = -A (D(a*))* A^{-1}.
ToeplitzElement conjugate_by_A(const ToeplitzElement& a, const WeightPair& w, bool inverse = false);

struct PolarParts {
  ToeplitzElement radial;
  ToeplitzElement angular;
};

/// Radial part: coefficient differences in k. Angular part: B-differences
/// times undifferenced coefficients. At the k = 0 edge the missing neighbour
/// is taken equal to the k = 0 coefficient in both parts, so the radial part
/// of a k-constant element vanishes identically and radial + angular equals
/// the full operator.
PolarParts polar_split(const ToeplitzElement& a, const WeightPair& w, Which which);

/// restrict(apply(extend(f))) against the boundary symbol. The report holds
/// per-mode errors against both the symbol i e^{+-i phi} d/dphi (mode m with
/// coefficient c contributing -m c at m +- 1) and its negative (+m c), which is
/// what the operator as defined produces. `pass` refers to `expected_sign`:
/// +1 selects i e^{+-i phi} d/dphi, -1 its negative.
Report boundary_operator_check(const BoundaryFunction& f, const WeightPair& w, int k_max, Which which,
                               int expected_sign = 1, double tol = 0.05, int tail_window = 16);

/// {(U B)^n} for D, {(B U*)^n} for Dbar, n = 0..n_max.
std::vector<ToeplitzElement> kernel_basis(const WeightPair& w, Which which, int n_max, int k_max);

/// Commutator eigenvalues, the defining relation of the quantum disk, and the
/// derivative relations D(1)=0, D(z)=0, D(zbar)=-1, Dbar(1)=0, Dbar(z)=1,
/// Dbar(zbar)=0 with scale-1 weights. 0 < mu <= 1.
Report quantum_disk_structure_check(double mu, int k_max);

}  // namespace qdisk

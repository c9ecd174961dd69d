#pragma once

#include <cstddef>
#include <vector>

#include "wmeans/functions.hpp"
#include "wmeans/homogenize.hpp"
#include "wmeans/limit.hpp"
#include "wmeans/report.hpp"
#include "wmeans/sampling.hpp"
#include "wmeans/semideviation.hpp"

namespace wmeans {

// Every suite returns a Report; none throws on a mathematical failure.
// Mean inequalities use mean_tolerance(value), pointwise kernel inequalities
// kKernelTolerance. A report never claims more than "no counterexample in N
// checks" or a concrete witness.

/// Admission by check_semideviation, then per sample: the ordering
/// min x <= LW <= UW <= max x, both strict means inside [LW, UW], and
/// invariance of all four means under a random permutation.
Report verify_sandwich(const Kernel2& E, const SamplePlan& plan, const SemidevMeanConfig& cfg = {});

/// g(n) = n (M((x, y), (1, n)) - y) for M = LW and M = UW against E*(x, y):
/// the error must not grow along n_list and must end below
/// 1e-3 * max(1, |E*(x, y)|). Default n_list is 10, 100, ..., 1e6. Means are
/// solved with refine_tol 1e-15 so that n * (M - y) keeps its digits.
Report verify_lemma_lim(const Kernel2& E, double x, double y, std::vector<double> n_list = {},
                        const SemidevMeanConfig& cfg = {});

/// E* <= F* on a grid of off-diagonal pairs; the four mean inequalities
/// D_E <= D_F per kind; LW_E <= UW_F. "coupling" fails when E* <= F* holds on
/// a sample's hull lattice while a mean inequality fails there (solver defect).
Report verify_comparison(const Kernel2& E, const Kernel2& F, const SamplePlan& plan, std::size_t grid = 24,
                         const SemidevMeanConfig& cfg = {});

/// The computable faces of the Jensen-concavity characterization: midpoint
/// concavity of E* on random quadruples, the mixed inequality
/// UW((x+y)/2) >= (LW(x) + LW(y))/2, midpoint concavity of each of the four
/// means, the quasideviation probe together with concavity of the deviation
/// mean, agreement of all faces, and the hull coupling between the first two.
Report verify_jensen(const Kernel2& E, const SamplePlan& plan, std::size_t grid = 12,
                     const SemidevMeanConfig& cfg = {});

/// LW of h_lower(x/y) <= (US_E)_# and (LS_E)^# <= UW of h_upper(x/y) on
/// random samples. Inconclusive when the kernel homogenization violates the
/// sign property or does not stay finite.
Report verify_tei(const Kernel2& E, const SamplePlan& plan, const SemidevMeanConfig& cfg = {},
                  const LimitOptions& limit = {});

/// Hypotheses (E* midpoint concave, E*(x t, t) -> 0) are probed and recorded;
/// when they fail the report is inconclusive but the conclusions are still
/// checked: h_E concave, nondecreasing, strictly increasing on (0, 1), sign
/// property; E_{h_E} equal to both local homogenizations of D_E; D_E
/// nondecreasing in each entry.
Report verify_cei(const Kernel2& E, const SamplePlan& plan, const SemidevMeanConfig& cfg = {},
                  const LimitOptions& limit = {});

struct HomiOptions {
  /// Points per axis of the (p, q, u, v) lattice.
  std::size_t grid = 10;
  /// Check the monotone-operation hypothesis and the four same-kind
  /// inequalities in addition to all 16 kind pairs.
  bool monotone_mode = true;
};

/// E*(f(p,q), f(u,v)) <= ∂₁f(u,v) F*(p,u) + ∂₂f(u,v) G*(q,v) on a 4-D lattice,
/// and LW_E(f(x, y)) <= f(M(x), N(y)) for all 16 kind pairs (M of F, N of G).
/// x is drawn from entry_range, y from y_entry_range.
Report verify_homi(const Kernel2& E, const Kernel2& F, const Kernel2& G, const Kernel2& op,
                   const SamplePlan& plan, const HomiOptions& options = {}, const SemidevMeanConfig& cfg = {});
/// E = F = G with f(u, v) = u + v.
Report verify_minkowski(const Kernel2& E, const SamplePlan& plan, const HomiOptions& options = {},
                        const SemidevMeanConfig& cfg = {});
/// E = F = G with f(u, v) = u * v.
Report verify_hoelder(const Kernel2& E, const SamplePlan& plan, const HomiOptions& options = {},
                      const SemidevMeanConfig& cfg = {});

/// Weighted-mean axioms on random samples: mean value, nullhomogeneity,
/// reduction through shuffle_merge, elimination of zero weights, symmetry.
Report verify_axioms(const MeanHandle& M, const SamplePlan& plan);

/// M_$ <= M_# <= M^# <= M^$ within `tol` on random samples.
Report verify_homogenization_chain(const MeanHandle& M, const SamplePlan& plan, double tol = 1e-6);

/// For a Jensen-concave handle: t -> M(t x)/t nonincreasing along the limit
/// grid, M_# = M^# and M <= M_# within `tol`.
Report verify_concave_limit(const MeanHandle& M, const SamplePlan& plan, double tol = 1e-6);

}  // namespace wmeans

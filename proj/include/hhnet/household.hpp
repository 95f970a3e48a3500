#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "hhnet/infectious_period.hpp"
#include "hhnet/rng.hpp"

namespace hhnet {

/// Mass function on {0, ..., n-1}; probs[k] = P(size = k).
struct MassFunction {
    std::vector<double> probs;

    std::size_t size() const { return probs.size(); }
    double operator[](std::size_t k) const { return probs[k]; }
    double mean() const;
    double pgf(double s) const;
};

/// Distribution of T, the final size of a single-household epidemic started
/// by one infective among n members (initial case excluded).
///
/// Solved forward from the triangular system
///   sum_{k<=l} C(n-1-k, l-k) P(T=k) / phi(lambda_L (n-1-l))^{k+1} = C(n-1, l),
/// used in the equivalent multiplied-through form so that phi == 0 is allowed.
/// Throws ConditioningError when cancellation pushes a value outside
/// [-1e-12, 1 + 1e-6].
MassFunction local_final_size_dist(int n, double lambda_L, const InfectiousPeriod &period);

double mean_local_final_size(int n, double lambda_L, const InfectiousPeriod &period);

/// Distribution of M, the size of an individual's local susceptibility set
/// (focal individual excluded):
///   P(M = k-1) = C(n-1, k-1) alpha_k phi(k lambda_L)^{n-k},
/// where alpha_k, the probability that every member of a k-household reaches
/// the focal one, solves sum_{j<=k} C(k-1, j-1) alpha_j phi(j lambda_L)^{k-j} = 1.
MassFunction susceptibility_set_dist(int n, double lambda_L, const InfectiousPeriod &period);

/// Within-household "would infect" digraph. arc(i, j) means i would make
/// local infectious contact with j; all arcs out of i share the period I_i.
struct LocalDigraph {
    int n = 0;
    std::vector<std::uint8_t> arcs;
    std::vector<double> periods;

    bool arc(int from, int to) const { return arcs[static_cast<std::size_t>(from * n + to)] != 0; }
    /// Indicator of j ~> i for each i (j ~> j holds).
    std::vector<bool> reachable_from(int j) const;
    /// Indicator of i ~> j for each i.
    std::vector<bool> reaching(int j) const;
};

LocalDigraph sample_local_digraph(int n, double lambda_L, const InfectiousPeriod &period, Rng &rng);

/// Whether the household's initial case used one of its edges to get infected.
/// Root: the population's initial infective, d'_j = d_j.
/// Subsequent: infected along a global edge, d'_j = d_j - 1.
enum class DegreeConvention { Root, Subsequent };

/// Number of global neighbours contacted by the household whose member
/// `initial` (0-based) starts the local epidemic. Each locally infected i
/// contacts Binomial(d'_i, 1 - exp(-lambda_G I_i)) neighbours using the same
/// I_i that drove its local arcs.
std::size_t sample_phi(std::span<const std::size_t> degrees, std::size_t initial, double lambda_L,
                       double lambda_G, const InfectiousPeriod &period, Rng &rng,
                       DegreeConvention convention = DegreeConvention::Root);

/// (Psi, Psi_A): global neighbours of the local susceptibility set of
/// `initial` that do / do not make infectious contact with it, each
/// member contributing Binomial(d'_i, p_G) and its complement.
std::pair<std::size_t, std::size_t> sample_psi(std::span<const std::size_t> degrees, std::size_t initial,
                                               double lambda_L, double lambda_G,
                                               const InfectiousPeriod &period, Rng &rng,
                                               DegreeConvention convention = DegreeConvention::Root);

/// Independent oracle for T and M. Exhaustive for Fixed and ZeroOrInfinite
/// (n <= 4); Monte Carlo over `mc_draws` sampled digraphs for Exponential.
struct LocalOracle {
    MassFunction final_size;
    MassFunction susceptibility;
    std::size_t draws = 0; // 0 for exact enumeration
};

inline constexpr int kMaxExhaustiveHousehold = 4;

LocalOracle brute_force_local(int n, double lambda_L, const InfectiousPeriod &period,
                              std::size_t mc_draws = 1000000, std::uint64_t seed = 1);
MassFunction brute_force_final_size_dist(int n, double lambda_L, const InfectiousPeriod &period,
                                         std::size_t mc_draws = 1000000, std::uint64_t seed = 1);
MassFunction brute_force_susceptibility_dist(int n, double lambda_L, const InfectiousPeriod &period,
                                             std::size_t mc_draws = 1000000, std::uint64_t seed = 1);

} // namespace hhnet

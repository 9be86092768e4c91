#pragma once

#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "entrep/game.hpp"
#include "entrep/linalg.hpp"
#include "entrep/rng.hpp"

namespace entrep::strategy {

using linalg::Complex;
using linalg::Matrix;
using linalg::Vector;

// Entangled strategy for a single game: shared state |Psi> in C^{d*d}
// (index i*d + j, first player's factor first) and per-question projective
// measurements for both players.
//
// Bob's operators enter every bilinear form transposed: probabilities are
// <Psi| A ⊗ B^T |Psi>, which for the state reshaped to a d x d matrix Psi
// is Tr(Psi† A Psi B).
struct QuantumStrategy {
  int d = 0;
  Vector state;
  std::vector<std::vector<Matrix>> alice;  // [q'][a']
  std::vector<std::vector<Matrix>> bob;    // [q][a]

  void validate(double tol = 1e-9) const;
};

// <Psi| A ⊗ B^T |Psi> for the strategy's state layout.
double born_probability(const Matrix& psi_mat, const Matrix& a,
                        const Matrix& b);

// Reshape the state vector to the d x d matrix Psi with Psi(i,j) =
// psi(i*d+j).
Matrix state_matrix(const Vector& state, int d);

double evaluate_value(const game::Game& g, const QuantumStrategy& s);

// Top eigenpair of the game operator sum pi V A^{a'} ⊗ (B^a)^T. The
// returned value equals evaluate_value at the returned state.
std::pair<Vector, double> optimal_state(const game::Game& g,
                                        const QuantumStrategy& s);

struct SeesawResult {
  QuantumStrategy strategy;
  std::vector<double> trace;  // non-decreasing value trace
};

// Alternating lower-bound search: exact state update (top eigenvector)
// alternates with a greedy spectral measurement update per player. Updates
// that would lower the value are rejected, so the trace is monotone.
SeesawResult seesaw_optimize(const game::Game& g, int d, std::uint64_t seed,
                             int iters);

// Direct Monte Carlo simulation of the one-round protocol; the estimator
// of evaluate_value used as an independent cross-check.
double simulate_value(const game::Game& g, const QuantumStrategy& s,
                      long samples, std::uint64_t seed);

// Canonical optimal CHSH strategy: maximally entangled pair, measurement
// angles 0 and pi/4 for the first player, pi/8 and -pi/8 for the second.
QuantumStrategy chsh_optimal_strategy();

// Deterministic classical strategy embedded as diagonal projectors on
// C^d: answer_first[q'] and answer_second[q] fix the outcomes.
QuantumStrategy embed_classical(const game::Game& g,
                                const std::vector<int>& answer_first,
                                const std::vector<int>& answer_second,
                                int d = 1);

// Random projective strategy in dimension d (Haar bases, balanced ranks).
QuantumStrategy random_strategy(const game::Game& g, int d, Rng& rng);

nlohmann::json strategy_to_json(const QuantumStrategy& s,
                                const std::vector<std::string>& qlabels);
QuantumStrategy strategy_from_json(const nlohmann::json& j,
                                   const std::vector<std::string>& qlabels);
QuantumStrategy load_strategy(const std::string& path,
                              const std::vector<std::string>& qlabels);
void save_strategy(const QuantumStrategy& s,
                   const std::vector<std::string>& qlabels,
                   const std::string& path);

}  // namespace entrep::strategy

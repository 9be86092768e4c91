#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "entrep/errors.hpp"

#include <nlohmann/json_fwd.hpp>

namespace entrep::game {

// Two-player one-round game: joint question distribution pi(q', q) and
// acceptance predicate V(a', a | q', q). Primed arguments belong to the
// first player throughout.
struct Game {
  std::vector<std::string> questions;
  std::vector<std::string> answers;
  Eigen::MatrixXd pi;                   // pi(q', q), |Q| x |Q|
  std::vector<std::uint8_t> predicate;  // V, see index()

  int nq() const { return static_cast<int>(questions.size()); }
  int na() const { return static_cast<int>(answers.size()); }

  std::size_t index(int qp, int q, int ap, int a) const {
    return ((static_cast<std::size_t>(qp) * nq() + q) * na() + ap) * na() + a;
  }
  bool accepts(int ap, int a, int qp, int q) const {
    return predicate[index(qp, q, ap, a)] != 0;
  }

  // Marginal of pi on the first (resp. second) player's question.
  Eigen::VectorXd marginal_first() const;
  Eigen::VectorXd marginal_second() const;

  // Throws InvalidInputError naming the violated invariant.
  void validate() const;
};

struct GameClass {
  bool is_projection = false;
  bool is_free = false;
  bool is_symmetric = false;
};

GameClass classify_game(const Game& g);

// Role-tagged doubling: the output has question set Q x {first, second},
// a symmetric distribution splitting each pi(q', q) across the two role
// orders, and a predicate that routes answers by role. Classical value is
// preserved exactly.
Game symmetrize(const Game& g);

// Exact maximum of E_pi[V] over pairs of deterministic answer functions.
// The search enumerates the first player's functions and picks the second
// player's best reply per question, so the cost is |A|^|Q| * |Q|^2 * |A|.
double classical_value_bruteforce(const Game& g);

nlohmann::json game_to_json(const Game& g);
Game game_from_json(const nlohmann::json& j);
Game load_game(const std::string& path);
void save_game(const Game& g, const std::string& path);

// The CHSH game: binary questions and answers, uniform pi, accept iff
// a' xor a equals q' and q.
Game chsh();

}  // namespace entrep::game

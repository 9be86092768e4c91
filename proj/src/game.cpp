#include "entrep/game.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include <nlohmann/json.hpp>

namespace entrep::game {

using nlohmann::json;

Eigen::VectorXd Game::marginal_first() const {
  return pi.rowwise().sum();
}

Eigen::VectorXd Game::marginal_second() const {
  return pi.colwise().sum().transpose();
}

void Game::validate() const {
  if (questions.empty()) throw InvalidInputError("game: empty question set");
  if (answers.empty()) throw InvalidInputError("game: empty answer set");
  if (pi.rows() != nq() || pi.cols() != nq())
    throw InvalidInputError("game: pi must be |Q| x |Q|");
  double total = 0.0;
  for (int r = 0; r < nq(); ++r)
    for (int c = 0; c < nq(); ++c) {
      double p = pi(r, c);
      if (!std::isfinite(p) || p < 0.0)
        throw InvalidInputError("game: pi(" + questions[r] + "," +
                                questions[c] + ") negative or non-finite");
      total += p;
    }
  if (std::abs(total - 1.0) > 1e-12)
    throw InvalidInputError("game: pi sums to " + std::to_string(total) +
                            ", expected 1 within 1e-12");
  std::size_t want = static_cast<std::size_t>(nq()) * nq() * na() * na();
  if (predicate.size() != want)
    throw InvalidInputError("game: predicate table has wrong size");
  for (std::uint8_t v : predicate)
    if (v > 1) throw InvalidInputError("game: predicate entries must be 0/1");
}

GameClass classify_game(const Game& g) {
  g.validate();
  GameClass cls;

  cls.is_projection = true;
  for (int qp = 0; qp < g.nq() && cls.is_projection; ++qp)
    for (int q = 0; q < g.nq() && cls.is_projection; ++q)
      for (int ap = 0; ap < g.na(); ++ap) {
        int count = 0;
        for (int a = 0; a < g.na(); ++a)
          if (g.accepts(ap, a, qp, q)) ++count;
        if (count != 1) {
          cls.is_projection = false;
          break;
        }
      }

  Eigen::VectorXd ma = g.marginal_first();
  Eigen::VectorXd mb = g.marginal_second();
  cls.is_free = ((g.pi - ma * mb.transpose()).cwiseAbs().maxCoeff() <= 1e-10);

  cls.is_symmetric = true;
  for (int qp = 0; qp < g.nq() && cls.is_symmetric; ++qp)
    for (int q = 0; q < g.nq() && cls.is_symmetric; ++q) {
      if (std::abs(g.pi(qp, q) - g.pi(q, qp)) > 1e-12) {
        cls.is_symmetric = false;
        break;
      }
      for (int ap = 0; ap < g.na() && cls.is_symmetric; ++ap)
        for (int a = 0; a < g.na(); ++a)
          if (g.accepts(ap, a, qp, q) != g.accepts(a, ap, q, qp)) {
            cls.is_symmetric = false;
            break;
          }
    }
  return cls;
}

Game symmetrize(const Game& g) {
  g.validate();
  const int nq = g.nq(), na = g.na();
  Game out;
  out.answers = g.answers;
  out.questions.reserve(2 * nq);
  for (const auto& q : g.questions) out.questions.push_back(q + ":first");
  for (const auto& q : g.questions) out.questions.push_back(q + ":second");

  // Question (q, first) occupies index q, (q, second) index nq + q. The
  // referee flips a fair coin for the role order, so each pi(q', q) splits
  // into two tagged pairs of probability pi(q', q)/2.
  out.pi = Eigen::MatrixXd::Zero(2 * nq, 2 * nq);
  for (int qp = 0; qp < nq; ++qp)
    for (int q = 0; q < nq; ++q) {
      out.pi(qp, nq + q) += g.pi(qp, q) / 2.0;
      out.pi(nq + q, qp) += g.pi(qp, q) / 2.0;
    }

  out.predicate.assign(
      static_cast<std::size_t>(2 * nq) * 2 * nq * na * na, 1);
  for (int x1 = 0; x1 < 2 * nq; ++x1)
    for (int x2 = 0; x2 < 2 * nq; ++x2) {
      bool first_is_first = x1 < nq;
      bool second_is_first = x2 < nq;
      if (first_is_first == second_is_first) continue;  // zero-probability
      int qa = first_is_first ? x1 : x2;            // first-role question
      int qb = first_is_first ? x2 - nq : x1 - nq;  // second-role question
      for (int b1 = 0; b1 < na; ++b1)
        for (int b2 = 0; b2 < na; ++b2) {
          bool ok = first_is_first ? g.accepts(b1, b2, qa, qb)
                                   : g.accepts(b2, b1, qa, qb);
          out.predicate[out.index(x1, x2, b1, b2)] = ok ? 1 : 0;
        }
    }
  return out;
}

double classical_value_bruteforce(const Game& g) {
  g.validate();
  const int nq = g.nq(), na = g.na();
  double space = std::pow(static_cast<double>(na), nq);
  if (space > 1e6)
    throw ResourceLimitError(
        "classical_value_bruteforce: |A|^|Q| exceeds 10^6");

  std::vector<int> assign(nq, 0);
  double best = 0.0;
  long long count = static_cast<long long>(space);
  for (long long it = 0; it < count; ++it) {
    // Best reply for the second player decomposes per question.
    double value = 0.0;
    for (int q = 0; q < nq; ++q) {
      double best_reply = 0.0;
      for (int a = 0; a < na; ++a) {
        double s = 0.0;
        for (int qp = 0; qp < nq; ++qp)
          if (g.accepts(assign[qp], a, qp, q)) s += g.pi(qp, q);
        best_reply = std::max(best_reply, s);
      }
      value += best_reply;
    }
    best = std::max(best, value);

    for (int q = 0; q < nq; ++q) {
      if (++assign[q] < na) break;
      assign[q] = 0;
    }
  }
  return best;
}

json game_to_json(const Game& g) {
  json j;
  j["questions"] = g.questions;
  j["answers"] = g.answers;
  json pi = json::array();
  for (int r = 0; r < g.nq(); ++r) {
    json row = json::array();
    for (int c = 0; c < g.nq(); ++c) row.push_back(g.pi(r, c));
    pi.push_back(row);
  }
  j["pi"] = pi;
  json v = json::array();
  for (int qp = 0; qp < g.nq(); ++qp) {
    json vq = json::array();
    for (int q = 0; q < g.nq(); ++q) {
      json vap = json::array();
      for (int ap = 0; ap < g.na(); ++ap) {
        json va = json::array();
        for (int a = 0; a < g.na(); ++a)
          va.push_back(static_cast<int>(g.predicate[g.index(qp, q, ap, a)]));
        vap.push_back(va);
      }
      vq.push_back(vap);
    }
    v.push_back(vq);
  }
  j["V"] = v;
  return j;
}

namespace {

[[noreturn]] void bad_game(const std::string& where, const std::string& why) {
  throw InvalidInputError("game file, " + where + ": " + why);
}

}  // namespace

Game game_from_json(const json& j) {
  Game g;
  if (!j.is_object()) bad_game("top level", "expected an object");
  for (const char* key : {"questions", "answers", "pi", "V"})
    if (!j.contains(key))
      bad_game("top level", std::string("missing \"") + key + "\"");
  try {
    g.questions = j.at("questions").get<std::vector<std::string>>();
    g.answers = j.at("answers").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    bad_game("questions/answers", e.what());
  }
  const int nq = static_cast<int>(g.questions.size());
  const int na = static_cast<int>(g.answers.size());
  if (nq == 0) bad_game("questions", "empty");
  if (na == 0) bad_game("answers", "empty");

  const json& pi = j.at("pi");
  if (!pi.is_array() || static_cast<int>(pi.size()) != nq)
    bad_game("pi", "expected " + std::to_string(nq) + " rows");
  g.pi.resize(nq, nq);
  for (int r = 0; r < nq; ++r) {
    const json& row = pi.at(r);
    if (!row.is_array() || static_cast<int>(row.size()) != nq)
      bad_game("pi row " + std::to_string(r),
               "expected " + std::to_string(nq) + " entries");
    for (int c = 0; c < nq; ++c) {
      if (!row.at(c).is_number())
        bad_game("pi[" + std::to_string(r) + "][" + std::to_string(c) + "]",
                 "not a number");
      g.pi(r, c) = row.at(c).get<double>();
    }
  }

  const json& v = j.at("V");
  g.predicate.assign(static_cast<std::size_t>(nq) * nq * na * na, 0);
  if (!v.is_array() || static_cast<int>(v.size()) != nq)
    bad_game("V", "expected " + std::to_string(nq) + " entries indexed by q'");
  for (int qp = 0; qp < nq; ++qp) {
    const json& vq = v.at(qp);
    if (!vq.is_array() || static_cast<int>(vq.size()) != nq)
      bad_game("V[" + std::to_string(qp) + "]", "wrong arity");
    for (int q = 0; q < nq; ++q) {
      const json& vap = vq.at(q);
      if (!vap.is_array() || static_cast<int>(vap.size()) != na)
        bad_game("V[" + std::to_string(qp) + "][" + std::to_string(q) + "]",
                 "wrong arity");
      for (int ap = 0; ap < na; ++ap) {
        const json& va = vap.at(ap);
        if (!va.is_array() || static_cast<int>(va.size()) != na)
          bad_game("V[" + std::to_string(qp) + "][" + std::to_string(q) +
                       "][" + std::to_string(ap) + "]",
                   "wrong arity");
        for (int a = 0; a < na; ++a) {
          const json& bit = va.at(a);
          if (!bit.is_number_integer() ||
              (bit.get<int>() != 0 && bit.get<int>() != 1))
            bad_game("V[" + std::to_string(qp) + "][" + std::to_string(q) +
                         "][" + std::to_string(ap) + "][" +
                         std::to_string(a) + "]",
                     "entries must be 0 or 1");
          g.predicate[g.index(qp, q, ap, a)] =
              static_cast<std::uint8_t>(bit.get<int>());
        }
      }
    }
  }
  g.validate();
  return g;
}

Game load_game(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInputError("cannot open game file: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidInputError("game file " + path + ": " + e.what());
  }
  return game_from_json(j);
}

void save_game(const Game& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidInputError("cannot write game file: " + path);
  out << game_to_json(g).dump(2) << "\n";
}

Game chsh() {
  Game g;
  g.questions = {"0", "1"};
  g.answers = {"0", "1"};
  g.pi = Eigen::MatrixXd::Constant(2, 2, 0.25);
  g.predicate.assign(16, 0);
  for (int qp = 0; qp < 2; ++qp)
    for (int q = 0; q < 2; ++q)
      for (int ap = 0; ap < 2; ++ap)
        for (int a = 0; a < 2; ++a)
          g.predicate[g.index(qp, q, ap, a)] =
              ((ap ^ a) == (qp & q)) ? 1 : 0;
  return g;
}

}  // namespace entrep::game

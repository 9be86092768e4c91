#include "entrep/strategy.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

namespace entrep::strategy {

using game::Game;
using linalg::max_abs;
using nlohmann::json;

namespace {

void validate_measurement(const std::vector<Matrix>& meas, int d, double tol,
                          const char* who, int q) {
  Matrix sum = Matrix::Zero(d, d);
  for (std::size_t a = 0; a < meas.size(); ++a) {
    const Matrix& m = meas[a];
    if (m.rows() != d || m.cols() != d)
      throw InvalidInputError(std::string(who) + " measurement q=" +
                              std::to_string(q) + ": wrong shape");
    linalg::require_finite(m, "measurement");
    if (max_abs(m - m.adjoint()) > linalg::kHermitTol * 10)
      throw InvalidInputError(std::string(who) + " q=" + std::to_string(q) +
                              " a=" + std::to_string(a) + ": not Hermitian");
    if (max_abs(m * m - m) > tol)
      throw InvalidInputError(std::string(who) + " q=" + std::to_string(q) +
                              " a=" + std::to_string(a) + ": not a projector");
    for (std::size_t b = 0; b < a; ++b)
      if (max_abs(m * meas[b]) > tol)
        throw InvalidInputError(std::string(who) + " q=" + std::to_string(q) +
                                ": operators " + std::to_string(b) + "," +
                                std::to_string(a) + " not orthogonal");
    sum += m;
  }
  if (max_abs(sum - Matrix::Identity(d, d)) > tol)
    throw InvalidInputError(std::string(who) + " q=" + std::to_string(q) +
                            ": operators do not sum to identity");
}

// Phase-canonical copy of an eigenvector (first significant entry real
// positive), matching the linalg convention.
Vector canonical_vector(Vector v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    double mod = std::abs(v(i));
    if (mod > 1e-12) {
      v *= std::conj(v(i)) / mod;
      break;
    }
  }
  return v;
}

bool vector_lex_before(const Vector& a, const Vector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (std::abs(a(i).real() - b(i).real()) > 1e-12)
      return a(i).real() > b(i).real();
    if (std::abs(a(i).imag() - b(i).imag()) > 1e-12)
      return a(i).imag() > b(i).imag();
  }
  return false;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace

void QuantumStrategy::validate(double tol) const {
  if (d < 1) throw InvalidInputError("strategy: d must be >= 1");
  if (state.size() != static_cast<Eigen::Index>(d) * d)
    throw InvalidInputError("strategy: state must live in C^{d*d}");
  double norm = state.norm();
  if (std::abs(norm - 1.0) > 1e-10)
    throw InvalidInputError("strategy: state norm " + std::to_string(norm) +
                            " is not 1 within 1e-10");
  for (std::size_t q = 0; q < alice.size(); ++q)
    validate_measurement(alice[q], d, tol, "alice", static_cast<int>(q));
  for (std::size_t q = 0; q < bob.size(); ++q)
    validate_measurement(bob[q], d, tol, "bob", static_cast<int>(q));
}

Matrix state_matrix(const Vector& state, int d) {
  Matrix psi(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) psi(i, j) = state(i * d + j);
  return psi;
}

double born_probability(const Matrix& psi_mat, const Matrix& a,
                        const Matrix& b) {
  return (psi_mat.adjoint() * a * psi_mat * b).trace().real();
}

double evaluate_value(const Game& g, const QuantumStrategy& s) {
  if (static_cast<int>(s.alice.size()) != g.nq() ||
      static_cast<int>(s.bob.size()) != g.nq())
    throw InvalidInputError("evaluate_value: question alphabet mismatch");
  for (int q = 0; q < g.nq(); ++q)
    if (static_cast<int>(s.alice[q].size()) != g.na() ||
        static_cast<int>(s.bob[q].size()) != g.na())
      throw InvalidInputError("evaluate_value: answer alphabet mismatch");

  Matrix psi = state_matrix(s.state, s.d);
  double value = 0.0;
  for (int qp = 0; qp < g.nq(); ++qp)
    for (int q = 0; q < g.nq(); ++q) {
      if (g.pi(qp, q) == 0.0) continue;
      for (int ap = 0; ap < g.na(); ++ap)
        for (int a = 0; a < g.na(); ++a)
          if (g.accepts(ap, a, qp, q))
            value += g.pi(qp, q) *
                     born_probability(psi, s.alice[qp][ap], s.bob[q][a]);
    }
  return value;
}

std::pair<Vector, double> optimal_state(const Game& g,
                                        const QuantumStrategy& s) {
  const int dd = s.d * s.d;
  Matrix op = Matrix::Zero(dd, dd);
  for (int qp = 0; qp < g.nq(); ++qp)
    for (int q = 0; q < g.nq(); ++q) {
      if (g.pi(qp, q) == 0.0) continue;
      for (int ap = 0; ap < g.na(); ++ap)
        for (int a = 0; a < g.na(); ++a)
          if (g.accepts(ap, a, qp, q))
            op += g.pi(qp, q) *
                  kron(s.alice[qp][ap], s.bob[q][a].transpose());
    }
  op = 0.5 * (op + op.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(op);
  const auto& vals = eig.eigenvalues();
  double top = vals(dd - 1);
  // Deterministic pick among (numerically) degenerate top eigenvectors.
  Vector best;
  for (Eigen::Index i = dd - 1; i >= 0 && vals(i) >= top - 1e-12; --i) {
    Vector v = canonical_vector(eig.eigenvectors().col(i));
    if (best.size() == 0 || vector_lex_before(v, best)) best = v;
  }
  return {best, top};
}

namespace {

// Weighting operators for the greedy spectral measurement update. For the
// first player W_{q'}^{a'} = sum_{q,a} pi V (Psi B_q^a Psi†); for the
// second W_q^a = sum_{q',a'} pi V (Psi† A_{q'}^{a'} Psi).
std::vector<std::vector<Matrix>> weight_operators(const Game& g,
                                                  const QuantumStrategy& s,
                                                  bool first_player) {
  Matrix psi = state_matrix(s.state, s.d);
  int d = s.d;
  std::vector<std::vector<Matrix>> w(
      g.nq(), std::vector<Matrix>(g.na(), Matrix::Zero(d, d)));
  for (int qp = 0; qp < g.nq(); ++qp)
    for (int q = 0; q < g.nq(); ++q) {
      if (g.pi(qp, q) == 0.0) continue;
      for (int ap = 0; ap < g.na(); ++ap)
        for (int a = 0; a < g.na(); ++a) {
          if (!g.accepts(ap, a, qp, q)) continue;
          if (first_player)
            w[qp][ap] += g.pi(qp, q) * (psi * s.bob[q][a] * psi.adjoint());
          else
            w[q][a] += g.pi(qp, q) * (psi.adjoint() * s.alice[qp][ap] * psi);
        }
    }
  return w;
}

// Basis choice for the greedy assignment: the centered answer-weighted
// combination sum_a (a - (|A|-1)/2) W^a. For two outcomes its eigenbasis
// diagonalizes W^1 - W^0, making the update the exact two-outcome
// optimum; the unweighted sum is degenerate precisely at good strategies.
std::vector<Matrix> greedy_spectral_assignment(const std::vector<Matrix>& w,
                                               int d) {
  int na = static_cast<int>(w.size());
  Matrix sum = Matrix::Zero(d, d);
  for (int a = 0; a < na; ++a)
    sum += (static_cast<double>(a) - 0.5 * (na - 1)) * w[a];
  sum = 0.5 * (sum + sum.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sum);
  std::vector<Matrix> meas(na, Matrix::Zero(d, d));
  for (int j = 0; j < d; ++j) {
    Vector u = eig.eigenvectors().col(j);
    int best = 0;
    double score = (u.adjoint() * w[0] * u)(0, 0).real();
    for (int a = 1; a < na; ++a) {
      double sa = (u.adjoint() * w[a] * u)(0, 0).real();
      if (sa > score + 1e-15) {
        score = sa;
        best = a;
      }
    }
    meas[best] += u * u.adjoint();
  }
  return meas;
}

}  // namespace

SeesawResult seesaw_optimize(const Game& g, int d, std::uint64_t seed,
                             int iters) {
  if (d < 1) throw InvalidInputError("seesaw: d must be >= 1");
  if (iters < 1) throw InvalidInputError("seesaw: iters must be >= 1");
  Rng rng = Rng::stream(seed, "seesaw", 0);

  QuantumStrategy s;
  s.d = d;
  s.alice.resize(g.nq());
  s.bob.resize(g.nq());
  for (int q = 0; q < g.nq(); ++q) {
    s.alice[q] = linalg::random_projective_measurement(
        d, std::min(g.na(), d), rng);
    s.bob[q] = linalg::random_projective_measurement(
        d, std::min(g.na(), d), rng);
    // Pad with zero projectors when d < |A|.
    while (static_cast<int>(s.alice[q].size()) < g.na())
      s.alice[q].push_back(Matrix::Zero(d, d));
    while (static_cast<int>(s.bob[q].size()) < g.na())
      s.bob[q].push_back(Matrix::Zero(d, d));
  }
  auto st = optimal_state(g, s);
  s.state = st.first;
  double value = st.second;

  SeesawResult result;
  result.trace.push_back(value);

  for (int it = 0; it < iters; ++it) {
    for (bool first_player : {true, false}) {
      auto w = weight_operators(g, s, first_player);
      auto& meas = first_player ? s.alice : s.bob;
      std::vector<std::vector<Matrix>> saved = meas;
      for (int q = 0; q < g.nq(); ++q)
        meas[q] = greedy_spectral_assignment(w[q], d);
      double candidate = evaluate_value(g, s);
      if (candidate < value - 1e-12) {
        meas = saved;  // reject the step
      } else {
        value = candidate;
      }
      result.trace.push_back(value);

      auto opt = optimal_state(g, s);
      s.state = opt.first;
      value = opt.second;
      result.trace.push_back(value);
    }
  }
  result.strategy = std::move(s);
  return result;
}

double simulate_value(const Game& g, const QuantumStrategy& s, long samples,
                      std::uint64_t seed) {
  Matrix psi = state_matrix(s.state, s.d);
  std::vector<double> qweights(g.nq() * g.nq());
  for (int qp = 0; qp < g.nq(); ++qp)
    for (int q = 0; q < g.nq(); ++q) qweights[qp * g.nq() + q] = g.pi(qp, q);

  long wins = 0;
  for (long t = 0; t < samples; ++t) {
    Rng rng = Rng::stream(seed, "simulate", static_cast<std::uint64_t>(t));
    int pair = rng.discrete(qweights);
    int qp = pair / g.nq(), q = pair % g.nq();
    std::vector<double> outcome(g.na() * g.na());
    for (int ap = 0; ap < g.na(); ++ap)
      for (int a = 0; a < g.na(); ++a)
        outcome[ap * g.na() + a] = std::max(
            0.0, born_probability(psi, s.alice[qp][ap], s.bob[q][a]));
    int o = rng.discrete(outcome);
    if (g.accepts(o / g.na(), o % g.na(), qp, q)) ++wins;
  }
  return static_cast<double>(wins) / static_cast<double>(samples);
}

QuantumStrategy chsh_optimal_strategy() {
  auto angle_measurement = [](double theta) {
    Matrix p0(2, 2);
    double c = std::cos(theta), s = std::sin(theta);
    p0 << c * c, c * s, c * s, s * s;
    std::vector<Matrix> meas{p0, Matrix::Identity(2, 2) - p0};
    return meas;
  };
  QuantumStrategy s;
  s.d = 2;
  s.state = Vector::Zero(4);
  s.state(0) = 1.0 / std::sqrt(2.0);
  s.state(3) = 1.0 / std::sqrt(2.0);
  const double pi = 3.14159265358979323846;
  s.alice = {angle_measurement(0.0), angle_measurement(pi / 4)};
  s.bob = {angle_measurement(pi / 8), angle_measurement(-pi / 8)};
  return s;
}

QuantumStrategy embed_classical(const Game& g,
                                const std::vector<int>& answer_first,
                                const std::vector<int>& answer_second,
                                int d) {
  QuantumStrategy s;
  s.d = d;
  s.state = Vector::Zero(d * d);
  s.state(0) = 1.0;
  s.alice.assign(g.nq(), std::vector<Matrix>(g.na(), Matrix::Zero(d, d)));
  s.bob.assign(g.nq(), std::vector<Matrix>(g.na(), Matrix::Zero(d, d)));
  for (int q = 0; q < g.nq(); ++q) {
    s.alice[q][answer_first[q]] = Matrix::Identity(d, d);
    s.bob[q][answer_second[q]] = Matrix::Identity(d, d);
  }
  return s;
}

QuantumStrategy random_strategy(const Game& g, int d, Rng& rng) {
  QuantumStrategy s;
  s.d = d;
  Vector raw(d * d);
  for (Eigen::Index i = 0; i < raw.size(); ++i)
    raw(i) = Complex(rng.normal(), rng.normal());
  s.state = raw / raw.norm();
  s.alice.resize(g.nq());
  s.bob.resize(g.nq());
  for (int q = 0; q < g.nq(); ++q) {
    s.alice[q] =
        linalg::random_projective_measurement(d, std::min(g.na(), d), rng);
    s.bob[q] =
        linalg::random_projective_measurement(d, std::min(g.na(), d), rng);
    while (static_cast<int>(s.alice[q].size()) < g.na())
      s.alice[q].push_back(Matrix::Zero(d, d));
    while (static_cast<int>(s.bob[q].size()) < g.na())
      s.bob[q].push_back(Matrix::Zero(d, d));
  }
  return s;
}

namespace {

json matrix_to_json(const Matrix& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      out.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
  return out;
}

Matrix matrix_from_json(const json& j, int d, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != d * d)
    throw InvalidInputError("strategy file, " + where + ": expected " +
                            std::to_string(d * d) + " [re, im] entries");
  Matrix m(d, d);
  for (int i = 0; i < d; ++i)
    for (int jj = 0; jj < d; ++jj) {
      const json& e = j.at(i * d + jj);
      if (!e.is_array() || e.size() != 2)
        throw InvalidInputError("strategy file, " + where +
                                ": entries must be [re, im] pairs");
      m(i, jj) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
    }
  return m;
}

}  // namespace

json strategy_to_json(const QuantumStrategy& s,
                      const std::vector<std::string>& qlabels) {
  json j;
  j["d"] = s.d;
  json st = json::array();
  for (Eigen::Index i = 0; i < s.state.size(); ++i)
    st.push_back(json::array({s.state(i).real(), s.state(i).imag()}));
  j["state"] = st;
  json alice = json::object(), bob = json::object();
  for (std::size_t q = 0; q < qlabels.size(); ++q) {
    json la = json::array(), lb = json::array();
    for (const Matrix& m : s.alice[q]) la.push_back(matrix_to_json(m));
    for (const Matrix& m : s.bob[q]) lb.push_back(matrix_to_json(m));
    alice[qlabels[q]] = la;
    bob[qlabels[q]] = lb;
  }
  j["alice"] = alice;
  j["bob"] = bob;
  return j;
}

QuantumStrategy strategy_from_json(const json& j,
                                   const std::vector<std::string>& qlabels) {
  QuantumStrategy s;
  if (!j.contains("d") || !j.at("d").is_number_integer())
    throw InvalidInputError("strategy file: missing integer \"d\"");
  s.d = j.at("d").get<int>();
  if (s.d < 1) throw InvalidInputError("strategy file: d must be >= 1");
  const json& st = j.at("state");
  if (!st.is_array() || static_cast<int>(st.size()) != s.d * s.d)
    throw InvalidInputError("strategy file: state must have d*d entries");
  s.state = Vector(s.d * s.d);
  for (int i = 0; i < s.d * s.d; ++i) {
    const json& e = st.at(i);
    if (!e.is_array() || e.size() != 2)
      throw InvalidInputError(
          "strategy file: state entries must be [re, im] pairs");
    s.state(i) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
  }
  for (const char* side : {"alice", "bob"}) {
    if (!j.contains(side))
      throw InvalidInputError(std::string("strategy file: missing \"") +
                              side + "\"");
    auto& target = (std::string(side) == "alice") ? s.alice : s.bob;
    target.resize(qlabels.size());
    for (std::size_t q = 0; q < qlabels.size(); ++q) {
      if (!j.at(side).contains(qlabels[q]))
        throw InvalidInputError(std::string("strategy file: ") + side +
                                " missing question \"" + qlabels[q] + "\"");
      const json& lst = j.at(side).at(qlabels[q]);
      if (!lst.is_array())
        throw InvalidInputError(std::string("strategy file: ") + side + "[" +
                                qlabels[q] + "] must be a list of matrices");
      for (std::size_t a = 0; a < lst.size(); ++a)
        target[q].push_back(matrix_from_json(
            lst.at(a), s.d,
            std::string(side) + "[" + qlabels[q] + "][" + std::to_string(a) +
                "]"));
    }
  }
  s.validate();
  return s;
}

QuantumStrategy load_strategy(const std::string& path,
                              const std::vector<std::string>& qlabels) {
  std::ifstream in(path);
  if (!in) throw InvalidInputError("cannot open strategy file: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidInputError("strategy file " + path + ": " + e.what());
  }
  return strategy_from_json(j, qlabels);
}

void save_strategy(const QuantumStrategy& s,
                   const std::vector<std::string>& qlabels,
                   const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidInputError("cannot write strategy file: " + path);
  out << strategy_to_json(s, qlabels).dump(2) << "\n";
}

}  // namespace entrep::strategy

#include "trigmom/moments.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <numbers>
#include <utility>

#include "trigmom/numeric.hpp"

namespace trigmom {
namespace {

using nlohmann::json;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

json complex_matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix complex_matrix_from_json(const json& j, int p, const char* what) {
  if (!j.is_array() || static_cast<int>(j.size()) != p)
    throw dimension_error(std::string(what) + ": expected " +
                          std::to_string(p) + " rows");
  CMatrix m(p, p);
  for (int r = 0; r < p; ++r) {
    const json& row = j[r];
    if (!row.is_array() || static_cast<int>(row.size()) != p)
      throw dimension_error(std::string(what) + ": row " + std::to_string(r) +
                            " is not length " + std::to_string(p));
    for (int c = 0; c < p; ++c) {
      const json& e = row[c];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() ||
          !e[1].is_number())
        throw parse_error(std::string(what) + ": entry (" + std::to_string(r) +
                          "," + std::to_string(c) +
                          ") is not a [re, im] pair");
      m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw parse_error("malformed JSON in " + path + ": " + e.what());
  }
}

int require_positive_int(const json& j, const char* key,
                         const std::string& path) {
  if (!j.contains(key))
    throw parse_error(path + ": missing field '" + key + "'");
  if (!j[key].is_number_integer())
    throw parse_error(path + ": field '" + key + "' is not an integer");
  const int v = j[key].get<int>();
  if (v < 1)
    throw parse_error(path + ": field '" + key + "' must be positive");
  return v;
}

void write_file(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw parse_error("cannot open " + path + " for writing");
  out << j.dump(2) << '\n';
}

}  // namespace

MomentSequence::MomentSequence(int p_, int d_, std::vector<CMatrix> moments,
                               double rel_tol)
    : p(p_), d(d_), S(std::move(moments)) {
  if (p < 1) throw std::invalid_argument("MomentSequence: p must be >= 1");
  if (d < 1) throw std::invalid_argument("MomentSequence: d must be >= 1");
  if (static_cast<int>(S.size()) != d + 1)
    throw dimension_error("MomentSequence: expected " + std::to_string(d + 1) +
                          " moments, got " + std::to_string(S.size()));
  for (const CMatrix& m : S)
    if (m.rows() != p || m.cols() != p)
      throw dimension_error("MomentSequence: moment blocks must be " +
                            std::to_string(p) + "x" + std::to_string(p));
  const double scale = std::max(1.0, detail::op_norm(S[0]));
  if (!detail::approx_hermitian(S[0], rel_tol * scale))
    throw std::invalid_argument("MomentSequence: S_0 is not Hermitian");
  if (detail::min_hermitian_eig(detail::hermitian_part(S[0])) <
      -rel_tol * scale)
    throw std::invalid_argument(
        "MomentSequence: S_0 is not positive semidefinite");
}

CMatrix MomentSequence::moment(int n) const {
  if (n > d || n < -d)
    throw std::out_of_range("MomentSequence: index out of range");
  return n >= 0 ? S[static_cast<std::size_t>(n)]
                : CMatrix(S[static_cast<std::size_t>(-n)].adjoint());
}

AtomicMeasure::AtomicMeasure(int p_, std::vector<Atom> atoms_, double rel_tol)
    : p(p_), atoms(std::move(atoms_)) {
  if (p < 1) throw std::invalid_argument("AtomicMeasure: p must be >= 1");
  for (std::size_t m = 0; m < atoms.size(); ++m) {
    const Atom& a = atoms[m];
    if (a.W.rows() != p || a.W.cols() != p)
      throw dimension_error("AtomicMeasure: weights must be " +
                            std::to_string(p) + "x" + std::to_string(p));
    if (!(a.t >= 0.0 && a.t < kTwoPi))
      throw std::invalid_argument(
          "AtomicMeasure: atom angles must lie in [0, 2pi)");
    if (m > 0 && !(atoms[m - 1].t < a.t))
      throw std::invalid_argument(
          "AtomicMeasure: atom angles must be distinct and ascending");
    const double scale = std::max(1.0, detail::op_norm(a.W));
    if (!detail::approx_psd(a.W, rel_tol * scale))
      throw std::invalid_argument(
          "AtomicMeasure: weights must be Hermitian PSD");
  }
}

ToeplitzForm build_toeplitz(const MomentSequence& ms, double psd_tol_rel) {
  const int p = ms.p;
  const int n = (ms.d + 1) * p;
  CMatrix T(n, n);
  // Diagonal blocks take the Hermitian part of S_0 so that T equals its own
  // adjoint exactly; upper blocks come from S, lower blocks by adjoint.
  const CMatrix s0 = detail::hermitian_part(ms.S[0]);
  for (int k = 0; k <= ms.d; ++k) {
    T.block(k * p, k * p, p, p) = s0;
    for (int j = k + 1; j <= ms.d; ++j) {
      T.block(k * p, j * p, p, p) = ms.S[static_cast<std::size_t>(j - k)];
      T.block(j * p, k * p, p, p) =
          ms.S[static_cast<std::size_t>(j - k)].adjoint();
    }
  }
  ToeplitzForm tf{ms, std::move(T), 0.0, 0.0};
  Eigen::SelfAdjointEigenSolver<CMatrix> es(tf.T, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw numeric_error("build_toeplitz: eigensolver failed");
  tf.norm = es.eigenvalues().cwiseAbs().maxCoeff();
  tf.tol = psd_tol_rel * std::max(1.0, tf.norm);
  return tf;
}

SolvabilityResult check_solvable(const ToeplitzForm& tf) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(tf.T, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw numeric_error("check_solvable: eigensolver failed");
  const double lambda_min = es.eigenvalues()(0);
  return {lambda_min >= -tf.tol, lambda_min};
}

MomentSequence moments_from_measure(const AtomicMeasure& mu, int d) {
  if (d < 1) throw std::invalid_argument("moments_from_measure: d must be >= 1");
  std::vector<CMatrix> S;
  S.reserve(static_cast<std::size_t>(d) + 1);
  for (int n = 0; n <= d; ++n) {
    CMatrix s = CMatrix::Zero(mu.p, mu.p);
    for (const auto& atom : mu.atoms)
      s += std::exp(Complex(0.0, n * atom.t)) * atom.W;
    S.push_back(std::move(s));
  }
  return MomentSequence(mu.p, d, std::move(S));
}

MomentSequence load_moments(const std::string& path) {
  const json j = parse_file(path);
  const int p = require_positive_int(j, "p", path);
  const int d = require_positive_int(j, "d", path);
  if (!j.contains("moments"))
    throw parse_error(path + ": missing field 'moments'");
  const json& blocks = j["moments"];
  if (!blocks.is_array())
    throw parse_error(path + ": field 'moments' is not an array");
  if (static_cast<int>(blocks.size()) != d + 1)
    throw dimension_error(path + ": expected " + std::to_string(d + 1) +
                          " moment blocks, got " +
                          std::to_string(blocks.size()));
  std::vector<CMatrix> S;
  S.reserve(blocks.size());
  for (std::size_t n = 0; n < blocks.size(); ++n)
    S.push_back(complex_matrix_from_json(
        blocks[n], p, ("moment " + std::to_string(n)).c_str()));
  return MomentSequence(p, d, std::move(S));
}

void save_moments(const MomentSequence& ms, const std::string& path) {
  json j;
  j["p"] = ms.p;
  j["d"] = ms.d;
  json blocks = json::array();
  for (const CMatrix& s : ms.S) blocks.push_back(complex_matrix_to_json(s));
  j["moments"] = std::move(blocks);
  write_file(j, path);
}

AtomicMeasure load_measure(const std::string& path) {
  const json j = parse_file(path);
  const int p = require_positive_int(j, "p", path);
  if (!j.contains("atoms")) throw parse_error(path + ": missing field 'atoms'");
  const json& atoms = j["atoms"];
  if (!atoms.is_array())
    throw parse_error(path + ": field 'atoms' is not an array");
  std::vector<AtomicMeasure::Atom> out;
  out.reserve(atoms.size());
  for (std::size_t m = 0; m < atoms.size(); ++m) {
    const json& a = atoms[m];
    if (!a.contains("t") || !a["t"].is_number())
      throw parse_error(path + ": atom " + std::to_string(m) +
                        " has no numeric field 't'");
    if (!a.contains("W"))
      throw parse_error(path + ": atom " + std::to_string(m) +
                        " has no field 'W'");
    out.push_back({a["t"].get<double>(),
                   complex_matrix_from_json(
                       a["W"], p, ("atom " + std::to_string(m)).c_str())});
  }
  return AtomicMeasure(p, std::move(out));
}

void save_measure(const AtomicMeasure& mu, const std::string& path) {
  json j;
  j["p"] = mu.p;
  json atoms = json::array();
  for (const auto& atom : mu.atoms)
    atoms.push_back({{"t", atom.t}, {"W", complex_matrix_to_json(atom.W)}});
  j["atoms"] = std::move(atoms);
  write_file(j, path);
}

}  // namespace trigmom

#pragma once

#include <cmath>
#include <numbers>

#include "oracle/brute_force.hpp"
#include "singletlab/linalg.hpp"
#include "singletlab/register.hpp"

namespace testsupport {

inline constexpr double kPi = std::numbers::pi;

inline oracle::Mat to_oracle(const singletlab::ComplexMatrix& m) {
  oracle::Mat r(m.rows());
  r.a.assign(m.entries().begin(), m.entries().end());
  return r;
}

inline oracle::Mat to_oracle(const singletlab::UnitaryMatrix& u) { return to_oracle(u.matrix()); }

inline oracle::Vec to_oracle(const singletlab::StateVector& s) {
  return {s.amplitudes().begin(), s.amplitudes().end()};
}

// Eigenbasis from the seed's Haar unitary columns, with the given phases.
inline singletlab::UnitaryMatrix fixture(std::vector<double> phases, std::uint64_t seed) {
  const auto basis = singletlab::haar_random_unitary(phases.size(), seed);
  std::vector<singletlab::CVector> vecs;
  for (std::size_t c = 0; c < phases.size(); ++c) vecs.push_back(basis.matrix().column(c));
  return singletlab::unitary_from_eigensystem(singletlab::EigenSystem(vecs, phases));
}

// I - 2|w><w| for a unit vector w drawn from the seed.
inline singletlab::UnitaryMatrix householder(std::size_t d, std::uint64_t seed) {
  singletlab::Rng rng(seed);
  singletlab::CVector w(d);
  for (auto& x : w) x = {rng.normal(), rng.normal()};
  w = singletlab::normalized(w);
  auto m = singletlab::ComplexMatrix::identity(d);
  m -= 2.0 * singletlab::ComplexMatrix::outer(w, w);
  return singletlab::UnitaryMatrix(m);
}

// v with U v = e^{i phi} v, up to tolerance, as |<v|Uv> - e^{i phi}|.
inline double eigen_residual(const singletlab::UnitaryMatrix& u, const singletlab::CVector& v,
                             double phi) {
  const auto uv = u.matrix().apply(v);
  double m = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) m = std::max(m, std::abs(uv[i] - std::polar(1.0, phi) * v[i]));
  return m;
}

}  // namespace testsupport

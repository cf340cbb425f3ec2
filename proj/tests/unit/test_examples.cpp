// Worked examples and properties for each operation, one TEST_CASE per
// operation.

#include <map>

#include "doctest.h"
#include "singletlab/discrimination.hpp"
#include "singletlab/errors.hpp"
#include "singletlab/phase_estimation.hpp"
#include "singletlab/protocols_qubit.hpp"
#include "singletlab/protocols_qudit.hpp"
#include "singletlab/singlet.hpp"
#include "support.hpp"

using namespace singletlab;
using testsupport::kPi;

namespace {

const double r2 = 1 / std::sqrt(2.0);
const ComplexMatrix kX = ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
const ComplexMatrix kZ = ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}});

ComplexMatrix random_matrix(std::size_t n, Rng& rng) {
  ComplexMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = {rng.normal(), rng.normal()};
  return m;
}

StateVector ket(std::initializer_list<cplx> a) { return StateVector::single(CVector(a)); }

}  // namespace

TEST_CASE("tensor_product") {
  const auto i2 = ComplexMatrix::identity(2);
  CHECK(tensor_product(i2, i2).max_abs_diff(ComplexMatrix::identity(4)) == 0.0);
  CHECK(tensor_product(kZ, i2).max_abs_diff(ComplexMatrix::diagonal(CVector{1.0, 1.0, -1.0, -1.0})) == 0.0);
  Rng rng(1);
  for (int t = 0; t < 50; ++t) {
    const auto a = random_matrix(2, rng), b = random_matrix(2, rng), c = random_matrix(2, rng), d = random_matrix(2, rng);
    CHECK(tensor_product(tensor_product(a, b), c).max_abs_diff(tensor_product(a, tensor_product(b, c))) < 1e-12);
    CHECK((tensor_product(a, b) * tensor_product(c, d)).max_abs_diff(tensor_product(a * c, b * d)) < 1e-12);
  }
}

TEST_CASE("is_unitary") {
  CHECK(is_unitary(ComplexMatrix::identity(3), 1e-10));
  CHECK(is_unitary(kZ, 1e-10));
  CHECK_FALSE(is_unitary(ComplexMatrix::from_rows({{1.0, 1.0}, {0.0, 1.0}}), 1e-10));
}

TEST_CASE("unitary_from_eigensystem") {
  const EigenSystem comp({{1.0, 0.0}, {0.0, 1.0}}, {0.0, kPi});
  CHECK(unitary_from_eigensystem(comp).matrix().max_abs_diff(kZ) < 1e-15);
  const EigenSystem pm({{r2, r2}, {r2, -r2}}, {0.0, kPi});
  CHECK(unitary_from_eigensystem(pm).matrix().max_abs_diff(kX) < 1e-15);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    CHECK(is_unitary(haar_random_unitary(1 + seed % 6, seed).matrix(), 1e-10));
    CHECK(is_unitary(testsupport::fixture({0.1 * double(seed), 2.0, 4.0}, seed).matrix(), 1e-10));
  }
}

TEST_CASE("haar_random_unitary") {
  const auto one = haar_random_unitary(1, 99);
  CHECK(std::abs(std::abs(one(0, 0)) - 1.0) < 1e-15);
  CHECK(haar_random_unitary(2, 42).matrix().max_abs_diff(haar_random_unitary(2, 42).matrix()) == 0.0);
  CHECK(is_unitary(haar_random_unitary(3, 7).matrix()));
}

TEST_CASE("eigendecompose_2x2_unitary") {
  const EigenSystem z = eigendecompose_2x2_unitary(UnitaryMatrix(kZ));
  CHECK(z.phase(0) == doctest::Approx(0.0));
  CHECK(z.phase(1) == doctest::Approx(kPi));
  CHECK(std::norm(z.vector(0)[0]) == doctest::Approx(1.0));
  CHECK(std::norm(z.vector(1)[1]) == doctest::Approx(1.0));
  const EigenSystem x = eigendecompose_2x2_unitary(UnitaryMatrix(kX));
  CHECK(std::norm(inner(x.vector(0), CVector{r2, r2})) == doctest::Approx(1.0));
  CHECK(std::norm(inner(x.vector(1), CVector{r2, -r2})) == doctest::Approx(1.0));
  const EigenSystem id = eigendecompose_2x2_unitary(UnitaryMatrix(ComplexMatrix::identity(2)));
  CHECK(id.degenerate());
  CHECK(id.phase(0) == 0.0);
  CHECK(id.phase(1) == 0.0);
  // round trip on random non-degenerate inputs
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto u = haar_random_unitary(2, 3000 + seed);
    CHECK(unitary_from_eigensystem(eigendecompose_2x2_unitary(u)).matrix().max_abs_diff(u.matrix()) < 1e-8);
  }
}

TEST_CASE("basis_state and product_state") {
  const auto a = basis_state(RegisterLayout({2, 2}), std::vector<std::size_t>{0, 1});
  CHECK(a.amplitude(1) == cplx(1.0));
  const auto b = basis_state(RegisterLayout({2, 3}), std::vector<std::size_t>{1, 2});
  CHECK(b.amplitude(5) == cplx(1.0));
  const auto c = basis_state(RegisterLayout({2}), std::vector<std::size_t>{1});
  CHECK(c.amplitude(1) == cplx(1.0));
  CHECK_THROWS_AS(basis_state(RegisterLayout({2}), std::vector<std::size_t>{2}), DimensionError);

  const StateVector f1[] = {ket({r2, r2}), ket({1.0, 0.0})};
  const auto p = product_state(f1);
  CHECK(oracle::max_diff(testsupport::to_oracle(p), {r2, 0.0, r2, 0.0}) < 1e-15);
  const StateVector f2[] = {ket({r2, r2}), make_singlet(2).state};
  const auto q = product_state(f2);
  CHECK(oracle::max_diff(testsupport::to_oracle(q), {0.0, 0.5, -0.5, 0.0, 0.0, 0.5, -0.5, 0.0}) < 1e-15);
  const StateVector f3[] = {b};
  CHECK(oracle::max_diff(testsupport::to_oracle(product_state(f3)), testsupport::to_oracle(b)) == 0.0);
}

TEST_CASE("apply_unitary") {
  Rng rng(2);
  CVector v(12);
  for (auto& x : v) x = {rng.normal(), rng.normal()};
  const StateVector s(RegisterLayout({2, 3, 2}), normalized(v));
  CHECK(oracle::max_diff(testsupport::to_oracle(apply_unitary(s, {1}, UnitaryMatrix(ComplexMatrix::identity(3)))),
                         testsupport::to_oracle(s)) == 0.0);
  const auto one_one = basis_state(RegisterLayout({2, 2}), std::vector<std::size_t>{1, 1});
  CHECK(apply_unitary(one_one, {1}, UnitaryMatrix(kZ)).amplitude(3) == cplx(-1.0));
  const auto u = haar_random_unitary(6, 4);
  const auto there = apply_unitary(s, {2, 1}, u);
  double n2 = 0.0;
  for (const cplx& a : there.amplitudes()) n2 += std::norm(a);
  CHECK(std::abs(n2 - 1.0) < 1e-12);
  CHECK(oracle::max_diff(testsupport::to_oracle(apply_unitary(there, {2, 1}, u.adjoint())), testsupport::to_oracle(s)) < 1e-12);
}

TEST_CASE("apply_controlled") {
  const auto u = testsupport::fixture({0.4, 2.5}, 5);
  const auto basis = haar_random_unitary(2, 5);
  const CVector v0 = basis.matrix().column(0);
  const StateVector target = StateVector::single(v0);
  const StateVector off[] = {ket({1.0, 0.0}), target};
  const auto s0 = product_state(off);
  CHECK(oracle::max_diff(testsupport::to_oracle(apply_controlled(s0, {0, 1, u, 3})), testsupport::to_oracle(s0)) < 1e-15);
  const StateVector on[] = {ket({0.0, 1.0}), target};
  const auto s1 = product_state(on);
  for (std::uint64_t p : {1u, 2u, 5u}) {
    oracle::Vec expect = testsupport::to_oracle(s1);
    for (auto& a : expect) a *= std::polar(1.0, 0.4 * double(p));
    CHECK(oracle::max_diff(testsupport::to_oracle(apply_controlled(s1, {0, 1, u, p})), expect) < 1e-12);
  }
  const auto ten = basis_state(RegisterLayout({2, 2}), std::vector<std::size_t>{1, 0});
  CHECK(apply_controlled(ten, {0, 1, UnitaryMatrix(kX), 1}).amplitude(3) == cplx(1.0));
  CHECK_THROWS_AS(apply_controlled(ten, {1, 1, UnitaryMatrix(kX), 1}), DimensionError);
}

TEST_CASE("measure and outcome_distribution") {
  const std::size_t only[] = {0};
  const auto plus = ket({r2, r2});
  Rng rng(3);
  const auto rec = measure(plus, only, MeasurementBasis::plus_minus_x(), rng);
  CHECK(rec.label == "+x");
  CHECK(rec.probability == doctest::Approx(1.0));

  // qubit a after the +-1 network
  const auto u = testsupport::fixture({0.0, kPi}, 6);
  const auto out = pm1_exact(u).output_state;
  const auto dist = outcome_distribution(out, only, MeasurementBasis::plus_minus_x());
  CHECK(dist[0].probability == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(dist[1].probability == doctest::Approx(0.5).epsilon(1e-12));

  // reproducible sequence
  Rng a(77), b(77);
  for (int k = 0; k < 20; ++k) CHECK(measure(out, only, MeasurementBasis::plus_minus_x(), a).outcome ==
                                     measure(out, only, MeasurementBasis::plus_minus_x(), b).outcome);

  // 1e5 shots on a three-outcome qutrit
  const auto q = StateVector::single(CVector{std::sqrt(0.2), cplx(0.0, std::sqrt(0.5)), std::sqrt(0.3)});
  const auto qb = MeasurementBasis::computational(3);
  const auto qd = outcome_distribution(q, only, qb);
  std::vector<int> counts(3);
  Rng rr(4);
  const int shots = 100000;
  for (int s = 0; s < shots; ++s) ++counts[measure(q, only, qb, rr).outcome];
  for (std::size_t k = 0; k < 3; ++k) {
    const double p = qd[k].probability;
    CHECK(std::abs(counts[k] / double(shots) - p) <= 4 * std::sqrt(p * (1 - p) / shots));
  }

  const auto zero = ket({1.0, 0.0});
  const auto zd = outcome_distribution(zero, only, MeasurementBasis::computational(2));
  CHECK(zd[0].probability == 1.0);
  CHECK(zd[1].probability == 0.0);
  const StateVector uniform(RegisterLayout({2, 2}), CVector(4, 0.5));
  const std::size_t both[] = {0, 1};
  for (const auto& o : outcome_distribution(uniform, both, MeasurementBasis::computational(2).product(MeasurementBasis::computational(2))))
    CHECK(o.probability == doctest::Approx(0.25));
}

TEST_CASE("extract_subsystem and fidelity") {
  const auto psi = ket({0.6, cplx(0.0, 0.8)});
  const StateVector f[] = {ket({1.0, 0.0}), psi};
  const auto ex = extract_subsystem(product_state(f), 0);
  CHECK(fidelity(ex, ket({1.0, 0.0})) == doctest::Approx(1.0));
  CHECK(fidelity(extract_subsystem(product_state(f), 1), psi) == doctest::Approx(1.0));
  CHECK_THROWS_AS(extract_subsystem(make_singlet(2).state, 0), EntangledError);
  // +x branch of the +-1 network, wire b
  const auto u = testsupport::fixture({0.0, kPi}, 8);
  const std::size_t only[] = {0};
  const auto residual = collapse(pm1_exact(u).output_state, only, MeasurementBasis::plus_minus_x(), 0).residual;
  const auto b = extract_subsystem(residual, 1);
  const CVector u_plus = haar_random_unitary(2, 8).matrix().column(0);
  CHECK(fidelity(b, StateVector::single(u_plus)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fidelity(psi, psi) == doctest::Approx(1.0));
  CHECK(fidelity(ket({1.0, 0.0}), ket({0.0, 1.0})) == 0.0);
  CHECK(fidelity(ket({1.0, 0.0}), ket({r2, r2})) == doctest::Approx(0.5));
}

TEST_CASE("make_singlet support") {
  const auto s2 = make_singlet(2).state;
  CHECK(s2.amplitude(1).real() == doctest::Approx(r2));
  CHECK(s2.amplitude(2).real() == doctest::Approx(-r2));
  std::size_t factorial = 1;
  for (std::size_t d = 2; d <= 4; ++d) {
    factorial *= d;
    const auto s = make_singlet(d).state;
    std::size_t support = 0;
    for (const cplx& a : s.amplitudes()) {
      if (a != 0.0) {
        ++support;
        CHECK(std::abs(a) == doctest::Approx(1 / std::sqrt(double(factorial))));
      }
    }
    CHECK(support == factorial);
  }
}

TEST_CASE("transform_invariance_defect") {
  const auto id = transform_invariance_defect(3, UnitaryMatrix(ComplexMatrix::identity(3)));
  CHECK(std::abs(id.phase - 1.0) < 1e-15);
  CHECK(id.defect < 1e-15);
  const double alpha = 0.83;
  const auto diag = transform_invariance_defect(2, UnitaryMatrix(ComplexMatrix::diagonal(CVector{1.0, std::polar(1.0, alpha)})));
  CHECK(std::abs(diag.phase - std::polar(1.0, alpha)) < 1e-12);
  CHECK(diag.defect <= 1e-10);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    for (std::size_t d = 2; d <= 4; ++d) {
      const auto v = haar_random_unitary(d, 7000 + seed);
      const auto def = transform_invariance_defect(d, v);
      CHECK(def.defect <= 1e-9);
      CHECK(std::abs(def.phase - determinant(v.matrix())) < 1e-9);
    }
  }
}

TEST_CASE("singlet_in_eigenbasis") {
  const EigenSystem comp({{1.0, 0.0}, {0.0, 1.0}}, {0.0, 0.0});
  CHECK(oracle::max_diff(testsupport::to_oracle(singlet_in_eigenbasis(2, comp)), testsupport::to_oracle(make_singlet(2).state)) < 1e-15);
  const EigenSystem pm({{r2, r2}, {r2, -r2}}, {0.0, kPi});
  CHECK(fidelity(singlet_in_eigenbasis(2, pm), make_singlet(2).state) == doctest::Approx(1.0).epsilon(1e-12));
  const auto v = haar_random_unitary(3, 12);
  std::vector<CVector> cols;
  for (std::size_t k = 0; k < 3; ++k) cols.push_back(v.matrix().column(k));
  CHECK(fidelity(singlet_in_eigenbasis(3, EigenSystem(cols, {0.0, 1.0, 2.0})), make_singlet(3).state) >= 1 - 1e-10);
}

TEST_CASE("tomography_baseline") {
  const auto z = tomography_baseline(UnitaryMatrix(kZ), 100000, 16, 1);
  CHECK(std::abs(z.p00 - 1.0) < 0.01);
  CHECK(std::abs(z.p10) < 0.01);
  const auto x = tomography_baseline(UnitaryMatrix(kX), 100000, 16, 2);
  CHECK(std::abs(x.p00) < 0.01);
  CHECK(std::abs(x.p10 - 1.0) < 0.01);
  const double gamma = 2.2;
  const cplx e = std::polar(1.0, gamma);
  const UnitaryMatrix u(ComplexMatrix::from_rows({{r2, r2 * e}, {r2, -r2 * e}}));
  const auto est = tomography_baseline(u, 100000, 16, 3);
  CHECK(phase_distance(est.relative_phase, gamma) < 0.05);
}

TEST_CASE("protocol_pm1 examples") {
  const auto z = pm1_exact(UnitaryMatrix(kZ));
  // +x: b = |0>, c = |1>
  CHECK(phase_distance(z.branches[0].assigned_eigenphases[0], 0.0) < 1e-12);
  CHECK(phase_distance(z.branches[0].assigned_eigenphases[1], kPi) < 1e-12);
  const std::size_t only[] = {0};
  const auto plus_branch = collapse(z.output_state, only, MeasurementBasis::plus_minus_x(), 0).residual;
  CHECK(fidelity(extract_subsystem(plus_branch, 1), ket({1.0, 0.0})) == doctest::Approx(1.0));
  CHECK(fidelity(extract_subsystem(plus_branch, 2), ket({0.0, 1.0})) == doctest::Approx(1.0));
  // X, -x: b = |-x>
  const auto x = pm1_exact(UnitaryMatrix(kX));
  const auto minus_branch = collapse(x.output_state, only, MeasurementBasis::plus_minus_x(), 1).residual;
  CHECK(fidelity(extract_subsystem(minus_branch, 1), ket({r2, -r2})) == doctest::Approx(1.0));
  for (double f : x.branches[1].eigenstate_fidelities) CHECK(f == doctest::Approx(1.0));
}

TEST_CASE("protocol_known_phases examples") {
  const auto opp = known_phases_exact(testsupport::fixture({0.0, kPi}, 1), 0.0, kPi);
  CHECK(opp.branches[0].probability + opp.branches[1].probability == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(opp.branches[2].probability < 1e-12);
  const auto quarter = known_phases_exact(testsupport::fixture({0.0, kPi / 2}, 2), 0.0, kPi / 2);
  CHECK(quarter.branches[0].probability + quarter.branches[1].probability == doctest::Approx(1 - r2).epsilon(1e-12));
  // sampled conclusive rate
  const auto u = testsupport::fixture({0.0, kPi / 2}, 2);
  int hits = 0;
  const int shots = 10000;
  for (int s = 0; s < shots; ++s) {
    const auto rep = protocol_known_phases(u, 0.0, kPi / 2, 50000 + s);
    if (rep.conclusive) {
      ++hits;
      for (double f : rep.eigenstate_fidelities) CHECK(f >= 1 - 1e-10);
    }
  }
  const double p = 1 - r2;
  CHECK(std::abs(hits / double(shots) - p) <= 4 * std::sqrt(p * (1 - p) / shots));
}

TEST_CASE("protocol_square_trick examples") {
  const auto d = square_trick_exact(UnitaryMatrix(ComplexMatrix::diagonal(CVector{1.0, cplx(0.0, 1.0)})));
  const std::size_t only[] = {0};
  const auto plus_branch = collapse(d.output_state, only, MeasurementBasis::plus_minus_x(), 0).residual;
  CHECK(fidelity(extract_subsystem(plus_branch, 1), ket({1.0, 0.0})) == doctest::Approx(1.0));
  CHECK(fidelity(extract_subsystem(plus_branch, 2), ket({0.0, 1.0})) == doctest::Approx(1.0));
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto r = square_trick_exact(testsupport::fixture({0.0, kPi / 2}, 9000 + seed));
    CHECK(std::abs(r.branches[0].probability - 0.5) < 1e-12);
    for (const auto& b : r.branches)
      for (double f : b.eigenstate_fidelities) CHECK(f >= 1 - 1e-10);
  }
}

TEST_CASE("eta_state and quartet examples") {
  CHECK(oracle::max_diff(testsupport::to_oracle(eta_state(1.0)), {0.5, 0.5, 0.5, 0.5}) < 1e-15);
  CHECK(oracle::max_diff(testsupport::to_oracle(eta_state(cplx(0, 1))), {0.5, cplx(0, 0.5), -0.5, cplx(0, -0.5)}) < 1e-15);
  const cplx zs[] = {1.0, -1.0, cplx(0, 1), cplx(0, -1)};
  for (const cplx& a : zs)
    for (const cplx& b : zs)
      if (a != b) CHECK(std::abs(inner(eta_state(a).amplitudes(), eta_state(b).amplitudes())) < 1e-15);

  const auto z = quartet_exact(UnitaryMatrix(kZ));
  CHECK(z.branches[0].probability == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(z.branches[1].probability == doctest::Approx(0.5).epsilon(1e-12));
  const std::size_t ab[] = {0, 1};
  const auto eta1 = collapse(z.output_state, ab, eta_basis(), 0).residual;
  CHECK(fidelity(extract_subsystem(eta1, 2), ket({1.0, 0.0})) == doctest::Approx(1.0));
  CHECK(fidelity(extract_subsystem(eta1, 3), ket({0.0, 1.0})) == doctest::Approx(1.0));
  const auto ii = quartet_exact(UnitaryMatrix(ComplexMatrix::diagonal(CVector{cplx(0, 1), cplx(0, -1)})));
  CHECK(ii.branches[0].probability < 1e-12);
  CHECK(ii.branches[1].probability < 1e-12);
  CHECK(ii.branches[2].probability == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(ii.branches[3].probability == doctest::Approx(0.5).epsilon(1e-12));
  // 100 fixtures: observed outcomes exactly 1/2
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto r = quartet_exact(testsupport::fixture({kPi / 2, kPi}, 11000 + seed));
    CHECK(std::abs(r.branches[1].probability - 0.5) < 1e-12);
    CHECK(std::abs(r.branches[2].probability - 0.5) < 1e-12);
    CHECK(r.gate_uses == 3);
  }
}

TEST_CASE("IDP measurement examples") {
  const auto orth = build_idp_povm(phase_qubit(0.0), phase_qubit(kPi));
  CHECK(orth.elements[2].max_abs_diff(ComplexMatrix(2, 2)) < 1e-12);
  const auto q = build_idp_povm(ket({r2, r2}), ket({r2, cplx(0, r2)}));
  CHECK(povm_probabilities(ket({r2, r2}), 0, q)[0] == doctest::Approx(1 - r2).epsilon(1e-12));
  Rng rng(5);
  for (int t = 0; t < 100; ++t) {
    const double a = 2 * kPi * rng.uniform(), b = 2 * kPi * rng.uniform();
    if (phase_distance(a, b) < 1e-3) continue;
    const auto p = build_idp_povm(phase_qubit(a), phase_qubit(b));
    CHECK(is_valid_povm(p));
    auto sum = p.elements[0] + p.elements[1] + p.elements[2];
    CHECK(sum.max_abs_diff(ComplexMatrix::identity(2)) < 1e-10);
    const double s = idp_success_probability(a, b);
    CHECK(std::abs(s - povm_probabilities(phase_qubit(a), 0, p)[0]) < 1e-10);
    CHECK(std::abs(s - povm_probabilities(phase_qubit(b), 0, p)[1]) < 1e-10);
    CHECK(std::abs(s - idp_success_probability(b, a)) < 1e-12);
    CHECK(std::abs(s - idp_success_probability(a + 1.3, b + 1.3)) < 1e-12);
  }
  CHECK(idp_success_probability(0.0, kPi) == doctest::Approx(1.0));
  CHECK(idp_success_probability(0.4, 0.4) == doctest::Approx(0.0));
  CHECK(idp_success_probability(0.0, kPi / 2) == doctest::Approx(1 - r2));

  // discriminate
  for (int t = 0; t < 200; ++t) CHECK(discriminate(phase_qubit(0.0), orth, rng) == "v1");
  const auto near = build_idp_povm(phase_qubit(0.0), phase_qubit(1.0));
  int success = 0;
  const int shots = 20000;
  for (int t = 0; t < shots; ++t) {
    const bool second = t % 2 == 1;
    const std::string l = discriminate(phase_qubit(second ? 1.0 : 0.0), near, rng);
    CHECK(l != (second ? "v1" : "v2"));
    success += l != "fail";
  }
  const double p = 1 - std::cos(0.5);
  CHECK(std::abs(success / double(shots) - p) <= 4 * std::sqrt(p * (1 - p) / shots));
}

TEST_CASE("inverse_qft examples") {
  const std::size_t q0[] = {0};
  const auto plus = inverse_qft(ket({1.0, 0.0}), q0);
  CHECK(oracle::max_diff(testsupport::to_oracle(plus), {r2, r2}) < 1e-15);
  const auto minus = inverse_qft(ket({0.0, 1.0}), q0);
  CHECK(oracle::max_diff(testsupport::to_oracle(minus), {r2, -r2}) < 1e-15);
  const unsigned n = 4;
  const std::uint64_t xbar = 11;
  CVector amps(16);
  for (std::size_t y = 0; y < 16; ++y) amps[y] = std::polar(0.25, 2 * kPi * double(y * xbar) / 16.0);
  const StateVector reg(RegisterLayout(std::vector<std::size_t>(n, 2)), amps);
  const std::size_t all[] = {0, 1, 2, 3};
  const auto peak = inverse_qft(reg, all);
  CHECK(std::abs(peak.amplitude(xbar) - 1.0) < 1e-12);
}

TEST_CASE("qudit examples") {
  const UnitaryMatrix d3(ComplexMatrix::diagonal(CVector{1.0, 1.0, -1.0}));
  const CVector v = spectrum_check_minus_one(d3);
  CHECK(std::norm(v[2]) == doctest::Approx(1.0));
  const auto hh = testsupport::householder(3, 77);
  CHECK(std::norm(inner(spectrum_check_minus_one(hh), (ComplexMatrix::identity(3) - hh.matrix()).column(0))) > 0.0);
  CHECK_THROWS_AS(spectrum_check_minus_one(UnitaryMatrix(ComplexMatrix::identity(3))), PreconditionError);

  const auto dist = exact_pattern_distribution(d3);
  std::map<std::string, double> by_label;
  for (const auto& p : dist) by_label[p.label] = p.probability;
  CHECK(by_label["-x,+x"] == doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK(by_label["+x,-x"] == doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK(by_label["+x,+x"] == doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK(by_label["-x,-x"] < 1e-12);
  std::map<std::string, std::size_t> wire;
  for (const auto& b : qudit_exact_branches(d3)) wire[b.pattern_label] = *b.located_wire;
  CHECK(wire["-x,+x"] == 0);
  CHECK(wire["+x,-x"] == 1);
  CHECK(wire["+x,+x"] == 2);

  const auto d2 = exact_pattern_distribution(UnitaryMatrix(kZ));
  CHECK(d2.size() == 2);
  for (const auto& p : d2) CHECK(p.probability == doctest::Approx(0.5).epsilon(1e-12));
  for (const auto& b : qudit_exact_branches(UnitaryMatrix(kZ))) {
    CHECK(*b.located_wire == (b.pattern_label == "-x" ? 0u : 1u));
  }
  // forbidden patterns up to D = 5
  for (std::size_t d = 2; d <= 5; ++d) {
    const auto u = testsupport::householder(d, 500 + d);
    for (const auto& p : exact_pattern_distribution(u)) {
      if (!located_wire_for(p.pattern)) CHECK(p.probability <= 1e-12);
      else CHECK(std::abs(p.probability - 1.0 / double(d)) < 1e-12);
    }
  }
}

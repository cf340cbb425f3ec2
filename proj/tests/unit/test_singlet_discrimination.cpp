#include "doctest.h"
#include "singletlab/discrimination.hpp"
#include "singletlab/errors.hpp"
#include "singletlab/singlet.hpp"
#include "support.hpp"

using namespace singletlab;
using testsupport::kPi;

TEST_CASE("levi-civita symbol") {
  const std::vector<std::size_t> id{0, 1, 2}, swap{1, 0, 2}, cyc{1, 2, 0}, rep{0, 0, 2};
  CHECK(levi_civita(id) == 1);
  CHECK(levi_civita(swap) == -1);
  CHECK(levi_civita(cyc) == 1);
  CHECK(levi_civita(rep) == 0);
  std::vector<std::size_t> p{0, 1, 2, 3, 4};
  do {
    CHECK(levi_civita(p) == oracle::perm_sign(p));
  } while (std::next_permutation(p.begin(), p.end()));
}

TEST_CASE("singlet matches the brute-force antisymmetric state") {
  for (std::size_t d = 2; d <= 4; ++d) {
    const SingletState s = make_singlet(d);
    CHECK(s.d == d);
    CHECK(s.state.layout().dims() == std::vector<std::size_t>(d, d));
    CHECK(oracle::max_diff(testsupport::to_oracle(s.state), oracle::singlet(d)) < 1e-15);
  }
  // d = 2: (|01> - |10>)/sqrt2
  const auto s2 = make_singlet(2).state;
  CHECK(s2.amplitude(1).real() == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(s2.amplitude(2).real() == doctest::Approx(-1 / std::sqrt(2.0)));
  CHECK_THROWS_AS(make_singlet(1), DimensionError);
}

TEST_CASE("antisymmetry under exchanging two subsystems") {
  const auto s = make_singlet(3).state;
  const RegisterLayout& l = s.layout();
  for (std::size_t i = 0; i < l.total_dim(); ++i) {
    auto dg = l.digits_of(i);
    std::swap(dg[0], dg[2]);
    CHECK(std::abs(s.amplitude(i) + s.amplitude(dg)) < 1e-15);
  }
}

TEST_CASE("every-subsystem transform equals V tensor power, phase is det V") {
  for (std::size_t d = 2; d <= 4; ++d) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto v = haar_random_unitary(d, 300 + seed);
      const auto s = make_singlet(d).state;
      std::vector<oracle::Mat> copies(d, testsupport::to_oracle(v));
      const auto ref = oracle::apply(oracle::kron_all(copies), testsupport::to_oracle(s));
      const auto mine = apply_to_every_subsystem(s, v);
      CHECK(oracle::max_diff(testsupport::to_oracle(mine), ref) < 1e-12);
      const cplx det = determinant(v.matrix());
      oracle::Vec scaled = testsupport::to_oracle(s);
      for (auto& x : scaled) x *= det;
      CHECK(oracle::max_diff(ref, scaled) < 1e-10);
      const InvarianceDefect def = transform_invariance_defect(d, v);
      CHECK(def.defect <= 1e-9);
      CHECK(std::abs(def.phase - det) < 1e-10);
    }
  }
}

TEST_CASE("singlet rewritten in an eigenbasis coincides with the computational singlet") {
  for (std::size_t d = 2; d <= 4; ++d) {
    const auto basis = haar_random_unitary(d, 50 + d);
    std::vector<CVector> vecs;
    for (std::size_t k = 0; k < d; ++k) vecs.push_back(basis.matrix().column(k));
    const EigenSystem es(vecs, std::vector<double>(d, 0.0));
    const StateVector rewritten = singlet_in_eigenbasis(d, es);
    CHECK(oracle::max_diff(testsupport::to_oracle(rewritten), oracle::singlet(d)) < 1e-12);
  }
}

TEST_CASE("unambiguous discrimination measurement") {
  for (double delta : {kPi / 4, kPi / 2, 3 * kPi / 4, kPi, 0.01}) {
    const double t1 = 0.3, t2 = 0.3 + delta;
    const StateVector v1 = phase_qubit(t1), v2 = phase_qubit(t2);
    const Povm povm = build_idp_povm(v1, v2);
    REQUIRE(povm.labels == std::vector<std::string>{"v1", "v2", "fail"});
    CHECK(is_valid_povm(povm));
    const auto p1 = povm_probabilities(v1, 0, povm);
    const auto p2 = povm_probabilities(v2, 0, povm);
    CHECK(std::abs(p1[1]) < 1e-12);
    CHECK(std::abs(p2[0]) < 1e-12);
    const double expected = 1.0 - std::sqrt(1.0 + std::cos(delta)) / std::sqrt(2.0);
    CHECK(p1[0] == doctest::Approx(expected).epsilon(1e-12));
    CHECK(p2[1] == doctest::Approx(expected).epsilon(1e-12));
    CHECK(idp_success_probability(t1, t2) == doctest::Approx(expected).epsilon(1e-12));
    // rank-one element direction is orthogonal to the other state
    CHECK(std::abs(inner(rank_one_direction(povm.elements[0]), v2.amplitudes())) < 1e-12);
    CHECK(std::abs(norm(rank_one_direction(povm.elements[1])) - 1.0) < 1e-12);
  }
  CHECK_THROWS_AS(build_idp_povm(phase_qubit(0.2), phase_qubit(0.2)), PreconditionError);
  CHECK_THROWS_AS(build_idp_povm(phase_qubit(0.2), make_singlet(2).state), PreconditionError);
  Povm bad = build_idp_povm(phase_qubit(0.0), phase_qubit(1.0));
  bad.elements[2] *= 0.5;
  CHECK_FALSE(is_valid_povm(bad));
}

TEST_CASE("discriminate never mislabels") {
  const StateVector v1 = phase_qubit(0.0), v2 = phase_qubit(kPi / 2);
  const Povm povm = build_idp_povm(v1, v2);
  Rng rng(12);
  int ok = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const std::string l = discriminate(v1, povm, rng);
    CHECK(l != "v2");
    ok += l == "v1";
  }
  const double p = 1.0 - 1.0 / std::sqrt(2.0);
  CHECK(std::abs(ok / double(n) - p) < 4 * std::sqrt(p * (1 - p) / n));
}
